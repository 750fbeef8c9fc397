use core::fmt;

/// A named indeterminate.
///
/// The derived order is the fixed variable numbering used by the monomial
/// order: all `U`'s (by index), then `V`'s, then `W`'s, then `a`, `q`, `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U(u32),
    V(u32),
    W(u32, u32),
    A,
    Q,
    T,
}

impl Var {
    pub fn is_u(&self) -> bool {
        matches!(self, Var::U(_))
    }

    pub fn is_v(&self) -> bool {
        matches!(self, Var::V(_))
    }

    /// The basepoint or edge index of a `U` or `V` variable.
    pub fn index(&self) -> Option<u32> {
        match *self {
            Var::U(i) | Var::V(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::U(i) => write!(f, "U{i}"),
            Var::V(i) => write!(f, "V{i}"),
            Var::W(i, j) => write!(f, "W{i}_{j}"),
            Var::A => f.write_str("a"),
            Var::Q => f.write_str("q"),
            Var::T => f.write_str("t"),
        }
    }
}
