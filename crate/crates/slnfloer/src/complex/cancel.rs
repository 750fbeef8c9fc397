use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::Zero;

use super::CurvedComplex;
use crate::ring::MultiPoly;

/// Cancels every entry that is an invertible scalar.
pub fn gaussian_cancel(c: &CurvedComplex) -> CurvedComplex {
    gaussian_cancel_where(c, |_, _, _| true)
}

/// Cancels invertible scalar entries `x -> y` accepted by `allow`.
///
/// Each cancellation removes `x` and `y` and updates the remaining entries
/// by the zig-zag rule `z -> w  +=  -(z->y)(x->w)/(x->y)`.
pub fn gaussian_cancel_where<F>(c: &CurvedComplex, allow: F) -> CurvedComplex
where
    F: Fn(&CurvedComplex, usize, usize) -> bool,
{
    let n = c.len();
    let mut out: Vec<BTreeMap<usize, MultiPoly>> = c.diff.clone();
    let mut inc: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); n];
    for (x, y, _) in c.arrows() {
        inc[y].insert(x);
    }
    let mut alive = alloc::vec![true; n];

    let find = |out: &Vec<BTreeMap<usize, MultiPoly>>, alive: &Vec<bool>| -> Option<(usize, usize)> {
        for x in 0..n {
            if !alive[x] {
                continue;
            }
            for (y, f) in &out[x] {
                if *y != x && alive[*y] && allow(c, x, *y) {
                    if let Some(k) = f.as_constant() {
                        if !k.is_zero() {
                            return Some((x, *y));
                        }
                    }
                }
            }
        }
        None
    };

    while let Some((x, y)) = find(&out, &alive) {
        let cxy = out[x][&y].as_constant().expect("scalar");
        let row_x: Vec<(usize, MultiPoly)> =
            out[x].iter().filter(|(w, _)| **w != y).map(|(w, f)| (*w, f.clone())).collect();
        let sources: Vec<usize> = inc[y].iter().copied().filter(|z| *z != x).collect();
        for z in sources {
            let a = out[z][&y].clone();
            let k = a.scale(&(-cxy.recip()));
            for (w, b) in &row_x {
                let add = &k * b;
                let cur = out[z].remove(w).unwrap_or_default();
                let next = c.ring.reduce(&(&cur + &add));
                if next.is_zero() {
                    inc[*w].remove(&z);
                } else {
                    out[z].insert(*w, next);
                    inc[*w].insert(z);
                }
            }
        }
        for g in [x, y] {
            alive[g] = false;
            let targets: Vec<usize> = out[g].keys().copied().collect();
            for t in targets {
                inc[t].remove(&g);
            }
            out[g].clear();
            let srcs: Vec<usize> = inc[g].iter().copied().collect();
            for s in srcs {
                out[s].remove(&g);
            }
            inc[g].clear();
        }
    }

    let mut map = alloc::vec![usize::MAX; n];
    let mut r = CurvedComplex::new(c.ring.clone(), c.rule.clone());
    for i in 0..n {
        if alive[i] {
            let g = &c.gens[i];
            map[i] = r.add_gen(g.name.clone(), g.grading.clone(), g.hdeg);
        }
    }
    for i in 0..n {
        if alive[i] {
            for (j, f) in &out[i] {
                r.diff[map[i]].insert(map[*j], f.clone());
            }
        }
    }
    r.curvature = c.curvature.clone();
    r
}
