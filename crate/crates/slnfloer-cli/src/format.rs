//! JSON forms of curved complexes and master complexes.
//!
//! Polynomials are stored as strings in the canonical printer's syntax and
//! rationals as `p/q` strings, so a document survives a round trip
//! bit-for-bit. Besides the core fields (`ring`, `generators`,
//! `differential`, `curvature`) a complex records its grading rule and the
//! homological degree of each generator, without which it could not be
//! rebuilt.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use slnfloer::complex::{CurvedComplex, GradingRule, RingSpec};
use slnfloer::hfk::MasterComplex;
use slnfloer::ring::{MultiPoly, Rational, Var};
use slnfloer::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub variables: Vec<String>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleJson {
    pub u_weight: Vec<String>,
    pub v_weight: Vec<String>,
    pub degrees: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub grading: Vec<String>,
    pub hdeg: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ring: RingJson,
    pub grading_rule: RuleJson,
    pub generators: Vec<GeneratorJson>,
    pub differential: Vec<(usize, usize, String)>,
    pub curvature: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasterJson {
    #[serde(flatten)]
    pub complex: ComplexJson,
    pub maslov: Vec<String>,
    pub alexander: Vec<String>,
    pub a_match: Vec<u32>,
    pub b_match: Vec<u32>,
    pub components: Vec<u32>,
    pub punctured: bool,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn parse_rat(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| bad(format!("not a rational number: '{s}'")))
}

fn parse_rats(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

fn parse_poly(s: &str) -> Result<MultiPoly> {
    s.parse::<MultiPoly>()
}

fn parse_var(s: &str) -> Result<Var> {
    let p = parse_poly(s)?;
    let vars = p.vars();
    match (p.nterms(), vars.len()) {
        (1, 1) if p.to_string() == s.trim() => Ok(*vars.iter().next().expect("one variable")),
        _ => Err(bad(format!("not a variable: '{s}'"))),
    }
}

impl ComplexJson {
    pub fn from_complex(c: &CurvedComplex) -> Self {
        ComplexJson {
            ring: RingJson {
                variables: c.ring.vars().iter().map(|v| v.to_string()).collect(),
                relations: c.ring.relations().iter().map(|r| r.to_string()).collect(),
            },
            grading_rule: RuleJson {
                u_weight: rats(&c.rule.u_weight),
                v_weight: rats(&c.rule.v_weight),
                degrees: c.rule.degrees.iter().map(|d| rats(d)).collect(),
            },
            generators: c
                .gens
                .iter()
                .map(|g| GeneratorJson { name: g.name.clone(), grading: rats(&g.grading), hdeg: g.hdeg })
                .collect(),
            differential: c.arrows().map(|(x, y, f)| (x, y, f.to_string())).collect(),
            curvature: c.curvature.to_string(),
        }
    }

    pub fn to_complex(&self) -> Result<CurvedComplex> {
        let vars: BTreeSet<Var> = self.ring.variables.iter().map(|s| parse_var(s)).collect::<Result<_>>()?;
        let rels: Vec<MultiPoly> = self.ring.relations.iter().map(|s| parse_poly(s)).collect::<Result<_>>()?;
        let ring = RingSpec::from_relations(vars, &rels)?;
        let rule = GradingRule {
            u_weight: parse_rats(&self.grading_rule.u_weight)?,
            v_weight: parse_rats(&self.grading_rule.v_weight)?,
            degrees: self.grading_rule.degrees.iter().map(|d| parse_rats(d)).collect::<Result<_>>()?,
        };
        let rank = rule.u_weight.len();
        let mut c = CurvedComplex::new(ring, rule);
        for g in &self.generators {
            let grading = parse_rats(&g.grading)?;
            if grading.len() != rank {
                return Err(bad(format!("generator '{}' has {} gradings, expected {rank}", g.name, grading.len())));
            }
            c.add_gen(g.name.clone(), grading, g.hdeg);
        }
        for (x, y, f) in &self.differential {
            if *x >= c.len() || *y >= c.len() {
                return Err(bad(format!("arrow {x} -> {y} refers to a missing generator")));
            }
            c.add_arrow(*x, *y, &parse_poly(f)?);
        }
        Ok(c.with_curvature(parse_poly(&self.curvature)?))
    }
}

impl MasterJson {
    pub fn from_master(m: &MasterComplex) -> Self {
        let n = m.complex.len();
        MasterJson {
            complex: ComplexJson::from_complex(&m.complex),
            maslov: (0..n).map(|x| m.maslov(x).to_string()).collect(),
            alexander: (0..n).map(|x| m.alexander(x).to_string()).collect(),
            a_match: m.a_match.clone(),
            b_match: m.b_match.clone(),
            components: m.components.clone(),
            punctured: m.punctured,
        }
    }

    /// Rebuilds the master complex. The `maslov` and `alexander` lists must
    /// agree with the generator gradings.
    pub fn to_master(&self) -> Result<MasterComplex> {
        let complex = self.complex.to_complex()?;
        if self.maslov.len() != complex.len() || self.alexander.len() != complex.len() {
            return Err(bad("maslov/alexander lists do not match the generators"));
        }
        for (i, g) in complex.gens.iter().enumerate() {
            let ma = [parse_rat(&self.maslov[i])?, parse_rat(&self.alexander[i])?];
            if g.grading.as_slice() != ma.as_slice() {
                return Err(bad(format!("generator '{}': grading disagrees with maslov/alexander", g.name)));
            }
        }
        Ok(MasterComplex {
            complex,
            a_match: self.a_match.clone(),
            b_match: self.b_match.clone(),
            components: self.components.clone(),
            punctured: self.punctured,
        })
    }
}

/// Reads a master complex document.
pub fn master_from_json(text: &str) -> Result<MasterComplex> {
    let doc: MasterJson = serde_json::from_str(text).map_err(|e| bad(format!("master complex JSON: {e}")))?;
    doc.to_master()
}

/// Reads a plain complex document.
pub fn complex_from_json(text: &str) -> Result<CurvedComplex> {
    let doc: ComplexJson = serde_json::from_str(text).map_err(|e| bad(format!("complex JSON: {e}")))?;
    doc.to_complex()
}

pub fn master_to_json(m: &MasterComplex) -> String {
    serde_json::to_string_pretty(&MasterJson::from_master(m)).expect("serializable")
}

pub fn complex_to_json(c: &CurvedComplex) -> String {
    serde_json::to_string_pretty(&ComplexJson::from_complex(c)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use slnfloer::hfk::library::by_name;
    use slnfloer::kr::{kr_complex, BraidDiagram, Flavor, Mode};

    #[test]
    fn master_complexes_round_trip() {
        for name in ["unknot", "unknot-punctured", "T2,3", "T2,3-punctured", "T3,4", "T2,7", "4_1"] {
            let m = by_name(name).unwrap();
            let text = master_to_json(&m);
            let back = master_from_json(&text).unwrap();
            assert_eq!(back, m, "{name}");
            assert_eq!(master_to_json(&back), text);
        }
    }

    #[test]
    fn kr_complexes_round_trip() {
        let d = BraidDiagram::new(2, &[1, 1, 1]).unwrap();
        for (flavor, mode) in [(Flavor::Reduced, Mode::Sln(2)), (Flavor::Unreduced, Mode::Homfly)] {
            let c = kr_complex(&d, flavor, mode).unwrap().complex;
            let text = complex_to_json(&c);
            let back = complex_from_json(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(complex_to_json(&back), text);
        }
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let m = by_name("T2,3").unwrap();
        let mut doc = MasterJson::from_master(&m);
        doc.alexander[0] = "7".to_string();
        assert!(doc.to_master().is_err());
        let mut doc = MasterJson::from_master(&m);
        doc.complex.differential.push((0, 99, "U1".to_string()));
        assert!(doc.to_master().is_err());
        let mut doc = MasterJson::from_master(&m);
        doc.complex.ring.variables.push("U1*V1".to_string());
        assert!(doc.to_master().is_err());
        assert!(master_from_json("{").is_err());
    }
}
