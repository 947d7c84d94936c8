//! Generators, presentations and group-ring words for Γ_d = PSL₂(O_d).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, QuadInt};
use crate::forms::Mat2;

use super::bipoly::{act_poly, BiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    S,
    T,
    Tw,
    L,
    Eps,
    U,
    E,
}

impl Gen {
    fn parse(s: &str) -> Result<Gen> {
        Ok(match s {
            "S" => Gen::S,
            "T" => Gen::T,
            "Tw" => Gen::Tw,
            "L" => Gen::L,
            "eps" => Gen::Eps,
            "U" => Gen::U,
            "E" => Gen::E,
            _ => return Err(Error::InvalidArgument(format!("unknown generator {s:?}"))),
        })
    }

    fn name(self) -> &'static str {
        match self {
            Gen::S => "S",
            Gen::T => "T",
            Gen::Tw => "Tw",
            Gen::L => "L",
            Gen::Eps => "eps",
            Gen::U => "U",
            Gen::E => "E",
        }
    }
}

/// A generator raised to an integer power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Gen,
    pub power: i32,
}

/// Formal Z-linear combination of words in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupWord {
    pub terms: Vec<(i64, Vec<Letter>)>,
}

impl GroupWord {
    /// Parse strings such as `"1 + S"`, `"T + S Tw - 2 Tw^-1 S Tw"`. Letters are separated
    /// by spaces; `1` alone is the identity.
    pub fn parse(src: &str) -> Result<GroupWord> {
        let mut terms = Vec::new();
        let mut sign = 1i64;
        let mut current: Option<(i64, Vec<Letter>)> = None;
        let flush = |cur: &mut Option<(i64, Vec<Letter>)>, terms: &mut Vec<(i64, Vec<Letter>)>| {
            if let Some(t) = cur.take() {
                terms.push(t);
            }
        };
        for tok in src.split_whitespace() {
            match tok {
                "+" | "-" => {
                    flush(&mut current, &mut terms);
                    sign = if tok == "-" { -1 } else { 1 };
                }
                _ => {
                    let entry = current.get_or_insert((sign, Vec::new()));
                    if let Ok(n) = tok.parse::<i64>() {
                        entry.0 *= n;
                        continue;
                    }
                    let (name, power) = match tok.split_once('^') {
                        Some((n, p)) => (
                            n,
                            p.parse::<i32>()
                                .map_err(|_| Error::InvalidArgument(format!("bad exponent in {tok:?}")))?,
                        ),
                        None => (tok, 1),
                    };
                    entry.1.push(Letter { gen: Gen::parse(name)?, power });
                }
            }
        }
        flush(&mut current, &mut terms);
        if terms.is_empty() {
            return Err(Error::InvalidArgument(format!("empty word {src:?}")));
        }
        Ok(GroupWord { terms })
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (c, w)) in self.terms.iter().enumerate() {
            let body: Vec<String> = w
                .iter()
                .map(|l| match l.power {
                    1 => l.gen.name().to_string(),
                    p => format!("{}^{p}", l.gen.name()),
                })
                .collect();
            let mag = c.abs();
            let term = match (body.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => body.join(" "),
                (false, _) => format!("{mag} {}", body.join(" ")),
            };
            let sep = match (n, *c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sep}{term}")?;
        }
        Ok(())
    }
}

/// Matrices, relations and kernel operators for one of the five presentations.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub field: Field,
    /// The generator called ω in the presentation (i, √−2, (−1+√−3)/2, (1+√−7)/2, (1+√−11)/2).
    pub omega: QuadInt,
    pub s: Mat2,
    pub t: Mat2,
    pub tw: Mat2,
    pub l: Option<Mat2>,
    pub eps: Mat2,
    pub e: Option<Mat2>,
    pub relations: Vec<&'static str>,
    pub kernel_ops: Vec<&'static str>,
    /// Order of the ε eigenvalue u: ε = diag(u, 1) with u a primitive root of this order.
    pub eps_order: u32,
}

impl Presentation {
    pub fn new(f: Field) -> Presentation {
        let tau = f.tau();
        let omega = match f {
            Field::D3 => &tau - &f.one(),
            _ => tau.clone(),
        };
        let s = Mat2::s(f);
        let t = Mat2::translation(&f.one());
        let tw = Mat2::translation(&omega);
        let (l, eps, eps_order) = match f {
            Field::D1 => (Some(Mat2::diag(tau.clone(), -&tau)), Mat2::diag(tau.clone(), f.one()), 4),
            Field::D3 => {
                let w2 = &omega * &omega;
                (Some(Mat2::diag(w2, omega.clone())), Mat2::diag(tau.clone(), f.one()), 6)
            }
            _ => (None, Mat2::diag(-f.one(), f.one()), 2),
        };
        let e = match f {
            Field::D1 | Field::D3 => Some(tw.mul(&s).mul(l.as_ref().expect("L exists"))),
            Field::D11 => Some(tw.inverse().expect("unimodular").mul(&s).mul(&tw).mul(&s).mul(&t)),
            _ => None,
        };
        let (relations, kernel_ops) = match f {
            Field::D1 => (
                vec![
                    "S^2",
                    "L^2",
                    "S L S L",
                    "T L T L",
                    "Tw L Tw L",
                    "S T S T S T",
                    "Tw S L Tw S L Tw S L",
                    "T Tw T^-1 Tw^-1",
                ],
                vec!["1 + S", "1 - L", "1 + U + U^2", "1 + E + E^2"],
            ),
            Field::D3 => (
                vec![
                    "S^2",
                    "L^3",
                    "S L S L",
                    "S T S T S T",
                    "Tw S L Tw S L Tw S L",
                    "T Tw T^-1 Tw^-1",
                    "L^-1 Tw L T^-1",
                    "L^-1 T L Tw T",
                ],
                vec!["1 + S", "1 - L", "1 + U + U^2", "1 + E + E^2"],
            ),
            Field::D2 => (
                vec!["S^2", "S T S T S T", "Tw^-1 S Tw S Tw^-1 S Tw S", "T Tw T^-1 Tw^-1"],
                vec!["1 + S", "1 + U + U^2", "1 + S Tw + Tw S + Tw^-1 S Tw S"],
            ),
            Field::D7 => (
                vec!["S^2", "S T S T S T", "Tw^-1 S Tw S T Tw^-1 S Tw S T", "T Tw T^-1 Tw^-1"],
                vec!["1 + S", "1 + U + U^2", "T + S Tw + Tw S T + S Tw^-1 S Tw"],
            ),
            Field::D11 => (
                vec!["S^2", "S T S T S T", "E^3", "T Tw T^-1 Tw^-1"],
                vec!["1 + S", "1 + U + U^2", "T + S Tw + T E + S Tw E^-1 + Tw S T + S Tw^-1 S Tw"],
            ),
        };
        Presentation { field: f, omega, s, t, tw, l, eps, e, relations, kernel_ops, eps_order }
    }

    pub fn generator(&self, g: Gen) -> Result<Mat2> {
        let missing = || Error::InvalidArgument(format!("{} has no generator {}", self.field, g.name()));
        Ok(match g {
            Gen::S => self.s.clone(),
            Gen::T => self.t.clone(),
            Gen::Tw => self.tw.clone(),
            Gen::L => self.l.clone().ok_or_else(missing)?,
            Gen::Eps => self.eps.clone(),
            Gen::U => self.t.mul(&self.s),
            Gen::E => self.e.clone().ok_or_else(missing)?,
        })
    }

    /// Product of the letters as a matrix.
    pub fn eval_word(&self, w: &[Letter]) -> Result<Mat2> {
        let mut acc = Mat2::identity(self.field);
        for l in w {
            let g = self.generator(l.gen)?;
            let base = if l.power < 0 {
                g.inverse().ok_or_else(|| Error::InvalidArgument("non-invertible generator".into()))?
            } else {
                g
            };
            for _ in 0..l.power.unsigned_abs() {
                acc = acc.mul(&base);
            }
        }
        Ok(acc)
    }

    /// The word as a list of (coefficient, matrix) pairs.
    pub fn realize(&self, w: &GroupWord) -> Result<Vec<(i64, Mat2)>> {
        w.terms.iter().map(|(c, letters)| Ok((*c, self.eval_word(letters)?))).collect()
    }

    pub fn kernel_words(&self) -> Vec<GroupWord> {
        self.kernel_ops.iter().map(|s| GroupWord::parse(s).expect("built-in word parses")).collect()
    }

    /// Each defining relation together with whether it evaluates to ±I.
    pub fn relation_report(&self) -> Vec<(&'static str, bool)> {
        self.relations
            .iter()
            .map(|r| {
                let w = GroupWord::parse(r).expect("built-in relation parses");
                let ok = self.eval_word(&w.terms[0].1).map(|m| m.is_projective_identity()).unwrap_or(false);
                (*r, ok)
            })
            .collect()
    }
}

/// True iff every defining relation of the presentation for `f` holds modulo ±I.
pub fn relation_check(f: Field) -> bool {
    Presentation::new(f).relation_report().iter().all(|(_, ok)| *ok)
}

/// P | word, with the group ring acting linearly.
pub fn act_word(p: &BiPoly, pres: &Presentation, w: &GroupWord) -> Result<BiPoly> {
    let mut acc = BiPoly::zero(p.field(), p.k());
    for (c, g) in pres.realize(w)? {
        acc = acc.add(&act_poly(p, &g).scale_int(&c.into()));
    }
    Ok(acc)
}
