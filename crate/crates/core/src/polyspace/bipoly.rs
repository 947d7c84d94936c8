use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::field::{Field, QuadElem, QuadInt};
use crate::forms::Mat2;

/// Polynomial in z and z̄ of bidegree at most (k, k) with coefficients in Q(ω).
/// The second variable is written `w` in code and stands for z̄.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BiPolyRepr", from = "BiPolyRepr")]
pub struct BiPoly {
    field: Field,
    k: usize,
    coeffs: BTreeMap<(usize, usize), QuadElem>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct BiPolyRepr {
    field: Field,
    k: usize,
    terms: Vec<(usize, usize, QuadElem)>,
}

impl From<BiPoly> for BiPolyRepr {
    fn from(p: BiPoly) -> Self {
        BiPolyRepr {
            field: p.field,
            k: p.k,
            terms: p.coeffs.into_iter().map(|((i, j), c)| (i, j, c)).collect(),
        }
    }
}

impl From<BiPolyRepr> for BiPoly {
    fn from(r: BiPolyRepr) -> Self {
        let mut p = BiPoly::zero(r.field, r.k);
        for (i, j, c) in r.terms {
            p.set(i, j, c);
        }
        p
    }
}

impl BiPoly {
    pub fn zero(field: Field, k: usize) -> Self {
        BiPoly { field, k, coeffs: BTreeMap::new() }
    }

    pub fn monomial(field: Field, k: usize, i: usize, j: usize) -> Self {
        let mut p = BiPoly::zero(field, k);
        p.set(i, j, QuadElem::one(field));
        p
    }

    /// z^k z̄^k − 1.
    pub fn zzbar_minus_one(field: Field, k: usize) -> Self {
        let mut p = BiPoly::monomial(field, k, k, k);
        p.set(0, 0, -QuadElem::one(field));
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn set(&mut self, i: usize, j: usize, c: QuadElem) {
        assert!(i <= self.k && j <= self.k, "monomial ({i}, {j}) exceeds bidegree {}", self.k);
        if c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> QuadElem {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| QuadElem::zero(self.field))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &QuadElem)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        assert_eq!(self.k, o.k);
        let mut p = self.clone();
        for (&(i, j), c) in &o.coeffs {
            let v = &p.get(i, j) + c;
            p.set(i, j, v);
        }
        p
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> BiPoly {
        self.scale(&-QuadElem::one(self.field))
    }

    pub fn scale(&self, c: &QuadElem) -> BiPoly {
        let mut p = BiPoly::zero(self.field, self.k);
        for (&(i, j), v) in &self.coeffs {
            p.set(i, j, v * c);
        }
        p
    }

    pub fn scale_int(&self, c: &BigInt) -> BiPoly {
        self.scale(&QuadElem::from(QuadInt::new(self.field, c.clone(), BigInt::zero())))
    }

    /// P(w, z): exchange the roles of z and z̄.
    pub fn swap(&self) -> BiPoly {
        let mut p = BiPoly::zero(self.field, self.k);
        for (&(i, j), v) in &self.coeffs {
            p.set(j, i, v.clone());
        }
        p
    }

    /// Coefficient-wise conjugate.
    pub fn conj_coeffs(&self) -> BiPoly {
        let mut p = BiPoly::zero(self.field, self.k);
        for (&(i, j), v) in &self.coeffs {
            p.set(i, j, v.conj());
        }
        p
    }

    /// P(z, w) for z, w ∈ K.
    pub fn eval(&self, z: &QuadElem, w: &QuadElem) -> QuadElem {
        let zp: Vec<QuadElem> = (0..=self.k as u32).map(|e| z.pow(e)).collect();
        let wp: Vec<QuadElem> = (0..=self.k as u32).map(|e| w.pow(e)).collect();
        self.coeffs
            .iter()
            .fold(QuadElem::zero(self.field), |acc, (&(i, j), c)| &acc + &(&(c * &zp[i]) * &wp[j]))
    }

    /// Common denominator D and the integral coefficient matrix D·P.
    pub fn integral_form(&self) -> (BigInt, Vec<Vec<QuadInt>>) {
        let den = self.coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(&c.den));
        let n = self.k + 1;
        let mut m = vec![vec![self.field.zero(); n]; n];
        for (&(i, j), c) in &self.coeffs {
            m[i][j] = c.num.scale(&(&den / &c.den));
        }
        (den, m)
    }

    pub fn from_integral(field: Field, den: &BigInt, m: &[Vec<QuadInt>]) -> BiPoly {
        let k = m.len() - 1;
        let mut p = BiPoly::zero(field, k);
        for (i, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    p.set(i, j, QuadElem::new(c.clone(), den.clone()));
                }
            }
        }
        p
    }

    /// Divide by the coefficient of the first nonzero term, for comparing spans.
    pub fn normalized(&self) -> BiPoly {
        match self.coeffs.values().next() {
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
            None => self.clone(),
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.coeffs.iter().rev() {
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("z".to_string()),
                _ => mono.push(format!("z^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push("zb".to_string()),
                _ => mono.push(format!("zb^{j}")),
            }
            let cs = c.to_string();
            let simple = !cs.replace("√-", "√").chars().skip(1).any(|ch| ch == '+' || ch == '-');
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, if simple { cs.clone() } else { format!("({cs})") }),
            };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono.join("*")
            } else {
                format!("{body}*{}", mono.join("*"))
            };
            write!(f, "{sep}{term}")?;
            first = false;
        }
        Ok(())
    }
}

/// Row i holds the coefficients of (a z + b)^i (c z + d)^{k−i}.
pub fn one_var_matrix(g: &Mat2, k: usize) -> Vec<Vec<QuadInt>> {
    let f = g.field();
    let poly_mul = |p: &[QuadInt], q: &[QuadInt]| -> Vec<QuadInt> {
        let mut out = vec![f.zero(); p.len() + q.len() - 1];
        for (i, x) in p.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in q.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        out
    };
    let lin_num = [g.b.clone(), g.a.clone()];
    let lin_den = [g.d.clone(), g.c.clone()];
    let mut num_pows = vec![vec![f.one()]];
    let mut den_pows = vec![vec![f.one()]];
    for e in 0..k {
        num_pows.push(poly_mul(&num_pows[e], &lin_num));
        den_pows.push(poly_mul(&den_pows[e], &lin_den));
    }
    (0..=k)
        .map(|i| {
            let mut row = poly_mul(&num_pows[i], &den_pows[k - i]);
            row.resize(k + 1, f.zero());
            row
        })
        .collect()
}

/// (P|γ)(z, z̄) = (cz+d)^k (c̄z̄+d̄)^k P(γz, γ̄z̄): a right action of GL₂(K).
pub fn act_poly(p: &BiPoly, g: &Mat2) -> BiPoly {
    let k = p.k;
    let f = p.field;
    let m = one_var_matrix(g, k);
    let mc: Vec<Vec<QuadInt>> = m.iter().map(|r| r.iter().map(|x| x.conj()).collect()).collect();
    let (den, c) = p.integral_form();
    // X = C · M̄, then C' = Mᵀ · X
    let n = k + 1;
    let mut x = vec![vec![f.zero(); n]; n];
    for i in 0..n {
        for (j, cij) in c[i].iter().enumerate() {
            if cij.is_zero() {
                continue;
            }
            for jp in 0..n {
                if !mc[j][jp].is_zero() {
                    x[i][jp] = &x[i][jp] + &(cij * &mc[j][jp]);
                }
            }
        }
    }
    let mut out = vec![vec![f.zero(); n]; n];
    for i in 0..n {
        for ip in 0..n {
            if m[i][ip].is_zero() {
                continue;
            }
            for jp in 0..n {
                if !x[i][jp].is_zero() {
                    out[ip][jp] = &out[ip][jp] + &(&m[i][ip] * &x[i][jp]);
                }
            }
        }
    }
    BiPoly::from_integral(f, &den, &out)
}
