//! Hurwitz nearest-integer continued fractions over O_d.

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::field::{nearest_int, nearest_int_complex, Field, QuadElem, QuadInt};
use crate::forms::Mat2;

/// Arithmetic the continued-fraction driver needs.
pub trait CfNumber: Clone {
    fn from_lattice(a: &QuadInt) -> Self;
    fn round(&self, f: Field) -> QuadInt;
    fn sub(&self, o: &Self) -> Self;
    fn mul_lattice(&self, a: &QuadInt) -> Self;
    fn is_negligible(&self) -> bool;
    fn recip(&self) -> Self;
    fn abs(&self) -> f64;
}

impl CfNumber for QuadElem {
    fn from_lattice(a: &QuadInt) -> Self {
        QuadElem::from(a.clone())
    }

    fn round(&self, _: Field) -> QuadInt {
        nearest_int(self)
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul_lattice(&self, a: &QuadInt) -> Self {
        self * &QuadElem::from(a.clone())
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn recip(&self) -> Self {
        self.inv().expect("nonzero remainder")
    }

    fn abs(&self) -> f64 {
        self.to_complex().norm()
    }
}

impl CfNumber for Complex64 {
    fn from_lattice(a: &QuadInt) -> Self {
        a.to_complex()
    }

    fn round(&self, f: Field) -> QuadInt {
        nearest_int_complex(*self, f)
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul_lattice(&self, a: &QuadInt) -> Self {
        self * a.to_complex()
    }

    fn is_negligible(&self) -> bool {
        self.norm() < 1e-12
    }

    fn recip(&self) -> Self {
        self.inv()
    }

    fn abs(&self) -> f64 {
        self.norm()
    }
}

/// Partial quotients α_0, α_1, …, convergents p_n/q_n and the δ-sequence δ_1, δ_2, ….
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CFExpansion<T> {
    pub field: Field,
    pub alphas: Vec<QuadInt>,
    pub p: Vec<QuadInt>,
    pub q: Vec<QuadInt>,
    /// deltas[n − 1] = δ_n, from δ_{n+1} = δ_{n−1} − α_n δ_n with δ_{−1} = z, δ_0 = 1.
    pub deltas: Vec<T>,
    pub terminated: bool,
}

impl<T> CFExpansion<T> {
    /// p_n, with p_{−1} = 1 and p_{−2} = 0.
    pub fn p_at(&self, n: i64) -> QuadInt {
        match n {
            -2 => self.field.zero(),
            -1 => self.field.one(),
            _ => self.p[n as usize].clone(),
        }
    }

    /// q_n, with q_{−1} = 0 and q_{−2} = 1.
    pub fn q_at(&self, n: i64) -> QuadInt {
        match n {
            -2 => self.field.one(),
            -1 => self.field.zero(),
            _ => self.q[n as usize].clone(),
        }
    }

    /// γ_n = [[p_n, p_{n−1}], [q_n, q_{n−1}]], of determinant ±1.
    pub fn gamma(&self, n: usize) -> Mat2 {
        let n = n as i64;
        Mat2::new(self.p_at(n), self.p_at(n - 1), self.q_at(n), self.q_at(n - 1))
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// p_n/q_n.
    pub fn convergent(&self, n: usize) -> QuadElem {
        QuadElem::from(self.p[n].clone()).div(&QuadElem::from(self.q[n].clone())).expect("q_n ≠ 0")
    }

    pub fn last_convergent(&self) -> QuadElem {
        self.convergent(self.p.len() - 1)
    }
}

/// z_{n+1} = 1/(z_n − α_n) with α_n the nearest lattice point, for at most `max_steps`
/// quotients; stops early once a remainder vanishes.
pub fn hurwitz_cf<T: CfNumber>(z: &T, max_steps: usize, f: Field) -> CFExpansion<T> {
    let mut out = CFExpansion {
        field: f,
        alphas: Vec::new(),
        p: Vec::new(),
        q: Vec::new(),
        deltas: Vec::new(),
        terminated: false,
    };
    let mut zn = z.clone();
    let mut d_prev = z.clone();
    let mut d_cur = T::from_lattice(&f.one());
    for n in 0..max_steps.max(1) as i64 {
        let a = zn.round(f);
        let p = &(&a * &out.p_at(n - 1)) + &out.p_at(n - 2);
        let q = &(&a * &out.q_at(n - 1)) + &out.q_at(n - 2);
        let d_next = d_prev.sub(&d_cur.mul_lattice(&a));
        out.alphas.push(a.clone());
        out.p.push(p);
        out.q.push(q);
        out.deltas.push(d_next.clone());
        let r = zn.sub(&T::from_lattice(&a));
        if r.is_negligible() {
            out.terminated = true;
            break;
        }
        zn = r.recip();
        d_prev = std::mem::replace(&mut d_cur, d_next);
    }
    out
}

/// (−1)^{n−1}(q_{n−1} z − p_{n−1}), the closed form of δ_n.
pub fn delta_closed_form<T: CfNumber>(exp: &CFExpansion<T>, z: &T, n: usize) -> T {
    let n = n as i64;
    let v = z.mul_lattice(&exp.q_at(n - 1)).sub(&T::from_lattice(&exp.p_at(n - 1)));
    if (n - 1).rem_euclid(2) == 0 {
        v
    } else {
        T::from_lattice(&exp.field.zero()).sub(&v)
    }
}

fn exact_point(z: Complex64, f: Field) -> QuadElem {
    let to_q = |x: f64| BigRational::from_float(x).unwrap_or_else(|| BigRational::from_integer(0.into()));
    QuadElem::from_conventional(f, &to_q(z.re), &to_q(z.im / (f.d() as f64).sqrt()))
}

/// |δ_1|, …, |δ_n| and the largest successive ratio |δ_{m+1}|/|δ_m|.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub magnitudes: Vec<f64>,
    pub max_ratio: f64,
    pub terminated: bool,
}

/// Float input is read as the exact element of K with the same binary coordinates,
/// so the magnitudes carry no roundoff from the recursion.
pub fn delta_decay(z: Complex64, n: usize, f: Field) -> DecayReport {
    let exact = exact_point(z, f);
    let exp = hurwitz_cf(&exact, n, f);
    let magnitudes: Vec<f64> = exp.deltas.iter().map(|d| d.to_complex().norm()).collect();
    let max_ratio = magnitudes
        .windows(2)
        .filter(|w| w[0] > 0.0)
        .map(|w| w[1] / w[0])
        .fold(0.0, f64::max);
    DecayReport { magnitudes, max_ratio, terminated: exp.terminated }
}
