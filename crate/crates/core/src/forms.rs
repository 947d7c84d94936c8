//! Binary Hermitian forms over O_d, the PSL₂ action, and the finite sums built from them.

use std::cmp::Reverse;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{disk_points, require_non_norm, Field, QuadElem, QuadInt};
use crate::polyspace::BiPoly;

/// h = [[a, b], [b̄, c]], i.e. h(z, w) = a|z|² + b z w̄ + b̄ z̄ w + c|w|².
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HermitianForm {
    pub a: BigInt,
    pub b: QuadInt,
    pub c: BigInt,
}

impl HermitianForm {
    pub fn new(a: impl Into<BigInt>, b: QuadInt, c: impl Into<BigInt>) -> Self {
        HermitianForm { a: a.into(), b, c: c.into() }
    }

    pub fn field(&self) -> Field {
        self.b.field
    }

    /// det = ac − N(b).
    pub fn det(&self) -> BigInt {
        &self.a * &self.c - self.b.norm()
    }

    /// Δ = N(b) − ac, positive for the forms summed in H_{k,Δ}.
    pub fn delta(&self) -> BigInt {
        -self.det()
    }

    /// h(z, 1) = a N(z) + Tr(b z) + c, exactly.
    pub fn eval(&self, z: &QuadElem) -> BigRational {
        let m = &z.den;
        let num = &self.a * z.num.norm() + m * (&self.b * &z.num).trace() + &self.c * m * m;
        BigRational::new(num, m * m)
    }

    pub fn eval_complex(&self, z: Complex64) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        a * z.norm_sqr() + 2.0 * (self.b.to_complex() * z).re + c
    }

    /// σ(h) = σ̄ᵗ h σ.
    pub fn act(&self, s: &Mat2) -> HermitianForm {
        let tr = |x: &QuadInt, y: &QuadInt| (&(&x.conj() * &self.b) * y).trace();
        let a = &self.a * s.a.norm() + tr(&s.a, &s.c) + &self.c * s.c.norm();
        let c = &self.a * s.b.norm() + tr(&s.b, &s.d) + &self.c * s.d.norm();
        let ra = s.a.conj();
        let ta = s.c.conj();
        let b = (&ra * &s.b).scale(&self.a)
            + &(&ra * &self.b) * &s.d
            + &(&ta * &self.b.conj()) * &s.b
            + (&ta * &s.d).scale(&self.c);
        HermitianForm { a, b, c }
    }

    /// The form whose value at z is |cz+e|²·h(γz); this is the action that matches
    /// the slash action on polynomials, namely act by γ̄.
    pub fn slash(&self, g: &Mat2) -> HermitianForm {
        self.act(&g.conj())
    }
}

impl fmt::Display for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// 2×2 matrix over O_d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: QuadInt,
    pub b: QuadInt,
    pub c: QuadInt,
    pub d: QuadInt,
}

/// Γ_d elements and the torsion / diagonal elements used by the presentations.
pub type GroupElement = Mat2;

impl Mat2 {
    pub fn new(a: QuadInt, b: QuadInt, c: QuadInt, d: QuadInt) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_i64(f: Field, e: [[i64; 2]; 2]) -> Self {
        Mat2::new(f.int(e[0][0]), f.int(e[0][1]), f.int(e[1][0]), f.int(e[1][1]))
    }

    pub fn field(&self) -> Field {
        self.a.field
    }

    pub fn identity(f: Field) -> Self {
        Mat2::from_i64(f, [[1, 0], [0, 1]])
    }

    pub fn s(f: Field) -> Self {
        Mat2::from_i64(f, [[0, -1], [1, 0]])
    }

    pub fn translation(l: &QuadInt) -> Self {
        let f = l.field;
        Mat2::new(f.one(), l.clone(), f.zero(), f.one())
    }

    pub fn diag(u: QuadInt, v: QuadInt) -> Self {
        let f = u.field;
        Mat2::new(u, f.zero(), f.zero(), v)
    }

    pub fn det(&self) -> QuadInt {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn conj(&self) -> Self {
        Mat2::new(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }

    /// Inverse over O_d; requires a unit determinant.
    pub fn inverse(&self) -> Option<Mat2> {
        let di = self.det().unit_inverse()?;
        Some(Mat2::new(
            &self.d * &di,
            &(-&self.b) * &di,
            &(-&self.c) * &di,
            &self.a * &di,
        ))
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    /// True for ±I.
    pub fn is_projective_identity(&self) -> bool {
        self.is_identity() || self.neg().is_identity()
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    /// Möbius action (az+b)/(cz+d), None at the pole.
    pub fn apply(&self, z: &QuadElem) -> Option<QuadElem> {
        let num = &(&QuadElem::from(self.a.clone()) * z) + &QuadElem::from(self.b.clone());
        let den = &(&QuadElem::from(self.c.clone()) * z) + &QuadElem::from(self.d.clone());
        num.div(&den)
    }

    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        (self.a.to_complex() * z + self.b.to_complex()) / (self.c.to_complex() * z + self.d.to_complex())
    }
}

pub(crate) fn check_weight(k: u32) -> Result<()> {
    if k % 2 == 1 {
        Ok(())
    } else {
        Err(Error::InvalidWeight(k as i64))
    }
}

/// σ_k(n) = Σ_{e | n} e^k.
pub fn sigma(k: u32, n: u64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut e = 1u64;
    while e * e <= n {
        if n.is_multiple_of(e) {
            acc += num_traits::pow(BigInt::from(e), k as usize);
            let o = n / e;
            if o != e {
                acc += num_traits::pow(BigInt::from(o), k as usize);
            }
        }
        e += 1;
    }
    acc
}

/// The b ∈ O_d with N(b) < Δ.
pub fn short_vectors(delta: u64, f: Field) -> Vec<QuadInt> {
    disk_points(f, Complex64::new(0.0, 0.0), (delta as f64).sqrt())
        .into_iter()
        .map(|(x, y)| QuadInt::from_i64(f, x, y))
        .filter(|b| b.norm() < BigInt::from(delta))
        .collect()
}

/// α_{k,Δ} = Σ_{N(b)<Δ} σ_k(Δ − N(b)).
pub fn alpha(k: u32, delta: u64, f: Field) -> Result<BigInt> {
    check_weight(k)?;
    require_non_norm(delta, f)?;
    Ok(short_vectors(delta, f)
        .iter()
        .map(|b| sigma(k, delta - b.norm().to_u64().expect("N(b) < Δ")))
        .sum())
}

/// α_{k,Δ} as the sum of c^k over all (a, b, c) with a < 0 < c and N(b) − ac = Δ,
/// found by a direct search over a, c ∈ [1, Δ].
pub fn alpha_enumerated(k: u32, delta: u64, f: Field) -> Result<BigInt> {
    check_weight(k)?;
    require_non_norm(delta, f)?;
    let bs = short_vectors(delta, f);
    let mut acc = BigInt::zero();
    for b in &bs {
        let nb = b.norm().to_u64().expect("small norm");
        for a in 1..=delta {
            for c in 1..=delta {
                // N(b) − (−a)c = Δ
                if nb + a * c == delta {
                    acc += num_traits::pow(BigInt::from(c), k as usize);
                }
            }
        }
    }
    Ok(acc)
}

/// The finite set of forms with c < 0 < a and N(b) − ac = Δ.
pub fn transfer_forms(delta: u64, f: Field) -> Vec<HermitianForm> {
    let mut out = Vec::new();
    for b in short_vectors(delta, f) {
        let m = delta - b.norm().to_u64().expect("small norm");
        for a in (1..=m).filter(|a| m.is_multiple_of(*a)) {
            out.push(HermitianForm::new(a, b.clone(), -((m / a) as i64)));
        }
    }
    out
}

/// P_{k,Δ}(z, z̄) = Σ_{c<0<a} (a z z̄ + b z + b̄ z̄ + c)^k, expanded exactly.
pub fn expand_p(k: u32, delta: u64, f: Field) -> Result<BiPoly> {
    check_weight(k)?;
    require_non_norm(delta, f)?;
    let k = k as usize;
    let fact: Vec<BigInt> = (0..=k).scan(BigInt::one(), |acc, i| {
        if i > 0 {
            *acc *= i;
        }
        Some(acc.clone())
    }).collect();
    let mut coeffs = vec![vec![f.zero(); k + 1]; k + 1];
    for h in transfer_forms(delta, f) {
        let pw = |x: &QuadInt| -> Vec<QuadInt> {
            let mut v = vec![f.one()];
            for i in 0..k {
                let next = &v[i] * x;
                v.push(next);
            }
            v
        };
        let pa = pw(&f.int(h.a.to_i64().unwrap()));
        let pb = pw(&h.b);
        let pbb = pw(&h.b.conj());
        let pc = pw(&f.int(h.c.to_i64().unwrap()));
        for k1 in 0..=k {
            for k2 in 0..=k - k1 {
                for k3 in 0..=k - k1 - k2 {
                    let k4 = k - k1 - k2 - k3;
                    let multi = &fact[k] / (&fact[k1] * &fact[k2] * &fact[k3] * &fact[k4]);
                    let term = (&(&pa[k1] * &pb[k2]) * &(&pbb[k3] * &pc[k4])).scale(&multi);
                    let slot = &mut coeffs[k1 + k2][k1 + k3];
                    *slot = &*slot + &term;
                }
            }
        }
    }
    let mut p = BiPoly::zero(f, k);
    for (i, row) in coeffs.into_iter().enumerate() {
        for (j, c) in row.into_iter().enumerate() {
            p.set(i, j, c.into());
        }
    }
    Ok(p)
}

/// A form from the window enumeration, in the raw integer data the hot loops use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct WindowForm {
    /// |a|
    pub a_abs: i128,
    /// β = b̄ in ω-coordinates
    pub beta: (i128, i128),
    pub c: i128,
    /// h(z, 1) = h_num / (|a|·m²)
    pub h_num: i128,
}

/// z = (u + vω)/m as small integers, if it fits.
pub(crate) fn small_coords(z: &QuadElem) -> Option<(i128, i128, i128)> {
    Some((z.num.x.to_i128()?, z.num.y.to_i128()?, z.den.to_i128()?))
}

fn norm_i128(f: Field, x: i128, y: i128) -> i128 {
    x * x + f.disc() as i128 * x * y + f.omega_norm() as i128 * y * y
}

/// All forms with disc −Δ and a < 0 < h(z, 1), for z = (u+vω)/m. Since h(z,1) ∈ m⁻²Z
/// and h(z,1) ≤ Δ/|a|, every such form has |a| ≤ Δm².
pub(crate) fn window_forms(z: &QuadElem, delta: u64) -> Vec<WindowForm> {
    let f = z.field();
    let (u, v, m) = small_coords(z).expect("window enumeration needs word-sized coordinates");
    let delta = delta as i128;
    let bound = delta * m * m;
    let zc = z.to_complex();
    let radius = (delta as f64).sqrt();
    let mut out = Vec::new();
    for a in 1..=bound {
        for (x, y) in disk_points(f, zc * a as f64, radius) {
            let (x, y) = (x as i128, y as i128);
            let shifted = norm_i128(f, m * x - a * u, m * y - a * v);
            let h_num = bound - shifted;
            if h_num <= 0 {
                continue;
            }
            let t = delta - norm_i128(f, x, y);
            if t % a != 0 {
                continue;
            }
            out.push(WindowForm { a_abs: a, beta: (x, y), c: t / a, h_num });
        }
    }
    out
}

/// Forms h with N(b) − ac = Δ and a < 0 < h(z, 1), sorted by (a, Re b, Im b).
pub fn enumerate_window(z: &QuadElem, delta: u64) -> Vec<HermitianForm> {
    let f = z.field();
    let t = f.disc() as i128;
    let mut raw = window_forms(z, delta);
    // b = β̄ = (x + d_K y) − yω; 2 Re b = 2x + d_K y, Im b has the sign of −y.
    raw.sort_by_key(|w| (Reverse(w.a_abs), 2 * w.beta.0 + t * w.beta.1, -w.beta.1));
    raw.into_iter()
        .map(|w| {
            let beta = QuadInt::new(f, w.beta.0.into(), w.beta.1.into());
            HermitianForm::new(BigInt::from(-w.a_abs), beta.conj(), BigInt::from(w.c))
        })
        .collect()
}

/// Slow reference for `enumerate_window`: every |a| up to the bound and every b in a
/// bounding box, filtered by the definition.
pub fn enumerate_window_naive(z: &QuadElem, delta: u64) -> Vec<HermitianForm> {
    let f = z.field();
    let m = z.den.to_i64().expect("small denominator");
    let bound = delta as i64 * m * m;
    let dz = BigInt::from(delta);
    let mut out = Vec::new();
    for a in 1..=bound {
        let center = z.to_complex().conj() * a as f64;
        let r = (delta as f64).sqrt() + 2.0;
        let ylo = ((center.im - r) / f.im_scale()).floor() as i64 - 1;
        let yhi = ((center.im + r) / f.im_scale()).ceil() as i64 + 1;
        for y in ylo..=yhi {
            let xc = center.re - y as f64 * f.disc() as f64 / 2.0;
            for x in (xc - r).floor() as i64 - 1..=(xc + r).ceil() as i64 + 1 {
                let b = QuadInt::from_i64(f, x, y);
                let num = b.norm() - &dz;
                let aa = BigInt::from(-a);
                if !(&num % &aa).is_zero() {
                    continue;
                }
                let h = HermitianForm::new(aa.clone(), b, num / &aa);
                if h.eval(z).is_positive() {
                    out.push(h);
                }
            }
        }
    }
    out.sort_by_key(|h| (h.a.clone(), h.b.twice_re(), h.b.y.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(f: Field, x: i64, y: i64) -> QuadInt {
        QuadInt::from_i64(f, x, y)
    }

    #[test]
    fn eval_examples() {
        let f = Field::D1;
        let h = HermitianForm::new(-1, f.zero(), 3);
        assert_eq!(h.eval(&QuadElem::zero(f)), BigRational::from_integer(3.into()));
        // b = 1 + i = 3 + ω
        let h = HermitianForm::new(-1, q(f, 3, 1), 1);
        assert_eq!(h.eval(&QuadElem::one(f)), BigRational::from_integer(2.into()));
    }

    #[test]
    fn act_examples() {
        for f in Field::ALL {
            let h = HermitianForm::new(2, q(f, 1, -1), -5);
            assert_eq!(h.act(&Mat2::identity(f)), h);
            let s = h.act(&Mat2::s(f));
            assert_eq!(s, HermitianForm::new(-5, -&h.b.conj(), 2));
            // Ā(h) with A = T_λ: b ↦ aλ̄ + b, c ↦ aλλ̄ + bλ + b̄λ̄ + c
            let l = q(f, 2, 1);
            let t = h.act(&Mat2::translation(&l.conj()));
            assert_eq!(t.a, h.a);
            assert_eq!(t.b, &l.conj().scale(&h.a) + &h.b);
            let c = &h.a * l.norm() + (&h.b * &l).trace() + &h.c;
            assert_eq!(t.c, c);
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(1, 3, Field::D1).unwrap(), 20.into());
        assert_eq!(alpha(3, 3, Field::D1).unwrap(), 68.into());
        // N(b) ∈ {0,1,2,4,5} with multiplicities 1,4,4,4,8: 8 + 48 + 24 + 16 + 24
        assert_eq!(alpha(1, 7, Field::D1).unwrap(), 120.into());
        assert_eq!(alpha_enumerated(1, 7, Field::D1).unwrap(), 120.into());
        assert!(matches!(alpha(1, 4, Field::D1), Err(Error::NormDelta { .. })));
        assert!(matches!(alpha(2, 3, Field::D1), Err(Error::InvalidWeight(2))));
    }

    #[test]
    fn expand_p_low_weight() {
        let p = expand_p(1, 3, Field::D1).unwrap();
        assert_eq!(p, BiPoly::zzbar_minus_one(Field::D1, 1).scale_int(&20.into()));
        let p = expand_p(3, 3, Field::D1).unwrap();
        assert_eq!(p, BiPoly::zzbar_minus_one(Field::D1, 3).scale_int(&68.into()));
    }

    #[test]
    fn window_matches_naive() {
        let f = Field::D1;
        let z = QuadElem::from_i64(f, 1, 0, 2);
        let fast = enumerate_window(&z, 3);
        let slow = enumerate_window_naive(&z, 3);
        let mut a = fast.clone();
        let mut b = slow.clone();
        a.sort_by_key(|h| format!("{h:?}"));
        b.sort_by_key(|h| format!("{h:?}"));
        assert_eq!(a, b);
        for h in &fast {
            assert!(h.a.is_negative());
            assert!(h.eval(&z).is_positive());
            assert_eq!(h.delta(), 3.into());
        }
    }

    #[test]
    fn window_at_zero_weights_to_alpha() {
        let f = Field::D1;
        let hs = enumerate_window(&QuadElem::zero(f), 3);
        let total: BigInt = hs.iter().map(|h| h.c.clone()).sum();
        assert_eq!(total, 20.into());
        let set: std::collections::HashSet<_> = hs.iter().cloned().collect();
        for h in &hs {
            assert!(set.contains(&HermitianForm::new(h.a.clone(), -&h.b, h.c.clone())));
        }
    }
}
