//! Exact arithmetic in the Euclidean rings O_d, d ∈ {1, 2, 3, 7, 11}, and their fraction fields.
//!
//! Elements are stored in the basis {1, ω} with ω = (d_K + √d_K)/2 and
//! ω² = d_K·ω − (d_K² − d_K)/4.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum Field {
    D1,
    D2,
    D3,
    D7,
    D11,
}

impl TryFrom<u32> for Field {
    type Error = Error;
    fn try_from(d: u32) -> Result<Self> {
        Field::new(d as i64)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.d()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(√-{})", self.d())
    }
}

/// Descriptor of one of the five rings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub d: u32,
    pub d_k: i64,
    /// (t, n) with ω² = t·ω − n.
    pub omega_minpoly: (i64, i64),
    pub units: Vec<QuadInt>,
    /// ω = (d_K + √d_K)/2 as a complex number.
    pub embedding: (f64, f64),
}

impl Field {
    pub const ALL: [Field; 5] = [Field::D1, Field::D2, Field::D3, Field::D7, Field::D11];

    pub fn new(d: i64) -> Result<Field> {
        match d {
            1 => Ok(Field::D1),
            2 => Ok(Field::D2),
            3 => Ok(Field::D3),
            7 => Ok(Field::D7),
            11 => Ok(Field::D11),
            _ => Err(Error::UnsupportedField(d)),
        }
    }

    pub fn d(self) -> u32 {
        match self {
            Field::D1 => 1,
            Field::D2 => 2,
            Field::D3 => 3,
            Field::D7 => 7,
            Field::D11 => 11,
        }
    }

    /// Field discriminant d_K.
    pub fn disc(self) -> i64 {
        match self {
            Field::D1 => -4,
            Field::D2 => -8,
            Field::D3 => -3,
            Field::D7 => -7,
            Field::D11 => -11,
        }
    }

    /// N(ω) = (d_K² − d_K)/4.
    pub fn omega_norm(self) -> i64 {
        let t = self.disc();
        (t * t - t) / 4
    }

    /// Imaginary part of ω, √|d_K|/2.
    pub fn im_scale(self) -> f64 {
        (self.disc().abs() as f64).sqrt() / 2.0
    }

    pub fn omega(self) -> Complex64 {
        Complex64::new(self.disc() as f64 / 2.0, self.im_scale())
    }

    pub fn spec(self) -> FieldSpec {
        FieldSpec {
            d: self.d(),
            d_k: self.disc(),
            omega_minpoly: (self.disc(), self.omega_norm()),
            units: self.units(),
            embedding: (self.omega().re, self.omega().im),
        }
    }

    pub fn unit_count(self) -> usize {
        match self {
            Field::D1 => 4,
            Field::D3 => 6,
            _ => 2,
        }
    }

    /// The full unit group, found as the norm-one lattice points.
    pub fn units(self) -> Vec<QuadInt> {
        disk_points(self, Complex64::new(0.0, 0.0), 1.0)
            .into_iter()
            .map(|(x, y)| QuadInt::from_i64(self, x, y))
            .filter(|u| u.norm().is_one())
            .collect()
    }

    pub fn zero(self) -> QuadInt {
        QuadInt::from_i64(self, 0, 0)
    }

    pub fn one(self) -> QuadInt {
        QuadInt::from_i64(self, 1, 0)
    }

    pub fn int(self, x: i64) -> QuadInt {
        QuadInt::from_i64(self, x, 0)
    }

    /// The internal basis element ω.
    pub fn omega_elem(self) -> QuadInt {
        QuadInt::from_i64(self, 0, 1)
    }

    /// Conventional generator: i, √−2, or (1+√−d)/2 for d = 3, 7, 11.
    pub fn tau(self) -> QuadInt {
        let t = self.disc();
        let x = match self {
            Field::D1 | Field::D2 => -t / 2,
            _ => (1 - t) / 2,
        };
        QuadInt::from_i64(self, x, 1)
    }

    /// √d_K = g·√−d with g = 2 for d ∈ {1, 2} and 1 otherwise.
    fn sqrt_scale(self) -> i64 {
        match self {
            Field::D1 | Field::D2 => 2,
            _ => 1,
        }
    }
}

/// Kronecker symbol (a/n), fully extended to negative and even n.
pub fn kronecker(a: i64, n: i64) -> Result<i32> {
    if a == 0 && n == 0 {
        return Err(Error::InvalidArgument("kronecker(0, 0) is undefined".into()));
    }
    if n == 0 {
        return Ok(if a.abs() == 1 { 1 } else { 0 });
    }
    let mut result = 1i32;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= v;
    }
    // Jacobi symbol for odd positive n.
    let mut a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    Ok(if n == 1 { result } else { 0 })
}

/// Lattice points x + yω within `radius` of `center`, with a small safety margin.
/// Callers filter exactly; the returned set is a superset of the closed disk.
pub fn disk_points(f: Field, center: Complex64, radius: f64) -> Vec<(i64, i64)> {
    let s = f.im_scale();
    let half_t = f.disc() as f64 / 2.0;
    let eps = 1e-7 * (1.0 + center.norm() + radius);
    let r = radius + eps;
    let y_lo = ((center.im - r) / s).floor() as i64;
    let y_hi = ((center.im + r) / s).ceil() as i64;
    let mut out = Vec::new();
    for y in y_lo..=y_hi {
        let dy = y as f64 * s - center.im;
        let w2 = r * r - dy * dy;
        if w2 < 0.0 {
            continue;
        }
        let w = w2.sqrt() + eps;
        let cx = center.re - y as f64 * half_t;
        let x_lo = (cx - w).floor() as i64;
        let x_hi = (cx + w).ceil() as i64;
        for x in x_lo..=x_hi {
            out.push((x, y));
        }
    }
    out
}

/// Element x + yω of O_d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadInt {
    pub field: Field,
    pub x: BigInt,
    pub y: BigInt,
}

impl QuadInt {
    pub fn new(field: Field, x: BigInt, y: BigInt) -> Self {
        QuadInt { field, x, y }
    }

    pub fn from_i64(field: Field, x: i64, y: i64) -> Self {
        QuadInt { field, x: x.into(), y: y.into() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadInt { field: self.field, x: &self.x + &self.y * self.field.disc(), y: -&self.y }
    }

    /// N(x + yω) = x² + d_K·xy + n·y².
    pub fn norm(&self) -> BigInt {
        let f = self.field;
        &self.x * &self.x + &self.x * &self.y * f.disc() + &self.y * &self.y * f.omega_norm()
    }

    /// Tr(x + yω) = 2x + d_K·y.
    pub fn trace(&self) -> BigInt {
        &self.x * 2 + &self.y * self.field.disc()
    }

    pub fn to_complex(&self) -> Complex64 {
        let x = self.x.to_f64().unwrap_or(f64::NAN);
        let y = self.y.to_f64().unwrap_or(f64::NAN);
        Complex64::new(x, 0.0) + self.field.omega() * y
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QuadInt { field: self.field, x: &self.x * c, y: &self.y * c }
    }

    /// gcd of the two rational coordinates.
    pub fn content(&self) -> BigInt {
        self.x.gcd(&self.y)
    }

    /// Real part of the complex value, times two: 2x + d_K·y.
    pub fn twice_re(&self) -> BigInt {
        self.trace()
    }

    /// Coordinates in the conventional basis {1, √−d}: (Re, coefficient of √−d).
    pub fn conventional(&self) -> (BigRational, BigRational) {
        QuadElem::from(self.clone()).conventional()
    }

    /// Inverse in O_d, when self is a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.norm().is_one() {
            Some(self.conj())
        } else {
            None
        }
    }

    /// Exact division in O_d, if the quotient is integral.
    pub fn div_exact(&self, other: &QuadInt) -> Option<Self> {
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        let p = self * &other.conj();
        if (&p.x % &n).is_zero() && (&p.y % &n).is_zero() {
            Some(QuadInt { field: self.field, x: p.x / &n, y: p.y / &n })
        } else {
            None
        }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        QuadElem::from(self.clone()).fmt(f)
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.field, o.field);
        QuadInt { field: self.field, x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.field, o.field);
        QuadInt { field: self.field, x: &self.x - &o.x, y: &self.y - &o.y }
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, o: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.field, o.field);
        let f = self.field;
        let yy = &self.y * &o.y;
        QuadInt {
            field: f,
            x: &self.x * &o.x - &yy * f.omega_norm(),
            y: &self.x * &o.y + &o.x * &self.y + yy * f.disc(),
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { field: self.field, x: -&self.x, y: -&self.y }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t { (&self).$m(o) }
        }
    )*};
}
forward_owned!(QuadInt, Add add, Sub sub, Mul mul);
forward_owned!(QuadElem, Add add, Sub sub, Mul mul);

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}

/// Element (x + yω)/den of K, with den > 0 and gcd(x, y, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadElem {
    pub num: QuadInt,
    pub den: BigInt,
}

impl From<QuadInt> for QuadElem {
    fn from(num: QuadInt) -> Self {
        QuadElem { num, den: BigInt::one() }
    }
}

impl QuadElem {
    pub fn new(num: QuadInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut e = QuadElem { num, den };
        e.reduce();
        e
    }

    pub fn from_i64(f: Field, x: i64, y: i64, den: i64) -> Self {
        QuadElem::new(QuadInt::from_i64(f, x, y), den.into())
    }

    /// z = re + im·√−d.
    pub fn from_conventional(f: Field, re: &BigRational, im: &BigRational) -> Self {
        let g = f.sqrt_scale();
        // √−d = (2ω − d_K)/g
        let c_y = im * BigRational::new(2.into(), g.into());
        let c_x = re - im * BigRational::new(f.disc().into(), g.into());
        let den = c_x.denom().lcm(c_y.denom());
        let x = c_x.numer() * (&den / c_x.denom());
        let y = c_y.numer() * (&den / c_y.denom());
        QuadElem::new(QuadInt::new(f, x, y), den)
    }

    /// Coordinates (Re, coefficient of √−d).
    pub fn conventional(&self) -> (BigRational, BigRational) {
        let f = self.num.field;
        let g = f.sqrt_scale();
        let re = BigRational::new(self.num.twice_re(), &self.den * 2);
        let im = BigRational::new(&self.num.y * g, &self.den * 2);
        (re, im)
    }

    fn reduce(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            self.num = -&self.num;
        }
        let g = self.num.content().gcd(&self.den);
        if !g.is_one() {
            self.num.x /= &g;
            self.num.y /= &g;
            self.den /= &g;
        }
    }

    pub fn field(&self) -> Field {
        self.num.field
    }

    pub fn zero(f: Field) -> Self {
        f.zero().into()
    }

    pub fn one(f: Field) -> Self {
        f.one().into()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn conj(&self) -> Self {
        QuadElem { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn norm(&self) -> BigRational {
        BigRational::new(self.num.norm(), &self.den * &self.den)
    }

    pub fn trace(&self) -> BigRational {
        BigRational::new(self.num.trace(), self.den.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.num.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadElem::new(self.num.conj().scale(&self.den), n))
    }

    pub fn div(&self, o: &QuadElem) -> Option<Self> {
        o.inv().map(|i| self * &i)
    }

    pub fn from_rational(f: Field, r: &BigRational) -> Self {
        QuadElem::new(QuadInt::new(f, r.numer().clone(), BigInt::zero()), r.denom().clone())
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.y.is_zero() {
            Some(BigRational::new(self.num.x.clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        self.num.to_complex() / d
    }

    pub fn pow(&self, e: u32) -> Self {
        QuadElem::new(self.num.pow(e), num_traits::pow(self.den.clone(), e as usize))
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        QuadElem::new(self.num.scale(c), self.den.clone())
    }
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        if self.den == o.den {
            return QuadElem::new(&self.num + &o.num, self.den.clone());
        }
        QuadElem::new(&self.num.scale(&o.den) + &o.num.scale(&self.den), &self.den * &o.den)
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        QuadElem::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.conventional();
        let unit = match self.field() {
            Field::D1 => "i".to_string(),
            fl => format!("√-{}", fl.d()),
        };
        if im.is_zero() {
            return write!(f, "{}", fmt_rat(&re));
        }
        let coef = if im.abs().is_one() { String::new() } else { fmt_rat(&im.abs()) };
        let sign = if im.is_negative() { "-" } else { "+" };
        if re.is_zero() {
            let lead = if im.is_negative() { "-" } else { "" };
            write!(f, "{lead}{coef}{unit}")
        } else {
            write!(f, "{}{sign}{coef}{unit}", fmt_rat(&re))
        }
    }
}

/// Nearest lattice point to an element of K. Ties go to the smallest real part,
/// then the smallest imaginary part.
pub fn nearest_int(z: &QuadElem) -> QuadInt {
    let f = z.field();
    let t = f.disc();
    let m = &z.den;
    let (u, v) = (&z.num.x, &z.num.y);
    let y0 = v.div_floor(m);
    let mut best: Option<((BigInt, BigInt, BigInt), QuadInt)> = None;
    for dy in -1..=2i64 {
        let y = &y0 + dy;
        // best real coordinate for this row: x ≈ (2u + (v − y·m)·d_K)/(2m)
        let num: BigInt = u * 2 + (v - &y * m) * t;
        let x0 = num.div_floor(&(m * 2));
        for dx in -1..=2i64 {
            let x = &x0 + dx;
            let diff = QuadInt::new(f, u - &x * m, v - &y * m);
            let key = (diff.norm(), &x * 2 + &y * t, y.clone());
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, QuadInt::new(f, x, y.clone())));
            }
        }
    }
    best.expect("candidate set is non-empty").1
}

/// Nearest lattice point to a complex number, with the same tie-break. Distances
/// within a relative 1e-12 of the minimum count as ties.
pub fn nearest_int_complex(z: Complex64, f: Field) -> QuadInt {
    let (x, y) = nearest_coords(z, f);
    QuadInt::from_i64(f, x, y)
}

pub(crate) fn nearest_coords(z: Complex64, f: Field) -> (i64, i64) {
    let s = f.im_scale();
    let half_t = f.disc() as f64 / 2.0;
    let y0 = (z.im / s).floor() as i64;
    let mut cands: Vec<(f64, f64, i64, i64)> = Vec::with_capacity(16);
    for y in y0 - 1..=y0 + 2 {
        let x0 = (z.re - y as f64 * half_t).floor() as i64;
        for x in x0 - 1..=x0 + 2 {
            let re = x as f64 + y as f64 * half_t;
            let dist = (re - z.re).powi(2) + (y as f64 * s - z.im).powi(2);
            cands.push((dist, re, x, y));
        }
    }
    let min = cands.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
    let tol = 1e-12 * min.max(1.0);
    cands
        .into_iter()
        .filter(|c| c.0 <= min + tol)
        .min_by(|a, b| match a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal) {
            Ordering::Equal => a.3.cmp(&b.3),
            o => o,
        })
        .map(|c| (c.2, c.3))
        .expect("candidate set is non-empty")
}

/// Some b with N(b) = delta, or None if delta is not a norm from O_d.
pub fn norm_witness(delta: u64, f: Field) -> Option<QuadInt> {
    let target = BigInt::from(delta);
    disk_points(f, Complex64::new(0.0, 0.0), (delta as f64).sqrt())
        .into_iter()
        .map(|(x, y)| QuadInt::from_i64(f, x, y))
        .filter(|b| b.norm() == target)
        .min_by_key(|b| (b.y.abs(), b.twice_re().is_negative(), b.y.is_negative(), b.twice_re().abs()))
}

pub fn is_norm(delta: u64, f: Field) -> bool {
    norm_witness(delta, f).is_some()
}

/// The `count` smallest positive integers that are not norms from O_d.
pub fn smallest_non_norms(f: Field, count: usize) -> Vec<u64> {
    (1..).filter(|&n| !is_norm(n, f)).take(count).collect()
}

/// Reject norms with an error naming the witness.
pub fn require_non_norm(delta: u64, f: Field) -> Result<()> {
    if delta == 0 {
        return Err(Error::InvalidArgument("Δ must be positive".into()));
    }
    match norm_witness(delta, f) {
        Some(w) => Err(Error::NormDelta { d: f.d(), delta, witness: w.to_string() }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(f: Field, x: i64, y: i64) -> QuadInt {
        QuadInt::from_i64(f, x, y)
    }

    #[test]
    fn omega_satisfies_minimal_polynomial() {
        for f in Field::ALL {
            let w = f.omega_elem();
            let lhs = &w * &w;
            let rhs = &w.scale(&f.disc().into()) - &f.int(f.omega_norm());
            assert_eq!(lhs, rhs);
            let c = f.omega();
            let z = c * c - c * f.disc() as f64 + f.omega_norm() as f64;
            assert!(z.norm() < 1e-12);
        }
    }

    #[test]
    fn norms_of_small_elements() {
        // 1 + i = 3 + ω in the internal basis
        assert_eq!(q(Field::D1, 3, 1).norm(), 2.into());
        assert_eq!(q(Field::D3, 0, 1).norm(), 3.into());
        for f in Field::ALL {
            assert!(f.zero().norm().is_zero());
        }
    }

    #[test]
    fn unit_groups() {
        for f in Field::ALL {
            assert_eq!(f.units().len(), f.unit_count());
            assert_eq!(f.spec().d_k, if f.d() <= 2 { -4 * f.d() as i64 } else { -(f.d() as i64) });
        }
    }

    #[test]
    fn tau_is_conventional_generator() {
        let i = Field::D1.tau();
        assert_eq!(&i * &i, Field::D1.int(-1));
        let r2 = Field::D2.tau();
        assert_eq!(&r2 * &r2, Field::D2.int(-2));
        for f in [Field::D3, Field::D7, Field::D11] {
            let t = f.tau();
            // τ² − τ + (1 + d)/4 = 0
            let lhs = &(&t * &t) - &t;
            assert_eq!(lhs, f.int(-((1 + f.d() as i64) / 4)));
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 3).unwrap(), -1);
        assert_eq!(kronecker(-8, 3).unwrap(), 1);
        assert_eq!(kronecker(-4, -3).unwrap(), 1);
        assert_eq!(kronecker(5, 2).unwrap(), -1);
        assert_eq!(kronecker(7, 2).unwrap(), 1);
        assert_eq!(kronecker(6, 2).unwrap(), 0);
        assert_eq!(kronecker(-3, -1).unwrap(), -1);
        assert!(kronecker(0, 0).is_err());
    }

    fn is_prime(p: i64) -> bool {
        p >= 2 && (2..).take_while(|i| i * i <= p).all(|i| p % i != 0)
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in (3..200).filter(|&p| is_prime(p)) {
            for a in -199..200i64 {
                let r = a.rem_euclid(p);
                let euler = if r == 0 {
                    0
                } else {
                    let mut acc = 1i64;
                    for _ in 0..(p - 1) / 2 {
                        acc = acc * r % p;
                    }
                    if acc == 1 { 1 } else { -1 }
                };
                assert_eq!(kronecker(a, p).unwrap(), euler, "({a}/{p})");
            }
        }
    }

    #[test]
    fn nearest_int_examples() {
        let f = Field::D1;
        assert!(nearest_int_complex(Complex64::new(0.2, -0.3), f).is_zero());
        let n = nearest_int_complex(Complex64::new(1.5, 0.5), f);
        assert_eq!(n, f.int(1));
        let half = QuadElem::from_conventional(f, &BigRational::new(3.into(), 2.into()), &BigRational::new(1.into(), 2.into()));
        assert_eq!(nearest_int(&half), f.int(1));
        let h3 = QuadElem::from_i64(Field::D3, 1, 0, 2);
        assert!(nearest_int(&h3).is_zero());
        assert!(nearest_int_complex(Complex64::new(0.5, 0.0), Field::D3).is_zero());
    }

    #[test]
    fn non_norms() {
        assert!(!is_norm(3, Field::D1));
        assert!(is_norm(3, Field::D2));
        let expect = [(Field::D1, 3), (Field::D2, 5), (Field::D3, 2), (Field::D7, 3), (Field::D11, 2)];
        for (f, n) in expect {
            assert_eq!(smallest_non_norms(f, 1)[0], n);
        }
        let err = require_non_norm(4, Field::D1).unwrap_err();
        assert!(err.to_string().starts_with("4 = N(2)"), "{err}");
    }

    #[test]
    fn conventional_round_trip() {
        use num_rational::BigRational as R;
        for f in Field::ALL {
            let re = R::new(1.into(), 3.into());
            let im = R::new((-5).into(), 7.into());
            let z = QuadElem::from_conventional(f, &re, &im);
            assert_eq!(z.conventional(), (re.clone(), im.clone()));
            let c = z.to_complex();
            assert!((c.re - 1.0 / 3.0).abs() < 1e-12);
            assert!((c.im + 5.0 / 7.0 * (f.d() as f64).sqrt()).abs() < 1e-12);
        }
        assert_eq!(Field::D1.tau().to_string(), "i");
        assert_eq!(q(Field::D1, 3, 1).to_string(), "1+i");
    }
}
