use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{kronecker, smallest_non_norms, Field};
use crate::forms::alpha;

use super::local::theta;

const RM: RoundingMode = RoundingMode::ToEven;
/// Extra working bits on top of the requested precision.
const GUARD: usize = 32;

pub fn consts() -> Consts {
    Consts::new().expect("constant cache")
}

pub fn bf_int(n: &BigInt, p: usize, cc: &mut Consts) -> BigFloat {
    BigFloat::parse(&n.to_string(), Radix::Dec, p, RM, cc)
}

pub fn bf_rational(q: &BigRational, p: usize, cc: &mut Consts) -> BigFloat {
    bf_int(q.numer(), p, cc).div(&bf_int(q.denom(), p, cc), p, RM)
}

pub fn bf_to_f64(x: &BigFloat, cc: &mut Consts) -> f64 {
    x.format(Radix::Dec, RM, cc).ok().and_then(|s| s.parse().ok()).unwrap_or(f64::NAN)
}

/// Positional decimal expansion of x, cut to the digits its precision supports.
pub fn bf_decimal(x: &BigFloat, cc: &mut Consts) -> String {
    let Ok(raw) = x.format(Radix::Dec, RM, cc) else {
        return "NaN".into();
    };
    if x.is_zero() {
        return "0".into();
    }
    let (mant, exp) = raw.split_once('e').unwrap_or((&raw, "0"));
    let exp: i64 = exp.parse().unwrap_or(0);
    let (sign, mant) = mant.strip_prefix('-').map_or(("", mant), |m| ("-", m));
    let max_digits = (x.precision().unwrap_or(64) as f64 * std::f64::consts::LOG10_2).floor() as usize;
    let mut digits: String = mant.chars().filter(char::is_ascii_digit).take(max_digits.max(1)).collect();
    while digits.len() > 1 && digits.ends_with('0') {
        digits.pop();
    }
    if !(-30..=30).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        let tail = if tail.is_empty() { String::new() } else { format!(".{tail}") };
        return format!("{sign}{head}{tail}e{exp}");
    }
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{digits}", "0".repeat((-point) as usize))
    } else if point as usize >= digits.len() {
        format!("{digits}{}", "0".repeat(point as usize - digits.len()))
    } else {
        let (a, b) = digits.split_at(point as usize);
        format!("{a}.{b}")
    };
    format!("{sign}{body}")
}

/// −log₁₀ of the relative difference |a − b|/|b|; infinite when equal.
pub fn agreeing_digits(a: &BigFloat, b: &BigFloat, cc: &mut Consts) -> f64 {
    let p = a.precision().unwrap_or(128).max(b.precision().unwrap_or(128));
    let diff = a.sub(b, p, RM);
    if diff.is_zero() {
        return f64::INFINITY;
    }
    let rel = bf_to_f64(&diff.div(b, p, RM).abs(), cc);
    -rel.log10()
}

/// Bernoulli numbers B_0, …, B_n with B_1 = −1/2.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    // pascal holds C(m+1, ·) at step m
    let mut pascal = vec![BigInt::one(), BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::one(); m + 2];
        for j in 1..=m {
            next[j] = &pascal[j - 1] + &pascal[j];
        }
        pascal = next;
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let s = (0..m).fold(BigRational::zero(), |acc, j| acc + &b[j] * BigRational::from_integer(pascal[j].clone()));
        b.push(-s / BigRational::from_integer(pascal[m].clone()));
    }
    b
}

pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_numbers(n).pop().expect("non-empty")
}

/// B_n(x) = Σ C(n, j) B_j x^{n−j}.
pub fn bernoulli_poly(n: usize, x: &BigRational) -> BigRational {
    let b = bernoulli_numbers(n);
    let mut c = BigInt::one();
    let mut acc = BigRational::zero();
    for (j, bj) in b.iter().enumerate() {
        acc += bj * BigRational::from_integer(c.clone()) * num_traits::pow(x.clone(), n - j);
        c = c * (n - j) / (j + 1);
    }
    acc
}

/// B_{n,χ} = F^{n−1} Σ_{a=1}^{F} χ(a) B_n(a/F) for χ = χ_{d_K}, F = |d_K|.
pub fn generalized_bernoulli(n: usize, f: Field) -> BigRational {
    let cond = f.disc().unsigned_abs();
    let fq = BigRational::from_integer(cond.into());
    let sum = (1..=cond).fold(BigRational::zero(), |acc, a| {
        let chi = kronecker(f.disc(), a as i64).expect("a > 0");
        if chi == 0 {
            acc
        } else {
            acc + BigRational::from_integer(chi.into()) * bernoulli_poly(n, &BigRational::new(a.into(), cond.into()))
        }
    });
    sum * num_traits::pow(fq, n - 1)
}

/// L(χ_{d_K}, s) for s ≤ 0 through L(χ, 1 − n) = −B_{n,χ}/n.
pub fn l_negative_exact(f: Field, s: i64) -> Result<BigRational> {
    if s > 0 {
        return Err(Error::InvalidArgument(format!("s = {s} must be ≤ 0")));
    }
    let n = (1 - s) as usize;
    Ok(-generalized_bernoulli(n, f) / BigRational::from_integer(n.into()))
}

/// Hurwitz ζ(s, a/F) by Euler–Maclaurin at working precision `p`.
fn hurwitz_zeta(s: usize, a: u64, cond: u64, p: usize, bern: &[BigRational], cc: &mut Consts) -> BigFloat {
    let n_terms = p / 2 + 16;
    let j_terms = (bern.len() - 1) / 2;
    let fq = BigFloat::from_u64(cond, p);
    let x = BigFloat::from_u64(a, p).div(&fq, p, RM);
    let mut sum = BigFloat::from_u64(0, p);
    for n in 0..n_terms {
        let t = BigFloat::from_u64(n as u64, p).add(&x, p, RM);
        sum = sum.add(&t.powi(s, p, RM).reciprocal(p, RM), p, RM);
    }
    let big_x = BigFloat::from_u64(n_terms as u64, p).add(&x, p, RM);
    let inv_x = big_x.reciprocal(p, RM);
    let x_pow_s = big_x.powi(s, p, RM);
    // X^{1−s}/(s−1) + X^{−s}/2
    sum = sum.add(&big_x.div(&x_pow_s, p, RM).div(&BigFloat::from_u64(s as u64 - 1, p), p, RM), p, RM);
    let x_neg_s = x_pow_s.reciprocal(p, RM);
    sum = sum.add(&x_neg_s.div(&BigFloat::from_u64(2, p), p, RM), p, RM);
    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · X^{−s−2j+1}
    let inv_x2 = inv_x.mul(&inv_x, p, RM);
    let mut rising = BigInt::from(s);
    let mut fact = BigInt::from(2);
    let mut xp = x_neg_s.mul(&inv_x, p, RM);
    for j in 1..=j_terms {
        let coeff = &bern[2 * j] * BigRational::new(rising.clone(), fact.clone());
        sum = sum.add(&bf_rational(&coeff, p, cc).mul(&xp, p, RM), p, RM);
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
        xp = xp.mul(&inv_x2, p, RM);
    }
    sum
}

/// L(χ_{d_K}, s) = F^{−s} Σ_{a=1}^{F} χ(a) ζ(s, a/F) for s ≥ 2.
pub fn l_positive_numeric(f: Field, s: i64, precision_bits: usize) -> Result<BigFloat> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("s = {s} must be ≥ 2")));
    }
    let p = precision_bits + GUARD;
    let mut cc = consts();
    let cond = f.disc().unsigned_abs();
    let bern = bernoulli_numbers(2 * (p / 6 + 4));
    let mut total = BigFloat::from_u64(0, p);
    for a in 1..=cond {
        let chi = kronecker(f.disc(), a as i64)?;
        if chi == 0 {
            continue;
        }
        let z = hurwitz_zeta(s as usize, a, cond, p, &bern, &mut cc);
        total = if chi > 0 { total.add(&z, p, RM) } else { total.sub(&z, p, RM) };
    }
    let scale = BigFloat::from_u64(cond, p).powi(s as usize, p, RM);
    let mut out = total.div(&scale, p, RM);
    out.set_precision(precision_bits, RM).expect("precision");
    Ok(out)
}

pub fn l_positive_f64(f: Field, s: i64) -> f64 {
    let v = l_positive_numeric(f, s, 64).expect("s ≥ 2");
    bf_to_f64(&v, &mut consts())
}

/// ζ(2m) = (−1)^{m+1} B_{2m} (2π)^{2m} / (2 (2m)!), as the rational multiple of π^{2m}.
pub fn zeta_even_over_pi(s: i64) -> BigRational {
    assert!(s >= 2 && s % 2 == 0, "even s ≥ 2");
    let m = s as usize;
    let b = bernoulli(m);
    let fact: BigInt = (1..=m).map(BigInt::from).product();
    let sign = if (m / 2) % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    BigRational::from_integer(sign * num_traits::pow(BigInt::from(2), m)) * b / BigRational::from_integer(fact * 2)
}

pub fn zeta_even_f64(s: i64) -> f64 {
    zeta_even_over_pi(s).to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(s as i32)
}

/// L(χ, 1−s) = 2|d_K|^{s−1/2}(2π)^{−s}Γ(s) sin(sπ/2) L(χ, s).
pub fn functional_equation(f: Field, s: i64, l_s: f64) -> f64 {
    assert!(s >= 2, "s ≥ 2");
    let sine = match s.rem_euclid(4) {
        1 => 1.0,
        3 => -1.0,
        _ => return 0.0,
    };
    let dk = f.disc().unsigned_abs() as f64;
    let gamma: f64 = (1..s).map(|i| i as f64).product();
    2.0 * dk.powf(s as f64 - 0.5) * (2.0 * std::f64::consts::PI).powi(-s as i32) * gamma * sine * l_s
}

/// The same map at high precision.
pub fn functional_equation_hp(f: Field, s: i64, l_s: &BigFloat, precision_bits: usize) -> BigFloat {
    assert!(s >= 2, "s ≥ 2");
    let p = precision_bits + GUARD;
    let sine: i64 = match s.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => return BigFloat::from_u64(0, precision_bits),
    };
    let mut cc = consts();
    let dk = f.disc().unsigned_abs();
    let gamma: BigInt = (1..s).map(BigInt::from).product();
    let pi = cc.pi(p, RM);
    let two_pi_s = pi.mul(&BigFloat::from_u64(2, p), p, RM).powi(s as usize, p, RM);
    let rational = BigInt::from(2 * sine) * num_traits::pow(BigInt::from(dk), s as usize - 1) * gamma;
    let sqrt_dk = BigFloat::from_u64(dk, p).sqrt(p, RM);
    let mut out = bf_int(&rational, p, &mut cc).mul(&sqrt_dk, p, RM).div(&two_pi_s, p, RM).mul(l_s, p, RM);
    out.set_precision(precision_bits, RM).expect("precision");
    out
}

/// A special value L(χ_{d_K}, s) from the Cohen–Zagier formulas. For s < 0 it is the
/// rational `exact`; for s > 0 it is coefficient·π^{pi_power}/√radicand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LValue {
    pub d: u32,
    pub s: i64,
    pub delta: u64,
    pub exact: Option<BigRational>,
    pub coefficient: Option<BigRational>,
    pub pi_power: Option<u32>,
    pub radicand: u64,
    /// Decimal expansion at `precision_bits`.
    pub numeric: String,
    pub precision_bits: usize,
}

impl LValue {
    pub fn to_bigfloat(&self, cc: &mut Consts) -> BigFloat {
        let p = self.precision_bits + GUARD;
        let mut v = match (&self.exact, &self.coefficient, self.pi_power) {
            (Some(q), _, _) => bf_rational(q, p, cc),
            (None, Some(c), Some(m)) => {
                let pi = cc.pi(p, RM).powi(m as usize, p, RM);
                let root = BigFloat::from_u64(self.radicand, p).sqrt(p, RM);
                bf_rational(c, p, cc).mul(&pi, p, RM).div(&root, p, RM)
            }
            _ => unreachable!("an LValue is exact or a π-multiple"),
        };
        v.set_precision(self.precision_bits, RM).expect("precision");
        v
    }

    pub fn to_f64(&self) -> f64 {
        self.numeric.parse().unwrap_or(f64::NAN)
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).expect("digit") as usize]).collect()
}

impl fmt::Display for LValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = &self.exact {
            return write!(f, "{q}");
        }
        let c = self.coefficient.as_ref().expect("coefficient");
        let m = self.pi_power.expect("π power");
        let pi = format!("π{}", superscript(m));
        let mut body = if c.numer().is_one() {
            format!("{pi}/{}", c.denom())
        } else if c.denom().is_one() {
            format!("{}·{pi}", c.numer())
        } else {
            format!("({c})·{pi}")
        };
        if self.radicand > 1 {
            body = format!("{body}/√{}", self.radicand);
        }
        let full = format!("{:.12}", self.to_f64());
        let digits = &full[..full.len() - 4];
        write!(f, "{body} ≈ {digits}…")
    }
}

/// Whether the Cohen–Zagier formulas cover (d, s).
pub fn in_scope(f: Field, s: i64) -> bool {
    match s {
        3 | -2 => true,
        5 | -4 => matches!(f, Field::D1 | Field::D3 | Field::D7),
        7 | -6 => f == Field::D3,
        _ => false,
    }
}

/// The rational c with L(χ_{d_K}, k+2) = c·π^{k+2}/√|d_K|, read off from the
/// average value of H_{k,Δ}:
/// c = 2Δ^{k+1} θ(Δ, k+1) (ζ(k+1)/π^{k+1}) / ((k+1) α_{k,Δ}).
fn positive_coefficient(f: Field, k: u32, delta: u64) -> Result<BigRational> {
    let a = alpha(k, delta, f)?;
    let th = theta(delta, k as i64 + 1, f)?;
    let zr = zeta_even_over_pi(k as i64 + 1);
    let num = BigRational::from_integer(BigInt::from(2) * num_traits::pow(BigInt::from(delta), k as usize + 1));
    Ok(num * th * zr / BigRational::from_integer(a * (k + 1)))
}

/// Cohen–Zagier value of L(χ_{d_K}, s) for s ∈ {3, 5, 7, −2, −4, −6} within scope.
/// Δ defaults to the smallest non-norm.
pub fn cohen_zagier(f: Field, s: i64, delta: Option<u64>, precision_bits: usize) -> Result<LValue> {
    if !in_scope(f, s) {
        return Err(Error::OutOfScope { d: f.d(), s });
    }
    let delta = delta.unwrap_or_else(|| smallest_non_norms(f, 1)[0]);
    let k = if s > 0 { s - 2 } else { -s - 1 } as u32;
    let c = positive_coefficient(f, k, delta)?;
    let dk = f.disc().unsigned_abs();
    let mut out = LValue {
        d: f.d(),
        s,
        delta,
        exact: None,
        coefficient: None,
        pi_power: None,
        radicand: 1,
        numeric: String::new(),
        precision_bits,
    };
    if s < 0 {
        // L(χ, 1−t) = 2|d_K|^{t−1}(t−1)!(−1)^{(t−1)/2} c / 2^t at t = k+2
        let t = k as usize + 2;
        let fact: BigInt = (1..t).map(BigInt::from).product();
        let sign = if ((t - 1) / 2).is_odd() { -BigInt::one() } else { BigInt::one() };
        let scale = BigRational::new(
            BigInt::from(2) * num_traits::pow(BigInt::from(dk), t - 1) * fact * sign,
            num_traits::pow(BigInt::from(2), t),
        );
        out.exact = Some(scale * c);
    } else {
        // pull square factors out of √|d_K|
        let (outside, radicand) = match dk {
            4 => (2, 1),
            8 => (2, 2),
            r => (1, r),
        };
        out.coefficient = Some(c / BigRational::from_integer(outside.into()));
        out.pi_power = Some(s as u32);
        out.radicand = radicand;
    }
    let mut cc = consts();
    out.numeric = bf_decimal(&out.to_bigfloat(&mut cc), &mut cc);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn decimal_rendering() {
        let mut cc = consts();
        let mut render = |n: i64, d: i64| {
            let x = bf_rational(&BigRational::new(n.into(), d.into()), 128, &mut cc);
            bf_decimal(&x, &mut cc)
        };
        assert_eq!(render(-1, 2), "-0.5");
        assert_eq!(render(12345, 1), "12345");
        assert_eq!(render(3, 1000), "0.003");
        let third = render(1, 3);
        assert!(third.starts_with("0.3333333333") && third.len() < 45);
    }

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[6], q(1, 42));
        assert_eq!(b[8], q(-1, 30));
        assert!(b[3].is_zero() && b[5].is_zero());
    }

    #[test]
    fn gaussian_negative_values() {
        assert_eq!(l_negative_exact(Field::D1, -2).unwrap(), q(-1, 2));
        assert_eq!(l_negative_exact(Field::D1, -4).unwrap(), q(5, 2));
        assert_eq!(cohen_zagier(Field::D1, -2, Some(3), 128).unwrap().exact, Some(q(-1, 2)));
        assert_eq!(cohen_zagier(Field::D1, -4, Some(3), 128).unwrap().exact, Some(q(5, 2)));
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_even_over_pi(2), q(1, 6));
        assert_eq!(zeta_even_over_pi(4), q(1, 90));
        assert_eq!(zeta_even_over_pi(6), q(1, 945));
    }

    #[test]
    fn functional_equation_gaussian() {
        let l3 = std::f64::consts::PI.powi(3) / 32.0;
        assert!((functional_equation(Field::D1, 3, l3) + 0.5).abs() < 1e-12);
        assert_eq!(functional_equation(Field::D1, 4, 1.0), 0.0);
    }

    #[test]
    fn scope() {
        assert!(matches!(cohen_zagier(Field::D2, 5, None, 128), Err(Error::OutOfScope { .. })));
        assert!(cohen_zagier(Field::D3, -6, None, 128).is_ok());
    }
}
