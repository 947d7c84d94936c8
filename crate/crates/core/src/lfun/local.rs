use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{kronecker, require_non_norm, Field};

/// Distinct prime divisors, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in prime_divisors(n) {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        out.push((p, e));
    }
    out
}

fn norm_mod(f: Field, x: u64, y: u64, n: u64) -> u64 {
    let t = f.disc().rem_euclid(n as i64) as u128;
    let w = f.omega_norm().rem_euclid(n as i64) as u128;
    let (x, y, n) = (x as u128, y as u128, n as u128);
    ((x * x + t * x % n * y + w * y % n * y) % n) as u64
}

/// #{β ∈ O_d/nO_d : N(β) + Δ ≡ 0 (mod n)} over all n² residues.
pub fn r_count_brute(delta: i64, n: u64, f: Field) -> u64 {
    let target = (-delta).rem_euclid(n as i64) as u64;
    let mut count = 0;
    for x in 0..n {
        for y in 0..n {
            if norm_mod(f, x, y, n) == target {
                count += 1;
            }
        }
    }
    count
}

/// Odd prime powers: 4N(x + yω) = (2x + d_K y)² − d_K y², and x ↦ 2x + d_K y is a
/// bijection mod n, so count pairs (u, y) with u² − d_K y² ≡ −4Δ.
fn count_odd(delta: i64, n: u64, f: Field) -> u64 {
    let mut squares = vec![0u32; n as usize];
    for u in 0..n {
        squares[((u as u128 * u as u128) % n as u128) as usize] += 1;
    }
    let c = (-4 * delta as i128).rem_euclid(n as i128) as u128;
    let dk = f.disc().rem_euclid(n as i64) as u128;
    (0..n)
        .map(|y| {
            let v = (c + dk * (y as u128 * y as u128 % n as u128)) % n as u128;
            squares[v as usize] as u64
        })
        .sum()
}

/// Powers of 2: lift the solution set one bit at a time.
fn count_two(delta: i64, j: u32, f: Field) -> u64 {
    let mut sols: Vec<(u64, u64)> = vec![(0, 0)];
    let mut m = 1u64;
    for _ in 0..j {
        let next = m * 2;
        let target = (-delta).rem_euclid(next as i64) as u64;
        sols = sols
            .iter()
            .flat_map(|&(x, y)| [(x, y), (x + m, y), (x, y + m), (x + m, y + m)])
            .filter(|&(x, y)| norm_mod(f, x, y, next) == target)
            .collect();
        m = next;
    }
    sols.len() as u64
}

fn r_prime_power(delta: i64, p: u64, j: u32, f: Field) -> u64 {
    if j == 0 {
        return 1;
    }
    let pj = p.pow(j);
    if p == 2 {
        return count_two(delta, j, f);
    }
    let dk = f.disc().unsigned_abs();
    if !dk.is_multiple_of(p) && !delta.unsigned_abs().is_multiple_of(p) {
        // smooth conic: p − χ(p) points mod p, each lifting to p^{j−1}
        let chi = kronecker(f.disc(), p as i64).expect("p > 0");
        return (p as i64 - chi as i64) as u64 * pj / p;
    }
    count_odd(delta, pj, f)
}

/// r(Δ, n), multiplicative in n.
pub fn r_count(delta: i64, n: u64, f: Field) -> u64 {
    assert!(n >= 1, "n must be positive");
    factor(n).into_iter().map(|(p, e)| r_prime_power(delta, p, e, f)).product()
}

/// Which row of the local-factor table applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// p ∤ d_K
    Unramified,
    /// p | d_K, p odd
    RamifiedOdd,
    /// p = 2, 4 | d_K, D₁ ≡ 2 (mod 8)
    TwoD1Is2,
    /// p = 2, 4 | d_K, D₁ ≡ 6 (mod 8)
    TwoD1Is6,
    /// p = 2, 4 | d_K, D₁ ≡ 3 or 7 (mod 8)
    TwoD1Odd,
}

/// R_p(−Δ, X) as integer coefficients of 1, X, X², ….
pub fn local_polynomial(p: u64, delta: u64, f: Field) -> Result<(Vec<BigInt>, Branch)> {
    let dk = f.disc();
    if !(dk.unsigned_abs() * delta).is_multiple_of(p) || prime_divisors(p) != [p] {
        return Err(Error::InvalidArgument(format!("{p} is not a prime dividing d_K·Δ")));
    }
    let mut t = 0u32;
    let mut rest = delta;
    while rest.is_multiple_of(p) {
        rest /= p;
        t += 1;
    }
    // the table is read at the negated discriminant −Δ
    let delta0 = -(rest as i64);
    let pi = p as i64;
    let monomial = |sign: i64, base: i64, e: u32| {
        let mut c = vec![BigInt::zero(); e as usize + 1];
        c[0] = BigInt::one();
        c[e as usize] += BigInt::from(sign) * num_traits::pow(BigInt::from(base), e as usize);
        c
    };
    if dk % pi != 0 {
        let chi = kronecker(dk, pi)? as i64;
        let coeffs = (0..=t).map(|j| num_traits::pow(BigInt::from(chi * pi), j as usize)).collect();
        return Ok((coeffs, Branch::Unramified));
    }
    if p != 2 {
        let d0 = (dk / pi).abs();
        let top = -(d0.pow(t)) * delta0;
        let sym = kronecker(top, pi)? as i64;
        return Ok((monomial(sym, pi, t + 1), Branch::RamifiedOdd));
    }
    let d1 = dk / 4;
    let d2 = if d1.rem_euclid(4) == 2 { -d1 / 2 } else { (1 - d1) / 2 };
    let bottom = delta0 * d2.pow(t);
    Ok(match d1.rem_euclid(8) {
        2 => (monomial(kronecker(8, bottom)? as i64, 2, t + 3), Branch::TwoD1Is2),
        6 => (monomial(-kronecker(-8, bottom)? as i64, 2, t + 3), Branch::TwoD1Is6),
        _ => (monomial(-kronecker(-4, bottom)? as i64, 2, t + 2), Branch::TwoD1Odd),
    })
}

fn eval_poly(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// R_p(−Δ, p^{−1−s}) together with the table row that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFactor {
    pub p: u64,
    pub s: i64,
    pub value: BigRational,
    pub case_tag: Branch,
}

pub fn local_factor(p: u64, delta: u64, s: i64, f: Field) -> Result<LocalFactor> {
    if s < 1 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let (coeffs, case_tag) = local_polynomial(p, delta, f)?;
    let x = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(p), (s + 1) as usize));
    Ok(LocalFactor { p, s, value: eval_poly(&coeffs, &x), case_tag })
}

/// θ(Δ, s) = ∏_{p | d_K Δ} R_p(−Δ, p^{−1−s}).
pub fn theta(delta: u64, s: i64, f: Field) -> Result<BigRational> {
    require_non_norm(delta, f)?;
    let mut acc = BigRational::one();
    for p in prime_divisors(f.disc().unsigned_abs() * delta) {
        acc *= local_factor(p, delta, s, f)?.value;
    }
    Ok(acc)
}

/// Coefficients of Y⁰..Y^{terms−1} in R_p(−Δ, Y)(1 − χ(p)Y)/(1 − pY).
pub fn local_series(p: u64, delta: u64, f: Field, terms: usize) -> Result<Vec<BigInt>> {
    let (r, _) = local_polynomial(p, delta, f)?;
    let chi = kronecker(f.disc(), p as i64)?;
    let mut num = vec![BigInt::zero(); terms];
    for (i, c) in r.iter().enumerate() {
        if i < terms {
            num[i] += c;
        }
        if i + 1 < terms {
            num[i + 1] -= c * chi;
        }
    }
    // divide by (1 − pY): running sum with weights p^j
    let mut out = vec![BigInt::zero(); terms];
    for j in 0..terms {
        out[j] = &num[j] + if j > 0 { &out[j - 1] * p } else { BigInt::zero() };
    }
    Ok(out)
}

/// Σ_{n ≤ n_max} r(Δ, n)/n^{s+1} in double precision. Δ here is the signed first
/// argument of r, so the series attached to a form discriminant −Δ uses −Δ.
pub fn zseries_partial(delta: i64, s: i64, n_max: u64, f: Field) -> f64 {
    let mut cache: HashMap<(u64, u32), u64> = HashMap::new();
    let mut spf = vec![0u64; n_max as usize + 1];
    for i in 2..=n_max as usize {
        if spf[i] == 0 {
            for j in (i..=n_max as usize).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u64;
                }
            }
        }
    }
    let mut sum = 0.0;
    for n in 1..=n_max {
        let mut m = n;
        let mut r = 1u64;
        while m > 1 {
            let p = spf[m as usize];
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            r *= *cache.entry((p, e)).or_insert_with(|| r_prime_power(delta, p, e, f));
            if r == 0 {
                break;
            }
        }
        if r > 0 {
            sum += r as f64 / (n as f64).powi(s as i32 + 1);
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn r_examples() {
        let f = Field::D1;
        assert_eq!(r_count(-3, 2, f), 2);
        assert_eq!(r_count(-3, 4, f), 0);
        assert_eq!(r_count(0, 1, Field::D7), 1);
    }

    #[test]
    fn fast_counts_match_brute_force() {
        for f in Field::ALL {
            for delta in [-7i64, -6, -3, -2, 0, 5] {
                for n in 1..=40 {
                    assert_eq!(r_count(delta, n, f), r_count_brute(delta, n, f), "{f} Δ={delta} n={n}");
                }
            }
        }
    }

    #[test]
    fn gaussian_factors() {
        let f = Field::D1;
        let l3 = local_factor(3, 3, 2, f).unwrap();
        assert_eq!(l3.value, q(8, 9));
        assert_eq!(l3.case_tag, Branch::Unramified);
        let l2 = local_factor(2, 3, 2, f).unwrap();
        assert_eq!(l2.value, q(15, 16));
        assert_eq!(l2.case_tag, Branch::TwoD1Odd);
        assert_eq!(local_factor(2, 3, 4, f).unwrap().value, q(255, 256));
        assert_eq!(theta(3, 2, f).unwrap(), q(5, 6));
        assert_eq!(theta(3, 4, f).unwrap(), q(425, 432));
        assert!(local_factor(5, 3, 2, f).is_err());
    }
}
