//! H_{k,Δ}(z) = Σ max(0, h(z,1))^k over forms of discriminant −Δ with a < 0.

use std::collections::{BTreeMap, HashSet};
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cfrac::hurwitz_cf;
use crate::error::{Error, Result};
use crate::field::{disk_points, require_non_norm, Field, QuadElem};
use crate::forms::{alpha, check_weight, expand_p, small_coords, transfer_forms, window_forms, HermitianForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactEnumeration,
    Truncated,
    CfAccelerated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HValue {
    Exact(BigRational),
    Float(f64),
}

impl HValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            HValue::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            HValue::Float(x) => *x,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Exact,
    /// Proven bound on the omitted tail.
    Rigorous(f64),
    /// Size of the last accepted contribution; not a proof.
    Empirical(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HEvalReport {
    pub value: HValue,
    pub terms_used: usize,
    pub truncation_bound: Bound,
    pub method: Method,
}

fn check(k: u32, delta: u64, f: Field) -> Result<()> {
    check_weight(k)?;
    require_non_norm(delta, f)
}

/// H_{k,Δ}(z) for z ∈ K, exactly.
pub fn eval_exact(k: u32, delta: u64, z: &QuadElem) -> Result<BigRational> {
    check(k, delta, z.field())?;
    let (_, _, m) = small_coords(z)
        .ok_or_else(|| Error::InvalidArgument("coordinates of z exceed 128 bits".into()))?;
    // h(z,1) = h_num/(|a| m²): group by |a| to keep one division per class
    let mut by_a: BTreeMap<i128, BigInt> = BTreeMap::new();
    for w in window_forms(z, delta) {
        *by_a.entry(w.a_abs).or_default() += num_traits::pow(BigInt::from(w.h_num), k as usize);
    }
    let m2 = BigInt::from(m * m);
    Ok(by_a
        .into_iter()
        .map(|(a, s)| BigRational::new(s, num_traits::pow(BigInt::from(a) * &m2, k as usize)))
        .fold(BigRational::zero(), |acc, x| acc + x))
}

pub fn eval_exact_report(k: u32, delta: u64, z: &QuadElem) -> Result<HEvalReport> {
    check(k, delta, z.field())?;
    let terms = window_forms(z, delta).len();
    Ok(HEvalReport {
        value: HValue::Exact(eval_exact(k, delta, z)?),
        terms_used: terms,
        truncation_bound: Bound::Exact,
        method: Method::ExactEnumeration,
    })
}

/// Diameter of a fundamental cell of O_d spanned by 1 and the conventional generator.
fn cell_diameter(f: Field) -> f64 {
    match f {
        Field::D1 => 2f64.sqrt(),
        Field::D2 | Field::D3 => 3f64.sqrt(),
        Field::D7 => 2.0,
        Field::D11 => 5f64.sqrt(),
    }
}

/// Bound on the number of lattice points in a disk of radius √Δ.
fn disk_count_bound(delta: u64, f: Field) -> f64 {
    let area = (f.disc().unsigned_abs() as f64).sqrt() / 2.0;
    PI * ((delta as f64).sqrt() + cell_diameter(f)).powi(2) / area
}

/// C·Δ^k·Σ_{a>a_max} a^{−k} ≤ C·Δ^k·a_max^{1−k}/(k−1).
pub fn tail_bound(k: u32, delta: u64, f: Field, a_max: u64) -> f64 {
    let c = disk_count_bound(delta, f);
    c * (delta as f64).powi(k as i32) * (a_max as f64).powi(1 - k as i32) / (k as f64 - 1.0)
}

/// Partial sum over |a| ≤ a_max at a complex point, with a rigorous bound on the rest.
pub fn eval_truncated(k: u32, delta: u64, z: Complex64, f: Field, a_max: u64) -> Result<HEvalReport> {
    check(k, delta, f)?;
    if k < 3 {
        return Err(Error::InvalidArgument("truncated evaluation needs k ≥ 3".into()));
    }
    let (sum, terms) = truncated_sum(k, delta, z, f, a_max);
    Ok(HEvalReport {
        value: HValue::Float(sum),
        terms_used: terms,
        truncation_bound: Bound::Rigorous(tail_bound(k, delta, f, a_max)),
        method: Method::Truncated,
    })
}

fn truncated_sum(k: u32, delta: u64, z: Complex64, f: Field, a_max: u64) -> (f64, usize) {
    let t = f.disc();
    let n = f.omega_norm();
    let dl = delta as i64;
    let radius = (delta as f64).sqrt();
    let omega = f.omega();
    let mut sum = 0.0;
    let mut terms = 0;
    for a in 1..=a_max as i64 {
        let center = z * a as f64;
        for (x, y) in disk_points(f, center, radius) {
            let rest = dl - (x * x + t * x * y + n * y * y);
            if rest % a != 0 {
                continue;
            }
            let beta = Complex64::new(x as f64, 0.0) + omega * y as f64;
            let h = (delta as f64 - (beta - center).norm_sqr()) / a as f64;
            if h > 0.0 {
                sum += h.powi(k as i32);
                terms += 1;
            }
        }
    }
    (sum, terms)
}

/// Checks |z|^{2k} H(1/z) − H(z) = P_{k,Δ}(z, z̄) exactly.
pub fn reduction_identity_check(k: u32, delta: u64, z: &QuadElem) -> Result<bool> {
    let f = z.field();
    let inv = z.inv().ok_or_else(|| Error::InvalidArgument("z must be nonzero".into()))?;
    let lhs = eval_exact(k, delta, &inv)? * num_traits::pow(z.norm(), k as usize) - eval_exact(k, delta, z)?;
    let p = expand_p(k, delta, f)?;
    let rhs = p.eval(z, &z.conj());
    Ok(rhs.as_rational().is_some_and(|r| r == lhs))
}

/// Midpoint mean of the truncated sum over a grid_n × grid_n sampling of the cell
/// spanned by 1 and ω. Rows run in parallel and are added in row order.
pub fn average_quadrature(k: u32, delta: u64, f: Field, grid_n: usize, a_max: u64) -> Result<f64> {
    check(k, delta, f)?;
    let omega = f.omega();
    let rows: Vec<f64> = (0..grid_n)
        .into_par_iter()
        .map(|j| {
            let v = (j as f64 + 0.5) / grid_n as f64;
            (0..grid_n)
                .map(|i| {
                    let u = (i as f64 + 0.5) / grid_n as f64;
                    truncated_sum(k, delta, Complex64::new(u, 0.0) + omega * v, f, a_max).0
                })
                .sum()
        })
        .collect();
    Ok(rows.iter().sum::<f64>() / (grid_n * grid_n) as f64)
}

/// Sum over the forms γ̄_n(f) with f running over the transfer forms (c < 0 < a) and
/// γ_n over the continued-fraction matrices of z. Exact for z ∈ K once the expansion
/// terminates; for other z the error is only estimated. Steps whose forms are too large
/// to evaluate reliably in double precision end the sum.
pub fn eval_cf_accelerated(k: u32, delta: u64, z: Complex64, f: Field, steps: usize) -> Result<HEvalReport> {
    check(k, delta, f)?;
    let exp = hurwitz_cf(&z, steps, f);
    let seeds = transfer_forms(delta, f);
    let mut seen: HashSet<HermitianForm> = HashSet::new();
    let mut sum = 0.0;
    let mut last = 0.0;
    let mut complete = exp.terminated;
    for n in 0..exp.len() {
        let g = exp.gamma(n).conj().inverse().expect("unimodular convergent matrix");
        let mut step = 0.0;
        let mut resolvable = false;
        for s in &seeds {
            let h = s.act(&g);
            let scale = form_scale(&h, z);
            if scale < 1e11 {
                resolvable = true;
            }
            if !h.a.is_negative() || seen.contains(&h) {
                continue;
            }
            let v = h.eval_complex(z);
            // roundoff in h(z) is about 1e−16·scale
            if v > 1e-13 * scale {
                step += v.powi(k as i32);
                seen.insert(h);
            }
        }
        if !resolvable {
            complete = false;
            break;
        }
        sum += step;
        if step > 0.0 {
            last = step;
        }
    }
    let bound = if complete { Bound::Exact } else { Bound::Empirical(last) };
    Ok(HEvalReport {
        value: HValue::Float(sum),
        terms_used: seen.len(),
        truncation_bound: bound,
        method: Method::CfAccelerated,
    })
}

/// |a||z|² + 2|b||z| + |c|, the size of the terms cancelling in h(z, 1).
fn form_scale(h: &HermitianForm, z: Complex64) -> f64 {
    let a = h.a.to_f64().unwrap_or(f64::INFINITY).abs();
    let c = h.c.to_f64().unwrap_or(f64::INFINITY).abs();
    a * z.norm_sqr() + 2.0 * h.b.to_complex().norm() * z.norm() + c
}

/// The forms γ̄_n(f) reached from the transfer forms along the expansion of z ∈ K,
/// restricted to a < 0 < h(z, 1). Equal to `enumerate_window(z, Δ)` as a set.
pub fn forms_from_expansion(delta: u64, z: &QuadElem, steps: usize) -> Result<Vec<HermitianForm>> {
    let f = z.field();
    require_non_norm(delta, f)?;
    let exp = hurwitz_cf(z, steps, f);
    let seeds = transfer_forms(delta, f);
    let mut out: HashSet<HermitianForm> = HashSet::new();
    for n in 0..exp.len() {
        let g = exp.gamma(n).conj().inverse().expect("unimodular convergent matrix");
        for s in &seeds {
            let h = s.act(&g);
            if h.a.is_negative() && h.eval(z).is_positive() {
                out.insert(h);
            }
        }
    }
    let mut v: Vec<HermitianForm> = out.into_iter().collect();
    v.sort_by_key(|h| (h.a.clone(), h.b.twice_re(), h.b.y.clone()));
    Ok(v)
}

/// Right side of the average-value theorem:
/// 2πΔ^{k+1}/((k+1)√|d_K|) · θ(Δ, k+1) ζ(k+1) / L(χ_{d_K}, k+2).
pub fn average_formula(k: u32, delta: u64, f: Field) -> Result<f64> {
    check(k, delta, f)?;
    let theta = crate::lfun::theta(delta, k as i64 + 1, f)?;
    let zeta = crate::lfun::zeta_even_f64(k as i64 + 1);
    let l = crate::lfun::l_positive_f64(f, k as i64 + 2);
    let dk = (f.disc().unsigned_abs() as f64).sqrt();
    Ok(2.0 * PI * (delta as f64).powi(k as i32 + 1) / ((k as f64 + 1.0) * dk)
        * theta.to_f64().unwrap_or(f64::NAN)
        * zeta
        / l)
}

/// (x + yω)/q with 1 ≤ q ≤ max_den and 0 ≤ x, y < q.
pub fn random_point<R: Rng>(rng: &mut R, f: Field, max_den: i64) -> QuadElem {
    let q = rng.gen_range(1..=max_den);
    QuadElem::from_i64(f, rng.gen_range(0..q), rng.gen_range(0..q), q)
}

/// Whether H_{k,Δ} is known to be constant over O_d.
pub fn constancy_proven(f: Field, k: u32) -> bool {
    match k {
        1 => true,
        3 => matches!(f, Field::D1 | Field::D3 | Field::D7),
        5 => f == Field::D3,
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstancyReport {
    pub d: u32,
    pub k: u32,
    pub delta: u64,
    pub seed: u64,
    pub trials: usize,
    /// α_{k,Δ} = H_{k,Δ}(0).
    pub expected: String,
    pub proven: bool,
    pub matches: usize,
    /// Distinct values seen with their multiplicities, in order of first appearance.
    pub values: Vec<(String, usize)>,
}

impl ConstancyReport {
    pub fn passed(&self) -> bool {
        self.matches == self.trials
    }
}

/// Evaluates H_{k,Δ} exactly at `trials` seeded random points of K (denominators ≤ 12)
/// and compares each value with α_{k,Δ}.
pub fn constancy_scan(k: u32, delta: u64, f: Field, trials: usize, seed: u64) -> Result<ConstancyReport> {
    check(k, delta, f)?;
    let expected = BigRational::from_integer(alpha(k, delta, f)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<QuadElem> = (0..trials).map(|_| random_point(&mut rng, f, 12)).collect();
    let values: Vec<BigRational> = points.par_iter().map(|z| eval_exact(k, delta, z)).collect::<Result<_>>()?;
    let mut distinct: Vec<(BigRational, usize)> = Vec::new();
    for v in &values {
        match distinct.iter_mut().find(|(u, _)| u == v) {
            Some(e) => e.1 += 1,
            None => distinct.push((v.clone(), 1)),
        }
    }
    Ok(ConstancyReport {
        d: f.d(),
        k,
        delta,
        seed,
        trials,
        expected: expected.to_string(),
        proven: constancy_proven(f, k),
        matches: values.iter().filter(|v| **v == expected).count(),
        values: distinct.into_iter().map(|(v, n)| (v.to_string(), n)).collect(),
    })
}
