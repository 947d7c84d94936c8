//! Command-line front end: argument parsing, configuration, and table/JSON/CSV output.

use std::io::Write;
use std::str::FromStr;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cfrac::hurwitz_cf;
use crate::error::{Error, Result};
use crate::field::{smallest_non_norms, Field, QuadElem};
use crate::forms::{alpha, alpha_enumerated, expand_p};
use crate::hsum::{average_formula, average_quadrature, constancy_scan, ConstancyReport};
use crate::lfun::{bench, cohen_zagier, l_negative_exact, local_factor, local_series, prime_divisors, r_count, theta, BenchRow, LValue};
use crate::polyspace::{dim_row, membership, relation_check, wkk_with, DimRow, KernelMethod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Table,
    Json,
    Csv,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub d: u32,
    pub precision_bits: usize,
    pub output: Output,
    pub seed: u64,
}

impl Config {
    pub fn new(d: u32, precision_bits: usize, output: Output, seed: u64) -> Result<Config> {
        Field::try_from(d)?;
        if precision_bits < 64 {
            return Err(Error::InvalidArgument(format!("precision must be at least 64 bits, got {precision_bits}")));
        }
        Ok(Config { d, precision_bits, output, seed })
    }

    pub fn field(&self) -> Field {
        Field::try_from(self.d).expect("validated in Config::new")
    }
}

#[derive(Parser, Debug)]
#[command(name = "hermitia", version, about = "Hermitian-form sums, cocycle spaces and L-values over the Euclidean imaginary quadratic rings")]
pub struct Cli {
    /// One of 1, 2, 3, 7, 11.
    #[arg(long, global = true, default_value_t = 1)]
    pub d: u32,
    #[arg(long, global = true, env = "HERMITIA_PRECISION", default_value_t = 128)]
    pub precision: usize,
    #[arg(long, global = true, value_enum, default_value_t = Output::Table)]
    pub output: Output,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// α_{k,Δ} by divisor sums, cross-checked by enumeration.
    Alpha {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        delta: u64,
    },
    /// θ(Δ, s) and its local factors.
    Theta {
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        s: i64,
    },
    /// r(Δ, n) for n = 1..=n-max.
    Rcount {
        /// Signed first argument of r.
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
        #[arg(long, default_value_t = 20)]
        n_max: u64,
    },
    /// L(χ_{d_K}, s) from the Cohen–Zagier formulas.
    Lvalue {
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long)]
        delta: Option<u64>,
    },
    /// Times the Cohen–Zagier path against the character-sum baseline.
    Bench {
        #[arg(long, allow_hyphen_values = true, default_value_t = -2)]
        s: i64,
        /// Comma-separated Δ values; defaults to the five smallest non-norms.
        #[arg(long, value_delimiter = ',')]
        deltas: Vec<u64>,
        #[arg(long, default_value_t = 200)]
        budget_ms: u64,
    },
    /// Checks that H_{k,Δ} equals α_{k,Δ} at seeded random points of K.
    Hconst {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        delta: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Average of H_{k,Δ} over a fundamental cell: quadrature against the closed form.
    Average {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        delta: u64,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 300)]
        a_max: u64,
    },
    /// Hurwitz continued fraction of z = re + im·√−d.
    Cfrac {
        /// "re,im" with rational parts, e.g. "1/2,1/3"; decimals with --float.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        float: bool,
        #[arg(long, default_value_t = 30)]
        steps: usize,
    },
    /// Dimensions of W_{k,k} by ε-eigenvalue for odd k ≤ k-max.
    Dims {
        #[arg(long, default_value_t = 11)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// A basis of W_{k,k}.
    Basis {
        #[arg(long)]
        k: usize,
    },
    /// P_{k,Δ} expanded, with its W_{k,k} membership.
    Expandp {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        delta: u64,
    },
    /// Quick end-to-end consistency checks.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Modular,
    Auto,
}

impl From<MethodArg> for KernelMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exact => KernelMethod::Exact,
            MethodArg::Modular => KernelMethod::Modular,
            MethodArg::Auto => KernelMethod::Auto,
        }
    }
}

/// Anything a subcommand prints.
pub trait Report: Serialize {
    fn headers(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

pub fn render<R: Report>(r: &R, output: Output) -> Result<String> {
    match output {
        Output::Json => serde_json::to_string_pretty(r).map(|j| j + "\n").map_err(|e| Error::Consistency(e.to_string())),
        Output::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Consistency(e.to_string());
            w.write_record(r.headers()).map_err(io)?;
            for row in r.rows() {
                w.write_record(&row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Consistency(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Consistency(e.to_string()))
        }
        Output::Table => {
            let headers = r.headers();
            let rows = r.rows();
            let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
            for row in &rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: Vec<String>| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                padded.join("  ").trim_end().to_string()
            };
            let mut out = vec![line(headers.iter().map(|h| h.to_string()).collect())];
            out.extend(rows.into_iter().map(line));
            Ok(out.join("\n") + "\n")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub d: u32,
    pub k: u32,
    pub delta: u64,
    pub alpha: String,
}

impl Report for AlphaReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["d", "k", "delta", "alpha"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![self.d.to_string(), self.k.to_string(), self.delta.to_string(), self.alpha.clone()]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRow {
    pub p: u64,
    pub value: String,
    pub case: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub d: u32,
    pub delta: u64,
    pub s: i64,
    pub theta: String,
    pub factors: Vec<FactorRow>,
}

impl Report for ThetaReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["p", "case", "value"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows: Vec<Vec<String>> =
            self.factors.iter().map(|f| vec![f.p.to_string(), f.case.clone(), f.value.clone()]).collect();
        rows.push(vec!["θ".into(), String::new(), self.theta.clone()]);
        rows
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RcountReport {
    pub d: u32,
    pub delta: i64,
    pub counts: Vec<(u64, u64)>,
}

impl Report for RcountReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["n", "r"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.counts.iter().map(|(n, r)| vec![n.to_string(), r.to_string()]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LValueReport {
    pub d: u32,
    pub s: i64,
    pub delta: u64,
    pub exact: Option<String>,
    pub coefficient: Option<String>,
    pub pi_power: Option<u32>,
    pub radicand: u64,
    pub numeric: String,
    pub display: String,
}

impl From<&LValue> for LValueReport {
    fn from(v: &LValue) -> Self {
        LValueReport {
            d: v.d,
            s: v.s,
            delta: v.delta,
            exact: v.exact.as_ref().map(|q| q.to_string()),
            coefficient: v.coefficient.as_ref().map(|q| q.to_string()),
            pi_power: v.pi_power,
            radicand: v.radicand,
            numeric: v.numeric.clone(),
            display: v.to_string(),
        }
    }
}

impl Report for LValueReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["d", "s", "delta", "value"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![self.d.to_string(), self.s.to_string(), self.delta.to_string(), self.display.clone()]]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Baseline time over the slowest Cohen–Zagier time.
    pub min_speedup: f64,
}

impl Report for BenchReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["method", "d", "s", "delta", "micros", "value"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![r.method.clone(), r.d.to_string(), r.s.to_string(), r.delta.to_string(), format!("{:.1}", r.micros), r.value.clone()]
            })
            .collect()
    }
}

impl Report for ConstancyReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["value", "count", "equals_alpha"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.values.iter().map(|(v, n)| vec![v.clone(), n.to_string(), (*v == self.expected).to_string()]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AverageReport {
    pub d: u32,
    pub k: u32,
    pub delta: u64,
    pub grid: usize,
    pub a_max: u64,
    pub quadrature: f64,
    pub formula: f64,
    pub relative_error: f64,
}

impl Report for AverageReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["d", "k", "delta", "quadrature", "formula", "relative_error"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.d.to_string(),
            self.k.to_string(),
            self.delta.to_string(),
            format!("{:.10}", self.quadrature),
            format!("{:.10}", self.formula),
            format!("{:.3e}", self.relative_error),
        ]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfracReport {
    pub d: u32,
    pub z: String,
    pub alphas: Vec<String>,
    pub convergents: Vec<String>,
    pub terminated: bool,
}

impl Report for CfracReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["n", "alpha", "p/q"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.alphas
            .iter()
            .zip(&self.convergents)
            .enumerate()
            .map(|(n, (a, c))| vec![n.to_string(), a.clone(), c.clone()])
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsReport {
    pub rows: Vec<DimRow>,
}

impl Report for DimsReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["d", "k", "dims", "total", "conjecture", "table", "millis"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let dims: Vec<String> = r.dims.iter().map(|(l, n)| format!("{l}:{n}")).collect();
                vec![
                    r.d.to_string(),
                    r.k.to_string(),
                    dims.join(" "),
                    r.total.to_string(),
                    pass_fail(r.conjecture_match).into(),
                    r.table_match.map_or("-", pass_fail).into(),
                    r.millis.to_string(),
                ]
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub d: u32,
    pub k: usize,
    /// (ε-eigenvalue, polynomial) pairs.
    pub basis: Vec<(String, String)>,
}

impl Report for BasisReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["eigenvalue", "polynomial"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.basis.iter().map(|(e, p)| vec![e.clone(), p.clone()]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandReport {
    pub d: u32,
    pub k: u32,
    pub delta: u64,
    pub polynomial: String,
    pub in_w: bool,
    pub eigenvalue: Option<String>,
}

impl Report for ExpandReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["polynomial", "in_W", "eigenvalue"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![self.polynomial.clone(), self.in_w.to_string(), self.eigenvalue.clone().unwrap_or_else(|| "-".into())]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl Report for SelftestReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["status", "check", "detail"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.checks.iter().map(|c| vec![pass_fail(c.passed).into(), c.name.clone(), c.detail.clone()]).collect()
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn cmd_alpha(f: Field, k: u32, delta: u64) -> Result<AlphaReport> {
    let a = alpha(k, delta, f)?;
    let b = alpha_enumerated(k, delta, f)?;
    if a != b {
        return Err(Error::Consistency(format!("α_{{{k},{delta}}}: divisor sum {a} but enumeration {b}")));
    }
    Ok(AlphaReport { d: f.d(), k, delta, alpha: a.to_string() })
}

pub fn cmd_theta(f: Field, delta: u64, s: i64) -> Result<ThetaReport> {
    let value = theta(delta, s, f)?;
    let factors = prime_divisors(f.disc().unsigned_abs() * delta)
        .into_iter()
        .map(|p| {
            let lf = local_factor(p, delta, s, f)?;
            let case = serde_json::to_value(lf.case_tag).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            Ok(FactorRow { p, value: lf.value.to_string(), case })
        })
        .collect::<Result<_>>()?;
    Ok(ThetaReport { d: f.d(), delta, s, theta: value.to_string(), factors })
}

pub fn cmd_rcount(f: Field, delta: i64, n_max: u64) -> RcountReport {
    RcountReport { d: f.d(), delta, counts: (1..=n_max).map(|n| (n, r_count(delta, n, f))).collect() }
}

/// For s < 0 the value is also checked against the Bernoulli oracle.
pub fn cmd_lvalue(f: Field, s: i64, delta: Option<u64>, precision_bits: usize) -> Result<LValueReport> {
    let v = cohen_zagier(f, s, delta, precision_bits)?;
    if s < 0 {
        let oracle = l_negative_exact(f, s)?;
        if v.exact.as_ref() != Some(&oracle) {
            return Err(Error::Consistency(format!("L(χ, {s}): Cohen–Zagier gives {v}, Bernoulli numbers give {oracle}")));
        }
    }
    Ok(LValueReport::from(&v))
}

pub fn cmd_bench(f: Field, s: i64, deltas: &[u64], precision_bits: usize, budget: Duration) -> Result<BenchReport> {
    let deltas = if deltas.is_empty() { smallest_non_norms(f, 5) } else { deltas.to_vec() };
    let rows = bench(f, s, &deltas, precision_bits, budget)?;
    let base = rows.iter().filter(|r| r.method == "character-sum").map(|r| r.micros).fold(0.0, f64::max);
    let slowest = rows.iter().filter(|r| r.method != "character-sum").map(|r| r.micros).fold(0.0, f64::max);
    Ok(BenchReport { rows, min_speedup: base / slowest })
}

/// Fails with a consistency error when a proven constancy case disagrees.
pub fn cmd_hconst(f: Field, k: u32, delta: u64, trials: usize, seed: u64) -> Result<ConstancyReport> {
    let r = constancy_scan(k, delta, f, trials, seed)?;
    if r.proven && !r.passed() {
        return Err(Error::Consistency(format!(
            "H_{{{k},{delta}}} on O_{}: {}/{} points equal α = {}",
            f.d(),
            r.matches,
            r.trials,
            r.expected
        )));
    }
    Ok(r)
}

pub fn cmd_average(f: Field, k: u32, delta: u64, grid: usize, a_max: u64) -> Result<AverageReport> {
    let quadrature = average_quadrature(k, delta, f, grid, a_max)?;
    let formula = average_formula(k, delta, f)?;
    Ok(AverageReport {
        d: f.d(),
        k,
        delta,
        grid,
        a_max,
        quadrature,
        formula,
        relative_error: (quadrature - formula).abs() / formula.abs(),
    })
}

fn parse_pair<T: FromStr>(z: &str) -> Result<(T, T)> {
    let bad = || Error::InvalidArgument(format!("cannot parse z = {z:?}; expected \"re,im\""));
    let (re, im) = z.split_once(',').unwrap_or((z, "0"));
    Ok((re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
}

pub fn cmd_cfrac(f: Field, z: &str, float: bool, steps: usize) -> Result<CfracReport> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    let convergents = |p: &[crate::QuadInt], q: &[crate::QuadInt]| -> Vec<String> {
        p.iter().zip(q).map(|(a, b)| QuadElem::from(a.clone()).div(&QuadElem::from(b.clone())).map_or("∞".into(), |c| c.to_string())).collect()
    };
    let (alphas, conv, terminated, shown) = if float {
        let (re, im): (f64, f64) = parse_pair(z)?;
        let zc = Complex64::new(re, im * (f.d() as f64).sqrt());
        let e = hurwitz_cf(&zc, steps, f);
        (e.alphas.clone(), convergents(&e.p, &e.q), e.terminated, format!("{zc}"))
    } else {
        let (re, im): (BigRational, BigRational) = parse_pair(z)?;
        let ze = QuadElem::from_conventional(f, &re, &im);
        let e = hurwitz_cf(&ze, steps, f);
        (e.alphas.clone(), convergents(&e.p, &e.q), e.terminated, ze.to_string())
    };
    Ok(CfracReport {
        d: f.d(),
        z: shown,
        alphas: alphas.iter().map(|a| QuadElem::from(a.clone()).to_string()).collect(),
        convergents: conv,
        terminated,
    })
}

pub fn cmd_dims(f: Field, kmax: usize, method: KernelMethod) -> Result<DimsReport> {
    Ok(DimsReport { rows: (1..=kmax).step_by(2).map(|k| dim_row(f, k, method)).collect::<Result<_>>()? })
}

pub fn cmd_basis(f: Field, k: usize) -> Result<BasisReport> {
    let r = wkk_with(f, k, KernelMethod::Auto)?;
    let mut basis = Vec::new();
    let mut it = r.basis.iter();
    for (label, n) in &r.dim_by_eigenvalue {
        for p in it.by_ref().take(*n) {
            basis.push((label.clone(), p.to_string()));
        }
    }
    Ok(BasisReport { d: f.d(), k, basis })
}

pub fn cmd_expandp(f: Field, k: u32, delta: u64) -> Result<ExpandReport> {
    let p = expand_p(k, delta, f)?;
    let (in_w, eigenvalue) = membership(&p, f);
    Ok(ExpandReport { d: f.d(), k, delta, polynomial: p.to_string(), in_w, eigenvalue })
}

pub fn cmd_selftest(precision_bits: usize, seed: u64) -> SelftestReport {
    let mut checks = Vec::new();
    let mut check = |name: &str, outcome: Result<(bool, String)>| {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, e.to_string()));
        checks.push(Check { name: name.into(), passed, detail });
    };
    let d1 = Field::D1;
    check("alpha", (|| {
        let (a1, a3) = (alpha(1, 3, d1)?, alpha(3, 3, d1)?);
        Ok((a1 == 20.into() && a3 == 68.into(), format!("α_{{1,3}} = {a1}, α_{{3,3}} = {a3}")))
    })());
    check("theta", (|| {
        let (t2, t4) = (theta(3, 2, d1)?, theta(3, 4, d1)?);
        let ok = t2 == BigRational::new(5.into(), 6.into()) && t4 == BigRational::new(425.into(), 432.into());
        Ok((ok, format!("θ(3,2) = {t2}, θ(3,4) = {t4}")))
    })());
    check("local-oracle", (|| {
        let mut n = 0;
        for f in Field::ALL {
            for delta in smallest_non_norms(f, 3) {
                for p in prime_divisors(f.disc().unsigned_abs() * delta) {
                    let series = local_series(p, delta, f, 5)?;
                    for (j, c) in series.iter().enumerate() {
                        if *c != r_count(-(delta as i64), p.pow(j as u32), f).into() {
                            return Ok((false, format!("d = {}, Δ = {delta}, p = {p}, j = {j}", f.d())));
                        }
                    }
                    n += 1;
                }
            }
        }
        Ok((true, format!("{n} local series")))
    })());
    check("l-values", (|| {
        let mut n = 0;
        for f in Field::ALL {
            for s in [-2, -4, -6] {
                if crate::lfun::in_scope(f, s) {
                    cmd_lvalue(f, s, None, precision_bits)?;
                    n += 1;
                }
            }
        }
        Ok((true, format!("{n} negative values match the Bernoulli oracle")))
    })());
    check("constancy", (|| {
        let r = cmd_hconst(d1, 1, 3, 20, seed)?;
        Ok((r.passed(), format!("{}/{} points give {}", r.matches, r.trials, r.expected)))
    })());
    check("relations", Ok((Field::ALL.iter().all(|&f| relation_check(f)), "all five presentations".into())));
    check("dims", (|| {
        let mut n = 0;
        for f in Field::ALL {
            for row in cmd_dims(f, 7, KernelMethod::Auto)?.rows {
                if row.table_match == Some(false) {
                    return Ok((false, format!("d = {}, k = {}", row.d, row.k)));
                }
                n += 1;
            }
        }
        Ok((true, format!("{n} table rows")))
    })());
    check("membership", (|| {
        let r = cmd_expandp(d1, 3, 3)?;
        Ok((r.in_w && r.eigenvalue.as_deref() == Some("1"), "P_{3,3} ∈ W¹ for d = 1".into()))
    })());
    SelftestReport { checks }
}


/// Runs one parsed invocation and returns the text to print.
pub fn execute(cli: &Cli) -> Result<String> {
    let cfg = Config::new(cli.d, cli.precision, cli.output, cli.seed)?;
    let f = cfg.field();
    let out = cfg.output;
    match &cli.command {
        Command::Alpha { k, delta } => {
            let r = cmd_alpha(f, *k, *delta)?;
            if out == Output::Table {
                Ok(format!("{}\n", r.alpha))
            } else {
                render(&r, out)
            }
        }
        Command::Theta { delta, s } => render(&cmd_theta(f, *delta, *s)?, out),
        Command::Rcount { delta, n_max } => render(&cmd_rcount(f, *delta, *n_max), out),
        Command::Lvalue { s, delta } => {
            let r = cmd_lvalue(f, *s, *delta, cfg.precision_bits)?;
            if out == Output::Table {
                Ok(format!("{}\n", r.display))
            } else {
                render(&r, out)
            }
        }
        Command::Bench { s, deltas, budget_ms } => {
            render(&cmd_bench(f, *s, deltas, cfg.precision_bits, Duration::from_millis(*budget_ms))?, out)
        }
        Command::Hconst { k, delta, trials } => {
            let r = cmd_hconst(f, *k, *delta, *trials, cfg.seed)?;
            let mut text = render(&r, out)?;
            if out == Output::Table {
                let verdict = if !r.proven {
                    format!("observed {} distinct values (no constancy theorem for d = {}, k = {k})", r.values.len(), r.d)
                } else {
                    format!("PASS, {}/{} points equal {}", r.matches, r.trials, r.expected)
                };
                text.push_str(&verdict);
                text.push('\n');
            }
            Ok(text)
        }
        Command::Average { k, delta, grid, a_max } => render(&cmd_average(f, *k, *delta, *grid, *a_max)?, out),
        Command::Cfrac { z, float, steps } => render(&cmd_cfrac(f, z, *float, *steps)?, out),
        Command::Dims { kmax, method } => render(&cmd_dims(f, *kmax, (*method).into())?, out),
        Command::Basis { k } => render(&cmd_basis(f, *k)?, out),
        Command::Expandp { k, delta } => render(&cmd_expandp(f, *k, *delta)?, out),
        Command::Selftest => {
            let r = cmd_selftest(cfg.precision_bits, cfg.seed);
            let text = render(&r, out)?;
            if r.passed() {
                Ok(text)
            } else {
                let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                print!("{text}");
                Err(Error::Consistency(format!("self-test failed: {}", failed.join(", "))))
            }
        }
    }
}

/// Entry point for the binary: parses `args`, prints the result, returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
