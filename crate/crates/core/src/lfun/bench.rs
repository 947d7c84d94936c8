use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

use super::values::{agreeing_digits, bf_decimal, cohen_zagier, consts, functional_equation_hp, l_positive_numeric};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub method: String,
    pub d: u32,
    pub s: i64,
    pub delta: u64,
    pub micros: f64,
    pub value: String,
}

/// Mean wall time of `run` over enough repetitions to fill `budget`.
pub fn time_it<T>(budget: Duration, mut run: impl FnMut() -> T) -> (f64, T) {
    let start = Instant::now();
    let mut out = run();
    let mut reps = 1u32;
    while start.elapsed() < budget {
        out = run();
        reps += 1;
    }
    (start.elapsed().as_secs_f64() * 1e6 / reps as f64, out)
}

/// Digits two evaluations must share before their timings are reported.
pub fn required_digits(precision_bits: usize) -> f64 {
    (precision_bits as f64 * std::f64::consts::LOG10_2 - 8.0).max(10.0)
}

/// Times the Cohen–Zagier formula against the character-sum baseline (plus the
/// functional equation when s < 0) for each Δ. Fails with a consistency error if the
/// two disagree.
pub fn bench(f: Field, s: i64, deltas: &[u64], precision_bits: usize, budget: Duration) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    let mut cc = consts();
    let baseline = || -> Result<astro_float::BigFloat> {
        if s < 0 {
            let l = l_positive_numeric(f, 1 - s, precision_bits)?;
            Ok(functional_equation_hp(f, 1 - s, &l, precision_bits))
        } else {
            l_positive_numeric(f, s, precision_bits)
        }
    };
    let (base_us, base) = time_it(budget, baseline);
    let base = base?;
    for &delta in deltas {
        let (us, fast) = time_it(budget, || cohen_zagier(f, s, Some(delta), precision_bits));
        let fast = fast?;
        let digits = agreeing_digits(&fast.to_bigfloat(&mut cc), &base, &mut cc);
        if digits < required_digits(precision_bits) {
            return Err(Error::Consistency(format!(
                "L(χ, {s}) for d = {}: Cohen–Zagier at Δ = {delta} and the baseline share only {digits:.1} digits",
                f.d()
            )));
        }
        rows.push(BenchRow {
            method: "cohen-zagier".into(),
            d: f.d(),
            s,
            delta,
            micros: us,
            value: fast.exact.as_ref().map(|q| q.to_string()).unwrap_or_else(|| fast.numeric.clone()),
        });
    }
    rows.push(BenchRow {
        method: "character-sum".into(),
        d: f.d(),
        s,
        delta: 0,
        micros: base_us,
        value: bf_decimal(&base, &mut cc),
    });
    Ok(rows)
}
