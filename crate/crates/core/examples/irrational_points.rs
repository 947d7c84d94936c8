//! H_{k,Δ} at points outside K: truncated sums with a proven tail bound, and the
//! continued-fraction route for k = 1.

use hermitia::hsum::{eval_cf_accelerated, eval_truncated};
use hermitia::Field;
use num_complex::Complex64;

fn main() -> hermitia::Result<()> {
    let f = Field::D1;
    let z = Complex64::new(0.3, 0.4);
    for a_max in [50, 100, 200, 400] {
        let r = eval_truncated(3, 3, z, f, a_max)?;
        println!("a_max = {a_max:>3}: H_{{3,3}}(z) ≈ {:.9}, {} terms, tail ≤ {:?}", r.value.to_f64(), r.terms_used, r.truncation_bound);
    }
    let e = Complex64::new(std::f64::consts::E - 2.0, std::f64::consts::PI - 3.0);
    for steps in [5, 10, 20, 40] {
        let r = eval_cf_accelerated(1, 3, e, f, steps)?;
        println!("{steps:>2} CF steps: H_{{1,3}}(z) ≈ {:.12}, last step {:?}", r.value.to_f64(), r.truncation_bound);
    }
    Ok(())
}
