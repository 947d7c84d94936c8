//! r(Δ, n), the local factors R_p and θ(Δ, s), checked against counted residues.

use hermitia::field::smallest_non_norms;
use hermitia::lfun::{local_factor, local_series, prime_divisors, r_count, theta, zseries_partial};
use hermitia::Field;

fn main() -> hermitia::Result<()> {
    let f = Field::D1;
    let counts: Vec<u64> = (1..=12).map(|n| r_count(-3, n, f)).collect();
    println!("r(−3, n), n = 1..12: {counts:?}");
    println!("θ(3, 2) = {}, θ(3, 4) = {}", theta(3, 2, f)?, theta(3, 4, f)?);
    println!("Z(−3, 2) up to n = 20000: {:.6}", zseries_partial(-3, 2, 20000, f));

    for f in Field::ALL {
        let delta = smallest_non_norms(f, 1)[0];
        for p in prime_divisors(f.disc().unsigned_abs() * delta) {
            let lf = local_factor(p, delta, 2, f)?;
            let series = local_series(p, delta, f, 5)?;
            let counted: Vec<u64> = (0..5).map(|j| r_count(-(delta as i64), p.pow(j), f)).collect();
            println!(
                "d = {:>2}, Δ = {delta}, p = {p}: R_p = {} ({:?}), series {:?}, counted {counted:?}",
                f.d(),
                lf.value,
                lf.case_tag,
                series.iter().map(|c| c.to_string()).collect::<Vec<_>>()
            );
        }
    }
    Ok(())
}
