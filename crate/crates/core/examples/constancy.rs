//! H_{k,Δ} is constant where the theory says so and visibly not elsewhere.

use hermitia::hsum::{constancy_scan, eval_exact, reduction_identity_check};
use hermitia::{Field, QuadElem};

fn main() -> hermitia::Result<()> {
    let f = Field::D1;
    for z in [QuadElem::zero(f), QuadElem::from_i64(f, 1, 0, 2), QuadElem::from_i64(f, 2, 1, 5)] {
        println!("H_{{1,3}}({z}) = {}, H_{{3,3}}({z}) = {}", eval_exact(1, 3, &z)?, eval_exact(3, 3, &z)?);
    }
    let z = QuadElem::from_i64(f, 1, 1, 3);
    println!("|z|^2k H(1/z) − H(z) = P(z, z̄) at z = {z}: {}", reduction_identity_check(3, 3, &z)?);

    for (d, k, delta) in [(1, 1, 3), (3, 5, 2), (7, 3, 3), (2, 3, 5), (11, 3, 2)] {
        let f = Field::new(d)?;
        let r = constancy_scan(k, delta, f, 50, 7)?;
        println!(
            "d = {d}, k = {k}, Δ = {delta}: {}/{} points equal α = {}, {} distinct values{}",
            r.matches,
            r.trials,
            r.expected,
            r.values.len(),
            if r.proven { "" } else { " (no constancy theorem)" }
        );
    }
    Ok(())
}
