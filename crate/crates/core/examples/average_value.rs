//! Mean of H_{k,Δ} over a fundamental cell against the closed form in θ, ζ and L.

use hermitia::hsum::{average_formula, average_quadrature};
use hermitia::Field;

fn main() -> hermitia::Result<()> {
    for (d, k, delta) in [(1, 1, 3), (1, 3, 3), (2, 3, 5), (11, 3, 2)] {
        let f = Field::new(d)?;
        let quad = average_quadrature(k, delta, f, 48, 200)?;
        let formula = average_formula(k, delta, f)?;
        println!("d = {d:>2}, k = {k}, Δ = {delta}: quadrature {quad:.8}, formula {formula:.8}");
    }
    Ok(())
}
