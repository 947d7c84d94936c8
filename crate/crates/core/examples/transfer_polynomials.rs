//! P_{k,Δ} = H_{k,Δ}|(S − 1) for each ring at its smallest non-norm.

use hermitia::field::smallest_non_norms;
use hermitia::forms::{alpha, expand_p};
use hermitia::Field;

fn main() -> hermitia::Result<()> {
    for f in Field::ALL {
        let delta = smallest_non_norms(f, 1)[0];
        for k in [1, 3] {
            println!("d = {}, Δ = {delta}, α_{{{k},{delta}}} = {}", f.d(), alpha(k, delta, f)?);
            println!("  P = {}", expand_p(k, delta, f)?);
        }
    }
    println!("d = 3, Δ = 2: P_5 = {}", expand_p(5, 2, Field::D3)?);
    Ok(())
}
