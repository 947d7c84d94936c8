//! Dimensions of W_{k,k} per ε-eigenvalue, compared with the printed tables and the
//! conjectured formulas.

use hermitia::polyspace::{dim_row, KernelMethod};
use hermitia::Field;

fn main() -> hermitia::Result<()> {
    let kmax: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(11);
    for f in Field::ALL {
        for k in (1..=kmax).step_by(2) {
            let r = dim_row(f, k, KernelMethod::Auto)?;
            let dims: Vec<String> = r.dims.iter().map(|(l, n)| format!("W^{l} = {n}")).collect();
            println!(
                "d = {:>2}, k = {k:>2}: {}, total {} (table {:?}, conjecture {}) {} ms",
                r.d,
                dims.join(", "),
                r.total,
                r.table_match,
                r.conjecture_match,
                r.millis
            );
        }
    }
    Ok(())
}
