//! Every special value covered by the Cohen–Zagier formulas, with its oracle.

use hermitia::lfun::{cohen_zagier, in_scope, l_negative_exact, l_positive_numeric};
use hermitia::Field;

fn main() -> hermitia::Result<()> {
    for f in Field::ALL {
        for s in [3, 5, 7, -2, -4, -6] {
            if !in_scope(f, s) {
                continue;
            }
            let v = cohen_zagier(f, s, None, 128)?;
            let check = if s < 0 {
                format!("Bernoulli: {}", l_negative_exact(f, s)?)
            } else {
                let mut cc = hermitia::lfun::consts();
                format!("character sum: {}", hermitia::lfun::bf_decimal(&l_positive_numeric(f, s, 128)?, &mut cc))
            };
            println!("L(χ_{}, {s:>2}) = {v}  [Δ = {}; {check}]", f.disc(), v.delta);
        }
    }
    Ok(())
}
