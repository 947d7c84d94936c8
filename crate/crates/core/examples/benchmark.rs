//! Cohen–Zagier against the character-sum baseline at 128 bits.

use std::time::Duration;

use hermitia::cli::cmd_bench;
use hermitia::Field;

fn main() -> hermitia::Result<()> {
    for (d, s) in [(1, -2), (3, -6), (7, 3)] {
        let f = Field::new(d)?;
        let r = cmd_bench(f, s, &[], 128, Duration::from_millis(100))?;
        for row in &r.rows {
            println!("{:<14} d = {d:>2} s = {s:>2} Δ = {:>2}: {:>9.1} µs  {}", row.method, row.delta, row.micros, row.value);
        }
        println!("minimum speed-up: {:.0}×\n", r.min_speedup);
    }
    Ok(())
}
