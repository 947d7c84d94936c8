//! Hurwitz continued fractions: exact expansions in K and decay of δ_n elsewhere.

use hermitia::cfrac::{delta_decay, hurwitz_cf};
use hermitia::{Field, QuadElem};
use num_complex::Complex64;

fn main() {
    let f = Field::D1;
    let z = QuadElem::from_i64(f, 7, 3, 11);
    let e = hurwitz_cf(&z, 50, f);
    let alphas: Vec<String> = e.alphas.iter().map(|a| a.to_string()).collect();
    println!("z = {z}: [{}], last convergent {}", alphas.join(", "), e.last_convergent());

    for f in Field::ALL {
        let w = Complex64::new(std::f64::consts::E, 0.5);
        let e = hurwitz_cf(&w, 12, f);
        let r = delta_decay(w, 12, f);
        println!(
            "d = {:>2}: p_11/q_11 = {}, |δ_12| = {:.2e}, max |δ_{{n+1}}/δ_n| = {:.3}",
            f.d(),
            e.convergent(11),
            r.magnitudes[11],
            r.max_ratio
        );
    }
}
