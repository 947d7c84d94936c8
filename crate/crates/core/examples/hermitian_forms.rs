//! Evaluating and moving Hermitian forms, and the constants α_{k,Δ}.

use hermitia::forms::{alpha, alpha_enumerated, enumerate_window, transfer_forms};
use hermitia::{Field, HermitianForm, Mat2, QuadElem, QuadInt};

fn main() -> hermitia::Result<()> {
    let f = Field::D1;
    let i = f.tau();
    let h = HermitianForm::new(-1, &f.one() + &i, 1);
    println!("h = {h}, Δ(h) = {}, h(1) = {}", h.delta(), h.eval(&QuadElem::one(f)));

    let s = Mat2::s(f);
    let t = Mat2::translation(&QuadInt::from_i64(f, 1, 0));
    println!("S(h) = {}, T(h) = {}", h.act(&s), h.act(&t));

    for k in [1, 3, 5] {
        println!("α_{{{k},3}} = {} (enumeration: {})", alpha(k, 3, f)?, alpha_enumerated(k, 3, f)?);
    }

    println!("forms with c < 0 < a and Δ = 3: {}", transfer_forms(3, f).len());
    let z = QuadElem::from_i64(f, 1, 0, 2);
    let window = enumerate_window(&z, 3);
    println!("forms with a < 0 < h({z}) and Δ = 3: {}", window.len());
    for h in window.iter().take(5) {
        println!("  {h}  h(z) = {}", h.eval(&z));
    }
    Ok(())
}
