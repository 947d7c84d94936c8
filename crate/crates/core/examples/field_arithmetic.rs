//! Norms, units, Kronecker symbols and nearest-integer rounding in the five rings.

use hermitia::field::{kronecker, nearest_int, norm_witness, smallest_non_norms};
use hermitia::{Field, QuadElem};
use num_rational::BigRational;

fn main() -> hermitia::Result<()> {
    for f in Field::ALL {
        let spec = f.spec();
        let units: Vec<String> = f.units().iter().map(|u| u.to_string()).collect();
        println!(
            "O_{}: d_K = {}, ω² = {}·ω − {}, units {{{}}}, N(ω) = {}",
            f.d(),
            spec.d_k,
            spec.omega_minpoly.0,
            spec.omega_minpoly.1,
            units.join(", "),
            f.omega_elem().norm()
        );
        println!("  smallest non-norms: {:?}", smallest_non_norms(f, 5));
    }

    let d1 = Field::D1;
    println!("4 = N({})", norm_witness(4, d1).expect("4 is a norm"));
    println!("(−4/3) = {}, (−8/3) = {}, (−4/−3) = {}", kronecker(-4, 3)?, kronecker(-8, 3)?, kronecker(-4, -3)?);

    let half = |n: i64| BigRational::new(n.into(), 2.into());
    let z = QuadElem::from_conventional(d1, &half(3), &half(1));
    println!("nearest integer to {z} in Z[i]: {}", nearest_int(&z));
    let w = QuadElem::from_conventional(Field::D3, &half(1), &half(0));
    println!("nearest integer to {w} in O_3: {}", nearest_int(&w));
    Ok(())
}
