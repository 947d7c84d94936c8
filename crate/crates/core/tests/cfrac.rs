mod common;

use common::{field, quad_elem};
use hermitia::cfrac::{delta_closed_form, delta_decay, hurwitz_cf, CFExpansion};
use hermitia::{Field, QuadElem, QuadInt};
use num_complex::Complex64;
use proptest::prelude::*;

fn unit_sign(f: Field, n: i64) -> QuadInt {
    if n.rem_euclid(2) == 0 {
        f.one()
    } else {
        -f.one()
    }
}

fn check_determinants<T>(e: &CFExpansion<T>) {
    for n in -1..e.len() as i64 - 1 {
        let det = &(&e.p_at(n + 1) * &e.q_at(n)) - &(&e.p_at(n) * &e.q_at(n + 1));
        assert_eq!(det, unit_sign(e.field, n), "n = {n}");
    }
}

#[test]
fn small_expansions() {
    let f = Field::D1;
    let e = hurwitz_cf(&QuadElem::from_i64(f, 1, 0, 2), 10, f);
    assert_eq!(e.alphas, vec![f.zero(), f.int(2)]);
    assert!(e.terminated);
    let e = hurwitz_cf(&QuadElem::from(f.tau()), 10, f);
    assert_eq!(e.alphas, vec![f.tau()]);
    assert!(e.terminated);
    let e = hurwitz_cf(&QuadElem::zero(f), 10, f);
    assert_eq!(e.alphas, vec![f.zero()]);
    assert!(e.terminated);
}

#[test]
fn decay_for_e() {
    let r = delta_decay(Complex64::new(std::f64::consts::E, 0.0), 20, Field::D1);
    assert_eq!(r.magnitudes.len(), 20);
    assert!(r.max_ratio < 1.0, "{}", r.max_ratio);
    assert!(r.magnitudes[0] <= 2f64.sqrt() / 2.0);
}

#[test]
fn first_remainder_within_covering_radius() {
    let radius = |f: Field| match f {
        Field::D1 => 2f64.sqrt() / 2.0,
        Field::D2 => 3f64.sqrt() / 2.0,
        Field::D3 => 1.0 / 3f64.sqrt(),
        Field::D7 => 4.0 / 7f64.sqrt() / 2.0,
        Field::D11 => 6.0 / 11f64.sqrt() / 2.0,
    };
    for f in Field::ALL {
        for i in 0..200 {
            let z = Complex64::new((i as f64 * 0.618034).fract() * 3.0, (i as f64 * 0.414214).fract() * 3.0);
            let r = delta_decay(z, 1, f);
            assert!(r.magnitudes[0] <= radius(f) + 1e-12, "{f} {z}");
        }
    }
}

#[test]
fn float_path_matches_exact_path_on_k() {
    for f in Field::ALL {
        for q in 2..=9 {
            for x in 0..q {
                for y in 0..q {
                    let z = QuadElem::from_i64(f, x, y, q);
                    let exact = hurwitz_cf(&z, 40, f);
                    let float = hurwitz_cf(&z.to_complex(), 40, f);
                    assert_eq!(exact.alphas, float.alphas, "{f} {z}");
                    assert!(float.terminated);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_identities(z in field().prop_flat_map(|f| quad_elem(f, 60))) {
        let f = z.field();
        let e = hurwitz_cf(&z, 200, f);
        prop_assert!(e.terminated);
        prop_assert_eq!(e.last_convergent(), z.clone());
        check_determinants(&e);
        for n in 1..=e.len() {
            prop_assert_eq!(&e.deltas[n - 1], &delta_closed_form(&e, &z, n));
        }
        prop_assert!(e.deltas.last().unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn float_convergence(f in field(), re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let z = Complex64::new(re, im);
        let e = hurwitz_cf(&z, 30, f);
        check_determinants(&e);
        let mut prev = f64::INFINITY;
        for n in 0..e.len() {
            let err = (z - e.convergent(n).to_complex()).norm();
            if prev > 1e-12 {
                prop_assert!(err < prev, "n = {}: {} then {}", n, prev, err);
            }
            prev = err;
            let closed = delta_closed_form(&e, &z, n + 1);
            let scale = e.q_at(n as i64).to_complex().norm() * z.norm() + e.p_at(n as i64).to_complex().norm();
            prop_assert!((closed - e.deltas[n]).norm() <= 1e-9 * scale.max(1.0));
        }
        prop_assert!(prev < 1e-8);
    }
}
