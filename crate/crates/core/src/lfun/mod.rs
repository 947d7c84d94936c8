//! Representation counts, local factors, and special values of L(χ_{d_K}, s).

mod bench;
mod local;
mod values;

pub use bench::{bench, required_digits, time_it, BenchRow};
pub use local::{
    local_factor, local_polynomial, local_series, prime_divisors, r_count, r_count_brute, theta, zseries_partial,
    Branch, LocalFactor,
};
pub use values::{
    agreeing_digits, bernoulli, bernoulli_numbers, bernoulli_poly, bf_decimal, bf_rational, bf_to_f64,
    cohen_zagier, consts, functional_equation, functional_equation_hp, generalized_bernoulli, in_scope,
    l_negative_exact, l_positive_f64, l_positive_numeric, zeta_even_f64, zeta_even_over_pi, LValue,
};
