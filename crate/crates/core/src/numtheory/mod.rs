//! Primes, prime counting mod 4, Kronecker symbols, θ, Li and the primorial D.

mod analytic;
mod sieve;
mod symbols;

pub use analytic::{
    chebyshev_theta, log_integral, log_integral_many, log_primorial_d, primorial_d,
    theta_from_table, PRIMORIAL_MAX_ELL,
};
pub use sieve::{nth_prime, prime_count_ap, sieve_primes, PrimeTable, SIEVE_CAPACITY};
pub(crate) use sieve::nth_prime_upper_bound;
pub use symbols::{kronecker, kronecker_i64};
