//! Exact arithmetic: canonical rationals, primes, factoring, valuations.

pub mod primes;
pub mod rational;
pub mod semigroup;

pub use primes::{
    factor, factor_u64, factor_with_bound, mod_inverse, next_prime, nth_prime,
    p_adic_valuation, p_adic_valuation_u64, prime_count, prime_index, PrimeFactorization,
};
pub use rational::{rat, ExactRational};
pub use semigroup::{IntMembership, IntegerMonoid};
