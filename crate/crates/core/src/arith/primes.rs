//! Prime tables, integer factorization and p-adic valuations.
//!
//! Builtin families draw their primes from a deterministic sieve. Factoring is
//! trial division up to a bound (default 10^6) followed by Miller-Rabin and
//! Pollard-Brent rho for whatever cofactor survives.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::ExactRational;
use crate::error::{Error, Result};

/// Upper end of the precomputed prime table.
pub const SIEVE_LIMIT: u64 = 1_000_000;

/// Default trial-division bound for [`factor`].
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Largest prime whose index [`prime_index`] will compute by segmented counting.
pub const PRIME_INDEX_LIMIT: u64 = 1_000_000_000;

fn sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// All primes up to [`SIEVE_LIMIT`], ascending.
pub fn prime_table() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| sieve(SIEVE_LIMIT))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first twenty prime bases; deterministic below 3.3·10^24,
/// probabilistic above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &prime_table()[..20] {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `n`-th prime, 1-based (`nth_prime(1) == 2`).
pub fn nth_prime(n: usize) -> u64 {
    assert!(n >= 1, "prime indices start at 1");
    let table = prime_table();
    if n <= table.len() {
        return table[n - 1];
    }
    let mut count = table.len();
    let mut candidate = SIEVE_LIMIT + 1;
    loop {
        if is_prime_u64(candidate) {
            count += 1;
            if count == n {
                return candidate;
            }
        }
        candidate += 1;
    }
}

/// Smallest prime strictly greater than `p`.
pub fn next_prime(p: u64) -> u64 {
    let table = prime_table();
    if p < SIEVE_LIMIT {
        let pos = table.partition_point(|&q| q <= p);
        if pos < table.len() {
            return table[pos];
        }
    }
    let mut c = p + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// Number of primes `<= x` (so `prime_index(p)` is the 1-based index of a prime `p`).
pub fn prime_count(x: u64) -> Result<usize> {
    let table = prime_table();
    if x <= SIEVE_LIMIT {
        return Ok(table.partition_point(|&q| q <= x));
    }
    if x > PRIME_INDEX_LIMIT {
        return Err(Error::Unsupported(format!(
            "prime counting beyond {PRIME_INDEX_LIMIT} is not supported (asked for {x})"
        )));
    }
    // Segmented sieve over (SIEVE_LIMIT, x].
    let mut count = table.len();
    let mut lo = SIEVE_LIMIT + 1;
    const SEGMENT: u64 = 1 << 20;
    let mut mark = vec![false; SEGMENT as usize];
    while lo <= x {
        let hi = (lo + SEGMENT - 1).min(x);
        let span = (hi - lo + 1) as usize;
        mark[..span].iter_mut().for_each(|m| *m = false);
        for &p in table {
            if p * p > hi {
                break;
            }
            let mut start = lo.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= hi {
                mark[(j - lo) as usize] = true;
                j += p;
            }
        }
        count += mark[..span].iter().filter(|m| !**m).count();
        lo = hi + 1;
    }
    Ok(count)
}

/// 1-based position of `p` in the sequence of all primes, or `None` if `p` is not prime.
pub fn prime_index(p: u64) -> Result<Option<usize>> {
    if !is_prime_u64(p) {
        return Ok(None);
    }
    prime_count(p).map(Some)
}

/// An exact prime factorization: prime → positive exponent. Empty means 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeFactorization {
    factors: BTreeMap<BigUint, u32>,
}

impl PrimeFactorization {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, p: &BigUint) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, u32)> {
        self.factors.iter().map(|(p, e)| (p, *e))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factors back together.
    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    fn push(&mut self, p: BigUint, e: u32) {
        *self.factors.entry(p).or_insert(0) += e;
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Factors `n >= 1` with the default trial-division bound.
pub fn factor(n: &BigUint) -> Result<PrimeFactorization> {
    factor_with_bound(n, DEFAULT_TRIAL_BOUND)
}

pub fn factor_u64(n: u64) -> Result<PrimeFactorization> {
    factor(&BigUint::from(n))
}

/// Factors `n >= 1`: trial division by every prime up to `bound`, then
/// Miller-Rabin / Pollard-Brent on the cofactor.
pub fn factor_with_bound(n: &BigUint, bound: u64) -> Result<PrimeFactorization> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let mut out = PrimeFactorization::one();
    let mut rest = n.clone();
    let table = prime_table();
    let mut trial = |d: u64, rest: &mut BigUint| -> bool {
        let dd = BigUint::from(d);
        if &(&dd * &dd) > rest {
            return false;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&dd);
            if !r.is_zero() {
                break;
            }
            *rest = q;
            e += 1;
        }
        if e > 0 {
            out.push(dd, e);
        }
        true
    };
    let mut exhausted = false;
    for &p in table.iter().take_while(|&&p| p <= bound) {
        if !trial(p, &mut rest) {
            exhausted = true;
            break;
        }
    }
    if !exhausted && bound > SIEVE_LIMIT {
        let mut d = SIEVE_LIMIT + 1;
        while d <= bound {
            if !trial(d, &mut rest) {
                exhausted = true;
                break;
            }
            d += 2;
        }
    }
    if rest.is_one() {
        return Ok(out);
    }
    let b = BigUint::from(bound);
    if exhausted || rest <= &b * &b {
        out.push(rest, 1);
        return Ok(out);
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            out.push(m, 1);
            continue;
        }
        let d = pollard_brent(&m);
        let other = &m / &d;
        stack.push(d);
        stack.push(other);
    }
    Ok(out)
}

/// Finds a nontrivial divisor of an odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const M: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..M.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn valuation_of_int(n: &BigUint, p: &BigUint) -> i64 {
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

/// `v_p(q)`: the exponent of `p` in the nonzero rational `q`.
pub fn p_adic_valuation(q: &ExactRational, p: &BigUint) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::Domain("the p-adic valuation of 0 is undefined".into()));
    }
    if p < &BigUint::from(2u32) {
        return Err(Error::Domain(format!("{p} is not a prime")));
    }
    Ok(valuation_of_int(q.numer(), p) - valuation_of_int(q.denom(), p))
}

pub fn p_adic_valuation_u64(q: &ExactRational, p: u64) -> Result<i64> {
    p_adic_valuation(q, &BigUint::from(p))
}

/// Exponent of `p` in a positive integer.
pub fn int_valuation(n: &BigUint, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    valuation_of_int(n, &BigUint::from(p)) as u32
}

/// Inverse of `a` modulo `m` (`m >= 1`), if `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    use num_bigint::BigInt;
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let a = BigInt::from(a % m);
    let m_signed = BigInt::from(m.clone());
    let egcd = a.extended_gcd(&m_signed);
    if !egcd.gcd.is_one() {
        return None;
    }
    let x = egcd.x.mod_floor(&m_signed);
    x.to_biguint()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_factor(mut n: u64) -> BTreeMap<u64, u32> {
        let mut out = BTreeMap::new();
        let mut d = 2;
        while d * d <= n {
            while n % d == 0 {
                *out.entry(d).or_insert(0) += 1;
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            *out.entry(n).or_insert(0) += 1;
        }
        out
    }

    fn as_u64_map(f: &PrimeFactorization) -> BTreeMap<u64, u32> {
        f.iter().map(|(p, e)| (p.to_u64().unwrap(), e)).collect()
    }

    #[test]
    fn factor_examples() {
        assert_eq!(as_u64_map(&factor_u64(12).unwrap()), BTreeMap::from([(2, 2), (3, 1)]));
        assert!(factor_u64(1).unwrap().is_one());
        // 1003 = 17 * 59, checked against plain trial division.
        assert_eq!(naive_factor(1003), BTreeMap::from([(17, 1), (59, 1)]));
        assert_eq!(as_u64_map(&factor_u64(1003).unwrap()), naive_factor(1003));
        assert!(matches!(factor_u64(0), Err(Error::Domain(_))));
    }

    #[test]
    fn factor_reassembles_on_a_dense_range() {
        for m in (1..=20_000u64).chain((999_000..=1_000_000).step_by(7)) {
            let f = factor_u64(m).unwrap();
            assert_eq!(f.value(), BigUint::from(m));
            assert!(f.primes().all(is_probable_prime));
        }
    }

    #[test]
    fn factor_beyond_the_trial_bound() {
        // (2^61 - 1) * (10^9 + 7) * 3^2
        let m61 = BigUint::from((1u64 << 61) - 1);
        let p = BigUint::from(1_000_000_007u64);
        let n = &m61 * &p * BigUint::from(9u32);
        let f = factor(&n).unwrap();
        assert_eq!(f.exponent(&m61), 1);
        assert_eq!(f.exponent(&p), 1);
        assert_eq!(f.exponent(&BigUint::from(3u32)), 2);
        assert_eq!(f.value(), n);
        // semiprime with two factors above the bound
        let q1 = BigUint::from(1_000_003u64);
        let q2 = BigUint::from(1_000_033u64);
        let f = factor(&(&q1 * &q2)).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.exponent(&q1), 1);
    }

    #[test]
    fn small_bound_still_factors() {
        let f = factor_with_bound(&BigUint::from(2u64 * 3 * 1_000_003 * 1_000_003), 10).unwrap();
        assert_eq!(f.exponent(&BigUint::from(1_000_003u64)), 2);
        assert_eq!(f.exponent(&BigUint::from(2u32)), 1);
    }

    #[test]
    fn valuation_examples() {
        use super::super::rational::rat;
        assert_eq!(p_adic_valuation_u64(&rat(5, 6), 2).unwrap(), -1);
        assert_eq!(p_adic_valuation_u64(&rat(9, 1), 3).unwrap(), 2);
        assert_eq!(p_adic_valuation_u64(&rat(1, 1), 5).unwrap(), 0);
        assert!(p_adic_valuation_u64(&ExactRational::zero(), 5).is_err());
    }

    #[test]
    fn prime_sequence_helpers() {
        assert_eq!(nth_prime(1), 2);
        assert_eq!(nth_prime(4), 7);
        assert_eq!(prime_index(7).unwrap(), Some(4));
        assert_eq!(prime_index(8).unwrap(), None);
        assert_eq!(next_prime(7), 11);
        assert_eq!(next_prime(1), 2);
        assert_eq!(prime_count(1_000_100).unwrap(), 78498 + 6);
        assert_eq!(nth_prime(78_499), 1_000_003);
    }

    #[test]
    fn inverse_mod() {
        let inv = mod_inverse(&BigUint::from(3u32), &BigUint::from(7u32)).unwrap();
        assert_eq!(inv, BigUint::from(5u32));
        assert!(mod_inverse(&BigUint::from(4u32), &BigUint::from(6u32)).is_none());
    }
}
