//! Generator-sequence descriptors for Puiseux monoids.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::primes::{is_prime_u64, nth_prime, prime_count};
use crate::arith::{factor, ExactRational};
use crate::error::{Error, Result};

/// Builtin generator families plus explicit finite lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `1/p_n`, primes from 2.
    PrimeReciprocal,
    /// `1/(b^n p_n)`, odd primes from 3. Base 2 is Grams' monoid.
    Grams { base: u64 },
    /// `1/(p_n p_{n+ell})`, primes from 2.
    Gap { ell: usize },
    /// `q^n` for `n >= 0` (`include_unit`) or `n >= 1`.
    Geometric { ratio: ExactRational, include_unit: bool },
    /// `1/b^n`, `n >= 1`.
    PowerReciprocal { base: u64 },
    /// `1/(2^m p_m)` for `m <= k`, then `1/p_n` for `n > k`; odd primes from 3.
    Mixed { k: usize },
    /// An explicit finite generator list, kept in input order.
    Custom { terms: Vec<ExactRational> },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::PrimeReciprocal => "prime_reciprocal",
            Family::Grams { .. } => "grams",
            Family::Gap { .. } => "gap",
            Family::Geometric { .. } => "geometric",
            Family::PowerReciprocal { .. } => "power_reciprocal",
            Family::Mixed { .. } => "mixed_5_2",
            Family::Custom { .. } => "custom",
        }
    }

    fn uses_primes(&self) -> bool {
        matches!(
            self,
            Family::PrimeReciprocal | Family::Grams { .. } | Family::Gap { .. } | Family::Mixed { .. }
        )
    }

    fn default_prime_start(&self) -> u64 {
        match self {
            Family::Grams { .. } | Family::Mixed { .. } => 3,
            _ => 2,
        }
    }
}

/// A strictly increasing prime sequence: an optional explicit prefix, then
/// every prime above the prefix (or above `start - 1` without one).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeSequence {
    prefix: Vec<u64>,
    start: u64,
}

impl PrimeSequence {
    pub fn new(start: u64, prefix: Vec<u64>) -> Result<Self> {
        for (i, &p) in prefix.iter().enumerate() {
            if !is_prime_u64(p) {
                return Err(Error::Descriptor {
                    field: "primes".into(),
                    reason: format!("entry {p} is not prime"),
                });
            }
            if i > 0 && prefix[i - 1] >= p {
                return Err(Error::Descriptor {
                    field: "primes".into(),
                    reason: "primes must be strictly increasing".into(),
                });
            }
        }
        Ok(Self { prefix, start })
    }

    /// Everything after the prefix consists of consecutive primes above this.
    fn tail_floor(&self) -> u64 {
        self.prefix.last().copied().unwrap_or(self.start.saturating_sub(1))
    }

    /// `p_n`, 1-based.
    pub fn nth(&self, n: usize) -> u64 {
        assert!(n >= 1);
        if n <= self.prefix.len() {
            return self.prefix[n - 1];
        }
        let below = prime_count(self.tail_floor()).expect("prefix primes are small");
        nth_prime(below + n - self.prefix.len())
    }

    /// The `n` with `p_n = p`, if `p` occurs.
    pub fn position(&self, p: u64) -> Result<Option<usize>> {
        if let Some(i) = self.prefix.iter().position(|&q| q == p) {
            return Ok(Some(i + 1));
        }
        let floor = self.tail_floor();
        if p <= floor || !is_prime_u64(p) {
            return Ok(None);
        }
        let below = prime_count(floor)?;
        Ok(Some(self.prefix.len() + prime_count(p)? - below))
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }
}

/// Which generator indices have a given prime in their denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSet {
    Finite(BTreeSet<usize>),
    /// Every index from the given one on.
    AllFrom(usize),
    /// Only the indices up to `bound` were inspected.
    UnknownBeyond { bound: usize, found: BTreeSet<usize> },
}

impl IndexSet {
    pub fn finite(&self) -> Option<&BTreeSet<usize>> {
        match self {
            IndexSet::Finite(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<usize>| {
            s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
        };
        match self {
            IndexSet::Finite(s) => write!(f, "{{{}}}", list(s)),
            IndexSet::AllFrom(1) => write!(f, "all indices"),
            IndexSet::AllFrom(k) => write!(f, "all indices >= {k}"),
            IndexSet::UnknownBeyond { bound, found } => {
                write!(f, "{{{}}} (unknown beyond index {bound})", list(found))
            }
        }
    }
}

/// One generator of a descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTerm {
    pub index: usize,
    pub value: ExactRational,
    /// A prime dividing `d(value)` and no other generator's denominator.
    pub controlling_prime: Option<u64>,
}

/// A Puiseux monoid given by its generator sequence. Structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidDescriptor {
    family: Family,
    primes: Option<PrimeSequence>,
    scale: ExactRational,
}

fn dparam(field: &str, reason: impl Into<String>) -> Error {
    Error::Descriptor {
        field: field.into(),
        reason: reason.into(),
    }
}

impl MonoidDescriptor {
    pub fn new(family: Family) -> Result<Self> {
        Self::with_primes(family, None)
    }

    /// `prime_prefix` overrides the first terms of the prime sequence of
    /// prime-indexed families; later terms continue with the next primes.
    pub fn with_primes(family: Family, prime_prefix: Option<Vec<u64>>) -> Result<Self> {
        match &family {
            Family::Grams { base } | Family::PowerReciprocal { base } if *base < 2 => {
                return Err(dparam("base", "base must be at least 2"));
            }
            Family::Gap { ell } if *ell < 1 => return Err(dparam("ell", "ell must be at least 1")),
            Family::Mixed { k } if *k < 1 => return Err(dparam("k", "k must be at least 1")),
            Family::Geometric { ratio, .. } => {
                if ratio.is_zero() {
                    return Err(dparam("q", "ratio must be positive"));
                }
                if ratio.is_integer() {
                    return Err(dparam("q", "ratio must not be a natural number"));
                }
                if ratio.to_u64_pair().is_none() {
                    return Err(dparam("q", "ratio numerator and denominator must fit in 64 bits"));
                }
            }
            Family::Custom { terms } => {
                if terms.is_empty() {
                    return Err(dparam("numerators", "custom generator list is empty"));
                }
                let mut seen = BTreeSet::new();
                for t in terms {
                    if t.is_zero() {
                        return Err(dparam("numerators", "generators must be positive"));
                    }
                    if !seen.insert(t.clone()) {
                        return Err(dparam("numerators", format!("duplicate generator {t}")));
                    }
                }
            }
            _ => {}
        }
        let primes = match prime_prefix {
            Some(prefix) => {
                if !family.uses_primes() {
                    return Err(dparam(
                        "primes",
                        format!("family {} is not indexed by primes", family.name()),
                    ));
                }
                Some(PrimeSequence::new(family.default_prime_start(), prefix)?)
            }
            None => None,
        };
        Ok(Self {
            family,
            primes,
            scale: ExactRational::one(),
        })
    }

    pub fn prime_reciprocal() -> Self {
        Self::new(Family::PrimeReciprocal).expect("valid")
    }

    pub fn grams(base: u64) -> Result<Self> {
        Self::new(Family::Grams { base })
    }

    pub fn gap(ell: usize) -> Result<Self> {
        Self::new(Family::Gap { ell })
    }

    pub fn geometric(ratio: ExactRational, include_unit: bool) -> Result<Self> {
        Self::new(Family::Geometric {
            ratio,
            include_unit,
        })
    }

    pub fn power_reciprocal(base: u64) -> Result<Self> {
        Self::new(Family::PowerReciprocal { base })
    }

    pub fn mixed(k: usize) -> Result<Self> {
        Self::new(Family::Mixed { k })
    }

    pub fn custom(terms: Vec<ExactRational>) -> Result<Self> {
        Self::new(Family::Custom { terms })
    }

    /// Custom list from parallel numerator/denominator arrays; every pair must be coprime.
    pub fn custom_pairs(numerators: &[u64], denominators: &[u64]) -> Result<Self> {
        if numerators.len() != denominators.len() {
            return Err(dparam(
                "denominators",
                format!(
                    "numerators has {} entries but denominators has {}",
                    numerators.len(),
                    denominators.len()
                ),
            ));
        }
        let mut terms = Vec::with_capacity(numerators.len());
        for (i, (&c, &d)) in numerators.iter().zip(denominators).enumerate() {
            if d == 0 {
                return Err(dparam("denominators", format!("entry {i} is zero")));
            }
            if c == 0 {
                return Err(dparam("numerators", format!("entry {i} is zero")));
            }
            if c.gcd(&d) != 1 {
                return Err(dparam(
                    "numerators",
                    format!("pair {i} ({c}/{d}) is not in lowest terms"),
                ));
            }
            terms.push(ExactRational::new(c, d)?);
        }
        Self::custom(terms)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn scale_factor(&self) -> &ExactRational {
        &self.scale
    }

    pub fn is_scaled(&self) -> bool {
        !self.scale.is_one()
    }

    pub fn prime_prefix(&self) -> Option<&[u64]> {
        self.primes.as_ref().map(|p| p.prefix())
    }

    /// The prime sequence `(p_n)` of a prime-indexed family.
    pub fn prime_sequence(&self) -> Option<PrimeSequence> {
        if !self.family.uses_primes() {
            return None;
        }
        Some(self.primes.clone().unwrap_or(PrimeSequence {
            prefix: Vec::new(),
            start: self.family.default_prime_start(),
        }))
    }

    fn p(&self, n: usize) -> u64 {
        self.prime_sequence().expect("prime-indexed family").nth(n)
    }

    pub fn first_index(&self) -> usize {
        match self.family {
            Family::Geometric {
                include_unit: true, ..
            } => 0,
            _ => 1,
        }
    }

    /// Last valid index for finite lists.
    pub fn last_index(&self) -> Option<usize> {
        match &self.family {
            Family::Custom { terms } => Some(terms.len()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.last_index().is_some()
    }

    /// Indices `first..=upto`, clipped to the list length for finite families.
    pub fn indices_upto(&self, upto: usize) -> std::ops::RangeInclusive<usize> {
        let last = self.last_index().map_or(upto, |l| l.min(upto));
        self.first_index()..=last
    }

    fn check_index(&self, n: usize) -> Result<()> {
        let first = self.first_index();
        let last = self.last_index();
        if n < first || last.is_some_and(|l| n > l) {
            return Err(Error::IndexOutOfRange {
                index: n,
                first,
                last: last.unwrap_or(usize::MAX),
            });
        }
        Ok(())
    }

    fn base_value(&self, n: usize) -> ExactRational {
        let one = BigUint::one();
        let recip = |d: BigUint| ExactRational::new(one.clone(), d).expect("positive");
        match &self.family {
            Family::PrimeReciprocal => recip(BigUint::from(self.p(n))),
            Family::Grams { base } => recip(BigUint::from(*base).pow(n as u32) * self.p(n)),
            Family::Gap { ell } => {
                recip(BigUint::from(self.p(n)) * BigUint::from(self.p(n + ell)))
            }
            Family::Geometric { ratio, .. } => {
                let (a, b) = ratio.num_den();
                ExactRational::new(a.pow(n as u32), b.pow(n as u32)).expect("positive")
            }
            Family::PowerReciprocal { base } => recip(BigUint::from(*base).pow(n as u32)),
            Family::Mixed { k } => {
                if n <= *k {
                    recip(BigUint::from(2u32).pow(n as u32) * self.p(n))
                } else {
                    recip(BigUint::from(self.p(n)))
                }
            }
            Family::Custom { terms } => terms[n - 1].clone(),
        }
    }

    fn base_controlling_prime(&self, n: usize) -> Option<u64> {
        match &self.family {
            Family::PrimeReciprocal => Some(self.p(n)),
            Family::Grams { base } => {
                let p = self.p(n);
                (base % p != 0).then_some(p)
            }
            Family::Gap { ell } => (n <= *ell).then(|| self.p(n)),
            Family::Mixed { .. } => {
                let p = self.p(n);
                (p != 2).then_some(p)
            }
            Family::Geometric { .. } | Family::PowerReciprocal { .. } => None,
            Family::Custom { terms } => {
                let d = terms[n - 1].denom();
                let f = factor(d).ok()?;
                let found = f
                    .primes()
                    .find(|p| {
                        terms
                            .iter()
                            .enumerate()
                            .all(|(i, t)| i == n - 1 || !(t.denom() % *p).is_zero())
                    })
                    .and_then(|p| p.to_u64());
                found
            }
        }
    }

    /// Value of generator `n`, without the bounds check.
    pub(crate) fn value_unchecked(&self, n: usize) -> ExactRational {
        let v = self.base_value(n);
        if self.is_scaled() {
            &v * &self.scale
        } else {
            v
        }
    }

    /// The `n`-th generator.
    pub fn generator(&self, n: usize) -> Result<GeneratorTerm> {
        self.check_index(n)?;
        Ok(GeneratorTerm {
            index: n,
            value: self.value_unchecked(n),
            controlling_prime: self.controlling_prime(n),
        })
    }

    pub fn value(&self, n: usize) -> Result<ExactRational> {
        self.check_index(n)?;
        Ok(self.value_unchecked(n))
    }

    /// First `count` generators (fewer for short custom lists).
    pub fn generators(&self, count: usize) -> Vec<GeneratorTerm> {
        let first = self.first_index();
        self.indices_upto(first + count.max(1) - 1)
            .take(count)
            .map(|n| self.generator(n).expect("in range"))
            .collect()
    }

    pub fn controlling_prime(&self, n: usize) -> Option<u64> {
        let p = self.base_controlling_prime(n)?;
        if self.is_scaled() {
            let (a, b) = self.scale.num_den();
            let pp = BigUint::from(p);
            if (a % &pp).is_zero() || (b % &pp).is_zero() {
                return None;
            }
        }
        Some(p)
    }

    /// True when every generator of an infinite builtin family has a controlling prime.
    pub fn is_coprime_controlled(&self) -> bool {
        if self.is_scaled() {
            return false;
        }
        match &self.family {
            Family::PrimeReciprocal => true,
            Family::Mixed { .. } => self.primes.as_ref().is_none_or(|s| !s.prefix().contains(&2)),
            Family::Grams { base } => !self.base_collides_with_primes(*base),
            Family::Custom { terms } => (1..=terms.len()).all(|n| self.controlling_prime(n).is_some()),
            _ => false,
        }
    }

    /// Generators `cₙ/dₙ` with `dₙ ≥ 2` pairwise coprime, known from the
    /// family rule (builtins) or by inspection (custom lists).
    pub fn is_almost_reciprocal(&self) -> bool {
        if self.is_scaled() {
            return false;
        }
        match &self.family {
            Family::PrimeReciprocal => true,
            Family::Mixed { k } => *k == 1 && self.is_coprime_controlled(),
            Family::Custom { terms } => {
                terms.iter().all(|t| t.denom() > &BigUint::one())
                    && terms.iter().enumerate().all(|(i, s)| {
                        terms[i + 1..].iter().all(|t| s.denom().gcd(t.denom()).is_one())
                    })
            }
            _ => false,
        }
    }

    /// Grams-type families `1/(bⁿpₙ)` and the mixed family, for which
    /// membership reduces to residues at controlled primes plus a remainder
    /// supported on the base. Returns the base prime set's product and the
    /// largest allowed exponent of the base in the remainder (`None`: any).
    pub(crate) fn residue_remainder_base(&self) -> Option<(u64, Option<usize>)> {
        if self.is_scaled() {
            return None;
        }
        match &self.family {
            Family::Grams { base } => Some((*base, None)),
            Family::Mixed { k } if self.is_coprime_controlled() => Some((2, Some(*k))),
            _ => None,
        }
    }

    /// Does some prime factor of `base` occur in the prime sequence?
    pub(crate) fn base_collides_with_primes(&self, base: u64) -> bool {
        let seq = self.prime_sequence().expect("prime-indexed family");
        factor(&BigUint::from(base))
            .expect("base >= 2")
            .primes()
            .filter_map(|p| p.to_u64())
            .any(|p| seq.position(p).ok().flatten().is_some())
    }

    /// The index `n` whose controlling prime is `p`, for coprime-controlled families.
    pub fn index_controlled_by(&self, p: u64) -> Result<Option<usize>> {
        if let Family::Custom { terms } = &self.family {
            return Ok((1..=terms.len()).find(|&n| self.controlling_prime(n) == Some(p)));
        }
        let Some(seq) = self.prime_sequence() else {
            return Ok(None);
        };
        Ok(seq
            .position(p)?
            .filter(|&n| self.controlling_prime(n) == Some(p)))
    }

    /// Indices whose generator has `p` in its denominator.
    pub fn index_set_for_prime(&self, p: u64, scan_bound: usize) -> IndexSet {
        if self.is_scaled() {
            let (a, b) = self.scale.num_den();
            let pp = BigUint::from(p);
            if (a % &pp).is_zero() || (b % &pp).is_zero() {
                return self.scan_for_prime(p, scan_bound);
            }
        }
        let position = |seq: &PrimeSequence| seq.position(p);
        let finite = |it: Vec<usize>| IndexSet::Finite(it.into_iter().collect());
        let unknown = || IndexSet::UnknownBeyond {
            bound: scan_bound,
            found: BTreeSet::new(),
        };
        match &self.family {
            Family::PrimeReciprocal => match position(&self.prime_sequence().unwrap()) {
                Ok(pos) => finite(pos.into_iter().collect()),
                Err(_) => unknown(),
            },
            Family::Grams { base } => {
                if base % p == 0 {
                    IndexSet::AllFrom(1)
                } else {
                    match position(&self.prime_sequence().unwrap()) {
                        Ok(pos) => finite(pos.into_iter().collect()),
                        Err(_) => unknown(),
                    }
                }
            }
            Family::Gap { ell } => match position(&self.prime_sequence().unwrap()) {
                Ok(Some(m)) => {
                    let mut v = vec![m];
                    if m > *ell {
                        v.push(m - ell);
                    }
                    finite(v)
                }
                Ok(None) => finite(vec![]),
                Err(_) => unknown(),
            },
            Family::Mixed { k } => {
                let pos = match position(&self.prime_sequence().unwrap()) {
                    Ok(pos) => pos,
                    Err(_) => return unknown(),
                };
                let mut v: Vec<usize> = pos.into_iter().collect();
                if p == 2 {
                    v.extend(1..=*k);
                }
                finite(v)
            }
            Family::Geometric { ratio, .. } => {
                if (ratio.denom() % BigUint::from(p)).is_zero() {
                    IndexSet::AllFrom(1)
                } else {
                    finite(vec![])
                }
            }
            Family::PowerReciprocal { base } => {
                if base % p == 0 {
                    IndexSet::AllFrom(1)
                } else {
                    finite(vec![])
                }
            }
            Family::Custom { terms } => {
                let pp = BigUint::from(p);
                finite(
                    terms
                        .iter()
                        .enumerate()
                        .filter(|(_, t)| (t.denom() % &pp).is_zero())
                        .map(|(i, _)| i + 1)
                        .collect(),
                )
            }
        }
    }

    fn scan_for_prime(&self, p: u64, scan_bound: usize) -> IndexSet {
        let pp = BigUint::from(p);
        let found: BTreeSet<usize> = self
            .indices_upto(scan_bound)
            .filter(|&n| (self.value_unchecked(n).denom() % &pp).is_zero())
            .collect();
        if self.is_finite() {
            IndexSet::Finite(found)
        } else {
            IndexSet::UnknownBeyond {
                bound: scan_bound,
                found,
            }
        }
    }

    /// The same family without its scale factor.
    pub fn unscaled(&self) -> Self {
        Self {
            family: self.family.clone(),
            primes: self.primes.clone(),
            scale: ExactRational::one(),
        }
    }

    /// The descriptor of `q·M`.
    pub fn scale(&self, q: &ExactRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Domain("scaling factor must be positive".into()));
        }
        if let Family::Custom { terms } = &self.family {
            return Self::custom(terms.iter().map(|t| t * q).collect());
        }
        let factor = &self.scale * q;
        if factor.to_u64_pair().is_none() {
            return Err(Error::Unsupported(
                "scale factors must have 64-bit numerator and denominator".into(),
            ));
        }
        Ok(Self {
            family: self.family.clone(),
            primes: self.primes.clone(),
            scale: factor,
        })
    }

    /// Numerators of the generators when they are bounded: the full set for
    /// finite lists, `{1}` for unit-numerator families.
    pub fn bounded_numerators(&self) -> Option<BTreeSet<BigUint>> {
        let base: BTreeSet<BigUint> = match &self.family {
            Family::Custom { terms } => {
                return Some(terms.iter().map(|t| t.numer().clone()).collect());
            }
            Family::Geometric { ratio, .. } if !ratio.numer().is_one() => return None,
            _ => BTreeSet::from([BigUint::one()]),
        };
        // The numerators of a scaled infinite family are bounded by n(f) but
        // their exact set is not tracked.
        (!self.is_scaled()).then_some(base)
    }

    /// Strongly bounded → isomorphic weak reciprocal: returns `m = lcm n(Q)` and
    /// the descriptor of `(1/m)·M`, whose generators all have numerator 1.
    pub fn normalize_strongly_bounded(&self) -> Result<(BigUint, Self)> {
        let nums = self.bounded_numerators().ok_or_else(|| {
            Error::Unsupported(format!(
                "{} has unbounded generator numerators",
                self.family.name()
            ))
        })?;
        let m = nums.iter().fold(BigUint::one(), |acc, n| acc.lcm(n));
        if m.is_one() {
            return Ok((m, self.clone()));
        }
        let out = self.scale(&ExactRational::new(BigUint::one(), m.clone())?)?;
        Ok((m, out))
    }
}

impl fmt::Display for MonoidDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::PrimeReciprocal => write!(f, "prime_reciprocal")?,
            Family::Grams { base } => write!(f, "grams(base={base})")?,
            Family::Gap { ell } => write!(f, "gap(ell={ell})")?,
            Family::Geometric {
                ratio,
                include_unit,
            } => write!(f, "geometric(q={ratio}, include_unit={include_unit})")?,
            Family::PowerReciprocal { base } => write!(f, "power_reciprocal(base={base})")?,
            Family::Mixed { k } => write!(f, "mixed_5_2(k={k})")?,
            Family::Custom { terms } => {
                let parts: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
                write!(f, "custom{{{}}}", parts.join(", "))?
            }
        }
        if let Some(seq) = &self.primes {
            let parts: Vec<String> = seq.prefix().iter().map(|p| p.to_string()).collect();
            write!(f, " primes=[{}, ...]", parts.join(", "))?;
        }
        if self.is_scaled() {
            write!(f, " scaled by {}", self.scale)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn generator_examples() {
        let pr = MonoidDescriptor::prime_reciprocal();
        let g = pr.generator(1).unwrap();
        assert_eq!(g.value, rat(1, 2));
        assert_eq!(g.controlling_prime, Some(2));

        let grams = MonoidDescriptor::grams(2).unwrap();
        let g = grams.generator(2).unwrap();
        assert_eq!(g.value, rat(1, 20));
        assert_eq!(g.controlling_prime, Some(5));

        let geo = MonoidDescriptor::geometric(rat(2, 3), true).unwrap();
        let g = geo.generator(2).unwrap();
        assert_eq!(g.value, rat(4, 9));
        assert_eq!(g.controlling_prime, None);
        assert_eq!(geo.generator(0).unwrap().value, rat(1, 1));
        let geo_no_unit = MonoidDescriptor::geometric(rat(2, 3), false).unwrap();
        assert!(geo_no_unit.generator(0).is_err());
    }

    #[test]
    fn family_values() {
        let gap = MonoidDescriptor::gap(1).unwrap();
        assert_eq!(gap.value(1).unwrap(), rat(1, 6));
        assert_eq!(gap.value(2).unwrap(), rat(1, 15));
        let gap2 = MonoidDescriptor::gap(2).unwrap();
        assert_eq!(gap2.value(1).unwrap(), rat(1, 10));
        let mixed = MonoidDescriptor::mixed(3).unwrap();
        let vals: Vec<_> = (1..=5).map(|n| mixed.value(n).unwrap()).collect();
        assert_eq!(vals, vec![rat(1, 6), rat(1, 20), rat(1, 56), rat(1, 11), rat(1, 13)]);
        let pw = MonoidDescriptor::power_reciprocal(3).unwrap();
        assert_eq!(pw.value(2).unwrap(), rat(1, 9));
    }

    #[test]
    fn custom_index_out_of_range() {
        let c = MonoidDescriptor::custom(vec![rat(1, 2), rat(1, 3)]).unwrap();
        assert!(matches!(c.generator(3), Err(Error::IndexOutOfRange { .. })));
        assert!(c.generator(0).is_err());
        assert_eq!(c.generator(2).unwrap().controlling_prime, Some(3));
    }

    #[test]
    fn index_set_examples() {
        let pr = MonoidDescriptor::prime_reciprocal();
        assert_eq!(pr.index_set_for_prime(7, 100), IndexSet::Finite(BTreeSet::from([4])));
        let grams = MonoidDescriptor::grams(2).unwrap();
        assert_eq!(grams.index_set_for_prime(2, 100), IndexSet::AllFrom(1));
        assert_eq!(grams.index_set_for_prime(2, 100).to_string(), "all indices");
        let gap = MonoidDescriptor::gap(1).unwrap();
        let p2 = gap.prime_sequence().unwrap().nth(2);
        assert_eq!(gap.index_set_for_prime(p2, 100), IndexSet::Finite(BTreeSet::from([1, 2])));
    }

    #[test]
    fn prime_override_continues_with_larger_primes() {
        let d = MonoidDescriptor::with_primes(Family::PrimeReciprocal, Some(vec![3, 5, 7])).unwrap();
        assert_eq!(d.value(4).unwrap(), rat(1, 11));
        assert_eq!(d.index_set_for_prime(2, 10), IndexSet::Finite(BTreeSet::new()));
        assert_eq!(d.index_set_for_prime(13, 10), IndexSet::Finite(BTreeSet::from([5])));
        assert!(MonoidDescriptor::with_primes(Family::PrimeReciprocal, Some(vec![5, 3])).is_err());
        assert!(MonoidDescriptor::with_primes(Family::PrimeReciprocal, Some(vec![4])).is_err());
        assert!(MonoidDescriptor::with_primes(Family::PowerReciprocal { base: 2 }, Some(vec![3])).is_err());
    }

    #[test]
    fn normalize_examples() {
        let alt = MonoidDescriptor::custom(vec![rat(1, 3), rat(3, 5), rat(1, 7), rat(3, 11)]).unwrap();
        let (m, out) = alt.normalize_strongly_bounded().unwrap();
        assert_eq!(m, BigUint::from(3u32));
        assert_eq!(
            out,
            MonoidDescriptor::custom(vec![rat(1, 9), rat(1, 5), rat(1, 21), rat(1, 11)]).unwrap()
        );
        let pr = MonoidDescriptor::prime_reciprocal();
        assert_eq!(pr.normalize_strongly_bounded().unwrap(), (BigUint::one(), pr.clone()));
        let c = MonoidDescriptor::custom(vec![rat(3, 4), rat(9, 5)]).unwrap();
        let (m, out) = c.normalize_strongly_bounded().unwrap();
        assert_eq!(m, BigUint::from(9u32));
        assert_eq!(out, MonoidDescriptor::custom(vec![rat(1, 12), rat(1, 5)]).unwrap());
        let geo = MonoidDescriptor::geometric(rat(2, 3), true).unwrap();
        assert!(matches!(geo.normalize_strongly_bounded(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn scale_examples() {
        let pr = MonoidDescriptor::prime_reciprocal();
        assert_eq!(pr.scale(&rat(1, 1)).unwrap(), pr);
        let c = MonoidDescriptor::custom(vec![rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(c.scale(&rat(6, 1)).unwrap(), MonoidDescriptor::custom(vec![rat(3, 1), rat(2, 1)]).unwrap());
        let c = MonoidDescriptor::custom(vec![rat(3, 4)]).unwrap();
        assert_eq!(c.scale(&rat(1, 3)).unwrap(), MonoidDescriptor::custom(vec![rat(1, 4)]).unwrap());
        assert!(pr.scale(&ExactRational::zero()).is_err());
        let scaled = pr.scale(&rat(6, 5)).unwrap();
        assert_eq!(scaled.value(3).unwrap(), rat(6, 25));
        assert_eq!(scaled.controlling_prime(3), None);
        assert_eq!(scaled.controlling_prime(4), Some(7));
        assert_eq!(scaled.scale(&rat(5, 6)).unwrap(), pr);
    }

    #[test]
    fn descriptor_validation() {
        assert!(MonoidDescriptor::grams(1).is_err());
        assert!(MonoidDescriptor::gap(0).is_err());
        assert!(MonoidDescriptor::geometric(rat(3, 1), true).is_err());
        assert!(MonoidDescriptor::custom(vec![]).is_err());
        assert!(MonoidDescriptor::custom(vec![rat(1, 2), rat(2, 4)]).is_err());
        assert!(MonoidDescriptor::custom_pairs(&[1, 1], &[2]).is_err());
        assert!(MonoidDescriptor::custom_pairs(&[2], &[4]).is_err());
        assert!(MonoidDescriptor::custom_pairs(&[1, 1], &[2, 4]).is_ok());
    }
}
