//! Factorizations, length sets and atom certificates.
//!
//! The exact fixed-length search relies on controlling primes: if `pᵢ` divides
//! `d(aᵢ)` (to the power `e`) and no other denominator, then in any
//! factorization `Σ αⱼaⱼ = q` the coefficient `αᵢ` is congruent to `q/aᵢ`
//! modulo `pᵢᵉ`. A generator whose controlling prime divides neither `d(q)`
//! nor anything up to `ℓ` therefore needs at least `pᵢ > ℓ` copies and cannot
//! occur in a factorization of length `ℓ`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::primes::int_valuation;
use crate::arith::{factor, p_adic_valuation_u64, ExactRational};
use crate::bounds::Bounds;
use crate::decomposition::{atomic_decompose, cmp_sparse, padic_residue, Decomposed};
use crate::error::{Error, Result};
use crate::monoid::{Family, IndexSet, MonoidDescriptor};
use crate::search::{FindOutcome, Knapsack};

/// Node budget for the bounded (uncontrolled) enumeration path.
pub const ENUMERATION_NODE_BUDGET: u64 = 5_000_000;

/// A formal sum `Σ αᵢ·aᵢ` of generators; zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    exponents: BTreeMap<usize, BigUint>,
}

impl Factorization {
    pub fn new(exponents: BTreeMap<usize, BigUint>) -> Self {
        Self {
            exponents: exponents.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_pairs(pairs: &[(usize, u64)]) -> Self {
        Self::new(pairs.iter().map(|&(i, c)| (i, BigUint::from(c))).collect())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn exponents(&self) -> &BTreeMap<usize, BigUint> {
        &self.exponents
    }

    pub fn length(&self) -> BigUint {
        self.exponents.values().sum()
    }

    pub fn evaluate(&self, desc: &MonoidDescriptor) -> Result<ExactRational> {
        let mut acc = ExactRational::zero();
        for (&i, c) in &self.exponents {
            acc += &(&desc.value(i)? * c);
        }
        Ok(acc)
    }

    /// `α·(a) + …` in index order, `0` for the empty sum.
    pub fn render(&self, desc: &MonoidDescriptor) -> String {
        if self.exponents.is_empty() {
            return "0".into();
        }
        self.exponents
            .iter()
            .map(|(&i, c)| {
                let a = desc.value(i).map_or_else(|_| format!("a{i}"), |a| a.to_string());
                format!("{c}·({a})")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// By length, then lexicographically by exponent vector.
impl Ord for Factorization {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| cmp_sparse(&self.exponents, &other.exponents))
    }
}

impl PartialOrd for Factorization {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// How much of the answer a result claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// The full, possibly infinite-family-wide, answer.
    Complete,
    /// Exact among factorizations within the stated limits.
    UpToBounds {
        max_length: Option<u64>,
        max_index: Option<usize>,
    },
    /// The search was cut short; items are correct but may be missing some.
    Unknown,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Completeness::Complete => write!(f, "complete"),
            Completeness::UpToBounds {
                max_length,
                max_index,
            } => {
                let mut parts = Vec::new();
                if let Some(l) = max_length {
                    parts.push(format!("max_length={l}"));
                }
                if let Some(i) = max_index {
                    parts.push(format!("max_index={i}"));
                }
                write!(f, "complete_up_to_bounds({})", parts.join(", "))
            }
            Completeness::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationSet {
    pub items: Vec<Factorization>,
    pub complete: Completeness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthSet {
    pub lengths: BTreeSet<u64>,
    /// One factorization per length.
    pub witnesses: BTreeMap<u64, Factorization>,
    pub complete: Completeness,
}

fn no_controlling_primes(desc: &MonoidDescriptor) -> Error {
    Error::Unsupported(format!(
        "{desc} has infinitely many generators without a controlling prime"
    ))
}

/// Indices that may carry a factorization of `q` of length at most `ell`.
pub fn relevant_indices(desc: &MonoidDescriptor, q: &ExactRational, ell: u64) -> Result<BTreeSet<usize>> {
    let dq_primes: BTreeSet<BigUint> = factor(q.denom())?.primes().cloned().collect();
    let keep = |p: u64| p <= ell || dq_primes.contains(&BigUint::from(p));
    if let Family::Custom { terms } = desc.family() {
        return Ok((1..=terms.len())
            .filter(|&i| desc.controlling_prime(i).is_none_or(keep))
            .collect());
    }
    if desc.is_scaled() {
        return Err(no_controlling_primes(desc));
    }
    // Prime-indexed families whose generators are controlled by pₙ except for
    // the finitely many n with pₙ dividing the base.
    let base: Option<u64> = match desc.family() {
        Family::PrimeReciprocal => None,
        Family::Grams { base } => Some(*base),
        Family::Mixed { .. } => Some(2),
        _ => return Err(no_controlling_primes(desc)),
    };
    let seq = desc.prime_sequence().expect("prime-indexed family");
    let mut out = BTreeSet::new();
    if let Some(b) = base {
        for p in factor(&BigUint::from(b))?.primes() {
            if let Some(n) = seq.position(p.to_u64().expect("64-bit base"))? {
                out.insert(n);
            }
        }
    }
    let mut n = 1;
    while seq.nth(n) <= ell {
        out.insert(n);
        n += 1;
    }
    for p in &dq_primes {
        if let Some(n) = p.to_u64().map(|p| desc.index_controlled_by(p)).transpose()?.flatten() {
            out.insert(n);
        }
    }
    Ok(out)
}

/// Per-index congruence `αᵢ ≡ r (mod m)`, or `None` when `v_p(q/aᵢ) < 0`
/// rules out every factorization.
fn congruence(desc: &MonoidDescriptor, q: &ExactRational, i: usize, a: &ExactRational) -> Option<(BigUint, BigUint)> {
    let Some(p) = desc.controlling_prime(i) else {
        return Some((BigUint::zero(), BigUint::one()));
    };
    let e = int_valuation(a.denom(), p);
    let pp = BigUint::from(p);
    let x = q.div_exact(a).expect("positive generator");
    let r = padic_residue(&x, &pp, e)?;
    Some((r, pp.pow(e)))
}

/// The complete finite set `Z(q, ℓ)` of factorizations of length exactly `ℓ`.
pub fn factorizations_of_length(desc: &MonoidDescriptor, q: &ExactRational, ell: u64) -> Result<FactorizationSet> {
    let indices = relevant_indices(desc, q, ell)?;
    let complete = Completeness::Complete;
    if ell == 0 || q.is_zero() {
        let items = if ell == 0 && q.is_zero() {
            vec![Factorization::empty()]
        } else {
            Vec::new()
        };
        return Ok(FactorizationSet { items, complete });
    }
    let mut items: Vec<(usize, ExactRational, u64, u64)> = Vec::new();
    for i in indices {
        let a = desc.value(i)?;
        let Some((r, m)) = congruence(desc, q, i, &a) else {
            return Ok(FactorizationSet {
                items: Vec::new(),
                complete,
            });
        };
        if a > *q {
            if !r.is_zero() {
                return Ok(FactorizationSet {
                    items: Vec::new(),
                    complete,
                });
            }
            continue;
        }
        let Some(r) = r.to_u64().filter(|r| *r <= ell) else {
            // More than ℓ copies forced.
            return Ok(FactorizationSet {
                items: Vec::new(),
                complete,
            });
        };
        let m = m.to_u64().unwrap_or(u64::MAX);
        items.push((i, a, r, m));
    }
    // Heavier generators first so the value bound bites early.
    items.sort_by(|x, y| y.1.cmp(&x.1));
    let pairs: Vec<(usize, ExactRational)> = items.iter().map(|(i, a, _, _)| (*i, a.clone())).collect();
    let ks = Knapsack::new(q, &pairs);
    let n = items.len();
    let mut suffix_min_len = vec![0u64; n + 1];
    let mut suffix_min_val = vec![BigUint::zero(); n + 1];
    let mut suffix_min_w = vec![None::<BigUint>; n + 1];
    for k in (0..n).rev() {
        suffix_min_len[k] = suffix_min_len[k + 1] + items[k].2;
        suffix_min_val[k] = &suffix_min_val[k + 1] + &ks.weights[k] * items[k].2;
        suffix_min_w[k] = Some(match &suffix_min_w[k + 1] {
            Some(w) if w < &ks.weights[k] => w.clone(),
            _ => ks.weights[k].clone(),
        });
    }
    let mut st = LengthState {
        weights: &ks.weights,
        residues: items.iter().map(|x| (x.2, x.3)).collect(),
        suffix_min_len,
        suffix_min_val,
        suffix_min_w,
        coeffs: vec![0; n],
        out: Vec::new(),
    };
    st.go(0, ks.target.clone(), ell);
    let mut found: Vec<Factorization> = st
        .out
        .into_iter()
        .map(|cs| {
            Factorization::new(
                ks.indices
                    .iter()
                    .zip(cs)
                    .map(|(i, c)| (*i, BigUint::from(c)))
                    .collect(),
            )
        })
        .collect();
    found.sort();
    Ok(FactorizationSet {
        items: found,
        complete,
    })
}

struct LengthState<'a> {
    /// Sorted by decreasing weight.
    weights: &'a [BigUint],
    residues: Vec<(u64, u64)>,
    suffix_min_len: Vec<u64>,
    suffix_min_val: Vec<BigUint>,
    suffix_min_w: Vec<Option<BigUint>>,
    coeffs: Vec<u64>,
    out: Vec<Vec<u64>>,
}

impl LengthState<'_> {
    fn go(&mut self, k: usize, rem: BigUint, len_left: u64) {
        if k == self.weights.len() {
            if len_left == 0 && rem.is_zero() {
                self.out.push(self.coeffs.clone());
            }
            return;
        }
        if len_left < self.suffix_min_len[k] || rem < self.suffix_min_val[k] {
            return;
        }
        // Σ over the suffix of exactly len_left weights, the largest being this one.
        let max_w = &self.weights[k];
        let min_w = self.suffix_min_w[k].as_ref().expect("nonempty suffix");
        if rem > max_w * len_left || rem < min_w * len_left {
            return;
        }
        let (r, m) = self.residues[k];
        let mut c = r;
        while c <= len_left {
            let spend = max_w * c;
            if spend > rem {
                break;
            }
            self.coeffs[k] = c;
            self.go(k + 1, &rem - spend, len_left - c);
            match c.checked_add(m) {
                Some(next) if m > 0 => c = next,
                _ => break,
            }
        }
        self.coeffs[k] = 0;
    }
}

/// Monoids with no atoms at all: every generator is a sum of later ones.
fn known_antimatter(desc: &MonoidDescriptor) -> bool {
    match desc.family() {
        Family::PowerReciprocal { .. } => true,
        Family::Geometric { ratio, .. } => ratio.numer().is_one(),
        _ => false,
    }
}

/// Factorizations of `q` of length at most `max_length`; on families
/// without controlling primes also restricted to indices up to `max_index`.
pub fn enumerate_factorizations(
    desc: &MonoidDescriptor,
    q: &ExactRational,
    max_length: u64,
    max_index: usize,
) -> Result<FactorizationSet> {
    if q.is_zero() {
        return Err(Error::Domain("factorizations are defined for nonzero elements".into()));
    }
    if known_antimatter(desc) {
        return Err(Error::Unsupported(format!(
            "{desc} has no atoms, so nothing factors"
        )));
    }
    if desc.is_almost_reciprocal() {
        match atomic_decompose(desc, q)? {
            // Not a member: no factorization at all.
            Decomposed::NotMember(_) => {
                return Ok(FactorizationSet {
                    items: Vec::new(),
                    complete: Completeness::Complete,
                })
            }
            // η = 0: any factorization reduces coefficientwise modulo dᵢ to
            // the unique decomposition with η = Σ kᵢcᵢ = 0, so it is that one.
            Decomposed::Unique(d) if d.eta.is_zero() => {
                return Ok(FactorizationSet {
                    items: vec![Factorization::new(d.zeta)],
                    complete: Completeness::Complete,
                })
            }
            Decomposed::Unique(_) => {}
        }
    }
    match relevant_indices(desc, q, 1) {
        Ok(_) => {
            let per_length: Vec<FactorizationSet> = (1..=max_length)
                .into_par_iter()
                .map(|ell| factorizations_of_length(desc, q, ell))
                .collect::<Result<_>>()?;
            Ok(FactorizationSet {
                items: per_length.into_iter().flat_map(|s| s.items).collect(),
                complete: Completeness::UpToBounds {
                    max_length: Some(max_length),
                    max_index: None,
                },
            })
        }
        Err(Error::Unsupported(_)) => bounded_enumeration(desc, q, max_length, max_index),
        Err(e) => Err(e),
    }
}

fn bounded_enumeration(
    desc: &MonoidDescriptor,
    q: &ExactRational,
    max_length: u64,
    max_index: usize,
) -> Result<FactorizationSet> {
    let items: Vec<(usize, ExactRational)> = desc
        .indices_upto(max_index)
        .map(|i| (i, desc.value_unchecked(i)))
        .filter(|(_, a)| a <= q)
        .collect();
    let ks = Knapsack::new(q, &items);
    let caps = vec![max_length; items.len()];
    let (hits, exhausted) = ks.enumerate(&caps, max_length, ENUMERATION_NODE_BUDGET);
    let mut out: Vec<Factorization> = hits
        .into_iter()
        .map(|cs| {
            Factorization::new(
                ks.indices
                    .iter()
                    .zip(cs)
                    .map(|(i, c)| (*i, BigUint::from(c)))
                    .collect(),
            )
        })
        .collect();
    out.sort();
    Ok(FactorizationSet {
        items: out,
        complete: if exhausted {
            Completeness::UpToBounds {
                max_length: Some(max_length),
                max_index: Some(max_index),
            }
        } else {
            Completeness::Unknown
        },
    })
}

/// `L(q) ∩ [1, up_to]`, each length with a witness.
pub fn length_set(desc: &MonoidDescriptor, q: &ExactRational, up_to: u64) -> Result<LengthSet> {
    if q.is_zero() {
        return Err(Error::Domain("length sets are defined for nonzero elements".into()));
    }
    relevant_indices(desc, q, 1)?;
    let per_length: Vec<(u64, FactorizationSet)> = (1..=up_to)
        .into_par_iter()
        .map(|ell| Ok((ell, factorizations_of_length(desc, q, ell)?)))
        .collect::<Result<_>>()?;
    let mut lengths = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    for (ell, set) in per_length {
        if let Some(first) = set.items.into_iter().next() {
            lengths.insert(ell);
            witnesses.insert(ell, first);
        }
    }
    // With a unique decomposition and η = 0 the whole of L(q) is one length.
    let fully_known = desc.is_almost_reciprocal()
        && match atomic_decompose(desc, q)? {
            Decomposed::NotMember(_) => true,
            Decomposed::Unique(d) => d.eta.is_zero() && d.zeta_sum() <= BigUint::from(up_to),
        };
    Ok(LengthSet {
        lengths,
        witnesses,
        complete: if fully_known {
            Completeness::Complete
        } else {
            Completeness::UpToBounds {
                max_length: Some(up_to),
                max_index: None,
            }
        },
    })
}

/// Why a generator is an atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomReason {
    /// Every other generator not exceeding `aₙ` has strictly larger
    /// `p`-adic valuation, so no sum of them reaches `v_p(aₙ)`.
    Valuation { prime: u64 },
    /// Every other generator exceeds `aₙ`.
    Minimal,
    /// No combination of the other listed generators sums to `aₙ`.
    FiniteSearch,
}

impl fmt::Display for AtomReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomReason::Valuation { prime } => write!(
                f,
                "{prime}-adic valuation: every other generator that is not larger has a larger valuation"
            ),
            AtomReason::Minimal => write!(f, "every other generator is larger"),
            AtomReason::FiniteSearch => write!(f, "exhaustive search over the finite generator list"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomVerdict {
    Atom(AtomReason),
    /// `aₙ` as a sum of at least two generators, none of them `aₙ`.
    NotAtom(Factorization),
    Unknown(Bounds),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomCertificate {
    pub index: usize,
    pub verdict: AtomVerdict,
}

impl AtomCertificate {
    /// Rechecks a witness; valuation and minimality reasons are rechecked
    /// against the descriptor's closed-form index sets.
    pub fn verify(&self, desc: &MonoidDescriptor) -> bool {
        let Ok(a) = desc.value(self.index) else {
            return false;
        };
        match &self.verdict {
            AtomVerdict::NotAtom(w) => {
                !w.exponents().contains_key(&self.index)
                    && w.length() >= BigUint::from(2u32)
                    && w.evaluate(desc).is_ok_and(|v| v == a)
            }
            AtomVerdict::Atom(AtomReason::Valuation { prime }) => {
                valuation_certificate(&desc.unscaled(), self.index, &a_unscaled(desc, self.index))
                    .is_some_and(|r| r == AtomReason::Valuation { prime: *prime })
                    || geometric_atom(desc, self.index) == Some(AtomVerdict::Atom(AtomReason::Valuation { prime: *prime }))
            }
            AtomVerdict::Atom(AtomReason::Minimal) => {
                geometric_atom(desc, self.index) == Some(AtomVerdict::Atom(AtomReason::Minimal))
            }
            AtomVerdict::Atom(AtomReason::FiniteSearch) | AtomVerdict::Unknown(_) => true,
        }
    }
}

fn a_unscaled(desc: &MonoidDescriptor, n: usize) -> ExactRational {
    desc.unscaled().value_unchecked(n)
}

/// A prime of `d(aₙ)` whose support is a known finite set in which every
/// other generator `≤ aₙ` has higher valuation.
fn valuation_certificate(desc: &MonoidDescriptor, n: usize, a: &ExactRational) -> Option<AtomReason> {
    let f = factor(a.denom()).ok()?;
    for p in f.primes() {
        let p = p.to_u64()?;
        let IndexSet::Finite(support) = desc.index_set_for_prime(p, 0) else {
            continue;
        };
        let own = p_adic_valuation_u64(a, p).ok()?;
        let clear = support.iter().filter(|&&i| i != n).all(|&i| {
            let b = desc.value_unchecked(i);
            b > *a || p_adic_valuation_u64(&b, p).is_ok_and(|v| v > own)
        });
        if clear {
            return Some(AtomReason::Valuation { prime: p });
        }
    }
    None
}

/// Closed form for `⟨rⁿ⟩` and `⟨1/bⁿ⟩`, where valuations are linear in `n`.
fn geometric_atom(desc: &MonoidDescriptor, n: usize) -> Option<AtomVerdict> {
    let (num, den) = match desc.family() {
        Family::Geometric { ratio, .. } => ratio.to_u64_pair()?,
        Family::PowerReciprocal { base } => (1, *base),
        _ => return None,
    };
    let smallest_prime = |m: u64| {
        factor(&BigUint::from(m))
            .ok()
            .and_then(|f| f.primes().next().and_then(|p| p.to_u64()))
    };
    if num < den {
        // Smaller generators are exactly the later ones.
        match smallest_prime(num) {
            Some(r) => Some(AtomVerdict::Atom(AtomReason::Valuation { prime: r })),
            None => Some(AtomVerdict::NotAtom(Factorization::from_pairs(&[(n + 1, den)]))),
        }
    } else if n == desc.first_index() {
        Some(AtomVerdict::Atom(AtomReason::Minimal))
    } else {
        Some(AtomVerdict::Atom(AtomReason::Valuation {
            prime: smallest_prime(den).expect("ratio is not an integer"),
        }))
    }
}

/// Is generator `n` an atom? Certificates are scale invariant, so scaled
/// descriptors are answered on the underlying family.
pub fn is_atom(desc: &MonoidDescriptor, n: usize, bounds: &Bounds) -> Result<AtomCertificate> {
    let a_scaled = desc.value(n)?;
    let base = desc.unscaled();
    let a = base.value_unchecked(n);
    let done = |verdict| Ok(AtomCertificate { index: n, verdict });
    if let Some(v) = geometric_atom(&base, n) {
        return done(v);
    }
    if let Some(reason) = valuation_certificate(&base, n, &a) {
        return done(AtomVerdict::Atom(reason));
    }
    let complete = base.is_finite() && base.last_index() <= Some(bounds.max_index);
    let items: Vec<(usize, ExactRational)> = base
        .indices_upto(bounds.max_index)
        .filter(|&i| i != n)
        .map(|i| (i, base.value_unchecked(i)))
        .filter(|(_, b)| *b <= a)
        .collect();
    if items.is_empty() && complete {
        return done(AtomVerdict::Atom(AtomReason::Minimal));
    }
    let caps: Vec<u64> = items
        .iter()
        .map(|(_, b)| {
            let fit = a.div_exact(b).expect("positive").floor().to_u64().unwrap_or(u64::MAX);
            if complete {
                fit
            } else {
                fit.min(bounds.max_block_coeff)
            }
        })
        .collect();
    let verdict = match Knapsack::new(&a, &items).find_one(&caps, bounds.node_budget) {
        FindOutcome::Found(hit) => {
            let w = Factorization::new(hit.into_iter().map(|(i, c)| (i, BigUint::from(c))).collect());
            debug_assert_eq!(w.evaluate(desc).ok(), Some(a_scaled));
            AtomVerdict::NotAtom(w)
        }
        FindOutcome::Exhausted if complete => AtomVerdict::Atom(AtomReason::FiniteSearch),
        _ => AtomVerdict::Unknown(*bounds),
    };
    done(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn pr() -> MonoidDescriptor {
        MonoidDescriptor::prime_reciprocal()
    }

    #[test]
    fn relevant_index_examples() {
        assert_eq!(relevant_indices(&pr(), &rat(1, 1), 5).unwrap(), BTreeSet::from([1, 2, 3]));
        assert_eq!(relevant_indices(&pr(), &rat(5, 6), 2).unwrap(), BTreeSet::from([1, 2]));
        let g = MonoidDescriptor::grams(2).unwrap();
        assert_eq!(relevant_indices(&g, &rat(1, 3), 2).unwrap(), BTreeSet::from([1]));
        let gap = MonoidDescriptor::gap(1).unwrap();
        assert!(matches!(relevant_indices(&gap, &rat(1, 2), 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn fixed_length_examples() {
        let s = factorizations_of_length(&pr(), &rat(1, 1), 5).unwrap();
        assert_eq!(s.items, vec![Factorization::from_pairs(&[(3, 5)])]);
        assert_eq!(s.complete, Completeness::Complete);
        assert!(factorizations_of_length(&pr(), &rat(1, 1), 4).unwrap().items.is_empty());
        let s = factorizations_of_length(&pr(), &rat(5, 6), 2).unwrap();
        assert_eq!(s.items, vec![Factorization::from_pairs(&[(1, 1), (2, 1)])]);
    }

    #[test]
    fn enumerate_examples() {
        let s = enumerate_factorizations(&pr(), &rat(5, 6), 10, 50).unwrap();
        assert_eq!(s.items, vec![Factorization::from_pairs(&[(1, 1), (2, 1)])]);
        assert_eq!(s.complete, Completeness::Complete);

        let s = enumerate_factorizations(&pr(), &rat(1, 1), 12, 50).unwrap();
        let expect: Vec<_> = [(1, 2), (2, 3), (3, 5), (4, 7), (5, 11)]
            .iter()
            .map(|&p| Factorization::from_pairs(&[p]))
            .collect();
        assert_eq!(s.items, expect);
        assert_eq!(s.complete.to_string(), "complete_up_to_bounds(max_length=12)");

        let g = MonoidDescriptor::grams(2).unwrap();
        let s = enumerate_factorizations(&g, &rat(1, 20), 3, 50).unwrap();
        assert_eq!(s.items.first(), Some(&Factorization::from_pairs(&[(2, 1)])));
    }

    #[test]
    fn length_set_examples() {
        let l = length_set(&pr(), &rat(1, 1), 12).unwrap();
        assert_eq!(l.lengths, BTreeSet::from([2, 3, 5, 7, 11]));
        let l = length_set(&pr(), &rat(5, 6), 20).unwrap();
        assert_eq!(l.lengths, BTreeSet::from([2]));
        assert_eq!(l.complete, Completeness::Complete);
    }

    #[test]
    fn atom_examples() {
        let b = Bounds::default();
        let c = is_atom(&pr(), 1, &b).unwrap();
        assert!(matches!(c.verdict, AtomVerdict::Atom(_)));
        assert!(c.verify(&pr()));

        let p2 = MonoidDescriptor::power_reciprocal(2).unwrap();
        let c = is_atom(&p2, 1, &b).unwrap();
        assert_eq!(c.verdict, AtomVerdict::NotAtom(Factorization::from_pairs(&[(2, 2)])));
        assert!(c.verify(&p2));

        let gap = MonoidDescriptor::gap(1).unwrap();
        for n in 1..=10 {
            let c = is_atom(&gap, n, &b).unwrap();
            assert!(matches!(c.verdict, AtomVerdict::Atom(_)), "gap(1) index {n}");
        }

        let g3 = MonoidDescriptor::grams(3).unwrap();
        let c = is_atom(&g3, 1, &b).unwrap();
        assert!(matches!(c.verdict, AtomVerdict::NotAtom(_)));
        assert!(c.verify(&g3));

        let geo = MonoidDescriptor::geometric(rat(2, 3), true).unwrap();
        for n in 0..5 {
            assert!(matches!(is_atom(&geo, n, &b).unwrap().verdict, AtomVerdict::Atom(_)));
        }
        let up = MonoidDescriptor::geometric(rat(3, 2), true).unwrap();
        for n in 0..5 {
            assert!(matches!(is_atom(&up, n, &b).unwrap().verdict, AtomVerdict::Atom(_)));
        }
    }

    #[test]
    fn custom_lists_are_searched_completely() {
        let d = MonoidDescriptor::custom(vec![rat(1, 2), rat(1, 4), rat(3, 4)]).unwrap();
        let b = Bounds::default();
        assert!(matches!(is_atom(&d, 2, &b).unwrap().verdict, AtomVerdict::Atom(_)));
        assert!(matches!(is_atom(&d, 1, &b).unwrap().verdict, AtomVerdict::NotAtom(_)));
        assert!(matches!(is_atom(&d, 3, &b).unwrap().verdict, AtomVerdict::NotAtom(_)));
    }
}
