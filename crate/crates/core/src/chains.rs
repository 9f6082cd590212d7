//! Divisibility chains: explicit non-stabilizing chains for the Grams and gap
//! families, and the descent measure `(η, Σζ)` that forbids such chains in
//! almost reciprocal monoids.
//!
//! If `q' + M ⊊ q + M` then `q = q' + r` with `0 ≠ r ∈ M`, and summing
//! decompositions can only carry into `η`. So `η(q) ≥ η(q')`, and on equality
//! the `ζ` vectors add, making `Σζ` strictly smaller at `q'`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::ExactRational;
use crate::decomposition::{atomic_decompose, Decomposed};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::monoid::{Family, MonoidDescriptor};

/// Default cap on constructed chain lengths; denominators grow quickly.
pub const DEFAULT_CHAIN_LIMIT: usize = 64;

/// `elements[k] − elements[k+1] = steps[k]`, each step a generator combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness {
    pub elements: Vec<ExactRational>,
    pub steps: Vec<Factorization>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub step: usize,
    pub difference: BigRational,
    /// `None` when the certificate names a generator the descriptor lacks.
    pub certified: Option<ExactRational>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub ok: bool,
    pub steps: Vec<StepReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainLimit(pub usize);

impl Default for ChainLimit {
    fn default() -> Self {
        ChainLimit(DEFAULT_CHAIN_LIMIT)
    }
}

fn check_limit(n_steps: usize, limit: ChainLimit) -> Result<()> {
    if n_steps > limit.0 {
        return Err(Error::Domain(format!(
            "{n_steps} steps requested but the chain limit is {}",
            limit.0
        )));
    }
    Ok(())
}

/// `1/b, 1/b², …, 1/b^(n+1)` in `⟨1/(bⁿpₙ)⟩`, each step
/// `1/bᵏ − 1/bᵏ⁺¹ = (b−1)·pₖ₊₁ · 1/(bᵏ⁺¹pₖ₊₁)`.
pub fn grams_chain(desc: &MonoidDescriptor, n_steps: usize, limit: ChainLimit) -> Result<ChainWitness> {
    let Family::Grams { base } = desc.family() else {
        return Err(Error::Unsupported(format!("{desc} is not a Grams-type family")));
    };
    if desc.is_scaled() {
        return Err(Error::Unsupported("grams_chain needs an unscaled descriptor".into()));
    }
    check_limit(n_steps, limit)?;
    let b = BigUint::from(*base);
    let seq = desc.prime_sequence().expect("prime-indexed");
    let elements = (1..=n_steps as u32 + 1)
        .map(|k| ExactRational::new(1u32, b.pow(k)))
        .collect::<Result<_>>()?;
    let steps = (1..=n_steps)
        .map(|k| Factorization::from_pairs(&[(k + 1, (base - 1) * seq.nth(k + 1))]))
        .collect();
    Ok(ChainWitness { elements, steps })
}

/// `1/p_ℓ, 1/p_2ℓ, …` in `⟨1/(pₙpₙ₊ℓ)⟩`, step `n` using
/// `p_ℓ(n+1) − p_ℓn` copies of `1/(p_ℓn p_ℓ(n+1))`.
pub fn gap_chain(desc: &MonoidDescriptor, n_steps: usize, limit: ChainLimit) -> Result<ChainWitness> {
    let Family::Gap { ell } = desc.family() else {
        return Err(Error::Unsupported(format!("{desc} is not a gap family")));
    };
    if desc.is_scaled() {
        return Err(Error::Unsupported("gap_chain needs an unscaled descriptor".into()));
    }
    check_limit(n_steps, limit)?;
    let ell = *ell;
    let seq = desc.prime_sequence().expect("prime-indexed");
    let elements = (1..=n_steps + 1)
        .map(|n| ExactRational::reciprocal_of(seq.nth(ell * n)))
        .collect::<Result<_>>()?;
    let steps = (1..=n_steps)
        .map(|n| Factorization::from_pairs(&[(ell * n, seq.nth(ell * (n + 1)) - seq.nth(ell * n))]))
        .collect();
    Ok(ChainWitness { elements, steps })
}

/// Rechecks every step by exact evaluation.
pub fn verify_chain(desc: &MonoidDescriptor, witness: &ChainWitness) -> ChainReport {
    let n = witness.elements.len().saturating_sub(1);
    let steps: Vec<StepReport> = (0..n)
        .into_par_iter()
        .map(|k| {
            let difference = witness.elements[k].signed_sub(&witness.elements[k + 1]);
            let certified = witness.steps.get(k).and_then(|f| f.evaluate(desc).ok());
            let ok = difference.is_positive()
                && certified.as_ref().is_some_and(|c| c.to_signed() == difference);
            StepReport {
                step: k + 1,
                difference,
                certified,
                ok,
            }
        })
        .collect();
    let shape_ok = witness.steps.len() == n;
    ChainReport {
        ok: shape_ok && steps.iter().all(|s| s.ok),
        steps,
    }
}

/// `(η(q), Σ ζᵢ(q))` of the unique atomic decomposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DescentMeasure {
    pub eta: BigUint,
    pub zeta_sum: BigUint,
}

pub fn descent_measure(desc: &MonoidDescriptor, q: &ExactRational) -> Result<DescentMeasure> {
    match atomic_decompose(desc, q)? {
        Decomposed::Unique(d) => Ok(DescentMeasure {
            zeta_sum: d.zeta_sum(),
            eta: d.eta,
        }),
        Decomposed::NotMember(ob) => Err(Error::Domain(format!("{q} is not in the monoid ({ob})"))),
    }
}

/// Most elements a strict divisibility chain starting at `q` can have, when
/// `η(q) = 0`: `η` stays 0 and `Σζ` drops at every step. With `η(q) > 0`
/// chains from `q` can be arbitrarily long (for instance through `1 = p·(1/p)`),
/// so there is no bound and `None` is returned.
pub fn chain_length_bound(desc: &MonoidDescriptor, q: &ExactRational) -> Result<Option<BigUint>> {
    let m = descent_measure(desc, q)?;
    Ok(m.eta.is_zero().then(|| m.zeta_sum + 1u32))
}
