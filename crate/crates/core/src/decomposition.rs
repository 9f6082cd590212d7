//! Atomic decompositions `q = η + Σ ζᵢ·aᵢ` (`η ∈ ℕ₀`, `0 ≤ ζᵢ < d(aᵢ)`),
//! membership and divisibility.
//!
//! Three membership paths, picked by [`membership_method`]:
//!
//! * almost reciprocal families: the decomposition is unique and each `ζᵢ`
//!   is fixed by a congruence modulo `dᵢ`. With `D = Π dᵢ` over the relevant
//!   indices, `qD ≡ ζᵢ·cᵢ·(D/dᵢ) (mod dᵢ)`. The leftover `η` must be a
//!   nonnegative integer lying in the numerical semigroup `⟨cᵢ⟩`.
//! * Grams-type families `1/(bⁿpₙ)` and the mixed family: every factorization
//!   uses `αₙ ≡ ζₙ (mod pₙ)` copies of a controlled generator, the `ζₙ`
//!   being forced by the `pₙ`-adic part of `q`. Everything else sums to a
//!   nonnegative rational supported on the base primes, and every such value
//!   is reachable, so `q ∈ M` iff `q − Σ ζₙaₙ ≥ 0`.
//! * anything else: a bounded search, which answers `Unknown` rather than
//!   guess.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::primes::int_valuation;
use crate::arith::{factor, mod_inverse, p_adic_valuation, ExactRational, IntMembership, IntegerMonoid};
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::monoid::{Family, IndexSet, MonoidDescriptor};
use crate::search::{FindOutcome, Knapsack};

/// Nodes the brute-force decomposition oracle may visit.
pub const ORACLE_NODE_LIMIT: u64 = 50_000_000;

/// `q = η + Σ ζᵢ·aᵢ` with `0 ≤ ζᵢ < d(aᵢ)`; zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtomicDecomposition {
    pub value: ExactRational,
    pub eta: BigUint,
    pub zeta: BTreeMap<usize, BigUint>,
}

impl AtomicDecomposition {
    pub fn zeta_sum(&self) -> BigUint {
        self.zeta.values().sum()
    }

    pub fn evaluate(&self, desc: &MonoidDescriptor) -> Result<ExactRational> {
        let mut acc = ExactRational::from_integer(self.eta.clone());
        for (&i, z) in &self.zeta {
            acc += &(&desc.value(i)? * z);
        }
        Ok(acc)
    }

    /// Coefficient ranges hold and the terms sum to `value`.
    pub fn is_valid(&self, desc: &MonoidDescriptor) -> bool {
        let ranges_ok = self.zeta.iter().all(|(&i, z)| {
            !z.is_zero() && desc.value(i).is_ok_and(|a| z < a.denom())
        });
        ranges_ok && self.evaluate(desc).is_ok_and(|v| v == self.value)
    }

    /// `q = η + ζ·(c/d) + …` in index order.
    pub fn render(&self, desc: &MonoidDescriptor) -> String {
        let mut out = format!("{} = {}", self.value, self.eta);
        for (&i, z) in &self.zeta {
            let a = desc.value(i).map_or_else(|_| format!("a{i}"), |a| a.to_string());
            out.push_str(&format!(" + {z}·({a})"));
        }
        out
    }
}

/// Ascending in `η`, then lexicographic in `(ζ₁, ζ₂, …)`.
impl Ord for AtomicDecomposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.eta
            .cmp(&other.eta)
            .then_with(|| cmp_sparse(&self.zeta, &other.zeta))
            .then_with(|| self.value.cmp(&other.value))
    }
}

impl PartialOrd for AtomicDecomposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on sparse vectors with implicit zeros.
pub(crate) fn cmp_sparse(a: &BTreeMap<usize, BigUint>, b: &BTreeMap<usize, BigUint>) -> Ordering {
    let zero = BigUint::zero();
    let keys: std::collections::BTreeSet<&usize> = a.keys().chain(b.keys()).collect();
    for k in keys {
        let ord = a.get(k).unwrap_or(&zero).cmp(b.get(k).unwrap_or(&zero));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Why an element is not in the monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// `v_p(x) < floor`, where `floor` is the least `p`-adic valuation of any
    /// generator (0 when no denominator is divisible by `p`).
    DenominatorSupport {
        prime: BigUint,
        valuation: i64,
        floor: i64,
    },
    /// The forced coefficients `zeta` already exceed `x`: `x − Σ ζᵢaᵢ < 0`.
    NegativeRemainder {
        zeta: BTreeMap<usize, BigUint>,
        remainder: BigRational,
    },
    /// The integer part `eta` is not a sum of generator numerators; its class
    /// modulo `modulus` starts at `least` (`None`: never).
    Residue {
        eta: BigUint,
        modulus: u64,
        residue: u64,
        least: Option<BigUint>,
    },
    /// Every combination of a finite generator list was tried.
    Exhausted { generators: usize },
}

impl Obstruction {
    /// Rechecks the stated inequality for the element `x`.
    pub fn verify(&self, desc: &MonoidDescriptor, x: &BigRational) -> bool {
        match self {
            Obstruction::DenominatorSupport {
                prime,
                valuation,
                floor,
            } => {
                let Ok(xq) = ExactRational::from_signed(x) else {
                    return false;
                };
                if xq.is_zero() || p_adic_valuation(&xq, prime).ok() != Some(*valuation) {
                    return false;
                }
                let IndexSet::Finite(support) = support_for_prime(desc, prime, 0) else {
                    return false;
                };
                let true_floor = support
                    .iter()
                    .map(|&i| -(int_valuation_big(desc.value(i).expect("in range").denom(), prime) as i64))
                    .min()
                    .unwrap_or(0)
                    .min(0);
                true_floor == *floor && valuation < floor
            }
            Obstruction::NegativeRemainder { zeta, remainder } => {
                let mut acc = x.clone();
                for (&i, z) in zeta {
                    let Ok(a) = desc.value(i) else {
                        return false;
                    };
                    acc -= (&a * z).to_signed();
                }
                remainder.is_negative() && acc == *remainder
            }
            Obstruction::Residue {
                eta,
                modulus,
                residue,
                least,
            } => {
                let Some(nums) = small_numerators(desc) else {
                    return false;
                };
                let Ok(sg) = IntegerMonoid::new(&nums) else {
                    return false;
                };
                sg.contains(eta)
                    == IntMembership::NotMember {
                        modulus: *modulus,
                        residue: *residue,
                        least: least.clone(),
                    }
            }
            Obstruction::Exhausted { generators } => desc.last_index() == Some(*generators),
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::DenominatorSupport {
                prime,
                valuation,
                floor,
            } => write!(
                f,
                "denominator support: v_{prime}(q) = {valuation} but no generator combination goes below {floor}"
            ),
            Obstruction::NegativeRemainder { zeta, remainder } => {
                let parts: Vec<String> = zeta.iter().map(|(i, z)| format!("{i}:{z}")).collect();
                write!(
                    f,
                    "negative remainder: forced coefficients {{{}}} leave {remainder}",
                    parts.join(", ")
                )
            }
            Obstruction::Residue {
                eta,
                modulus,
                residue,
                least,
            } => match least {
                Some(l) => write!(
                    f,
                    "residue: integer part {eta} ≡ {residue} (mod {modulus}) but the least representable value in that class is {l}"
                ),
                None => write!(
                    f,
                    "residue: integer part {eta} ≡ {residue} (mod {modulus}) and no numerator sum lies in that class"
                ),
            },
            Obstruction::Exhausted { generators } => {
                write!(f, "exhausted: no combination of the {generators} listed generators")
            }
        }
    }
}

/// A proof of membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Decomposition(AtomicDecomposition),
    Combination(Factorization),
}

impl Certificate {
    pub fn evaluate(&self, desc: &MonoidDescriptor) -> Result<ExactRational> {
        match self {
            Certificate::Decomposition(d) => d.evaluate(desc),
            Certificate::Combination(f) => f.evaluate(desc),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    Member(Certificate),
    NotMember(Obstruction),
    /// The bounded search ran out of room; nothing is claimed.
    Unknown(Bounds),
}

/// Outcome of [`atomic_decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposed {
    Unique(AtomicDecomposition),
    NotMember(Obstruction),
}

/// Which procedure [`member`] uses for a descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    UniqueDecomposition,
    ResidueRemainder,
    FiniteSearch,
    BoundedSearch,
}

impl Method {
    pub fn describe(self) -> &'static str {
        match self {
            Method::UniqueDecomposition => {
                "closed form: almost reciprocal generators give a unique atomic decomposition"
            }
            Method::ResidueRemainder => {
                "closed form (derived): forced residues at controlled primes plus a nonnegative base-supported remainder"
            }
            Method::FiniteSearch => "complete search over the finite generator list",
            Method::BoundedSearch => "bounded search; inconclusive results are reported as unknown",
        }
    }
}

pub fn membership_method(desc: &MonoidDescriptor) -> Method {
    if desc.is_almost_reciprocal() {
        Method::UniqueDecomposition
    } else if desc.residue_remainder_base().is_some() {
        Method::ResidueRemainder
    } else if desc.is_finite() {
        Method::FiniteSearch
    } else {
        Method::BoundedSearch
    }
}

fn int_valuation_big(n: &BigUint, p: &BigUint) -> u32 {
    match p.to_u64() {
        Some(p) => int_valuation(n, p),
        None => {
            let mut v = 0;
            let mut rest = n.clone();
            while !rest.is_zero() && (&rest % p).is_zero() {
                rest /= p;
                v += 1;
            }
            v
        }
    }
}

/// Indices whose generator denominator is divisible by `p`, for any prime size.
pub(crate) fn support_for_prime(desc: &MonoidDescriptor, p: &BigUint, scan_bound: usize) -> IndexSet {
    match p.to_u64() {
        Some(p) => desc.index_set_for_prime(p, scan_bound),
        None => match desc.family() {
            Family::Custom { terms } => IndexSet::Finite(
                terms
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| (t.denom() % p).is_zero())
                    .map(|(i, _)| i + 1)
                    .collect(),
            ),
            // Builtin denominators are products of 64-bit primes and of the
            // prime factors of 64-bit parameters.
            _ => IndexSet::Finite(Default::default()),
        },
    }
}

/// Numerators of a finite list as machine integers, `None` if one overflows.
fn small_numerators(desc: &MonoidDescriptor) -> Option<Vec<u64>> {
    desc.bounded_numerators()?
        .iter()
        .map(|n| n.to_u64())
        .collect()
}

/// For each prime of `d(q)`: the generator indices it touches, or an
/// obstruction when `v_p(q)` is below what any generator reaches. Primes whose
/// support is not a known finite set are returned as `None`.
fn denominator_support(
    desc: &MonoidDescriptor,
    q: &ExactRational,
    scan_bound: usize,
) -> Result<std::result::Result<Vec<(BigUint, Option<Vec<usize>>)>, Obstruction>> {
    let mut out = Vec::new();
    for (p, e) in factor(q.denom())?.iter() {
        match support_for_prime(desc, p, scan_bound) {
            IndexSet::Finite(s) => {
                let floor = s
                    .iter()
                    .map(|&i| -(int_valuation_big(desc.value_unchecked(i).denom(), p) as i64))
                    .min()
                    .unwrap_or(0)
                    .min(0);
                if -(e as i64) < floor {
                    return Ok(Err(Obstruction::DenominatorSupport {
                        prime: p.clone(),
                        valuation: -(e as i64),
                        floor,
                    }));
                }
                out.push((p.clone(), Some(s.into_iter().collect())));
            }
            _ => out.push((p.clone(), None)),
        }
    }
    Ok(Ok(out))
}

/// `q − Σ ζᵢaᵢ` as a signed rational.
fn remainder(desc: &MonoidDescriptor, q: &ExactRational, zeta: &BTreeMap<usize, BigUint>) -> BigRational {
    let spent: ExactRational = zeta.iter().map(|(&i, z)| &desc.value_unchecked(i) * z).sum();
    q.signed_sub(&spent)
}

/// The unique atomic decomposition of `q` in an almost reciprocal monoid.
pub fn atomic_decompose(desc: &MonoidDescriptor, q: &ExactRational) -> Result<Decomposed> {
    if !desc.is_almost_reciprocal() {
        return Err(Error::Unsupported(format!(
            "{desc} is not known to have unique atomic decomposition; use member or enumerate_decompositions"
        )));
    }
    let support = match denominator_support(desc, q, 0)? {
        Ok(s) => s,
        Err(ob) => return Ok(Decomposed::NotMember(ob)),
    };
    let mut indices: Vec<usize> = support
        .into_iter()
        .flat_map(|(_, s)| s.expect("finite for almost reciprocal families"))
        .collect();
    indices.sort_unstable();
    indices.dedup();

    let dens: Vec<BigUint> = indices.iter().map(|&i| desc.value_unchecked(i).denom().clone()).collect();
    let big_d: BigUint = dens.iter().product();
    let t = q.times_integer(&big_d).expect("d(q) divides the product of relevant denominators");
    let mut zeta = BTreeMap::new();
    for (&i, d) in indices.iter().zip(&dens) {
        let c = desc.value_unchecked(i).numer().clone();
        let unit = (&c * (&big_d / d)) % d;
        let inv = mod_inverse(&unit, d).expect("coprime by construction");
        let z = ((&t % d) * inv) % d;
        if !z.is_zero() {
            zeta.insert(i, z);
        }
    }

    let rest = remainder(desc, q, &zeta);
    if rest.is_negative() {
        return Ok(Decomposed::NotMember(Obstruction::NegativeRemainder {
            zeta,
            remainder: rest,
        }));
    }
    debug_assert!(rest.is_integer());
    let eta = rest.to_integer().magnitude().clone();
    if let Some(nums) = small_numerators(desc).filter(|n| n.iter().any(|c| *c != 1)) {
        let sg = IntegerMonoid::new(&nums)?;
        if let IntMembership::NotMember {
            modulus,
            residue,
            least,
        } = sg.contains(&eta)
        {
            return Ok(Decomposed::NotMember(Obstruction::Residue {
                eta,
                modulus,
                residue,
                least,
            }));
        }
    } else if desc.bounded_numerators().is_none() {
        return Err(Error::Unsupported("numerators of this family are not tracked".into()));
    }
    Ok(Decomposed::Unique(AtomicDecomposition {
        value: q.clone(),
        eta,
        zeta,
    }))
}

/// `x mod p^e` for a `p`-integral rational `x`; `None` when `v_p(x) < 0`.
pub(crate) fn padic_residue(x: &ExactRational, p: &BigUint, e: u32) -> Option<BigUint> {
    let m = p.pow(e);
    if (x.denom() % p).is_zero() {
        return None;
    }
    let inv = mod_inverse(x.denom(), &m)?;
    Some((x.numer() % &m) * inv % &m)
}

fn residue_remainder(
    desc: &MonoidDescriptor,
    q: &ExactRational,
    base: u64,
    max_base_exp: Option<usize>,
) -> Result<MembershipVerdict> {
    let base_big = BigUint::from(base);
    let mut zeta = BTreeMap::new();
    for (p, e) in factor(q.denom())?.iter() {
        if (&base_big % p).is_zero() {
            if let Some(k) = max_base_exp {
                // The base part of every generator is at most `base^k`.
                let floor = -(k as i64) * int_valuation_big(&base_big, p) as i64;
                if -(e as i64) < floor {
                    return Ok(MembershipVerdict::NotMember(Obstruction::DenominatorSupport {
                        prime: p.clone(),
                        valuation: -(e as i64),
                        floor,
                    }));
                }
            }
            continue;
        }
        let controlled = match p.to_u64() {
            Some(p64) => desc.index_controlled_by(p64)?,
            None => None,
        };
        let Some(n) = controlled else {
            return Ok(MembershipVerdict::NotMember(Obstruction::DenominatorSupport {
                prime: p.clone(),
                valuation: -(e as i64),
                floor: 0,
            }));
        };
        let a = desc.value_unchecked(n);
        let f = int_valuation_big(a.denom(), p);
        if e > f {
            return Ok(MembershipVerdict::NotMember(Obstruction::DenominatorSupport {
                prime: p.clone(),
                valuation: -(e as i64),
                floor: -(f as i64),
            }));
        }
        let z = padic_residue(&q.div_exact(&a)?, p, f).expect("valuation checked");
        if !z.is_zero() {
            zeta.insert(n, z);
        }
    }
    let rest = remainder(desc, q, &zeta);
    if rest.is_negative() {
        return Ok(MembershipVerdict::NotMember(Obstruction::NegativeRemainder {
            zeta,
            remainder: rest,
        }));
    }
    // rest = t / base^j with j >= 0; write it on one generator whose base part is base^j.
    let rest = ExactRational::from_signed(&rest)?;
    let mut exps: BTreeMap<usize, BigUint> = zeta;
    if !rest.is_zero() {
        let mut j = 0usize;
        let mut pow = BigUint::one();
        while !(&pow % rest.denom()).is_zero() {
            pow *= &base_big;
            j += 1;
        }
        let n = j.max(1);
        let a = desc.value_unchecked(n);
        let coeff = rest.div_exact(&a)?;
        debug_assert!(coeff.is_integer());
        *exps.entry(n).or_insert_with(BigUint::zero) += coeff.numer();
    }
    let cert = Factorization::new(exps);
    debug_assert_eq!(cert.evaluate(desc).ok().as_ref(), Some(q));
    Ok(MembershipVerdict::Member(Certificate::Combination(cert)))
}

fn bounded_member(desc: &MonoidDescriptor, q: &ExactRational, bounds: &Bounds) -> Result<MembershipVerdict> {
    if let Err(ob) = denominator_support(desc, q, bounds.max_index)? {
        return Ok(MembershipVerdict::NotMember(ob));
    }
    let items: Vec<(usize, ExactRational)> = desc
        .indices_upto(bounds.max_index)
        .map(|i| (i, desc.value_unchecked(i)))
        .filter(|(_, a)| a <= q)
        .collect();
    let complete = desc.is_finite() && desc.last_index() <= Some(bounds.max_index);
    let caps: Vec<u64> = items
        .iter()
        .map(|(_, a)| {
            let fit = q.div_exact(a).expect("nonzero").floor().to_u64().unwrap_or(u64::MAX);
            if complete {
                fit
            } else {
                fit.min(bounds.max_block_coeff)
            }
        })
        .collect();
    let ks = Knapsack::new(q, &items);
    Ok(match ks.find_one(&caps, bounds.node_budget) {
        FindOutcome::Found(hit) => MembershipVerdict::Member(Certificate::Combination(
            Factorization::new(hit.into_iter().map(|(i, c)| (i, BigUint::from(c))).collect()),
        )),
        FindOutcome::Exhausted if complete => MembershipVerdict::NotMember(Obstruction::Exhausted {
            generators: desc.last_index().expect("finite"),
        }),
        _ => MembershipVerdict::Unknown(*bounds),
    })
}

/// Decides `q ∈ M` exactly where a closed form exists, otherwise searches
/// within `bounds`.
pub fn member(desc: &MonoidDescriptor, q: &ExactRational, bounds: &Bounds) -> Result<MembershipVerdict> {
    if q.is_zero() {
        return Ok(MembershipVerdict::Member(Certificate::Combination(Factorization::empty())));
    }
    match membership_method(desc) {
        Method::UniqueDecomposition => Ok(match atomic_decompose(desc, q)? {
            Decomposed::Unique(d) => MembershipVerdict::Member(Certificate::Decomposition(d)),
            Decomposed::NotMember(ob) => MembershipVerdict::NotMember(ob),
        }),
        Method::ResidueRemainder => {
            let (base, k) = desc.residue_remainder_base().expect("checked");
            residue_remainder(desc, q, base, k)
        }
        Method::FiniteSearch | Method::BoundedSearch => bounded_member(desc, q, bounds),
    }
}

/// Does `r` divide `q`, i.e. is `q − r ∈ M`?
pub fn divides(
    desc: &MonoidDescriptor,
    r: &ExactRational,
    q: &ExactRational,
    bounds: &Bounds,
) -> Result<MembershipVerdict> {
    match q.checked_sub(r) {
        Some(diff) => member(desc, &diff, bounds),
        None => Ok(MembershipVerdict::NotMember(Obstruction::NegativeRemainder {
            zeta: BTreeMap::new(),
            remainder: q.signed_sub(r),
        })),
    }
}

/// Every atomic decomposition of `q` over generators with index at most
/// `max_index`, sorted. Exhaustive: `ζᵢ < d(aᵢ)` and `ζᵢaᵢ ≤ q` bound the space.
pub fn enumerate_decompositions(
    desc: &MonoidDescriptor,
    q: &ExactRational,
    max_index: usize,
) -> Result<Vec<AtomicDecomposition>> {
    let items: Vec<(usize, ExactRational)> = desc
        .indices_upto(max_index)
        .map(|i| (i, desc.value_unchecked(i)))
        .filter(|(_, a)| a <= q && !a.is_integer())
        .collect();
    let ks = Knapsack::new(q, &items);
    let caps: Vec<BigUint> = items.iter().map(|(_, a)| a.denom() - 1u32).collect();
    let mut st = DecompState {
        ks: &ks,
        caps: &caps,
        zeta: vec![BigUint::zero(); items.len()],
        out: Vec::new(),
        budget: ORACLE_NODE_LIMIT,
    };
    if !st.go(0, ks.target.clone()) {
        return Err(Error::Unsupported(format!(
            "decomposition search for {q} up to index {max_index} exceeds {ORACLE_NODE_LIMIT} nodes"
        )));
    }
    let mut out: Vec<AtomicDecomposition> = st
        .out
        .into_iter()
        .map(|(eta, zs)| AtomicDecomposition {
            value: q.clone(),
            eta,
            zeta: ks
                .indices
                .iter()
                .zip(zs)
                .filter(|(_, z)| !z.is_zero())
                .map(|(i, z)| (*i, z))
                .collect(),
        })
        .collect();
    out.sort();
    Ok(out)
}

struct DecompState<'a> {
    ks: &'a Knapsack,
    caps: &'a [BigUint],
    zeta: Vec<BigUint>,
    out: Vec<(BigUint, Vec<BigUint>)>,
    budget: u64,
}

impl DecompState<'_> {
    /// False when the node budget is exhausted.
    fn go(&mut self, i: usize, rem: BigUint) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        if i == self.ks.weights.len() {
            let (eta, r) = rem.div_rem(&self.ks.scale);
            if r.is_zero() {
                self.out.push((eta, self.zeta.clone()));
            }
            return true;
        }
        let w = &self.ks.weights[i];
        let top = (&rem / w).min(self.caps[i].clone());
        let mut z = BigUint::zero();
        while z <= top {
            let next = &rem - w * &z;
            self.zeta[i] = z.clone();
            if !self.go(i + 1, next) {
                return false;
            }
            z += 1u32;
        }
        self.zeta[i] = BigUint::zero();
        true
    }
}

/// Convenience for callers holding an [`ExactRational`].
pub fn verify_obstruction(desc: &MonoidDescriptor, q: &ExactRational, ob: &Obstruction) -> bool {
    ob.verify(desc, &q.to_signed())
}
