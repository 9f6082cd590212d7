//! Exact factorization theory for reciprocal-type Puiseux monoids: additive
//! submonoids of the nonnegative rationals generated by sequences such as
//! `1/pₙ`, `1/(2ⁿpₙ)` or `1/(pₙpₙ₊ℓ)`.
//!
//! Everything is exact. Where a question has no closed-form answer the
//! result carries the search bounds used and says whether it is complete.

pub mod arith;
pub mod bounds;
pub mod chains;
pub mod decomposition;
pub mod error;
pub mod factorization;
pub mod monoid;
mod search;

pub use arith::{rat, ExactRational, PrimeFactorization};
pub use bounds::Bounds;
pub use chains::{
    chain_length_bound, descent_measure, gap_chain, grams_chain, verify_chain, ChainLimit, ChainReport,
    ChainWitness, DescentMeasure, StepReport,
};
pub use decomposition::{
    atomic_decompose, divides, enumerate_decompositions, member, membership_method, AtomicDecomposition,
    Certificate, Decomposed, MembershipVerdict, Method, Obstruction,
};
pub use error::{Error, Result};
pub use factorization::{
    enumerate_factorizations, factorizations_of_length, is_atom, length_set, relevant_indices, AtomCertificate,
    AtomReason, AtomVerdict, Completeness, Factorization, FactorizationSet, LengthSet,
};
pub use monoid::{
    classify, parse_descriptor, ClassificationReport, Family, Flag, GeneratorTerm, IndexSet, MonoidDescriptor,
    Verdict,
};
