//! Machine-readable reports. These types are the output schema: every field
//! is always present (`null` when absent), unknown fields are rejected, and
//! all numbers that can exceed 64 bits are exact decimal strings.

use puiseux_core::monoid::DescriptorDocument;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NotMember,
    Unknown,
    Unsupported,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NotMember | Status::Unknown => 2,
            Status::Unsupported => 3,
            Status::Error => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotMember => "not_member",
            Status::Unknown => "unknown",
            Status::Unsupported => "unsupported",
            Status::Error => "error",
        }
    }
}

/// The limits in force for the invocation, echoed whether or not the verb
/// consulted them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsEcho {
    pub max_length: u64,
    pub max_index: usize,
    pub max_steps: usize,
    pub max_coeff: u64,
    pub node_budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub verb: String,
    pub status: Status,
    /// `None` when the descriptor itself failed to parse.
    pub descriptor: Option<DescriptorDocument>,
    pub bounds: BoundsEcho,
    /// How the answer was obtained and which limits it depends on.
    pub notes: Vec<String>,
    pub result: Option<Payload>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Payload {
    Classify(ClassifyOut),
    Generators(GeneratorsOut),
    Decompose(DecomposeOut),
    Member(MembershipOut),
    Divides(DividesOut),
    Factorize(FactorizationsOut),
    Lengths(LengthsOut),
    Zlength(FactorizationsOut),
    Atoms(AtomsOut),
    Chain(ChainOut),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagOut {
    pub name: String,
    pub verdict: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyOut {
    pub flags: Vec<FlagOut>,
    pub membership_method: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorOut {
    pub index: usize,
    pub value: String,
    pub controlling_prime: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsOut {
    pub finite: bool,
    pub generators: Vec<GeneratorOut>,
}

/// `coefficient · generator` at `index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermOut {
    pub index: usize,
    pub generator: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionOut {
    pub value: String,
    pub eta: String,
    pub zeta: Vec<TermOut>,
    pub rendered: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionOut {
    pub kind: String,
    pub detail: String,
    /// The stated inequality was rechecked independently of the search.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecomposeOut {
    pub element: String,
    /// `unique` for the closed form, `exhaustive` for `--all`.
    pub mode: String,
    pub decompositions: Vec<DecompositionOut>,
    pub obstruction: Option<ObstructionOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateOut {
    /// `decomposition` or `combination`.
    pub kind: String,
    pub eta: Option<String>,
    pub terms: Vec<TermOut>,
    pub rendered: String,
    /// The certificate re-evaluates exactly to the element.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipOut {
    pub element: String,
    pub method: String,
    /// `member`, `not_member` or `unknown`.
    pub verdict: String,
    pub certificate: Option<CertificateOut>,
    pub obstruction: Option<ObstructionOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DividesOut {
    pub divisor: String,
    pub dividend: String,
    /// `dividend − divisor` when nonnegative.
    pub difference: Option<String>,
    pub membership: MembershipOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationOut {
    pub length: String,
    pub terms: Vec<TermOut>,
    pub rendered: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationsOut {
    pub element: String,
    /// The requested length for `zlength`, `None` for `factorize`.
    pub length: Option<u64>,
    pub completeness: String,
    pub factorizations: Vec<FactorizationOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LengthsOut {
    pub element: String,
    pub up_to: u64,
    pub completeness: String,
    pub lengths: Vec<u64>,
    /// One factorization per length, in length order.
    pub witnesses: Vec<FactorizationOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomOut {
    pub index: usize,
    pub generator: String,
    /// `atom`, `not_atom` or `unknown`.
    pub verdict: String,
    pub reason: Option<String>,
    pub witness: Option<FactorizationOut>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomsOut {
    pub atoms: Vec<AtomOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepOut {
    pub step: usize,
    pub difference: String,
    pub certificate: FactorizationOut,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescentOut {
    pub element: String,
    pub eta: String,
    pub zeta_sum: String,
    /// Most elements in a strict divisibility chain starting here.
    pub chain_length_bound: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainOut {
    /// `grams`, `gap` or `descent`.
    pub kind: String,
    pub elements: Vec<String>,
    pub steps: Vec<StepOut>,
    pub verified: bool,
    pub descent: Option<DescentOut>,
}
