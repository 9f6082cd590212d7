//! Monoid descriptors, structural queries and classification.

pub mod classify;
pub mod descriptor;
pub mod document;

pub use classify::{classify, ClassificationReport, Flag, Verdict};
pub use descriptor::{Family, GeneratorTerm, IndexSet, MonoidDescriptor, PrimeSequence};
pub use document::{descriptor_to_json, parse_descriptor, DescriptorDocument};
