//! Certificates for the lower bound on `χ_c(G(n, 1/2))`: the two graph
//! properties, significance, the covering-clique construction and the
//! refutation of a given coloring.

pub mod lemmas;
pub mod profile;
pub mod refute;
pub mod witness;

pub use lemmas::{
    bad_vertices, check_lemma21, check_lemma22, is_significant, Lemma21Mode, Lemma21Report, Lemma22Report,
    SignificanceReport,
};
pub use profile::{ParameterProfile, Scaled, Thresholds};
pub use refute::{refute_coloring, RefutationOutcome, RefuteFailure, RefuteStage, Representative};
pub use witness::{construct_covering_clique, CliqueWitness, ConstructionFailure, WITNESS_EFFORT};

#[cfg(test)]
mod tests;
