//! Checks of the injectivity theorem for wedge filtrations, its corollary
//! for coradicals, and the supporting lemmas, on built-in and random data.

mod generate;
mod instance;
mod lemmas;
mod stress;

pub use generate::{
    builtin_pieces, generator, generator_names, random_coideal, random_coideal_with, random_subcoalgebra,
    random_subcoalgebra_with, BuiltinPiece, InstanceGenerator, QuotientGenerator, StructuredGenerator,
};
pub use instance::{verify_corollary, verify_theorem, HrInstance, HrReport, Provenance, Verdict};
pub use lemmas::{builtin_corpus, contrapositive_scan, lemma_suite, CorpusEntry, LemmaConfig, ScanResult};
pub use stress::{stress, trial_seed, CounterexampleRecord, StressConfig, StressSummary, DEFAULT_DIM_CAP};
