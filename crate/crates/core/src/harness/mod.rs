//! Seeded corpora, suite execution and JSON/CSV reporting.

pub mod config;
pub mod corpus;
pub mod plot;
pub mod report;
pub mod sampling;
pub mod suites;

pub use config::{parse_suites, Suite, SuiteConfig};
pub use corpus::{corpus_generate, weierstrass_corpus, Contact, CorpusEntry, HoloCase, HoloKind, MinimalCase, MinimalKind};
pub use plot::emit_plot_data;
pub use report::{RunReport, SuiteReport};
pub use suites::{run_suite, search_runs};
