//! Instance files, reports, fixtures and corpus runs on top of `sortable-core`.

pub mod analysis;
pub mod corpus;
pub mod fixtures;
pub mod instance;
pub mod report;

pub use analysis::{run_analysis, Analysis, Selector};
pub use corpus::{corpus_run, CorpusParams, CorpusRun, Mode};
pub use instance::{parse_instance, Instance, InstanceBody, ParseError};
pub use report::{Report, Section};
