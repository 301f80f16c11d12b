//! A catalog of equations between map terms, checked by elaborating both
//! sides into nets on sampled variable bindings.
//!
//! Entries come from an embedded S-expression file (see [`catalog`]). Each
//! entry declares its object and map variables and, per category, whether it
//! is expected to hold, to fail, or to be skipped.

pub mod catalog;
pub mod runner;
pub mod sampler;

pub use catalog::{builtin, parse_catalog, Catalog, Equation, Expect, Level, Relation, StrongPart};
pub use runner::{check_equation, run_suite, run_sweep, type_check, EntryReport, Mode, Observed, Report, Status, Verdict};
pub use sampler::SamplerConfig;
