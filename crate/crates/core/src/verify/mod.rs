//! Self-verification: generator corpus, individual checks, report types, and
//! the standard deterministic battery.

pub mod checks;
pub mod corpus;
pub mod report;
pub mod suite;

pub use checks::{spearman, CheckTolerances, ScalingMode};
pub use corpus::GeneratorSpec;
pub use report::{Instance, ReportFile, Verdict, VerificationReport, SCHEMA_VERSION};
pub use suite::{run_suite, SuiteConfig};
