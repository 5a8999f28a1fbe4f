//! Verification suites: deterministic seeded checks with machine-readable
//! reports. Process exit conventions and the JSON schema live with the
//! command-line front end; this module guarantees that a report is a pure
//! function of its check specifications.

pub mod checks;
pub mod report;
pub mod rng;

pub use checks::{default_suite, run_check, run_suite, suite_for, SuiteConfig, SuiteSelector};
pub use report::{
    CheckKind, CheckParams, CheckReport, CheckSpec, CheckStatus, SuiteReport, SuiteSummary,
};
