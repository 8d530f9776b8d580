//! Cross-validation of formula pipelines against the census oracle, plus
//! the `dihyper` command line.

pub mod checks;
pub mod cli;
pub mod compare;
pub mod report;

pub use checks::{run_suite, CheckOutcome, Status, Suite};
pub use cli::run_cli;
pub use compare::{
    compare_family, compare_methods, compare_sequence, lambda_verdict, marked_component_check,
    marked_source_check, MarkedCheck,
};
pub use report::{
    CompareRecord, CompareReport, CountRecord, EvalRecord, Mismatch, Timing, Verdict,
};
