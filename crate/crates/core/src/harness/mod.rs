//! Worst-case constructions, randomized audits, convergence studies and an
//! independent evaluation oracle.

pub mod convergence;
pub mod fuzz;
pub mod oracle;
pub mod worst_case;

pub use convergence::{convergence_study, periodic_trace_error, polynomial_reproduction_error, sine_wave, RateRow, RateTable};
pub use fuzz::{fuzz_sign_property, FuzzConfig, FuzzReport, OrderSummary, ValueFamily, Witness};
pub use oracle::lagrange_oracle;
pub use worst_case::{
    default_cell_count, ratio_at_target, run_worst_case, worst_case_averages, worst_case_averages_with,
    WorstCaseLayout, WorstCaseRun, DEFAULT_EPSILON,
};
