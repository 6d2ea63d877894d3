//! Grid audits of the closed-form identities.
//!
//! Each check enumerates its tuples in a fixed order, evaluates them on a
//! worker pool and reports every violation and every rejected tuple. Reports
//! depend only on the grid, never on the number of workers.

mod checks;
mod grid;
mod report;

pub use checks::{
    check_assembly, check_ci_gap, check_lemma_num_1, check_lemma_num_1_with, check_lemma_num_2,
    check_lemma_num_3, check_misc, check_second_difference, check_surface_curves,
    check_surface_range, check_telescoping, run_check, run_checks,
};
pub use grid::{
    DBase, DSample, GridPoint, GridSpec, KSamples, RandomSamples, Selection, SelectionMode,
    CHECK_NAMES,
};
pub use report::{CheckReport, Rejection, SummaryRow, Tuple, Violation};
