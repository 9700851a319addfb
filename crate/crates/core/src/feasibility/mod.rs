//! Which subset sizes a symmetric function's representing polynomial must
//! use, decided exactly over the integers.

mod decide;
mod scan;
mod snf;

pub use decide::{
    brute_force_bound, brute_force_witness, certify_exhaustive, decide_symmetric_support,
    minimal_profile, profile_sizes, Decision, FeasibilityQuery, MinimalProfile, RowRule, Witness,
    CERTIFY_MAX_ARITY,
};
pub use scan::{conjecture_scan, scan_exponents, ScanReport, ScanRow};
pub use snf::{smith_normal_form, IntegerMatrix, SnfDecomposition};
