//! The hypersurface rings under study and one reproducible check per
//! identity, each producing a [`ScenarioReport`].

mod aggregate;
mod assmax;
mod cohomology;
mod families;
mod freg;
mod ideals;
mod lc;
mod oracle;
mod report;
mod registry;
mod rings;

pub use aggregate::{parse_reports, Aggregate};
pub use assmax::{assmax_check, ufd_remark_check, ufd_remark_report, univariate_colon_by_factors, univariate_colon_by_gcd};
pub use cohomology::{eta_kill_check, multigraded_check};
pub use families::{generic_band, katzman_legacy_check, lowdim_factor_growth, minprimes_check, presentation_check, roots2_check, roots_check, threediag_check};
pub use freg::{freg_certificate, full8var_exponent, FregMode};
pub use ideals::{colon_identity_check, decomposition_check, genfrob_check, ColonVariant};
pub use lc::{ann_degree_zero, eta_large, eta_small, lc_class_is_zero, multigraded_shift_check, LocalCohomologyClass, Vanishing};
pub use oracle::{dual_contains, equality_outcome, graded_answer, membership_outcome, membership_with_note, summarize, Agreement};
pub use registry::{expand, run_tasks, suite_tasks, ScenarioId, Task, TaskParams};
pub use report::{KeyValue, Outcome, Recorder, ReportKey, ReportStats, RunContext, ScenarioReport, Status};
pub use rings::{
    ring_a, ring_a_dehomogenized, ring_assmax, ring_b, ring_b_r, ring_domain, ring_lowdim, ring_s, ring_t,
    HypersurfaceSpec,
};
