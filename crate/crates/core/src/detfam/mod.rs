//! Multidiagonal (banded Toeplitz) matrices, their determinants by direct
//! elimination and by recurrence, and the polynomial families they define.

mod checks;
mod family;
mod matrix;
mod presentation;

pub use checks::{
    closed_form_check, f_root_formula_check, frobenius_det_identity, gf_truncation_check,
    homogenize_check, katzman_closed_form_check, p_root_formula_check, p_values_at_two_check,
    support_consistency, MAX_FROBENIUS_INDEX,
};
pub use family::{det_custom, det_family, det_sequence, family_unipoly, family_unipolys, Family};
pub use matrix::{
    build_matrix, det_direct, det_direct_capped, rank_mod_p, BandMatrix, MultidiagSpec,
    DIRECT_CAP_MULTIVARIATE, DIRECT_CAP_UNIVARIATE,
};
pub use presentation::presentation_matrix;
