//! Dense univariate polynomials, squarefree decomposition, factorization
//! over prime fields and root counting.

mod factor;
mod growth;
mod poly;
mod roots;

pub use factor::{
    distinct_degree_factorization, distinct_root_count, equal_degree_factorization, factor,
    is_irreducible, squarefree_decomposition, squarefree_part, Factorization, DEFAULT_SEED,
};
pub use growth::{
    cumulative_factor_set, Factorizer, FiniteFieldFactorizer, GrowthRow, GrowthTable,
    SmallRationalFactorizer, RATIONAL_ROOT_BOUND,
};
pub use poly::{parse_unipoly, UniPoly, MAX_PARSED_DEGREE};
pub use roots::{eval_in_extension, roots_in_extension};
