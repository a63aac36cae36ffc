//! Linear finite transducers over GF(2).
//!
//! Everything here is exact: bit-packed GF(2) linear algebra, polynomial
//! arithmetic in GF(2)[z] and its localization at denominators with constant
//! term 1, Smith normal forms with unimodular multipliers, big-integer class
//! counting, and Monte Carlo estimators that accumulate in exact rationals.

pub mod census;
pub mod error;
pub mod estimator;
pub mod gf2;
pub mod numfmt;
pub mod poly;
pub mod transducer;

pub use census::{
    canonical_class_size, canonical_lft_count, closed_form_counts, equivalents_of_minimal,
    total_class_count, ClosedFormCounts, CountParams,
};
pub use error::{Error, Result};
pub use estimator::{
    class_probability, derive_cell_seed, estimate_injective_classes,
    estimate_injective_percentage, exhaustive_census, inverse_normal_cdf, lft_space_size,
    random_lft, required_sample_size, CensusReport, EstimateParams, EstimateReport, TauCensus,
};
pub use gf2::BitMatrix;
pub use poly::{
    localize_invariant_factors, smith_normal_form, FracMatrix, InvariantFactorProfile, LocalFrac,
    Poly2, PolyMatrix, SmithDecomposition,
};
pub use transducer::{Lft, Word};
