//! Normal-form reduction of curve germs by reparametrizations, scalings and coordinate
//! changes, with replayable traces.

pub mod catalog;
pub mod equivalence;
pub mod steps;
pub mod trace;

pub use catalog::{catalog_forms, normal_form, reduce_catalog, CatalogMatch, CATALOG};
pub use equivalence::{equivalence_search, flatten, Budget, Certificate, EquivalenceVerdict};
pub use steps::{
    clean_first, gap_reparametrization, kill_semigroup_terms, leading_term_step, monomialize_first, scale_normalize,
    sort_components, tail_terms, zariski_step, GapStep, Leftover,
};
pub use trace::{Move, ReductionTrace, TraceStep};
