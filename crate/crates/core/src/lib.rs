//! Exact simplicial homology and Stanley–Reisner local cohomology, with the
//! classification, liaison and connectivity checks built on top of them.
//!
//! Every computation is exact: rationals via fraction-free elimination over
//! big integers, prime fields via residues. There are no tolerances anywhere.

pub mod classify;
pub mod collapse;
pub mod error;
pub mod facet_file;
pub mod field;
pub mod fixtures;
pub mod graphs;
pub mod hochster;
pub mod homology;
pub mod liaison;
pub mod matrix;
pub mod simplicial;

pub use error::{Error, Result};
pub use facet_file::{parse_facet_file, to_facet_file};
pub use field::{FieldElement, FieldSpec};
pub use homology::{boundary_matrix, reduced_betti, relative_betti, BettiVector};
pub use matrix::ExactMatrix;
pub use simplicial::{ComplexKind, Face, SimplicialComplex, DEFAULT_FACE_CAP};
pub use classify::{classify, ClassificationReport};
pub use collapse::{collapse_onto, verify_trace, CollapseOutcome, CollapseTrace};
pub use graphs::{connectivity_report, gamma_graph, GammaGraph};
pub use hochster::{local_cohomology_table, LocalCohomologyTable};
pub use liaison::{lefschetz_report, FacetPartition, LefschetzReport};
