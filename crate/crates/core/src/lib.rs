//! Standard 2-complexes assembled from vertex and bar pieces.
//!
//! A [`GluingSpec`] names pieces and glues their T-ends in pairs. From it the
//! crate traces the frontier curves that receive disks, decides whether the
//! complex thickens to an orientable 3-manifold, computes χ, homology and a
//! presentation of π1, enumerates cosets, builds finite covers and runs
//! exhaustive censuses of small gluings.

pub mod covers;
pub mod enumerator;
pub mod frontend;
pub mod gluing;
pub mod groups;
pub mod invariants;
pub mod pieces;
pub mod tracer;

pub use covers::{build_cover, universal_cover, verify_cover, CoverError, CoverReport, CoverSpec};
pub use enumerator::{
    canonical_form, canonical_spec, census, enumerate_gluings, CanonicalCode, Census, CensusClass, CensusOptions,
    EnumError, SymmetryOptions,
};
pub use frontend::{analyze, builtin, parse_spec, AnalyzeError, AnalyzeOptions, ParseError, Report};
pub use gluing::{
    build_skeleton, DiskPolicy, GluingSpec, Matching, Parity, PieceDecl, SkeletonEdge, SkeletonGraph, TEndSlot,
    ValidationError,
};
pub use groups::{
    abelianization, betti_numbers, enumerate_cosets, presentation_from_complex, tietze_simplify, todd_coxeter,
    AbelianInvariants, BettiNumbers, CosetResult, CosetTable, Letter, Presentation, Word,
};
pub use invariants::{disk_curves, euler_characteristic, orientability_verdict, EmbeddabilityVerdict};
pub use pieces::{internal_arcs, piece_symmetries, PieceKind, PieceSymmetry, ProngPerm, TipIndex};
pub use tracer::{canonical_word, canonical_word_multiset, trace_boundary, BoundaryCurve, GlobalTip};
