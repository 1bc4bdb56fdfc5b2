//! Finitely presented groups: presentations of π1, simplification,
//! abelianization and coset enumeration.

pub mod cosets;
pub mod presentation;
pub mod snf;
pub mod tietze;
pub mod word;

use serde::Serialize;

pub use cosets::{enumerate_cosets, todd_coxeter, CosetError, CosetResult, CosetTable, DEFAULT_MAX_COSETS};
pub use presentation::{presentation_from_complex, Presentation, PresentationError};
pub use snf::{abelianization, invariant_factors, AbelianInvariants};
pub use tietze::{tietze_simplify, tietze_simplify_with};
pub use word::{Letter, Word};

use crate::gluing::SkeletonGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BettiNumbers {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
}

/// Betti numbers of a connected complex with Euler characteristic `chi`.
pub fn betti_numbers(
    skeleton: &SkeletonGraph,
    chi: i64,
    abelian: &AbelianInvariants,
) -> Result<BettiNumbers, PresentationError> {
    if !skeleton.is_connected() {
        return Err(PresentationError::Disconnected(skeleton.component_count()));
    }
    let b1 = abelian.rank;
    let b2 = chi - 1 + b1 as i64;
    debug_assert!(b2 >= 0, "negative b2 from chi = {chi}, b1 = {b1}");
    Ok(BettiNumbers { b0: 1, b1, b2: b2.max(0) as usize })
}
