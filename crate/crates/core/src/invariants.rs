//! Euler characteristic, connectivity and the orientable-embeddability
//! verdict.

use serde::Serialize;
use thiserror::Error;

use crate::gluing::{DiskPolicy, GluingSpec, Parity, SkeletonGraph};
use crate::tracer::BoundaryCurve;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiskError {
    #[error("disk index {index} is out of range: only {curves} boundary curves")]
    OutOfRange { index: usize, curves: usize },
    #[error("disk index {0} is listed twice")]
    Repeated(usize),
}

/// Indices of the curves that receive a disk, ascending.
pub fn disk_curves(spec: &GluingSpec, curves: &[BoundaryCurve]) -> Result<Vec<usize>, DiskError> {
    match &spec.disks {
        DiskPolicy::All => Ok((0..curves.len()).collect()),
        DiskPolicy::Explicit(list) => {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(DiskError::Repeated(w[0]));
                }
            }
            if let Some(&index) = sorted.iter().find(|&&i| i >= curves.len()) {
                return Err(DiskError::OutOfRange { index, curves: curves.len() });
            }
            Ok(sorted)
        }
    }
}

/// `#pieces − #matchings + #disks`.
pub fn euler_characteristic(spec: &GluingSpec, curves: &[BoundaryCurve]) -> Result<i64, DiskError> {
    let disks = disk_curves(spec, curves)?.len();
    Ok(spec.pieces.len() as i64 - spec.matchings.len() as i64 + disks as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddabilityVerdict {
    pub embeddable_orientable: bool,
    /// First disk-bounding curve crossing even edges an odd number of times.
    pub witness: Option<usize>,
}

pub fn even_letter_count(curve: &BoundaryCurve, parities: &[Parity]) -> usize {
    curve.word.iter().filter(|l| parities[l.gen] == Parity::Even).count()
}

/// A complex embeds in an orientable 3-manifold iff every curve bounding a
/// disk runs through even 1-cells an even number of times.
pub fn orientability_verdict(
    skeleton: &SkeletonGraph,
    curves: &[BoundaryCurve],
    disks: &[usize],
) -> EmbeddabilityVerdict {
    let parities = skeleton.parities();
    let witness = disks.iter().copied().find(|&i| even_letter_count(&curves[i], &parities) % 2 == 1);
    EmbeddabilityVerdict { embeddable_orientable: witness.is_none(), witness }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexInvariants {
    pub chi: i64,
    pub components: usize,
    pub curve_count: usize,
    pub disk_count: usize,
}

pub fn complex_invariants(
    spec: &GluingSpec,
    skeleton: &SkeletonGraph,
    curves: &[BoundaryCurve],
) -> Result<ComplexInvariants, DiskError> {
    let disk_count = disk_curves(spec, curves)?.len();
    Ok(ComplexInvariants {
        chi: spec.pieces.len() as i64 - spec.matchings.len() as i64 + disk_count as i64,
        components: skeleton.component_count(),
        curve_count: curves.len(),
        disk_count,
    })
}
