//! Finite covering complexes from a permutation action of π1 on cosets.
//!
//! Pieces, matchings and disks are lifted once per coset. The lift of a
//! matching starting at coset `c` ends at `c · e`, where `e` is the
//! matching's generator; disks lift because their boundary words are
//! relators and act trivially.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::gluing::{build_skeleton, DiskPolicy, GluingSpec, Matching, PieceDecl, TEndSlot, ValidationError};
use crate::groups::word::Word;
use crate::groups::{
    enumerate_cosets, presentation_from_complex, tietze_simplify, todd_coxeter, CosetError, CosetResult, CosetTable,
    Letter, PresentationError,
};
use crate::invariants::{disk_curves, orientability_verdict, DiskError, EmbeddabilityVerdict};
use crate::tracer::{cyclic_word_multiset, trace_boundary, GlobalTip};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("invalid base spec: {0:?}")]
    Invalid(Vec<ValidationError>),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Disk(#[from] DiskError),
    #[error("coset table is not closed")]
    TableNotClosed,
    #[error("coset table acts by {table} generators but the spec has {edges} matchings")]
    GeneratorMismatch { table: usize, edges: usize },
    #[error("boundary word of disk on curve {curve} does not act trivially on cosets")]
    DiskDoesNotClose { curve: usize },
    #[error(transparent)]
    Cosets(#[from] CosetError),
}

impl From<Vec<ValidationError>> for CoverError {
    fn from(errs: Vec<ValidationError>) -> Self {
        CoverError::Invalid(errs)
    }
}

/// One base disk lifted to one sheet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedDisk {
    pub base_curve: usize,
    /// Sheet of the curve's first tip, 0-based.
    pub coset: usize,
    pub tips: Vec<GlobalTip>,
    /// Word over the cover's matching indices.
    pub word: Word,
    /// Index of the same curve in the cover's own trace order.
    pub cover_curve: usize,
}

#[derive(Clone, Debug)]
pub struct CoverSpec {
    pub spec: GluingSpec,
    pub index: usize,
    pub base_pieces: usize,
    pub base_matchings: usize,
    pub base_disks: usize,
    pub lifted_disks: Vec<LiftedDisk>,
    /// Built from the regular action, so π1 of the cover should be trivial.
    pub universal: bool,
}

pub fn lifted_name(base: &str, coset: usize) -> String {
    format!("{base}#{}", coset + 1)
}

pub fn build_cover(spec: &GluingSpec, table: &CosetTable) -> Result<CoverSpec, CoverError> {
    let skeleton = build_skeleton(spec)?;
    if !skeleton.is_connected() {
        return Err(PresentationError::Disconnected(skeleton.component_count()).into());
    }
    if table.generator_count() != spec.matchings.len() {
        return Err(CoverError::GeneratorMismatch { table: table.generator_count(), edges: spec.matchings.len() });
    }
    if !table.is_closed() || table.is_empty() {
        return Err(CoverError::TableNotClosed);
    }
    let curves = trace_boundary(spec)?;
    let disks = disk_curves(spec, &curves)?;
    for &d in &disks {
        if (0..table.len()).any(|c| table.act_word(c, &curves[d].word) != c) {
            return Err(CoverError::DiskDoesNotClose { curve: d });
        }
    }

    let k = table.len();
    let np = spec.pieces.len();
    let nm = spec.matchings.len();
    let mut pieces = Vec::with_capacity(k * np);
    let mut matchings = Vec::with_capacity(k * nm);
    for c in 0..k {
        pieces.extend(spec.pieces.iter().map(|p| PieceDecl::new(lifted_name(&p.name, c), p.kind)));
    }
    for c in 0..k {
        for (mi, m) in spec.matchings.iter().enumerate() {
            let target = table.act(c, Letter::pos(mi));
            matchings.push(Matching::new(
                lifted_name(&m.id, c),
                TEndSlot::new(lifted_name(&m.left.piece, c), m.left.t_end),
                TEndSlot::new(lifted_name(&m.right.piece, target), m.right.t_end),
                m.perm,
            ));
        }
    }
    let mut cover = GluingSpec::new(pieces, matchings, DiskPolicy::All);

    let cover_curves = trace_boundary(&cover)?;
    let curve_of: HashMap<GlobalTip, usize> =
        cover_curves.iter().enumerate().flat_map(|(i, c)| c.tips.iter().map(move |&t| (t, i))).collect();

    let mut lifted_disks = Vec::with_capacity(k * disks.len());
    for &d in &disks {
        let base = &curves[d];
        for start in 0..k {
            let mut sheet = start;
            let mut tips = Vec::with_capacity(base.tips.len());
            let mut word = Vec::with_capacity(base.word.len());
            for (i, &letter) in base.word.iter().enumerate() {
                for t in &base.tips[2 * i..2 * i + 2] {
                    tips.push(GlobalTip { piece: sheet * np + t.piece, tip: t.tip });
                }
                let next = table.act(sheet, letter);
                let left_sheet = if letter.exp > 0 { sheet } else { next };
                word.push(Letter::new(left_sheet * nm + letter.gen, letter.exp));
                sheet = next;
            }
            debug_assert_eq!(sheet, start);
            let cover_curve = curve_of[&tips[0]];
            lifted_disks.push(LiftedDisk { base_curve: d, coset: start, tips, word, cover_curve });
        }
    }

    let mut on: Vec<usize> = lifted_disks.iter().map(|l| l.cover_curve).collect();
    on.sort_unstable();
    on.dedup();
    if on.len() != cover_curves.len() || !matches!(spec.disks, DiskPolicy::All) {
        cover.disks = DiskPolicy::Explicit(on);
    }

    Ok(CoverSpec {
        spec: cover,
        index: k,
        base_pieces: np,
        base_matchings: nm,
        base_disks: disks.len(),
        lifted_disks,
        universal: false,
    })
}

/// Universal cover of a complex with finite π1, from the regular action on
/// the presentation with one generator per matching.
pub fn universal_cover(spec: &GluingSpec, max_cosets: usize) -> Result<CoverSpec, CoverError> {
    let skeleton = build_skeleton(spec)?;
    let curves = trace_boundary(spec)?;
    let p = presentation_from_complex(spec, &skeleton, &curves)?;
    let table = enumerate_cosets(&p, max_cosets)?;
    let mut cover = build_cover(spec, &table)?;
    cover.universal = true;
    Ok(cover)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub index: usize,
    pub pieces: usize,
    pub matchings: usize,
    pub disks: usize,
    pub curve_count: usize,
    pub chi: i64,
    pub verdict: EmbeddabilityVerdict,
    pub cosets: CosetResult,
    /// Lifted disk boundaries coincide with curves traced on the cover.
    pub lifts_match_trace: bool,
    /// For universal covers: whether the cover came out simply connected.
    pub simply_connected: Option<bool>,
}

pub fn verify_cover(cover: &CoverSpec, max_cosets: usize) -> Result<CoverReport, CoverError> {
    let spec = &cover.spec;
    let skeleton = build_skeleton(spec)?;
    let curves = trace_boundary(spec)?;
    let disks = disk_curves(spec, &curves)?;
    let verdict = orientability_verdict(&skeleton, &curves, &disks);
    let p = presentation_from_complex(spec, &skeleton, &curves)?;
    let cosets = todd_coxeter(&tietze_simplify(&p), max_cosets);

    let lifted_words: Vec<&Word> = cover.lifted_disks.iter().map(|l| &l.word).collect();
    let traced_words: Vec<&Word> = disks.iter().map(|&i| &curves[i].word).collect();
    let same_tips = cover.lifted_disks.iter().all(|l| {
        let mut a = l.tips.clone();
        let mut b = curves[l.cover_curve].tips.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    });
    let lifts_match_trace = same_tips
        && cyclic_word_multiset(&lifted_words.iter().map(|w| w.as_slice()).collect::<Vec<_>>())
            == cyclic_word_multiset(&traced_words.iter().map(|w| w.as_slice()).collect::<Vec<_>>());

    Ok(CoverReport {
        index: cover.index,
        pieces: spec.pieces.len(),
        matchings: spec.matchings.len(),
        disks: disks.len(),
        curve_count: curves.len(),
        chi: spec.pieces.len() as i64 - spec.matchings.len() as i64 + disks.len() as i64,
        verdict,
        cosets,
        lifts_match_trace,
        simply_connected: cover.universal.then_some(cosets == CosetResult::Finite { order: 1 }),
    })
}
