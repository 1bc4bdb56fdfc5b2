//! Exhaustive gluing enumeration and classification up to piece symmetries.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gluing::{skeleton_of, DiskPolicy, GluingSpec, Matching, PieceDecl, Resolved, TEndSlot, ValidationError};
use crate::groups::word::Word;
use crate::groups::{
    abelianization, presentation_from_complex, tietze_simplify, todd_coxeter, AbelianInvariants, CosetResult,
};
use crate::invariants::{disk_curves, orientability_verdict, DiskError};
use crate::pieces::{piece_symmetries, PieceKind, PieceSymmetry, ProngPerm};
use crate::tracer::{canonical_word_multiset, trace_global, trace_resolved};

/// Class counts reported for one-vertex gluings; checked softly.
pub const REFERENCE_ONE_VERTEX_CLASSES: usize = 14;
pub const REFERENCE_ONE_VERTEX_EMBEDDABLE: usize = 4;

pub const DEFAULT_MAX_ACTIONS: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("symmetry action has {actions} elements, above the bound of {bound}")]
    TooLarge { actions: u128, bound: usize },
    #[error("invalid spec: {0:?}")]
    Invalid(Vec<ValidationError>),
    #[error(transparent)]
    Disk(#[from] DiskError),
    #[error("need at least one vertex piece")]
    NoPieces,
}

/// All perfect pairings of `0..n` (n even), as sorted pairs in order of
/// their smaller element.
pub fn pairings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &mut Vec<usize>, current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(current.clone());
            return;
        }
        let first = free.remove(0);
        for i in 0..free.len() {
            let partner = free.remove(i);
            current.push((first, partner));
            go(free, current, out);
            current.pop();
            free.insert(i, partner);
        }
        free.insert(0, first);
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    }
    out
}

pub fn piece_name(i: usize) -> String {
    let letters = b"ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("P{}", i + 1)
    }
}

/// Number of one-vertex-per-piece specs with `n` vertex pieces.
pub fn gluing_count(n: usize) -> u128 {
    let slots = 4 * n as u128;
    let pairings: u128 = (1..slots).step_by(2).product();
    pairings * 6u128.pow(2 * n as u32)
}

/// Stream of every closed gluing of `n` vertex pieces, all disks attached.
pub struct Gluings {
    n: usize,
    pairings: Vec<Vec<(usize, usize)>>,
    pairing: usize,
    perms: Vec<usize>,
}

pub fn enumerate_gluings(n: usize) -> Gluings {
    let pairings = if n == 0 { Vec::new() } else { pairings(4 * n) };
    Gluings { n, pairings, pairing: 0, perms: vec![0; 2 * n] }
}

impl Gluings {
    fn build(&self) -> GluingSpec {
        let slot = |s: usize| TEndSlot::new(piece_name(s / 4), (s % 4) as u8 + 1);
        let pieces = (0..self.n).map(|i| PieceDecl::new(piece_name(i), PieceKind::Vertex)).collect();
        let matchings = self.pairings[self.pairing]
            .iter()
            .zip(&self.perms)
            .enumerate()
            .map(|(i, (&(l, r), &p))| Matching::new(format!("e{}", i + 1), slot(l), slot(r), ProngPerm::ALL[p]))
            .collect();
        GluingSpec::new(pieces, matchings, DiskPolicy::All)
    }
}

impl Iterator for Gluings {
    type Item = GluingSpec;

    fn next(&mut self) -> Option<GluingSpec> {
        if self.pairing >= self.pairings.len() {
            return None;
        }
        let spec = self.build();
        // last matching's permutation varies fastest
        let mut pos = self.perms.len();
        loop {
            if pos == 0 {
                self.pairing += 1;
                break;
            }
            pos -= 1;
            if self.perms[pos] < 5 {
                self.perms[pos] += 1;
                break;
            }
            self.perms[pos] = 0;
        }
        Some(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|v| v.to_be_bytes()).collect()
    }

    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetryOptions {
    /// Allow orientation-reversing piece symmetries.
    pub reflections: bool,
    pub max_actions: usize,
}

impl Default for SymmetryOptions {
    fn default() -> Self {
        SymmetryOptions { reflections: true, max_actions: DEFAULT_MAX_ACTIONS }
    }
}

pub fn allowed_symmetries(kind: PieceKind, reflections: bool) -> Vec<&'static PieceSymmetry> {
    piece_symmetries(kind).iter().filter(|s| reflections || !s.is_reflection()).collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

const SEPARATOR: u32 = u32::MAX;

/// Least encoding of the spec over piece relabelings and piece symmetries.
///
/// The encoding is a flag for an explicit disk set, the piece kinds, the tip
/// involution of the gluing (which forgets matching order, orientation and
/// names) and, when some curve has no disk, the disk curves as tip sets.
pub fn canonical_spec(spec: &GluingSpec, opts: SymmetryOptions) -> Result<CanonicalCode, EnumError> {
    let resolved = spec.resolve().map_err(EnumError::Invalid)?;
    let disk_sets = disk_tip_sets(spec, &resolved)?;
    canonical_resolved(&resolved, disk_sets.as_deref(), opts)
}

/// Tip sets of the disk-bearing curves, or `None` when every curve has one.
fn disk_tip_sets(spec: &GluingSpec, resolved: &Resolved) -> Result<Option<Vec<Vec<usize>>>, EnumError> {
    if spec.disks == DiskPolicy::All {
        return Ok(None);
    }
    let curves = trace_global(resolved);
    let disks = disk_curves(spec, &trace_resolved(resolved))?;
    if disks.len() == curves.len() {
        return Ok(None);
    }
    Ok(Some(disks.into_iter().map(|d| curves[d].0.clone()).collect()))
}

/// The spec spelled by its canonical code: pieces `A`, `B`, ... (vertices
/// first), matchings `e1`, `e2`, ... in order of their least tip, each
/// oriented from its lower T-end. Specs with equal codes get equal forms.
pub fn canonical_form(spec: &GluingSpec, opts: SymmetryOptions) -> Result<GluingSpec, EnumError> {
    let code = canonical_spec(spec, opts)?;
    let parts: Vec<&[u32]> = code.0.split(|&v| v == SEPARATOR).collect();
    let explicit_disks = parts[0][0] == 1;
    let kinds: Vec<PieceKind> = parts[0][1..].iter().map(|&k| PieceKind::ALL[k as usize]).collect();
    let involution = parts[1];
    let mut offsets = Vec::with_capacity(kinds.len());
    let mut total = 0;
    for k in &kinds {
        offsets.push(total);
        total += k.tip_count();
    }
    let locate = |tip: usize| {
        let piece = offsets.iter().rposition(|&o| o <= tip).expect("tip in range");
        (piece, crate::pieces::TipIndex::from_offset(tip - offsets[piece]))
    };

    let pieces = kinds.iter().enumerate().map(|(i, &k)| PieceDecl::new(piece_name(i), k)).collect();
    let mut matchings = Vec::new();
    let mut done = vec![false; total];
    for tip in 0..total {
        if done[tip] {
            continue;
        }
        let (lp, lt) = locate(tip);
        let (rp, rt) = locate(involution[tip] as usize);
        let mut images = [0u8; 3];
        for k in 1..=3u8 {
            let left = offsets[lp] + crate::pieces::TipIndex::new(lt.t_end, k).offset();
            let (_, right) = locate(involution[left] as usize);
            images[k as usize - 1] = right.prong;
            done[left] = true;
            done[involution[left] as usize] = true;
        }
        let perm = ProngPerm::from_images(images).expect("gluing code is a prong bijection");
        matchings.push(Matching::new(
            format!("e{}", matchings.len() + 1),
            TEndSlot::new(piece_name(lp), lt.t_end),
            TEndSlot::new(piece_name(rp), rt.t_end),
            perm,
        ));
    }
    let mut form = GluingSpec::new(pieces, matchings, DiskPolicy::All);
    if explicit_disks {
        let sets: Vec<Vec<usize>> = parts[2..].iter().map(|s| s.iter().map(|&t| t as usize).collect()).collect();
        let resolved = form.resolve().map_err(EnumError::Invalid)?;
        let mut disks: Vec<usize> = trace_global(&resolved)
            .iter()
            .enumerate()
            .filter(|(_, (tips, _))| {
                let mut sorted = tips.clone();
                sorted.sort_unstable();
                sets.contains(&sorted)
            })
            .map(|(i, _)| i)
            .collect();
        disks.sort_unstable();
        form.disks = DiskPolicy::Explicit(disks);
    }
    Ok(form)
}

pub(crate) fn canonical_resolved(
    r: &Resolved,
    disk_sets: Option<&[Vec<usize>]>,
    opts: SymmetryOptions,
) -> Result<CanonicalCode, EnumError> {
    // new layout: vertex pieces first, then bars
    let mut groups: Vec<(PieceKind, Vec<usize>)> = Vec::new();
    for kind in PieceKind::ALL {
        let members: Vec<usize> = (0..r.piece_count()).filter(|&p| r.kinds[p] == kind).collect();
        if !members.is_empty() {
            groups.push((kind, members));
        }
    }
    let syms: Vec<Vec<&PieceSymmetry>> =
        PieceKind::ALL.iter().map(|&k| allowed_symmetries(k, opts.reflections)).collect();
    let sym_of = |kind: PieceKind| &syms[kind as usize];

    let mut actions: u128 = 1;
    for (kind, members) in &groups {
        let fact: u128 = (1..=members.len() as u128).product();
        actions = actions
            .saturating_mul(fact)
            .saturating_mul((sym_of(*kind).len() as u128).saturating_pow(members.len() as u32));
    }
    if actions > opts.max_actions as u128 {
        return Err(EnumError::TooLarge { actions, bound: opts.max_actions });
    }

    let kinds_sorted: Vec<PieceKind> = groups.iter().flat_map(|(k, m)| std::iter::repeat_n(*k, m.len())).collect();
    let mut new_offset = Vec::with_capacity(kinds_sorted.len());
    let mut total = 0;
    for k in &kinds_sorted {
        new_offset.push(total);
        total += k.tip_count();
    }

    // every assignment of old pieces to new positions that respects kinds
    let mut placements: Vec<Vec<usize>> = vec![Vec::new()];
    let mut base = 0;
    for (_, members) in &groups {
        let positions: Vec<usize> = (base..base + members.len()).collect();
        let perms = permutations(&positions);
        placements = placements
            .into_iter()
            .flat_map(|prefix| {
                perms.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(p);
                    v
                })
            })
            .collect();
        base += members.len();
    }
    let old_order: Vec<usize> = groups.iter().flat_map(|(_, m)| m.iter().copied()).collect();

    let n = r.piece_count();
    let mut best: Option<Vec<u32>> = None;
    let mut position = vec![0usize; n];
    let mut image = vec![0usize; r.tip_count()];
    let mut code = Vec::with_capacity(total + 2);
    for placement in &placements {
        for (slot, &old) in old_order.iter().enumerate() {
            position[old] = placement[slot];
        }
        let mut digits = vec![0usize; n];
        loop {
            for p in 0..n {
                let s = sym_of(r.kinds[p])[digits[p]];
                let off = r.tip_offset[p];
                for local in 0..r.kinds[p].tip_count() {
                    image[off + local] = new_offset[position[p]] + s.apply_offset(local);
                }
            }
            code.clear();
            code.push(u32::from(disk_sets.is_some()));
            code.extend(kinds_sorted.iter().map(|&k| k as u32));
            code.push(SEPARATOR);
            let start = code.len();
            code.resize(start + total, 0);
            for t in 0..r.tip_count() {
                code[start + image[t]] = image[r.glue[t].0] as u32;
            }
            if let Some(sets) = disk_sets {
                let mut mapped: Vec<Vec<u32>> = sets
                    .iter()
                    .map(|set| {
                        let mut v: Vec<u32> = set.iter().map(|&t| image[t] as u32).collect();
                        v.sort_unstable();
                        v
                    })
                    .collect();
                mapped.sort();
                for m in mapped {
                    code.push(SEPARATOR);
                    code.extend(m);
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code.clone());
            }

            let mut pos = 0;
            while pos < n && digits[pos] + 1 == sym_of(r.kinds[pos]).len() {
                digits[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
            digits[pos] += 1;
        }
    }
    Ok(CanonicalCode(best.unwrap_or_default()))
}

/// Invariants computed for every enumerated spec.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Summary {
    chi: i64,
    curve_count: usize,
    embeddable: bool,
    witness: Option<usize>,
    abelian: AbelianInvariants,
    /// Word multiset up to edge renaming, orientation and rotation.
    words: Option<Vec<Word>>,
}

const MAX_RENAMED_ALPHABET: usize = 6;

fn relabel_invariant_words(words: &[Word], n_edges: usize) -> Option<Vec<Word>> {
    if n_edges > MAX_RENAMED_ALPHABET {
        return None;
    }
    permutations(&(0..n_edges).collect::<Vec<_>>())
        .into_iter()
        .filter_map(|perm| {
            let renamed: Vec<Word> = words
                .iter()
                .map(|w| w.iter().map(|l| crate::groups::Letter::new(perm[l.gen], l.exp)).collect())
                .collect();
            canonical_word_multiset(&renamed).ok()
        })
        .min()
}

fn summarize(spec: &GluingSpec, r: &Resolved) -> Summary {
    let curves = trace_resolved(r);
    let skeleton = skeleton_of(spec, r);
    let disks: Vec<usize> = (0..curves.len()).collect();
    let verdict = orientability_verdict(&skeleton, &curves, &disks);
    let abelian = match presentation_from_complex(spec, &skeleton, &curves) {
        Ok(p) => abelianization(&p),
        // enumerated specs are connected by construction only for n = 1
        Err(_) => AbelianInvariants { rank: usize::MAX, torsion: Vec::new() },
    };
    let words: Vec<Word> = curves.iter().map(|c| c.word.clone()).collect();
    Summary {
        chi: r.piece_count() as i64 - spec.matchings.len() as i64 + curves.len() as i64,
        curve_count: curves.len(),
        embeddable: verdict.embeddable_orientable,
        witness: verdict.witness,
        abelian,
        words: relabel_invariant_words(&words, spec.matchings.len()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusClass {
    pub code: String,
    pub size: usize,
    /// Enumeration index of the first member.
    pub first_index: usize,
    #[serde(skip)]
    pub representative: GluingSpec,
    pub chi: i64,
    pub curve_count: usize,
    pub embeddable: bool,
    pub connected: bool,
    pub abelian: Option<AbelianInvariants>,
    pub cosets: Option<CosetResult>,
    /// Every member agrees on χ, verdict, abelianization and words.
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub pieces: usize,
    pub reflections: bool,
    pub raw_count: usize,
    pub class_count: usize,
    pub embeddable_classes: usize,
    pub classes: Vec<CensusClass>,
    /// Reference counts for comparison, where published.
    pub reference: Option<(usize, usize)>,
}

impl Census {
    pub fn matches_reference(&self) -> Option<bool> {
        self.reference.map(|(c, e)| c == self.class_count && e == self.embeddable_classes)
    }

    pub fn inconsistent_classes(&self) -> Vec<usize> {
        self.classes.iter().enumerate().filter(|(_, c)| !c.consistent).map(|(i, _)| i).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub symmetry: SymmetryOptions,
    pub max_cosets: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { symmetry: SymmetryOptions::default(), max_cosets: 10_000 }
    }
}

pub fn census(n: usize, opts: CensusOptions) -> Result<Census, EnumError> {
    if n == 0 {
        return Err(EnumError::NoPieces);
    }
    let specs: Vec<GluingSpec> = enumerate_gluings(n).collect();
    let analyzed: Vec<(CanonicalCode, Summary, bool)> = specs
        .par_iter()
        .map(|spec| {
            let r = spec.resolve().map_err(EnumError::Invalid)?;
            let code = canonical_resolved(&r, None, opts.symmetry)?;
            let connected = skeleton_of(spec, &r).is_connected();
            Ok((code, summarize(spec, &r), connected))
        })
        .collect::<Result<_, EnumError>>()?;

    let mut by_code: BTreeMap<&CanonicalCode, Vec<usize>> = BTreeMap::new();
    for (i, (code, _, _)) in analyzed.iter().enumerate() {
        by_code.entry(code).or_default().push(i);
    }
    let mut groups: Vec<(&CanonicalCode, Vec<usize>)> = by_code.into_iter().collect();
    groups.sort_by_key(|(_, members)| members[0]);

    let classes: Vec<CensusClass> = groups
        .par_iter()
        .map(|(code, members)| {
            let first = members[0];
            let (_, summary, connected) = &analyzed[first];
            let consistent = members.iter().all(|&m| {
                let s = &analyzed[m].1;
                s.chi == summary.chi
                    && s.embeddable == summary.embeddable
                    && s.abelian == summary.abelian
                    && s.curve_count == summary.curve_count
                    && s.words == summary.words
            });
            let spec = &specs[first];
            let cosets = connected.then(|| {
                let r = spec.resolve().expect("enumerated spec validates");
                let curves = trace_resolved(&r);
                let p = presentation_from_complex(spec, &skeleton_of(spec, &r), &curves)
                    .expect("connected spec has a presentation");
                todd_coxeter(&tietze_simplify(&p), opts.max_cosets)
            });
            CensusClass {
                code: code.to_hex(),
                size: members.len(),
                first_index: first,
                representative: spec.clone(),
                chi: summary.chi,
                curve_count: summary.curve_count,
                embeddable: summary.embeddable,
                connected: *connected,
                abelian: connected.then(|| summary.abelian.clone()),
                cosets,
                consistent,
            }
        })
        .collect();

    let embeddable_classes = classes.iter().filter(|c| c.embeddable).count();
    Ok(Census {
        pieces: n,
        reflections: opts.symmetry.reflections,
        raw_count: specs.len(),
        class_count: classes.len(),
        embeddable_classes,
        classes,
        reference: (n == 1).then_some((REFERENCE_ONE_VERTEX_CLASSES, REFERENCE_ONE_VERTEX_EMBEDDABLE)),
    })
}
