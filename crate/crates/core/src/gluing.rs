//! Gluing specifications: pieces, T-end matchings and the disk policy.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::pieces::{internal_arcs, PieceKind, ProngPerm, TipIndex};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TEndSlot {
    pub piece: String,
    pub t_end: u8,
}

impl TEndSlot {
    pub fn new(piece: impl Into<String>, t_end: u8) -> Self {
        TEndSlot { piece: piece.into(), t_end }
    }
}

impl fmt::Display for TEndSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.piece, self.t_end)
    }
}

/// Identification of two T-ends: left prong `k` is glued to right prong
/// `perm(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    pub id: String,
    pub left: TEndSlot,
    pub right: TEndSlot,
    pub perm: ProngPerm,
}

impl Matching {
    pub fn new(id: impl Into<String>, left: TEndSlot, right: TEndSlot, perm: ProngPerm) -> Self {
        Matching { id: id.into(), left, right, perm }
    }

    pub fn parity(&self) -> Parity {
        matching_parity(self.perm)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

pub fn matching_parity(perm: ProngPerm) -> Parity {
    if perm.is_even() {
        Parity::Even
    } else {
        Parity::Odd
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PieceDecl {
    pub name: String,
    pub kind: PieceKind,
}

impl PieceDecl {
    pub fn new(name: impl Into<String>, kind: PieceKind) -> Self {
        PieceDecl { name: name.into(), kind }
    }
}

/// Which boundary curves receive a disk. Explicit indices refer to the
/// tracer's deterministic curve order (0-based).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum DiskPolicy {
    #[default]
    All,
    Explicit(Vec<usize>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GluingSpec {
    pub pieces: Vec<PieceDecl>,
    pub matchings: Vec<Matching>,
    pub disks: DiskPolicy,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("T-end {slot} is not matched")]
    UnmatchedTEnd { slot: TEndSlot },
    #[error("T-end {slot} is matched {count} times ({matchings:?})")]
    DoublyMatchedTEnd { slot: TEndSlot, count: usize, matchings: Vec<String> },
    #[error("matching {matching} glues T-end {slot} to itself")]
    SelfMatchedTEnd { matching: String, slot: TEndSlot },
    #[error("matching {matching} refers to unknown piece {piece}")]
    UnknownPiece { matching: String, piece: String },
    #[error("matching {matching} refers to T-end {slot}, which does not exist on a {kind} piece")]
    InvalidTEnd { matching: String, slot: TEndSlot, kind: PieceKind },
    #[error("duplicate name {name}")]
    DuplicateName { name: String },
}

/// A validated spec in index form: pieces by position, tips by a global
/// index ordered by (piece, t_end, prong).
#[derive(Clone, Debug)]
pub struct Resolved {
    pub(crate) kinds: Vec<PieceKind>,
    pub(crate) tip_offset: Vec<usize>,
    /// (piece index, t_end) of each matching's left and right slot.
    pub(crate) ends: Vec<((usize, u8), (usize, u8))>,
    /// For every global tip: glued tip, matching index, +1 when the tip sits
    /// on the matching's left slot.
    pub(crate) glue: Vec<(usize, usize, i8)>,
}

impl Resolved {
    pub fn piece_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn tip_count(&self) -> usize {
        self.glue.len()
    }

    pub fn global_tip(&self, piece: usize, tip: TipIndex) -> usize {
        self.tip_offset[piece] + tip.offset()
    }

    pub fn split_tip(&self, global: usize) -> (usize, TipIndex) {
        let piece = self.tip_offset.partition_point(|&o| o <= global) - 1;
        (piece, TipIndex::from_offset(global - self.tip_offset[piece]))
    }

    /// Partner of a global tip along its piece's internal arc.
    pub fn arc_partner(&self, global: usize) -> usize {
        let (piece, tip) = self.split_tip(global);
        let arcs = internal_arcs(self.kinds[piece]);
        self.tip_offset[piece] + arcs.partner_offset(tip.offset())
    }

    /// Tip glued to `global`, the matching doing it, and the crossing
    /// exponent when leaving through `global`.
    pub fn glued(&self, global: usize) -> (usize, usize, i8) {
        self.glue[global]
    }
}

impl GluingSpec {
    pub fn new(pieces: Vec<PieceDecl>, matchings: Vec<Matching>, disks: DiskPolicy) -> Self {
        GluingSpec { pieces, matchings, disks }
    }

    pub fn piece_index(&self, name: &str) -> Option<usize> {
        self.pieces.iter().position(|p| p.name == name)
    }

    pub fn matching_index(&self, id: &str) -> Option<usize> {
        self.matchings.iter().position(|m| m.id == id)
    }

    pub fn t_end_total(&self) -> usize {
        self.pieces.iter().map(|p| p.kind.t_end_count() as usize).sum()
    }

    pub fn validate(&self) -> Result<(), Vec<ValidationError>> {
        self.resolve().map(|_| ())
    }

    /// Validates and converts to index form.
    pub fn resolve(&self) -> Result<Resolved, Vec<ValidationError>> {
        let mut errors = Vec::new();

        let mut names = HashSet::new();
        for p in &self.pieces {
            if !names.insert(p.name.as_str()) {
                errors.push(ValidationError::DuplicateName { name: p.name.clone() });
            }
        }
        let mut ids = HashSet::new();
        for m in &self.matchings {
            if !ids.insert(m.id.as_str()) {
                errors.push(ValidationError::DuplicateName { name: m.id.clone() });
            }
        }

        let by_name: HashMap<&str, usize> =
            self.pieces.iter().enumerate().rev().map(|(i, p)| (p.name.as_str(), i)).collect();

        let mut uses: BTreeMap<(usize, u8), Vec<String>> = BTreeMap::new();
        let mut ends = Vec::with_capacity(self.matchings.len());
        for m in &self.matchings {
            let mut resolve_slot = |slot: &TEndSlot| -> Option<(usize, u8)> {
                let Some(&piece) = by_name.get(slot.piece.as_str()) else {
                    errors.push(ValidationError::UnknownPiece { matching: m.id.clone(), piece: slot.piece.clone() });
                    return None;
                };
                let kind = self.pieces[piece].kind;
                if !(1..=kind.t_end_count()).contains(&slot.t_end) {
                    errors.push(ValidationError::InvalidTEnd { matching: m.id.clone(), slot: slot.clone(), kind });
                    return None;
                }
                Some((piece, slot.t_end))
            };
            let left = resolve_slot(&m.left);
            let right = resolve_slot(&m.right);
            if let (Some(l), Some(r)) = (left, right) {
                if l == r {
                    errors.push(ValidationError::SelfMatchedTEnd { matching: m.id.clone(), slot: m.left.clone() });
                } else {
                    uses.entry(l).or_default().push(m.id.clone());
                    uses.entry(r).or_default().push(m.id.clone());
                }
                ends.push((l, r));
            }
        }

        for (i, p) in self.pieces.iter().enumerate() {
            for t in 1..=p.kind.t_end_count() {
                let slot = TEndSlot::new(p.name.clone(), t);
                match uses.get(&(i, t)) {
                    None => {
                        // a self-matched slot was already reported
                        let self_matched = errors.iter().any(|e| {
                            matches!(e,
                            ValidationError::SelfMatchedTEnd { slot: s, .. } if *s == slot)
                        });
                        if !self_matched {
                            errors.push(ValidationError::UnmatchedTEnd { slot });
                        }
                    }
                    Some(ms) if ms.len() > 1 => {
                        errors.push(ValidationError::DoublyMatchedTEnd { slot, count: ms.len(), matchings: ms.clone() })
                    }
                    Some(_) => {}
                }
            }
        }

        if !errors.is_empty() {
            return Err(errors);
        }

        let kinds: Vec<PieceKind> = self.pieces.iter().map(|p| p.kind).collect();
        let mut tip_offset = Vec::with_capacity(kinds.len());
        let mut total = 0;
        for k in &kinds {
            tip_offset.push(total);
            total += k.tip_count();
        }
        let mut glue = vec![(usize::MAX, usize::MAX, 0); total];
        for (mi, (m, &((lp, lt), (rp, rt)))) in self.matchings.iter().zip(&ends).enumerate() {
            for k in 1..=3u8 {
                let a = tip_offset[lp] + TipIndex::new(lt, k).offset();
                let b = tip_offset[rp] + TipIndex::new(rt, m.perm.apply(k)).offset();
                glue[a] = (b, mi, 1);
                glue[b] = (a, mi, -1);
            }
        }
        Ok(Resolved { kinds, tip_offset, ends, glue })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonEdge {
    pub id: String,
    pub from: usize,
    pub to: usize,
    pub parity: Parity,
}

/// The intrinsic 1-skeleton: one node per piece, one oriented edge per
/// matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<SkeletonEdge>,
    /// Connected component of every node, numbered by first appearance.
    pub component_of: Vec<usize>,
}

impl SkeletonGraph {
    pub fn component_count(&self) -> usize {
        self.component_of.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Degree of each node; a loop counts twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.edges {
            deg[e.from] += 1;
            deg[e.to] += 1;
        }
        deg
    }

    pub fn parities(&self) -> Vec<Parity> {
        self.edges.iter().map(|e| e.parity).collect()
    }

    /// Breadth-first spanning forest from node 0, edges scanned in
    /// declaration order. Returns tree-edge indices.
    pub fn spanning_tree(&self) -> Vec<usize> {
        let n = self.nodes.len();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.from].push(i);
            if e.to != e.from {
                incident[e.to].push(i);
            }
        }
        for list in &mut incident {
            list.sort_unstable();
        }
        let mut seen = vec![false; n];
        let mut tree = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &ei in &incident[v] {
                    let e = &self.edges[ei];
                    let w = if e.from == v { e.to } else { e.from };
                    if !seen[w] {
                        seen[w] = true;
                        tree.push(ei);
                        queue.push_back(w);
                    }
                }
            }
        }
        tree
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn build_skeleton(spec: &GluingSpec) -> Result<SkeletonGraph, Vec<ValidationError>> {
    let resolved = spec.resolve()?;
    Ok(skeleton_of(spec, &resolved))
}

pub(crate) fn skeleton_of(spec: &GluingSpec, resolved: &Resolved) -> SkeletonGraph {
    let n = resolved.piece_count();
    let mut parent: Vec<usize> = (0..n).collect();
    let edges: Vec<SkeletonEdge> = spec
        .matchings
        .iter()
        .zip(&resolved.ends)
        .map(|(m, &((from, _), (to, _)))| {
            let (a, b) = (find(&mut parent, from), find(&mut parent, to));
            parent[a.max(b)] = a.min(b);
            SkeletonEdge { id: m.id.clone(), from, to, parity: m.parity() }
        })
        .collect();
    let mut label = HashMap::new();
    let component_of = (0..n)
        .map(|v| {
            let root = find(&mut parent, v);
            let next = label.len();
            *label.entry(root).or_insert(next)
        })
        .collect();
    SkeletonGraph { nodes: spec.pieces.iter().map(|p| p.name.clone()).collect(), edges, component_of }
}
