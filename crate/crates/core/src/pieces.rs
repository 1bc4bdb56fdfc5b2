//! Local building blocks of a standard complex.
//!
//! A *vertex* piece is the neighborhood of a vertex point: three 2-cells
//! meeting along two crossing triple lines, ending in four T-ends. A *bar*
//! piece is the neighborhood of a segment of triple line, with two T-ends.
//! Only the combinatorics is kept: every T-end has three prong tips, and the
//! frontier of the piece is a perfect matching of its tips by internal arcs.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    Vertex,
    Bar,
}

impl PieceKind {
    pub const ALL: [PieceKind; 2] = [PieceKind::Vertex, PieceKind::Bar];

    pub fn t_end_count(self) -> u8 {
        match self {
            PieceKind::Vertex => 4,
            PieceKind::Bar => 2,
        }
    }

    pub fn tip_count(self) -> usize {
        3 * self.t_end_count() as usize
    }

    pub fn keyword(self) -> &'static str {
        match self {
            PieceKind::Vertex => "vertex",
            PieceKind::Bar => "bar",
        }
    }

    /// All tips of the piece in (t_end, prong) order.
    pub fn tips(self) -> impl Iterator<Item = TipIndex> {
        (0..self.tip_count()).map(TipIndex::from_offset)
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Prong `prong` of T-end `t_end`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TipIndex {
    pub t_end: u8,
    pub prong: u8,
}

impl TipIndex {
    pub const fn new(t_end: u8, prong: u8) -> Self {
        TipIndex { t_end, prong }
    }

    pub fn is_valid_for(self, kind: PieceKind) -> bool {
        (1..=kind.t_end_count()).contains(&self.t_end) && (1..=3).contains(&self.prong)
    }

    /// Position of the tip in the piece's tip order, 0-based.
    pub fn offset(self) -> usize {
        3 * (self.t_end as usize - 1) + (self.prong as usize - 1)
    }

    pub fn from_offset(offset: usize) -> Self {
        TipIndex { t_end: (offset / 3) as u8 + 1, prong: (offset % 3) as u8 + 1 }
    }
}

impl fmt::Display for TipIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.t_end, self.prong)
    }
}

/// A bijection of the prong labels {1, 2, 3}.
///
/// `images[k - 1]` is the image of prong `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProngPerm {
    images: [u8; 3],
}

impl ProngPerm {
    pub const IDENTITY: ProngPerm = ProngPerm { images: [1, 2, 3] };

    /// The six permutations, in lexicographic order of their image lists.
    pub const ALL: [ProngPerm; 6] = [
        ProngPerm { images: [1, 2, 3] },
        ProngPerm { images: [1, 3, 2] },
        ProngPerm { images: [2, 1, 3] },
        ProngPerm { images: [2, 3, 1] },
        ProngPerm { images: [3, 1, 2] },
        ProngPerm { images: [3, 2, 1] },
    ];

    /// Builds the permutation `1 ↦ images[0], 2 ↦ images[1], 3 ↦ images[2]`.
    pub fn from_images(images: [u8; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &p in &images {
            if !(1..=3).contains(&p) || seen[p as usize - 1] {
                return None;
            }
            seen[p as usize - 1] = true;
        }
        Some(ProngPerm { images })
    }

    pub fn images(self) -> [u8; 3] {
        self.images
    }

    pub fn apply(self, prong: u8) -> u8 {
        self.images[prong as usize - 1]
    }

    pub fn inverse(self) -> Self {
        let mut images = [0; 3];
        for k in 1..=3u8 {
            images[self.apply(k) as usize - 1] = k;
        }
        ProngPerm { images }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: ProngPerm) -> Self {
        let mut images = [0; 3];
        for k in 1..=3u8 {
            images[k as usize - 1] = self.apply(other.apply(k));
        }
        ProngPerm { images }
    }

    pub fn is_even(self) -> bool {
        let [a, b, c] = self.images;
        let inversions = (a > b) as u8 + (a > c) as u8 + (b > c) as u8;
        inversions.is_multiple_of(2)
    }

    /// Index into [`ProngPerm::ALL`].
    pub fn index(self) -> usize {
        ProngPerm::ALL.iter().position(|&p| p == self).unwrap()
    }
}

impl fmt::Display for ProngPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.images;
        write!(f, "({a} {b} {c})")
    }
}

/// Two tips as (T-end, prong) joined by one arc.
type ArcPair = ((u8, u8), (u8, u8));

/// The frontier arcs of a piece: a fixed-point-free involution on its tips.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalArcTable {
    kind: PieceKind,
    partner: Vec<usize>,
}

impl InternalArcTable {
    fn from_pairs(kind: PieceKind, pairs: &[ArcPair]) -> Self {
        let mut partner = vec![usize::MAX; kind.tip_count()];
        for &((t1, p1), (t2, p2)) in pairs {
            let a = TipIndex::new(t1, p1).offset();
            let b = TipIndex::new(t2, p2).offset();
            partner[a] = b;
            partner[b] = a;
        }
        debug_assert!(partner.iter().all(|&p| p != usize::MAX));
        InternalArcTable { kind, partner }
    }

    pub fn kind(&self) -> PieceKind {
        self.kind
    }

    pub fn partner(&self, tip: TipIndex) -> TipIndex {
        TipIndex::from_offset(self.partner[tip.offset()])
    }

    pub(crate) fn partner_offset(&self, offset: usize) -> usize {
        self.partner[offset]
    }

    /// Arcs as unordered pairs, each listed once with the smaller tip first.
    pub fn arcs(&self) -> Vec<(TipIndex, TipIndex)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(a, &b)| a < b)
            .map(|(a, &b)| (TipIndex::from_offset(a), TipIndex::from_offset(b)))
            .collect()
    }

    pub fn contains(&self, a: TipIndex, b: TipIndex) -> bool {
        a != b && self.partner[a.offset()] == b.offset()
    }
}

// Segments of the frontier read off the coordinates of the model pieces.
// Vertex: the four quarter-arcs of the horizontal cell, plus one arc on each
// vertical half-cell. Bar: the three long edges of the rectangle and its fin.
const VERTEX_ARCS: [ArcPair; 6] =
    [((1, 2), (2, 2)), ((2, 1), (3, 1)), ((3, 2), (4, 2)), ((4, 1), (1, 1)), ((1, 3), (3, 3)), ((2, 3), (4, 3))];

const BAR_ARCS: [ArcPair; 3] = [((1, 2), (2, 1)), ((1, 1), (2, 2)), ((1, 3), (2, 3))];

pub fn internal_arcs(kind: PieceKind) -> &'static InternalArcTable {
    static VERTEX: OnceLock<InternalArcTable> = OnceLock::new();
    static BAR: OnceLock<InternalArcTable> = OnceLock::new();
    match kind {
        PieceKind::Vertex => VERTEX.get_or_init(|| InternalArcTable::from_pairs(PieceKind::Vertex, &VERTEX_ARCS)),
        PieceKind::Bar => BAR.get_or_init(|| InternalArcTable::from_pairs(PieceKind::Bar, &BAR_ARCS)),
    }
}

/// A permutation of a piece's tips that maps T-ends to T-ends and arcs to arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PieceSymmetry {
    /// `t_end_perm[i - 1]` is the image of T-end `i`.
    t_end_perm: Vec<u8>,
    /// Prong bijection carried along with each T-end.
    prong_maps: Vec<ProngPerm>,
}

impl PieceSymmetry {
    pub fn identity(kind: PieceKind) -> Self {
        let n = kind.t_end_count();
        PieceSymmetry { t_end_perm: (1..=n).collect(), prong_maps: vec![ProngPerm::IDENTITY; n as usize] }
    }

    pub fn new(t_end_perm: Vec<u8>, prong_maps: Vec<ProngPerm>) -> Self {
        assert_eq!(t_end_perm.len(), prong_maps.len());
        PieceSymmetry { t_end_perm, prong_maps }
    }

    pub fn t_end_count(&self) -> u8 {
        self.t_end_perm.len() as u8
    }

    pub fn map_t_end(&self, t_end: u8) -> u8 {
        self.t_end_perm[t_end as usize - 1]
    }

    pub fn prong_map(&self, t_end: u8) -> ProngPerm {
        self.prong_maps[t_end as usize - 1]
    }

    pub fn apply(&self, tip: TipIndex) -> TipIndex {
        let i = tip.t_end as usize - 1;
        TipIndex::new(self.t_end_perm[i], self.prong_maps[i].apply(tip.prong))
    }

    pub(crate) fn apply_offset(&self, offset: usize) -> usize {
        self.apply(TipIndex::from_offset(offset)).offset()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PieceSymmetry) -> PieceSymmetry {
        let n = self.t_end_perm.len();
        let mut t_end_perm = Vec::with_capacity(n);
        let mut prong_maps = Vec::with_capacity(n);
        for i in 0..n {
            let mid = other.t_end_perm[i];
            t_end_perm.push(self.map_t_end(mid));
            prong_maps.push(self.prong_map(mid).compose(other.prong_maps[i]));
        }
        PieceSymmetry { t_end_perm, prong_maps }
    }

    pub fn inverse(&self) -> PieceSymmetry {
        let n = self.t_end_perm.len();
        let mut t_end_perm = vec![0; n];
        let mut prong_maps = vec![ProngPerm::IDENTITY; n];
        for i in 0..n {
            let j = self.t_end_perm[i] as usize - 1;
            t_end_perm[j] = i as u8 + 1;
            prong_maps[j] = self.prong_maps[i].inverse();
        }
        PieceSymmetry { t_end_perm, prong_maps }
    }

    pub fn preserves(&self, arcs: &InternalArcTable) -> bool {
        arcs.arcs().into_iter().all(|(a, b)| arcs.contains(self.apply(a), self.apply(b)))
    }

    /// True when the prong relabelings reverse the handedness of the T-ends.
    ///
    /// All T-ends of one piece share a handedness in the fixed prong
    /// labeling, so the prong maps of a symmetry are either all even
    /// (orientation-preserving) or all odd.
    pub fn is_reflection(&self) -> bool {
        !self.prong_maps[0].is_even()
    }
}

fn permutations(n: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (1..=n).collect();
    heap_permute(n as usize, &mut current, &mut out);
    out.sort();
    out
}

fn heap_permute(k: usize, items: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    heap_permute(k - 1, items, out);
    for i in 0..k - 1 {
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
        heap_permute(k - 1, items, out);
    }
}

fn brute_force_symmetries(kind: PieceKind) -> Vec<PieceSymmetry> {
    let arcs = internal_arcs(kind);
    let n = kind.t_end_count() as usize;
    let mut found = Vec::new();
    for t_end_perm in permutations(n as u8) {
        // mixed-radix counter over one prong bijection per T-end
        let mut digits = vec![0usize; n];
        loop {
            let prong_maps = digits.iter().map(|&d| ProngPerm::ALL[d]).collect();
            let candidate = PieceSymmetry::new(t_end_perm.clone(), prong_maps);
            if candidate.preserves(arcs) {
                found.push(candidate);
            }
            let mut pos = 0;
            while pos < n && digits[pos] == 5 {
                digits[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
            digits[pos] += 1;
        }
    }
    found
}

/// All arc-preserving symmetries of the piece, identity first.
pub fn piece_symmetries(kind: PieceKind) -> &'static [PieceSymmetry] {
    static VERTEX: OnceLock<Vec<PieceSymmetry>> = OnceLock::new();
    static BAR: OnceLock<Vec<PieceSymmetry>> = OnceLock::new();
    let cell = match kind {
        PieceKind::Vertex => &VERTEX,
        PieceKind::Bar => &BAR,
    };
    cell.get_or_init(|| brute_force_symmetries(kind))
}
