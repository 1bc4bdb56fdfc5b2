//! Brute-force frontier tracing from the polygonal model of the pieces.
//!
//! Each piece is a set of planar polygons ("sheets") with named corner
//! points in R^3. Sheets meet along triple lines. Gluing identifies T-end
//! centers and prong tips. An edge of a sheet lies on the frontier when no
//! other sheet of the piece contains it and it does not end at a T-end
//! center (those are prong segments, which gluing makes interior). The
//! frontier curves are then the cycles of the frontier-edge graph.

use std::collections::{BTreeMap, HashMap};

use spine_core::{GluingSpec, Letter, PieceKind, TipIndex, Word};

pub type Point = (&'static str, [i32; 3]);

pub const VERTEX_POINTS: [Point; 21] = [
    ("O", [0, 0, 0]),
    ("O1", [2, 0, 0]),
    ("O2", [0, 2, 0]),
    ("O3", [-2, 0, 0]),
    ("O4", [0, -2, 0]),
    ("O5", [1, 1, 0]),
    ("O6", [-1, 1, 0]),
    ("O7", [-1, -1, 0]),
    ("O8", [1, -1, 0]),
    ("O11", [2, -1, 0]),
    ("O12", [2, 1, 0]),
    ("O13", [2, 0, -1]),
    ("O21", [-1, 2, 0]),
    ("O22", [1, 2, 0]),
    ("O23", [0, 2, 1]),
    ("O31", [-2, 1, 0]),
    ("O32", [-2, -1, 0]),
    ("O33", [-2, 0, -1]),
    ("O41", [1, -2, 0]),
    ("O42", [-1, -2, 0]),
    ("O43", [0, -2, 1]),
];

/// The horizontal cell cut into quadrants by the two triple lines, plus the
/// two vertical half cells.
pub const VERTEX_SHEETS: [&[&str]; 6] = [
    &["O", "O1", "O12", "O5", "O22", "O2"],
    &["O", "O2", "O21", "O6", "O31", "O3"],
    &["O", "O3", "O32", "O7", "O42", "O4"],
    &["O", "O4", "O41", "O8", "O11", "O1"],
    &["O", "O1", "O13", "O33", "O3"],
    &["O", "O2", "O23", "O43", "O4"],
];

pub const BAR_POINTS: [Point; 9] = [
    ("O", [0, 0, 0]),
    ("O1", [2, 0, 0]),
    ("O3", [-2, 0, 0]),
    ("O11", [2, -1, 0]),
    ("O12", [2, 1, 0]),
    ("O13", [2, 0, 1]),
    ("O31", [-2, 1, 0]),
    ("O32", [-2, -1, 0]),
    ("O33", [-2, 0, 1]),
];

/// Upper and lower halves of the horizontal strip, and the vertical fin.
pub const BAR_SHEETS: [&[&str]; 3] =
    [&["O", "O1", "O12", "O31", "O3"], &["O", "O3", "O32", "O11", "O1"], &["O", "O1", "O13", "O33", "O3"]];

pub fn points(kind: PieceKind) -> &'static [Point] {
    match kind {
        PieceKind::Vertex => &VERTEX_POINTS,
        PieceKind::Bar => &BAR_POINTS,
    }
}

pub fn sheets(kind: PieceKind) -> &'static [&'static [&'static str]] {
    match kind {
        PieceKind::Vertex => &VERTEX_SHEETS,
        PieceKind::Bar => &BAR_SHEETS,
    }
}

pub fn coords(kind: PieceKind, name: &str) -> [i32; 3] {
    points(kind).iter().find(|(n, _)| *n == name).map(|(_, c)| *c).expect("known point")
}

/// T-end number for a center or tip name: the bar's far end is labelled 3
/// geometrically and 2 combinatorially.
fn t_end_of(kind: PieceKind, digit: u8) -> u8 {
    match (kind, digit) {
        (PieceKind::Bar, 3) => 2,
        (_, d) => d,
    }
}

fn geometric_digit(kind: PieceKind, t_end: u8) -> u8 {
    match (kind, t_end) {
        (PieceKind::Bar, 2) => 3,
        (_, t) => t,
    }
}

/// Tip index named by a point such as `O12`, if it is a prong tip.
pub fn tip_of(kind: PieceKind, name: &str) -> Option<TipIndex> {
    let digits = name.strip_prefix('O')?.as_bytes();
    (digits.len() == 2).then(|| TipIndex::new(t_end_of(kind, digits[0] - b'0'), digits[1] - b'0'))
}

fn center_of(kind: PieceKind, name: &str) -> Option<u8> {
    let digits = name.strip_prefix('O')?.as_bytes();
    let d = *digits.first()?;
    (digits.len() == 1 && (1..=4).contains(&(d - b'0')) && (kind == PieceKind::Vertex || d != b'2'))
        .then(|| t_end_of(kind, d - b'0'))
}

pub fn tip_name(kind: PieceKind, tip: TipIndex) -> String {
    format!("O{}{}", geometric_digit(kind, tip.t_end), tip.prong)
}

/// Frontier edges of one piece as point-name pairs.
pub fn frontier_edges(kind: PieceKind) -> Vec<(&'static str, &'static str)> {
    let mut count: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for sheet in sheets(kind) {
        for i in 0..sheet.len() {
            let (a, b) = (sheet[i], sheet[(i + 1) % sheet.len()]);
            *count.entry(if a < b { (a, b) } else { (b, a) }).or_default() += 1;
        }
    }
    let mut out = Vec::new();
    for sheet in sheets(kind) {
        for i in 0..sheet.len() {
            let (a, b) = (sheet[i], sheet[(i + 1) % sheet.len()]);
            let key = if a < b { (a, b) } else { (b, a) };
            if count[&key] == 1 && center_of(kind, a).is_none() && center_of(kind, b).is_none() {
                out.push((a, b));
            }
        }
    }
    out
}

/// Frontier curves as (piece, tip) sequences in the tracer's convention:
/// start at the least unvisited tip, walk inside its piece to the next tip,
/// then cross the gluing; the letter is `+1` when leaving a left slot.
pub fn frontier_curves(spec: &GluingSpec) -> Vec<(Vec<(usize, TipIndex)>, Word)> {
    let kinds: Vec<PieceKind> = spec.pieces.iter().map(|p| p.kind).collect();
    let piece_of = |name: &str| spec.pieces.iter().position(|p| p.name == name).expect("known piece");

    // frontier edges with identity; endpoints as (piece, point)
    let mut edges: Vec<[(usize, &str); 2]> = Vec::new();
    for (p, &kind) in kinds.iter().enumerate() {
        for (a, b) in frontier_edges(kind) {
            edges.push([(p, a), (p, b)]);
        }
    }
    // glued tips: (piece, tip) -> (other piece, other tip, matching, exp)
    let mut glue: HashMap<(usize, TipIndex), (usize, TipIndex, usize, i8)> = HashMap::new();
    for (mi, m) in spec.matchings.iter().enumerate() {
        let (lp, rp) = (piece_of(&m.left.piece), piece_of(&m.right.piece));
        for k in 1..=3u8 {
            let l = TipIndex::new(m.left.t_end, k);
            let r = TipIndex::new(m.right.t_end, m.perm.apply(k));
            glue.insert((lp, l), (rp, r, mi, 1));
            glue.insert((rp, r), (lp, l, mi, -1));
        }
    }
    // incidences at each point of each piece
    let mut at: HashMap<(usize, &str), Vec<(usize, usize)>> = HashMap::new();
    for (e, ends) in edges.iter().enumerate() {
        for (side, &end) in ends.iter().enumerate() {
            at.entry(end).or_default().push((e, side));
        }
    }

    let mut all_tips: Vec<(usize, TipIndex)> =
        kinds.iter().enumerate().flat_map(|(p, k)| k.tips().map(move |t| (p, t))).collect();
    all_tips.sort();
    let mut used = vec![false; edges.len()];
    let mut curves = Vec::new();
    for &start in &all_tips {
        let start_name = tip_name(kinds[start.0], start.1);
        let start_incidence = at[&(start.0, start_name.as_str())][0];
        if used[start_incidence.0] {
            continue;
        }
        let mut tips = Vec::new();
        let mut word = Vec::new();
        let mut here = start;
        loop {
            tips.push(here);
            // walk inside the piece until another tip is reached
            let name = tip_name(kinds[here.0], here.1);
            let (mut e, mut side) = at[&(here.0, name.as_str())][0];
            let exit = loop {
                used[e] = true;
                let (p, point) = edges[e][1 - side];
                if let Some(t) = tip_of(kinds[p], point) {
                    break (p, t);
                }
                let next = at[&(p, point)].iter().copied().find(|&(f, _)| f != e).expect("degree two");
                (e, side) = next;
            };
            tips.push(exit);
            let (q, t, mi, exp) = glue[&exit];
            word.push(Letter::new(mi, exp));
            here = (q, t);
            if here == start {
                break;
            }
        }
        curves.push((tips, word));
    }
    curves
}
