#![allow(dead_code)]

pub mod halfedge;

use rand::seq::SliceRandom;
use rand::Rng;
use spine_core::{DiskPolicy, GluingSpec, Matching, PieceDecl, PieceKind, ProngPerm, TEndSlot};

pub fn piece_name(i: usize) -> String {
    ((b'A' + i as u8) as char).to_string()
}

/// A uniformly random closed gluing of `n` vertex pieces.
pub fn random_vertex_spec<R: Rng>(n: usize, rng: &mut R) -> GluingSpec {
    let mut slots: Vec<usize> = (0..4 * n).collect();
    slots.shuffle(rng);
    let slot = |s: usize| TEndSlot::new(piece_name(s / 4), (s % 4) as u8 + 1);
    let matchings = slots
        .chunks(2)
        .enumerate()
        .map(|(i, pair)| {
            let perm = ProngPerm::ALL[rng.gen_range(0..6)];
            Matching::new(format!("e{}", i + 1), slot(pair[0]), slot(pair[1]), perm)
        })
        .collect();
    let pieces = (0..n).map(|i| PieceDecl::new(piece_name(i), PieceKind::Vertex)).collect();
    GluingSpec::new(pieces, matchings, DiskPolicy::All)
}

pub fn bar_spec(perm: [u8; 3]) -> GluingSpec {
    GluingSpec::new(
        vec![PieceDecl::new("V", PieceKind::Bar)],
        vec![Matching::new("a", TEndSlot::new("V", 1), TEndSlot::new("V", 2), ProngPerm::from_images(perm).unwrap())],
        DiskPolicy::All,
    )
}
