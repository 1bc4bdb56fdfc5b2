//! Tracing the frontier curves of the regular neighborhood of the skeleton.
//!
//! Each frontier curve alternates between an internal arc of a piece and a
//! crossing through a glued prong tip into the neighboring piece. Every
//! crossing runs along the 1-cell of the matching that did the gluing, so
//! the curve's word in the oriented 1-cells is read off the crossings.

use std::fmt;

use thiserror::Error;

use crate::gluing::{GluingSpec, Resolved, ValidationError};
use crate::groups::word::{cyclic_canonical, Letter, Word};
use crate::pieces::TipIndex;

/// Letter over the matching alphabet: `gen` is the matching index and
/// exponent `+1` means crossing from the left slot to the right slot.
pub type EdgeLetter = Letter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlobalTip {
    pub piece: usize,
    pub tip: TipIndex,
}

impl GlobalTip {
    pub fn display<'a>(&self, spec: &'a GluingSpec) -> impl fmt::Display + 'a {
        let GlobalTip { piece, tip } = *self;
        DisplayTip { name: &spec.pieces[piece].name, tip }
    }
}

struct DisplayTip<'a> {
    name: &'a str,
    tip: TipIndex,
}

impl fmt::Display for DisplayTip<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.name, self.tip)
    }
}

/// One closed frontier curve.
///
/// `tips` lists the tips in traversal order: `tips[2i]` is the tip where
/// arc step `i` starts, `tips[2i + 1]` where it ends and crossing `i` starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCurve {
    pub tips: Vec<GlobalTip>,
    pub word: Vec<EdgeLetter>,
}

pub fn trace_boundary(spec: &GluingSpec) -> Result<Vec<BoundaryCurve>, Vec<ValidationError>> {
    Ok(trace_resolved(&spec.resolve()?))
}

pub(crate) fn trace_resolved(r: &Resolved) -> Vec<BoundaryCurve> {
    trace_global(r)
        .into_iter()
        .map(|(tips, word)| BoundaryCurve {
            tips: tips
                .into_iter()
                .map(|g| {
                    let (piece, tip) = r.split_tip(g);
                    GlobalTip { piece, tip }
                })
                .collect(),
            word,
        })
        .collect()
}

/// Curves as global tip indices; used directly by the enumerator.
pub(crate) fn trace_global(r: &Resolved) -> Vec<(Vec<usize>, Word)> {
    let n = r.tip_count();
    let mut visited = vec![false; n];
    let mut curves = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut tips = Vec::new();
        let mut word = Vec::new();
        let mut cur = start;
        loop {
            let exit = r.arc_partner(cur);
            visited[cur] = true;
            visited[exit] = true;
            tips.push(cur);
            tips.push(exit);
            let (next, matching, exp) = r.glued(exit);
            word.push(Letter::new(matching, exp));
            cur = next;
            if cur == start {
                break;
            }
        }
        curves.push((tips, word));
    }
    curves
}

pub const MAX_FLIP_ALPHABET: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("orientation search over {0} edges exceeds the limit of {MAX_FLIP_ALPHABET}")]
    AlphabetTooLarge(usize),
}

fn alphabet(words: &[&[Letter]]) -> Vec<usize> {
    let mut gens: Vec<usize> = words.iter().flat_map(|w| w.iter().map(|l| l.gen)).collect();
    gens.sort_unstable();
    gens.dedup();
    gens
}

fn flip(word: &[Letter], gens: &[usize], mask: u32) -> Word {
    word.iter()
        .map(|&l| match gens.binary_search(&l.gen) {
            Ok(i) if mask >> i & 1 == 1 => l.inverse(),
            _ => l,
        })
        .collect()
}

/// Least form of `word` over rotations, inversion and all orientation
/// flips of the edges it uses.
pub fn canonical_word(word: &[Letter]) -> Result<Word, CanonError> {
    let gens = alphabet(&[word]);
    if gens.len() > MAX_FLIP_ALPHABET {
        return Err(CanonError::AlphabetTooLarge(gens.len()));
    }
    Ok((0..1u32 << gens.len()).map(|mask| cyclic_canonical(&flip(word, &gens, mask))).min().unwrap_or_default())
}

/// Least sorted multiset of cyclic forms, over one orientation flip
/// assignment shared by all words.
pub fn canonical_word_multiset<W: AsRef<[Letter]>>(words: &[W]) -> Result<Vec<Word>, CanonError> {
    let refs: Vec<&[Letter]> = words.iter().map(|w| w.as_ref()).collect();
    let gens = alphabet(&refs);
    if gens.len() > MAX_FLIP_ALPHABET {
        return Err(CanonError::AlphabetTooLarge(gens.len()));
    }
    Ok((0..1u32 << gens.len())
        .map(|mask| {
            let mut forms: Vec<Word> = refs.iter().map(|w| cyclic_canonical(&flip(w, &gens, mask))).collect();
            forms.sort();
            forms
        })
        .min()
        .unwrap_or_default())
}

/// Sorted cyclic forms without any orientation flips.
pub fn cyclic_word_multiset<W: AsRef<[Letter]>>(words: &[W]) -> Vec<Word> {
    let mut forms: Vec<Word> = words.iter().map(|w| cyclic_canonical(w.as_ref())).collect();
    forms.sort();
    forms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::{DiskPolicy, Matching, PieceDecl, TEndSlot};
    use crate::groups::word::parse_word;
    use crate::pieces::{PieceKind, ProngPerm};

    fn perm(a: u8, b: u8, c: u8) -> ProngPerm {
        ProngPerm::from_images([a, b, c]).unwrap()
    }

    fn one_vertex(p1: ProngPerm, p2: ProngPerm) -> GluingSpec {
        GluingSpec::new(
            vec![PieceDecl::new("O", PieceKind::Vertex)],
            vec![
                Matching::new("a", TEndSlot::new("O", 1), TEndSlot::new("O", 3), p1),
                Matching::new("b", TEndSlot::new("O", 2), TEndSlot::new("O", 4), p2),
            ],
            DiskPolicy::All,
        )
    }

    fn bar(p: ProngPerm) -> GluingSpec {
        GluingSpec::new(
            vec![PieceDecl::new("V", PieceKind::Bar)],
            vec![Matching::new("a", TEndSlot::new("V", 1), TEndSlot::new("V", 2), p)],
            DiskPolicy::All,
        )
    }

    fn words(names: &[&str], texts: &[&str]) -> Vec<Word> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        texts.iter().map(|t| parse_word(t, &names).unwrap()).collect()
    }

    #[test]
    fn ball_spine_words() {
        let spec = one_vertex(perm(2, 1, 3), perm(1, 3, 2));
        let curves = trace_boundary(&spec).unwrap();
        assert_eq!(curves.len(), 2);
        // hand trace from tip 1.1
        assert_eq!(curves[0].word, words(&["a", "b"], &["b^-1 a^-1 b b a^-1"])[0]);
        let traced: Vec<Word> = curves.iter().map(|c| c.word.clone()).collect();
        assert_eq!(
            canonical_word_multiset(&traced).unwrap(),
            canonical_word_multiset(&words(&["a", "b"], &["a b^-1 a b^2", "a"])).unwrap()
        );
    }

    #[test]
    fn bar_even_and_odd() {
        let curves = trace_boundary(&bar(ProngPerm::IDENTITY)).unwrap();
        let traced: Vec<Word> = curves.iter().map(|c| c.word.clone()).collect();
        assert_eq!(
            canonical_word_multiset(&traced).unwrap(),
            canonical_word_multiset(&words(&["a"], &["a", "a a"])).unwrap()
        );
        let curves = trace_boundary(&bar(perm(1, 3, 2))).unwrap();
        assert_eq!(curves.len(), 1);
        assert_eq!(canonical_word(&curves[0].word).unwrap(), words(&["a"], &["a^3"])[0]);
    }

    #[test]
    fn tips_alternate_with_letters() {
        let spec = one_vertex(perm(2, 1, 3), perm(2, 1, 3));
        let curves = trace_boundary(&spec).unwrap();
        let mut all: Vec<GlobalTip> = curves.iter().flat_map(|c| c.tips.clone()).collect();
        for c in &curves {
            assert_eq!(c.tips.len(), 2 * c.word.len());
        }
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 12);
        assert_eq!(curves.iter().map(|c| c.word.len()).sum::<usize>(), 6);
        // least tip first
        assert_eq!(curves[0].tips[0], GlobalTip { piece: 0, tip: TipIndex::new(1, 1) });
    }

    #[test]
    fn flips_and_rotations_identify_words() {
        let a = words(&["a", "b"], &["b b a^-1 b^-1 a^-1", "a^-1"]);
        let b = words(&["a", "b"], &["a b^-1 a b b", "a"]);
        assert_eq!(canonical_word_multiset(&a).unwrap(), canonical_word_multiset(&b).unwrap());

        let x = words(&["a"], &["a"]);
        let y = words(&["a"], &["a^-1"]);
        assert_eq!(canonical_word(&x[0]).unwrap(), canonical_word(&y[0]).unwrap());

        let empty: Vec<Word> = Vec::new();
        assert!(canonical_word_multiset(&empty).unwrap().is_empty());
    }

    #[test]
    fn shared_flip_distinguishes_multisets() {
        // individually equivalent, jointly not: a b and a b^-1 need different flips
        let p = words(&["a", "b"], &["a b", "a b"]);
        let q = words(&["a", "b"], &["a b", "a b^-1"]);
        assert_ne!(canonical_word_multiset(&p).unwrap(), canonical_word_multiset(&q).unwrap());
    }

    #[test]
    fn flip_search_is_bounded() {
        let long: Word = (0..21).map(Letter::pos).collect();
        assert_eq!(canonical_word(&long), Err(CanonError::AlphabetTooLarge(21)));
    }
}
