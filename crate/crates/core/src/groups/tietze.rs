//! Greedy Tietze simplification.

use std::collections::HashSet;

use super::presentation::Presentation;
use super::word::{cyclic_canonical, cyclic_reduce, free_reduce, inverse, Letter, Word};

pub const DEFAULT_MAX_PASSES: usize = 100;

/// Simplifies a presentation while preserving the group.
///
/// Each pass cyclically reduces relators and drops empty or repeated ones,
/// then eliminates one generator: first one killed by a single-letter
/// relator, otherwise one occurring exactly once in some relator (the
/// shortest such relator wins). Stops when a pass changes nothing.
pub fn tietze_simplify(p: &Presentation) -> Presentation {
    tietze_simplify_with(p, DEFAULT_MAX_PASSES)
}

pub fn tietze_simplify_with(p: &Presentation, max_passes: usize) -> Presentation {
    let mut gens = p.generators.clone();
    let mut rels = p.relators.clone();
    for _ in 0..max_passes {
        rels = tidy(&rels);
        let Some((gen, replacement, source)) = pick_elimination(&rels, gens.len()) else {
            break;
        };
        rels.remove(source);
        rels = rels.iter().map(|r| substitute(r, gen, &replacement)).collect();
        gens.remove(gen);
        for r in &mut rels {
            for l in r.iter_mut() {
                if l.gen > gen {
                    l.gen -= 1;
                }
            }
        }
    }
    Presentation::new(gens, tidy(&rels))
}

fn tidy(rels: &[Word]) -> Vec<Word> {
    let mut seen = HashSet::new();
    rels.iter()
        .map(|r| cyclic_reduce(r))
        .filter(|r| !r.is_empty())
        .filter(|r| seen.insert(cyclic_canonical(r)))
        .collect()
}

/// (generator, word it equals, index of the relator used).
fn pick_elimination(rels: &[Word], n_gens: usize) -> Option<(usize, Word, usize)> {
    if let Some(i) = rels.iter().position(|r| r.len() == 1) {
        return Some((rels[i][0].gen, Vec::new(), i));
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, r) in rels.iter().enumerate() {
        let mut counts = vec![0usize; n_gens];
        for l in r {
            counts[l.gen] += 1;
        }
        if let Some(pos) = r.iter().position(|l| counts[l.gen] == 1) {
            if best.is_none_or(|(len, _, _)| r.len() < len) {
                best = Some((r.len(), i, pos));
            }
        }
    }
    let (_, i, pos) = best?;
    let r = &rels[i];
    let l = r[pos];
    // r rotated to g^e w = 1, so g^e = w^-1
    let rest: Word = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
    let value = if l.exp > 0 { inverse(&rest) } else { rest };
    Some((l.gen, value, i))
}

fn substitute(word: &[Letter], gen: usize, value: &[Letter]) -> Word {
    let inv = inverse(value);
    let mut out = Vec::with_capacity(word.len());
    for &l in word {
        if l.gen == gen {
            out.extend_from_slice(if l.exp > 0 { value } else { &inv });
        } else {
            out.push(l);
        }
    }
    free_reduce(&out)
}
