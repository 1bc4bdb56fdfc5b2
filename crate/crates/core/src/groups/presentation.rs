use std::fmt;

use thiserror::Error;

use super::word::{format_word, parse_word, Letter, Word, WordParseError};
use crate::gluing::{GluingSpec, SkeletonGraph};
use crate::invariants::{disk_curves, DiskError};
use crate::tracer::BoundaryCurve;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("skeleton has {0} components; the fundamental group needs a connected complex")]
    Disconnected(usize),
    #[error(transparent)]
    Disk(#[from] DiskError),
    #[error("cannot parse presentation: {0}")]
    Syntax(String),
    #[error(transparent)]
    Word(#[from] WordParseError),
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        let p = Presentation { generators, relators };
        debug_assert!(p.relators.iter().flatten().all(|l| l.gen < p.generators.len()));
        p
    }

    pub fn trivial() -> Self {
        Presentation { generators: Vec::new(), relators: Vec::new() }
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Parses `< a, b | a b^-1 a b^2, a >`.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let body = text
            .trim()
            .strip_prefix('<')
            .and_then(|t| t.strip_suffix('>'))
            .ok_or_else(|| PresentationError::Syntax("expected `< gens | rels >`".into()))?;
        let (gens, rels) = body.split_once('|').unwrap_or((body, ""));
        let generators: Vec<String> =
            gens.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
        let relators = rels
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|r| parse_word(r, &generators))
            .collect::<Result<_, _>>()?;
        Ok(Presentation { generators, relators })
    }

    pub fn format_relator(&self, i: usize) -> String {
        format_word(&self.relators[i], &self.generators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {}", self.generators.join(", "))?;
        f.write_str(" | ")?;
        let rels: Vec<String> = (0..self.relators.len()).map(|i| self.format_relator(i)).collect();
        write!(f, "{} >", rels.join(", "))
    }
}

/// π1 of the complex: one generator per 1-cell, one relator per disk and
/// one single-letter relator per spanning-tree edge.
///
/// The tree edges stand in for the auxiliary paths joining each vertex point
/// to the base point (the first declared piece).
pub fn presentation_from_complex(
    spec: &GluingSpec,
    skeleton: &SkeletonGraph,
    curves: &[BoundaryCurve],
) -> Result<Presentation, PresentationError> {
    if !skeleton.is_connected() {
        return Err(PresentationError::Disconnected(skeleton.component_count()));
    }
    let disks = disk_curves(spec, curves)?;
    let generators = spec.matchings.iter().map(|m| m.id.clone()).collect();
    let mut relators: Vec<Word> = disks.iter().map(|&i| curves[i].word.clone()).collect();
    relators.extend(skeleton.spanning_tree().into_iter().map(|e| vec![Letter::pos(e)]));
    Ok(Presentation { generators, relators })
}
