//! The full analysis pipeline and its report.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::gluing::{skeleton_of, DiskPolicy, GluingSpec, Parity, SkeletonGraph, ValidationError};
use crate::groups::word::format_word;
use crate::groups::{
    abelianization, betti_numbers, presentation_from_complex, tietze_simplify, todd_coxeter, AbelianInvariants,
    BettiNumbers, CosetResult, PresentationError, DEFAULT_MAX_COSETS,
};
use crate::invariants::{disk_curves, even_letter_count, orientability_verdict, DiskError, EmbeddabilityVerdict};
use crate::tracer::{canonical_word, canonical_word_multiset, trace_resolved};

pub const MAX_COSETS_VAR: &str = "SPINE_MAX_COSETS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub max_cosets: usize,
    /// Include wall-clock stage timings; off keeps the report deterministic.
    pub timings: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { max_cosets: DEFAULT_MAX_COSETS, timings: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{var} must be a positive integer, got `{value}`")]
pub struct InvalidEnv {
    pub var: &'static str,
    pub value: String,
}

impl AnalyzeOptions {
    /// Defaults, with the coset limit taken from `SPINE_MAX_COSETS` if set.
    pub fn from_env() -> Result<Self, InvalidEnv> {
        let mut opts = AnalyzeOptions::default();
        if let Ok(value) = std::env::var(MAX_COSETS_VAR) {
            opts.max_cosets = parse_limit(&value).ok_or(InvalidEnv { var: MAX_COSETS_VAR, value })?;
        }
        Ok(opts)
    }
}

fn parse_limit(value: &str) -> Option<usize> {
    value.trim().parse().ok().filter(|&n: &usize| n > 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("validate: {}", join_errors(.0))]
    Invalid(Vec<ValidationError>),
    #[error("invariants: {0}")]
    Disk(#[from] DiskError),
    #[error("presentation: {0}")]
    Presentation(#[from] PresentationError),
}

fn join_errors(errs: &[ValidationError]) -> String {
    errs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl AnalyzeError {
    pub fn stage(&self) -> &'static str {
        match self {
            AnalyzeError::Invalid(_) => "validate",
            AnalyzeError::Disk(_) => "invariants",
            AnalyzeError::Presentation(_) => "presentation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceEcho {
    pub name: String,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingEcho {
    pub id: String,
    pub left: String,
    pub right: String,
    pub perm: [u8; 3],
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecEcho {
    pub pieces: Vec<PieceEcho>,
    pub matchings: Vec<MatchingEcho>,
    /// `"all"` or the list of curve indices.
    pub disks: serde_json::Value,
}

impl SpecEcho {
    fn of(spec: &GluingSpec) -> Self {
        SpecEcho {
            pieces: spec
                .pieces
                .iter()
                .map(|p| PieceEcho { name: p.name.clone(), kind: p.kind.keyword().to_string() })
                .collect(),
            matchings: spec
                .matchings
                .iter()
                .map(|m| MatchingEcho {
                    id: m.id.clone(),
                    left: m.left.to_string(),
                    right: m.right.to_string(),
                    perm: m.perm.images(),
                    parity: m.parity(),
                })
                .collect(),
            disks: match &spec.disks {
                DiskPolicy::All => serde_json::Value::from("all"),
                DiskPolicy::Explicit(list) => serde_json::Value::from(list.clone()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub index: usize,
    pub tips: Vec<String>,
    pub word: String,
    /// Least form over rotation, inversion and edge orientation flips;
    /// absent when the curve uses too many edges to search.
    pub canonical: Option<String>,
    pub length: usize,
    pub even_letters: usize,
    pub disk: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub raw: String,
    pub simplified: String,
    pub simplified_generators: usize,
    pub simplified_relators: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianReport {
    pub rank: usize,
    #[serde(flatten)]
    pub invariants: AbelianInvariants,
    pub text: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub trace_us: u64,
    pub invariants_us: u64,
    pub presentation_us: u64,
    pub simplify_us: u64,
    pub abelianize_us: u64,
    pub cosets_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub spec: SpecEcho,
    pub skeleton: SkeletonGraph,
    pub curves: Vec<CurveReport>,
    /// Sorted canonical forms under one shared orientation choice.
    pub canonical_multiset: Option<Vec<String>>,
    pub chi: i64,
    pub betti: BettiNumbers,
    pub verdict: EmbeddabilityVerdict,
    pub presentation: PresentationReport,
    pub abelian: AbelianReport,
    pub cosets: CosetResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

fn micros(since: Instant) -> u64 {
    since.elapsed().as_micros().try_into().unwrap_or(u64::MAX)
}

/// Skeleton, curves, invariants, presentation, simplification,
/// abelianization and bounded coset enumeration, in that order.
pub fn analyze(spec: &GluingSpec, opts: AnalyzeOptions) -> Result<Report, AnalyzeError> {
    let mut timings = Timings::default();
    let resolved = spec.resolve().map_err(AnalyzeError::Invalid)?;
    let skeleton = skeleton_of(spec, &resolved);

    let clock = Instant::now();
    let curves = trace_resolved(&resolved);
    timings.trace_us = micros(clock);

    let clock = Instant::now();
    let disks = disk_curves(spec, &curves)?;
    let chi = spec.pieces.len() as i64 - spec.matchings.len() as i64 + disks.len() as i64;
    let verdict = orientability_verdict(&skeleton, &curves, &disks);
    timings.invariants_us = micros(clock);

    let clock = Instant::now();
    let raw = presentation_from_complex(spec, &skeleton, &curves)?;
    timings.presentation_us = micros(clock);

    let clock = Instant::now();
    let simplified = tietze_simplify(&raw);
    timings.simplify_us = micros(clock);

    let clock = Instant::now();
    let abelian = abelianization(&simplified);
    let betti = betti_numbers(&skeleton, chi, &abelian)?;
    timings.abelianize_us = micros(clock);

    let clock = Instant::now();
    let cosets = todd_coxeter(&simplified, opts.max_cosets);
    timings.cosets_us = micros(clock);

    let names: Vec<String> = spec.matchings.iter().map(|m| m.id.clone()).collect();
    let parities = skeleton.parities();
    let curve_reports = curves
        .iter()
        .enumerate()
        .map(|(i, c)| CurveReport {
            index: i,
            tips: c.tips.iter().map(|t| t.display(spec).to_string()).collect(),
            word: format_word(&c.word, &names),
            canonical: canonical_word(&c.word).ok().map(|w| format_word(&w, &names)),
            length: c.word.len(),
            even_letters: even_letter_count(c, &parities),
            disk: disks.binary_search(&i).is_ok(),
        })
        .collect();
    let words: Vec<&[_]> = curves.iter().map(|c| c.word.as_slice()).collect();
    let canonical_multiset =
        canonical_word_multiset(&words).ok().map(|ws| ws.iter().map(|w| format_word(w, &names)).collect());

    Ok(Report {
        spec: SpecEcho::of(spec),
        skeleton,
        curves: curve_reports,
        canonical_multiset,
        chi,
        betti,
        verdict,
        presentation: PresentationReport {
            raw: raw.to_string(),
            simplified: simplified.to_string(),
            simplified_generators: simplified.generator_count(),
            simplified_relators: simplified.relators.len(),
        },
        abelian: AbelianReport { rank: abelian.rank, text: abelian.to_string(), invariants: abelian },
        cosets,
        timings: opts.timings.then_some(timings),
    })
}

pub fn render_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let s = &report.skeleton;
    let _ = writeln!(out, "pieces:      {}", s.nodes.join(", "));
    let edges: Vec<String> =
        s.edges.iter().map(|e| format!("{} ({} -> {}, {})", e.id, s.nodes[e.from], s.nodes[e.to], e.parity)).collect();
    let _ = writeln!(out, "edges:       {}", edges.join(", "));
    let _ = writeln!(out, "curves:      {}", report.curves.len());
    for c in &report.curves {
        let mark = if c.disk { "disk" } else { "open" };
        let canon = c.canonical.as_deref().unwrap_or("-");
        let _ = writeln!(out, "  [{}] {mark}  {}    canonical: {canon}", c.index, c.word);
    }
    let _ = writeln!(out, "chi:         {}", report.chi);
    let b = report.betti;
    let _ = writeln!(out, "betti:       b0={} b1={} b2={}", b.b0, b.b1, b.b2);
    let verdict = match (report.verdict.embeddable_orientable, report.verdict.witness) {
        (true, _) => "embeds in an orientable 3-manifold".to_string(),
        (false, Some(w)) => format!("does not embed in an orientable 3-manifold (curve {w})"),
        (false, None) => "does not embed in an orientable 3-manifold".to_string(),
    };
    let _ = writeln!(out, "verdict:     {verdict}");
    let _ = writeln!(out, "pi1 raw:     {}", report.presentation.raw);
    let _ = writeln!(out, "pi1 simple:  {}", report.presentation.simplified);
    let _ = writeln!(out, "H1:          {}", report.abelian.text);
    let _ = writeln!(out, "order:       {}", report.cosets);
    if let Some(t) = &report.timings {
        let _ = writeln!(
            out,
            "timings (us): trace {} invariants {} presentation {} simplify {} abelianize {} cosets {}",
            t.trace_us, t.invariants_us, t.presentation_us, t.simplify_us, t.abelianize_us, t.cosets_us
        );
    }
    out
}
