//! Shared fixtures for the benchmarks.

use spine_core::{
    build_skeleton, builtin, presentation_from_complex, tietze_simplify, trace_boundary, GluingSpec, Presentation,
};

pub fn spec(name: &str) -> GluingSpec {
    builtin(name).expect("builtin exists")
}

/// The traced π1 presentation of a builtin, before simplification.
pub fn raw_presentation(name: &str) -> Presentation {
    let spec = spec(name);
    let skeleton = build_skeleton(&spec).expect("builtin validates");
    let curves = trace_boundary(&spec).expect("builtin validates");
    presentation_from_complex(&spec, &skeleton, &curves).expect("builtin has disks")
}

pub fn simplified_presentation(name: &str) -> Presentation {
    tietze_simplify(&raw_presentation(name))
}
