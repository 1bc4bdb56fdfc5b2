//! Worked example complexes, stored as spec documents.

use thiserror::Error;

use super::parse::parse_spec;
use crate::gluing::GluingSpec;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown builtin `{0}`; run `list-builtins` for the available names")]
pub struct UnknownBuiltin(pub String);

const BALL: &str = "\
# one vertex, two odd matchings; a 3-ball spine
piece O vertex
match a: O.1 ~ O.3 (2 1 3)
match b: O.2 ~ O.4 (1 3 2)
disks all
";

const S3_SPINE: &str = "\
# torus with disks on a meridian and a parallel; thickens to S^3 minus two balls
piece O vertex
match a: O.1 ~ O.3 (2 1 3)
match b: O.2 ~ O.4 (2 1 3)
disks all
";

const RP2_TWO_DISKS: &str = "\
# projective plane with two disks along two lines; even matchings
piece O vertex
match a: O.1 ~ O.3 (1 2 3)
match b: O.2 ~ O.4 (1 2 3)
disks all
";

const BING_HOUSE: &str = "\
# Bing's house with two rooms
piece A vertex
piece B vertex
match a1: A.1 ~ B.4 (3 2 1)
match b1: A.2 ~ A.4 (2 1 3)
match a2: A.3 ~ B.2 (1 3 2)
# original table: (B11 B12 B13) ~ (B32 B31 A33); prong A33 is read as B33
match c1: B.1 ~ B.3 (2 1 3)
disks all
";

const POINCARE: &str = "\
# spine of the Poincare homology sphere, pi1 of order 120
piece O vertex
piece P vertex
piece Q vertex
piece R vertex
piece S vertex
match h: O.1 ~ Q.3 (1 3 2)
match e: O.2 ~ S.1 (2 1 3)
match f: O.3 ~ R.3 (1 3 2)
match a: O.4 ~ P.4 (3 2 1)
match b: P.1 ~ Q.4 (1 3 2)
match i: P.2 ~ R.2 (2 1 3)
match g: P.3 ~ S.4 (1 3 2)
match c: Q.1 ~ R.1 (1 3 2)
match k: Q.2 ~ S.2 (1 3 2)
match d: R.4 ~ S.3 (3 2 1)
disks all
";

const MIXED_PARITY: &str = "\
# two vertices; a1, a2 even and b1, b2 odd
piece A vertex
piece B vertex
match b1: A.1 ~ B.1 (2 1 3)
match a1: A.2 ~ B.4 (1 2 3)
match b2: A.3 ~ B.3 (2 1 3)
# original table: (A41 A42 A43) ~ (B21 B22 A23); prong A23 is read as B23
match a2: A.4 ~ B.2 (1 2 3)
disks all
";

const RP3_SPINE: &str = "\
# two vertices, all four matchings odd; pi1 of order 2
piece A vertex
piece B vertex
match a1: A.1 ~ B.3 (2 1 3)
match b1: A.2 ~ B.4 (2 1 3)
match a2: A.3 ~ B.1 (2 1 3)
# original table: (A41 A42 A43) ~ (B22 B21 A23); prong A23 is read as B23
match b2: A.4 ~ B.2 (2 1 3)
disks all
";

const RP2_DISK: &str = "\
# bar glued to itself by an even matching: a Moebius band plus a disk on each frontier curve
piece V bar
match a: V.1 ~ V.2 (1 2 3)
disks all
";

const LENS_31: &str = "\
# bar glued to itself by an odd matching: spine of the lens space L(3,1)
piece V bar
match a: V.1 ~ V.2 (1 3 2)
disks all
";

const CORPUS: [(&str, &str); 9] = [
    ("ball-5.1a", BALL),
    ("s3-spine-5.1b", S3_SPINE),
    ("rp2-two-disks-5.1c", RP2_TWO_DISKS),
    ("bing-house-5.2", BING_HOUSE),
    ("poincare-5.3", POINCARE),
    ("example-5.4", MIXED_PARITY),
    ("rp3-spine-remark2", RP3_SPINE),
    ("rp2-disk-3.3even", RP2_DISK),
    ("lens31-3.3odd", LENS_31),
];

pub const BUILTIN_NAMES: [&str; 9] = [
    CORPUS[0].0,
    CORPUS[1].0,
    CORPUS[2].0,
    CORPUS[3].0,
    CORPUS[4].0,
    CORPUS[5].0,
    CORPUS[6].0,
    CORPUS[7].0,
    CORPUS[8].0,
];

pub fn builtin_source(name: &str) -> Result<&'static str, UnknownBuiltin> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text).ok_or_else(|| UnknownBuiltin(name.to_string()))
}

pub fn builtin(name: &str) -> Result<GluingSpec, UnknownBuiltin> {
    let text = builtin_source(name)?;
    Ok(parse_spec(text).expect("builtin documents parse"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::{DiskPolicy, Parity};
    use crate::pieces::PieceKind;

    #[test]
    fn every_builtin_validates() {
        for name in BUILTIN_NAMES {
            let spec = builtin(name).unwrap();
            assert_eq!(spec.validate(), Ok(()), "{name}");
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(builtin("torus").unwrap_err(), UnknownBuiltin("torus".into()));
    }

    #[test]
    fn poincare_size() {
        let spec = builtin("poincare-5.3").unwrap();
        assert_eq!(spec.pieces.len(), 5);
        assert_eq!(spec.matchings.len(), 10);
    }

    #[test]
    fn mixed_parity_builtin() {
        let spec = builtin("example-5.4").unwrap();
        let parity = |id: &str| spec.matchings[spec.matching_index(id).unwrap()].parity();
        assert_eq!(parity("a1"), Parity::Even);
        assert_eq!(parity("a2"), Parity::Even);
        assert_eq!(parity("b1"), Parity::Odd);
        assert_eq!(parity("b2"), Parity::Odd);
    }

    #[test]
    fn even_bar_shape() {
        let spec = builtin("rp2-disk-3.3even").unwrap();
        assert_eq!(spec.pieces.len(), 1);
        assert_eq!(spec.pieces[0].kind, PieceKind::Bar);
        assert_eq!(spec.matchings.len(), 1);
        assert_eq!(spec.disks, DiskPolicy::All);
        assert_eq!(crate::tracer::trace_boundary(&spec).unwrap().len(), 2);
    }
}
