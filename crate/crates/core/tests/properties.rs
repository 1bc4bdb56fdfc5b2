mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_vertex_spec;
use spine_core::enumerator::{allowed_symmetries, canonical_form, canonical_spec, SymmetryOptions};
use spine_core::groups::invariant_factors;
use spine_core::groups::word::{cyclic_canonical, inverse};
use spine_core::{
    abelianization, canonical_word, parse_spec, piece_symmetries, tietze_simplify, todd_coxeter, trace_boundary,
    CosetResult, DiskPolicy, GluingSpec, Letter, Matching, PieceDecl, PieceKind, PieceSymmetry, Presentation,
    ProngPerm, TEndSlot, TipIndex, Word,
};

/// Moves every piece by its own symmetry and renames pieces by `order`.
fn transport(spec: &GluingSpec, order: &[usize], syms: &[&PieceSymmetry]) -> GluingSpec {
    let name = |p: usize| format!("N{}", order[p]);
    let index = |slot: &TEndSlot| spec.piece_index(&slot.piece).unwrap();
    let mut pieces: Vec<(usize, PieceDecl)> =
        spec.pieces.iter().enumerate().map(|(i, p)| (order[i], PieceDecl::new(name(i), p.kind))).collect();
    pieces.sort_by_key(|(k, _)| *k);
    let matchings = spec
        .matchings
        .iter()
        .map(|m| {
            let (lp, rp) = (index(&m.left), index(&m.right));
            let mut images = [0u8; 3];
            let mut left_t = 0;
            let mut right_t = 0;
            for k in 1..=3u8 {
                let l = syms[lp].apply(TipIndex::new(m.left.t_end, k));
                let r = syms[rp].apply(TipIndex::new(m.right.t_end, m.perm.apply(k)));
                images[l.prong as usize - 1] = r.prong;
                left_t = l.t_end;
                right_t = r.t_end;
            }
            Matching::new(
                m.id.clone(),
                TEndSlot::new(name(lp), left_t),
                TEndSlot::new(name(rp), right_t),
                ProngPerm::from_images(images).unwrap(),
            )
        })
        .collect();
    GluingSpec::new(pieces.into_iter().map(|(_, p)| p).collect(), matchings, spec.disks.clone())
}

fn one_or_two_vertex_spec() -> impl Strategy<Value = GluingSpec> {
    (1usize..=2, any::<u64>()).prop_map(|(n, seed)| random_vertex_spec(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn letter(gens: usize) -> impl Strategy<Value = Letter> {
    (0..gens, any::<bool>()).prop_map(|(g, pos)| Letter::new(g, if pos { 1 } else { -1 }))
}

fn word(gens: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(gens), 1..=max)
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(word(n, 6), 0..=3)
            .prop_map(move |rels| Presentation::new((0..n).map(|i| format!("x{i}")).collect(), rels))
    })
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-15i64..=15, c), r))
}

fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_code_survives_symmetry_action(
        spec in one_or_two_vertex_spec(),
        picks in prop::collection::vec(0usize..24, 2),
        swap in any::<bool>(),
        reflections in any::<bool>(),
    ) {
        let opts = SymmetryOptions { reflections, ..Default::default() };
        let n = spec.pieces.len();
        let allowed = allowed_symmetries(PieceKind::Vertex, reflections);
        let syms: Vec<&PieceSymmetry> = (0..n).map(|i| allowed[picks[i] % allowed.len()]).collect();
        let order: Vec<usize> = if swap && n == 2 { vec![1, 0] } else { (0..n).collect() };
        let moved = transport(&spec, &order, &syms);
        prop_assert_eq!(moved.validate(), Ok(()));
        prop_assert_eq!(canonical_spec(&moved, opts).unwrap(), canonical_spec(&spec, opts).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent(spec in one_or_two_vertex_spec(), reflections in any::<bool>()) {
        let opts = SymmetryOptions { reflections, ..Default::default() };
        let form = canonical_form(&spec, opts).unwrap();
        prop_assert_eq!(form.validate(), Ok(()));
        prop_assert_eq!(canonical_spec(&form, opts).unwrap(), canonical_spec(&spec, opts).unwrap());
        prop_assert_eq!(canonical_form(&form, opts).unwrap(), form);
    }

    #[test]
    fn canonical_form_keeps_curve_words(spec in one_or_two_vertex_spec()) {
        let form = canonical_form(&spec, SymmetryOptions::default()).unwrap();
        let lengths = |s: &GluingSpec| {
            let mut v: Vec<usize> = trace_boundary(s).unwrap().iter().map(|c| c.word.len()).collect();
            v.sort_unstable();
            v
        };
        prop_assert_eq!(lengths(&form), lengths(&spec));
    }

    #[test]
    fn matching_normalization_is_invisible(spec in one_or_two_vertex_spec(), flips in any::<u8>(), rot in 0usize..8) {
        let mut other = spec.clone();
        for (i, m) in other.matchings.iter_mut().enumerate() {
            if flips >> i & 1 == 1 {
                std::mem::swap(&mut m.left, &mut m.right);
                m.perm = m.perm.inverse();
            }
        }
        let len = other.matchings.len();
        other.matchings.rotate_left(rot % len);
        let opts = SymmetryOptions::default();
        prop_assert_eq!(canonical_spec(&other, opts).unwrap(), canonical_spec(&spec, opts).unwrap());
    }

    #[test]
    fn print_parse_round_trip(spec in one_or_two_vertex_spec(), disks in prop::option::of(prop::collection::btree_set(0usize..6, 0..4))) {
        let mut spec = spec;
        if let Some(d) = disks {
            spec.disks = DiskPolicy::Explicit(d.into_iter().collect());
        }
        let text = spec.to_string();
        prop_assert_eq!(parse_spec(&text).unwrap(), spec.clone());
        prop_assert_eq!(parse_spec(&text).unwrap().to_string(), text);
    }

    #[test]
    fn canonical_word_ignores_rotation_inversion_and_flips(w in word(3, 8), rot in 0usize..8, inv in any::<bool>(), mask in 0u8..8) {
        let base = canonical_word(&w).unwrap();
        let mut moved = w.clone();
        moved.rotate_left(rot % w.len());
        if inv {
            moved = inverse(&moved);
        }
        let moved: Word = moved.into_iter().map(|l| if mask >> l.gen & 1 == 1 { l.inverse() } else { l }).collect();
        prop_assert_eq!(canonical_word(&moved).unwrap(), base.clone());
        prop_assert_eq!(canonical_word(&base).unwrap(), base);
    }

    #[test]
    fn cyclic_canonical_is_a_rotation_or_inverse_rotation(w in word(3, 8)) {
        // no reduction: curve words are literal crossing sequences
        let c = cyclic_canonical(&w);
        let matches = (0..w.len()).any(|r| {
            let mut a = w.clone();
            a.rotate_left(r);
            a == c || inverse(&a) == c
        });
        prop_assert!(matches);
    }

    #[test]
    fn smith_form_ignores_row_and_column_order(m in matrix(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows: Vec<usize> = (0..m.len()).collect();
        let mut cols: Vec<usize> = (0..m[0].len()).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        let permuted: Vec<Vec<i64>> =
            rows.iter().map(|&r| cols.iter().map(|&c| if r % 2 == 0 { m[r][c] } else { -m[r][c] }).collect()).collect();
        prop_assert_eq!(invariant_factors(&big(&permuted)), invariant_factors(&big(&m)));
    }

    #[test]
    fn smith_form_is_a_divisibility_chain(m in matrix()) {
        let d = invariant_factors(&big(&m));
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]) == num_bigint::BigUint::from(0u8));
        }
        // rank never exceeds the smaller dimension
        prop_assert!(d.len() <= m.len().min(m[0].len()));
    }

    #[test]
    fn smith_form_of_diagonal_matrix_has_same_product(a in 1i64..40, b in 1i64..40) {
        let d = invariant_factors(&big(&[vec![a, 0], vec![0, b]]));
        let product = d.iter().fold(num_bigint::BigUint::from(1u8), |acc, x| acc * x);
        prop_assert_eq!(product, num_bigint::BigUint::from((a * b) as u64));
        let g = num_integer::gcd(a, b);
        prop_assert_eq!(d[0].clone(), num_bigint::BigUint::from(g as u64));
    }

    #[test]
    fn tietze_keeps_abelianization(p in presentation()) {
        prop_assert_eq!(abelianization(&tietze_simplify(&p)), abelianization(&p));
    }

    #[test]
    fn tietze_keeps_finite_order(p in presentation()) {
        let before = todd_coxeter(&p, 3000);
        let after = todd_coxeter(&tietze_simplify(&p), 3000);
        if let (CosetResult::Finite { .. }, CosetResult::Finite { .. }) = (before, after) {
            prop_assert_eq!(before, after);
        }
    }

    #[test]
    fn tietze_never_grows_generators(p in presentation()) {
        prop_assert!(tietze_simplify(&p).generator_count() <= p.generator_count());
    }
}

#[test]
fn half_turn_preserves_torus_spine_code() {
    // (x, y, z) -> (-x, -y, z) swaps T1 with T3 and T2 with T4
    let half_turn = piece_symmetries(PieceKind::Vertex)
        .iter()
        .find(|s| s.map_t_end(1) == 3 && s.map_t_end(2) == 4 && (1..=4).all(|t| s.prong_map(t) == ProngPerm::IDENTITY))
        .expect("half turn is a symmetry");
    let spec = spine_core::builtin("s3-spine-5.1b").unwrap();
    let moved = transport(&spec, &[0], &[half_turn]);
    for reflections in [true, false] {
        let opts = SymmetryOptions { reflections, ..Default::default() };
        assert_eq!(canonical_spec(&moved, opts).unwrap(), canonical_spec(&spec, opts).unwrap());
    }
}

#[test]
fn every_symmetry_fixes_ball_spine_code() {
    let spec = spine_core::builtin("ball-5.1a").unwrap();
    let code = canonical_spec(&spec, SymmetryOptions::default()).unwrap();
    for s in piece_symmetries(PieceKind::Vertex) {
        let moved = transport(&spec, &[0], &[s]);
        assert_eq!(canonical_spec(&moved, SymmetryOptions::default()).unwrap(), code);
    }
    let mut swapped = spec.clone();
    swapped.matchings.swap(0, 1);
    assert_eq!(canonical_spec(&swapped, SymmetryOptions::default()).unwrap(), code);
}

#[test]
fn disk_choice_is_part_of_the_code() {
    let spec = spine_core::builtin("rp2-disk-3.3even").unwrap();
    let opts = SymmetryOptions::default();
    let all = canonical_spec(&spec, opts).unwrap();
    let mut none = spec.clone();
    none.disks = DiskPolicy::Explicit(vec![]);
    let mut first = spec.clone();
    first.disks = DiskPolicy::Explicit(vec![0]);
    let mut both = spec.clone();
    both.disks = DiskPolicy::Explicit(vec![0, 1]);
    let codes = [all.clone(), canonical_spec(&none, opts).unwrap(), canonical_spec(&first, opts).unwrap()];
    assert_ne!(codes[0], codes[1]);
    assert_ne!(codes[0], codes[2]);
    assert_ne!(codes[1], codes[2]);
    assert_eq!(canonical_spec(&both, opts).unwrap(), all);
    let form = canonical_form(&first, opts).unwrap();
    let DiskPolicy::Explicit(d) = &form.disks else { panic!("explicit disks expected") };
    assert_eq!(d.len(), 1);
    let length = |s: &GluingSpec, i: usize| trace_boundary(s).unwrap()[i].word.len();
    assert_eq!(length(&form, d[0]), length(&first, 0));
}
