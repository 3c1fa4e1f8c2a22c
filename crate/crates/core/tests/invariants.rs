mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use racforge::checker::check_rac;
use racforge::embedding::{embedding_relation, extract_embedding, EmbeddingRelation};
use racforge::geometry::{orientation, Point, Rational};
use racforge::graph::{augmented_antiprism, extend, ExtendMode};
use racforge::io;
use racforge::reduction::{all_satisfying, extract_assignment, parse_dimacs, synthesize};

fn point() -> impl Strategy<Value = Point> {
    (-50i64..50, 1i64..6, -50i64..50, 1i64..6).prop_map(|(a, b, c, d)| Point::new(Rational::new(a, b), Rational::new(c, d)))
}

fn drawing() -> impl Strategy<Value = racforge::graph::Drawing> {
    any::<u64>().prop_map(|s| common::random_drawing(&mut ChaCha8Rng::seed_from_u64(s), 9))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn orientation_is_alternating(p in point(), q in point(), r in point()) {
        let o = orientation(&p, &q, &r).sign();
        prop_assert_eq!(orientation(&q, &r, &p).sign(), o);
        prop_assert_eq!(orientation(&q, &p, &r).sign(), -o);
    }

    /// Translation, scaling and reflection keep crossings and angles.
    #[test]
    fn check_is_invariant_under_similarities(d in drawing(), dx in -20i64..20, k in 1i64..7) {
        let base = check_rac(&d);
        let (dx, k) = (Rational::from_integer(dx), Rational::new(k, 3));
        let moved = d.map_points(|p| Point::new(&(&p.x * &k) + &dx, &p.y * &k)).unwrap();
        for other in [check_rac(&moved), check_rac(&d.mirrored())] {
            prop_assert_eq!(other.degeneracies.len(), base.degeneracies.len());
            prop_assert_eq!(other.crossings.len(), base.crossings.len());
            prop_assert_eq!(other.is_rac, base.is_rac);
            let perp = |r: &racforge::checker::RacReport| r.crossings.iter().filter(|c| c.perpendicular).count();
            prop_assert_eq!(perp(&other), perp(&base));
        }
    }

    #[test]
    fn drawing_json_round_trip_is_exact(d in drawing()) {
        let text = io::drawing_to_json(&d, &BTreeMap::new());
        let back = io::drawing_from_json(&text).unwrap();
        prop_assert_eq!(&back.drawing, &d);
        prop_assert_eq!(io::drawing_to_json(&back.drawing, &back.roles), text);
    }

    #[test]
    fn dimacs_round_trip(seed in any::<u64>(), n in 3usize..8, m in 1usize..12) {
        let f = common::random_cnf(&mut ChaCha8Rng::seed_from_u64(seed), n, m);
        prop_assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Every satisfying assignment synthesizes to an exact RAC drawing
    /// from which the same assignment is read back.
    #[test]
    fn synthesis_round_trips(seed in any::<u64>(), n in 3usize..5, m in 1usize..5) {
        let f = common::random_cnf(&mut ChaCha8Rng::seed_from_u64(seed), n, m);
        for a in all_satisfying(&f) {
            let s = synthesize(&f, &a).unwrap();
            prop_assert!(check_rac(&s.drawing).is_rac);
            let got = extract_assignment(&s.drawing, &s.compiled.labels).unwrap();
            prop_assert_eq!(got, a);
        }
    }
}

#[test]
fn mirrored_embedding_is_mirror_or_identical() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mirrors = 0;
    for _ in 0..200 {
        let d = common::random_drawing(&mut rng, 9);
        let (Ok(e), Ok(m)) = (extract_embedding(&d), extract_embedding(&d.mirrored())) else { continue };
        let rel = embedding_relation(&e, &m).unwrap();
        assert_ne!(rel, EmbeddingRelation::Distinct);
        mirrors += usize::from(rel == EmbeddingRelation::Mirror);
    }
    assert!(mirrors > 0);
}

#[test]
fn extension_counts_in_both_modes() {
    let g = augmented_antiprism(4).unwrap();
    for mode in [ExtendMode::Horizontal, ExtendMode::Vertical] {
        let e = extend(&g, &g, mode).unwrap();
        assert_eq!((e.graph.vertex_count(), e.graph.edge_count()), (16, 48));
        let ee = extend(&e, &g, mode).unwrap();
        assert_eq!((ee.graph.vertex_count(), ee.graph.edge_count()), (23, 72));
    }
}
