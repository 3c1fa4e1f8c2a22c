use super::*;
use crate::graph::{augmented_antiprism, seed_drawing, EmbeddingClass};

fn crossing_only() -> LayoutConfig {
    LayoutConfig { spring_weight: 0.0, repulsion_weight: 0.0, edge_repulsion_weight: 0.0, ..LayoutConfig::default() }
}

fn float_drawing(pts: &[(&str, f64, f64)], edges: &[(&str, &str)]) -> FloatDrawing {
    let mut g = Graph::new();
    let mut pos = BTreeMap::new();
    for &(v, x, y) in pts {
        g.add_vertex(v).unwrap();
        pos.insert(VertexId::from(v), [x, y]);
    }
    for &(a, b) in edges {
        g.add_edge(a, b).unwrap();
    }
    FloatDrawing::new(g, pos).unwrap()
}

#[test]
fn seed_has_zero_crossing_energy() {
    let d = FloatDrawing::from_exact(&seed_drawing(EmbeddingClass::A));
    assert!(energy(&d, &crossing_only()).unwrap().abs() < 1e-12);
}

#[test]
fn crossing_at_45_degrees() {
    let d = float_drawing(&[("a", 0.0, 0.0), ("b", 2.0, 0.0), ("c", 0.0, -1.0), ("d", 2.0, 1.0)], &[("a", "b"), ("c", "d")]);
    assert!((energy(&d, &crossing_only()).unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn perturbation_raises_energy() {
    let cfg = LayoutConfig::default();
    let d = FloatDrawing::from_exact(&seed_drawing(EmbeddingClass::A));
    let mut pos = d.positions().clone();
    pos.insert("i3".into(), [2.0, 1.0 / 7.0]);
    let e = FloatDrawing::new(d.graph().clone(), pos).unwrap();
    assert!(energy(&e, &cfg).unwrap() > energy(&d, &cfg).unwrap());
}

#[test]
fn symmetric_right_cross_has_zero_crossing_gradient() {
    let d = float_drawing(&[("a", -1.0, 0.0), ("b", 1.0, 0.0), ("c", 0.0, -1.0), ("d", 0.0, 1.0)], &[("a", "b"), ("c", "d")]);
    for g in gradient(&d, &crossing_only()).unwrap().values() {
        assert_eq!(*g, [0.0, 0.0]);
    }
}

#[test]
fn springs_at_rest_have_zero_gradient() {
    let cfg = LayoutConfig { crossing_weight: 0.0, repulsion_weight: 0.0, edge_repulsion_weight: 0.0, ..LayoutConfig::default() };
    let d = float_drawing(&[("a", 0.0, 0.0), ("b", 1.0, 0.0), ("c", 1.0, 1.0)], &[("a", "b"), ("b", "c")]);
    for g in gradient(&d, &cfg).unwrap().values() {
        assert!(g[0].abs() < 1e-15 && g[1].abs() < 1e-15);
    }
}

#[test]
fn four_cycle_becomes_crossing_free() {
    let d = float_drawing(&[("a", 0.0, 0.0), ("b", 1.0, 1.0), ("c", 1.0, 0.0), ("d", 0.0, 1.0)], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
    let cfg = LayoutConfig { restarts: 4, ..LayoutConfig::default() };
    let (out, report) = optimize(d.graph(), &cfg).unwrap();
    assert_eq!(report.min_angle_degrees, None);
    assert!(classify_near_rac(&out, 0.1).is_near_rac());
}

#[test]
fn optimize_is_deterministic() {
    let g = augmented_antiprism(4).unwrap().graph;
    let cfg = LayoutConfig { restarts: 2, seed: 7, max_iterations: 200, polish_iterations: 100, ..LayoutConfig::default() };
    let (a, ra) = optimize(&g, &cfg).unwrap();
    let (b, rb) = optimize(&g, &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(ra, rb);
}

#[test]
fn seed_is_near_rac_with_exact_embedding() {
    let exact = seed_drawing(EmbeddingClass::A);
    let c = classify_near_rac(&FloatDrawing::from_exact(&exact), 0.1);
    assert_eq!(c.embedding(), Some(&crate::embedding::extract_embedding(&exact).unwrap()));
}

#[test]
fn sharp_crossing_is_not_near_rac() {
    let d = float_drawing(&[("a", 0.0, 0.0), ("b", 2.0, 0.0), ("c", 0.0, -1.0), ("d", 2.0, 1.0)], &[("a", "b"), ("c", "d")]);
    assert!(!classify_near_rac(&d, 0.1).is_near_rac());
}

#[test]
fn planar_layout_has_dummy_free_embedding() {
    let d = float_drawing(&[("a", 0.0, 0.0), ("b", 1.0, 0.0), ("c", 2.0, 0.5)], &[("a", "b"), ("b", "c")]);
    assert_eq!(classify_near_rac(&d, 0.1).embedding().unwrap().dummy_count(), 0);
}

#[test]
fn fixtures_have_opposite_chirality() {
    use crate::embedding::extract_embedding;
    let a = extract_embedding(&seed_drawing(EmbeddingClass::A)).unwrap();
    let b = extract_embedding(&seed_drawing(EmbeddingClass::B)).unwrap();
    assert_eq!(Chirality::of(&a), Chirality::A);
    assert_eq!(Chirality::of(&b), Chirality::B);
}

#[test]
fn perturbed_fixture_returns_to_its_class() {
    use crate::embedding::{class_code, extract_embedding};
    let seed = seed_drawing(EmbeddingClass::A);
    let cfg = LayoutConfig::default();
    let starts = perturbed_starts(&seed, &cfg, 3, 0.05, 11);
    let report = survey_with_starts(seed.graph(), &LayoutConfig { restarts: 1, ..cfg }, &starts).unwrap();
    let fixture = class_code(&extract_embedding(&seed).unwrap());
    assert!(report.near_rac >= 2, "{:?}", report.records);
    assert_eq!(report.classes.keys().collect::<Vec<_>>(), vec![&fixture]);
}

#[test]
fn path_survey_has_one_trivial_class() {
    let d = float_drawing(&[("a", 0.0, 0.0), ("b", 1.0, 0.0), ("c", 2.0, 0.0), ("d", 3.0, 0.0)], &[("a", "b"), ("b", "c"), ("c", "d")]);
    let report = survey_embeddings(d.graph(), &LayoutConfig { restarts: 10, ..LayoutConfig::default() }).unwrap();
    assert_eq!(report.near_rac, 10);
    assert_eq!(report.class_count(), 1, "{:#?}", report.records);
}

#[test]
fn invalid_config_is_rejected() {
    for cfg in [
        LayoutConfig { restarts: 0, ..LayoutConfig::default() },
        LayoutConfig { angle_tolerance_deg: 0.0, ..LayoutConfig::default() },
        LayoutConfig { spring_weight: -1.0, ..LayoutConfig::default() },
    ] {
        assert!(matches!(cfg.validate(), Err(LayoutError::InvalidConfig(_))));
    }
}
