mod common;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{brute_force, crossing_key, random_drawing};
use racforge::checker::{check_rac, enumerate_crossings};

/// Crossing set reported by the checker in oracle form.
fn checker_crossings(d: &racforge::graph::Drawing) -> BTreeSet<(String, String, String, String, bool)> {
    check_rac(d)
        .crossings
        .iter()
        .map(|c| crossing_key((c.edge1.u(), c.edge1.v()), (c.edge2.u(), c.edge2.v()), &c.point, c.perpendicular))
        .collect()
}

#[test]
fn checker_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut degenerate, mut crossing) = (0, 0);
    for i in 0..1000 {
        let d = random_drawing(&mut rng, 12);
        let oracle = brute_force(&d);
        let report = check_rac(&d);
        assert_eq!(!report.degeneracies.is_empty(), oracle.degenerate, "drawing {i}: degeneracy verdict");
        assert_eq!(enumerate_crossings(&d).is_err(), oracle.degenerate, "drawing {i}: enumeration error");
        if oracle.degenerate {
            degenerate += 1;
            assert!(!report.is_rac);
            continue;
        }
        assert_eq!(checker_crossings(&d), oracle.crossings, "drawing {i}: crossings");
        let all_perpendicular = oracle.crossings.iter().all(|c| c.4);
        assert_eq!(report.is_rac, all_perpendicular, "drawing {i}: RAC verdict");
        crossing += usize::from(!oracle.crossings.is_empty());
    }
    // the sample must exercise both branches
    assert!(degenerate > 50 && crossing > 50, "degenerate {degenerate}, with crossings {crossing}");
}
