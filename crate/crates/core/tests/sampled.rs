//! Above the exhaustive limit the verifiers sample with a recorded seed.

use linespace::labeling::coordinate_labels;
use linespace::models::gen_pg3;
use linespace::theorems::{run_all, vy_axioms, Budget};

#[test]
fn pg3_5_passes_under_sampling() {
    let (s, _) = gen_pg3(5).unwrap();
    let m = coordinate_labels(&s, None).unwrap();
    let budget = Budget {
        samples: 2_000,
        ..Budget::default()
    };
    let reports: Vec<_> = run_all(&s, Some(&m), &budget)
        .into_iter()
        .chain(vy_axioms(&s, &m, &budget))
        .collect();
    for r in &reports {
        assert!(r.passed(), "{}: {:?}", r.check_name, r.counterexample);
    }
    assert!(reports
        .iter()
        .any(|r| r.stats.sampling_seed == Some(budget.seed)));
    let e0 = &reports
        .iter()
        .find(|r| r.check_name == "vy_e0")
        .unwrap()
        .stats;
    assert_eq!(e0.get("points_per_line_min"), Some(6));
    assert_eq!(e0.get("points_per_line_max"), Some(6));
}
