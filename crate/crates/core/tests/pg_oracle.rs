//! Generated PG(3,q) against subspaces enumerated by spanning sets.

mod common;

use common::{subspaces, Oracle};
use linespace::labeling::coordinate_labels;
use linespace::models::{gen_pg3, verify_counts};
use linespace::sigma::sigma_partition;
use linespace::LineSet;

#[test]
fn subspace_counts_match_gaussian_binomials() {
    for (q, counts) in [(2, [15, 35, 15]), (3, [40, 130, 40])] {
        for (k, expected) in (1..=3).zip(counts) {
            assert_eq!(subspaces(k, q).len(), expected, "q={q} k={k}");
        }
    }
}

fn check_geometry(q: u32) {
    let (s, meta) = gen_pg3(q).unwrap();
    let oracle = Oracle::new(&meta);
    oracle.check_incidence(&s).unwrap();
    let qq = q as usize;

    let mut bundles = oracle.bundles.clone();
    let mut planes = oracle.ruled_planes.clone();
    bundles.sort();
    planes.sort();
    assert!(bundles.iter().all(|b| b.len() == qq * qq + qq + 1));

    // the default seed may name either family "points"
    let m = coordinate_labels(&s, None).unwrap();
    let (got_p, got_q) = (m.points().to_vec(), m.planes().to_vec());
    assert!(
        (got_p == bundles && got_q == planes) || (got_p == planes && got_q == bundles),
        "derived elements are not the coordinate bundles and planes"
    );

    let classical = coordinate_labels(&s, Some(meta.classical_seed(&s).unwrap())).unwrap();
    assert_eq!(classical.points(), bundles.as_slice());
    assert_eq!(classical.planes(), planes.as_slice());
    assert!(verify_counts(&meta, &classical).passed());

    for p in &bundles {
        for pl in &planes {
            let k = p.intersection_len(pl);
            assert!(k == 0 || k == qq + 1, "pencil of size {k}");
        }
    }

    for (a, b) in s.incident_pairs() {
        let part = sigma_partition(&s, a, b).unwrap();
        let (through, within) = oracle.expected_sigma(a, b);
        assert_eq!(part.sigma, through.union(&within));
        let mut got = [part.class_0.clone(), part.class_1.clone()];
        let mut want = [through, within];
        got.sort();
        want.sort();
        assert_eq!(got, want);
        assert!(got.iter().all(|c: &LineSet| c.len() == qq * qq));
    }
}

#[test]
fn pg3_2_matches_oracle() {
    check_geometry(2);
}

#[test]
fn pg3_3_matches_oracle() {
    check_geometry(3);
}

#[test]
fn pg3_5_incidence_matches_oracle() {
    let (s, meta) = gen_pg3(5).unwrap();
    assert_eq!(s.line_count(), 806);
    Oracle::lines_only(&meta).check_incidence(&s).unwrap();
}
