//! Property tests: perp is an antitone Galois map with a closure companion,
//! sigma is the non-closed part of a bracket, and set/format plumbing is
//! value-preserving.

use std::collections::BTreeSet;

use linespace::format::{parse_structure, serialize_structure};
use linespace::sigma::{sigma, sigma_partition};
use linespace::{IncidenceStructure, LineId, LineSet};
use proptest::prelude::*;

fn structure() -> impl Strategy<Value = IncidenceStructure> {
    (4usize..=40, 0.0f64..1.0)
        .prop_flat_map(|(n, p)| {
            prop::collection::vec(prop::bool::weighted(p), n * (n - 1) / 2)
                .prop_map(move |bits| (n, bits))
        })
        .prop_map(|(n, bits)| {
            let mut skew = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        skew.push((i, j));
                    }
                    k += 1;
                }
            }
            let labels = (0..n).map(|i| format!("l{i}")).collect();
            IncidenceStructure::from_skew_pairs("random", labels, &skew).unwrap()
        })
}

/// A structure with two subsets `S ⊆ T`.
fn structure_with_subsets() -> impl Strategy<Value = (IncidenceStructure, LineSet, LineSet)> {
    structure().prop_flat_map(|s| {
        let n = s.line_count();
        (
            Just(s),
            prop::collection::vec(prop::bool::weighted(0.2), n),
            prop::collection::vec(prop::bool::weighted(0.2), n),
        )
            .prop_map(|(s, a, b)| {
                let small: LineSet = (0..a.len()).filter(|&i| a[i]).map(LineId).collect();
                let large = small.union(&(0..b.len()).filter(|&i| b[i]).map(LineId).collect());
                (s, small, large)
            })
    })
}

/// Perp straight from the definition.
fn naive_perp(s: &IncidenceStructure, set: &LineSet) -> LineSet {
    s.lines()
        .filter(|&l| set.iter().all(|m| s.meets(l, m)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn perp_galois_laws((s, small, large) in structure_with_subsets()) {
        let p_small = s.perp(&small).unwrap();
        let p_large = s.perp(&large).unwrap();
        prop_assert_eq!(&p_small, &naive_perp(&s, &small));
        // antitone
        prop_assert!(p_large.is_subset(&p_small));
        // extensive
        let closure = s.perp(&p_small).unwrap();
        prop_assert!(small.is_subset(&closure));
        // idempotent: perp of the closure is perp again
        prop_assert_eq!(s.perp(&closure).unwrap(), p_small);
    }

    #[test]
    fn sigma_is_unclosed_part_of_bracket(s in structure()) {
        for (a, b) in s.incident_pairs().take(12) {
            let bracket = naive_perp(&s, &LineSet::from_ids([a, b]));
            let closure = naive_perp(&s, &bracket);
            let sig = sigma(&s, a, b).unwrap();
            prop_assert_eq!(&sig, &bracket.difference(&closure));
            // members of sigma are exactly those with a skew partner in the bracket
            for c in &bracket {
                let has_skew = bracket.iter().any(|d| !s.meets(c, d));
                prop_assert_eq!(sig.contains(c), has_skew);
            }
            if let Ok(part) = sigma_partition(&s, a, b) {
                prop_assert_eq!(part.class_0.union(&part.class_1), sig.clone());
                prop_assert!(part.class_0.is_disjoint(&part.class_1));
                for x in &part.class_0 {
                    for y in &part.class_1 {
                        prop_assert!(!s.meets(x, y));
                    }
                }
                for class in [&part.class_0, &part.class_1] {
                    for x in class {
                        prop_assert!(class.is_subset(s.row(x)));
                    }
                }
            }
        }
    }

    #[test]
    fn structure_files_round_trip(s in structure()) {
        let text = serialize_structure(&s);
        let back = parse_structure(&text, 4096).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(serialize_structure(&back), text);
    }

    #[test]
    fn lineset_matches_btreeset(
        a in prop::collection::btree_set(0usize..300, 0..40),
        b in prop::collection::btree_set(0usize..300, 0..40),
    ) {
        let (x, y) = (LineSet::from_indices(a.iter().copied()), LineSet::from_indices(b.iter().copied()));
        let v = |s: &LineSet| s.indices().into_iter().collect::<BTreeSet<_>>();
        prop_assert_eq!(v(&x.union(&y)), a.union(&b).copied().collect());
        prop_assert_eq!(v(&x.intersection(&y)), a.intersection(&b).copied().collect());
        prop_assert_eq!(v(&x.difference(&y)), a.difference(&b).copied().collect());
        prop_assert_eq!(x.intersection_len(&y), a.intersection(&b).count());
        prop_assert_eq!(x.is_subset(&y), a.is_subset(&b));
        prop_assert_eq!(x.is_disjoint(&y), a.is_disjoint(&b));
        prop_assert_eq!(x.len(), a.len());
        prop_assert_eq!(x.cmp(&y), a.iter().cmp(b.iter()));
        prop_assert_eq!(x == y, a == b);
    }
}
