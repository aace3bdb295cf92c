//! Checkers for the six line axioms.
//!
//! Every check scans its obligations in lexicographic order and stops at the
//! first violation, so counterexamples are the least ones and reports are
//! stable. Failing reports can be replayed against the structure with
//! [`replay`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::incidence::{IncidenceStructure, LineId, LineSet};
use crate::labeling::{self, Inconsistency, Kind};
use crate::report::{CheckReport, Stats, Witness};
use crate::sigma;

pub const AXIOM_1: &str = "axiom_1";
pub const AXIOM_2_1: &str = "axiom_2_1";
pub const AXIOM_2_2: &str = "axiom_2_2";
pub const AXIOM_2_3: &str = "axiom_2_3";
pub const AXIOM_3: &str = "axiom_3";
pub const AXIOM_4: &str = "axiom_4";

/// Check names in the order `check_all` runs them.
pub const ALL: [&str; 6] = [AXIOM_1, AXIOM_2_1, AXIOM_2_2, AXIOM_2_3, AXIOM_3, AXIOM_4];

/// Every line meets a pairwise skew triple.
pub fn check_axiom1(s: &IncidenceStructure) -> CheckReport {
    let mut stats = Stats::default();
    let mut samples = Vec::new();
    for l in s.lines() {
        stats.cases_examined += 1;
        match s.find_skew_triple(s.row(l)) {
            Some((x, y, z)) => samples.push(
                Witness::new("skew_triple", "pairwise skew triple meeting the line")
                    .with_line("l", l)
                    .with_line("x", x)
                    .with_line("y", y)
                    .with_line("z", z),
            ),
            None => {
                let w = Witness::new("no_skew_triple", "no pairwise skew triple meets the line")
                    .with_line("l", l)
                    .with_set("perp", s.row(l).clone());
                return CheckReport::fail(AXIOM_1, w, stats);
            }
        }
    }
    CheckReport::pass(AXIOM_1, stats).with_samples(samples)
}

/// `[a b]` contains a skew pair for every incident pair of distinct lines.
pub fn check_axiom2_1(s: &IncidenceStructure) -> CheckReport {
    let mut stats = Stats::default();
    let mut samples = Vec::new();
    for (a, b) in s.incident_pairs() {
        stats.cases_examined += 1;
        let ab = s.bracket_unchecked(&[a, b]);
        match s.find_skew_pair(&ab) {
            Some((x, y)) => samples.push(
                Witness::new("skew_pair", "skew pair in [a b]")
                    .with_line("a", a)
                    .with_line("b", b)
                    .with_line("x", x)
                    .with_line("y", y),
            ),
            None => {
                let w = Witness::new("no_skew_pair", "[a b] contains no skew pair")
                    .with_line("a", a)
                    .with_line("b", b)
                    .with_set("ab", ab);
                return CheckReport::fail(AXIOM_2_1, w, stats);
            }
        }
    }
    CheckReport::pass(AXIOM_2_1, stats).with_samples(samples)
}

/// `[a b z]` is pairwise incident for every `z` in `sigma(a, b)`.
pub fn check_axiom2_2(s: &IncidenceStructure) -> CheckReport {
    let mut stats = Stats::default();
    for (a, b) in s.incident_pairs() {
        let ab = s.bracket_unchecked(&[a, b]);
        let sig = ab.difference(&s.perp_unchecked(&ab));
        for z in &sig {
            stats.cases_examined += 1;
            let abz = ab.intersection(s.row(z));
            if let Some((x, y)) = s.find_skew_pair(&abz) {
                let w = Witness::new("skew_pair_in_abz", "[a b z] contains a skew pair")
                    .with_line("a", a)
                    .with_line("b", b)
                    .with_line("z", z)
                    .with_line("x", x)
                    .with_line("y", y);
                return CheckReport::fail(AXIOM_2_2, w, stats);
            }
        }
    }
    CheckReport::pass(AXIOM_2_2, stats)
}

/// Every member of `[a b]` meets at least one line of each skew pair in `[a b]`.
pub fn check_axiom2_3(s: &IncidenceStructure) -> CheckReport {
    let mut stats = Stats::default();
    for (a, b) in s.incident_pairs() {
        let ab = s.bracket_unchecked(&[a, b]);
        for x in &ab {
            for y in ab.difference(s.row(x)).iter().filter(|y| *y > x) {
                stats.cases_examined += 1;
                let covered = s.row(x).union(s.row(y));
                if let Some(l) = ab.difference(&covered).first() {
                    let w = Witness::new(
                        "uncovered_line",
                        "a line of [a b] meets neither line of a skew pair in [a b]",
                    )
                    .with_line("a", a)
                    .with_line("b", b)
                    .with_line("x", x)
                    .with_line("y", y)
                    .with_line("l", l);
                    return CheckReport::fail(AXIOM_2_3, w, stats);
                }
            }
        }
    }
    CheckReport::pass(AXIOM_2_3, stats)
}

/// Distinct secondary elements, each with the least triad generating it.
pub(crate) fn elements_with_triads(
    s: &IncidenceStructure,
) -> BTreeMap<LineSet, (LineId, LineId, LineId)> {
    let mut out = BTreeMap::new();
    for (a, b) in s.incident_pairs() {
        for c in &sigma::sigma_unchecked(s, a, b) {
            out.entry(s.bracket_unchecked(&[a, b, c]))
                .or_insert((a, b, c));
        }
    }
    out
}

fn with_triad(w: Witness, prefix: &str, t: (LineId, LineId, LineId)) -> Witness {
    w.with_line(&format!("{prefix}1"), t.0)
        .with_line(&format!("{prefix}2"), t.1)
        .with_line(&format!("{prefix}3"), t.2)
}

fn triad_of(w: &Witness, prefix: &str) -> Option<[LineId; 3]> {
    Some([
        w.line(&format!("{prefix}1"))?,
        w.line(&format!("{prefix}2"))?,
        w.line(&format!("{prefix}3"))?,
    ])
}

/// Every triad has a triad with disjoint bracket. Checked once per distinct
/// secondary element, since triads with equal brackets are interchangeable.
pub fn check_axiom3(s: &IncidenceStructure) -> CheckReport {
    let mut stats = Stats::default();
    let elements: Vec<_> = elements_with_triads(s).into_iter().collect();
    stats.count("elements", elements.len() as u64);
    let mut samples = Vec::new();
    for (e, t) in &elements {
        stats.cases_examined += 1;
        match elements.iter().find(|(f, _)| e.is_disjoint(f)) {
            Some((_, u)) => samples.push(with_triad(
                with_triad(
                    Witness::new("disjoint_triads", "triads with disjoint brackets"),
                    "t",
                    *t,
                ),
                "u",
                *u,
            )),
            None => {
                let w = with_triad(
                    Witness::new(
                        "no_disjoint_triad",
                        "no triad bracket is disjoint from [t1 t2 t3]",
                    ),
                    "t",
                    *t,
                )
                .with_set("bracket", e.clone());
                return CheckReport::fail(AXIOM_3, w, stats);
            }
        }
    }
    CheckReport::pass(AXIOM_3, stats).with_samples(samples)
}

/// Two points always share a line, and so do two planes, under the seeded
/// labeling. The labeling itself must verify.
pub fn check_axiom4(s: &IncidenceStructure) -> CheckReport {
    let m = match labeling::coordinate_labels(s, None) {
        Ok(m) => m,
        Err(Error::NotTwoClasses { a, b, failure }) => {
            return CheckReport::dependency_unmet(
                AXIOM_4,
                "axiom_2",
                format!(
                    "sigma({}, {}) does not split into two incidence classes ({failure})",
                    s.label(a),
                    s.label(b)
                ),
            )
        }
        Err(Error::LabelInconsistency(i @ Inconsistency::ClassBracketsDiffer { .. })) => {
            return CheckReport::dependency_unmet(AXIOM_4, "axiom_2", i.to_string())
        }
        Err(Error::LabelInconsistency(i)) => {
            let seed_set = seed_element(s).unwrap_or_default();
            let w = inconsistency_witness(&i).with_set("seed_element", seed_set);
            return CheckReport::fail(AXIOM_4, w, Stats::default());
        }
        Err(e) => return CheckReport::dependency_unmet(AXIOM_4, "labeling", e.to_string()),
    };
    let mut stats = Stats::default();
    stats.count("points", m.points().len() as u64);
    stats.count("planes", m.planes().len() as u64);
    stats.count("incident_pairs", s.incident_pairs().count() as u64);
    for kind in [Kind::Point, Kind::Plane] {
        let family = m.elements(kind);
        for (i, x) in family.iter().enumerate() {
            for y in &family[i + 1..] {
                stats.cases_examined += 1;
                if x.is_disjoint(y) {
                    let w = inconsistency_witness(&Inconsistency::Vacancy {
                        kind,
                        first: x.clone(),
                        second: y.clone(),
                    });
                    return CheckReport::fail(AXIOM_4, w, stats);
                }
            }
        }
    }
    CheckReport::pass(AXIOM_4, stats)
}

/// The bracket named a point by the default seed.
fn seed_element(s: &IncidenceStructure) -> Option<LineSet> {
    let (a, b) = s.incident_pairs().next()?;
    let part = sigma::sigma_partition(s, a, b).ok()?;
    Some(s.bracket_unchecked(&[a, b, part.class_0.first()?]))
}

fn inconsistency_witness(i: &Inconsistency) -> Witness {
    let w = |tag: &str| Witness::new(tag, i.to_string());
    match i {
        Inconsistency::ClassBracketsDiffer {
            a,
            b,
            first,
            second,
        } => w("class_brackets_differ")
            .with_line("a", *a)
            .with_line("b", *b)
            .with_line("c1", *first)
            .with_line("c2", *second),
        Inconsistency::PairSameKind {
            a,
            b,
            first,
            second,
            ..
        } => w("pair_same_kind")
            .with_line("a", *a)
            .with_line("b", *b)
            .with_set("first", first.clone())
            .with_set("second", second.clone()),
        Inconsistency::PointIsPlane { lines } => {
            w("point_is_plane").with_set("first", lines.clone())
        }
        Inconsistency::SameKindOverlap {
            first,
            second,
            common,
            ..
        } => w("same_kind_overlap")
            .with_set("first", first.clone())
            .with_set("second", second.clone())
            .with_set("common", common.clone()),
        Inconsistency::Vacancy { first, second, .. } => w("vacancy")
            .with_set("first", first.clone())
            .with_set("second", second.clone()),
        Inconsistency::OppositeSingleton { point, plane, line } => w("opposite_singleton")
            .with_set("first", point.clone())
            .with_set("second", plane.clone())
            .with_line("l", *line),
        Inconsistency::UnknownElement { lines, .. } => {
            w("unknown_element").with_set("first", lines.clone())
        }
        Inconsistency::SeedMismatch { seed } => w("seed_mismatch")
            .with_line("a", seed.pair.0)
            .with_line("b", seed.pair.1),
    }
}

/// Runs the six checks in order [1], [2.1], [2.2], [2.3], [3], [4].
pub fn check_all(s: &IncidenceStructure) -> Vec<CheckReport> {
    vec![
        check_axiom1(s),
        check_axiom2_1(s),
        check_axiom2_2(s),
        check_axiom2_3(s),
        check_axiom3(s),
        check_axiom4(s),
    ]
}

/// Re-evaluates a failing report's counterexample directly against `s`.
///
/// Returns `Ok(true)` when the counterexample is a genuine violation. Passing
/// reports have nothing to replay and give `Ok(false)`.
pub fn replay(s: &IncidenceStructure, report: &CheckReport) -> Result<bool> {
    let Some(w) = &report.counterexample else {
        return Ok(false);
    };
    let line = |name: &str| {
        let l = w
            .line(name)
            .ok_or_else(|| Error::Parse(format!("counterexample lacks line {name:?}")))?;
        s.check_line(l)?;
        Ok::<LineId, Error>(l)
    };
    let set = |name: &str| {
        w.set(name)
            .ok_or_else(|| Error::Parse(format!("counterexample lacks set {name:?}")))
    };
    let incident_distinct = |a: LineId, b: LineId| a != b && s.meets(a, b);
    Ok(match (report.check_name.as_str(), w.tag.as_str()) {
        (AXIOM_1, "no_skew_triple") => s.find_skew_triple(s.row(line("l")?)).is_none(),
        (AXIOM_2_1, "no_skew_pair") => {
            let (a, b) = (line("a")?, line("b")?);
            incident_distinct(a, b) && s.find_skew_pair(&s.bracket(&[a, b])?).is_none()
        }
        (AXIOM_2_2, "skew_pair_in_abz") => {
            let (a, b, z) = (line("a")?, line("b")?, line("z")?);
            let (x, y) = (line("x")?, line("y")?);
            incident_distinct(a, b)
                && sigma::sigma(s, a, b)?.contains(z)
                && s.bracket(&[a, b, z])?.contains(x)
                && s.bracket(&[a, b, z])?.contains(y)
                && !s.meets(x, y)
        }
        (AXIOM_2_3, "uncovered_line") => {
            let (a, b) = (line("a")?, line("b")?);
            let (x, y, l) = (line("x")?, line("y")?, line("l")?);
            let ab = s.bracket(&[a, b])?;
            incident_distinct(a, b)
                && [x, y, l].iter().all(|m| ab.contains(*m))
                && !s.meets(x, y)
                && !s.meets(l, x)
                && !s.meets(l, y)
        }
        (AXIOM_3, "no_disjoint_triad") => {
            let t = triad_of(w, "t").ok_or_else(|| Error::Parse("missing triad".into()))?;
            for l in t {
                s.check_line(l)?;
            }
            let e = s.bracket(&t)?;
            sigma::is_triad(s, t[0], t[1], t[2])?
                && labeling::enumerate_secondary_elements(s)
                    .iter()
                    .all(|f| !e.is_disjoint(f))
        }
        (AXIOM_4, "dependency_unmet") => labeling::coordinate_labels(s, None).is_err(),
        (AXIOM_4, tag) => replay_labeling(s, tag, &set)?,
        _ => false,
    })
}

fn replay_labeling<'a>(
    s: &IncidenceStructure,
    tag: &str,
    set: &dyn Fn(&str) -> Result<&'a LineSet>,
) -> Result<bool> {
    let z = set("seed_element")?.clone();
    let elements = labeling::enumerate_secondary_elements(s);
    let is_element = |e: &LineSet| elements.binary_search(e).is_ok();
    let kind = |e: &LineSet| {
        if *e == z || e.intersection_len(&z) == 1 {
            Kind::Point
        } else {
            Kind::Plane
        }
    };
    let first = set("first")?;
    Ok(match tag {
        "pair_same_kind" => {
            let second = set("second")?;
            is_element(first) && is_element(second) && kind(first) == kind(second)
        }
        "same_kind_overlap" => {
            let second = set("second")?;
            is_element(first)
                && is_element(second)
                && first != second
                && kind(first) == kind(second)
                && first.intersection_len(second) > 1
        }
        "vacancy" => {
            let second = set("second")?;
            is_element(first)
                && is_element(second)
                && kind(first) == kind(second)
                && first.is_disjoint(second)
        }
        "opposite_singleton" => {
            let second = set("second")?;
            is_element(first)
                && is_element(second)
                && kind(first) != kind(second)
                && first.intersection_len(second) == 1
        }
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{gen_negative, gen_tetrahedron, NegativeKind};
    use crate::report::Outcome;

    #[test]
    fn tetrahedron_fails_only_axiom1() {
        let t = gen_tetrahedron();
        let outcomes: Vec<Outcome> = check_all(&t).iter().map(|r| r.outcome).collect();
        use Outcome::*;
        assert_eq!(outcomes, vec![Fail, Pass, Pass, Pass, Pass, Pass]);
        let r1 = check_axiom1(&t);
        assert_eq!(
            r1.counterexample.as_ref().unwrap().line("l"),
            Some(LineId(0))
        );
        assert!(replay(&t, &r1).unwrap());
    }

    #[test]
    fn tetrahedron_axiom3_witness() {
        let t = gen_tetrahedron();
        let r = check_axiom3(&t);
        assert!(r.passed());
        assert_eq!(r.stats.get("elements"), Some(8));
        assert_eq!(r.witness_sample.len(), 8);
        // {a, b, c} is disjoint from {ah, bh, ch}
        let sample = r
            .witness_sample
            .iter()
            .find(|w| triad_of(w, "t") == Some([LineId(0), LineId(1), LineId(2)]))
            .unwrap();
        let u = triad_of(sample, "u").unwrap();
        assert!(t
            .bracket(&u)
            .unwrap()
            .is_disjoint(&t.bracket(&[LineId(0), LineId(1), LineId(2)]).unwrap()));
    }

    #[test]
    fn single_line_fails_axiom1() {
        let s = gen_negative(NegativeKind::SingleLine);
        let r = check_axiom1(&s);
        assert!(!r.passed());
        assert!(replay(&s, &r).unwrap());
    }

    #[test]
    fn three_incident_lines_fail_axiom2_1() {
        let labels = ["x", "y", "z"].map(String::from).to_vec();
        let s = IncidenceStructure::from_skew_pairs("k3", labels, &[]).unwrap();
        let r = check_axiom2_1(&s);
        assert!(!r.passed());
        assert!(replay(&s, &r).unwrap());
    }

    #[test]
    fn pasch_violation_names_skew_pair() {
        let s = gen_negative(NegativeKind::PaschViolation);
        let r = check_axiom2_2(&s);
        assert!(!r.passed());
        let w = r.counterexample.as_ref().unwrap();
        let (x, y) = (w.line("x").unwrap(), w.line("y").unwrap());
        assert!(!s.meets(x, y));
        assert!(replay(&s, &r).unwrap());
    }

    #[test]
    fn axiom2_3_equivalent_union_form() {
        // [a b] = [a b x] ∪ [a b y] for every skew pair x, y of [a b]
        let t = gen_tetrahedron();
        assert!(check_axiom2_3(&t).passed());
        for (a, b) in t.incident_pairs() {
            let ab = t.bracket(&[a, b]).unwrap();
            if let Some((x, y)) = t.find_skew_pair(&ab) {
                let union = t
                    .bracket(&[a, b, x])
                    .unwrap()
                    .union(&t.bracket(&[a, b, y]).unwrap());
                assert_eq!(ab, union);
            }
        }
    }

    #[test]
    fn axiom2_3_failure_replays() {
        // a, b meet everything; x | y; l skew to both x and y
        let labels = ["a", "b", "x", "y", "l"].map(String::from).to_vec();
        let s = IncidenceStructure::from_skew_pairs("uncovered", labels, &[(2, 3), (2, 4), (3, 4)])
            .unwrap();
        let r = check_axiom2_3(&s);
        assert!(!r.passed());
        assert!(replay(&s, &r).unwrap());
    }

    #[test]
    fn axiom3_fails_without_disjoint_elements() {
        // elements {a, b, x} and {a, b, y} overlap
        let labels = ["a", "b", "x", "y"].map(String::from).to_vec();
        let s = IncidenceStructure::from_skew_pairs("overlap", labels, &[(2, 3)]).unwrap();
        let r = check_axiom3(&s);
        assert!(!r.passed());
        assert!(replay(&s, &r).unwrap());
    }

    #[test]
    fn two_components_fail_axiom4() {
        let s = gen_negative(NegativeKind::TwoComponents);
        let r = check_axiom4(&s);
        assert_eq!(r.outcome, Outcome::Fail);
        assert!(replay(&s, &r).unwrap());
    }

    #[test]
    fn negative_fixtures_match_expected_vectors() {
        for kind in NegativeKind::ALL {
            let s = gen_negative(kind);
            let reports = check_all(&s);
            let got: Vec<Outcome> = reports.iter().map(|r| r.outcome).collect();
            assert_eq!(got, kind.expected_outcomes().to_vec(), "{kind}");
            for r in reports.iter().filter(|r| !r.passed()) {
                assert!(replay(&s, r).unwrap(), "{kind}: {}", r.check_name);
            }
        }
    }
}
