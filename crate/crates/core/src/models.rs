//! Structure generators: the six-edge tetrahedron, PG(3,q) over prime fields,
//! and small fixtures that break specific axioms.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{self, Row};
use crate::incidence::{IncidenceStructure, LineId, LineSet};
use crate::labeling::{GeometryModel, Kind};
use crate::report::{CheckReport, Outcome, Stats, Witness};

pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

/// The six edges of a tetrahedron: base edges `a, b, c` and the edges
/// `ah, bh, ch` joining the apex to the opposite vertices. Opposite edges are
/// skew; every other pair meets.
pub fn gen_tetrahedron() -> IncidenceStructure {
    let labels = ["a", "b", "c", "ah", "bh", "ch"].map(String::from).to_vec();
    IncidenceStructure::from_skew_pairs("tetrahedron", labels, &[(0, 3), (1, 4), (2, 5)])
        .expect("fixed fixture is well formed")
}

/// Coordinates of a generated PG(3,q), all in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pg3Metadata {
    pub q: u32,
    pub line_reps: Vec<[Row; 2]>,
    pub point_reps: Vec<Row>,
    pub plane_reps: Vec<[Row; 3]>,
}

impl Pg3Metadata {
    pub fn expected_line_count(&self) -> usize {
        let q = self.q as usize;
        (q * q + 1) * (q * q + q + 1)
    }

    pub fn expected_point_count(&self) -> usize {
        let q = self.q as usize;
        (q + 1) * (q * q + 1)
    }

    /// For each coordinate point, the lines through it.
    pub fn bundles(&self) -> Vec<LineSet> {
        self.point_reps
            .iter()
            .map(|p| {
                self.line_reps
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| field::rank(&[l[0], l[1], *p], self.q) == 2)
                    .map(|(i, _)| LineId(i))
                    .collect()
            })
            .collect()
    }

    /// For each coordinate plane, the lines in it.
    pub fn ruled_planes(&self) -> Vec<LineSet> {
        self.plane_reps
            .iter()
            .map(|pl| {
                self.line_reps
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| field::rank(&[pl[0], pl[1], pl[2], l[0], l[1]], self.q) == 3)
                    .map(|(i, _)| LineId(i))
                    .collect()
            })
            .collect()
    }

    /// Seed naming the class of the least incident pair that lies in the
    /// coordinate bundle, so that derived points are bundles of lines.
    pub fn classical_seed(&self, s: &IncidenceStructure) -> Result<crate::labeling::Seed> {
        let (a, b) = s
            .incident_pairs()
            .next()
            .ok_or_else(|| Error::precondition("structure has no incident pair"))?;
        let part = crate::sigma::sigma_partition(s, a, b)?;
        let bundle = self
            .bundles()
            .into_iter()
            .find(|p| p.contains(a) && p.contains(b))
            .ok_or_else(|| Error::precondition("lines do not share a coordinate point"))?;
        let c = part.class_0.first().expect("classes are nonempty");
        Ok(crate::labeling::Seed {
            pair: (a, b),
            class_of: if bundle.contains(c) { 0 } else { 1 },
        })
    }
}

fn row_label(r: &Row) -> String {
    r.iter().map(|x| x.to_string()).collect()
}

/// Lines of PG(3,q): two-dimensional subspaces of GF(q)^4, numbered in
/// lexicographic order of their reduced row-echelon bases. Two distinct lines
/// are incident when their stacked bases have rank below four.
pub fn gen_pg3(q: u32) -> Result<(IncidenceStructure, Pg3Metadata)> {
    if !SUPPORTED_PRIMES.contains(&q) {
        return Err(Error::UnsupportedField(q));
    }
    let line_reps: Vec<[Row; 2]> = field::subspaces(2, q)
        .into_iter()
        .map(|m| [m[0], m[1]])
        .collect();
    let point_reps: Vec<Row> = field::subspaces(1, q).into_iter().map(|m| m[0]).collect();
    let plane_reps: Vec<[Row; 3]> = field::subspaces(3, q)
        .into_iter()
        .map(|m| [m[0], m[1], m[2]])
        .collect();
    let labels = line_reps
        .iter()
        .map(|l| format!("{}.{}", row_label(&l[0]), row_label(&l[1])))
        .collect();
    let structure = IncidenceStructure::from_predicate(format!("PG(3,{q})"), labels, |i, j| {
        let (x, y) = (&line_reps[i], &line_reps[j]);
        field::rank(&[x[0], x[1], y[0], y[1]], q) < 4
    })?;
    Ok((
        structure,
        Pg3Metadata {
            q,
            line_reps,
            point_reps,
            plane_reps,
        },
    ))
}

/// Small structures that each break a specific axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NegativeKind {
    /// Four pairwise incident lines.
    NoSkewAnywhere,
    /// The tetrahedron plus a seventh line meeting all six edges. The extra
    /// line lies in every bracket, so no two brackets are disjoint either.
    PaschViolation,
    /// Two tetrahedra with no incidence between them.
    TwoComponents,
    /// A single line.
    SingleLine,
}

impl NegativeKind {
    pub const ALL: [NegativeKind; 4] = [
        NegativeKind::NoSkewAnywhere,
        NegativeKind::PaschViolation,
        NegativeKind::TwoComponents,
        NegativeKind::SingleLine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NegativeKind::NoSkewAnywhere => "no_skew_anywhere",
            NegativeKind::PaschViolation => "pasch_violation",
            NegativeKind::TwoComponents => "two_components",
            NegativeKind::SingleLine => "single_line",
        }
    }

    /// Outcomes of `check_all`, in the order [1], [2.1], [2.2], [2.3], [3], [4].
    pub fn expected_outcomes(self) -> [Outcome; 6] {
        use Outcome::*;
        match self {
            NegativeKind::NoSkewAnywhere => [Fail, Fail, Pass, Pass, Pass, DependencyUnmet],
            NegativeKind::PaschViolation => [Fail, Pass, Fail, Pass, Fail, DependencyUnmet],
            NegativeKind::TwoComponents => [Fail, Pass, Pass, Pass, Pass, Fail],
            NegativeKind::SingleLine => [Fail, Pass, Pass, Pass, Pass, Pass],
        }
    }
}

impl fmt::Display for NegativeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NegativeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NegativeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown negative fixture {s:?}")))
    }
}

pub fn gen_negative(kind: NegativeKind) -> IncidenceStructure {
    let strings = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let built = match kind {
        NegativeKind::NoSkewAnywhere => {
            IncidenceStructure::from_skew_pairs(kind.name(), strings(&["p", "q", "r", "s"]), &[])
        }
        NegativeKind::PaschViolation => IncidenceStructure::from_skew_pairs(
            kind.name(),
            strings(&["a", "b", "c", "ah", "bh", "ch", "t"]),
            &[(0, 3), (1, 4), (2, 5)],
        ),
        NegativeKind::TwoComponents => {
            let mut labels = strings(&["a", "b", "c", "ah", "bh", "ch"]);
            labels.extend(labels.clone().into_iter().map(|l| format!("{l}2")));
            let mut skew = vec![(0, 3), (1, 4), (2, 5), (6, 9), (7, 10), (8, 11)];
            skew.extend((0..6).flat_map(|i| (6..12).map(move |j| (i, j))));
            IncidenceStructure::from_skew_pairs(kind.name(), labels, &skew)
        }
        NegativeKind::SingleLine => {
            IncidenceStructure::from_skew_pairs(kind.name(), strings(&["l"]), &[])
        }
    };
    built.expect("fixed fixture is well formed")
}

/// Cross-validates a derived model against coordinate subspaces: derived
/// points must be exactly the bundles of lines through coordinate points,
/// derived planes exactly the line sets of coordinate planes, and each
/// `sigma(a, b)` the symmetric difference of the bundle and plane through
/// `a` and `b`.
pub fn verify_counts(meta: &Pg3Metadata, m: &GeometryModel) -> CheckReport {
    const NAME: &str = "pg3_counts";
    let s = m.structure();
    let mut stats = Stats::default();
    stats.count("lines", s.line_count() as u64);
    stats.count("points", m.points().len() as u64);
    stats.count("planes", m.planes().len() as u64);

    if s.line_count() != meta.expected_line_count() || meta.line_reps.len() != s.line_count() {
        let w = Witness::new(
            "line_count",
            format!(
                "structure has {} lines, coordinates predict {}",
                s.line_count(),
                meta.expected_line_count()
            ),
        );
        return CheckReport::fail(NAME, w, stats);
    }

    let mut bundles = meta.bundles();
    let mut ruled = meta.ruled_planes();
    for (kind, coords) in [(Kind::Point, &mut bundles), (Kind::Plane, &mut ruled)] {
        let derived = m.elements(kind);
        if coords.len() != meta.expected_point_count() || derived.len() != coords.len() {
            let w = Witness::new(
                "element_count",
                format!(
                    "{} derived {kind}s, {} coordinate {kind}s, {} expected",
                    derived.len(),
                    coords.len(),
                    meta.expected_point_count()
                ),
            );
            return CheckReport::fail(NAME, w, stats);
        }
        coords.sort();
        for e in derived {
            stats.cases_examined += 1;
            stats.observe_range(&format!("{}_size", kind.name()), e.len() as u64);
            if coords.binary_search(e).is_err() {
                let w = Witness::new(
                    "unmatched_element",
                    format!("derived {kind} matches no coordinate {kind}"),
                )
                .with_set("element", e.clone());
                return CheckReport::fail(NAME, w, stats);
            }
        }
    }

    for (a, b) in s.incident_pairs() {
        stats.cases_examined += 1;
        let through = |family: &[LineSet]| {
            family
                .iter()
                .find(|e| e.contains(a) && e.contains(b))
                .cloned()
        };
        let (Some(bundle), Some(plane)) = (through(&bundles), through(&ruled)) else {
            let w = Witness::new(
                "no_common_coordinates",
                "incident lines share no coordinate point or plane",
            )
            .with_line("a", a)
            .with_line("b", b);
            return CheckReport::fail(NAME, w, stats);
        };
        let sig = crate::sigma::sigma_unchecked(s, a, b);
        if sig != bundle.symmetric_difference(&plane) {
            let w = Witness::new(
                "sigma_not_symmetric_difference",
                "sigma differs from bundle/plane symmetric difference",
            )
            .with_line("a", a)
            .with_line("b", b)
            .with_set("sigma", sig);
            return CheckReport::fail(NAME, w, stats);
        }
    }
    CheckReport::pass(NAME, stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_shape() {
        let t = gen_tetrahedron();
        assert_eq!(t.line_count(), 6);
        let skew: Vec<_> = t.skew_pairs().map(|(a, b)| (a.0, b.0)).collect();
        assert_eq!(skew, vec![(0, 3), (1, 4), (2, 5)]);
        assert_eq!(t.incident_pairs().count(), 12);
    }

    #[test]
    fn pg3_2_incidence_degree() {
        let (s, meta) = gen_pg3(2).unwrap();
        assert_eq!(s.line_count(), 35);
        assert_eq!(meta.point_reps.len(), 15);
        assert_eq!(meta.plane_reps.len(), 15);
        for l in s.lines() {
            assert_eq!(s.row(l).len(), 19);
        }
        assert_eq!(s.label(LineId(0)), "0010.0001");
    }

    #[test]
    fn unsupported_fields() {
        for q in [0, 1, 4, 9, 11] {
            assert!(matches!(gen_pg3(q), Err(Error::UnsupportedField(_))));
        }
    }

    #[test]
    fn negative_names_round_trip() {
        for k in NegativeKind::ALL {
            assert_eq!(k.name().parse::<NegativeKind>().unwrap(), k);
        }
        assert!("bogus".parse::<NegativeKind>().is_err());
        assert_eq!(gen_negative(NegativeKind::TwoComponents).line_count(), 12);
        assert_eq!(gen_negative(NegativeKind::SingleLine).line_count(), 1);
    }
}
