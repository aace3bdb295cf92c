//! Secondary elements and the global point/plane labeling.
//!
//! Every incident pair of distinct lines splits its sigma set into two
//! incidence classes; bracketing the pair with a member of either class gives
//! two secondary elements. One seed element is named a point; every other
//! element `e` is then a point exactly when `|e ∩ seed| = 1`. The result is
//! verified in a second pass and any failure is reported as an
//! [`Inconsistency`] with a concrete witness.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::incidence::{IncidenceStructure, LineId, LineSet};
use crate::sigma::{self, SigmaPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Point,
    Plane,
}

impl Kind {
    pub fn dual(self) -> Kind {
        match self {
            Kind::Point => Kind::Plane,
            Kind::Plane => Kind::Point,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Point => "point",
            Kind::Plane => "plane",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which incidence class of which pair is named a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Seed {
    pub pair: (LineId, LineId),
    /// 0 selects the class holding the least member of sigma, 1 the other.
    pub class_of: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondaryElement {
    pub lines: LineSet,
    pub kind: Kind,
    /// A triad whose bracket is `lines`.
    pub triad: (LineId, LineId, LineId),
}

/// A concrete reason why a labeling is not coherent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inconsistency {
    /// Two members of one incidence class of `(a, b)` give different brackets.
    ClassBracketsDiffer {
        a: LineId,
        b: LineId,
        first: LineId,
        second: LineId,
    },
    /// Both classes of `(a, b)` received the same kind.
    PairSameKind {
        a: LineId,
        b: LineId,
        kind: Kind,
        first: LineSet,
        second: LineSet,
    },
    /// The same set of lines is listed as both a point and a plane.
    PointIsPlane { lines: LineSet },
    /// Two distinct elements of one kind share more than one line.
    SameKindOverlap {
        kind: Kind,
        first: LineSet,
        second: LineSet,
        common: LineSet,
    },
    /// Two elements of one kind share no line.
    Vacancy {
        kind: Kind,
        first: LineSet,
        second: LineSet,
    },
    /// A point and a plane share exactly one line.
    OppositeSingleton {
        point: LineSet,
        plane: LineSet,
        line: LineId,
    },
    /// A listed element is not a secondary element, or a secondary element is
    /// missing from the lists.
    UnknownElement { lines: LineSet, listed: bool },
    /// The seed's chosen class does not bracket to a listed point.
    SeedMismatch { seed: Seed },
}

impl fmt::Display for Inconsistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inconsistency::ClassBracketsDiffer {
                a,
                b,
                first,
                second,
            } => write!(
                f,
                "lines {first} and {second} lie in one class of sigma({a}, {b}) but bracket differently"
            ),
            Inconsistency::PairSameKind { a, b, kind, .. } => {
                write!(f, "both classes of sigma({a}, {b}) are labeled {kind}")
            }
            Inconsistency::PointIsPlane { lines } => {
                write!(f, "{lines:?} is labeled both point and plane")
            }
            Inconsistency::SameKindOverlap {
                kind,
                first,
                second,
                common,
            } => write!(
                f,
                "{kind}s {first:?} and {second:?} share {} lines",
                common.len()
            ),
            Inconsistency::Vacancy {
                kind,
                first,
                second,
            } => write!(f, "{kind}s {first:?} and {second:?} share no line"),
            Inconsistency::OppositeSingleton { point, plane, line } => write!(
                f,
                "point {point:?} and plane {plane:?} share only line {line}"
            ),
            Inconsistency::UnknownElement { lines, listed } => {
                if *listed {
                    write!(f, "{lines:?} is listed but is not a secondary element")
                } else {
                    write!(f, "secondary element {lines:?} is not listed")
                }
            }
            Inconsistency::SeedMismatch { seed } => write!(
                f,
                "seed class {} of pair ({}, {}) does not bracket to a point",
                seed.class_of, seed.pair.0, seed.pair.1
            ),
        }
    }
}

/// A structure together with its derived points and planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometryModel {
    structure: IncidenceStructure,
    points: Vec<LineSet>,
    planes: Vec<LineSet>,
    seed: Option<Seed>,
}

impl GeometryModel {
    /// Assembles a model without verifying it; see [`GeometryModel::verify`].
    pub fn from_parts(
        structure: IncidenceStructure,
        mut points: Vec<LineSet>,
        mut planes: Vec<LineSet>,
        seed: Option<Seed>,
    ) -> Self {
        points.sort();
        points.dedup();
        planes.sort();
        planes.dedup();
        GeometryModel {
            structure,
            points,
            planes,
            seed,
        }
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    /// Points in ascending order.
    pub fn points(&self) -> &[LineSet] {
        &self.points
    }

    /// Planes in ascending order.
    pub fn planes(&self) -> &[LineSet] {
        &self.planes
    }

    pub fn elements(&self, kind: Kind) -> &[LineSet] {
        match kind {
            Kind::Point => &self.points,
            Kind::Plane => &self.planes,
        }
    }

    pub fn seed(&self) -> Option<Seed> {
        self.seed
    }

    pub fn kind_of(&self, lines: &LineSet) -> Option<Kind> {
        if self.points.binary_search(lines).is_ok() {
            Some(Kind::Point)
        } else if self.planes.binary_search(lines).is_ok() {
            Some(Kind::Plane)
        } else {
            None
        }
    }

    /// Re-runs the full consistency verification.
    pub fn verify(&self) -> Result<()> {
        let pairs = pair_brackets(&self.structure)?;
        let mut known = BTreeSet::new();
        for p in &pairs {
            for e in &p.brackets {
                known.insert(e.clone());
            }
        }
        for e in self.points.iter().chain(&self.planes) {
            if !known.contains(e) {
                return inconsistent(Inconsistency::UnknownElement {
                    lines: e.clone(),
                    listed: true,
                });
            }
        }
        if let Some(lines) = self
            .points
            .iter()
            .find(|p| self.planes.binary_search(p).is_ok())
        {
            return inconsistent(Inconsistency::PointIsPlane {
                lines: lines.clone(),
            });
        }
        for e in &known {
            if self.kind_of(e).is_none() {
                return inconsistent(Inconsistency::UnknownElement {
                    lines: e.clone(),
                    listed: false,
                });
            }
        }
        if let Some(seed) = self.seed {
            let info = pairs
                .iter()
                .find(|p| p.partition.pair == seed.pair)
                .ok_or_else(|| invalid_seed(seed))?;
            if self.kind_of(&info.brackets[seed.class_of]) != Some(Kind::Point) {
                return inconsistent(Inconsistency::SeedMismatch { seed });
            }
        }
        verify_labeling(
            &pairs,
            &|e| self.kind_of(e).expect("listed above"),
            &self.points,
            &self.planes,
        )
    }

    /// The two incidence classes of `(a, b)`, each tagged with the kind of
    /// the element it brackets to.
    pub fn labeled_classes(&self, a: LineId, b: LineId) -> Result<[(Kind, LineSet, LineSet); 2]> {
        let part = sigma::sigma_partition(&self.structure, a, b)?;
        let mut out = Vec::with_capacity(2);
        for class in [&part.class_0, &part.class_1] {
            let c = class.first().expect("classes are nonempty");
            let lines = self.structure.bracket_unchecked(&[a, b, c]);
            let kind = self.kind_of(&lines).ok_or(Error::MissingElement {
                kind: "secondary element",
                a,
                b,
            })?;
            out.push((kind, class.clone(), lines));
        }
        let [first, second]: [_; 2] = out.try_into().expect("two classes");
        Ok([first, second])
    }

    /// The incidence class of `sigma(a, b)` whose bracket with `a, b` is of `kind`.
    pub fn sigma_class(&self, a: LineId, b: LineId, kind: Kind) -> Result<LineSet> {
        self.labeled_classes(a, b)?
            .into_iter()
            .find(|(k, _, _)| *k == kind)
            .map(|(_, class, _)| class)
            .ok_or(Error::MissingElement {
                kind: kind.name(),
                a,
                b,
            })
    }

    fn element_through(&self, a: LineId, b: LineId, kind: Kind) -> Result<SecondaryElement> {
        let s = &self.structure;
        s.check_line(a)?;
        s.check_line(b)?;
        if a == b || !s.meets(a, b) {
            return Err(Error::precondition(format!(
                "the {kind} of two lines needs distinct incident lines, got {a} and {b}"
            )));
        }
        let [x, y] = self.labeled_classes(a, b)?;
        let (_, class, lines) =
            [x, y]
                .into_iter()
                .find(|(k, _, _)| *k == kind)
                .ok_or(Error::MissingElement {
                    kind: kind.name(),
                    a,
                    b,
                })?;
        let c = class.first().expect("classes are nonempty");
        Ok(SecondaryElement {
            lines,
            kind,
            triad: (a, b, c),
        })
    }
}

fn inconsistent<T>(i: Inconsistency) -> Result<T> {
    Err(Error::LabelInconsistency(i))
}

fn invalid_seed(seed: Seed) -> Error {
    Error::precondition(format!(
        "seed pair ({}, {}) class {} is not an incident pair of distinct lines with class 0 or 1",
        seed.pair.0, seed.pair.1, seed.class_of
    ))
}

/// All sets `[a b c]` over triads `a, b, c`, deduplicated and sorted.
pub fn enumerate_secondary_elements(s: &IncidenceStructure) -> Vec<LineSet> {
    let mut out = BTreeSet::new();
    for (a, b) in s.incident_pairs() {
        let ab = s.bracket_unchecked(&[a, b]);
        let sig = ab.difference(&s.perp_unchecked(&ab));
        for c in &sig {
            let mut e = ab.clone();
            e.intersect_with(s.row(c));
            out.insert(e);
        }
    }
    out.into_iter().collect()
}

/// Per incident pair: its partition and the bracket of each class.
pub(crate) struct PairBrackets {
    pub partition: SigmaPartition,
    pub brackets: [LineSet; 2],
}

pub(crate) fn pair_brackets(s: &IncidenceStructure) -> Result<Vec<PairBrackets>> {
    let mut out = Vec::new();
    for (a, b) in s.incident_pairs() {
        let partition = sigma::sigma_partition(s, a, b)?;
        let ab = s.bracket_unchecked(&[a, b]);
        let mut brackets = Vec::with_capacity(2);
        for class in [&partition.class_0, &partition.class_1] {
            let mut first: Option<(LineId, LineSet)> = None;
            for c in class {
                let mut e = ab.clone();
                e.intersect_with(s.row(c));
                match &first {
                    None => first = Some((c, e)),
                    Some((c0, e0)) if *e0 != e => {
                        return inconsistent(Inconsistency::ClassBracketsDiffer {
                            a,
                            b,
                            first: *c0,
                            second: c,
                        })
                    }
                    Some(_) => {}
                }
            }
            brackets.push(first.expect("classes are nonempty").1);
        }
        let brackets: [LineSet; 2] = brackets.try_into().expect("two classes");
        out.push(PairBrackets {
            partition,
            brackets,
        });
    }
    Ok(out)
}

fn verify_labeling(
    pairs: &[PairBrackets],
    kind_of: &dyn Fn(&LineSet) -> Kind,
    points: &[LineSet],
    planes: &[LineSet],
) -> Result<()> {
    for p in pairs {
        let k0 = kind_of(&p.brackets[0]);
        if k0 == kind_of(&p.brackets[1]) {
            return inconsistent(Inconsistency::PairSameKind {
                a: p.partition.pair.0,
                b: p.partition.pair.1,
                kind: k0,
                first: p.brackets[0].clone(),
                second: p.brackets[1].clone(),
            });
        }
    }
    for (kind, family) in [(Kind::Point, points), (Kind::Plane, planes)] {
        for (i, x) in family.iter().enumerate() {
            for y in &family[i + 1..] {
                let common = x.intersection(y);
                if common.is_empty() {
                    return inconsistent(Inconsistency::Vacancy {
                        kind,
                        first: x.clone(),
                        second: y.clone(),
                    });
                }
                if common.len() > 1 {
                    return inconsistent(Inconsistency::SameKindOverlap {
                        kind,
                        first: x.clone(),
                        second: y.clone(),
                        common,
                    });
                }
            }
        }
    }
    for point in points {
        for plane in planes {
            let common = point.intersection(plane);
            if common.len() == 1 {
                return inconsistent(Inconsistency::OppositeSingleton {
                    point: point.clone(),
                    plane: plane.clone(),
                    line: common.first().expect("nonempty"),
                });
            }
        }
    }
    Ok(())
}

/// Names every secondary element a point or a plane and verifies the result.
///
/// Without a seed, the lexicographically least incident pair is used and its
/// class holding the least member of sigma is named a point.
pub fn coordinate_labels(s: &IncidenceStructure, seed: Option<Seed>) -> Result<GeometryModel> {
    let pairs = pair_brackets(s)?;
    let seed = match seed {
        Some(seed) => {
            if seed.class_of > 1 {
                return Err(invalid_seed(seed));
            }
            let (a, b) = if seed.pair.0 <= seed.pair.1 {
                seed.pair
            } else {
                (seed.pair.1, seed.pair.0)
            };
            if !pairs.iter().any(|p| p.partition.pair == (a, b)) {
                return Err(invalid_seed(seed));
            }
            Some(Seed {
                pair: (a, b),
                class_of: seed.class_of,
            })
        }
        None => pairs.first().map(|p| Seed {
            pair: p.partition.pair,
            class_of: 0,
        }),
    };
    let Some(seed) = seed else {
        return Ok(GeometryModel::from_parts(s.clone(), vec![], vec![], None));
    };
    let z = pairs
        .iter()
        .find(|p| p.partition.pair == seed.pair)
        .map(|p| p.brackets[seed.class_of].clone())
        .expect("seed pair checked above");

    let classify = |e: &LineSet| {
        if *e == z || e.intersection_len(&z) == 1 {
            Kind::Point
        } else {
            Kind::Plane
        }
    };
    let elements: BTreeSet<&LineSet> = pairs.iter().flat_map(|p| p.brackets.iter()).collect();
    let (points, planes): (Vec<&LineSet>, Vec<&LineSet>) = elements
        .into_iter()
        .partition(|e| classify(e) == Kind::Point);
    let points: Vec<LineSet> = points.into_iter().cloned().collect();
    let planes: Vec<LineSet> = planes.into_iter().cloned().collect();
    verify_labeling(&pairs, &classify, &points, &planes)?;
    Ok(GeometryModel::from_parts(
        s.clone(),
        points,
        planes,
        Some(seed),
    ))
}

/// The point containing `a` and `b`.
pub fn meet_point(m: &GeometryModel, a: LineId, b: LineId) -> Result<SecondaryElement> {
    m.element_through(a, b, Kind::Point)
}

/// The plane containing `a` and `b`.
pub fn join_plane(m: &GeometryModel, a: LineId, b: LineId) -> Result<SecondaryElement> {
    m.element_through(a, b, Kind::Plane)
}

/// Exchanges the point and plane labels.
pub fn dualize(m: &GeometryModel) -> GeometryModel {
    GeometryModel {
        structure: m.structure.clone(),
        points: m.planes.clone(),
        planes: m.points.clone(),
        seed: m.seed.map(|s| Seed {
            pair: s.pair,
            class_of: 1 - s.class_of,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{gen_negative, gen_tetrahedron, NegativeKind};

    fn l(i: usize) -> LineId {
        LineId(i)
    }

    fn ids(v: &[usize]) -> LineSet {
        LineSet::from_indices(v.iter().copied())
    }

    // a b c ah bh ch = 0 1 2 3 4 5
    fn vertices() -> Vec<LineSet> {
        let mut v = vec![
            ids(&[0, 1, 5]),
            ids(&[1, 2, 3]),
            ids(&[2, 0, 4]),
            ids(&[3, 4, 5]),
        ];
        v.sort();
        v
    }

    fn faces() -> Vec<LineSet> {
        let mut v = vec![
            ids(&[0, 1, 2]),
            ids(&[3, 4, 2]),
            ids(&[4, 5, 0]),
            ids(&[5, 3, 1]),
        ];
        v.sort();
        v
    }

    #[test]
    fn tetrahedron_elements() {
        let t = gen_tetrahedron();
        let mut expected = vertices();
        expected.extend(faces());
        expected.sort();
        assert_eq!(enumerate_secondary_elements(&t), expected);
    }

    #[test]
    fn no_incident_pairs_no_elements() {
        let labels = ["x", "y", "z"].map(String::from).to_vec();
        let s =
            IncidenceStructure::from_skew_pairs("skew", labels, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(enumerate_secondary_elements(&s).is_empty());
        let m = coordinate_labels(&s, None).unwrap();
        assert!(m.points().is_empty() && m.planes().is_empty() && m.seed().is_none());
    }

    #[test]
    fn seeded_tetrahedron_labels() {
        let t = gen_tetrahedron();
        let seed = Seed {
            pair: (l(0), l(1)),
            class_of: 1,
        };
        let m = coordinate_labels(&t, Some(seed)).unwrap();
        assert_eq!(m.points(), vertices().as_slice());
        assert_eq!(m.planes(), faces().as_slice());
        assert_eq!(meet_point(&m, l(0), l(1)).unwrap().lines, ids(&[0, 1, 5]));
        assert_eq!(join_plane(&m, l(0), l(1)).unwrap().lines, ids(&[0, 1, 2]));
        assert!(matches!(
            meet_point(&m, l(0), l(3)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            join_plane(&m, l(0), l(0)),
            Err(Error::Precondition(_))
        ));

        let default = coordinate_labels(&t, None).unwrap();
        assert_eq!(default, dualize(&m));
        assert_eq!(dualize(&dualize(&m)), m);
        dualize(&m).verify().unwrap();
    }

    #[test]
    fn invalid_seeds_are_rejected() {
        let t = gen_tetrahedron();
        for seed in [
            Seed {
                pair: (l(0), l(3)),
                class_of: 0,
            },
            Seed {
                pair: (l(0), l(1)),
                class_of: 2,
            },
        ] {
            assert!(matches!(
                coordinate_labels(&t, Some(seed)),
                Err(Error::Precondition(_))
            ));
        }
    }

    #[test]
    fn two_components_are_inconsistent() {
        let s = gen_negative(NegativeKind::TwoComponents);
        assert!(matches!(
            coordinate_labels(&s, None),
            Err(Error::LabelInconsistency(_))
        ));
    }

    #[test]
    fn tampered_model_fails_verification() {
        let t = gen_tetrahedron();
        let m = coordinate_labels(&t, None).unwrap();
        let mut points = m.points().to_vec();
        let moved = points.pop().unwrap();
        let mut planes = m.planes().to_vec();
        planes.push(moved);
        let bad = GeometryModel::from_parts(t.clone(), points, planes, m.seed());
        assert!(matches!(bad.verify(), Err(Error::LabelInconsistency(_))));

        let extra = GeometryModel::from_parts(
            t,
            [m.points(), &[ids(&[0])][..]].concat(),
            m.planes().to_vec(),
            None,
        );
        assert!(matches!(
            extra.verify(),
            Err(Error::LabelInconsistency(Inconsistency::UnknownElement {
                listed: true,
                ..
            }))
        ));
    }
}
