//! Independent PG(3,q) oracle: subspaces are enumerated as explicit vector
//! sets spanned by generator tuples, with no echelon forms involved.

#![allow(dead_code)]

use std::collections::BTreeSet;

use linespace::models::Pg3Metadata;
use linespace::{IncidenceStructure, LineId, LineSet};

pub type Vector = [u32; 4];
pub type Subspace = BTreeSet<Vector>;

pub fn all_vectors(q: u32) -> Vec<Vector> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Every linear combination of the generators.
pub fn span(gens: &[Vector], q: u32) -> Subspace {
    let mut acc: Subspace = [[0; 4]].into_iter().collect();
    for g in gens {
        let mut next = Subspace::new();
        for v in &acc {
            for k in 0..q {
                let mut w = *v;
                for i in 0..4 {
                    w[i] = (w[i] + k * g[i]) % q;
                }
                next.insert(w);
            }
        }
        acc = next;
    }
    acc
}

/// All `k`-dimensional subspaces, built by extending each
/// `(k-1)`-dimensional one by every vector outside it.
pub fn subspaces(k: usize, q: u32) -> Vec<Subspace> {
    let mut level: BTreeSet<Subspace> = [span(&[], q)].into_iter().collect();
    let vectors = all_vectors(q);
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for sub in &level {
            for v in vectors.iter().filter(|v| !sub.contains(*v)) {
                let mut grown = Subspace::new();
                for w in sub {
                    for c in 0..q {
                        grown.insert(std::array::from_fn(|i| (w[i] + c * v[i]) % q));
                    }
                }
                next.insert(grown);
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// The oracle's view of a generated PG(3,q), indexed like the generator.
pub struct Oracle {
    pub q: u32,
    /// Vector set of generated line `i`.
    pub lines: Vec<Subspace>,
    pub bundles: Vec<LineSet>,
    pub ruled_planes: Vec<LineSet>,
}

impl Oracle {
    /// Matches generated lines to oracle lines through their coordinate
    /// rows; panics if that is not a bijection.
    pub fn new(meta: &Pg3Metadata) -> Self {
        Self::build(meta, true)
    }

    /// Only the line matching, without bundles and ruled planes.
    pub fn lines_only(meta: &Pg3Metadata) -> Self {
        Self::build(meta, false)
    }

    fn build(meta: &Pg3Metadata, elements: bool) -> Self {
        let q = meta.q;
        let oracle_lines: BTreeSet<Subspace> = subspaces(2, q).into_iter().collect();
        let lines: Vec<Subspace> = meta
            .line_reps
            .iter()
            .map(|rows| span(&rows[..], q))
            .collect();
        let distinct: BTreeSet<&Subspace> = lines.iter().collect();
        assert_eq!(distinct.len(), lines.len(), "generated lines repeat");
        assert!(lines.iter().all(|l| oracle_lines.contains(l)));
        assert_eq!(
            oracle_lines.len(),
            lines.len(),
            "generated lines miss some subspaces"
        );

        let line_ids = |keep: &dyn Fn(&Subspace) -> bool| -> LineSet {
            lines
                .iter()
                .enumerate()
                .filter(|(_, l)| keep(l))
                .map(|(i, _)| LineId(i))
                .collect()
        };
        if !elements {
            return Oracle {
                q,
                lines,
                bundles: Vec::new(),
                ruled_planes: Vec::new(),
            };
        }
        let bundles = subspaces(1, q)
            .iter()
            .map(|p| line_ids(&|l| p.is_subset(l)))
            .collect();
        let ruled_planes = subspaces(3, q)
            .iter()
            .map(|pl| line_ids(&|l| l.is_subset(pl)))
            .collect();
        Oracle {
            q,
            lines,
            bundles,
            ruled_planes,
        }
    }

    /// Lines meet when they share a nonzero vector.
    pub fn meets(&self, a: usize, b: usize) -> bool {
        self.lines[a].intersection(&self.lines[b]).count() > 1
    }

    pub fn check_incidence(&self, s: &IncidenceStructure) -> Result<(), String> {
        let n = self.lines.len();
        if s.line_count() != n {
            return Err(format!("{} lines, oracle has {n}", s.line_count()));
        }
        for a in 0..n {
            for b in 0..n {
                if s.meets(LineId(a), LineId(b)) != self.meets(a, b) {
                    return Err(format!("incidence of lines {a} and {b} disagrees"));
                }
            }
        }
        Ok(())
    }

    /// Lines through the common point of `a, b` or in their common plane,
    /// less the lines doing both.
    pub fn expected_sigma(&self, a: LineId, b: LineId) -> (LineSet, LineSet) {
        let bundle = self
            .bundles
            .iter()
            .find(|p| p.contains(a) && p.contains(b))
            .expect("incident lines share a point");
        let plane = self
            .ruled_planes
            .iter()
            .find(|p| p.contains(a) && p.contains(b))
            .expect("incident lines share a plane");
        let pencil = bundle.intersection(plane);
        (bundle.difference(&pencil), plane.difference(&pencil))
    }
}
