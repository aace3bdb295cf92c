//! The set of lines forming skew pairs over an incident pair, its two
//! incidence classes, triads, and the secondary elements they span.

use std::fmt;

use crate::error::{Error, Result};
use crate::incidence::{IncidenceStructure, LineId, LineSet};

/// Why incidence restricted to `sigma(a, b)` failed to be an equivalence
/// relation with exactly two classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassFailure {
    /// `sigma(a, b)` is empty.
    Empty,
    /// `p ~ q`, `q ~ r`, but `p` and `r` are skew.
    Transitivity { p: LineId, q: LineId, r: LineId },
    /// Transitive, but with the wrong number of classes; one representative
    /// per class.
    ClassCount { representatives: Vec<LineId> },
}

impl fmt::Display for ClassFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassFailure::Empty => write!(f, "the set is empty"),
            ClassFailure::Transitivity { p, q, r } => write!(
                f,
                "lines {p} and {q} meet, {q} and {r} meet, but {p} and {r} are skew"
            ),
            ClassFailure::ClassCount { representatives } => write!(
                f,
                "found {} classes (representatives {:?})",
                representatives.len(),
                representatives.iter().map(|l| l.0).collect::<Vec<_>>()
            ),
        }
    }
}

/// The two incidence classes of `sigma(a, b)`. `class_0` holds the least
/// member of `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPartition {
    pub pair: (LineId, LineId),
    pub sigma: LineSet,
    pub class_0: LineSet,
    pub class_1: LineSet,
}

impl SigmaPartition {
    pub fn class(&self, index: usize) -> &LineSet {
        match index {
            0 => &self.class_0,
            _ => &self.class_1,
        }
    }

    /// Index of the class containing `c`, if `c` lies in `sigma`.
    pub fn class_of(&self, c: LineId) -> Option<usize> {
        if self.class_0.contains(c) {
            Some(0)
        } else if self.class_1.contains(c) {
            Some(1)
        } else {
            None
        }
    }
}

fn check_pair(s: &IncidenceStructure, a: LineId, b: LineId) -> Result<()> {
    s.check_line(a)?;
    s.check_line(b)?;
    if a == b {
        return Err(Error::precondition(format!(
            "sigma needs two distinct lines, got {a} twice"
        )));
    }
    if !s.meets(a, b) {
        return Err(Error::precondition(format!(
            "sigma needs incident lines, but {a} and {b} are skew"
        )));
    }
    Ok(())
}

/// `{a,b}^perp \ {a,b}^perp^perp`: the members of `[a b]` lying in some skew
/// pair within `[a b]`.
pub fn sigma(s: &IncidenceStructure, a: LineId, b: LineId) -> Result<LineSet> {
    check_pair(s, a, b)?;
    Ok(sigma_unchecked(s, a, b))
}

pub(crate) fn sigma_unchecked(s: &IncidenceStructure, a: LineId, b: LineId) -> LineSet {
    let ab = s.bracket_unchecked(&[a, b]);
    let closure = s.perp_unchecked(&ab);
    ab.difference(&closure)
}

/// Splits `sigma(a, b)` into its incidence classes.
///
/// Components are found by union-find over the incident pairs of `sigma`;
/// transitivity is then verified pair by pair, since it is not assumed of
/// untrusted input.
pub fn sigma_partition(s: &IncidenceStructure, a: LineId, b: LineId) -> Result<SigmaPartition> {
    check_pair(s, a, b)?;
    let sig = sigma_unchecked(s, a, b);
    partition_of(s, a, b, sig).map_err(|failure| Error::NotTwoClasses { a, b, failure })
}

pub(crate) fn partition_of(
    s: &IncidenceStructure,
    a: LineId,
    b: LineId,
    sig: LineSet,
) -> std::result::Result<SigmaPartition, ClassFailure> {
    let members = sig.to_vec();
    if members.is_empty() {
        return Err(ClassFailure::Empty);
    }
    let mut uf = UnionFind::new(members.len());
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if s.meets(members[i], members[j]) {
                uf.union(i, j);
            }
        }
    }
    // Any skew pair within one component exposes a transitivity failure on a
    // shortest path between them.
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if uf.find(i) == uf.find(j) && !s.meets(members[i], members[j]) {
                let (p, q, r) = transitivity_witness(s, &sig, members[i], members[j]);
                return Err(ClassFailure::Transitivity { p, q, r });
            }
        }
    }
    let mut representatives: Vec<LineId> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for (i, &m) in members.iter().enumerate() {
        let root = uf.find(i);
        if !roots.contains(&root) {
            roots.push(root);
            representatives.push(m);
        }
    }
    if roots.len() != 2 {
        return Err(ClassFailure::ClassCount { representatives });
    }
    let class_0: LineSet = members
        .iter()
        .enumerate()
        .filter(|&(i, _)| uf.find(i) == roots[0])
        .map(|(_, &m)| m)
        .collect();
    let class_1 = sig.difference(&class_0);
    Ok(SigmaPartition {
        pair: (a, b),
        sigma: sig,
        class_0,
        class_1,
    })
}

/// Breadth-first search inside `within` from `from` to `to` along incidence;
/// the first three vertices of a shortest path witness non-transitivity.
fn transitivity_witness(
    s: &IncidenceStructure,
    within: &LineSet,
    from: LineId,
    to: LineId,
) -> (LineId, LineId, LineId) {
    let members = within.to_vec();
    let mut parent: Vec<Option<usize>> = vec![None; members.len()];
    let start = members.iter().position(|&m| m == from).unwrap_or(0);
    let goal = members.iter().position(|&m| m == to).unwrap_or(0);
    let mut seen = vec![false; members.len()];
    seen[start] = true;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if u == goal {
            break;
        }
        for v in 0..members.len() {
            if !seen[v] && s.meets(members[u], members[v]) {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![goal];
    while let Some(p) = parent[*path.last().unwrap()] {
        path.push(p);
    }
    path.reverse();
    (members[path[0]], members[path[1]], members[path[2]])
}

/// Whether `a, b, c` is a triad: three distinct lines with `c` in
/// `sigma(a, b)`. A skew pair among `a, b` gives `false`.
pub fn is_triad(s: &IncidenceStructure, a: LineId, b: LineId, c: LineId) -> Result<bool> {
    for l in [a, b, c] {
        s.check_line(l)?;
    }
    if a == b || b == c || a == c {
        return Err(Error::precondition(format!(
            "a triad needs three distinct lines, got {a}, {b}, {c}"
        )));
    }
    Ok(is_triad_unchecked(s, a, b, c))
}

pub(crate) fn is_triad_unchecked(s: &IncidenceStructure, a: LineId, b: LineId, c: LineId) -> bool {
    a != b && s.meets(a, b) && sigma_unchecked(s, a, b).contains(c)
}

/// `[a b c]` for a triad `a, b, c`.
pub fn secondary_element(
    s: &IncidenceStructure,
    a: LineId,
    b: LineId,
    c: LineId,
) -> Result<LineSet> {
    if !is_triad(s, a, b, c)? {
        return Err(Error::precondition(format!(
            "lines {a}, {b}, {c} do not form a triad"
        )));
    }
    Ok(s.bracket_unchecked(&[a, b, c]))
}

/// Path-compressing union-find over `0..n`.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            // keep the smaller index as root so roots appear in member order
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
        }
    }
}
