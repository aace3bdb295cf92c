//! Finite incidence structures over lines.
//!
//! A structure is a set of lines with a reflexive symmetric incidence
//! relation, stored as dense bitset rows. Every set-valued query returns a
//! [`LineSet`], whose iteration order is ascending line index.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on the number of lines a structure may hold.
pub const DEFAULT_MAX_LINES: usize = 4096;

/// Dense 0-based index of a line within its structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineId(pub usize);

impl LineId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for LineId {
    fn from(i: usize) -> Self {
        LineId(i)
    }
}

/// An order-free set of lines, backed by a bitset.
///
/// Trailing zero words are always trimmed, so two sets with the same members
/// compare equal regardless of how they were built.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LineSet {
    words: Vec<u64>,
}

impl LineSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// All lines `0..n`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n / 64];
        if !n.is_multiple_of(64) {
            words.push((1u64 << (n % 64)) - 1);
        }
        let mut s = LineSet { words };
        s.trim();
        s
    }

    pub fn from_ids<I: IntoIterator<Item = LineId>>(ids: I) -> Self {
        let mut s = LineSet::new();
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        Self::from_ids(ids.into_iter().map(LineId))
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, id: LineId) -> bool {
        let (w, b) = (id.0 / 64, id.0 % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, id: LineId) -> bool {
        let (w, b) = (id.0 / 64, id.0 % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    #[inline]
    pub fn contains(&self, id: LineId) -> bool {
        let (w, b) = (id.0 / 64, id.0 % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Least member, if any.
    pub fn first(&self) -> Option<LineId> {
        self.iter().next()
    }

    /// Greatest member, if any.
    pub fn last(&self) -> Option<LineId> {
        let w = self.words.len().checked_sub(1)?;
        let word = self.words[w];
        Some(LineId(w * 64 + 63 - word.leading_zeros() as usize))
    }

    pub fn to_vec(&self) -> Vec<LineId> {
        self.iter().collect()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().map(LineId::index).collect()
    }

    pub fn intersection(&self, other: &LineSet) -> LineSet {
        let mut s = LineSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        };
        s.trim();
        s
    }

    pub fn intersect_with(&mut self, other: &LineSet) {
        self.words.truncate(other.words.len());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self.trim();
    }

    pub fn intersection_len(&self, other: &LineSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn union(&self, other: &LineSet) -> LineSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (a, b) in words.iter_mut().zip(&short.words) {
            *a |= b;
        }
        LineSet { words }
    }

    pub fn difference(&self, other: &LineSet) -> LineSet {
        let mut words = self.words.clone();
        for (a, b) in words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        let mut s = LineSet { words };
        s.trim();
        s
    }

    pub fn symmetric_difference(&self, other: &LineSet) -> LineSet {
        self.difference(other).union(&other.difference(self))
    }

    pub fn is_subset(&self, other: &LineSet) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &LineSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }
}

impl Ord for LineSet {
    /// Lexicographic order on the ascending member lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for LineSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LineSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|l| l.0)).finish()
    }
}

impl FromIterator<LineId> for LineSet {
    fn from_iter<I: IntoIterator<Item = LineId>>(iter: I) -> Self {
        LineSet::from_ids(iter)
    }
}

impl<'a> IntoIterator for &'a LineSet {
    type Item = LineId;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = LineId;

    fn next(&mut self) -> Option<LineId> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(LineId(self.word_index * 64 + bit));
            }
            self.word_index += 1;
            self.current = *self.words.get(self.word_index)?;
        }
    }
}

/// A finite set of lines with a reflexive symmetric incidence relation.
///
/// Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    name: String,
    labels: Vec<String>,
    rows: Vec<LineSet>,
}

impl IncidenceStructure {
    /// Builds a structure in which every distinct pair is incident except the
    /// listed skew pairs. Duplicate pairs (in either order) are accepted.
    pub fn from_skew_pairs(
        name: impl Into<String>,
        labels: Vec<String>,
        skew_pairs: &[(usize, usize)],
    ) -> Result<Self> {
        Self::from_skew_pairs_with_limit(name, labels, skew_pairs, DEFAULT_MAX_LINES)
    }

    pub fn from_skew_pairs_with_limit(
        name: impl Into<String>,
        labels: Vec<String>,
        skew_pairs: &[(usize, usize)],
        max_lines: usize,
    ) -> Result<Self> {
        let n = labels.len();
        check_labels(&labels, max_lines)?;
        let mut rows = vec![LineSet::full(n); n];
        for &(i, j) in skew_pairs {
            for k in [i, j] {
                if k >= n {
                    return Err(Error::IndexOutOfRange {
                        index: k,
                        line_count: n,
                    });
                }
            }
            if i == j {
                return Err(Error::SelfSkew(i));
            }
            rows[i].remove(LineId(j));
            rows[j].remove(LineId(i));
        }
        Ok(IncidenceStructure {
            name: name.into(),
            labels,
            rows,
        })
    }

    /// Builds a structure from an incidence predicate, evaluated once per
    /// unordered distinct pair `i < j`.
    pub fn from_predicate(
        name: impl Into<String>,
        labels: Vec<String>,
        mut incident: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = labels.len();
        check_labels(&labels, DEFAULT_MAX_LINES)?;
        let mut rows: Vec<LineSet> = (0..n).map(|i| LineSet::from_indices([i])).collect();
        for i in 0..n {
            for j in i + 1..n {
                if incident(i, j) {
                    rows[i].insert(LineId(j));
                    rows[j].insert(LineId(i));
                }
            }
        }
        Ok(IncidenceStructure {
            name: name.into(),
            labels,
            rows,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn line_count(&self) -> usize {
        self.rows.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, l: LineId) -> &str {
        &self.labels[l.0]
    }

    pub fn line_by_label(&self, label: &str) -> Option<LineId> {
        self.labels.iter().position(|s| s == label).map(LineId)
    }

    pub fn lines(&self) -> impl Iterator<Item = LineId> + '_ {
        (0..self.rows.len()).map(LineId)
    }

    pub fn all_lines(&self) -> LineSet {
        LineSet::full(self.rows.len())
    }

    pub fn check_line(&self, l: LineId) -> Result<()> {
        if l.0 < self.rows.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: l.0,
                line_count: self.rows.len(),
            })
        }
    }

    pub fn check_set(&self, s: &LineSet) -> Result<()> {
        match s.last() {
            Some(l) => self.check_line(l),
            None => Ok(()),
        }
    }

    pub fn is_incident(&self, a: LineId, b: LineId) -> Result<bool> {
        self.check_line(a)?;
        self.check_line(b)?;
        Ok(self.meets(a, b))
    }

    /// Unchecked incidence test; panics on out-of-range lines.
    #[inline]
    pub fn meets(&self, a: LineId, b: LineId) -> bool {
        self.rows[a.0].contains(b)
    }

    /// Every line incident to `l`, including `l` itself.
    pub fn row(&self, l: LineId) -> &LineSet {
        &self.rows[l.0]
    }

    /// Lines skew to `l`.
    pub fn skew_to(&self, l: LineId) -> LineSet {
        self.all_lines().difference(&self.rows[l.0])
    }

    /// The lines incident to every member of `set`; all lines when `set` is empty.
    pub fn perp(&self, set: &LineSet) -> Result<LineSet> {
        self.check_set(set)?;
        Ok(self.perp_unchecked(set))
    }

    pub(crate) fn perp_unchecked(&self, set: &LineSet) -> LineSet {
        let mut acc = self.all_lines();
        for l in set {
            acc.intersect_with(&self.rows[l.0]);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// `[l1 ... ln]`, the perp of the listed lines.
    pub fn bracket(&self, lines: &[LineId]) -> Result<LineSet> {
        for &l in lines {
            self.check_line(l)?;
        }
        Ok(self.bracket_unchecked(lines))
    }

    pub(crate) fn bracket_unchecked(&self, lines: &[LineId]) -> LineSet {
        let Some((&first, rest)) = lines.split_first() else {
            return self.all_lines();
        };
        let mut acc = self.rows[first.0].clone();
        for l in rest {
            acc.intersect_with(&self.rows[l.0]);
        }
        acc
    }

    /// Lexicographically least skew pair inside `set`.
    pub fn find_skew_pair(&self, set: &LineSet) -> Option<(LineId, LineId)> {
        set.iter().find_map(|x| {
            set.difference(&self.rows[x.0])
                .iter()
                .find(|y| *y > x)
                .map(|y| (x, y))
        })
    }

    /// Lexicographically least pairwise-skew triple inside `set`.
    pub fn find_skew_triple(&self, set: &LineSet) -> Option<(LineId, LineId, LineId)> {
        for x in set {
            let after_x = set.difference(&self.rows[x.0]);
            for y in after_x.iter().filter(|y| *y > x) {
                let zs = after_x.difference(&self.rows[y.0]);
                if let Some(z) = zs.iter().find(|z| *z > y) {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    /// True when no two members of `set` are skew.
    pub fn is_pairwise_incident(&self, set: &LineSet) -> bool {
        self.find_skew_pair(set).is_none()
    }

    /// Unordered incident pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn incident_pairs(&self) -> impl Iterator<Item = (LineId, LineId)> + '_ {
        self.lines().flat_map(move |a| {
            self.rows[a.0]
                .iter()
                .filter(move |b| *b > a)
                .map(move |b| (a, b))
        })
    }

    /// Unordered skew pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn skew_pairs(&self) -> impl Iterator<Item = (LineId, LineId)> + '_ {
        self.lines().flat_map(move |a| {
            self.skew_to(a)
                .iter()
                .filter(move |b| *b > a)
                .map(move |b| (a, b))
                .collect::<Vec<_>>()
        })
    }

    /// The substructure on `lines`, renumbered in the given order.
    pub fn induced(&self, name: impl Into<String>, lines: &[LineId]) -> Result<IncidenceStructure> {
        for &l in lines {
            self.check_line(l)?;
        }
        let labels = lines.iter().map(|&l| self.label(l).to_string()).collect();
        IncidenceStructure::from_predicate(name, labels, |i, j| self.meets(lines[i], lines[j]))
    }

    /// Human-readable rendering of a line set using labels.
    pub fn describe(&self, set: &LineSet) -> String {
        let names: Vec<&str> = set.iter().map(|l| self.label(l)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

fn check_labels(labels: &[String], max_lines: usize) -> Result<()> {
    if labels.len() > max_lines {
        return Err(Error::Capacity {
            line_count: labels.len(),
            max: max_lines,
        });
    }
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}
