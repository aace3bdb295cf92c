//! Brute-force verifiers for the theorems that follow from the line axioms,
//! and for the classical extension/alignment axioms phrased over a derived
//! model.
//!
//! Each verifier quantifies over its hypotheses directly from the
//! definitions (perp, bracket, sigma) rather than reusing another verifier's
//! conclusion. Every obligation is a separate function so that a reported
//! counterexample can be re-evaluated with [`replay`].
//!
//! Structures up to [`Budget::exhaustive_limit`] lines are checked
//! exhaustively. Above that, obligations quantified over three or more
//! lines or elements are sampled with a seeded generator; the seed is
//! recorded in the report.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::incidence::{IncidenceStructure, LineId, LineSet};
use crate::labeling::{GeometryModel, Kind};
use crate::models::gen_tetrahedron;
use crate::report::{CheckReport, Stats, Witness};
use crate::sigma;

pub const SIGMA_EQUIVALENCE: &str = "thm_sigma_equivalence";
pub const TWO_CLASSES: &str = "thm_two_classes";
pub const BRACKET_WELLDEFINED: &str = "thm_bracket_welldefined";
pub const TRIAD_TYPING: &str = "thm_triad_typing";
pub const POINT_NE_PLANE: &str = "thm_point_ne_plane";
pub const LINE_SELFPERP: &str = "thm_line_selfperp";
pub const REGULUS_SKEW: &str = "thm_regulus_skew";
pub const BRACKET_CLOSED: &str = "thm_bracket_closed";
pub const PENCIL_INTERSECTION: &str = "thm_pencil_intersection";
pub const COHERENCE: &str = "thm_coherence";
pub const MUTUAL_MEMBERSHIP: &str = "thm_mutual_membership";
pub const EXCHANGE: &str = "thm_exchange";
pub const NOT_SINGLETON: &str = "thm_not_singleton";
pub const UNIQUENESS: &str = "thm_uniqueness";
pub const LINE_IN_PLANE: &str = "thm_line_in_plane";
pub const TRIANGLE: &str = "thm_triangle";
pub const TETRAHEDRON: &str = "thm_tetrahedron";

pub const VY_E0: &str = "vy_e0";
pub const VY_E1: &str = "vy_e1";
pub const VY_E2: &str = "vy_e2";
pub const VY_E3: &str = "vy_e3";
pub const VY_E3_PRIME: &str = "vy_e3_prime";
pub const VY_A1: &str = "vy_a1";
pub const VY_A2: &str = "vy_a2";
pub const VY_A3: &str = "vy_a3";

/// Quantifier budget for the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Structures with at most this many lines are checked exhaustively.
    pub exhaustive_limit: usize,
    /// Number of sampled obligations per verifier above the limit.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            exhaustive_limit: 200,
            samples: 20_000,
            seed: 0x1153_ace5,
        }
    }
}

/// The sigma set of a pair together with its model-labeled classes.
struct PairData {
    sigma: LineSet,
    labeled: std::result::Result<Labeled, String>,
}

/// Classes of `sigma(a, b)` labeled through the model: the point class is
/// the part of sigma inside the unique point containing `a` and `b`.
#[derive(Clone)]
struct Labeled {
    point_class: LineSet,
    plane_class: LineSet,
    point: LineSet,
    plane: LineSet,
}

impl Labeled {
    fn class(&self, kind: Kind) -> &LineSet {
        match kind {
            Kind::Point => &self.point_class,
            Kind::Plane => &self.plane_class,
        }
    }
}

type PairCache = RefCell<HashMap<(LineId, LineId), Rc<PairData>>>;
type Verifier = fn(&Ctx) -> CheckReport;

struct Ctx<'a> {
    s: &'a IncidenceStructure,
    m: Option<&'a GeometryModel>,
    budget: Budget,
    cache: Option<PairCache>,
    /// For each line, indices of the points (resp. planes) containing it.
    points_on: Vec<Vec<usize>>,
    planes_on: Vec<Vec<usize>>,
}

fn element_index(m: Option<&GeometryModel>, kind: Kind, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    if let Some(m) = m {
        for (i, e) in m.elements(kind).iter().enumerate() {
            for l in e {
                out[l.0].push(i);
            }
        }
    }
    out
}

impl<'a> Ctx<'a> {
    fn new(s: &'a IncidenceStructure, m: Option<&'a GeometryModel>, budget: &Budget) -> Self {
        let n = s.line_count();
        Ctx {
            s,
            m,
            budget: *budget,
            cache: (n <= budget.exhaustive_limit).then(|| RefCell::new(HashMap::new())),
            points_on: element_index(m, Kind::Point, n),
            planes_on: element_index(m, Kind::Plane, n),
        }
    }

    fn exhaustive(&self) -> bool {
        self.s.line_count() <= self.budget.exhaustive_limit
    }

    fn model(&self) -> &'a GeometryModel {
        self.m
            .expect("model-dependent verifier called without a model")
    }

    /// `x ∈ sigma(a, b)`, false unless `a, b` are distinct and incident.
    fn in_sigma(&self, x: LineId, a: LineId, b: LineId) -> bool {
        a != b && self.s.meets(a, b) && self.pair(a, b).sigma.contains(x)
    }

    /// Three distinct lines satisfying at least one of the sigma conditions.
    fn is_triad(&self, a: LineId, b: LineId, c: LineId) -> bool {
        a != b
            && b != c
            && a != c
            && (self.in_sigma(c, a, b) || self.in_sigma(a, b, c) || self.in_sigma(b, c, a))
    }

    fn pair(&self, a: LineId, b: LineId) -> Rc<PairData> {
        let key = if a < b { (a, b) } else { (b, a) };
        if let Some(cache) = &self.cache {
            if let Some(p) = cache.borrow().get(&key) {
                return Rc::clone(p);
            }
        }
        let data = Rc::new(self.compute_pair(key.0, key.1));
        if let Some(cache) = &self.cache {
            cache.borrow_mut().insert(key, Rc::clone(&data));
        }
        data
    }

    fn compute_pair(&self, a: LineId, b: LineId) -> PairData {
        let sig = sigma::sigma_unchecked(self.s, a, b);
        let labeled = match self.m {
            None => Err("no model".to_string()),
            Some(m) => self.label_pair(m, a, b, &sig),
        };
        PairData {
            sigma: sig,
            labeled,
        }
    }

    fn label_pair(
        &self,
        m: &GeometryModel,
        a: LineId,
        b: LineId,
        sig: &LineSet,
    ) -> std::result::Result<Labeled, String> {
        let part = sigma::partition_of(self.s, a, b, sig.clone()).map_err(|f| f.to_string())?;
        let point = self.unique_through(m, Kind::Point, a, b)?;
        let plane = self.unique_through(m, Kind::Plane, a, b)?;
        let point_class = sig.intersection(&point);
        let plane_class = sig.intersection(&plane);
        let classes = [&part.class_0, &part.class_1];
        if !(classes.contains(&&point_class)
            && classes.contains(&&plane_class)
            && point_class != plane_class)
        {
            return Err(format!(
                "the point and plane through lines {a} and {b} do not split sigma into its two classes"
            ));
        }
        Ok(Labeled {
            point_class,
            plane_class,
            point,
            plane,
        })
    }

    fn on(&self, kind: Kind, l: LineId) -> &[usize] {
        match kind {
            Kind::Point => &self.points_on[l.0],
            Kind::Plane => &self.planes_on[l.0],
        }
    }

    /// The only element of `kind` containing both lines.
    fn unique_through(
        &self,
        m: &GeometryModel,
        kind: Kind,
        a: LineId,
        b: LineId,
    ) -> std::result::Result<LineSet, String> {
        let on_b = self.on(kind, b);
        let common: Vec<usize> = self
            .on(kind, a)
            .iter()
            .filter(|i| on_b.binary_search(i).is_ok())
            .copied()
            .collect();
        match common.as_slice() {
            [i] => Ok(m.elements(kind)[*i].clone()),
            _ => Err(format!(
                "{} {kind}s contain both line {a} and line {b}",
                common.len()
            )),
        }
    }

    fn labeled(&self, a: LineId, b: LineId) -> std::result::Result<Labeled, String> {
        if a == b || !self.s.meets(a, b) {
            return Err(format!("lines {a} and {b} are not distinct incident lines"));
        }
        self.pair(a, b).labeled.clone()
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.budget.seed)
    }

    /// Runs `f` over `all` when exhaustive, otherwise over `samples` draws.
    fn drive<T>(
        &self,
        stats: &mut Stats,
        all: impl FnOnce() -> Box<dyn Iterator<Item = T> + 'a>,
        mut sample: impl FnMut(&mut ChaCha8Rng) -> Option<T>,
        mut f: impl FnMut(T, &mut Stats) -> Option<Witness>,
    ) -> Option<Witness> {
        if self.exhaustive() {
            for item in all() {
                if let Some(w) = f(item, stats) {
                    return Some(w);
                }
            }
        } else {
            stats.sampling_seed = Some(self.budget.seed);
            let mut rng = self.rng();
            for _ in 0..self.budget.samples {
                if let Some(item) = sample(&mut rng) {
                    if let Some(w) = f(item, stats) {
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    /// Triads as sorted triples, each with its bracket. Above the
    /// exhaustive limit, a seeded sample of them.
    fn triads(&self, stats: &mut Stats) -> Vec<([LineId; 3], LineSet)> {
        let mut seen = BTreeMap::new();
        let mut add = |a: LineId, b: LineId, c: LineId| {
            let mut t = [a, b, c];
            t.sort();
            seen.entry(t)
                .or_insert_with(|| self.s.bracket_unchecked(&[a, b, c]));
        };
        if self.exhaustive() {
            for (a, b) in self.s.incident_pairs() {
                for c in &self.pair(a, b).sigma {
                    add(a, b, c);
                }
            }
        } else {
            stats.sampling_seed = Some(self.budget.seed);
            let mut rng = self.rng();
            for _ in 0..self.budget.samples {
                if let Some((a, b)) = self.random_incident_pair(&mut rng) {
                    if let Some(c) = pick(&mut rng, &self.pair(a, b).sigma) {
                        add(a, b, c);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    fn random_incident_pair(&self, rng: &mut ChaCha8Rng) -> Option<(LineId, LineId)> {
        let a = random_line(rng, self.s.line_count());
        let mut row = self.s.row(a).clone();
        row.remove(a);
        pick(rng, &row).map(|b| (a, b))
    }
}

fn pick(rng: &mut ChaCha8Rng, set: &LineSet) -> Option<LineId> {
    let members = set.to_vec();
    (!members.is_empty()).then(|| members[rng.random_range(0..members.len())])
}

fn random_line(rng: &mut ChaCha8Rng, n: usize) -> LineId {
    LineId(rng.random_range(0..n))
}

fn random_distinct<const K: usize>(rng: &mut ChaCha8Rng, n: usize) -> Option<[usize; K]> {
    if n < K {
        return None;
    }
    let mut out = [0usize; K];
    let mut i = 0;
    while i < K {
        let x = rng.random_range(0..n);
        if !out[..i].contains(&x) {
            out[i] = x;
            i += 1;
        }
    }
    out.sort();
    Some(out)
}

fn lines_witness(tag: &str, desc: String, names: &[&str], lines: &[LineId]) -> Witness {
    names
        .iter()
        .zip(lines)
        .fold(Witness::new(tag, desc), |w, (n, l)| w.with_line(n, *l))
}

fn sets_witness(tag: &str, desc: String, names: &[&str], sets: &[&LineSet]) -> Witness {
    names
        .iter()
        .zip(sets)
        .fold(Witness::new(tag, desc), |w, (n, s)| {
            w.with_set(n, (*s).clone())
        })
}

type Violation = Option<String>;

// ---------------------------------------------------------------------------
// Theorems over the bare structure

impl Ctx<'_> {
    fn ob_sigma_equivalence(&self, a: LineId, b: LineId, c: LineId) -> Violation {
        let conds = [
            self.in_sigma(a, b, c),
            self.in_sigma(b, c, a),
            self.in_sigma(c, a, b),
        ];
        (conds.iter().any(|&x| x) && !conds.iter().all(|&x| x)).then(|| {
            format!(
                "a in sigma(b,c): {}, b in sigma(c,a): {}, c in sigma(a,b): {}",
                conds[0], conds[1], conds[2]
            )
        })
    }

    fn ob_two_classes(&self, a: LineId, b: LineId) -> std::result::Result<SigmaSizes, String> {
        let sig = self.pair(a, b).sigma.clone();
        let p = sigma::partition_of(self.s, a, b, sig).map_err(|f| f.to_string())?;
        Ok(SigmaSizes {
            sigma: p.sigma.len(),
            classes: [p.class_0.len(), p.class_1.len()],
        })
    }

    fn ob_bracket_welldefined(&self, a: LineId, b: LineId, c1: LineId, c2: LineId) -> Violation {
        if !(self.in_sigma(c1, a, b) && self.in_sigma(c2, a, b) && self.s.meets(c1, c2)) {
            return None;
        }
        let e1 = self.s.bracket_unchecked(&[a, b, c1]);
        let e2 = self.s.bracket_unchecked(&[a, b, c2]);
        (e1 != e2).then(|| "incident members of sigma(a,b) give different brackets".to_string())
    }

    fn ob_line_selfperp(&self, l: LineId) -> Violation {
        let closure = self.s.perp_unchecked(self.s.row(l));
        (closure != LineSet::from_ids([l]))
            .then(|| format!("the double perp of the line has {} members", closure.len()))
    }

    fn ob_regulus_skew(&self, u: LineId, v: LineId, w: LineId) -> (Violation, usize) {
        let skew = |x: LineId, y: LineId| x != y && !self.s.meets(x, y);
        if !(skew(u, v) && skew(v, w) && skew(u, w)) {
            return (None, 0);
        }
        let r = self.s.bracket_unchecked(&[u, v, w]);
        let hit = r.iter().find_map(|m| {
            let mut others = r.intersection(self.s.row(m));
            others.remove(m);
            others.first().map(|n| (m, n))
        });
        let size = r.len();
        match hit {
            Some((m, n)) => (
                Some(format!("lines {m} and {n} of [u v w] are incident")),
                size,
            ),
            None => (None, size),
        }
    }

    fn ob_bracket_closed(&self, a: LineId, b: LineId, c: LineId) -> Violation {
        if !self.is_triad(a, b, c) {
            return None;
        }
        let e = self.s.bracket_unchecked(&[a, b, c]);
        (self.s.perp_unchecked(&e) != e).then(|| "[a b c] differs from its perp".to_string())
    }

    /// `[p q r] = [a b c]` forces `p, q, r` to be a triad exactly when `a, b, c` is.
    fn ob_coherence(&self, t: [LineId; 3], u: [LineId; 3]) -> Violation {
        if self.s.bracket_unchecked(&t) != self.s.bracket_unchecked(&u) {
            return None;
        }
        let (tt, ut) = (
            self.is_triad(t[0], t[1], t[2]),
            self.is_triad(u[0], u[1], u[2]),
        );
        (tt != ut).then(|| format!("equal brackets, but triad status differs ({tt} versus {ut})"))
    }

    fn ob_mutual_membership(&self, t: [LineId; 3], u: [LineId; 3]) -> Violation {
        let bt = self.s.bracket_unchecked(&t);
        let bu = self.s.bracket_unchecked(&u);
        let forward = u.iter().all(|&x| bt.contains(x));
        let backward = t.iter().all(|&x| bu.contains(x));
        if forward != backward {
            return Some(format!(
                "p,q,r in [a b c] is {forward} but a,b,c in [p q r] is {backward}"
            ));
        }
        let both_triads = self.is_triad(t[0], t[1], t[2]) && self.is_triad(u[0], u[1], u[2]);
        (forward && both_triads && bt != bu)
            .then(|| "mutual membership holds but the brackets differ".to_string())
    }
}

struct SigmaSizes {
    sigma: usize,
    classes: [usize; 2],
}

// ---------------------------------------------------------------------------
// Theorems that refer to the point/plane labeling

impl Ctx<'_> {
    fn ob_triad_typing(&self, t: [LineId; 3]) -> std::result::Result<Kind, String> {
        let [a, b, c] = t;
        let mut kinds = Vec::with_capacity(3);
        for (x, p, q) in [(a, b, c), (b, c, a), (c, a, b)] {
            if !self.in_sigma(x, p, q) {
                return Err(format!("line {x} is not in sigma({p}, {q})"));
            }
            let lab = self.labeled(p, q)?;
            kinds.push(if lab.point_class.contains(x) {
                Kind::Point
            } else {
                Kind::Plane
            });
        }
        if kinds.iter().all_equal() {
            Ok(kinds[0])
        } else {
            Err(format!("mixed typing {kinds:?}"))
        }
    }

    /// Point and plane of a pair, each as the bracket of the labeled class.
    fn pair_elements(
        &self,
        a: LineId,
        b: LineId,
    ) -> std::result::Result<(LineSet, LineSet), String> {
        let lab = self.labeled(a, b)?;
        let cp = lab.point_class.first().ok_or("empty point class")?;
        let cq = lab.plane_class.first().ok_or("empty plane class")?;
        Ok((
            self.s.bracket_unchecked(&[a, b, cp]),
            self.s.bracket_unchecked(&[a, b, cq]),
        ))
    }

    fn ob_point_ne_plane(&self, a: LineId, b: LineId, p: LineId, q: LineId) -> Violation {
        match (self.pair_elements(a, b), self.pair_elements(p, q)) {
            (Ok((_, plane)), Ok((point, _))) => {
                (plane == point).then(|| "the plane of (a,b) equals the point of (p,q)".to_string())
            }
            (Err(e), _) | (_, Err(e)) => Some(e),
        }
    }

    fn ob_pencil_intersection(&self, a: LineId, b: LineId) -> std::result::Result<usize, String> {
        let lab = self.labeled(a, b)?;
        let (point, plane) = self.pair_elements(a, b)?;
        let closure = self.s.perp_unchecked(&self.s.bracket_unchecked(&[a, b]));
        let pencil = point.intersection(&plane);
        if pencil != closure {
            return Err("point and plane of (a,b) meet in something other than [a b]^perp".into());
        }
        if lab.point_class != point.difference(&closure) {
            return Err("point class differs from point minus [a b]^perp".into());
        }
        if lab.plane_class != plane.difference(&closure) {
            return Err("plane class differs from plane minus [a b]^perp".into());
        }
        if point != lab.point || plane != lab.plane {
            return Err("bracketed classes differ from the model's elements".into());
        }
        Ok(pencil.len())
    }

    fn ob_exchange(&self, t: [LineId; 3], x: LineId, y: LineId) -> Violation {
        if !self.is_triad(t[0], t[1], t[2]) || x == y {
            return None;
        }
        let e = self.s.bracket_unchecked(&t);
        if !(e.contains(x) && e.contains(y)) {
            return None;
        }
        if !self.s.meets(x, y) {
            return Some("x and y are skew".to_string());
        }
        let sig = &self.pair(x, y).sigma;
        if !t.iter().any(|&l| sig.contains(l)) {
            return Some("sigma(x,y) contains none of a, b, c".to_string());
        }
        let m = self.m?;
        let Some(kind) = m.kind_of(&e) else {
            return Some("[a b c] is not an element of the model".to_string());
        };
        match self.labeled(x, y) {
            Ok(lab) if t.iter().any(|&l| lab.class(kind).contains(l)) => None,
            Ok(_) => Some(format!(
                "the {kind} class of sigma(x,y) contains none of a, b, c"
            )),
            Err(e) => Some(e),
        }
    }

    fn ob_not_singleton(&self, point: &LineSet, plane: &LineSet) -> Violation {
        (point.intersection_len(plane) == 1)
            .then(|| "point and plane share exactly one line".into())
    }

    fn ob_uniqueness(&self, first: &LineSet, second: &LineSet) -> Violation {
        let m = self.model();
        let same_kind = m.kind_of(first).is_some() && m.kind_of(first) == m.kind_of(second);
        (same_kind && first != second && first.intersection_len(second) > 1)
            .then(|| "distinct elements of one kind share more than one line".into())
    }

    /// Two distinct elements of one kind meeting a host of the other kind
    /// share exactly one line, and it lies in the host.
    fn ob_line_in_plane(&self, first: &LineSet, second: &LineSet, host: &LineSet) -> Violation {
        let m = self.model();
        let kind = m.kind_of(first)?;
        if m.kind_of(second) != Some(kind)
            || m.kind_of(host) != Some(kind.dual())
            || first == second
        {
            return None;
        }
        if first.is_disjoint(host) || second.is_disjoint(host) {
            return None;
        }
        let common = first.intersection(second);
        if common.len() != 1 {
            return Some(format!("the two {kind}s share {} lines", common.len()));
        }
        (!host.contains(common.first().expect("singleton"))).then(|| {
            format!(
                "the common line of the two {kind}s is not on the {}",
                kind.dual()
            )
        })
    }

    /// Pairwise meets `a = B∩C`, `b = C∩A`, `c = A∩B` of three
    /// non-collinear points; `None` when the hypothesis fails.
    fn triangle_edges(
        &self,
        a_pt: &LineSet,
        b_pt: &LineSet,
        c_pt: &LineSet,
    ) -> Option<std::result::Result<[LineId; 3], String>> {
        let m = self.model();
        if [a_pt, b_pt, c_pt]
            .iter()
            .any(|e| m.kind_of(e) != Some(Kind::Point))
            || a_pt == b_pt
            || b_pt == c_pt
            || a_pt == c_pt
            || !a_pt.intersection(b_pt).is_disjoint(c_pt)
        {
            return None;
        }
        let single = |x: &LineSet, y: &LineSet| {
            let i = x.intersection(y);
            if i.len() == 1 {
                Ok(i.first().expect("singleton"))
            } else {
                Err(format!("two points share {} lines", i.len()))
            }
        };
        Some((|| {
            Ok([
                single(b_pt, c_pt)?,
                single(c_pt, a_pt)?,
                single(a_pt, b_pt)?,
            ])
        })())
    }

    fn ob_triangle(&self, pts: [&LineSet; 3]) -> Violation {
        let m = self.model();
        let [a, b, c] = match self.triangle_edges(pts[0], pts[1], pts[2])? {
            Ok(e) => e,
            Err(e) => return Some(e),
        };
        for (x, p, q) in [(a, b, c), (b, c, a), (c, a, b)] {
            match self.labeled(p, q) {
                Ok(lab) if lab.plane_class.contains(x) => {}
                Ok(_) => {
                    return Some(format!(
                        "line {x} is not in the plane class of sigma({p}, {q})"
                    ))
                }
                Err(e) => return Some(e),
            }
        }
        let pi = self.s.bracket_unchecked(&[a, b, c]);
        if m.kind_of(&pi) != Some(Kind::Plane) {
            return Some("[a b c] is not a plane of the model".into());
        }
        let through: Vec<&LineSet> = m
            .planes()
            .iter()
            .filter(|pl| pts.iter().all(|p| !p.is_disjoint(pl)))
            .collect();
        (through != [&pi])
            .then(|| format!("{} planes pass through all three points", through.len()))
    }

    /// The six edges `a, b, c, ah, bh, ch` of the tetrahedron on the
    /// triangle `A, B, C` and the first point off its plane.
    fn ob_tetrahedron(
        &self,
        pts: [&LineSet; 3],
    ) -> Option<std::result::Result<[LineId; 6], String>> {
        let m = self.model();
        let [a, b, c] = match self.triangle_edges(pts[0], pts[1], pts[2])? {
            Ok(e) => e,
            Err(e) => return Some(Err(e)),
        };
        Some((|| {
            let pi = self.s.bracket_unchecked(&[a, b, c]);
            let apex = m
                .points()
                .iter()
                .find(|o| o.is_disjoint(&pi))
                .ok_or("no point lies off the base plane")?;
            let edge = |p: &LineSet| {
                let i = apex.intersection(p);
                if i.len() == 1 {
                    Ok(i.first().expect("singleton"))
                } else {
                    Err(format!("apex and a base vertex share {} lines", i.len()))
                }
            };
            let edges = [a, b, c, edge(pts[0])?, edge(pts[1])?, edge(pts[2])?];
            if !edges.iter().all_unique() {
                return Err("the six edges are not distinct".to_string());
            }
            let sub = self.s.induced("edges", &edges).map_err(|e| e.to_string())?;
            let t = gen_tetrahedron();
            if sub.skew_pairs().collect_vec() != t.skew_pairs().collect_vec() {
                return Err("edges do not reproduce the tetrahedron's incidence".to_string());
            }
            if !isomorphic_small(&sub, &t) {
                return Err("edge structure is not isomorphic to the tetrahedron".to_string());
            }
            Ok(edges)
        })())
    }
}

/// Incidence isomorphism by exhaustive permutation search; intended for
/// structures of at most nine lines.
pub fn isomorphic_small(x: &IncidenceStructure, y: &IncidenceStructure) -> bool {
    let n = x.line_count();
    if n != y.line_count() || n > 9 {
        return false;
    }
    let degrees = |s: &IncidenceStructure| {
        let mut d: Vec<usize> = s.lines().map(|l| s.row(l).len()).collect();
        d.sort();
        d
    };
    if degrees(x) != degrees(y) {
        return false;
    }
    (0..n).permutations(n).any(|perm| {
        (0..n).all(|i| {
            (i + 1..n)
                .all(|j| x.meets(LineId(i), LineId(j)) == y.meets(LineId(perm[i]), LineId(perm[j])))
        })
    })
}

// ---------------------------------------------------------------------------
// Public verifiers

pub fn thm_sigma_equivalence(s: &IncidenceStructure, budget: &Budget) -> CheckReport {
    let ctx = Ctx::new(s, None, budget);
    sigma_equivalence(&ctx)
}

fn sigma_equivalence(ctx: &Ctx) -> CheckReport {
    let n = ctx.s.line_count();
    let mut stats = Stats::default();
    let cx = ctx.drive(
        &mut stats,
        || Box::new((0..n).tuple_combinations::<(_, _, _)>()),
        |rng| random_distinct::<3>(rng, n).map(|[a, b, c]| (a, b, c)),
        |(a, b, c), st| {
            st.cases_examined += 1;
            let t = [LineId(a), LineId(b), LineId(c)];
            ctx.ob_sigma_equivalence(t[0], t[1], t[2])
                .map(|d| lines_witness("sigma_conditions_disagree", d, &["a", "b", "c"], &t))
        },
    );
    CheckReport::from_search(SIGMA_EQUIVALENCE, cx, stats)
}

pub fn thm_two_classes(s: &IncidenceStructure, budget: &Budget) -> CheckReport {
    two_classes(&Ctx::new(s, None, budget))
}

fn two_classes(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    for (a, b) in ctx.s.incident_pairs() {
        stats.cases_examined += 1;
        match ctx.ob_two_classes(a, b) {
            Ok(sizes) => {
                stats.observe_range("sigma_size", sizes.sigma as u64);
                for c in sizes.classes {
                    stats.observe_range("class_size", c as u64);
                }
            }
            Err(d) => {
                let w = lines_witness("not_two_classes", d, &["a", "b"], &[a, b]);
                return CheckReport::fail(TWO_CLASSES, w, stats);
            }
        }
    }
    CheckReport::pass(TWO_CLASSES, stats)
}

pub fn thm_bracket_welldefined(s: &IncidenceStructure, budget: &Budget) -> CheckReport {
    bracket_welldefined(&Ctx::new(s, None, budget))
}

fn bracket_welldefined(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    let all = || -> Box<dyn Iterator<Item = [LineId; 4]>> {
        let mut out = Vec::new();
        for (a, b) in ctx.s.incident_pairs() {
            let sig = ctx.pair(a, b).sigma.clone();
            for c1 in &sig {
                for c2 in sig.intersection(ctx.s.row(c1)).iter().filter(|c| *c > c1) {
                    out.push([a, b, c1, c2]);
                }
            }
        }
        Box::new(out.into_iter())
    };
    let cx = ctx.drive(
        &mut stats,
        all,
        |rng| {
            let (a, b) = ctx.random_incident_pair(rng)?;
            let sig = ctx.pair(a, b).sigma.clone();
            let c1 = pick(rng, &sig)?;
            let mut partners = sig.intersection(ctx.s.row(c1));
            partners.remove(c1);
            Some([a, b, c1, pick(rng, &partners)?])
        },
        |q, st| {
            st.cases_examined += 1;
            ctx.ob_bracket_welldefined(q[0], q[1], q[2], q[3])
                .map(|d| lines_witness("bracket_not_welldefined", d, &["a", "b", "c1", "c2"], &q))
        },
    );
    CheckReport::from_search(BRACKET_WELLDEFINED, cx, stats)
}

pub fn thm_line_selfperp(s: &IncidenceStructure, budget: &Budget) -> CheckReport {
    line_selfperp(&Ctx::new(s, None, budget))
}

fn line_selfperp(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    for l in ctx.s.lines() {
        stats.cases_examined += 1;
        if let Some(d) = ctx.ob_line_selfperp(l) {
            let w = lines_witness("line_not_selfperp", d, &["l"], &[l]);
            return CheckReport::fail(LINE_SELFPERP, w, stats);
        }
    }
    CheckReport::pass(LINE_SELFPERP, stats)
}

pub fn thm_regulus_skew(s: &IncidenceStructure, budget: &Budget) -> CheckReport {
    regulus_skew(&Ctx::new(s, None, budget))
}

fn regulus_skew(ctx: &Ctx) -> CheckReport {
    let s = ctx.s;
    let n = s.line_count();
    let mut stats = Stats::default();
    let skew_triples = move || -> Box<dyn Iterator<Item = [LineId; 3]> + '_> {
        let mut out = Vec::new();
        for u in s.lines() {
            let after_u = s.skew_to(u);
            for v in after_u.iter().filter(|v| *v > u) {
                for w in after_u.difference(s.row(v)).iter().filter(|w| *w > v) {
                    out.push([u, v, w]);
                }
            }
        }
        Box::new(out.into_iter())
    };
    let cx = ctx.drive(
        &mut stats,
        skew_triples,
        |rng| {
            let u = random_line(rng, n);
            let vs = s.skew_to(u).to_vec();
            let v = *vs.get(rng.random_range(0..vs.len().max(1)))?;
            let ws = s.skew_to(u).difference(s.row(v)).to_vec();
            let w = *ws.get(rng.random_range(0..ws.len().max(1)))?;
            Some([u, v, w])
        },
        |[u, v, w], st| {
            st.cases_examined += 1;
            let (violation, size) = ctx.ob_regulus_skew(u, v, w);
            if size > 0 {
                st.observe_range("regulus_size", size as u64);
            }
            violation.map(|d| lines_witness("regulus_not_skew", d, &["u", "v", "w"], &[u, v, w]))
        },
    );
    CheckReport::from_search(REGULUS_SKEW, cx, stats)
}

pub fn thm_bracket_closed(s: &IncidenceStructure, budget: &Budget) -> CheckReport {
    bracket_closed(&Ctx::new(s, None, budget))
}

fn bracket_closed(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    let mut elements = BTreeSet::new();
    for (t, e) in ctx.triads(&mut stats) {
        stats.cases_examined += 1;
        elements.insert(e);
        if let Some(d) = ctx.ob_bracket_closed(t[0], t[1], t[2]) {
            let w = lines_witness("bracket_not_closed", d, &["a", "b", "c"], &t);
            return CheckReport::fail(BRACKET_CLOSED, w, stats);
        }
    }
    stats.count("elements", elements.len() as u64);
    CheckReport::pass(BRACKET_CLOSED, stats)
}

pub fn thm_coherence(s: &IncidenceStructure, budget: &Budget) -> CheckReport {
    coherence(&Ctx::new(s, None, budget))
}

/// Any triple with bracket `B` lies in `B^perp` (Galois), so the search over
/// all triples sharing a triad's bracket runs inside that perp.
fn coherence(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    let mut by_bracket: BTreeMap<LineSet, [LineId; 3]> = BTreeMap::new();
    for (t, e) in ctx.triads(&mut stats) {
        by_bracket.entry(e).or_insert(t);
    }
    let groups: Vec<(LineSet, [LineId; 3])> = by_bracket.into_iter().collect();
    let candidates = |(e, t): &(LineSet, [LineId; 3])| {
        let pool = ctx.s.perp_unchecked(e).to_vec();
        let t = *t;
        pool.into_iter()
            .combinations_with_replacement(3)
            .map(move |u| (t, [u[0], u[1], u[2]]))
            .collect_vec()
    };
    let cx = ctx.drive(
        &mut stats,
        || Box::new(groups.iter().flat_map(candidates)),
        |rng| {
            let (e, t) = &groups.get(rng.random_range(0..groups.len().max(1)))?;
            let pool = ctx.s.perp_unchecked(e).to_vec();
            let mut u = [0; 3].map(|_| pool[rng.random_range(0..pool.len())]);
            u.sort();
            Some((*t, u))
        },
        |(t, u), st| {
            st.cases_examined += 1;
            ctx.ob_coherence(t, u).map(|d| {
                lines_witness(
                    "coherence_violated",
                    d,
                    &["a", "b", "c", "p", "q", "r"],
                    &[t[0], t[1], t[2], u[0], u[1], u[2]],
                )
            })
        },
    );
    stats.count("elements", groups.len() as u64);
    CheckReport::from_search(COHERENCE, cx, stats)
}

pub fn thm_mutual_membership(s: &IncidenceStructure, budget: &Budget) -> CheckReport {
    mutual_membership(&Ctx::new(s, None, budget))
}

fn mutual_membership(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    let triads = ctx.triads(&mut stats);
    let mut ids: BTreeMap<&LineSet, usize> = BTreeMap::new();
    for (_, e) in &triads {
        let next = ids.len();
        ids.entry(e).or_insert(next);
    }
    let element_of: Vec<usize> = triads.iter().map(|(_, e)| ids[e]).collect();
    stats.count("triads", triads.len() as u64);
    stats.count("elements", ids.len() as u64);
    let k = triads.len();
    let cx = ctx.drive(
        &mut stats,
        || Box::new((0..k).flat_map(move |i| (i..k).map(move |j| (i, j)))),
        |rng| (k > 0).then(|| (rng.random_range(0..k), rng.random_range(0..k))),
        |(i, j), st| {
            st.cases_examined += 1;
            let ((t, bt), (u, bu)) = (&triads[i], &triads[j]);
            let forward = u.iter().all(|&x| bt.contains(x));
            let backward = t.iter().all(|&x| bu.contains(x));
            // both are triads by construction
            if forward == backward && !(forward && element_of[i] != element_of[j]) {
                return None;
            }
            ctx.ob_mutual_membership(*t, *u).map(|d| {
                lines_witness(
                    "mutual_membership_violated",
                    d,
                    &["a", "b", "c", "p", "q", "r"],
                    &[t[0], t[1], t[2], u[0], u[1], u[2]],
                )
            })
        },
    );
    CheckReport::from_search(MUTUAL_MEMBERSHIP, cx, stats)
}

pub fn thm_triad_typing(s: &IncidenceStructure, m: &GeometryModel, budget: &Budget) -> CheckReport {
    triad_typing(&Ctx::new(s, Some(m), budget))
}

fn triad_typing(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    let mut typed: [BTreeSet<LineSet>; 2] = Default::default();
    for (t, e) in ctx.triads(&mut stats) {
        stats.cases_examined += 1;
        match ctx.ob_triad_typing(t) {
            Ok(kind) => {
                typed[kind as usize].insert(e);
            }
            Err(d) => {
                let w = lines_witness("triad_typing_violated", d, &["a", "b", "c"], &t);
                return CheckReport::fail(TRIAD_TYPING, w, stats);
            }
        }
    }
    stats.count("point_elements", typed[0].len() as u64);
    stats.count("plane_elements", typed[1].len() as u64);
    CheckReport::pass(TRIAD_TYPING, stats)
}

pub fn thm_point_ne_plane(
    s: &IncidenceStructure,
    m: &GeometryModel,
    budget: &Budget,
) -> CheckReport {
    point_ne_plane(&Ctx::new(s, Some(m), budget))
}

fn point_ne_plane(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    let mut points: BTreeMap<LineSet, (LineId, LineId)> = BTreeMap::new();
    let mut planes: BTreeMap<LineSet, (LineId, LineId)> = BTreeMap::new();
    for (a, b) in ctx.s.incident_pairs() {
        stats.cases_examined += 1;
        match ctx.pair_elements(a, b) {
            Ok((point, plane)) => {
                points.entry(point).or_insert((a, b));
                planes.entry(plane).or_insert((a, b));
            }
            Err(d) => {
                let w = lines_witness("pair_unlabeled", d, &["a", "b", "p", "q"], &[a, b, a, b]);
                return CheckReport::fail(POINT_NE_PLANE, w, stats);
            }
        }
    }
    stats.count("points", points.len() as u64);
    stats.count("planes", planes.len() as u64);
    for (plane, &(a, b)) in &planes {
        if let Some(&(p, q)) = points.get(plane) {
            let d = ctx
                .ob_point_ne_plane(a, b, p, q)
                .unwrap_or_else(|| "plane equals point".into());
            let w = lines_witness(
                "point_equals_plane",
                d,
                &["a", "b", "p", "q"],
                &[a, b, p, q],
            );
            return CheckReport::fail(POINT_NE_PLANE, w, stats);
        }
    }
    CheckReport::pass(POINT_NE_PLANE, stats)
}

pub fn thm_pencil_intersection(
    s: &IncidenceStructure,
    m: &GeometryModel,
    budget: &Budget,
) -> CheckReport {
    pencil_intersection(&Ctx::new(s, Some(m), budget))
}

fn pencil_intersection(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    for (a, b) in ctx.s.incident_pairs() {
        stats.cases_examined += 1;
        match ctx.ob_pencil_intersection(a, b) {
            Ok(size) => stats.observe_range("pencil_size", size as u64),
            Err(d) => {
                let w = lines_witness("pencil_mismatch", d, &["a", "b"], &[a, b]);
                return CheckReport::fail(PENCIL_INTERSECTION, w, stats);
            }
        }
    }
    CheckReport::pass(PENCIL_INTERSECTION, stats)
}

pub fn thm_exchange(s: &IncidenceStructure, m: &GeometryModel, budget: &Budget) -> CheckReport {
    exchange(&Ctx::new(s, Some(m), budget))
}

fn exchange(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    let triads = ctx.triads(&mut stats);
    let per_triad = |(t, e): &([LineId; 3], LineSet)| {
        let t = *t;
        e.to_vec()
            .into_iter()
            .tuple_combinations::<(_, _)>()
            .map(move |(x, y)| (t, x, y))
            .collect_vec()
    };
    let cx = ctx.drive(
        &mut stats,
        || Box::new(triads.iter().flat_map(per_triad)),
        |rng| {
            let (t, e) = triads.get(rng.random_range(0..triads.len().max(1)))?;
            let members = e.to_vec();
            let [i, j] = random_distinct::<2>(rng, members.len())?;
            Some((*t, members[i], members[j]))
        },
        |(t, x, y), st| {
            st.cases_examined += 1;
            ctx.ob_exchange(t, x, y).map(|d| {
                lines_witness(
                    "exchange_violated",
                    d,
                    &["a", "b", "c", "x", "y"],
                    &[t[0], t[1], t[2], x, y],
                )
            })
        },
    );
    CheckReport::from_search(EXCHANGE, cx, stats)
}

pub fn thm_not_singleton(
    s: &IncidenceStructure,
    m: &GeometryModel,
    budget: &Budget,
) -> CheckReport {
    not_singleton(&Ctx::new(s, Some(m), budget))
}

fn not_singleton(ctx: &Ctx) -> CheckReport {
    let m = ctx.model();
    let mut stats = Stats::default();
    let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
    for point in m.points() {
        for plane in m.planes() {
            stats.cases_examined += 1;
            *sizes.entry(point.intersection_len(plane)).or_default() += 1;
            if let Some(d) = ctx.ob_not_singleton(point, plane) {
                let w = sets_witness("singleton_meet", d, &["point", "plane"], &[point, plane]);
                return CheckReport::fail(NOT_SINGLETON, w, stats);
            }
        }
    }
    for (size, count) in sizes {
        stats.count(&format!("intersection_size_{size}"), count);
    }
    CheckReport::pass(NOT_SINGLETON, stats)
}

pub fn thm_uniqueness(s: &IncidenceStructure, m: &GeometryModel, budget: &Budget) -> CheckReport {
    uniqueness(&Ctx::new(s, Some(m), budget))
}

fn uniqueness(ctx: &Ctx) -> CheckReport {
    let m = ctx.model();
    let mut stats = Stats::default();
    for kind in [Kind::Plane, Kind::Point] {
        let family = m.elements(kind);
        for (i, x) in family.iter().enumerate() {
            for y in &family[i + 1..] {
                stats.cases_examined += 1;
                if let Some(d) = ctx.ob_uniqueness(x, y) {
                    let w = sets_witness("same_kind_overlap", d, &["first", "second"], &[x, y]);
                    return CheckReport::fail(UNIQUENESS, w, stats);
                }
            }
        }
    }
    CheckReport::pass(UNIQUENESS, stats)
}

pub fn thm_line_in_plane(
    s: &IncidenceStructure,
    m: &GeometryModel,
    budget: &Budget,
) -> CheckReport {
    line_in_plane(&Ctx::new(s, Some(m), budget))
}

fn line_in_plane(ctx: &Ctx) -> CheckReport {
    let m = ctx.model();
    let mut stats = Stats::default();
    // two points on a plane, then dually two planes through a point
    for kind in [Kind::Point, Kind::Plane] {
        for host in m.elements(kind.dual()) {
            let on: Vec<&LineSet> = m
                .elements(kind)
                .iter()
                .filter(|e| !e.is_disjoint(host))
                .collect();
            for (i, x) in on.iter().enumerate() {
                for y in &on[i + 1..] {
                    stats.cases_examined += 1;
                    if let Some(d) = ctx.ob_line_in_plane(x, y, host) {
                        let w = sets_witness(
                            "common_line_off_host",
                            d,
                            &["first", "second", "host"],
                            &[x, y, host],
                        );
                        return CheckReport::fail(LINE_IN_PLANE, w, stats);
                    }
                }
            }
        }
    }
    CheckReport::pass(LINE_IN_PLANE, stats)
}

/// Drives `f` over triples of distinct points (sampled above the limit).
fn over_point_triples(
    ctx: &Ctx,
    stats: &mut Stats,
    mut f: impl FnMut([&LineSet; 3], &mut Stats) -> Option<Witness>,
) -> Option<Witness> {
    let pts = ctx.model().points();
    let k = pts.len();
    ctx.drive(
        stats,
        || Box::new((0..k).tuple_combinations::<(_, _, _)>()),
        |rng| random_distinct::<3>(rng, k).map(|[a, b, c]| (a, b, c)),
        |(a, b, c), st| f([&pts[a], &pts[b], &pts[c]], st),
    )
}

pub fn thm_triangle(s: &IncidenceStructure, m: &GeometryModel, budget: &Budget) -> CheckReport {
    triangle(&Ctx::new(s, Some(m), budget))
}

fn triangle(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    let cx = over_point_triples(ctx, &mut stats, |pts, st| {
        if !pts[0].intersection(pts[1]).is_disjoint(pts[2]) {
            return None;
        }
        st.cases_examined += 1;
        ctx.ob_triangle(pts)
            .map(|d| sets_witness("triangle_violated", d, &["A", "B", "C"], &pts))
    });
    CheckReport::from_search(TRIANGLE, cx, stats)
}

pub fn thm_tetrahedron(s: &IncidenceStructure, m: &GeometryModel, budget: &Budget) -> CheckReport {
    tetrahedron(&Ctx::new(s, Some(m), budget))
}

fn tetrahedron(ctx: &Ctx) -> CheckReport {
    let mut stats = Stats::default();
    let cx = over_point_triples(ctx, &mut stats, |pts, st| match ctx.ob_tetrahedron(pts) {
        None => None,
        Some(Ok(_)) => {
            st.cases_examined += 1;
            None
        }
        Some(Err(d)) => {
            st.cases_examined += 1;
            Some(sets_witness(
                "tetrahedron_violated",
                d,
                &["A", "B", "C"],
                &pts,
            ))
        }
    });
    CheckReport::from_search(TETRAHEDRON, cx, stats)
}

/// The six edges of the tetrahedron built on three non-collinear points:
/// base edges `B∩C, C∩A, A∩B`, then the edges to the first point off the
/// base plane.
pub fn tetrahedron_edges(m: &GeometryModel, points: [&LineSet; 3]) -> Result<[LineId; 6]> {
    let ctx = Ctx::new(m.structure(), Some(m), &Budget::default());
    match ctx.ob_tetrahedron(points) {
        None => Err(Error::precondition(
            "the points are not three non-collinear points of the model",
        )),
        Some(r) => r.map_err(Error::Precondition),
    }
}

// ---------------------------------------------------------------------------
// Extension and alignment axioms over a derived model

impl Ctx<'_> {
    fn points_on_line(&self, l: LineId) -> usize {
        self.points_on[l.0].len()
    }

    fn ob_vy_e0(&self, l: LineId) -> Violation {
        let n = self.points_on_line(l);
        (n < 3).then(|| format!("only {n} points on the line"))
    }

    fn ob_vy_e2(&self, l: LineId) -> Violation {
        (self.points_on_line(l) == self.model().points().len())
            .then(|| "every point is on the line".to_string())
    }

    fn ob_vy_e3(&self, plane: &LineSet) -> Violation {
        (!self.model().points().iter().any(|p| p.is_disjoint(plane)))
            .then(|| "every point is on the plane".to_string())
    }

    fn ob_vy_common_line(&self, x: &LineSet, y: &LineSet) -> Violation {
        (x != y && x.is_disjoint(y)).then(|| "the two elements share no line".to_string())
    }

    fn ob_vy_a2(&self, x: &LineSet, y: &LineSet) -> Violation {
        (x != y && x.intersection_len(y) > 1).then(|| "two points share more than one line".into())
    }

    /// Pasch: with `A, B, C` non-collinear, `D` on `BC`, `E` on `CA`,
    /// `D != E`, the line `DE` meets `AB`.
    fn ob_vy_a3(&self, pts: [&LineSet; 3], d: &LineSet, e: &LineSet) -> Violation {
        let [a, b, c] = match self.triangle_edges(pts[0], pts[1], pts[2])? {
            Ok(edges) => edges,
            Err(err) => return Some(err),
        };
        let m = self.model();
        if d == e
            || m.kind_of(d) != Some(Kind::Point)
            || m.kind_of(e) != Some(Kind::Point)
            || !d.contains(a)
            || !e.contains(b)
        {
            return None;
        }
        let de = d.intersection(e);
        if de.len() != 1 {
            return Some(format!("D and E share {} lines", de.len()));
        }
        let f = de.first().expect("singleton");
        let meets = f == c
            || self.points_on[f.0]
                .iter()
                .any(|i| self.points_on[c.0].binary_search(i).is_ok());
        (!meets).then(|| "the line DE does not meet the line AB".to_string())
    }
}

fn vy_over_lines<'a>(
    ctx: &Ctx<'a>,
    name: &str,
    tag: &str,
    ob: impl Fn(&Ctx<'a>, LineId) -> Violation,
    track: bool,
) -> CheckReport {
    let mut stats = Stats::default();
    for l in ctx.s.lines() {
        stats.cases_examined += 1;
        if track {
            stats.observe_range("points_per_line", ctx.points_on_line(l) as u64);
        }
        if let Some(d) = ob(ctx, l) {
            return CheckReport::fail(name, lines_witness(tag, d, &["l"], &[l]), stats);
        }
    }
    CheckReport::pass(name, stats)
}

fn vy_over_pairs<'a>(
    ctx: &Ctx<'a>,
    name: &str,
    tag: &str,
    family: &[LineSet],
    ob: impl Fn(&Ctx<'a>, &LineSet, &LineSet) -> Violation,
) -> CheckReport {
    let mut stats = Stats::default();
    for (i, x) in family.iter().enumerate() {
        for y in &family[i + 1..] {
            stats.cases_examined += 1;
            if let Some(d) = ob(ctx, x, y) {
                let w = sets_witness(tag, d, &["first", "second"], &[x, y]);
                return CheckReport::fail(name, w, stats);
            }
        }
    }
    CheckReport::pass(name, stats)
}

/// The eight extension and alignment checks, with "P on p" read as `p ∈ P`.
pub fn vy_axioms(s: &IncidenceStructure, m: &GeometryModel, budget: &Budget) -> Vec<CheckReport> {
    let ctx = Ctx::new(s, Some(m), budget);
    vy_all(&ctx)
}

fn vy_all(ctx: &Ctx) -> Vec<CheckReport> {
    let m = ctx.model();
    let e0 = vy_over_lines(ctx, VY_E0, "few_points_on_line", Ctx::ob_vy_e0, true);
    let e1 = {
        let stats = Stats {
            cases_examined: 1,
            ..Default::default()
        };
        if ctx.s.line_count() >= 1 {
            CheckReport::pass(VY_E1, stats)
        } else {
            CheckReport::fail(
                VY_E1,
                Witness::new("no_lines", "the structure has no lines"),
                stats,
            )
        }
    };
    let e2 = vy_over_lines(ctx, VY_E2, "all_points_on_line", Ctx::ob_vy_e2, false);
    let e3 = {
        let mut stats = Stats::default();
        let mut cx = None;
        for plane in m.planes() {
            stats.cases_examined += 1;
            if let Some(d) = ctx.ob_vy_e3(plane) {
                cx = Some(sets_witness("all_points_on_plane", d, &["plane"], &[plane]));
                break;
            }
        }
        CheckReport::from_search(VY_E3, cx, stats)
    };
    let e3p = vy_over_pairs(
        ctx,
        VY_E3_PRIME,
        "planes_share_no_line",
        m.planes(),
        Ctx::ob_vy_common_line,
    );
    let a1 = vy_over_pairs(
        ctx,
        VY_A1,
        "points_share_no_line",
        m.points(),
        Ctx::ob_vy_common_line,
    );
    let a2 = vy_over_pairs(
        ctx,
        VY_A2,
        "points_share_two_lines",
        m.points(),
        Ctx::ob_vy_a2,
    );
    let a3 = {
        let mut stats = Stats::default();
        let cx = over_point_triples(ctx, &mut stats, |pts, st| {
            let [a, b, _] = match ctx.triangle_edges(pts[0], pts[1], pts[2])? {
                Ok(edges) => edges,
                Err(err) => {
                    return Some(sets_witness("pasch_violated", err, &["A", "B", "C"], &pts))
                }
            };
            for &di in &ctx.points_on[a.0] {
                for &ei in &ctx.points_on[b.0] {
                    let (d, e) = (&m.points()[di], &m.points()[ei]);
                    if d == e {
                        continue;
                    }
                    st.cases_examined += 1;
                    if let Some(msg) = ctx.ob_vy_a3(pts, d, e) {
                        return Some(sets_witness(
                            "pasch_violated",
                            msg,
                            &["A", "B", "C", "D", "E"],
                            &[pts[0], pts[1], pts[2], d, e],
                        ));
                    }
                }
            }
            None
        });
        CheckReport::from_search(VY_A3, cx, stats)
    };
    vec![e0, e1, e2, e3, e3p, a1, a2, a3]
}

/// Every theorem verifier in a fixed order, followed by the extension and
/// alignment checks. Verifiers that need a labeling report an unmet
/// dependency when `m` is `None`.
pub fn run_all(
    s: &IncidenceStructure,
    m: Option<&GeometryModel>,
    budget: &Budget,
) -> Vec<CheckReport> {
    let ctx = Ctx::new(s, m, budget);
    let mut out = vec![
        sigma_equivalence(&ctx),
        two_classes(&ctx),
        bracket_welldefined(&ctx),
        line_selfperp(&ctx),
        regulus_skew(&ctx),
        bracket_closed(&ctx),
        coherence(&ctx),
        mutual_membership(&ctx),
    ];
    let model_checks: [(&str, Verifier); 9] = [
        (TRIAD_TYPING, triad_typing),
        (POINT_NE_PLANE, point_ne_plane),
        (PENCIL_INTERSECTION, pencil_intersection),
        (EXCHANGE, exchange),
        (NOT_SINGLETON, not_singleton),
        (UNIQUENESS, uniqueness),
        (LINE_IN_PLANE, line_in_plane),
        (TRIANGLE, triangle),
        (TETRAHEDRON, tetrahedron),
    ];
    for (name, check) in model_checks {
        out.push(match m {
            Some(_) => check(&ctx),
            None => CheckReport::dependency_unmet(
                name,
                "labeling",
                "no consistent point/plane labeling",
            ),
        });
    }
    out
}

/// Re-evaluates the obligation named by a failing report's counterexample.
pub fn replay(
    s: &IncidenceStructure,
    m: Option<&GeometryModel>,
    budget: &Budget,
    report: &CheckReport,
) -> Result<bool> {
    let Some(w) = &report.counterexample else {
        return Ok(false);
    };
    if w.tag == "dependency_unmet" {
        return Ok(m.is_none());
    }
    let ctx = Ctx::new(s, m, budget);
    let line = |name: &str| -> Result<LineId> {
        let l = w
            .line(name)
            .ok_or_else(|| Error::Parse(format!("counterexample lacks line {name:?}")))?;
        s.check_line(l)?;
        Ok(l)
    };
    let set = |name: &str| -> Result<&LineSet> {
        let e = w
            .set(name)
            .ok_or_else(|| Error::Parse(format!("counterexample lacks set {name:?}")))?;
        s.check_set(e)?;
        Ok(e)
    };
    let needs_model = |name: &str| -> Result<()> {
        if m.is_none() {
            return Err(Error::precondition(format!(
                "{name} needs a model to replay"
            )));
        }
        Ok(())
    };
    let triple = |names: [&str; 3]| -> Result<[LineId; 3]> {
        Ok([line(names[0])?, line(names[1])?, line(names[2])?])
    };
    let name = report.check_name.as_str();
    if name.starts_with("thm_")
        && ![
            SIGMA_EQUIVALENCE,
            TWO_CLASSES,
            BRACKET_WELLDEFINED,
            LINE_SELFPERP,
            REGULUS_SKEW,
            BRACKET_CLOSED,
            COHERENCE,
            MUTUAL_MEMBERSHIP,
        ]
        .contains(&name)
        || name.starts_with("vy_")
    {
        needs_model(name)?;
    }
    Ok(match name {
        SIGMA_EQUIVALENCE => {
            let [a, b, c] = triple(["a", "b", "c"])?;
            ctx.ob_sigma_equivalence(a, b, c).is_some()
        }
        TWO_CLASSES => {
            let (a, b) = (line("a")?, line("b")?);
            a != b && s.meets(a, b) && ctx.ob_two_classes(a, b).is_err()
        }
        BRACKET_WELLDEFINED => ctx
            .ob_bracket_welldefined(line("a")?, line("b")?, line("c1")?, line("c2")?)
            .is_some(),
        LINE_SELFPERP => ctx.ob_line_selfperp(line("l")?).is_some(),
        REGULUS_SKEW => ctx
            .ob_regulus_skew(line("u")?, line("v")?, line("w")?)
            .0
            .is_some(),
        BRACKET_CLOSED => {
            let [a, b, c] = triple(["a", "b", "c"])?;
            ctx.ob_bracket_closed(a, b, c).is_some()
        }
        COHERENCE => ctx
            .ob_coherence(triple(["a", "b", "c"])?, triple(["p", "q", "r"])?)
            .is_some(),
        MUTUAL_MEMBERSHIP => ctx
            .ob_mutual_membership(triple(["a", "b", "c"])?, triple(["p", "q", "r"])?)
            .is_some(),
        TRIAD_TYPING => ctx.ob_triad_typing(triple(["a", "b", "c"])?).is_err(),
        POINT_NE_PLANE => ctx
            .ob_point_ne_plane(line("a")?, line("b")?, line("p")?, line("q")?)
            .is_some(),
        PENCIL_INTERSECTION => ctx.ob_pencil_intersection(line("a")?, line("b")?).is_err(),
        EXCHANGE => {
            let t = triple(["a", "b", "c"])?;
            ctx.ob_exchange(t, line("x")?, line("y")?).is_some()
        }
        NOT_SINGLETON => {
            let (p, q) = (set("point")?, set("plane")?);
            let m = ctx.model();
            m.kind_of(p) == Some(Kind::Point)
                && m.kind_of(q) == Some(Kind::Plane)
                && ctx.ob_not_singleton(p, q).is_some()
        }
        UNIQUENESS => ctx.ob_uniqueness(set("first")?, set("second")?).is_some(),
        LINE_IN_PLANE => ctx
            .ob_line_in_plane(set("first")?, set("second")?, set("host")?)
            .is_some(),
        TRIANGLE => ctx.ob_triangle([set("A")?, set("B")?, set("C")?]).is_some(),
        TETRAHEDRON => matches!(
            ctx.ob_tetrahedron([set("A")?, set("B")?, set("C")?]),
            Some(Err(_))
        ),
        VY_E0 => ctx.ob_vy_e0(line("l")?).is_some(),
        VY_E1 => s.line_count() == 0,
        VY_E2 => ctx.ob_vy_e2(line("l")?).is_some(),
        VY_E3 => {
            let plane = set("plane")?;
            ctx.model().kind_of(plane) == Some(Kind::Plane) && ctx.ob_vy_e3(plane).is_some()
        }
        VY_E3_PRIME | VY_A1 => {
            let kind = if name == VY_A1 {
                Kind::Point
            } else {
                Kind::Plane
            };
            let (x, y) = (set("first")?, set("second")?);
            let model = ctx.model();
            model.kind_of(x) == Some(kind)
                && model.kind_of(y) == Some(kind)
                && ctx.ob_vy_common_line(x, y).is_some()
        }
        VY_A2 => {
            let (x, y) = (set("first")?, set("second")?);
            let model = ctx.model();
            model.kind_of(x) == Some(Kind::Point)
                && model.kind_of(y) == Some(Kind::Point)
                && ctx.ob_vy_a2(x, y).is_some()
        }
        VY_A3 => {
            let pts = [set("A")?, set("B")?, set("C")?];
            match (w.set("D"), w.set("E")) {
                (Some(d), Some(e)) => ctx.ob_vy_a3(pts, d, e).is_some(),
                _ => matches!(ctx.triangle_edges(pts[0], pts[1], pts[2]), Some(Err(_))),
            }
        }
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{coordinate_labels, dualize};
    use crate::models::{gen_negative, NegativeKind};

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn tetrahedron_passes_every_theorem() {
        let t = gen_tetrahedron();
        let m = coordinate_labels(&t, None).unwrap();
        for r in run_all(&t, Some(&m), &budget()) {
            assert!(r.passed(), "{}: {:?}", r.check_name, r.counterexample);
        }
    }

    #[test]
    fn tetrahedron_statistics() {
        let t = gen_tetrahedron();
        let m = coordinate_labels(&t, None).unwrap();
        let b = budget();
        let two = thm_two_classes(&t, &b);
        assert_eq!(two.stats.get("class_size_min"), Some(1));
        assert_eq!(two.stats.get("class_size_max"), Some(1));
        // classes are singletons, so no incident pair within a class exists
        assert_eq!(thm_bracket_welldefined(&t, &b).stats.cases_examined, 0);
        // no pairwise skew triple among the six edges
        assert_eq!(thm_regulus_skew(&t, &b).stats.cases_examined, 0);
        let typing = thm_triad_typing(&t, &m, &b);
        assert_eq!(typing.stats.get("point_elements"), Some(4));
        assert_eq!(typing.stats.get("plane_elements"), Some(4));
        let ns = thm_not_singleton(&t, &m, &b);
        assert_eq!(ns.stats.get("intersection_size_0"), Some(4));
        assert_eq!(ns.stats.get("intersection_size_2"), Some(12));
        assert_eq!(ns.stats.get("intersection_size_1"), None);
        let pencil = thm_pencil_intersection(&t, &m, &b);
        assert_eq!(pencil.stats.get("pencil_size_max"), Some(2));
        assert_eq!(thm_bracket_closed(&t, &b).stats.get("elements"), Some(8));
        assert_eq!(thm_triangle(&t, &m, &b).stats.cases_examined, 4);
    }

    #[test]
    fn swapped_labels_still_pass_typing() {
        let t = gen_tetrahedron();
        let m = dualize(&coordinate_labels(&t, None).unwrap());
        assert!(thm_triad_typing(&t, &m, &budget()).passed());
    }

    #[test]
    fn complete_incidence_fails_selfperp() {
        let s = gen_negative(NegativeKind::NoSkewAnywhere);
        let r = thm_line_selfperp(&s, &budget());
        assert!(!r.passed());
        assert!(replay(&s, None, &budget(), &r).unwrap());
    }

    #[test]
    fn pasch_violation_breaks_structure_theorems() {
        let s = gen_negative(NegativeKind::PaschViolation);
        let b = budget();
        for r in [
            thm_two_classes(&s, &b),
            thm_sigma_equivalence(&s, &b),
            thm_bracket_closed(&s, &b),
        ] {
            assert!(!r.passed(), "{} unexpectedly passed", r.check_name);
            assert!(replay(&s, None, &b, &r).unwrap(), "{}", r.check_name);
        }
    }

    #[test]
    fn model_free_run_reports_unmet_dependencies() {
        let s = gen_negative(NegativeKind::PaschViolation);
        let reports = run_all(&s, None, &budget());
        assert_eq!(reports.len(), 17);
        let unmet = reports
            .iter()
            .filter(|r| r.outcome == crate::report::Outcome::DependencyUnmet)
            .count();
        assert_eq!(unmet, 9);
    }

    #[test]
    fn small_isomorphism() {
        let t = gen_tetrahedron();
        let order = [5, 0, 4, 2, 1, 3].map(LineId);
        let shuffled = t.induced("shuffled", &order).unwrap();
        assert!(isomorphic_small(&t, &shuffled));
        let k = gen_negative(NegativeKind::PaschViolation);
        let six = k.induced("six", &[0, 1, 2, 3, 4, 6].map(LineId)).unwrap();
        assert!(!isomorphic_small(&t, &six));
    }

    #[test]
    fn sampling_records_seed() {
        let t = gen_tetrahedron();
        let b = Budget {
            exhaustive_limit: 3,
            samples: 50,
            seed: 7,
        };
        let r = thm_sigma_equivalence(&t, &b);
        assert!(r.passed());
        assert_eq!(r.stats.sampling_seed, Some(7));
        assert_eq!(r.stats.cases_examined, 50);
        assert_eq!(thm_sigma_equivalence(&t, &b), r);
    }
}
