//! Verification predicates and brute-force solvers for the four
//! distinguishing problems.
//!
//! Every problem here has the same shape: a set `S` is a solution iff it
//! meets each member of a family of *requirement sets*. For a pair `u, v`
//! the requirement is the set of vertices that tell `u` and `v` apart; for
//! a single vertex it is the set of vertices that dominate it. The
//! predicates and the solver are both written against that view.
//!
//! Vertices in different components are at distance [`INFINITY`], which is
//! treated as one more distance value.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{parse_err, Error, Result};
use crate::graph::{all_pairs_distances, DistanceMatrix, Graph, INFINITY};

/// The four problems, plus the distance-2 relaxation of metric dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    /// Metric dimension (resolving sets).
    Md,
    /// Locating-dominating sets.
    Ld,
    /// Identifying codes.
    Id,
    /// Open locating-dominating sets.
    Old,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 4] = [ProblemKind::Md, ProblemKind::Ld, ProblemKind::Id, ProblemKind::Old];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Md => "md",
            ProblemKind::Ld => "ld",
            ProblemKind::Id => "id",
            ProblemKind::Old => "old",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "md" => Ok(ProblemKind::Md),
            "ld" => Ok(ProblemKind::Ld),
            "id" => Ok(ProblemKind::Id),
            "old" => Ok(ProblemKind::Old),
            other => Err(Error::InvalidParameter(format!(
                "unknown problem `{other}` (expected md, ld, id or old)"
            ))),
        }
    }
}

/// A set of vertices of a graph on `universe` vertices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
    universe: usize,
}

impl VertexSet {
    /// Fails if a member is outside `0..universe`. Duplicates collapse.
    pub fn new(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&v| v >= universe) {
            return Err(Error::InvalidParameter(format!(
                "vertex {bad} outside 0..{universe}"
            )));
        }
        Ok(VertexSet { members, universe })
    }

    pub fn full(universe: usize) -> Self {
        VertexSet {
            members: (0..universe).collect(),
            universe,
        }
    }

    pub fn empty(universe: usize) -> Self {
        VertexSet {
            members: Vec::new(),
            universe,
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// Membership as packed words, `universe.div_ceil(64)` long.
    pub fn to_words(&self) -> Vec<u64> {
        let mut w = vec![0u64; self.universe.div_ceil(64).max(1)];
        for &v in &self.members {
            w[v / 64] |= 1 << (v % 64);
        }
        w
    }

    /// Whitespace-separated vertex ids; `#` starts a comment.
    pub fn to_text(&self) -> String {
        let ids: Vec<String> = self.members.iter().map(usize::to_string).collect();
        format!("{}\n", ids.join(" "))
    }

    pub fn from_text(text: &str, universe: usize) -> Result<Self> {
        let mut members = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("");
            for tok in content.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| parse_err(i + 1, format!("bad vertex id `{tok}`")))?;
                if v >= universe {
                    return Err(parse_err(i + 1, format!("vertex {v} outside 0..{universe}")));
                }
                members.push(v);
            }
        }
        VertexSet::new(universe, members)
    }
}

/// The first requirement a set fails to meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `v` has no neighbour in the set (closed neighbourhood for LD/ID,
    /// open for OLD).
    NotDominated(usize),
    /// No member of the set separates `u` from `v`.
    Unseparated(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotDominated(v) => write!(f, "vertex {v} is not dominated"),
            Violation::Unseparated(u, v) => write!(f, "pair ({u}, {v}) is not separated"),
        }
    }
}

/// Which pairs a metric requirement family covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PairScope {
    All,
    WithinTwo,
}

/// Requirement check against a packed set, in canonical order: single
/// vertices first (by id), then pairs `(u, v)` with `u < v` lexicographically.
fn first_violation_words(
    g: &Graph,
    dist: Option<&DistanceMatrix>,
    kind: ProblemKind,
    scope: PairScope,
    s: &[u64],
) -> Option<Violation> {
    let n = g.n();
    let has = |v: usize| s[v / 64] >> (v % 64) & 1 == 1;
    let meets = |row: &[u64]| row.iter().zip(s).any(|(a, b)| a & b != 0);
    match kind {
        ProblemKind::Md => {
            let d = dist.expect("metric check needs distances");
            for u in 0..n {
                for v in u + 1..n {
                    if scope == PairScope::WithinTwo && d.get(u, v) > 2 {
                        continue;
                    }
                    // u and v themselves always separate the pair.
                    if has(u) || has(v) {
                        continue;
                    }
                    let (du, dv) = (d.row(u), d.row(v));
                    let separated = (0..n).any(|x| has(x) && du[x] != dv[x]);
                    if !separated {
                        return Some(Violation::Unseparated(u, v));
                    }
                }
            }
            None
        }
        ProblemKind::Ld | ProblemKind::Id | ProblemKind::Old => {
            let closed = kind != ProblemKind::Old;
            for v in 0..n {
                if (closed && has(v)) || meets(g.open_row(v)) {
                    continue;
                }
                return Some(Violation::NotDominated(v));
            }
            for u in 0..n {
                for v in u + 1..n {
                    if kind == ProblemKind::Ld && (has(u) || has(v)) {
                        continue;
                    }
                    let (ru, rv) = (g.open_row(u), g.open_row(v));
                    let differ = (0..ru.len()).any(|w| {
                        let (mut a, mut b) = (ru[w], rv[w]);
                        if kind == ProblemKind::Id {
                            // Closed neighbourhoods.
                            if u / 64 == w {
                                a |= 1 << (u % 64);
                            }
                            if v / 64 == w {
                                b |= 1 << (v % 64);
                            }
                        }
                        (a ^ b) & s[w] != 0
                    });
                    if !differ {
                        return Some(Violation::Unseparated(u, v));
                    }
                }
            }
            None
        }
    }
}

/// First failed requirement of `s` for `kind`, or `None` if `s` is valid.
pub fn first_violation(g: &Graph, kind: ProblemKind, s: &VertexSet) -> Option<Violation> {
    let dist = (kind == ProblemKind::Md).then(|| all_pairs_distances(g));
    first_violation_words(g, dist.as_ref(), kind, PairScope::All, &s.to_words())
}

pub fn is_resolving(g: &Graph, s: &VertexSet) -> bool {
    is_resolving_with(&all_pairs_distances(g), g, s)
}

/// [`is_resolving`] with a precomputed distance table.
pub fn is_resolving_with(dist: &DistanceMatrix, g: &Graph, s: &VertexSet) -> bool {
    first_violation_words(g, Some(dist), ProblemKind::Md, PairScope::All, &s.to_words()).is_none()
}

/// Every pair at distance at most 2 is separated by a member of `s`.
pub fn is_distance2_resolving(g: &Graph, s: &VertexSet) -> bool {
    let dist = all_pairs_distances(g);
    first_violation_words(g, Some(&dist), ProblemKind::Md, PairScope::WithinTwo, &s.to_words())
        .is_none()
}

pub fn is_locating_dominating(g: &Graph, s: &VertexSet) -> bool {
    first_violation_words(g, None, ProblemKind::Ld, PairScope::All, &s.to_words()).is_none()
}

pub fn is_identifying(g: &Graph, s: &VertexSet) -> bool {
    first_violation_words(g, None, ProblemKind::Id, PairScope::All, &s.to_words()).is_none()
}

pub fn is_open_locating_dominating(g: &Graph, s: &VertexSet) -> bool {
    first_violation_words(g, None, ProblemKind::Old, PairScope::All, &s.to_words()).is_none()
}

/// Dispatch on `kind`.
pub fn is_valid(g: &Graph, kind: ProblemKind, s: &VertexSet) -> bool {
    first_violation(g, kind, s).is_none()
}

/// Some pair of distinct vertices has equal closed neighbourhoods.
pub fn has_twins(g: &Graph) -> bool {
    find_twins(g, true).is_some()
}

/// Some pair of distinct vertices has equal open neighbourhoods.
pub fn has_open_twins(g: &Graph) -> bool {
    find_twins(g, false).is_some()
}

fn find_twins(g: &Graph, closed: bool) -> Option<(usize, usize)> {
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            let same = if closed {
                g.has_edge(u, v)
                    && g.neighbors(u).iter().filter(|&&w| w != v).eq(g.neighbors(v).iter().filter(|&&w| w != u))
            } else {
                g.neighbors(u) == g.neighbors(v)
            };
            if same {
                return Some((u, v));
            }
        }
    }
    None
}

/// Why no solution exists at any size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// Two vertices with equal closed neighbourhoods (identifying codes).
    Twins(usize, usize),
    /// Two vertices with equal open neighbourhoods (open location-domination).
    OpenTwins(usize, usize),
    /// A vertex without neighbours cannot be totally dominated.
    IsolatedVertex(usize),
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::Twins(u, v) => write!(f, "vertices {u} and {v} are twins"),
            Infeasibility::OpenTwins(u, v) => write!(f, "vertices {u} and {v} are open twins"),
            Infeasibility::IsolatedVertex(v) => write!(f, "vertex {v} is isolated"),
        }
    }
}

/// Result of [`brute_force_min`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteForce {
    /// Minimum-size solution; lexicographically smallest among those.
    Found(VertexSet),
    /// No solution with at most `k_max` vertices.
    BudgetExceeded,
    /// No solution exists at all.
    Impossible(Infeasibility),
}

impl BruteForce {
    pub fn size(&self) -> Option<usize> {
        match self {
            BruteForce::Found(s) => Some(s.len()),
            _ => None,
        }
    }

    pub fn set(&self) -> Option<&VertexSet> {
        match self {
            BruteForce::Found(s) => Some(s),
            _ => None,
        }
    }
}

/// Options for [`brute_force_min_with`].
#[derive(Clone, Copy, Debug)]
pub struct BruteForceOptions {
    /// Worker threads; `1` runs on the calling thread. The answer does not
    /// depend on this value.
    pub threads: usize,
    /// Only pairs at distance at most 2 need separating (metric problems only).
    pub distance2: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions {
            threads: 1,
            distance2: false,
        }
    }
}

/// Largest graph the enumerator accepts.
pub const BRUTE_FORCE_MAX_N: usize = 128;

/// Minimum solution with at most `k_max` vertices.
///
/// Panics if the graph has more than [`BRUTE_FORCE_MAX_N`] vertices.
pub fn brute_force_min(g: &Graph, kind: ProblemKind, k_max: usize) -> BruteForce {
    brute_force_min_with(g, kind, k_max, BruteForceOptions::default())
}

pub fn brute_force_min_with(
    g: &Graph,
    kind: ProblemKind,
    k_max: usize,
    opts: BruteForceOptions,
) -> BruteForce {
    let n = g.n();
    assert!(n <= BRUTE_FORCE_MAX_N, "brute force limited to {BRUTE_FORCE_MAX_N} vertices");
    match kind {
        ProblemKind::Id => {
            if let Some((u, v)) = find_twins(g, true) {
                return BruteForce::Impossible(Infeasibility::Twins(u, v));
            }
        }
        ProblemKind::Old => {
            if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
                return BruteForce::Impossible(Infeasibility::IsolatedVertex(v));
            }
            if let Some((u, v)) = find_twins(g, false) {
                return BruteForce::Impossible(Infeasibility::OpenTwins(u, v));
            }
        }
        _ => {}
    }
    let scope = if opts.distance2 { PairScope::WithinTwo } else { PairScope::All };
    let reqs = requirements(g, kind, scope);
    debug_assert!(reqs.iter().all(|&r| r != 0));
    let search = Search::new(n, reqs);
    let run = |k: usize| search.first_of_size(k, opts.threads);
    let pool = (opts.threads > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool")
    });
    for k in 0..=k_max.min(n) {
        let hit = match &pool {
            Some(p) => p.install(|| run(k)),
            None => run(k),
        };
        if let Some(mask) = hit {
            let members = (0..n).filter(|&v| mask >> v & 1 == 1);
            return BruteForce::Found(VertexSet::new(n, members).expect("in range"));
        }
    }
    BruteForce::BudgetExceeded
}

/// Requirement sets of `kind` as bit masks: a set `S` (as a mask) is a
/// solution iff it meets every mask. Deduplicated and ordered by
/// increasing size, so that checks fail fast. Needs `n <= 128`.
///
/// Twins (for identifying codes) or open twins and isolated vertices (for
/// open location-domination) show up as empty masks.
pub fn requirement_masks(g: &Graph, kind: ProblemKind) -> Vec<u128> {
    assert!(g.n() <= BRUTE_FORCE_MAX_N, "masks limited to {BRUTE_FORCE_MAX_N} vertices");
    let mut reqs = requirements(g, kind, PairScope::All);
    reqs.sort_by_key(|r| (r.count_ones(), *r));
    reqs
}

/// `mask` meets every requirement.
pub fn meets_all(reqs: &[u128], mask: u128) -> bool {
    reqs.iter().all(|&r| r & mask != 0)
}

/// Requirement sets as bit masks over `u128`.
fn requirements(g: &Graph, kind: ProblemKind, scope: PairScope) -> Vec<u128> {
    let n = g.n();
    let open: Vec<u128> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u128, |m, &w| m | 1 << w))
        .collect();
    let closed: Vec<u128> = (0..n).map(|v| open[v] | 1 << v).collect();
    let mut reqs = Vec::new();
    match kind {
        ProblemKind::Md => {
            let d = all_pairs_distances(g);
            for u in 0..n {
                for v in u + 1..n {
                    if scope == PairScope::WithinTwo && d.get(u, v) > 2 {
                        continue;
                    }
                    let (du, dv) = (d.row(u), d.row(v));
                    reqs.push((0..n).filter(|&x| du[x] != dv[x]).fold(0u128, |m, x| m | 1 << x));
                }
            }
            debug_assert!(d.row(0).iter().all(|&x| x == INFINITY || x < n as u32));
        }
        ProblemKind::Ld => {
            reqs.extend(closed.iter().copied());
            for u in 0..n {
                for v in u + 1..n {
                    reqs.push((open[u] ^ open[v]) | 1 << u | 1 << v);
                }
            }
        }
        ProblemKind::Id => {
            reqs.extend(closed.iter().copied());
            for u in 0..n {
                for v in u + 1..n {
                    reqs.push(closed[u] ^ closed[v]);
                }
            }
        }
        ProblemKind::Old => {
            reqs.extend(open.iter().copied());
            for u in 0..n {
                for v in u + 1..n {
                    reqs.push(open[u] ^ open[v]);
                }
            }
        }
    }
    reqs.sort_unstable();
    reqs.dedup();
    reqs
}

/// Lexicographic subset search with pruning: once the enumeration has
/// moved past the largest element of a requirement, that requirement must
/// already be met.
struct Search {
    n: usize,
    all: Vec<u128>,
    /// `closing[i]`: requirements whose largest element is `i`.
    closing: Vec<Vec<u128>>,
}

impl Search {
    fn new(n: usize, reqs: Vec<u128>) -> Self {
        let mut closing = vec![Vec::new(); n];
        for &r in &reqs {
            closing[127 - r.leading_zeros() as usize].push(r);
        }
        Search {
            n,
            all: reqs,
            closing,
        }
    }

    fn skipped_ok(&self, from: usize, to: usize, chosen: u128) -> bool {
        (from..to).all(|i| self.closing[i].iter().all(|&r| r & chosen != 0))
    }

    fn first_of_size(&self, k: usize, threads: usize) -> Option<u128> {
        if k == 0 {
            return self.all.is_empty().then_some(0);
        }
        if threads <= 1 {
            return self.dfs(0, k, 0);
        }
        // Top level: first element i. Skipping 0..i must be admissible.
        let last = self.n - k;
        let firsts: Vec<usize> = (0..=last)
            .take_while(|&i| self.skipped_ok(0, i, 0))
            .collect();
        firsts
            .par_iter()
            .find_map_first(|&i| self.dfs(i + 1, k - 1, 1 << i))
    }

    fn dfs(&self, start: usize, remaining: usize, chosen: u128) -> Option<u128> {
        if remaining == 0 {
            return self.all.iter().all(|&r| r & chosen != 0).then_some(chosen);
        }
        for i in start..=self.n - remaining {
            // Choosing i skips start..i; only i - 1 is newly skipped.
            if i > start && !self.closing[i - 1].iter().all(|&r| r & chosen != 0) {
                break;
            }
            if let Some(hit) = self.dfs(i + 1, remaining - 1, chosen | 1 << i) {
                return Some(hit);
            }
        }
        None
    }
}
