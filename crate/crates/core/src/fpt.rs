//! Fixed-parameter dynamic program for metric dimension on interval graphs.
//!
//! The program runs over the endpoint-sweep path decomposition of the
//! fourth distance power, whose bags contain every vertex that can
//! interact with the introduced or forgotten one. On interval graphs it is
//! enough to separate the pairs at distance at most 2, and those pairs
//! always share a bag.
//!
//! A configuration records, for the current bag:
//!
//! * which bag vertices are in the partial solution,
//! * for every close pair, `sep`: 0 if unseparated so far, 1 if separated,
//!   2 if separated by a solution vertex lying entirely to the left of both,
//! * `sepr`: the pair still owes a separation strictly from the right,
//!   inherited from an earlier pair that was forgotten unseparated,
//! * whether an isolated vertex has been left out of the solution (at most
//!   one may be, since two such vertices would look alike),
//!
//! plus the number of solution vertices chosen so far. Configurations with
//! equal records are merged keeping the smallest count.
//!
//! Why inheritance works: a vertex introduced after `x` is forgotten is at
//! distance at least 5 from `x`, so it lies strictly to the right of every
//! close pair containing `x`, and (walking rightmost paths) it separates
//! such a pair iff it separates the pair of their first rightmost steps.
//! The mirror argument with leftmost steps decides strict-left separation
//! when a pair is created.

use std::fmt::Write as _;

use indexmap::IndexMap;
use rayon::prelude::*;
use rustc_hash::{FxBuildHasher, FxHashMap};

use crate::codes::VertexSet;
use crate::decomposition::{build_path_decomposition, Event, PathDecomposition};
use crate::error::Result;
use crate::graph::Graph;
use crate::interval_model::{Coordinate, IntervalModel, Side};
use crate::structure::{leftmost_step, rightmost_step};

/// Distance reported for pairs further apart than the cap.
const FAR: u32 = u32::MAX;

/// Distances up to a cap, one sorted list per vertex. Every query the DP
/// makes is between two vertices of a bag of the fourth power, so a cap
/// of 4 answers all of them exactly.
#[derive(Clone, Debug)]
pub struct LocalDistances {
    lists: Vec<Vec<(usize, u32)>>,
}

impl LocalDistances {
    pub fn new(g: &Graph, cap: u32) -> Self {
        let lists = (0..g.n())
            .map(|v| {
                let mut l = g.bfs_bounded(v, cap);
                l.sort_unstable();
                l
            })
            .collect();
        LocalDistances { lists }
    }

    /// Exact distance if at most the cap, otherwise `u32::MAX`.
    pub fn get(&self, u: usize, v: usize) -> u32 {
        let l = &self.lists[u];
        match l.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => l[i].1,
            Err(_) => FAR,
        }
    }
}

/// Largest bag of the fourth power compatible with a resolving set of size `k`.
pub fn bag_bound(k: usize) -> usize {
    16 * k * k + 11 * k + 1
}

/// Everything the event rules need about the graph.
pub struct DpContext<'a, C> {
    pub model: &'a IntervalModel<C>,
    pub graph: &'a Graph,
    pub dist: &'a LocalDistances,
    pub k: usize,
    /// Sweep positions of each vertex's endpoints in `model`.
    left_pos: Vec<usize>,
    right_pos: Vec<usize>,
    left_step: Vec<Option<usize>>,
    right_step: Vec<Option<usize>>,
}

impl<'a, C: Coordinate> DpContext<'a, C> {
    pub fn new(model: &'a IntervalModel<C>, graph: &'a Graph, dist: &'a LocalDistances, k: usize) -> Self {
        let n = model.n();
        let mut left_pos = vec![0; n];
        let mut right_pos = vec![0; n];
        for (i, e) in model.sweep().iter().enumerate() {
            match e.side {
                Side::Left => left_pos[e.vertex] = i,
                Side::Right => right_pos[e.vertex] = i,
            }
        }
        DpContext {
            model,
            graph,
            dist,
            k,
            left_pos,
            right_pos,
            left_step: (0..n).map(|v| leftmost_step(model, graph, v)).collect(),
            right_step: (0..n).map(|v| rightmost_step(model, graph, v)).collect(),
        }
    }

    fn separates(&self, z: usize, a: usize, b: usize) -> bool {
        self.dist.get(z, a) != self.dist.get(z, b)
    }

    /// `z` ends before both `a` and `b` start.
    fn strictly_left_of(&self, z: usize, a: usize, b: usize) -> bool {
        self.right_pos[z] < self.left_pos[a] && self.right_pos[z] < self.left_pos[b]
    }
}

/// Back-link from a configuration to the one it was derived from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Link {
    pub parent: u32,
    /// The event's vertex joined the solution on this step.
    pub took: bool,
}

/// Decoded view of one configuration, for inspection and tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub solution_in_bag: Vec<usize>,
    /// `(u, v, sep, sepr)` for every close pair of the bag.
    pub pairs: Vec<(usize, usize, u8, u8)>,
    pub isolated_outside: bool,
    pub count: usize,
}

/// All configurations of one event, deduplicated by key.
///
/// Keys are byte strings: the solution bits of the bag positions, one byte
/// for the isolated-vertex flag, then one nibble per close pair holding
/// `sep` in bits 0-1 and `sepr` in bit 2.
#[derive(Clone, Debug)]
pub struct ConfigurationSet {
    bag: Vec<usize>,
    /// Close pairs as bag positions `(i, j)`, `i < j`, sorted by `j` then `i`.
    pairs: Vec<(usize, usize)>,
    entries: IndexMap<Box<[u8]>, (u32, Link), FxBuildHasher>,
}

struct KeyLayout {
    sbytes: usize,
    len: usize,
}

impl KeyLayout {
    fn new(bag: usize, pairs: usize) -> Self {
        let sbytes = bag.div_ceil(8);
        KeyLayout {
            sbytes,
            len: sbytes + 1 + pairs.div_ceil(2),
        }
    }
}

fn get_bit(key: &[u8], i: usize) -> bool {
    key[i / 8] >> (i % 8) & 1 == 1
}

fn set_bit(key: &mut [u8], i: usize) {
    key[i / 8] |= 1 << (i % 8);
}

fn get_nib(key: &[u8], base: usize, p: usize) -> u8 {
    key[base + p / 2] >> (4 * (p % 2)) & 0xf
}

fn put_nib(key: &mut [u8], base: usize, p: usize, value: u8) {
    let shift = 4 * (p % 2);
    let byte = &mut key[base + p / 2];
    *byte = (*byte & !(0xf << shift)) | (value << shift);
}

impl ConfigurationSet {
    /// The state before the first event: empty bag, one configuration.
    pub fn initial() -> Self {
        let mut entries = IndexMap::with_hasher(FxBuildHasher);
        entries.insert(vec![0u8].into_boxed_slice(), (0, Link { parent: 0, took: false }));
        ConfigurationSet {
            bag: Vec::new(),
            pairs: Vec::new(),
            entries,
        }
    }

    pub fn bag(&self) -> &[usize] {
        &self.bag
    }

    /// Close pairs as vertex ids.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|&(i, j)| (self.bag[i], self.bag[j])).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_count(&self) -> Option<usize> {
        self.entries.values().map(|&(c, _)| c as usize).min()
    }

    pub fn link(&self, idx: usize) -> Link {
        self.entries[idx].1
    }

    pub fn count(&self, idx: usize) -> usize {
        self.entries[idx].0 as usize
    }

    pub fn configuration(&self, idx: usize) -> Configuration {
        let (key, &(count, _)) = self.entries.get_index(idx).expect("index in range");
        let lay = KeyLayout::new(self.bag.len(), self.pairs.len());
        let base = lay.sbytes + 1;
        Configuration {
            solution_in_bag: (0..self.bag.len())
                .filter(|&i| get_bit(key, i))
                .map(|i| self.bag[i])
                .collect(),
            pairs: self
                .pairs
                .iter()
                .enumerate()
                .map(|(p, &(i, j))| {
                    let nib = get_nib(key, base, p);
                    (self.bag[i], self.bag[j], nib & 3, nib >> 2 & 1)
                })
                .collect(),
            isolated_outside: key[lay.sbytes] == 1,
            count: count as usize,
        }
    }

    pub fn configurations(&self) -> Vec<Configuration> {
        (0..self.len()).map(|i| self.configuration(i)).collect()
    }

    fn merge(&mut self, children: impl IntoIterator<Item = (Box<[u8]>, u32, Link)>) {
        for (key, count, link) in children {
            match self.entries.get_mut(&key) {
                Some(slot) if slot.0 <= count => {}
                Some(slot) => *slot = (count, link),
                None => {
                    self.entries.insert(key, (count, link));
                }
            }
        }
    }
}

/// Runs `f` over all parent configurations, in parallel when the parent set
/// is large, and returns the children in parent order.
fn expand<F>(parent: &ConfigurationSet, parallel: bool, f: F) -> Vec<(Box<[u8]>, u32, Link)>
where
    F: Fn(u32, &[u8], u32, &mut Vec<(Box<[u8]>, u32, Link)>) + Sync,
{
    const CHUNK: usize = 256;
    let run = |range: std::ops::Range<usize>| {
        let mut out = Vec::new();
        for idx in range {
            let (key, &(count, _)) = parent.entries.get_index(idx).expect("in range");
            f(idx as u32, key, count, &mut out);
        }
        out
    };
    let n = parent.entries.len();
    if parallel && n > CHUNK {
        let ranges: Vec<_> = (0..n).step_by(CHUNK).map(|s| s..(s + CHUNK).min(n)).collect();
        ranges.into_par_iter().map(run).collect::<Vec<_>>().into_iter().flatten().collect()
    } else {
        run(0..n)
    }
}

struct NewPair {
    /// Position of the partner in the parent bag.
    w: usize,
    /// Parent slot of the pair of first leftmost steps, when both steps
    /// exist and differ.
    step_slot: Option<usize>,
    /// Parent positions strictly left of both that separate the pair.
    left_separators: Vec<usize>,
    /// Parent positions that separate the pair.
    separators: Vec<usize>,
}

/// Introduce `v`. With the initial set as parent this is the leaf rule.
pub fn process_introduce<C: Coordinate>(
    ctx: &DpContext<'_, C>,
    parent: &ConfigurationSet,
    v: usize,
) -> ConfigurationSet {
    process_introduce_with(ctx, parent, v, false)
}

/// Leaf rule: the first introduced vertex is either in the solution or not.
pub fn process_leaf<C: Coordinate>(ctx: &DpContext<'_, C>, v: usize) -> ConfigurationSet {
    process_introduce(ctx, &ConfigurationSet::initial(), v)
}

fn process_introduce_with<C: Coordinate>(
    ctx: &DpContext<'_, C>,
    parent: &ConfigurationSet,
    v: usize,
    parallel: bool,
) -> ConfigurationSet {
    let old_b = parent.bag.len();
    let old_p = parent.pairs.len();
    let mut bag = parent.bag.clone();
    bag.push(v);

    let slot_of: FxHashMap<(usize, usize), usize> = parent
        .pairs
        .iter()
        .enumerate()
        .map(|(s, &(i, j))| ((parent.bag[i], parent.bag[j]), s))
        .collect();
    let find_slot = |a: usize, b: usize| slot_of.get(&(a, b)).or_else(|| slot_of.get(&(b, a))).copied();

    let mut new_pairs = Vec::new();
    for (wpos, &w) in parent.bag.iter().enumerate() {
        if ctx.dist.get(v, w) > 2 {
            continue;
        }
        let step_slot = match (ctx.left_step[v], ctx.left_step[w]) {
            (Some(a), Some(b)) if a != b => {
                let s = find_slot(a, b);
                debug_assert!(s.is_some(), "leftmost-step pair ({a},{b}) missing from bag");
                s
            }
            _ => None,
        };
        let separators: Vec<usize> = (0..old_b)
            .filter(|&z| ctx.separates(parent.bag[z], v, w))
            .collect();
        let left_separators = separators
            .iter()
            .copied()
            .filter(|&z| ctx.strictly_left_of(parent.bag[z], v, w))
            .collect();
        new_pairs.push(NewPair {
            w: wpos,
            step_slot,
            left_separators,
            separators,
        });
    }
    let v_separates: Vec<bool> = parent
        .pairs
        .iter()
        .map(|&(i, j)| ctx.separates(v, parent.bag[i], parent.bag[j]))
        .collect();
    let isolated = ctx.graph.degree(v) == 0;

    let mut pairs = parent.pairs.clone();
    pairs.extend(new_pairs.iter().map(|np| (np.w, old_b)));
    let old_lay = KeyLayout::new(old_b, old_p);
    let lay = KeyLayout::new(bag.len(), pairs.len());
    let old_base = old_lay.sbytes + 1;
    let base = lay.sbytes + 1;
    let k = ctx.k as u32;

    let children = expand(parent, parallel, |idx, key, count, out| {
        let in_s = |z: usize| get_bit(key, z);
        let iso = key[old_lay.sbytes] == 1;
        let strict_left = |np: &NewPair| {
            np.step_slot.is_some_and(|s| get_nib(key, old_base, s) & 3 == 2)
                || np.left_separators.iter().any(|&z| in_s(z))
        };
        let mut fresh = vec![0u8; lay.len];
        fresh[..old_lay.sbytes].copy_from_slice(&key[..old_lay.sbytes]);
        for p in 0..old_p {
            put_nib(&mut fresh, base, p, get_nib(key, old_base, p));
        }

        // v stays out of the solution.
        if !(isolated && iso) {
            let mut c = fresh.clone();
            c[lay.sbytes] = u8::from(iso || isolated);
            for (q, np) in new_pairs.iter().enumerate() {
                let sep = if strict_left(np) {
                    2
                } else if np.separators.iter().any(|&z| in_s(z)) {
                    1
                } else {
                    0
                };
                put_nib(&mut c, base, old_p + q, sep);
            }
            out.push((c.into_boxed_slice(), count, Link { parent: idx, took: false }));
        }

        // v joins the solution.
        if count < k {
            let mut c = fresh;
            c[lay.sbytes] = u8::from(iso);
            set_bit(&mut c, old_b);
            for (p, &hit) in v_separates.iter().enumerate() {
                if hit {
                    let sep = (get_nib(&c, base, p) & 3).max(1);
                    put_nib(&mut c, base, p, sep);
                }
            }
            for (q, np) in new_pairs.iter().enumerate() {
                put_nib(&mut c, base, old_p + q, if strict_left(np) { 2 } else { 1 });
            }
            out.push((c.into_boxed_slice(), count + 1, Link { parent: idx, took: true }));
        }
    });

    let mut set = ConfigurationSet {
        bag,
        pairs,
        entries: IndexMap::with_hasher(FxBuildHasher),
    };
    set.merge(children);
    set
}

/// Forget `v`: pairs containing `v` leave the bag. A pair that is still
/// unseparated, or still owes a separation from the right, hands the
/// obligation to the pair of its first rightmost steps; if those steps do
/// not exist or coincide, the configuration is dropped.
pub fn process_forget<C: Coordinate>(
    ctx: &DpContext<'_, C>,
    parent: &ConfigurationSet,
    v: usize,
) -> ConfigurationSet {
    process_forget_with(ctx, parent, v, false)
}

fn process_forget_with<C: Coordinate>(
    ctx: &DpContext<'_, C>,
    parent: &ConfigurationSet,
    v: usize,
    parallel: bool,
) -> ConfigurationSet {
    let q = parent.bag.iter().position(|&x| x == v).expect("forgotten vertex is in the bag");
    let shift = |i: usize| if i > q { i - 1 } else { i };
    let mut bag = parent.bag.clone();
    bag.remove(q);

    let mut kept = Vec::new();
    let mut pairs = Vec::new();
    for (s, &(i, j)) in parent.pairs.iter().enumerate() {
        if i != q && j != q {
            kept.push(s);
            pairs.push((shift(i), shift(j)));
        }
    }
    let slot_of: FxHashMap<(usize, usize), usize> = pairs
        .iter()
        .enumerate()
        .map(|(s, &(i, j))| ((bag[i], bag[j]), s))
        .collect();
    // (parent slot, slot of the stepped pair) for every pair containing v.
    let obligations: Vec<(usize, Option<usize>)> = parent
        .pairs
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| i == q || j == q)
        .map(|(s, &(i, j))| {
            let w = parent.bag[if i == q { j } else { i }];
            let target = match (ctx.right_step[v], ctx.right_step[w]) {
                (Some(a), Some(b)) if a != b => {
                    let t = slot_of.get(&(a, b)).or_else(|| slot_of.get(&(b, a))).copied();
                    debug_assert!(t.is_some(), "rightmost-step pair ({a},{b}) missing from bag");
                    t
                }
                _ => None,
            };
            (s, target)
        })
        .collect();

    let old_lay = KeyLayout::new(parent.bag.len(), parent.pairs.len());
    let lay = KeyLayout::new(bag.len(), pairs.len());
    let old_base = old_lay.sbytes + 1;
    let base = lay.sbytes + 1;

    let children = expand(parent, parallel, |idx, key, count, out| {
        let mut c = vec![0u8; lay.len];
        for (pos, old) in (0..parent.bag.len()).filter(|&i| i != q).enumerate() {
            if get_bit(key, old) {
                set_bit(&mut c, pos);
            }
        }
        c[lay.sbytes] = key[old_lay.sbytes];
        for (p, &s) in kept.iter().enumerate() {
            put_nib(&mut c, base, p, get_nib(key, old_base, s));
        }
        for &(s, target) in &obligations {
            let nib = get_nib(key, old_base, s);
            if nib & 3 == 0 || nib & 4 != 0 {
                match target {
                    Some(t) => {
                        let cur = get_nib(&c, base, t);
                        put_nib(&mut c, base, t, cur | 4);
                    }
                    None => return,
                }
            }
        }
        out.push((c.into_boxed_slice(), count, Link { parent: idx, took: false }));
    });

    let mut set = ConfigurationSet {
        bag,
        pairs,
        entries: IndexMap::with_hasher(FxBuildHasher),
    };
    set.merge(children);
    set
}

#[derive(Clone, Debug, Default)]
pub struct FptOptions {
    /// Worker threads for the per-event fan-out; results do not depend on it.
    pub threads: usize,
    /// Record one [`TraceRow`] per event.
    pub trace: bool,
}

/// Per-event statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub event: usize,
    pub kind: &'static str,
    pub vertex: usize,
    pub bag_size: usize,
    pub pairs: usize,
    pub configurations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FptOutcome {
    /// Minimum resolving set found; `witness.len()` is the metric dimension.
    Found(VertexSet),
    /// The metric dimension exceeds `k`.
    Exceeded,
    /// A bag of the fourth power is larger than any graph with metric
    /// dimension at most `k` allows; the DP was not run.
    EarlyReject { max_bag: usize, bound: usize },
}

#[derive(Clone, Debug)]
pub struct FptReport {
    pub outcome: FptOutcome,
    pub trace: Vec<TraceRow>,
}

impl FptReport {
    pub fn size(&self) -> Option<usize> {
        match &self.outcome {
            FptOutcome::Found(w) => Some(w.len()),
            _ => None,
        }
    }

    /// CSV with header `event,kind,vertex,bag_size,pairs,configurations`.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("event,kind,vertex,bag_size,pairs,configurations\n");
        for r in &self.trace {
            writeln!(out, "{},{},{},{},{},{}", r.event, r.kind, r.vertex, r.bag_size, r.pairs, r.configurations)
                .unwrap();
        }
        out
    }
}

/// Minimum resolving set of size at most `k`, with a witness.
pub fn fpt_metric_dimension<C: Coordinate>(model: &IntervalModel<C>, k: usize) -> Option<(usize, VertexSet)> {
    match fpt_metric_dimension_with(model, k, &FptOptions::default())
        .expect("valid model")
        .outcome
    {
        FptOutcome::Found(w) => Some((w.len(), w)),
        _ => None,
    }
}

pub fn fpt_metric_dimension_with<C: Coordinate>(
    model: &IntervalModel<C>,
    k: usize,
    opts: &FptOptions,
) -> Result<FptReport> {
    let power = model.power_model(4)?;
    let dec = build_path_decomposition(&power)?;
    let bound = bag_bound(k);
    if dec.max_bag() > bound {
        return Ok(FptReport {
            outcome: FptOutcome::EarlyReject {
                max_bag: dec.max_bag(),
                bound,
            },
            trace: Vec::new(),
        });
    }
    let graph = model.build_graph();
    let dist = LocalDistances::new(&graph, 4);
    let ctx = DpContext::new(model, &graph, &dist, k);
    let run = || run_events(&ctx, &dec, opts);
    let (layers, trace) = if opts.threads > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool")
            .install(run)
    } else {
        run()
    };
    let outcome = match reconstruct(&dec, &layers, model.n()) {
        Some(w) => FptOutcome::Found(w),
        None => FptOutcome::Exceeded,
    };
    Ok(FptReport { outcome, trace })
}

/// Back-links of one event, parallel to its configurations.
type LinkLayer = Vec<Link>;

fn run_events<C: Coordinate>(
    ctx: &DpContext<'_, C>,
    dec: &PathDecomposition,
    opts: &FptOptions,
) -> (Vec<(LinkLayer, Vec<u32>)>, Vec<TraceRow>) {
    let parallel = opts.threads > 1;
    let mut current = ConfigurationSet::initial();
    let mut layers = Vec::with_capacity(dec.len());
    let mut trace = Vec::new();
    for (t, &event) in dec.events().iter().enumerate() {
        let v = event.vertex();
        let next = if event.is_introduce() {
            process_introduce_with(ctx, &current, v, parallel)
        } else {
            process_forget_with(ctx, &current, v, parallel)
        };
        debug_assert_eq!(next.bag(), dec.bag(t));
        debug_assert!(within_state_bound(next.len(), next.bag().len()));
        if opts.trace {
            trace.push(TraceRow {
                event: t,
                kind: match event {
                    Event::Leaf(_) => "leaf",
                    Event::Introduce(_) => "introduce",
                    Event::Forget(_) => "forget",
                    Event::Root(_) => "root",
                },
                vertex: v,
                bag_size: next.bag().len(),
                pairs: next.pairs.len(),
                configurations: next.len(),
            });
        }
        layers.push((
            next.entries.values().map(|&(_, l)| l).collect(),
            next.entries.values().map(|&(c, _)| c).collect(),
        ));
        current = next;
        if current.is_empty() {
            break;
        }
    }
    (layers, trace)
}

/// `count <= 2 * 3^(2 b^2)`, compared in log space. The factor 2 is the
/// isolated-vertex flag, which the classical count does not include.
fn within_state_bound(count: usize, b: usize) -> bool {
    count <= 2 || (count as f64 / 2.0).ln() <= 2.0 * (b * b) as f64 * 3f64.ln() + 1e-9
}

fn reconstruct(dec: &PathDecomposition, layers: &[(LinkLayer, Vec<u32>)], n: usize) -> Option<VertexSet> {
    if layers.len() != dec.len() {
        return None;
    }
    let (_, counts) = layers.last()?;
    let mut idx = (0..counts.len()).min_by_key(|&i| counts[i])?;
    let mut chosen = Vec::new();
    for t in (0..layers.len()).rev() {
        let link = layers[t].0[idx];
        if link.took {
            chosen.push(dec.events()[t].vertex());
        }
        idx = link.parent as usize;
    }
    Some(VertexSet::new(n, chosen).expect("vertices in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{brute_force_min, is_resolving, ProblemKind};
    use crate::interval_model::{random_model, RandomStyle};
    use crate::IntModel;

    fn path_model(n: usize) -> IntModel {
        IntModel::from_pairs((0..n as i64).map(|i| (2 * i, 2 * i + 3))).unwrap()
    }

    fn ctx_parts(m: &IntModel) -> (Graph, LocalDistances) {
        let g = m.build_graph();
        let d = LocalDistances::new(&g, 4);
        (g, d)
    }

    #[test]
    fn paths_have_dimension_one() {
        let (size, w) = fpt_metric_dimension(&path_model(10), 1).unwrap();
        assert_eq!(size, 1);
        assert!(is_resolving(&path_model(10).build_graph(), &w));
    }

    #[test]
    fn leaf_rule() {
        let m = path_model(3);
        let (g, d) = ctx_parts(&m);
        let ctx = DpContext::new(&m, &g, &d, 2);
        let set = process_leaf(&ctx, 0);
        let counts: Vec<usize> = set.configurations().iter().map(|c| c.count).collect();
        assert_eq!(counts, vec![0, 1]);
        let ctx0 = DpContext::new(&m, &g, &d, 0);
        assert_eq!(process_leaf(&ctx0, 0).len(), 1);
    }

    #[test]
    fn introduce_solution_vertex_separates_new_pairs() {
        let m = path_model(3);
        let (g, d) = ctx_parts(&m);
        let ctx = DpContext::new(&m, &g, &d, 2);
        let leaf = process_leaf(&ctx, 0);
        let next = process_introduce(&ctx, &leaf, 1);
        for c in next.configurations() {
            if c.solution_in_bag.contains(&1) {
                assert!(c.pairs.iter().all(|&(_, _, sep, _)| sep >= 1));
            }
        }
        // Budget 1: a configuration with both vertices chosen is not created.
        let ctx1 = DpContext::new(&m, &g, &d, 1);
        let next = process_introduce(&ctx1, &process_leaf(&ctx1, 0), 1);
        assert!(next.configurations().iter().all(|c| c.count <= 1));
    }

    #[test]
    fn forget_discards_pairs_with_a_common_right_step() {
        // Two small intervals inside a long one: both have the long one as
        // their rightmost step, so they can never be told apart from the right.
        let m = IntModel::from_pairs([(0, 10), (1, 2), (3, 4)]).unwrap();
        let (g, d) = ctx_parts(&m);
        let ctx = DpContext::new(&m, &g, &d, 3);
        let mut set = process_leaf(&ctx, 0);
        set = process_introduce(&ctx, &set, 1);
        set = process_introduce(&ctx, &set, 2);
        let forgotten = process_forget(&ctx, &set, 1);
        for c in forgotten.configurations() {
            // Survivors must have separated (1, 2) already: 1 or 2 chosen.
            assert!(c.count >= 1);
        }
        assert!(forgotten.len() < 2 * set.len());
    }

    #[test]
    fn agrees_with_brute_force_on_random_models() {
        for seed in 0..60 {
            let style = [RandomStyle::UniformEndpoints, RandomStyle::UnitLength, RandomStyle::LongThin { window: 2 }]
                [seed as usize % 3];
            let m: IntModel = random_model(4 + seed as usize % 9, seed, style);
            let g = m.build_graph();
            let expect = brute_force_min(&g, ProblemKind::Md, m.n()).size().unwrap();
            let got = fpt_metric_dimension(&m, expect.max(1));
            let (size, w) = got.unwrap_or_else(|| panic!("seed {seed}: no answer, expected {expect}"));
            assert_eq!(size, expect, "seed {seed}");
            assert!(is_resolving(&g, &w));
            if expect > 1 {
                assert_eq!(fpt_metric_dimension(&m, expect - 1), None, "seed {seed}");
            }
        }
    }

    #[test]
    fn disconnected_models() {
        // Two isolated intervals and an edge.
        let m = IntModel::from_pairs([(0, 1), (2, 3), (4, 6), (5, 7)]).unwrap();
        let g = m.build_graph();
        let expect = brute_force_min(&g, ProblemKind::Md, 4).size().unwrap();
        assert_eq!(fpt_metric_dimension(&m, 4).map(|r| r.0), Some(expect));
    }

    #[test]
    fn early_reject_fires_above_the_bound() {
        let clique = IntModel::from_pairs((0..30).map(|i| (i, 30 + i))).unwrap();
        let r = fpt_metric_dimension_with(&clique, 1, &FptOptions::default()).unwrap();
        assert_eq!(r.outcome, FptOutcome::EarlyReject { max_bag: 30, bound: 28 });
    }

    #[test]
    fn threads_and_trace() {
        let m: IntModel = random_model(40, 5, RandomStyle::LongThin { window: 2 });
        let a = fpt_metric_dimension_with(&m, 6, &FptOptions { threads: 1, trace: true }).unwrap();
        let b = fpt_metric_dimension_with(&m, 6, &FptOptions { threads: 3, trace: true }).unwrap();
        assert!(matches!(a.outcome, FptOutcome::Found(_)), "{:?}", a.outcome);
        assert_eq!(a.outcome, b.outcome);
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.trace.len(), 80);
        assert!(a.trace_csv().starts_with("event,kind,vertex,bag_size,pairs,configurations\n0,leaf,"));
    }
}
