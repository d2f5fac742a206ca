//! Interval models with exact coordinates.
//!
//! A model is a list of closed intervals whose `2n` endpoints are pairwise
//! distinct. Everything downstream (graphs, decompositions, the DP) only
//! looks at the relative order of endpoints, so coordinates can be any
//! exact, totally ordered number type.

use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_traits::{FromPrimitive, Num};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{parse_err, Error, Result};
use crate::graph::Graph;

/// Exact, totally ordered coordinate type.
///
/// Blanket-implemented; `i64` and `Ratio<i64>` are the intended choices.
/// Floating point types are excluded on purpose by the `Ord` bound.
pub trait Coordinate:
    Num + FromPrimitive + Ord + Clone + Debug + Display + FromStr + Send + Sync + 'static
{
}

impl<T> Coordinate for T where
    T: Num + FromPrimitive + Ord + Clone + Debug + Display + FromStr + Send + Sync + 'static
{
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval<C> {
    pub id: usize,
    pub left: C,
    pub right: C,
}

impl<C> Interval<C> {
    pub fn new(id: usize, left: C, right: C) -> Self {
        Interval { id, left, right }
    }
}

/// Side of an endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One endpoint in the sorted sweep order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub vertex: usize,
    pub side: Side,
}

/// Validated interval model. Interval `i` of [`IntervalModel::intervals`]
/// always has id `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalModel<C> {
    intervals: Vec<Interval<C>>,
    /// All endpoints in increasing coordinate order.
    sweep: Vec<Endpoint>,
    /// Vertices by increasing left endpoint.
    by_left: Vec<usize>,
    /// Vertices by increasing right endpoint.
    by_right: Vec<usize>,
    rank_left: Vec<usize>,
    rank_right: Vec<usize>,
}

impl<C: Coordinate> IntervalModel<C> {
    /// Validates `intervals` without touching coordinates.
    pub fn new(intervals: Vec<Interval<C>>) -> Result<Self> {
        Self::build(intervals, false)
    }

    /// Like [`IntervalModel::new`], but tied endpoints are first separated
    /// by an order-preserving renumbering. At a shared coordinate, left
    /// endpoints come before right endpoints (closed intervals that touch
    /// still intersect) and ties within one side are broken by id.
    pub fn new_repaired(intervals: Vec<Interval<C>>) -> Result<Self> {
        Self::build(intervals, true)
    }

    /// Builds a model from `(left, right)` pairs, ids in input order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (C, C)>) -> Result<Self> {
        Self::new(
            pairs
                .into_iter()
                .enumerate()
                .map(|(id, (l, r))| Interval::new(id, l, r))
                .collect(),
        )
    }

    fn build(mut intervals: Vec<Interval<C>>, repair: bool) -> Result<Self> {
        let n = intervals.len();
        intervals.sort_by_key(|iv| iv.id);
        for (pos, iv) in intervals.iter().enumerate() {
            if iv.id != pos {
                let detail = if pos > 0 && intervals[pos - 1].id == iv.id {
                    format!("id {} appears twice", iv.id)
                } else {
                    format!("id {pos} is missing")
                };
                return Err(Error::BadIds { n, detail });
            }
            let bad = if repair { iv.left > iv.right } else { iv.left >= iv.right };
            if bad {
                return Err(Error::EmptyInterval {
                    id: iv.id,
                    left: iv.left.to_string(),
                    right: iv.right.to_string(),
                });
            }
        }

        let mut points: Vec<(C, Side, usize)> = Vec::with_capacity(2 * n);
        for iv in &intervals {
            points.push((iv.left.clone(), Side::Left, iv.id));
            points.push((iv.right.clone(), Side::Right, iv.id));
        }
        points.sort();
        let tied = points.windows(2).position(|w| w[0].0 == w[1].0);
        if let Some(pos) = tied {
            if !repair {
                return Err(Error::DuplicateEndpoint {
                    coordinate: points[pos].0.to_string(),
                });
            }
            for (rank, (_, side, v)) in points.iter().enumerate() {
                let c = C::from_usize(rank).expect("coordinate type holds endpoint ranks");
                match side {
                    Side::Left => intervals[*v].left = c,
                    Side::Right => intervals[*v].right = c,
                }
            }
        }

        let sweep: Vec<Endpoint> = points
            .iter()
            .map(|&(_, side, vertex)| Endpoint { vertex, side })
            .collect();
        let by_left: Vec<usize> = sweep
            .iter()
            .filter(|e| e.side == Side::Left)
            .map(|e| e.vertex)
            .collect();
        let by_right: Vec<usize> = sweep
            .iter()
            .filter(|e| e.side == Side::Right)
            .map(|e| e.vertex)
            .collect();
        let mut rank_left = vec![0; n];
        let mut rank_right = vec![0; n];
        for (i, &v) in by_left.iter().enumerate() {
            rank_left[v] = i;
        }
        for (i, &v) in by_right.iter().enumerate() {
            rank_right[v] = i;
        }
        Ok(IntervalModel {
            intervals,
            sweep,
            by_left,
            by_right,
            rank_left,
            rank_right,
        })
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval<C>] {
        &self.intervals
    }

    pub fn interval(&self, v: usize) -> &Interval<C> {
        &self.intervals[v]
    }

    pub fn left(&self, v: usize) -> &C {
        &self.intervals[v].left
    }

    pub fn right(&self, v: usize) -> &C {
        &self.intervals[v].right
    }

    /// Endpoints in increasing coordinate order.
    pub fn sweep(&self) -> &[Endpoint] {
        &self.sweep
    }

    /// Vertices sorted by `<_L`.
    pub fn order_left(&self) -> &[usize] {
        &self.by_left
    }

    /// Vertices sorted by `<_R`.
    pub fn order_right(&self) -> &[usize] {
        &self.by_right
    }

    /// Position of `v` in `<_L`.
    pub fn rank_left(&self, v: usize) -> usize {
        self.rank_left[v]
    }

    /// Position of `v` in `<_R`.
    pub fn rank_right(&self, v: usize) -> usize {
        self.rank_right[v]
    }

    pub fn intersects(&self, u: usize, v: usize) -> bool {
        let (a, b) = (&self.intervals[u], &self.intervals[v]);
        a.left.clone().max(b.left.clone()) <= a.right.clone().min(b.right.clone())
    }

    /// `outer` contains `inner` (as sets).
    pub fn contains(&self, outer: usize, inner: usize) -> bool {
        let (a, b) = (&self.intervals[outer], &self.intervals[inner]);
        a.left <= b.left && b.right <= a.right
    }

    /// Intersection graph, built by an endpoint sweep.
    pub fn build_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n());
        let mut open: Vec<usize> = Vec::new();
        let mut slot = vec![usize::MAX; self.n()];
        for e in &self.sweep {
            match e.side {
                Side::Left => {
                    for &w in &open {
                        g.add_edge(e.vertex, w);
                    }
                    slot[e.vertex] = open.len();
                    open.push(e.vertex);
                }
                Side::Right => {
                    let i = slot[e.vertex];
                    open.swap_remove(i);
                    if let Some(&moved) = open.get(i) {
                        slot[moved] = i;
                    }
                }
            }
        }
        g
    }

    /// Largest number of intervals sharing a point (the clique number).
    pub fn max_stabbing(&self) -> usize {
        let mut open = 0usize;
        let mut best = 0;
        for e in &self.sweep {
            match e.side {
                Side::Left => {
                    open += 1;
                    best = best.max(open);
                }
                Side::Right => open -= 1,
            }
        }
        best
    }

    /// Order-preserving model of the `d`-th distance power.
    ///
    /// Left endpoints stay where they are in the sweep. The right endpoint of
    /// `x` moves into the gap just after the left endpoint of `u_x`, the
    /// `<_L`-last vertex within distance `d` of `x`. Several right endpoints
    /// landing in one gap keep their original `<_R` order. The output uses
    /// integer ranks `0..2n` as coordinates.
    pub fn power_model(&self, d: u32) -> Result<IntervalModel<C>> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!(
                "power model needs d >= 2, got {d}"
            )));
        }
        let n = self.n();
        let g = self.build_graph();
        // gap_of[x] = <_L rank of u_x.
        let mut gap_of = vec![0usize; n];
        for (x, gap) in gap_of.iter_mut().enumerate() {
            *gap = g
                .bfs_bounded(x, d)
                .into_iter()
                .map(|(w, _)| self.rank_left[w])
                .max()
                .expect("ball contains x");
        }
        let mut gaps: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &x in &self.by_right {
            gaps[gap_of[x]].push(x);
        }
        let mut left = vec![0usize; n];
        let mut right = vec![0usize; n];
        let mut next = 0usize;
        for (i, &v) in self.by_left.iter().enumerate() {
            left[v] = next;
            next += 1;
            for &x in &gaps[i] {
                right[x] = next;
                next += 1;
            }
        }
        let coord = |k: usize| C::from_usize(k).expect("coordinate type holds endpoint ranks");
        IntervalModel::new(
            (0..n)
                .map(|v| Interval::new(v, coord(left[v]), coord(right[v])))
                .collect(),
        )
    }

    /// Same model with every endpoint replaced by its sweep rank.
    pub fn normalized(&self) -> IntervalModel<C> {
        let mut left = vec![0; self.n()];
        let mut right = vec![0; self.n()];
        for (rank, e) in self.sweep.iter().enumerate() {
            match e.side {
                Side::Left => left[e.vertex] = rank,
                Side::Right => right[e.vertex] = rank,
            }
        }
        let coord = |k: usize| C::from_usize(k).expect("coordinate type holds endpoint ranks");
        IntervalModel::new(
            (0..self.n())
                .map(|v| Interval::new(v, coord(left[v]), coord(right[v])))
                .collect(),
        )
        .expect("ranks are distinct")
    }

    /// Text format: a header line `n`, then `id left right` per interval.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for iv in &self.intervals {
            out.push_str(&format!("{} {} {}\n", iv.id, iv.left, iv.right));
        }
        out
    }

    /// Parses the text format. Blank lines and lines starting with `#` are
    /// skipped. When `repair` is set, tied endpoints are separated.
    pub fn from_text(text: &str, repair: bool) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n`"))?;
        let n: usize = header
            .parse()
            .map_err(|_| parse_err(hline, format!("expected interval count, got `{header}`")))?;
        let mut intervals = Vec::with_capacity(n);
        for (line, content) in lines {
            let f: Vec<&str> = content.split_whitespace().collect();
            if f.len() != 3 {
                return Err(parse_err(line, "expected `id left right`"));
            }
            let id: usize = f[0]
                .parse()
                .map_err(|_| parse_err(line, format!("bad id `{}`", f[0])))?;
            let left = parse_coord::<C>(f[1], line)?;
            let right = parse_coord::<C>(f[2], line)?;
            intervals.push(Interval::new(id, left, right));
        }
        if intervals.len() != n {
            return Err(parse_err(
                hline,
                format!("header declares {n} intervals, found {}", intervals.len()),
            ));
        }
        Self::build(intervals, repair)
    }

    /// JSON mirror `{n, intervals: [{id, l, r}]}`. Coordinates are written
    /// as strings so rationals survive unchanged.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n(),
            "intervals": self.intervals.iter().map(|iv| json!({
                "id": iv.id,
                "l": iv.left.to_string(),
                "r": iv.right.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Accepts coordinates as JSON strings or integers.
    pub fn from_json(value: &Value, repair: bool) -> Result<Self> {
        let bad = |m: &str| Error::InvalidParameter(format!("interval model JSON: {m}"));
        let n = value["n"].as_u64().ok_or_else(|| bad("missing `n`"))? as usize;
        let list = value["intervals"]
            .as_array()
            .ok_or_else(|| bad("missing `intervals` array"))?;
        if list.len() != n {
            return Err(bad(&format!("`n` is {n} but {} intervals given", list.len())));
        }
        let coord = |v: &Value, i: usize| -> Result<C> {
            let s = match v {
                Value::String(s) => s.clone(),
                Value::Number(x) => x.to_string(),
                _ => return Err(bad(&format!("interval #{i}: coordinate must be string or integer"))),
            };
            parse_coord::<C>(&s, i + 1)
        };
        let mut intervals = Vec::with_capacity(n);
        for (i, item) in list.iter().enumerate() {
            let id = item["id"]
                .as_u64()
                .ok_or_else(|| bad(&format!("interval #{i}: missing id")))? as usize;
            intervals.push(Interval::new(id, coord(&item["l"], i)?, coord(&item["r"], i)?));
        }
        Self::build(intervals, repair)
    }
}

fn parse_coord<C: Coordinate>(s: &str, line: usize) -> Result<C> {
    s.parse::<C>()
        .map_err(|_| parse_err(line, format!("bad coordinate `{s}`")))
}

impl<C: Coordinate> Display for IntervalModel<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Shape of a random model. All styles produce connected interval graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomStyle {
    /// Both endpoints uniform in `[0, n)`; gaps in the union are closed by
    /// shifting later intervals left.
    UniformEndpoints,
    /// Unit-length intervals with uniform left endpoints in `[0, n/3)`,
    /// gaps closed the same way.
    UnitLength,
    /// Interval `i` starts near `i` and spans fewer than `window + 1` slots,
    /// so only intervals whose start indices differ by at most `window` can
    /// meet. The clique number of the fourth power is then at most
    /// `4 * window + 1`, independently of `n`.
    LongThin { window: usize },
}

impl FromStr for RandomStyle {
    type Err = Error;

    /// `uniform-endpoints`, `unit-length`, `long-thin` (window 2) or
    /// `long-thin:<w>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-endpoints" | "uniform" => Ok(RandomStyle::UniformEndpoints),
            "unit-length" | "unit" => Ok(RandomStyle::UnitLength),
            "long-thin" => Ok(RandomStyle::LongThin { window: 2 }),
            _ => {
                if let Some(w) = s.strip_prefix("long-thin:") {
                    let window: usize = w
                        .parse()
                        .map_err(|_| Error::InvalidParameter(format!("bad window `{w}`")))?;
                    if window == 0 {
                        return Err(Error::InvalidParameter("window must be >= 1".into()));
                    }
                    Ok(RandomStyle::LongThin { window })
                } else {
                    Err(Error::InvalidParameter(format!("unknown random style `{s}`")))
                }
            }
        }
    }
}

impl Display for RandomStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RandomStyle::UniformEndpoints => f.write_str("uniform-endpoints"),
            RandomStyle::UnitLength => f.write_str("unit-length"),
            RandomStyle::LongThin { window } => write!(f, "long-thin:{window}"),
        }
    }
}

/// Deterministic random model with integer rank coordinates and shuffled
/// ids. The intersection graph is always connected.
pub fn random_model<C: Coordinate>(n: usize, seed: u64, style: RandomStyle) -> IntervalModel<C> {
    assert!(n >= 1, "random model needs at least one interval");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw: Vec<(f64, f64)> = match style {
        RandomStyle::UniformEndpoints => (0..n)
            .map(|_| {
                let a = rng.gen_range(0.0..n as f64);
                let b = rng.gen_range(0.0..n as f64);
                if a < b {
                    (a, b)
                } else {
                    (b, a + 1e-3)
                }
            })
            .collect(),
        RandomStyle::UnitLength => (0..n)
            .map(|_| {
                let a = rng.gen_range(0.0..(n as f64 / 3.0).max(1.0));
                (a, a + 1.0)
            })
            .collect(),
        RandomStyle::LongThin { window } => (0..n)
            .map(|i| {
                let a = i as f64 + rng.gen_range(0.0..0.25);
                (a, a + rng.gen_range(1.25..window as f64 + 0.75))
            })
            .collect(),
    };
    close_gaps(&mut raw);

    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let mut points: Vec<(f64, usize, Side)> = Vec::with_capacity(2 * n);
    for (i, &(l, r)) in raw.iter().enumerate() {
        points.push((l, ids[i], Side::Left));
        points.push((r, ids[i], Side::Right));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)).then(a.1.cmp(&b.1)));
    let mut left = vec![0; n];
    let mut right = vec![0; n];
    for (rank, &(_, v, side)) in points.iter().enumerate() {
        match side {
            Side::Left => left[v] = rank,
            Side::Right => right[v] = rank,
        }
    }
    let coord = |k: usize| C::from_usize(k).expect("coordinate type holds endpoint ranks");
    IntervalModel::new(
        (0..n)
            .map(|v| Interval::new(v, coord(left[v]), coord(right[v])))
            .collect(),
    )
    .expect("ranks are distinct and left < right")
}

/// Shifts intervals left so their union is a single segment.
fn close_gaps(raw: &mut [(f64, f64)]) {
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut reach = f64::NEG_INFINITY;
    let mut shift = 0.0;
    for iv in raw.iter_mut() {
        iv.0 -= shift;
        iv.1 -= shift;
        if reach > f64::NEG_INFINITY && iv.0 > reach {
            let delta = iv.0 - reach + 0.25 * (iv.1 - iv.0).min(1.0);
            shift += delta;
            iv.0 -= delta;
            iv.1 -= delta;
        }
        reach = reach.max(iv.1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_pairs_distances;
    use crate::{IntModel, Model, Rational};

    fn model(pairs: &[(i64, i64)]) -> IntModel {
        IntModel::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn graphs_from_small_models() {
        let g = model(&[(0, 3), (2, 5), (4, 7)]).build_graph();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);

        let g = model(&[(0, 1)]).build_graph();
        assert_eq!((g.n(), g.edge_count()), (1, 0));

        let g = model(&[(0, 10), (1, 2), (3, 4)]).build_graph();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn validation_errors() {
        let err = model_err(&[(0, 3), (3, 5)]);
        assert!(matches!(err, Error::DuplicateEndpoint { ref coordinate } if coordinate == "3"));
        assert!(matches!(model_err(&[(4, 2)]), Error::EmptyInterval { id: 0, .. }));
        let err = IntModel::new(vec![Interval::new(0, 0, 1), Interval::new(2, 3, 4)]).unwrap_err();
        assert!(matches!(err, Error::BadIds { n: 2, .. }));
    }

    fn model_err(pairs: &[(i64, i64)]) -> Error {
        IntModel::from_pairs(pairs.iter().copied()).unwrap_err()
    }

    #[test]
    fn repair_keeps_touching_intervals_adjacent() {
        let ivs = vec![Interval::new(0, 0, 3), Interval::new(1, 3, 5), Interval::new(2, 5, 5)];
        let m = IntModel::new_repaired(ivs).unwrap();
        let g = m.build_graph();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn power_model_of_a_path_is_a_triangle() {
        let p = model(&[(0, 3), (2, 5), (4, 7)]).power_model(2).unwrap();
        assert_eq!(p.build_graph().edge_count(), 3);
        assert!(model(&[(0, 1)]).power_model(1).is_err());
    }

    #[test]
    fn power_model_matches_distance_power() {
        for seed in 0..40 {
            for style in [
                RandomStyle::UniformEndpoints,
                RandomStyle::UnitLength,
                RandomStyle::LongThin { window: 2 },
            ] {
                let m: IntModel = random_model(25, seed, style);
                let dist = all_pairs_distances(&m.build_graph());
                for d in 2..=5 {
                    let p = m.power_model(d).unwrap();
                    assert_eq!(p.order_left(), m.order_left());
                    assert_eq!(p.order_right(), m.order_right());
                    let pg = p.build_graph();
                    for u in 0..m.n() {
                        for v in u + 1..m.n() {
                            assert_eq!(pg.has_edge(u, v), dist.get(u, v) <= d, "{style} {seed} {d}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn random_models_are_deterministic_and_connected() {
        for style in ["uniform-endpoints", "unit-length", "long-thin:3"] {
            let style: RandomStyle = style.parse().unwrap();
            let a: IntModel = random_model(60, 7, style);
            let b: IntModel = random_model(60, 7, style);
            assert_eq!(a, b);
            assert!(a.build_graph().is_connected());
        }
        let one: IntModel = random_model(1, 3, RandomStyle::UnitLength);
        assert_eq!(one.n(), 1);
    }

    #[test]
    fn long_thin_caps_the_power_clique() {
        for w in 1..4 {
            let m: IntModel = random_model(200, 11, RandomStyle::LongThin { window: w });
            assert!(m.power_model(4).unwrap().max_stabbing() <= 4 * w + 1);
        }
    }

    #[test]
    fn text_and_json_round_trip() {
        let half = Rational::new(1, 2);
        let m = Model::from_pairs([
            (Rational::from_integer(0), Rational::new(7, 3)),
            (half, Rational::from_integer(5)),
        ])
        .unwrap();
        let text = m.to_text();
        assert!(text.contains("0 0 7/3"));
        assert_eq!(Model::from_text(&text, false).unwrap(), m);
        assert_eq!(Model::from_json(&m.to_json(), false).unwrap(), m);
    }

    #[test]
    fn text_errors_name_the_line() {
        let err = Model::from_text("2\n0 0 1\n1 x 3\n", false).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = Model::from_text("3\n0 0 1\n", false).unwrap_err();
        assert!(err.to_string().contains("declares 3"));
    }
}
