//! Hardness constructions.
//!
//! [`build_reduction`] turns a 3-dimensional matching instance into an
//! interval model whose LD, ID or OLD number (depending on the dominating
//! gadget) hits a fixed target exactly when the instance has a perfect
//! matching. The model is written as a token stream (see `layout`), then
//! audited: every gadget is seen whole or not at all by every other
//! interval, and every choice pair is separated by exactly its designated
//! intervals. [`transforms`] holds the diameter-2 transformations.

mod assembly;
pub mod hosts;
mod layout;
pub mod transforms;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

pub use assembly::{
    audit, build_reduction, separators, standard_solution, ChoicePair, ReductionLayout, Transmitter, TripleGadget,
};
pub use transforms::{f1, f2, f3};

use crate::codes::{ProblemKind, VertexSet};
use crate::error::{parse_err, Error, Result};
use crate::graph::Graph;
use crate::IntModel;

/// A 3-dimensional matching instance over parts `A`, `B`, `C` of size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeDMInstance {
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl ThreeDMInstance {
    pub fn new(n: usize, triples: Vec<[usize; 3]>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("parts must be non-empty".into()));
        }
        if triples.is_empty() {
            return Err(Error::InvalidParameter("at least one triple is required".into()));
        }
        if let Some((i, t)) = triples.iter().enumerate().find(|(_, t)| t.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidParameter(format!("triple {i} = {t:?} has an index outside 0..{n}")));
        }
        Ok(ThreeDMInstance { n, triples })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// Whether `matching` (triple indices) covers every element of every
    /// part exactly once. Returns the reason when it does not.
    pub fn check_perfect_matching(&self, matching: &[usize]) -> Result<()> {
        let bad = |msg: String| Err(Error::NotPerfectMatching(msg));
        let mut seen = vec![[false; 3]; self.n];
        let mut used = vec![false; self.m()];
        for &t in matching {
            if t >= self.m() {
                return bad(format!("triple index {t} out of range 0..{}", self.m()));
            }
            if std::mem::replace(&mut used[t], true) {
                return bad(format!("triple {t} listed twice"));
            }
            for (part, &x) in self.triples[t].iter().enumerate() {
                if std::mem::replace(&mut seen[x][part], true) {
                    return bad(format!("element {}{x} covered twice", PART_NAMES[part]));
                }
            }
        }
        if matching.len() != self.n {
            return bad(format!("{} triples chosen, {} needed", matching.len(), self.n));
        }
        Ok(())
    }

    /// `n m` on the first line, then one `a b c` line per triple.
    /// Lines starting with `#` are ignored.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for [a, b, c] in &self.triples {
            out.push_str(&format!("{a} {b} {c}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
        let nums = parse_numbers(hline, header, 2)?;
        let (n, m) = (nums[0], nums[1]);
        let mut triples = Vec::with_capacity(m);
        for (line, l) in lines {
            let t = parse_numbers(line, l, 3)?;
            if let Some(&x) = t.iter().find(|&&x| x >= n) {
                return Err(parse_err(line, format!("index {x} outside 0..{n}")));
            }
            triples.push([t[0], t[1], t[2]]);
        }
        if triples.len() != m {
            return Err(parse_err(hline, format!("header announces {m} triples, found {}", triples.len())));
        }
        Self::new(n, triples).map_err(|e| parse_err(hline, e.to_string()))
    }

    /// A yes-instance: a hidden perfect matching plus `m - n` random extra
    /// triples, shuffled. Returns the instance and the matching.
    pub fn random_yes(n: usize, m: usize, seed: u64) -> Result<(Self, Vec<usize>)> {
        if n == 0 || m < n {
            return Err(Error::InvalidParameter(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm_b: Vec<usize> = (0..n).collect();
        let mut perm_c: Vec<usize> = (0..n).collect();
        perm_b.shuffle(&mut rng);
        perm_c.shuffle(&mut rng);
        let mut tagged: Vec<([usize; 3], bool)> = (0..n).map(|a| ([a, perm_b[a], perm_c[a]], true)).collect();
        for _ in n..m {
            tagged.push(([rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)], false));
        }
        tagged.shuffle(&mut rng);
        let matching = tagged.iter().enumerate().filter(|(_, t)| t.1).map(|(i, _)| i).collect();
        let inst = Self::new(n, tagged.into_iter().map(|t| t.0).collect())?;
        Ok((inst, matching))
    }
}

const PART_NAMES: [&str; 3] = ["a", "b", "c"];

fn parse_numbers(line: usize, text: &str, expect: usize) -> Result<Vec<usize>> {
    let nums = text
        .split_whitespace()
        .map(|w| w.parse::<usize>().map_err(|_| parse_err(line, format!("`{w}` is not a non-negative integer"))))
        .collect::<Result<Vec<_>>>()?;
    if nums.len() != expect {
        return Err(parse_err(line, format!("expected {expect} numbers, found {}", nums.len())));
    }
    Ok(nums)
}

/// Parses a matching file: whitespace-separated triple indices, `#`
/// comments allowed.
pub fn matching_from_text(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for w in line.split_whitespace() {
            out.push(w.parse().map_err(|_| parse_err(i + 1, format!("`{w}` is not a triple index")))?);
        }
    }
    Ok(out)
}

/// The three fixed dominating gadgets, all induced paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    P4Ld,
    P5Id,
    P6Old,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 3] = [GadgetKind::P4Ld, GadgetKind::P5Id, GadgetKind::P6Old];

    pub fn problem(self) -> ProblemKind {
        match self {
            GadgetKind::P4Ld => ProblemKind::Ld,
            GadgetKind::P5Id => ProblemKind::Id,
            GadgetKind::P6Old => ProblemKind::Old,
        }
    }

    pub fn for_problem(kind: ProblemKind) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.problem() == kind)
    }

    /// Number of vertices, `v_D`.
    pub fn order(self) -> usize {
        match self {
            GadgetKind::P4Ld => 4,
            GadgetKind::P5Id => 5,
            GadgetKind::P6Old => 6,
        }
    }

    /// Minimum solution size inside the gadget, `d`.
    pub fn d(self) -> usize {
        self.standard_local().len()
    }

    /// Local indices (0-based along the path) of the standard solution.
    ///
    /// For P6 the two inner pairs are used: the ends-plus-centre choice
    /// `{x1, x3, x4, x6}` leaves `x2` and `x4` with the same open
    /// neighbourhood trace and is not open locating-dominating.
    pub fn standard_local(self) -> &'static [usize] {
        match self {
            GadgetKind::P4Ld => &[0, 3],
            GadgetKind::P5Id => &[0, 2, 4],
            GadgetKind::P6Old => &[1, 2, 3, 4],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::P4Ld => "P4-LD",
            GadgetKind::P5Id => "P5-ID",
            GadgetKind::P6Old => "P6-OLD",
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GadgetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ld" | "p4-ld" => Ok(GadgetKind::P4Ld),
            "id" | "p5-id" => Ok(GadgetKind::P5Id),
            "old" | "p6-old" => Ok(GadgetKind::P6Old),
            _ => Err(Error::InvalidParameter(format!("unknown gadget kind `{s}` (expected ld, id or old)"))),
        }
    }
}

/// A dominating gadget on its own, with its standard solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatingGadget {
    pub kind: GadgetKind,
    pub d: usize,
    pub order: usize,
    pub standard_solution: VertexSet,
}

impl DominatingGadget {
    pub fn new(kind: GadgetKind) -> Self {
        DominatingGadget {
            kind,
            d: kind.d(),
            order: kind.order(),
            standard_solution: VertexSet::new(kind.order(), kind.standard_local().iter().copied())
                .expect("local indices are in range"),
        }
    }

    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.order, (1..self.order).map(|i| (i - 1, i)))
    }

    /// No gadget vertex is dominated by every member of the standard
    /// solution (closed neighbourhoods for LD and ID, open for OLD).
    pub fn no_vertex_dominated_by_all(&self) -> bool {
        let g = self.graph();
        let open = self.kind.problem() == ProblemKind::Old;
        (0..self.order).all(|x| {
            !self
                .standard_solution
                .iter()
                .all(|s| g.has_edge(x, s) || (!open && x == s))
        })
    }
}

/// Vertex count of the reduction graph.
pub fn order_formula(kind: GadgetKind, n: usize, m: usize) -> usize {
    let vd = kind.order();
    (29 * vd + 43) * m + 3 * (vd + 2) * n
}

/// Size of the standard solution for a perfect matching.
pub fn size_formula(kind: GadgetKind, n: usize, m: usize) -> usize {
    let d = kind.d();
    (29 * d + 7) * m + (3 * d + 1) * n
}

/// The interval model of a reduction together with its bookkeeping.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub model: IntModel,
    /// Role label of every interval, indexed by id.
    pub roles: Vec<String>,
    pub expected_solution_size: usize,
    pub order: usize,
    pub gadget: GadgetKind,
    pub instance: ThreeDMInstance,
    pub layout: ReductionLayout,
}

impl ReductionOutput {
    /// `{"0": "a0:f", "1": ...}`.
    pub fn roles_json(&self) -> Value {
        Value::Object(
            self.roles
                .iter()
                .enumerate()
                .map(|(i, r)| (i.to_string(), Value::String(r.clone())))
                .collect::<Map<_, _>>(),
        )
    }

    pub fn manifest_json(&self) -> Value {
        let (n, m) = (self.instance.n(), self.instance.m());
        json!({
            "gadget": self.gadget.name(),
            "problem": self.gadget.problem().name(),
            "d": self.gadget.d(),
            "v_D": self.gadget.order(),
            "n": n,
            "m": m,
            "order": self.model.n(),
            "order_formula": "(29*v_D + 43)*m + 3*(v_D + 2)*n",
            "order_formula_value": order_formula(self.gadget, n, m),
            "solution_size_formula": "(29*d + 7)*m + (3*d + 1)*n",
            "solution_size_formula_value": size_formula(self.gadget, n, m),
        })
    }
}

/// Inverse of [`ReductionOutput::roles_json`].
pub fn roles_from_json(value: &Value) -> Result<Vec<String>> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::InvalidParameter("roles must be a JSON object".into()))?;
    let mut roles = vec![None; obj.len()];
    for (k, v) in obj {
        let id: usize = k
            .parse()
            .ok()
            .filter(|&i| i < roles.len())
            .ok_or_else(|| Error::InvalidParameter(format!("bad role key `{k}`")))?;
        let role = v
            .as_str()
            .ok_or_else(|| Error::InvalidParameter(format!("role of {k} is not a string")))?;
        roles[id] = Some(role.to_owned());
    }
    roles
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidParameter("role ids are not contiguous".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{brute_force_min, is_valid, BruteForce};

    #[test]
    fn gadgets_are_certified() {
        for kind in GadgetKind::ALL {
            let dg = DominatingGadget::new(kind);
            let g = dg.graph();
            assert!(is_valid(&g, kind.problem(), &dg.standard_solution), "{kind}");
            assert!(dg.no_vertex_dominated_by_all(), "{kind}");
            match brute_force_min(&g, kind.problem(), dg.order) {
                BruteForce::Found(s) => assert_eq!(s.len(), dg.d, "{kind}"),
                other => panic!("{kind}: {other:?}"),
            }
        }
        assert_eq!([2, 3, 4], GadgetKind::ALL.map(GadgetKind::d));
    }

    #[test]
    fn formulas_at_the_smallest_instance() {
        assert_eq!(order_formula(GadgetKind::P4Ld, 1, 1), 177);
        assert_eq!(size_formula(GadgetKind::P4Ld, 1, 1), 72);
    }

    #[test]
    fn instance_text_round_trip_and_errors() {
        let inst = ThreeDMInstance::new(2, vec![[0, 1, 1], [1, 0, 0], [0, 0, 1]]).unwrap();
        assert_eq!(ThreeDMInstance::from_text(&inst.to_text()).unwrap(), inst);
        let err = ThreeDMInstance::from_text("2 2\n0 1 1\n0 5 1\n").unwrap_err();
        assert!(err.to_string().starts_with("line 3"), "{err}");
        assert!(ThreeDMInstance::from_text("2 3\n0 1 1\n").is_err());
        assert!(ThreeDMInstance::from_text("1 0\n").is_err());
    }

    #[test]
    fn matchings_are_checked() {
        let inst = ThreeDMInstance::new(2, vec![[0, 1, 1], [1, 0, 0], [0, 0, 1]]).unwrap();
        assert!(inst.check_perfect_matching(&[0, 1]).is_ok());
        assert!(inst.check_perfect_matching(&[1, 2]).is_err());
        assert!(inst.check_perfect_matching(&[0]).is_err());
        assert!(inst.check_perfect_matching(&[0, 0]).is_err());
        for seed in 0..20 {
            let (inst, matching) = ThreeDMInstance::random_yes(3, 5, seed).unwrap();
            inst.check_perfect_matching(&matching).unwrap();
        }
        assert_eq!(matching_from_text("0 2 # hidden\n1\n").unwrap(), vec![0, 2, 1]);
    }
}
