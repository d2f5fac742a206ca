//! Named fixture families.
//!
//! `path` and `clique` come with interval models. `cycle-graph` and
//! `chordal-fig7` are plain graphs (cycles of length at least 4 are not
//! interval graphs, and the chordal family is not one either).
//!
//! The chordal family is a 7-vertex kernel `u, a2, c3, a4, a5, a6, v`
//! with a pendant path of `t` vertices hanging from each of `a2` and `a4`.
//! `c3` is adjacent to `u`, `a2`, `a4`, `a5`, `a6`; the triangle `a5 a6 v`
//! closes on the right; `a2 a5` and `a4 a6` are edges. Every black vertex
//! sits at distance `t + 2` from both `u` and `v`, so the black pair does
//! not resolve the graph, while every pair at distance at most 2 is
//! separated by it.

use std::fmt;
use std::str::FromStr;

use crate::codes::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::IntModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path,
    Clique,
    CycleGraph,
    ChordalFig7,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Family::Path),
            "clique" => Ok(Family::Clique),
            "cycle-graph" | "cycle" => Ok(Family::CycleGraph),
            "chordal-fig7" => Ok(Family::ChordalFig7),
            _ => Err(Error::InvalidParameter(format!(
                "unknown family `{s}` (expected path, clique, cycle-graph or chordal-fig7)"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Path => "path",
            Family::Clique => "clique",
            Family::CycleGraph => "cycle-graph",
            Family::ChordalFig7 => "chordal-fig7",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    /// Vertex count for path, clique and cycle; pendant path length for
    /// the chordal family.
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Model(IntModel),
    Graph {
        graph: Graph,
        /// The two marked vertices of the chordal family.
        black: Option<VertexSet>,
    },
}

impl Fixture {
    pub fn graph(&self) -> Graph {
        match self {
            Fixture::Model(m) => m.build_graph(),
            Fixture::Graph { graph, .. } => graph.clone(),
        }
    }
}

pub fn make_family(spec: FamilySpec) -> Result<Fixture> {
    let n = spec.size;
    let too_small = |min: usize| {
        Err(Error::InvalidParameter(format!(
            "{} needs size >= {min}, got {n}",
            spec.family
        )))
    };
    match spec.family {
        Family::Path => {
            if n < 1 {
                return too_small(1);
            }
            Ok(Fixture::Model(path_model(n)))
        }
        Family::Clique => {
            if n < 1 {
                return too_small(1);
            }
            let m = IntModel::from_pairs((0..n as i64).map(|i| (i, n as i64 + i)))?;
            Ok(Fixture::Model(m))
        }
        Family::CycleGraph => {
            if n < 3 {
                return too_small(3);
            }
            let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)));
            Ok(Fixture::Graph { graph: g, black: None })
        }
        Family::ChordalFig7 => {
            if n < 2 {
                return too_small(2);
            }
            let (graph, black) = chordal_fig7(n);
            Ok(Fixture::Graph {
                graph,
                black: Some(black),
            })
        }
    }
}

/// Path on `n` vertices: interval `i` is `[2i, 2i + 3]`.
pub fn path_model(n: usize) -> IntModel {
    IntModel::from_pairs((0..n as i64).map(|i| (2 * i, 2 * i + 3))).expect("distinct endpoints")
}

/// Kernel vertex ids of the chordal family.
pub mod kernel {
    pub const U: usize = 0;
    pub const A2: usize = 1;
    pub const C3: usize = 2;
    pub const A4: usize = 3;
    pub const A5: usize = 4;
    pub const A6: usize = 5;
    pub const V: usize = 6;
}

/// Kernel edges, frozen.
pub const KERNEL_EDGES: [(usize, usize); 10] = [
    (kernel::U, kernel::C3),
    (kernel::C3, kernel::A2),
    (kernel::A2, kernel::A5),
    (kernel::A5, kernel::C3),
    (kernel::C3, kernel::A6),
    (kernel::A6, kernel::A4),
    (kernel::A4, kernel::C3),
    (kernel::A5, kernel::A6),
    (kernel::A6, kernel::V),
    (kernel::V, kernel::A5),
];

/// Kernel plus pendant paths of `t` vertices hanging from `a2` (ids
/// `7..7+t`) and from `a4` (ids `7+t..7+2t`). The last vertex of each
/// path is black.
pub fn chordal_fig7(t: usize) -> (Graph, VertexSet) {
    let n = 7 + 2 * t;
    let mut g = Graph::from_edges(n, KERNEL_EDGES);
    let mut black = Vec::new();
    for (anchor, first) in [(kernel::A2, 7), (kernel::A4, 7 + t)] {
        let mut prev = anchor;
        for x in first..first + t {
            g.add_edge(prev, x);
            prev = x;
        }
        black.push(prev);
    }
    (g, VertexSet::new(n, black).expect("in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{is_distance2_resolving, is_resolving};

    #[test]
    fn kernel_adjacency_is_frozen() {
        let (g, black) = chordal_fig7(2);
        let golden: [&[usize]; 7] = [&[2], &[2, 4, 7], &[0, 1, 3, 4, 5], &[2, 5, 9], &[1, 2, 5, 6], &[2, 3, 4, 6], &[4, 5]];
        for (v, expect) in golden.iter().enumerate() {
            assert_eq!(g.neighbors(v), *expect, "vertex {v}");
        }
        assert_eq!(black.members(), &[8, 10]);
    }

    #[test]
    fn chordal_family_separates_close_pairs_only() {
        for t in 2..=6 {
            let (g, black) = chordal_fig7(t);
            assert!(g.is_chordal(), "t = {t}");
            assert!(is_distance2_resolving(&g, &black), "t = {t}");
            assert!(!is_resolving(&g, &black), "t = {t}");
        }
    }

    #[test]
    fn simple_families() {
        let p = make_family(FamilySpec { family: Family::Path, size: 4 }).unwrap().graph();
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        let k = make_family(FamilySpec { family: Family::Clique, size: 5 }).unwrap().graph();
        assert_eq!(k.edge_count(), 10);
        let c = make_family(FamilySpec { family: Family::CycleGraph, size: 5 }).unwrap().graph();
        assert!(c.neighbors(0) == [1, 4] && !c.is_chordal());
        assert!(make_family(FamilySpec { family: Family::ChordalFig7, size: 1 }).is_err());
        assert!(make_family(FamilySpec { family: Family::Path, size: 0 }).is_err());
    }
}
