//! Simple undirected graphs, BFS distances and the DIMACS-style edge list.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use crate::error::{parse_err, Error, Result};

/// Distance between vertices in different components.
pub const INFINITY: u32 = u32::MAX;

/// Undirected simple graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted; a packed adjacency matrix backs
/// `has_edge` so predicates can test pairs in constant time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            adjacency: vec![Vec::new(); n],
            words,
            rows: vec![0; words * n],
        }
    }

    /// Builds a graph from an edge iterator. Self-loops and repeated edges
    /// are ignored.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n() && v < self.n(), "edge ({u}, {v}) out of range");
        if u == v || self.has_edge(u, v) {
            return;
        }
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adjacency[a];
            let pos = list.partition_point(|&x| x < b);
            list.insert(pos, b);
            self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Packed open neighbourhood of `v` (`words()` machine words).
    pub fn open_row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn words(&self) -> usize {
        self.words
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Adds a fresh vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        let n = self.n() + 1;
        let words = n.div_ceil(64).max(1);
        if words != self.words {
            let mut rows = vec![0; words * n];
            for v in 0..self.n() {
                rows[v * words..v * words + self.words].copy_from_slice(self.open_row(v));
            }
            self.rows = rows;
            self.words = words;
        } else {
            self.rows.extend(std::iter::repeat_n(0, words));
        }
        self.adjacency.push(Vec::new());
        n - 1
    }

    /// Single-source BFS; unreachable vertices get [`INFINITY`].
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![INFINITY; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == INFINITY {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS truncated at depth `cap`: returns `(vertex, distance)` for every
    /// vertex within distance `cap` of `source`, in BFS order.
    pub fn bfs_bounded(&self, source: usize, cap: u32) -> Vec<(usize, u32)> {
        let mut seen = FxHashMap::default();
        let mut order = vec![(source, 0)];
        seen.insert(source, 0u32);
        let mut head = 0;
        while head < order.len() {
            let (u, du) = order[head];
            head += 1;
            if du == cap {
                continue;
            }
            for &w in &self.adjacency[u] {
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(w) {
                    e.insert(du + 1);
                    order.push((w, du + 1));
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(|&d| d != INFINITY)
    }

    /// Component label per vertex, labels assigned in order of smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if label[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            label[s] = next;
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Graph on the same vertices with an edge between every pair at
    /// distance `1..=d`.
    pub fn power(&self, d: u32) -> Graph {
        let mut p = Graph::empty(self.n());
        for u in 0..self.n() {
            for (w, _) in self.bfs_bounded(u, d) {
                if u < w {
                    p.add_edge(u, w);
                }
            }
        }
        p
    }

    /// Largest finite eccentricity; `None` when the graph is disconnected or empty.
    pub fn diameter(&self) -> Option<u32> {
        if self.n() == 0 {
            return None;
        }
        let mut best = 0;
        for u in 0..self.n() {
            for d in self.bfs(u) {
                if d == INFINITY {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }

    /// Chordality test: maximum cardinality search followed by a perfect
    /// elimination ordering check.
    pub fn is_chordal(&self) -> bool {
        let n = self.n();
        let mut weight = vec![0usize; n];
        let mut numbered = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !numbered[v])
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .expect("unnumbered vertex");
            numbered[v] = true;
            order.push(v);
            for &w in &self.adjacency[v] {
                if !numbered[w] {
                    weight[w] += 1;
                }
            }
        }
        // `order` reversed is a perfect elimination ordering iff chordal.
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        for &v in &order {
            // Earlier-numbered neighbours of v must form a clique; it suffices
            // to check them against the latest of them.
            let earlier: Vec<usize> = self.adjacency[v]
                .iter()
                .copied()
                .filter(|&w| position[w] < position[v])
                .collect();
            if let Some(&parent) = earlier.iter().max_by_key(|&&w| position[w]) {
                for &w in &earlier {
                    if w != parent && !self.has_edge(w, parent) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Writes the `p edge n m` / `e u v` format (1-indexed).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p edge {} {}", self.n(), self.edge_count()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }

    /// Parses the `p edge n m` / `e u v` format. Lines starting with `c`
    /// are comments.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        let mut declared = 0usize;
        let mut seen = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if graph.is_some() {
                        return Err(parse_err(line_no, "duplicate problem line"));
                    }
                    if fields.len() != 4 || fields[1] != "edge" {
                        return Err(parse_err(line_no, "expected `p edge <n> <m>`"));
                    }
                    let n = parse_usize(fields[2], line_no)?;
                    declared = parse_usize(fields[3], line_no)?;
                    graph = Some(Graph::empty(n));
                }
                "e" => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| parse_err(line_no, "edge before `p edge` header"))?;
                    if fields.len() != 3 {
                        return Err(parse_err(line_no, "expected `e <u> <v>`"));
                    }
                    let u = parse_usize(fields[1], line_no)?;
                    let v = parse_usize(fields[2], line_no)?;
                    if u == 0 || v == 0 || u > g.n() || v > g.n() {
                        return Err(parse_err(
                            line_no,
                            format!("vertex out of range 1..={}", g.n()),
                        ));
                    }
                    if u == v {
                        return Err(parse_err(line_no, "self-loop"));
                    }
                    g.add_edge(u - 1, v - 1);
                    seen += 1;
                }
                other => {
                    return Err(parse_err(line_no, format!("unknown line type `{other}`")));
                }
            }
        }
        let g = graph.ok_or_else(|| parse_err(1, "missing `p edge` header"))?;
        if seen != declared {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("header declares {declared} edges, found {seen}"),
            });
        }
        Ok(g)
    }
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, got `{s}`")))
}

/// Dense all-pairs distance table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }
}

/// BFS from every vertex. Vertices in different components are at
/// [`INFINITY`].
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut data = Vec::with_capacity(n * n);
    for s in 0..n {
        data.extend(g.bfs(s));
    }
    DistanceMatrix { n, data }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    #[test]
    fn distances_on_small_graphs() {
        let d = all_pairs_distances(&path(3));
        assert_eq!(d.get(0, 2), 2);

        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let d = all_pairs_distances(&k4);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(d.get(u, v), u32::from(u != v));
            }
        }

        let two = Graph::from_edges(4, [(0, 1), (2, 3)]);
        let d = all_pairs_distances(&two);
        assert_eq!(d.get(0, 2), INFINITY);
        assert_eq!(d.get(1, 3), INFINITY);
        assert_eq!(d.get(2, 3), 1);
    }

    #[test]
    fn add_vertex_grows_rows() {
        let mut g = path(64);
        let x = g.add_vertex();
        assert_eq!(x, 64);
        g.add_edge(0, x);
        g.add_edge(63, x);
        assert!(g.has_edge(x, 0) && g.has_edge(63, x) && g.has_edge(62, 63));
        assert!(!g.has_edge(1, x));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4), (0, 4)]);
        let text = g.to_edge_list();
        assert!(text.starts_with("p edge 5 4\n"));
        assert_eq!(Graph::from_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let err = Graph::from_edge_list("p edge 3 1\ne 1 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = Graph::from_edge_list("e 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = Graph::from_edge_list("p edge 3 2\ne 1 2\n").unwrap_err();
        assert!(err.to_string().contains("declares 2"));
    }

    #[test]
    fn chordality() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(!c4.is_chordal());
        let mut c4_chord = c4.clone();
        c4_chord.add_edge(0, 2);
        assert!(c4_chord.is_chordal());
        assert!(path(7).is_chordal());
    }

    #[test]
    fn power_of_path() {
        let p = path(6).power(2);
        assert!(p.has_edge(0, 2) && !p.has_edge(0, 3));
        assert_eq!(p.edge_count(), 5 + 4);
    }
}
