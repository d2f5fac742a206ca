//! Transformations that force diameter 2.
//!
//! New vertices are appended after the original ones:
//!
//! | op   | `n`         | `n + 1`            | `n + 2`              | `n + 3`             |
//! |------|-------------|--------------------|----------------------|---------------------|
//! | `f1` | `u`, universal | `v`, adjacent to `u` only | | |
//! | `f2` | as `f1`     | as `f1`            | `w`, adjacent to `u` and `v` | |
//! | `f3` | `u`, universal | `u'`, universal | `v`, adjacent to `u`, `u'` | `w`, adjacent to `u`, `u'` |
//!
//! "Universal" means adjacent to every original vertex and to the other
//! added vertices listed for that op.

use crate::graph::Graph;

fn with_universal(g: &Graph) -> (Graph, usize) {
    let mut h = g.clone();
    let u = h.add_vertex();
    for x in 0..g.n() {
        h.add_edge(u, x);
    }
    (h, u)
}

pub fn f1(g: &Graph) -> Graph {
    let (mut h, u) = with_universal(g);
    let v = h.add_vertex();
    h.add_edge(u, v);
    h
}

pub fn f2(g: &Graph) -> Graph {
    let mut h = f1(g);
    let (u, v) = (g.n(), g.n() + 1);
    let w = h.add_vertex();
    h.add_edge(w, u);
    h.add_edge(w, v);
    h
}

pub fn f3(g: &Graph) -> Graph {
    let (mut h, u) = with_universal(g);
    let u2 = h.add_vertex();
    for x in 0..=g.n() {
        h.add_edge(u2, x);
    }
    for _ in 0..2 {
        let y = h.add_vertex();
        h.add_edge(y, u);
        h.add_edge(y, u2);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_of_a_single_vertex_is_a_path() {
        let h = f1(&Graph::empty(1));
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn added_vertices_and_edges() {
        let g = Graph::from_edges(3, [(0, 1)]);
        let h2 = f2(&g);
        assert_eq!((h2.n(), h2.edge_count()), (6, 1 + 3 + 1 + 2));
        assert_eq!(h2.neighbors(5), &[3, 4]);
        let h3 = f3(&g);
        assert_eq!((h3.n(), h3.edge_count()), (7, 1 + 3 + 4 + 4));
        assert!(!h3.has_edge(5, 6));
        for h in [f1(&g), h2, h3] {
            assert_eq!(h.diameter(), Some(2));
        }
    }
}
