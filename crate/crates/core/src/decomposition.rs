//! Nice path decomposition by endpoint sweep.
//!
//! Walking the endpoints from left to right, a left endpoint introduces its
//! vertex and a right endpoint forgets it. The bag after each event is the
//! set of intervals stabbed by a point just after that endpoint, hence a
//! clique. The final forget, which empties the bag, is reported as `Root`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;
use crate::interval_model::{Coordinate, IntervalModel, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    /// First introduce; the bag becomes `{v}`.
    Leaf(usize),
    Introduce(usize),
    Forget(usize),
    /// Final forget of `v`; the bag becomes empty.
    Root(usize),
}

impl Event {
    pub fn vertex(self) -> usize {
        match self {
            Event::Leaf(v) | Event::Introduce(v) | Event::Forget(v) | Event::Root(v) => v,
        }
    }

    pub fn is_introduce(self) -> bool {
        matches!(self, Event::Leaf(_) | Event::Introduce(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    events: Vec<Event>,
    /// Bag after each event. Vertices appear in the order they were
    /// introduced, so every bag is sorted by `<_L`.
    bags: Vec<Vec<usize>>,
    /// Index into the model's sweep of the endpoint behind each event.
    sweep_points: Vec<usize>,
}

impl PathDecomposition {
    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn bag(&self, t: usize) -> &[usize] {
        &self.bags[t]
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    /// Position of the event's endpoint in the model's sorted sweep. The
    /// bag after event `t` is exactly the set of intervals stabbed by any
    /// point between that endpoint and the next one.
    pub fn sweep_point(&self, t: usize) -> usize {
        self.sweep_points[t]
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn max_bag(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.max_bag().saturating_sub(1)
    }

    /// One line per event (`L v`, `I v`, `F v`, `R v`) followed by the bag.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (e, bag) in self.events.iter().zip(&self.bags) {
            let (tag, v) = match *e {
                Event::Leaf(v) => ("L", v),
                Event::Introduce(v) => ("I", v),
                Event::Forget(v) => ("F", v),
                Event::Root(v) => ("R", v),
            };
            let members: Vec<String> = bag.iter().map(usize::to_string).collect();
            writeln!(out, "{tag} {v} | {}", members.join(" ")).unwrap();
        }
        out
    }
}

pub fn build_path_decomposition<C: Coordinate>(model: &IntervalModel<C>) -> Result<PathDecomposition> {
    if model.is_empty() {
        return Err(Error::InvalidParameter("cannot decompose an empty model".into()));
    }
    let sweep = model.sweep();
    let mut events = Vec::with_capacity(sweep.len());
    let mut bags = Vec::with_capacity(sweep.len());
    let mut bag: Vec<usize> = Vec::new();
    for (i, e) in sweep.iter().enumerate() {
        match e.side {
            Side::Left => {
                events.push(if i == 0 { Event::Leaf(e.vertex) } else { Event::Introduce(e.vertex) });
                bag.push(e.vertex);
            }
            Side::Right => {
                bag.retain(|&w| w != e.vertex);
                let last = i + 1 == sweep.len();
                events.push(if last { Event::Root(e.vertex) } else { Event::Forget(e.vertex) });
            }
        }
        bags.push(bag.clone());
    }
    Ok(PathDecomposition {
        events,
        bags,
        sweep_points: (0..sweep.len()).collect(),
    })
}

/// Pairs `(a, b)` of the bag (positions `i < j`) at distance at most 2 in
/// the original graph, as vertex pairs in bag order.
pub fn bag_distance_pairs(dist: &DistanceMatrix, bag: &[usize]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for j in 0..bag.len() {
        for i in 0..j {
            if dist.get(bag[i], bag[j]) <= 2 {
                pairs.push((bag[i], bag[j]));
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_pairs_distances;
    use crate::IntModel;

    #[test]
    fn single_interval() {
        let m = IntModel::from_pairs([(0, 1)]).unwrap();
        let d = build_path_decomposition(&m).unwrap();
        assert_eq!(d.events(), &[Event::Leaf(0), Event::Root(0)]);
        assert!(d.bag(1).is_empty());
    }

    #[test]
    fn chain_of_three() {
        let m = IntModel::from_pairs([(0, 3), (2, 5), (4, 7)]).unwrap();
        let d = build_path_decomposition(&m).unwrap();
        assert_eq!(
            d.events(),
            &[
                Event::Leaf(0),
                Event::Introduce(1),
                Event::Forget(0),
                Event::Introduce(2),
                Event::Forget(1),
                Event::Root(2)
            ]
        );
        assert_eq!(d.width(), 1);
        assert_eq!(d.dump().lines().nth(1), Some("I 1 | 0 1"));
    }

    #[test]
    fn distance_pairs_in_power_bags() {
        let m = IntModel::from_pairs([(0, 3), (2, 5), (4, 7), (6, 9)]).unwrap();
        let dist = all_pairs_distances(&m.build_graph());
        let p = m.power_model(4).unwrap();
        let dec = build_path_decomposition(&p).unwrap();
        let full = dec.bags().iter().find(|b| b.len() == 4).unwrap();
        let pairs = bag_distance_pairs(&dist, full);
        assert_eq!(pairs.len(), 5);
        assert!(!pairs.contains(&(0, 3)));
        assert!(bag_distance_pairs(&dist, &[2]).is_empty());
    }
}
