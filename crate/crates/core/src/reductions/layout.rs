//! Token-stream layout.
//!
//! A construction is written as a left-to-right stream of open and close
//! tokens. Every token occupies its own integer coordinate, so endpoints are
//! distinct by construction and the relative order of tokens is all that
//! matters. Interval ids follow creation order, not token order.

use crate::error::{Error, Result};
use crate::interval_model::Interval;
use crate::IntModel;

use super::GadgetKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Token {
    Open(usize),
    Close(usize),
}

#[derive(Debug, Default)]
pub(crate) struct Layout {
    tokens: Vec<Token>,
    roles: Vec<String>,
    /// Token index that maps to coordinate 0.
    origin: usize,
}

impl Layout {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn interval(&mut self, role: impl Into<String>) -> usize {
        self.roles.push(role.into());
        self.roles.len() - 1
    }

    pub fn open(&mut self, id: usize) {
        self.tokens.push(Token::Open(id));
    }

    pub fn close(&mut self, id: usize) {
        self.tokens.push(Token::Close(id));
    }

    /// Creates a gadget and lays it out in place as a path: each member
    /// overlaps only its predecessor and successor.
    pub fn gadget(&mut self, kind: GadgetKind, role: &str) -> Vec<usize> {
        let ids: Vec<usize> = (1..=kind.order()).map(|i| self.interval(format!("{role}:x{i}"))).collect();
        self.open(ids[0]);
        for w in ids.windows(2) {
            self.open(w[1]);
            self.close(w[0]);
        }
        self.close(*ids.last().expect("gadgets are non-empty"));
        ids
    }

    /// Coordinates are token indices shifted so that the next token lands
    /// on 0.
    pub fn set_origin(&mut self) {
        self.origin = self.tokens.len();
    }

    pub fn finish(self) -> Result<(IntModel, Vec<String>)> {
        let n = self.roles.len();
        let mut left: Vec<Option<i64>> = vec![None; n];
        let mut right: Vec<Option<i64>> = vec![None; n];
        for (i, t) in self.tokens.iter().enumerate() {
            let x = i as i64 - self.origin as i64;
            let (slot, id, what) = match *t {
                Token::Open(id) => (&mut left, id, "opened"),
                Token::Close(id) => (&mut right, id, "closed"),
            };
            if slot[id].replace(x).is_some() {
                return Err(Error::Layout(format!("interval {} ({}) {what} twice", id, self.roles[id])));
            }
        }
        let mut intervals = Vec::with_capacity(n);
        for id in 0..n {
            match (left[id], right[id]) {
                (Some(l), Some(r)) if l < r => intervals.push(Interval::new(id, l, r)),
                (Some(_), Some(_)) => {
                    return Err(Error::Layout(format!("interval {id} ({}) closes before it opens", self.roles[id])))
                }
                _ => return Err(Error::Layout(format!("interval {id} ({}) is not placed", self.roles[id]))),
            }
        }
        Ok((IntModel::new(intervals)?, self.roles))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_is_a_path() {
        let mut l = Layout::new();
        let ids = l.gadget(GadgetKind::P5Id, "D");
        let (m, roles) = l.finish().unwrap();
        assert_eq!(ids, vec![0, 1, 2, 3, 4]);
        assert_eq!(roles[2], "D:x3");
        let g = m.build_graph();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn unbalanced_streams_are_rejected() {
        let mut l = Layout::new();
        let a = l.interval("a");
        l.open(a);
        assert!(matches!(l.finish(), Err(Error::Layout(_))));

        let mut l = Layout::new();
        let a = l.interval("a");
        l.close(a);
        l.open(a);
        assert!(l.finish().is_err());
    }

    #[test]
    fn origin_shifts_coordinates() {
        let mut l = Layout::new();
        let a = l.interval("a");
        l.open(a);
        l.set_origin();
        l.close(a);
        let (m, _) = l.finish().unwrap();
        assert_eq!((*m.left(0), *m.right(0)), (-1, 0));
    }
}
