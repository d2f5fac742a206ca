//! Exhaustive lower-bound checks on a minimal host.
//!
//! The host is one transmitter serving two choice pairs `x` (separated by
//! its `u`) and `z` (separated by its `w`), each with its own gadget. Both
//! checks rely on monotonicity: if the union of a candidate pattern with
//! every vertex outside the inspected part is not a solution, no solution
//! follows that pattern.
//!
//! * Gadget bound: for every gadget and every `(d - 1)`-subset `U` of it,
//!   `(V \ D) ∪ U` is not a solution. So every solution keeps at least `d`
//!   vertices in every gadget.
//! * Transmitter bound: for every choice of exactly `d` vertices in each
//!   of the five transmitter gadgets and none on the transmitter path, the
//!   union with all outside vertices is not a solution. Together with the
//!   gadget bound, every solution keeps at least `5d + 1` transmitter
//!   vertices.

use super::assembly::{ChoicePair, Transmitter};
use super::layout::Layout;
use super::GadgetKind;
use crate::codes::{meets_all, requirement_masks, VertexSet};
use crate::error::Result;
use crate::IntModel;

#[derive(Clone, Debug)]
pub struct TransmitterHost {
    pub kind: GadgetKind,
    pub model: IntModel,
    pub roles: Vec<String>,
    pub transmitter: Transmitter,
    pub x: ChoicePair,
    pub z: ChoicePair,
}

pub fn transmitter_host(kind: GadgetKind) -> Result<TransmitterHost> {
    let mut l = Layout::new();
    let (x1, x2) = (l.interval("x1"), l.interval("x2"));
    let (z1, z2) = (l.interval("z1"), l.interval("z2"));
    let mut tr = Transmitter::create(&mut l, "Tr(x,z)");

    l.open(x1);
    l.open(x2);
    let dx = l.gadget(kind, "D(x)");
    l.close(x1);
    l.open(tr.u);
    l.close(x2);
    tr.lay_body(&mut l, kind, "Tr(x,z)");
    l.open(z1);
    l.close(tr.w);
    l.open(z2);
    let dz = l.gadget(kind, "D(z)");
    l.close(z1);
    l.close(z2);

    let (model, roles) = l.finish()?;
    Ok(TransmitterHost {
        kind,
        model,
        roles,
        transmitter: tr,
        x: ChoicePair { first: x1, second: x2, gadget: dx },
        z: ChoicePair { first: z1, second: z2, gadget: dz },
    })
}

fn mask_of(ids: impl IntoIterator<Item = usize>) -> u128 {
    ids.into_iter().fold(0, |m, i| m | 1u128 << i)
}

/// Masks of all `k`-subsets of `ids`.
fn subsets(ids: &[usize], k: usize) -> Vec<u128> {
    fn go(ids: &[usize], k: usize, acc: u128, out: &mut Vec<u128>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in 0..ids.len() {
            if ids.len() - i < k {
                break;
            }
            go(&ids[i + 1..], k - 1, acc | 1u128 << ids[i], out);
        }
    }
    let mut out = Vec::new();
    go(ids, k, 0, &mut out);
    out
}

impl TransmitterHost {
    pub fn gadgets(&self) -> Vec<&[usize]> {
        let mut out: Vec<&[usize]> = self.transmitter.gadgets.iter().map(Vec::as_slice).collect();
        out.extend([self.x.gadget.as_slice(), self.z.gadget.as_slice()]);
        out
    }

    fn full_mask(&self) -> u128 {
        mask_of(0..self.model.n())
    }

    /// Gadget bound over all gadgets of the host. Returns the number of
    /// patterns refuted, or a description of the first pattern that is a
    /// solution.
    pub fn check_gadget_bound(&self) -> std::result::Result<usize, String> {
        let reqs = requirement_masks(&self.model.build_graph(), self.kind.problem());
        let d = self.kind.d();
        let mut checked = 0;
        for g in self.gadgets() {
            let outside = self.full_mask() & !mask_of(g.iter().copied());
            for u in subsets(g, d - 1) {
                if meets_all(&reqs, outside | u) {
                    return Err(format!("gadget {g:?} admits a solution with {} of its vertices", d - 1));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    /// Transmitter bound. Returns the number of patterns refuted.
    pub fn check_transmitter_bound(&self) -> std::result::Result<usize, String> {
        let reqs = requirement_masks(&self.model.build_graph(), self.kind.problem());
        let d = self.kind.d();
        let outside = self.full_mask() & !mask_of(self.transmitter.members());
        let choices: Vec<Vec<u128>> = self.transmitter.gadgets.iter().map(|g| subsets(g, d)).collect();
        let mut checked = 0;
        let mut stack = vec![(0usize, outside)];
        while let Some((level, acc)) = stack.pop() {
            if level == choices.len() {
                if meets_all(&reqs, acc) {
                    return Err(format!("pattern {acc:#x} is a solution with 5d transmitter vertices"));
                }
                checked += 1;
                continue;
            }
            stack.extend(choices[level].iter().map(|&c| (level + 1, acc | c)));
        }
        Ok(checked)
    }

    /// All outside vertices plus the non-tight transmitter standard.
    pub fn outside_plus_non_tight(&self) -> VertexSet {
        let members = self.transmitter.members();
        let outside = (0..self.model.n()).filter(|v| !members.contains(v));
        VertexSet::new(self.model.n(), outside.chain(self.transmitter.non_tight(self.kind))).expect("ids in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::is_valid;

    #[test]
    fn subsets_are_complete() {
        assert_eq!(subsets(&[1, 4, 6, 9], 2).len(), 6);
        assert_eq!(subsets(&[1, 4], 0), vec![0]);
        assert!(subsets(&[1], 2).is_empty());
    }

    #[test]
    fn ld_host_bounds_hold() {
        let host = transmitter_host(GadgetKind::P4Ld).unwrap();
        assert_eq!(host.model.n(), 11 + 7 * 4);
        assert_eq!(host.check_gadget_bound(), Ok(7 * 4));
        assert_eq!(host.check_transmitter_bound(), Ok(6usize.pow(5)));
        let s = host.outside_plus_non_tight();
        assert!(is_valid(&host.model.build_graph(), host.kind.problem(), &s));
    }
}
