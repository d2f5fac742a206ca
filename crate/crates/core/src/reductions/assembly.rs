//! Transmitters, triple gadgets and the full model.
//!
//! Token patterns used below, writing `oX`/`cX` for the endpoints of `X`
//! and `[D]` for a gadget laid out in place:
//!
//! * a choice pair `{x1, x2}` is `ox1 ox2 [D(x)] cx1 cx2`. An interval
//!   separates the pair exactly when it closes strictly between `ox1` and
//!   `ox2` (separates from the left) or opens strictly between `cx1` and
//!   `cx2` (from the right). Everything else in the stream either misses
//!   both or meets both.
//! * a transmitter body is
//!   `[Du] ouv1 cu ouv2 [Duv] cuv1 ov cuv2 [Dv] ovw1 cv ovw2 [Dvw] cvw1 ow cvw2 [Dw]`,
//!   with `ou` and `cw` placed inside the slots of the pairs it serves.
//!
//! Triples live left of 0, element pairs right of it. The three `w`
//! intervals that reach element pairs run over every later triple, which
//! they contain whole.

use super::layout::Layout;
use super::{order_formula, size_formula, GadgetKind, ReductionOutput, ThreeDMInstance};
use crate::codes::VertexSet;
use crate::error::{Error, Result};
use crate::IntModel;

/// Two overlapping intervals sharing a gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoicePair {
    pub first: usize,
    pub second: usize,
    pub gadget: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transmitter {
    pub u: usize,
    pub uv1: usize,
    pub uv2: usize,
    pub v: usize,
    pub vw1: usize,
    pub vw2: usize,
    pub w: usize,
    /// Gadgets of `u`, `uv`, `v`, `vw`, `w` in that order.
    pub gadgets: [Vec<usize>; 5],
}

const TR_GADGETS: [&str; 5] = ["u", "uv", "v", "vw", "w"];

impl Transmitter {
    pub(super) fn create(l: &mut Layout, role: &str) -> Self {
        let mut id = |s: &str| l.interval(format!("{role}:{s}"));
        Transmitter {
            u: id("u"),
            uv1: id("uv1"),
            uv2: id("uv2"),
            v: id("v"),
            vw1: id("vw1"),
            vw2: id("vw2"),
            w: id("w"),
            gadgets: Default::default(),
        }
    }

    fn lay_gadget(&mut self, l: &mut Layout, kind: GadgetKind, role: &str, which: usize) {
        self.gadgets[which] = l.gadget(kind, &format!("{role}:D({})", TR_GADGETS[which]));
    }

    /// Everything between `ou` and `cw`.
    pub(super) fn lay_body(&mut self, l: &mut Layout, kind: GadgetKind, role: &str) {
        self.lay_gadget(l, kind, role, 0);
        l.open(self.uv1);
        l.close(self.u);
        l.open(self.uv2);
        self.lay_gadget(l, kind, role, 1);
        l.close(self.uv1);
        l.open(self.v);
        l.close(self.uv2);
        self.lay_gadget(l, kind, role, 2);
        self.lay_vw(l, kind, role);
        self.lay_gadget(l, kind, role, 4);
    }

    fn lay_vw(&mut self, l: &mut Layout, kind: GadgetKind, role: &str) {
        l.open(self.vw1);
        l.close(self.v);
        l.open(self.vw2);
        self.lay_gadget(l, kind, role, 3);
        l.close(self.vw1);
        l.open(self.w);
        l.close(self.vw2);
    }

    pub fn members(&self) -> Vec<usize> {
        let mut out = vec![self.u, self.uv1, self.uv2, self.v, self.vw1, self.vw2, self.w];
        out.extend(self.gadgets.iter().flatten());
        out
    }

    pub fn uv(&self) -> ChoicePair {
        ChoicePair {
            first: self.uv1,
            second: self.uv2,
            gadget: self.gadgets[1].clone(),
        }
    }

    pub fn vw(&self) -> ChoicePair {
        ChoicePair {
            first: self.vw1,
            second: self.vw2,
            gadget: self.gadgets[3].clone(),
        }
    }

    fn dominating_standards(&self, kind: GadgetKind) -> Vec<usize> {
        self.gadgets.iter().flat_map(|g| gadget_standard(g, kind)).collect()
    }

    /// Gadget standards plus `v`: `5d + 1` vertices.
    pub fn tight(&self, kind: GadgetKind) -> Vec<usize> {
        let mut s = self.dominating_standards(kind);
        s.push(self.v);
        s
    }

    /// Gadget standards plus `u` and `w`: `5d + 2` vertices.
    pub fn non_tight(&self, kind: GadgetKind) -> Vec<usize> {
        let mut s = self.dominating_standards(kind);
        s.extend([self.u, self.w]);
        s
    }
}

pub(crate) fn gadget_standard(ids: &[usize], kind: GadgetKind) -> impl Iterator<Item = usize> + '_ {
    kind.standard_local().iter().map(move |&i| ids[i])
}

/// Choice-pair and transmitter layout of one triple `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleGadget {
    pub triple: [usize; 3],
    pub p: ChoicePair,
    pub q: ChoicePair,
    pub r: ChoicePair,
    pub s: ChoicePair,
    /// `Tr(p, q)`.
    pub pq: Transmitter,
    /// `Tr(r, s)`.
    pub rs: Transmitter,
    /// `Tr(s, a)`: its `w` separates the pair of element `a`.
    pub sa: Transmitter,
    /// `Tr(p, r, b)`.
    pub prb: Transmitter,
    /// `Tr(q, r, c)`.
    pub qrc: Transmitter,
}

impl TripleGadget {
    pub fn transmitters(&self) -> [(&'static str, &Transmitter); 5] {
        [
            ("Tr(p,q)", &self.pq),
            ("Tr(r,s)", &self.rs),
            ("Tr(s,a)", &self.sa),
            ("Tr(p,r,b)", &self.prb),
            ("Tr(q,r,c)", &self.qrc),
        ]
    }

    pub fn pairs(&self) -> [(&'static str, &ChoicePair); 4] {
        [("p", &self.p), ("q", &self.q), ("r", &self.r), ("s", &self.s)]
    }

    /// Designated separators of `p`, `q`, `r`, `s`.
    fn designated(&self) -> [Vec<usize>; 4] {
        [
            vec![self.pq.u, self.prb.u],
            vec![self.pq.w, self.qrc.u],
            vec![self.prb.u, self.qrc.w, self.rs.u],
            vec![self.rs.w, self.sa.u],
        ]
    }

    /// `29d + 8` vertices when `matched` (the element transmitters are
    /// non-tight), `29d + 7` otherwise.
    pub fn standard(&self, kind: GadgetKind, matched: bool) -> Vec<usize> {
        let (tight, loose): (&[&Transmitter], &[&Transmitter]) = if matched {
            (&[&self.pq, &self.rs], &[&self.sa, &self.prb, &self.qrc])
        } else {
            (&[&self.sa, &self.prb, &self.qrc], &[&self.pq, &self.rs])
        };
        let mut s: Vec<usize> = tight.iter().flat_map(|t| t.tight(kind)).collect();
        s.extend(loose.iter().flat_map(|t| t.non_tight(kind)));
        for (_, pair) in self.pairs() {
            s.extend(gadget_standard(&pair.gadget, kind));
        }
        s
    }

    fn create(l: &mut Layout, kind: GadgetKind, t: usize, triple: [usize; 3]) -> Self {
        let role = |s: &str| format!("T{t}:{s}");
        let mut pair_ids = |name: &str| (l.interval(role(&format!("{name}1"))), l.interval(role(&format!("{name}2"))));
        let (p1, p2) = pair_ids("p");
        let (q1, q2) = pair_ids("q");
        let (r1, r2) = pair_ids("r");
        let (s1, s2) = pair_ids("s");
        let names = ["Tr(p,q)", "Tr(r,s)", "Tr(s,a)", "Tr(p,r,b)", "Tr(q,r,c)"].map(role);
        let mut a = Transmitter::create(l, &names[0]);
        let mut b = Transmitter::create(l, &names[1]);
        let mut c = Transmitter::create(l, &names[2]);
        let mut pt = Transmitter::create(l, &names[3]);
        let mut qt = Transmitter::create(l, &names[4]);
        let (ra, rb, rc, rp, rq) = (&names[0], &names[1], &names[2], &names[3], &names[4]);

        // p: Tr(p,r,b).u and Tr(p,q).u open in its right slot.
        l.open(p1);
        l.open(p2);
        let dp = l.gadget(kind, &role("D(p)"));
        l.close(p1);
        l.open(pt.u);
        l.open(a.u);
        l.close(p2);
        a.lay_body(l, kind, ra);

        // q: Tr(p,q).w closes in its left slot, Tr(q,r,c).u opens in its right slot.
        l.open(q1);
        l.close(a.w);
        l.open(q2);
        let dq = l.gadget(kind, &role("D(q)"));
        l.close(q1);
        l.open(qt.u);
        l.close(q2);

        // Tr(q,r,c) up to its vw pair, which stays open over r.
        qt.lay_gadget(l, kind, rq, 0);
        l.open(qt.uv1);
        l.close(qt.u);
        l.open(qt.uv2);
        qt.lay_gadget(l, kind, rq, 1);
        l.close(qt.uv1);
        l.open(qt.v);
        l.close(qt.uv2);
        qt.lay_gadget(l, kind, rq, 2);
        l.open(qt.vw1);
        l.close(qt.v);
        l.open(qt.vw2);
        qt.lay_gadget(l, kind, rq, 3);

        // r: Tr(p,r,b).u closes in its left slot; Tr(q,r,c).w and
        // Tr(r,s).u open in its right slot. The uv pair of Tr(p,r,b) starts
        // in r's left slot so that u separates it too.
        pt.lay_gadget(l, kind, rp, 0);
        l.open(r1);
        l.open(pt.uv1);
        l.close(pt.u);
        l.open(r2);
        l.open(pt.uv2);
        pt.lay_gadget(l, kind, rp, 1);
        l.close(pt.uv1);
        l.open(pt.v);
        l.close(pt.uv2);
        pt.lay_gadget(l, kind, rp, 2);
        let dr = l.gadget(kind, &role("D(r)"));
        l.close(r1);
        l.close(qt.vw1);
        l.open(qt.w);
        l.close(qt.vw2);
        l.open(b.u);
        l.close(r2);
        b.lay_body(l, kind, rb);

        // s: Tr(r,s).w closes in its left slot, Tr(s,a).u opens in its right slot.
        l.open(s1);
        l.close(b.w);
        l.open(s2);
        let ds = l.gadget(kind, &role("D(s)"));
        l.close(s1);
        l.open(c.u);
        l.close(s2);
        c.lay_body(l, kind, rc);

        // The rest of Tr(p,r,b) and the last gadget of Tr(q,r,c).
        pt.lay_vw(l, kind, rp);
        pt.lay_gadget(l, kind, rp, 4);
        qt.lay_gadget(l, kind, rq, 4);

        let mk = |first, second, gadget| ChoicePair { first, second, gadget };
        TripleGadget {
            triple,
            p: mk(p1, p2, dp),
            q: mk(q1, q2, dq),
            r: mk(r1, r2, dr),
            s: mk(s1, s2, ds),
            pq: a,
            rs: b,
            sa: c,
            prb: pt,
            qrc: qt,
        }
    }
}

/// Where every component of a reduction ended up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionLayout {
    pub triples: Vec<TripleGadget>,
    /// Element pairs indexed by `part * n + x`, parts ordered `A, B, C`.
    pub elements: Vec<ChoicePair>,
}

pub fn build_reduction(instance: &ThreeDMInstance, kind: GadgetKind) -> Result<ReductionOutput> {
    let n = instance.n();
    let mut l = Layout::new();
    let triples: Vec<TripleGadget> = instance
        .triples()
        .iter()
        .enumerate()
        .map(|(t, &tr)| TripleGadget::create(&mut l, kind, t, tr))
        .collect();

    l.set_origin();
    let mut elements = Vec::with_capacity(3 * n);
    for (part, name) in ["a", "b", "c"].into_iter().enumerate() {
        for x in 0..n {
            let f = l.interval(format!("{name}{x}:f"));
            let g = l.interval(format!("{name}{x}:g"));
            l.open(f);
            for tg in triples.iter().filter(|tg| tg.triple[part] == x) {
                l.close(element_separator(tg, part));
            }
            l.open(g);
            let gadget = l.gadget(kind, &format!("{name}{x}:D"));
            l.close(f);
            l.close(g);
            elements.push(ChoicePair { first: f, second: g, gadget });
        }
    }

    let (model, roles) = l.finish()?;
    let out = ReductionOutput {
        order: model.n(),
        model,
        roles,
        expected_solution_size: size_formula(kind, n, instance.m()),
        gadget: kind,
        instance: instance.clone(),
        layout: ReductionLayout { triples, elements },
    };
    let problems = audit(&out);
    if !problems.is_empty() {
        return Err(Error::Layout(problems.join("; ")));
    }
    Ok(out)
}

/// The `w` interval of a triple that separates its element in `part`.
fn element_separator(tg: &TripleGadget, part: usize) -> usize {
    match part {
        0 => tg.sa.w,
        1 => tg.prb.w,
        _ => tg.qrc.w,
    }
}

/// Intervals other than `a` and `b` meeting exactly one of them.
pub fn separators(model: &IntModel, a: usize, b: usize) -> Vec<usize> {
    (0..model.n())
        .filter(|&x| x != a && x != b && model.intersects(x, a) != model.intersects(x, b))
        .collect()
}

/// Checks every structural promise of the construction and returns one
/// message per broken promise.
///
/// * Vertex count against the order formula.
/// * Every interval outside a gadget contains all of it or misses all of it.
/// * Every choice pair overlaps without nesting, both members contain the
///   pair's gadget, and its separators are exactly the designated ones.
/// * Inside a transmitter, only `x` meets the gadget `D(x)` for `x` in
///   `u, v, w`, and only the pair meets `D(uv)` and `D(vw)`.
pub fn audit(out: &ReductionOutput) -> Vec<String> {
    let m = &out.model;
    let mut problems = Vec::new();
    let expect = order_formula(out.gadget, out.instance.n(), out.instance.m());
    if m.n() != expect || out.order != expect {
        problems.push(format!("order {} differs from formula value {expect}", m.n()));
    }

    let mut gadgets: Vec<(String, &[usize])> = Vec::new();
    let mut pairs: Vec<(String, &ChoicePair, Vec<usize>)> = Vec::new();
    for (t, tg) in out.layout.triples.iter().enumerate() {
        for ((name, pair), sep) in tg.pairs().into_iter().zip(tg.designated()) {
            gadgets.push((format!("T{t}:D({name})"), &pair.gadget));
            pairs.push((format!("T{t}:{name}"), pair, sep));
        }
        for (name, tr) in tg.transmitters() {
            for (g, label) in tr.gadgets.iter().zip(TR_GADGETS) {
                gadgets.push((format!("T{t}:{name}:D({label})"), g));
            }
            problems.extend(audit_transmitter(m, tr, &format!("T{t}:{name}")));
        }
    }
    let n = out.instance.n();
    for (i, e) in out.layout.elements.iter().enumerate() {
        let (part, x) = (i / n, i % n);
        let sep = out
            .layout
            .triples
            .iter()
            .filter(|tg| tg.triple[part] == x)
            .map(|tg| element_separator(tg, part))
            .collect();
        gadgets.push((format!("{}{x}:D", ["a", "b", "c"][part]), &e.gadget));
        pairs.push((format!("{}{x}", ["a", "b", "c"][part]), e, sep));
    }
    // Transmitter pairs are checked in `audit_transmitter`; their
    // gadgets still need the all-or-nothing check.
    for (label, ids) in &gadgets {
        problems.extend(audit_gadget(m, ids, label));
    }
    for (label, pair, designated) in pairs {
        problems.extend(audit_pair(m, pair, designated, &label));
    }
    problems
}

fn audit_gadget(m: &IntModel, ids: &[usize], label: &str) -> Option<String> {
    let lo = ids.iter().map(|&i| *m.left(i)).min()?;
    let hi = ids.iter().map(|&i| *m.right(i)).max()?;
    (0..m.n())
        .filter(|x| !ids.contains(x))
        .find(|&x| {
            let meets = ids.iter().any(|&i| m.intersects(x, i));
            let covers = *m.left(x) < lo && *m.right(x) > hi;
            meets && !covers
        })
        .map(|x| format!("{label}: interval {x} meets the gadget without containing it"))
}

fn audit_pair(m: &IntModel, pair: &ChoicePair, mut designated: Vec<usize>, label: &str) -> Vec<String> {
    let mut problems = Vec::new();
    let (a, b) = (pair.first, pair.second);
    if !m.intersects(a, b) || m.contains(a, b) || m.contains(b, a) {
        problems.push(format!("{label}: not an overlapping non-nested pair"));
    }
    if !pair.gadget.iter().all(|&x| m.contains(a, x) && m.contains(b, x)) {
        problems.push(format!("{label}: pair does not contain its gadget"));
    }
    designated.sort_unstable();
    let actual = separators(m, a, b);
    if actual != designated {
        problems.push(format!("{label}: separators {actual:?}, designated {designated:?}"));
    }
    problems
}

fn audit_transmitter(m: &IntModel, tr: &Transmitter, label: &str) -> Vec<String> {
    let mut problems = Vec::new();
    let path = [tr.u, tr.uv1, tr.uv2, tr.v, tr.vw1, tr.vw2, tr.w];
    for (i, &x) in path.iter().enumerate() {
        for (j, &y) in path.iter().enumerate().skip(i + 1) {
            if m.intersects(x, y) != (j == i + 1) {
                problems.push(format!("{label}: path intervals {x} and {y} break the 7-vertex path"));
            }
        }
    }
    let owners: [&[usize]; 5] = [&[tr.u], &[tr.uv1, tr.uv2], &[tr.v], &[tr.vw1, tr.vw2], &[tr.w]];
    for ((g, own), name) in tr.gadgets.iter().zip(owners).zip(TR_GADGETS) {
        for &x in &path {
            let meets = g.iter().any(|&i| m.intersects(x, i));
            if meets != own.contains(&x) {
                problems.push(format!("{label}: interval {x} and D({name}) disagree with the design"));
            }
        }
    }
    problems.extend(audit_pair(m, &tr.uv(), vec![tr.u, tr.v], &format!("{label}:uv")));
    problems.extend(audit_pair(m, &tr.vw(), vec![tr.v, tr.w], &format!("{label}:vw")));
    problems
}

/// The standard solution for a perfect matching: matched triples use
/// their non-tight form, the others their tight form, and every element
/// gadget its standard set.
pub fn standard_solution(out: &ReductionOutput, matching: &[usize]) -> Result<VertexSet> {
    out.instance.check_perfect_matching(matching)?;
    let kind = out.gadget;
    let mut s = Vec::with_capacity(out.expected_solution_size);
    for (t, tg) in out.layout.triples.iter().enumerate() {
        s.extend(tg.standard(kind, matching.contains(&t)));
    }
    for e in &out.layout.elements {
        s.extend(gadget_standard(&e.gadget, kind));
    }
    let set = VertexSet::new(out.model.n(), s)?;
    debug_assert_eq!(set.len(), out.expected_solution_size);
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::is_valid;

    fn single() -> ThreeDMInstance {
        ThreeDMInstance::new(1, vec![[0, 0, 0]]).unwrap()
    }

    #[test]
    fn smallest_reduction_counts() {
        let out = build_reduction(&single(), GadgetKind::P4Ld).unwrap();
        assert_eq!(out.model.n(), 177);
        assert_eq!(out.expected_solution_size, 72);
        let s = standard_solution(&out, &[0]).unwrap();
        assert_eq!(s.len(), 72);
        assert!(is_valid(&out.model.build_graph(), out.gadget.problem(), &s));
        assert!(out.layout.elements.iter().all(|e| *out.model.left(e.first) >= 0));
        assert!(*out.model.right(out.layout.triples[0].p.second) < 0);
    }

    #[test]
    fn every_kind_certifies_a_small_yes_instance() {
        let inst = ThreeDMInstance::new(2, vec![[0, 1, 1], [1, 0, 0], [0, 0, 1]]).unwrap();
        for kind in GadgetKind::ALL {
            let out = build_reduction(&inst, kind).unwrap();
            let s = standard_solution(&out, &[0, 1]).unwrap();
            assert_eq!(s.len(), size_formula(kind, 2, 3));
            assert!(is_valid(&out.model.build_graph(), kind.problem(), &s), "{kind}");
            assert!(matches!(standard_solution(&out, &[1, 2]), Err(Error::NotPerfectMatching(_))));
        }
    }

    #[test]
    fn only_element_transmitters_can_be_relaxed() {
        // With one triple, each element pair is separated only by one `w`
        // of that triple, so exactly the tight/non-tight assignments that
        // make Tr(s,a), Tr(p,r,b) and Tr(q,r,c) non-tight are valid.
        let out = build_reduction(&single(), GadgetKind::P4Ld).unwrap();
        let g = out.model.build_graph();
        let kind = out.gadget;
        let tg = &out.layout.triples[0];
        let trs = tg.transmitters();
        for mask in 0u32..32 {
            let mut s: Vec<usize> = out.layout.elements.iter().flat_map(|e| gadget_standard(&e.gadget, kind)).collect();
            for (_, pair) in tg.pairs() {
                s.extend(gadget_standard(&pair.gadget, kind));
            }
            for (i, (_, tr)) in trs.iter().enumerate() {
                s.extend(if mask >> i & 1 == 1 { tr.non_tight(kind) } else { tr.tight(kind) });
            }
            let valid = is_valid(&g, kind.problem(), &VertexSet::new(g.n(), s).unwrap());
            assert_eq!(valid, mask & 0b11100 == 0b11100, "mask {mask:05b}");
        }
    }

    #[test]
    fn roles_name_every_component() {
        let out = build_reduction(&single(), GadgetKind::P5Id).unwrap();
        let tg = &out.layout.triples[0];
        assert_eq!(out.roles[tg.p.first], "T0:p1");
        assert_eq!(out.roles[tg.prb.uv2], "T0:Tr(p,r,b):uv2");
        assert_eq!(out.roles[tg.qrc.gadgets[3][4]], "T0:Tr(q,r,c):D(vw):x5");
        assert_eq!(out.roles[out.layout.elements[2].second], "c0:g");
    }
}
