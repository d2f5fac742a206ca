//! Exhaustive checkers shared by the property tests and the acceptance run.
//! Each returns the number of instances checked, or the first violation.
#![allow(dead_code)]

use distinguish::decomposition::{build_path_decomposition, Event};
use distinguish::graph::all_pairs_distances;
use distinguish::structure::{Direction, DirectionalPath, PathOracle};
use distinguish::{IntModel, INFINITY};

pub type Check = Result<usize, String>;

fn paths(m: &IntModel, dir: Direction) -> Vec<DirectionalPath> {
    let g = m.build_graph();
    let oracle = PathOracle::new(m, &g);
    (0..m.n()).map(|u| oracle.path(u, dir)).collect()
}

fn plus(d: u32, i: usize) -> u32 {
    if d == INFINITY {
        INFINITY
    } else {
        d + i as u32
    }
}

/// Distances through the first steps of a rightmost (leftmost) path.
pub fn distance_through_paths(m: &IntModel) -> Check {
    let dist = all_pairs_distances(&m.build_graph());
    let mut checked = 0;
    for dir in [Direction::Right, Direction::Left] {
        for p in paths(m, dir) {
            let u = p.origin;
            for i in 1..=p.len() {
                let (prev, cur) = (p.step(i - 1).unwrap(), p.step(i).unwrap());
                for v in 0..m.n() {
                    let beyond = match dir {
                        Direction::Right => m.left(v) > m.right(prev),
                        Direction::Left => m.right(v) < m.left(prev),
                    };
                    if !beyond {
                        continue;
                    }
                    checked += 1;
                    if dist.get(u, v) != plus(dist.get(cur, v), i) {
                        return Err(format!("{dir:?}: u={u} v={v} i={i}"));
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// Walking both endpoints of a pair along their paths never increases
/// their distance.
pub fn paths_do_not_diverge(m: &IntModel) -> Check {
    let dist = all_pairs_distances(&m.build_graph());
    let mut checked = 0;
    for dir in [Direction::Right, Direction::Left] {
        let ps = paths(m, dir);
        for u in 0..m.n() {
            for v in u + 1..m.n() {
                let common = ps[u].len().min(ps[v].len());
                for i in 0..=common {
                    checked += 1;
                    let (a, b) = (ps[u].step(i).unwrap(), ps[v].step(i).unwrap());
                    if dist.get(a, b) > dist.get(u, v) {
                        return Err(format!("{dir:?}: u={u} v={v} i={i}"));
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// A vertex strictly beyond the `i`-th steps separates them iff it
/// separates every earlier pair of steps.
pub fn separation_propagates(m: &IntModel) -> Check {
    let dist = all_pairs_distances(&m.build_graph());
    let mut checked = 0;
    for dir in [Direction::Right, Direction::Left] {
        let ps = paths(m, dir);
        for u in 0..m.n() {
            for v in u + 1..m.n() {
                let common = ps[u].len().min(ps[v].len());
                for i in 0..=common {
                    let (ui, vi) = (ps[u].step(i).unwrap(), ps[v].step(i).unwrap());
                    for x in 0..m.n() {
                        let beyond = match dir {
                            Direction::Right => m.left(x) > m.right(ui) && m.left(x) > m.right(vi),
                            Direction::Left => m.right(x) < m.left(ui) && m.right(x) < m.left(vi),
                        };
                        if !beyond {
                            continue;
                        }
                        checked += 1;
                        let sep = |a: usize, b: usize| dist.get(x, a) != dist.get(x, b);
                        let at_i = sep(ui, vi);
                        if let Some(j) = (0..i).find(|&j| sep(ps[u].step(j).unwrap(), ps[v].step(j).unwrap()) != at_i) {
                            return Err(format!("{dir:?}: u={u} v={v} x={x} i={i} j={j}"));
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// In the decomposition of the fourth power, an introduced vertex meets
/// all earlier-starting vertices within distance 4, and a forgotten vertex
/// leaves behind all later-ending ones.
pub fn power_bags_are_local(m: &IntModel) -> Check {
    let dist = all_pairs_distances(&m.build_graph());
    let dec = build_path_decomposition(&m.power_model(4).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (t, e) in dec.events().iter().enumerate() {
        let v = e.vertex();
        let (bag, wanted): (&[usize], Box<dyn Fn(usize) -> bool>) = if e.is_introduce() {
            (dec.bag(t), Box::new(|w| m.rank_left(w) < m.rank_left(v)))
        } else {
            (dec.bag(t - 1), Box::new(|w| m.rank_right(w) > m.rank_right(v)))
        };
        for w in (0..m.n()).filter(|&w| w != v && dist.get(v, w) <= 4 && wanted(w)) {
            checked += 1;
            if !bag.contains(&w) {
                return Err(format!("event {t} ({e:?}) misses {w}"));
            }
        }
    }
    Ok(checked)
}

/// Bags are cliques, the largest bag equals the stabbing number, and
/// introduces and forgets follow the left and right endpoint orders.
pub fn decomposition_contract(m: &IntModel) -> Check {
    let dec = build_path_decomposition(m).map_err(|e| e.to_string())?;
    let g = m.build_graph();
    for (t, bag) in dec.bags().iter().enumerate() {
        for (i, &a) in bag.iter().enumerate() {
            if let Some(&b) = bag[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                return Err(format!("bag {t}: {a} and {b} are not adjacent"));
            }
        }
    }
    if dec.max_bag() != m.max_stabbing() {
        return Err(format!("largest bag {} but stabbing number {}", dec.max_bag(), m.max_stabbing()));
    }
    let introduced: Vec<usize> = dec.events().iter().filter(|e| e.is_introduce()).map(|e| e.vertex()).collect();
    let forgotten: Vec<usize> = dec
        .events()
        .iter()
        .filter(|e| matches!(e, Event::Forget(_) | Event::Root(_)))
        .map(|e| e.vertex())
        .collect();
    if introduced != m.order_left() {
        return Err("introduce order differs from the left-endpoint order".into());
    }
    if forgotten != m.order_right() {
        return Err("forget order differs from the right-endpoint order".into());
    }
    Ok(dec.len())
}
