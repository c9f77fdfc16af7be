//! Acyclic coloring from 6-lists for graphs with mad < 3, by peeling
//! 1⁻-vertices and 2-vertices with a 5⁻-neighbor. A graph with mad < 3
//! and δ = 2 always has the latter, so the peeling never stalls.

use super::{validate, Color, ColorError, Coloring, Kind, ListAssignment};
use crate::config::find_two_with_low_neighbor;
use crate::density::mad;
use crate::graph::Graph;
use crate::rational::rat_int;
use std::collections::{BTreeMap, BTreeSet};

enum Frame {
    Leaf(u32),
    /// 2-vertex with its 5⁻-neighbor and its other neighbor.
    TwoVertex { v: u32, low: u32, other: u32 },
}

/// Acyclic list coloring from lists of size ≥ 6, for mad < 3.
pub fn acyclic_6list(g: &Graph, lists: &ListAssignment) -> Result<Coloring, ColorError> {
    if !g.simple() {
        return Err(ColorError::Hypothesis("needs a simple graph".into()));
    }
    if g.vertices().any(|v| lists.get(v).len() < 6) {
        return Err(ColorError::Hypothesis("every list must have size >= 6".into()));
    }
    if g.n() > 0 {
        let m = mad(g)
            .map_err(|e| ColorError::Hypothesis(e.to_string()))?
            .value;
        if m >= rat_int(3) {
            return Err(ColorError::Hypothesis(format!("mad = {m} is not below 3")));
        }
    }

    let mut cur = g.clone();
    let mut stack = Vec::new();
    while cur.n() > 0 {
        let leaf = cur.vertices().find(|&v| cur.degree(v) <= 1);
        if let Some(v) = leaf {
            stack.push(Frame::Leaf(v));
            cur = cur.remove_vertices(&BTreeSet::from([v]));
            continue;
        }
        if let Some((v, low)) = find_two_with_low_neighbor(&cur, 5) {
            let other = cur.neighbor_set(v).into_iter().find(|&x| x != low).unwrap();
            stack.push(Frame::TwoVertex { v, low, other });
            cur = cur.remove_vertices(&BTreeSet::from([v]));
            continue;
        }
        return Err(ColorError::InvariantViolation(
            "no 2-vertex with a 5⁻-neighbor below mad 3".into(),
        ));
    }

    let mut phi: BTreeMap<u32, Color> = BTreeMap::new();
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Leaf(v) => {
                let avoid: BTreeSet<Color> =
                    g.neighbors(v).filter_map(|u| phi.get(&u).copied()).collect();
                let c = lists
                    .get(v)
                    .iter()
                    .copied()
                    .find(|c| !avoid.contains(c))
                    .expect("6-list survives one neighbor");
                phi.insert(v, c);
            }
            Frame::TwoVertex { v, low, other } => {
                let (cl, co) = (phi[&low], phi[&other]);
                let avoid: BTreeSet<Color> = if cl != co {
                    [cl, co].into()
                } else {
                    // equal neighbor colors: also dodge the low-degree
                    // neighbor's other colored neighbors, killing any
                    // 2-colored cycle through v
                    let mut a: BTreeSet<Color> = [cl].into();
                    for u in g.neighbor_set(low) {
                        if u != v {
                            if let Some(&c) = phi.get(&u) {
                                a.insert(c);
                            }
                        }
                    }
                    a
                };
                let c = lists
                    .get(v)
                    .iter()
                    .copied()
                    .find(|c| !avoid.contains(c))
                    .ok_or_else(|| {
                        ColorError::InvariantViolation("6-list exhausted at a 2-vertex".into())
                    })?;
                phi.insert(v, c);
            }
        }
    }

    let coloring = Coloring::vertex_only(Kind::Acyclic, phi);
    validate(g, &coloring)
        .map_err(|v| ColorError::InvariantViolation(format!("output failed validation: {v}")))?;
    Ok(coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn six_lists(g: &Graph) -> ListAssignment {
        ListAssignment::uniform(g, &[0, 1, 2, 3, 4, 5])
    }

    #[test]
    fn trees_and_cycles() {
        let t = generate::path(7);
        assert!(acyclic_6list(&t, &six_lists(&t)).is_ok());
        let c5 = generate::cycle(5);
        assert!(acyclic_6list(&c5, &six_lists(&c5)).is_ok());
    }

    #[test]
    fn theta_graph() {
        // two vertices joined by three paths of length 3
        let g = Graph::from_edges(&[
            (0, 2),
            (2, 3),
            (3, 1),
            (0, 4),
            (4, 5),
            (5, 1),
            (0, 6),
            (6, 7),
            (7, 1),
        ]);
        let c = acyclic_6list(&g, &six_lists(&g)).unwrap();
        assert!(validate(&g, &c).is_ok());
    }

    #[test]
    fn dense_rejected() {
        let g = generate::complete(5);
        assert!(matches!(
            acyclic_6list(&g, &six_lists(&g)),
            Err(ColorError::Hypothesis(_))
        ));
    }
}
