//! Colorers with direct extension arguments: list coloring of cycles,
//! greedy coloring along an elimination order, and the composition of a
//! 4-vertex-coloring with a Δ-edge-coloring into a (Δ+2)-total-coloring.

use super::{validate, Color, ColorError, Coloring, Kind, ListAssignment};
use crate::density::degeneracy;
use crate::graph::Graph;
use std::collections::{BTreeMap, BTreeSet};

/// Colors a cyclic sequence from per-position lists so that consecutive
/// positions differ. Complete for even length; for odd length succeeds
/// exactly when the lists are not all one identical pair.
fn color_cyclic_sequence(lists: &[Vec<Color>]) -> Option<Vec<Color>> {
    let n = lists.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if n == 1 {
        return lists[0].first().map(|&c| vec![c]);
    }
    // an adjacent pair (i, i+1) where position i has a color missing from
    // the next list breaks the symmetry
    for i in 0..n {
        let j = (i + 1) % n;
        let free = lists[i].iter().find(|c| !lists[j].contains(c));
        if let Some(&c) = free {
            let mut out = vec![u32::MAX; n];
            out[i] = c;
            // fill the path away from i, ending at j: each position avoids
            // its already-colored neighbor, and the closing edge (i, j) is
            // satisfied because c is not in lists[j]
            let mut prev = c;
            for step in 1..n {
                let pos = (i + n - step) % n;
                let pick = *lists[pos].iter().find(|&&x| x != prev)?;
                out[pos] = pick;
                prev = pick;
            }
            return Some(out);
        }
    }
    // all lists are the same set
    let common = &lists[0];
    if n % 2 == 0 {
        let (a, b) = (common[0], common[1]);
        return Some((0..n).map(|i| if i % 2 == 0 { a } else { b }).collect());
    }
    if common.len() >= 3 {
        let (a, b, c) = (common[0], common[1], common[2]);
        let mut out: Vec<Color> = (0..n - 1).map(|i| if i % 2 == 0 { a } else { b }).collect();
        out.push(c);
        return Some(out);
    }
    None
}

/// Proper list coloring of a cycle graph. Always succeeds on even cycles
/// (2-choosability); on odd cycles succeeds iff the lists are not all one
/// identical 2-set.
pub fn list_color_even_cycle(g: &Graph, lists: &ListAssignment) -> Result<Coloring, ColorError> {
    let n = g.n();
    if n < 3 || g.m() != n || g.vertices().any(|v| g.degree(v) != 2) || !g.is_connected() {
        return Err(ColorError::Hypothesis("input is not a cycle".into()));
    }
    if lists.min_size() < 2 {
        return Err(ColorError::Hypothesis("every list must have size >= 2".into()));
    }
    // cyclic vertex order by walking
    let start = g.vertices().next().unwrap();
    let mut order = vec![start];
    let mut prev_edge = usize::MAX;
    let mut cur = start;
    loop {
        let inc = g.incidences(cur);
        let &(next, e) = inc.iter().find(|&&(_, e)| e != prev_edge).unwrap();
        if next == start {
            break;
        }
        order.push(next);
        prev_edge = e;
        cur = next;
    }
    let seq_lists: Vec<Vec<Color>> = order.iter().map(|&v| lists.get(v).to_vec()).collect();
    match color_cyclic_sequence(&seq_lists) {
        Some(cols) => {
            let vertex: BTreeMap<u32, Color> = order.into_iter().zip(cols).collect();
            let c = Coloring::vertex_only(Kind::Proper, vertex);
            debug_assert!(validate(g, &c).is_ok());
            Ok(c)
        }
        None => Err(ColorError::Infeasible(
            "odd cycle with identical 2-lists".into(),
        )),
    }
}

/// Proper k-coloring by greedy coloring along the reverse min-degree
/// elimination order; works whenever the graph is (k−1)-degenerate.
pub fn degeneracy_color(g: &Graph, k: usize) -> Result<Coloring, ColorError> {
    let (d, order) = degeneracy(g);
    if d + 1 > k {
        return Err(ColorError::Hypothesis(format!(
            "degeneracy {d} needs at least {} colors, got {k}",
            d + 1
        )));
    }
    let mut vertex: BTreeMap<u32, Color> = BTreeMap::new();
    for &v in order.iter().rev() {
        let used: BTreeSet<Color> = g
            .neighbors(v)
            .filter_map(|u| vertex.get(&u).copied())
            .collect();
        let c = (0..k as Color).find(|c| !used.contains(c)).ok_or_else(|| {
            ColorError::InvariantViolation("greedy ran out of colors".into())
        })?;
        vertex.insert(v, c);
    }
    Ok(Coloring::vertex_only(Kind::Proper, vertex))
}

/// Composes a proper vertex coloring with colors in {1..4} and a proper
/// edge coloring with exactly Δ classes into a total coloring with at most
/// Δ+2 colors: edge classes are relabeled onto {3..Δ+2}, the classes
/// landing on 3 and 4 are uncolored, and the leftover paths and even
/// cycles are recolored from {1,2,3,4} minus the endpoint colors.
pub fn total_compose(
    g: &Graph,
    vc: &Coloring,
    ec: &BTreeMap<(u32, u32), Color>,
) -> Result<Coloring, ColorError> {
    if !g.simple() {
        return Err(ColorError::Hypothesis("total coloring needs a simple graph".into()));
    }
    let proper = Coloring::vertex_only(Kind::Proper, vc.vertex.clone());
    validate(g, &proper).map_err(ColorError::BadInput)?;
    if proper.vertex.values().any(|&c| !(1..=4).contains(&c)) {
        return Err(ColorError::Hypothesis("vertex colors must lie in {1..4}".into()));
    }
    let delta = g.max_degree() as u32;
    // check the edge coloring and collect its classes
    let mut classes: BTreeMap<Color, Vec<(u32, u32)>> = BTreeMap::new();
    for &(u, v) in g.edges() {
        let key = (u.min(v), u.max(v));
        let c = *ec
            .get(&key)
            .ok_or(ColorError::BadInput(super::Violation::UncoloredEdge(key.0, key.1)))?;
        classes.entry(c).or_default().push(key);
    }
    for v in g.vertices() {
        let mut seen = BTreeSet::new();
        for u in g.neighbor_set(v) {
            let c = ec[&(u.min(v), u.max(v))];
            if !seen.insert(c) {
                return Err(ColorError::BadInput(super::Violation::EdgePair(v)));
            }
        }
    }
    if classes.len() != delta as usize {
        return Err(ColorError::Hypothesis(format!(
            "edge coloring uses {} classes, need exactly Δ = {delta}",
            classes.len()
        )));
    }
    // relabel classes to 3..Δ+2, ordered by smallest edge
    let mut ordered: Vec<(Color, Vec<(u32, u32)>)> = classes.into_iter().collect();
    ordered.sort_by_key(|(_, es)| *es.iter().min().unwrap());
    let mut edge: BTreeMap<(u32, u32), Color> = BTreeMap::new();
    for (i, (_, es)) in ordered.into_iter().enumerate() {
        for e in es {
            edge.insert(e, 3 + i as u32);
        }
    }
    // uncolor classes 3 and 4 and recolor them from lists
    let loose: Vec<(u32, u32)> = edge
        .iter()
        .filter(|&(_, &c)| c == 3 || c == 4)
        .map(|(&e, _)| e)
        .collect();
    let mut sub = Graph::new();
    for &(u, v) in &loose {
        sub.add_edge(u, v);
        edge.remove(&(u, v));
    }
    let list_of = |u: u32, v: u32| -> Vec<Color> {
        (1..=4u32)
            .filter(|&c| c != proper.vertex[&u] && c != proper.vertex[&v])
            .collect()
    };
    // the loose subgraph has max degree <= 2: paths and even cycles
    let mut done: BTreeSet<(u32, u32)> = BTreeSet::new();
    for &start_edge in &loose {
        if done.contains(&start_edge) {
            continue;
        }
        // collect this component's edges as a walk of edges
        let comp_vs = sub.component_of(start_edge.0);
        let comp_edges: Vec<(u32, u32)> = loose
            .iter()
            .copied()
            .filter(|(u, _)| comp_vs.contains(u))
            .collect();
        let endpoints: Vec<u32> = comp_vs
            .iter()
            .copied()
            .filter(|&v| sub.degree(v) == 1)
            .collect();
        let is_cycle = endpoints.is_empty();
        // orient the component into an edge sequence
        let anchor = if is_cycle {
            *comp_vs.iter().next().unwrap()
        } else {
            endpoints[0]
        };
        let mut seq: Vec<(u32, u32)> = Vec::with_capacity(comp_edges.len());
        let mut cur = anchor;
        let mut via = usize::MAX;
        loop {
            let step = sub
                .incidences(cur)
                .iter()
                .copied()
                .find(|&(_, e)| e != via);
            let Some((next, e)) = step else { break };
            seq.push((cur.min(next), cur.max(next)));
            cur = next;
            via = e;
            if seq.len() == comp_edges.len() {
                break;
            }
        }
        let lists: Vec<Vec<Color>> = seq.iter().map(|&(u, v)| list_of(u, v)).collect();
        let cols = if is_cycle {
            color_cyclic_sequence(&lists).ok_or_else(|| {
                ColorError::InvariantViolation("uncolored cycle not 2-list-colorable".into())
            })?
        } else {
            // path of edges: greedy, always fine with lists of size >= 2
            let mut prev = u32::MAX;
            let mut out = Vec::with_capacity(lists.len());
            for l in &lists {
                let pick = *l.iter().find(|&&c| c != prev).ok_or_else(|| {
                    ColorError::InvariantViolation("path recoloring ran dry".into())
                })?;
                out.push(pick);
                prev = pick;
            }
            out
        };
        for (e, c) in seq.iter().zip(cols) {
            edge.insert(*e, c);
            done.insert(*e);
        }
    }
    let total = Coloring {
        kind: Kind::Total,
        vertex: proper.vertex,
        edge,
    };
    validate(g, &total).map_err(|v| {
        ColorError::InvariantViolation(format!("composed total coloring invalid: {v}"))
    })?;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn even_cycle_identical_lists() {
        let g = generate::cycle(4);
        let l = ListAssignment::uniform(&g, &[1, 2]);
        let c = list_color_even_cycle(&g, &l).unwrap();
        assert_eq!(c.vertex[&0], 1);
        assert_eq!(c.vertex[&1], 2);
        assert_eq!(c.vertex[&2], 1);
        assert_eq!(c.vertex[&3], 2);
    }

    #[test]
    fn even_cycle_mixed_lists() {
        let g = generate::cycle(4);
        let lists = ListAssignment {
            lists: [(0, vec![1, 2]), (1, vec![2, 3]), (2, vec![3, 4]), (3, vec![4, 1])].into(),
        };
        let c = list_color_even_cycle(&g, &lists).unwrap();
        assert!(validate(&g, &c).is_ok());
        for v in 0..4u32 {
            assert!(lists.lists[&v].contains(&c.vertex[&v]));
        }
    }

    #[test]
    fn odd_cycle_cases() {
        let g = generate::cycle(3);
        let l = ListAssignment::uniform(&g, &[1, 2]);
        assert!(matches!(
            list_color_even_cycle(&g, &l),
            Err(ColorError::Infeasible(_))
        ));
        let l3 = ListAssignment::uniform(&g, &[1, 2, 3]);
        assert!(list_color_even_cycle(&g, &l3).is_ok());
        // asymmetric lists rescue an odd cycle
        let asym = ListAssignment {
            lists: [(0, vec![1, 2]), (1, vec![2, 3]), (2, vec![1, 3])].into(),
        };
        let c = list_color_even_cycle(&g, &asym).unwrap();
        assert!(validate(&g, &c).is_ok());
    }

    #[test]
    fn degeneracy_colorings() {
        let tree = generate::path(6);
        assert!(degeneracy_color(&tree, 2).is_ok());
        assert!(degeneracy_color(&generate::complete(4), 4).is_ok());
        assert!(degeneracy_color(&generate::complete(4), 3).is_err());
        let pet = generate::petersen();
        let c = degeneracy_color(&pet, 4).unwrap();
        assert!(validate(&pet, &c).is_ok());
    }

    #[test]
    fn total_k4_is_five_colors() {
        let g = generate::complete(4);
        let vc = Coloring::vertex_only(Kind::Proper, [(0, 1), (1, 2), (2, 3), (3, 4)].into());
        // proper 3-edge-coloring of K4: three perfect matchings
        let ec: BTreeMap<(u32, u32), Color> = [
            ((0, 1), 10),
            ((2, 3), 10),
            ((0, 2), 11),
            ((1, 3), 11),
            ((0, 3), 12),
            ((1, 2), 12),
        ]
        .into();
        let total = total_compose(&g, &vc, &ec).unwrap();
        assert!(validate(&g, &total).is_ok());
        assert!(total.colors_used().len() <= 5);
        assert!(total.colors_used().iter().all(|&c| (1..=5).contains(&c)));
    }

    #[test]
    fn total_single_edge() {
        let g = Graph::from_edges(&[(0, 1)]);
        let vc = Coloring::vertex_only(Kind::Proper, [(0, 1), (1, 2)].into());
        let ec: BTreeMap<(u32, u32), Color> = [((0, 1), 9)].into();
        let total = total_compose(&g, &vc, &ec).unwrap();
        assert!(validate(&g, &total).is_ok());
        assert!(total.colors_used().len() <= 3);
    }

    #[test]
    fn total_c4_from_two_colorings() {
        let g = generate::cycle(4);
        let vc = Coloring::vertex_only(Kind::Proper, [(0, 1), (1, 2), (2, 1), (3, 2)].into());
        let ec: BTreeMap<(u32, u32), Color> =
            [((0, 1), 0), ((2, 3), 0), ((1, 2), 1), ((0, 3), 1)].into();
        let total = total_compose(&g, &vc, &ec).unwrap();
        assert!(validate(&g, &total).is_ok());
        assert!(total.colors_used().len() <= 4);
    }
}
