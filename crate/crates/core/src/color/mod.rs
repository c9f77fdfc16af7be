//! Coloring kinds, exact validators with violation witnesses, and the
//! constructive colorers built from the reducibility arguments.

mod acyclic;
mod basic;
mod circular;
mod improper;
mod partition;
mod square;

pub use acyclic::acyclic_6list;
pub use basic::{degeneracy_color, list_color_even_cycle, total_compose};
pub use circular::{circular_color, extend_thread, CircularPalette, ThreadExtension};
pub use improper::improper_2list;
pub use partition::{if_partition, star_color4};
pub use square::square_color_planar;

use crate::graph::Graph;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub type Color = u32;

/// Which validity predicate a coloring claims to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Proper,
    /// Homomorphism into the circular clique K_{p:q}.
    Circular { p: u32, q: u32 },
    /// Vertices with a common neighbor get distinct colors.
    Injective,
    /// Proper with no 2-colored cycle.
    Acyclic,
    /// Proper with no 2-colored 4-vertex path.
    Star,
    /// Acyclic with every 2-colored component of max degree ≤ 2.
    Linear,
    /// Each vertex has at most d neighbors of its own color.
    Improper(usize),
    /// Vertices and edges colored; adjacent or incident elements differ.
    Total,
    /// Color 0 is a 2-independent set, color 1 induces a forest.
    IfPartition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub kind: Kind,
    pub vertex: BTreeMap<u32, Color>,
    /// Edge colors keyed by canonical endpoint pair; used by Total.
    pub edge: BTreeMap<(u32, u32), Color>,
}

impl Coloring {
    pub fn vertex_only(kind: Kind, vertex: BTreeMap<u32, Color>) -> Self {
        Coloring {
            kind,
            vertex,
            edge: BTreeMap::new(),
        }
    }

    pub fn colors_used(&self) -> BTreeSet<Color> {
        self.vertex
            .values()
            .chain(self.edge.values())
            .copied()
            .collect()
    }
}

/// A violated constraint, with the offending elements.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex {0} has no color")]
    Uncolored(u32),
    #[error("edge {0}-{1} has no color")]
    UncoloredEdge(u32, u32),
    #[error("edge {0}-{1} joins equal colors")]
    Edge(u32, u32),
    #[error("edge {0}-{1} violates the circular distance bound")]
    CircularEdge(u32, u32),
    #[error("vertices {0} and {1} share color and the neighbor {2}")]
    DistanceTwo(u32, u32, u32),
    #[error("2-colored cycle {0:?}")]
    BicoloredCycle(Vec<u32>),
    #[error("2-colored path {0:?}")]
    BicoloredPath([u32; 4]),
    #[error("2-colored component at {0} has a vertex of degree > 2")]
    BicoloredDegree(u32),
    #[error("vertex {0} has {1} neighbors of its own color, allowed {2}")]
    TooImproper(u32, usize, usize),
    #[error("incident elements at edge {0}-{1} share a color")]
    Incidence(u32, u32),
    #[error("adjacent edges at {0} share a color")]
    EdgePair(u32),
    #[error("vertices {0} and {1} of the independent part are within distance 2")]
    NotTwoIndependent(u32, u32),
    #[error("the forest part contains the cycle {0:?}")]
    ForestCycle(Vec<u32>),
    #[error("loops cannot be colored")]
    Loop,
}

/// Checks a coloring against its kind's definition. Exact; returns the
/// first witness found in deterministic order.
pub fn validate(g: &Graph, c: &Coloring) -> Result<(), Violation> {
    if g.edges().iter().any(|&(u, v)| u == v) {
        return Err(Violation::Loop);
    }
    for v in g.vertices() {
        if !c.vertex.contains_key(&v) {
            return Err(Violation::Uncolored(v));
        }
    }
    let col = |v: u32| c.vertex[&v];
    match c.kind {
        Kind::Proper => check_proper(g, c),
        Kind::Circular { p, q } => {
            for &(u, v) in g.edges() {
                let d = (col(u) as i64 - col(v) as i64).rem_euclid(p as i64) as u32;
                if d < q || d > p - q {
                    return Err(Violation::CircularEdge(u.min(v), u.max(v)));
                }
            }
            Ok(())
        }
        Kind::Injective => {
            for w in g.vertices() {
                let nbrs: Vec<u32> = g.neighbor_set(w).into_iter().collect();
                for i in 0..nbrs.len() {
                    for j in i + 1..nbrs.len() {
                        if col(nbrs[i]) == col(nbrs[j]) {
                            return Err(Violation::DistanceTwo(nbrs[i], nbrs[j], w));
                        }
                    }
                }
            }
            Ok(())
        }
        Kind::Acyclic => {
            check_proper(g, c)?;
            check_no_bicolored_cycle(g, c)
        }
        Kind::Star => {
            check_proper(g, c)?;
            check_no_bicolored_p4(g, c)
        }
        Kind::Linear => {
            check_proper(g, c)?;
            // bicolored unions must be disjoint paths
            for &(u, v) in g.edges() {
                let pair = (col(u), col(v));
                for x in [u, v] {
                    let deg2 = g
                        .neighbor_set(x)
                        .into_iter()
                        .filter(|&y| {
                            let p = (col(x), col(y));
                            p == pair || p == (pair.1, pair.0)
                        })
                        .count();
                    if deg2 > 2 {
                        return Err(Violation::BicoloredDegree(x));
                    }
                }
            }
            check_no_bicolored_cycle(g, c)
        }
        Kind::Improper(d) => {
            for v in g.vertices() {
                let same = g.neighbors(v).filter(|&u| u != v && col(u) == col(v)).count();
                if same > d {
                    return Err(Violation::TooImproper(v, same, d));
                }
            }
            Ok(())
        }
        Kind::Total => {
            check_proper(g, c)?;
            let ecol = |u: u32, v: u32| -> Result<Color, Violation> {
                c.edge
                    .get(&(u.min(v), u.max(v)))
                    .copied()
                    .ok_or(Violation::UncoloredEdge(u.min(v), u.max(v)))
            };
            for &(u, v) in g.edges() {
                let ec = ecol(u, v)?;
                if ec == col(u) || ec == col(v) {
                    return Err(Violation::Incidence(u.min(v), u.max(v)));
                }
            }
            for v in g.vertices() {
                let mut seen = BTreeSet::new();
                for u in g.neighbor_set(v) {
                    if !seen.insert(ecol(u, v)?) {
                        return Err(Violation::EdgePair(v));
                    }
                }
            }
            Ok(())
        }
        Kind::IfPartition => {
            let ind: BTreeSet<u32> = g.vertices().filter(|&v| col(v) == 0).collect();
            for &v in &ind {
                for w in g.ball(v, 2) {
                    if w != v && ind.contains(&w) {
                        return Err(Violation::NotTwoIndependent(v.min(w), v.max(w)));
                    }
                }
            }
            let forest: BTreeSet<u32> = g.vertices().filter(|&v| col(v) == 1).collect();
            match find_cycle_within(g, &forest) {
                Some(cyc) => Err(Violation::ForestCycle(cyc)),
                None => Ok(()),
            }
        }
    }
}

fn check_proper(g: &Graph, c: &Coloring) -> Result<(), Violation> {
    for &(u, v) in g.edges() {
        if u != v && c.vertex[&u] == c.vertex[&v] {
            return Err(Violation::Edge(u.min(v), u.max(v)));
        }
    }
    Ok(())
}

fn check_no_bicolored_cycle(g: &Graph, c: &Coloring) -> Result<(), Violation> {
    let pairs: BTreeSet<(Color, Color)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (c.vertex[&u], c.vertex[&v]);
            (a.min(b), a.max(b))
        })
        .collect();
    for (a, b) in pairs {
        let set: BTreeSet<u32> = g
            .vertices()
            .filter(|&v| c.vertex[&v] == a || c.vertex[&v] == b)
            .collect();
        if let Some(cyc) = find_cycle_within(g, &set) {
            return Err(Violation::BicoloredCycle(cyc));
        }
    }
    Ok(())
}

fn check_no_bicolored_p4(g: &Graph, c: &Coloring) -> Result<(), Violation> {
    // a 2-colored P4 exists iff some edge of a 2-class union has both
    // endpoints of union-degree >= 2
    for &(u, v) in g.edges() {
        let (cu, cv) = (c.vertex[&u], c.vertex[&v]);
        if cu == cv {
            continue;
        }
        let in_union = |x: u32, y: u32| {
            let (a, b) = (c.vertex[&x], c.vertex[&y]);
            (a == cu && b == cv) || (a == cv && b == cu)
        };
        let ext_u = g.neighbor_set(u).into_iter().find(|&x| x != v && in_union(u, x));
        let ext_v = g.neighbor_set(v).into_iter().find(|&y| y != u && in_union(v, y));
        if let (Some(x), Some(y)) = (ext_u, ext_v) {
            if x != y {
                return Err(Violation::BicoloredPath([x, u, v, y]));
            }
            // x == y would close a 2-colored triangle, impossible when proper
        }
    }
    Ok(())
}

/// A cycle inside the induced subgraph on `set`, if any, as a vertex list.
pub fn find_cycle_within(g: &Graph, set: &BTreeSet<u32>) -> Option<Vec<u32>> {
    // DFS forest over the induced subgraph; an edge to a visited non-parent
    // closes a cycle. Parallel edges close a 2-cycle.
    let mut parent: BTreeMap<u32, Option<u32>> = BTreeMap::new();
    for &root in set {
        if parent.contains_key(&root) {
            continue;
        }
        parent.insert(root, None);
        let mut stack = vec![(root, usize::MAX)];
        while let Some((v, via)) = stack.pop() {
            for &(u, e) in g.incidences(v) {
                if !set.contains(&u) || e == via {
                    continue;
                }
                if u == v {
                    return Some(vec![v]);
                }
                if parent.contains_key(&u) {
                    // reconstruct the cycle through the DFS tree
                    let mut pa = vec![v];
                    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
                    let mut x = Some(v);
                    let mut i = 0;
                    while let Some(y) = x {
                        seen.insert(y, i);
                        i += 1;
                        x = parent[&y];
                        if let Some(y2) = x {
                            pa.push(y2);
                        }
                    }
                    let mut pb = vec![u];
                    let mut x = u;
                    loop {
                        if let Some(&cut) = seen.get(&x) {
                            let mut cyc: Vec<u32> = pa[..=cut].to_vec();
                            pb.pop();
                            cyc.extend(pb.into_iter().rev());
                            return Some(cyc);
                        }
                        match parent[&x] {
                            Some(y) => {
                                pb.push(y);
                                x = y;
                            }
                            None => break,
                        }
                    }
                    unreachable!("cycle endpoints share a DFS root");
                } else {
                    parent.insert(u, Some(v));
                    stack.push((u, e));
                }
            }
        }
    }
    None
}

/// Map from vertices (or edges) to finite color lists.
#[derive(Debug, Clone, Default)]
pub struct ListAssignment {
    pub lists: BTreeMap<u32, Vec<Color>>,
}

impl ListAssignment {
    pub fn uniform(g: &Graph, colors: &[Color]) -> Self {
        ListAssignment {
            lists: g.vertices().map(|v| (v, colors.to_vec())).collect(),
        }
    }

    pub fn get(&self, v: u32) -> &[Color] {
        self.lists.get(&v).map_or(&[], |l| l.as_slice())
    }

    pub fn is_uniform(&self, k: usize) -> bool {
        self.lists.values().all(|l| l.len() == k)
    }

    pub fn min_size(&self) -> usize {
        self.lists.values().map(|l| l.len()).min().unwrap_or(0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColorError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("no coloring exists: {0}")]
    Infeasible(String),
    #[error("invariant violation (likely bug or falsified lemma): {0}")]
    InvariantViolation(String),
    #[error("invalid input coloring: {0}")]
    BadInput(Violation),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn c4() -> Graph {
        generate::cycle(4)
    }

    #[test]
    fn proper_validation() {
        let g = c4();
        let good =
            Coloring::vertex_only(Kind::Proper, [(0, 0), (1, 1), (2, 0), (3, 1)].into());
        assert!(validate(&g, &good).is_ok());
        let bad = Coloring::vertex_only(Kind::Proper, [(0, 0), (1, 0), (2, 0), (3, 0)].into());
        assert_eq!(validate(&g, &bad), Err(Violation::Edge(0, 1)));
    }

    #[test]
    fn star_catches_alternation() {
        let g = c4();
        let alt = Coloring::vertex_only(Kind::Star, [(0, 0), (1, 1), (2, 0), (3, 1)].into());
        assert!(matches!(validate(&g, &alt), Err(Violation::BicoloredPath(_))));
        let acy = Coloring::vertex_only(Kind::Acyclic, [(0, 0), (1, 1), (2, 0), (3, 1)].into());
        assert!(matches!(validate(&g, &acy), Err(Violation::BicoloredCycle(_))));
        let ok = Coloring::vertex_only(Kind::Star, [(0, 0), (1, 1), (2, 2), (3, 1)].into());
        assert!(validate(&g, &ok).is_ok());
    }

    #[test]
    fn injective_distance_two() {
        let g = generate::path(3);
        let c = Coloring::vertex_only(Kind::Injective, [(0, 5), (1, 5), (2, 5)].into());
        assert_eq!(validate(&g, &c), Err(Violation::DistanceTwo(0, 2, 1)));
        let c = Coloring::vertex_only(Kind::Injective, [(0, 5), (1, 5), (2, 6)].into());
        assert!(validate(&g, &c).is_ok()); // adjacent may share
    }

    #[test]
    fn improper_counts() {
        let g = generate::complete(3);
        let all_same = Coloring::vertex_only(Kind::Improper(1), [(0, 0), (1, 0), (2, 0)].into());
        assert!(matches!(validate(&g, &all_same), Err(Violation::TooImproper(_, 2, 1))));
        let c = Coloring::vertex_only(Kind::Improper(1), [(0, 0), (1, 0), (2, 1)].into());
        assert!(validate(&g, &c).is_ok());
    }

    #[test]
    fn if_partition_checks() {
        let g = generate::cycle(6);
        let mut vertex: BTreeMap<u32, Color> = (0..6).map(|v| (v, 1)).collect();
        vertex.insert(0, 0);
        let c = Coloring::vertex_only(Kind::IfPartition, vertex);
        assert!(validate(&g, &c).is_ok());
        let all_f = Coloring::vertex_only(Kind::IfPartition, (0..6).map(|v| (v, 1)).collect());
        assert!(matches!(validate(&g, &all_f), Err(Violation::ForestCycle(_))));
        let mut vertex: BTreeMap<u32, Color> = (0..6).map(|v| (v, 1)).collect();
        vertex.insert(0, 0);
        vertex.insert(2, 0);
        let close = Coloring::vertex_only(Kind::IfPartition, vertex);
        assert!(matches!(
            validate(&g, &close),
            Err(Violation::NotTwoIndependent(0, 2))
        ));
    }

    #[test]
    fn cycle_finder() {
        let g = generate::cycle(5);
        let all: BTreeSet<u32> = g.vertices().collect();
        let cyc = find_cycle_within(&g, &all).unwrap();
        assert_eq!(cyc.len(), 5);
        let sub: BTreeSet<u32> = [0, 1, 2].into();
        assert!(find_cycle_within(&g, &sub).is_none());
    }
}
