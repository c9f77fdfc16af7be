//! 1-improper coloring from 2-lists for graphs with mad < 8/3: 1⁻-vertices
//! and adjacent 2-vertices reduce directly; tree components of the
//! 3-vertex subgraph are recolored by an induction that defers some color
//! choices (dual vertices) until a neighbor forces them.

use super::{validate, Color, ColorError, Coloring, Kind, ListAssignment};
use crate::config::{adjacent_twos, tree_component};
use crate::density::mad;
use crate::graph::Graph;
use crate::rational::rat;
use std::collections::{BTreeMap, BTreeSet};

enum Frame {
    Leaf(u32),
    /// Adjacent 2-vertices u, v with their outside neighbors.
    TwoPair { u: u32, v: u32, u_out: u32, v_out: u32 },
    /// A tree component of the 3-vertex subgraph.
    Tree(Vec<u32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Solo,
    Dual(Color, Color),
}

struct Extender<'a> {
    lists: &'a ListAssignment,
    phi: BTreeMap<u32, Color>,
    labels: BTreeMap<u32, Label>,
}

impl<'a> Extender<'a> {
    fn pick(&self, v: u32, avoid: &BTreeSet<Color>) -> Result<Color, ColorError> {
        self.lists
            .get(v)
            .iter()
            .copied()
            .find(|c| !avoid.contains(c))
            .ok_or_else(|| {
                ColorError::InvariantViolation(format!("list of {v} exhausted during extension"))
            })
    }

    /// Fixes a dual vertex to a concrete color, avoiding `avoid` if
    /// possible (a dual pair always contains a color other than any single
    /// avoided one).
    fn fix_dual(&mut self, v: u32, avoid: Option<Color>) {
        if let Some(Label::Dual(a, b)) = self.labels.get(&v).copied() {
            let c = match avoid {
                Some(x) if a == x => b,
                Some(_) => a,
                None => a.min(b),
            };
            self.phi.insert(v, c);
            self.labels.insert(v, Label::Solo);
        }
    }

    fn color_solo(&mut self, v: u32, c: Color) {
        self.phi.insert(v, c);
        self.labels.insert(v, Label::Solo);
    }

    /// The colors forced to appear at a neighbor set: solo occurrences
    /// only; dual neighbors can still dodge.
    fn forced(&self, nbrs: &[u32], c: Color) -> usize {
        nbrs.iter()
            .filter(|&&u| self.labels.get(&u) == Some(&Label::Solo) && self.phi.get(&u) == Some(&c))
            .count()
    }

    /// Handles a leaf `v` of the current tree with labeled non-tree
    /// neighbors `outs`; tree neighbor (if any) stays uncolored.
    fn process_tree_vertex(&mut self, v: u32, outs: &[u32]) -> Result<(), ColorError> {
        let empties: Vec<u32> = outs
            .iter()
            .copied()
            .filter(|u| !self.labels.contains_key(u))
            .collect();
        let labeled: Vec<u32> = outs
            .iter()
            .copied()
            .filter(|u| self.labels.contains_key(u))
            .collect();
        let lv: Vec<Color> = self.lists.get(v).to_vec();
        match empties.len() {
            0 => {
                // no empty neighbor: solo if some list color is not forced,
                // else dual with both colors forced on solo neighbors
                let free = lv.iter().copied().find(|&c| self.forced(&labeled, c) == 0);
                if let Some(c) = free {
                    for &u in &labeled {
                        self.fix_dual(u, Some(c));
                    }
                    self.color_solo(v, c);
                } else {
                    // both list colors sit solo on the two neighbors
                    self.labels.insert(v, Label::Dual(lv[0], lv[1]));
                }
            }
            1 => {
                let w = empties[0];
                let avoid: BTreeSet<Color> = labeled
                    .first()
                    .map(|&u| {
                        self.fix_dual(u, None);
                        self.phi.get(&u).copied().into_iter().collect()
                    })
                    .unwrap_or_default();
                let c = self.pick(v, &avoid)?;
                self.color_solo(v, c);
                let cw = self.pick(w, &BTreeSet::from([c]))?;
                self.color_solo(w, cw);
            }
            _ => {
                let c = self.pick(v, &BTreeSet::new())?;
                self.color_solo(v, c);
                for &w in &empties {
                    let cw = self.pick(w, &BTreeSet::from([c]))?;
                    self.color_solo(w, cw);
                }
            }
        }
        Ok(())
    }
}

/// 1-improper coloring from lists of size ≥ 2, for mad < 8/3.
pub fn improper_2list(g: &Graph, lists: &ListAssignment) -> Result<Coloring, ColorError> {
    if !g.simple() {
        return Err(ColorError::Hypothesis("needs a simple graph".into()));
    }
    if g.vertices().any(|v| lists.get(v).len() < 2) {
        return Err(ColorError::Hypothesis("every list must have size >= 2".into()));
    }
    if g.n() > 0 {
        let m = mad(g)
            .map_err(|e| ColorError::Hypothesis(e.to_string()))?
            .value;
        if m >= rat(8, 3) {
            return Err(ColorError::Hypothesis(format!("mad = {m} is not below 8/3")));
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
        if let Some((u, v)) = adjacent_twos(&cur) {
            let u_out = cur.neighbor_set(u).into_iter().find(|&x| x != v).unwrap();
            let v_out = cur.neighbor_set(v).into_iter().find(|&x| x != u).unwrap();
            stack.push(Frame::TwoPair { u, v, u_out, v_out });
            cur = cur.remove_vertices(&BTreeSet::from([u, v]));
            continue;
        }
        if let Some(s) = tree_component(&cur) {
            let drop: BTreeSet<u32> = s.iter().copied().collect();
            stack.push(Frame::Tree(s));
            cur = cur.remove_vertices(&drop);
            continue;
        }
        return Err(ColorError::InvariantViolation(
            "no reducible configuration below the mad bound".into(),
        ));
    }

    let mut phi: BTreeMap<u32, Color> = BTreeMap::new();
    let mut present: BTreeSet<u32> = BTreeSet::new();
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
                    .unwrap_or(lists.get(v)[0]);
                phi.insert(v, c);
                present.insert(v);
            }
            Frame::TwoPair { u, v, u_out, v_out } => {
                let cu = *lists
                    .get(u)
                    .iter()
                    .find(|&&c| Some(c) != phi.get(&u_out).copied())
                    .expect("2-list dodges one color");
                let cv = *lists
                    .get(v)
                    .iter()
                    .find(|&&c| Some(c) != phi.get(&v_out).copied())
                    .expect("2-list dodges one color");
                phi.insert(u, cu);
                phi.insert(v, cv);
                present.insert(u);
                present.insert(v);
            }
            Frame::Tree(s) => {
                let set: BTreeSet<u32> = s.iter().copied().collect();
                let mut ext = Extender {
                    lists,
                    phi: phi.clone(),
                    labels: BTreeMap::new(),
                };
                // label the outside neighborhood: 2-vertices with both
                // neighbors in S become empty (uncolored for now); the
                // rest are recolored away from their other neighbor
                let mut boundary: BTreeSet<u32> = BTreeSet::new();
                for &v in &set {
                    for u in g.neighbor_set(v) {
                        if !set.contains(&u) && present.contains(&u) {
                            boundary.insert(u);
                        }
                    }
                }
                for &w in &boundary {
                    let outside_nbrs: Vec<u32> = g
                        .neighbor_set(w)
                        .into_iter()
                        .filter(|x| !set.contains(x) && present.contains(x))
                        .collect();
                    if outside_nbrs.is_empty() {
                        // both neighbors in S: empty, to be colored later
                        ext.phi.remove(&w);
                    } else {
                        let avoid: BTreeSet<Color> = outside_nbrs
                            .iter()
                            .filter_map(|&y| ext.phi.get(&y).copied())
                            .collect();
                        let c = ext.pick(w, &avoid)?;
                        ext.color_solo(w, c);
                    }
                }
                // peel the tree leaf-by-leaf along a longest path
                let mut remaining: BTreeSet<u32> = set.clone();
                while remaining.len() > 1 {
                    let sub = g.induced(&remaining);
                    let v = deepest_leaf(&sub);
                    let outs: Vec<u32> = g
                        .neighbor_set(v)
                        .into_iter()
                        .filter(|u| !remaining.contains(u))
                        .collect();
                    ext.process_tree_vertex(v, &outs)?;
                    remaining.remove(&v);
                }
                if let Some(&v) = remaining.iter().next() {
                    let outs: Vec<u32> = g
                        .neighbor_set(v)
                        .into_iter()
                        .filter(|u| !remaining.contains(u))
                        .collect();
                    ext.process_tree_vertex_base(v, &outs)?;
                }
                // fix any leftover dual vertices
                let leftover: Vec<u32> = ext
                    .labels
                    .iter()
                    .filter(|(_, &l)| matches!(l, Label::Dual(_, _)))
                    .map(|(&v, _)| v)
                    .collect();
                for v in leftover {
                    ext.fix_dual(v, None);
                }
                phi = ext.phi;
                present.extend(set);
                debug_assert!({
                    let sub = g.induced(&present);
                    let c = Coloring::vertex_only(
                        Kind::Improper(1),
                        phi.iter()
                            .filter(|(v, _)| present.contains(v))
                            .map(|(&v, &c)| (v, c))
                            .collect(),
                    );
                    validate(&sub, &c).is_ok()
                });
            }
        }
    }

    let coloring = Coloring::vertex_only(Kind::Improper(1), phi);
    validate(g, &coloring)
        .map_err(|v| ColorError::InvariantViolation(format!("output failed validation: {v}")))?;
    for v in g.vertices() {
        if !lists.get(v).contains(&coloring.vertex[&v]) {
            return Err(ColorError::InvariantViolation(format!(
                "vertex {v} colored outside its list"
            )));
        }
    }
    Ok(coloring)
}

impl<'a> Extender<'a> {
    /// Base case: the last tree vertex, all neighbors outside and labeled
    /// or empty.
    fn process_tree_vertex_base(&mut self, v: u32, outs: &[u32]) -> Result<(), ColorError> {
        let labeled: Vec<u32> = outs
            .iter()
            .copied()
            .filter(|u| self.labels.contains_key(u))
            .collect();
        let empties: Vec<u32> = outs
            .iter()
            .copied()
            .filter(|u| !self.labels.contains_key(u))
            .collect();
        let lv: Vec<Color> = self.lists.get(v).to_vec();
        let c = lv
            .iter()
            .copied()
            .find(|&c| self.forced(&labeled, c) <= 1)
            .ok_or_else(|| {
                ColorError::InvariantViolation("both colors forced twice at the base".into())
            })?;
        for &u in &labeled {
            self.fix_dual(u, Some(c));
        }
        self.color_solo(v, c);
        for &w in &empties {
            let cw = self.pick(w, &BTreeSet::from([c]))?;
            self.color_solo(w, cw);
        }
        Ok(())
    }
}

/// A leaf at the end of a longest path of a tree (an eccentricity-maximal
/// leaf), smallest id on ties.
fn deepest_leaf(tree: &Graph) -> u32 {
    let start = tree.vertices().next().expect("nonempty tree");
    let d1 = tree.distances(start);
    let far = d1
        .iter()
        .max_by_key(|(&v, &d)| (d, std::cmp::Reverse(v)))
        .map(|(&v, _)| v)
        .unwrap();
    let d2 = tree.distances(far);
    d2.iter()
        .max_by_key(|(&v, &d)| (d, std::cmp::Reverse(v)))
        .map(|(&v, _)| v)
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn c4_alternation() {
        let g = generate::cycle(4);
        let lists = ListAssignment::uniform(&g, &[7, 9]);
        let c = improper_2list(&g, &lists).unwrap();
        assert!(validate(&g, &c).is_ok());
    }

    #[test]
    fn k4_rejected() {
        let g = generate::complete(4);
        let lists = ListAssignment::uniform(&g, &[0, 1]);
        assert!(matches!(
            improper_2list(&g, &lists),
            Err(ColorError::Hypothesis(_))
        ));
    }

    #[test]
    fn subdivided_k4_identical_lists() {
        let g = generate::thread_replace(&generate::complete(4), 2).unwrap();
        let lists = ListAssignment::uniform(&g, &[0, 1]);
        let c = improper_2list(&g, &lists).unwrap();
        assert!(validate(&g, &c).is_ok());
    }

    #[test]
    fn tree_component_host() {
        // single-vertex tree component at 0: its three neighbors have
        // degree 2 and lead into a triangle of 3-vertices
        let g = Graph::from_edges(&[
            (0, 1),
            (1, 10),
            (0, 2),
            (2, 11),
            (0, 3),
            (3, 12),
            (10, 11),
            (11, 12),
            (10, 12),
        ]);
        let m = crate::density::mad(&g).unwrap().value;
        assert!(m < rat(8, 3), "host too dense: {m}");
        let lists = ListAssignment::uniform(&g, &[0, 1]);
        let c = improper_2list(&g, &lists).unwrap();
        assert!(validate(&g, &c).is_ok());
    }
}
