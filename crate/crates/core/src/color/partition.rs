//! I,F-partitions for mad < 7/3 and the star 4-coloring built on them:
//! forest vertices get their root distance mod 3, the 2-independent set
//! gets the fourth color.

use super::{validate, Color, ColorError, Coloring, Kind};
use crate::density::mad;
use crate::graph::{cycle_components, find_threads, incident_threads, weak_two_neighbors, Graph};
use crate::rational::rat;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

enum Frame {
    CycleComp(Vec<u32>),
    Leaf(u32),
    /// First three interior vertices of a thread, between two anchors.
    ThreadSeg { anchor_a: u32, segment: [u32; 3], anchor_b: u32 },
    /// Hub + two interiors of a 2-thread + first interiors of the other
    /// two incident threads, in a fixed order for the placement search.
    HubSet([u32; 5]),
}

fn two_independent_ok(g: &Graph, ind: &BTreeSet<u32>, colored: &BTreeSet<u32>, v: u32) -> bool {
    // distance within the currently colored induced subgraph
    let mut seen = BTreeSet::from([v]);
    let mut frontier = vec![v];
    for _ in 0..2 {
        let mut next = Vec::new();
        for &x in &frontier {
            for u in g.neighbors(x) {
                if colored.contains(&u) && seen.insert(u) {
                    if ind.contains(&u) {
                        return false;
                    }
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    true
}

fn forest_ok(g: &Graph, forest: &BTreeSet<u32>) -> bool {
    super::find_cycle_within(g, forest).is_none()
}

/// Partitions V into a 2-independent set I and a forest-inducing set F,
/// for graphs with mad < 7/3. Cycle components contribute one vertex to I;
/// otherwise 1⁻-vertices, 3-threads and 3-vertices with ≥ 5 weak
/// 2-neighbors are peeled and re-inserted.
pub fn if_partition(g: &Graph) -> Result<(BTreeSet<u32>, BTreeSet<u32>), ColorError> {
    if !g.simple() {
        return Err(ColorError::Hypothesis("partition needs a simple graph".into()));
    }
    if g.n() > 0 {
        let m = mad(g)
            .map_err(|e| ColorError::Hypothesis(e.to_string()))?
            .value;
        if m >= rat(7, 3) {
            return Err(ColorError::Hypothesis(format!("mad = {m} is not below 7/3")));
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
        if let Some(comp) = cycle_components(&cur).into_iter().next() {
            let drop: BTreeSet<u32> = comp.iter().copied().collect();
            stack.push(Frame::CycleComp(comp));
            cur = cur.remove_vertices(&drop);
            continue;
        }
        if let Some(th) = find_threads(&cur, 3).into_iter().next() {
            let segment = [th.interior[0], th.interior[1], th.interior[2]];
            let anchor_b = if th.interior.len() > 3 {
                th.interior[3]
            } else {
                th.ends.1
            };
            stack.push(Frame::ThreadSeg {
                anchor_a: th.ends.0,
                segment,
                anchor_b,
            });
            cur = cur.remove_vertices(&segment.iter().copied().collect());
            continue;
        }
        let hub = cur.vertices().find(|&v| {
            cur.degree(v) == 3
                && weak_two_neighbors(&cur, v).map_or(false, |w| w.len() >= 5)
        });
        if let Some(u) = hub {
            // threads have interiors of size 1 or 2 here (no 3-thread);
            // at least two of them are 2-threads
            let mut threads = incident_threads(&cur, u);
            threads.sort_by_key(|(interior, _)| std::cmp::Reverse(interior.len()));
            if threads.len() < 3 || threads[0].0.len() < 2 {
                return Err(ColorError::InvariantViolation(
                    "weak-neighbor hub without a 2-thread".into(),
                ));
            }
            let a = &threads[0].0;
            let set = [u, a[0], a[1], threads[1].0[0], threads[2].0[0]];
            stack.push(Frame::HubSet(set));
            cur = cur.remove_vertices(&set.iter().copied().collect());
            continue;
        }
        return Err(ColorError::InvariantViolation(
            "no reducible configuration below the mad bound".into(),
        ));
    }

    // unwind
    let mut ind: BTreeSet<u32> = BTreeSet::new();
    let mut forest: BTreeSet<u32> = BTreeSet::new();
    let mut colored: BTreeSet<u32> = BTreeSet::new();
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Leaf(v) => {
                forest.insert(v);
                colored.insert(v);
                debug_assert!(forest_ok(g, &forest));
            }
            Frame::CycleComp(comp) => {
                let pick = *comp.iter().min().unwrap();
                for v in comp {
                    if v == pick {
                        ind.insert(v);
                    } else {
                        forest.insert(v);
                    }
                    colored.insert(v);
                }
            }
            Frame::ThreadSeg {
                anchor_a,
                segment,
                anchor_b,
            } => {
                let [w, x, y] = segment;
                colored.extend(segment);
                if ind.contains(&anchor_a) || ind.contains(&anchor_b) {
                    forest.extend(segment);
                } else {
                    ind.insert(x);
                    forest.insert(w);
                    forest.insert(y);
                }
                debug_assert!(forest_ok(g, &forest));
                debug_assert!(two_independent_check(g, &ind, &colored));
            }
            Frame::HubSet(set) => {
                for &v in &set {
                    colored.insert(v);
                }
                // deterministic exhaustive placement of the five vertices:
                // fewer independent picks first, then binary order
                let mut masks: Vec<u32> = (0..32).collect();
                masks.sort_by_key(|m| (m.count_ones(), *m));
                let mut placed = false;
                'outer: for mask in masks {
                    let mut try_ind = ind.clone();
                    let mut try_forest = forest.clone();
                    for (bit, &v) in set.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            try_ind.insert(v);
                        } else {
                            try_forest.insert(v);
                        }
                    }
                    for (bit, &v) in set.iter().enumerate() {
                        if mask >> bit & 1 == 1
                            && !two_independent_ok(g, &{
                                let mut t = try_ind.clone();
                                t.remove(&v);
                                t
                            }, &colored, v)
                        {
                            continue 'outer;
                        }
                    }
                    if !forest_ok(g, &try_forest) {
                        continue;
                    }
                    ind = try_ind;
                    forest = try_forest;
                    placed = true;
                    break;
                }
                if !placed {
                    return Err(ColorError::InvariantViolation(
                        "weak-neighbor hub has no valid I/F extension".into(),
                    ));
                }
            }
        }
    }
    Ok((ind, forest))
}

fn two_independent_check(g: &Graph, ind: &BTreeSet<u32>, colored: &BTreeSet<u32>) -> bool {
    ind.iter().all(|&v| {
        two_independent_ok(
            g,
            &{
                let mut t = ind.clone();
                t.remove(&v);
                t
            },
            colored,
            v,
        )
    })
}

/// Star coloring of a forest with colors {0,1,2}: root distance mod 3.
fn forest_star3(g: &Graph, forest: &BTreeSet<u32>) -> BTreeMap<u32, Color> {
    let sub = g.induced(forest);
    let mut coloring = BTreeMap::new();
    for &root in forest {
        if coloring.contains_key(&root) {
            continue;
        }
        coloring.insert(root, 0);
        let mut queue = VecDeque::from([(root, 0u32)]);
        while let Some((v, d)) = queue.pop_front() {
            for u in sub.neighbors(v) {
                if !coloring.contains_key(&u) {
                    coloring.insert(u, (d + 1) % 3);
                    queue.push_back((u, d + 1));
                }
            }
        }
    }
    coloring
}

/// Star coloring with at most 4 colors for graphs with mad < 7/3: colors
/// {0,1,2} on the forest part by depth mod 3, color 3 on the
/// 2-independent part.
pub fn star_color4(g: &Graph) -> Result<Coloring, ColorError> {
    let (ind, forest) = if_partition(g)?;
    let mut vertex = forest_star3(g, &forest);
    for v in ind {
        vertex.insert(v, 3);
    }
    let c = Coloring::vertex_only(Kind::Star, vertex);
    validate(g, &c)
        .map_err(|v| ColorError::InvariantViolation(format!("star coloring invalid: {v}")))?;
    Ok(c)
}
