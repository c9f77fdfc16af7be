//! Finite simple graphs and multigraphs with stable integer vertex ids,
//! the line-based file format, and the local structure queries (threads,
//! weak 2-neighbors, girth) that the detectors and colorers build on.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Validation(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation system fails Euler's identity: |V|={v} - |E|={e} + |F|={f} != 2")]
    Euler { v: usize, e: usize, f: usize },
}

/// Undirected graph; parallel edges allowed unless `simple`.
/// Vertex ids are arbitrary `u32`s, no contiguity assumed.
/// A loop contributes 2 to the degree of its vertex.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    adj: BTreeMap<u32, Vec<(u32, usize)>>,
    edges: Vec<(u32, u32)>,
    has_loop: bool,
    has_parallel: bool,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn from_edges(edges: &[(u32, u32)]) -> Self {
        let mut g = Graph::new();
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: u32) {
        self.adj.entry(v).or_default();
    }

    /// Adds an edge, declaring endpoints as needed. Returns the edge index.
    pub fn add_edge(&mut self, u: u32, v: u32) -> usize {
        let id = self.edges.len();
        if u == v {
            self.has_loop = true;
        } else if self.has_edge(u, v) {
            self.has_parallel = true;
        }
        self.edges.push((u, v));
        self.adj.entry(u).or_default().push((v, id));
        self.adj.entry(v).or_default().push((u, id));
        id
    }

    /// True when the graph has no loops and no parallel edges.
    pub fn simple(&self) -> bool {
        !self.has_loop && !self.has_parallel
    }

    pub fn has_loops(&self) -> bool {
        self.has_loop
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.adj.keys().copied()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.adj.contains_key(&v)
    }

    /// Edge list in insertion order, endpoints as given.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj.get(&v).map_or(0, |a| a.len())
    }

    /// Neighbors with multiplicity, paired with edge ids, in insertion order.
    pub fn incidences(&self, v: u32) -> &[(u32, usize)] {
        self.adj.get(&v).map_or(&[], |a| a.as_slice())
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.incidences(v).iter().map(|&(u, _)| u)
    }

    /// Distinct neighbors, ascending.
    pub fn neighbor_set(&self, v: u32) -> BTreeSet<u32> {
        self.neighbors(v).filter(move |&u| u != v).collect()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.incidences(u).iter().any(|&(w, _)| w == v)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(|a| a.len()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.values().map(|a| a.len()).min().unwrap_or(0)
    }

    pub fn degree_sum(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        let start = *self.adj.keys().next().unwrap();
        self.component_of(start).len() == self.n()
    }

    pub fn component_of(&self, start: u32) -> BTreeSet<u32> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    pub fn components(&self) -> Vec<BTreeSet<u32>> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for v in self.vertices() {
            if !seen.contains(&v) {
                let comp = self.component_of(v);
                seen.extend(comp.iter().copied());
                out.push(comp);
            }
        }
        out
    }

    /// Induced subgraph on `keep`, preserving vertex ids.
    pub fn induced(&self, keep: &BTreeSet<u32>) -> Graph {
        let mut g = Graph::new();
        for &v in keep {
            if self.contains(v) {
                g.add_vertex(v);
            }
        }
        for &(u, v) in &self.edges {
            if keep.contains(&u) && keep.contains(&v) {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn remove_vertices(&self, drop: &BTreeSet<u32>) -> Graph {
        let keep: BTreeSet<u32> = self.vertices().filter(|v| !drop.contains(v)).collect();
        self.induced(&keep)
    }

    /// The square: same vertex set, with an edge between every pair at
    /// distance 1 or 2. Always simple.
    pub fn square(&self) -> Graph {
        let mut g = Graph::new();
        let mut pairs = BTreeSet::new();
        for v in self.vertices() {
            g.add_vertex(v);
            for u in self.neighbor_set(v) {
                if v < u {
                    pairs.insert((v, u));
                }
                for w in self.neighbor_set(u) {
                    if w != v {
                        pairs.insert((v.min(w), v.max(w)));
                    }
                }
            }
        }
        for (u, v) in pairs {
            g.add_edge(u, v);
        }
        g
    }

    /// BFS distances from `src` (unweighted).
    pub fn distances(&self, src: u32) -> HashMap<u32, usize> {
        let mut dist = HashMap::new();
        dist.insert(src, 0usize);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[&v];
            for u in self.neighbors(v) {
                if !dist.contains_key(&u) {
                    dist.insert(u, dv + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// All vertices within distance `r` of `v`, including `v`.
    pub fn ball(&self, v: u32, r: usize) -> BTreeSet<u32> {
        let mut seen = BTreeSet::from([v]);
        let mut frontier = vec![v];
        for _ in 0..r {
            let mut next = Vec::new();
            for &x in &frontier {
                for u in self.neighbors(x) {
                    if seen.insert(u) {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    /// Length of a shortest cycle, `None` for forests. Loops count as
    /// 1-cycles and parallel edges as 2-cycles.
    pub fn girth(&self) -> Option<usize> {
        if self.has_loop {
            return Some(1);
        }
        if self.has_parallel {
            return Some(2);
        }
        let mut best: Option<usize> = None;
        for root in self.vertices() {
            let mut dist: HashMap<u32, usize> = HashMap::new();
            let mut parent: HashMap<u32, u32> = HashMap::new();
            dist.insert(root, 0);
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let dv = dist[&v];
                if best.is_some_and(|b| 2 * dv >= b) {
                    continue;
                }
                for u in self.neighbors(v) {
                    if let Some(&du) = dist.get(&u) {
                        if parent.get(&v) != Some(&u) && parent.get(&u) != Some(&v) {
                            let cand = dv + du + 1;
                            if best.is_none_or(|b| cand < b) {
                                best = Some(cand);
                            }
                        }
                    } else {
                        dist.insert(u, dv + 1);
                        parent.insert(u, v);
                        queue.push_back(u);
                    }
                }
            }
        }
        best
    }

    /// Length of a shortest odd cycle, `None` for bipartite graphs.
    pub fn odd_girth(&self) -> Option<usize> {
        if self.has_loop {
            return Some(1);
        }
        let mut best: Option<usize> = None;
        for root in self.vertices() {
            let dist = self.distances(root);
            for &(u, v) in &self.edges {
                if let (Some(&du), Some(&dv)) = (dist.get(&u), dist.get(&v)) {
                    if du == dv {
                        let cand = du + dv + 1;
                        if best.is_none_or(|b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
            }
        }
        best
    }

    /// Serializes to the graph file format: sorted `v` lines for isolated
    /// vertices, sorted `e` lines. Fixed point of parse ∘ serialize.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            if self.degree(v) == 0 {
                writeln!(out, "v {v}").unwrap();
            }
        }
        let mut es: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        es.sort();
        for (u, v) in es {
            writeln!(out, "e {u} {v}").unwrap();
        }
        out
    }

    /// Parses the graph file format. The simple flag of the result is set
    /// iff the input has no loops and no parallel edges.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut g = Graph::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut it = content.split_whitespace();
            match it.next() {
                Some("v") => {
                    let v = parse_id(it.next(), line, "vertex id")?;
                    if it.next().is_some() {
                        return Err(GraphError::Parse {
                            line,
                            msg: "trailing tokens after v record".into(),
                        });
                    }
                    g.add_vertex(v);
                }
                Some("e") => {
                    let u = parse_id(it.next(), line, "edge endpoint")?;
                    let v = parse_id(it.next(), line, "edge endpoint")?;
                    if it.next().is_some() {
                        return Err(GraphError::Parse {
                            line,
                            msg: "trailing tokens after e record".into(),
                        });
                    }
                    g.add_edge(u, v);
                }
                Some(tok) if tok == "rot" => {
                    return Err(GraphError::Parse {
                        line,
                        msg: "rot records belong in an embedding file".into(),
                    });
                }
                Some(tok) => {
                    return Err(GraphError::Parse {
                        line,
                        msg: format!("unknown record {tok:?}"),
                    });
                }
                None => {}
            }
        }
        Ok(g)
    }

    /// Like `parse`, but rejects loops and parallel edges.
    pub fn parse_simple(text: &str) -> Result<Graph, GraphError> {
        let g = Graph::parse(text)?;
        if g.has_loop {
            return Err(GraphError::Validation("loop not allowed in simple mode".into()));
        }
        if g.has_parallel {
            return Err(GraphError::Validation(
                "parallel edge not allowed in simple mode".into(),
            ));
        }
        Ok(g)
    }
}

fn parse_id(tok: Option<&str>, line: usize, what: &str) -> Result<u32, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| GraphError::Parse {
        line,
        msg: format!("bad {what} {tok:?}"),
    })
}

/// An ℓ-thread: a path whose interior vertices all have degree 2 in the
/// host graph. `ends` may coincide when the thread closes a cycle at a
/// single 3⁺-vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thread {
    pub ends: (u32, u32),
    pub interior: Vec<u32>,
}

impl Thread {
    pub fn len(&self) -> usize {
        self.interior.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interior.is_empty()
    }
}

/// Maximal threads with at least `min_len` interior vertices, plus the
/// 2-regular components, which are reported separately as cycles.
pub fn threads_and_cycles(g: &Graph, min_len: usize) -> (Vec<Thread>, Vec<Vec<u32>>) {
    let mut threads = Vec::new();
    let mut cycles = Vec::new();
    let mut visited: HashSet<u32> = HashSet::new();
    for v in g.vertices() {
        if g.degree(v) != 2 || visited.contains(&v) {
            continue;
        }
        // walk one direction by edges until a non-2-vertex or back at v
        let walk = |first_slot: usize| -> (u32, Vec<u32>, bool) {
            let mut chain = Vec::new();
            let (mut cur, mut via) = g.incidences(v)[first_slot];
            loop {
                if cur == v {
                    return (cur, chain, true);
                }
                if g.degree(cur) != 2 {
                    return (cur, chain, false);
                }
                chain.push(cur);
                let inc = g.incidences(cur);
                let (next, edge) = if inc[0].1 == via { inc[1] } else { inc[0] };
                cur = next;
                via = edge;
            }
        };
        let (end_a, chain_a, closed) = walk(0);
        if closed {
            // 2-regular component containing v
            let mut cycle = vec![v];
            cycle.extend(chain_a.iter().copied());
            visited.extend(cycle.iter().copied());
            cycles.push(cycle);
            continue;
        }
        let (end_b, chain_b, _) = walk(1);
        let mut interior: Vec<u32> = chain_a.into_iter().rev().collect();
        interior.push(v);
        interior.extend(chain_b);
        visited.extend(interior.iter().copied());
        let (ends, interior) = if end_a <= end_b {
            ((end_a, end_b), interior)
        } else {
            ((end_b, end_a), {
                let mut r = interior;
                r.reverse();
                r
            })
        };
        if interior.len() >= min_len {
            threads.push(Thread { ends, interior });
        }
    }
    threads.sort_by(|a, b| (a.ends, &a.interior).cmp(&(b.ends, &b.interior)));
    cycles.sort();
    (threads, cycles)
}

/// Maximal threads with at least `min_len` interior vertices.
pub fn find_threads(g: &Graph, min_len: usize) -> Vec<Thread> {
    threads_and_cycles(g, min_len).0
}

/// The 2-regular components.
pub fn cycle_components(g: &Graph) -> Vec<Vec<u32>> {
    threads_and_cycles(g, 1).1
}

/// The weak 2-neighbors of `v`: all 2-vertices on maximal threads incident
/// to `v`. Requires d(v) ≥ 3.
pub fn weak_two_neighbors(g: &Graph, v: u32) -> Result<Vec<u32>, GraphError> {
    if g.degree(v) < 3 {
        return Err(GraphError::Validation(format!(
            "weak 2-neighbors require d(v) >= 3, got d({v}) = {}",
            g.degree(v)
        )));
    }
    let mut out = BTreeSet::new();
    for slot in 0..g.degree(v) {
        let (mut cur, mut via) = g.incidences(v)[slot];
        while cur != v && g.degree(cur) == 2 {
            out.insert(cur);
            let inc = g.incidences(cur);
            let (next, edge) = if inc[0].1 == via { inc[1] } else { inc[0] };
            cur = next;
            via = edge;
        }
    }
    Ok(out.into_iter().collect())
}

/// The maximal threads incident to `v` (one entry per incident edge slot
/// leading into a thread; a cycle-closing thread appears once per end).
/// Each entry is (interior from v outward, far end).
pub fn incident_threads(g: &Graph, v: u32) -> Vec<(Vec<u32>, u32)> {
    let mut out = Vec::new();
    let mut seen_slots: HashSet<usize> = HashSet::new();
    for slot in 0..g.degree(v) {
        if seen_slots.contains(&slot) {
            continue;
        }
        let (mut cur, mut via) = g.incidences(v)[slot];
        let mut interior = Vec::new();
        while cur != v && g.degree(cur) == 2 {
            interior.push(cur);
            let inc = g.incidences(cur);
            let (next, edge) = if inc[0].1 == via { inc[1] } else { inc[0] };
            cur = next;
            via = edge;
        }
        if interior.is_empty() {
            continue;
        }
        if cur == v {
            // closed thread back at v: mark the slot where it re-enters
            if let Some(back) = (0..g.degree(v)).find(|&s| s != slot && g.incidences(v)[s].1 == via)
            {
                seen_slots.insert(back);
            }
        }
        out.push((interior, cur));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn path(n: u32) -> Graph {
        Graph::from_edges(&(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    pub fn cycle(n: u32) -> Graph {
        Graph::from_edges(&(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    pub fn complete(n: u32) -> Graph {
        let mut es = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                es.push((i, j));
            }
        }
        Graph::from_edges(&es)
    }

    #[test]
    fn parse_basics() {
        let g = Graph::parse("e 0 1\ne 1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(g.simple());

        let g = Graph::parse("e 0 1\ne 0 1").unwrap();
        assert!(!g.simple());
        assert_eq!(g.degree(0), 2);

        let g = Graph::parse("e 0 0").unwrap();
        assert!(!g.simple());
        assert_eq!(g.degree(0), 2);
        assert!(Graph::parse_simple("e 0 0").is_err());

        let err = Graph::parse("e 0\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));

        let g = Graph::parse("# comment\nv 7\ne 2 9 # inline\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.degree(7), 0);
    }

    #[test]
    fn serialize_roundtrip() {
        let g = Graph::parse("e 5 2\nv 9\ne 2 1").unwrap();
        let s = g.serialize();
        let h = Graph::parse(&s).unwrap();
        assert_eq!(h.serialize(), s);
        assert_eq!(h.n(), g.n());
        assert_eq!(h.m(), g.m());
    }

    #[test]
    fn handshake() {
        let g = complete(5);
        assert_eq!(g.degree_sum(), g.vertices().map(|v| g.degree(v)).sum());
    }

    #[test]
    fn girth_examples() {
        assert_eq!(cycle(6).girth(), Some(6));
        assert_eq!(cycle(6).odd_girth(), None);
        assert_eq!(path(4).girth(), None);
        assert_eq!(path(4).odd_girth(), None);
        assert_eq!(complete(4).girth(), Some(3));
        let pet = crate::generate::named_graph("petersen").unwrap().0;
        assert_eq!(pet.girth(), Some(5));
        assert_eq!(pet.odd_girth(), Some(5));
    }

    #[test]
    fn thread_queries() {
        // subdivide one edge of K4 twice: 0-4-5-1 replaces 0-1
        let g = Graph::from_edges(&[(0, 4), (4, 5), (5, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let ts = find_threads(&g, 2);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].ends, (0, 1));
        assert_eq!(ts[0].interior, vec![4, 5]);
        assert!(find_threads(&complete(4), 1).is_empty());

        // star with each edge subdivided once: center 0
        let g = Graph::from_edges(&[(0, 1), (1, 4), (0, 2), (2, 5), (0, 3), (3, 6)]);
        // leaves have degree 1, so the maximal threads end at degree-1 vertices
        let w = weak_two_neighbors(&g, 0).unwrap();
        assert_eq!(w, vec![1, 2, 3]);
        assert_eq!(weak_two_neighbors(&complete(4), 0).unwrap(), Vec::<u32>::new());

        // 3-vertex 0 with incident 2-thread, 1-thread, 1-thread
        let g = Graph::from_edges(&[
            (0, 1),
            (1, 2),
            (2, 10),
            (0, 3),
            (3, 11),
            (0, 4),
            (4, 12),
            (10, 11),
            (11, 12),
            (10, 12),
        ]);
        assert_eq!(weak_two_neighbors(&g, 0).unwrap().len(), 4);
        assert!(weak_two_neighbors(&g, 1).is_err());
    }

    #[test]
    fn cycle_component_classification() {
        let mut g = cycle(5);
        g.add_edge(10, 11);
        g.add_edge(11, 12);
        let (ts, cs) = threads_and_cycles(&g, 1);
        assert_eq!(cs, vec![vec![0, 1, 2, 3, 4]]);
        // path component 10-11-12: interior vertex 11, thread ends 10,12
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].ends, (10, 12));
    }

    #[test]
    fn maximal_thread_ends_not_degree_two() {
        let g = Graph::from_edges(&[(0, 4), (4, 5), (5, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        for t in find_threads(&g, 1) {
            assert_ne!(g.degree(t.ends.0), 2);
            assert_ne!(g.degree(t.ends.1), 2);
        }
    }

    #[test]
    fn square_of_star() {
        let g = Graph::from_edges(&[(0, 1), (0, 2), (0, 3)]);
        let sq = g.square();
        assert_eq!(sq.m(), 6); // K4
    }
}
