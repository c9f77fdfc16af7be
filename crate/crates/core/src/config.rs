//! Detectors for the reducible/unavoidable configurations, plus
//! lemma-level reports that check a structural hypothesis exactly and
//! then produce a member of the corresponding unavoidable set.

use crate::graph::{cycle_components, find_threads, weak_two_neighbors, Graph};
use crate::plane::PlaneGraph;
use crate::rational::{rat, rat_int, Rational};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigKind {
    LowVertex,
    Thread,
    WeakNeighborHub,
    LightEdge,
    TwoAlternatingCycle,
    IAlternatingSubgraph,
    KotzigEdge,
    KotzigFourCycle,
    TreeComponent,
    AdjacentTwos,
    ThreeVertexTwoTwos,
    AdjacentThreesWithTwos,
    GirthSevenPair,
    FiveFaceConfig,
    AdjacentTriangles,
    MidFace,
    TenFaceConfig,
}

impl ConfigKind {
    pub fn label(&self) -> &'static str {
        match self {
            ConfigKind::LowVertex => "LowVertex",
            ConfigKind::Thread => "Thread",
            ConfigKind::WeakNeighborHub => "WeakNeighborHub",
            ConfigKind::LightEdge => "LightEdge",
            ConfigKind::TwoAlternatingCycle => "TwoAlternatingCycle",
            ConfigKind::IAlternatingSubgraph => "IAlternatingSubgraph",
            ConfigKind::KotzigEdge => "KotzigEdge",
            ConfigKind::KotzigFourCycle => "KotzigFourCycle",
            ConfigKind::TreeComponent => "TreeComponent",
            ConfigKind::AdjacentTwos => "AdjacentTwos",
            ConfigKind::ThreeVertexTwoTwos => "ThreeVertexTwoTwos",
            ConfigKind::AdjacentThreesWithTwos => "AdjacentThreesWithTwos",
            ConfigKind::GirthSevenPair => "GirthSevenPair",
            ConfigKind::FiveFaceConfig => "FiveFaceConfig",
            ConfigKind::AdjacentTriangles => "AdjacentTriangles",
            ConfigKind::MidFace => "MidFace",
            ConfigKind::TenFaceConfig => "TenFaceConfig",
        }
    }
}

/// A detected configuration with the vertex/face ids realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub kind: ConfigKind,
    pub vertices: Vec<u32>,
    pub faces: Vec<usize>,
}

impl Configuration {
    fn verts(kind: ConfigKind, vertices: Vec<u32>) -> Self {
        Configuration {
            kind,
            vertices,
            faces: Vec::new(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("2-regular component present: {0:?}")]
    CycleComponent(Vec<u32>),
    #[error("minimum degree too small: vertex {vertex} has degree {degree}, need >= {need}")]
    MinDegree { vertex: u32, degree: usize, need: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("not a normal plane map: {0}")]
    NotNormal(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("unavoidable configuration missing — falsification signal")]
    Missing,
}

/// Smallest vertex of degree at most j.
pub fn find_low_vertex(g: &Graph, j: usize) -> Option<u32> {
    g.vertices().find(|&v| g.degree(v) <= j)
}

/// Lex-least edge uv with d(u)+d(v) at most w.
pub fn find_light_edge(g: &Graph, w: usize) -> Option<(u32, u32)> {
    let mut best: Option<(u32, u32)> = None;
    for &(u, v) in g.edges() {
        if u != v && g.degree(u) + g.degree(v) <= w {
            let e = (u.min(v), u.max(v));
            if best.is_none_or(|b| e < b) {
                best = Some(e);
            }
        }
    }
    best
}

/// Item (2) or (3) of the weak-neighbor structure: a 3-vertex with at
/// least 4t−3 weak 2-neighbors, or a 4⁺-vertex incident to a
/// (2t−1)-thread. Errors when a 2-regular component is present.
pub fn find_weak_hub(g: &Graph, t: u32) -> Result<Option<Configuration>, ConfigError> {
    if t == 0 {
        return Err(ConfigError::BadParam("t must be positive".into()));
    }
    if let Some(c) = cycle_components(g).into_iter().next() {
        return Err(ConfigError::CycleComponent(c));
    }
    let need = (4 * t - 3) as usize;
    for v in g.vertices() {
        if g.degree(v) == 3 {
            let weak = weak_two_neighbors(g, v).expect("degree checked");
            if weak.len() >= need {
                let mut vs = vec![v];
                vs.extend(weak);
                return Ok(Some(Configuration::verts(ConfigKind::WeakNeighborHub, vs)));
            }
        }
    }
    for th in find_threads(g, (2 * t - 1) as usize) {
        for end in [th.ends.0, th.ends.1] {
            if g.degree(end) >= 4 {
                let mut vs = vec![end];
                vs.extend(th.interior.iter().copied());
                return Ok(Some(Configuration::verts(ConfigKind::Thread, vs)));
            }
        }
    }
    Ok(None)
}

/// An even cycle alternating between 2-vertices and 3⁺-vertices.
pub fn find_two_alternating_cycle(g: &Graph) -> Option<Configuration> {
    // contract each 2-vertex whose neighbors both have higher degree into
    // a link between those neighbors; an alternating cycle is a cycle in
    // the resulting multigraph of links
    let mut links: Vec<(u32, u32, u32)> = Vec::new(); // (a, b, via 2-vertex)
    for v in g.vertices() {
        if g.degree(v) != 2 {
            continue;
        }
        let ns: Vec<u32> = g.neighbors(v).collect();
        let (a, b) = (ns[0], ns[1]);
        if a != v && b != v && a != b && g.degree(a) >= 3 && g.degree(b) >= 3 {
            links.push((a.min(b), a.max(b), v));
        }
    }
    links.sort();
    // parallel links already close an alternating 4-cycle
    for w in links.windows(2) {
        if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
            return Some(Configuration::verts(
                ConfigKind::TwoAlternatingCycle,
                vec![w[0].0, w[0].2, w[0].1, w[1].2],
            ));
        }
    }
    // otherwise find a cycle in the simple link graph by DFS
    let mut adj: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
    for &(a, b, via) in &links {
        adj.entry(a).or_default().push((b, via));
        adj.entry(b).or_default().push((a, via));
    }
    let mut state: BTreeMap<u32, (Option<u32>, Option<u32>)> = BTreeMap::new(); // parent, via
    let roots: Vec<u32> = adj.keys().copied().collect();
    for root in roots {
        if state.contains_key(&root) {
            continue;
        }
        state.insert(root, (None, None));
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            let from = state[&x].0;
            for &(y, via) in &adj[&x] {
                if Some(y) == from {
                    continue;
                }
                if state.contains_key(&y) {
                    // walk both ancestries to the meeting point
                    let mut path_x = vec![x];
                    let mut cur = x;
                    while let (Some(p), _) = state[&cur] {
                        path_x.push(p);
                        cur = p;
                    }
                    let mut path_y = vec![y];
                    let mut cur = y;
                    while let (Some(p), _) = state[&cur] {
                        path_y.push(p);
                        cur = p;
                    }
                    let setx: BTreeMap<u32, usize> =
                        path_x.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                    let mut cut = None;
                    for (i, &v) in path_y.iter().enumerate() {
                        if let Some(&j) = setx.get(&v) {
                            cut = Some((j, i));
                            break;
                        }
                    }
                    let (jx, jy) = cut.expect("common ancestor");
                    // hub cycle: x .. lca .. y, closed by the crossing link
                    let mut hubs: Vec<u32> = path_x[..=jx].to_vec();
                    let mut tail: Vec<u32> = path_y[..jy].to_vec();
                    tail.reverse();
                    hubs.extend(tail);
                    let mut cyc = Vec::new();
                    for i in 0..hubs.len() {
                        cyc.push(hubs[i]);
                        let a = hubs[i];
                        let b = hubs[(i + 1) % hubs.len()];
                        let mid = if i + 1 == hubs.len() {
                            via
                        } else {
                            // the 2-vertex of the tree link a-b
                            state[&if state[&a].0 == Some(b) { a } else { b }]
                                .1
                                .expect("tree link has a via vertex")
                        };
                        cyc.push(mid);
                    }
                    return Some(Configuration::verts(ConfigKind::TwoAlternatingCycle, cyc));
                }
                state.insert(y, (Some(x), Some(via)));
                stack.push(y);
            }
        }
    }
    None
}

/// Peeling detection of an i-alternating subgraph: U holds the vertices of
/// degree ≤ i (a light edge is reported instead if U is not independent),
/// W their neighbors, F every edge at U. Rounds simultaneously delete all
/// w with d_F(w) ≤ d_G(w) + i − Δ(G) − 1 together with their U-neighbors.
/// A nonempty fixpoint is the subgraph; empty means none exists.
pub fn find_i_alternating_subgraph(
    g: &Graph,
    i: usize,
) -> Result<Option<Configuration>, ConfigError> {
    let delta = g.max_degree();
    if i < 1 || i >= delta {
        return Err(ConfigError::BadParam(format!(
            "need 1 <= i < Δ = {delta}, got i = {i}"
        )));
    }
    let mut u_side: BTreeSet<u32> = g.vertices().filter(|&v| g.degree(v) <= i).collect();
    for &u in &u_side {
        for x in g.neighbors(u) {
            if u_side.contains(&x) {
                return Ok(Some(Configuration::verts(
                    ConfigKind::LightEdge,
                    vec![u.min(x), u.max(x)],
                )));
            }
        }
    }
    loop {
        if u_side.is_empty() {
            return Ok(None);
        }
        let w_side: BTreeSet<u32> = u_side.iter().flat_map(|&u| g.neighbors(u)).collect();
        let mut violating: Vec<u32> = Vec::new();
        for &w in &w_side {
            let df = g.neighbors(w).filter(|x| u_side.contains(x)).count();
            if df as i64 <= g.degree(w) as i64 + i as i64 - delta as i64 - 1 {
                violating.push(w);
            }
        }
        if violating.is_empty() {
            let mut vs: Vec<u32> = u_side.iter().copied().collect();
            vs.extend(w_side.iter().copied());
            return Ok(Some(Configuration::verts(
                ConfigKind::IAlternatingSubgraph,
                vs,
            )));
        }
        for w in violating {
            let gone: Vec<u32> = g.neighbors(w).filter(|x| u_side.contains(x)).collect();
            for u in gone {
                u_side.remove(&u);
            }
        }
    }
}

/// One-at-a-time variant of the peeling, for the order-independence
/// property check.
pub fn i_alternating_exists_sequential(g: &Graph, i: usize) -> Result<bool, ConfigError> {
    let delta = g.max_degree();
    if i < 1 || i >= delta {
        return Err(ConfigError::BadParam("i out of range".into()));
    }
    let mut u_side: BTreeSet<u32> = g.vertices().filter(|&v| g.degree(v) <= i).collect();
    for &u in &u_side {
        if g.neighbors(u).any(|x| u_side.contains(&x)) {
            return Ok(true); // a light edge; mirrors the simultaneous variant
        }
    }
    loop {
        if u_side.is_empty() {
            return Ok(false);
        }
        let w_side: BTreeSet<u32> = u_side.iter().flat_map(|&u| g.neighbors(u)).collect();
        let candidate = w_side.iter().copied().find(|&w| {
            let df = g.neighbors(w).filter(|x| u_side.contains(x)).count();
            df as i64 <= g.degree(w) as i64 + i as i64 - delta as i64 - 1
        });
        match candidate {
            None => return Ok(true),
            Some(w) => {
                let gone: Vec<u32> = g.neighbors(w).filter(|x| u_side.contains(x)).collect();
                for u in gone {
                    u_side.remove(&u);
                }
            }
        }
    }
}

/// Adjacent 2-vertices, or a component of the 3-vertex-induced subgraph
/// that is a tree whose leaving edges all end at 2-vertices. Requires
/// δ ≥ 2.
pub fn find_tree_component_config(g: &Graph) -> Result<Option<Configuration>, ConfigError> {
    if let Some(v) = g.vertices().min_by_key(|&v| g.degree(v)) {
        if g.degree(v) < 2 {
            return Err(ConfigError::MinDegree {
                vertex: v,
                degree: g.degree(v),
                need: 2,
            });
        }
    }
    if let Some(pair) = adjacent_twos(g) {
        return Ok(Some(Configuration::verts(
            ConfigKind::AdjacentTwos,
            vec![pair.0, pair.1],
        )));
    }
    Ok(tree_component(g).map(|s| Configuration::verts(ConfigKind::TreeComponent, s)))
}

pub(crate) fn adjacent_twos(g: &Graph) -> Option<(u32, u32)> {
    let mut best: Option<(u32, u32)> = None;
    for &(u, v) in g.edges() {
        if u != v && g.degree(u) == 2 && g.degree(v) == 2 {
            let e = (u.min(v), u.max(v));
            if best.is_none_or(|b| e < b) {
                best = Some(e);
            }
        }
    }
    best
}

/// A component of the subgraph induced by 3-vertices that is a tree whose
/// leaving edges all end at 2-vertices, as a sorted vertex list.
pub(crate) fn tree_component(g: &Graph) -> Option<Vec<u32>> {
    let three: BTreeSet<u32> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
    let h = g.induced(&three);
    for comp in h.components() {
        let edges_inside = comp.iter().map(|&v| h.degree(v)).sum::<usize>() / 2;
        if edges_inside != comp.len() - 1 {
            continue; // has a cycle
        }
        let leaving_ok = comp.iter().all(|&v| {
            g.neighbors(v)
                .filter(|u| !comp.contains(u))
                .all(|u| g.degree(u) == 2)
        });
        if leaving_ok {
            return Some(comp.into_iter().collect());
        }
    }
    None
}

/// An edge of weight ≤ 11, or a 4-cycle through two 3-vertices and a
/// common 10⁻-neighbor. Requires a normal plane map.
pub fn find_kotzig_config(pg: &PlaneGraph) -> Result<Option<Configuration>, ConfigError> {
    pg.check_normal().map_err(ConfigError::NotNormal)?;
    let g = &pg.graph;
    if let Some((u, v)) = find_light_edge(g, 11) {
        return Ok(Some(Configuration::verts(ConfigKind::KotzigEdge, vec![u, v])));
    }
    // 4-cycle x–z–y–w with d(x)=d(y)=3 and d(z) <= 10
    let threes: Vec<u32> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
    for (i, &x) in threes.iter().enumerate() {
        for &y in threes.iter().skip(i + 1) {
            let nx = g.neighbor_set(x);
            let common: Vec<u32> = g
                .neighbor_set(y)
                .into_iter()
                .filter(|u| nx.contains(u))
                .collect();
            if common.len() < 2 {
                continue;
            }
            if let Some(&z) = common.iter().find(|&&z| g.degree(z) <= 10) {
                let &w = common.iter().find(|&&w| w != z).expect("two common");
                return Ok(Some(Configuration::verts(
                    ConfigKind::KotzigFourCycle,
                    vec![x, z, y, w],
                )));
            }
        }
    }
    Ok(None)
}

/// Smallest 2-vertex having a neighbor of degree at most `bound`, with
/// that neighbor.
pub fn find_two_with_low_neighbor(g: &Graph, bound: usize) -> Option<(u32, u32)> {
    for v in g.vertices() {
        if g.degree(v) == 2 {
            if let Some(u) = g
                .neighbor_set(v)
                .into_iter()
                .find(|&u| g.degree(u) <= bound)
            {
                return Some((v, u));
            }
        }
    }
    None
}

fn five_face_config(pg: &PlaneGraph) -> Option<Configuration> {
    for (i, f) in pg.faces().iter().enumerate() {
        if f.len() != 5 {
            continue;
        }
        let vs = pg.face_vertices(i);
        if vs.len() != 5 {
            continue;
        }
        let threes = vs.iter().filter(|&&v| pg.graph.degree(v) == 3).count();
        let fives = vs.iter().filter(|&&v| pg.graph.degree(v) <= 5).count();
        if threes >= 4 && fives == 5 {
            return Some(Configuration {
                kind: ConfigKind::FiveFaceConfig,
                vertices: vs,
                faces: vec![i],
            });
        }
    }
    None
}

fn face_set_config(pg: &PlaneGraph) -> Option<Configuration> {
    // two 3-faces with a common edge
    for e in 0..pg.graph.m() {
        let (f1, f2) = pg.edge_sides(e);
        if f1 != f2 && pg.faces()[f1].len() == 3 && pg.faces()[f2].len() == 3 {
            let (u, v) = pg.graph.edges()[e];
            return Some(Configuration {
                kind: ConfigKind::AdjacentTriangles,
                vertices: vec![u.min(v), u.max(v)],
                faces: vec![f1.min(f2), f1.max(f2)],
            });
        }
    }
    for (i, f) in pg.faces().iter().enumerate() {
        if (4..=9).contains(&f.len()) {
            return Some(Configuration {
                kind: ConfigKind::MidFace,
                vertices: pg.face_vertices(i),
                faces: vec![i],
            });
        }
    }
    for (i, f) in pg.faces().iter().enumerate() {
        if f.len() == 10 && f.walk.iter().all(|&v| pg.graph.degree(v) == 3) {
            return Some(Configuration {
                kind: ConfigKind::TenFaceConfig,
                vertices: pg.face_vertices(i),
                faces: vec![i],
            });
        }
    }
    None
}

/// One item of the unavoidable set for sparse subcubic graphs: a
/// 1⁻-vertex, adjacent 2-vertices, a 3-vertex with two 2-neighbors, or
/// adjacent 3-vertices each having a 2-neighbor.
pub fn find_subcubic_item(g: &Graph) -> Option<Configuration> {
    if let Some(v) = find_low_vertex(g, 1) {
        return Some(Configuration::verts(ConfigKind::LowVertex, vec![v]));
    }
    if let Some((u, v)) = adjacent_twos(g) {
        return Some(Configuration::verts(ConfigKind::AdjacentTwos, vec![u, v]));
    }
    for v in g.vertices() {
        if g.degree(v) == 3 {
            let twos: Vec<u32> = g
                .neighbor_set(v)
                .into_iter()
                .filter(|&u| g.degree(u) == 2)
                .collect();
            if twos.len() >= 2 {
                return Some(Configuration::verts(
                    ConfigKind::ThreeVertexTwoTwos,
                    vec![v, twos[0], twos[1]],
                ));
            }
        }
    }
    let has_two_nbr = |v: u32| g.neighbor_set(v).into_iter().any(|u| g.degree(u) == 2);
    for &(u, v) in g.edges() {
        if u != v && g.degree(u) == 3 && g.degree(v) == 3 && has_two_nbr(u) && has_two_nbr(v) {
            return Some(Configuration::verts(
                ConfigKind::AdjacentThreesWithTwos,
                vec![u.min(v), u.max(v)],
            ));
        }
    }
    None
}

/// The built-in structural lemmas exposed to `unavoidable_report` and the
/// CLI. Each carries its exact hypothesis check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma {
    /// d̄ < 2 + 1/(3t−2), no 2-regular component ⇒ 1⁻-vertex or
    /// (2t−1)-thread.
    ThreadOrLow { t: u32 },
    /// d̄ < 2 + 1/(2t−1), no 2-regular component ⇒ 1⁻-vertex, heavy
    /// weak-neighbor 3-vertex, or 4⁺-vertex with a (2t−1)-thread.
    WeakHubs { t: u32 },
    /// Δ ≤ 3, d̄ < 36/13 ⇒ one of the four subcubic items.
    SparseSubcubic,
    /// Simple plane, δ ≥ 2 ⇒ edge of weight ≤ 15 or 2-alternating cycle.
    PlaneLight,
    /// Plane, δ ≥ 3 ⇒ adjacent triangles, a 4..9-face, or an all-cubic
    /// 10-face.
    FaceSet,
    /// Normal plane map ⇒ edge of weight ≤ 11 or the special 4-cycle.
    NormalMap,
    /// Plane, girth ≥ 7, δ ≥ 2 ⇒ 2-vertex with a 3⁻-neighbor.
    GirthSeven,
    /// Plane, girth ≥ 5, δ ≥ 2 ⇒ 2-vertex with a 5⁻-neighbor or the
    /// special 5-face.
    GirthFive,
    /// δ = 2, d̄ < 8/3 ⇒ adjacent 2-vertices or a qualifying tree
    /// component of the 3-vertex subgraph.
    TreeComponents,
}

impl Lemma {
    pub fn parse(name: &str, t: Option<u32>) -> Result<Lemma, ConfigError> {
        let need_t = || t.ok_or_else(|| ConfigError::BadParam(format!("lemma {name} needs --t")));
        match name {
            "threads" => Ok(Lemma::ThreadOrLow { t: need_t()? }),
            "weak-hubs" => Ok(Lemma::WeakHubs { t: need_t()? }),
            "subcubic" => Ok(Lemma::SparseSubcubic),
            "plane-light" => Ok(Lemma::PlaneLight),
            "faces" => Ok(Lemma::FaceSet),
            "normal-map" => Ok(Lemma::NormalMap),
            "girth7" => Ok(Lemma::GirthSeven),
            "girth5" => Ok(Lemma::GirthFive),
            "tree-comp" => Ok(Lemma::TreeComponents),
            _ => Err(ConfigError::BadParam(format!("unknown lemma id {name:?}"))),
        }
    }

    pub fn needs_embedding(&self) -> bool {
        matches!(
            self,
            Lemma::PlaneLight
                | Lemma::FaceSet
                | Lemma::NormalMap
                | Lemma::GirthSeven
                | Lemma::GirthFive
        )
    }
}

fn avg_degree(g: &Graph) -> Rational {
    rat(2 * g.m() as i64, g.n() as i64)
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), ConfigError> {
    if cond {
        Ok(())
    } else {
        Err(ConfigError::Hypothesis(msg.into()))
    }
}

fn require_min_degree(g: &Graph, need: usize) -> Result<(), ConfigError> {
    if let Some(v) = g.vertices().min_by_key(|&v| g.degree(v)) {
        if g.degree(v) < need {
            return Err(ConfigError::MinDegree {
                vertex: v,
                degree: g.degree(v),
                need,
            });
        }
    }
    Ok(())
}

/// Checks the lemma's hypothesis exactly, then returns a configuration
/// from its unavoidable set. `Missing` signals a falsified lemma or a bug
/// rather than a legitimate "none".
pub fn unavoidable_report(
    g: &Graph,
    pg: Option<&PlaneGraph>,
    lemma: Lemma,
) -> Result<Configuration, ConfigError> {
    if g.n() == 0 {
        return Err(ConfigError::Hypothesis("empty graph".into()));
    }
    match lemma {
        Lemma::ThreadOrLow { t } => {
            if t == 0 {
                return Err(ConfigError::BadParam("t must be positive".into()));
            }
            if let Some(c) = cycle_components(g).into_iter().next() {
                return Err(ConfigError::CycleComponent(c));
            }
            let bound = rat_int(2) + rat(1, 3 * t as i64 - 2);
            require(
                avg_degree(g) < bound,
                format!("average degree {} not below {}", avg_degree(g), bound),
            )?;
            if let Some(v) = find_low_vertex(g, 1) {
                return Ok(Configuration::verts(ConfigKind::LowVertex, vec![v]));
            }
            find_threads(g, (2 * t - 1) as usize)
                .into_iter()
                .next()
                .map(|th| {
                    let mut vs = vec![th.ends.0, th.ends.1];
                    vs.extend(th.interior);
                    Configuration::verts(ConfigKind::Thread, vs)
                })
                .ok_or(ConfigError::Missing)
        }
        Lemma::WeakHubs { t } => {
            if t == 0 {
                return Err(ConfigError::BadParam("t must be positive".into()));
            }
            if let Some(c) = cycle_components(g).into_iter().next() {
                return Err(ConfigError::CycleComponent(c));
            }
            let bound = rat_int(2) + rat(1, 2 * t as i64 - 1);
            require(
                avg_degree(g) < bound,
                format!("average degree {} not below {}", avg_degree(g), bound),
            )?;
            if let Some(v) = find_low_vertex(g, 1) {
                return Ok(Configuration::verts(ConfigKind::LowVertex, vec![v]));
            }
            find_weak_hub(g, t)?.ok_or(ConfigError::Missing)
        }
        Lemma::SparseSubcubic => {
            require(g.max_degree() <= 3, "maximum degree exceeds 3")?;
            require(
                avg_degree(g) < rat(36, 13),
                format!("average degree {} not below 36/13", avg_degree(g)),
            )?;
            find_subcubic_item(g).ok_or(ConfigError::Missing)
        }
        Lemma::PlaneLight => {
            let pg = pg.ok_or_else(|| ConfigError::BadParam("embedding required".into()))?;
            require(pg.graph.simple(), "graph must be simple")?;
            require_min_degree(&pg.graph, 2)?;
            if let Some((u, v)) = find_light_edge(&pg.graph, 15) {
                return Ok(Configuration::verts(ConfigKind::LightEdge, vec![u, v]));
            }
            find_two_alternating_cycle(&pg.graph).ok_or(ConfigError::Missing)
        }
        Lemma::FaceSet => {
            let pg = pg.ok_or_else(|| ConfigError::BadParam("embedding required".into()))?;
            require_min_degree(&pg.graph, 3)?;
            face_set_config(pg).ok_or(ConfigError::Missing)
        }
        Lemma::NormalMap => {
            let pg = pg.ok_or_else(|| ConfigError::BadParam("embedding required".into()))?;
            find_kotzig_config(pg)?.ok_or(ConfigError::Missing)
        }
        Lemma::GirthSeven => {
            let pg = pg.ok_or_else(|| ConfigError::BadParam("embedding required".into()))?;
            require_min_degree(&pg.graph, 2)?;
            require(pg.graph.girth().is_none_or(|x| x >= 7), "girth below 7")?;
            find_two_with_low_neighbor(&pg.graph, 3)
                .map(|(v, u)| Configuration::verts(ConfigKind::GirthSevenPair, vec![v, u]))
                .ok_or(ConfigError::Missing)
        }
        Lemma::GirthFive => {
            let pg = pg.ok_or_else(|| ConfigError::BadParam("embedding required".into()))?;
            require_min_degree(&pg.graph, 2)?;
            require(pg.graph.girth().is_none_or(|x| x >= 5), "girth below 5")?;
            if let Some((v, u)) = find_two_with_low_neighbor(&pg.graph, 5) {
                return Ok(Configuration::verts(ConfigKind::GirthSevenPair, vec![v, u]));
            }
            five_face_config(pg).ok_or(ConfigError::Missing)
        }
        Lemma::TreeComponents => {
            require_min_degree(g, 2)?;
            require(g.min_degree() == 2, "minimum degree must equal 2")?;
            require(
                avg_degree(g) < rat(8, 3),
                format!("average degree {} not below 8/3", avg_degree(g)),
            )?;
            find_tree_component_config(g)?.ok_or(ConfigError::Missing)
        }
    }
}

/// Re-checks a configuration's defining predicate on its support.
pub fn revalidate(g: &Graph, pg: Option<&PlaneGraph>, c: &Configuration) -> bool {
    match c.kind {
        ConfigKind::LowVertex => c.vertices.len() == 1 && g.degree(c.vertices[0]) <= 1,
        ConfigKind::Thread => {
            c.vertices.len() >= 3 && c.vertices[2..].iter().all(|&v| g.degree(v) == 2)
        }
        ConfigKind::WeakNeighborHub => {
            let v = c.vertices[0];
            g.degree(v) == 3
                && weak_two_neighbors(g, v)
                    .map(|w| c.vertices[1..].iter().all(|x| w.contains(x)))
                    .unwrap_or(false)
        }
        ConfigKind::LightEdge | ConfigKind::KotzigEdge => {
            c.vertices.len() == 2 && g.has_edge(c.vertices[0], c.vertices[1])
        }
        ConfigKind::TwoAlternatingCycle => {
            let n = c.vertices.len();
            n >= 4
                && n % 2 == 0
                && (0..n).all(|i| g.has_edge(c.vertices[i], c.vertices[(i + 1) % n]))
                && c.vertices.iter().skip(1).step_by(2).all(|&v| g.degree(v) == 2)
                && c.vertices.iter().step_by(2).all(|&v| g.degree(v) >= 3)
        }
        ConfigKind::IAlternatingSubgraph => !c.vertices.is_empty(),
        ConfigKind::KotzigFourCycle => {
            let [x, z, y, w] = c.vertices[..] else {
                return false;
            };
            g.degree(x) == 3
                && g.degree(y) == 3
                && g.degree(z) <= 10
                && g.has_edge(x, z)
                && g.has_edge(z, y)
                && g.has_edge(y, w)
                && g.has_edge(w, x)
        }
        ConfigKind::TreeComponent => {
            let set: BTreeSet<u32> = c.vertices.iter().copied().collect();
            set.iter().all(|&v| g.degree(v) == 3)
                && crate::color::find_cycle_within(g, &set).is_none()
                && set.iter().all(|&v| {
                    g.neighbors(v)
                        .filter(|u| !set.contains(u))
                        .all(|u| g.degree(u) == 2)
                })
        }
        ConfigKind::AdjacentTwos => {
            c.vertices.len() == 2
                && g.has_edge(c.vertices[0], c.vertices[1])
                && c.vertices.iter().all(|&v| g.degree(v) == 2)
        }
        ConfigKind::ThreeVertexTwoTwos => {
            let v = c.vertices[0];
            g.degree(v) == 3
                && c.vertices[1..]
                    .iter()
                    .all(|&u| g.degree(u) == 2 && g.has_edge(v, u))
        }
        ConfigKind::AdjacentThreesWithTwos => {
            let [u, v] = c.vertices[..] else { return false };
            let has_two = |x: u32| g.neighbor_set(x).into_iter().any(|y| g.degree(y) == 2);
            g.has_edge(u, v) && g.degree(u) == 3 && g.degree(v) == 3 && has_two(u) && has_two(v)
        }
        ConfigKind::GirthSevenPair => {
            let [v, u] = c.vertices[..] else { return false };
            g.degree(v) == 2 && g.has_edge(v, u)
        }
        ConfigKind::FiveFaceConfig => {
            let Some(pg) = pg else { return false };
            let f = c.faces[0];
            pg.faces()[f].len() == 5
                && pg
                    .face_vertices(f)
                    .iter()
                    .filter(|&&v| pg.graph.degree(v) == 3)
                    .count()
                    >= 4
        }
        ConfigKind::AdjacentTriangles => {
            let Some(pg) = pg else { return false };
            c.faces.len() == 2 && c.faces.iter().all(|&f| pg.faces()[f].len() == 3)
        }
        ConfigKind::MidFace => {
            let Some(pg) = pg else { return false };
            (4..=9).contains(&pg.faces()[c.faces[0]].len())
        }
        ConfigKind::TenFaceConfig => {
            let Some(pg) = pg else { return false };
            let f = c.faces[0];
            pg.faces()[f].len() == 10
                && pg.faces()[f].walk.iter().all(|&v| pg.graph.degree(v) == 3)
        }
    }
}
