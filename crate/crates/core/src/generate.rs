//! Constructors for the sharpness families and named graphs, each with a
//! certified invariant asserted where cheap. Vertex ids are deterministic
//! and documented per family, since tests freeze them as goldens.

use crate::graph::{Graph, GraphError};
use std::collections::BTreeMap;

pub type Rotation = BTreeMap<u32, Vec<u32>>;

/// Complete graph on ids 0..n-1.
pub fn complete(n: u32) -> Graph {
    let mut es = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            es.push((i, j));
        }
    }
    let mut g = Graph::from_edges(&es);
    if n == 1 {
        g.add_vertex(0);
    }
    g
}

/// Cycle on ids 0..n-1.
pub fn cycle(n: u32) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(&(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

/// Path on ids 0..n-1.
pub fn path(n: u32) -> Graph {
    assert!(n >= 1);
    let mut g = Graph::from_edges(&(0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>());
    if n == 1 {
        g.add_vertex(0);
    }
    g
}

/// Derives a counterclockwise rotation system from straight-line planar
/// positions by sorting each neighbor list by angle. Simple graphs only.
pub fn rotation_from_positions(g: &Graph, pos: &BTreeMap<u32, (f64, f64)>) -> Rotation {
    let mut rot = BTreeMap::new();
    for v in g.vertices() {
        let (vx, vy) = pos[&v];
        let mut nbrs: Vec<u32> = g.neighbors(v).collect();
        nbrs.sort_by(|&a, &b| {
            let (ax, ay) = pos[&a];
            let (bx, by) = pos[&b];
            let ta = (ay - vy).atan2(ax - vx);
            let tb = (by - vy).atan2(bx - vx);
            ta.partial_cmp(&tb).unwrap().then(a.cmp(&b))
        });
        rot.insert(v, nbrs);
    }
    rot
}

fn rotation_from_positions_3d(g: &Graph, pos: &BTreeMap<u32, [f64; 3]>) -> Rotation {
    let mut rot = BTreeMap::new();
    for v in g.vertices() {
        let p = pos[&v];
        let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        let n = [p[0] / norm, p[1] / norm, p[2] / norm];
        // tangent basis at the (convex-position) vertex
        let seed = if n[0].abs() < 0.9 {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 1.0, 0.0]
        };
        let dot = seed[0] * n[0] + seed[1] * n[1] + seed[2] * n[2];
        let mut e1 = [seed[0] - dot * n[0], seed[1] - dot * n[1], seed[2] - dot * n[2]];
        let l1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
        e1 = [e1[0] / l1, e1[1] / l1, e1[2] / l1];
        let e2 = [
            n[1] * e1[2] - n[2] * e1[1],
            n[2] * e1[0] - n[0] * e1[2],
            n[0] * e1[1] - n[1] * e1[0],
        ];
        let mut nbrs: Vec<u32> = g.neighbors(v).collect();
        let angle = |u: u32| {
            let q = pos[&u];
            let d = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
            let x = d[0] * e1[0] + d[1] * e1[1] + d[2] * e1[2];
            let y = d[0] * e2[0] + d[1] * e2[1] + d[2] * e2[2];
            y.atan2(x)
        };
        nbrs.sort_by(|&a, &b| angle(a).partial_cmp(&angle(b)).unwrap().then(a.cmp(&b)));
        rot.insert(v, nbrs);
    }
    rot
}

fn polyhedron(coords: Vec<[f64; 3]>, edge_len2: f64) -> (Graph, Rotation) {
    let mut g = Graph::new();
    for i in 0..coords.len() {
        g.add_vertex(i as u32);
    }
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            let d2 = (0..3).map(|k| (coords[i][k] - coords[j][k]).powi(2)).sum::<f64>();
            if (d2 - edge_len2).abs() < 1e-6 {
                g.add_edge(i as u32, j as u32);
            }
        }
    }
    let pos: BTreeMap<u32, [f64; 3]> = coords
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as u32, c))
        .collect();
    let rot = rotation_from_positions_3d(&g, &pos);
    (g, rot)
}

fn icosahedron_coords() -> Vec<[f64; 3]> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = Vec::new();
    for &s1 in &[-1.0f64, 1.0] {
        for &s2 in &[-1.0f64, 1.0] {
            v.push([0.0, s1, s2 * phi]);
            v.push([s1, s2 * phi, 0.0]);
            v.push([s2 * phi, 0.0, s1]);
        }
    }
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

fn icosahedron() -> (Graph, Rotation) {
    // edge length 2 between nearest coordinate pairs
    polyhedron(icosahedron_coords(), 4.0)
}

fn dodecahedron() -> (Graph, Rotation) {
    // dual of the icosahedron: vertices are icosahedron faces (triangles),
    // adjacent when the triangles share an edge
    let (ig, _) = icosahedron();
    let coords = icosahedron_coords();
    let vs: Vec<u32> = ig.vertices().collect();
    let mut tris = Vec::new();
    for (ai, &a) in vs.iter().enumerate() {
        for (bi, &b) in vs.iter().enumerate().skip(ai + 1) {
            if !ig.has_edge(a, b) {
                continue;
            }
            for &c in vs.iter().skip(bi + 1) {
                if ig.has_edge(a, c) && ig.has_edge(b, c) {
                    tris.push([a, b, c]);
                }
            }
        }
    }
    tris.sort();
    let mut g = Graph::new();
    let mut centers = BTreeMap::new();
    for (i, t) in tris.iter().enumerate() {
        g.add_vertex(i as u32);
        let mut ctr = [0.0f64; 3];
        for &v in t {
            for k in 0..3 {
                ctr[k] += coords[v as usize][k] / 3.0;
            }
        }
        centers.insert(i as u32, ctr);
    }
    for i in 0..tris.len() {
        for j in i + 1..tris.len() {
            let shared = tris[i].iter().filter(|v| tris[j].contains(v)).count();
            if shared == 2 {
                g.add_edge(i as u32, j as u32);
            }
        }
    }
    let rot = rotation_from_positions_3d(&g, &centers);
    (g, rot)
}

fn cube_graph() -> (Graph, Rotation) {
    let mut coords = Vec::new();
    for &x in &[-1.0f64, 1.0] {
        for &y in &[-1.0f64, 1.0] {
            for &z in &[-1.0f64, 1.0] {
                coords.push([x, y, z]);
            }
        }
    }
    polyhedron(coords, 4.0)
}

fn tetrahedron() -> (Graph, Rotation) {
    let coords = vec![
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ];
    polyhedron(coords, 8.0)
}

/// Cycle C_n with its 2-face embedding.
pub fn cycle_embedded(n: u32) -> (Graph, Rotation) {
    let g = cycle(n);
    let rot: Rotation = (0..n)
        .map(|i| (i, vec![(i + n - 1) % n, (i + 1) % n]))
        .collect();
    (g, rot)
}

/// Wheel: hub 0 joined to the rim cycle 1..=n.
pub fn wheel_embedded(n: u32) -> (Graph, Rotation) {
    assert!(n >= 3);
    let mut g = Graph::new();
    let mut pos = BTreeMap::new();
    pos.insert(0, (0.0, 0.0));
    g.add_vertex(0);
    for i in 1..=n {
        let a = 2.0 * std::f64::consts::PI * (i - 1) as f64 / n as f64;
        pos.insert(i, (a.cos(), a.sin()));
        g.add_edge(0, i);
    }
    for i in 1..=n {
        g.add_edge(i, if i == n { 1 } else { i + 1 });
    }
    let rot = rotation_from_positions(&g, &pos);
    (g, rot)
}

/// Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes i—i+5.
pub fn petersen() -> Graph {
    let mut es = Vec::new();
    for i in 0..5 {
        es.push((i, (i + 1) % 5));
        es.push((i, i + 5));
        es.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(&es)
}

/// Heawood graph as the Fano incidence graph: points 0..6, lines 7..13,
/// line 7+j incident to points {j, j+1, j+3} mod 7.
pub fn heawood() -> Graph {
    let mut es = Vec::new();
    for j in 0..7u32 {
        for d in [0, 1, 3] {
            es.push(((j + d) % 7, 7 + j));
        }
    }
    Graph::from_edges(&es)
}

/// Heawood graph minus the point vertex 0; ids are preserved.
pub fn heawood_minus_vertex() -> Graph {
    let g = heawood();
    let drop = std::collections::BTreeSet::from([0u32]);
    g.remove_vertices(&drop)
}

/// Named graphs with hand-checkable embeddings where the family is planar.
pub fn named_graph(name: &str) -> Result<(Graph, Option<Rotation>), GraphError> {
    match name {
        "petersen" => Ok((petersen(), None)),
        "heawood" => Ok((heawood(), None)),
        "heawood_minus_vertex" => Ok((heawood_minus_vertex(), None)),
        "dodecahedron" => {
            let (g, r) = dodecahedron();
            Ok((g, Some(r)))
        }
        "icosahedron" => {
            let (g, r) = icosahedron();
            Ok((g, Some(r)))
        }
        "cube" => {
            let (g, r) = cube_graph();
            Ok((g, Some(r)))
        }
        "K4" => {
            let (g, r) = tetrahedron();
            Ok((g, Some(r)))
        }
        _ => {
            if let Some(n) = name.strip_prefix("K").and_then(|s| s.parse::<u32>().ok()) {
                return Ok((complete(n), None));
            }
            if let Some(n) = name.strip_prefix("C").and_then(|s| s.parse::<u32>().ok()) {
                let (g, r) = cycle_embedded(n);
                return Ok((g, Some(r)));
            }
            if let Some(n) = name.strip_prefix("W").and_then(|s| s.parse::<u32>().ok()) {
                let (g, r) = wheel_embedded(n);
                return Ok((g, Some(r)));
            }
            Err(GraphError::Validation(format!("unknown graph name {name:?}")))
        }
    }
}

/// The circular clique: vertices Z_p, edges between residues differing by
/// at least q and at most p−q. Requires p > 2q ≥ 2.
pub fn circular_clique(p: u32, q: u32) -> Result<Graph, GraphError> {
    if q < 1 || p <= 2 * q {
        return Err(GraphError::Validation(format!(
            "circular clique needs p > 2q >= 2, got p={p}, q={q}"
        )));
    }
    let mut g = Graph::new();
    for v in 0..p {
        g.add_vertex(v);
    }
    for i in 0..p {
        for j in i + 1..p {
            let d = j - i;
            if d >= q && d <= p - q {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Two (2t+1)-cycles sharing the edge 0–1, plus a (2t−2)-thread joining the
/// vertices opposite that edge. Average degree 2 + 2/(3t−1); G_1 = K4.
pub fn example_gt(t: u32) -> Graph {
    assert!(t >= 1);
    let mut g = Graph::new();
    g.add_edge(0, 1);
    // cycle 1: 0,1 then interior c_1..c_{2t-1} with ids 2..=2t
    let c: Vec<u32> = (2..=2 * t).collect();
    // cycle 2: interior d_1..d_{2t-1} with ids 2t+1..=4t-1
    let d: Vec<u32> = (2 * t + 1..=4 * t - 1).collect();
    for (first, chain) in [(&c, 1u32), (&d, 1u32)] {
        let mut prev = chain;
        for &x in first.iter() {
            g.add_edge(prev, x);
            prev = x;
        }
        g.add_edge(prev, 0);
    }
    let opp1 = c[t as usize - 1];
    let opp2 = d[t as usize - 1];
    // (2t-2)-thread from opp1 to opp2, interior ids 4t..6t-3
    let mut prev = opp1;
    for x in 4 * t..=(6 * t).saturating_sub(3) {
        g.add_edge(prev, x);
        prev = x;
    }
    g.add_edge(prev, opp2);
    g
}

/// Replaces each edge of a 3-regular graph by an (ℓ−1)-thread, giving
/// average degree 2 + 2/(3ℓ−1). New interior ids follow the largest
/// original id, in edge order.
pub fn thread_replace(g: &Graph, ell: u32) -> Result<Graph, GraphError> {
    if g.vertices().any(|v| g.degree(v) != 3) {
        return Err(GraphError::Validation("thread_replace requires a 3-regular graph".into()));
    }
    assert!(ell >= 1);
    let mut out = Graph::new();
    for v in g.vertices() {
        out.add_vertex(v);
    }
    let mut next = g.vertices().max().map_or(0, |v| v + 1);
    for &(u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..ell - 1 {
            out.add_edge(prev, next);
            prev = next;
            next += 1;
        }
        out.add_edge(prev, v);
    }
    Ok(out)
}

/// K_n with every edge subdivided once: ids 0..n-1 are the branch
/// vertices, n.. the subdivision vertices in pair order. mad = 4 − 8/(n+1).
pub fn subdivided_complete(n: u32) -> Graph {
    assert!(n >= 2);
    let mut g = Graph::new();
    let mut next = n;
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, next);
            g.add_edge(next, j);
            next += 1;
        }
    }
    g
}

/// The fat triangle (hubs 0,1,2 with k parallel edges per pair) with every
/// edge subdivided once. Subdivision ids start at 3, grouped per hub pair.
pub fn fat_triangle_subdivided(k: u32) -> Graph {
    assert!(k >= 1);
    let mut g = Graph::new();
    let mut next = 3;
    for (a, b) in [(0u32, 1u32), (1, 2), (0, 2)] {
        for _ in 0..k {
            g.add_edge(a, next);
            g.add_edge(next, b);
            next += 1;
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gadget {
    /// The book B_r: K2 joined to r independent vertices.
    Book(u32),
    /// F_k: k copies of B_{k+1} with one degree-(k+2) vertex merged.
    Fk(u32),
    /// G_{k,n}: 2n+1 copies of F_k, a cycle through the high-degree hubs,
    /// all but one cycle edge subdivided.
    Gkn(u32, u32),
}

/// Book: spine 0,1; pages 2..r+1.
fn book_into(g: &mut Graph, r: u32, base: u32) -> (u32, u32) {
    g.add_edge(base, base + 1);
    for p in 0..r {
        g.add_edge(base, base + 2 + p);
        g.add_edge(base + 1, base + 2 + p);
    }
    (base, base + 2 + r)
}

/// F_k with its hub at `base`; returns (hub, next free id).
fn fk_into(g: &mut Graph, k: u32, base: u32) -> (u32, u32) {
    let hub = base;
    g.add_vertex(hub);
    let mut next = base + 1;
    for _ in 0..k {
        // one copy of B_{k+1}: spine = (hub, other), pages follow
        let other = next;
        g.add_edge(hub, other);
        for p in 0..k + 1 {
            g.add_edge(hub, other + 1 + p);
            g.add_edge(other, other + 1 + p);
        }
        next = other + 2 + k;
    }
    (hub, next)
}

pub fn gadget_family(which: Gadget) -> Graph {
    match which {
        Gadget::Book(r) => {
            let mut g = Graph::new();
            book_into(&mut g, r, 0);
            g
        }
        Gadget::Fk(k) => {
            assert!(k >= 1);
            let mut g = Graph::new();
            fk_into(&mut g, k, 0);
            g
        }
        Gadget::Gkn(k, n) => {
            assert!(k >= 1 && n >= 1);
            let mut g = Graph::new();
            let mut hubs = Vec::new();
            let mut next = 0;
            for _ in 0..2 * n + 1 {
                let (hub, nx) = fk_into(&mut g, k, next);
                hubs.push(hub);
                next = nx;
            }
            // cycle through the hubs; subdivide every edge except the last
            for i in 0..hubs.len() {
                let a = hubs[i];
                let b = hubs[(i + 1) % hubs.len()];
                if i + 1 == hubs.len() {
                    g.add_edge(a, b);
                } else {
                    g.add_edge(a, next);
                    g.add_edge(next, b);
                    next += 1;
                }
            }
            g
        }
    }
}

/// The chain-of-diamonds witness that mad < 12/5 is sharp for
/// (0,1)-colorability: 17 vertices, 21 edges, 6|V| − 5|E| = −3.
pub fn non_improper_01_witness() -> Graph {
    Graph::from_edges(&[
        (0, 1),
        (0, 6),
        (1, 2),
        (1, 6),
        (1, 7),
        (2, 3),
        (2, 7),
        (3, 4),
        (4, 5),
        (5, 8),
        (5, 14),
        (8, 14),
        (9, 10),
        (9, 15),
        (10, 11),
        (10, 15),
        (10, 16),
        (11, 12),
        (11, 16),
        (12, 13),
        (13, 14),
    ])
}

/// The ring-of-diamonds witness that is not (1,1)-colorable: 17 vertices,
/// 24 edges.
pub fn non_improper_11_witness() -> Graph {
    Graph::from_edges(&[
        (0, 1),
        (0, 3),
        (1, 2),
        (1, 3),
        (2, 3),
        (3, 4),
        (3, 15),
        (3, 16),
        (4, 5),
        (5, 6),
        (5, 7),
        (5, 8),
        (5, 9),
        (6, 7),
        (7, 8),
        (9, 10),
        (10, 11),
        (10, 12),
        (10, 13),
        (10, 14),
        (11, 12),
        (12, 13),
        (14, 15),
        (15, 16),
    ])
}

/// Subdivides every edge `k` times, rewriting the rotation so the
/// embedding carries over. New ids follow the largest original id.
pub fn subdivide_embedded(g: &Graph, rot: &Rotation, k: u32) -> (Graph, Rotation) {
    let mut out = Graph::new();
    let mut new_rot: Rotation = BTreeMap::new();
    for v in g.vertices() {
        out.add_vertex(v);
    }
    let mut next = g.vertices().max().map_or(0, |v| v + 1);
    // first/last interior vertex per original edge
    let mut ends: Vec<(u32, u32)> = Vec::with_capacity(g.m());
    for &(u, v) in g.edges() {
        if k == 0 {
            out.add_edge(u, v);
            ends.push((v, u));
            continue;
        }
        let first = next;
        let mut prev = u;
        for i in 0..k {
            out.add_edge(prev, next);
            let before = if i == 0 { u } else { next - 1 };
            let after = if i + 1 == k { v } else { next + 1 };
            new_rot.insert(next, vec![before, after]);
            prev = next;
            next += 1;
        }
        out.add_edge(prev, v);
        ends.push((first, prev));
    }
    for v in g.vertices() {
        // walk this vertex's rotation slots, substituting interior ids
        let mut used: BTreeMap<usize, bool> = BTreeMap::new();
        let mut nbrs = Vec::new();
        for &u in &rot[&v] {
            // find the matching incident edge slot not yet consumed
            let slot = g
                .incidences(v)
                .iter()
                .position(|&(w, e)| w == u && !used.get(&e).copied().unwrap_or(false))
                .expect("rotation neighbor matches an edge");
            let e = g.incidences(v)[slot].1;
            used.insert(e, true);
            if k == 0 {
                nbrs.push(u);
            } else {
                let (first, last) = ends[e];
                let (tail, _) = g.edges()[e];
                nbrs.push(if tail == v { first } else { last });
            }
        }
        new_rot.insert(v, nbrs);
    }
    (out, new_rot)
}
