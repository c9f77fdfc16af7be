//! Seeded random samplers shared by the property and acceptance suites.

#![allow(dead_code)]

use dcg_core::generate::{self, Rotation};
use dcg_core::graph::Graph;
use dcg_core::rational::rat;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random tree on ids 0..n-1 by random attachment.
pub fn random_tree(r: &mut ChaCha8Rng, n: u32) -> Graph {
    let mut g = Graph::new();
    g.add_vertex(0);
    for v in 1..n {
        let parent = r.random_range(0..v);
        g.add_edge(parent, v);
    }
    g
}

/// Random connected simple graph: a tree plus `extra` random chords.
pub fn random_sparse(r: &mut ChaCha8Rng, n: u32, extra: u32) -> Graph {
    let mut g = random_tree(r, n);
    let mut tries = 0;
    let mut added = 0;
    while added < extra && tries < 200 {
        tries += 1;
        let u = r.random_range(0..n);
        let v = r.random_range(0..n);
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v);
            added += 1;
        }
    }
    g
}

/// Random connected graph with average degree strictly below num/den and
/// no 2-regular component.
pub fn random_below(r: &mut ChaCha8Rng, n: u32, num: i64, den: i64) -> Graph {
    loop {
        let mut g = random_tree(r, n);
        // add chords while the bound keeps
        for _ in 0..n {
            let u = r.random_range(0..n);
            let v = r.random_range(0..n);
            if u == v || g.has_edge(u, v) {
                continue;
            }
            if rat(2 * (g.m() as i64 + 1), n as i64) < rat(num, den) && r.random_bool(0.5) {
                g.add_edge(u, v);
            }
        }
        if g.vertices().any(|v| g.degree(v) != 2) {
            return g;
        }
    }
}

/// Random simple connected cubic graph by the pairing model; n even.
pub fn random_cubic(r: &mut ChaCha8Rng, n: u32) -> Graph {
    assert!(n % 2 == 0 && n >= 4);
    loop {
        let mut points: Vec<u32> = (0..n).flat_map(|v| [v, v, v]).collect();
        points.shuffle(r);
        let mut g = Graph::new();
        let mut ok = true;
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                ok = false;
                break;
            }
            g.add_edge(u, v);
        }
        if ok && g.n() == n as usize && g.is_connected() {
            return g;
        }
    }
}

/// Random connected graph with Δ ≤ 3 and average degree strictly below
/// num/den.
pub fn random_subcubic_below(r: &mut ChaCha8Rng, n: u32, num: i64, den: i64) -> Graph {
    loop {
        let mut g = Graph::new();
        g.add_vertex(0);
        for v in 1..n {
            // attach to a random vertex of degree <= 2
            let candidates: Vec<u32> = (0..v).filter(|&u| g.degree(u) <= 2).collect();
            if candidates.is_empty() {
                break;
            }
            let parent = candidates[r.random_range(0..candidates.len())];
            g.add_edge(parent, v);
        }
        if g.n() != n as usize {
            continue;
        }
        for _ in 0..n {
            let u = r.random_range(0..n);
            let v = r.random_range(0..n);
            if u == v || g.has_edge(u, v) || g.degree(u) >= 3 || g.degree(v) >= 3 {
                continue;
            }
            if rat(2 * (g.m() as i64 + 1), n as i64) < rat(num, den) && r.random_bool(0.6) {
                g.add_edge(u, v);
            }
        }
        if g.vertices().any(|v| g.degree(v) != 2) {
            return g;
        }
    }
}

/// Random stacked plane triangulation: K4 drawn with one inner vertex,
/// then vertices inserted at random bounded face centroids. δ ≥ 3 and
/// every face is a triangle.
pub fn apollonian(r: &mut ChaCha8Rng, inserts: u32) -> (Graph, Rotation) {
    let mut pos: Vec<(f64, f64)> = vec![(0.0, 0.0), (4.0, 0.0), (2.0, 3.46)];
    let mut g = Graph::from_edges(&[(0, 1), (1, 2), (0, 2)]);
    let centroid = |pos: &Vec<(f64, f64)>, t: &[u32; 3]| {
        let (mut x, mut y) = (0.0, 0.0);
        for &v in t {
            x += pos[v as usize].0 / 3.0;
            y += pos[v as usize].1 / 3.0;
        }
        (x, y)
    };
    let first = [0u32, 1, 2];
    let c = centroid(&pos, &first);
    pos.push(c);
    for v in first {
        g.add_edge(v, 3);
    }
    let mut faces: Vec<[u32; 3]> = vec![[0, 1, 3], [1, 2, 3], [0, 2, 3]];
    for _ in 0..inserts {
        let fi = r.random_range(0..faces.len());
        let tri = faces.swap_remove(fi);
        let w = pos.len() as u32;
        pos.push(centroid(&pos, &tri));
        for v in tri {
            g.add_edge(v, w);
        }
        faces.push([tri[0], tri[1], w]);
        faces.push([tri[1], tri[2], w]);
        faces.push([tri[0], tri[2], w]);
    }
    let posmap = pos
        .iter()
        .enumerate()
        .map(|(i, &p)| (i as u32, p))
        .collect();
    let rot = generate::rotation_from_positions(&g, &posmap);
    (g, rot)
}

/// Two hubs joined by three internally disjoint paths with `lens`
/// interior vertices each (each ≥ 3 keeps the girth at 8 or more).
pub fn theta(lens: [u32; 3]) -> (Graph, Rotation) {
    let mut g = Graph::new();
    let mut pos = std::collections::BTreeMap::new();
    pos.insert(0, (-10.0, 0.0));
    pos.insert(1, (10.0, 0.0));
    let mut next = 2u32;
    for (j, &len) in lens.iter().enumerate() {
        let y = (j as f64 - 1.0) * 5.0;
        let mut prev = 0u32;
        for i in 0..len {
            let x = -10.0 + 20.0 * (i as f64 + 1.0) / (len as f64 + 1.0);
            pos.insert(next, (x, if y == 0.0 { 0.0 } else { y }));
            g.add_edge(prev, next);
            prev = next;
            next += 1;
        }
        g.add_edge(prev, 1);
    }
    let rot = generate::rotation_from_positions(&g, &pos);
    (g, rot)
}

/// Random 2-lists over a small palette.
pub fn random_two_lists(
    r: &mut ChaCha8Rng,
    g: &Graph,
    palette: u32,
) -> dcg_core::color::ListAssignment {
    let mut lists = dcg_core::color::ListAssignment::default();
    for v in g.vertices() {
        let a = r.random_range(0..palette);
        let mut b = r.random_range(0..palette);
        while b == a {
            b = r.random_range(0..palette);
        }
        lists.lists.insert(v, vec![a.min(b), a.max(b)]);
    }
    lists
}

/// Mixed plane-graph sampler for conservation fuzzing.
pub fn random_plane(r: &mut ChaCha8Rng) -> (Graph, Rotation) {
    match r.random_range(0..5) {
        0 => {
            let k = r.random_range(0..12);
            apollonian(r, k)
        }
        1 => generate::wheel_embedded(r.random_range(3..10)),
        2 => generate::cycle_embedded(r.random_range(3..12)),
        3 => {
            let (g, rot) = generate::named_graph("cube").unwrap();
            generate::subdivide_embedded(&g, &rot.unwrap(), r.random_range(0..3))
        }
        _ => {
            let lens = [
                r.random_range(3..7),
                r.random_range(3..7),
                r.random_range(3..7),
            ];
            theta(lens)
        }
    }
}
