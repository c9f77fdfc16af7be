use dcg_core::config::{unavoidable_report, Lemma};
use dcg_core::graph::Graph;
use dcg_core::rational::rat;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn random_tree(r: &mut ChaCha8Rng, n: u32) -> Graph {
    let mut g = Graph::new();
    g.add_vertex(0);
    for v in 1..n {
        let parent = r.random_range(0..v);
        g.add_edge(parent, v);
    }
    g
}

fn random_below(r: &mut ChaCha8Rng, n: u32, num: i64, den: i64) -> Graph {
    loop {
        let mut g = random_tree(r, n);
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

fn main() {
    let mut r = ChaCha8Rng::seed_from_u64(0xDECADE);
    for i in 0..3000 {
        let t = r.random_range(1..4u32);
        let n = r.random_range(5..26);
        let g = random_below(&mut r, n, 2 * (3 * t as i64 - 2) + 1, 3 * t as i64 - 2);
        if let Err(e) = unavoidable_report(&g, None, Lemma::ThreadOrLow { t }) {
            println!("sample {i} threads t={t} FAILED: {e:?}\n{}", g.serialize());
            return;
        }
    }
    for i in 0..3000 {
        let t = r.random_range(1..4u32);
        let n = r.random_range(5..26);
        let g = random_below(&mut r, n, 2 * (2 * t as i64 - 1) + 1, 2 * t as i64 - 1);
        if let Err(e) = unavoidable_report(&g, None, Lemma::WeakHubs { t }) {
            println!("sample {i} weak-hubs t={t} FAILED: {e:?}\n{}", g.serialize());
            println!("avg = {}", rat(2 * g.m() as i64, g.n() as i64));
            for v in g.vertices() { print!("d({v})={} ", g.degree(v)); }
            println!();
            return;
        }
    }
    println!("all good");
}
