//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the checked quantities. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the lines).

mod common;

use common::*;
use rand::Rng;

use dcg_core::color::{self, Kind, ListAssignment};
use dcg_core::config::{unavoidable_report, revalidate, Lemma};
use dcg_core::density;
use dcg_core::discharge::{self, ChargeSpec, Entity, Host};
use dcg_core::generate::{self, Gadget};
use dcg_core::graph::Graph;
use dcg_core::oracle::{self, OracleBudget};
use dcg_core::plane::PlaneGraph;
use dcg_core::rational::{rat, rat_int, Rational};
use std::collections::BTreeMap;

fn plane(name: &str) -> PlaneGraph {
    let (g, rot) = generate::named_graph(name).unwrap();
    PlaneGraph::new(g, &rot.unwrap()).unwrap()
}

#[test]
fn criterion_1_exact_densities() {
    let start = std::time::Instant::now();
    for n in 3..=8u32 {
        let g = generate::subdivided_complete(n);
        let got = density::mad(&g).unwrap().value;
        let want = rat_int(4) - rat(8, n as i64 + 1);
        assert_eq!(got, want, "subdivided complete graph on {n}");
    }
    for ell in 1..=5u32 {
        let g = generate::thread_replace(&generate::complete(4), ell).unwrap();
        let want = rat_int(2) + rat(2, 3 * ell as i64 - 1);
        assert_eq!(rat(2 * g.m() as i64, g.n() as i64), want, "avg degree at {ell}");
        assert_eq!(density::mad(&g).unwrap().value, want, "mad at {ell}");
    }
    let h = generate::heawood_minus_vertex();
    assert_eq!(density::mad(&h).unwrap().value, rat(36, 13));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("[criterion 1] PASS: exact mad on 12 generated graphs in {elapsed:?}");
}

#[test]
fn criterion_2_charge_identities() {
    let mut checked = 0;
    let mut hosts: Vec<PlaneGraph> = ["K4", "cube", "dodecahedron", "icosahedron"]
        .iter()
        .map(|n| plane(n))
        .collect();
    for n in 3..=9 {
        let (g, rot) = generate::cycle_embedded(n);
        hosts.push(PlaneGraph::new(g, &rot).unwrap());
        let (g, rot) = generate::wheel_embedded(n);
        hosts.push(PlaneGraph::new(g, &rot).unwrap());
    }
    for pg in &hosts {
        for (spec, want) in [
            (ChargeSpec::VertexCharging, rat_int(-12)),
            (ChargeSpec::FaceCharging, rat_int(-12)),
            (ChargeSpec::Balanced, rat_int(-8)),
        ] {
            let st = discharge::initial_charges(Host::Plane(pg), &spec, false).unwrap();
            assert_eq!(st.total(), want);
            checked += 1;
        }
    }
    println!("[criterion 2] PASS: {checked} charging totals equal -12/-12/-8 exactly");
}

#[test]
fn criterion_3_discharging_replication() {
    // every vertex of the near-Heawood graph ends at exactly 36/13
    let rs = discharge::parse_ruleset(discharge::builtin_ruleset("subcubic").unwrap()).unwrap();
    let h = generate::heawood_minus_vertex();
    let (state, verdict) = discharge::verify_lemma(Host::Graph(&h), &rs, &BTreeMap::new()).unwrap();
    for v in h.vertices() {
        assert_eq!(state.charges[&Entity::Vertex(v)], rat(36, 13), "vertex {v}");
    }
    assert!(matches!(verdict, discharge::Verdict::AllAbove));

    // the thread rule at rho = 1/5 ends every vertex of the subdivided K4
    // at exactly 12/5
    let rs = discharge::parse_ruleset(discharge::builtin_ruleset("threads").unwrap()).unwrap();
    let g = generate::thread_replace(&generate::complete(4), 2).unwrap();
    let params: BTreeMap<String, Rational> =
        [("rho".to_string(), rat(1, 5)), ("t".to_string(), rat_int(2))].into();
    let (state, verdict) = discharge::verify_lemma(Host::Graph(&g), &rs, &params).unwrap();
    for v in g.vertices() {
        assert_eq!(state.charges[&Entity::Vertex(v)], rat(12, 5), "vertex {v}");
    }
    assert!(matches!(verdict, discharge::Verdict::AllAbove));

    // conservation on 1000 fuzzed (graph, ruleset) pairs
    let mut r = rng(0xC0_FFEE);
    let mut pairs = 0;
    while pairs < 1000 {
        let use_plane = r.random_bool(0.5);
        let rs = random_ruleset(&mut r, use_plane);
        let params: BTreeMap<String, Rational> = [
            ("rho".to_string(), rat(r.random_range(1..5), r.random_range(5..9))),
            ("t".to_string(), rat_int(r.random_range(1..4))),
        ]
        .into();
        let total_in;
        let total_out;
        if use_plane {
            let (g, rot) = random_plane(&mut r);
            let pg = PlaneGraph::new(g, &rot).unwrap();
            let init = discharge::initial_charges(Host::Plane(&pg), &rs.spec, rs.pot_enabled).unwrap();
            let st = discharge::run_ruleset(Host::Plane(&pg), &rs, &params).unwrap();
            total_in = init.total();
            total_out = st.total();
            assert_eq!(st.replay_log(&init), st.charges, "log soundness");
        } else {
            let n = r.random_range(3..16);
            let extra = r.random_range(0..6);
            let g = random_sparse(&mut r, n, extra);
            let init = discharge::initial_charges(Host::Graph(&g), &rs.spec, rs.pot_enabled).unwrap();
            let st = discharge::run_ruleset(Host::Graph(&g), &rs, &params).unwrap();
            total_in = init.total();
            total_out = st.total();
            assert_eq!(st.replay_log(&init), st.charges, "log soundness");
        }
        assert_eq!(total_in, total_out, "conservation violated");
        pairs += 1;
    }
    println!("[criterion 3] PASS: 36/13 and 12/5 replications exact; conservation on {pairs} fuzzed pairs");
}

fn random_ruleset(r: &mut rand_chacha::ChaCha8Rng, plane: bool) -> discharge::RuleSet {
    use rand::Rng;
    let spec = if plane {
        match r.random_range(0..4) {
            0 => "vertex",
            1 => "face",
            2 => "balanced",
            _ => "degree",
        }
    } else {
        "degree"
    };
    let pot = r.random_bool(0.4);
    let mut text = format!("charging {spec}\nthreshold 0\npot {}\n", if pot { "on" } else { "off" });
    let relations_graph = ["NEIGHBOR", "THREAD_END", "DIST2_PATH"];
    let relations_plane = [
        "NEIGHBOR",
        "THREAD_END",
        "DIST2_PATH",
        "INCIDENT_FACE",
        "INCIDENT_VERTEX",
        "EDGE_SIDE_FACES",
    ];
    let phases = r.random_range(1..4);
    for p in 0..phases {
        if p > 0 {
            text.push_str("phase\n");
        }
        for _ in 0..r.random_range(0..4) {
            let rel: &str = if plane {
                relations_plane[r.random_range(0..relations_plane.len())]
            } else {
                relations_graph[r.random_range(0..relations_graph.len())]
            };
            let vsel = |r: &mut rand_chacha::ChaCha8Rng| {
                let k = r.random_range(1..6);
                match r.random_range(0..3) {
                    0 => format!("deg<={k}"),
                    1 => format!("deg>={k}"),
                    _ => format!("deg={k}"),
                }
            };
            let fsel = |r: &mut rand_chacha::ChaCha8Rng| {
                let k = r.random_range(3..7);
                match r.random_range(0..2) {
                    0 => format!("len<={k}"),
                    _ => format!("len>={k}"),
                }
            };
            let amount = match r.random_range(0..4) {
                0 => "1".to_string(),
                1 => format!("{}/{}", r.random_range(1..5), r.random_range(2..9)),
                2 => "rho".to_string(),
                _ => "1/2 * rho + 1/13".to_string(),
            };
            let (from, to) = match rel {
                "INCIDENT_FACE" => (vsel(r), fsel(r)),
                "INCIDENT_VERTEX" => (fsel(r), vsel(r)),
                "EDGE_SIDE_FACES" => (vsel(r), fsel(r)),
                _ => (vsel(r), vsel(r)),
            };
            let (from, to) = if pot && r.random_bool(0.25) {
                if r.random_bool(0.5) {
                    ("pot".to_string(), to)
                } else {
                    (from, "pot".to_string())
                }
            } else {
                (from, to)
            };
            let rel = if from == "pot" || to == "pot" { "POT" } else { rel };
            text.push_str(&format!("rule from {from} to {to} via {rel} amount {amount}\n"));
        }
    }
    discharge::parse_ruleset(&text).unwrap()
}

#[test]
fn criterion_4_unavoidability_suite() {
    let mut r = rng(0xDECADE);
    let budget_each = 500;
    let mut lines = Vec::new();

    // sparse thread lemma, t in 1..=3
    for _ in 0..budget_each {
        let t = r.random_range(1..4u32);
        let n = r.random_range(5..26);
        let g = random_below(&mut r, n, 2 * (3 * t as i64 - 2) + 1, 3 * t as i64 - 2);
        let c = unavoidable_report(&g, None, Lemma::ThreadOrLow { t }).unwrap();
        assert!(revalidate(&g, None, &c));
    }
    lines.push("threads");

    // weak-hub lemma, t in 1..=3
    for _ in 0..budget_each {
        let t = r.random_range(1..4u32);
        let n = r.random_range(5..26);
        let g = random_below(&mut r, n, 2 * (2 * t as i64 - 1) + 1, 2 * t as i64 - 1);
        let c = unavoidable_report(&g, None, Lemma::WeakHubs { t }).unwrap();
        assert!(revalidate(&g, None, &c));
    }
    lines.push("weak-hubs");

    // subcubic 36/13 set
    for _ in 0..budget_each {
        let n = r.random_range(4..22);
        let g = random_subcubic_below(&mut r, n, 36, 13);
        let c = unavoidable_report(&g, None, Lemma::SparseSubcubic).unwrap();
        assert!(revalidate(&g, None, &c));
    }
    lines.push("subcubic");

    // plane light-edge / 2-alternating-cycle set
    for _ in 0..budget_each {
        let (g, rot) = random_plane(&mut r);
        let pg = PlaneGraph::new(g, &rot).unwrap();
        let c = unavoidable_report(&pg.graph.clone(), Some(&pg), Lemma::PlaneLight).unwrap();
        assert!(revalidate(&pg.graph, Some(&pg), &c));
    }
    lines.push("plane-light");

    // normal plane maps
    for _ in 0..budget_each {
        let k = r.random_range(0..25);
        let (g, rot) = apollonian(&mut r, k);
        let pg = PlaneGraph::new(g, &rot).unwrap();
        let c = unavoidable_report(&pg.graph.clone(), Some(&pg), Lemma::NormalMap).unwrap();
        assert!(revalidate(&pg.graph, Some(&pg), &c));
    }
    lines.push("normal-map");

    // girth >= 7 plane graphs
    for _ in 0..budget_each {
        let (g, rot) = match r.random_range(0..3) {
            0 => generate::cycle_embedded(r.random_range(7..20)),
            1 => theta([
                r.random_range(3..8),
                r.random_range(3..8),
                r.random_range(3..8),
            ]),
            _ => {
                let (g, rot) = generate::named_graph("cube").unwrap();
                generate::subdivide_embedded(&g, &rot.unwrap(), r.random_range(2..4))
            }
        };
        let pg = PlaneGraph::new(g, &rot).unwrap();
        let c = unavoidable_report(&pg.graph.clone(), Some(&pg), Lemma::GirthSeven).unwrap();
        assert!(revalidate(&pg.graph, Some(&pg), &c));
    }
    lines.push("girth7");

    // girth >= 5 plane graphs
    for _ in 0..budget_each {
        let (g, rot) = match r.random_range(0..4) {
            0 => generate::cycle_embedded(r.random_range(5..16)),
            1 => theta([
                r.random_range(3..7),
                r.random_range(3..7),
                r.random_range(3..7),
            ]),
            2 => {
                let name = if r.random_bool(0.5) { "cube" } else { "dodecahedron" };
                let (g, rot) = generate::named_graph(name).unwrap();
                let k = if name == "cube" { r.random_range(1..3) } else { 0 };
                generate::subdivide_embedded(&g, &rot.unwrap(), k)
            }
            _ => {
                let k = r.random_range(0..10);
                let (g, rot) = apollonian(&mut r, k);
                generate::subdivide_embedded(&g, &rot, 1)
            }
        };
        let pg = PlaneGraph::new(g, &rot).unwrap();
        let c = unavoidable_report(&pg.graph.clone(), Some(&pg), Lemma::GirthFive).unwrap();
        assert!(revalidate(&pg.graph, Some(&pg), &c));
    }
    lines.push("girth5");

    // tree components of the 3-vertex subgraph (δ = 2, avg < 8/3)
    let mut done = 0;
    while done < budget_each {
        let half = r.random_range(2..7);
        let base = random_cubic(&mut r, 2 * half);
        let n = base.n() as i64;
        let m = base.m() as i64;
        // subdividing k edges once needs 2k > 6m - 8n = n to get below 8/3
        let kmin = (n / 2 + 1) as usize;
        if kmin > base.m() {
            continue;
        }
        let k = r.random_range(kmin..=base.m());
        let mut picks: Vec<usize> = (0..base.m()).collect();
        use rand::seq::SliceRandom;
        picks.shuffle(&mut r);
        let chosen: std::collections::BTreeSet<usize> = picks.into_iter().take(k).collect();
        let mut g = Graph::new();
        let mut next = base.n() as u32;
        for (e, &(u, v)) in base.edges().iter().enumerate() {
            if chosen.contains(&e) {
                g.add_edge(u, next);
                g.add_edge(next, v);
                next += 1;
            } else {
                g.add_edge(u, v);
            }
        }
        assert!(rat(2 * g.m() as i64, g.n() as i64) < rat(8, 3));
        let _ = m;
        let c = unavoidable_report(&g, None, Lemma::TreeComponents).unwrap();
        assert!(revalidate(&g, None, &c));
        done += 1;
    }
    lines.push("tree-comp");

    println!(
        "[criterion 4] PASS: {} samples per lemma, zero misses, for: {}",
        budget_each,
        lines.join(", ")
    );
}

/// The ≤ 10-vertex corpus: truncated generated families plus 2000 random
/// sparse graphs.
fn small_corpus() -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    out.push(generate::example_gt(1));
    out.push(generate::example_gt(2));
    for n in 2..=4 {
        out.push(generate::subdivided_complete(n));
    }
    for (p, q) in [(5, 2), (7, 2), (7, 3), (8, 3), (9, 2), (9, 4), (10, 3)] {
        out.push(generate::circular_clique(p, q).unwrap());
    }
    out.push(generate::fat_triangle_subdivided(1));
    out.push(generate::fat_triangle_subdivided(2));
    out.push(generate::thread_replace(&generate::complete(4), 2).unwrap());
    for rbook in 1..=6 {
        out.push(generate::gadget_family(Gadget::Book(rbook)));
    }
    out.push(generate::gadget_family(Gadget::Fk(1)));
    out.push(generate::gadget_family(Gadget::Fk(2)));
    for name in ["K4", "cube", "petersen"] {
        out.push(generate::named_graph(name).unwrap().0);
    }
    for n in 3..=10 {
        out.push(generate::cycle(n));
        out.push(generate::path(n));
    }
    for n in 3..=9 {
        out.push(generate::wheel_embedded(n).0);
    }
    let mut r = rng(0xABCDEF);
    for _ in 0..2000 {
        let n = r.random_range(1..=10u32);
        let extra = r.random_range(0..5u32);
        out.push(random_sparse(&mut r, n, extra));
    }
    out.retain(|g| g.n() <= 10);
    out
}

#[test]
fn criterion_5_oracle_cross_validation() {
    let corpus = small_corpus();
    let budget = OracleBudget::default();
    let mut r = rng(0x5EED);
    let mut colorer_runs = 0usize;
    for g in &corpus {
        if g.n() == 0 {
            continue;
        }
        // exact density agreement
        let fast = density::mad(g).unwrap().value;
        let brute = oracle::brute_mad(g, &budget).unwrap();
        assert_eq!(fast, brute, "mad mismatch on {}", g.serialize());

        let madv = fast;
        // circular coloring at t = 2
        if g.odd_girth().is_none_or(|og| og >= 5) && madv < rat(9, 4) {
            let c = color::circular_color(g, 2).unwrap();
            assert!(color::validate(g, &c).is_ok());
            let k52 = generate::circular_clique(5, 2).unwrap();
            assert!(oracle::brute_homomorphism(g, &k52, &budget).unwrap().is_some());
            colorer_runs += 1;
        }
        // I,F-partition and star coloring
        if madv < rat(7, 3) {
            let (ind, forest) = color::if_partition(g).unwrap();
            let mut vertex = BTreeMap::new();
            for &v in &ind {
                vertex.insert(v, 0);
            }
            for &v in &forest {
                vertex.insert(v, 1);
            }
            let c = color::Coloring::vertex_only(Kind::IfPartition, vertex);
            assert!(color::validate(g, &c).is_ok());
            assert!(oracle::brute_if(g, &budget).unwrap().is_some());

            let star = color::star_color4(g).unwrap();
            assert!(color::validate(g, &star).is_ok());
            assert!(star.colors_used().len() <= 4);
            assert!(oracle::brute_chromatic_kind(g, Kind::Star, &budget).unwrap() <= 4);
            colorer_runs += 2;
        }
        // 1-improper coloring from random 2-lists
        if madv < rat(8, 3) {
            let lists = random_two_lists(&mut r, g, 5);
            let c = color::improper_2list(g, &lists).unwrap();
            assert!(color::validate(g, &c).is_ok());
            assert!(oracle::brute_list_color(g, &lists, Kind::Improper(1), &budget)
                .unwrap()
                .is_some());
            colorer_runs += 1;
        }
        // acyclic coloring from 6-lists
        if madv < rat_int(3) {
            let lists = ListAssignment::uniform(g, &[0, 1, 2, 3, 4, 5]);
            let c = color::acyclic_6list(g, &lists).unwrap();
            assert!(color::validate(g, &c).is_ok());
            assert!(oracle::brute_list_color(g, &lists, Kind::Acyclic, &budget)
                .unwrap()
                .is_some());
            colorer_runs += 1;
        }
        // square coloring: sound without planarity when Δ ≤ 5
        if g.max_degree() <= 5 && g.n() >= 1 {
            let c = color::square_color_planar(g).unwrap();
            let sq = g.square();
            assert!(color::validate(&sq, &c).is_ok());
            let palette: Vec<u32> =
                (0..(g.max_degree() * g.max_degree() + 1) as u32).collect();
            let lists = ListAssignment::uniform(&sq, &palette);
            assert!(oracle::brute_list_color(&sq, &lists, Kind::Proper, &budget)
                .unwrap()
                .is_some());
            colorer_runs += 1;
        }
        // greedy coloring at degeneracy + 1
        let (d, _) = density::degeneracy(g);
        let c = color::degeneracy_color(g, d + 1).unwrap();
        assert!(color::validate(g, &c).is_ok());
        assert!(oracle::brute_chromatic_kind(g, Kind::Proper, &budget).unwrap() <= d + 1);
        colorer_runs += 1;
    }
    println!(
        "[criterion 5] PASS: {} corpus graphs, mad agreement exact, {} validated colorer runs",
        corpus.len(),
        colorer_runs
    );
}

#[test]
fn criterion_6_circular_numbers() {
    let start = std::time::Instant::now();
    let budget = OracleBudget::default();
    assert_eq!(
        oracle::brute_circular_chromatic(&generate::example_gt(2), &budget).unwrap(),
        rat(8, 3)
    );
    assert_eq!(
        oracle::brute_circular_chromatic(&generate::cycle(5), &budget).unwrap(),
        rat(5, 2)
    );
    assert_eq!(
        oracle::brute_circular_chromatic(&generate::complete(4), &budget).unwrap(),
        rat_int(4)
    );
    let mut r = rng(0xC19C);
    let mut done = 0;
    while done < 200 {
        let n = r.random_range(4..26);
        let g = random_below(&mut r, n, 9, 4);
        if g.odd_girth().is_some_and(|og| og < 5) {
            continue;
        }
        if density::mad(&g).unwrap().value >= rat(9, 4) {
            continue;
        }
        let c = color::circular_color(&g, 2).unwrap();
        assert!(color::validate(&g, &c).is_ok(), "invalid homomorphism");
        done += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    println!(
        "[criterion 6] PASS: circular numbers 8/3, 5/2, 4 exact; {done} fuzzed colorings valid in {elapsed:?}"
    );
}

#[test]
fn criterion_7_improper_and_if_suites() {
    let budget = OracleBudget::default();
    assert!(
        oracle::brute_improper(&generate::non_improper_01_witness(), 0, 1, &budget)
            .unwrap()
            .is_none(),
        "left sharpness graph must not be (0,1)-colorable"
    );
    assert!(
        oracle::brute_improper(&generate::non_improper_11_witness(), 1, 1, &budget)
            .unwrap()
            .is_none(),
        "right sharpness graph must not be (1,1)-colorable"
    );
    assert!(
        oracle::brute_improper(&generate::gadget_family(Gadget::Gkn(2, 1)), 2, 2, &budget)
            .unwrap()
            .is_none(),
        "G_{{2,1}} must not be (2,2)-colorable"
    );

    let mut r = rng(0x1F1F);
    let mut done_if = 0;
    while done_if < 200 {
        let n = r.random_range(4..30);
        let g = random_below(&mut r, n, 7, 3);
        if density::mad(&g).unwrap().value >= rat(7, 3) {
            continue;
        }
        let (ind, forest) = color::if_partition(&g).unwrap();
        let mut vertex = BTreeMap::new();
        for v in ind {
            vertex.insert(v, 0);
        }
        for v in forest {
            vertex.insert(v, 1);
        }
        let c = color::Coloring::vertex_only(Kind::IfPartition, vertex);
        assert!(color::validate(&g, &c).is_ok());
        let star = color::star_color4(&g).unwrap();
        assert!(color::validate(&g, &star).is_ok());
        done_if += 1;
    }
    let mut done_imp = 0;
    while done_imp < 200 {
        let n = r.random_range(4..30);
        let g = random_below(&mut r, n, 8, 3);
        if density::mad(&g).unwrap().value >= rat(8, 3) {
            continue;
        }
        let lists = random_two_lists(&mut r, &g, 6);
        let c = color::improper_2list(&g, &lists).unwrap();
        assert!(color::validate(&g, &c).is_ok());
        for v in g.vertices() {
            assert!(lists.get(v).contains(&c.vertex[&v]));
        }
        done_imp += 1;
    }
    println!(
        "[criterion 7] PASS: three sharpness gadgets non-colorable; {done_if} partitions and {done_imp} improper colorings valid"
    );
}

#[test]
fn criterion_8_square_total_injective_anchors() {
    let budget = OracleBudget::default();
    // chromatic number of the square of the k=2 subdivided fat triangle
    let g = generate::fat_triangle_subdivided(2);
    let chi = oracle::brute_chromatic_kind(&g.square(), Kind::Proper, &budget).unwrap();
    assert_eq!(chi, 6);

    // K4 composes into a 5-total-coloring
    let k4 = generate::complete(4);
    let vc = color::Coloring::vertex_only(Kind::Proper, [(0, 1), (1, 2), (2, 3), (3, 4)].into());
    let ec: BTreeMap<(u32, u32), u32> = [
        ((0, 1), 0),
        ((2, 3), 0),
        ((0, 2), 1),
        ((1, 3), 1),
        ((0, 3), 2),
        ((1, 2), 2),
    ]
    .into();
    let total = color::total_compose(&k4, &vc, &ec).unwrap();
    assert!(color::validate(&k4, &total).is_ok());
    assert!(total.colors_used().len() <= 5);

    // injective lists on the near-Heawood graph: 5 identical colors
    // infeasible, 6 feasible
    let h = generate::heawood_minus_vertex();
    let l5 = ListAssignment::uniform(&h, &[0, 1, 2, 3, 4]);
    assert!(oracle::brute_list_color(&h, &l5, Kind::Injective, &budget)
        .unwrap()
        .is_none());
    let l6 = ListAssignment::uniform(&h, &[0, 1, 2, 3, 4, 5]);
    assert!(oracle::brute_list_color(&h, &l6, Kind::Injective, &budget)
        .unwrap()
        .is_some());
    println!("[criterion 8] PASS: square chromatic 6, K4 total 5, injective threshold at 6");
}

#[test]
fn criterion_9_thread_interval_law() {
    let mut checked = 0;
    for p in 3..=9u32 {
        for q in 1..=(p - 1) / 2 {
            if p <= 2 * q {
                continue;
            }
            let growth = (p - 2 * q) as i64;
            for ell in 0..=6u32 {
                for start in 0..p {
                    let ext = color::extend_thread(p, q, ell, start).unwrap();
                    for (i, iv) in ext.intervals.iter().enumerate() {
                        let want = (1 + i as i64 * growth).min(p as i64) as u32;
                        assert_eq!(iv.len, want, "p={p} q={q} ell={ell} i={i}");
                    }
                    let cap = 0.max(p as i64 - 1 - (ell as i64 + 1) * growth);
                    assert!(
                        ext.forbidden_at_end.len() as i64 <= cap,
                        "p={p} q={q} ell={ell}"
                    );
                    // independent reachability check: dynamic program over
                    // allowed colors step by step
                    let mut reach: Vec<bool> = (0..p).map(|c| c == start).collect();
                    for _ in 0..=ell {
                        let mut next = vec![false; p as usize];
                        for c in 0..p {
                            if reach[c as usize] {
                                for d in q..=(p - q) {
                                    next[((c + d) % p) as usize] = true;
                                }
                            }
                        }
                        reach = next;
                    }
                    for c in 0..p {
                        let allowed = ext.intervals.last().unwrap().contains(c, p);
                        assert_eq!(reach[c as usize], allowed, "p={p} q={q} ell={ell} c={c}");
                    }
                    checked += 1;
                }
            }
        }
    }
    println!("[criterion 9] PASS: interval law exact on {checked} (p,q,ell,start) cases");
}
