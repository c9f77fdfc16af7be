//! Unified command line over the toolkit: exact analysis, configuration
//! detection, discharging replay, constructive coloring, brute-force
//! oracles and the graph generators.
//!
//! Exit codes: 0 success, 1 infeasible / deficit / missing guaranteed
//! configuration, 2 usage or input error.

use clap::{Args, Parser, Subcommand};
use dcg_core::color::{self, Color, Coloring, Kind, ListAssignment};
use dcg_core::config::{revalidate, unavoidable_report, ConfigError, Lemma};
use dcg_core::density;
use dcg_core::discharge::{self, Host, Verdict};
use dcg_core::generate;
use dcg_core::graph::Graph;
use dcg_core::oracle::{self, OracleBudget};
use dcg_core::plane::{parse_embedding, serialize_embedding, PlaneGraph};
use dcg_core::rational::{parse_rational, Rational};
use std::collections::BTreeMap;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dcg", version, about = "discharging toolkit for sparse graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact density/structure report for a graph file.
    Analyze(AnalyzeArgs),
    /// Detect a lemma's unavoidable configuration.
    Config(ConfigArgs),
    /// Replay a discharging rule file and check the threshold.
    Discharge(DischargeArgs),
    /// Run a constructive colorer.
    Color(ColorArgs),
    /// Run a brute-force oracle.
    Oracle(OracleArgs),
    /// Generate a named graph or family member.
    Gen(GenArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    graph: String,
    #[arg(long)]
    embedding: Option<String>,
}

#[derive(Args)]
struct ConfigArgs {
    graph: String,
    /// threads | weak-hubs | subcubic | plane-light | faces | normal-map |
    /// girth7 | girth5 | tree-comp
    #[arg(long)]
    lemma: String,
    #[arg(long)]
    embedding: Option<String>,
    #[arg(long)]
    t: Option<u32>,
}

#[derive(Args)]
struct DischargeArgs {
    graph: String,
    /// Path to a rule file, or a builtin name (threads, subcubic, girth7,
    /// plane-light, girth5).
    #[arg(long)]
    rules: String,
    #[arg(long)]
    embedding: Option<String>,
    /// Symbol bindings like t=2 or rho=1/5; repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
}

#[derive(Args)]
struct ColorArgs {
    graph: String,
    /// circular:t=K | if | star4 | improper2 | acyclic6 | square | total |
    /// degeneracy:k=K
    #[arg(long)]
    method: String,
    /// List assignment file: lines `l <v>: <c1> <c2> ...`.
    #[arg(long)]
    lists: Option<String>,
    /// Vertex coloring file: lines `c <v> <color>`.
    #[arg(long)]
    vc: Option<String>,
    /// Edge coloring file: lines `ce <u> <v> <color>`.
    #[arg(long)]
    ec: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    graph: String,
    /// mad | hom:<target-name> | circ | list:<kind> | if | improper:j,k |
    /// chrom:<kind>   (kinds: proper, injective, acyclic, star, linear,
    /// improper1)
    #[arg(long)]
    kind: String,
    #[arg(long)]
    lists: Option<String>,
}

#[derive(Args)]
struct GenArgs {
    /// Family and parameters, e.g. `petersen`, `gt 2`, `circular-clique 5
    /// 2`, `subdivided-complete 5`, `fat-triangle 2`, `book 3`, `fk 2`,
    /// `gkn 2 1`, `no01`, `no11`, `thread-replace K4 2`, `C7`, `W5`, `K4`.
    family: Vec<String>,
    /// Write the graph file here instead of stdout.
    #[arg(short, long)]
    output: Option<String>,
    /// Write the rotation system here, for embedded families.
    #[arg(long)]
    embedding_out: Option<String>,
}

enum Failure {
    /// Infeasible, deficit, or missing guaranteed configuration.
    Negative(String),
    /// Usage or input error.
    Input(String),
}

impl Failure {
    fn code(&self) -> ExitCode {
        match self {
            Failure::Negative(_) => ExitCode::from(1),
            Failure::Input(_) => ExitCode::from(2),
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn load_graph(path: &str) -> Result<Graph, Failure> {
    Graph::parse(&read_file(path)?).map_err(input_err)
}

fn load_plane(graph: &Graph, path: &str) -> Result<PlaneGraph, Failure> {
    let rot = parse_embedding(&read_file(path)?).map_err(input_err)?;
    PlaneGraph::new(graph.clone(), &rot).map_err(input_err)
}

fn parse_lists(text: &str) -> Result<ListAssignment, Failure> {
    let mut lists = ListAssignment::default();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let rest = content
            .strip_prefix('l')
            .ok_or_else(|| Failure::Input(format!("line {}: expected `l <v>: ...`", i + 1)))?;
        let (vp, cp) = rest
            .split_once(':')
            .ok_or_else(|| Failure::Input(format!("line {}: missing `:`", i + 1)))?;
        let v: u32 = vp
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("line {}: bad vertex id", i + 1)))?;
        let mut cs = Vec::new();
        for tok in cp.split_whitespace() {
            cs.push(
                tok.parse()
                    .map_err(|_| Failure::Input(format!("line {}: bad color", i + 1)))?,
            );
        }
        lists.lists.insert(v, cs);
    }
    Ok(lists)
}

fn parse_vertex_colors(text: &str) -> Result<BTreeMap<u32, Color>, Failure> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parts: Vec<&str> = content.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "c" {
            return Err(Failure::Input(format!("line {}: expected `c <v> <color>`", i + 1)));
        }
        let v = parts[1]
            .parse()
            .map_err(|_| Failure::Input(format!("line {}: bad vertex", i + 1)))?;
        let c = parts[2]
            .parse()
            .map_err(|_| Failure::Input(format!("line {}: bad color", i + 1)))?;
        out.insert(v, c);
    }
    Ok(out)
}

fn parse_edge_colors(text: &str) -> Result<BTreeMap<(u32, u32), Color>, Failure> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parts: Vec<&str> = content.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "ce" {
            return Err(Failure::Input(format!(
                "line {}: expected `ce <u> <v> <color>`",
                i + 1
            )));
        }
        let u: u32 = parts[1]
            .parse()
            .map_err(|_| Failure::Input(format!("line {}: bad endpoint", i + 1)))?;
        let v: u32 = parts[2]
            .parse()
            .map_err(|_| Failure::Input(format!("line {}: bad endpoint", i + 1)))?;
        let c = parts[3]
            .parse()
            .map_err(|_| Failure::Input(format!("line {}: bad color", i + 1)))?;
        out.insert((u.min(v), u.max(v)), c);
    }
    Ok(out)
}

fn print_coloring(c: &Coloring) {
    for (v, col) in &c.vertex {
        println!("c {v} {col}");
    }
    for ((u, v), col) in &c.edge {
        println!("ce {u} {v} {col}");
    }
}

fn run_analyze(a: &AnalyzeArgs) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    println!("# dcg analyze {}", a.graph);
    println!("vertices = {}", g.n());
    println!("edges = {}", g.m());
    println!("simple = {}", g.simple());
    let madw = density::mad(&g).map_err(input_err)?;
    println!("mad = {}", madw.value);
    println!(
        "mad-witness = {}",
        madw.witness
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let arb = density::fractional_arboricity(&g).map_err(input_err)?;
    println!("arboricity = {}", arb.value);
    let (d, _) = density::degeneracy(&g);
    println!("degeneracy = {d}");
    match g.girth() {
        Some(x) => println!("girth = {x}"),
        None => println!("girth = inf"),
    }
    match g.odd_girth() {
        Some(x) => println!("odd-girth = {x}"),
        None => println!("odd-girth = inf"),
    }
    if let Some(path) = &a.embedding {
        let pg = load_plane(&g, path)?;
        println!("faces = {}", pg.face_count());
        let mut census: BTreeMap<usize, usize> = BTreeMap::new();
        for f in pg.faces() {
            *census.entry(f.len()).or_default() += 1;
        }
        for (len, count) in census {
            println!("faces-of-length {len} = {count}");
        }
        for (label, spec) in [
            ("vertex-charging-total", discharge::ChargeSpec::VertexCharging),
            ("face-charging-total", discharge::ChargeSpec::FaceCharging),
            ("balanced-charging-total", discharge::ChargeSpec::Balanced),
        ] {
            let st = discharge::initial_charges(Host::Plane(&pg), &spec, false)
                .map_err(input_err)?;
            println!("{label} = {}", st.total());
        }
    }
    Ok(())
}

fn run_config(a: &ConfigArgs) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    let lemma = Lemma::parse(&a.lemma, a.t).map_err(input_err)?;
    let pg = match &a.embedding {
        Some(path) => Some(load_plane(&g, path)?),
        None => None,
    };
    if lemma.needs_embedding() && pg.is_none() {
        return Err(Failure::Input(format!(
            "lemma {} needs --embedding",
            a.lemma
        )));
    }
    println!("# dcg config {} --lemma {}", a.graph, a.lemma);
    match unavoidable_report(&g, pg.as_ref(), lemma) {
        Ok(cfg) => {
            debug_assert!(revalidate(&g, pg.as_ref(), &cfg));
            let ids = cfg
                .vertices
                .iter()
                .map(|v| v.to_string())
                .chain(cfg.faces.iter().map(|f| format!("f{f}")))
                .collect::<Vec<_>>()
                .join(" ");
            println!("{}: {}", cfg.kind.label(), ids);
            Ok(())
        }
        Err(ConfigError::Missing) => Err(Failure::Negative(
            "guaranteed configuration missing — falsification signal".into(),
        )),
        Err(e) => Err(input_err(e)),
    }
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, Rational>, Failure> {
    let mut out = BTreeMap::new();
    for p in raw {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("bad --param {p:?}, expected name=value")))?;
        out.insert(k.trim().to_string(), parse_rational(v).map_err(Failure::Input)?);
    }
    Ok(out)
}

fn run_discharge(a: &DischargeArgs) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    let text = match discharge::builtin_ruleset(&a.rules) {
        Some(t) => t.to_string(),
        None => read_file(&a.rules)?,
    };
    let rs = discharge::parse_ruleset(&text).map_err(input_err)?;
    let params = parse_params(&a.params)?;
    let pg = match &a.embedding {
        Some(path) => Some(load_plane(&g, path)?),
        None => None,
    };
    let host = match &pg {
        Some(pg) => Host::Plane(pg),
        None => Host::Graph(&g),
    };
    println!("# dcg discharge {} --rules {}", a.graph, a.rules);
    let (state, verdict) = discharge::verify_lemma(host, &rs, &params).map_err(input_err)?;
    println!("total = {}", state.total());
    println!("transfers = {}", state.log.len());
    match verdict {
        Verdict::AllAbove => {
            println!("verdict = ok");
            Ok(())
        }
        Verdict::Deficits(ds) => {
            println!("verdict = deficit");
            for d in &ds {
                let nb = d
                    .neighborhood
                    .iter()
                    .map(|(v, deg)| format!("{v}(d{deg})"))
                    .collect::<Vec<_>>()
                    .join(" ");
                println!("deficit {} charge {} neighborhood: {nb}", d.entity, d.charge);
            }
            Err(Failure::Negative(format!("{} deficits", ds.len())))
        }
    }
}

fn color_err(e: color::ColorError) -> Failure {
    match e {
        color::ColorError::Hypothesis(_) | color::ColorError::Infeasible(_) => {
            Failure::Negative(e.to_string())
        }
        _ => Failure::Input(e.to_string()),
    }
}

fn run_color(a: &ColorArgs) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    let lists = match &a.lists {
        Some(p) => Some(parse_lists(&read_file(p)?)?),
        None => None,
    };
    println!("# dcg color {} --method {}", a.graph, a.method);
    let (method, arg) = match a.method.split_once(':') {
        Some((m, rest)) => (m, Some(rest)),
        None => (a.method.as_str(), None),
    };
    let parse_kv = |expect: &str, raw: Option<&str>| -> Result<u32, Failure> {
        let raw = raw.ok_or_else(|| {
            Failure::Input(format!("method needs :{expect}=<value>"))
        })?;
        let (k, v) = raw
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("expected {expect}=<value>")))?;
        if k != expect {
            return Err(Failure::Input(format!("expected {expect}=, got {k}=")));
        }
        v.parse()
            .map_err(|_| Failure::Input(format!("bad value in {raw:?}")))
    };
    let coloring = match method {
        "circular" => {
            let t = parse_kv("t", arg)?;
            color::circular_color(&g, t).map_err(color_err)?
        }
        "if" => {
            let (ind, forest) = color::if_partition(&g).map_err(color_err)?;
            let mut vertex = BTreeMap::new();
            for v in ind {
                vertex.insert(v, 0);
            }
            for v in forest {
                vertex.insert(v, 1);
            }
            Coloring::vertex_only(Kind::IfPartition, vertex)
        }
        "star4" => color::star_color4(&g).map_err(color_err)?,
        "improper2" => {
            let lists = lists
                .ok_or_else(|| Failure::Input("improper2 needs --lists".into()))?;
            color::improper_2list(&g, &lists).map_err(color_err)?
        }
        "acyclic6" => {
            let lists = lists
                .ok_or_else(|| Failure::Input("acyclic6 needs --lists".into()))?;
            color::acyclic_6list(&g, &lists).map_err(color_err)?
        }
        "square" => color::square_color_planar(&g).map_err(color_err)?,
        "total" => {
            let vc_text = read_file(
                a.vc.as_deref()
                    .ok_or_else(|| Failure::Input("total needs --vc".into()))?,
            )?;
            let ec_text = read_file(
                a.ec.as_deref()
                    .ok_or_else(|| Failure::Input("total needs --ec".into()))?,
            )?;
            let vc = Coloring::vertex_only(Kind::Proper, parse_vertex_colors(&vc_text)?);
            let ec = parse_edge_colors(&ec_text)?;
            color::total_compose(&g, &vc, &ec).map_err(color_err)?
        }
        "degeneracy" => {
            let k = parse_kv("k", arg)?;
            color::degeneracy_color(&g, k as usize).map_err(color_err)?
        }
        other => return Err(Failure::Input(format!("unknown method {other:?}"))),
    };
    print_coloring(&coloring);
    Ok(())
}

fn oracle_kind(name: &str) -> Result<Kind, Failure> {
    match name {
        "proper" => Ok(Kind::Proper),
        "injective" => Ok(Kind::Injective),
        "acyclic" => Ok(Kind::Acyclic),
        "star" => Ok(Kind::Star),
        "linear" => Ok(Kind::Linear),
        "improper1" => Ok(Kind::Improper(1)),
        other => Err(Failure::Input(format!("unknown coloring kind {other:?}"))),
    }
}

fn run_oracle(a: &OracleArgs) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    let mut budget = OracleBudget::default();
    if let Ok(v) = std::env::var("DCG_ORACLE_BUDGET") {
        budget.max_vertices = v
            .parse()
            .map_err(|_| Failure::Input("bad DCG_ORACLE_BUDGET".into()))?;
    }
    println!("# dcg oracle {} --kind {}", a.graph, a.kind);
    let (what, arg) = match a.kind.split_once(':') {
        Some((w, rest)) => (w, Some(rest)),
        None => (a.kind.as_str(), None),
    };
    match what {
        "mad" => {
            let v = oracle::brute_mad(&g, &budget).map_err(input_err)?;
            println!("{v}");
        }
        "hom" => {
            let name = arg.ok_or_else(|| Failure::Input("hom needs a target name".into()))?;
            let (h, _) = generate::named_graph(name).map_err(input_err)?;
            match oracle::brute_homomorphism(&g, &h, &budget).map_err(input_err)? {
                Some(map) => {
                    for (v, img) in map {
                        println!("c {v} {img}");
                    }
                }
                None => return Err(Failure::Negative("no homomorphism".into())),
            }
        }
        "circ" => {
            let v = oracle::brute_circular_chromatic(&g, &budget).map_err(input_err)?;
            println!("{v}");
        }
        "list" => {
            let kind = oracle_kind(arg.ok_or_else(|| Failure::Input("list needs a kind".into()))?)?;
            let lists = parse_lists(&read_file(
                a.lists
                    .as_deref()
                    .ok_or_else(|| Failure::Input("list oracle needs --lists".into()))?,
            )?)?;
            match oracle::brute_list_color(&g, &lists, kind, &budget).map_err(input_err)? {
                Some(c) => print_coloring(&c),
                None => return Err(Failure::Negative("infeasible".into())),
            }
        }
        "if" => match oracle::brute_if(&g, &budget).map_err(input_err)? {
            Some((ind, forest)) => {
                for v in ind {
                    println!("c {v} 0");
                }
                for v in forest {
                    println!("c {v} 1");
                }
            }
            None => return Err(Failure::Negative("no partition".into())),
        },
        "improper" => {
            let arg = arg.ok_or_else(|| Failure::Input("improper needs j,k".into()))?;
            let (j, k) = arg
                .split_once(',')
                .ok_or_else(|| Failure::Input("improper needs j,k".into()))?;
            let j: usize = j.parse().map_err(|_| Failure::Input("bad j".into()))?;
            let k: usize = k.parse().map_err(|_| Failure::Input("bad k".into()))?;
            match oracle::brute_improper(&g, j, k, &budget).map_err(input_err)? {
                Some((a_side, b_side)) => {
                    for v in a_side {
                        println!("c {v} 0");
                    }
                    for v in b_side {
                        println!("c {v} 1");
                    }
                }
                None => return Err(Failure::Negative("not colorable".into())),
            }
        }
        "chrom" => {
            let kind =
                oracle_kind(arg.ok_or_else(|| Failure::Input("chrom needs a kind".into()))?)?;
            let v = oracle::brute_chromatic_kind(&g, kind, &budget).map_err(input_err)?;
            println!("{v}");
        }
        other => return Err(Failure::Input(format!("unknown oracle kind {other:?}"))),
    }
    Ok(())
}

fn run_gen(a: &GenArgs) -> Result<(), Failure> {
    let words: Vec<&str> = a.family.iter().map(|s| s.as_str()).collect();
    let need = |n: usize| -> Result<Vec<u32>, Failure> {
        if words.len() != n + 1 {
            return Err(Failure::Input(format!(
                "family {} takes {n} parameter(s)",
                words[0]
            )));
        }
        words[1..]
            .iter()
            .map(|w| {
                w.parse()
                    .map_err(|_| Failure::Input(format!("bad parameter {w:?}")))
            })
            .collect()
    };
    if words.is_empty() {
        return Err(Failure::Input("gen needs a family".into()));
    }
    let (g, rot) = match words[0] {
        "circular-clique" => {
            let p = need(2)?;
            (generate::circular_clique(p[0], p[1]).map_err(input_err)?, None)
        }
        "gt" => (generate::example_gt(need(1)?[0]), None),
        "subdivided-complete" => (generate::subdivided_complete(need(1)?[0]), None),
        "fat-triangle" => (generate::fat_triangle_subdivided(need(1)?[0]), None),
        "book" => (generate::gadget_family(generate::Gadget::Book(need(1)?[0])), None),
        "fk" => (generate::gadget_family(generate::Gadget::Fk(need(1)?[0])), None),
        "gkn" => {
            let p = need(2)?;
            (generate::gadget_family(generate::Gadget::Gkn(p[0], p[1])), None)
        }
        "no01" => (generate::non_improper_01_witness(), None),
        "no11" => (generate::non_improper_11_witness(), None),
        "thread-replace" => {
            if words.len() != 3 {
                return Err(Failure::Input("thread-replace takes <base> <ell>".into()));
            }
            let (base, _) = generate::named_graph(words[1]).map_err(input_err)?;
            let ell: u32 = words[2]
                .parse()
                .map_err(|_| Failure::Input("bad ell".into()))?;
            (generate::thread_replace(&base, ell).map_err(input_err)?, None)
        }
        name => {
            if words.len() != 1 {
                return Err(Failure::Input(format!("family {name} takes no parameters")));
            }
            generate::named_graph(name).map_err(input_err)?
        }
    };
    let text = g.serialize();
    match &a.output {
        Some(path) => std::fs::write(path, text).map_err(input_err)?,
        None => print!("{text}"),
    }
    if let Some(path) = &a.embedding_out {
        let rot = rot.ok_or_else(|| {
            Failure::Input("this family has no built-in embedding".into())
        })?;
        std::fs::write(path, serialize_embedding(&rot)).map_err(input_err)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Config(a) => run_config(a),
        Command::Discharge(a) => run_discharge(a),
        Command::Color(a) => run_color(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Gen(a) => run_gen(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Negative(msg) => eprintln!("dcg: {msg}"),
                Failure::Input(msg) => eprintln!("dcg: error: {msg}"),
            }
            f.code()
        }
    }
}
