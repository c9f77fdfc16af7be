//! Declarative charge assignment and rule replay on graphs and plane
//! graphs: initial charge schemes, ordered phases of simultaneous
//! transfers, a global pot, conservation by construction, and deficit
//! reporting against a threshold.

use crate::config::{find_i_alternating_subgraph, find_light_edge, Configuration};
use crate::graph::{threads_and_cycles, Graph};
use crate::plane::PlaneGraph;
use crate::rational::{parse_rational, rat_int, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DischargeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unresolved symbol {0:?} (pass it via --param)")]
    UnresolvedSymbol(String),
    #[error("face charging or face relations require an embedding")]
    NeedsEmbedding,
    #[error("division by zero in an amount expression")]
    DivisionByZero,
    #[error("pot rules present but pot is off")]
    PotDisabled,
    #[error("light edge {0}-{1} blocks the iterated phases")]
    LightEdge(u32, u32),
    #[error("an i-alternating subgraph (i = {i}) blocks the iterated phases")]
    IAlternating { i: usize, support: Vec<u32> },
    #[error("{0}")]
    Invalid(String),
}

/// Chargeable entities. The pot is a single global reservoir.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Entity {
    Vertex(u32),
    Face(usize),
    Pot,
}

impl std::fmt::Display for Entity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Entity::Vertex(v) => write!(f, "v{v}"),
            Entity::Face(i) => write!(f, "f{i}"),
            Entity::Pot => write!(f, "pot"),
        }
    }
}

/// Initial charge scheme. The three plane schemes satisfy the fixed
/// totals −12 / −12 / −8 on every connected plane graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChargeSpec {
    /// Every vertex starts with its degree; faces unused.
    Degree,
    /// d−6 on vertices, 2ℓ−6 on faces.
    VertexCharging,
    /// 2d−6 on vertices, ℓ−6 on faces.
    FaceCharging,
    /// d−4 on vertices, ℓ−4 on faces.
    Balanced,
    /// α·d + β on vertices, γ·ℓ + δ on faces.
    Custom {
        va: Rational,
        vb: Rational,
        fa: Rational,
        fb: Rational,
    },
}

impl ChargeSpec {
    pub fn needs_faces(&self) -> bool {
        !matches!(self, ChargeSpec::Degree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Atom {
    cmp: Cmp,
    value: usize,
}

impl Atom {
    fn matches(&self, x: usize) -> bool {
        match self.cmp {
            Cmp::Le => x <= self.value,
            Cmp::Ge => x >= self.value,
            Cmp::Eq => x == self.value,
        }
    }
}

/// Entity selector: degree predicates select vertices, length predicates
/// select faces, `pot` selects the pot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    Pot,
    Vertex(Vec<Atom>),
    Face(Vec<Atom>),
}

impl Selector {
    fn matches_vertex(&self, g: &Graph, v: u32) -> bool {
        matches!(self, Selector::Vertex(atoms) if atoms.iter().all(|a| a.matches(g.degree(v))))
    }

    fn matches_face(&self, pg: &PlaneGraph, f: usize) -> bool {
        matches!(self, Selector::Face(atoms) if atoms.iter().all(|a| a.matches(pg.faces()[f].len())))
    }
}

/// How transfer instances are enumerated. Amounts apply once per realized
/// instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Once per edge, from one endpoint to the other.
    Neighbor,
    /// From each end slot of a maximal thread to each interior 2-vertex;
    /// a thread closing at one vertex pays from it twice.
    ThreadEnd,
    /// Once per path of length 2, from the far endpoint to the near one.
    Dist2Path,
    /// Once per vertex-face incidence slot, vertex to face.
    IncidentFace,
    /// Once per vertex-face incidence slot, face to vertex.
    IncidentVertex,
    /// From an edge endpoint to each of the edge's two side faces.
    EdgeSideFaces,
    /// Between the pot and every entity matching the other selector.
    Pot,
}

impl Relation {
    fn parse(s: &str) -> Option<Relation> {
        match s {
            "NEIGHBOR" => Some(Relation::Neighbor),
            "THREAD_END" => Some(Relation::ThreadEnd),
            "DIST2_PATH" => Some(Relation::Dist2Path),
            "INCIDENT_FACE" => Some(Relation::IncidentFace),
            "INCIDENT_VERTEX" => Some(Relation::IncidentVertex),
            "EDGE_SIDE_FACES" => Some(Relation::EdgeSideFaces),
            "POT" => Some(Relation::Pot),
            _ => None,
        }
    }
}

/// Exact rational amount expression over the symbols rho, t, Delta and
/// the per-instance attributes dfrom/dto/lfrom/lto.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(Rational),
    Sym(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

#[derive(Debug, Default, Clone)]
pub struct EvalCtx {
    pub params: BTreeMap<String, Rational>,
    pub dfrom: Option<usize>,
    pub dto: Option<usize>,
    pub lfrom: Option<usize>,
    pub lto: Option<usize>,
}

impl Expr {
    pub fn eval(&self, ctx: &EvalCtx) -> Result<Rational, DischargeError> {
        match self {
            Expr::Const(r) => Ok(r.clone()),
            Expr::Sym(name) => {
                let attr = |v: Option<usize>| {
                    v.map(|x| rat_int(x as i64))
                        .ok_or_else(|| DischargeError::UnresolvedSymbol(name.clone()))
                };
                match name.as_str() {
                    "dfrom" => attr(ctx.dfrom),
                    "dto" => attr(ctx.dto),
                    "lfrom" => attr(ctx.lfrom),
                    "lto" => attr(ctx.lto),
                    _ => ctx
                        .params
                        .get(name)
                        .cloned()
                        .ok_or_else(|| DischargeError::UnresolvedSymbol(name.clone())),
                }
            }
            Expr::Add(a, b) => Ok(a.eval(ctx)? + b.eval(ctx)?),
            Expr::Sub(a, b) => Ok(a.eval(ctx)? - b.eval(ctx)?),
            Expr::Mul(a, b) => Ok(a.eval(ctx)? * b.eval(ctx)?),
            Expr::Div(a, b) => {
                let d = b.eval(ctx)?;
                if d.is_zero() {
                    return Err(DischargeError::DivisionByZero);
                }
                Ok(a.eval(ctx)? / d)
            }
            Expr::Neg(a) => Ok(-a.eval(ctx)?),
        }
    }
}

/// A single transfer rule: who pays whom, along which relation, how much,
/// optionally gated by the other endpoint of the mediating edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferRule {
    pub from: Selector,
    pub to: Selector,
    pub relation: Relation,
    pub amount: Expr,
    /// Degree predicate on the other endpoint of the mediating edge
    /// (NEIGHBOR and EDGE_SIDE_FACES only).
    pub when_other: Option<Vec<Atom>>,
}

/// Charging spec, ordered phases of rules (each phase applied against the
/// previous phase's charges), a threshold, and the pot switch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub spec: ChargeSpec,
    pub phases: Vec<Vec<TransferRule>>,
    pub threshold: Expr,
    pub pot_enabled: bool,
}

/// One logged transfer instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub phase: usize,
    pub rule: usize,
    pub from: Entity,
    pub to: Entity,
    pub amount: Rational,
}

/// Charges per entity plus the complete transfer log.
#[derive(Debug, Clone)]
pub struct ChargeState {
    pub charges: BTreeMap<Entity, Rational>,
    pub log: Vec<Transfer>,
}

impl ChargeState {
    pub fn total(&self) -> Rational {
        self.charges.values().fold(Rational::zero(), |a, b| a + b)
    }

    /// Recomputes the final charges from `initial` and the log; equality
    /// with `self.charges` is the log-soundness invariant.
    pub fn replay_log(&self, initial: &ChargeState) -> BTreeMap<Entity, Rational> {
        let mut charges = initial.charges.clone();
        for t in &self.log {
            *charges.get_mut(&t.from).expect("logged source exists") -= t.amount.clone();
            *charges.get_mut(&t.to).expect("logged target exists") += t.amount.clone();
        }
        charges
    }
}

/// Either a bare graph or an embedded one.
#[derive(Clone, Copy)]
pub enum Host<'a> {
    Graph(&'a Graph),
    Plane(&'a PlaneGraph),
}

impl<'a> Host<'a> {
    pub fn graph(&self) -> &'a Graph {
        match self {
            Host::Graph(g) => g,
            Host::Plane(pg) => &pg.graph,
        }
    }

    fn plane(&self) -> Option<&'a PlaneGraph> {
        match self {
            Host::Graph(_) => None,
            Host::Plane(pg) => Some(pg),
        }
    }
}

/// Initial charges per the spec; for face schemes the host must be
/// embedded.
pub fn initial_charges(host: Host, spec: &ChargeSpec, pot: bool) -> Result<ChargeState, DischargeError> {
    let g = host.graph();
    if spec.needs_faces() && host.plane().is_none() {
        return Err(DischargeError::NeedsEmbedding);
    }
    let mut charges: BTreeMap<Entity, Rational> = BTreeMap::new();
    for v in g.vertices() {
        let d = rat_int(g.degree(v) as i64);
        let c = match spec {
            ChargeSpec::Degree => d,
            ChargeSpec::VertexCharging => d - rat_int(6),
            ChargeSpec::FaceCharging => rat_int(2) * d - rat_int(6),
            ChargeSpec::Balanced => d - rat_int(4),
            ChargeSpec::Custom { va, vb, .. } => va * d + vb,
        };
        charges.insert(Entity::Vertex(v), c);
    }
    if let Some(pg) = host.plane() {
        // faces are entities on every embedded host; degree mode just
        // starts them at zero
        for (i, f) in pg.faces().iter().enumerate() {
            let l = rat_int(f.len() as i64);
            let c = match spec {
                ChargeSpec::Degree => Rational::zero(),
                ChargeSpec::VertexCharging => rat_int(2) * l - rat_int(6),
                ChargeSpec::FaceCharging => l - rat_int(6),
                ChargeSpec::Balanced => l - rat_int(4),
                ChargeSpec::Custom { fa, fb, .. } => fa * l + fb,
            };
            charges.insert(Entity::Face(i), c);
        }
    }
    if pot {
        charges.insert(Entity::Pot, Rational::zero());
    }
    Ok(ChargeState {
        charges,
        log: Vec::new(),
    })
}

fn other_ok(g: &Graph, when: &Option<Vec<Atom>>, other: u32) -> bool {
    match when {
        None => true,
        Some(atoms) => atoms.iter().all(|a| a.matches(g.degree(other))),
    }
}

/// Enumerates the transfer instances of one rule against the host.
fn instances(
    host: Host,
    rule: &TransferRule,
    threads: &[crate::graph::Thread],
    ctx: &EvalCtx,
) -> Result<Vec<(Entity, Entity, Rational)>, DischargeError> {
    let g = host.graph();
    let mut out = Vec::new();
    let mut push = |from: Entity, to: Entity, ctx2: EvalCtx, amount: &Expr| {
        amount.eval(&ctx2).map(|amt| out.push((from, to, amt)))
    };
    let vertex_ctx = |v: u32, w: u32| EvalCtx {
        params: ctx.params.clone(),
        dfrom: Some(g.degree(v)),
        dto: Some(g.degree(w)),
        lfrom: None,
        lto: None,
    };
    match rule.relation {
        Relation::Neighbor => {
            for &(u, v) in g.edges() {
                if u == v {
                    continue;
                }
                for (a, b) in [(u, v), (v, u)] {
                    if rule.from.matches_vertex(g, a)
                        && rule.to.matches_vertex(g, b)
                        && other_ok(g, &rule.when_other, b)
                    {
                        push(Entity::Vertex(a), Entity::Vertex(b), vertex_ctx(a, b), &rule.amount)?;
                    }
                }
            }
        }
        Relation::ThreadEnd => {
            for th in threads {
                for end in [th.ends.0, th.ends.1] {
                    if !rule.from.matches_vertex(g, end) {
                        continue;
                    }
                    for &u in &th.interior {
                        if rule.to.matches_vertex(g, u) {
                            push(
                                Entity::Vertex(end),
                                Entity::Vertex(u),
                                vertex_ctx(end, u),
                                &rule.amount,
                            )?;
                        }
                    }
                }
            }
        }
        Relation::Dist2Path => {
            for w in g.vertices() {
                let inc = g.incidences(w);
                for (i, &(a, ea)) in inc.iter().enumerate() {
                    for &(b, eb) in inc.iter().skip(i + 1) {
                        if a == b || a == w || b == w || ea == eb {
                            continue;
                        }
                        for (src, dst) in [(a, b), (b, a)] {
                            if rule.from.matches_vertex(g, src) && rule.to.matches_vertex(g, dst) {
                                push(
                                    Entity::Vertex(src),
                                    Entity::Vertex(dst),
                                    vertex_ctx(src, dst),
                                    &rule.amount,
                                )?;
                            }
                        }
                    }
                }
            }
        }
        Relation::IncidentFace | Relation::IncidentVertex => {
            let pg = host.plane().ok_or(DischargeError::NeedsEmbedding)?;
            for v in g.vertices() {
                for f in pg.faces_at_vertex(v) {
                    let (from, to, ok) = if rule.relation == Relation::IncidentFace {
                        (
                            Entity::Vertex(v),
                            Entity::Face(f),
                            rule.from.matches_vertex(g, v) && rule.to.matches_face(pg, f),
                        )
                    } else {
                        (
                            Entity::Face(f),
                            Entity::Vertex(v),
                            rule.from.matches_face(pg, f) && rule.to.matches_vertex(g, v),
                        )
                    };
                    if ok {
                        let mut c2 = ctx.clone();
                        match rule.relation {
                            Relation::IncidentFace => {
                                c2.dfrom = Some(g.degree(v));
                                c2.lto = Some(pg.faces()[f].len());
                            }
                            _ => {
                                c2.lfrom = Some(pg.faces()[f].len());
                                c2.dto = Some(g.degree(v));
                            }
                        }
                        push(from, to, c2, &rule.amount)?;
                    }
                }
            }
        }
        Relation::EdgeSideFaces => {
            let pg = host.plane().ok_or(DischargeError::NeedsEmbedding)?;
            for e in 0..g.m() {
                let (u, v) = g.edges()[e];
                let (f1, f2) = pg.edge_sides(e);
                for (a, b) in [(u, v), (v, u)] {
                    if !rule.from.matches_vertex(g, a) || !other_ok(g, &rule.when_other, b) {
                        continue;
                    }
                    for f in [f1, f2] {
                        if rule.to.matches_face(pg, f) {
                            let mut c2 = ctx.clone();
                            c2.dfrom = Some(g.degree(a));
                            c2.lto = Some(pg.faces()[f].len());
                            push(Entity::Vertex(a), Entity::Face(f), c2, &rule.amount)?;
                        }
                    }
                }
            }
        }
        Relation::Pot => {
            let (pot_is_from, other_sel) = match (&rule.from, &rule.to) {
                (Selector::Pot, sel) => (true, sel),
                (sel, Selector::Pot) => (false, sel),
                _ => {
                    return Err(DischargeError::Invalid(
                        "POT relation needs the pot on one side".into(),
                    ))
                }
            };
            let mut targets: Vec<(Entity, usize)> = Vec::new();
            match other_sel {
                Selector::Vertex(_) => {
                    for v in g.vertices() {
                        if other_sel.matches_vertex(g, v) {
                            targets.push((Entity::Vertex(v), g.degree(v)));
                        }
                    }
                }
                Selector::Face(_) => {
                    let pg = host.plane().ok_or(DischargeError::NeedsEmbedding)?;
                    for f in 0..pg.face_count() {
                        if other_sel.matches_face(pg, f) {
                            targets.push((Entity::Face(f), pg.faces()[f].len()));
                        }
                    }
                }
                Selector::Pot => {
                    return Err(DischargeError::Invalid("pot-to-pot transfer".into()))
                }
            }
            for (ent, attr) in targets {
                let mut c2 = ctx.clone();
                if pot_is_from {
                    match ent {
                        Entity::Vertex(_) => c2.dto = Some(attr),
                        Entity::Face(_) => c2.lto = Some(attr),
                        Entity::Pot => {}
                    }
                    push(Entity::Pot, ent, c2, &rule.amount)?;
                } else {
                    match ent {
                        Entity::Vertex(_) => c2.dfrom = Some(attr),
                        Entity::Face(_) => c2.lfrom = Some(attr),
                        Entity::Pot => {}
                    }
                    push(ent, Entity::Pot, c2, &rule.amount)?;
                }
            }
        }
    }
    Ok(out)
}

/// Replays a ruleset: phases in order, each phase's transfers computed
/// against the phase-start charges and applied simultaneously.
pub fn run_ruleset(
    host: Host,
    rs: &RuleSet,
    params: &BTreeMap<String, Rational>,
) -> Result<ChargeState, DischargeError> {
    let g = host.graph();
    let uses_pot = rs
        .phases
        .iter()
        .flatten()
        .any(|r| r.relation == Relation::Pot);
    if uses_pot && !rs.pot_enabled {
        return Err(DischargeError::PotDisabled);
    }
    let mut state = initial_charges(host, &rs.spec, rs.pot_enabled)?;
    let mut ctx = EvalCtx {
        params: params.clone(),
        ..EvalCtx::default()
    };
    ctx.params
        .insert("Delta".into(), rat_int(g.max_degree() as i64));
    let threads = threads_and_cycles(g, 1).0;
    for (pi, phase) in rs.phases.iter().enumerate() {
        let mut transfers: Vec<Transfer> = Vec::new();
        for (ri, rule) in phase.iter().enumerate() {
            for (from, to, amount) in instances(host, rule, &threads, &ctx)? {
                transfers.push(Transfer {
                    phase: pi,
                    rule: ri,
                    from,
                    to,
                    amount,
                });
            }
        }
        for t in &transfers {
            if !state.charges.contains_key(&t.from) || !state.charges.contains_key(&t.to) {
                return Err(DischargeError::Invalid(format!(
                    "transfer touches unknown entity {} or {}",
                    t.from, t.to
                )));
            }
        }
        for t in &transfers {
            *state.charges.get_mut(&t.from).unwrap() -= t.amount.clone();
            *state.charges.get_mut(&t.to).unwrap() += t.amount.clone();
        }
        state.log.extend(transfers);
    }
    Ok(state)
}

/// A deficit entity with its final charge and a 2-neighborhood dump.
#[derive(Debug, Clone)]
pub struct Deficit {
    pub entity: Entity,
    pub charge: Rational,
    /// Nearby vertices as (id, degree); for faces, the incident vertices.
    pub neighborhood: Vec<(u32, usize)>,
}

#[derive(Debug, Clone)]
pub enum Verdict {
    AllAbove,
    Deficits(Vec<Deficit>),
}

/// Runs the ruleset and checks every vertex and face against the
/// threshold; the pot, when enabled, must end nonnegative.
pub fn verify_lemma(
    host: Host,
    rs: &RuleSet,
    params: &BTreeMap<String, Rational>,
) -> Result<(ChargeState, Verdict), DischargeError> {
    let g = host.graph();
    let state = run_ruleset(host, rs, params)?;
    let mut ctx = EvalCtx {
        params: params.clone(),
        ..EvalCtx::default()
    };
    ctx.params
        .insert("Delta".into(), rat_int(g.max_degree() as i64));
    let threshold = rs.threshold.eval(&ctx)?;
    let mut deficits = Vec::new();
    for (ent, charge) in &state.charges {
        let bad = match ent {
            Entity::Pot => charge < &Rational::zero(),
            _ => charge < &threshold,
        };
        if !bad {
            continue;
        }
        let neighborhood = match ent {
            Entity::Vertex(v) => g
                .ball(*v, 2)
                .into_iter()
                .map(|u| (u, g.degree(u)))
                .collect(),
            Entity::Face(f) => host
                .plane()
                .map(|pg| {
                    pg.face_vertices(*f)
                        .into_iter()
                        .map(|u| (u, g.degree(u)))
                        .collect()
                })
                .unwrap_or_default(),
            Entity::Pot => Vec::new(),
        };
        deficits.push(Deficit {
            entity: *ent,
            charge: charge.clone(),
            neighborhood,
        });
    }
    let verdict = if deficits.is_empty() {
        Verdict::AllAbove
    } else {
        Verdict::Deficits(deficits)
    };
    Ok((state, verdict))
}

// ---- rule file grammar ----

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex_expr(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut l = Lexer {
        chars: s.chars().peekable(),
    };
    while let Some(&c) = l.chars.peek() {
        if c.is_whitespace() {
            l.chars.next();
        } else if c.is_ascii_digit() {
            let mut n = String::new();
            while let Some(&d) = l.chars.peek() {
                if d.is_ascii_digit() {
                    n.push(d);
                    l.chars.next();
                } else {
                    break;
                }
            }
            out.push(Tok::Num(n));
        } else if c.is_alphabetic() || c == '_' {
            let mut id = String::new();
            while let Some(&d) = l.chars.peek() {
                if d.is_alphanumeric() || d == '_' {
                    id.push(d);
                    l.chars.next();
                } else {
                    break;
                }
            }
            out.push(Tok::Ident(id));
        } else if "+-*/()".contains(c) {
            out.push(Tok::Op(c));
            l.chars.next();
        } else {
            return Err(format!("unexpected character {c:?} in expression"));
        }
    }
    Ok(out)
}

struct ExprParser {
    toks: Vec<Tok>,
    pos: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn parse_expr(&mut self) -> Result<Expr, String> {
        let mut lhs = self.parse_term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.parse_term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn parse_term(&mut self) -> Result<Expr, String> {
        let mut lhs = self.parse_factor()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.parse_factor()?;
            if op == '/' {
                if let Expr::Const(c) = &rhs {
                    if c.is_zero() {
                        return Err("zero denominator".into());
                    }
                }
                lhs = match (&lhs, &rhs) {
                    (Expr::Const(a), Expr::Const(b)) => Expr::Const(a / b),
                    _ => Expr::Div(Box::new(lhs), Box::new(rhs)),
                };
            } else {
                lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
            }
        }
        Ok(lhs)
    }

    fn parse_factor(&mut self) -> Result<Expr, String> {
        match self.peek().cloned() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.parse_factor()?)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.parse_expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err("missing closing parenthesis".into());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Const(parse_rational(&n)?))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                Ok(Expr::Sym(id))
            }
            other => Err(format!("unexpected token {other:?} in expression")),
        }
    }
}

/// Parses an amount/threshold expression: `p/q`, integers, or arithmetic
/// over rho, t, Delta, dfrom, dto, lfrom, lto. Division is exact; `/`
/// between two integer literals is the rational constant.
pub fn parse_expr(s: &str) -> Result<Expr, String> {
    let toks = lex_expr(s)?;
    let mut p = ExprParser { toks, pos: 0 };
    let e = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return Err("trailing tokens in expression".into());
    }
    Ok(e)
}

fn parse_atom(tok: &str) -> Result<(bool, Atom), String> {
    // returns (is_degree, atom)
    let (is_deg, rest) = if let Some(r) = tok.strip_prefix("deg") {
        (true, r)
    } else if let Some(r) = tok.strip_prefix("len") {
        (false, r)
    } else {
        return Err(format!("selector atom {tok:?} must start with deg or len"));
    };
    let (cmp, num) = if let Some(n) = rest.strip_prefix("<=") {
        (Cmp::Le, n)
    } else if let Some(n) = rest.strip_prefix(">=") {
        (Cmp::Ge, n)
    } else if let Some(n) = rest.strip_prefix('=') {
        (Cmp::Eq, n)
    } else {
        return Err(format!("selector atom {tok:?} needs <=, >= or ="));
    };
    let value: usize = num
        .parse()
        .map_err(|_| format!("bad bound in selector atom {tok:?}"))?;
    Ok((is_deg, Atom { cmp, value }))
}

fn parse_selector(s: &str) -> Result<Selector, String> {
    let s = s.trim();
    if s == "pot" {
        return Ok(Selector::Pot);
    }
    let mut deg_atoms = Vec::new();
    let mut len_atoms = Vec::new();
    for part in s.split('&') {
        let (is_deg, atom) = parse_atom(part.trim())?;
        if is_deg {
            deg_atoms.push(atom);
        } else {
            len_atoms.push(atom);
        }
    }
    match (deg_atoms.is_empty(), len_atoms.is_empty()) {
        (false, true) => Ok(Selector::Vertex(deg_atoms)),
        (true, false) => Ok(Selector::Face(len_atoms)),
        _ => Err(format!("selector {s:?} mixes degree and length atoms")),
    }
}

/// Parses the line-based rule file grammar.
pub fn parse_ruleset(text: &str) -> Result<RuleSet, DischargeError> {
    let mut spec: Option<ChargeSpec> = None;
    let mut threshold: Option<Expr> = None;
    let mut pot_enabled = false;
    let mut phases: Vec<Vec<TransferRule>> = vec![Vec::new()];
    let err = |line: usize, msg: String| DischargeError::Parse { line, msg };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        match head {
            "charging" => {
                spec = Some(match rest.trim() {
                    "degree" => ChargeSpec::Degree,
                    "vertex" => ChargeSpec::VertexCharging,
                    "face" => ChargeSpec::FaceCharging,
                    "balanced" => ChargeSpec::Balanced,
                    other => return Err(err(line, format!("unknown charging mode {other:?}"))),
                });
            }
            "threshold" => {
                threshold = Some(parse_expr(rest).map_err(|m| err(line, m))?);
            }
            "pot" => {
                pot_enabled = match rest.trim() {
                    "on" => true,
                    "off" => false,
                    other => return Err(err(line, format!("pot must be on or off, got {other:?}"))),
                };
            }
            "phase" => {
                if !rest.trim().is_empty() {
                    return Err(err(line, "phase takes no arguments".into()));
                }
                phases.push(Vec::new());
            }
            "rule" => {
                let rule = parse_rule_line(rest).map_err(|m| err(line, m))?;
                phases.last_mut().unwrap().push(rule);
            }
            other => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }
    if phases.first().is_some_and(|p| p.is_empty()) && phases.len() > 1 {
        phases.remove(0);
    }
    Ok(RuleSet {
        spec: spec.ok_or_else(|| DischargeError::Invalid("missing charging line".into()))?,
        phases,
        threshold: threshold
            .ok_or_else(|| DischargeError::Invalid("missing threshold line".into()))?,
        pot_enabled,
    })
}

fn parse_rule_line(rest: &str) -> Result<TransferRule, String> {
    // from <sel> to <sel> via <REL> amount <expr> [when other <atom>]
    let words: Vec<&str> = rest.split_whitespace().collect();
    let find_kw = |kw: &str| words.iter().position(|&w| w == kw);
    let from_i = find_kw("from").ok_or("rule needs `from`")?;
    let to_i = find_kw("to").ok_or("rule needs `to`")?;
    let via_i = find_kw("via").ok_or("rule needs `via`")?;
    let amount_i = find_kw("amount").ok_or("rule needs `amount`")?;
    let when_i = find_kw("when");
    if !(from_i < to_i && to_i < via_i && via_i < amount_i) {
        return Err("rule clauses out of order".into());
    }
    let from = parse_selector(&words[from_i + 1..to_i].join(" "))?;
    let to = parse_selector(&words[to_i + 1..via_i].join(" "))?;
    let rel_words = &words[via_i + 1..amount_i];
    if rel_words.len() != 1 {
        return Err("via takes exactly one relation".into());
    }
    let relation = Relation::parse(rel_words[0])
        .ok_or_else(|| format!("unknown relation {:?}", rel_words[0]))?;
    let amount_end = when_i.unwrap_or(words.len());
    let amount = parse_expr(&words[amount_i + 1..amount_end].join(" "))?;
    let when_other = match when_i {
        None => None,
        Some(w) => {
            if words.get(w + 1) != Some(&"other") {
                return Err("when clause must read `when other <atom>`".into());
            }
            let mut atoms = Vec::new();
            for part in words[w + 2..].join(" ").split('&') {
                let (is_deg, atom) = parse_atom(part.trim())?;
                if !is_deg {
                    return Err("when other takes degree atoms".into());
                }
                atoms.push(atom);
            }
            Some(atoms)
        }
    };
    Ok(TransferRule {
        from,
        to,
        relation,
        amount,
        when_other,
    })
}

/// Serializes a ruleset back to the file grammar.
pub fn serialize_ruleset(rs: &RuleSet) -> String {
    fn expr_str(e: &Expr) -> String {
        match e {
            Expr::Const(r) => r.to_string(),
            Expr::Sym(s) => s.clone(),
            Expr::Add(a, b) => format!("({} + {})", expr_str(a), expr_str(b)),
            Expr::Sub(a, b) => format!("({} - {})", expr_str(a), expr_str(b)),
            Expr::Mul(a, b) => format!("({} * {})", expr_str(a), expr_str(b)),
            Expr::Div(a, b) => format!("({} / {})", expr_str(a), expr_str(b)),
            Expr::Neg(a) => format!("(-{})", expr_str(a)),
        }
    }
    fn sel_str(s: &Selector) -> String {
        match s {
            Selector::Pot => "pot".into(),
            Selector::Vertex(atoms) => atoms
                .iter()
                .map(|a| {
                    let op = match a.cmp {
                        Cmp::Le => "<=",
                        Cmp::Ge => ">=",
                        Cmp::Eq => "=",
                    };
                    format!("deg{op}{}", a.value)
                })
                .collect::<Vec<_>>()
                .join(" & "),
            Selector::Face(atoms) => atoms
                .iter()
                .map(|a| {
                    let op = match a.cmp {
                        Cmp::Le => "<=",
                        Cmp::Ge => ">=",
                        Cmp::Eq => "=",
                    };
                    format!("len{op}{}", a.value)
                })
                .collect::<Vec<_>>()
                .join(" & "),
        }
    }
    let mut out = String::new();
    out.push_str(&format!(
        "charging {}\n",
        match rs.spec {
            ChargeSpec::Degree => "degree",
            ChargeSpec::VertexCharging => "vertex",
            ChargeSpec::FaceCharging => "face",
            ChargeSpec::Balanced => "balanced",
            ChargeSpec::Custom { .. } => "degree",
        }
    ));
    out.push_str(&format!("threshold {}\n", expr_str(&rs.threshold)));
    out.push_str(&format!("pot {}\n", if rs.pot_enabled { "on" } else { "off" }));
    for (i, phase) in rs.phases.iter().enumerate() {
        if i > 0 {
            out.push_str("phase\n");
        }
        for r in phase {
            let rel = match r.relation {
                Relation::Neighbor => "NEIGHBOR",
                Relation::ThreadEnd => "THREAD_END",
                Relation::Dist2Path => "DIST2_PATH",
                Relation::IncidentFace => "INCIDENT_FACE",
                Relation::IncidentVertex => "INCIDENT_VERTEX",
                Relation::EdgeSideFaces => "EDGE_SIDE_FACES",
                Relation::Pot => "POT",
            };
            out.push_str(&format!(
                "rule from {} to {} via {} amount {}",
                sel_str(&r.from),
                sel_str(&r.to),
                rel,
                expr_str(&r.amount)
            ));
            if let Some(atoms) = &r.when_other {
                let parts: Vec<String> = atoms
                    .iter()
                    .map(|a| {
                        let op = match a.cmp {
                            Cmp::Le => "<=",
                            Cmp::Ge => ">=",
                            Cmp::Eq => "=",
                        };
                        format!("deg{op}{}", a.value)
                    })
                    .collect();
                out.push_str(&format!(" when other {}", parts.join(" & ")));
            }
            out.push('\n');
        }
    }
    out
}

/// Built-in rule files shipped with the toolkit, keyed by the same short
/// names the configuration lemmas use.
pub fn builtin_ruleset(name: &str) -> Option<&'static str> {
    match name {
        "threads" => Some(include_str!("../rules/threads.rules")),
        "subcubic" => Some(include_str!("../rules/subcubic.rules")),
        "girth7" => Some(include_str!("../rules/girth7.rules")),
        "plane-light" => Some(include_str!("../rules/plane_light.rules")),
        "girth5" => Some(include_str!("../rules/girth5.rules")),
        _ => None,
    }
}

pub fn builtin_names() -> &'static [&'static str] {
    &["threads", "subcubic", "girth7", "plane-light", "girth5"]
}

/// Iterated unit discharging: phases i = 2..⌊√(2Δ)−1⌋, each 5⁻... each
/// i⁻-vertex receives charge 1 from a donor found by the alternating
/// peeling order. Errors when a light edge or an i-alternating subgraph
/// blocks a phase (those are the reducible configurations of the scheme).
pub fn iterated_unit_phases(g: &Graph) -> Result<ChargeState, DischargeError> {
    let delta = g.max_degree();
    let mut state = initial_charges(Host::Graph(g), &ChargeSpec::Degree, false)?;
    if delta < 2 {
        return Ok(state);
    }
    if let Some((u, v)) = find_light_edge(g, delta + 1) {
        return Err(DischargeError::LightEdge(u, v));
    }
    let x = {
        let mut s = 0usize;
        while (s + 1) * (s + 1) <= 2 * delta {
            s += 1;
        }
        s.saturating_sub(1) // ⌊√(2Δ) − 1⌋
    };
    for (pi, i) in (2..=x).enumerate() {
        match find_i_alternating_subgraph(g, i) {
            Ok(Some(Configuration { vertices, .. })) => {
                return Err(DischargeError::IAlternating { i, support: vertices });
            }
            Ok(None) => {}
            Err(e) => return Err(DischargeError::Invalid(e.to_string())),
        }
        // peel: always finds a donor, since no i-alternating subgraph
        let mut u_side: std::collections::BTreeSet<u32> =
            g.vertices().filter(|&v| g.degree(v) <= i).collect();
        while !u_side.is_empty() {
            let w_side: std::collections::BTreeSet<u32> =
                u_side.iter().flat_map(|&u| g.neighbors(u)).collect();
            let donor = w_side
                .iter()
                .copied()
                .find(|&w| {
                    let df = g.neighbors(w).filter(|x| u_side.contains(x)).count();
                    df as i64 <= g.degree(w) as i64 + i as i64 - delta as i64 - 1
                })
                .ok_or(DischargeError::Invalid(
                    "peeling stalled without an i-alternating subgraph".into(),
                ))?;
            let recipients: Vec<u32> = g.neighbors(donor).filter(|x| u_side.contains(x)).collect();
            for r in &recipients {
                u_side.remove(r);
            }
            for r in recipients {
                let t = Transfer {
                    phase: pi,
                    rule: 0,
                    from: Entity::Vertex(donor),
                    to: Entity::Vertex(r),
                    amount: rat_int(1),
                };
                *state.charges.get_mut(&t.from).unwrap() -= t.amount.clone();
                *state.charges.get_mut(&t.to).unwrap() += t.amount.clone();
                state.log.push(t);
            }
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::rational::rat;

    fn params(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn charge_identities_on_k4() {
        let (g, rot) = generate::named_graph("K4").unwrap();
        let pg = PlaneGraph::new(g, &rot.unwrap()).unwrap();
        let st = initial_charges(Host::Plane(&pg), &ChargeSpec::VertexCharging, false).unwrap();
        for v in pg.graph.vertices() {
            assert_eq!(st.charges[&Entity::Vertex(v)], rat_int(-3));
        }
        for f in 0..pg.face_count() {
            assert_eq!(st.charges[&Entity::Face(f)], rat_int(0));
        }
        assert_eq!(st.total(), rat_int(-12));
    }

    #[test]
    fn balanced_on_cube() {
        let (g, rot) = generate::named_graph("cube").unwrap();
        let pg = PlaneGraph::new(g, &rot.unwrap()).unwrap();
        let st = initial_charges(Host::Plane(&pg), &ChargeSpec::Balanced, false).unwrap();
        for v in pg.graph.vertices() {
            assert_eq!(st.charges[&Entity::Vertex(v)], rat_int(-1));
        }
        for f in 0..pg.face_count() {
            assert_eq!(st.charges[&Entity::Face(f)], rat_int(0));
        }
        assert_eq!(st.total(), rat_int(-8));
    }

    #[test]
    fn degree_mode_total() {
        let g = generate::petersen();
        let st = initial_charges(Host::Graph(&g), &ChargeSpec::Degree, false).unwrap();
        assert_eq!(st.total(), rat_int(2 * g.m() as i64));
    }

    #[test]
    fn thread_ruleset_reaches_twelve_fifths() {
        let rs = parse_ruleset(builtin_ruleset("threads").unwrap()).unwrap();
        let g = generate::thread_replace(&generate::complete(4), 2).unwrap();
        let p = params(&[("rho", rat(1, 5))]);
        let (state, verdict) = verify_lemma(Host::Graph(&g), &rs, &p).unwrap();
        for v in g.vertices() {
            assert_eq!(state.charges[&Entity::Vertex(v)], rat(12, 5), "vertex {v}");
        }
        assert!(matches!(verdict, Verdict::AllAbove));
    }

    #[test]
    fn subcubic_ruleset_on_near_heawood() {
        let rs = parse_ruleset(builtin_ruleset("subcubic").unwrap()).unwrap();
        let g = generate::heawood_minus_vertex();
        let (state, verdict) = verify_lemma(Host::Graph(&g), &rs, &BTreeMap::new()).unwrap();
        for v in g.vertices() {
            assert_eq!(state.charges[&Entity::Vertex(v)], rat(36, 13), "vertex {v}");
        }
        assert!(matches!(verdict, Verdict::AllAbove));
    }

    #[test]
    fn empty_ruleset_is_identity() {
        let (g, rot) = generate::named_graph("K4").unwrap();
        let pg = PlaneGraph::new(g, &rot.unwrap()).unwrap();
        let rs = RuleSet {
            spec: ChargeSpec::Balanced,
            phases: vec![Vec::new()],
            threshold: Expr::Const(rat_int(-10)),
            pot_enabled: false,
        };
        let init = initial_charges(Host::Plane(&pg), &ChargeSpec::Balanced, false).unwrap();
        let state = run_ruleset(Host::Plane(&pg), &rs, &BTreeMap::new()).unwrap();
        assert_eq!(state.charges, init.charges);
        assert!(state.log.is_empty());
    }

    #[test]
    fn conservation_and_log_soundness() {
        let rs = parse_ruleset(builtin_ruleset("subcubic").unwrap()).unwrap();
        let g = generate::thread_replace(&generate::petersen(), 2).unwrap();
        let init = initial_charges(Host::Graph(&g), &rs.spec, rs.pot_enabled).unwrap();
        let state = run_ruleset(Host::Graph(&g), &rs, &BTreeMap::new()).unwrap();
        assert_eq!(state.total(), init.total());
        assert_eq!(state.replay_log(&init), state.charges);
    }

    #[test]
    fn deficit_reported_with_neighborhood() {
        // a 3-vertex carrying three 3-threads pays 9*rho and drops below
        // 2 + 2*rho
        let g = Graph::from_edges(&[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 10),
            (0, 4),
            (4, 5),
            (5, 6),
            (6, 11),
            (0, 7),
            (7, 8),
            (8, 9),
            (9, 12),
            (10, 11),
            (11, 12),
            (10, 12),
        ]);
        let rs = parse_ruleset(builtin_ruleset("threads").unwrap()).unwrap();
        let p = params(&[("rho", rat(1, 5))]);
        let (state, verdict) = verify_lemma(Host::Graph(&g), &rs, &p).unwrap();
        assert_eq!(state.charges[&Entity::Vertex(0)], rat(6, 5));
        match verdict {
            Verdict::Deficits(ds) => {
                assert_eq!(ds.len(), 1);
                assert_eq!(ds[0].entity, Entity::Vertex(0));
                assert!(!ds[0].neighborhood.is_empty());
            }
            Verdict::AllAbove => panic!("expected a deficit"),
        }
    }

    #[test]
    fn conservation_under_fuzzless_pot_run() {
        // wheel with pot rules: nothing matches deg>=14, the pot just
        // stays at zero and totals are conserved
        let (g, rot) = generate::wheel_embedded(6);
        let pg = PlaneGraph::new(g, &rot).unwrap();
        let rs = parse_ruleset(builtin_ruleset("plane-light").unwrap()).unwrap();
        let init = initial_charges(Host::Plane(&pg), &rs.spec, rs.pot_enabled).unwrap();
        let st = run_ruleset(Host::Plane(&pg), &rs, &BTreeMap::new()).unwrap();
        assert_eq!(st.total(), init.total());
    }

    #[test]
    fn parse_errors_carry_lines() {
        let bad = "charging degree\nthreshold 1/0\n";
        assert!(matches!(
            parse_ruleset(bad),
            Err(DischargeError::Parse { line: 2, .. })
        ));
        let bad = "charging degree\nthreshold 2\nrule from deg=2 to deg=2 via NOPE amount 1\n";
        assert!(matches!(
            parse_ruleset(bad),
            Err(DischargeError::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn ruleset_roundtrip() {
        for name in builtin_names() {
            let rs = parse_ruleset(builtin_ruleset(name).unwrap()).unwrap();
            let rs2 = parse_ruleset(&serialize_ruleset(&rs)).unwrap();
            assert_eq!(rs, rs2, "{name}");
        }
    }

    #[test]
    fn pot_rules_respected() {
        let rs = parse_ruleset(builtin_ruleset("plane-light").unwrap()).unwrap();
        assert!(rs.pot_enabled);
        let text = serialize_ruleset(&rs).replace("pot on", "pot off");
        let rs_off = parse_ruleset(&text).unwrap();
        let (g, rot) = generate::named_graph("icosahedron").unwrap();
        let pg = PlaneGraph::new(g, &rot.unwrap()).unwrap();
        assert!(matches!(
            run_ruleset(Host::Plane(&pg), &rs_off, &BTreeMap::new()),
            Err(DischargeError::PotDisabled)
        ));
    }

    #[test]
    fn iterated_phases_transfer_units() {
        // K9 plus a 2-vertex on two of its vertices: edge weights 11 and
        // 16+ dodge the light-edge bound Δ+1 = 10, and phase 2 moves one
        // unit to the 2-vertex
        let mut g = generate::complete(9);
        g.add_edge(0, 100);
        g.add_edge(1, 100);
        let st = iterated_unit_phases(&g).unwrap();
        assert_eq!(st.total(), rat_int(2 * g.m() as i64));
        // the 2-vertex collects one unit in each of phases 2 and 3
        assert_eq!(st.charges[&Entity::Vertex(100)], rat_int(4));
        assert_eq!(st.log.len(), 2);
        // a star's edges have weight Δ+1: light, so the phases refuse
        let star = Graph::from_edges(&[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        assert!(matches!(
            iterated_unit_phases(&star),
            Err(DischargeError::LightEdge(_, _))
        ));
    }
}
