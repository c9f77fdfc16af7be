//! Circular coloring: homomorphisms into circular cliques, the exact
//! interval law for extending a coloring along a thread, and the
//! constructive peeling colorer into C_{2t+1}.

use super::{validate, Color, ColorError, Coloring, Kind};
use crate::density::mad;
use crate::graph::{cycle_components, find_threads, incident_threads, weak_two_neighbors, Graph};
use crate::rational::{rat, rat_int};
use std::collections::{BTreeMap, BTreeSet};

/// Colors Z_p with adjacency "differ by at least q and at most p−q".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircularPalette {
    pub p: u32,
    pub q: u32,
}

impl CircularPalette {
    pub fn new(p: u32, q: u32) -> Result<Self, ColorError> {
        if p <= 2 * q {
            return Err(ColorError::Hypothesis(format!("need p > 2q, got {p} <= 2*{q}")));
        }
        Ok(CircularPalette { p, q })
    }

    pub fn adjacent(&self, a: Color, b: Color) -> bool {
        let d = (a as i64 - b as i64).rem_euclid(self.p as i64) as u32;
        d >= self.q && d <= self.p - self.q
    }
}

/// A color interval [start, start+len) modulo p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorInterval {
    pub start: Color,
    pub len: u32,
}

impl ColorInterval {
    pub fn contains(&self, c: Color, p: u32) -> bool {
        (c as i64 - self.start as i64).rem_euclid(p as i64) < self.len as i64
    }
}

#[derive(Debug, Clone)]
pub struct ThreadExtension {
    /// Allowed intervals at x = u_0 through y = u_{ℓ+1}.
    pub intervals: Vec<ColorInterval>,
    /// Values of Z_p excluded at y.
    pub forbidden_at_end: Vec<Color>,
}

/// The interval law for extending a (p,q)-coloring along an ℓ-thread with
/// a fixed color at one end: the allowed set at step i is an interval of
/// 1 + i(p−2q) consecutive colors, and at most
/// max{0, p−1−(ℓ+1)(p−2q)} values are forbidden at the far end.
pub fn extend_thread(p: u32, q: u32, ell: u32, at_x: Color) -> Result<ThreadExtension, ColorError> {
    let pal = CircularPalette::new(p, q)?;
    let growth = p - 2 * q;
    let mut intervals = Vec::with_capacity(ell as usize + 2);
    let mut cur = ColorInterval { start: at_x % p, len: 1 };
    intervals.push(cur);
    for _ in 0..=ell {
        // [a, b] allowed here makes [a+q, b+p−q] allowed one step on
        cur = ColorInterval {
            start: (cur.start + q) % p,
            len: (cur.len + growth).min(p),
        };
        intervals.push(cur);
    }
    let last = *intervals.last().unwrap();
    let forbidden_at_end: Vec<Color> = (0..p).filter(|&c| !last.contains(c, p)).collect();
    debug_assert!(
        forbidden_at_end.len() as i64
            <= 0.max(p as i64 - 1 - (ell as i64 + 1) * growth as i64)
    );
    let _ = pal;
    Ok(ThreadExtension {
        intervals,
        forbidden_at_end,
    })
}

/// Whether a walk of `steps` steps in K_{(2t+1):t} can run from color `a`
/// to color `b` (each step adds t or t+1 modulo 2t+1).
fn walk_feasible(p: u32, t: u32, steps: u32, a: Color, b: Color) -> bool {
    let need = (b as i64 - a as i64 - (steps as i64) * t as i64).rem_euclid(p as i64);
    need as u32 <= steps
}

/// Fills the colors strictly between `a`-colored and `b`-colored ends of a
/// walk with `steps` steps, choosing the smallest feasible color each step.
fn walk_fill(p: u32, t: u32, steps: u32, a: Color, b: Color) -> Vec<Color> {
    debug_assert!(walk_feasible(p, t, steps, a, b));
    let mut out = Vec::with_capacity(steps.saturating_sub(1) as usize);
    let mut cur = a;
    for i in 1..steps {
        let mut options = [(cur + t) % p, (cur + t + 1) % p];
        options.sort_unstable();
        let pick = options
            .into_iter()
            .find(|&c| walk_feasible(p, t, steps - i, c, b))
            .expect("feasible walk stays feasible");
        out.push(pick);
        cur = pick;
    }
    out
}

enum Frame {
    CycleComp(Vec<u32>),
    Leaf { v: u32, nbr: Option<u32> },
    /// 2t−1 consecutive interior vertices of a thread, between two
    /// surviving anchors.
    ThreadSeg { anchor_a: u32, segment: Vec<u32>, anchor_b: u32 },
    /// A 3-vertex with its weak 2-neighbors, grouped per incident thread;
    /// a far anchor equal to the hub marks a thread closing back on it.
    Hub { v: u32, threads: Vec<(Vec<u32>, u32)> },
}

/// Constructive (2t+1, t)-coloring for graphs with odd girth ≥ 2t+1 and
/// mad < 2 + 1/(2t): peels cycle components, 1⁻-vertices, (2t−1)-threads
/// and 3-vertices with ≥ 4t−3 weak 2-neighbors, then extends back up.
pub fn circular_color(g: &Graph, t: u32) -> Result<Coloring, ColorError> {
    if t == 0 {
        return Err(ColorError::Hypothesis("t must be positive".into()));
    }
    if !g.simple() {
        return Err(ColorError::Hypothesis("circular coloring needs a simple graph".into()));
    }
    let p = 2 * t + 1;
    if g.n() == 0 {
        return Ok(Coloring::vertex_only(Kind::Circular { p, q: t }, BTreeMap::new()));
    }
    if let Some(og) = g.odd_girth() {
        if og < p as usize {
            return Err(ColorError::Hypothesis(format!(
                "odd girth {og} < {p}"
            )));
        }
    }
    let bound = rat_int(2) + rat(1, 2 * t as i64);
    let m = mad(g)
        .map_err(|e| ColorError::Hypothesis(e.to_string()))?
        .value;
    if m >= bound {
        return Err(ColorError::Hypothesis(format!(
            "mad = {m} is not below 2 + 1/{}",
            2 * t
        )));
    }

    let mut cur = g.clone();
    let mut stack: Vec<Frame> = Vec::new();
    while cur.n() > 0 {
        let leaf = cur.vertices().find(|&v| cur.degree(v) <= 1);
        if let Some(v) = leaf {
            let nbr = cur.neighbors(v).next();
            stack.push(Frame::Leaf { v, nbr });
            cur = cur.remove_vertices(&BTreeSet::from([v]));
            continue;
        }
        let cycles = cycle_components(&cur);
        if let Some(comp) = cycles.into_iter().next() {
            let drop: BTreeSet<u32> = comp.iter().copied().collect();
            stack.push(Frame::CycleComp(comp));
            cur = cur.remove_vertices(&drop);
            continue;
        }
        let long = find_threads(&cur, (2 * t - 1) as usize);
        if let Some(th) = long.into_iter().next() {
            let seg: Vec<u32> = th.interior[..(2 * t - 1) as usize].to_vec();
            let anchor_b = if th.interior.len() > seg.len() {
                th.interior[seg.len()]
            } else {
                th.ends.1
            };
            let drop: BTreeSet<u32> = seg.iter().copied().collect();
            stack.push(Frame::ThreadSeg {
                anchor_a: th.ends.0,
                segment: seg,
                anchor_b,
            });
            cur = cur.remove_vertices(&drop);
            continue;
        }
        let hub = cur.vertices().find(|&v| {
            cur.degree(v) == 3
                && weak_two_neighbors(&cur, v).map_or(false, |w| w.len() as u32 >= 4 * t - 3)
        });
        if let Some(v) = hub {
            let threads = incident_threads(&cur, v);
            let mut drop: BTreeSet<u32> = BTreeSet::from([v]);
            for (interior, _) in &threads {
                drop.extend(interior.iter().copied());
            }
            stack.push(Frame::Hub { v, threads });
            cur = cur.remove_vertices(&drop);
            continue;
        }
        return Err(ColorError::InvariantViolation(
            "no reducible configuration found below the mad bound".into(),
        ));
    }

    // unwind, extending the coloring over each removed piece
    let mut phi: BTreeMap<u32, Color> = BTreeMap::new();
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Leaf { v, nbr } => {
                let c = match nbr {
                    Some(u) => (phi[&u] + t) % p,
                    None => 0,
                };
                phi.insert(v, c);
            }
            Frame::CycleComp(comp) => {
                let n = comp.len() as u32;
                let colors: Vec<Color> = if n % 2 == 0 {
                    (0..n).map(|i| if i % 2 == 0 { 0 } else { t }).collect()
                } else {
                    // n*t + b ≡ 0 (mod p) with b ≤ n since n ≥ p
                    let b = (-((n as i64) * t as i64)).rem_euclid(p as i64) as u32;
                    debug_assert!(b <= n);
                    let mut out = Vec::with_capacity(n as usize);
                    let mut c = 0u32;
                    for i in 0..n {
                        out.push(c);
                        c = (c + t + u32::from(i < b)) % p;
                    }
                    out
                };
                for (v, c) in comp.into_iter().zip(colors) {
                    phi.insert(v, c);
                }
            }
            Frame::ThreadSeg {
                anchor_a,
                segment,
                anchor_b,
            } => {
                let steps = segment.len() as u32 + 1;
                let (a, b) = (phi[&anchor_a], phi[&anchor_b]);
                if !walk_feasible(p, t, steps, a, b) {
                    return Err(ColorError::InvariantViolation(
                        "thread extension infeasible".into(),
                    ));
                }
                for (v, c) in segment.iter().zip(walk_fill(p, t, steps, a, b)) {
                    phi.insert(*v, c);
                }
            }
            Frame::Hub { v, threads } => {
                let choice = (0..p).find(|&c| {
                    threads.iter().all(|(interior, far)| {
                        let target = if *far == v { c } else { phi[far] };
                        walk_feasible(p, t, interior.len() as u32 + 1, c, target)
                    })
                });
                let Some(c) = choice else {
                    return Err(ColorError::InvariantViolation(
                        "all colors forbidden at a weak-neighbor hub".into(),
                    ));
                };
                phi.insert(v, c);
                for (interior, far) in threads {
                    let target = if far == v { c } else { phi[&far] };
                    let cols = walk_fill(p, t, interior.len() as u32 + 1, c, target);
                    for (u, cc) in interior.iter().zip(cols) {
                        phi.insert(*u, cc);
                    }
                }
            }
        }
    }

    let coloring = Coloring::vertex_only(Kind::Circular { p, q: t }, phi);
    validate(g, &coloring)
        .map_err(|v| ColorError::InvariantViolation(format!("output failed validation: {v}")))?;
    Ok(coloring)
}
