//! Dinic max-flow over exact integer capacities. Densities p/q are scaled
//! through by q before the network is built, so every computation here is
//! integral; i128 leaves ample headroom for the scaled capacities.

pub const INF: i128 = i128::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i128,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    head: Vec<Vec<usize>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            head: vec![Vec::new(); n],
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i128) {
        debug_assert!(cap >= 0);
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0 });
        self.head[from].push(id);
        self.head[to].push(id + 1);
    }

    /// Adds an undirected unit-style arc pair with capacity `cap` each way.
    pub fn add_both(&mut self, a: usize, b: usize, cap: i128) {
        self.add_arc(a, b, cap);
        self.add_arc(b, a, cap);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &id in &self.head[v] {
                let arc = &self.arcs[id];
                if arc.cap > 0 && self.level[arc.to] < 0 {
                    self.level[arc.to] = self.level[v] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: i128) -> i128 {
        if v == t {
            return pushed;
        }
        while self.iter[v] < self.head[v].len() {
            let id = self.head[v][self.iter[v]];
            let (to, cap) = (self.arcs[id].to, self.arcs[id].cap);
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.arcs[id].cap -= got;
                    self.arcs[id ^ 1].cap += got;
                    return got;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i128 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.iter.fill(0);
            loop {
                let got = self.dfs(s, t, INF);
                if got == 0 {
                    break;
                }
                flow += got;
            }
        }
        flow
    }

    /// After `max_flow`, the nodes reachable from `s` in the residual
    /// graph: the source side of the unique minimal min cut.
    pub fn min_cut_source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &id in &self.head[v] {
                let arc = &self.arcs[id];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }

    /// The complement of the nodes that can still reach `t`: the source
    /// side of the unique maximal min cut.
    pub fn max_cut_source_side(&self, t: usize) -> Vec<bool> {
        let n = self.head.len();
        let mut reach_t = vec![false; n];
        reach_t[t] = true;
        let mut queue = std::collections::VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            // arcs INTO v with residual capacity
            for &id in &self.head[v] {
                let rev = id ^ 1;
                let from = self.arcs[id].to; // arcs[id] points away; its partner's origin
                if self.arcs[rev].cap > 0 && !reach_t[from] {
                    reach_t[from] = true;
                    queue.push_back(from);
                }
            }
        }
        reach_t.iter().map(|&r| !r).collect()
    }
}
