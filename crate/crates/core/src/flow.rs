//! Exact integer max-flow (Dinic) and the selection network used for
//! minimum-potential and densest-subgraph queries.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
}

/// Residual network with integer capacities.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) {
        debug_assert!(cap >= 0);
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && self.level[to] < 0 {
                    self.level[to] = self.level[u] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.cursor[u] < self.out[u].len() {
            let a = self.out[u][self.cursor[u]];
            let Arc { to, cap } = self.arcs[a];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let d = self.dfs(to, t, pushed.min(cap));
                if d > 0 {
                    self.arcs[a].cap -= d;
                    self.arcs[a ^ 1].cap += d;
                    return d;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    /// Pushes a maximum flow from `s` to `t` and returns its value.
    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual network: the source side
    /// of the minimum cut with the fewest nodes.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }
}

/// Solves `max over closed S of (edge_gain * |E(S)| - Σ_{v in S} cost[v])`
/// where an edge counts once both endpoints are selected.
///
/// Network: source → edge-node (capacity `edge_gain`), edge-node → both
/// endpoint vertex-nodes (unbounded), vertex-node → sink (`cost[v]`).
/// Vertices in `free` have no sink arc, i.e. they are selectable at zero
/// cost. Returns the optimum and the smallest optimal vertex set.
pub fn max_selection(
    vertex_count: usize,
    edges: &[(usize, usize)],
    edge_gain: i64,
    cost: &[i64],
    free: Option<usize>,
) -> (i64, Vec<bool>) {
    let m = edges.len();
    let source = 0;
    let sink = 1;
    let edge_node = |e: usize| 2 + e;
    let vertex_node = |v: usize| 2 + m + v;
    let unbounded = edge_gain * m as i64 + cost.iter().sum::<i64>() + 1;

    let mut net = FlowNetwork::new(2 + m + vertex_count);
    for (e, &(u, v)) in edges.iter().enumerate() {
        net.add_arc(source, edge_node(e), edge_gain);
        net.add_arc(edge_node(e), vertex_node(u), unbounded);
        net.add_arc(edge_node(e), vertex_node(v), unbounded);
    }
    for (v, &c) in cost.iter().enumerate() {
        if Some(v) != free {
            net.add_arc(vertex_node(v), sink, c);
        }
    }
    let cut = net.max_flow(source, sink);
    let side = net.source_side(source);
    let mut selected: Vec<bool> = (0..vertex_count).map(|v| side[vertex_node(v)]).collect();
    if let Some(f) = free {
        selected[f] = true;
    }
    let free_cost = free.map_or(0, |f| cost[f]);
    (edge_gain * m as i64 - cut - free_cost, selected)
}
