//! Integer max-flow (Dinic) with a minimum-cut certificate.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub capacity: i64,
}

/// A directed network with non-negative integer capacities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        assert!(source < nodes && sink < nodes && source != sink);
        FlowNetwork {
            nodes,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: i64) -> usize {
        assert!(from < self.nodes && to < self.nodes, "arc endpoint out of range");
        assert!(capacity >= 0, "capacities are non-negative");
        self.arcs.push(FlowArc { from, to, capacity });
        self.arcs.len() - 1
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: i64,
    /// Flow on each arc of the input network, by arc index.
    pub flow: Vec<i64>,
    /// Nodes reachable from the source in the final residual network.
    pub source_side: Vec<bool>,
    /// Arcs leaving the source side; their capacities sum to `value`.
    pub cut_arcs: Vec<usize>,
}

impl FlowResult {
    pub fn cut_capacity(&self, network: &FlowNetwork) -> i64 {
        self.cut_arcs.iter().map(|&a| network.arcs[a].capacity).sum()
    }
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

/// Maximum flow and the source side of a minimum cut.
///
/// Arcs are explored in insertion order, so the result is a deterministic
/// function of the network.
pub fn max_flow(network: &FlowNetwork) -> FlowResult {
    let n = network.nodes;
    let mut res = Residual {
        head: Vec::with_capacity(network.arcs.len() * 2),
        cap: Vec::with_capacity(network.arcs.len() * 2),
        adj: vec![Vec::new(); n],
    };
    for arc in &network.arcs {
        res.adj[arc.from].push(res.head.len());
        res.head.push(arc.to);
        res.cap.push(arc.capacity);
        res.adj[arc.to].push(res.head.len());
        res.head.push(arc.from);
        res.cap.push(0);
    }

    let (s, t) = (network.source, network.sink);
    let mut value = 0i64;
    let mut level = vec![u32::MAX; n];
    let mut next = vec![0usize; n];
    loop {
        bfs_levels(&res, s, &mut level);
        if level[t] == u32::MAX {
            break;
        }
        next.iter_mut().for_each(|x| *x = 0);
        loop {
            let pushed = augment(&mut res, &level, &mut next, s, t, i64::MAX);
            if pushed == 0 {
                break;
            }
            value += pushed;
        }
    }

    bfs_levels(&res, s, &mut level);
    let source_side: Vec<bool> = level.iter().map(|&l| l != u32::MAX).collect();
    let flow = network
        .arcs
        .iter()
        .enumerate()
        .map(|(i, a)| a.capacity - res.cap[2 * i])
        .collect();
    let cut_arcs = network
        .arcs
        .iter()
        .enumerate()
        .filter(|(_, a)| source_side[a.from] && !source_side[a.to])
        .map(|(i, _)| i)
        .collect();
    FlowResult {
        value,
        flow,
        source_side,
        cut_arcs,
    }
}

fn bfs_levels(res: &Residual, s: usize, level: &mut [u32]) {
    level.iter_mut().for_each(|l| *l = u32::MAX);
    level[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &e in &res.adj[v] {
            let w = res.head[e];
            if res.cap[e] > 0 && level[w] == u32::MAX {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
}

fn augment(
    res: &mut Residual,
    level: &[u32],
    next: &mut [usize],
    v: usize,
    t: usize,
    limit: i64,
) -> i64 {
    if v == t {
        return limit;
    }
    while next[v] < res.adj[v].len() {
        let e = res.adj[v][next[v]];
        let w = res.head[e];
        if res.cap[e] > 0 && level[w] == level[v] + 1 {
            let pushed = augment(res, level, next, w, t, limit.min(res.cap[e]));
            if pushed > 0 {
                res.cap[e] -= pushed;
                res.cap[e ^ 1] += pushed;
                return pushed;
            }
        }
        next[v] += 1;
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_path_bottleneck() {
        let mut net = FlowNetwork::new(3, 0, 2);
        net.add_arc(0, 1, 3);
        net.add_arc(1, 2, 2);
        let r = max_flow(&net);
        assert_eq!(r.value, 2);
        assert_eq!(r.cut_arcs, vec![1]);
        assert_eq!(r.cut_capacity(&net), 2);
    }

    #[test]
    fn parallel_paths() {
        let mut net = FlowNetwork::new(5, 0, 4);
        for v in 1..=3 {
            net.add_arc(0, v, 1);
            net.add_arc(v, 4, 1);
        }
        let r = max_flow(&net);
        assert_eq!(r.value, 3);
        assert_eq!(r.cut_capacity(&net), 3);
    }

    #[test]
    fn needs_reverse_residual_arc() {
        // Classic case where a greedy first path must be undone.
        let mut net = FlowNetwork::new(4, 0, 3);
        net.add_arc(0, 1, 1);
        net.add_arc(0, 2, 1);
        net.add_arc(1, 2, 1);
        net.add_arc(1, 3, 1);
        net.add_arc(2, 3, 1);
        let r = max_flow(&net);
        assert_eq!(r.value, 2);
        assert_eq!(r.cut_capacity(&net), 2);
    }

    #[test]
    fn disconnected_sink() {
        let mut net = FlowNetwork::new(3, 0, 2);
        net.add_arc(0, 1, 5);
        let r = max_flow(&net);
        assert_eq!(r.value, 0);
        assert!(r.source_side[1]);
        assert!(r.cut_arcs.is_empty());
    }
}
