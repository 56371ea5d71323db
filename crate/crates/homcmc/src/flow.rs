//! Exact maximum flow / minimum cut with extremal cut extraction.
//!
//! Capacities are rationals; internally they are scaled by the common
//! denominator and the flow runs over arbitrary-precision integers, so
//! augmentation is exact and max-flow equals min-cut with no tolerance.
//! Undirected arcs are realized as symmetric directed pairs. After the
//! flow, residual reachability yields the two canonical extremal minimum
//! cuts: the smallest SOURCE side (cells reachable from SOURCE) and the
//! largest (complement of the cells that reach SINK). Every minimum cut
//! lies between them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complex::Region;
use crate::cut::{CutComplex, EndPoint};
use crate::rational::Rational;

/// Extremal minimum cuts of a network. `value` is exact; `min_region`
/// and `max_region` are the lattice bottom and top of the SOURCE sides,
/// terminals excluded.
#[derive(Debug, Clone)]
pub struct CutResult {
    pub value: Rational,
    pub min_region: Region,
    pub max_region: Region,
    pub unique: bool,
}

struct Edge {
    to: usize,
    cap: BigInt,
    rev: usize,
}

struct Dinic {
    graph: Vec<Vec<Edge>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            graph: (0..n).map(|_| Vec::new()).collect(),
            level: vec![-1; n],
            iter: vec![0; n],
        }
    }

    fn add_undirected(&mut self, u: usize, v: usize, cap: BigInt) {
        if u == v {
            return; // inert in every cut
        }
        let (ru, rv) = (self.graph[u].len(), self.graph[v].len());
        self.graph[u].push(Edge {
            to: v,
            cap: cap.clone(),
            rev: rv,
        });
        self.graph[v].push(Edge { to: u, cap, rev: ru });
    }

    fn add_directed(&mut self, u: usize, v: usize, cap: BigInt) {
        let (ru, rv) = (self.graph[u].len(), self.graph[v].len());
        self.graph[u].push(Edge {
            to: v,
            cap,
            rev: rv,
        });
        self.graph[v].push(Edge {
            to: u,
            cap: BigInt::zero(),
            rev: ru,
        });
    }

    fn bfs(&mut self, s: usize) {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for e in &self.graph[u] {
                if e.cap > BigInt::zero() && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, limit: BigInt) -> BigInt {
        if u == t {
            return limit;
        }
        while self.iter[u] < self.graph[u].len() {
            let i = self.iter[u];
            let (to, cap) = {
                let e = &self.graph[u][i];
                (e.to, e.cap.clone())
            };
            if cap > BigInt::zero() && self.level[u] < self.level[to] {
                let pushed = self.dfs(to, t, limit.clone().min(cap));
                if pushed > BigInt::zero() {
                    let rev = self.graph[u][i].rev;
                    self.graph[u][i].cap -= &pushed;
                    self.graph[to][rev].cap += &pushed;
                    return pushed;
                }
            }
            self.iter[u] += 1;
        }
        BigInt::zero()
    }

    fn max_flow(&mut self, s: usize, t: usize) -> BigInt {
        // Any finite bound above the total source capacity works.
        let inf: BigInt = self.graph[s]
            .iter()
            .map(|e| e.cap.clone())
            .fold(BigInt::one(), |a, b| a + b);
        let mut total = BigInt::zero();
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return total;
            }
            self.iter.fill(0);
            loop {
                let f = self.dfs(s, t, inf.clone());
                if f.is_zero() {
                    break;
                }
                total += f;
            }
        }
    }

    fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.graph.len()];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for e in &self.graph[u] {
                if e.cap > BigInt::zero() && !seen[e.to] {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        seen
    }

    fn reaching(&self, t: usize) -> Vec<bool> {
        // Nodes with a positive-residual path into t.
        let mut seen = vec![false; self.graph.len()];
        seen[t] = true;
        let mut queue = std::collections::VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            for (u, edges) in self.graph.iter().enumerate() {
                if seen[u] {
                    continue;
                }
                if edges.iter().any(|e| e.to == v && e.cap > BigInt::zero()) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }
}

/// Minimum terminal cut of the network, no extra capacities.
pub fn mincut(cut: &CutComplex) -> CutResult {
    mincut_with_bonus(cut, None, None)
}

/// Minimum terminal cut with optional per-cell capacity boosts attached
/// to the SOURCE side, the SINK side, or both. Slices are indexed by
/// cell; entries must be nonnegative.
pub fn mincut_with_bonus(
    cut: &CutComplex,
    source_bonus: Option<&[Rational]>,
    sink_bonus: Option<&[Rational]>,
) -> CutResult {
    let n = cut.cell_count();
    let source = n;
    let sink = n + 1;

    // Common denominator over every capacity that enters the network.
    let mut scale = BigInt::one();
    let mut fold = |r: &Rational| scale = scale.lcm(r.denom());
    for arc in cut.arcs() {
        fold(&arc.capacity);
    }
    if let Some(b) = source_bonus {
        b.iter().for_each(&mut fold);
    }
    if let Some(b) = sink_bonus {
        b.iter().for_each(&mut fold);
    }
    let scaled = |r: &Rational| -> BigInt { r.numer() * (&scale / r.denom()) };

    let node = |e: EndPoint| match e {
        EndPoint::Cell(i) => i,
        EndPoint::Source => source,
        EndPoint::Sink => sink,
    };
    let mut dinic = Dinic::new(n + 2);
    for arc in cut.arcs() {
        dinic.add_undirected(node(arc.a), node(arc.b), scaled(&arc.capacity));
    }
    if let Some(bonus) = source_bonus {
        for (c, r) in bonus.iter().enumerate() {
            debug_assert!(!r.lt(&Rational::zero()));
            if !r.is_zero() {
                dinic.add_directed(source, c, scaled(r));
            }
        }
    }
    if let Some(bonus) = sink_bonus {
        for (c, r) in bonus.iter().enumerate() {
            debug_assert!(!r.lt(&Rational::zero()));
            if !r.is_zero() {
                dinic.add_directed(c, sink, scaled(r));
            }
        }
    }

    let flow = dinic.max_flow(source, sink);
    let value = Rational::new(flow, scale);

    let from_source = dinic.reachable_from(source);
    let to_sink = dinic.reaching(sink);
    let min_region = Region::from_indices((0..n).filter(|&c| from_source[c]));
    let max_region = Region::from_indices((0..n).filter(|&c| !to_sink[c]));
    debug_assert!(min_region.is_subset(&max_region));
    let unique = min_region == max_region;
    CutResult {
        value,
        min_region,
        max_region,
        unique,
    }
}
