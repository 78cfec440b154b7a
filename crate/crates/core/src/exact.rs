//! Brute-force extremal numbers: `ex(n, H)` over the complete graph and
//! `ex(Q_n, C_2ℓ)` over the hypercube, by branch-and-bound over edge subsets.
//!
//! Edges are decided in a fixed order, include-branch first. A node is cut
//! when its edge count plus the undecided edges cannot beat the incumbent, so
//! a finished search certifies that no subgraph with `value + 1` edges avoids
//! the pattern. Witnesses are re-checked with the general embedding search
//! and the cycle enumerator, never taken from the search itself.

use serde::Serialize;

use crate::budget::{Budget, Tally};
use crate::cube::{build_qn, CubeEdge, Subgraph};
use crate::cycles::{check_length, has_cycle_through, is_cycle_free};
use crate::error::{Error, Result};
use crate::hypergraph::{find_embedding, SimpleGraph};

/// Default cap on the host order for [`ex_graph`].
pub const GRAPH_MAX_N: u32 = 9;
/// Default cap on the cube dimension for [`ex_cube`].
pub const CUBE_MAX_N: u32 = 4;
/// Hard limits when the caps are lifted.
const GRAPH_HARD_MAX_N: u32 = 16;
const CUBE_HARD_MAX_N: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    /// Enables symmetry breaking (max-degree vertex first for graphs, a fixed
    /// first edge for cubes). Off means the plain search over all subsets.
    pub symmetry: bool,
    pub budget: Budget,
    /// Accept sizes above the default caps.
    pub lift_caps: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            symmetry: true,
            budget: Budget::default(),
            lift_caps: false,
        }
    }
}

impl ExactOptions {
    pub fn with_budget(budget: Budget) -> Self {
        ExactOptions {
            budget,
            ..Self::default()
        }
    }

    pub fn naive() -> Self {
        ExactOptions {
            symmetry: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtremalWitness {
    Graph(SimpleGraph),
    Cube(Subgraph),
}

impl ExtremalWitness {
    /// `n=`/edge-per-line text for graphs, the cube edge-list format for cubes.
    pub fn to_text(&self) -> String {
        match self {
            ExtremalWitness::Graph(g) => g.to_text(),
            ExtremalWitness::Cube(g) => g.to_edge_list(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    /// `K_n` or `Q_n`.
    pub host: String,
    pub n: u32,
    pub forbidden: String,
    pub value: u64,
    #[serde(serialize_with = "ser_witness")]
    pub witness: ExtremalWitness,
    /// Search nodes visited.
    pub nodes: u64,
    /// Witness has `value` edges and avoids the pattern, per an independent checker.
    pub witness_certified: bool,
    /// The search ran to completion, so `value + 1` edges are infeasible.
    pub exhaustive: bool,
}

fn ser_witness<S: serde::Serializer>(
    w: &ExtremalWitness,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_text())
}

/// Pattern stored as dense adjacency on `0..p`.
struct DensePattern {
    adj: Vec<u16>,
    edges: Vec<(usize, usize)>,
}

impl DensePattern {
    fn new(pattern: &SimpleGraph) -> Self {
        let labels: Vec<u32> = pattern.vertices().iter().copied().collect();
        let idx = |v: u32| labels.binary_search(&v).expect("pattern vertex");
        let mut adj = vec![0u16; labels.len()];
        let mut edges = Vec::new();
        for &(u, v) in pattern.edges() {
            let (i, j) = (idx(u), idx(v));
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
            edges.push((i, j));
        }
        DensePattern { adj, edges }
    }

    /// Does `host` contain a copy of the pattern using the host edge `uv`?
    fn embeds_through(
        &self,
        host: &[u16],
        u: usize,
        v: usize,
        tally: &mut Tally<'_>,
    ) -> Option<bool> {
        let p = self.adj.len();
        let mut image = vec![usize::MAX; p];
        for &(i, j) in &self.edges {
            for (x, y) in [(u, v), (v, u)] {
                image.fill(usize::MAX);
                image[i] = x;
                image[j] = y;
                let used = (1u16 << x) | (1u16 << y);
                let order: Vec<usize> = (0..p).filter(|&t| t != i && t != j).collect();
                if self.extend(host, &mut image, used, &order, tally)? {
                    return Some(true);
                }
            }
        }
        Some(false)
    }

    fn extend(
        &self,
        host: &[u16],
        image: &mut [usize],
        used: u16,
        order: &[usize],
        tally: &mut Tally<'_>,
    ) -> Option<bool> {
        let Some((&t, rest)) = order.split_first() else {
            return Some(true);
        };
        for w in 0..host.len() {
            if used >> w & 1 == 1 {
                continue;
            }
            let ok = (0..self.adj.len())
                .filter(|&s| self.adj[t] >> s & 1 == 1 && image[s] != usize::MAX)
                .all(|s| host[w] >> image[s] & 1 == 1);
            if !ok {
                continue;
            }
            if !tally.step() {
                return None;
            }
            image[t] = w;
            if self.extend(host, image, used | (1 << w), rest, tally)? {
                return Some(true);
            }
            image[t] = usize::MAX;
        }
        Some(false)
    }
}

struct GraphSearch<'a> {
    pattern: &'a DensePattern,
    edges: Vec<(usize, usize)>,
    host: Vec<u16>,
    degree_cap: usize,
    best: Option<usize>,
    best_host: Vec<u16>,
    nodes: u64,
}

impl GraphSearch<'_> {
    fn run(&mut self, idx: usize, count: usize, tally: &mut Tally<'_>) -> Option<()> {
        self.nodes += 1;
        if !tally.step() {
            return None;
        }
        let remaining = self.edges.len() - idx;
        if self.best.is_some_and(|b| count + remaining <= b) {
            return Some(());
        }
        if idx == self.edges.len() {
            self.best = Some(count);
            self.best_host = self.host.clone();
            return Some(());
        }
        let (u, v) = self.edges[idx];
        let deg = |h: &[u16], x: usize| h[x].count_ones() as usize;
        if deg(&self.host, u) < self.degree_cap && deg(&self.host, v) < self.degree_cap {
            self.host[u] |= 1 << v;
            self.host[v] |= 1 << u;
            if !self.pattern.embeds_through(&self.host, u, v, tally)? {
                self.run(idx + 1, count + 1, tally)?;
            }
            self.host[u] &= !(1 << v);
            self.host[v] &= !(1 << u);
        }
        self.run(idx + 1, count, tally)
    }
}

fn graph_from_dense(host: &[u16]) -> SimpleGraph {
    let mut g = SimpleGraph::new();
    for u in 0..host.len() {
        g.add_vertex(u as u32 + 1);
        for v in u + 1..host.len() {
            if host[u] >> v & 1 == 1 {
                g.add_edge(u as u32 + 1, v as u32 + 1).expect("no loops");
            }
        }
    }
    g
}

/// Exact `ex(n, pattern)`: the most edges of a graph on `n` vertices with no copy of `pattern`.
pub fn ex_graph(n: u32, pattern: &SimpleGraph, opts: &ExactOptions) -> Result<ExtremalResult> {
    let cap = if opts.lift_caps {
        GRAPH_HARD_MAX_N
    } else {
        GRAPH_MAX_N
    };
    if n == 0 {
        return Err(Error::invalid("host needs at least one vertex"));
    }
    if n > cap {
        return Err(Error::limit(format!(
            "ex(n, H) for n = {n} exceeds the cap of {cap}"
        )));
    }
    if pattern.edge_count() == 0 {
        return Err(Error::invalid("pattern must have an edge"));
    }
    if pattern.vertices().len() > 16 {
        return Err(Error::limit("pattern has more than 16 vertices"));
    }
    let dense = DensePattern::new(pattern);
    let nn = n as usize;
    let meter = opts.budget.meter();
    let mut tally = meter.tally();
    let all_edges: Vec<(usize, usize)> = (0..nn)
        .flat_map(|u| (u + 1..nn).map(move |v| (u, v)))
        .collect();

    let mut best: Option<(usize, Vec<u16>)>;
    let mut nodes = 0u64;
    let mut completed = true;
    if opts.symmetry {
        // Vertex 0 has maximum degree d and neighbours 1..=d; try d from high to low.
        best = Some((0, vec![0; nn]));
        for d in (1..nn).rev() {
            if (nn * d / 2) <= best.as_ref().map_or(0, |b| b.0) {
                break;
            }
            let mut host = vec![0u16; nn];
            let mut star_ok = true;
            for w in 1..=d {
                host[0] |= 1 << w;
                host[w] |= 1;
                match dense.embeds_through(&host, 0, w, &mut tally) {
                    None => {
                        completed = false;
                        break;
                    }
                    Some(true) => {
                        star_ok = false;
                        break;
                    }
                    Some(false) => {}
                }
            }
            if !completed {
                break;
            }
            if !star_ok {
                continue;
            }
            let mut search = GraphSearch {
                pattern: &dense,
                edges: all_edges.iter().copied().filter(|&(u, _)| u > 0).collect(),
                host,
                degree_cap: d,
                best: best.as_ref().and_then(|b| b.0.checked_sub(d)),
                best_host: Vec::new(),
                nodes: 0,
            };
            let r = search.run(0, 0, &mut tally);
            nodes += search.nodes;
            if r.is_none() {
                completed = false;
                break;
            }
            if let Some(b) = search.best {
                if !search.best_host.is_empty() && b + d > best.as_ref().map_or(0, |x| x.0) {
                    best = Some((b + d, search.best_host));
                }
            }
        }
    } else {
        let mut search = GraphSearch {
            pattern: &dense,
            edges: all_edges,
            host: vec![0; nn],
            degree_cap: usize::MAX,
            best: None,
            best_host: Vec::new(),
            nodes: 0,
        };
        completed = search.run(0, 0, &mut tally).is_some();
        nodes = search.nodes;
        best = search.best.map(|b| (b, search.best_host));
    }
    drop(tally);
    if !completed {
        meter.check(|| format!("ex({n}, H) search"))?;
        return Err(Error::limit(format!("ex({n}, H) search ran out of budget")));
    }
    let (value, host) = best.expect("the empty graph is always feasible");
    let witness = graph_from_dense(&host);
    let witness_certified = witness.edge_count() == value
        && find_embedding(&witness, pattern, Budget::unlimited())?.is_none();
    Ok(ExtremalResult {
        host: format!("K_{n}"),
        n,
        forbidden: describe_graph(pattern),
        value: value as u64,
        witness: ExtremalWitness::Graph(witness),
        nodes,
        witness_certified,
        exhaustive: true,
    })
}

fn describe_graph(g: &SimpleGraph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!(
        "graph on {} vertices with edges {}",
        g.vertices().len(),
        edges.join(",")
    )
}

struct CubeSearch {
    two_ell: usize,
    edges: Vec<CubeEdge>,
    current: Subgraph,
    best: Option<usize>,
    best_graph: Option<Subgraph>,
    nodes: u64,
}

impl CubeSearch {
    fn run(&mut self, idx: usize, count: usize, tally: &mut Tally<'_>) -> Option<()> {
        self.nodes += 1;
        if !tally.step() {
            return None;
        }
        if self
            .best
            .is_some_and(|b| count + (self.edges.len() - idx) <= b)
        {
            return Some(());
        }
        if idx == self.edges.len() {
            self.best = Some(count);
            self.best_graph = Some(self.current.clone());
            return Some(());
        }
        let e = self.edges[idx];
        self.current.insert(e).expect("edge of Q_n");
        if !has_cycle_through(&self.current, e, self.two_ell, tally)? {
            self.run(idx + 1, count + 1, tally)?;
        }
        self.current.remove(e);
        self.run(idx + 1, count, tally)
    }
}

/// Exact `ex(Q_n, C_two_ell)`.
pub fn ex_cube(n: u32, two_ell: usize, opts: &ExactOptions) -> Result<ExtremalResult> {
    check_length(two_ell)?;
    let cap = if opts.lift_caps {
        CUBE_HARD_MAX_N
    } else {
        CUBE_MAX_N
    };
    if n == 0 {
        return Err(Error::invalid("cube dimension must be positive"));
    }
    if n > cap {
        return Err(Error::limit(format!(
            "ex(Q_n, C) for n = {n} exceeds the cap of {cap}"
        )));
    }
    let qn = build_qn(n)?;
    let edges: Vec<CubeEdge> = qn.edges().collect();
    let meter = opts.budget.meter();
    let mut tally = meter.tally();
    let mut search = CubeSearch {
        two_ell,
        edges,
        current: Subgraph::empty(n)?,
        best: None,
        best_graph: None,
        nodes: 0,
    };
    let status = if opts.symmetry {
        // Q_n is edge-transitive and a single edge is cycle-free, so some optimum contains the first edge.
        let first = search.edges[0];
        search.current.insert(first)?;
        search.run(1, 1, &mut tally)
    } else {
        search.run(0, 0, &mut tally)
    };
    drop(tally);
    if status.is_none() {
        meter.check(|| format!("ex(Q_{n}, C_{two_ell}) search"))?;
        return Err(Error::limit(format!(
            "ex(Q_{n}, C_{two_ell}) search ran out of budget"
        )));
    }
    let value = search.best.expect("a single edge is always feasible");
    let witness = search.best_graph.expect("recorded with best");
    let witness_certified =
        witness.len() == value && is_cycle_free(&witness, two_ell, Budget::unlimited())?.is_free();
    Ok(ExtremalResult {
        host: format!("Q_{n}"),
        n,
        forbidden: format!("C_{two_ell}"),
        value: value as u64,
        witness: ExtremalWitness::Cube(witness),
        nodes: search.nodes,
        witness_certified,
        exhaustive: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_pattern() {
        let e = SimpleGraph::from_edges([(1, 2)]).unwrap();
        for opts in [ExactOptions::default(), ExactOptions::naive()] {
            let r = ex_graph(3, &e, &opts).unwrap();
            assert_eq!(r.value, 0);
            assert!(r.witness_certified);
        }
    }

    #[test]
    fn c4_small_hosts() {
        let c4 = SimpleGraph::cycle(4).unwrap();
        for opts in [ExactOptions::default(), ExactOptions::naive()] {
            assert_eq!(ex_graph(4, &c4, &opts).unwrap().value, 4);
            assert_eq!(ex_graph(5, &c4, &opts).unwrap().value, 6);
        }
    }

    #[test]
    fn triangle_is_mantel() {
        let k3 = SimpleGraph::cycle(3).unwrap();
        for n in 3..=7u32 {
            let r = ex_graph(n, &k3, &ExactOptions::default()).unwrap();
            assert_eq!(r.value, u64::from(n * n / 4), "n = {n}");
            assert!(r.witness_certified);
        }
    }

    #[test]
    fn caps_and_guards() {
        let c4 = SimpleGraph::cycle(4).unwrap();
        assert!(matches!(
            ex_graph(GRAPH_MAX_N + 1, &c4, &ExactOptions::default()),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            ex_graph(4, &SimpleGraph::new(), &ExactOptions::default()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            ex_cube(CUBE_MAX_N + 1, 4, &ExactOptions::default()),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            ex_cube(3, 5, &ExactOptions::default()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            ex_graph(7, &c4, &ExactOptions::with_budget(Budget(50))),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn cube_q2() {
        for opts in [ExactOptions::default(), ExactOptions::naive()] {
            let r = ex_cube(2, 4, &opts).unwrap();
            assert_eq!(r.value, 3);
            assert!(r.witness_certified && r.exhaustive);
        }
    }
}
