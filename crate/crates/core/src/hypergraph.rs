//! Graphs and 3-uniform hypergraphs on integer labels, link graphs, two-lifts,
//! and extraction of a two-lift from a dense 3-graph.
//!
//! The extraction works on the incidence graph between vertices `V` and
//! vertex pairs `U`: a vertex `x` sees the pair `zz'` when `xzz'` is an edge.
//! A pair of vertices `a, b` together with their common pairs `Q` is a
//! complete bipartite `K_{2,|Q|}` there, and also a two-lift of the graph
//! with edge set `Q`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{Budget, Tally};
use crate::error::{Error, Result};

/// Most pattern vertices accepted by [`find_embedding`].
pub const PATTERN_MAX_VERTICES: usize = 12;

fn pair(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple graph on integer labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: BTreeSet<u32>,
    edges: BTreeSet<(u32, u32)>,
}

impl SimpleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph whose vertex set is exactly the set of edge endpoints.
    pub fn from_edges(edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut g = Self::new();
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// The cycle `1 - 2 - ... - len - 1`.
    pub fn cycle(len: u32) -> Result<Self> {
        if len < 3 {
            return Err(Error::invalid(format!("cycle length {len} < 3")));
        }
        Self::from_edges((1..=len).map(|i| (i, i % len + 1)))
    }

    /// The path `1 - 2 - ... - (edges + 1)`.
    pub fn path(edges: u32) -> Result<Self> {
        Self::from_edges((1..=edges).map(|i| (i, i + 1)))
    }

    pub fn add_vertex(&mut self, v: u32) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<bool> {
        if u == v {
            return Err(Error::invalid(format!("loop at {u}")));
        }
        self.vertices.insert(u);
        self.vertices.insert(v);
        Ok(self.edges.insert(pair(u, v)))
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&pair(u, v))
    }

    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).count()
    }

    fn adjacency(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut adj: BTreeMap<u32, Vec<u32>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(u, v) in &self.edges {
            adj.get_mut(&u).expect("endpoint").push(v);
            adj.get_mut(&v).expect("endpoint").push(u);
        }
        adj
    }

    /// A 2-colouring `(side with the smallest vertex, other side)`, if one exists.
    pub fn bipartition(&self) -> Option<(BTreeSet<u32>, BTreeSet<u32>)> {
        let adj = self.adjacency();
        let mut side: BTreeMap<u32, bool> = BTreeMap::new();
        for &root in &self.vertices {
            if side.contains_key(&root) {
                continue;
            }
            side.insert(root, false);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let s = side[&u];
                for &w in &adj[&u] {
                    match side.get(&w) {
                        Some(&t) if t == s => return None,
                        Some(_) => {}
                        None => {
                            side.insert(w, !s);
                            stack.push(w);
                        }
                    }
                }
            }
        }
        let left = side.iter().filter(|(_, &s)| !s).map(|(&v, _)| v).collect();
        let right = side.iter().filter(|(_, &s)| s).map(|(&v, _)| v).collect();
        Some((left, right))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_connected(&self) -> bool {
        let Some(&root) = self.vertices.iter().next() else {
            return true;
        };
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([root]);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in &adj[&u] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// True iff the graph is a single path with `len` edges.
    pub fn is_path_of_length(&self, len: usize) -> bool {
        if self.edges.len() != len || self.vertices.len() != len + 1 || !self.is_connected() {
            return false;
        }
        let degs: Vec<usize> = self.vertices.iter().map(|&v| self.degree(v)).collect();
        len == 0 || (degs.iter().all(|&d| d <= 2) && degs.iter().filter(|&&d| d == 1).count() == 2)
    }

    /// True iff the graph is a single cycle of length `len`.
    pub fn is_cycle_of_length(&self, len: usize) -> bool {
        len >= 3
            && self.edges.len() == len
            && self.vertices.len() == len
            && self.is_connected()
            && self.vertices.iter().all(|&v| self.degree(v) == 2)
    }

    pub fn union(&self, other: &SimpleGraph) -> SimpleGraph {
        SimpleGraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    /// Text format: header `n=<count>`, then one sorted edge `i j` per line.
    pub fn to_text(&self) -> String {
        let n = self.vertices.iter().next_back().copied().unwrap_or(0);
        let mut out = format!("n={n}\n");
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses [`SimpleGraph::to_text`]; the vertex set is `1..=n`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let (n, rows) = parse_uniform_text(text, 2)?;
        let mut g = SimpleGraph::new();
        (1..=n).for_each(|v| g.add_vertex(v));
        for (line, r) in rows {
            g.add_edge(r[0], r[1]).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        Ok(g)
    }
}

/// Parses the shared `n=<count>` + one-edge-per-line format with `arity` labels per edge.
/// Line number and vertex labels of each edge row.
type Rows = Vec<(usize, Vec<u32>)>;

fn parse_uniform_text(text: &str, arity: usize) -> Result<(u32, Rows)> {
    let mut n = None;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(count) = n else {
            let v = line
                .strip_prefix("n=")
                .and_then(|s| s.trim().parse::<u32>().ok())
                .ok_or_else(|| Error::Parse {
                    line: lineno,
                    message: format!("expected `n=<count>`, found `{line}`"),
                })?;
            n = Some(v);
            continue;
        };
        let labels: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad label in `{line}`"),
            })?;
        if labels.len() != arity {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {arity} labels, found {}", labels.len()),
            });
        }
        if let Some(&bad) = labels.iter().find(|&&l| l == 0 || l > count) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("label {bad} outside 1..={count}"),
            });
        }
        rows.push((lineno, labels));
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        message: "missing `n=<count>` header".into(),
    })?;
    Ok((n, rows))
}

/// A 3-uniform hypergraph on integer labels. Edges are stored sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ThreeGraph {
    vertices: BTreeSet<u32>,
    edges: BTreeSet<[u32; 3]>,
}

fn triple(mut t: [u32; 3]) -> Result<[u32; 3]> {
    t.sort_unstable();
    if t[0] == t[1] || t[1] == t[2] {
        return Err(Error::invalid(format!("edge {t:?} repeats a vertex")));
    }
    Ok(t)
}

impl ThreeGraph {
    /// Edgeless 3-graph on `vertices`.
    pub fn on(vertices: impl IntoIterator<Item = u32>) -> Self {
        ThreeGraph {
            vertices: vertices.into_iter().collect(),
            edges: BTreeSet::new(),
        }
    }

    /// Edgeless 3-graph on `1..=n`.
    pub fn with_vertices(n: u32) -> Self {
        Self::on(1..=n)
    }

    /// Complete 3-graph on `1..=n`.
    pub fn complete(n: u32) -> Self {
        let mut g = Self::with_vertices(n);
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    g.edges.insert([a, b, c]);
                }
            }
        }
        g
    }

    /// 3-graph whose vertices are the union of its edges.
    pub fn from_edges(edges: impl IntoIterator<Item = [u32; 3]>) -> Result<Self> {
        let mut g = Self::default();
        for e in edges {
            let t = triple(e)?;
            g.vertices.extend(t);
            g.edges.insert(t);
        }
        Ok(g)
    }

    /// Adds an edge whose vertices must already be present.
    pub fn add_edge(&mut self, e: [u32; 3]) -> Result<bool> {
        let t = triple(e)?;
        if let Some(v) = t.iter().find(|v| !self.vertices.contains(v)) {
            return Err(Error::invalid(format!(
                "edge {t:?} uses unknown vertex {v}"
            )));
        }
        Ok(self.edges.insert(t))
    }

    pub fn add_vertex(&mut self, v: u32) {
        self.vertices.insert(v);
    }

    pub fn contains_edge(&self, e: [u32; 3]) -> bool {
        triple(e).is_ok_and(|t| self.edges.contains(&t))
    }

    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<[u32; 3]> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The link `L(x)`: pairs `yz` with `xyz` an edge.
    pub fn link(&self, x: u32) -> Result<SimpleGraph> {
        if !self.vertices.contains(&x) {
            return Err(Error::invalid(format!("{x} is not a vertex")));
        }
        SimpleGraph::from_edges(self.link_pairs(x))
    }

    fn link_pairs(&self, x: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges
            .iter()
            .filter_map(move |e| match e.iter().position(|&v| v == x) {
                Some(0) => Some((e[1], e[2])),
                Some(1) => Some((e[0], e[2])),
                Some(2) => Some((e[0], e[1])),
                _ => None,
            })
    }

    /// Checks that every edge meets each part exactly once.
    pub fn respects_partition(&self, parts: &[BTreeSet<u32>]) -> bool {
        parts.len() == 3
            && self.edges.iter().all(|e| {
                parts
                    .iter()
                    .all(|p| e.iter().filter(|v| p.contains(v)).count() == 1)
            })
    }

    /// Text format: header `n=<count>`, then one sorted edge `i j k` per line.
    pub fn to_text(&self) -> String {
        let n = self.vertices.iter().next_back().copied().unwrap_or(0);
        let mut out = format!("n={n}\n");
        for [a, b, c] in &self.edges {
            let _ = writeln!(out, "{a} {b} {c}");
        }
        out
    }

    /// Parses [`ThreeGraph::to_text`]; the vertex set is `1..=n`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let (n, rows) = parse_uniform_text(text, 3)?;
        let mut g = ThreeGraph::with_vertices(n);
        for (line, r) in rows {
            g.add_edge([r[0], r[1], r[2]]).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        Ok(g)
    }
}

/// The labels the two-lift of `h` gives its two apex vertices: one and two past the largest label.
pub fn two_lift_labels(h: &SimpleGraph) -> (u32, u32) {
    let top = h.vertices().iter().next_back().copied().unwrap_or(0);
    (top + 1, top + 2)
}

/// The two-lift of a bipartite graph: every edge `e` becomes `a ∪ e` and `b ∪ e`.
pub fn two_lift(h: &SimpleGraph) -> Result<ThreeGraph> {
    let (a, b) = two_lift_labels(h);
    two_lift_with(h, a, b)
}

/// [`two_lift`] with caller-chosen apex labels.
pub fn two_lift_with(h: &SimpleGraph, a: u32, b: u32) -> Result<ThreeGraph> {
    if h.edge_count() == 0 {
        return Err(Error::invalid("two-lift of an edgeless graph"));
    }
    if !h.is_bipartite() {
        return Err(Error::invalid("two-lift is defined for bipartite graphs"));
    }
    if a == b || h.vertices().contains(&a) || h.vertices().contains(&b) {
        return Err(Error::invalid(format!(
            "apex labels {a}, {b} must be distinct and fresh"
        )));
    }
    let mut g = ThreeGraph::on(h.vertices().iter().copied().chain([a, b]));
    for &(u, v) in h.edges() {
        g.add_edge([a, u, v])?;
        g.add_edge([b, u, v])?;
    }
    Ok(g)
}

/// Two apex vertices and the family of pairs they share, plus the vertex map
/// when the witness realises a specific pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLiftWitness {
    pub a: u32,
    pub b: u32,
    pub pairs: Vec<(u32, u32)>,
    /// Pattern vertex (including the pattern's own apex labels) to host vertex.
    pub embedding: BTreeMap<u32, u32>,
}

impl TwoLiftWitness {
    pub fn q(&self) -> usize {
        self.pairs.len()
    }

    /// Re-checks the witness against its host.
    pub fn holds_in(&self, g: &ThreeGraph) -> bool {
        self.a != self.b
            && self.pairs.iter().all(|&(y, z)| {
                ![y, z].contains(&self.a)
                    && ![y, z].contains(&self.b)
                    && g.contains_edge([self.a, y, z])
                    && g.contains_edge([self.b, y, z])
            })
    }

    /// The graph `H'` spanned by the shared pairs.
    pub fn pair_graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.pairs.iter().copied()).expect("pairs are loop-free")
    }
}

impl Serialize for TwoLiftWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            a: u32,
            b: u32,
            pairs: Vec<[u32; 2]>,
            q: usize,
            #[serde(skip_serializing_if = "BTreeMap::is_empty")]
            embedding: &'a BTreeMap<u32, u32>,
        }
        Doc {
            a: self.a,
            b: self.b,
            pairs: self.pairs.iter().map(|&(y, z)| [y, z]).collect(),
            q: self.pairs.len(),
            embedding: &self.embedding,
        }
        .serialize(s)
    }
}

/// The apex pair `(a, b)` with the most common link pairs; ties go to the
/// lexicographically smallest pair. Exhaustive over all vertex pairs.
pub fn find_largest_k2q(g: &ThreeGraph) -> Result<TwoLiftWitness> {
    if g.vertex_count() < 3 {
        return Err(Error::invalid(format!(
            "need at least 3 vertices, got {}",
            g.vertex_count()
        )));
    }
    let verts: Vec<u32> = g.vertices().iter().copied().collect();
    let links: HashMap<u32, BTreeSet<(u32, u32)>> = verts
        .iter()
        .map(|&x| (x, g.link_pairs(x).collect()))
        .collect();
    let best = (0..verts.len())
        .into_par_iter()
        .filter_map(|i| {
            let la = &links[&verts[i]];
            (i + 1..verts.len())
                .map(|j| (la.intersection(&links[&verts[j]]).count(), i, j))
                .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)).then(y.2.cmp(&x.2)))
        })
        .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)).then(y.2.cmp(&x.2)));
    let (_, i, j) = best.expect("at least one vertex pair");
    let (a, b) = (verts[i], verts[j]);
    let pairs = links[&a].intersection(&links[&b]).copied().collect();
    Ok(TwoLiftWitness {
        a,
        b,
        pairs,
        embedding: BTreeMap::new(),
    })
}

/// Two-edge stars centred in `U` on the vertex/pair incidence graph, with the
/// convexity lower bound and the `X <= q · C(n, 2)` check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarCount {
    /// `X = Σ_u C(deg(u), 2)` over all vertex pairs `u`.
    #[serde(rename = "X")]
    pub stars: u64,
    /// `|U| = C(n, 2)`.
    pub pair_count: u64,
    /// `||G|| = 3 · edges`, the incidence graph's size.
    pub incidences: u64,
    /// `|U| · C(||G|| / |U|, 2)` with the generalized binomial, exact.
    #[serde(serialize_with = "ser_ratio")]
    pub lower: Ratio<i128>,
    pub q: u64,
    /// `X >= lower`.
    pub convexity_check: bool,
    /// `X <= q · C(n, 2)`.
    pub upper_q_bound_check: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn star_count(g: &ThreeGraph) -> StarCount {
    let mut deg: HashMap<(u32, u32), u64> = HashMap::new();
    for &[x, y, z] in g.edges() {
        for p in [(y, z), (x, z), (x, y)] {
            *deg.entry(p).or_default() += 1;
        }
    }
    let stars: u64 = deg.values().map(|&d| d * d.saturating_sub(1) / 2).sum();
    let n = g.vertex_count() as u64;
    let pair_count = n * n.saturating_sub(1) / 2;
    let incidences = 3 * g.edge_count() as u64;
    let lower = if pair_count == 0 {
        Ratio::from_integer(0)
    } else {
        let u = i128::from(pair_count);
        let t = Ratio::new(i128::from(incidences), u);
        Ratio::from_integer(u) * t * (t - 1) / 2
    };
    let q = if g.vertex_count() >= 3 {
        find_largest_k2q(g).map_or(0, |w| w.q() as u64)
    } else {
        0
    };
    StarCount {
        stars,
        pair_count,
        incidences,
        lower,
        q,
        convexity_check: Ratio::from_integer(i128::from(stars)) >= lower,
        upper_q_bound_check: stars <= q * pair_count,
    }
}

/// Read access shared by graphs and 3-graphs for embedding search.
pub trait EdgeSystem {
    fn vertex_list(&self) -> Vec<u32>;
    /// Edges as sorted label lists.
    fn edge_list(&self) -> Vec<Vec<u32>>;
    /// `labels` is sorted.
    fn has_edge_labels(&self, labels: &[u32]) -> bool;
}

impl EdgeSystem for SimpleGraph {
    fn vertex_list(&self) -> Vec<u32> {
        self.vertices.iter().copied().collect()
    }

    fn edge_list(&self) -> Vec<Vec<u32>> {
        self.edges.iter().map(|&(u, v)| vec![u, v]).collect()
    }

    fn has_edge_labels(&self, labels: &[u32]) -> bool {
        labels.len() == 2 && self.edges.contains(&(labels[0], labels[1]))
    }
}

impl EdgeSystem for ThreeGraph {
    fn vertex_list(&self) -> Vec<u32> {
        self.vertices.iter().copied().collect()
    }

    fn edge_list(&self) -> Vec<Vec<u32>> {
        self.edges.iter().map(|e| e.to_vec()).collect()
    }

    fn has_edge_labels(&self, labels: &[u32]) -> bool {
        labels.len() == 3 && self.edges.contains(&[labels[0], labels[1], labels[2]])
    }
}

struct Matcher<'a, H: EdgeSystem> {
    host: &'a H,
    host_vertices: Vec<u32>,
    host_degree: HashMap<u32, usize>,
    order: Vec<u32>,
    degree: HashMap<u32, usize>,
    /// Pattern edges whose last vertex in `order` is at each position.
    closing: Vec<Vec<Vec<u32>>>,
}

impl<'a, H: EdgeSystem> Matcher<'a, H> {
    fn new<P: EdgeSystem>(host: &'a H, pattern: &P, fixed: &[u32]) -> Self {
        let pverts = pattern.vertex_list();
        let pedges = pattern.edge_list();
        let mut degree: HashMap<u32, usize> = pverts.iter().map(|&v| (v, 0)).collect();
        for e in &pedges {
            for v in e {
                *degree.get_mut(v).expect("edge vertex") += 1;
            }
        }
        let host_vertices = host.vertex_list();
        let mut host_degree: HashMap<u32, usize> = host_vertices.iter().map(|&v| (v, 0)).collect();
        for e in host.edge_list() {
            for v in e {
                *host_degree.entry(v).or_default() += 1;
            }
        }
        // Fixed vertices first, then greedily the vertex with most placed neighbours.
        let mut order: Vec<u32> = fixed.to_vec();
        let mut rest: BTreeSet<u32> = pverts
            .iter()
            .copied()
            .filter(|v| !fixed.contains(v))
            .collect();
        while !rest.is_empty() {
            let placed: BTreeSet<u32> = order.iter().copied().collect();
            let next = *rest
                .iter()
                .max_by_key(|&&v| {
                    let links = pedges
                        .iter()
                        .filter(|e| e.contains(&v) && e.iter().any(|w| placed.contains(w)))
                        .count();
                    (links, degree[&v], std::cmp::Reverse(v))
                })
                .expect("nonempty");
            rest.remove(&next);
            order.push(next);
        }
        let pos: HashMap<u32, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut closing = vec![Vec::new(); order.len()];
        for e in pedges {
            let last = e.iter().map(|v| pos[v]).max().expect("nonempty edge");
            closing[last].push(e);
        }
        Matcher {
            host,
            host_vertices,
            host_degree,
            order,
            degree,
            closing,
        }
    }

    fn search(
        &self,
        assign: &mut HashMap<u32, u32>,
        used: &mut BTreeSet<u32>,
        depth: usize,
        tally: &mut Tally<'_>,
    ) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let pv = self.order[depth];
        if assign.contains_key(&pv) {
            return if self.closes(assign, depth) {
                self.search(assign, used, depth + 1, tally)
            } else {
                Some(false)
            };
        }
        for &hv in &self.host_vertices {
            if used.contains(&hv) || self.host_degree[&hv] < self.degree[&pv] {
                continue;
            }
            if !tally.step() {
                return None;
            }
            assign.insert(pv, hv);
            if self.closes(assign, depth) {
                used.insert(hv);
                let r = self.search(assign, used, depth + 1, tally);
                used.remove(&hv);
                if r != Some(false) {
                    return r;
                }
            }
            assign.remove(&pv);
        }
        Some(false)
    }

    fn closes(&self, assign: &HashMap<u32, u32>, depth: usize) -> bool {
        self.closing[depth].iter().all(|e| {
            let mut img: Vec<u32> = e.iter().map(|v| assign[v]).collect();
            img.sort_unstable();
            self.host.has_edge_labels(&img)
        })
    }
}

fn check_pattern_size<P: EdgeSystem>(pattern: &P) -> Result<()> {
    let n = pattern.vertex_list().len();
    if n > PATTERN_MAX_VERTICES {
        return Err(Error::limit(format!(
            "pattern has {n} vertices, above the embedding cap of {PATTERN_MAX_VERTICES}"
        )));
    }
    Ok(())
}

fn run_matcher<H: EdgeSystem, P: EdgeSystem>(
    host: &H,
    pattern: &P,
    seed: &[(u32, u32)],
    tally: &mut Tally<'_>,
) -> Option<Option<BTreeMap<u32, u32>>> {
    let fixed: Vec<u32> = seed.iter().map(|&(p, _)| p).collect();
    let m = Matcher::new(host, pattern, &fixed);
    let mut assign: HashMap<u32, u32> = seed.iter().copied().collect();
    let mut used: BTreeSet<u32> = seed.iter().map(|&(_, h)| h).collect();
    match m.search(&mut assign, &mut used, 0, tally)? {
        true => Some(Some(assign.into_iter().collect())),
        false => Some(None),
    }
}

/// An injective map carrying every pattern edge onto a host edge, if one exists.
/// Exhaustive backtracking.
pub fn find_embedding<H: EdgeSystem, P: EdgeSystem>(
    host: &H,
    pattern: &P,
    budget: Budget,
) -> Result<Option<BTreeMap<u32, u32>>> {
    check_pattern_size(pattern)?;
    find_embedding_uncapped(host, pattern, budget)
}

/// [`find_embedding`] without the pattern-size cap; only the budget bounds the search.
pub(crate) fn find_embedding_uncapped<H: EdgeSystem, P: EdgeSystem>(
    host: &H,
    pattern: &P,
    budget: Budget,
) -> Result<Option<BTreeMap<u32, u32>>> {
    if pattern.vertex_list().len() > host.vertex_list().len() {
        return Ok(None);
    }
    let meter = budget.meter();
    let mut tally = meter.tally();
    let found = run_matcher(host, pattern, &[], &mut tally);
    drop(tally);
    meter.check(|| "embedding search".into())?;
    Ok(found.flatten())
}

/// Outcome of searching a 3-graph for a two-lift of a target graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LiftSearchOutcome {
    Found {
        witness: TwoLiftWitness,
        q: usize,
        stars: StarCount,
    },
    Failed {
        q: usize,
        stars: StarCount,
        /// Vertices spanned by the shared pairs.
        pair_graph_vertices: usize,
        /// `ex(m, target)` on those `m` vertices when the exact oracle could compute it.
        threshold: Option<u64>,
        reason: String,
    },
}

impl LiftSearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, LiftSearchOutcome::Found { .. })
    }
}

/// Takes the densest `K_{2,q}`, reads its shared pairs as a graph `H'`, and
/// looks for `target` inside `H'`. On success the witness maps the target's
/// two-lift (apex labels from [`two_lift_labels`]) into `g`.
pub fn extract_two_lift(
    g: &ThreeGraph,
    target: &SimpleGraph,
    budget: Budget,
) -> Result<LiftSearchOutcome> {
    if target.edge_count() == 0 || !target.is_bipartite() {
        return Err(Error::invalid("target must be a nonempty bipartite graph"));
    }
    check_pattern_size(target)?;
    let best = find_largest_k2q(g)?;
    let stars = star_count(g);
    let h_prime = best.pair_graph();
    let q = best.q();
    let embedding = if q == 0 {
        None
    } else {
        find_embedding(&h_prime, target, budget)?
    };
    match embedding {
        Some(map) => {
            let (ta, tb) = two_lift_labels(target);
            let mut full = map.clone();
            full.insert(ta, best.a);
            full.insert(tb, best.b);
            let pairs: Vec<(u32, u32)> = target
                .edges()
                .iter()
                .map(|&(u, v)| pair(map[&u], map[&v]))
                .collect();
            let witness = TwoLiftWitness {
                a: best.a,
                b: best.b,
                pairs,
                embedding: full,
            };
            if !witness.holds_in(g) {
                return Err(Error::VerificationFailure {
                    clause: "two-lift witness".into(),
                    detail: "composed witness is not contained in the host".into(),
                });
            }
            Ok(LiftSearchOutcome::Found { witness, q, stars })
        }
        None => {
            let m = h_prime.vertices().len();
            let threshold = if m >= 2 && m as u32 <= crate::exact::GRAPH_MAX_N {
                crate::exact::ex_graph(
                    m as u32,
                    target,
                    &crate::exact::ExactOptions::with_budget(budget),
                )
                .ok()
                .map(|r| r.value)
            } else {
                None
            };
            Ok(LiftSearchOutcome::Failed {
                q,
                stars,
                pair_graph_vertices: m,
                threshold,
                reason: format!("target does not embed in the {q}-edge shared-pair graph"),
            })
        }
    }
}
