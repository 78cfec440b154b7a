//! Enumeration and counting of `2ℓ`-cycles in subgraphs of `Q_n`.
//!
//! Each cycle is reported once, in canonical form: the vertex sequence starts
//! at its smallest vertex (by bitmask) and walks toward the smaller of that
//! vertex's two cycle neighbours. The search roots a DFS at every candidate
//! anchor, only visits vertices larger than the anchor, and prunes any partial
//! path whose Hamming distance back to the anchor exceeds the remaining length.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{Budget, Meter, Tally};
use crate::cube::{are_adjacent, build_qn, cube_edge_count, edge_slot, CubeEdge, Subgraph, Vertex};
use crate::error::{Error, Result};

/// Largest dimension accepted by [`census`].
pub const CENSUS_MAX_DIM: u32 = 12;

pub(crate) fn check_length(two_ell: usize) -> Result<()> {
    if two_ell < 4 || !two_ell.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "cycle length {two_ell} must be even and at least 4 (Q_n is bipartite)"
        )));
    }
    Ok(())
}

/// A cycle of `Q_n` in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleWitness {
    vertices: Vec<Vertex>,
}

impl CycleWitness {
    /// Validates adjacency, distinctness and even length, then canonicalises.
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        let len = vertices.len();
        if len < 4 || !len.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "a cycle needs an even length >= 4, got {len}"
            )));
        }
        for i in 0..len {
            let (u, v) = (vertices[i], vertices[(i + 1) % len]);
            if !are_adjacent(u, v)? {
                return Err(Error::invalid(format!(
                    "consecutive vertices {u} and {v} are not adjacent"
                )));
            }
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != len {
            return Err(Error::invalid("cycle repeats a vertex"));
        }
        Ok(CycleWitness {
            vertices: canonical_order(vertices),
        })
    }

    fn from_masks(dim: u32, masks: &[u32]) -> Self {
        CycleWitness {
            vertices: masks
                .iter()
                .map(|&m| Vertex::new_unchecked(dim, m))
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> u32 {
        self.vertices[0].dim()
    }

    pub fn edges(&self) -> Vec<CubeEdge> {
        let len = self.vertices.len();
        (0..len)
            .map(|i| {
                CubeEdge::new(self.vertices[i], self.vertices[(i + 1) % len])
                    .expect("witness vertices are adjacent")
            })
            .collect()
    }

    /// The ground elements along which some pair of consecutive vertices differ.
    pub fn support(&self) -> BTreeSet<u32> {
        self.edges().into_iter().map(CubeEdge::element).collect()
    }

    /// True iff every edge is present in `g`.
    pub fn lies_in(&self, g: &Subgraph) -> bool {
        self.dim() == g.dim() && self.edges().into_iter().all(|e| g.contains(e))
    }

    /// Edge-list rendering followed by a `cycle:` line listing the vertices in order.
    pub fn to_text(&self) -> String {
        let g = Subgraph::from_edges(self.dim(), self.edges()).expect("valid edges");
        let mut out = g.to_edge_list();
        out.push_str("cycle:");
        for v in &self.vertices {
            out.push(' ');
            out.push_str(&v.to_string());
        }
        out.push('\n');
        out
    }
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle[{self}]")
    }
}

impl Serialize for CycleWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices.iter().map(|v| v.to_string()))
    }
}

/// Lexicographically smallest rotation/reflection of a cyclic sequence.
fn canonical_order(mut vs: Vec<Vertex>) -> Vec<Vertex> {
    let len = vs.len();
    let start = (0..len).min_by_key(|&i| vs[i]).unwrap_or(0);
    vs.rotate_left(start);
    if len > 2 && vs[len - 1] < vs[1] {
        vs[1..].reverse();
    }
    vs
}

enum Flow {
    Continue,
    Stop,
    OutOfBudget,
}

/// Depth-first search for canonical cycles anchored at `anchor`.
/// `visit` receives the vertex masks and returns false to stop.
fn search_anchor(
    g: &Subgraph,
    two_ell: usize,
    anchor: u32,
    tally: &mut Tally<'_>,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> Flow {
    let mut path = Vec::with_capacity(two_ell);
    path.push(anchor);
    extend(g, two_ell, &mut path, tally, visit)
}

fn extend(
    g: &Subgraph,
    two_ell: usize,
    path: &mut Vec<u32>,
    tally: &mut Tally<'_>,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> Flow {
    let anchor = path[0];
    let cur = *path.last().expect("nonempty path");
    if path.len() == two_ell {
        if path[1] < cur && g.has_mask_edge(cur, anchor) && !visit(path) {
            return Flow::Stop;
        }
        return Flow::Continue;
    }
    // Edges still to place after stepping to the next vertex, including the closing one.
    let remaining_after = (two_ell - path.len()) as u32;
    // Ascending neighbour order makes each anchor's output lexicographically sorted.
    let mut nbs = [0u32; crate::cube::MAX_DIM as usize];
    let mut count = 0;
    for nb in g.neighbor_masks(cur) {
        nbs[count] = nb;
        count += 1;
    }
    nbs[..count].sort_unstable();
    for &nb in &nbs[..count] {
        if nb <= anchor || (nb ^ anchor).count_ones() > remaining_after || path.contains(&nb) {
            continue;
        }
        if !tally.step() {
            return Flow::OutOfBudget;
        }
        path.push(nb);
        let flow = extend(g, two_ell, path, tally, visit);
        path.pop();
        if !matches!(flow, Flow::Continue) {
            return flow;
        }
    }
    Flow::Continue
}

fn anchors(g: &Subgraph) -> Vec<u32> {
    (0..(1u32 << g.dim()))
        .filter(|&m| g.neighbor_masks(m).nth(1).is_some())
        .collect()
}

/// All cycles of length `two_ell` in `g`, each once, in lexicographic canonical order.
/// With `limit`, stops after that many cycles.
pub fn enumerate_cycles(
    g: &Subgraph,
    two_ell: usize,
    limit: Option<usize>,
    budget: Budget,
) -> Result<Vec<CycleWitness>> {
    check_length(two_ell)?;
    let meter = budget.meter();
    let dim = g.dim();
    let what = || {
        format!(
            "enumerating {two_ell}-cycles in a {}-edge subgraph of Q_{dim}",
            g.len()
        )
    };
    let mut out = Vec::new();
    match limit {
        Some(cap) => {
            if cap == 0 {
                return Ok(out);
            }
            let mut tally = meter.tally();
            for anchor in anchors(g) {
                let mut visit = |p: &[u32]| {
                    out.push(CycleWitness::from_masks(dim, p));
                    out.len() < cap
                };
                match search_anchor(g, two_ell, anchor, &mut tally, &mut visit) {
                    Flow::Continue => {}
                    Flow::Stop => break,
                    Flow::OutOfBudget => break,
                }
            }
            drop(tally);
        }
        None => {
            let per_anchor: Vec<Vec<CycleWitness>> = anchors(g)
                .into_par_iter()
                .map(|anchor| {
                    let mut found = Vec::new();
                    let mut tally = meter.tally();
                    let mut visit = |p: &[u32]| {
                        found.push(CycleWitness::from_masks(dim, p));
                        true
                    };
                    search_anchor(g, two_ell, anchor, &mut tally, &mut visit);
                    found
                })
                .collect();
            out = per_anchor.into_iter().flatten().collect();
        }
    }
    meter.check(what)?;
    Ok(out)
}

/// Number of `two_ell`-cycles in `g`, without materialising them.
pub fn count_cycles(g: &Subgraph, two_ell: usize, budget: Budget) -> Result<u64> {
    check_length(two_ell)?;
    let meter = budget.meter();
    let total = anchors(g)
        .into_par_iter()
        .map(|anchor| {
            let mut n = 0u64;
            let mut tally = meter.tally();
            search_anchor(g, two_ell, anchor, &mut tally, &mut |_| {
                n += 1;
                true
            });
            n
        })
        .sum();
    meter.check(|| format!("counting {two_ell}-cycles in Q_{}", g.dim()))?;
    Ok(total)
}

/// Result of a cycle-freeness query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Freeness {
    Free,
    Contains(CycleWitness),
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }

    pub fn witness(&self) -> Option<&CycleWitness> {
        match self {
            Freeness::Free => None,
            Freeness::Contains(w) => Some(w),
        }
    }
}

/// Checks whether `g` has no `two_ell`-cycle; otherwise returns the first one in canonical order.
pub fn is_cycle_free(g: &Subgraph, two_ell: usize, budget: Budget) -> Result<Freeness> {
    let mut found = enumerate_cycles(g, two_ell, Some(1), budget)?;
    Ok(match found.pop() {
        Some(w) => Freeness::Contains(w),
        None => Freeness::Free,
    })
}

/// True iff `g` has a `two_ell`-cycle through `edge` (the edge itself is assumed present).
pub(crate) fn has_cycle_through(
    g: &Subgraph,
    edge: CubeEdge,
    two_ell: usize,
    tally: &mut Tally<'_>,
) -> Option<bool> {
    fn walk(
        g: &Subgraph,
        target: u32,
        path: &mut Vec<u32>,
        steps_left: u32,
        tally: &mut Tally<'_>,
    ) -> Option<bool> {
        let cur = *path.last().expect("nonempty");
        if steps_left == 0 {
            return Some(cur == target);
        }
        for nb in g.neighbor_masks(cur) {
            let dist = (nb ^ target).count_ones();
            if dist > steps_left - 1 || path.contains(&nb) || (nb == target && steps_left > 1) {
                continue;
            }
            if !tally.step() {
                return None;
            }
            path.push(nb);
            let hit = walk(g, target, path, steps_left - 1, tally);
            path.pop();
            match hit {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }
    let mut path = vec![edge.hi().mask()];
    walk(g, edge.lo().mask(), &mut path, two_ell as u32 - 1, tally)
}

/// Exact cycle counts of the full `Q_n`: the total and the count through every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCensus {
    pub n: u32,
    pub two_ell: usize,
    pub total: u64,
    per_edge: Vec<u64>,
}

impl CycleCensus {
    /// `(edge, x_e)` for every edge of `Q_n` in canonical edge order.
    pub fn per_edge(&self) -> impl Iterator<Item = (CubeEdge, u64)> + '_ {
        let n = self.n;
        (0..(1u32 << n)).flat_map(move |lo| {
            (0..n).filter(move |d| lo & (1 << d) == 0).map(move |d| {
                (
                    CubeEdge::from_lo_dir(n, lo, d),
                    self.per_edge[edge_slot(n, lo, d)],
                )
            })
        })
    }

    pub fn count_through(&self, e: CubeEdge) -> u64 {
        self.per_edge[edge_slot(self.n, e.lo().mask(), e.direction())]
    }

    /// The common per-edge count, if all edges agree.
    pub fn uniform_count(&self) -> Option<u64> {
        let mut it = self.per_edge().map(|(_, c)| c);
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    /// `2ℓ · N = Σ_e x_e`.
    pub fn identity_holds(&self) -> bool {
        let sum: u64 = self.per_edge().map(|(_, c)| c).sum();
        self.two_ell as u64 * self.total == sum
    }

    /// `2ℓ · N = n · 2^(n-1) · x` with the common per-edge count `x`.
    pub fn symmetric_identity_holds(&self) -> bool {
        self.uniform_count()
            .is_some_and(|x| self.two_ell as u64 * self.total == cube_edge_count(self.n) * x)
    }
}

/// Full enumeration of the `two_ell`-cycles of `Q_n`.
pub fn census(n: u32, two_ell: usize, budget: Budget) -> Result<CycleCensus> {
    check_length(two_ell)?;
    if n > CENSUS_MAX_DIM {
        return Err(Error::limit(format!(
            "census of {two_ell}-cycles in Q_{n}: dimension above {CENSUS_MAX_DIM}"
        )));
    }
    let g = build_qn(n)?;
    let slots = (n as usize) << n;
    let meter: Meter = budget.meter();
    let (total, per_edge) = anchors(&g)
        .into_par_iter()
        .fold(
            || (0u64, vec![0u64; slots]),
            |(mut total, mut counts), anchor| {
                let mut tally = meter.tally();
                search_anchor(&g, two_ell, anchor, &mut tally, &mut |p| {
                    total += 1;
                    for i in 0..p.len() {
                        let (u, v) = (p[i], p[(i + 1) % p.len()]);
                        counts[edge_slot(n, u & v, (u ^ v).trailing_zeros())] += 1;
                    }
                    true
                });
                (total, counts)
            },
        )
        .reduce(
            || (0u64, vec![0u64; slots]),
            |(ta, mut ca), (tb, cb)| {
                ca.iter_mut().zip(cb).for_each(|(a, b)| *a += b);
                (ta + tb, ca)
            },
        );
    meter.check(|| format!("census of {two_ell}-cycles in Q_{n}"))?;
    Ok(CycleCensus {
        n,
        two_ell,
        total,
        per_edge,
    })
}

/// One row of the counting-bound table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: u32,
    pub two_ell: usize,
    #[serde(rename = "N")]
    pub total: u64,
    /// Cycles through each edge (uniform in `Q_n`).
    pub x: u64,
    /// `N / (n^ℓ · 2^n)`.
    pub ratio: f64,
    /// Exact test of `N <= n^ℓ · 2^n`.
    pub within_unit: bool,
}

/// Ratio `N(Q_n, C_2ℓ) / (n^ℓ 2^n)` for each requested `n`.
pub fn check_counting_bound(ns: &[u32], two_ell: usize, budget: Budget) -> Result<Vec<BoundRow>> {
    check_length(two_ell)?;
    ns.iter()
        .map(|&n| census(n, two_ell, budget)?.bound_row())
        .collect()
}

impl CycleCensus {
    /// Table row for this census; fails if the per-edge counts are not uniform
    /// or the double-counting identity breaks.
    pub fn bound_row(&self) -> Result<BoundRow> {
        let (n, two_ell) = (self.n, self.two_ell);
        let x = self
            .uniform_count()
            .ok_or_else(|| Error::VerificationFailure {
                clause: "edge-transitivity".into(),
                detail: format!("per-edge {two_ell}-cycle counts of Q_{n} differ"),
            })?;
        if !self.symmetric_identity_holds() {
            return Err(Error::VerificationFailure {
                clause: "double counting".into(),
                detail: format!("{two_ell} * {} != {} * {x}", self.total, cube_edge_count(n)),
            });
        }
        let scale = u128::from(n).pow((two_ell / 2) as u32) << n;
        Ok(BoundRow {
            n,
            two_ell,
            total: self.total,
            x,
            ratio: self.total as f64 / scale as f64,
            within_unit: u128::from(self.total) <= scale,
        })
    }
}
