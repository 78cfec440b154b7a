//! An embedding of `C_2ℓ` (odd `ℓ = 2k + 1 >= 7`) into layers 2 and 3 of
//! `Q_n` whose layer-3 vertices form a 3-partite 3-graph, plus a general
//! checker for `k`-partite representations.
//!
//! The layer-3 sequence is
//!
//! ```text
//! a x1 y1, a x2 y1, a x2 y2, ..., a x(k-1) y(k-2), a x(k-1) y(k-1),
//! b x(k-1) y(k-1), b x(k-1) y0, b x1 y0, b x1 y1
//! ```
//!
//! and the layer-2 vertex between consecutive triples is their intersection.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::cube::{bits, Subgraph, Vertex};
use crate::cycles::{enumerate_cycles, CycleWitness};
use crate::error::{Error, Result};
use crate::hypergraph::{
    find_embedding_uncapped, two_lift, two_lift_with, SimpleGraph, ThreeGraph,
};

/// Injective assignment of the abstract labels `a, b, x_1..x_{k-1}, y_0..y_{k-1}` into `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundLabels {
    pub a: u32,
    pub b: u32,
    /// `x_1, ..., x_{k-1}`.
    pub xs: Vec<u32>,
    /// `y_0, ..., y_{k-1}`.
    pub ys: Vec<u32>,
}

fn check_ell(ell: u32) -> Result<u32> {
    if ell < 7 || ell.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "ell = {ell} must be an odd integer >= 7"
        )));
    }
    Ok((ell - 1) / 2)
}

impl GroundLabels {
    /// `a = 1, b = 2, x_i = 2 + i, y_j = k + 2 + j`: the labels fill `1..=ℓ`.
    pub fn standard(ell: u32) -> Result<Self> {
        let k = check_ell(ell)?;
        Ok(GroundLabels {
            a: 1,
            b: 2,
            xs: (1..k).map(|i| 2 + i).collect(),
            ys: (0..k).map(|j| k + 2 + j).collect(),
        })
    }

    /// `k`, so that `ℓ = 2k + 1`.
    pub fn k(&self) -> u32 {
        self.ys.len() as u32
    }

    pub fn all(&self) -> Vec<u32> {
        let mut v = vec![self.a, self.b];
        v.extend(&self.xs);
        v.extend(&self.ys);
        v
    }

    fn x(&self, i: u32) -> u32 {
        self.xs[i as usize - 1]
    }

    fn y(&self, j: u32) -> u32 {
        self.ys[j as usize]
    }

    fn validate(&self, ell: u32, n: u32) -> Result<()> {
        let k = check_ell(ell)?;
        if self.xs.len() as u32 != k - 1 || self.ys.len() as u32 != k {
            return Err(Error::invalid(format!(
                "ell = {ell} needs {} x-labels and {k} y-labels, got {} and {}",
                k - 1,
                self.xs.len(),
                self.ys.len()
            )));
        }
        let all = self.all();
        if let Some(&bad) = all.iter().find(|&&l| l == 0 || l > n) {
            return Err(Error::invalid(format!("label {bad} outside 1..={n}")));
        }
        if all.iter().collect::<BTreeSet<_>>().len() != all.len() {
            return Err(Error::invalid("labels are not injective"));
        }
        Ok(())
    }
}

/// The cycle as alternating layer-3 and layer-2 vertices, with its ground labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub ell: u32,
    pub n: u32,
    pub labels: GroundLabels,
    /// Layer-3 vertices in cycle order.
    pub a_seq: Vec<Vertex>,
    /// `b_seq[i]` sits between `a_seq[i]` and `a_seq[i + 1]`.
    pub b_seq: Vec<Vertex>,
}

/// Builds the representation of `C_2ell` inside `Q_n`. Without `labels`, uses [`GroundLabels::standard`].
pub fn build_representation(
    ell: u32,
    n: u32,
    labels: Option<GroundLabels>,
) -> Result<Representation> {
    let k = check_ell(ell)?;
    if n < ell {
        return Err(Error::invalid(format!(
            "n = {n} is smaller than ell = {ell}"
        )));
    }
    let labels = match labels {
        Some(l) => l,
        None => GroundLabels::standard(ell)?,
    };
    labels.validate(ell, n)?;
    let l = &labels;
    let mut triples: Vec<[u32; 3]> = vec![[l.a, l.x(1), l.y(1)]];
    for i in 2..k {
        triples.push([l.a, l.x(i), l.y(i - 1)]);
        triples.push([l.a, l.x(i), l.y(i)]);
    }
    triples.push([l.b, l.x(k - 1), l.y(k - 1)]);
    triples.push([l.b, l.x(k - 1), l.y(0)]);
    triples.push([l.b, l.x(1), l.y(0)]);
    triples.push([l.b, l.x(1), l.y(1)]);
    debug_assert_eq!(triples.len() as u32, ell);
    let a_seq: Vec<Vertex> = triples
        .iter()
        .map(|t| Vertex::from_elements(n, t))
        .collect::<Result<_>>()?;
    let b_seq = (0..a_seq.len())
        .map(|i| {
            let m = a_seq[i].mask() & a_seq[(i + 1) % a_seq.len()].mask();
            Vertex::from_mask(n, m)
        })
        .collect::<Result<_>>()?;
    Ok(Representation {
        ell,
        n,
        labels,
        a_seq,
        b_seq,
    })
}

impl Representation {
    /// The interleaved vertex sequence `a_0, b_0, a_1, b_1, ...`.
    pub fn cycle_vertices(&self) -> Vec<Vertex> {
        self.a_seq
            .iter()
            .zip(&self.b_seq)
            .flat_map(|(&a, &b)| [a, b])
            .collect()
    }

    /// The 3-graph whose edges are the layer-3 vertices.
    pub fn hgraph(&self) -> ThreeGraph {
        let mut g = ThreeGraph::on(self.labels.all());
        for v in &self.a_seq {
            let e = v.elements();
            if let [x, y, z] = e[..] {
                g.add_vertex(x);
                g.add_vertex(y);
                g.add_vertex(z);
                let _ = g.add_edge([x, y, z]);
            }
        }
        g
    }

    /// The cycle's edges as a subgraph of `Q_n`, when consecutive vertices are adjacent.
    pub fn subgraph(&self) -> Result<Subgraph> {
        let vs = self.cycle_vertices();
        let mut g = Subgraph::empty(self.n)?;
        for i in 0..vs.len() {
            g.insert_pair(vs[i], vs[(i + 1) % vs.len()])?;
        }
        Ok(g)
    }

    pub fn to_doc(&self) -> RepresentationDoc {
        RepresentationDoc {
            ell: self.ell,
            n: self.n,
            labels: self.labels.clone(),
            a_seq: self.a_seq.iter().map(|v| v.elements()).collect(),
            b_seq: self.b_seq.iter().map(|v| v.elements()).collect(),
        }
    }

    pub fn from_doc(doc: &RepresentationDoc) -> Result<Self> {
        if doc.a_seq.len() != doc.ell as usize || doc.b_seq.len() != doc.ell as usize {
            return Err(Error::invalid(format!(
                "ell = {} but a_seq has {} and b_seq {} entries",
                doc.ell,
                doc.a_seq.len(),
                doc.b_seq.len()
            )));
        }
        let conv = |s: &Vec<Vec<u32>>| -> Result<Vec<Vertex>> {
            s.iter()
                .map(|els| Vertex::from_elements(doc.n, els))
                .collect()
        };
        Ok(Representation {
            ell: doc.ell,
            n: doc.n,
            labels: doc.labels.clone(),
            a_seq: conv(&doc.a_seq)?,
            b_seq: conv(&doc.b_seq)?,
        })
    }
}

/// JSON form: vertices as sorted element arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationDoc {
    pub ell: u32,
    pub n: u32,
    pub labels: GroundLabels,
    pub a_seq: Vec<Vec<u32>>,
    pub b_seq: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ell: u32,
    pub passed: bool,
    pub clauses: Vec<ClauseResult>,
    /// Edge counts of the two apex links.
    pub link_a_edges: usize,
    pub link_b_edges: usize,
}

impl VerificationReport {
    pub fn first_failure(&self) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| !c.passed)
    }
}

fn clause(
    clause: &'static str,
    name: &'static str,
    outcome: std::result::Result<String, String>,
) -> ClauseResult {
    match outcome {
        Ok(detail) => ClauseResult {
            clause,
            name,
            passed: true,
            detail,
        },
        Err(detail) => ClauseResult {
            clause,
            name,
            passed: false,
            detail,
        },
    }
}

fn pair_of(u: u32, v: u32) -> (u32, u32) {
    (u.min(v), u.max(v))
}

/// Runs all six checks and reports each one, failing or not.
pub fn check_representation(rep: &Representation) -> VerificationReport {
    let k = rep.labels.k();
    let ell = rep.ell;
    let l = &rep.labels;
    let h = rep.hgraph();
    let link_a = h.link(l.a).unwrap_or_default();
    let link_b = h.link(l.b).unwrap_or_default();
    let union = link_a.union(&link_b);

    let c1 = clause("i", "cycle in layers 2 and 3", check_cycle(rep));
    let c2 = clause("ii", "3-partite with parts {a,b}, xs, ys", {
        let parts = [
            BTreeSet::from([l.a, l.b]),
            l.xs.iter().copied().collect(),
            l.ys.iter().copied().collect(),
        ];
        if h.edge_count() != ell as usize {
            Err(format!(
                "{} distinct triples, expected {ell}",
                h.edge_count()
            ))
        } else if !h.respects_partition(&parts) {
            Err("some triple does not meet each part exactly once".into())
        } else {
            Ok(format!(
                "{} edges on {} vertices",
                h.edge_count(),
                h.vertex_count()
            ))
        }
    });
    let c3 = clause("iii", "links are paths of lengths 2k-3 and 4", {
        let want_a = 2 * k as usize - 3;
        if !link_a.is_path_of_length(want_a) {
            Err(format!(
                "L(a) has {} edges and is not a path of length {want_a}",
                link_a.edge_count()
            ))
        } else if !link_b.is_path_of_length(4) {
            Err(format!(
                "L(b) has {} edges and is not a path of length 4",
                link_b.edge_count()
            ))
        } else {
            Ok(format!(
                "L(a) path with {want_a} edges, L(b) path with 4 edges"
            ))
        }
    });
    let c4 = clause(
        "iv",
        "links share x1, y1, x_(k-1), y_(k-1) and two edges",
        {
            let shared_v: BTreeSet<u32> = link_a
                .vertices()
                .intersection(link_b.vertices())
                .copied()
                .collect();
            let shared_e: BTreeSet<(u32, u32)> = link_a
                .edges()
                .intersection(link_b.edges())
                .copied()
                .collect();
            let (x1, y1) = (l.xs.first().copied(), l.ys.get(1).copied());
            let (xk, yk) = (l.xs.last().copied(), l.ys.last().copied());
            match (x1, y1, xk, yk) {
                (Some(x1), Some(y1), Some(xk), Some(yk)) => {
                    let want_v = BTreeSet::from([x1, y1, xk, yk]);
                    let want_e = BTreeSet::from([pair_of(x1, y1), pair_of(xk, yk)]);
                    if shared_v != want_v {
                        Err(format!("shared vertices {shared_v:?}, expected {want_v:?}"))
                    } else if shared_e != want_e {
                        Err(format!("shared edges {shared_e:?}, expected {want_e:?}"))
                    } else {
                        Ok(format!(
                            "shared vertices {shared_v:?}, shared edges {shared_e:?}"
                        ))
                    }
                }
                _ => Err("labels too short".into()),
            }
        },
    );
    let c5 = clause(
        "v",
        "link union is a cycle of length l-3 plus a pendant edge",
        cycle_plus_pendant(&union, ell as usize - 3),
    );
    let c6 = clause(
        "vi",
        "contained in the two-lift of the link union",
        check_two_lift(&h, &union, l.a, l.b),
    );

    let clauses = vec![c1, c2, c3, c4, c5, c6];
    VerificationReport {
        ell,
        passed: clauses.iter().all(|c| c.passed),
        clauses,
        link_a_edges: link_a.edge_count(),
        link_b_edges: link_b.edge_count(),
    }
}

/// Like [`check_representation`] but fails with the first broken clause.
pub fn verify_representation(rep: &Representation) -> Result<VerificationReport> {
    let report = check_representation(rep);
    if let Some(bad) = report.first_failure() {
        return Err(Error::VerificationFailure {
            clause: format!("({}) {}", bad.clause, bad.name),
            detail: bad.detail.clone(),
        });
    }
    Ok(report)
}

fn check_cycle(rep: &Representation) -> std::result::Result<String, String> {
    let ell = rep.ell as usize;
    if rep.a_seq.len() != ell || rep.b_seq.len() != ell {
        return Err("sequence lengths differ from ell".into());
    }
    if let Some(v) = rep.a_seq.iter().find(|v| v.layer() != 3) {
        return Err(format!("{v} is not in layer 3"));
    }
    if let Some(v) = rep.b_seq.iter().find(|v| v.layer() != 2) {
        return Err(format!("{v} is not in layer 2"));
    }
    for i in 0..ell {
        let meet = rep.a_seq[i].mask() & rep.a_seq[(i + 1) % ell].mask();
        if meet != rep.b_seq[i].mask() {
            return Err(format!(
                "{} is not the intersection of {} and {}",
                rep.b_seq[i],
                rep.a_seq[i],
                rep.a_seq[(i + 1) % ell]
            ));
        }
    }
    let witness = CycleWitness::new(rep.cycle_vertices()).map_err(|e| e.to_string())?;
    // Independent certification: the cycle's own edge set holds exactly this one 2ℓ-cycle.
    let g = rep.subgraph().map_err(|e| e.to_string())?;
    let found =
        enumerate_cycles(&g, 2 * ell, None, Budget::default()).map_err(|e| e.to_string())?;
    if found != [witness.clone()] {
        return Err(format!(
            "cycle enumerator found {} cycles of length {}",
            found.len(),
            2 * ell
        ));
    }
    Ok(format!(
        "{}-cycle certified, starting {}",
        2 * ell,
        witness.vertices()[0]
    ))
}

fn cycle_plus_pendant(g: &SimpleGraph, cycle_len: usize) -> std::result::Result<String, String> {
    let leaves: Vec<u32> = g
        .vertices()
        .iter()
        .copied()
        .filter(|&v| g.degree(v) == 1)
        .collect();
    let [leaf] = leaves[..] else {
        return Err(format!("{} degree-1 vertices, expected 1", leaves.len()));
    };
    let anchor = g.neighbors(leaf).next().expect("leaf has a neighbour");
    let rest = SimpleGraph::from_edges(
        g.edges()
            .iter()
            .copied()
            .filter(|&e| e != pair_of(leaf, anchor)),
    )
    .map_err(|e| e.to_string())?;
    if !rest.is_cycle_of_length(cycle_len) {
        return Err(format!(
            "without the pendant edge {leaf}-{anchor}: {} edges on {} vertices, not C_{cycle_len}",
            rest.edge_count(),
            rest.vertices().len()
        ));
    }
    Ok(format!("C_{cycle_len} plus pendant edge {anchor}-{leaf}"))
}

fn check_two_lift(
    h: &ThreeGraph,
    union: &SimpleGraph,
    a: u32,
    b: u32,
) -> std::result::Result<String, String> {
    let lifted = two_lift_with(union, a, b).map_err(|e| e.to_string())?;
    if let Some(e) = h.edges().iter().find(|e| !lifted.contains_edge(**e)) {
        return Err(format!("edge {e:?} is not in the two-lift"));
    }
    // Second route: search for H inside a freshly labelled two-lift.
    let fresh = two_lift(union).map_err(|e| e.to_string())?;
    match find_embedding_uncapped(&fresh, h, Budget::default()) {
        Ok(Some(_)) => Ok(format!(
            "{} of {} two-lift edges used",
            h.edge_count(),
            lifted.edge_count()
        )),
        Ok(None) => Err("no embedding into the two-lift".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Outcome of [`check_kpartite_representation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum KPartiteOutcome {
    Represented {
        k: u32,
        /// Layer-`k` vertices as element sets: the edges of the `k`-graph.
        edges: Vec<Vec<u32>>,
        /// A partition of the ground elements used, parts ordered by smallest element.
        parts: Vec<Vec<u32>>,
    },
    NoPartition {
        k: u32,
        ground_elements: usize,
        /// Colouring nodes tried before the search was exhausted.
        explored: u64,
    },
}

impl KPartiteOutcome {
    pub fn parts(&self) -> Option<&[Vec<u32>]> {
        match self {
            KPartiteOutcome::Represented { parts, .. } => Some(parts),
            KPartiteOutcome::NoPartition { .. } => None,
        }
    }

    /// The 3-graph when `k = 3`.
    pub fn three_graph(&self) -> Option<ThreeGraph> {
        match self {
            KPartiteOutcome::Represented { k: 3, edges, .. } => {
                ThreeGraph::from_edges(edges.iter().map(|e| [e[0], e[1], e[2]])).ok()
            }
            _ => None,
        }
    }
}

/// Checks whether the layer-`k` vertices of `h` (which must live in layers
/// `k-1` and `k`) form a `k`-partite `k`-graph, by exhaustive colouring search.
pub fn check_kpartite_representation(
    h: &Subgraph,
    k: u32,
    budget: Budget,
) -> Result<KPartiteOutcome> {
    if k < 2 || k > h.dim() {
        return Err(Error::invalid(format!("k = {k} outside 2..={}", h.dim())));
    }
    let verts = h.vertices();
    if let Some(v) = verts.iter().find(|v| v.layer() + 1 != k && v.layer() != k) {
        return Err(Error::invalid(format!(
            "{v} lies outside layers {} and {k}",
            k - 1
        )));
    }
    let top: Vec<u32> = verts
        .iter()
        .filter(|v| v.layer() == k)
        .map(|v| v.mask())
        .collect();
    if top.is_empty() {
        return Err(Error::invalid(format!("no vertices in layer {k}")));
    }
    let ground_mask = top.iter().fold(0u32, |m, &t| m | t);
    let ground: Vec<u32> = bits(ground_mask).collect();
    // Elements that share an edge need different parts.
    let mut conflict: BTreeMap<u32, u32> = ground.iter().map(|&g| (g, 0)).collect();
    for &t in &top {
        for g in bits(t) {
            *conflict.get_mut(&g).expect("ground") |= t & !(1 << g);
        }
    }
    let meter = budget.meter();
    let mut tally = meter.tally();
    let mut colour = vec![u32::MAX; 32];
    let mut explored = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn assign(
        idx: usize,
        ground: &[u32],
        conflict: &BTreeMap<u32, u32>,
        colour: &mut [u32],
        used: u32,
        k: u32,
        explored: &mut u64,
        tally: &mut crate::budget::Tally<'_>,
    ) -> Option<bool> {
        let Some(&g) = ground.get(idx) else {
            return Some(true);
        };
        // New colours are opened in order, so permuted colourings are skipped.
        for c in 0..(used + 1).min(k) {
            let clash = bits(conflict[&g]).any(|o| colour[o as usize] == c);
            if clash {
                continue;
            }
            *explored += 1;
            if !tally.step() {
                return None;
            }
            colour[g as usize] = c;
            if assign(
                idx + 1,
                ground,
                conflict,
                colour,
                used.max(c + 1),
                k,
                explored,
                tally,
            )? {
                return Some(true);
            }
            colour[g as usize] = u32::MAX;
        }
        Some(false)
    }

    let found = assign(
        0,
        &ground,
        &conflict,
        &mut colour,
        0,
        k,
        &mut explored,
        &mut tally,
    );
    drop(tally);
    meter.check(|| format!("{k}-partition search over {} elements", ground.len()))?;
    let edges: Vec<Vec<u32>> = top
        .iter()
        .map(|&t| bits(t).map(|b| b + 1).collect())
        .collect();
    // Every edge has k elements in k parts, so pairwise-distinct colours mean one element per part.
    Ok(match found {
        Some(true) => {
            let mut parts: Vec<Vec<u32>> = (0..k)
                .map(|c| {
                    ground
                        .iter()
                        .filter(|&&g| colour[g as usize] == c)
                        .map(|&g| g + 1)
                        .collect()
                })
                .filter(|p: &Vec<u32>| !p.is_empty())
                .collect();
            parts.sort();
            KPartiteOutcome::Represented { k, edges, parts }
        }
        _ => KPartiteOutcome::NoPartition {
            k,
            ground_elements: ground.len(),
            explored,
        },
    })
}
