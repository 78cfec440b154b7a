//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's search code; graphs are read only through their edge lists.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cubecycle::{Subgraph, ThreeGraph};

pub type Adj = BTreeMap<u32, Vec<u32>>;

pub fn adjacency(g: &Subgraph) -> Adj {
    let mut adj: Adj = BTreeMap::new();
    for e in g.edges() {
        let (u, v) = (e.lo().mask(), e.hi().mask());
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    adj
}

pub fn edge_pairs(g: &Subgraph) -> BTreeSet<(u32, u32)> {
    g.edges().map(|e| (e.lo().mask(), e.hi().mask())).collect()
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed walks of length `len` through distinct vertices, counted from every
/// start in both directions, then divided by `2 len`.
pub fn closed_walk_cycle_count(adj: &Adj, len: usize) -> u64 {
    fn walk(adj: &Adj, start: u32, cur: u32, left: usize, seen: &mut Vec<u32>) -> u64 {
        if left == 0 {
            return u64::from(cur == start);
        }
        let mut total = 0;
        for &nb in &adj[&cur] {
            if nb == start && left == 1 {
                total += 1;
            } else if nb != start && !seen.contains(&nb) {
                seen.push(nb);
                total += walk(adj, start, nb, left - 1, seen);
                seen.pop();
            }
        }
        total
    }
    let walks: u64 = adj
        .keys()
        .map(|&s| walk(adj, s, s, len, &mut Vec::new()))
        .sum();
    assert_eq!(walks % (2 * len as u64), 0);
    walks / (2 * len as u64)
}

/// All cycles of length `len` as sorted edge sets, by plain path extension.
pub fn naive_cycles(adj: &Adj, len: usize) -> BTreeSet<Vec<(u32, u32)>> {
    fn extend(adj: &Adj, len: usize, path: &mut Vec<u32>, out: &mut BTreeSet<Vec<(u32, u32)>>) {
        let cur = *path.last().unwrap();
        if path.len() == len {
            if adj[&cur].contains(&path[0]) {
                let mut edges: Vec<(u32, u32)> = (0..len)
                    .map(|i| {
                        let (a, b) = (path[i], path[(i + 1) % len]);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                edges.sort_unstable();
                out.insert(edges);
            }
            return;
        }
        for &nb in &adj[&cur] {
            if !path.contains(&nb) {
                path.push(nb);
                extend(adj, len, path, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for &s in adj.keys() {
        extend(adj, len, &mut vec![s], &mut out);
    }
    out
}

/// `tr(A^4) = 8 c4 + 2 m + 4 Σ C(d, 2)` solved for `c4`.
pub fn trace_c4(adj: &Adj) -> u64 {
    let verts: Vec<u32> = adj.keys().copied().collect();
    let idx: BTreeMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let mut a = vec![vec![0u64; n]; n];
    for (&v, nbs) in adj {
        for &w in nbs {
            a[idx[&v]][idx[&w]] = 1;
        }
    }
    let mul = |x: &Vec<Vec<u64>>, y: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        let mut z = vec![vec![0u64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if x[i][k] != 0 {
                    for j in 0..n {
                        z[i][j] += x[i][k] * y[k][j];
                    }
                }
            }
        }
        z
    };
    let a2 = mul(&a, &a);
    let a4 = mul(&a2, &a2);
    let trace: u64 = (0..n).map(|i| a4[i][i]).sum();
    let m: u64 = adj.values().map(|v| v.len() as u64).sum::<u64>() / 2;
    let pairs: u64 = adj.values().map(|v| binom(v.len() as u64, 2)).sum();
    (trace - 2 * m - 4 * pairs) / 8
}

/// 4-cycles of a hypercube subgraph are exactly its complete 2-faces.
pub fn cube_has_square(dim: u32, edges: &BTreeSet<(u32, u32)>) -> bool {
    let has = |u: u32, v: u32| edges.contains(&(u.min(v), u.max(v)));
    for v in 0..(1u32 << dim) {
        for i in 0..dim {
            for j in i + 1..dim {
                let (a, b) = (v ^ (1 << i), v ^ (1 << j));
                let c = a ^ (1 << j);
                if has(v, a) && has(a, c) && has(c, b) && has(b, v) {
                    return true;
                }
            }
        }
    }
    false
}

/// Does a simple graph on `0..n` (edges as unordered pairs) contain a 4-cycle?
pub fn graph_has_c4(edges: &BTreeSet<(u32, u32)>) -> bool {
    let has = |u: u32, v: u32| edges.contains(&(u.min(v), u.max(v)));
    let verts: BTreeSet<u32> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let vs: Vec<u32> = verts.into_iter().collect();
    // Two vertices with two common neighbours span a 4-cycle.
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            let common = vs
                .iter()
                .filter(|&&z| z != x && z != y && has(x, z) && has(y, z))
                .count();
            if common >= 2 {
                return true;
            }
        }
    }
    false
}

/// Largest common link over all apex pairs; ties to the smallest `(a, b)`.
pub type ApexPairs = (u32, u32, Vec<(u32, u32)>);

pub fn k2q_scan(g: &ThreeGraph) -> ApexPairs {
    let mut links: BTreeMap<u32, BTreeSet<(u32, u32)>> = BTreeMap::new();
    for &[x, y, z] in g.edges() {
        links.entry(x).or_default().insert((y, z));
        links.entry(y).or_default().insert((x, z));
        links.entry(z).or_default().insert((x, y));
    }
    let verts: Vec<u32> = g.vertices().iter().copied().collect();
    let empty = BTreeSet::new();
    let mut best: Option<ApexPairs> = None;
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            let la = links.get(&a).unwrap_or(&empty);
            let lb = links.get(&b).unwrap_or(&empty);
            let common: Vec<(u32, u32)> = la
                .intersection(lb)
                .copied()
                .filter(|&(y, z)| y != a && y != b && z != a && z != b)
                .collect();
            if best.as_ref().is_none_or(|bst| common.len() > bst.2.len()) {
                best = Some((a, b, common));
            }
        }
    }
    best.expect("at least two vertices")
}

/// `Σ_{pairs} C(deg, 2)` from a direct scan over pairs and vertices.
pub fn star_scan(g: &ThreeGraph) -> u64 {
    let verts: Vec<u32> = g.vertices().iter().copied().collect();
    let mut total = 0;
    for (i, &y) in verts.iter().enumerate() {
        for &z in &verts[i + 1..] {
            let d = verts
                .iter()
                .filter(|&&x| {
                    x != y && x != z && {
                        let mut t = [x, y, z];
                        t.sort_unstable();
                        g.contains_edge(t)
                    }
                })
                .count() as u64;
            total += binom(d, 2);
        }
    }
    total
}
