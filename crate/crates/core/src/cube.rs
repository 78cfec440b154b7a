//! The hypercube `Q_n`: vertices are subsets of `[n] = {1, ..., n}` stored as
//! bitmasks, edges join a set to each of its one-element extensions.
//!
//! Element `i` of the ground set lives in bit `i - 1`. Edges are always
//! oriented from the smaller set to the larger one, so an edge is identified
//! by its lower endpoint plus the added element (its *direction*).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported dimension. The full `Q_24` edge bitset is 50 MB.
pub const MAX_DIM: u32 = 24;

fn check_dim(n: u32) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::invalid(format!(
            "dimension {n} outside 1..={MAX_DIM}"
        )));
    }
    Ok(())
}

/// `n * 2^(n-1)`, the edge count of `Q_n`.
pub fn cube_edge_count(n: u32) -> u64 {
    if n == 0 {
        0
    } else {
        u64::from(n) << (n - 1)
    }
}

/// A vertex of `Q_dim`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    dim: u8,
    mask: u32,
}

impl Vertex {
    pub fn from_mask(dim: u32, mask: u32) -> Result<Self> {
        check_dim(dim)?;
        if dim < 32 && mask >> dim != 0 {
            return Err(Error::invalid(format!(
                "mask {mask:#b} has elements beyond {dim}"
            )));
        }
        Ok(Vertex {
            dim: dim as u8,
            mask,
        })
    }

    /// Builds a vertex from 1-based ground elements. Duplicates are rejected.
    pub fn from_elements(dim: u32, elements: &[u32]) -> Result<Self> {
        check_dim(dim)?;
        let mut mask = 0u32;
        for &e in elements {
            if e == 0 || e > dim {
                return Err(Error::invalid(format!("element {e} outside 1..={dim}")));
            }
            let bit = 1 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::invalid(format!("element {e} repeated")));
            }
            mask |= bit;
        }
        Ok(Vertex {
            dim: dim as u8,
            mask,
        })
    }

    pub(crate) fn new_unchecked(dim: u32, mask: u32) -> Self {
        debug_assert!(dim <= MAX_DIM && (dim == 32 || mask >> dim == 0));
        Vertex {
            dim: dim as u8,
            mask,
        }
    }

    pub fn dim(self) -> u32 {
        u32::from(self.dim)
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    /// Layer index, i.e. the size of the subset.
    pub fn layer(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn contains(self, element: u32) -> bool {
        element >= 1 && element <= self.dim() && self.mask & (1 << (element - 1)) != 0
    }

    /// Sorted 1-based elements.
    pub fn elements(self) -> Vec<u32> {
        bits(self.mask).map(|b| b + 1).collect()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Iterates the set bit positions of `mask` in increasing order.
pub(crate) fn bits(mut mask: u32) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros();
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// True iff one vertex covers the other.
pub fn are_adjacent(u: Vertex, v: Vertex) -> Result<bool> {
    if u.dim != v.dim {
        return Err(Error::invalid(format!(
            "vertices {u} and {v} live in Q_{} and Q_{}",
            u.dim, v.dim
        )));
    }
    Ok((u.mask ^ v.mask).is_power_of_two())
}

/// All `C(n, k)` vertices of layer `k`, in increasing mask order.
pub fn layer(n: u32, k: u32) -> Result<Vec<Vertex>> {
    check_dim(n)?;
    if k > n {
        return Err(Error::invalid(format!("layer {k} outside 0..={n}")));
    }
    if k == 0 {
        return Ok(vec![Vertex::new_unchecked(n, 0)]);
    }
    let mut out = Vec::new();
    let limit = 1u64 << n;
    let mut m: u64 = (1u64 << k) - 1;
    // Gosper's hack: next mask with the same popcount.
    while m < limit {
        out.push(Vertex::new_unchecked(n, m as u32));
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    Ok(out)
}

/// An edge of `Q_n`, stored as `lo ⊂ hi` with `|hi| = |lo| + 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeEdge {
    lo: Vertex,
    hi: Vertex,
}

impl CubeEdge {
    /// Accepts the endpoints in either order.
    pub fn new(u: Vertex, v: Vertex) -> Result<Self> {
        if !are_adjacent(u, v)? {
            return Err(Error::invalid(format!(
                "{u} and {v} are not a covering pair"
            )));
        }
        Ok(if u.mask < v.mask {
            CubeEdge { lo: u, hi: v }
        } else {
            CubeEdge { lo: v, hi: u }
        })
    }

    pub(crate) fn from_lo_dir(dim: u32, lo: u32, dir: u32) -> Self {
        debug_assert!(lo & (1 << dir) == 0);
        CubeEdge {
            lo: Vertex::new_unchecked(dim, lo),
            hi: Vertex::new_unchecked(dim, lo | (1 << dir)),
        }
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    /// The ground element added along this edge (1-based).
    pub fn element(self) -> u32 {
        self.direction() + 1
    }

    pub(crate) fn direction(self) -> u32 {
        (self.lo.mask ^ self.hi.mask).trailing_zeros()
    }

    pub fn dim(self) -> u32 {
        self.lo.dim()
    }
}

impl fmt::Display for CubeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl fmt::Debug for CubeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Position of the edge `(lo, lo + dir)` in a dense per-edge array of length `n * 2^n`.
#[inline]
pub(crate) fn edge_slot(dim: u32, lo: u32, dir: u32) -> usize {
    lo as usize * dim as usize + dir as usize
}

/// A spanning subgraph of `Q_n` given by its edge set.
///
/// Edges are kept in a dense bitset indexed by `(lower endpoint, direction)`,
/// so membership, insertion and neighbour scans are all O(1) per edge.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgraph {
    dim: u32,
    words: Vec<u64>,
    len: usize,
}

impl Subgraph {
    /// Edgeless subgraph of `Q_dim`.
    pub fn empty(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        let slots = (dim as usize) << dim;
        Ok(Subgraph {
            dim,
            words: vec![0; slots.div_ceil(64)],
            len: 0,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub(crate) fn has_slot(&self, lo: u32, dir: u32) -> bool {
        let s = edge_slot(self.dim, lo, dir);
        self.words[s / 64] >> (s % 64) & 1 == 1
    }

    /// Edge test on raw masks; `u` and `v` need not be ordered.
    #[inline]
    pub(crate) fn has_mask_edge(&self, u: u32, v: u32) -> bool {
        let d = u ^ v;
        d.is_power_of_two() && self.has_slot(u & v, d.trailing_zeros())
    }

    fn check_edge(&self, e: CubeEdge) -> Result<()> {
        if e.dim() != self.dim {
            return Err(Error::invalid(format!("edge {e} is not in Q_{}", self.dim)));
        }
        Ok(())
    }

    /// Inserts an edge; returns false if it was already present.
    pub fn insert(&mut self, e: CubeEdge) -> Result<bool> {
        self.check_edge(e)?;
        let s = edge_slot(self.dim, e.lo.mask, e.direction());
        let bit = 1u64 << (s % 64);
        if self.words[s / 64] & bit != 0 {
            return Ok(false);
        }
        self.words[s / 64] |= bit;
        self.len += 1;
        Ok(true)
    }

    /// Inserts `{u, v}`, rejecting pairs that are not covering pairs.
    pub fn insert_pair(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.insert(CubeEdge::new(u, v)?)
    }

    pub fn remove(&mut self, e: CubeEdge) -> bool {
        if e.dim() != self.dim {
            return false;
        }
        let s = edge_slot(self.dim, e.lo.mask, e.direction());
        let bit = 1u64 << (s % 64);
        if self.words[s / 64] & bit == 0 {
            return false;
        }
        self.words[s / 64] &= !bit;
        self.len -= 1;
        true
    }

    pub fn contains(&self, e: CubeEdge) -> bool {
        e.dim() == self.dim && self.has_slot(e.lo.mask, e.direction())
    }

    /// Edges in canonical order: by lower endpoint mask, then direction.
    pub fn edges(&self) -> impl Iterator<Item = CubeEdge> + '_ {
        let dim = self.dim;
        self.words.iter().enumerate().flat_map(move |(w, &word)| {
            bits64(word).map(move |b| {
                let s = w * 64 + b as usize;
                CubeEdge::from_lo_dir(dim, (s / dim as usize) as u32, (s % dim as usize) as u32)
            })
        })
    }

    /// Neighbour masks of `mask` inside this subgraph, in increasing direction order.
    #[inline]
    pub(crate) fn neighbor_masks(&self, mask: u32) -> impl Iterator<Item = u32> + '_ {
        (0..self.dim).filter_map(move |d| {
            let nb = mask ^ (1 << d);
            if self.has_slot(mask & nb, d) {
                Some(nb)
            } else {
                None
            }
        })
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.neighbor_masks(v.mask)
            .map(|m| Vertex::new_unchecked(self.dim, m))
            .collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbor_masks(v.mask).count()
    }

    /// Vertices incident to at least one edge, sorted.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut set = BTreeSet::new();
        for e in self.edges() {
            set.insert(e.lo);
            set.insert(e.hi);
        }
        set.into_iter().collect()
    }

    pub fn from_edges(dim: u32, edges: impl IntoIterator<Item = CubeEdge>) -> Result<Self> {
        let mut g = Subgraph::empty(dim)?;
        for e in edges {
            g.insert(e)?;
        }
        Ok(g)
    }

    /// Renders the edge-list interchange format: `dim=<n>` then one `{..}-{..}` edge per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("dim={}\n", self.dim);
        for e in self.edges() {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the edge-list format. Blank lines and `#` comments are skipped;
    /// lines starting with `cycle:` are ignored here (see the cycle module).
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut g: Option<Subgraph> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("cycle:") {
                continue;
            }
            let lineno = i + 1;
            match g.as_mut() {
                None => {
                    let n = line
                        .strip_prefix("dim=")
                        .and_then(|s| s.trim().parse::<u32>().ok())
                        .ok_or_else(|| Error::Parse {
                            line: lineno,
                            message: format!("expected `dim=<n>` header, found `{line}`"),
                        })?;
                    g = Some(Subgraph::empty(n)?);
                }
                Some(g) => {
                    let (a, b) = split_edge(line).ok_or_else(|| Error::Parse {
                        line: lineno,
                        message: format!("expected `{{..}}-{{..}}`, found `{line}`"),
                    })?;
                    let wrap = |e: Error| Error::Parse {
                        line: lineno,
                        message: e.to_string(),
                    };
                    let u = parse_vertex(g.dim, a).map_err(wrap)?;
                    let v = parse_vertex(g.dim, b).map_err(wrap)?;
                    g.insert_pair(u, v).map_err(wrap)?;
                }
            }
        }
        g.ok_or(Error::Parse {
            line: 0,
            message: "missing `dim=<n>` header".into(),
        })
    }
}

impl fmt::Debug for Subgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgraph")
            .field("dim", &self.dim)
            .field("edges", &self.len)
            .finish()
    }
}

fn bits64(mut word: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let b = word.trailing_zeros();
            word &= word - 1;
            Some(b)
        }
    })
}

fn split_edge(line: &str) -> Option<(&str, &str)> {
    let close = line.find('}')?;
    let (a, rest) = line.split_at(close + 1);
    let b = rest.trim_start().strip_prefix('-')?;
    Some((a.trim(), b.trim()))
}

/// Parses a brace set such as `{1,3,4}` or `{}` into a vertex of `Q_dim`.
pub fn parse_vertex(dim: u32, s: &str) -> Result<Vertex> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::invalid(format!("`{s}` is not a brace set")))?;
    let mut elements = Vec::new();
    for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let e = tok
            .parse::<u32>()
            .map_err(|_| Error::invalid(format!("`{tok}` is not a ground element")))?;
        elements.push(e);
    }
    Vertex::from_elements(dim, &elements)
}

/// The full hypercube `Q_n`.
pub fn build_qn(n: u32) -> Result<Subgraph> {
    let mut g = Subgraph::empty(n)?;
    for lo in 0..(1u32 << n) {
        for d in bits(!lo & ((1u64 << n) - 1) as u32) {
            let s = edge_slot(n, lo, d);
            g.words[s / 64] |= 1 << (s % 64);
        }
    }
    g.len = cube_edge_count(n) as usize;
    Ok(g)
}
