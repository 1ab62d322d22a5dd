//! Simple undirected graphs on `0..n` with packed bitset adjacency rows.
//!
//! Edge-list text format:
//!
//! ```text
//! n m
//! u v      (m lines, 0 ≤ u, v < n, u ≠ v, no repeated edges)
//! ```
//!
//! Blank lines are ignored. The canonical form written by
//! [`Graph::to_edge_list`] lists each edge once with `u < v`, sorted
//! lexicographically.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::number_theory::{is_prime, quadratic_residues};

const WORD: usize = 64;
/// Largest order accepted by the edge-list parser.
pub const MAX_PARSE_ORDER: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    bits: Vec<u64>,
}

/// Sorted, duplicate-free vertex indices of some host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    /// Sorts and validates `members` against a host of order `host_order`.
    pub fn new(mut members: Vec<usize>, host_order: usize) -> Result<Self> {
        members.sort_unstable();
        if let Some(&bad) = members.iter().find(|&&v| v >= host_order) {
            return Err(Error::Domain(format!(
                "vertex {bad} out of range for order {host_order}"
            )));
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("duplicate vertex in set".into()));
        }
        Ok(Self { members })
    }

    pub fn all(order: usize) -> Self {
        Self {
            members: (0..order).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl Graph {
    /// Edgeless graph of the given order.
    pub fn empty(order: usize) -> Self {
        let words = order.div_ceil(WORD);
        Self {
            order,
            words,
            bits: vec![0; order * words],
        }
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Self::empty(order);
        for u in 0..order {
            for v in (u + 1)..order {
                g.set_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(order);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; rejects self-loops, out-of-range vertices and repeated edges.
    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.order || v >= self.order {
            return Err(Error::Domain(format!(
                "edge ({u}, {v}) out of range for order {}",
                self.order
            )));
        }
        if u == v {
            return Err(Error::Domain(format!("self-loop at {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::Domain(format!("duplicate edge ({u}, {v})")));
        }
        self.set_edge(u, v);
        Ok(())
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Packed adjacency row of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&u| self.has_edge(v, u))
    }

    /// e(G).
    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order {
            out.extend(((u + 1)..self.order).filter(|&v| self.has_edge(u, v)).map(|v| (u, v)));
        }
        out
    }

    /// Number of edges with both ends in `mask` (a bitset over this graph's vertices).
    pub fn induced_edges_in_mask(&self, mask: &[u64]) -> usize {
        let mut twice = 0;
        for (w, &word) in mask.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let v = w * WORD + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                twice += self
                    .row(v)
                    .iter()
                    .zip(mask)
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum::<usize>();
            }
        }
        twice / 2
    }

    /// G[X]; vertex `i` of the result is `x.members()[i]`.
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<Self> {
        if let Some(&bad) = x.members.iter().find(|&&v| v >= self.order) {
            return Err(Error::Domain(format!(
                "vertex {bad} out of range for order {}",
                self.order
            )));
        }
        let mut g = Self::empty(x.len());
        for (i, &u) in x.members.iter().enumerate() {
            for (j, &v) in x.members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.order);
        for u in 0..self.order {
            for v in (u + 1)..self.order {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// 0/1 symmetric adjacency matrix with zero diagonal.
    pub fn adjacency_matrix(&self) -> Result<RealMatrix> {
        let n = self.order;
        let mut m = RealMatrix::zeros(n, n)?;
        for u in 0..n {
            for v in self.neighbors(u) {
                m.set(u, v, 1.0);
            }
        }
        Ok(m)
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let (n, m) = parse_pair(header).ok_or_else(|| Error::Parse {
            line: hline,
            message: "header must be `n m` (two nonnegative integers)".into(),
        })?;
        if n > MAX_PARSE_ORDER {
            return Err(Error::Parse {
                line: hline,
                message: format!("order {n} exceeds the supported maximum {MAX_PARSE_ORDER}"),
            });
        }
        if n * n.saturating_sub(1) / 2 < m {
            return Err(Error::Parse {
                line: hline,
                message: format!("{m} edges exceed the maximum for order {n}"),
            });
        }
        let mut g = Self::empty(n);
        let mut seen = 0;
        for (lineno, line) in lines {
            let perr = |message: String| Error::Parse {
                line: lineno,
                message,
            };
            if seen == m {
                return Err(perr(format!("expected {m} edges, found more")));
            }
            let (u, v) = parse_pair(line).ok_or_else(|| perr("malformed edge line".into()))?;
            g.try_add_edge(u, v).map_err(|e| match e {
                Error::Domain(msg) => perr(msg),
                other => other,
            })?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    /// Canonical edge-list text.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.order, edges.len());
        for (u, v) in edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

/// Paley graph on `0..p`: `i ~ j` iff `i − j` is a nonzero square mod `p`.
pub fn paley_graph(p: u64) -> Result<Graph> {
    if !is_prime(p) || p % 4 != 1 {
        return Err(Error::Domain(format!(
            "Paley graph needs a prime p ≡ 1 (mod 4), got {p}"
        )));
    }
    let n = p as usize;
    let mut residue = vec![false; n];
    for r in quadratic_residues(p)? {
        residue[r as usize] = true;
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if residue[(j - i) % n] {
                g.set_edge(i, j);
            }
        }
    }
    Ok(g)
}
