//! Simple undirected graphs over dense vertex ids `0..n`.
//!
//! Each vertex owns a fixed-width bitset row, so neighbourhood intersections
//! (the detector's inner loop) cost `O(n / 64)`.

use std::fmt;

use crate::error::{Error, Result};

/// Dense 0-based vertex index, checked against the owning graph's order.
pub type VertexId = usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            edges: 0,
        }
    }

    pub fn builder(n: usize) -> GraphBuilder {
        GraphBuilder {
            graph: Graph::empty(n),
        }
    }

    /// Builds a graph from an edge list; loops and repeated edges are errors.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut b = Graph::builder(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// `K_t`.
    pub fn complete(t: usize) -> Self {
        let mut b = Graph::builder(t);
        for u in 0..t {
            for v in u + 1..t {
                b.insert_unchecked(u, v);
            }
        }
        b.build()
    }

    /// `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let mut b = Graph::builder(leaves + 1);
        for v in 1..=leaves {
            b.insert_unchecked(0, v);
        }
        b.build()
    }

    /// The cycle `0-1-...-(t-1)-0`; needs `t >= 3`.
    pub fn cycle(t: usize) -> Result<Self> {
        if t < 3 {
            return Err(Error::invalid(format!("a cycle needs at least 3 vertices, got {t}")));
        }
        let mut b = Graph::builder(t);
        for i in 0..t {
            b.add_edge(i, (i + 1) % t)?;
        }
        Ok(b.build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    fn row(&self, v: VertexId) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Raw bitset row of `v`; bit `w` is set iff `vw` is an edge.
    pub fn neighbor_bits(&self, v: VertexId) -> Result<&[u64]> {
        self.check(v)?;
        Ok(self.row(v))
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    #[inline]
    fn bit(&self, u: VertexId, v: VertexId) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Whether `uv` is an edge. Out-of-range ids are simply not adjacent.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && v < self.n && self.bit(u, v)
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check(v)?;
        Ok(self.degree_unchecked(v))
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, v: VertexId) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree_unchecked(v)).collect()
    }

    /// `|N(u) ∩ N(v)|` for distinct `u`, `v`.
    pub fn common_neighbor_count(&self, u: VertexId, v: VertexId) -> Result<usize> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::invalid("common neighbours of a vertex with itself"));
        }
        Ok(self.common_unchecked(u, v))
    }

    #[inline]
    pub(crate) fn common_unchecked(&self, u: VertexId, v: VertexId) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `Δ(G)`; undefined on the empty vertex set.
    pub fn max_degree(&self) -> Result<usize> {
        if self.n == 0 {
            return Err(Error::invalid("maximum degree of a graph with no vertices"));
        }
        Ok((0..self.n).map(|v| self.degree_unchecked(v)).max().unwrap_or(0))
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: VertexId) -> Neighbors<'_> {
        let row = if v < self.n { self.row(v) } else { &[] };
        Neighbors {
            row,
            word: 0,
            cur: row.first().copied().unwrap_or(0),
        }
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// `self ⊎ other`; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut b = Graph::builder(self.n + other.n);
        for (u, v) in self.edges() {
            b.insert_unchecked(u, v);
        }
        for (u, v) in other.edges() {
            b.insert_unchecked(u + self.n, v + self.n);
        }
        b.build()
    }

    /// Copy of `self` with one more edge.
    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        let mut b = GraphBuilder { graph: self.clone() };
        b.add_edge(u, v)?;
        Ok(b.build())
    }

    /// Renames vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[VertexId]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::invalid(format!(
                "permutation has length {} but graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("relabelling is not a permutation"));
            }
        }
        let mut b = Graph::builder(self.n);
        for (u, v) in self.edges() {
            b.insert_unchecked(perm[u], perm[v]);
        }
        Ok(b.build())
    }

    /// Induced subgraph on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[VertexId]) -> Result<Graph> {
        for &v in vertices {
            self.check(v)?;
        }
        let mut b = Graph::builder(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if u == v {
                    return Err(Error::invalid(format!("vertex {u} listed twice")));
                }
                if self.bit(u, v) {
                    b.insert_unchecked(i, j);
                }
            }
        }
        Ok(b.build())
    }

    /// Vertex sets of the connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Number of `K_k` subgraphs.
    pub fn count_cliques(&self, k: usize) -> u64 {
        match k {
            0 => 1,
            1 => self.n as u64,
            2 => self.edges as u64,
            _ => {
                let mut total = 0;
                for v in 0..self.n {
                    let cand = self.later_neighbors(v);
                    total += self.extend_cliques(&cand, k - 1);
                }
                total
            }
        }
    }

    fn later_neighbors(&self, v: VertexId) -> Vec<u64> {
        let mut cand = self.row(v).to_vec();
        for (i, w) in cand.iter_mut().enumerate() {
            let lo = i * 64;
            if lo + 64 <= v + 1 {
                *w = 0;
            } else if lo <= v {
                let keep = v + 1 - lo;
                *w &= !0u64 << keep;
            }
        }
        cand
    }

    fn extend_cliques(&self, cand: &[u64], need: usize) -> u64 {
        if need == 1 {
            return cand.iter().map(|w| w.count_ones() as u64).sum();
        }
        let mut total = 0;
        for (i, &word) in cand.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let v = i * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let next: Vec<u64> = self
                    .later_neighbors(v)
                    .iter()
                    .zip(cand)
                    .map(|(a, b)| a & b)
                    .collect();
                if next.iter().any(|&w| w != 0) {
                    total += self.extend_cliques(&next, need - 1);
                }
            }
        }
        total
    }

    /// Checks symmetry, loop-freeness and the handshake identity.
    pub fn check_invariants(&self) -> bool {
        let mut deg_sum = 0;
        for u in 0..self.n {
            if self.bit(u, u) {
                return false;
            }
            for v in self.neighbors(u) {
                if v >= self.n || !self.bit(v, u) {
                    return false;
                }
            }
            deg_sum += self.degree_unchecked(u);
        }
        // no stray bits past n in the last word
        if !self.n.is_multiple_of(64) {
            let mask = !0u64 << (self.n % 64);
            for u in 0..self.n {
                if self.rows[u * self.words + self.words - 1] & mask != 0 {
                    return false;
                }
            }
        }
        deg_sum == 2 * self.edges
    }
}

pub struct Neighbors<'a> {
    row: &'a [u64],
    word: usize,
    cur: u64,
}

impl Iterator for Neighbors<'_> {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
            self.cur = *self.row.get(self.word)?;
        }
    }
}

/// The only mutable view of a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    graph: Graph,
}

impl GraphBuilder {
    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.graph.check(u)?;
        self.graph.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.graph.bit(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert_unchecked(u, v);
        Ok(())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.graph.has_edge(u, v)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.graph.degree_unchecked(v)
    }

    fn insert_unchecked(&mut self, u: VertexId, v: VertexId) {
        let g = &mut self.graph;
        g.rows[u * g.words + v / 64] |= 1 << (v % 64);
        g.rows[v * g.words + u / 64] |= 1 << (u % 64);
        g.edges += 1;
    }

    pub fn build(self) -> Graph {
        debug_assert!(self.graph.check_invariants());
        self.graph
    }
}
