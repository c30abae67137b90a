//! Canonical labelling for small graphs by individualisation–refinement.
//!
//! The search tree refines an ordered partition by neighbour counts,
//! individualises vertices of the first non-singleton cell, and keeps the
//! least adjacency certificate over all leaves. Twin vertices in a target
//! cell are explored once, and subtrees whose fixed certificate prefix is
//! already worse than the incumbent are cut.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Exactness bound: the certificate is a 120-bit string for 16 vertices.
pub const MAX_CANON_VERTICES: usize = 16;

/// Isomorphism-invariant representative: sorted edges under the canonical relabelling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n, &self.edges).expect("canonical forms hold simple edge lists")
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::UnsupportedSize {
            what: "canonical labelling",
            n,
            max: MAX_CANON_VERTICES,
        });
    }
    let rows: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |acc, w| acc | 1 << w))
        .collect();
    let mut search = Search {
        n,
        rows: &rows,
        best: None,
    };
    let root = search.refine(vec![(0..n).collect()]);
    search.descend(root);
    let (_, order) = search.best.expect("the search tree has at least one leaf");
    let mut label = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        label[v] = pos;
    }
    let mut edges: Vec<_> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (label[u], label[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    Ok(CanonicalForm { n, edges })
}

/// Whether two graphs (each on at most 16 vertices) are isomorphic.
pub fn isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    Ok(g.n() == h.n() && g.edge_count() == h.edge_count() && canonical_form(g)? == canonical_form(h)?)
}

type Partition = Vec<Vec<VertexId>>;

struct Search<'a> {
    n: usize,
    rows: &'a [u32],
    best: Option<(u128, Vec<VertexId>)>,
}

/// Number of certificate bits fixed once the first `m` positions are labelled.
fn prefix_bits(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

impl Search<'_> {
    fn refine(&self, mut cells: Partition) -> Partition {
        loop {
            let masks: Vec<u32> = cells
                .iter()
                .map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v))
                .collect();
            let mut next: Partition = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, VertexId)> = cell
                    .iter()
                    .map(|&v| {
                        let sig = masks.iter().map(|m| (self.rows[v] & m).count_ones()).collect();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            let split = next.len() > cells.len();
            cells = next;
            if !split {
                return cells;
            }
        }
    }

    /// Certificate bits for the labelling that places `order[i]` at position `i`.
    /// Pairs are taken column by column: (0,1), (0,2), (1,2), (0,3), ...; the
    /// first pair is the most significant bit.
    fn certificate(&self, order: &[VertexId], m: usize) -> u128 {
        let total = prefix_bits(self.n);
        let mut cert = 0u128;
        let mut idx = 0;
        for j in 1..m {
            for i in 0..j {
                if self.rows[order[i]] >> order[j] & 1 == 1 {
                    cert |= 1u128 << (total - 1 - idx);
                }
                idx += 1;
            }
        }
        cert
    }

    fn descend(&mut self, cells: Partition) {
        let singles = cells.iter().take_while(|c| c.len() == 1).count();
        let order: Vec<VertexId> = cells.iter().take(singles).map(|c| c[0]).collect();
        if let Some((best, _)) = &self.best {
            let bits = prefix_bits(singles);
            if bits > 0 {
                let total = prefix_bits(self.n);
                let mask = ((1u128 << bits) - 1) << (total - bits);
                let here = self.certificate(&order, singles) & mask;
                if here > best & mask {
                    return;
                }
            }
        }
        if singles == cells.len() {
            let cert = self.certificate(&order, self.n);
            if self.best.as_ref().is_none_or(|(b, _)| cert < *b) {
                self.best = Some((cert, order));
            }
            return;
        }
        let target = cells.iter().position(|c| c.len() > 1).expect("non-discrete partition");
        let cell = &cells[target];
        let mut tried: Vec<VertexId> = Vec::new();
        for &v in cell {
            // (v w) swaps twins and fixes every individualised vertex, so it
            // maps this subtree onto an already explored one.
            let twin = tried.iter().any(|&w| {
                self.rows[v] & !(1 << w) == self.rows[w] & !(1 << v)
            });
            if twin {
                continue;
            }
            tried.push(v);
            let mut child: Partition = Vec::with_capacity(cells.len() + 1);
            child.extend(cells[..target].iter().cloned());
            child.push(vec![v]);
            child.push(cell.iter().copied().filter(|&w| w != v).collect());
            child.extend(cells[target + 1..].iter().cloned());
            let refined = self.refine(child);
            self.descend(refined);
        }
    }
}
