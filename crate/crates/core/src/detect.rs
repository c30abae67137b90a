//! Double-star containment.
//!
//! An edge `uv` hosts `S_{a,b}` with `u` as the `a`-centre exactly when
//!
//! ```text
//! d(u) - 1 >= a,   d(v) - 1 >= b,   (d(u) - 1) + (d(v) - 1) - |N(u) ∩ N(v)| >= a + b.
//! ```
//!
//! Exclusive neighbours of either centre can always be used as that centre's
//! leaves; only the common neighbourhood is contested, and the last inequality
//! is the Hall condition for sharing it.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// The double star `S_{a,b}`: central edge `uv`, `a` leaves on `u`, `b` on `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DoubleStar {
    a: usize,
    b: usize,
}

impl DoubleStar {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::invalid(format!(
                "S_{{{a},{b}}} needs at least one leaf on each centre"
            )));
        }
        Ok(DoubleStar { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn swapped(&self) -> Self {
        DoubleStar { a: self.b, b: self.a }
    }

    /// Vertices of the pattern graph.
    pub fn order(&self) -> usize {
        self.a + self.b + 2
    }

    /// The pattern itself: centres 0 and 1, leaves `2..2+a` on 0 and the rest on 1.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::builder(self.order());
        g.add_edge(0, 1).expect("fresh graph");
        for i in 0..self.a {
            g.add_edge(0, 2 + i).expect("fresh graph");
        }
        for j in 0..self.b {
            g.add_edge(1, 2 + self.a + j).expect("fresh graph");
        }
        g.build()
    }
}

/// An explicit copy of `S_{a,b}` inside a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub center_u: VertexId,
    pub center_v: VertexId,
    pub leaves_u: Vec<VertexId>,
    pub leaves_v: Vec<VertexId>,
}

impl Witness {
    /// Checks the witness edge by edge against `g`.
    pub fn is_valid_in(&self, g: &Graph, pat: DoubleStar) -> bool {
        let mut all: Vec<VertexId> = vec![self.center_u, self.center_v];
        all.extend(&self.leaves_u);
        all.extend(&self.leaves_v);
        let len = all.len();
        all.sort_unstable();
        all.dedup();
        all.len() == len
            && self.leaves_u.len() == pat.a
            && self.leaves_v.len() == pat.b
            && g.has_edge(self.center_u, self.center_v)
            && self.leaves_u.iter().all(|&x| g.has_edge(self.center_u, x))
            && self.leaves_v.iter().all(|&y| g.has_edge(self.center_v, y))
    }
}

/// Whether edge `uv` hosts `pat` with `u` as the `a`-centre and `v` as the `b`-centre.
pub fn edge_hosts(g: &Graph, u: VertexId, v: VertexId, pat: DoubleStar) -> Result<bool> {
    g.degree(u)?;
    g.degree(v)?;
    if !g.has_edge(u, v) {
        return Err(Error::invalid(format!("{u}-{v} is not an edge")));
    }
    Ok(hosts_unchecked(g, u, v, pat))
}

#[inline]
fn hosts_unchecked(g: &Graph, u: VertexId, v: VertexId, pat: DoubleStar) -> bool {
    let du = g.degree_unchecked(u) - 1;
    let dv = g.degree_unchecked(v) - 1;
    du >= pat.a && dv >= pat.b && du + dv - g.common_unchecked(u, v) >= pat.a + pat.b
}

/// Finds a copy of `S_{a,b}` (in either orientation) or returns `None`.
///
/// Vertices are scanned by descending degree, ties by index; the witness takes
/// exclusive neighbours of each centre first and then splits the common pool.
pub fn find_double_star(g: &Graph, pat: DoubleStar) -> Option<Witness> {
    let degrees = g.degrees();
    let need = pat.a.min(pat.b) + 1;
    let mut order: Vec<VertexId> = (0..g.n()).filter(|&v| degrees[v] >= need).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(degrees[v]));
    for &x in &order {
        for y in g.neighbors(x) {
            if degrees[y] < need {
                continue;
            }
            for p in [pat, pat.swapped()] {
                if hosts_unchecked(g, x, y, p) {
                    let w = build_witness(g, x, y, p);
                    return Some(if p == pat {
                        w
                    } else {
                        Witness {
                            center_u: w.center_v,
                            center_v: w.center_u,
                            leaves_u: w.leaves_v,
                            leaves_v: w.leaves_u,
                        }
                    });
                }
            }
        }
    }
    None
}

pub fn contains_double_star(g: &Graph, pat: DoubleStar) -> bool {
    find_double_star(g, pat).is_some()
}

fn build_witness(g: &Graph, u: VertexId, v: VertexId, pat: DoubleStar) -> Witness {
    let (mut only_u, mut only_v, mut common) = (Vec::new(), Vec::new(), Vec::new());
    for x in g.neighbors(u).filter(|&x| x != v) {
        if g.has_edge(v, x) {
            common.push(x);
        } else {
            only_u.push(x);
        }
    }
    for y in g.neighbors(v).filter(|&y| y != u) {
        if !g.has_edge(u, y) {
            only_v.push(y);
        }
    }
    only_u.truncate(pat.a);
    only_v.truncate(pat.b);
    let mut pool = common.into_iter();
    let mut leaves_u = only_u;
    leaves_u.extend(pool.by_ref().take(pat.a - leaves_u.len()));
    let mut leaves_v = only_v;
    leaves_v.extend(pool.take(pat.b - leaves_v.len()));
    Witness {
        center_u: u,
        center_v: v,
        leaves_u,
        leaves_v,
    }
}

/// Reference bound on `brute_force_contains`.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 14;

/// Exhaustive containment test: every ordered edge, every split of the common
/// neighbourhood between the two leaf sets.
pub fn brute_force_contains(g: &Graph, pat: DoubleStar) -> Result<bool> {
    if g.n() > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::UnsupportedSize {
            what: "brute-force double-star check",
            n: g.n(),
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let rows: Vec<u64> = (0..g.n())
        .map(|v| g.neighbor_bits(v).map(|r| r.first().copied().unwrap_or(0)))
        .collect::<Result<_>>()?;
    Ok(brute_force_rows(&rows, pat.a, pat.b))
}

/// `rows[v]` is the neighbour mask of `v`; at most 64 vertices.
pub(crate) fn brute_force_rows(rows: &[u64], a: usize, b: usize) -> bool {
    let n = rows.len();
    for u in 0..n {
        for v in 0..n {
            if rows[u] >> v & 1 == 0 {
                continue;
            }
            let nu = rows[u] & !(1 << v);
            let nv = rows[v] & !(1 << u);
            let only_u = (nu & !nv).count_ones() as usize;
            let only_v = (nv & !nu).count_ones() as usize;
            let common: Vec<usize> = (0..n).filter(|&w| (nu & nv) >> w & 1 == 1).collect();
            for split in 0u32..1 << common.len() {
                let to_u = split.count_ones() as usize;
                let to_v = common.len() - to_u;
                if only_u + to_u >= a && only_v + to_v >= b {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(a: usize, b: usize) -> DoubleStar {
        DoubleStar::new(a, b).unwrap()
    }

    #[test]
    fn edge_hosts_examples() {
        let k9 = Graph::complete(9);
        assert_eq!(edge_hosts(&k9, 0, 1, pat(3, 4)), Ok(true));
        let k8 = Graph::complete(8);
        assert_eq!(edge_hosts(&k8, 0, 1, pat(3, 4)), Ok(false));
        let s = Graph::star(9);
        assert_eq!(edge_hosts(&s, 0, 1, pat(1, 2)), Ok(false));
        assert_eq!(edge_hosts(&s, 1, 0, pat(1, 2)), Ok(false));
        assert!(matches!(edge_hosts(&s, 1, 2, pat(1, 2)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn pattern_contains_itself() {
        let p = pat(3, 4);
        let g = p.to_graph();
        let w = find_double_star(&g, p).expect("S_{3,4} contains itself");
        assert_eq!((w.center_u, w.center_v), (0, 1));
        assert_eq!(w.leaves_u, vec![2, 3, 4]);
        assert_eq!(w.leaves_v, vec![5, 6, 7, 8]);
        assert!(w.is_valid_in(&g, p));
        assert_eq!(brute_force_contains(&g, p), Ok(true));
    }

    #[test]
    fn clique_unions_are_free() {
        let k8 = Graph::complete(8);
        let g = k8.disjoint_union(&k8);
        assert!(find_double_star(&g, pat(3, 4)).is_none());
        let small = Graph::complete(8).disjoint_union(&Graph::complete(4));
        assert_eq!(brute_force_contains(&small, pat(3, 4)), Ok(false));
    }

    #[test]
    fn near_regular_nine_vertices_is_free() {
        // circulant C_9(1,2): 4-regular
        let mut b = Graph::builder(9);
        for i in 0..9 {
            b.add_edge(i, (i + 1) % 9).unwrap();
            b.add_edge(i, (i + 2) % 9).unwrap();
        }
        let g = b.build();
        assert!(find_double_star(&g, pat(3, 4)).is_none());
        assert_eq!(brute_force_contains(&g, pat(3, 4)), Ok(false));
    }

    #[test]
    fn six_cycle() {
        let c6 = Graph::cycle(6).unwrap();
        assert!(!contains_double_star(&c6, pat(1, 2)));
        assert_eq!(brute_force_contains(&c6, pat(1, 2)), Ok(false));
    }

    #[test]
    fn witness_uses_common_pool_when_needed() {
        let k9 = Graph::complete(9);
        let p = pat(3, 4);
        let w = find_double_star(&k9, p).unwrap();
        assert!(w.is_valid_in(&k9, p));
        assert_eq!(w.leaves_u, vec![2, 3, 4]);
        assert_eq!(w.leaves_v, vec![5, 6, 7, 8]);
    }

    #[test]
    fn swapped_orientation_reports_requested_roles() {
        // centre 0 carries 4 leaves, centre 1 carries 1: S_{1,4} with u as the big side
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 6)]).unwrap();
        let p = pat(1, 4);
        let w = find_double_star(&g, p).unwrap();
        assert!(w.is_valid_in(&g, p));
        assert_eq!(w.center_v, 0);
        assert_eq!(w.leaves_u, vec![6]);
    }

    #[test]
    fn zero_leaf_patterns_rejected() {
        assert!(DoubleStar::new(0, 3).is_err());
        assert!(DoubleStar::new(2, 0).is_err());
        assert!(DoubleStar::new(2, 2).is_ok());
    }

    #[test]
    fn brute_force_size_guard() {
        assert!(matches!(
            brute_force_contains(&Graph::empty(15), pat(1, 2)),
            Err(Error::UnsupportedSize { n: 15, .. })
        ));
    }
}
