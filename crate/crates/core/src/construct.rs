//! Builders for the extremal and near-extremal families.
//!
//! Labelling contract for the tail graphs `H₂`, `H₃` and the general `H`:
//! `v_0` is vertex 0, `v_i` is vertex `i` for `i <= b+1`, and `u_j` (1-based)
//! is vertex `b + 1 + j`.

use crate::error::{Error, Result};
use crate::formulas::{ex_formula, Regime};
use crate::graph::{Graph, GraphBuilder, VertexId};

/// Named construction families, for selection by front ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    CliquesPlusRemainder,
    NearRegular,
    H2,
    H3,
    HGeneral,
    /// Disjoint union of the above.
    Composite,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::CliquesPlusRemainder => "cliques",
            Family::NearRegular => "near-regular",
            Family::H2 => "h2",
            Family::H3 => "h3",
            Family::HGeneral => "h-general",
            Family::Composite => "composite",
        }
    }
}

/// `p K_m ∪ K_q`.
pub fn cliques_plus_remainder(p: usize, m: usize, q: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::invalid("clique size must be positive"));
    }
    if q >= m {
        return Err(Error::invalid(format!("remainder {q} must be below the clique size {m}")));
    }
    let mut g = Graph::empty(0);
    for _ in 0..p {
        g = g.disjoint_union(&Graph::complete(m));
    }
    Ok(g.disjoint_union(&Graph::complete(q)))
}

/// A near `r`-regular graph on `n > r` vertices: `r`-regular when `rn` is even,
/// otherwise vertex `n-1` has degree `r-1` and the rest degree `r`.
///
/// Circulant on offsets `1..=r/2`; odd `r` adds the antipodal matching (even
/// `n`) or the matching `{i, i+(n-1)/2}` for `i < (n-1)/2` (odd `n`).
pub fn near_regular(n: usize, r: usize) -> Result<Graph> {
    if n <= r {
        return Err(Error::invalid(format!("near {r}-regular graph needs more than {r} vertices, got {n}")));
    }
    let mut b = Graph::builder(n);
    for i in 0..n {
        for off in 1..=r / 2 {
            let j = (i + off) % n;
            b.add_edge(i, j)?;
        }
    }
    if r % 2 == 1 {
        if n.is_multiple_of(2) {
            for i in 0..n / 2 {
                b.add_edge(i, i + n / 2)?;
            }
        } else {
            let half = (n - 1) / 2;
            for i in 0..half {
                b.add_edge(i, i + half)?;
            }
        }
    }
    Ok(b.build())
}

/// Erdős–Gallai test; `Err(k)` names the first failing prefix length (1-based).
pub fn erdos_gallai(degrees: &[usize]) -> std::result::Result<(), usize> {
    let n = degrees.len();
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|x, y| y.cmp(x));
    if d.iter().sum::<usize>() % 2 == 1 {
        return Err(0);
    }
    let mut prefix = 0;
    for k in 1..=n {
        prefix += d[k - 1];
        let rhs = k * (k - 1) + d[k..].iter().map(|&x| x.min(k)).sum::<usize>();
        if prefix > rhs {
            return Err(k);
        }
    }
    Ok(())
}

/// Havel–Hakimi realisation: repeatedly connect the vertex of largest remaining
/// degree (lowest index on ties) to the next largest ones.
pub fn graph_from_degree_sequence(degrees: &[usize]) -> Result<Graph> {
    erdos_gallai(degrees).map_err(|index| Error::NotGraphical { index })?;
    let n = degrees.len();
    let mut b = Graph::builder(n);
    realize_into(&mut b, &(0..n).collect::<Vec<_>>(), degrees)?;
    Ok(b.build())
}

/// Adds a Havel–Hakimi realisation of `degrees` on `vertices` to `b`.
fn realize_into(b: &mut GraphBuilder, vertices: &[VertexId], degrees: &[usize]) -> Result<()> {
    erdos_gallai(degrees).map_err(|index| Error::NotGraphical { index })?;
    let mut rem: Vec<(usize, usize)> = degrees.iter().copied().zip(0..).collect();
    loop {
        rem.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let (d, i) = rem[0];
        if d == 0 {
            return Ok(());
        }
        if d >= rem.len() || rem[d].0 == 0 {
            return Err(Error::Construction("Havel–Hakimi ran out of partners".into()));
        }
        rem[0].0 = 0;
        for slot in rem.iter_mut().skip(1).take(d) {
            slot.0 -= 1;
            b.add_edge(vertices[i], vertices[slot.1])?;
        }
    }
}

fn check_tail_b(b: usize) -> Result<()> {
    if b < 11 {
        Err(Error::Domain {
            bound: "b >= 11".into(),
        })
    } else {
        Ok(())
    }
}

/// Connected `S_{3,b}`-free graph on `2b+1` vertices with `⌊(b(2b+1)+3)/2⌋` edges.
///
/// `v_0, v_b, v_{b+1}` see all of `v_1..v_{b+1}` (degree `b+1`); `u_1..u_{b-1}`
/// form a clique; each `v_i`, `i < b`, has two `u`-neighbours and each `u_j`
/// two `v`-neighbours; `v_1..v_{b-1}` carry a `(b-5)`-regular inner graph (one
/// vertex at `b-6` for even `b`).
pub fn build_h2(b: usize) -> Result<Graph> {
    check_tail_b(b)?;
    let n = 2 * b + 1;
    let u = |j: usize| b + 1 + j;
    let mut g = Graph::builder(n);
    for i in 1..=b + 1 {
        g.add_edge(0, i)?;
    }
    g.add_edge(b, b + 1)?;
    for hub in [b, b + 1] {
        for i in 1..b {
            g.add_edge(hub, i)?;
        }
    }
    for j in 1..b {
        for k in j + 1..b {
            g.add_edge(u(j), u(k))?;
        }
    }
    // Pairs (v_{2t-1}, v_{2t}) × (u_{2t-1}, u_{2t}); with b-1 odd the last
    // three v's and u's form a 6-cycle instead.
    let m = b - 1;
    let pairs_end = if m.is_multiple_of(2) { m } else { m - 3 };
    for t in (1..pairs_end).step_by(2) {
        for i in [t, t + 1] {
            for j in [t, t + 1] {
                g.add_edge(i, u(j))?;
            }
        }
    }
    if m % 2 == 1 {
        let (x, y, z) = (m - 2, m - 1, m);
        for (i, j) in [(x, x), (x, y), (y, x), (y, z), (z, y), (z, z)] {
            g.add_edge(i, u(j))?;
        }
    }
    let mut inner = vec![b - 5; m];
    if b.is_multiple_of(2) {
        inner[m - 1] = b - 6;
    }
    realize_into(&mut g, &(1..b).collect::<Vec<_>>(), &inner)?;
    Ok(g.build())
}

/// Connected `S_{3,b}`-free graph on `2b+2` vertices with
/// `⌊(b(2b+2)+2+⌊b/2⌋)/2⌋` edges.
///
/// With `s = ⌊b/2⌋`: `v_i` (`i <= s`) is joined to `u_{2i-1}, u_{2i}`; `v_0` and
/// `v_{s+1}..v_{b+1}` see all of `V₁` (degree `b+1`); `u_1..u_b` form a clique;
/// `v_1..v_s` carry an `(s-4)`-regular inner graph (one vertex at `s-5` for odd `s`).
pub fn build_h3(b: usize) -> Result<Graph> {
    check_tail_b(b)?;
    let n = 2 * b + 2;
    let s = b / 2;
    let u = |j: usize| b + 1 + j;
    let mut g = Graph::builder(n);
    for i in 1..=b + 1 {
        g.add_edge(0, i)?;
    }
    for hub in s + 1..=b + 1 {
        for w in 1..=b + 1 {
            if w != hub && !(w > s && w < hub) {
                g.add_edge(hub, w)?;
            }
        }
    }
    for j in 1..=b {
        for k in j + 1..=b {
            g.add_edge(u(j), u(k))?;
        }
    }
    for i in 1..=s {
        g.add_edge(i, u(2 * i - 1))?;
        g.add_edge(i, u(2 * i))?;
    }
    let mut inner = vec![s - 4; s];
    if s % 2 == 1 {
        inner[s - 1] = s - 5;
    }
    realize_into(&mut g, &(1..=s).collect::<Vec<_>>(), &inner)?;
    Ok(g.build())
}

/// Derived parameters of the general-`a` tail construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HGeneralParams {
    pub a: usize,
    pub b: usize,
    pub q: usize,
    /// `b - a - q`, in `-1..=a-3`.
    pub k: i64,
    /// Number of `v_i` with neighbours in `V₂`: `⌈(k+2)(b-k-1)/(a-1)⌉`.
    pub s: usize,
    /// `V₂`-degree of `v_s`: `(k+2)(b-k-1) - (s-1)(a-1)`.
    pub residual: usize,
}

impl HGeneralParams {
    pub fn new(a: usize, b: usize, q: usize) -> Result<Self> {
        if a < 3 {
            return Err(Error::domain("a >= 3"));
        }
        if b + 3 < 2 * a || q + 2 * a < b + 3 || q + a > b + 1 {
            return Err(Error::domain("b-2a+3 <= q <= b-a+1"));
        }
        let k = b as i64 - a as i64 - q as i64;
        let stubs = ((k + 2) * (b as i64 - k - 1)) as usize;
        let s = stubs.div_ceil(a - 1);
        let residual = stubs - (s - 1) * (a - 1);
        Ok(HGeneralParams { a, b, q, k, s, residual })
    }

    /// `a + b + 1 + q`.
    pub fn order(&self) -> usize {
        self.a + self.b + 1 + self.q
    }

    /// `|V₂| = b - k - 1`.
    pub fn tail_size(&self) -> usize {
        (self.b as i64 - self.k - 1) as usize
    }

    /// `V₁`-degree of every `u_j`.
    pub fn u_attachment(&self) -> usize {
        (self.k + 2) as usize
    }

    /// `f(q) = (a-2) q (b-q+2) - (a-1) a (a+b) + a q - 2(a-1)`.
    pub fn f(&self) -> i64 {
        let (a, b, q) = (self.a as i64, self.b as i64, self.q as i64);
        (a - 2) * q * (b - q + 2) - (a - 1) * a * (a + b) + a * q - 2 * (a - 1)
    }
}

/// General-`a` tail graph on `a+b+1+q` vertices with `Δ = b+1`.
///
/// `v_0` and `v_{s+1}..v_{b+1}` see all of `V₁`; `u_1..u_{b-k-1}` form a
/// clique; the stubs of `v_1..v_s` (`a-1` each, `v_s` gets the residual) are
/// dealt round-robin to the `u`'s, giving every `u_j` exactly `k+2`; the
/// inner graph on `v_1..v_s` has degree `s-a-1` with `v_s` at `s-2-R`, or
/// `s-3-R` when parity demands it.
pub fn build_h_general(a: usize, b: usize, q: usize) -> Result<Graph> {
    let pr = HGeneralParams::new(a, b, q)?;
    let (s, r, m) = (pr.s, pr.residual, pr.tail_size());
    if s < a + 2 {
        return Err(Error::Construction(format!(
            "s = {s} leaves inner degree s-a-1 = {} below 1",
            s as i64 - a as i64 - 1
        )));
    }
    if s > b + 1 || a - 1 > m || pr.u_attachment() > s {
        return Err(Error::Construction(format!(
            "attachment infeasible: s = {s}, |V2| = {m}, k+2 = {}",
            pr.u_attachment()
        )));
    }
    let inner_base = vec![s - a - 1; s - 1];
    let inner = [s as i64 - 2 - r as i64, s as i64 - 3 - r as i64]
        .into_iter()
        .filter(|&d| d >= 0)
        .map(|d| {
            let mut seq = inner_base.clone();
            seq.push(d as usize);
            seq
        })
        .find(|seq| erdos_gallai(seq).is_ok())
        .ok_or_else(|| {
            Error::Construction(format!(
                "inner degree sequence on v_1..v_{s} is not graphical for either choice of d(v_s)"
            ))
        })?;

    let u = |j: usize| b + 1 + j;
    let mut g = Graph::builder(pr.order());
    for i in 1..=b + 1 {
        g.add_edge(0, i)?;
    }
    for hub in s + 1..=b + 1 {
        for w in 1..=b + 1 {
            if w != hub && !(w > s && w < hub) {
                g.add_edge(hub, w)?;
            }
        }
    }
    for j in 1..=m {
        for k in j + 1..=m {
            g.add_edge(u(j), u(k))?;
        }
    }
    let stubs = (1..s)
        .flat_map(|i| std::iter::repeat_n(i, a - 1))
        .chain(std::iter::repeat_n(s, r));
    for (t, i) in stubs.enumerate() {
        g.add_edge(i, u(t % m + 1))?;
    }
    realize_into(&mut g, &(1..=s).collect::<Vec<_>>(), &inner)?;
    Ok(g.build())
}

/// A graph attaining the closed-form value for `(n, a, b)`, or `None` when no
/// closed form applies.
pub fn extremal_graph(n: usize, a: usize, b: usize) -> Option<Graph> {
    extremal_graph_with_family(n, a, b).ok().map(|(g, _)| g)
}

/// As [`extremal_graph`], reporting the family and the domain error if any.
pub fn extremal_graph_with_family(n: usize, a: usize, b: usize) -> Result<(Graph, Family)> {
    let f = ex_formula(n as u64, a as u64, b as u64)?;
    let d = f.decomposition;
    let (p, m, q) = (d.p as usize, d.modulus as usize, d.q as usize);
    let cliques = |count: usize| {
        cliques_plus_remainder(count, m, 0).expect("clique sizes are positive")
    };
    Ok(match f.regime {
        Regime::CliquePlusRemainder | Regime::GeneralQSmall => {
            (cliques_plus_remainder(p, m, q)?, Family::CliquesPlusRemainder)
        }
        Regime::NearRegularTail => {
            let tail = near_regular(m + q, b)?;
            if p == 1 {
                (tail, Family::NearRegular)
            } else {
                (cliques(p - 1).disjoint_union(&tail), Family::Composite)
            }
        }
        Regime::TailH2 | Regime::TailH3 => {
            let tail = if f.regime == Regime::TailH2 {
                build_h2(b)?
            } else {
                build_h3(b)?
            };
            if p == 1 {
                (tail, if f.regime == Regime::TailH2 { Family::H2 } else { Family::H3 })
            } else {
                (cliques(p - 1).disjoint_union(&tail), Family::Composite)
            }
        }
        Regime::OutOfTheoremRange => return Err(Error::domain("a closed form for (n, a, b)")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{contains_double_star, DoubleStar};

    fn free(g: &Graph, a: usize, b: usize) -> bool {
        !contains_double_star(g, DoubleStar::new(a, b).unwrap())
    }

    fn degree_histogram(g: &Graph) -> std::collections::BTreeMap<usize, usize> {
        let mut h = std::collections::BTreeMap::new();
        for d in g.degrees() {
            *h.entry(d).or_default() += 1;
        }
        h
    }

    #[test]
    fn clique_unions() {
        let g = cliques_plus_remainder(1, 8, 1).unwrap();
        assert_eq!((g.n(), g.edge_count()), (9, 28));
        let g = cliques_plus_remainder(2, 4, 0).unwrap();
        assert_eq!((g.n(), g.edge_count()), (8, 12));
        assert_eq!(cliques_plus_remainder(0, 5, 3).unwrap(), Graph::complete(3));
        assert!(cliques_plus_remainder(1, 4, 4).is_err());
    }

    #[test]
    fn near_regular_examples() {
        let g = near_regular(9, 4).unwrap();
        assert_eq!(g.edge_count(), 18);
        assert!(g.degrees().iter().all(|&d| d == 4));
        let g = near_regular(7, 3).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert_eq!(degree_histogram(&g), [(2, 1), (3, 6)].into_iter().collect());
        assert_eq!(g.degree(6), Ok(2));
        assert_eq!(near_regular(5, 4).unwrap(), Graph::complete(5));
        assert!(near_regular(4, 4).is_err());
    }

    #[test]
    fn near_regular_sweep() {
        for n in 1..40 {
            for r in 0..n {
                let g = near_regular(n, r).unwrap();
                assert_eq!(g.edge_count(), r * n / 2, "n={n} r={r}");
                let low = g.degrees().iter().filter(|&&d| d != r).count();
                assert_eq!(low, (r * n) % 2, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn degree_sequences() {
        let g = graph_from_degree_sequence(&[2, 2, 2, 2]).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 2));
        let g = graph_from_degree_sequence(&[6; 10]).unwrap();
        assert_eq!(g.edge_count(), 30);
        assert!(g.degrees().iter().all(|&d| d == 6));
        assert!(matches!(
            graph_from_degree_sequence(&[3, 3, 3, 1]),
            Err(Error::NotGraphical { .. })
        ));
        assert!(matches!(
            graph_from_degree_sequence(&[3, 3, 1, 1]),
            Err(Error::NotGraphical { index: 2 })
        ));
    }

    #[test]
    fn h2_small_cases() {
        let g = build_h2(11).unwrap();
        assert_eq!((g.n(), g.edge_count(), g.max_degree().unwrap()), (23, 128, 12));
        assert!(free(&g, 3, 11));
        let g = build_h2(12).unwrap();
        assert_eq!((g.n(), g.edge_count()), (25, 151));
        assert_eq!(g.degrees().iter().filter(|&&d| d == 11).count(), 1);
        let g = build_h2(22).unwrap();
        assert_eq!((g.n(), g.edge_count()), (45, 496));
        assert!(matches!(build_h2(10), Err(Error::Domain { .. })));
    }

    #[test]
    fn h2_labelled_vertices() {
        let b = 13;
        let g = build_h2(b).unwrap();
        for v in [0, b, b + 1] {
            assert_eq!(g.degree(v), Ok(b + 1));
        }
        for i in 1..b {
            let into_tail = g.neighbors(i).filter(|&w| w > b + 1).count();
            assert_eq!(into_tail, 2, "v_{i}");
        }
        let tail: Vec<_> = (b + 2..2 * b + 1).collect();
        assert_eq!(g.induced(&tail).unwrap(), Graph::complete(b - 1));
    }

    #[test]
    fn h3_small_cases() {
        let g = build_h3(11).unwrap();
        assert_eq!((g.n(), g.edge_count()), (24, 135));
        assert!(free(&g, 3, 11));
        let g = build_h3(34).unwrap();
        assert_eq!((g.n(), g.edge_count()), (70, 1199));
        let g = build_h3(12).unwrap();
        assert_eq!((g.n(), g.edge_count()), (26, 160));
        assert_eq!(g.max_degree(), Ok(13));
        let tail: Vec<_> = (14..26).collect();
        assert_eq!(g.induced(&tail).unwrap(), Graph::complete(12));
    }

    #[test]
    fn tail_spectra() {
        for b in 11..=40 {
            let g = build_h2(b).unwrap();
            let h = degree_histogram(&g);
            let low = usize::from(b % 2 == 0);
            let mut want = vec![(b + 1, 3), (b, 2 * b - 2 - low)];
            if low == 1 {
                want.push((b - 1, 1));
            }
            assert_eq!(h, want.into_iter().collect(), "H2 b={b}");

            // v_{s'} side loses one for odd s'; u_b is unattached for odd b
            let g = build_h3(b).unwrap();
            let s = b / 2;
            let low = s % 2 + b % 2;
            let mut want = vec![(b + 1, b + 2 - s), (b, 2 * b + 2 - (b + 2 - s) - low)];
            if low > 0 {
                want.push((b - 1, low));
            }
            assert_eq!(degree_histogram(&g), want.into_iter().collect(), "H3 b={b}");
        }
    }

    #[test]
    fn h_general_parameters() {
        let p = HGeneralParams::new(4, 60, 57).unwrap();
        assert_eq!((p.k, p.s, p.residual, p.order()), (-1, 20, 3, 122));
        let p = HGeneralParams::new(5, 80, 74).unwrap();
        assert_eq!((p.k, p.s, p.residual, p.order()), (1, 59, 2, 160));
        let p = HGeneralParams::new(3, 20, 18).unwrap();
        assert_eq!((p.k, p.s, p.residual, p.order()), (-1, 10, 2, 42));
        assert!(HGeneralParams::new(4, 60, 58).is_err());
        assert!(HGeneralParams::new(4, 60, 54).is_err());
        assert!(HGeneralParams::new(2, 60, 58).is_err());
    }

    #[test]
    fn h_general_examples() {
        for (a, b, q) in [(4, 60, 57), (5, 80, 74), (3, 20, 18)] {
            let p = HGeneralParams::new(a, b, q).unwrap();
            let g = build_h_general(a, b, q).unwrap();
            assert_eq!(g.n(), p.order());
            assert!(free(&g, a, b), "({a},{b},{q})");
            assert_eq!(g.max_degree(), Ok(b + 1));
            let top: Vec<_> = (0..g.n()).filter(|&v| g.degree(v) == Ok(b + 1)).collect();
            let expect: Vec<_> = std::iter::once(0).chain(p.s + 1..=b + 1).collect();
            assert_eq!(top, expect);
        }
        // (4, 60, 57): R = 3 forces d(v_s) = s-3-R by parity
        let g = build_h_general(4, 60, 57).unwrap();
        assert_eq!(g.edge_count(), 3681);
    }

    #[test]
    fn h_general_infeasible_reports() {
        // a=5, b=20, q=16: s = 5 < a+2
        assert!(matches!(build_h_general(5, 20, 16), Err(Error::Construction(_))));
    }

    #[test]
    fn extremal_examples() {
        let g = extremal_graph(9, 3, 4).unwrap();
        assert_eq!(g, Graph::complete(8).disjoint_union(&Graph::empty(1)));
        let g = extremal_graph(47, 3, 23).unwrap();
        assert_eq!(g.edge_count(), 542);
        assert_eq!(g, build_h2(23).unwrap());
        let (g, fam) = extremal_graph_with_family(21, 2, 12).unwrap();
        assert_eq!((g.edge_count(), fam), (126, Family::NearRegular));
        assert_eq!(g, near_regular(21, 12).unwrap());
        assert!(extremal_graph(16, 4, 7).is_none());
    }
}
