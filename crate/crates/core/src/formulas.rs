//! Closed forms for `ex(n, S_{a,b})` and related extremal numbers.
//!
//! Every evaluator checks its proven domain first and reports the violated
//! inequality instead of extrapolating. Arithmetic is checked `u64`.

use std::fmt;

use crate::error::{Error, Result};

/// `n = p * modulus + q` with `0 <= q < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub p: u64,
    pub q: u64,
    pub modulus: u64,
}

pub fn decompose(n: u64, modulus: u64) -> Result<Decomposition> {
    if modulus == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    Ok(Decomposition {
        p: n / modulus,
        q: n % modulus,
        modulus,
    })
}

/// Which branch of a closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `p K_m ∪ K_q`.
    CliquePlusRemainder,
    /// `(p-1) K_m ∪` a near `b`-regular graph on `m + q` vertices.
    NearRegularTail,
    /// `(p-1) K_{b+4} ∪ H₂`, the `q = b-3` branch for `a = 3`.
    TailH2,
    /// `(p-1) K_{b+4} ∪ H₃`, the `q = b-2` branch for `a = 3`.
    TailH3,
    /// Clique union for `q ∈ {0, 1, a+b}`, any `a`.
    GeneralQSmall,
    OutOfTheoremRange,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::CliquePlusRemainder => "CliquePlusRemainder",
            Regime::NearRegularTail => "NearRegularTail",
            Regime::TailH2 => "TailH2",
            Regime::TailH3 => "TailH3",
            Regime::GeneralQSmall => "GeneralQSmall",
            Regime::OutOfTheoremRange => "OutOfTheoremRange",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The closed form a value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    /// Cliques counted in `S_{a,b}`-free graphs, `k >= 3`.
    GeneralizedClique,
    SingleLeaf,
    TwoLeaf,
    ThreeLeaf,
    /// Remainders `q ∈ {0, 1, a+b}` for arbitrary `a < b`.
    SmallRemainder,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::GeneralizedClique => "generalized-clique",
            Source::SingleLeaf => "a=1",
            Source::TwoLeaf => "a=2",
            Source::ThreeLeaf => "a=3",
            Source::SmallRemainder => "small-remainder",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaResult {
    pub value: u64,
    pub regime: Regime,
    pub decomposition: Decomposition,
    pub source: Source,
}

/// `C(x, k)`, zero when `x < k`.
pub fn binom(x: u64, k: u64) -> Result<u64> {
    if k > x {
        return Ok(0);
    }
    let k = k.min(x - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (x - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow("product"))
}

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow("sum"))
}

fn require(cond: bool, bound: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(bound))
    }
}

/// `p C(m,2) + C(q,2)`.
fn clique_value(d: Decomposition) -> Result<u64> {
    add(mul(d.p, binom(d.modulus, 2)?)?, binom(d.q, 2)?)
}

/// `(p-1) C(m,2) + tail`; callers guarantee `p >= 1`.
fn tail_value(d: Decomposition, tail: u64) -> Result<u64> {
    add(mul(d.p - 1, binom(d.modulus, 2)?)?, tail)
}

/// `ex(n, K_{1,b})`: `C(n,2)` when `n <= b`, else `⌊(b-1) n / 2⌋`.
pub fn ex_star(n: u64, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::invalid("K_{1,0} is not a star"));
    }
    if n <= b {
        binom(n, 2)
    } else {
        Ok(mul(b - 1, n)? / 2)
    }
}

/// `ex(n, S_{1,b})` for `n >= b+3 >= 5`.
pub fn ex_s1b(n: u64, b: u64) -> Result<FormulaResult> {
    require(b >= 2, "b+3 >= 5")?;
    require(n >= b + 3, "n >= b+3")?;
    let d = decompose(n, b + 2)?;
    let (value, regime) = if b >= 4 && (2..=b - 1).contains(&d.q) {
        (tail_value(d, mul(b, b + 2 + d.q)? / 2)?, Regime::NearRegularTail)
    } else {
        (clique_value(d)?, Regime::CliquePlusRemainder)
    };
    Ok(FormulaResult {
        value,
        regime,
        decomposition: d,
        source: Source::SingleLeaf,
    })
}

/// `ex(n, S_{2,b})` for `b >= 3`, `n >= b+3`.
pub fn ex_s2b(n: u64, b: u64) -> Result<FormulaResult> {
    require(b >= 3, "b > a = 2")?;
    require(n >= b + 3, "n >= b+3")?;
    let d = decompose(n, b + 3)?;
    let q = d.q;
    let tail = (b >= 12 && (3..=b - 2).contains(&q)) || ((9..=11).contains(&b) && (4..=b - 3).contains(&q));
    let (value, regime) = if tail {
        (tail_value(d, mul(b, b + 3 + q)? / 2)?, Regime::NearRegularTail)
    } else {
        (clique_value(d)?, Regime::CliquePlusRemainder)
    };
    Ok(FormulaResult {
        value,
        regime,
        decomposition: d,
        source: Source::TwoLeaf,
    })
}

/// Edge count of the `q = b-3` tail graph on `2b+1` vertices: `⌊(b(2b+1)+3)/2⌋`.
pub fn h2_edges(b: u64) -> Result<u64> {
    Ok(add(mul(b, 2 * b + 1)?, 3)? / 2)
}

/// Edge count of the `q = b-2` tail graph on `2b+2` vertices: `⌊(b(2b+2)+2+⌊b/2⌋)/2⌋`.
pub fn h3_edges(b: u64) -> Result<u64> {
    Ok(add(mul(b, 2 * b + 2)?, 2 + b / 2)? / 2)
}

/// `ex(n, S_{3,b})` for `b > 3`, `n >= b+5`; branches are tried in printed order.
pub fn ex_s3b(n: u64, b: u64) -> Result<FormulaResult> {
    require(b > 3, "b > 3")?;
    require(n >= b + 5, "n >= b+5")?;
    let d = decompose(n, b + 4)?;
    let q = d.q;
    let near_regular = (b >= 24 && (4..=b - 4).contains(&q))
        || ((16..=23).contains(&b) && (5..=b - 4).contains(&q))
        || ((14..=15).contains(&b) && (6..=b - 5).contains(&q));
    let (value, regime) = if near_regular {
        (tail_value(d, mul(b, b + 4 + q)? / 2)?, Regime::NearRegularTail)
    } else if b >= 22 && q == b - 3 {
        (tail_value(d, h2_edges(b)?)?, Regime::TailH2)
    } else if b >= 34 && q == b - 2 {
        (tail_value(d, h3_edges(b)?)?, Regime::TailH3)
    } else {
        (clique_value(d)?, Regime::CliquePlusRemainder)
    };
    Ok(FormulaResult {
        value,
        regime,
        decomposition: d,
        source: Source::ThreeLeaf,
    })
}

/// Maximum degree and edge count of a connected `S_{3,b}`-free extremal graph
/// on `n` vertices, `b > 3`, `b+5 <= n < 2(b+4)`.
pub fn connected_extremal_edges(n: u64, b: u64) -> Result<(u64, u64)> {
    require(b > 3, "b > 3")?;
    require(n >= b + 5, "n >= b+5")?;
    require(n < 2 * (b + 4), "n < 2(b+4): no connected extremal graph is this large")?;
    let bn = mul(b, n)?;
    Ok(if b >= 11 && n == 2 * b + 1 {
        (b + 1, (bn + 3) / 2)
    } else if b >= 11 && n == 2 * b + 2 {
        (b + 1, (bn + 2 + b / 2) / 2)
    } else {
        (b, bn / 2)
    })
}

/// `ex(n, S_{a,b})` when `q ∈ {0, 1, a+b}`; `Ok(None)` for other remainders.
pub fn ex_general_small_q(n: u64, a: u64, b: u64) -> Result<Option<FormulaResult>> {
    require(a >= 1, "a >= 1")?;
    require(b > a, "b > a")?;
    require(n > a + b, "n >= a+b+1")?;
    let d = decompose(n, a + b + 1)?;
    if d.q == 0 || d.q == 1 || d.q == a + b {
        Ok(Some(FormulaResult {
            value: clique_value(d)?,
            regime: Regime::GeneralQSmall,
            decomposition: d,
            source: Source::SmallRemainder,
        }))
    } else {
        Ok(None)
    }
}

/// Maximum number of `K_k` in an `S_{a,b}`-free graph: `p C(a+b+1,k) + C(q,k)`.
pub fn ex_generalized_clique(n: u64, a: u64, b: u64, k: u64) -> Result<FormulaResult> {
    require(k >= 3, "k >= 3")?;
    require(a >= 1 && b >= 1, "a, b >= 1")?;
    let d = decompose(n, a + b + 1)?;
    Ok(FormulaResult {
        value: add(mul(d.p, binom(a + b + 1, k)?)?, binom(d.q, k)?)?,
        regime: Regime::CliquePlusRemainder,
        decomposition: d,
        source: Source::GeneralizedClique,
    })
}

/// Routes `(n, a, b)` to the closed form for its `a`; when that form's domain
/// excludes `n` the small-remainder form is tried. The error is the first
/// violated bound.
pub fn ex_formula(n: u64, a: u64, b: u64) -> Result<FormulaResult> {
    require(a >= 1, "a >= 1")?;
    require(b > a, "b > a")?;
    let specific = match a {
        1 => Some(ex_s1b(n, b)),
        2 => Some(ex_s2b(n, b)),
        3 => Some(ex_s3b(n, b)),
        _ => None,
    };
    match specific {
        Some(Ok(r)) => Ok(r),
        Some(Err(e)) => match ex_general_small_q(n, a, b) {
            Ok(Some(r)) => Ok(r),
            _ => Err(e),
        },
        None => ex_general_small_q(n, a, b)?
            .ok_or_else(|| Error::domain("q ∈ {0, 1, a+b} (no closed form for other remainders when a >= 4)")),
    }
}

/// [`ex_formula`] with absence in place of a domain error.
pub fn ex_dispatch(n: u64, a: u64, b: u64) -> Option<FormulaResult> {
    ex_formula(n, a, b).ok()
}

/// `C(n1,2) + C(n2,2) < min{C(n1+n2,2), C(n-1,2) + C(n1+n2-n+1,2)}` for
/// `1 <= n1, n2 < n-1`. With a zero part both sides can vanish, so parts are positive.
pub fn lemma_n1n2_holds(n: u64, n1: u64, n2: u64) -> Result<bool> {
    require(n >= 2 && n1 < n - 1 && n2 < n - 1, "n1, n2 < n-1")?;
    require(n1 >= 1 && n2 >= 1, "n1, n2 >= 1")?;
    let lhs = add(binom(n1, 2)?, binom(n2, 2)?)?;
    let merged = binom(n1 + n2, 2)?;
    let rebalanced = add(binom(n - 1, 2)?, binom((n1 + n2 + 1).saturating_sub(n), 2)?)?;
    Ok(lhs < merged.min(rebalanced))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(p: u64, q: u64, modulus: u64) -> Decomposition {
        Decomposition { p, q, modulus }
    }

    #[test]
    fn decompositions() {
        assert_eq!(decompose(23, 8).unwrap(), d(2, 7, 8));
        assert_eq!(decompose(9, 8).unwrap(), d(1, 1, 8));
        assert_eq!(decompose(45, 26).unwrap(), d(1, 19, 26));
        assert!(decompose(5, 0).is_err());
    }

    #[test]
    fn star_values() {
        assert_eq!(ex_star(9, 5), Ok(18));
        assert_eq!(ex_star(4, 4), Ok(6));
        assert_eq!(ex_star(4, 4), Ok(3 * 4 / 2));
        assert_eq!(ex_star(5, 3), Ok(5));
    }

    #[test]
    fn single_leaf() {
        let r = ex_s1b(9, 4).unwrap();
        assert_eq!((r.value, r.regime), (18, Regime::NearRegularTail));
        let r = ex_s1b(13, 4).unwrap();
        assert_eq!((r.value, r.regime), (30, Regime::CliquePlusRemainder));
        assert_eq!(ex_s1b(7, 2).unwrap().value, 9);
        assert_eq!(ex_s1b(6, 4), Err(Error::domain("n >= b+3")));
        assert_eq!(ex_s1b(9, 1), Err(Error::domain("b+3 >= 5")));
    }

    #[test]
    fn two_leaf() {
        let r = ex_s2b(21, 12).unwrap();
        assert_eq!((r.value, r.regime), (126, Regime::NearRegularTail));
        assert_eq!(clique_value(r.decomposition).unwrap(), 120);
        let r = ex_s2b(16, 9).unwrap();
        assert_eq!((r.value, r.regime), (72, Regime::NearRegularTail));
        assert_eq!(clique_value(r.decomposition).unwrap(), 72);
        let r = ex_s2b(10, 6).unwrap();
        assert_eq!((r.value, r.regime), (36, Regime::CliquePlusRemainder));
    }

    #[test]
    fn three_leaf() {
        let r = ex_s3b(40, 24).unwrap();
        assert_eq!((r.value, r.regime), (480, Regime::NearRegularTail));
        let r = ex_s3b(47, 23).unwrap();
        assert_eq!((r.value, r.regime), (542, Regime::TailH2));
        assert_eq!(clique_value(r.decomposition).unwrap(), 541);
        let r = ex_s3b(12, 4).unwrap();
        assert_eq!((r.value, r.regime), (34, Regime::CliquePlusRemainder));
        let r = ex_s3b(74, 36).unwrap();
        assert_eq!((r.value, r.regime), (1342, Regime::TailH3));
        assert_eq!(clique_value(r.decomposition).unwrap(), 1341);
        assert!(ex_s3b(8, 4).is_err());
        assert!(ex_s3b(20, 3).is_err());
    }

    #[test]
    fn connected_extremal() {
        assert_eq!(connected_extremal_edges(23, 11), Ok((12, 128)));
        assert_eq!(connected_extremal_edges(24, 11), Ok((12, 135)));
        assert_eq!(connected_extremal_edges(21, 10), Ok((10, 105)));
        assert!(connected_extremal_edges(30, 11).is_err());
    }

    #[test]
    fn small_remainders() {
        assert_eq!(ex_general_small_q(16, 4, 7), Ok(None));
        let r = ex_general_small_q(24, 4, 7).unwrap().unwrap();
        assert_eq!((r.value, r.regime), (132, Regime::GeneralQSmall));
        assert_eq!(ex_general_small_q(8, 1, 2).unwrap().unwrap().value, 12);
        assert!(ex_general_small_q(10, 4, 7).is_err());
    }

    #[test]
    fn generalized_clique() {
        assert_eq!(ex_generalized_clique(10, 1, 2, 3).unwrap().value, 8);
        assert_eq!(ex_generalized_clique(5, 1, 2, 4).unwrap().value, 1);
        assert_eq!(ex_generalized_clique(12, 2, 3, 3).unwrap().value, 40);
        assert_eq!(ex_generalized_clique(12, 2, 3, 2), Err(Error::domain("k >= 3")));
    }

    #[test]
    fn dispatch() {
        assert_eq!(ex_dispatch(9, 3, 4).unwrap().value, 28);
        assert_eq!(ex_dispatch(9, 1, 4).unwrap().value, 18);
        assert_eq!(ex_dispatch(16, 4, 7), None);
        // below the a=3 domain but q = 0 of the general clique form
        let r = ex_dispatch(8, 3, 4).unwrap();
        assert_eq!((r.value, r.regime), (28, Regime::GeneralQSmall));
        assert_eq!(ex_dispatch(7, 3, 4), None);
        assert!(ex_dispatch(9, 4, 4).is_none());
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma_n1n2_holds(10, 4, 4), Ok(true));
        assert_eq!(lemma_n1n2_holds(10, 8, 8), Ok(true));
        assert!(lemma_n1n2_holds(10, 9, 1).is_err());
        assert!(lemma_n1n2_holds(10, 0, 3).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(8, 2), Ok(28));
        assert_eq!(binom(3, 4), Ok(0));
        assert_eq!(binom(60, 30), Ok(118_264_581_564_861_424));
        assert!(binom(200, 100).is_err());
    }
}
