use std::ops::RangeInclusive;
use std::str::FromStr;

/// Inclusive integer range written `lo..hi`, or a single value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span(pub RangeInclusive<u64>);

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("{t:?} is not a non-negative integer"))
        };
        match s.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                Ok(Span(num(lo)?..=num(hi)?))
            }
            None => {
                let v = num(s)?;
                Ok(Span(v..=v))
            }
        }
    }
}

impl Span {
    /// Intersection with `1..=max`, or the full `1..=max` when absent.
    pub fn clip(span: Option<&Span>, max: Option<u64>, default_max: u64) -> RangeInclusive<u64> {
        let (lo, hi) = match span {
            Some(Span(r)) => (*r.start(), *r.end()),
            None => (1, max.unwrap_or(default_max)),
        };
        lo.max(1)..=hi.min(max.unwrap_or(u64::MAX))
    }
}
