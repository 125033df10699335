use std::cmp::Ordering;
use std::fmt;

/// The polynomial `a * (n^k + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyBound {
    pub a: u64,
    pub k: u32,
}

impl PolyBound {
    /// Returns `None` when `a` is zero.
    pub fn new(a: u64, k: u32) -> Option<PolyBound> {
        (a >= 1).then_some(PolyBound { a, k })
    }

    /// Saturates at `u64::MAX`.
    pub fn eval(&self, n: u64) -> u64 {
        let mut p: u128 = 1;
        for _ in 0..self.k {
            p = p.saturating_mul(n as u128);
            if p > u64::MAX as u128 {
                return u64::MAX;
            }
        }
        let v = (self.a as u128).saturating_mul(p + 1);
        v.min(u64::MAX as u128) as u64
    }

    /// Lexicographic on `(k, a)`.
    pub fn order(&self, other: &PolyBound) -> Ordering {
        (self.k, self.a).cmp(&(other.k, other.a))
    }

    pub fn is_below(&self, other: &PolyBound) -> bool {
        self.order(other) == Ordering::Less
    }

    /// A bound `r` with `r(n) >= outer(inner(n))` for all `n`.
    pub fn compose(outer: &PolyBound, inner: &PolyBound) -> PolyBound {
        // (n^j + 1)^i <= 2^(i-1) (n^(ij) + 1) for i >= 1
        let i = outer.k;
        let spread = if i == 0 { 1u64 } else { 1u64 << (i - 1).min(62) };
        let lead = inner
            .a
            .saturating_pow(i)
            .saturating_mul(spread)
            .saturating_add(1);
        PolyBound {
            a: outer.a.saturating_mul(lead),
            k: outer.k.saturating_mul(inner.k),
        }
    }

    /// A bound dominating the sum of `terms`, with the largest exponent.
    pub fn dominating_sum(terms: &[PolyBound]) -> Option<PolyBound> {
        let k = terms.iter().map(|t| t.k).max()?;
        // n^j <= n^k + 1 for j <= k, so a lower-degree term costs at most 2a
        let a = terms
            .iter()
            .map(|t| if t.k == k { t.a } else { t.a.saturating_mul(2) })
            .fold(0u64, u64::saturating_add);
        PolyBound::new(a, k)
    }

    /// Smallest `a` with `a * (n^k + 1) >= value` at this `n`.
    pub fn covering(k: u32, n: u64, value: u64) -> PolyBound {
        let base = PolyBound { a: 1, k }.eval(n);
        let a = value.div_ceil(base).max(1);
        PolyBound { a, k }
    }
}

impl fmt::Display for PolyBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n^{}+1)", self.a, self.k)
    }
}
