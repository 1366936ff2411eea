//! Element-order thresholds and size bounds, in exact arithmetic.

use num_bigint::BigInt;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    F,
    Fcheck,
}

fn m(n: &BigInt) -> BigInt {
    2 * n * n + 3 * n - 2
}

/// `F(n) = 2(2n²+3n−2)²(2n²+4n−1)` and `F̌(n) = 4(2n²+3n−2)²(n+2)n`.
pub fn bound(n: impl Into<BigInt>, which: BoundKind) -> BigInt {
    let n = n.into();
    let m = m(&n);
    match which {
        BoundKind::F => 2 * &m * &m * (2 * &n * &n + 4 * &n - 1),
        BoundKind::Fcheck => 4 * &m * &m * (&n + 2) * &n,
    }
}

/// Smallest order of `γ` for which a single augmentation step over a
/// symmetric set of `size` elements is guaranteed.
pub fn augment_threshold(size: usize, odd: bool, no_involutions: bool) -> BigInt {
    let n = BigInt::from(size);
    if odd {
        let m = m(&n);
        2 * &m * &m * (2 * &n * &n + 2 * &n)
    } else if no_involutions {
        bound(n, BoundKind::Fcheck)
    } else {
        bound(n, BoundKind::F)
    }
}

/// `M = 2|S|²+3|S|−2`.
pub fn case_threshold(size: usize) -> u64 {
    let s = size as u64;
    2 * s * s + 3 * s - 2
}

/// Size bound `15p+28q+2p²+4pq+2q²` for the rigidified set.
pub fn rigidify_size(p: usize, q: usize) -> usize {
    15 * p + 28 * q + 2 * p * p + 4 * p * q + 2 * q * q
}

/// Size bound without involutions, in terms of `m = |S^±|`.
pub fn rigidify_size_no_involutions(m: usize) -> usize {
    m * m / 2 + 14 * m
}

/// Order of `γ` guaranteeing the full rigidification.
pub fn rigidify_threshold(p: usize, q: usize, no_involutions: bool) -> BigInt {
    if no_involutions {
        let m = 2 * q;
        bound(BigInt::from(rigidify_size_no_involutions(m)) - 4, BoundKind::Fcheck)
    } else {
        bound(BigInt::from(rigidify_size(p, q)) - 4, BoundKind::F)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(bound(2, BoundKind::F), BigInt::from(4320));
        assert_eq!(bound(2, BoundKind::Fcheck), BigInt::from(4608));
        assert_eq!(bound(0, BoundKind::F), BigInt::from(-8));
        assert_eq!(rigidify_size(0, 1), 30);
        assert_eq!(rigidify_size(2, 0), 38);
        assert_eq!(rigidify_size(0, 2), 64);
        assert_eq!(augment_threshold(2, true, false), BigInt::from(3456));
    }

    #[test]
    fn rank_estimates() {
        for r in 2u32..=12 {
            let r = BigInt::from(r);
            let lhs = bound(32 * r.pow(6u32), BoundKind::F);
            assert!(lhs <= (BigInt::from(2) * &r).pow(36u32));
            let lhs = bound(BigInt::from(2) * &r * &r + BigInt::from(28) * &r - 4, BoundKind::Fcheck);
            assert!(lhs <= (BigInt::from(5) * &r).pow(12u32));
        }
    }
}
