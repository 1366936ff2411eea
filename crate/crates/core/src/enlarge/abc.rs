//! Colour-rigid enlargement of `{a, b, ab}` when `a`, `b` and `ab` share a
//! large prime order: add four powers of `a`, three of `b` and two of `ab`.

use std::collections::HashSet;

use serde::Serialize;

use super::EnlargeOptions;
use crate::error::{Error, Result};
use crate::genset::{ball_set, GenSet};
use crate::group::{element_order, Element, Group};
use crate::triangles::count_unchecked;

/// Smallest prime order for which an admissible triple is guaranteed.
pub const MIN_PRIME: u64 = 264;

#[derive(Clone, Debug, Serialize)]
pub struct AbcChoice {
    pub p: u64,
    pub i: u64,
    pub j: u64,
    pub k: u64,
    /// `(i, j, k)` candidates whose census missed a target.
    pub rejected: u64,
    pub counts: (usize, usize, usize),
    /// Largest count among added classes. Interior powers such as
    /// `a^{i+1}` always see `a^i`, `a^{i+2}`, `a` and `a^-1`, so this is 4.
    pub max_added: usize,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn powers(g: &Group, x: &Element, from: u64, len: u64) -> Vec<Element> {
    (from..from + len).map(|e| g.pow(x, e as i128)).collect()
}

fn avoids(ball: &HashSet<Element>, xs: &[Element]) -> bool {
    xs.iter().all(|x| !ball.contains(x))
}

/// Admissible exponents: `lo < e`, `2e < p - margin`, and `e - d` differs
/// from `⌊p/3⌋` for each `d < shifts`.
fn exponents(p: u64, lo: u64, margin: u64, shifts: u64) -> impl Iterator<Item = u64> {
    let third = p / 3;
    (lo + 1..).take_while(move |&e| 2 * e + margin < p).filter(move |&e| (0..shifts).all(|d| e - d != third))
}

pub fn abc_enlarge(g: &Group, a: &Element, b: &Element, opts: &EnlargeOptions) -> Result<(GenSet, GenSet, AbcChoice)> {
    if g.commutes(a, b) {
        return Err(Error::Precondition("a and b must not commute".into()));
    }
    let c = g.mul(a, b);
    let order = |x: &Element| element_order(g, x, u64::MAX).unwrap_or(0);
    let p = order(a);
    if order(b) != p || order(&c) != p || !is_prime(p) {
        return Err(Error::Precondition("a, b and ab must have the same prime order".into()));
    }
    if p < MIN_PRIME && !opts.best_effort {
        return Err(Error::Precondition(format!("the common prime order {p} must exceed 263")));
    }
    let s0 = GenSet::new(g, [a.clone(), b.clone(), c.clone()])?;
    let ball0 = ball_set(g, &s0, 2, &opts.budget)?;
    let mut rejected = 0;
    for i in exponents(p, 6, 7, 3) {
        let add_a = powers(g, a, i, 4);
        if !avoids(&ball0, &add_a) {
            continue;
        }
        let s1 = s0.extended(g, add_a.iter().cloned())?;
        let ball1 = ball_set(g, &s1, 2, &opts.budget)?;
        for j in exponents(p, 4, 5, 2) {
            let add_b = powers(g, b, j, 3);
            if !avoids(&ball1, &add_b) {
                continue;
            }
            let s2 = s1.extended(g, add_b.iter().cloned())?;
            let ball2 = ball_set(g, &s2, 2, &opts.budget)?;
            for k in exponents(p, 2, 3, 1) {
                let add_c = powers(g, &c, k, 2);
                if !avoids(&ball2, &add_c) {
                    continue;
                }
                let t = s2.extended(g, add_c.iter().cloned())?;
                let counts = (count_unchecked(g, &t, a), count_unchecked(g, &t, b), count_unchecked(g, &t, &c));
                let max_added = t
                    .sym()
                    .iter()
                    .filter(|x| !s0.contains(x))
                    .map(|x| count_unchecked(g, &t, x))
                    .max()
                    .unwrap_or(0);
                let separated = t
                    .sym()
                    .iter()
                    .filter(|x| !s0.contains(x))
                    .all(|x| ![7, 5, 3].contains(&count_unchecked(g, &t, x)));
                if counts == (7, 5, 3) && separated {
                    let choice = AbcChoice { p, i, j, k, rejected, counts, max_added };
                    return Ok((s0, t, choice));
                }
                rejected += 1;
            }
        }
    }
    Err(Error::SearchFailed(format!("no (i, j, k) met the triangle targets ({rejected} rejected)")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_filters() {
        let v: Vec<u64> = exponents(269, 6, 7, 3).take(3).collect();
        assert_eq!(v, vec![7, 8, 9]);
        assert!(exponents(269, 6, 7, 3).all(|i| ![89, 90, 91].contains(&i)));
        assert_eq!(exponents(269, 6, 7, 3).last(), Some(130));
        assert!(is_prime(269) && !is_prime(267));
    }
}
