//! One augmentation step: add `Δ_n = {γⁿ, γ⁻ⁿ, s0⁻¹γⁿ, γ⁻ⁿs0}` to a
//! symmetric set so that the triangle count of `s0` grows while the counts
//! of other members stay put.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::bounds::{augment_threshold, case_threshold};
use super::EnlargeOptions;
use crate::error::{Error, Result};
use crate::genset::{ball_set, GenSet};
use crate::group::{element_order, Element, Group};
use crate::triangles::count_unchecked;

const CHUNK: usize = 256;

#[derive(Clone, Debug, Serialize)]
pub struct AugmentationTrace {
    pub s0: Element,
    pub gamma: Element,
    pub gamma_order: u64,
    pub n: u64,
    pub delta: Vec<Element>,
    /// Orbit size of `s0` under `g ↦ γ⁻ⁿgγⁿ`.
    pub a: u64,
    /// Orbit size of `s0` under `g ↦ γ⁻ⁿgγ⁻ⁿ`.
    pub b: u64,
    pub m: u64,
    pub case: u8,
    pub delta_pair: (i64, i64),
    pub below_bound: bool,
}

#[derive(Clone, Debug)]
pub struct Augmentation {
    pub set: GenSet,
    pub trace: AugmentationTrace,
}

/// Admissible count changes `(Δ(s0), Δ(s0²))` by the order of `s0`.
pub fn allowed_pairs(order: u64) -> &'static [(i64, i64)] {
    match order {
        2 => &[(2, 0), (4, 0)],
        3 => &[(1, 1), (2, 2), (3, 3)],
        4 => &[(1, 0), (2, 0), (2, 2)],
        _ => &[(1, 0), (2, 0), (2, 1)],
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest `k ≥ 1` dividing `ord` with `fixed(k)`, given that the fixing
/// exponents form the subgroup of `Z/ord` generated by that `k`.
fn orbit_size(ord: u64, fixed: impl Fn(u64) -> bool) -> u64 {
    let mut k = ord;
    for p in prime_factors(ord) {
        while k % p == 0 && fixed(k / p) {
            k /= p;
        }
    }
    k
}

/// Why a candidate `n` was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reject {
    ShortPower,
    ShortShifted,
    DoublePower,
    Alpha,
    Beta,
    BetaShifted,
    Involution,
    Postcondition,
}

struct Ctx<'a> {
    g: &'a Group,
    s: &'a GenSet,
    s0: &'a Element,
    s0_inv: Element,
    s0_sq: Element,
    s0_order: u64,
    gamma: &'a Element,
    short: HashSet<Element>,
    base_counts: BTreeMap<Element, usize>,
    case: u8,
    no_involutions: bool,
}

impl Ctx<'_> {
    fn out(&self, x: &Element) -> bool {
        !self.s.contains(x)
    }

    fn is_involution(&self, x: &Element) -> bool {
        self.g.is_identity(&self.g.mul(x, x))
    }

    fn try_n(&self, n: u64) -> std::result::Result<(Vec<Element>, GenSet, (i64, i64)), Reject> {
        let g = self.g;
        let gn = g.pow(self.gamma, n as i128);
        let gmn = g.inv(&gn);
        if self.short.contains(&gn) {
            return Err(Reject::ShortPower);
        }
        let shifted = g.mul(&self.s0_inv, &gn);
        if self.short.contains(&shifted) {
            return Err(Reject::ShortShifted);
        }
        let g2n = g.mul(&gn, &gn);
        if self.s.contains(&g2n) || self.s.contains(&g.mul(&self.s0_inv, &g2n)) {
            return Err(Reject::DoublePower);
        }
        let alpha = g.product([&gmn, self.s0, &gn]);
        let beta = g.product([&gmn, self.s0, &gmn]);
        if matches!(self.case, 1 | 3) && !self.out(&alpha) {
            return Err(Reject::Alpha);
        }
        if matches!(self.case, 1 | 2) {
            if !self.out(&beta) {
                return Err(Reject::Beta);
            }
            if !self.out(&g.mul(&beta, self.s0)) {
                return Err(Reject::BetaShifted);
            }
        }
        let delta = vec![gn.clone(), gmn.clone(), shifted, g.mul(&gmn, self.s0)];
        if self.no_involutions && delta.iter().any(|x| self.is_involution(x)) {
            return Err(Reject::Involution);
        }
        let (set, pair) = self.verify(&delta).ok_or(Reject::Postcondition)?;
        Ok((delta, set, pair))
    }

    /// Recompute every postcondition from scratch.
    fn verify(&self, delta: &[Element]) -> Option<(GenSet, (i64, i64))> {
        let g = self.g;
        if delta.iter().any(|d| self.s.contains(d)) {
            return None;
        }
        let squares: HashSet<Element> = self.s.sym().iter().map(|x| g.mul(x, x)).collect();
        if delta.iter().any(|d| squares.contains(d)) {
            return None;
        }
        let new = self.s.extended(g, delta.iter().cloned()).ok()?.symmetrized(g);
        if new.sym_len() > self.s.sym_len() + 4 {
            return None;
        }
        if delta.iter().any(|d| count_unchecked(g, &new, d) > 6) {
            return None;
        }
        let s0_inv_sq = g.inv(&self.s0_sq);
        let exempt = [self.s0, &self.s0_inv, &self.s0_sq, &s0_inv_sq];
        for (rep, &before) in &self.base_counts {
            let inv = g.inv(rep);
            if exempt.contains(&rep) || exempt.contains(&&inv) {
                continue;
            }
            if count_unchecked(g, &new, rep) != before {
                return None;
            }
        }
        let first = count_unchecked(g, &new, self.s0) as i64 - count_unchecked(g, self.s, self.s0) as i64;
        let second = if self.s.contains(&self.s0_sq) {
            count_unchecked(g, &new, &self.s0_sq) as i64 - count_unchecked(g, self.s, &self.s0_sq) as i64
        } else {
            0
        };
        let pair = (first, second);
        allowed_pairs(self.s0_order).contains(&pair).then_some((new, pair))
    }
}

/// Candidate exponents in search order for a case.
fn candidates(case: u8, ord: u64, a: u64, b: u64, m: u64) -> Box<dyn Iterator<Item = u64>> {
    let below = ord.saturating_sub(1);
    match case {
        1 => Box::new(1..=m.min(below)),
        2 => Box::new((1..).map(move |t| t * a).take_while(move |&n| n <= b.min(below))),
        _ => Box::new((1..).map(move |t| t * b).take_while(move |&n| n < a.min(ord))),
    }
}

/// Augment the symmetric set `s` at `s0` using powers of `gamma`.
pub fn augment(g: &Group, s: &GenSet, s0: &Element, gamma: &Element, opts: &EnlargeOptions) -> Result<Augmentation> {
    if !s.contains(s0) {
        return Err(Error::NotInSet(g.format(s0)));
    }
    let ord = element_order(g, gamma, u64::MAX)
        .ok_or_else(|| Error::Precondition("the order of γ could not be determined".into()))?;
    if ord < 2 {
        return Err(Error::Precondition("γ must not be the identity".into()));
    }
    let s0_order = element_order(g, s0, u64::MAX).expect("finite order");
    if opts.no_involutions && s0_order == 2 {
        return Err(Error::Precondition("s0 must not be an involution when avoiding involutions".into()));
    }
    let size = s.sym_len();
    let threshold = augment_threshold(size, ord % 2 == 1, opts.no_involutions);
    let below_bound = BigInt::from(ord) < threshold;
    if below_bound && !opts.best_effort {
        return Err(Error::Precondition(format!(
            "ord(γ) = {ord} is below the augmentation threshold {threshold} for |S| = {size}"
        )));
    }
    let m = case_threshold(size);
    let a = orbit_size(ord, |k| {
        let gk = g.pow(gamma, k as i128);
        g.commutes(&gk, s0)
    });
    let b = orbit_size(ord, |k| {
        let gmk = g.pow(gamma, -(k as i128));
        g.product([&gmk, s0, &gmk]) == *s0
    });
    let case = if a > m && b > m {
        1
    } else if a <= m && b > m {
        2
    } else if b <= m && a > m {
        3
    } else if a <= b {
        2
    } else {
        3
    };
    let base_counts = s
        .classes(g)
        .into_iter()
        .map(|c| {
            let n = count_unchecked(g, s, &c.rep);
            (c.rep, n)
        })
        .collect();
    let ctx = Ctx {
        g,
        s,
        s0,
        s0_inv: g.inv(s0),
        s0_sq: g.mul(s0, s0),
        s0_order,
        gamma,
        short: ball_set(g, s, 2, &opts.budget)?,
        base_counts,
        case,
        no_involutions: opts.no_involutions,
    };
    let mut histogram: BTreeMap<Reject, u64> = BTreeMap::new();
    let mut iter = candidates(case, ord, a, b, m);
    loop {
        let chunk: Vec<u64> = iter.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results: Vec<_> = chunk.par_iter().map(|&n| (n, ctx.try_n(n))).collect();
        for (n, r) in results {
            match r {
                Ok((delta, set, delta_pair)) => {
                    let trace = AugmentationTrace {
                        s0: s0.clone(),
                        gamma: gamma.clone(),
                        gamma_order: ord,
                        n,
                        delta,
                        a,
                        b,
                        m,
                        case,
                        delta_pair,
                        below_bound,
                    };
                    return Ok(Augmentation { set, trace });
                }
                Err(why) => *histogram.entry(why).or_default() += 1,
            }
        }
    }
    Err(Error::SearchFailed(format!(
        "no admissible n (case {case}, A = {a}, B = {b}, M = {m}); rejections: {histogram:?}"
    )))
}
