//! Repeated augmentation until triangle counts tell the original classes
//! apart from each other and from everything added.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use super::augment::{augment, AugmentationTrace};
use super::bounds::{rigidify_size, rigidify_size_no_involutions, rigidify_threshold};
use super::EnlargeOptions;
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::group::{element_order, Element, Group};
use crate::triangles::count_unchecked;

/// Classes of the original set must reach this many triangles; added
/// elements stay at or below one less.
pub const MIN_ORIGINAL: usize = 7;

#[derive(Clone, Debug, Serialize)]
pub struct Rigidification {
    #[serde(skip)]
    pub set: GenSet,
    pub steps: Vec<AugmentationTrace>,
    /// Target of each class under `[s] ↦ [s²]`, when probing found one.
    pub arcs: Vec<Option<usize>>,
    pub forest: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
    pub size_bound: usize,
    pub threshold: String,
    pub below_bound: bool,
}

struct State<'a> {
    g: &'a Group,
    gamma: &'a Element,
    opts: &'a EnlargeOptions,
    reps: Vec<Element>,
    cur: GenSet,
    steps: Vec<AugmentationTrace>,
    cap: usize,
}

impl State<'_> {
    fn count(&self, i: usize) -> usize {
        count_unchecked(self.g, &self.cur, &self.reps[i])
    }

    fn apply(&mut self, i: usize) -> Result<()> {
        if self.steps.len() >= self.cap {
            return Err(Error::SearchFailed(format!("more than {} augmentation steps", self.cap)));
        }
        let aug = augment(self.g, &self.cur, &self.reps[i], self.gamma, self.opts)?;
        self.cur = aug.set;
        self.steps.push(aug.trace);
        Ok(())
    }

    /// Counts of `list` pairwise distinct and absent from `done`.
    fn distinct(&self, list: &[usize], done: &[usize]) -> bool {
        let taken: BTreeSet<usize> = done.iter().map(|&u| self.count(u)).collect();
        let mut seen = BTreeSet::new();
        list.iter().all(|&v| {
            let c = self.count(v);
            !taken.contains(&c) && seen.insert(c)
        })
    }
}

/// Functional-graph split into an arc-respecting forest order and cycles.
fn split(arcs: &[Option<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = arcs.len();
    let mut on_cycle = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        let mut path = vec![start];
        let mut x = start;
        while let Some(y) = arcs[x] {
            if let Some(pos) = path.iter().position(|&p| p == y) {
                let cyc = path[pos..].to_vec();
                if !on_cycle[cyc[0]] {
                    for &c in &cyc {
                        on_cycle[c] = true;
                    }
                    cycles.push(cyc);
                }
                break;
            }
            if on_cycle[y] {
                break;
            }
            path.push(y);
            x = y;
        }
    }
    let mut indeg = vec![0usize; n];
    for v in 0..n {
        if let Some(t) = arcs[v] {
            if !on_cycle[v] && !on_cycle[t] {
                indeg[t] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| !on_cycle[v] && indeg[v] == 0).collect();
    let mut forest = Vec::new();
    while let Some(v) = ready.pop_first() {
        forest.push(v);
        if let Some(t) = arcs[v] {
            if !on_cycle[t] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.insert(t);
                }
            }
        }
    }
    for c in &mut cycles {
        let k = c.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i).unwrap();
        c.rotate_left(k);
    }
    cycles.sort_by_key(|c| (c.len(), c[0]));
    (forest, cycles)
}

pub fn rigidify(g: &Group, s: &GenSet, gamma: &Element, opts: &EnlargeOptions) -> Result<Rigidification> {
    let counts = s.class_counts(g);
    let (p, q) = (counts.p, counts.q);
    if opts.no_involutions && p > 0 {
        return Err(Error::Precondition("S contains involutions".into()));
    }
    let ord = element_order(g, gamma, u64::MAX)
        .ok_or_else(|| Error::Precondition("the order of γ could not be determined".into()))?;
    let threshold = rigidify_threshold(p, q, opts.no_involutions);
    let below_bound = BigInt::from(ord) < threshold;
    if below_bound && !opts.best_effort {
        return Err(Error::Precondition(format!(
            "ord(γ) = {ord} is below the rigidification threshold {threshold} (p = {p}, q = {q})"
        )));
    }
    let size_bound = if opts.no_involutions {
        rigidify_size_no_involutions(s.sym_len())
    } else {
        rigidify_size(p, q)
    };
    let inner = EnlargeOptions { best_effort: true, ..*opts };
    let start = s.symmetrized(g);
    let reps: Vec<Element> = start.classes(g).into_iter().map(|c| c.rep).collect();
    let v = reps.len();

    let mut arcs = vec![None; v];
    for (i, arc) in arcs.iter_mut().enumerate() {
        let probe = augment(g, &start, &reps[i], gamma, &inner)?;
        let grew: Vec<usize> = (0..v)
            .filter(|&j| j != i)
            .filter(|&j| count_unchecked(g, &probe.set, &reps[j]) > count_unchecked(g, &start, &reps[j]))
            .collect();
        if grew.len() > 1 {
            return Err(Error::SearchFailed(format!("class {i} raised {} other classes", grew.len())));
        }
        *arc = grew.first().copied();
    }
    let (forest, cycles) = split(&arcs);

    let cap = 4 * (4 * p + 7 * q + v * v) + 64;
    let mut st = State { g, gamma, opts: &inner, reps, cur: start, steps: Vec::new(), cap };
    for i in 0..v {
        while st.count(i) < MIN_ORIGINAL {
            st.apply(i)?;
        }
    }
    let mut done: Vec<usize> = Vec::new();
    for &x in &forest {
        while !st.distinct(&[x], &done) {
            st.apply(x)?;
        }
        done.push(x);
    }
    for cyc in &cycles {
        let c = cyc.len();
        for k in (1..c.saturating_sub(1)).rev() {
            while !st.distinct(&cyc[k + 1..], &done) {
                st.apply(cyc[k])?;
            }
        }
        while !st.distinct(cyc, &done) {
            st.apply(cyc[0])?;
        }
        done.extend(cyc.iter().copied());
    }
    let State { cur, steps, .. } = st;
    Ok(Rigidification {
        set: cur,
        steps,
        arcs,
        forest,
        cycles,
        size_bound,
        threshold: threshold.to_string(),
        below_bound,
    })
}

/// Counts per class of `t`, and whether `s` is separated inside `t`: every
/// `s`-class reaches the minimum, added classes stay below it, and equal
/// counts only occur within one inverse class.
pub fn separation(g: &Group, s: &GenSet, t: &GenSet) -> (bool, BTreeMap<Element, usize>) {
    let census: BTreeMap<Element, usize> =
        t.classes(g).into_iter().map(|c| (c.rep.clone(), count_unchecked(g, t, &c.rep))).collect();
    let original: BTreeSet<Element> = s.classes(g).into_iter().map(|c| c.rep).collect();
    let high = census.iter().all(|(r, &c)| if original.contains(r) { c >= MIN_ORIGINAL } else { c < MIN_ORIGINAL });
    let mut seen = BTreeSet::new();
    let unique = original.iter().all(|r| seen.insert(census[r]));
    (high && unique && s.is_subset_of(t), census)
}
