//! Generating sets, their symmetric closures and word-length balls.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{element_order, Element, Group};
use crate::Budget;

/// A set `S` with its symmetric closure `S^± = S ∪ S^-1`.
#[derive(Clone, Debug)]
pub struct GenSet {
    base: Vec<Element>,
    sym: Vec<Element>,
    members: HashSet<Element>,
}

/// An inverse class `{s, s^-1}` with its canonical representative (the
/// smaller of the two).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InverseClass {
    pub rep: Element,
    pub inverse: Element,
}

impl InverseClass {
    pub fn is_involution(&self) -> bool {
        self.rep == self.inverse
    }

    pub fn contains(&self, e: &Element) -> bool {
        *e == self.rep || *e == self.inverse
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    /// Inverse classes consisting of one involution.
    pub p: usize,
    /// Inverse classes `{s, s^-1}` with `s` of order at least 3.
    pub q: usize,
}

impl GenSet {
    /// Duplicates are dropped, first occurrence order kept.
    pub fn new(g: &Group, base: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for e in base {
            if !g.contains(&e) {
                return Err(Error::ForeignElement);
            }
            if g.is_identity(&e) {
                return Err(Error::IdentityInGenSet);
            }
            if seen.insert(e.clone()) {
                kept.push(e);
            }
        }
        let mut members = seen;
        for e in &kept {
            members.insert(g.inv(e));
        }
        let mut sym: Vec<Element> = members.iter().cloned().collect();
        sym.sort();
        Ok(GenSet { base: kept, sym, members })
    }

    pub fn parse(g: &Group, words: &str) -> Result<Self> {
        let elems = words
            .split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(|w| g.parse(w))
            .collect::<Result<Vec<_>>>()?;
        GenSet::new(g, elems)
    }

    /// One canonical representative per inverse class of `sym`.
    pub fn from_symmetric(g: &Group, sym: &[Element]) -> Result<Self> {
        let probe = GenSet::new(g, sym.iter().cloned())?;
        let reps = probe.classes(g).into_iter().map(|c| c.rep).collect::<Vec<_>>();
        GenSet::new(g, reps)
    }

    pub fn base(&self) -> &[Element] {
        &self.base
    }

    /// `S^±` in canonical order.
    pub fn sym(&self) -> &[Element] {
        &self.sym
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.members.contains(e)
    }

    pub fn members(&self) -> &HashSet<Element> {
        &self.members
    }

    pub fn sym_len(&self) -> usize {
        self.sym.len()
    }

    pub fn is_subset_of(&self, other: &GenSet) -> bool {
        self.sym.iter().all(|e| other.contains(e))
    }

    /// `S ∩ S^-1 = ∅` on the base set.
    pub fn is_asymmetric(&self, g: &Group) -> bool {
        let base: HashSet<&Element> = self.base.iter().collect();
        self.base.iter().all(|s| !base.contains(&g.inv(s)))
    }

    /// Inverse classes of `S^±`, sorted by representative.
    pub fn classes(&self, g: &Group) -> Vec<InverseClass> {
        let mut out: Vec<InverseClass> = self
            .sym
            .iter()
            .filter_map(|s| {
                let i = g.inv(s);
                (*s <= i).then(|| InverseClass { rep: s.clone(), inverse: i })
            })
            .collect();
        out.sort();
        out
    }

    pub fn class_counts(&self, g: &Group) -> ClassCounts {
        let classes = self.classes(g);
        let p = classes.iter().filter(|c| c.is_involution()).count();
        ClassCounts { p, q: classes.len() - p }
    }

    /// Counts over the base set as given: elements of order 2 and of order
    /// at least 3.
    pub fn base_counts(&self, g: &Group) -> ClassCounts {
        let p = self
            .base
            .iter()
            .filter(|s| element_order(g, s, 2) == Some(2))
            .count();
        ClassCounts { p, q: self.base.len() - p }
    }

    /// Union with further elements.
    pub fn extended(&self, g: &Group, extra: impl IntoIterator<Item = Element>) -> Result<Self> {
        GenSet::new(g, self.base.iter().cloned().chain(extra))
    }

    /// The symmetric set itself as a base (so `base == sym`).
    pub fn symmetrized(&self, g: &Group) -> Self {
        GenSet::new(g, self.sym.iter().cloned()).expect("closure of a valid set is valid")
    }

    /// Whether `⟨S⟩ = G` for an enumerable group.
    pub fn generates(&self, g: &Group, budget: &Budget) -> Result<bool> {
        let order = g
            .order()
            .filter(|&n| n as u128 <= budget.enumerate as u128)
            .ok_or_else(|| Error::NotEnumerable("unknown/huge".into(), budget.enumerate))?;
        let elems = crate::group::closure(g, &self.sym, budget.enumerate)?;
        Ok(elems.len() as u64 == order)
    }

    pub fn format(&self, g: &Group) -> Vec<String> {
        self.base.iter().map(|e| g.format(e)).collect()
    }
}

/// Non-identity elements of word length at most `n` over `S^±`, in
/// canonical order. Breadth-first closure; the result is inverse-closed.
pub fn ball_elements(g: &Group, s: &GenSet, n: usize, budget: &Budget) -> Result<Vec<Element>> {
    let mut out: Vec<Element> = ball_layers(g, s, n, budget)?.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// Spheres `1..=n` of the word metric (the identity sphere is omitted).
pub fn ball_layers(g: &Group, s: &GenSet, n: usize, budget: &Budget) -> Result<Vec<Vec<Element>>> {
    let id = g.identity();
    let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    let mut layers = Vec::with_capacity(n);
    for _ in 0..n {
        let mut next = Vec::new();
        for x in &frontier {
            for t in s.sym() {
                let y = g.mul(x, t);
                if seen.insert(y.clone()) {
                    if seen.len() - 1 > budget.ball_elements {
                        return Err(Error::Budget { what: "ball size", limit: budget.ball_elements });
                    }
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layers.push(next.clone());
        frontier = next;
    }
    Ok(layers)
}

/// `{1} ∪ S^{≤n}` as a hash set, for word-length queries.
pub fn ball_set(g: &Group, s: &GenSet, n: usize, budget: &Budget) -> Result<HashSet<Element>> {
    let mut set: HashSet<Element> = ball_layers(g, s, n, budget)?.into_iter().flatten().collect();
    set.insert(g.identity());
    Ok(set)
}

/// Word length of `x` if it is at most `cap`.
pub fn word_length(g: &Group, s: &GenSet, x: &Element, cap: usize, budget: &Budget) -> Result<Option<usize>> {
    if g.is_identity(x) {
        return Ok(Some(0));
    }
    let layers = ball_layers(g, s, cap, budget)?;
    Ok(layers.iter().position(|l| l.contains(x)).map(|i| i + 1))
}

/// Breadth-first distances from the identity, for callers that need the
/// whole sphere structure of a finite group.
pub fn distances(g: &Group, s: &GenSet, budget: &Budget) -> Result<Vec<(Element, usize)>> {
    let mut out = vec![(g.identity(), 0)];
    let mut seen: HashSet<Element> = HashSet::from([g.identity()]);
    let mut queue = VecDeque::from([(g.identity(), 0usize)]);
    while let Some((x, d)) = queue.pop_front() {
        for t in s.sym() {
            let y = g.mul(&x, t);
            if seen.insert(y.clone()) {
                if seen.len() > budget.enumerate {
                    return Err(Error::Budget { what: "distance enumeration", limit: budget.enumerate });
                }
                out.push((y.clone(), d + 1));
                queue.push_back((y, d + 1));
            }
        }
    }
    Ok(out)
}
