//! Triangle counts through the edge `(1, s)` of `Cay(G,S)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::group::{Element, Group};

/// `Δ(s,S) = |S^± ∩ s S^±|`.
pub fn triangle_count(g: &Group, s: &GenSet, x: &Element) -> Result<usize> {
    if !s.contains(x) {
        return Err(Error::NotInSet(g.format(x)));
    }
    Ok(count_unchecked(g, s, x))
}

pub(crate) fn count_unchecked(g: &Group, s: &GenSet, x: &Element) -> usize {
    let xi = g.inv(x);
    s.sym().iter().filter(|u| s.contains(&g.mul(&xi, u))).count()
}

/// Counts per inverse class, keyed by the class representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleCensus {
    pub counts: BTreeMap<Element, usize>,
}

impl TriangleCensus {
    pub fn get(&self, g: &Group, x: &Element) -> Option<usize> {
        let rep = x.clone().min(g.inv(x));
        self.counts.get(&rep).copied()
    }

    /// Whether equal counts only occur within one inverse class.
    pub fn separates(&self) -> bool {
        let mut vals: Vec<usize> = self.counts.values().copied().collect();
        vals.sort_unstable();
        vals.windows(2).all(|w| w[0] != w[1])
    }

    pub fn named(&self, g: &Group) -> BTreeMap<String, usize> {
        self.counts.iter().map(|(e, &c)| (g.format(e), c)).collect()
    }
}

pub fn triangle_census(g: &Group, s: &GenSet) -> TriangleCensus {
    let classes = s.classes(g);
    let counts = classes.par_iter().map(|c| (c.rep.clone(), count_unchecked(g, s, &c.rep))).collect();
    TriangleCensus { counts }
}
