//! Group-theoretic predicates: abelian and exponent data, generalized
//! dicyclic and dihedral structure, the `Q8` relation test, and conditions
//! on generating sets that guarantee small orientation-rigid triples.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::genset::{ball_elements, GenSet};
use crate::group::{closure, element_order, Element, FiniteGroup, Group};
use crate::Budget;

/// Largest group for which a dense multiplication table is built.
pub const TABLE_LIMIT: usize = 4096;

/// Abelian index-2 subgroup `A` with an element outside it acting by
/// inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    pub a_generators: Vec<Element>,
    pub a_elements: Vec<Element>,
    /// `x` of order 4 (dicyclic) or `t` of order 2 (dihedral).
    pub outside: Element,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionKind {
    Inverse,
    IdentityOnSubgroup,
}

/// A non-identity automorphism with `φ(g) ∈ {g, g^-1}` for every `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    /// Elements fixed by the map, for `IdentityOnSubgroup`.
    pub fixed: Vec<Element>,
}

impl Obstruction {
    pub fn apply(&self, g: &Group, x: &Element) -> Element {
        match self.kind {
            ObstructionKind::Inverse => g.inv(x),
            ObstructionKind::IdentityOnSubgroup if self.fixed.binary_search(x).is_ok() => x.clone(),
            ObstructionKind::IdentityOnSubgroup => g.inv(x),
        }
    }

    /// Homomorphism, non-trivial, and each image in `{g, g^-1}`.
    pub fn validate(&self, f: &FiniteGroup) -> bool {
        let g = f.group();
        let img: Vec<usize> = f.elements().iter().map(|x| f.index_of(&self.apply(g, x)).unwrap()).collect();
        let n = f.len();
        let moves = (0..n).any(|a| img[a] != a);
        let local = (0..n).all(|a| img[a] == a || img[a] == f.inv(a));
        let hom = (0..n).into_par_iter().all(|a| (0..n).all(|b| img[f.mul(a, b)] == f.mul(img[a], img[b])));
        moves && local && hom
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub order: u64,
    pub abelian: bool,
    pub exponent: u64,
    pub has_element_of_order_gt2: bool,
    pub generalized_dicyclic: Option<SplitWitness>,
    /// Every abelian index-2 subgroup admitting an inverting element of
    /// order 4.
    pub dicyclic_witnesses: Vec<SplitWitness>,
    pub generalized_dihedral: Option<SplitWitness>,
    pub center: Vec<Element>,
    pub watkins_obstruction: Option<Obstruction>,
}

fn names(g: &Group, xs: &[Element]) -> Vec<String> {
    xs.iter().map(|x| g.format(x)).collect()
}

fn split_json(g: &Group, w: &Option<SplitWitness>, key: &str) -> Value {
    match w {
        None => json!({ "holds": false }),
        Some(w) => json!({
            "holds": true,
            "a_generators": names(g, &w.a_generators),
            "a_order": w.a_elements.len(),
            key: g.format(&w.outside),
        }),
    }
}

impl ClassificationReport {
    pub fn to_json(&self, g: &Group) -> Value {
        json!({
            "group": g.label(),
            "order": self.order,
            "abelian": self.abelian,
            "exponent": self.exponent,
            "has_element_of_order_gt2": self.has_element_of_order_gt2,
            "generalized_dicyclic": split_json(g, &self.generalized_dicyclic, "x"),
            "generalized_dihedral": split_json(g, &self.generalized_dihedral, "t"),
            "center": names(g, &self.center),
            "watkins_obstruction": self.watkins_obstruction.as_ref().map(|o| json!({
                "kind": o.kind,
                "fixed": names(g, &o.fixed),
            })),
        })
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / crate::group::gcd(a, b) * b
}

/// Invariants that need no enumeration: abelian-ness from the generators
/// and the existence of an element of order greater than 2 (any
/// non-abelian group has one).
pub fn quick_invariants(g: &Group) -> (bool, bool) {
    let gens = g.generator_elements();
    let abelian = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| g.commutes(a, b)));
    let big = !abelian || gens.iter().any(|x| !g.is_identity(&g.mul(x, x)));
    (abelian, big)
}

/// Greedy generating set of a subgroup given as a sorted element list.
fn subgroup_generators(f: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut mask = f.closure_mask(&[]);
    for &x in members {
        if !mask[x] {
            gens.push(x);
            mask = f.closure_mask(&gens);
        }
    }
    gens
}

/// Index-2 subgroups as membership masks, via the elementary abelian
/// quotient `G / <g^2>`.
pub fn index_two_subgroups(f: &FiniteGroup) -> Vec<Vec<bool>> {
    let n = f.len();
    let squares: Vec<usize> = (0..n).map(|x| f.mul(x, x)).collect();
    let sq = f.closure_mask(&squares);
    let mut covered: Vec<usize> = (0..n).filter(|&x| sq[x]).collect();
    let mut coord = vec![u64::MAX; n];
    for &x in &covered {
        coord[x] = 0;
    }
    let mut dim = 0;
    for g in 0..n {
        if coord[g] != u64::MAX {
            continue;
        }
        let mut fresh = Vec::with_capacity(covered.len());
        for &y in &covered {
            let z = f.mul(y, g);
            coord[z] = coord[y] | 1 << dim;
            fresh.push(z);
        }
        covered.extend(fresh);
        dim += 1;
    }
    (1u64..1 << dim)
        .map(|func| (0..n).map(|x| (coord[x] & func).count_ones() % 2 == 0).collect())
        .collect()
}

fn split_witnesses(f: &FiniteGroup, want_order: usize, all: bool) -> Vec<SplitWitness> {
    let mut out = Vec::new();
    for mask in index_two_subgroups(f) {
        let members: Vec<usize> = (0..f.len()).filter(|&x| mask[x]).collect();
        let gens = subgroup_generators(f, &members);
        let abelian = gens.iter().enumerate().all(|(i, &a)| gens[i + 1..].iter().all(|&b| f.commutes(a, b)));
        if !abelian {
            continue;
        }
        let outside = (0..f.len()).find(|&x| {
            !mask[x]
                && f.order_of(x) == want_order
                && gens.iter().all(|&a| f.mul(f.mul(x, a), f.inv(x)) == f.inv(a))
        });
        if let Some(x) = outside {
            out.push(SplitWitness {
                a_generators: gens.iter().map(|&a| f.element(a).clone()).collect(),
                a_elements: members.iter().map(|&a| f.element(a).clone()).collect(),
                outside: f.element(x).clone(),
            });
            if !all {
                break;
            }
        }
    }
    out
}

pub fn classify_group(g: &Group, budget: &Budget) -> Result<ClassificationReport> {
    let f = FiniteGroup::new(g, budget.enumerate.min(TABLE_LIMIT))?;
    let n = f.len();
    let abelian = (0..n).all(|a| (0..n).all(|b| f.commutes(a, b)));
    let exponent = (0..n).map(|x| f.order_of(x) as u64).fold(1, lcm);
    let has_element_of_order_gt2 = exponent > 2;
    let dicyclic_witnesses = if abelian { Vec::new() } else { split_witnesses(&f, 4, true) };
    let generalized_dihedral = split_witnesses(&f, 2, false).into_iter().next();
    let center: Vec<Element> = f.center().into_iter().map(|z| f.element(z).clone()).collect();
    let watkins_obstruction = if abelian && has_element_of_order_gt2 {
        Some(Obstruction { kind: ObstructionKind::Inverse, fixed: Vec::new() })
    } else {
        dicyclic_witnesses
            .first()
            .map(|w| Obstruction { kind: ObstructionKind::IdentityOnSubgroup, fixed: w.a_elements.clone() })
    };
    if let Some(o) = &watkins_obstruction {
        debug_assert!(o.validate(&f));
    }
    Ok(ClassificationReport {
        order: n as u64,
        abelian,
        exponent,
        has_element_of_order_gt2,
        generalized_dicyclic: dicyclic_witnesses.first().cloned(),
        dicyclic_witnesses,
        generalized_dihedral,
        center,
        watkins_obstruction,
    })
}

/// Whether some element inverts an abelian index-2 subgroup with order 4,
/// and `G` is not abelian.
pub fn is_generalized_dicyclic(g: &Group, budget: &Budget) -> Result<bool> {
    Ok(classify_group(g, budget)?.generalized_dicyclic.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Q8Verdict {
    NotQ8Quotient,
    ProperQuotient,
    IsomorphicToQ8,
}

/// Test the relations `gh = hg^-1`, `hg = gh^-1`.
pub fn q8_test(g: &Group, x: &Element, y: &Element) -> Q8Verdict {
    let rel1 = g.mul(x, y) == g.mul(y, &g.inv(x));
    let rel2 = g.mul(y, x) == g.mul(x, &g.inv(y));
    if !(rel1 && rel2) {
        return Q8Verdict::NotQ8Quotient;
    }
    let square_trivial = |e: &Element| g.is_identity(&g.mul(e, e));
    if g.commutes(x, y) && square_trivial(x) && square_trivial(y) {
        return Q8Verdict::ProperQuotient;
    }
    match closure(g, &[x.clone(), y.clone()], 9) {
        Ok(sub) if sub.len() == 8 => Q8Verdict::IsomorphicToQ8,
        _ => Q8Verdict::ProperQuotient,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Star,
    Dagger,
    Ddagger,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarEntry {
    Involution,
    Witness(Element),
    Missing,
}

#[derive(Clone, Debug)]
pub struct ConditionWitness {
    pub which: Condition,
    pub holds: bool,
    /// For each `s` in the base of `S`: `s^2 = 1` or an element `g_s`.
    pub entries: Vec<(Element, StarEntry)>,
    /// Members of `S` breaking the condition.
    pub violations: Vec<Element>,
}

impl ConditionWitness {
    pub fn star_holds(&self) -> bool {
        self.entries.iter().all(|(_, e)| *e != StarEntry::Missing)
    }

    pub fn to_json(&self, g: &Group) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(s, e)| {
                let v = match e {
                    StarEntry::Involution => json!("s^2=1"),
                    StarEntry::Witness(w) => json!(g.format(w)),
                    StarEntry::Missing => Value::Null,
                };
                json!({ "s": g.format(s), "g_s": v })
            })
            .collect();
        json!({
            "condition": self.which,
            "holds": self.holds,
            "entries": entries,
            "violations": names(g, &self.violations),
        })
    }
}

/// `s^2 != g^2` and `s g s^-1 ∉ {g, g^-1}`.
pub fn star_pair(g: &Group, s: &Element, x: &Element) -> bool {
    if g.mul(s, s) == g.mul(x, x) {
        return false;
    }
    let c = g.conj(s, x);
    c != *x && c != g.inv(x)
}

/// Where to look for `g_s` beyond the short candidate lists.
#[derive(Clone, Copy, Debug)]
pub enum StarScope {
    /// Every element of a finite group.
    Whole,
    /// Elements of word length at most `r`.
    Radius(usize),
}

/// Candidates in order: `S^±`, then `{sh, sh^-1, hs^-1, h^-1 s^-1}` for
/// `h ∈ S^{≤2}` not commuting with `s`, then the scope.
pub fn find_star_witness(g: &Group, set: &GenSet, s: &Element, pool: &[Element], short: &[Element]) -> Option<Element> {
    let si = g.inv(s);
    if let Some(x) = set.sym().iter().find(|x| star_pair(g, s, x)) {
        return Some(x.clone());
    }
    for h in short.iter().filter(|h| !g.commutes(s, h)) {
        let hi = g.inv(h);
        for c in [g.mul(s, h), g.mul(s, &hi), g.mul(h, &si), g.mul(&hi, &si)] {
            if star_pair(g, s, &c) {
                return Some(c);
            }
        }
    }
    pool.iter().find(|x| star_pair(g, s, x)).cloned()
}

fn star_entries(g: &Group, set: &GenSet, scope: StarScope, budget: &Budget) -> Result<Vec<(Element, StarEntry)>> {
    let short = ball_elements(g, set, 2, budget)?;
    let pool = match scope {
        StarScope::Whole => g.elements(budget.enumerate)?,
        StarScope::Radius(r) => ball_elements(g, set, r, budget)?,
    };
    Ok(set
        .base()
        .par_iter()
        .map(|s| {
            let e = if g.is_identity(&g.mul(s, s)) {
                StarEntry::Involution
            } else {
                find_star_witness(g, set, s, &pool, &short).map_or(StarEntry::Missing, StarEntry::Witness)
            };
            (s.clone(), e)
        })
        .collect())
}

/// The subgroup generated by all squares.
pub fn square_subgroup(g: &Group, budget: &Budget) -> Result<Vec<Element>> {
    let squares: Vec<Element> = g.elements(budget.enumerate)?.iter().map(|x| g.mul(x, x)).collect();
    closure(g, &squares, budget.enumerate)
}

pub fn check_condition(g: &Group, set: &GenSet, which: Condition, scope: Option<StarScope>, budget: &Budget) -> Result<ConditionWitness> {
    let finite = g.is_enumerable(budget.enumerate);
    let scope = match scope {
        Some(s) => s,
        None if finite => StarScope::Whole,
        None => return Err(Error::Precondition("witness search in an infinite group needs a radius".into())),
    };
    let entries = star_entries(g, set, scope, budget)?;
    let violations: Vec<Element> = match which {
        Condition::Star => entries.iter().filter(|(_, e)| *e == StarEntry::Missing).map(|(s, _)| s.clone()).collect(),
        Condition::Dagger => {
            let elements = g.elements(budget.enumerate)?;
            set.base()
                .iter()
                .filter(|s| {
                    let order = element_order(g, s, 4);
                    let central = elements.iter().all(|x| g.commutes(s, x));
                    order == Some(4) || (central && order != Some(2))
                })
                .cloned()
                .collect()
        }
        Condition::Ddagger => {
            let sq = square_subgroup(g, budget)?;
            set.base()
                .iter()
                .filter(|s| {
                    let s2 = g.mul(s, s);
                    !g.is_identity(&s2) && sq.binary_search(&s2).is_ok() && sq.iter().all(|z| g.commutes(&s2, z))
                })
                .cloned()
                .collect()
        }
    };
    Ok(ConditionWitness { which, holds: violations.is_empty(), entries, violations })
}

/// Replace each central member `s` of `S` by `st` for the first non-central
/// member `t`, keeping `|S|`.
pub fn replace_central(g: &Group, set: &GenSet, budget: &Budget) -> Result<GenSet> {
    let elements = g.elements(budget.enumerate)?;
    let central = |s: &Element| elements.iter().all(|x| g.commutes(s, x));
    let t = set
        .base()
        .iter()
        .find(|s| !central(s))
        .ok_or_else(|| Error::Precondition("G must not be abelian".into()))?
        .clone();
    let base: Vec<Element> = set.base().iter().map(|s| if central(s) { g.mul(s, &t) } else { s.clone() }).collect();
    GenSet::new(g, base)
}
