//! Schreier coset quotients and verification of covering maps.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{build_cayley, CayleyGraph, Graph};
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::group::{closure, Element, Group};
use crate::Budget;

/// Vertex map between two undirected graphs.
#[derive(Clone, Debug)]
pub struct GraphMorphism {
    pub source: Graph,
    pub target: Graph,
    pub map: Vec<usize>,
}

#[derive(Serialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl GraphJson {
    fn of(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

impl GraphMorphism {
    pub fn new(source: Graph, target: Graph, map: Vec<usize>) -> Self {
        GraphMorphism { source, target, map }
    }

    pub fn identity(graph: &Graph) -> Self {
        GraphMorphism::new(graph.clone(), graph.clone(), (0..graph.n()).collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "source": GraphJson::of(&self.source),
            "target": GraphJson::of(&self.target),
            "map": self.map,
        })
    }
}

/// Labels on source edges, keyed by `(min, max)` endpoint pair. Edges
/// without a label are ignored by the label check.
pub type EdgeLabels = HashMap<(usize, usize), usize>;

#[derive(Clone, Debug)]
pub enum CoverMode {
    Covering,
    Radius1Iso,
    LabelCompatible(EdgeLabels),
}

impl CoverMode {
    pub fn name(&self) -> &'static str {
        match self {
            CoverMode::Covering => "covering",
            CoverMode::Radius1Iso => "radius1-iso",
            CoverMode::LabelCompatible(_) => "label-compatible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoverFailure {
    /// Two neighbours of `vertex` share an image.
    NotInjective { vertex: usize, a: usize, b: usize },
    /// The image of the neighbourhood of `vertex` differs from the
    /// neighbourhood of its image.
    NotOnto { vertex: usize, image: Vec<usize>, expected: Vec<usize> },
    /// Induced radius-1 balls have different edge counts.
    BallMismatch { vertex: usize, source_edges: usize, target_edges: usize },
    /// Edges with different labels share an image edge.
    Labels { target: [usize; 2], labels: Vec<usize> },
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverVerdict {
    pub mode: &'static str,
    pub holds: bool,
    pub failure: Option<CoverFailure>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn local(m: &GraphMorphism, v: usize) -> Option<CoverFailure> {
    let mut image: Vec<usize> = Vec::with_capacity(m.source.out(v).len());
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for &u in m.source.out(v) {
        let w = m.map[u];
        if let Some(&a) = seen.get(&w) {
            return Some(CoverFailure::NotInjective { vertex: v, a, b: u });
        }
        seen.insert(w, u);
        image.push(w);
    }
    image.sort_unstable();
    let expected = m.target.out(m.map[v]);
    (image != expected).then(|| CoverFailure::NotOnto { vertex: v, image, expected: expected.to_vec() })
}

fn ball_edges(g: &Graph, v: usize) -> usize {
    let nb = g.out(v);
    nb.len() + nb.iter().map(|&u| g.out(u).iter().filter(|w| nb.binary_search(w).is_ok()).count()).sum::<usize>() / 2
}

pub fn check_covering(m: &GraphMorphism, mode: &CoverMode) -> Result<CoverVerdict> {
    if m.map.len() != m.source.n() {
        return Err(Error::Precondition(format!(
            "map has {} entries for {} source vertices",
            m.map.len(),
            m.source.n()
        )));
    }
    if let Some(&bad) = m.map.iter().find(|&&w| w >= m.target.n()) {
        return Err(Error::Precondition(format!("map sends a vertex to {bad}, outside the target")));
    }
    if m.source.is_directed() || m.target.is_directed() {
        return Err(Error::Precondition("coverings are checked between undirected graphs".into()));
    }
    let n = m.source.n();
    let mut failure = (0..n).into_par_iter().find_map_first(|v| local(m, v));
    if failure.is_none() {
        failure = match mode {
            CoverMode::Covering => None,
            CoverMode::Radius1Iso => (0..n).into_par_iter().find_map_first(|v| {
                let (s, t) = (ball_edges(&m.source, v), ball_edges(&m.target, m.map[v]));
                (s != t).then_some(CoverFailure::BallMismatch { vertex: v, source_edges: s, target_edges: t })
            }),
            CoverMode::LabelCompatible(labels) => {
                let mut by_image: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
                for (u, v) in m.source.edges() {
                    if let Some(&l) = labels.get(&key(u, v)) {
                        let ls = by_image.entry(key(m.map[u], m.map[v])).or_default();
                        if !ls.contains(&l) {
                            ls.push(l);
                        }
                    }
                }
                by_image.into_iter().find(|(_, ls)| ls.len() > 1).map(|((a, b), mut ls)| {
                    ls.sort_unstable();
                    CoverFailure::Labels { target: [a, b], labels: ls }
                })
            }
        };
    }
    Ok(CoverVerdict { mode: mode.name(), holds: failure.is_none(), failure })
}

/// Inverse-class labels of the `S`-edges of a Cayley graph.
pub fn class_labels(g: &Group, cay: &CayleyGraph, s: &GenSet) -> EdgeLabels {
    let classes = s.classes(g);
    let mut out = EdgeLabels::new();
    for (u, v) in cay.graph.edges() {
        let Some(x) = cay.label(u, v) else { continue };
        if let Some(k) = classes.iter().position(|c| c.contains(x)) {
            out.insert((u, v), k);
        }
    }
    out
}

/// Right-coset quotient of `Cay(G, S)` with its defects listed.
#[derive(Clone, Debug)]
pub struct SchreierQuotient {
    pub subgroup: Vec<Element>,
    /// Smallest element of each coset, in increasing order.
    pub representatives: Vec<Element>,
    pub cayley: CayleyGraph,
    pub morphism: GraphMorphism,
    /// `(coset, generator)` with `H g s = H g`.
    pub loops: Vec<(usize, Element)>,
    /// `(coset, coset, multiplicity)` for pairs joined more than once.
    pub multi_edges: Vec<(usize, usize, usize)>,
}

impl SchreierQuotient {
    pub fn is_simple(&self) -> bool {
        self.loops.is_empty() && self.multi_edges.is_empty()
    }

    pub fn to_json(&self, g: &Group) -> serde_json::Value {
        serde_json::json!({
            "subgroup_order": self.subgroup.len(),
            "cosets": self.representatives.iter().map(|x| g.format(x)).collect::<Vec<_>>(),
            "simple": self.is_simple(),
            "loops": self.loops.iter().map(|(c, s)| serde_json::json!([c, g.format(s)])).collect::<Vec<_>>(),
            "multi_edges": self.multi_edges,
            "morphism": self.morphism.to_json(),
        })
    }
}

pub fn schreier_graph(g: &Group, s: &GenSet, h_generators: &[Element], budget: &Budget) -> Result<SchreierQuotient> {
    let cayley = build_cayley(g, s, false, budget)?;
    let subgroup = closure(g, h_generators, budget.enumerate)?;
    let mut coset = vec![usize::MAX; cayley.n()];
    let mut representatives = Vec::new();
    for v in 0..cayley.n() {
        if coset[v] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        representatives.push(cayley.vertices[v].clone());
        for h in &subgroup {
            let w = cayley.index_of(&g.mul(h, &cayley.vertices[v])).ok_or(Error::ForeignElement)?;
            coset[w] = id;
        }
    }
    let mut loops = Vec::new();
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (c, rep) in representatives.iter().enumerate() {
        for x in s.sym() {
            let d = coset[cayley.index_of(&g.mul(rep, x)).ok_or(Error::ForeignElement)?];
            if d == c {
                loops.push((c, x.clone()));
            } else if c < d {
                *mult.entry((c, d)).or_default() += 1;
            }
        }
    }
    let multi_edges = mult.iter().filter(|(_, &k)| k > 1).map(|(&(a, b), &k)| (a, b, k)).collect();
    let target = Graph::from_arcs(representatives.len(), false, mult.keys().copied());
    let morphism = GraphMorphism::new(cayley.graph.clone(), target, coset);
    Ok(SchreierQuotient { subgroup, representatives, cayley, morphism, loops, multi_edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, GroupSpec};

    fn el(x: u64) -> Element {
        Element::from_limbs(&[x])
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_arcs(n, false, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn z12_onto_z3() {
        let m = GraphMorphism::new(cycle(12), cycle(3), (0..12).map(|i| i % 3).collect());
        assert!(check_covering(&m, &CoverMode::Covering).unwrap().holds);
        let v = check_covering(&m, &CoverMode::Radius1Iso).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failure, Some(CoverFailure::BallMismatch { vertex: 0, source_edges: 2, target_edges: 3 }));
    }

    #[test]
    fn z12_onto_z4_quotient() {
        let g = make_group(&GroupSpec::Cyclic { n: 12, names: None }).unwrap();
        let s = GenSet::new(&g, [el(1)]).unwrap();
        let q = schreier_graph(&g, &s, &[el(4)], &Budget::default()).unwrap();
        assert_eq!(q.representatives, vec![el(0), el(1), el(2), el(3)]);
        assert!(q.is_simple());
        assert_eq!(q.morphism.target, cycle(4));
        assert!(check_covering(&q.morphism, &CoverMode::Radius1Iso).unwrap().holds);
    }

    #[test]
    fn sym3_by_transposition() {
        let spec = GroupSpec::Permutation {
            degree: 3,
            generators: vec![vec![1, 0, 2], vec![1, 2, 0]],
            names: Some(vec!["t".into(), "c".into()]),
        };
        let g = make_group(&spec).unwrap();
        let s = GenSet::parse(&g, "t,c").unwrap();
        let t = g.parse("t").unwrap();
        let q = schreier_graph(&g, &s, &[t], &Budget::default()).unwrap();
        assert_eq!(q.morphism.target.n(), 3);
        assert!(!q.is_simple());
        assert!(!check_covering(&q.morphism, &CoverMode::Covering).unwrap().holds);
    }

    #[test]
    fn trivial_subgroup_is_identity() {
        let g = make_group(&GroupSpec::Dihedral { n: 5, names: None }).unwrap();
        let s = GenSet::parse(&g, "r,f").unwrap();
        let q = schreier_graph(&g, &s, &[], &Budget::default()).unwrap();
        assert_eq!(q.morphism.map, (0..10).collect::<Vec<_>>());
        assert_eq!(q.morphism.target, q.cayley.graph);
        let labels = class_labels(&g, &q.cayley, &s);
        for mode in [CoverMode::Covering, CoverMode::Radius1Iso, CoverMode::LabelCompatible(labels)] {
            assert!(check_covering(&q.morphism, &mode).unwrap().holds);
        }
    }

    #[test]
    fn mixed_labels_are_caught() {
        let m = GraphMorphism::new(cycle(6), cycle(3), (0..6).map(|i| i % 3).collect());
        let mut labels = EdgeLabels::new();
        labels.insert((0, 1), 0);
        labels.insert((3, 4), 1);
        let v = check_covering(&m, &CoverMode::LabelCompatible(labels)).unwrap();
        assert_eq!(v.failure, Some(CoverFailure::Labels { target: [0, 1], labels: vec![0, 1] }));
    }
}
