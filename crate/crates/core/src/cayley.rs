//! Cayley graphs, digraphs and labelled balls around the identity.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genset::{ball_elements, GenSet};
use crate::group::{Element, Group};
use crate::Budget;

/// Largest radius accepted by [`build_ball`].
pub const MAX_BALL_RADIUS: usize = 4;

/// Simple graph or digraph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Graph {
    /// Loops are dropped and duplicate arcs merged. For undirected graphs
    /// each pair may be given in either or both orientations.
    pub fn from_arcs(n: usize, directed: bool, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u == v {
                continue;
            }
            out[u].push(v);
            inc[v].push(u);
            if !directed {
                out[v].push(u);
                inc[u].push(v);
            }
        }
        for l in out.iter_mut().chain(inc.iter_mut()) {
            l.sort_unstable();
            l.dedup();
        }
        Graph { directed, out, inc }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    /// Out-neighbours (all neighbours when undirected).
    pub fn out(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn inc(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Edges `u < v` when undirected, all arcs when directed.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (u, l) in self.out.iter().enumerate() {
            for &v in l {
                if self.directed || u < v {
                    e.push((u, v));
                }
            }
        }
        e
    }

    pub fn edge_count(&self) -> usize {
        let arcs: usize = self.out.iter().map(Vec::len).sum();
        if self.directed {
            arcs
        } else {
            arcs / 2
        }
    }

    pub fn common_neighbours(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.out[u], &self.out[v]);
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    /// Induced subgraph on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let arcs = keep.iter().enumerate().flat_map(|(i, &u)| {
            self.out[u].iter().filter_map(|v| pos.get(v).map(|&j| (i, j))).collect::<Vec<_>>()
        });
        Graph::from_arcs(keep.len(), self.directed, arcs)
    }

    /// Whether `perm` maps arcs onto arcs.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.n()
            && (0..self.n()).all(|u| {
                self.out[u].len() == self.out[perm[u]].len()
                    && self.out[u].iter().all(|&v| self.has_arc(perm[u], perm[v]))
            })
    }
}

/// A Cayley graph or ball with every arc `(g, h)` labelled by `g^-1 h`.
///
/// Labels are indices into `gens`: `S^±` for undirected graphs, the base set
/// for digraphs.
#[derive(Clone, Debug)]
pub struct LabelledGraph {
    pub graph: Graph,
    pub vertices: Vec<Element>,
    pub gens: Vec<Element>,
    index: HashMap<Element, usize>,
    arc_labels: Vec<Vec<usize>>,
}

/// Induced subgraph of `Cay(G, T)` on `{1} ∪ T^{<=r}`; vertex 0 is the
/// identity, the rest follow canonical element order.
pub type LabelledBall = LabelledGraph;
pub type CayleyGraph = LabelledGraph;

impl LabelledGraph {
    fn assemble(g: &Group, vertices: Vec<Element>, gens: Vec<Element>, directed: bool) -> Self {
        let index: HashMap<Element, usize> =
            vertices.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut arcs = Vec::new();
        let mut lab: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices.len()];
        for (u, x) in vertices.iter().enumerate() {
            for (k, s) in gens.iter().enumerate() {
                if let Some(&v) = index.get(&g.mul(x, s)) {
                    if u != v {
                        arcs.push((u, v));
                        lab[u].push((v, k));
                    }
                }
            }
        }
        let graph = Graph::from_arcs(vertices.len(), directed, arcs);
        let arc_labels = lab
            .into_iter()
            .enumerate()
            .map(|(u, mut l)| {
                l.sort_unstable();
                l.dedup_by_key(|p| p.0);
                debug_assert_eq!(l.len(), graph.out(u).len());
                l.into_iter().map(|(_, k)| k).collect()
            })
            .collect();
        LabelledGraph { graph, vertices, gens, index, arc_labels }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Label index of the arc `(u, v)`.
    pub fn label_index(&self, u: usize, v: usize) -> Option<usize> {
        self.graph.out(u).binary_search(&v).ok().map(|i| self.arc_labels[u][i])
    }

    pub fn label(&self, u: usize, v: usize) -> Option<&Element> {
        self.label_index(u, v).map(|k| &self.gens[k])
    }

    /// Label indices parallel to `graph.out(u)`.
    pub fn labels_from(&self, u: usize) -> &[usize] {
        &self.arc_labels[u]
    }

    pub fn vertex_names(&self, g: &Group) -> Vec<String> {
        self.vertices.iter().map(|e| g.format(e)).collect()
    }

    pub fn to_dot(&self, g: &Group) -> String {
        let names = self.vertex_names(g);
        let (kw, op) = if self.graph.is_directed() { ("digraph", "->") } else { ("graph", "--") };
        let mut s = format!("{kw} G {{\n");
        for (i, n) in names.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{}\"];", n.replace('"', "\\\""));
        }
        for (u, v) in self.graph.edges() {
            let l = self.label(u, v).map(|e| g.format(e)).unwrap_or_default();
            let _ = writeln!(s, "  {u} {op} {v} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, g: &Group) -> AdjacencyJson {
        let edges = self.graph.edges();
        let labels = edges
            .iter()
            .map(|&(u, v)| (format!("{u},{v}"), self.label(u, v).map(|e| g.format(e)).unwrap_or_default()))
            .collect();
        AdjacencyJson {
            directed: self.graph.is_directed(),
            vertices: self.vertex_names(g),
            edges: edges.into_iter().map(|(u, v)| [u, v]).collect(),
            labels,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjacencyJson {
    pub directed: bool,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
    pub labels: std::collections::BTreeMap<String, String>,
}

/// Ball of radius `r` around the identity in `Cay(G, T)`.
pub fn build_ball(g: &Group, t: &GenSet, r: usize, budget: &Budget) -> Result<LabelledBall> {
    if r == 0 || r > MAX_BALL_RADIUS {
        return Err(Error::Precondition(format!("ball radius must lie in 1..={MAX_BALL_RADIUS}")));
    }
    let mut vertices = vec![g.identity()];
    vertices.extend(ball_elements(g, t, r, budget)?);
    Ok(LabelledGraph::assemble(g, vertices, t.sym().to_vec(), false))
}

/// Whole Cayley graph (`directed = false`, edges `g^-1 h ∈ S^±`) or digraph
/// (arcs `(g, gs)` for `s` in the base set) of an enumerable group.
pub fn build_cayley(g: &Group, s: &GenSet, directed: bool, budget: &Budget) -> Result<CayleyGraph> {
    let vertices = g.elements(budget.enumerate)?;
    let gens = if directed { s.base().to_vec() } else { s.sym().to_vec() };
    Ok(LabelledGraph::assemble(g, vertices, gens, directed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, GroupSpec};

    fn el(x: u64) -> Element {
        Element::from_limbs(&[x])
    }

    #[test]
    fn z6_ball_is_a_path() {
        let g = make_group(&GroupSpec::Cyclic { n: 6, names: None }).unwrap();
        let t = GenSet::new(&g, [el(1)]).unwrap();
        let b = build_ball(&g, &t, 1, &Budget::default()).unwrap();
        assert_eq!(b.vertices, vec![el(0), el(1), el(5)]);
        assert_eq!(b.graph.edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(b.label(0, 2), Some(&el(5)));
        assert_eq!(b.label(2, 0), Some(&el(1)));
    }

    #[test]
    fn q8_ball_is_a_star() {
        let g = make_group(&GroupSpec::Q8 { names: None }).unwrap();
        let t = GenSet::parse(&g, "i,j").unwrap();
        let b = build_ball(&g, &t, 1, &Budget::default()).unwrap();
        assert_eq!(b.n(), 5);
        assert_eq!(b.graph.edge_count(), 4);
        assert_eq!(b.graph.out(0).len(), 4);
    }

    #[test]
    fn z3_graph_and_digraph() {
        let g = make_group(&GroupSpec::Cyclic { n: 3, names: None }).unwrap();
        let s = GenSet::new(&g, [el(1)]).unwrap();
        let un = build_cayley(&g, &s, false, &Budget::default()).unwrap();
        assert_eq!(un.graph.edge_count(), 3);
        let di = build_cayley(&g, &s, true, &Budget::default()).unwrap();
        assert_eq!(di.graph.edges(), vec![(0, 1), (1, 2), (2, 0)]);
        assert!(di.graph.edges().iter().all(|&(u, v)| !di.graph.has_arc(v, u)));
    }

    #[test]
    fn q8_cayley_is_four_regular() {
        let g = make_group(&GroupSpec::Q8 { names: None }).unwrap();
        let s = GenSet::parse(&g, "i,j").unwrap();
        let c = build_cayley(&g, &s, false, &Budget::default()).unwrap();
        assert_eq!(c.n(), 8);
        assert!((0..8).all(|v| c.graph.out(v).len() == 4));
    }

    #[test]
    fn radius_guard() {
        let g = make_group(&GroupSpec::Cyclic { n: 6, names: None }).unwrap();
        let t = GenSet::new(&g, [el(1)]).unwrap();
        assert!(build_ball(&g, &t, 0, &Budget::default()).is_err());
        assert!(build_ball(&g, &t, 5, &Budget::default()).is_err());
    }

    #[test]
    fn dot_and_json_exports() {
        let g = make_group(&GroupSpec::Cyclic { n: 3, names: None }).unwrap();
        let s = GenSet::new(&g, [el(1)]).unwrap();
        let c = build_cayley(&g, &s, true, &Budget::default()).unwrap();
        let dot = c.to_dot(&g);
        assert!(dot.starts_with("digraph G {"));
        assert!(dot.contains("0 -> 1"));
        let js = c.to_json(&g);
        assert_eq!(js.edges.len(), 3);
        assert_eq!(js.vertices.len(), 3);
    }
}
