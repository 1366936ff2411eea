//! Automorphisms of Cayley graphs and balls, and the rigidity checks built
//! on them.

pub mod colour;
pub mod search;

use serde::Serialize;

use crate::cayley::{build_ball, build_cayley, Graph, LabelledGraph};
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::group::{Element, Group};
use crate::Budget;

pub use colour::{ColourCsp, ColourMap};
pub use search::{AutSearch, Found};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AutFlags {
    pub colour_preserving: bool,
    pub orientation_preserving: bool,
    pub label_preserving: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AutoReport {
    pub count: usize,
    /// Vertex fixed by every listed automorphism.
    pub fixed: Option<usize>,
    pub automorphisms: Vec<Vec<usize>>,
    pub flags: Vec<AutFlags>,
}

fn check_vertices(n: usize, fix: Option<usize>, budget: &Budget) -> Result<()> {
    let limit = if fix.is_some() { budget.vertices_fixed } else { budget.vertices_free };
    if n > limit {
        return Err(Error::Budget { what: "automorphism search vertices", limit });
    }
    Ok(())
}

/// Every automorphism (or every one fixing `fix`), sorted.
pub fn enumerate_automorphisms(graph: &Graph, fix: Option<usize>, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    check_vertices(graph.n(), fix, budget)?;
    let out = AutSearch::new(graph).run(fix, None, budget.automorphisms, &|_| false)?;
    let mut perms: Vec<Vec<usize>> = out.found.into_iter().map(|f| f.perm).collect();
    perms.sort();
    Ok(perms)
}

/// Flags of an automorphism of a labelled graph, judged on the arcs whose
/// label lies in `S^±`.
pub fn flags(lg: &LabelledGraph, g: &Group, s: &GenSet, perm: &[usize]) -> AutFlags {
    let mut f = AutFlags { colour_preserving: true, orientation_preserving: true, label_preserving: true };
    let base: std::collections::HashSet<&Element> = s.base().iter().collect();
    for u in 0..lg.n() {
        for &v in lg.graph.out(u) {
            let Some(x) = lg.label(u, v) else { continue };
            if !s.contains(x) {
                continue;
            }
            let Some(y) = lg.label(perm[u], perm[v]) else {
                return AutFlags { colour_preserving: false, orientation_preserving: false, label_preserving: false };
            };
            if y != x {
                f.label_preserving = false;
                if *y != g.inv(x) {
                    f.colour_preserving = false;
                }
            }
            if base.contains(x) && !base.contains(y) {
                f.orientation_preserving = false;
            }
        }
    }
    f
}

/// Automorphisms of a labelled graph with flags relative to `s`.
pub fn auto_report(lg: &LabelledGraph, g: &Group, s: &GenSet, fix: Option<usize>, budget: &Budget) -> Result<AutoReport> {
    let automorphisms = enumerate_automorphisms(&lg.graph, fix, budget)?;
    let flags = automorphisms.iter().map(|p| flags(lg, g, s, p)).collect();
    Ok(AutoReport { count: automorphisms.len(), fixed: fix, automorphisms, flags })
}

fn ball_perm(ball: &LabelledGraph, csp: &ColourCsp, g: &Group, m: &ColourMap) -> Vec<usize> {
    ball.vertices
        .iter()
        .map(|x| ball.index_of(&csp.apply(g, m, x)).expect("image stays in the ball"))
        .collect()
}

/// `B(G,T)` as permutations of the radius-1 ball of `Cay(G,T)`.
pub fn ball_colour_autos(g: &Group, t: &GenSet, budget: &Budget) -> Result<AutoReport> {
    if t.sym_len() + 1 > budget.vertices_fixed {
        return Err(Error::Budget { what: "ball vertices", limit: budget.vertices_fixed });
    }
    let ball = build_ball(g, t, 1, budget)?;
    let csp = ColourCsp::new(g, t);
    let mut automorphisms: Vec<Vec<usize>> =
        csp.enumerate(budget.automorphisms)?.iter().map(|m| ball_perm(&ball, &csp, g, m)).collect();
    automorphisms.sort();
    let flags = automorphisms.iter().map(|p| flags(&ball, g, t, p)).collect();
    Ok(AutoReport { count: automorphisms.len(), fixed: Some(0), automorphisms, flags })
}

fn class_search<'a>(lg: &'a LabelledGraph, g: &Group) -> AutSearch<'a> {
    let ids: std::collections::BTreeMap<Element, u32> = {
        let mut reps: Vec<Element> = lg.gens.iter().map(|x| x.clone().min(g.inv(x))).collect();
        reps.sort();
        reps.dedup();
        reps.into_iter().enumerate().map(|(i, e)| (e, i as u32)).collect()
    };
    AutSearch::new(&lg.graph).with_arc_colours(|u, v| {
        let x = lg.label(u, v).expect("arc");
        ids[&x.clone().min(g.inv(x))]
    })
}

/// Colour-preserving automorphisms of the radius-1 ball fixing the
/// identity, found by graph search with arcs coloured by label class. An
/// independent route to `B(G,T)`.
pub fn ball_colour_autos_by_search(g: &Group, t: &GenSet, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let ball = build_ball(g, t, 1, budget)?;
    check_vertices(ball.n(), Some(0), budget)?;
    let out = class_search(&ball, g).run(Some(0), None, budget.automorphisms, &|_| false)?;
    let mut perms: Vec<Vec<usize>> = out.found.into_iter().map(|f| f.perm).collect();
    perms.sort();
    Ok(perms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripleMode {
    Orientation,
    Colour,
    Grr,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Images of the vertices of the radius-1 ball of `Cay(G,T)`.
    pub perm: Vec<usize>,
    /// Points of `{1} ∪ S^±` that move, as `(x, φ(x))`.
    pub moved: Vec<(Element, Element)>,
    pub is_inverse_map: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleVerdict {
    pub mode: TripleMode,
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Restrictions to the `S`-ball examined by the graph search.
    pub examined: usize,
}

fn witness(ball: &LabelledGraph, g: &Group, s: &GenSet, perm: Vec<usize>) -> Witness {
    let mut moved = Vec::new();
    let mut pts = vec![g.identity()];
    pts.extend(s.sym().iter().cloned());
    for x in &pts {
        let i = ball.index_of(x).expect("S-ball inside T-ball");
        if perm[i] != i {
            moved.push((x.clone(), ball.vertices[perm[i]].clone()));
        }
    }
    let is_inverse_map = ball.vertices.iter().enumerate().all(|(i, x)| ball.vertices[perm[i]] == g.inv(x));
    Witness { perm, moved, is_inverse_map }
}

/// Decide whether `(G,S,T)` is a strong orientation-rigid, colour-rigid or
/// GRR triple by inspecting the radius-1 ball of `Cay(G,T)`.
pub fn check_triple(g: &Group, s: &GenSet, t: &GenSet, mode: TripleMode, budget: &Budget) -> Result<TripleVerdict> {
    if !s.is_subset_of(t) {
        return Err(Error::NotSubset("S^±", "T^±"));
    }
    if t.sym_len() + 1 > budget.vertices_fixed {
        return Err(Error::Budget { what: "ball vertices", limit: budget.vertices_fixed });
    }
    let ball = build_ball(g, t, 1, budget)?;
    match mode {
        TripleMode::Orientation => {
            let csp = ColourCsp::new(g, t);
            let s_classes: Vec<usize> = s
                .classes(g)
                .iter()
                .filter(|c| !c.is_involution())
                .map(|c| csp.class_index(&c.rep).expect("S ⊆ T"))
                .collect();
            let found = if s_classes.is_empty() {
                None
            } else {
                csp.inverse_map().or_else(|| s_classes.iter().find_map(|&c| csp.find(&[(c, true)])))
            };
            let witness = found.map(|m| witness(&ball, g, s, ball_perm(&ball, &csp, g, &m)));
            Ok(TripleVerdict { mode, holds: witness.is_none(), witness, examined: 0 })
        }
        TripleMode::Colour | TripleMode::Grr => {
            let mut pts = vec![g.identity()];
            pts.extend(s.sym().iter().cloned());
            let focus: Vec<usize> = pts.iter().map(|x| ball.index_of(x).expect("S ⊆ T")).collect();
            let bad = |f: &Found| -> bool {
                match mode {
                    TripleMode::Grr => f.restriction.iter().zip(&focus).any(|(a, b)| a != b),
                    _ => !colour_on_s_ball(&ball, g, s, &pts, &f.restriction),
                }
            };
            let out = AutSearch::new(&ball.graph).run(Some(0), Some(&focus), budget.automorphisms, &bad)?;
            let examined = out.found.len();
            let witness = if out.stopped {
                out.found.last().map(|f| witness(&ball, g, s, f.perm.clone()))
            } else {
                None
            };
            Ok(TripleVerdict { mode, holds: witness.is_none(), witness, examined })
        }
    }
}

/// The colour condition on `{1} ∪ S^±`, given the images (as ball indices)
/// of `pts` in order.
fn colour_on_s_ball(ball: &LabelledGraph, g: &Group, s: &GenSet, pts: &[Element], images: &[usize]) -> bool {
    for (a, x) in pts.iter().enumerate() {
        let px = &ball.vertices[images[a]];
        let px_inv = g.inv(px);
        for u in s.sym() {
            let y = g.mul(x, u);
            let Some(b) = pts.iter().position(|p| *p == y) else { continue };
            let step = g.mul(&px_inv, &ball.vertices[images[b]]);
            if step != *u && step != g.inv(u) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GlobalMode {
    Grr,
    Drr,
    Orr,
    OrientationPair,
    ColourPair,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalVerdict {
    pub mode: GlobalMode,
    pub holds: bool,
    /// A stabilizer element of the whole graph violating the property.
    pub witness: Option<Vec<usize>>,
    /// Orientation pairs only: triviality of `B(G,S)`.
    pub ball_criterion: Option<bool>,
    /// Orientation pairs only: triviality of the colour-preserving
    /// stabilizer of the whole Cayley graph, when it can be enumerated.
    pub global_criterion: Option<bool>,
    pub disagreement: bool,
}

/// First stabilizer element of the identity that moves a neighbour of the
/// identity (or, for `colour`, sends a neighbour `s` outside `{s, s^-1}`).
/// Left translations make this equivalent to a statement about the whole
/// stabilizer.
fn stabilizer_violation(lg: &LabelledGraph, g: &Group, search: AutSearch, colour: bool, budget: &Budget) -> Result<Option<Vec<usize>>> {
    let one = lg.index_of(&g.identity()).expect("identity is a vertex");
    check_vertices(lg.n(), Some(one), budget)?;
    let mut focus = vec![one];
    focus.extend(lg.graph.out(one).iter().copied());
    let bad = |f: &Found| -> bool {
        f.restriction.iter().zip(&focus).any(|(&img, &v)| {
            if colour {
                let x = &lg.vertices[v];
                let y = &lg.vertices[img];
                y != x && *y != g.inv(x)
            } else {
                img != v
            }
        })
    };
    let out = search.run(Some(one), Some(&focus), budget.automorphisms, &bad)?;
    Ok(if out.stopped { out.found.last().map(|f| f.perm.clone()) } else { None })
}

/// Global rigidity statements about `Cay(G,S)` or `Cay→(G,S)`.
pub fn check_global(g: &Group, s: &GenSet, mode: GlobalMode, budget: &Budget) -> Result<GlobalVerdict> {
    let plain = |holds: bool, witness: Option<Vec<usize>>| GlobalVerdict {
        mode,
        holds,
        witness,
        ball_criterion: None,
        global_criterion: None,
        disagreement: false,
    };
    match mode {
        GlobalMode::Grr | GlobalMode::ColourPair => {
            let lg = build_cayley(g, s, false, budget)?;
            let w = stabilizer_violation(&lg, g, AutSearch::new(&lg.graph), mode == GlobalMode::ColourPair, budget)?;
            Ok(plain(w.is_none(), w))
        }
        GlobalMode::Drr | GlobalMode::Orr => {
            if mode == GlobalMode::Orr && !s.is_asymmetric(g) {
                return Ok(plain(false, None));
            }
            let lg = build_cayley(g, s, true, budget)?;
            let w = stabilizer_violation(&lg, g, AutSearch::new(&lg.graph), false, budget)?;
            Ok(plain(w.is_none(), w))
        }
        GlobalMode::OrientationPair => {
            let csp = ColourCsp::new(g, s);
            let ball_trivial = csp.enumerate(2).map(|v| v.len() == 1).or_else(|e| match e {
                Error::Budget { .. } => Ok(false),
                e => Err(e),
            })?;
            let (global, witness) = match build_cayley(g, s, false, budget) {
                Ok(lg) if lg.n() <= budget.vertices_fixed => {
                    let w = stabilizer_violation(&lg, g, class_search(&lg, g), false, budget)?;
                    (Some(w.is_none()), w)
                }
                Ok(_) | Err(Error::NotEnumerable(..)) => (None, None),
                Err(e) => return Err(e),
            };
            Ok(GlobalVerdict {
                mode,
                holds: ball_trivial,
                witness,
                ball_criterion: Some(ball_trivial),
                global_criterion: global,
                disagreement: global.is_some_and(|gl| gl != ball_trivial),
            })
        }
    }
}
