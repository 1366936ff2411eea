//! Individualization-refinement search for graph automorphisms.
//!
//! Source and image colourings are refined together with one shared
//! signature table, so a branch survives only while both sides split into
//! cells of equal sizes. Branching happens on the images of a set of focus
//! vertices; once every focus vertex is pinned, one extension to a full
//! automorphism is searched for and the restriction is reported.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::cayley::Graph;
use crate::error::{Error, Result};

/// One automorphism, together with its restriction to the focus vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Found {
    pub restriction: Vec<usize>,
    pub perm: Vec<usize>,
}

pub struct Outcome {
    pub found: Vec<Found>,
    /// The stop predicate fired on the last element of `found`.
    pub stopped: bool,
}

/// A graph with vertex colours and arc colours that automorphisms must
/// preserve.
pub struct AutSearch<'a> {
    graph: &'a Graph,
    vcol: Vec<u32>,
    out_col: Vec<Vec<u32>>,
    in_col: Vec<Vec<u32>>,
}

struct Ctx<'s> {
    cut: AtomicUsize,
    count: AtomicUsize,
    overflow: AtomicBool,
    limit: usize,
    stop: &'s (dyn Fn(&Found) -> bool + Sync),
}

enum Flow {
    Continue,
    Stop,
    Abort,
}

impl<'a> AutSearch<'a> {
    /// Arcs start coloured by their number of common (out-)neighbours,
    /// which every automorphism preserves.
    pub fn new(graph: &'a Graph) -> Self {
        let n = graph.n();
        let out_col: Vec<Vec<u32>> = (0..n)
            .map(|u| graph.out(u).iter().map(|&v| graph.common_neighbours(u, v) as u32).collect())
            .collect();
        let mut s = AutSearch { graph, vcol: vec![0; n], out_col, in_col: Vec::new() };
        s.rebuild_in();
        s
    }

    fn rebuild_in(&mut self) {
        let g = self.graph;
        self.in_col = (0..g.n())
            .map(|v| {
                g.inc(v)
                    .iter()
                    .map(|&u| {
                        let i = g.out(u).binary_search(&v).expect("arc present");
                        self.out_col[u][i]
                    })
                    .collect()
            })
            .collect();
    }

    pub fn with_vertex_colours(mut self, cols: &[u32]) -> Self {
        assert_eq!(cols.len(), self.graph.n());
        let pairs: Vec<(u32, u32)> = self.vcol.iter().copied().zip(cols.iter().copied()).collect();
        self.vcol = compact(&pairs);
        self
    }

    /// Refine arc colours by `f(u, v)`.
    pub fn with_arc_colours(mut self, f: impl Fn(usize, usize) -> u32) -> Self {
        let g = self.graph;
        let mut pairs = Vec::new();
        for u in 0..g.n() {
            for (i, &v) in g.out(u).iter().enumerate() {
                pairs.push((self.out_col[u][i], f(u, v)));
            }
        }
        let ids = compact(&pairs);
        let mut k = 0;
        for u in 0..g.n() {
            for c in self.out_col[u].iter_mut() {
                *c = ids[k];
                k += 1;
            }
        }
        self.rebuild_in();
        self
    }

    fn signature(&self, col: &[u32], v: usize, buf: &mut Vec<u32>) {
        buf.clear();
        buf.push(col[v]);
        let g = self.graph;
        let start = buf.len();
        for (i, &w) in g.out(v).iter().enumerate() {
            buf.push(self.out_col[v][i]);
            buf.push(col[w]);
        }
        sort_pairs(&mut buf[start..]);
        if g.is_directed() {
            buf.push(u32::MAX);
            let start = buf.len();
            for (i, &w) in g.inc(v).iter().enumerate() {
                buf.push(self.in_col[v][i]);
                buf.push(col[w]);
            }
            sort_pairs(&mut buf[start..]);
        }
    }

    /// Joint refinement to the coarsest equitable pair. `false` if the two
    /// sides become incompatible.
    fn refine(&self, src: &mut Vec<u32>, tgt: &mut Vec<u32>) -> bool {
        let n = self.graph.n();
        let mut cells = count_cells(src);
        let mut buf = Vec::new();
        loop {
            let mut sigs: Vec<Vec<u32>> = Vec::with_capacity(n);
            for v in 0..n {
                self.signature(src, v, &mut buf);
                sigs.push(buf.clone());
            }
            let mut distinct: Vec<&Vec<u32>> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            let ids: HashMap<&Vec<u32>, u32> =
                distinct.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
            let mut new_src = vec![0u32; n];
            let mut sizes = vec![0i64; ids.len()];
            for v in 0..n {
                let id = ids[&sigs[v]];
                new_src[v] = id;
                sizes[id as usize] += 1;
            }
            let mut new_tgt = vec![0u32; n];
            for v in 0..n {
                self.signature(tgt, v, &mut buf);
                match ids.get(&buf) {
                    Some(&id) => {
                        new_tgt[v] = id;
                        sizes[id as usize] -= 1;
                    }
                    None => return false,
                }
            }
            if sizes.iter().any(|&d| d != 0) {
                return false;
            }
            *src = new_src;
            *tgt = new_tgt;
            let now = ids.len();
            if now == cells {
                return true;
            }
            cells = now;
        }
    }

    fn individualize(col: &[u32], v: usize) -> Vec<u32> {
        let fresh = col.iter().copied().max().unwrap_or(0) + 1;
        let mut c = col.to_vec();
        c[v] = fresh;
        c
    }

    /// Smallest non-singleton source cell holding a vertex of `among`, and
    /// that vertex.
    fn choose(src: &[u32], among: &[usize]) -> Option<(u32, usize)> {
        let mut size: HashMap<u32, usize> = HashMap::new();
        for &c in src {
            *size.entry(c).or_default() += 1;
        }
        among
            .iter()
            .filter(|&&v| size[&src[v]] > 1)
            .map(|&v| (size[&src[v]], src[v], v))
            .min()
            .map(|(_, c, v)| (c, v))
    }

    fn leaf_perm(&self, src: &[u32], tgt: &[u32]) -> Option<Vec<usize>> {
        let n = src.len();
        let mut by_col = vec![usize::MAX; n + 1];
        for (v, &c) in tgt.iter().enumerate() {
            by_col[c as usize] = v;
        }
        let perm: Vec<usize> = src.iter().map(|&c| by_col[c as usize]).collect();
        self.is_automorphism(&perm).then_some(perm)
    }

    /// Automorphism of the coloured graph.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let g = self.graph;
        if !g.is_automorphism(perm) {
            return false;
        }
        (0..g.n()).all(|u| {
            self.vcol[u] == self.vcol[perm[u]]
                && g.out(u).iter().enumerate().all(|(i, &v)| {
                    let j = g.out(perm[u]).binary_search(&perm[v]).unwrap();
                    self.out_col[u][i] == self.out_col[perm[u]][j]
                })
        })
    }

    /// First automorphism extending the current pair of colourings.
    fn extend(&self, src: &[u32], tgt: &[u32], all: &[usize]) -> Option<Vec<usize>> {
        match Self::choose(src, all) {
            None => self.leaf_perm(src, tgt),
            Some((cell, v)) => {
                for w in (0..tgt.len()).filter(|&w| tgt[w] == cell) {
                    let mut s = Self::individualize(src, v);
                    let mut t = Self::individualize(tgt, w);
                    if self.refine(&mut s, &mut t) {
                        if let Some(p) = self.extend(&s, &t, all) {
                            return Some(p);
                        }
                    }
                }
                None
            }
        }
    }

    fn dfs(
        &self,
        src: &[u32],
        tgt: &[u32],
        focus: &[usize],
        all: &[usize],
        branch: usize,
        ctx: &Ctx,
        out: &mut Vec<Found>,
    ) -> Flow {
        if ctx.cut.load(Ordering::Relaxed) < branch || ctx.overflow.load(Ordering::Relaxed) {
            return Flow::Abort;
        }
        match Self::choose(src, focus) {
            None => {
                let Some(perm) = self.extend(src, tgt, all) else {
                    return Flow::Continue;
                };
                let restriction = focus.iter().map(|&v| perm[v]).collect();
                let f = Found { restriction, perm };
                let stop = (ctx.stop)(&f);
                out.push(f);
                if ctx.count.fetch_add(1, Ordering::Relaxed) + 1 > ctx.limit {
                    ctx.overflow.store(true, Ordering::Relaxed);
                    return Flow::Abort;
                }
                if stop {
                    ctx.cut.fetch_min(branch, Ordering::Relaxed);
                    Flow::Stop
                } else {
                    Flow::Continue
                }
            }
            Some((cell, v)) => {
                for w in (0..tgt.len()).filter(|&w| tgt[w] == cell) {
                    let mut s = Self::individualize(src, v);
                    let mut t = Self::individualize(tgt, w);
                    if self.refine(&mut s, &mut t) {
                        match self.dfs(&s, &t, focus, all, branch, ctx, out) {
                            Flow::Continue => {}
                            other => return other,
                        }
                    }
                }
                Flow::Continue
            }
        }
    }

    /// Enumerate automorphisms fixing `fix`, one per distinct restriction
    /// to `focus` (all vertices when `None`), in depth-first order. Stops
    /// after the first one accepted by `stop`. At most `limit` are listed.
    pub fn run(
        &self,
        fix: Option<usize>,
        focus: Option<&[usize]>,
        limit: usize,
        stop: &(dyn Fn(&Found) -> bool + Sync),
    ) -> Result<Outcome> {
        let n = self.graph.n();
        let all: Vec<usize> = (0..n).collect();
        let focus: Vec<usize> = focus.map_or_else(|| all.clone(), <[usize]>::to_vec);
        let ctx = Ctx {
            cut: AtomicUsize::new(usize::MAX),
            count: AtomicUsize::new(0),
            overflow: AtomicBool::new(false),
            limit,
            stop,
        };
        let mut src = self.vcol.clone();
        if let Some(v) = fix {
            src = Self::individualize(&src, v);
        }
        let mut tgt = src.clone();
        if !self.refine(&mut src, &mut tgt) {
            return Ok(Outcome { found: Vec::new(), stopped: false });
        }
        let per_branch: Vec<(Vec<Found>, bool)> = match Self::choose(&src, &focus) {
            None => {
                let mut out = Vec::new();
                let flow = self.dfs(&src, &tgt, &focus, &all, 0, &ctx, &mut out);
                vec![(out, matches!(flow, Flow::Stop))]
            }
            Some((cell, v)) => {
                let cands: Vec<usize> = (0..n).filter(|&w| tgt[w] == cell).collect();
                cands
                    .par_iter()
                    .enumerate()
                    .map(|(b, &w)| {
                        let mut out = Vec::new();
                        let mut s = Self::individualize(&src, v);
                        let mut t = Self::individualize(&tgt, w);
                        let mut stopped = false;
                        if self.refine(&mut s, &mut t) {
                            stopped = matches!(self.dfs(&s, &t, &focus, &all, b, &ctx, &mut out), Flow::Stop);
                        }
                        (out, stopped)
                    })
                    .collect()
            }
        };
        if ctx.overflow.load(Ordering::Relaxed) {
            return Err(Error::Budget { what: "automorphisms listed", limit });
        }
        let mut found = Vec::new();
        for (out, stopped) in per_branch {
            found.extend(out);
            if stopped {
                return Ok(Outcome { found, stopped: true });
            }
        }
        Ok(Outcome { found, stopped: false })
    }
}

fn sort_pairs(s: &mut [u32]) {
    let mut pairs: Vec<(u32, u32)> = s.chunks(2).map(|c| (c[0], c[1])).collect();
    pairs.sort_unstable();
    for (i, (a, b)) in pairs.into_iter().enumerate() {
        s[2 * i] = a;
        s[2 * i + 1] = b;
    }
}

fn count_cells(col: &[u32]) -> usize {
    let mut c = col.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Dense ids for pairs, in sorted pair order.
fn compact(pairs: &[(u32, u32)]) -> Vec<u32> {
    let ids: BTreeMap<(u32, u32), u32> = {
        let mut keys: Vec<(u32, u32)> = pairs.to_vec();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().enumerate().map(|(i, k)| (k, i as u32)).collect()
    };
    pairs.iter().map(|p| ids[p]).collect()
}
