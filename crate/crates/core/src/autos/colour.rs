//! The group `B(G,T)` of colour-preserving automorphisms of the radius-1
//! ball fixing the identity.
//!
//! Such a map sends each `t ∈ T^±` to `t` or `t^-1`, and bijectivity forces
//! one choice per inverse class, so `B(G,T)` is the solution set of a
//! boolean problem with one "flip" variable per non-involution class. Each
//! triple `s, t, st ∈ T^±` constrains only the flips of `[s]` and `[st]`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::genset::{GenSet, InverseClass};
use crate::group::{Element, Group};

/// Allowed value pairs for `(flip[a], flip[b])`, indexed `[a][b]`.
type Table = [[bool; 2]; 2];

pub struct ColourCsp {
    classes: Vec<InverseClass>,
    /// Class index of each element of `T^±`.
    class_of: HashMap<Element, usize>,
    /// Variable index of each class, `None` for involutions.
    var_of: Vec<Option<usize>>,
    unary: Vec<[bool; 2]>,
    binary: Vec<Vec<(usize, Table)>>,
}

/// An element of `B(G,T)`: the set of flipped classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColourMap {
    pub flipped: Vec<bool>,
}

impl ColourCsp {
    pub fn new(g: &Group, t: &GenSet) -> Self {
        let classes = t.classes(g);
        let mut class_of = HashMap::new();
        let mut var_of = Vec::with_capacity(classes.len());
        let mut nvars = 0;
        for (i, c) in classes.iter().enumerate() {
            class_of.insert(c.rep.clone(), i);
            class_of.insert(c.inverse.clone(), i);
            if c.is_involution() {
                var_of.push(None);
            } else {
                var_of.push(Some(nvars));
                nvars += 1;
            }
        }
        let mut unary = vec![[true; 2]; nvars];
        let mut pair: HashMap<(usize, usize), Table> = HashMap::new();
        let image = |x: &Element, flip: bool| if flip { g.inv(x) } else { x.clone() };
        for s in t.sym() {
            let cs = class_of[s];
            for u_t in t.sym() {
                let u = g.mul(s, u_t);
                let Some(&cu) = class_of.get(&u) else { continue };
                let ti = g.inv(u_t);
                let ok = |fs: bool, fu: bool| {
                    let ps = image(s, fs);
                    let pu = image(&u, fu);
                    pu == g.mul(&ps, u_t) || pu == g.mul(&ps, &ti)
                };
                match (var_of[cs], var_of[cu]) {
                    (None, None) => debug_assert!(ok(false, false)),
                    (Some(a), None) => {
                        for f in [false, true] {
                            unary[a][f as usize] &= ok(f, false);
                        }
                    }
                    (None, Some(b)) => {
                        for f in [false, true] {
                            unary[b][f as usize] &= ok(false, f);
                        }
                    }
                    (Some(a), Some(b)) if a == b => {
                        for f in [false, true] {
                            unary[a][f as usize] &= ok(f, f);
                        }
                    }
                    (Some(a), Some(b)) => {
                        let (lo, hi, swap) = if a < b { (a, b, false) } else { (b, a, true) };
                        let e = pair.entry((lo, hi)).or_insert([[true; 2]; 2]);
                        for fa in [false, true] {
                            for fb in [false, true] {
                                let allowed = ok(fa, fb);
                                let (x, y) = if swap { (fb, fa) } else { (fa, fb) };
                                e[x as usize][y as usize] &= allowed;
                            }
                        }
                    }
                }
            }
        }
        let mut binary = vec![Vec::new(); nvars];
        let mut keys: Vec<_> = pair.into_iter().collect();
        keys.sort_by_key(|(k, _)| *k);
        for ((a, b), tab) in keys {
            let transposed = [[tab[0][0], tab[1][0]], [tab[0][1], tab[1][1]]];
            binary[a].push((b, tab));
            binary[b].push((a, transposed));
        }
        ColourCsp { classes, class_of, var_of, unary, binary }
    }

    pub fn classes(&self) -> &[InverseClass] {
        &self.classes
    }

    pub fn class_index(&self, e: &Element) -> Option<usize> {
        self.class_of.get(e).copied()
    }

    fn nvars(&self) -> usize {
        self.unary.len()
    }

    fn to_map(&self, vals: &[bool]) -> ColourMap {
        ColourMap {
            flipped: self.var_of.iter().map(|v| v.is_some_and(|i| vals[i])).collect(),
        }
    }

    /// Unit propagation over two-valued domains (bit 0: keep, bit 1: flip).
    fn propagate(&self, dom: &mut [u8], mut queue: Vec<usize>) -> bool {
        while let Some(a) = queue.pop() {
            for &(b, tab) in &self.binary[a] {
                let mut allowed = 0u8;
                for fa in 0..2 {
                    if dom[a] >> fa & 1 == 1 {
                        for fb in 0..2 {
                            if tab[fa][fb] {
                                allowed |= 1 << fb;
                            }
                        }
                    }
                }
                let nd = dom[b] & allowed;
                if nd == 0 {
                    return false;
                }
                if nd != dom[b] {
                    dom[b] = nd;
                    queue.push(b);
                }
            }
        }
        true
    }

    fn initial(&self, forced: &[(usize, bool)]) -> Option<Vec<u8>> {
        let mut dom: Vec<u8> = self.unary.iter().map(|u| u[0] as u8 | (u[1] as u8) << 1).collect();
        for &(c, f) in forced {
            let v = self.var_of[c]?;
            dom[v] &= 1 << f as u8;
        }
        if dom.iter().any(|&d| d == 0) {
            return None;
        }
        let all: Vec<usize> = (0..self.nvars()).collect();
        self.propagate(&mut dom, all).then_some(dom)
    }

    /// Depth-first over variables in order, flipped value first.
    fn solve(&self, dom: Vec<u8>, limit: usize, out: &mut Vec<ColourMap>) -> Result<()> {
        match dom.iter().position(|&d| d == 3) {
            None => {
                if out.len() >= limit {
                    return Err(Error::Budget { what: "colour-preserving maps", limit });
                }
                let vals: Vec<bool> = dom.iter().map(|&d| d == 2).collect();
                out.push(self.to_map(&vals));
                Ok(())
            }
            Some(v) => {
                for f in [1u8, 0] {
                    let mut d = dom.clone();
                    d[v] = 1 << f;
                    if self.propagate(&mut d, vec![v]) {
                        self.solve(d, limit, out)?;
                    }
                }
                Ok(())
            }
        }
    }

    fn first(&self, dom: Vec<u8>) -> Option<ColourMap> {
        match dom.iter().position(|&d| d == 3) {
            None => Some(self.to_map(&dom.iter().map(|&d| d == 2).collect::<Vec<_>>())),
            Some(v) => [1u8, 0].into_iter().find_map(|f| {
                let mut d = dom.clone();
                d[v] = 1 << f;
                if self.propagate(&mut d, vec![v]) {
                    self.first(d)
                } else {
                    None
                }
            }),
        }
    }

    /// All of `B(G,T)`, sorted with the identity first.
    pub fn enumerate(&self, limit: usize) -> Result<Vec<ColourMap>> {
        let mut out = Vec::new();
        if let Some(dom) = self.initial(&[]) {
            self.solve(dom, limit, &mut out)?;
        }
        out.sort();
        Ok(out)
    }

    /// A member of `B(G,T)` with the given class flips, if one exists.
    pub fn find(&self, forced: &[(usize, bool)]) -> Option<ColourMap> {
        self.initial(forced).and_then(|d| self.first(d))
    }

    /// Whether flipping every non-involution class is in `B(G,T)`; for the
    /// ball this is exactly `g ↦ g^-1`.
    pub fn inverse_map(&self) -> Option<ColourMap> {
        let forced: Vec<(usize, bool)> =
            (0..self.classes.len()).filter(|&c| self.var_of[c].is_some()).map(|c| (c, true)).collect();
        self.initial(&forced).map(|d| self.to_map(&d.iter().map(|&x| x == 2).collect::<Vec<_>>()))
    }

    /// Image of an element of `{1} ∪ T^±` under a map.
    pub fn apply(&self, g: &Group, m: &ColourMap, x: &Element) -> Element {
        match self.class_of.get(x) {
            Some(&c) if m.flipped[c] => g.inv(x),
            _ => x.clone(),
        }
    }

    pub fn is_identity(&self, m: &ColourMap) -> bool {
        !m.flipped.iter().any(|&f| f)
    }

    /// Direct check of the defining condition, independent of the solver.
    pub fn satisfies(&self, g: &Group, t: &GenSet, m: &ColourMap) -> bool {
        let mut dom: Vec<Element> = vec![g.identity()];
        dom.extend(t.sym().iter().cloned());
        dom.iter().all(|s| {
            t.sym().iter().all(|u_t| {
                let u = g.mul(s, u_t);
                if !t.contains(&u) {
                    return true;
                }
                let ps = self.apply(g, m, s);
                let pu = self.apply(g, m, &u);
                pu == g.mul(&ps, u_t) || pu == g.mul(&ps, &g.inv(u_t))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genset::ball_elements;
    use crate::group::{make_group, GroupSpec};
    use crate::Budget;

    fn hn(n: u32) -> (Group, GenSet) {
        let g = make_group(&GroupSpec::Hn { n, names: None }).unwrap();
        let s = GenSet::new(&g, g.generator_elements()).unwrap();
        (g, s)
    }

    fn ball_set(g: &Group, s: &GenSet, r: usize) -> GenSet {
        GenSet::new(g, ball_elements(g, s, r, &Budget::default()).unwrap()).unwrap()
    }

    #[test]
    fn inverse_map_in_h4_radius_two() {
        let (g, s) = hn(4);
        let t = ball_set(&g, &s, 2);
        let csp = ColourCsp::new(&g, &t);
        let inv = csp.inverse_map().expect("inverse map is colour-preserving");
        assert!(!csp.is_identity(&inv));
        assert!(csp.satisfies(&g, &t, &inv));
    }

    #[test]
    fn q8_identity_on_a_inverse_elsewhere() {
        let g = make_group(&GroupSpec::Q8 { names: None }).unwrap();
        let s = GenSet::parse(&g, "i,j").unwrap();
        let t = ball_set(&g, &s, 3);
        let csp = ColourCsp::new(&g, &t);
        let i = g.lookup("i").unwrap();
        let maps = csp.enumerate(1 << 16).unwrap();
        let in_a = |x: &Element| *x == i || *x == g.inv(&i) || *x == g.mul(&i, &i);
        let fixes_a = maps
            .iter()
            .any(|m| t.sym().iter().all(|x| (csp.apply(&g, m, x) == *x) == in_a(x)));
        assert!(fixes_a);
        for m in &maps {
            assert!(csp.satisfies(&g, &t, m));
        }
    }

    #[test]
    fn elementary_abelian_is_trivial() {
        let g = make_group(&GroupSpec::Abelian { factors: vec![2, 2], names: None }).unwrap();
        let s = GenSet::new(&g, g.generator_elements()).unwrap();
        let csp = ColourCsp::new(&g, &s);
        assert_eq!(csp.enumerate(16).unwrap().len(), 1);
    }

    #[test]
    fn solver_matches_brute_force_on_z7() {
        let g = make_group(&GroupSpec::Cyclic { n: 7, names: None }).unwrap();
        let s = GenSet::new(&g, [Element::from_limbs(&[1]), Element::from_limbs(&[2])]).unwrap();
        let csp = ColourCsp::new(&g, &s);
        let k = csp.classes().len();
        let mut brute = Vec::new();
        for mask in 0..1u32 << k {
            let m = ColourMap { flipped: (0..k).map(|c| mask >> c & 1 == 1).collect() };
            if csp.satisfies(&g, &s, &m) {
                brute.push(m);
            }
        }
        brute.sort();
        assert_eq!(csp.enumerate(64).unwrap(), brute);
    }
}
