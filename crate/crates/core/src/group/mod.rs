//! Group backends and element arithmetic.
//!
//! Every element is an opaque vector of machine words whose meaning depends on
//! the backend that created it. Lexicographic comparison of that vector is the
//! canonical element order used for every deterministic output in the crate:
//! table index order, image-tuple order for permutations, and exponent-vector
//! order for the structured families.

mod finite;
mod spec;
mod word;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use finite::FiniteGroup;
pub use spec::{make_group, GroupSpec};
pub use word::parse_word;

/// Largest number of words (elements x encoding width) a permutation closure
/// may allocate when computing the order of a permutation group.
const PERM_CLOSURE_WORDS: usize = 4_000_000;
const PERM_CLOSURE_ELEMENTS: usize = 200_000;

pub type Limbs = SmallVec<[u64; 4]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Element(Limbs);

impl Element {
    pub fn from_limbs(limbs: &[u64]) -> Self {
        Element(Limbs::from_slice(limbs))
    }

    pub fn limbs(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Backend {
    /// Multiplication table over `0..size`, row-major.
    Table {
        size: usize,
        mul: Vec<u32>,
        inv: Vec<u32>,
        identity: u32,
        names: Vec<String>,
    },
    /// Permutations of `0..degree`, stored as image tuples; `(gh)(x) = h(g(x))`.
    Perm { degree: usize },
    /// Z/m1 x ... x Z/mk.
    Abelian { moduli: Vec<u64> },
    /// A x| Z/2 with the involution acting by inversion. Encoding `[flag, a..]`.
    GenDihedral { moduli: Vec<u64> },
    /// Dic(A, y): `x^2 = y`, `x a x^-1 = a^-1`. Encoding `[flag, a..]`.
    GenDicyclic { moduli: Vec<u64>, y: Vec<u64> },
    /// Central extension of F2^n by F2. Bit `n` holds the central coordinate,
    /// bit `n - i` the exponent of `s_i`.
    Hn { n: u32 },
    /// Direct product; encodings are concatenated.
    Product { parts: Vec<Group>, widths: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct Group {
    backend: Backend,
    label: String,
    generators: Vec<(String, Element)>,
    aliases: Vec<(String, Element)>,
    order_cache: OnceLock<Option<u64>>,
}

fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    add_mod(a, neg_mod(b, m), m)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm_checked(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

fn hn_cocycle(n: u32, v: u64, w: u64) -> u64 {
    // sum_{i>j} v_i w_j + sum_i v_i w_i over F2; generator i sits at bit n - i,
    // so "i > j" means a strictly lower bit position.
    let mut acc = (v & w).count_ones() as u64;
    let mut bits = v;
    while bits != 0 {
        let pos = bits.trailing_zeros();
        let above = if pos + 1 >= n { 0 } else { w >> (pos + 1) };
        acc += above.count_ones() as u64;
        bits &= bits - 1;
    }
    acc & 1
}

impl Backend {
    fn width(&self) -> usize {
        match self {
            Backend::Table { .. } | Backend::Hn { .. } => 1,
            Backend::Perm { degree } => *degree,
            Backend::Abelian { moduli } => moduli.len(),
            Backend::GenDihedral { moduli } | Backend::GenDicyclic { moduli, .. } => {
                moduli.len() + 1
            }
            Backend::Product { widths, .. } => widths.iter().sum(),
        }
    }

    fn identity_into(&self, out: &mut Limbs) {
        match self {
            Backend::Table { identity, .. } => out.push(*identity as u64),
            Backend::Perm { degree } => out.extend((0..*degree as u64).map(|x| x)),
            Backend::Abelian { moduli } => out.extend(moduli.iter().map(|_| 0)),
            Backend::GenDihedral { moduli } | Backend::GenDicyclic { moduli, .. } => {
                out.push(0);
                out.extend(moduli.iter().map(|_| 0));
            }
            Backend::Hn { .. } => out.push(0),
            Backend::Product { parts, .. } => {
                for p in parts {
                    p.backend.identity_into(out);
                }
            }
        }
    }

    fn mul_into(&self, a: &[u64], b: &[u64], out: &mut Limbs) {
        match self {
            Backend::Table { size, mul, .. } => {
                out.push(mul[a[0] as usize * size + b[0] as usize] as u64)
            }
            Backend::Perm { .. } => out.extend(a.iter().map(|&x| b[x as usize])),
            Backend::Abelian { moduli } => {
                out.extend(moduli.iter().enumerate().map(|(i, &m)| add_mod(a[i], b[i], m)))
            }
            Backend::GenDihedral { moduli } => {
                let flip = a[0] == 1;
                out.push(a[0] ^ b[0]);
                for (i, &m) in moduli.iter().enumerate() {
                    let x = if flip {
                        sub_mod(a[i + 1], b[i + 1], m)
                    } else {
                        add_mod(a[i + 1], b[i + 1], m)
                    };
                    out.push(x);
                }
            }
            Backend::GenDicyclic { moduli, y } => {
                let flip = a[0] == 1;
                out.push(a[0] ^ b[0]);
                for (i, &m) in moduli.iter().enumerate() {
                    let x = if flip {
                        let t = sub_mod(a[i + 1], b[i + 1], m);
                        if b[0] == 1 {
                            add_mod(t, y[i], m)
                        } else {
                            t
                        }
                    } else {
                        add_mod(a[i + 1], b[i + 1], m)
                    };
                    out.push(x);
                }
            }
            Backend::Hn { n } => {
                let mask = (1u64 << n) - 1;
                let (a0, v) = (a[0] >> n, a[0] & mask);
                let (b0, w) = (b[0] >> n, b[0] & mask);
                let c = (a0 + b0 + hn_cocycle(*n, v, w)) & 1;
                out.push((c << n) | (v ^ w));
            }
            Backend::Product { parts, widths } => {
                let mut off = 0;
                for (p, &w) in parts.iter().zip(widths) {
                    p.backend.mul_into(&a[off..off + w], &b[off..off + w], out);
                    off += w;
                }
            }
        }
    }

    fn inv_into(&self, a: &[u64], out: &mut Limbs) {
        match self {
            Backend::Table { inv, .. } => out.push(inv[a[0] as usize] as u64),
            Backend::Perm { degree } => {
                let start = out.len();
                out.extend(std::iter::repeat(0).take(*degree));
                for (i, &x) in a.iter().enumerate() {
                    out[start + x as usize] = i as u64;
                }
            }
            Backend::Abelian { moduli } => {
                out.extend(moduli.iter().enumerate().map(|(i, &m)| neg_mod(a[i], m)))
            }
            Backend::GenDihedral { moduli } => {
                out.push(a[0]);
                for (i, &m) in moduli.iter().enumerate() {
                    out.push(if a[0] == 1 { a[i + 1] } else { neg_mod(a[i + 1], m) });
                }
            }
            Backend::GenDicyclic { moduli, y } => {
                out.push(a[0]);
                for (i, &m) in moduli.iter().enumerate() {
                    out.push(if a[0] == 1 {
                        add_mod(a[i + 1], y[i], m)
                    } else {
                        neg_mod(a[i + 1], m)
                    });
                }
            }
            Backend::Hn { n } => {
                let mask = (1u64 << n) - 1;
                let (a0, v) = (a[0] >> n, a[0] & mask);
                let b0 = (a0 + hn_cocycle(*n, v, v)) & 1;
                out.push((b0 << n) | v);
            }
            Backend::Product { parts, widths } => {
                let mut off = 0;
                for (p, &w) in parts.iter().zip(widths) {
                    p.backend.inv_into(&a[off..off + w], out);
                    off += w;
                }
            }
        }
    }

    fn contains(&self, a: &[u64]) -> bool {
        if a.len() != self.width() {
            return false;
        }
        match self {
            Backend::Table { size, .. } => (a[0] as usize) < *size,
            Backend::Perm { degree } => {
                let mut seen = vec![false; *degree];
                a.iter().all(|&x| {
                    let ok = (x as usize) < *degree && !seen[x as usize];
                    if ok {
                        seen[x as usize] = true;
                    }
                    ok
                })
            }
            Backend::Abelian { moduli } => a.iter().zip(moduli).all(|(&x, &m)| x < m),
            Backend::GenDihedral { moduli } | Backend::GenDicyclic { moduli, .. } => {
                a[0] <= 1 && a[1..].iter().zip(moduli).all(|(&x, &m)| x < m)
            }
            Backend::Hn { n } => a[0] < (1u64 << (n + 1)),
            Backend::Product { parts, widths } => {
                let mut off = 0;
                parts.iter().zip(widths).all(|(p, &w)| {
                    let ok = p.backend.contains(&a[off..off + w]);
                    off += w;
                    ok
                })
            }
        }
    }

    /// Exact element order when the backend can compute it structurally.
    fn element_order(&self, a: &[u64]) -> Option<u64> {
        let abelian = |xs: &[u64], moduli: &[u64]| -> Option<u64> {
            xs.iter().zip(moduli).try_fold(1u64, |acc, (&x, &m)| {
                lcm_checked(acc, m / gcd(x, m))
            })
        };
        match self {
            Backend::Table { .. } => None,
            Backend::Perm { degree } => {
                let mut seen = vec![false; *degree];
                let mut acc = 1u64;
                for start in 0..*degree {
                    if seen[start] {
                        continue;
                    }
                    let mut len = 0u64;
                    let mut x = start;
                    while !seen[x] {
                        seen[x] = true;
                        x = a[x] as usize;
                        len += 1;
                    }
                    acc = lcm_checked(acc, len)?;
                }
                Some(acc)
            }
            Backend::Abelian { moduli } => abelian(a, moduli),
            Backend::GenDihedral { moduli } => {
                if a[0] == 1 {
                    Some(2)
                } else {
                    abelian(&a[1..], moduli)
                }
            }
            Backend::GenDicyclic { moduli, .. } => {
                if a[0] == 1 {
                    Some(4)
                } else {
                    abelian(&a[1..], moduli)
                }
            }
            Backend::Hn { n } => {
                let mask = (1u64 << n) - 1;
                let (a0, v) = (a[0] >> n, a[0] & mask);
                Some(match (v, a0) {
                    (0, 0) => 1,
                    (0, _) => 2,
                    _ if hn_cocycle(*n, v, v) == 1 => 4,
                    _ => 2,
                })
            }
            Backend::Product { parts, widths } => {
                let mut off = 0;
                let mut acc = 1u64;
                for (p, &w) in parts.iter().zip(widths) {
                    let o = p.backend.element_order(&a[off..off + w]).or_else(|| {
                        p.iterate_order(&Element::from_limbs(&a[off..off + w]), u64::MAX >> 1)
                    })?;
                    acc = lcm_checked(acc, o)?;
                    off += w;
                }
                Some(acc)
            }
        }
    }
}

impl Group {
    pub(crate) fn from_backend(
        backend: Backend,
        label: impl Into<String>,
        generators: Vec<(String, Element)>,
        aliases: Vec<(String, Element)>,
    ) -> Self {
        Group {
            backend,
            label: label.into(),
            generators,
            aliases,
            order_cache: OnceLock::new(),
        }
    }

    /// Human-readable description such as `D_5` or `H_4`.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn identity(&self) -> Element {
        let mut out = Limbs::new();
        self.backend.identity_into(&mut out);
        Element(out)
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        *a == self.identity()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Limbs::new();
        self.backend.mul_into(&a.0, &b.0, &mut out);
        Element(out)
    }

    pub fn inv(&self, a: &Element) -> Element {
        let mut out = Limbs::new();
        self.backend.inv_into(&a.0, &mut out);
        Element(out)
    }

    /// `a^k` by square-and-multiply; negative exponents use the inverse.
    pub fn pow(&self, a: &Element, k: i128) -> Element {
        let mut base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Element {
        factors
            .into_iter()
            .fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// `g h g^-1`.
    pub fn conj(&self, g: &Element, h: &Element) -> Element {
        self.mul(&self.mul(g, h), &self.inv(g))
    }

    pub fn commutes(&self, a: &Element, b: &Element) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn contains(&self, a: &Element) -> bool {
        self.backend.contains(&a.0)
    }

    pub fn generators(&self) -> &[(String, Element)] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<Element> {
        self.generators.iter().map(|(_, e)| e.clone()).collect()
    }

    /// Resolve a generator or alias name.
    pub fn lookup(&self, name: &str) -> Option<Element> {
        self.generators
            .iter()
            .chain(&self.aliases)
            .find(|(n, _)| n == name)
            .map(|(_, e)| e.clone())
    }

    pub fn parse(&self, word: &str) -> Result<Element> {
        parse_word(self, word)
    }

    /// Exact order of the group if known and representable, `None` for
    /// huge or unknown orders.
    pub fn order(&self) -> Option<u64> {
        *self.order_cache.get_or_init(|| self.compute_order())
    }

    fn compute_order(&self) -> Option<u64> {
        match &self.backend {
            Backend::Table { size, .. } => Some(*size as u64),
            Backend::Perm { degree } => {
                let cap = PERM_CLOSURE_ELEMENTS.min(PERM_CLOSURE_WORDS / (*degree).max(1));
                let gens = self.generator_elements();
                closure(self, &gens, cap).ok().map(|v| v.len() as u64)
            }
            Backend::Abelian { moduli } => moduli.iter().try_fold(1u64, |a, &m| a.checked_mul(m)),
            Backend::GenDihedral { moduli } | Backend::GenDicyclic { moduli, .. } => moduli
                .iter()
                .try_fold(2u64, |a, &m| a.checked_mul(m)),
            Backend::Hn { n } => 1u64.checked_shl(n + 1),
            Backend::Product { parts, .. } => {
                parts.iter().try_fold(1u64, |a, p| a.checked_mul(p.order()?))
            }
        }
    }

    pub fn is_enumerable(&self, limit: usize) -> bool {
        matches!(self.order(), Some(n) if n as u128 <= limit as u128)
    }

    /// All elements in canonical order.
    pub fn elements(&self, limit: usize) -> Result<Vec<Element>> {
        let order = self
            .order()
            .filter(|&n| n as u128 <= limit as u128)
            .ok_or_else(|| {
                Error::NotEnumerable(
                    self.order().map_or("unknown/huge".into(), |n| n.to_string()),
                    limit,
                )
            })?;
        let mut out = match &self.backend {
            Backend::Table { size, .. } => (0..*size as u64).map(|i| Element::from_limbs(&[i])).collect(),
            Backend::Perm { .. } => closure(self, &self.generator_elements(), limit)?,
            Backend::Abelian { moduli } => cartesian(moduli, &[]),
            Backend::GenDihedral { moduli } | Backend::GenDicyclic { moduli, .. } => {
                let mut v = cartesian(moduli, &[0]);
                v.extend(cartesian(moduli, &[1]));
                v
            }
            Backend::Hn { n } => (0..(1u64 << (n + 1))).map(|i| Element::from_limbs(&[i])).collect(),
            Backend::Product { parts, .. } => {
                let mut acc: Vec<Limbs> = vec![Limbs::new()];
                for p in parts {
                    let elems = p.elements(limit)?;
                    let mut next = Vec::with_capacity(acc.len() * elems.len());
                    for prefix in &acc {
                        for e in &elems {
                            let mut l = prefix.clone();
                            l.extend_from_slice(&e.0);
                            next.push(l);
                        }
                    }
                    acc = next;
                }
                acc.into_iter().map(Element).collect()
            }
        };
        out.sort();
        debug_assert_eq!(out.len() as u64, order);
        Ok(out)
    }

    /// Element order computed by repeated multiplication, `None` past `cap`.
    pub(crate) fn iterate_order(&self, g: &Element, cap: u64) -> Option<u64> {
        let id = self.identity();
        let mut x = g.clone();
        let mut k = 1u64;
        while x != id {
            if k >= cap {
                return None;
            }
            x = self.mul(&x, g);
            k += 1;
        }
        Some(k)
    }

    /// Display form: a word over generator names where the backend has a
    /// normal form, table names, or cycle notation for permutations.
    pub fn format(&self, e: &Element) -> String {
        self.format_limbs(&e.0)
    }

    fn format_limbs(&self, a: &[u64]) -> String {
        let gname = |i: usize, default: &str| -> String {
            self.generators
                .get(i)
                .map(|(n, _)| n.clone())
                .unwrap_or_else(|| default.to_string())
        };
        let power = |name: &str, k: u64| -> Option<String> {
            match k {
                0 => None,
                1 => Some(name.to_string()),
                _ => Some(format!("{name}^{k}")),
            }
        };
        let join = |parts: Vec<String>| -> String {
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        };
        match &self.backend {
            Backend::Table { names, .. } => names[a[0] as usize].clone(),
            Backend::Perm { .. } => format_cycles(a),
            Backend::Abelian { moduli } => join(
                moduli
                    .iter()
                    .enumerate()
                    .filter_map(|(i, _)| power(&gname(i, "a"), a[i]))
                    .collect(),
            ),
            Backend::GenDihedral { moduli } | Backend::GenDicyclic { moduli, .. } => {
                let k = moduli.len();
                let mut parts: Vec<String> = (0..k)
                    .filter_map(|i| power(&gname(i, "a"), a[i + 1]))
                    .collect();
                if a[0] == 1 {
                    parts.push(gname(k, "x"));
                }
                join(parts)
            }
            Backend::Hn { n } => {
                let mut parts = Vec::new();
                if a[0] >> n == 1 {
                    parts.push("e".to_string());
                }
                for i in 1..=*n {
                    if a[0] >> (n - i) & 1 == 1 {
                        parts.push(gname(i as usize - 1, "s"));
                    }
                }
                join(parts)
            }
            Backend::Product { parts, widths } => {
                let mut off = 0;
                let inner: Vec<String> = parts
                    .iter()
                    .zip(widths)
                    .map(|(p, &w)| {
                        let s = p.format_limbs(&a[off..off + w]);
                        off += w;
                        s
                    })
                    .collect();
                format!("({})", inner.join(","))
            }
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn cartesian(moduli: &[u64], prefix: &[u64]) -> Vec<Element> {
    let mut acc: Vec<Limbs> = vec![Limbs::from_slice(prefix)];
    for &m in moduli {
        let mut next = Vec::with_capacity(acc.len() * m as usize);
        for l in &acc {
            for x in 0..m {
                let mut l2 = l.clone();
                l2.push(x);
                next.push(l2);
            }
        }
        acc = next;
    }
    acc.into_iter().map(Element).collect()
}

fn format_cycles(a: &[u64]) -> String {
    let mut seen = vec![false; a.len()];
    let mut out = String::new();
    for start in 0..a.len() {
        if seen[start] || a[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(',');
            }
            out.push_str(&x.to_string());
            first = false;
            x = a[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Subgroup generated by `gens`, sorted; fails once more than `limit`
/// elements have been produced.
pub fn closure(g: &Group, gens: &[Element], limit: usize) -> Result<Vec<Element>> {
    let id = g.identity();
    let mut seen: HashSet<Element> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = g.mul(&x, s);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(Error::Budget {
                        what: "subgroup closure",
                        limit,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Element> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Smallest `k >= 1` with `g^k = 1`, or `None` if it exceeds `cap`.
pub fn element_order(g: &Group, x: &Element, cap: u64) -> Option<u64> {
    match g.backend.element_order(&x.0) {
        Some(k) if k <= cap => Some(k),
        Some(_) => None,
        None => g.iterate_order(x, cap),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(g: &Group, x: &Element) -> u64 {
        g.iterate_order(x, 1 << 20).unwrap()
    }

    #[test]
    fn hn_relations_hold() {
        for n in 2..=6u32 {
            let g = make_group(&GroupSpec::Hn { n, names: None }).unwrap();
            let s: Vec<Element> = g.generator_elements();
            let eps = g.mul(&s[0], &s[0]);
            assert_eq!(g.order(), Some(1 << (n + 1)));
            for i in 0..n as usize {
                assert_eq!(g.mul(&s[i], &s[i]), eps);
                for j in 0..n as usize {
                    if i != j {
                        assert_eq!(g.conj(&s[i], &s[j]), g.inv(&s[j]));
                    }
                }
            }
            for x in g.elements(1 << 12).unwrap() {
                assert!(g.commutes(&x, &eps));
            }
        }
    }

    #[test]
    fn hn_normal_form_is_encoding() {
        let g = make_group(&GroupSpec::Hn { n: 4, names: None }).unwrap();
        let s = g.generator_elements();
        let eps = g.mul(&s[0], &s[0]);
        for bits in 0..32u64 {
            let mut w = if bits >> 4 & 1 == 1 { eps.clone() } else { g.identity() };
            for i in 0..4 {
                if bits >> (3 - i) & 1 == 1 {
                    w = g.mul(&w, &s[i]);
                }
            }
            assert_eq!(w.limbs(), &[bits]);
        }
    }

    #[test]
    fn structural_orders_match_iteration() {
        let specs = [
            GroupSpec::Cyclic { n: 12, names: None },
            GroupSpec::Dihedral { n: 7, names: None },
            GroupSpec::Q8 { names: None },
            GroupSpec::Hn { n: 3, names: None },
            GroupSpec::GeneralizedDicyclic { factors: vec![2, 4], y: vec![1, 0], names: None },
            GroupSpec::Product {
                factors: vec![GroupSpec::Q8 { names: None }, GroupSpec::Cyclic { n: 3, names: None }],
            },
            GroupSpec::Permutation {
                degree: 5,
                generators: vec![vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]],
                names: None,
            },
        ];
        for spec in &specs {
            let g = make_group(spec).unwrap();
            for x in g.elements(1000).unwrap() {
                assert_eq!(element_order(&g, &x, 1000), Some(brute_order(&g, &x)));
                assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
            }
        }
    }

    #[test]
    fn element_order_examples() {
        let z6 = make_group(&GroupSpec::Cyclic { n: 6, names: None }).unwrap();
        assert_eq!(element_order(&z6, &Element::from_limbs(&[2]), 10), Some(3));
        assert_eq!(element_order(&z6, &Element::from_limbs(&[1]), 5), None);
        let q8 = make_group(&GroupSpec::Q8 { names: None }).unwrap();
        assert_eq!(element_order(&q8, &q8.lookup("i").unwrap(), 10), Some(4));
        let h3 = make_group(&GroupSpec::Hn { n: 3, names: None }).unwrap();
        let s1 = h3.lookup("s1").unwrap();
        assert_eq!(element_order(&h3, &h3.mul(&s1, &s1), 10), Some(2));
    }

    #[test]
    fn pow_negative_and_large() {
        let g = make_group(&GroupSpec::Cyclic { n: 1_000_000_007, names: None }).unwrap();
        let a = g.lookup("a").unwrap();
        assert_eq!(g.pow(&a, -3).limbs(), &[1_000_000_004]);
        assert_eq!(g.pow(&a, 1_000_000_007), g.identity());
    }

    #[test]
    fn formatting() {
        let d = make_group(&GroupSpec::Dihedral { n: 5, names: None }).unwrap();
        let r = d.lookup("r").unwrap();
        let f = d.lookup("f").unwrap();
        assert_eq!(d.format(&d.mul(&d.pow(&r, 3), &f)), "r^3*f");
        assert_eq!(d.format(&d.identity()), "1");
        let h = make_group(&GroupSpec::Hn { n: 3, names: None }).unwrap();
        let x = h.parse("s3*s1").unwrap();
        assert_eq!(h.format(&x), "e*s1*s3");
        assert_eq!(h.parse(&h.format(&x)).unwrap(), x);
    }
}
