use std::collections::HashMap;

use super::{Element, Group};
use crate::error::{Error, Result};

/// Indexed view of an enumerable group: elements in canonical order with a
/// dense multiplication table, for algorithms that sweep the whole group.
pub struct FiniteGroup<'g> {
    group: &'g Group,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
}

impl<'g> FiniteGroup<'g> {
    /// Groups up to `limit` elements; the table costs `limit^2` words.
    pub fn new(group: &'g Group, limit: usize) -> Result<Self> {
        let elements = group.elements(limit)?;
        let n = elements.len();
        let index: HashMap<Element, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(index[&group.mul(a, b)] as u32);
            }
        }
        let inv = elements.iter().map(|a| index[&group.inv(a)] as u32).collect();
        let identity = index[&group.identity()];
        Ok(FiniteGroup { group, elements, index, mul, inv, identity })
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &Element) -> Result<usize> {
        self.index.get(e).copied().ok_or(Error::ForeignElement)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn order_of(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Subgroup generated by `gens` as a membership mask.
    pub fn closure_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.len()];
        mask[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    stack.push(y);
                }
            }
        }
        mask
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.closure_mask(gens).iter().all(|&b| b)
    }

    /// Indices of central elements.
    pub fn center(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&z| (0..self.len()).all(|g| self.commutes(z, g)))
            .collect()
    }
}
