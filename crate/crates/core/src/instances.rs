//! Seeded construction of concrete permutation instances.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

fn random_cycle(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut p = vec![0; n];
    for i in 0..n {
        p[order[i]] = order[(i + 1) % n];
    }
    p
}

/// Same convention as the permutation backend: `(gh)(x) = h(g(x))`.
fn compose(g: &[usize], h: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| h[x]).collect()
}

fn inverse(g: &[usize]) -> Vec<usize> {
    let mut out = vec![0; g.len()];
    for (i, &x) in g.iter().enumerate() {
        out[x] = i;
    }
    out
}

pub fn is_full_cycle(p: &[usize]) -> bool {
    let mut x = p[0];
    let mut len = 1;
    while x != 0 {
        x = p[x];
        len += 1;
        if len > p.len() {
            return false;
        }
    }
    len == p.len()
}

/// Two `n`-cycles `a`, `b` such that `ab` and `a^-1 b` are `n`-cycles and
/// `ab != ba`. The second condition makes `{a, a^-1 b, b}` usable as a
/// triple as well as `{a, b, ab}`.
pub fn random_cycle_pair(n: usize, seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if n < 3 {
        return Err(Error::InvalidSpec("cycle pairs need degree >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_cycle(n, &mut rng);
    let a_inv = inverse(&a);
    let attempts = 64 * n * n;
    for _ in 0..attempts {
        let b = random_cycle(n, &mut rng);
        let ab = compose(&a, &b);
        if ab == compose(&b, &a) || !is_full_cycle(&ab) {
            continue;
        }
        if is_full_cycle(&compose(&a_inv, &b)) {
            return Ok((a, b));
        }
    }
    Err(Error::SearchFailed(format!(
        "no suitable cycle pair of degree {n} within {attempts} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_is_deterministic_and_valid() {
        let (a, b) = random_cycle_pair(31, 5).unwrap();
        assert_eq!((a.clone(), b.clone()), random_cycle_pair(31, 5).unwrap());
        assert!(is_full_cycle(&a) && is_full_cycle(&b));
        assert!(is_full_cycle(&compose(&a, &b)));
        assert!(is_full_cycle(&compose(&inverse(&a), &b)));
        assert_ne!(compose(&a, &b), compose(&b, &a));
    }
}
