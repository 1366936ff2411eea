use serde::{Deserialize, Serialize};

use super::{Backend, Element, Group, Limbs};
use crate::error::{Error, Result};
use crate::instances::random_cycle_pair;

/// Associativity is checked on every triple up to this order and on a
/// deterministic sample above it.
const FULL_ASSOCIATIVITY_CHECK: usize = 256;
const ASSOCIATIVITY_SAMPLES: usize = 200_000;

/// JSON group description, tagged by `"type"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic {
        n: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    /// Z/m1 x ... x Z/mk.
    Abelian {
        factors: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    Dihedral {
        n: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    GeneralizedDihedral {
        factors: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    GeneralizedDicyclic {
        factors: Vec<u64>,
        y: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    Q8 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    Hn {
        n: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    Table {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
    },
    Permutation {
        degree: usize,
        generators: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    /// Two `degree`-cycles `a`, `b` such that `ab` and `a^-1 b` are also
    /// `degree`-cycles and `ab != ba`, drawn from a seeded generator.
    CyclePair {
        degree: usize,
        #[serde(default)]
        seed: u64,
    },
}

fn names_or(custom: &Option<Vec<String>>, defaults: Vec<String>) -> Result<Vec<String>> {
    match custom {
        None => Ok(defaults),
        Some(n) if n.len() == defaults.len() => Ok(n.clone()),
        Some(n) => Err(Error::InvalidSpec(format!(
            "expected {} generator names, got {}",
            defaults.len(),
            n.len()
        ))),
    }
}

fn indexed_names(prefix: &str, k: usize) -> Vec<String> {
    if k == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=k).map(|i| format!("{prefix}{i}")).collect()
    }
}

fn unit_vector(len: usize, i: usize, prefix: &[u64]) -> Element {
    let mut l = Limbs::from_slice(prefix);
    l.extend((0..len).map(|j| u64::from(j == i)));
    Element(l)
}

fn check_moduli(factors: &[u64]) -> Result<()> {
    if factors.is_empty() || factors.iter().any(|&m| m == 0) {
        return Err(Error::InvalidSpec("factors must be non-empty and positive".into()));
    }
    Ok(())
}

/// Build and validate a group from its specification.
pub fn make_group(spec: &GroupSpec) -> Result<Group> {
    match spec {
        GroupSpec::Cyclic { n, names } => abelian(&[*n], names, format!("Z/{n}")),
        GroupSpec::Abelian { factors, names } => {
            let label = factors.iter().map(|m| format!("Z/{m}")).collect::<Vec<_>>().join("x");
            abelian(factors, names, label)
        }
        GroupSpec::Dihedral { n, names } => {
            check_moduli(&[*n])?;
            let names = names_or(names, vec!["r".into(), "f".into()])?;
            let gens = vec![
                (names[0].clone(), unit_vector(1, 0, &[0])),
                (names[1].clone(), Element::from_limbs(&[1, 0])),
            ];
            Ok(Group::from_backend(
                Backend::GenDihedral { moduli: vec![*n] },
                format!("D_{n}"),
                gens,
                vec![],
            ))
        }
        GroupSpec::GeneralizedDihedral { factors, names } => {
            check_moduli(factors)?;
            let k = factors.len();
            let mut defaults = indexed_names("a", k);
            defaults.push("t".into());
            let names = names_or(names, defaults)?;
            let mut gens: Vec<(String, Element)> =
                (0..k).map(|i| (names[i].clone(), unit_vector(k, i, &[0]))).collect();
            gens.push((names[k].clone(), unit_vector(k, usize::MAX, &[1])));
            let label = format!(
                "Dih({})",
                factors.iter().map(|m| format!("Z/{m}")).collect::<Vec<_>>().join("x")
            );
            Ok(Group::from_backend(
                Backend::GenDihedral { moduli: factors.clone() },
                label,
                gens,
                vec![],
            ))
        }
        GroupSpec::GeneralizedDicyclic { factors, y, names } => {
            let label = format!(
                "Dic({}; y={:?})",
                factors.iter().map(|m| format!("Z/{m}")).collect::<Vec<_>>().join("x"),
                y
            );
            dicyclic(factors, y, names, label, None)
        }
        GroupSpec::Q8 { names } => {
            let names = names_or(names, vec!["i".into(), "j".into()])?;
            dicyclic(&[4], &[2], &Some(names), "Q8".into(), Some("k"))
        }
        GroupSpec::Hn { n, names } => {
            if *n < 2 {
                return Err(Error::HnTooSmall(*n));
            }
            if *n > 62 {
                return Err(Error::InvalidSpec("H_n is supported for n <= 62".into()));
            }
            let names = names_or(names, (1..=*n).map(|i| format!("s{i}")).collect())?;
            let gens: Vec<(String, Element)> = (1..=*n)
                .map(|i| (names[i as usize - 1].clone(), Element::from_limbs(&[1u64 << (n - i)])))
                .collect();
            let eps = Element::from_limbs(&[1u64 << n]);
            Ok(Group::from_backend(
                Backend::Hn { n: *n },
                format!("H_{n}"),
                gens,
                vec![("e".into(), eps)],
            ))
        }
        GroupSpec::Product { factors } => product(factors),
        GroupSpec::Table { elements, table } => table_group(elements, table),
        GroupSpec::Permutation { degree, generators, names } => {
            let defaults = (1..=generators.len()).map(|i| format!("g{i}")).collect();
            let names = names_or(names, defaults)?;
            permutation_group(*degree, generators, names)
        }
        GroupSpec::CyclePair { degree, seed } => {
            let (a, b) = random_cycle_pair(*degree, *seed)?;
            let mut g = permutation_group(*degree, &[a, b], vec!["a".into(), "b".into()])?;
            g.label = format!("<a,b> <= Sym({degree}) (seed {seed})");
            Ok(g)
        }
    }
}

fn abelian(factors: &[u64], names: &Option<Vec<String>>, label: String) -> Result<Group> {
    check_moduli(factors)?;
    let k = factors.len();
    let names = names_or(names, indexed_names("a", k))?;
    let gens = (0..k).map(|i| (names[i].clone(), unit_vector(k, i, &[]))).collect();
    Ok(Group::from_backend(
        Backend::Abelian { moduli: factors.to_vec() },
        label,
        gens,
        vec![],
    ))
}

fn dicyclic(
    factors: &[u64],
    y: &[u64],
    names: &Option<Vec<String>>,
    label: String,
    product_alias: Option<&str>,
) -> Result<Group> {
    check_moduli(factors)?;
    if y.len() != factors.len() || y.iter().zip(factors).any(|(&v, &m)| v >= m) {
        return Err(Error::InvalidSpec("y must be an element of A".into()));
    }
    // y must have order exactly 2 in A.
    let doubled_zero = y.iter().zip(factors).all(|(&v, &m)| (2 * v as u128) % m as u128 == 0);
    if !doubled_zero || y.iter().all(|&v| v == 0) {
        return Err(Error::DicyclicNotInvolution);
    }
    let k = factors.len();
    let mut defaults = indexed_names("a", k);
    defaults.push("x".into());
    let names = names_or(names, defaults)?;
    let mut gens: Vec<(String, Element)> =
        (0..k).map(|i| (names[i].clone(), unit_vector(k, i, &[0]))).collect();
    gens.push((names[k].clone(), unit_vector(k, usize::MAX, &[1])));
    let backend = Backend::GenDicyclic { moduli: factors.to_vec(), y: y.to_vec() };
    let mut g = Group::from_backend(backend, label, gens, vec![]);
    if let Some(alias) = product_alias {
        let p = g.mul(&g.generators[0].1, &g.generators[1].1);
        g.aliases.push((alias.to_string(), p));
    }
    Ok(g)
}

fn product(factors: &[GroupSpec]) -> Result<Group> {
    if factors.is_empty() {
        return Err(Error::InvalidSpec("product needs at least one factor".into()));
    }
    let parts = factors.iter().map(make_group).collect::<Result<Vec<_>>>()?;
    let widths: Vec<usize> = parts.iter().map(|p| p.backend.width()).collect();
    let total: usize = widths.iter().sum();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut off = 0;
    for &w in &widths {
        offsets.push(off);
        off += w;
    }
    let embed = |idx: usize, e: &Element| -> Element {
        let mut l = Limbs::new();
        for (j, p) in parts.iter().enumerate() {
            if j == idx {
                l.extend_from_slice(e.limbs());
            } else {
                l.extend_from_slice(p.identity().limbs());
            }
        }
        debug_assert_eq!(l.len(), total);
        Element(l)
    };
    let mut count = std::collections::HashMap::new();
    for p in &parts {
        for (n, _) in p.generators.iter().chain(&p.aliases) {
            *count.entry(n.clone()).or_insert(0) += 1;
        }
    }
    let rename = |n: &str, idx: usize| -> String {
        if count[n] > 1 {
            format!("{n}_{}", idx + 1)
        } else {
            n.to_string()
        }
    };
    let mut gens = Vec::new();
    let mut aliases = Vec::new();
    for (idx, p) in parts.iter().enumerate() {
        for (n, e) in &p.generators {
            gens.push((rename(n, idx), embed(idx, e)));
        }
        for (n, e) in &p.aliases {
            aliases.push((rename(n, idx), embed(idx, e)));
        }
    }
    let label = parts.iter().map(|p| p.label.clone()).collect::<Vec<_>>().join(" x ");
    Ok(Group::from_backend(Backend::Product { parts, widths }, label, gens, aliases))
}

fn table_group(names: &[String], table: &[Vec<usize>]) -> Result<Group> {
    let n = names.len();
    if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidSpec("table must be n x n over the listed elements".into()));
    }
    let mut seen = vec![0usize; n];
    for (i, row) in table.iter().enumerate() {
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for &x in row {
            if x >= n {
                return Err(Error::InvalidSpec(format!("entry {x} out of range")));
            }
            if seen[x] == i {
                return Err(Error::NotLatinSquare(format!("row {} repeats {}", names[i], names[x])));
            }
            seen[x] = i;
        }
    }
    for j in 0..n {
        let mut col = vec![false; n];
        for row in table {
            if std::mem::replace(&mut col[row[j]], true) {
                return Err(Error::NotLatinSquare(format!("column {} repeats", names[j])));
            }
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::InvalidSpec("table has no identity element".into()))?;
    let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
    if n <= FULL_ASSOCIATIVITY_CHECK {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !assoc(a, b, c) {
                        return Err(Error::NotAssociative(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                    }
                }
            }
        }
    } else {
        // Deterministic linear-congruential sample of triples.
        let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize % n
        };
        for _ in 0..ASSOCIATIVITY_SAMPLES {
            let (a, b, c) = (next(), next(), next());
            if !assoc(a, b, c) {
                return Err(Error::NotAssociative(
                    names[a].clone(),
                    names[b].clone(),
                    names[c].clone(),
                ));
            }
        }
    }
    let mul: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
    let inv: Vec<u32> = (0..n)
        .map(|a| (0..n).find(|&b| table[a][b] == identity).unwrap() as u32)
        .collect();
    let gens = (0..n)
        .filter(|&i| i != identity)
        .map(|i| (names[i].clone(), Element::from_limbs(&[i as u64])))
        .collect();
    Ok(Group::from_backend(
        Backend::Table { size: n, mul, inv, identity: identity as u32, names: names.to_vec() },
        format!("table({n})"),
        gens,
        vec![],
    ))
}

fn permutation_group(degree: usize, generators: &[Vec<usize>], names: Vec<String>) -> Result<Group> {
    if degree == 0 {
        return Err(Error::InvalidSpec("degree must be positive".into()));
    }
    let backend = Backend::Perm { degree };
    let mut gens = Vec::new();
    for (name, images) in names.into_iter().zip(generators) {
        let e = Element(images.iter().map(|&x| x as u64).collect());
        if !backend.contains(e.limbs()) {
            return Err(Error::InvalidSpec(format!("generator {name} is not a permutation of 0..{degree}")));
        }
        gens.push((name, e));
    }
    Ok(Group::from_backend(backend, format!("perm({degree})"), gens, vec![]))
}
