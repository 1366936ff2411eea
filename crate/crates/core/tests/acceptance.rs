//! Acceptance criteria. Each test writes one PASS/FAIL line to stderr with
//! its elapsed time and the pinned limit, then asserts.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;

use grr_core::autos::colour::ColourCsp;
use grr_core::autos::{check_global, check_triple, GlobalMode, TripleMode};
use grr_core::cayley::build_ball;
use grr_core::classify::{check_condition, classify_group, q8_test, Condition, Q8Verdict, StarScope};
use grr_core::coverings::{check_covering, class_labels, schreier_graph, CoverMode, GraphMorphism};
use grr_core::cayley::Graph;
use grr_core::enlarge::bounds::{augment_threshold, rigidify_size, rigidify_threshold};
use grr_core::enlarge::{
    abc_report, allowed_pairs, augment_report, bound, grr_pipeline, property_r_enlarge, rigidify_report, BoundKind,
    EnlargeOptions, Flavor,
};
use grr_core::group::{closure, element_order, FiniteGroup};
use grr_core::{ball_elements, make_group, Budget, Element, GenSet, Group, GroupSpec};

type Outcome = Result<String, String>;

fn run(id: u32, name: &str, limit: Duration, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let out = body();
    let elapsed = start.elapsed();
    let ok = out.is_ok() && elapsed <= limit;
    let detail = match &out {
        Ok(s) => s.clone(),
        Err(e) => e.clone(),
    };
    let line = format!(
        "criterion {id:>2} {name}: {} in {:.2?} (limit {:?}) {detail}\n",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        limit
    );
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(ok, "{line}");
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: grr_core::Error) -> String {
    e.to_string()
}

fn group(spec: GroupSpec) -> Group {
    make_group(&spec).unwrap()
}

fn cyclic(n: u64) -> Group {
    group(GroupSpec::Cyclic { n, names: None })
}

fn dihedral(n: u64) -> Group {
    group(GroupSpec::Dihedral { n, names: None })
}

fn hn(n: u32) -> Group {
    group(GroupSpec::Hn { n, names: None })
}

fn hn_gens(n: u32) -> String {
    (1..=n).map(|i| format!("s{i}")).collect::<Vec<_>>().join(",")
}

fn odd_above(x: &BigInt) -> u64 {
    let n: u64 = (x + 1u32).try_into().unwrap();
    n | 1
}

/// Triangle counts read off the radius-1 ball graph, independent of the
/// set-intersection formula used by the library.
fn census(g: &Group, t: &GenSet) -> BTreeMap<Element, usize> {
    let ball = build_ball(g, t, 1, &Budget::default()).unwrap();
    t.sym()
        .iter()
        .map(|x| {
            let i = ball.index_of(x).unwrap();
            (x.clone(), ball.graph.common_neighbours(0, i))
        })
        .collect()
}

/// Exhaustive list of symmetric generating sets, as sorted element lists.
fn symmetric_generating_sets(g: &Group) -> Vec<Vec<Element>> {
    let f = FiniteGroup::new(g, 4096).unwrap();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; f.len()];
    for x in 0..f.len() {
        if x == f.identity() || seen[x] {
            continue;
        }
        let y = f.inv(x);
        seen[x] = true;
        seen[y] = true;
        classes.push(if x == y { vec![x] } else { vec![x, y] });
    }
    let k = classes.len();
    (1u64..1 << k)
        .into_par_iter()
        .filter_map(|mask| {
            let sym: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).flat_map(|i| classes[i].clone()).collect();
            f.generates(&sym).then(|| {
                let mut out: Vec<Element> = sym.iter().map(|&i| f.element(i).clone()).collect();
                out.sort();
                out
            })
        })
        .collect()
}

#[test]
fn criterion_01_hn_suite() {
    run(1, "hn-suite", Duration::from_secs(10), || {
        let budget = Budget::default();
        for n in 2..=5u32 {
            let g = hn(n);
            let count = g.elements(budget.enumerate).map_err(err)?.len();
            ensure(count == 1 << (n + 1), format!("|H_{n}| = {count}"))?;
            let s = GenSet::parse(&g, &hn_gens(n)).map_err(err)?;
            let t = GenSet::from_symmetric(&g, &ball_elements(&g, &s, 2, &budget).map_err(err)?).map_err(err)?;
            let csp = ColourCsp::new(&g, &t);
            let inv = csp.inverse_map().ok_or(format!("inverse map missing from B(H_{n}, S^<=2)"))?;
            ensure(csp.satisfies(&g, &t, &inv), "inverse map fails the colour constraints")?;
            let mut ball = vec![g.identity()];
            ball.extend(t.sym().iter().cloned());
            let by_hand = ball.iter().all(|x| {
                ball.iter().all(|y| {
                    let u = g.mul(&g.inv(x), y);
                    let image = g.mul(x, &g.inv(y));
                    !t.contains(&u) || image == u || image == g.inv(&u)
                })
            });
            ensure(by_hand, "inverse map is not colour-preserving on the ball")?;
        }
        let h2 = hn(2);
        let v = q8_test(&h2, &h2.parse("s1").unwrap(), &h2.parse("s2").unwrap());
        ensure(v == Q8Verdict::IsomorphicToQ8, format!("q8_test on H_2 gave {v:?}"))?;
        let h3 = hn(3);
        let rep = classify_group(&h3, &budget).map_err(err)?;
        ensure(rep.generalized_dicyclic.is_some(), "H_3 not generalized dicyclic")?;
        let gens: Vec<Element> = ["s1*s2", "s3", "e"].iter().map(|w| h3.parse(w).unwrap()).collect();
        let a = closure(&h3, &gens, 1 << 10).map_err(err)?;
        ensure(
            rep.dicyclic_witnesses.iter().any(|w| {
                let mut e = w.a_elements.clone();
                e.sort();
                e == a
            }),
            "A = <s1 s2, s3, e> is not a dicyclic witness in H_3",
        )?;
        for n in [4, 5] {
            let rep = classify_group(&hn(n), &budget).map_err(err)?;
            ensure(rep.generalized_dicyclic.is_none(), format!("H_{n} reported generalized dicyclic"))?;
        }
        Ok("H_2..H_5 checked".into())
    });
}

#[test]
fn criterion_02_orientation_equivalence() {
    run(2, "orientation-equivalence", Duration::from_secs(300), || {
        let q8 = || GroupSpec::Q8 { names: None };
        let c = |n| GroupSpec::Cyclic { n, names: None };
        let catalogue: Vec<(&str, GroupSpec, bool)> = vec![
            ("Z/4", c(4), false),
            ("Z/2^2", GroupSpec::Abelian { factors: vec![2, 2], names: None }, true),
            ("Z/6", c(6), false),
            ("Z/3^2", GroupSpec::Abelian { factors: vec![3, 3], names: None }, false),
            ("S3", GroupSpec::Dihedral { n: 3, names: None }, true),
            ("D4", GroupSpec::Dihedral { n: 4, names: None }, true),
            ("D5", GroupSpec::Dihedral { n: 5, names: None }, true),
            (
                "A4",
                GroupSpec::Permutation { degree: 4, generators: vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]], names: None },
                true,
            ),
            ("Q8", q8(), false),
            ("Dic3", GroupSpec::GeneralizedDicyclic { factors: vec![6], y: vec![3], names: None }, false),
            ("Q8xZ/2", GroupSpec::Product { factors: vec![q8(), c(2)] }, false),
            ("Q8xZ/3", GroupSpec::Product { factors: vec![q8(), c(3)] }, true),
        ];
        let budget = Budget::default();
        let mut total = 0;
        for (name, spec, expected) in catalogue {
            let g = group(spec);
            let rep = classify_group(&g, &budget).map_err(err)?;
            let predicted = rep.generalized_dicyclic.is_none() && !(rep.abelian && rep.has_element_of_order_gt2);
            ensure(predicted == expected, format!("{name}: classification disagrees with the catalogue"))?;
            let sets = symmetric_generating_sets(&g);
            let bad: Vec<String> = sets
                .par_iter()
                .filter_map(|sym| {
                    let s = GenSet::from_symmetric(&g, sym).unwrap();
                    let t = GenSet::from_symmetric(&g, &ball_elements(&g, &s, 3, &budget).unwrap()).unwrap();
                    let v = check_triple(&g, &s, &t, TripleMode::Orientation, &budget).unwrap();
                    (v.holds != expected).then(|| format!("{name} S = {:?}", s.format(&g)))
                })
                .collect();
            ensure(bad.is_empty(), format!("{} mismatches, first {:?}", bad.len(), bad.first()))?;
            total += sets.len();
        }
        Ok(format!("{total} generating sets"))
    });
}

#[test]
fn criterion_03_inverse_map_on_h4() {
    run(3, "h4-inverse-map", Duration::from_secs(10), || {
        let g = hn(4);
        let budget = Budget::default();
        let s = GenSet::parse(&g, &hn_gens(4)).map_err(err)?;
        let t = GenSet::from_symmetric(&g, &ball_elements(&g, &s, 2, &budget).map_err(err)?).map_err(err)?;
        let v = check_triple(&g, &s, &t, TripleMode::Orientation, &budget).map_err(err)?;
        ensure(!v.holds, "orientation check held")?;
        let w = v.witness.ok_or("no witness")?;
        ensure(w.is_inverse_map, "witness is not the inverse map")?;
        let moved_ok = w.moved.iter().all(|(x, y)| *y == g.inv(x));
        ensure(moved_ok && w.moved.len() == 8, format!("{} moved points", w.moved.len()))?;
        Ok("witness = inverse map".into())
    });
}

#[test]
fn criterion_04_exceptional_pairs() {
    run(4, "exceptional-pairs", Duration::from_secs(600), || {
        let budget = Budget::default();
        let q8 = || GroupSpec::Q8 { names: None };
        let z4 = group(GroupSpec::Product { factors: vec![q8(), GroupSpec::Cyclic { n: 4, names: None }] });
        let sets = symmetric_generating_sets(&z4);
        let star: Vec<&Vec<Element>> = sets
            .par_iter()
            .filter(|sym| {
                let s = GenSet::from_symmetric(&z4, sym).unwrap();
                check_condition(&z4, &s, Condition::Star, Some(StarScope::Whole), &budget).unwrap().holds
            })
            .collect();
        ensure(star.is_empty(), format!("Q8xZ/4: (*) holds for {} sets", star.len()))?;
        let z3 = group(GroupSpec::Product { factors: vec![q8(), GroupSpec::Cyclic { n: 3, names: None }] });
        let sets3 = symmetric_generating_sets(&z3);
        let dd: Vec<&Vec<Element>> = sets3
            .par_iter()
            .filter(|sym| {
                let s = GenSet::from_symmetric(&z3, sym).unwrap();
                check_condition(&z3, &s, Condition::Ddagger, None, &budget).unwrap().holds
            })
            .collect();
        ensure(dd.is_empty(), format!("Q8xZ/3: (‡) holds for {} sets", dd.len()))?;
        let s = GenSet::parse(&z3, "i*a,j*a").map_err(err)?;
        let dagger = check_condition(&z3, &s, Condition::Dagger, None, &budget).map_err(err)?;
        ensure(dagger.holds, "(†) fails for {(i,1),(j,1)}")?;
        Ok(format!("{} sets in Q8xZ/4, {} in Q8xZ/3", sets.len(), sets3.len()))
    });
}

/// Recheck an augmentation with the ball-graph census.
fn verify_augmentation(g: &Group, s: &GenSet, s_new: &GenSet, s0: &Element) -> Result<(i64, i64), String> {
    let before = census(g, s);
    let after = census(g, s_new);
    let added: Vec<&Element> = s_new.sym().iter().filter(|x| !s.contains(x)).collect();
    ensure(added.len() <= 4, format!("{} elements added", added.len()))?;
    let squares: BTreeSet<Element> = s.sym().iter().map(|x| g.mul(x, x)).collect();
    ensure(added.iter().all(|x| !squares.contains(*x)), "an added element is a square of S")?;
    ensure(added.iter().all(|x| after[*x] <= 6), "an added element has more than 6 triangles")?;
    let sq = g.mul(s0, s0);
    let exempt = [s0.clone(), g.inv(s0), sq.clone(), g.inv(&sq)];
    for x in s.sym() {
        if !exempt.contains(x) {
            ensure(before[x] == after[x], format!("count of {} changed", g.format(x)))?;
        }
    }
    let second = if s.contains(&sq) { after[&sq] as i64 - before[&sq] as i64 } else { 0 };
    let pair = (after[s0] as i64 - before[s0] as i64, second);
    let ord = element_order(g, s0, u64::MAX).unwrap();
    ensure(allowed_pairs(ord).contains(&pair), format!("pair {pair:?} outside the row for order {ord}"))?;
    Ok(pair)
}

fn augment_pair(g: &Group, s: &str, s0: &str, gamma: &str) -> Result<(u8, (i64, i64)), String> {
    let s = GenSet::parse(g, s).map_err(err)?.symmetrized(g);
    let (s0, gamma) = (g.parse(s0).map_err(err)?, g.parse(gamma).map_err(err)?);
    let rep = augment_report(g, &s, &s0, &gamma, &EnlargeOptions::default()).map_err(err)?;
    ensure(rep.ok(), format!("report checks failed: {:?}", rep.checks))?;
    let pair = verify_augmentation(g, &s, &rep.output.symmetrized(g), &s0)?;
    let t = &rep.traces[0];
    ensure(pair == t.delta_pair, "census disagrees with the trace")?;
    Ok((t.case, pair))
}

#[test]
fn criterion_05_augmentation() {
    run(5, "augmentation", Duration::from_secs(30), || {
        let z = cyclic(4327);
        let r = augment_pair(&z, "a", "a", "a")?;
        ensure(r == (2, (2, 0)), format!("Z/4327 gave {r:?}"))?;

        let n = odd_above(&bound(4, BoundKind::F));
        let d = dihedral(n);
        let r = augment_pair(&d, "f,r*f,r", "f", "r")?;
        ensure(r == (3, (2, 0)), format!("D_{n} gave {r:?}"))?;
        let mut pairs = BTreeSet::new();
        for s in ["f,r*f,r", "f,r", "f,r^2,r^3*f", "f,r^5*f,r^3", "f,r^7*f"] {
            pairs.insert(augment_pair(&d, s, "f", "r")?.1);
        }
        ensure(pairs.len() == 1, format!("D_{n}: pairs vary with S: {pairs:?}"))?;

        let m = odd_above(&augment_threshold(6, true, false));
        let z = cyclic(m);
        let mut pairs = BTreeSet::new();
        for s in ["a,a^2", "a,a^2,a^3", "a,a^2,a^7", "a,a^2,a^100"] {
            pairs.insert(augment_pair(&z, s, "a", "a")?.1);
        }
        ensure(pairs.len() == 1, format!("Z/{m}: pairs vary with S: {pairs:?}"))?;
        Ok(format!("D_{n} and Z/{m} deterministic"))
    });
}

fn separated(g: &Group, s: &GenSet, t: &GenSet) -> Result<(), String> {
    let c = census(g, t);
    for x in s.sym() {
        ensure(c[x] >= 7, format!("{} has {} triangles", g.format(x), c[x]))?;
        for y in t.sym() {
            if c[x] == c[y] && *y != *x && *y != g.inv(x) {
                return Err(format!("{} and {} share count {}", g.format(x), g.format(y), c[x]));
            }
        }
    }
    for y in t.sym().iter().filter(|y| !s.contains(y)) {
        ensure(c[y] <= 6, format!("added {} has {} triangles", g.format(y), c[y]))?;
    }
    Ok(())
}

#[test]
fn criterion_06_rigidification() {
    run(6, "rigidification", Duration::from_secs(120), || {
        let mut sizes = Vec::new();
        let cases: [(&str, usize, usize, bool); 3] = [("a", 0, 1, false), ("a,a^2", 0, 2, false), ("f,r*f", 2, 0, true)];
        for (words, p, q, dihedral_case) in cases {
            let n = odd_above(&rigidify_threshold(p, q, false));
            let g = if dihedral_case { dihedral(n) } else { cyclic(n) };
            let s = GenSet::parse(&g, words).map_err(err)?;
            let gamma = g.parse(if dihedral_case { "r" } else { "a" }).map_err(err)?;
            let rep = rigidify_report(&g, &s, &gamma, &EnlargeOptions::default()).map_err(err)?;
            ensure(rep.ok(), format!("{words}: checks {:?}", rep.checks))?;
            let t = rep.output.symmetrized(&g);
            separated(&g, &s.symmetrized(&g), &t).map_err(|e| format!("{words} in order {n}: {e}"))?;
            ensure(t.sym_len() <= rigidify_size(p, q), format!("{words}: size {}", t.sym_len()))?;
            sizes.push(t.sym_len());
        }
        Ok(format!("sizes {sizes:?}"))
    });
}

#[test]
fn criterion_07_abc_instance() {
    run(7, "abc-instance", Duration::from_secs(60), || {
        let g = group(GroupSpec::CyclePair { degree: 269, seed: 1 });
        let (a, b) = (g.parse("a").unwrap(), g.parse("b").unwrap());
        ensure(!g.commutes(&a, &b), "a and b commute")?;
        let opts = EnlargeOptions::default();
        let rep = abc_report(&g, &a, &b, &opts).map_err(err)?;
        ensure(rep.ok(), format!("abc report failed: {:?}", rep.checks))?;
        let t = rep.output.clone();
        let c = census(&g, &t);
        let ab = g.mul(&a, &b);
        ensure((c[&a], c[&b], c[&ab]) == (7, 5, 3), format!("census {:?}", (c[&a], c[&b], c[&ab])))?;
        let s0 = rep.input.clone();
        ensure(t.sym_len() + 1 <= 25, "ball too large")?;
        let colour = check_triple(&g, &s0, &t, TripleMode::Colour, &opts.budget).map_err(err)?;
        ensure(colour.holds, "colour check failed")?;
        let s = GenSet::parse(&g, "a,b").map_err(err)?;
        let pipe = grr_pipeline(&g, &s, None, Flavor::Abc, &opts).map_err(err)?;
        let s1 = &pipe.stages[0].output;
        let expected = GenSet::new(&g, [a.clone(), b.clone(), g.mul(&g.inv(&a), &b)]).unwrap();
        ensure(s1.symmetrized(&g).sym() == expected.symmetrized(&g).sym(), "S0 differs from {a, b, a^-1 b}")?;
        let grr = check_triple(&g, &s, &pipe.output, TripleMode::Grr, &opts.budget).map_err(err)?;
        ensure(grr.holds && pipe.ok(), "pipeline GRR check failed")?;
        let choice = rep.abc.unwrap();
        let added: Vec<usize> = t.sym().iter().filter(|x| !s0.contains(x)).map(|x| c[x]).collect();
        let max_added = added.iter().copied().max().unwrap_or(0);
        ensure(
            max_added <= 2,
            format!("(i,j,k) = ({}, {}, {}), colour and GRR hold, but added classes reach {max_added} triangles: {added:?}", choice.i, choice.j, choice.k),
        )?;
        Ok(format!("(i,j,k) = ({}, {}, {})", choice.i, choice.j, choice.k))
    });
}

#[test]
fn criterion_08_huge_dihedral_pipeline() {
    run(8, "huge-dihedral-pipeline", Duration::from_secs(120), || {
        let opts = EnlargeOptions::default();
        let n0 = odd_above(&bound(38, BoundKind::F));
        let probe = dihedral(n0);
        let s = GenSet::parse(&probe, "r,f").map_err(err)?;
        let first = property_r_enlarge(&probe, &s, None, &opts).map_err(err)?;
        let counts = first.output.class_counts(&probe);
        let n = n0.max(odd_above(&rigidify_threshold(counts.p, counts.q, false)));
        let g = dihedral(n);
        let s = GenSet::parse(&g, "r,f").map_err(err)?;
        let gamma = g.parse("r").unwrap();
        let rep = grr_pipeline(&g, &s, Some(&gamma), Flavor::PropertyR, &opts).map_err(err)?;
        ensure(rep.ok(), format!("pipeline checks {:?}", rep.checks))?;
        let vertices = rep.output.sym_len() + 1;
        ensure(vertices <= 160, format!("ball of {vertices} vertices"))?;
        let grr = check_triple(&g, &s, &rep.output, TripleMode::Grr, &opts.budget).map_err(err)?;
        ensure(grr.holds, "GRR triple not verified")?;
        Ok(format!("N = {n}, p = {}, q = {}, ball of {vertices} vertices", counts.p, counts.q))
    });
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

type Triple = (String, Group, GenSet, GenSet);

/// Strong GRR triples `(G, S, T)` among small groups: `S` is the defining
/// generating set and `T` adds up to three inverse classes to it. At most
/// three triples are kept per group.
fn small_grr_triples() -> &'static [Triple] {
    static CELL: OnceLock<Vec<Triple>> = OnceLock::new();
    CELL.get_or_init(|| {
        let perm = |degree, generators| GroupSpec::Permutation { degree, generators, names: None };
        let c = |n| GroupSpec::Cyclic { n, names: None };
        let dn = |n| GroupSpec::Dihedral { n, names: None };
        let a4 = || perm(4, vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]]);
        let specs: Vec<(&str, GroupSpec)> = vec![
            ("D5", dn(5)),
            ("D6", dn(6)),
            ("D7", dn(7)),
            ("D9", dn(9)),
            ("D10", dn(10)),
            ("D15", dn(15)),
            ("A4", a4()),
            ("S4", perm(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]])),
            ("S3xZ/3", GroupSpec::Product { factors: vec![dn(3), c(3)] }),
            ("D4xZ/2", GroupSpec::Product { factors: vec![dn(4), c(2)] }),
            ("A4xZ/2", GroupSpec::Product { factors: vec![a4(), c(2)] }),
            ("S3xS3", GroupSpec::Product { factors: vec![dn(3), dn(3)] }),
            ("A5", perm(5, vec![vec![1, 2, 0, 3, 4], vec![1, 2, 3, 4, 0]])),
        ];
        let budget = Budget::default();
        let mut out = Vec::new();
        for (name, spec) in specs {
            let g = group(spec);
            let s = GenSet::new(&g, g.generator_elements()).unwrap();
            let elements = g.elements(budget.enumerate).unwrap();
            let mut extra: Vec<Element> = Vec::new();
            for x in elements.iter().filter(|x| !g.is_identity(x) && !s.contains(x)) {
                if !extra.contains(&g.inv(x)) {
                    extra.push(x.clone());
                }
            }
            let found: Vec<GenSet> = (1..=3)
                .flat_map(|k| combinations(extra.len(), k))
                .collect::<Vec<_>>()
                .par_iter()
                .filter_map(|pick| {
                    let t = s.extended(&g, pick.iter().map(|&i| extra[i].clone())).unwrap();
                    check_triple(&g, &s, &t, TripleMode::Grr, &budget).unwrap().holds.then_some(t)
                })
                .collect();
            for t in found.into_iter().take(3) {
                out.push((name.to_string(), g.clone(), s.clone(), t));
            }
        }
        out
    })
}

#[test]
fn criterion_09_global_local_consistency() {
    run(9, "global-local", Duration::from_secs(600), || {
        let budget = Budget::default();
        let triples = small_grr_triples();
        ensure(!triples.is_empty(), "no strong GRR triples found")?;
        for (name, g, _, t) in triples {
            let v = check_global(g, t, GlobalMode::Grr, &budget).map_err(err)?;
            ensure(v.holds, format!("{name}: full Cayley graph is not a GRR"))?;
        }
        let z = cyclic(4327);
        let s = GenSet::parse(&z, "a").unwrap();
        let opts = EnlargeOptions { best_effort: true, ..Default::default() };
        let rep = rigidify_report(&z, &s, &z.parse("a").unwrap(), &opts).map_err(err)?;
        let t = rep.output.clone();
        let colour = check_global(&z, &t.symmetrized(&z), GlobalMode::ColourPair, &budget).map_err(err)?;
        ensure(colour.holds, "Z/4327: stabilizer contains a non-colour-preserving automorphism")?;
        let asym = GenSet::new(&z, t.base().to_vec()).unwrap();
        ensure(asym.is_asymmetric(&z), "extracted set is not asymmetric")?;
        let drr = check_global(&z, &asym, GlobalMode::Drr, &budget).map_err(err)?;
        ensure(drr.holds, "Z/4327: digraph stabilizer is not trivial")?;
        Ok(format!("{} small triples, |S~| = {}", triples.len(), t.sym_len()))
    });
}

#[test]
fn criterion_10_bound_arithmetic() {
    run(10, "bounds", Duration::from_secs(1), || {
        ensure(bound(2, BoundKind::F) == BigInt::from(4320), "F(2)")?;
        ensure(bound(2, BoundKind::Fcheck) == BigInt::from(4608), "Fcheck(2)")?;
        for r in 2u32..=12 {
            let r = BigInt::from(r);
            let f = bound(BigInt::from(32) * r.pow(6u32), BoundKind::F);
            ensure(f <= (BigInt::from(2) * &r).pow(36u32), format!("F(32r^6) at r = {r}"))?;
            let fc = bound(BigInt::from(2) * &r * &r + BigInt::from(28) * &r - 4, BoundKind::Fcheck);
            ensure(fc <= (BigInt::from(5) * &r).pow(12u32), format!("Fcheck at r = {r}"))?;
        }
        Ok("exact".into())
    });
}

#[test]
fn criterion_11_coverings() {
    run(11, "coverings", Duration::from_secs(10), || {
        let cycle = |n: usize| Graph::from_arcs(n, false, (0..n).map(|i| (i, (i + 1) % n)));
        let m = GraphMorphism::new(cycle(12), cycle(3), (0..12).map(|i| i % 3).collect());
        ensure(check_covering(&m, &CoverMode::Covering).map_err(err)?.holds, "Z/12 -> Z/3 not a covering")?;
        ensure(!check_covering(&m, &CoverMode::Radius1Iso).map_err(err)?.holds, "Z/12 -> Z/3 radius1-iso")?;
        let budget = Budget::default();
        let (mut checked, mut nontrivial) = (0, 0);
        for (name, g, s, t) in small_grr_triples() {
            let (g, s, t) = (g.clone(), s.clone(), t.clone());
            let q = schreier_graph(&g, &t, &[], &budget).map_err(err)?;
            ensure(q.morphism.map.iter().enumerate().all(|(i, &j)| i == j), format!("{name}: trivial quotient moved"))?;
            ensure(q.morphism.target == q.cayley.graph, format!("{name}: trivial quotient differs"))?;
            let labels = class_labels(&g, &q.cayley, &s);
            for x in g.elements(budget.enumerate).map_err(err)? {
                let q = schreier_graph(&g, &t, std::slice::from_ref(&x), &budget).map_err(err)?;
                if !q.is_simple() || !check_covering(&q.morphism, &CoverMode::Radius1Iso).map_err(err)?.holds {
                    continue;
                }
                let v = check_covering(&q.morphism, &CoverMode::LabelCompatible(labels.clone())).map_err(err)?;
                ensure(v.holds, format!("{name}: quotient by <{}> not label-compatible", g.format(&x)))?;
                checked += 1;
                nontrivial += usize::from(q.subgroup.len() > 1);
            }
        }
        let n = 1203;
        let g = dihedral(n);
        let s = GenSet::parse(&g, "r,f").map_err(err)?;
        let opts = EnlargeOptions { best_effort: true, ..Default::default() };
        let rep = grr_pipeline(&g, &s, Some(&g.parse("r").unwrap()), Flavor::PropertyR, &opts).map_err(err)?;
        let t = rep.output.clone();
        ensure(check_triple(&g, &s, &t, TripleMode::Grr, &budget).map_err(err)?.holds, "D_1203 triple not GRR")?;
        for d in (2..n).filter(|d| n % d == 0) {
            let h = g.pow(&g.parse("r").unwrap(), d as i128);
            let q = schreier_graph(&g, &t, &[h], &budget).map_err(err)?;
            if !q.is_simple() || !check_covering(&q.morphism, &CoverMode::Radius1Iso).map_err(err)?.holds {
                continue;
            }
            let labels = class_labels(&g, &q.cayley, &s);
            let v = check_covering(&q.morphism, &CoverMode::LabelCompatible(labels)).map_err(err)?;
            ensure(v.holds, format!("D_{n}: quotient by <r^{d}> not label-compatible"))?;
            checked += 1;
            nontrivial += 1;
        }
        ensure(nontrivial > 0, "no nontrivial radius1-iso quotient coverings found")?;
        Ok(format!("{checked} quotient coverings label-compatible, {nontrivial} nontrivial"))
    });
}
