//! Constructive enlargements of generating sets into rigid triples, and
//! their composition into GRR triples.

pub mod abc;
pub mod augment;
pub mod bounds;
pub mod rigidify;

use serde::Serialize;
use serde_json::{json, Value};

use crate::autos::{check_triple, TripleMode, TripleVerdict};
use crate::classify::{check_condition, replace_central, Condition, StarEntry, StarScope};
use crate::error::{Error, Result};
use crate::genset::{ball_elements, GenSet};
use crate::group::{Element, Group};
use crate::Budget;

pub use abc::{abc_enlarge, AbcChoice};
pub use augment::{augment, allowed_pairs, Augmentation, AugmentationTrace};
pub use bounds::{bound, BoundKind};
pub use rigidify::{rigidify, separation, Rigidification};

#[derive(Clone, Copy, Debug, Default)]
pub struct EnlargeOptions {
    /// Run below the order thresholds instead of refusing.
    pub best_effort: bool,
    /// Keep involutions out of every added set.
    pub no_involutions: bool,
    /// Replace central generators before looking for witnesses.
    pub preprocess_central: bool,
    pub budget: Budget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Cube,
    PropertyR,
    Augment,
    Rigidify,
    Abc,
    Pipeline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    General,
    PropertyR,
    Abc,
}

#[derive(Clone, Debug)]
pub struct EnlargeReport {
    pub method: Method,
    pub input: GenSet,
    pub output: GenSet,
    pub traces: Vec<AugmentationTrace>,
    /// Named postconditions, each recomputed.
    pub checks: Vec<(String, bool)>,
    /// Named bound values in decimal.
    pub bounds: Vec<(String, String)>,
    pub verdicts: Vec<(String, TripleVerdict)>,
    pub abc: Option<AbcChoice>,
    pub rigidification: Option<Rigidification>,
    pub stages: Vec<EnlargeReport>,
}

impl EnlargeReport {
    fn new(method: Method, input: &GenSet, output: GenSet) -> Self {
        EnlargeReport {
            method,
            input: input.clone(),
            output,
            traces: Vec::new(),
            checks: Vec::new(),
            bounds: Vec::new(),
            verdicts: Vec::new(),
            abc: None,
            rigidification: None,
            stages: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, holds: bool) {
        self.checks.push((name.to_string(), holds));
    }

    fn monotone(&mut self, g: &Group) {
        let holds = self.input.is_subset_of(&self.output) && !self.output.sym().iter().any(|x| g.is_identity(x));
        self.check("input contained in output", holds);
    }

    fn verdict(&mut self, name: &str, v: TripleVerdict) {
        self.verdicts.push((name.to_string(), v));
    }

    /// Every check and every triple verdict holds.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, h)| *h) && self.verdicts.iter().all(|(_, v)| v.holds) && self.stages.iter().all(|s| s.ok())
    }

    pub fn to_json(&self, g: &Group) -> Value {
        let fmt = |xs: &[Element]| xs.iter().map(|x| g.format(x)).collect::<Vec<_>>();
        let traces: Vec<Value> = self
            .traces
            .iter()
            .map(|t| {
                json!({
                    "s0": g.format(&t.s0),
                    "gamma": g.format(&t.gamma),
                    "gamma_order": t.gamma_order,
                    "n": t.n,
                    "delta": fmt(&t.delta),
                    "A": t.a,
                    "B": t.b,
                    "M": t.m,
                    "case": t.case,
                    "delta_pair": [t.delta_pair.0, t.delta_pair.1],
                    "below_bound": t.below_bound,
                })
            })
            .collect();
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|(name, v)| {
                json!({
                    "name": name,
                    "mode": v.mode,
                    "holds": v.holds,
                    "moved": v.witness.as_ref().map(|w| w.moved.iter().map(|(x, y)| [g.format(x), g.format(y)]).collect::<Vec<_>>()),
                })
            })
            .collect();
        json!({
            "method": self.method,
            "ok": self.ok(),
            "input": self.input.format(g),
            "output": self.output.format(g),
            "output_symmetric_size": self.output.sym_len(),
            "checks": self.checks.iter().map(|(n, h)| json!({ "name": n, "holds": h })).collect::<Vec<_>>(),
            "bounds": self.bounds.iter().map(|(n, v)| json!({ "name": n, "value": v })).collect::<Vec<_>>(),
            "verdicts": verdicts,
            "traces": traces,
            "abc": self.abc,
            "schedule": self.rigidification.as_ref().map(|r| json!({
                "arcs": r.arcs,
                "forest": r.forest,
                "cycles": r.cycles,
                "size_bound": r.size_bound,
                "threshold": r.threshold,
                "below_bound": r.below_bound,
            })),
            "stages": self.stages.iter().map(|s| s.to_json(g)).collect::<Vec<_>>(),
        })
    }
}

/// Canonical asymmetric representatives of an inverse-closed list.
fn representatives(g: &Group, sym: &[Element]) -> Result<GenSet> {
    GenSet::from_symmetric(g, sym)
}

/// `T^± = S^{≤3}`.
pub fn cube_enlarge(g: &Group, s: &GenSet, opts: &EnlargeOptions) -> Result<EnlargeReport> {
    let ball = ball_elements(g, s, 3, &opts.budget)?;
    let t = representatives(g, &ball)?;
    let mut rep = EnlargeReport::new(Method::Cube, s, t.clone());
    rep.monotone(g);
    rep.check("symmetric closure is the radius-3 ball", t.sym() == ball.as_slice());
    rep.verdict("orientation", check_triple(g, s, &t, TripleMode::Orientation, &opts.budget)?);
    Ok(rep)
}

fn star_scope(g: &Group, budget: &Budget) -> StarScope {
    if g.is_enumerable(budget.enumerate) {
        StarScope::Whole
    } else {
        StarScope::Radius(2)
    }
}

/// `T = S ∪ {g_s, s^-1 g_s}` from witnesses `g_s` of condition (*), either
/// searched for or supplied.
pub fn property_r_enlarge(g: &Group, s: &GenSet, witnesses: Option<&[(Element, Element)]>, opts: &EnlargeOptions) -> Result<EnlargeReport> {
    let mut s = s.clone();
    let pairs: Vec<(Element, Element)> = match witnesses {
        Some(w) => {
            for (x, gx) in w {
                if !s.base().contains(x) {
                    return Err(Error::NotInSet(g.format(x)));
                }
                if !crate::classify::star_pair(g, x, gx) {
                    return Err(Error::Precondition(format!("{} is not a valid witness for {}", g.format(gx), g.format(x))));
                }
            }
            w.to_vec()
        }
        None => {
            let scope = star_scope(g, &opts.budget);
            let mut cond = check_condition(g, &s, Condition::Star, Some(scope), &opts.budget)?;
            if !cond.holds && opts.preprocess_central {
                s = replace_central(g, &s, &opts.budget)?;
                cond = check_condition(g, &s, Condition::Star, Some(scope), &opts.budget)?;
            }
            if !cond.holds {
                return Err(Error::Precondition(format!(
                    "condition (*) fails for {}",
                    cond.violations.iter().map(|x| g.format(x)).collect::<Vec<_>>().join(", ")
                )));
            }
            cond.entries
                .into_iter()
                .filter_map(|(x, e)| match e {
                    StarEntry::Witness(w) => Some((x, w)),
                    _ => None,
                })
                .collect()
        }
    };
    let mut base: Vec<Element> = s.base().to_vec();
    let mut push = |x: Element| {
        if !g.is_identity(&x) && !base.contains(&x) && !base.contains(&g.inv(&x)) {
            base.push(x);
        }
    };
    for (x, gx) in &pairs {
        if g.is_identity(&g.mul(x, x)) {
            continue;
        }
        push(gx.clone());
        push(g.mul(&g.inv(x), gx));
    }
    let t = GenSet::new(g, base)?;
    let counts = s.base_counts(g);
    let limit = counts.p + 6 * counts.q;
    let mut rep = EnlargeReport::new(Method::PropertyR, &s, t.clone());
    rep.monotone(g);
    rep.bounds.push(("p+6q".into(), limit.to_string()));
    rep.check("|T^±| <= p+6q", t.sym_len() <= limit);
    rep.verdict("orientation", check_triple(g, &s, &t, TripleMode::Orientation, &opts.budget)?);
    Ok(rep)
}

/// One augmentation step on the symmetric closure of `s`, with every
/// postcondition recorded.
pub fn augment_report(g: &Group, s: &GenSet, s0: &Element, gamma: &Element, opts: &EnlargeOptions) -> Result<EnlargeReport> {
    let sym = s.symmetrized(g);
    let aug = augment(g, &sym, s0, gamma, opts)?;
    let mut rep = EnlargeReport::new(Method::Augment, &sym, aug.set.clone());
    rep.monotone(g);
    let t = &aug.trace;
    rep.bounds.push(("M".into(), t.m.to_string()));
    rep.bounds.push((
        "threshold".into(),
        bounds::augment_threshold(sym.sym_len(), t.gamma_order % 2 == 1, opts.no_involutions).to_string(),
    ));
    rep.check("added set avoids S", t.delta.iter().all(|d| !sym.contains(d)));
    rep.check("2AB >= ord(γ)", 2 * t.a as u128 * t.b as u128 >= t.gamma_order as u128);
    rep.traces.push(aug.trace);
    Ok(rep)
}

pub fn rigidify_report(g: &Group, s: &GenSet, gamma: &Element, opts: &EnlargeOptions) -> Result<EnlargeReport> {
    let r = rigidify(g, s, gamma, opts)?;
    let mut rep = EnlargeReport::new(Method::Rigidify, s, representatives(g, r.set.sym())?);
    rep.monotone(g);
    let (separated, _) = separation(g, s, &r.set);
    rep.check("separation", separated);
    rep.check("size bound", r.set.sym_len() <= r.size_bound);
    rep.bounds.push(("size".into(), r.size_bound.to_string()));
    rep.bounds.push(("threshold".into(), r.threshold.clone()));
    rep.traces = r.steps.clone();
    rep.rigidification = Some(r);
    Ok(rep)
}

pub fn abc_report(g: &Group, a: &Element, b: &Element, opts: &EnlargeOptions) -> Result<EnlargeReport> {
    let (s0, t, choice) = abc_enlarge(g, a, b, opts)?;
    let mut rep = EnlargeReport::new(Method::Abc, &s0, t.clone());
    rep.monotone(g);
    rep.check("|T| = 12", t.base().len() == 12);
    let census: Vec<usize> = t.sym().iter().filter(|x| !s0.contains(x)).map(|x| crate::triangles::count_unchecked(g, &t, x)).collect();
    rep.check("census targets", choice.counts == (7, 5, 3) && census.iter().all(|c| ![7, 5, 3].contains(c)));
    rep.verdict("colour", check_triple(g, &s0, &t, TripleMode::Colour, &opts.budget)?);
    rep.abc = Some(choice);
    Ok(rep)
}

/// Orientation step, then colour step, then a direct check of the composed
/// GRR triple.
pub fn grr_pipeline(g: &Group, s: &GenSet, gamma: Option<&Element>, flavor: Flavor, opts: &EnlargeOptions) -> Result<EnlargeReport> {
    let (first, second) = match flavor {
        Flavor::General | Flavor::PropertyR => {
            let first = if flavor == Flavor::General {
                cube_enlarge(g, s, opts)?
            } else {
                property_r_enlarge(g, s, None, opts)?
            };
            let gamma = gamma.ok_or_else(|| Error::Precondition("the colour step needs an element γ".into()))?;
            let second = rigidify_report(g, &first.output, gamma, opts)?;
            (first, second)
        }
        Flavor::Abc => {
            let [a, b] = s.base() else {
                return Err(Error::Precondition("the abc flavor needs S = {a, b}".into()));
            };
            let w = [(a.clone(), b.clone()), (b.clone(), a.clone())];
            let first = property_r_enlarge(g, s, Some(&w), opts)?;
            let x = g.mul(&g.inv(a), b);
            let second = abc_report(g, a, &x, opts)?;
            (first, second)
        }
    };
    let s1 = first.output.clone();
    let t = second.output.clone();
    let mut rep = EnlargeReport::new(Method::Pipeline, s, t.clone());
    rep.monotone(g);
    rep.check("intermediate set contained in the colour input", s1.is_subset_of(&second.input));
    rep.verdict("orientation", check_triple(g, s, &s1, TripleMode::Orientation, &opts.budget)?);
    rep.verdict("colour", check_triple(g, &s1, &t, TripleMode::Colour, &opts.budget)?);
    rep.verdict("grr", check_triple(g, s, &t, TripleMode::Grr, &opts.budget)?);
    rep.stages = vec![first, second];
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, GroupSpec};

    fn el(x: u64) -> Element {
        Element::from_limbs(&[x])
    }

    #[test]
    fn cube_examples() {
        let z5 = make_group(&GroupSpec::Cyclic { n: 5, names: None }).unwrap();
        let s = GenSet::new(&z5, [el(1)]).unwrap();
        assert!(!cube_enlarge(&z5, &s, &EnlargeOptions::default()).unwrap().ok());
        let v = make_group(&GroupSpec::Abelian { factors: vec![2, 2], names: None }).unwrap();
        let s = GenSet::new(&v, v.generator_elements()).unwrap();
        assert!(cube_enlarge(&v, &s, &EnlargeOptions::default()).unwrap().ok());
    }

    #[test]
    fn property_r_on_d5() {
        let g = make_group(&GroupSpec::Dihedral { n: 5, names: None }).unwrap();
        let s = GenSet::parse(&g, "r,f").unwrap();
        let rep = property_r_enlarge(&g, &s, None, &EnlargeOptions::default()).unwrap();
        assert!(rep.ok(), "{:?}", rep.checks);
        assert!(rep.output.sym_len() <= 7);
    }

    #[test]
    fn property_r_fails_on_q8_z4() {
        let spec = GroupSpec::Product {
            factors: vec![GroupSpec::Q8 { names: None }, GroupSpec::Cyclic { n: 4, names: None }],
        };
        let g = make_group(&spec).unwrap();
        let s = GenSet::parse(&g, "i,j,a").unwrap();
        let err = property_r_enlarge(&g, &s, None, &EnlargeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn pipeline_rejects_z5() {
        let z5 = make_group(&GroupSpec::Cyclic { n: 5, names: None }).unwrap();
        let s = GenSet::new(&z5, [el(1)]).unwrap();
        let err = grr_pipeline(&z5, &s, Some(&el(1)), Flavor::PropertyR, &EnlargeOptions::default());
        assert!(err.is_err() || !err.unwrap().ok());
    }
}
