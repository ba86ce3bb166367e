//! Executable property suites over a relation set and, optionally, an ideal.
//!
//! Each suite returns a report listing what it checked and every failure it
//! found. Resource caps surface as errors; violated properties do not.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::closure::{closure_with_cap, compose_closure_naive, minimize, ClosureRep};
use crate::decision::{check_certificate, membership_with_certificate};
use crate::error::{Error, Result};
use crate::extremal::{
    binomial, compositions, extremal_ideal_with, ideals_equal, power_generators_with, verify_div_theorem,
    ExtremalIdeal,
};
use crate::homology::Field;
use crate::index_set::IndexSet;
use crate::limits::Limits;
use crate::monomial::{self, GeneratorList, Monomial};
use crate::random::random_relation_set;
use crate::relation::{all_candidates, div_explicit, holds, DivRel, RelationSet};
use crate::transfer::{bound_check_with, lattice_map_with, psi_apply, psi_build, psi_for};

/// Largest `q` for which the naive closure oracle is run.
const NAIVE_ORACLE_MAX_Q: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    DivTheorem,
    ClosureLaws,
    PowerMinimality,
    Psi,
    Extremality,
    Lattice,
    IdealInvariance,
    ClosedSets,
    Decision,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::DivTheorem,
        Suite::ClosureLaws,
        Suite::PowerMinimality,
        Suite::Psi,
        Suite::Extremality,
        Suite::Lattice,
        Suite::IdealInvariance,
        Suite::ClosedSets,
        Suite::Decision,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DivTheorem => "div-theorem",
            Suite::ClosureLaws => "closure-laws",
            Suite::PowerMinimality => "power-minimality",
            Suite::Psi => "psi",
            Suite::Extremality => "extremality",
            Suite::Lattice => "lattice",
            Suite::IdealInvariance => "ideal-invariance",
            Suite::ClosedSets => "closed-sets",
            Suite::Decision => "decision",
        }
    }

    /// Whether the suite needs an ideal alongside the relations.
    pub fn needs_ideal(self) -> bool {
        matches!(self, Suite::Psi | Suite::Extremality | Suite::Lattice)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Relations, and optionally an ideal with one generator per index.
#[derive(Clone, Debug)]
pub struct Instance {
    pub relations: RelationSet,
    pub ideal: Option<GeneratorList>,
}

pub fn run_suite<R: Rng>(suite: Suite, inst: &Instance, rng: &mut R, limits: &Limits) -> Result<SuiteReport> {
    let d = &inst.relations;
    let ideal = || {
        inst.ideal
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("suite {suite} needs an ideal")))
    };
    match suite {
        Suite::DivTheorem => div_theorem(d, limits),
        Suite::ClosureLaws => closure_laws(d, limits),
        Suite::PowerMinimality => power_minimality(d, 3, limits),
        Suite::Psi => psi_suite(ideal()?, d, rng, limits),
        Suite::Extremality => extremality(ideal()?, d, 2, limits),
        Suite::Lattice => lattice(ideal()?, d, limits),
        Suite::IdealInvariance => ideal_invariance(d, rng, limits),
        Suite::ClosedSets => closed_sets(d, limits),
        Suite::Decision => decision(d, limits),
    }
}

fn hypothesis_failure(report: &mut SuiteReport, d: &RelationSet) -> bool {
    if let Some(r) = d.singleton_target() {
        report.check(false, || Error::TheoremHypothesis(r.to_string()).to_string());
        true
    } else {
        false
    }
}

fn closure_of(d: &RelationSet, limits: &Limits) -> Result<ClosureRep> {
    closure_with_cap(d, limits.closure_cap)
}

/// `Div(E_D) = D̄` over every candidate relation.
pub fn div_theorem(d: &RelationSet, limits: &Limits) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::DivTheorem);
    if hypothesis_failure(&mut rep, d) {
        return Ok(rep);
    }
    let e = extremal_ideal_with(d, d.q(), limits)?;
    let res = verify_div_theorem(&e)?;
    rep.checks += res.candidates;
    if let Some(r) = res.first_counterexample {
        rep.failures.push(format!(
            "{} of {} candidates disagree, first {r}",
            res.mismatches, res.candidates
        ));
    }
    Ok(rep)
}

/// Idempotence, closure under composition and extension, preservation of the
/// base set, and agreement with the naive fixed-point oracle.
pub fn closure_laws(d: &RelationSet, limits: &Limits) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::ClosureLaws);
    let c = closure_of(d, limits)?;
    let again = closure_of(c.min_core(), limits)?;
    rep.check(again == c, || "closure is not idempotent".into());
    let all = c.materialize();
    let again_full = closure_of(&all, limits)?;
    rep.check(again_full == c, || "closure of the materialized closure differs".into());
    rep.check(d.iter().all(|r| c.member(r)), || "D is not contained in its closure".into());
    let members = all.to_vec();
    for x in &members {
        for y in &members {
            let z = x.compose(y);
            rep.check(c.member(&z), || format!("{x}∘{y} = {z} escapes the closure"));
        }
        for j in 1..=d.q() {
            let ext = DivRel::new(x.base(), x.targets().with(j))?;
            rep.check(c.member(&ext), || format!("extension {ext} of {x} escapes the closure"));
        }
    }
    let bases = |s: &RelationSet| s.nontrivial().base_set();
    rep.check(bases(&all) == bases(d), || {
        format!("base set changed from {} to {}", bases(d), bases(&all))
    });
    if d.q() <= NAIVE_ORACLE_MAX_Q {
        match compose_closure_naive(d, limits.closure_cap) {
            Ok(naive) => {
                let naive_min = minimize(&naive);
                rep.check(&naive_min == c.min_core(), || {
                    format!(
                        "antichain engine core {:?} differs from naive core {:?}",
                        c.min_core().to_vec(),
                        naive_min.to_vec()
                    )
                });
                for r in all_candidates(d.q()) {
                    let naive_member = r.is_trivial() || naive.dominates(&r);
                    rep.check(naive_member == c.member(&r), || {
                        format!("engines disagree on {r}")
                    });
                }
            }
            Err(e) if e.is_cap() => {}
            Err(e) => return Err(e),
        }
    }
    Ok(rep)
}

/// The `C(q+r−1, r)` products `ε^𝐚` are distinct and pairwise non-dividing.
pub fn power_minimality(d: &RelationSet, max_r: u64, limits: &Limits) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::PowerMinimality);
    if hypothesis_failure(&mut rep, d) {
        return Ok(rep);
    }
    let e = extremal_ideal_with(d, d.q(), limits)?;
    for r in 1..=max_r {
        let p = power_generators_with(&e, r, limits)?;
        let expected = binomial(d.q() as u64 + r - 1, r);
        rep.check(p.len() as u128 == expected, || {
            format!("r={r}: {} products, expected {expected}", p.len())
        });
        let entries = p.entries();
        for (i, (a, x)) in entries.iter().enumerate() {
            for (b, y) in &entries[i + 1..] {
                rep.check(x != y && !x.divides(y) && !y.divides(x), || {
                    format!("r={r}: products for {a:?} and {b:?} are comparable")
                });
            }
        }
    }
    Ok(rep)
}

/// `ψ(ε_{D,i}) = ψ(ε_i) = m_i`, `ψ(ε^𝐚) = 𝐦^𝐚`, and lcm preservation on
/// random tuples, for `r ≤ 2`.
pub fn psi_suite<R: Rng>(i: &GeneratorList, d: &RelationSet, rng: &mut R, limits: &Limits) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Psi);
    let e = extremal_ideal_with(d, i.len(), limits)?;
    let psi = psi_for(i, &e)?;
    let psi_q = psi_build(i, &RelationSet::empty(i.len()))?;
    let eq = extremal_ideal_with(&RelationSet::empty(i.len()), i.len(), limits)?;
    for k in 1..=i.len() {
        let a = psi_apply(&psi, &e.gens()[k - 1])?;
        let b = psi_apply(&psi_q, &eq.gens()[k - 1])?;
        rep.check(&a == i.get(k) && &b == i.get(k), || format!("ψ(ε_{k}) is not m_{k}"));
    }
    for r in 1..=2u64 {
        let comps = compositions(i.len(), r);
        let power = |a: &[u64]| monomial::product(i.gens().iter().zip(a.iter().copied()));
        let eps = |a: &[u64]| monomial::product(e.gens().iter().zip(a.iter().copied()));
        let mut images = Vec::with_capacity(comps.len());
        for a in &comps {
            let img = psi_apply(&psi, &eps(a))?;
            rep.check(img == power(a), || format!("ψ(ε^{a:?}) is not m^{a:?}"));
            images.push(img);
        }
        let mut targets: Vec<Monomial> = comps.iter().map(|a| power(a)).collect();
        images.sort();
        images.dedup();
        targets.sort();
        targets.dedup();
        rep.check(images == targets, || format!("r={r}: ψ images generate a different set"));
        for _ in 0..20 {
            let t = rng.gen_range(1..=4.min(comps.len()));
            let tuple: Vec<&Vec<u64>> = comps.choose_multiple(rng, t).collect();
            let src = monomial::lcm(tuple.iter().map(|a| eps(a)).collect::<Vec<_>>().iter())?;
            let dst = monomial::lcm(tuple.iter().map(|a| power(a)).collect::<Vec<_>>().iter())?;
            let img = psi_apply(&psi, &src)?;
            rep.check(img == dst, || format!("ψ does not preserve the lcm of {tuple:?}"));
        }
    }
    Ok(rep)
}

/// `β_i(I^r) ≤ β_i(E_D^r)` for `r = 1..=max_r`, in total and per multidegree.
pub fn extremality(i: &GeneratorList, d: &RelationSet, max_r: u64, limits: &Limits) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Extremality);
    for r in 1..=max_r {
        let b = bound_check_with(i, d, r, Field::Rational, limits)?;
        for (k, ok) in b.per_index.iter().enumerate() {
            rep.check(*ok, || {
                format!(
                    "r={r}: β_{k}(I^r) = {} exceeds β_{k}(E_D^r) = {}",
                    b.actual.get(k).copied().unwrap_or(0),
                    b.extremal.get(k).copied().unwrap_or(0)
                )
            });
        }
        for (k, m) in &b.graded_violations {
            rep.check(false, || format!("r={r}: graded bound fails at β_{k},{m}"));
        }
    }
    Ok(rep)
}

/// The lattice map is bijective on atoms and preserves joins, and it is an
/// isomorphism exactly when `D̄ = Div(I)`.
pub fn lattice(i: &GeneratorList, d: &RelationSet, limits: &Limits) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Lattice);
    let e = extremal_ideal_with(d, i.len(), limits)?;
    let f = lattice_map_with(&e, i, limits)?;
    rep.check(f.bijective_on_atoms(), || "lattice map is not bijective on atoms".into());
    rep.check(f.preserves_joins(), || "lattice map does not preserve joins".into());
    let same = if d.singleton_target().is_none() {
        let c = closure_of(d, limits)?;
        all_candidates(d.q()).all(|r| c.member(&r) == holds(&r, i))
    } else {
        let ed = e.generator_list()?;
        all_candidates(d.q()).all(|r| holds(&r, &ed) == holds(&r, i))
    };
    rep.check(f.is_isomorphism() == same, || {
        format!(
            "lattice isomorphism is {} but closure equality with Div(I) is {same}",
            f.is_isomorphism()
        )
    });
    Ok(rep)
}

/// `E_D` is unchanged by minimizing `D`, by replacing it with the closure's
/// minimal core, and by adding trivial relations; `ideals_equal` agrees with
/// equality of closures on random partners.
pub fn ideal_invariance<R: Rng>(d: &RelationSet, rng: &mut R, limits: &Limits) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::IdealInvariance);
    let q = d.q();
    let base = extremal_ideal_with(d, q, limits)?;
    let same_gens = |x: &ExtremalIdeal| x.render() == base.render() && x.variables() == base.variables();
    let min = extremal_ideal_with(&minimize(d), q, limits)?;
    rep.check(same_gens(&min), || "E_D changes under D ↦ min(D)".into());
    let c = closure_of(d, limits)?;
    let core = extremal_ideal_with(c.min_core(), q, limits)?;
    rep.check(same_gens(&core), || "E_D changes under D ↦ min core of the closure".into());
    let mut padded = d.clone();
    for b in 1..=q {
        let extra: IndexSet = (1..=q).filter(|_| rng.gen_bool(0.5)).collect();
        padded.insert(DivRel::new(b, extra.with(b))?)?;
    }
    let padded_e = extremal_ideal_with(&padded, q, limits)?;
    rep.check(same_gens(&padded_e), || "E_D changes after adding trivial relations".into());
    for _ in 0..5 {
        let other = random_relation_set(rng, q, 3);
        let oe = extremal_ideal_with(&other, q, limits)?;
        let eq = ideals_equal(&base, &oe)?;
        if d.singleton_target().is_none() {
            let oc = closure_of(&other, limits)?;
            rep.check(eq == (oc.min_core() == c.min_core()), || {
                format!("ideals_equal disagrees with closure equality against {:?}", other.to_vec())
            });
        } else {
            rep.check(eq == (oe.render() == base.render()), || {
                format!("ideals_equal disagrees with generator equality against {:?}", other.to_vec())
            });
        }
    }
    Ok(rep)
}

/// `D̄ = D` exactly when `D = Div(E_D)`, checked on `D` and on `D̄`.
pub fn closed_sets(d: &RelationSet, limits: &Limits) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::ClosedSets);
    if hypothesis_failure(&mut rep, d) {
        return Ok(rep);
    }
    let full = closure_of(d, limits)?.materialize();
    for (name, s) in [("D", d), ("D̄", &full)] {
        let closed = &closure_of(s, limits)?.materialize() == s;
        let e = extremal_ideal_with(s, s.q(), limits)?;
        let div = div_explicit(&e.generator_list()?, limits.max_subset_universe)?;
        rep.check(closed == (&div == s), || {
            format!("{name}: closed = {closed} but D = Div(E_D) is {}", !closed)
        });
    }
    rep.check(
        extremal_ideal_with(&full, d.q(), limits)?.render() == extremal_ideal_with(d, d.q(), limits)?.render(),
        || "E_D differs from E of the closure".into(),
    );
    Ok(rep)
}

/// Decision-tree verdicts match closure membership and every certificate
/// checks out.
pub fn decision(d: &RelationSet, limits: &Limits) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Decision);
    if hypothesis_failure(&mut rep, d) {
        return Ok(rep);
    }
    let c = closure_of(d, limits)?;
    for r in all_candidates(d.q()) {
        let v = membership_with_certificate(d, &r)?;
        rep.check(v.is_member() == c.member(&r), || {
            format!("verdict for {r} disagrees with the closure")
        });
        if let Err(msg) = check_certificate(d, &r, &v) {
            rep.check(false, || format!("certificate for {r}: {msg}"));
        } else {
            rep.checks += 1;
        }
    }
    Ok(rep)
}
