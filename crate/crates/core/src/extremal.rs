//! D-extremal ideals and their powers.
//!
//! For a relation set `D` over `[q]`, `Q(D)` is the family of nonempty
//! `A ⊆ [q]` such that every `(b, B) ∈ D` with `b ∈ A` has `A ∩ B ≠ ∅`. The
//! ideal `E_D` lives over one variable `y_A` per `A ∈ Q(D)` and has generators
//! `ε_i = ∏ { y_A : A ∈ Q(D), i ∈ A }`.

use log::warn;
use num_bigint::BigUint;

use crate::closure;
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::limits::Limits;
use crate::monomial::{self, GeneratorList, Monomial, VariableSet};
use crate::relation::{self, DivRel, RelationSet};

/// `Q(D)`, sorted by size and then lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSet {
    q: usize,
    members: Vec<IndexSet>,
}

impl QSet {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn members(&self) -> &[IndexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: IndexSet) -> bool {
        self.members
            .binary_search_by(|m| canonical_cmp(m, &a))
            .is_ok()
    }
}

fn canonical_cmp(a: &IndexSet, b: &IndexSet) -> std::cmp::Ordering {
    (a.len(), a).cmp(&(b.len(), b))
}

/// The membership condition of `Q(D)` for a single set.
pub fn in_q_set(d: &RelationSet, a: IndexSet) -> bool {
    !a.is_empty()
        && d
            .iter()
            .all(|r| !a.contains(r.base()) || a.intersects(r.targets()))
}

pub fn q_set(d: &RelationSet, q: usize) -> Result<QSet> {
    q_set_with(d, q, &Limits::default())
}

pub fn q_set_with(d: &RelationSet, q: usize, limits: &Limits) -> Result<QSet> {
    if q == 0 {
        return Err(Error::Precondition("q must be at least 1".into()));
    }
    if q > limits.max_subset_universe {
        return Err(Error::UniverseTooLarge {
            q,
            limit: limits.max_subset_universe,
        });
    }
    for r in d {
        r.check_universe(q)?;
    }
    let mut members: Vec<IndexSet> = IndexSet::full(q)
        .subsets()
        .filter(|a| in_q_set(d, *a))
        .collect();
    members.sort_by(canonical_cmp);
    Ok(QSet { q, members })
}

/// Variable name for `y_A`: digits run together when every index is below
/// 10 (`y_124`), otherwise separated by underscores (`y_1_12`).
pub fn y_name(a: IndexSet) -> String {
    let idx = a.to_vec();
    let sep = if idx.iter().any(|&i| i > 9) { "_" } else { "" };
    let body: Vec<String> = idx.iter().map(usize::to_string).collect();
    format!("y_{}", body.join(sep))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalIdeal {
    q: usize,
    relations: RelationSet,
    qset: QSet,
    variables: VariableSet,
    gens: Vec<Monomial>,
}

impl ExtremalIdeal {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn qset(&self) -> &QSet {
        &self.qset
    }

    pub fn variables(&self) -> &VariableSet {
        &self.variables
    }

    /// `ε_{D,1}, ..., ε_{D,q}`.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Subset `A` behind variable position `pos`.
    pub fn subset_of(&self, pos: usize) -> IndexSet {
        self.qset.members[pos]
    }

    /// The generators as a [`GeneratorList`]; fails if two coincide, which
    /// only happens when some relation has a single target.
    pub fn generator_list(&self) -> Result<GeneratorList> {
        GeneratorList::new(self.variables.clone(), self.gens.clone())
    }

    pub fn render(&self) -> Vec<String> {
        self.gens.iter().map(|m| m.render(&self.variables)).collect()
    }
}

pub fn extremal_ideal(d: &RelationSet, q: usize) -> Result<ExtremalIdeal> {
    extremal_ideal_with(d, q, &Limits::default())
}

pub fn extremal_ideal_with(d: &RelationSet, q: usize, limits: &Limits) -> Result<ExtremalIdeal> {
    if let Some(r) = d.singleton_target() {
        warn!("relation {r} has a single target; E_D carries no divisibility guarantees");
    }
    let qset = q_set_with(d, q, limits)?;
    let variables = VariableSet::new(qset.members.iter().map(|a| y_name(*a)))?;
    let gens = (1..=q)
        .map(|i| {
            Monomial::from_support(
                qset.members
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.contains(i))
                    .map(|(pos, _)| pos),
            )
        })
        .collect();
    let relations = RelationSet::new(q, d.iter().copied())?;
    Ok(ExtremalIdeal {
        q,
        relations,
        qset,
        variables,
        gens,
    })
}

/// The q-extremal ideal `E_q = E_∅`.
pub fn q_extremal(q: usize) -> Result<ExtremalIdeal> {
    extremal_ideal(&RelationSet::empty(q), q)
}

/// `𝐚 ∈ ℕ^q` with `Σ a_i = r`, lexicographically decreasing.
pub fn compositions(q: usize, r: u64) -> Vec<Vec<u64>> {
    fn rec(q: usize, r: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() + 1 == q {
            prefix.push(r);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=r).rev() {
            prefix.push(a);
            rec(q, r - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if q > 0 {
        rec(q, r, &mut Vec::with_capacity(q), &mut out);
    }
    out
}

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Generators `ε^𝐚` of the r-th power, one per `𝐚 ∈ N^r_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerGenerators {
    r: u64,
    entries: Vec<(Vec<u64>, Monomial)>,
}

impl PowerGenerators {
    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn entries(&self) -> &[(Vec<u64>, Monomial)] {
        &self.entries
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.entries.iter().map(|(_, m)| m.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn power_generators(e: &ExtremalIdeal, r: u64) -> Result<PowerGenerators> {
    power_generators_with(e, r, &Limits::default())
}

pub fn power_generators_with(e: &ExtremalIdeal, r: u64, limits: &Limits) -> Result<PowerGenerators> {
    power_products(e.gens(), r, limits).map(|entries| PowerGenerators { r, entries })
}

/// All products `m^𝐚` over `N^r_q`, no minimalization.
pub fn power_products(gens: &[Monomial], r: u64, limits: &Limits) -> Result<Vec<(Vec<u64>, Monomial)>> {
    if r == 0 {
        return Err(Error::Precondition("power must be at least 1".into()));
    }
    let q = gens.len() as u64;
    let count = binomial(q + r - 1, r);
    if count > limits.max_power_generators as u128 {
        return Err(Error::PowerCap {
            count: usize::try_from(count).unwrap_or(usize::MAX),
            cap: limits.max_power_generators,
        });
    }
    Ok(compositions(gens.len(), r)
        .into_iter()
        .map(|a| {
            let m = monomial::product(gens.iter().zip(a.iter().copied()));
            (a, m)
        })
        .collect())
}

/// Minimal generators of the r-th power of an arbitrary generator list, in
/// order of first appearance over `N^r_q`.
pub fn power_of(u: &GeneratorList, r: u64, limits: &Limits) -> Result<GeneratorList> {
    let products = power_products(u.gens(), r, limits)?;
    let mut distinct: Vec<Monomial> = Vec::with_capacity(products.len());
    for (_, m) in products {
        if !distinct.contains(&m) {
            distinct.push(m);
        }
    }
    let minimal: Vec<Monomial> = distinct
        .iter()
        .filter(|m| !distinct.iter().any(|o| o != *m && o.divides(m)))
        .cloned()
        .collect();
    GeneratorList::new(u.variables().clone(), minimal)
}

/// Outcome of comparing Div(E_D) with the closure of D over every candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivTheoremReport {
    pub candidates: usize,
    pub mismatches: usize,
    pub first_counterexample: Option<DivRel>,
}

impl DivTheoremReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Checks `Div(E_D) = D̄` candidate by candidate.
pub fn verify_div_theorem(e: &ExtremalIdeal) -> Result<DivTheoremReport> {
    if let Some(r) = e.relations.singleton_target() {
        return Err(Error::TheoremHypothesis(r.to_string()));
    }
    let gens = e.generator_list()?;
    let div = relation::div_min(&gens)?;
    let c = closure::closure(&e.relations)?;
    let mut report = DivTheoremReport {
        candidates: 0,
        mismatches: 0,
        first_counterexample: None,
    };
    for r in relation::all_candidates(e.q) {
        report.candidates += 1;
        if div.dominates(&r) != c.member(&r) {
            report.mismatches += 1;
            report.first_counterexample.get_or_insert(r);
        }
    }
    Ok(report)
}

/// `E_{D1} = E_{D2}`, decided by comparing `Q(D1)` and `Q(D2)`.
///
/// When both relation sets meet the two-target hypothesis the answer is also
/// checked against equality of the closures' minimal cores.
pub fn ideals_equal(e1: &ExtremalIdeal, e2: &ExtremalIdeal) -> Result<bool> {
    if e1.q != e2.q {
        return Err(Error::Precondition(format!(
            "ideals over different universes ({} and {})",
            e1.q, e2.q
        )));
    }
    let same = e1.qset == e2.qset;
    if e1.relations.singleton_target().is_none() && e2.relations.singleton_target().is_none() {
        let c1 = closure::closure(&e1.relations)?;
        let c2 = closure::closure(&e2.relations)?;
        assert_eq!(
            same,
            c1.min_core() == c2.min_core(),
            "Q-set equality disagrees with closure equality"
        );
    }
    Ok(same)
}

/// Exponent of `y_A` in a monomial over E's variables; zero when `A ∉ Q(D)`.
pub fn y_exponent(e: &ExtremalIdeal, m: &Monomial, a: IndexSet) -> BigUint {
    match e.qset.members.binary_search_by(|x| canonical_cmp(x, &a)) {
        Ok(pos) => m.exponent(pos),
        Err(_) => BigUint::default(),
    }
}
