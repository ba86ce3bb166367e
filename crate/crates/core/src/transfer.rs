//! Moving information from `E_D` to ideals that satisfy `D`.
//!
//! For a square-free `I = (m_1, …, m_q)` satisfying `D`, the homomorphism
//! `ψ_I` sends `y_A` to the product of the variables `x_k` with
//! `A_k = {j : x_k | m_j} = A`. It carries `ε_{D,i}` to `m_i` and preserves
//! lcms, so Betti numbers of `E_D^r` bound those of `I^r` multidegree by
//! multidegree.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::betti::{betti_extremal_power, betti_power, BettiTable};
use crate::closure::closure;
use crate::error::{Error, Result};
use crate::extremal::{extremal_ideal_with, ExtremalIdeal};
use crate::homology::Field;
use crate::index_set::IndexSet;
use crate::lattice::{lcm_lattice_with, LcmLattice};
use crate::limits::Limits;
use crate::monomial::{GeneratorList, Monomial, VariableSet};
use crate::relation::{holds, RelationSet};

/// `A_k` for every variable occurring in some generator, keyed by position.
pub fn a_sets(i: &GeneratorList) -> BTreeMap<usize, IndexSet> {
    let mut out: BTreeMap<usize, IndexSet> = BTreeMap::new();
    for j in 1..=i.len() {
        for k in i.get(j).support() {
            out.entry(k).or_default().insert(j);
        }
    }
    out
}

fn check_satisfies(i: &GeneratorList, d: &RelationSet) -> Result<()> {
    if d.q() != i.len() {
        return Err(Error::Precondition(format!(
            "relations over [{}] but the ideal has {} generators",
            d.q(),
            i.len()
        )));
    }
    match d.iter().find(|r| !holds(r, i)) {
        Some(r) => Err(Error::RelationFails(r.to_string())),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMap {
    source: VariableSet,
    subsets: Vec<IndexSet>,
    target: VariableSet,
    images: Vec<Monomial>,
}

impl PsiMap {
    pub fn source(&self) -> &VariableSet {
        &self.source
    }

    pub fn target(&self) -> &VariableSet {
        &self.target
    }

    /// `ψ(y_A)` for the source variable at `pos`.
    pub fn image(&self, pos: usize) -> &Monomial {
        &self.images[pos]
    }

    /// `ψ(y_A)`, or `None` when `A ∉ Q(D)`.
    pub fn image_of_subset(&self, a: IndexSet) -> Option<&Monomial> {
        self.subsets.iter().position(|s| *s == a).map(|p| &self.images[p])
    }

    /// Source subsets with their images, in variable order.
    pub fn assignments(&self) -> impl Iterator<Item = (IndexSet, &Monomial)> + '_ {
        self.subsets.iter().copied().zip(self.images.iter())
    }
}

/// `ψ_I` on the variables of `E_D`.
pub fn psi_build(i: &GeneratorList, d: &RelationSet) -> Result<PsiMap> {
    let e = extremal_ideal_with(d, i.len(), &Limits::default())?;
    psi_for(i, &e)
}

/// `ψ_I` on the variables of an already constructed `E_D`.
pub fn psi_for(i: &GeneratorList, e: &ExtremalIdeal) -> Result<PsiMap> {
    if !i.is_squarefree() {
        return Err(Error::NotSquareFree);
    }
    check_satisfies(i, e.relations())?;
    let subsets: Vec<IndexSet> = e.qset().members().to_vec();
    let mut images = vec![Monomial::one(); subsets.len()];
    for (k, a) in a_sets(i) {
        let Some(pos) = subsets.iter().position(|s| *s == a) else {
            return Err(Error::Precondition(format!("A_k = {a} is not in Q(D)")));
        };
        images[pos] = images[pos].mul(&Monomial::var(k));
    }
    Ok(PsiMap {
        source: e.variables().clone(),
        subsets,
        target: i.variables().clone(),
        images,
    })
}

/// Multiplicative extension of `ψ` to a monomial over the source variables.
pub fn psi_apply(p: &PsiMap, m: &Monomial) -> Result<Monomial> {
    let mut out = Monomial::one();
    for (pos, e) in m.terms() {
        let image = p
            .images
            .get(pos)
            .ok_or_else(|| Error::UnknownVariable(format!("#{pos}")))?;
        out = out.mul(&image.pow_big(e));
    }
    Ok(out)
}

/// `f : LCM(E_D) → LCM(I)`, `lcm(ε_S) ↦ lcm(m_S)`.
#[derive(Clone, Debug)]
pub struct LatticeMap {
    source: LcmLattice,
    target: LcmLattice,
    assignment: Vec<usize>,
    isomorphism: bool,
}

impl LatticeMap {
    pub fn source(&self) -> &LcmLattice {
        &self.source
    }

    pub fn target(&self) -> &LcmLattice {
        &self.target
    }

    pub fn image(&self, source_id: usize) -> usize {
        self.assignment[source_id]
    }

    pub fn is_isomorphism(&self) -> bool {
        self.isomorphism
    }

    pub fn bijective_on_atoms(&self) -> bool {
        let q = self.source.atoms().len();
        let images: std::collections::BTreeSet<usize> =
            (1..=q).map(|i| self.image(self.source.atom(i))).collect();
        q == self.target.atoms().len()
            && images.len() == q
            && (1..=q).all(|i| self.image(self.source.atom(i)) == self.target.atom(i))
    }

    pub fn preserves_joins(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|a| {
            (a..n).all(|b| {
                self.image(self.source.join(a, b)) == self.target.join(self.image(a), self.image(b))
            })
        })
    }
}

pub fn lattice_map(e: &ExtremalIdeal, i: &GeneratorList) -> Result<LatticeMap> {
    lattice_map_with(e, i, &Limits::default())
}

pub fn lattice_map_with(e: &ExtremalIdeal, i: &GeneratorList, limits: &Limits) -> Result<LatticeMap> {
    if i.len() != e.q() {
        return Err(Error::Precondition(format!(
            "E_D has {} generators but the ideal has {}",
            e.q(),
            i.len()
        )));
    }
    let core = closure(e.relations())?;
    check_satisfies(i, core.min_core())?;
    let source = lcm_lattice_with(&e.generator_list()?, limits)?;
    let target = lcm_lattice_with(i, limits)?;
    let mut assignment = vec![usize::MAX; source.len()];
    for s in i.indices().subsets().filter(|s| !s.is_empty()) {
        let (from, to) = (source.of_subset(s), target.of_subset(s));
        if assignment[from] == usize::MAX {
            assignment[from] = to;
        } else if assignment[from] != to {
            return Err(Error::Precondition(format!(
                "lattice map is not well defined at {}",
                source.element(from).render(e.variables())
            )));
        }
    }
    let isomorphism = source.len() == target.len();
    Ok(LatticeMap {
        source,
        target,
        assignment,
        isomorphism,
    })
}

/// Pushes a Betti table of `E_D^r` forward along `ψ`:
/// `bound_{i,m} = Σ_{ψ(e) = m} β_{i,e}`.
pub fn betti_transfer(src: &BettiTable, p: &PsiMap) -> Result<BettiTable> {
    if src.variables() != p.source() {
        return Err(Error::Precondition(
            "Betti table is not over the source variables of ψ".into(),
        ));
    }
    let mut graded = Vec::with_capacity(src.graded().len());
    for ((i, e), v) in src.graded() {
        graded.push(((*i, psi_apply(p, e)?), *v));
    }
    Ok(BettiTable::from_graded(src.field(), p.target().clone(), graded))
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub power: u64,
    pub actual: Vec<u64>,
    pub extremal: Vec<u64>,
    /// `β_i(I^r) ≤ β_i(E_D^r)` for each index.
    pub per_index: Vec<bool>,
    /// `(i, multidegree)` where the transferred graded bound fails.
    pub graded_violations: Vec<(usize, String)>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.per_index.iter().all(|&ok| ok) && self.graded_violations.is_empty()
    }
}

pub fn bound_check(i: &GeneratorList, d: &RelationSet, r: u64, field: Field) -> Result<BoundReport> {
    bound_check_with(i, d, r, field, &Limits::default())
}

/// Compares `β(I^r)` with `β(E_D^r)` in total and, through `ψ`, per
/// multidegree.
pub fn bound_check_with(
    i: &GeneratorList,
    d: &RelationSet,
    r: u64,
    field: Field,
    limits: &Limits,
) -> Result<BoundReport> {
    let e = extremal_ideal_with(d, i.len(), limits)?;
    let psi = psi_for(i, &e)?;
    let actual = betti_power(i, r, field, limits)?;
    let extremal = betti_extremal_power(&e, r, field, limits)?;
    let bound = betti_transfer(&extremal, &psi)?;
    let len = actual.total().len().max(extremal.total().len());
    let per_index = (0..len)
        .map(|k| actual.total_at(k) <= extremal.total_at(k))
        .collect();
    let graded_violations = actual
        .graded()
        .iter()
        .filter(|((k, m), v)| **v > bound.get(*k, m))
        .map(|((k, m), _)| (*k, m.render(i.variables())))
        .collect();
    Ok(BoundReport {
        power: r,
        actual: actual.total().to_vec(),
        extremal: extremal.total().to_vec(),
        per_index,
        graded_violations,
    })
}
