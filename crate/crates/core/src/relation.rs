//! Divisibility relations `(b, B)`, meaning `u_b | lcm(u_i : i ∈ B)`, and the
//! calculus on them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index_set::{IndexSet, MAX_INDEX};
use crate::monomial::{GeneratorList, Monomial};
use crate::transversal;

/// A relation `(base, targets)` over 1-based indices; `targets` is nonempty.
///
/// The derived ordering is the canonical one: by base, then by targets as an
/// ascending sequence compared lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(usize, IndexSet)", into = "(usize, IndexSet)")]
pub struct DivRel {
    base: usize,
    targets: IndexSet,
}

impl DivRel {
    pub fn new(base: usize, targets: IndexSet) -> Result<Self> {
        if base == 0 || base > MAX_INDEX {
            return Err(Error::InvalidRelation(format!("base {base} is not a valid index")));
        }
        if targets.is_empty() {
            return Err(Error::InvalidRelation(format!("({base},{{}}) has no targets")));
        }
        Ok(DivRel { base, targets })
    }

    /// Panicking constructor for literals.
    pub fn of(base: usize, targets: &[usize]) -> Self {
        DivRel::new(base, targets.iter().copied().collect()).expect("valid relation")
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn targets(&self) -> IndexSet {
        self.targets
    }

    pub fn is_trivial(&self) -> bool {
        self.targets.contains(self.base)
    }

    /// `(b,B) ∘ (c,C) = (b, (B ∖ {c}) ∪ C)`.
    pub fn compose(&self, other: &DivRel) -> DivRel {
        DivRel {
            base: self.base,
            targets: self.targets.without(other.base).union(other.targets),
        }
    }

    /// Extension order: same base and `self.targets ⊆ other.targets`.
    pub fn leq(&self, other: &DivRel) -> bool {
        self.base == other.base && self.targets.is_subset(other.targets)
    }

    pub fn check_universe(&self, q: usize) -> Result<()> {
        if self.base > q || self.targets.max().is_some_and(|m| m > q) {
            return Err(Error::InvalidRelation(format!("{self} is outside [{q}]")));
        }
        Ok(())
    }
}

impl TryFrom<(usize, IndexSet)> for DivRel {
    type Error = Error;

    fn try_from((b, t): (usize, IndexSet)) -> Result<Self> {
        DivRel::new(b, t)
    }
}

impl From<DivRel> for (usize, IndexSet) {
    fn from(r: DivRel) -> Self {
        (r.base, r.targets)
    }
}

impl fmt::Display for DivRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.base, self.targets)
    }
}

impl fmt::Debug for DivRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn compose(r1: &DivRel, r2: &DivRel) -> DivRel {
    r1.compose(r2)
}

pub fn is_trivial(r: &DivRel) -> bool {
    r.is_trivial()
}

pub fn leq(r1: &DivRel, r2: &DivRel) -> bool {
    r1.leq(r2)
}

/// A finite set of relations over the universe `[q]`, kept in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RelationSet {
    q: usize,
    rels: BTreeSet<DivRel>,
}

impl RelationSet {
    pub fn empty(q: usize) -> Self {
        RelationSet {
            q,
            rels: BTreeSet::new(),
        }
    }

    pub fn new<I: IntoIterator<Item = DivRel>>(q: usize, rels: I) -> Result<Self> {
        if q > MAX_INDEX {
            return Err(Error::UniverseTooLarge { q, limit: MAX_INDEX });
        }
        let mut set = RelationSet::empty(q);
        for r in rels {
            set.insert(r)?;
        }
        Ok(set)
    }

    /// Panicking constructor for literals.
    pub fn of(q: usize, rels: &[(usize, &[usize])]) -> Self {
        RelationSet::new(q, rels.iter().map(|(b, t)| DivRel::of(*b, t))).expect("valid relations")
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.rels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rels.is_empty()
    }

    pub fn insert(&mut self, r: DivRel) -> Result<bool> {
        r.check_universe(self.q)?;
        Ok(self.rels.insert(r))
    }

    pub fn remove(&mut self, r: &DivRel) -> bool {
        self.rels.remove(r)
    }

    pub fn contains(&self, r: &DivRel) -> bool {
        self.rels.contains(r)
    }

    pub fn iter(&self) -> impl Iterator<Item = &DivRel> + '_ {
        self.rels.iter()
    }

    pub fn to_vec(&self) -> Vec<DivRel> {
        self.rels.iter().copied().collect()
    }

    pub fn base_set(&self) -> IndexSet {
        self.rels.iter().map(DivRel::base).collect()
    }

    /// Members that are not trivial.
    pub fn nontrivial(&self) -> RelationSet {
        RelationSet {
            q: self.q,
            rels: self.rels.iter().filter(|r| !r.is_trivial()).copied().collect(),
        }
    }

    /// First nontrivial member with fewer than two targets, if any.
    pub fn singleton_target(&self) -> Option<DivRel> {
        self.rels
            .iter()
            .find(|r| !r.is_trivial() && r.targets.len() < 2)
            .copied()
    }

    /// `self ∖ {r}`.
    pub fn without(&self, r: &DivRel) -> RelationSet {
        let mut out = self.clone();
        out.rels.remove(r);
        out
    }

    /// True iff `r` is trivial or extends some member.
    pub fn dominates(&self, r: &DivRel) -> bool {
        r.is_trivial() || self.rels.iter().any(|s| s.leq(r))
    }
}

impl fmt::Debug for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} ", self.q)?;
        f.debug_set().entries(self.rels.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a RelationSet {
    type Item = &'a DivRel;
    type IntoIter = std::collections::btree_set::Iter<'a, DivRel>;

    fn into_iter(self) -> Self::IntoIter {
        self.rels.iter()
    }
}

pub fn base_set(d: &RelationSet) -> IndexSet {
    d.base_set()
}

/// `u_b | lcm(u_i : i ∈ B)`. The relation must be valid for `|u|`.
pub fn holds(r: &DivRel, u: &GeneratorList) -> bool {
    let l = u.lcm_of(r.targets).expect("targets are nonempty");
    u.get(r.base).divides(&l)
}

/// Membership in Div(U); same as [`holds`].
pub fn div_contains(u: &GeneratorList, r: &DivRel) -> bool {
    holds(r, u)
}

/// How [`div_min_with`] enumerates minimal target sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TransversalStrategy {
    #[default]
    Branching,
    BruteForce,
}

/// min(Div(U)): the nontrivial holding relations with inclusion-minimal targets.
pub fn div_min(u: &GeneratorList) -> Result<RelationSet> {
    div_min_with(u, TransversalStrategy::Branching)
}

pub fn div_min_with(u: &GeneratorList, strategy: TransversalStrategy) -> Result<RelationSet> {
    let q = u.len();
    let mut out = RelationSet::empty(q);
    for b in 1..=q {
        let others = IndexSet::full(q).without(b);
        let ub = u.get(b);
        // One edge per variable of u_b: the other generators at least as deep in it.
        let edges: Vec<IndexSet> = ub
            .terms()
            .map(|(pos, e)| {
                others
                    .iter()
                    .filter(|&i| &u.get(i).exponent(pos) >= e)
                    .collect()
            })
            .collect();
        let mins = if edges.is_empty() {
            // u_b = 1 divides everything: every singleton target works.
            others.iter().map(IndexSet::singleton).collect()
        } else {
            match strategy {
                TransversalStrategy::Branching => transversal::minimal_transversals(&edges),
                TransversalStrategy::BruteForce => {
                    transversal::minimal_transversals_brute_force(&edges, others)
                }
            }
        };
        for t in mins {
            out.insert(DivRel::new(b, t)?)?;
        }
    }
    Ok(out)
}

/// All `q·(2^q − 1)` candidate relations over `[q]`, canonical order.
pub fn all_candidates(q: usize) -> impl Iterator<Item = DivRel> {
    let full = IndexSet::full(q);
    (1..=q).flat_map(move |b| {
        let mut ts: Vec<IndexSet> = full.subsets().filter(|s| !s.is_empty()).collect();
        ts.sort();
        ts.into_iter().map(move |t| DivRel { base: b, targets: t })
    })
}

/// Div(U) as an explicit set, by testing every candidate. Exponential in `q`.
pub fn div_explicit(u: &GeneratorList, limit: usize) -> Result<RelationSet> {
    if u.len() > limit {
        return Err(Error::UniverseTooLarge { q: u.len(), limit });
    }
    let lcms = subset_lcms(u);
    RelationSet::new(
        u.len(),
        all_candidates(u.len()).filter(|r| u.get(r.base).divides(&lcms[(r.targets.bits() >> 1) as usize])),
    )
}

/// lcm of every subset, indexed by `bits >> 1`; entry 0 is the unit.
pub(crate) fn subset_lcms(u: &GeneratorList) -> Vec<Monomial> {
    let q = u.len();
    let mut lcms = vec![Monomial::one(); 1 << q];
    for mask in 1usize..(1 << q) {
        let low = mask.trailing_zeros() as usize;
        lcms[mask] = lcms[mask & (mask - 1)].lcm_with(&u.gens()[low]);
    }
    lcms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::VariableSet;

    fn s(v: &[usize]) -> IndexSet {
        v.iter().copied().collect()
    }

    fn running_example() -> GeneratorList {
        GeneratorList::from_letters(&["bcg", "abg", "cdf", "adgh", "bef"]).unwrap()
    }

    #[test]
    fn compose_examples() {
        let a = DivRel::of(1, &[2, 3]);
        let b = DivRel::of(2, &[4, 5]);
        assert_eq!(a.compose(&b), DivRel::of(1, &[3, 4, 5]));
        assert_eq!(b.compose(&a), DivRel::of(2, &[2, 3, 4, 5]));
        assert_eq!(a.compose(&a), a);
        assert_ne!(a.compose(&b), b.compose(&a));
    }

    #[test]
    fn triviality_and_order() {
        assert!(DivRel::of(1, &[1, 2]).is_trivial());
        assert!(!DivRel::of(1, &[2, 3]).is_trivial());
        assert!(DivRel::of(3, &[3]).is_trivial());
        assert!(DivRel::of(1, &[2, 3]).leq(&DivRel::of(1, &[2, 3, 4])));
        assert!(DivRel::of(1, &[2, 3]).leq(&DivRel::of(1, &[2, 3])));
        assert!(!DivRel::of(1, &[2, 3]).leq(&DivRel::of(2, &[2, 3])));
    }

    #[test]
    fn invalid_relations() {
        assert!(DivRel::new(1, IndexSet::EMPTY).is_err());
        assert!(DivRel::new(0, s(&[1])).is_err());
        assert!(RelationSet::new(3, [DivRel::of(4, &[1])]).is_err());
        assert!(RelationSet::new(3, [DivRel::of(1, &[2, 5])]).is_err());
    }

    #[test]
    fn canonical_order() {
        let d = RelationSet::of(5, &[(3, &[4, 5]), (1, &[2, 3]), (3, &[1, 5])]);
        assert_eq!(
            d.to_vec(),
            vec![DivRel::of(1, &[2, 3]), DivRel::of(3, &[1, 5]), DivRel::of(3, &[4, 5])]
        );
        assert_eq!(d.base_set(), s(&[1, 3]));
        assert_eq!(RelationSet::empty(3).base_set(), IndexSet::EMPTY);
        assert_eq!(RelationSet::of(3, &[(2, &[2])]).base_set(), s(&[2]));
    }

    #[test]
    fn holds_on_running_example() {
        let u = running_example();
        assert!(holds(&DivRel::of(1, &[2, 3]), &u));
        assert!(holds(&DivRel::of(2, &[4, 5]), &u));
        assert!(holds(&DivRel::of(4, &[4, 1]), &u));
        assert!(!holds(&DivRel::of(4, &[1, 2]), &u));
        assert!(div_contains(&u, &DivRel::of(1, &[2, 3])));
    }

    #[test]
    fn div_min_examples() {
        let tri = GeneratorList::from_letters(&["xy", "yz", "xz"]).unwrap();
        assert_eq!(
            div_min(&tri).unwrap(),
            RelationSet::of(3, &[(1, &[2, 3]), (2, &[1, 3]), (3, &[1, 2])])
        );
        let free = GeneratorList::from_letters(&["x", "y"]).unwrap();
        assert!(div_min(&free).unwrap().is_empty());
        let mins = div_min(&running_example()).unwrap();
        assert!(mins.contains(&DivRel::of(1, &[2, 3])));
        assert!(mins.contains(&DivRel::of(2, &[4, 5])));
    }

    #[test]
    fn unit_generator_is_degenerate_base() {
        let vars = VariableSet::new(["x", "y"]).unwrap();
        let u = GeneratorList::parse(vars, &["1", "x", "y"]).unwrap();
        let mins = div_min(&u).unwrap();
        assert!(mins.contains(&DivRel::of(1, &[2])));
        assert!(mins.contains(&DivRel::of(1, &[3])));
    }

    #[test]
    fn duplicate_generators_rejected() {
        let vars = VariableSet::new(["x"]).unwrap();
        assert_eq!(
            GeneratorList::parse(vars, &["x", "x"]).unwrap_err(),
            Error::GeneratorsNotDistinct
        );
    }

    #[test]
    fn candidates_count() {
        assert_eq!(all_candidates(3).count(), 3 * 7);
        let v: Vec<_> = all_candidates(2).collect();
        assert_eq!(v[0], DivRel::of(1, &[1]));
        assert_eq!(v[1], DivRel::of(1, &[1, 2]));
    }
}
