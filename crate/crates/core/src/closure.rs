//! Closure of relation sets under composition, extension and trivial
//! relations.
//!
//! The closure is exponentially large, so it is never materialized: a
//! [`ClosureRep`] keeps only its minimal nontrivial elements, and membership is
//! "trivial, or an extension of some minimal element". Composing extensions
//! only yields extensions of compositions, so the worklist in [`closure`] needs
//! to compose minimal elements only.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::monomial::GeneratorList;
use crate::relation::{self, DivRel, RelationSet};

/// Default element cap for closure computations: `2·q·2^q`.
pub fn default_cap(q: usize) -> usize {
    2usize
        .saturating_mul(q)
        .saturating_mul(1usize.checked_shl(q as u32).unwrap_or(usize::MAX))
}

/// The closure of a relation set, represented by its antichain of minimal
/// nontrivial elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosureRep {
    q: usize,
    min_core: RelationSet,
}

impl ClosureRep {
    /// Wraps an antichain that is already known to be closed.
    pub(crate) fn from_core(min_core: RelationSet) -> Self {
        ClosureRep {
            q: min_core.q(),
            min_core,
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn min_core(&self) -> &RelationSet {
        &self.min_core
    }

    pub fn member(&self, r: &DivRel) -> bool {
        self.min_core.dominates(r)
    }

    /// Every element of the closure, trivial ones included. Exponential in `q`.
    pub fn materialize(&self) -> RelationSet {
        RelationSet::new(
            self.q,
            relation::all_candidates(self.q).filter(|r| self.member(r)),
        )
        .expect("candidates are valid")
    }
}

pub fn member(c: &ClosureRep, r: &DivRel) -> bool {
    c.member(r)
}

/// Nontrivial members that are minimal under the extension order.
pub fn minimize(d: &RelationSet) -> RelationSet {
    let nontrivial = d.nontrivial();
    let keep = nontrivial
        .iter()
        .filter(|r| !nontrivial.iter().any(|s| s != *r && s.leq(r)))
        .copied();
    RelationSet::new(d.q(), keep).expect("subset of a valid set")
}

/// The full composition closure D°, by naive fixed-point iteration over all
/// ordered pairs. Used as an oracle for [`closure`].
pub fn compose_closure_naive(d: &RelationSet, cap: Option<usize>) -> Result<RelationSet> {
    let cap = cap.unwrap_or_else(|| default_cap(d.q()));
    let mut current = d.clone();
    loop {
        let members = current.to_vec();
        let mut added = false;
        for a in &members {
            for b in &members {
                if current.insert(a.compose(b))? {
                    added = true;
                    if current.len() > cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                }
            }
        }
        if !added {
            return Ok(current);
        }
    }
}

/// Closure via an antichain worklist, in canonical order.
pub fn closure(d: &RelationSet) -> Result<ClosureRep> {
    closure_with_cap(d, None)
}

pub fn closure_with_cap(d: &RelationSet, cap: Option<usize>) -> Result<ClosureRep> {
    let cap = cap.unwrap_or_else(|| default_cap(d.q()));
    let mut core = minimize(d);
    let mut pending: VecDeque<DivRel> = core.iter().copied().collect();
    while let Some(x) = pending.pop_front() {
        if !core.contains(&x) {
            continue;
        }
        for y in core.to_vec() {
            for c in [x.compose(&y), y.compose(&x)] {
                if core.dominates(&c) {
                    continue;
                }
                let above: Vec<DivRel> = core.iter().filter(|s| c.leq(s)).copied().collect();
                for s in &above {
                    core.remove(s);
                }
                core.insert(c)?;
                pending.push_back(c);
                if core.len() > cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
            }
        }
    }
    Ok(ClosureRep::from_core(core))
}

/// `Div(U) = D̄`.
pub fn is_generating(d: &RelationSet, u: &GeneratorList) -> Result<bool> {
    check_universe(d, u)?;
    if !d.iter().all(|r| relation::holds(r, u)) {
        return Ok(false);
    }
    let c = closure(d)?;
    let div = relation::div_min(u)?;
    Ok(div.iter().all(|r| c.member(r)) && c.min_core().iter().all(|r| relation::holds(r, u)))
}

/// Generating, and no member is deducible from the others.
pub fn is_minimal_generating(d: &RelationSet, u: &GeneratorList) -> Result<bool> {
    if !is_generating(d, u)? {
        return Ok(false);
    }
    for r in d {
        if closure(&d.without(r))?.member(r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A minimal generating set drawn from min(Div(U)).
///
/// Scans min(Div(U)) in canonical order and drops every element deducible
/// from the ones still present. Minimal generating sets are not unique; a
/// different scan order can give a different, equally valid answer.
pub fn extract_minimal_generating(u: &GeneratorList) -> Result<RelationSet> {
    let mut d = relation::div_min(u)?;
    for r in d.to_vec() {
        let rest = d.without(&r);
        if closure(&rest)?.member(&r) {
            d = rest;
        }
    }
    Ok(d)
}

fn check_universe(d: &RelationSet, u: &GeneratorList) -> Result<()> {
    if d.q() != u.len() {
        return Err(Error::Precondition(format!(
            "relation universe {} does not match {} generators",
            d.q(),
            u.len()
        )));
    }
    Ok(())
}
