//! Seeded generators for relation sets and square-free ideals.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::monomial::{GeneratorList, Monomial, VariableSet};
use crate::relation::{all_candidates, holds, DivRel, RelationSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `max_len` relations over `[q]`, each with at least two targets.
/// Roughly one in eight is trivial, and for `q = 2` all of them are.
pub fn random_relation_set<R: Rng>(rng: &mut R, q: usize, max_len: usize) -> RelationSet {
    let mut d = RelationSet::empty(q);
    if q < 2 {
        return d;
    }
    let len = rng.gen_range(0..=max_len);
    // Small universes may have fewer than `len` eligible relations.
    for _ in 0..64 * len {
        if d.len() == len {
            break;
        }
        let b = rng.gen_range(1..=q);
        let trivial = q < 3 || rng.gen_ratio(1, 8);
        let pool: Vec<usize> = (1..=q).filter(|&i| i != b).collect();
        let lo = if trivial { 1 } else { 2 };
        let k = rng.gen_range(lo..=pool.len());
        let mut targets: IndexSet = pool.choose_multiple(rng, k).copied().collect();
        if trivial {
            targets.insert(b);
        }
        d.insert(DivRel::new(b, targets).expect("valid by construction"))
            .expect("within the universe");
    }
    d
}

/// `q` distinct square-free monomials in `x1..xn`, none dividing another.
pub fn random_squarefree_ideal<R: Rng>(rng: &mut R, n: usize, q: usize) -> Result<GeneratorList> {
    let vars = VariableSet::new((1..=n).map(|k| format!("x{k}")))?;
    for _ in 0..1000 {
        let mut sets: Vec<IndexSet> = Vec::with_capacity(q);
        let mut stuck = 0;
        while sets.len() < q && stuck < 200 {
            let s: IndexSet = (1..=n).filter(|_| rng.gen_bool(0.4)).collect();
            if s.is_empty() || sets.iter().any(|t| t.is_subset(s) || s.is_subset(*t)) {
                stuck += 1;
                continue;
            }
            sets.push(s);
        }
        if sets.len() == q {
            let gens = sets
                .iter()
                .map(|s| Monomial::from_support(s.iter().map(|k| k - 1)))
                .collect();
            return GeneratorList::new(vars, gens);
        }
    }
    Err(Error::Precondition(format!(
        "could not draw {q} incomparable square-free monomials in {n} variables"
    )))
}

/// Up to `max_len` nontrivial relations with at least two targets that hold
/// on `u`.
pub fn random_satisfied_relations<R: Rng>(rng: &mut R, u: &GeneratorList, max_len: usize) -> RelationSet {
    let q = u.len();
    let pool: Vec<DivRel> = all_candidates(q)
        .filter(|r| !r.is_trivial() && r.targets().len() >= 2 && holds(r, u))
        .collect();
    let k = rng.gen_range(0..=max_len.min(pool.len()));
    RelationSet::new(q, pool.choose_multiple(rng, k).copied()).expect("candidates fit the universe")
}
