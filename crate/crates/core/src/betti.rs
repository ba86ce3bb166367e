//! Multigraded Betti numbers of monomial ideals.
//!
//! `β_{i,m}(I) = dim H̃_{i−1}(K_m)` where `K_m` is the set of generator subsets
//! whose lcm divides `m` strictly. Only lattice elements can carry nonzero
//! numbers, so the computation runs once per element of the lcm lattice.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::{binomial, power_generators_with, power_of, ExtremalIdeal};
use crate::homology::{reduced_homology, Field, SimplicialComplexSlice};
use crate::lattice::{lcm_lattice_with, LcmLattice};
use crate::limits::Limits;
use crate::monomial::{GeneratorList, Monomial, VariableSet};

/// Betti numbers with ideal indexing: `β_0` counts minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    field: Field,
    variables: VariableSet,
    graded: BTreeMap<(usize, Monomial), u64>,
    total: Vec<u64>,
}

impl BettiTable {
    /// Builds a table from graded entries; zero entries are dropped.
    pub fn from_graded(
        field: Field,
        variables: VariableSet,
        graded: impl IntoIterator<Item = ((usize, Monomial), u64)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (key, v) in graded {
            if v > 0 {
                *map.entry(key).or_insert(0) += v;
            }
        }
        let len = map.keys().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut total = vec![0u64; len];
        for ((i, _), v) in &map {
            total[*i] += v;
        }
        BettiTable {
            field,
            variables,
            graded: map,
            total,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn variables(&self) -> &VariableSet {
        &self.variables
    }

    pub fn graded(&self) -> &BTreeMap<(usize, Monomial), u64> {
        &self.graded
    }

    pub fn get(&self, i: usize, m: &Monomial) -> u64 {
        self.graded.get(&(i, m.clone())).copied().unwrap_or(0)
    }

    /// `β_0, β_1, …` up to the last nonzero entry.
    pub fn total(&self) -> &[u64] {
        &self.total
    }

    pub fn total_at(&self, i: usize) -> u64 {
        self.total.get(i).copied().unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.total.len().checked_sub(1)
    }

    pub fn to_document(&self) -> BettiDocument {
        BettiDocument {
            field: self.field,
            variables: self.variables.names().to_vec(),
            total: self.total.clone(),
            graded: self
                .graded
                .iter()
                .map(|((i, m), v)| GradedEntry {
                    i: *i,
                    multidegree: m.render(&self.variables),
                    value: *v,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiDocument {
    pub field: Field,
    pub variables: Vec<String>,
    pub total: Vec<u64>,
    pub graded: Vec<GradedEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedEntry {
    pub i: usize,
    pub multidegree: String,
    pub value: u64,
}

pub fn betti(gens: &GeneratorList, field: Field) -> Result<BettiTable> {
    betti_with(gens, field, &Limits::default())
}

pub fn betti_with(gens: &GeneratorList, field: Field, limits: &Limits) -> Result<BettiTable> {
    let lattice = lcm_lattice_with(gens, limits)?;
    let ids: Vec<usize> = (0..lattice.len()).collect();
    let per_element = |id: &usize| element_betti(&lattice, *id, field, limits);
    let results: Vec<Result<Vec<(usize, u64)>>> = match limits.threads {
        Some(n) if n > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
            pool.install(|| ids.par_iter().map(per_element).collect())
        }
        _ => ids.iter().map(per_element).collect(),
    };
    let mut graded = Vec::new();
    for (id, res) in results.into_iter().enumerate() {
        for (i, v) in res? {
            graded.push(((i, lattice.element(id).clone()), v));
        }
    }
    Ok(BettiTable::from_graded(field, gens.variables().clone(), graded))
}

/// Nonzero `(i, β_{i,m})` at lattice element `id`.
fn element_betti(
    lattice: &LcmLattice,
    id: usize,
    field: Field,
    limits: &Limits,
) -> Result<Vec<(usize, u64)>> {
    let vertices = lattice.atoms_below(id);
    if vertices.len() == 1 {
        return Ok(vec![(0, 1)]);
    }
    let faces: Vec<_> = vertices
        .subsets()
        .filter(|s| s.is_empty() || lattice.of_subset(*s) != id)
        .collect();
    if faces.len() > limits.max_slice_faces {
        return Err(Error::FaceCap {
            multidegree: lattice.element(id).render(lattice.atoms().variables()),
            faces: faces.len(),
            cap: limits.max_slice_faces,
        });
    }
    let slice = SimplicialComplexSlice::from_sorted(vertices, faces);
    Ok(reduced_homology(&slice, field)
        .into_iter()
        .enumerate()
        .filter(|&(_, h)| h > 0)
        .map(|(k, h)| (k, h as u64))
        .collect())
}

/// Betti table of the r-th power of an arbitrary generator list, computed on
/// its minimal generators.
pub fn betti_power(gens: &GeneratorList, r: u64, field: Field, limits: &Limits) -> Result<BettiTable> {
    let power = power_of(gens, r, limits)?;
    betti_with(&power, field, limits)
}

/// Betti table of `E_D^r` on its `C(q+r−1, r)` power generators.
pub fn betti_extremal_power(e: &ExtremalIdeal, r: u64, field: Field, limits: &Limits) -> Result<BettiTable> {
    let power = power_generators_with(e, r, limits)?;
    let gens = GeneratorList::new(e.variables().clone(), power.monomials())?;
    betti_with(&gens, field, limits)
}

/// Taylor bounds `C(g, i+1)` for `i = 0, …, g−1` with `g = C(q+r−1, r)`.
pub fn taylor_binomial_bounds(q: usize, r: u64) -> Vec<u128> {
    let g = binomial(q as u64 + r - 1, r);
    let g = u64::try_from(g).expect("generator count fits in u64");
    (0..g).map(|i| binomial(g, i + 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{extremal_ideal, q_extremal};
    use crate::relation::RelationSet;

    fn running_e() -> ExtremalIdeal {
        extremal_ideal(&RelationSet::of(4, &[(1, &[2, 3])]), 4).unwrap()
    }

    #[test]
    fn principal_ideal() {
        let g = GeneratorList::from_letters(&["abc"]).unwrap();
        assert_eq!(betti(&g, Field::Rational).unwrap().total(), &[1]);
    }

    #[test]
    fn first_powers() {
        let e = running_e().generator_list().unwrap();
        assert_eq!(betti(&e, Field::Rational).unwrap().total(), &[4, 5, 2]);
        let e4 = q_extremal(4).unwrap().generator_list().unwrap();
        assert_eq!(betti(&e4, Field::Rational).unwrap().total(), &[4, 6, 4, 1]);
    }

    #[test]
    fn path_ideal() {
        // (ab, bc, cd): a path of length 3 has a linear resolution 3, 2.
        let g = GeneratorList::from_letters(&["ab", "bc", "cd"]).unwrap();
        let t = betti(&g, Field::Rational).unwrap();
        assert_eq!(t.total(), &[3, 2]);
        let abc = g.variables().parse_monomial("a*b*c").unwrap();
        assert_eq!(t.get(1, &abc), 1);
    }

    #[test]
    fn graded_sums_match_totals() {
        let g = GeneratorList::from_letters(&["bcg", "abg", "cdf", "adgh", "bef"]).unwrap();
        let t = betti(&g, Field::Rational).unwrap();
        for (i, &v) in t.total().iter().enumerate() {
            let s: u64 = t.graded().iter().filter(|((k, _), _)| *k == i).map(|(_, v)| v).sum();
            assert_eq!(s, v);
        }
        assert_eq!(t.total()[0], 5);
    }

    #[test]
    fn threads_do_not_change_results() {
        let e = running_e();
        let seq = betti_extremal_power(&e, 2, Field::Rational, &Limits::default()).unwrap();
        let limits = Limits {
            threads: Some(4),
            ..Limits::default()
        };
        let par = betti_extremal_power(&e, 2, Field::Rational, &limits).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn face_cap_names_multidegree() {
        let e4 = q_extremal(4).unwrap().generator_list().unwrap();
        let limits = Limits {
            max_slice_faces: 4,
            ..Limits::default()
        };
        match betti_with(&e4, Field::Rational, &limits) {
            Err(Error::FaceCap { multidegree, .. }) => assert!(multidegree.contains("y_")),
            other => panic!("expected a face cap error, got {other:?}"),
        }
    }

    #[test]
    fn taylor_bounds() {
        assert_eq!(taylor_binomial_bounds(4, 1), vec![4, 6, 4, 1]);
        assert_eq!(
            taylor_binomial_bounds(4, 2),
            vec![10, 45, 120, 210, 252, 210, 120, 45, 10, 1]
        );
        assert_eq!(taylor_binomial_bounds(1, 5), vec![1]);
    }
}
