//! The lcm lattice of a minimal generator list.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::limits::Limits;
use crate::monomial::{GeneratorList, Monomial};
use crate::relation::subset_lcms;

/// All distinct lcms of nonempty generator subsets, ordered by divisibility.
///
/// Elements are sorted by total degree, then by monomial, so every element
/// comes after everything it is divisible by.
#[derive(Clone, Debug)]
pub struct LcmLattice {
    atoms: GeneratorList,
    elements: Vec<Monomial>,
    atoms_below: Vec<IndexSet>,
    /// Element id of `lcm(S)`, indexed by `S.bits() >> 1`; entry 0 is unused.
    subset_element: Vec<usize>,
}

pub fn lcm_lattice(gens: &GeneratorList) -> Result<LcmLattice> {
    lcm_lattice_with(gens, &Limits::default())
}

pub fn lcm_lattice_with(gens: &GeneratorList, limits: &Limits) -> Result<LcmLattice> {
    if gens.len() > limits.max_lattice_generators {
        return Err(Error::GeneratorCap {
            count: gens.len(),
            cap: limits.max_lattice_generators,
        });
    }
    if !gens.is_minimal() {
        return Err(Error::NonMinimalGenerators);
    }
    let lcms = subset_lcms(gens);
    let mut elements: Vec<Monomial> = lcms.iter().skip(1).cloned().collect();
    elements.sort_by(|a, b| (a.total_degree(), a).cmp(&(b.total_degree(), b)));
    elements.dedup();
    let id: HashMap<&Monomial, usize> = elements.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut subset_element = vec![usize::MAX; lcms.len()];
    for (k, m) in lcms.iter().enumerate().skip(1) {
        subset_element[k] = id[m];
    }
    let atoms_below = elements
        .iter()
        .map(|m| (1..=gens.len()).filter(|&i| gens.get(i).divides(m)).collect())
        .collect();
    Ok(LcmLattice {
        atoms: gens.clone(),
        elements,
        atoms_below,
        subset_element,
    })
}

impl LcmLattice {
    pub fn atoms(&self) -> &GeneratorList {
        &self.atoms
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: usize) -> &Monomial {
        &self.elements[id]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    /// Generators dividing element `id`.
    pub fn atoms_below(&self, id: usize) -> IndexSet {
        self.atoms_below[id]
    }

    /// Element id of the lcm of a nonempty set of generator indices.
    pub fn of_subset(&self, s: IndexSet) -> usize {
        assert!(!s.is_empty(), "the empty lcm is not a lattice element");
        self.subset_element[(s.bits() >> 1) as usize]
    }

    /// Element id of atom `i` (1-based).
    pub fn atom(&self, i: usize) -> usize {
        self.of_subset(IndexSet::singleton(i))
    }

    pub fn top(&self) -> usize {
        self.of_subset(self.atoms.indices())
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].divides(&self.elements[b])
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.of_subset(self.atoms_below[a].union(self.atoms_below[b]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::extremal_ideal;
    use crate::relation::RelationSet;

    #[test]
    fn triangle_lattice() {
        let g = GeneratorList::from_letters(&["ab", "bc", "ac"]).unwrap();
        let l = lcm_lattice(&g).unwrap();
        let shown: Vec<String> = l.elements().iter().map(|m| m.render(g.variables())).collect();
        assert_eq!(shown, vec!["a*b", "a*c", "b*c", "a*b*c"]);
        assert_eq!(l.element(l.top()).render(g.variables()), "a*b*c");
        assert_eq!(l.join(l.atom(1), l.atom(2)), l.top());
        assert!(l.leq(l.atom(3), l.top()));
    }

    #[test]
    fn single_atom() {
        let g = GeneratorList::from_letters(&["a"]).unwrap();
        let l = lcm_lattice(&g).unwrap();
        assert_eq!(l.len(), 1);
    }

    #[test]
    fn extremal_atoms() {
        let e = extremal_ideal(&RelationSet::of(4, &[(1, &[2, 3])]), 4).unwrap();
        let l = lcm_lattice(&e.generator_list().unwrap()).unwrap();
        let atoms: std::collections::BTreeSet<usize> = (1..=4).map(|i| l.atom(i)).collect();
        assert_eq!(atoms.len(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        let g = GeneratorList::from_letters(&["a", "ab"]).unwrap();
        assert_eq!(lcm_lattice(&g).unwrap_err(), Error::NonMinimalGenerators);
        let names: Vec<String> = (0..15).map(|k| format!("x{k}")).collect();
        let vars = crate::monomial::VariableSet::new(names).unwrap();
        let gens = (0..15).map(Monomial::var).collect();
        let g = GeneratorList::new(vars, gens).unwrap();
        assert!(matches!(lcm_lattice(&g), Err(Error::GeneratorCap { .. })));
    }

    #[test]
    fn every_element_is_join_of_atoms_below() {
        let g = GeneratorList::from_letters(&["bcg", "abg", "cdf", "adgh", "bef"]).unwrap();
        let l = lcm_lattice(&g).unwrap();
        for id in 0..l.len() {
            assert_eq!(l.of_subset(l.atoms_below(id)), id);
            for other in 0..l.len() {
                let j = l.join(id, other);
                assert!(l.leq(id, j) && l.leq(other, j));
            }
        }
    }
}
