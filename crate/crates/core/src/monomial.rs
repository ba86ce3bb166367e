//! Monomials over named variable sets.
//!
//! A [`Monomial`] only stores variable positions; the names live in a
//! [`VariableSet`] and a [`GeneratorList`] ties the two together. Exponents are
//! arbitrary precision so that high powers never overflow.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::index_set::IndexSet;

/// Ordered, duplicate-free list of variable names. The order fixes exponent
/// vector positions.
#[derive(Clone, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut lookup = HashMap::with_capacity(names.len());
        for (pos, name) in names.iter().enumerate() {
            if lookup.insert(name.clone(), pos).is_some() {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(VariableSet { names, lookup })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, pos: usize) -> Option<&str> {
        self.names.get(pos).map(String::as_str)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    /// Parses the canonical text form (`x^2*y`, `1`).
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let text = text.trim();
        if text == "1" {
            return Ok(Monomial::one());
        }
        if text.is_empty() {
            return Err(Error::MalformedMonomial(text.to_string()));
        }
        let mut m = Monomial::one();
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: BigUint = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::MalformedMonomial(text.to_string()))?;
                    (n.trim(), e)
                }
                None => (factor, BigUint::one()),
            };
            if name.is_empty() {
                return Err(Error::MalformedMonomial(text.to_string()));
            }
            let pos = self
                .position(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            m = m.mul(&Monomial::from_pairs(vec![(pos, exp)]));
        }
        Ok(m)
    }
}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

/// A monomial as a sparse exponent vector. The empty vector is `1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    // Sorted by position; every exponent is at least 1.
    exps: Vec<(usize, BigUint)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(pos: usize) -> Self {
        Monomial {
            exps: vec![(pos, BigUint::one())],
        }
    }

    /// Builds from `(position, exponent)` pairs in any order; zero exponents are
    /// dropped and repeated positions are added together.
    pub fn from_pairs(mut pairs: Vec<(usize, BigUint)>) -> Self {
        pairs.sort_by_key(|(p, _)| *p);
        let mut exps: Vec<(usize, BigUint)> = Vec::with_capacity(pairs.len());
        for (p, e) in pairs {
            if e.is_zero() {
                continue;
            }
            match exps.last_mut() {
                Some((q, acc)) if *q == p => *acc += e,
                _ => exps.push((p, e)),
            }
        }
        Monomial { exps }
    }

    /// Builds from a dense exponent vector.
    pub fn from_exponents<E: Into<BigUint> + Clone>(dense: &[E]) -> Self {
        let pairs = dense
            .iter()
            .enumerate()
            .map(|(p, e)| (p, e.clone().into()))
            .collect();
        Monomial::from_pairs(pairs)
    }

    /// Square-free monomial with the given support.
    pub fn from_support<I: IntoIterator<Item = usize>>(positions: I) -> Self {
        Monomial::from_pairs(positions.into_iter().map(|p| (p, BigUint::one())).collect())
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, pos: usize) -> BigUint {
        match self.exps.binary_search_by_key(&pos, |(p, _)| *p) {
            Ok(k) => self.exps[k].1.clone(),
            Err(_) => BigUint::zero(),
        }
    }

    /// `(position, exponent)` pairs with positive exponent, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigUint)> + '_ {
        self.exps.iter().map(|(p, e)| (*p, e))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().map(|(p, _)| *p)
    }

    /// Largest variable position used, if any.
    pub fn max_position(&self) -> Option<usize> {
        self.exps.last().map(|(p, _)| *p)
    }

    pub fn total_degree(&self) -> BigUint {
        self.exps.iter().map(|(_, e)| e).sum()
    }

    pub fn dense(&self, nvars: usize) -> Vec<BigUint> {
        let mut v = vec![BigUint::zero(); nvars];
        for (p, e) in &self.exps {
            v[*p] = e.clone();
        }
        v
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|(_, e)| e.is_one())
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut rest = other.exps.iter();
        'outer: for (p, e) in &self.exps {
            for (q, f) in rest.by_ref() {
                if q == p {
                    if e > f {
                        return false;
                    }
                    continue 'outer;
                }
                if q > p {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn lcm_with(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| if a >= b { a.clone() } else { b.clone() })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    pub fn pow(&self, r: u64) -> Monomial {
        if r == 0 {
            return Monomial::one();
        }
        let r = BigUint::from(r);
        Monomial {
            exps: self.exps.iter().map(|(p, e)| (*p, e * &r)).collect(),
        }
    }

    pub fn pow_big(&self, r: &BigUint) -> Monomial {
        if r.is_zero() {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|(p, e)| (*p, e * r)).collect(),
        }
    }

    fn merge(&self, other: &Monomial, both: impl Fn(&BigUint, &BigUint) -> BigUint) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len().max(other.exps.len()));
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.exps, &other.exps);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, both(&a[i].1, &b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    /// Canonical text: variables in set order, `^e` only when `e > 1`, joined
    /// by `*`; the unit renders as `1`.
    pub fn render(&self, vars: &VariableSet) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (k, (p, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                out.push('*');
            }
            match vars.name(*p) {
                Some(n) => out.push_str(n),
                None => {
                    out.push('?');
                    out.push_str(&p.to_string());
                }
            }
            if !e.is_one() {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (p, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "v{p}")?;
            if !e.is_one() {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// lcm of a nonempty sequence.
pub fn lcm<'a, I>(ms: I) -> Result<Monomial>
where
    I: IntoIterator<Item = &'a Monomial>,
{
    let mut it = ms.into_iter();
    let first = it.next().ok_or(Error::EmptyLcm)?.clone();
    Ok(it.fold(first, |acc, m| acc.lcm_with(m)))
}

pub fn divides(a: &Monomial, b: &Monomial) -> bool {
    a.divides(b)
}

pub fn is_squarefree(m: &Monomial) -> bool {
    m.is_squarefree()
}

/// Weighted product `∏ m^k`.
pub fn product<'a, I>(ms: I) -> Monomial
where
    I: IntoIterator<Item = (&'a Monomial, u64)>,
{
    ms.into_iter()
        .filter(|(_, k)| *k > 0)
        .fold(Monomial::one(), |acc, (m, k)| acc.mul(&m.pow(k)))
}

/// An ordered list of distinct monomials over one variable set. Indices are
/// 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorList {
    variables: VariableSet,
    gens: Vec<Monomial>,
}

impl GeneratorList {
    pub fn new(variables: VariableSet, gens: Vec<Monomial>) -> Result<Self> {
        for m in &gens {
            if let Some(p) = m.max_position() {
                if p >= variables.len() {
                    return Err(Error::UnknownVariable(format!("#{p}")));
                }
            }
        }
        for (i, a) in gens.iter().enumerate() {
            if gens[..i].contains(a) {
                return Err(Error::GeneratorsNotDistinct);
            }
        }
        if gens.len() > crate::index_set::MAX_INDEX {
            return Err(Error::UniverseTooLarge {
                q: gens.len(),
                limit: crate::index_set::MAX_INDEX,
            });
        }
        Ok(GeneratorList { variables, gens })
    }

    /// Parses each string against `variables`.
    pub fn parse(variables: VariableSet, gens: &[&str]) -> Result<Self> {
        let ms = gens
            .iter()
            .map(|g| variables.parse_monomial(g))
            .collect::<Result<Vec<_>>>()?;
        GeneratorList::new(variables, ms)
    }

    /// Single-letter variables taken in alphabetical order from the strings.
    pub fn from_letters(gens: &[&str]) -> Result<Self> {
        let mut letters: Vec<char> = gens.iter().flat_map(|g| g.chars()).collect();
        letters.sort_unstable();
        letters.dedup();
        let vars = VariableSet::new(letters.iter().map(|c| c.to_string()))?;
        let ms = gens
            .iter()
            .map(|g| {
                let pairs = g
                    .chars()
                    .map(|c| (vars.position(&c.to_string()).unwrap(), BigUint::one()))
                    .collect();
                Monomial::from_pairs(pairs)
            })
            .collect();
        GeneratorList::new(vars, ms)
    }

    pub fn variables(&self) -> &VariableSet {
        &self.variables
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generator with 1-based index `i`.
    pub fn get(&self, i: usize) -> &Monomial {
        &self.gens[i - 1]
    }

    /// `{1, ..., q}`.
    pub fn indices(&self) -> IndexSet {
        IndexSet::full(self.gens.len())
    }

    pub fn lcm_of(&self, set: IndexSet) -> Result<Monomial> {
        lcm(set.iter().map(|i| self.get(i)))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// No generator divides another.
    pub fn is_minimal(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| {
            self.gens
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.divides(b))
        })
    }

    pub fn render(&self) -> Vec<String> {
        self.gens.iter().map(|m| m.render(&self.variables)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xyz() -> VariableSet {
        VariableSet::new(["x", "y", "z", "w"]).unwrap()
    }

    fn m(s: &str) -> Monomial {
        xyz().parse_monomial(s).unwrap()
    }

    #[test]
    fn lcm_examples() {
        let u = GeneratorList::from_letters(&["bcg", "abg"]).unwrap();
        let l = lcm(u.gens()).unwrap();
        assert_eq!(l.render(u.variables()), "a*b*c*g");
        assert_eq!(lcm([&m("x*y")]).unwrap(), m("x*y"));
        assert_eq!(lcm([&m("x^2"), &m("x")]).unwrap(), m("x^2"));
        assert_eq!(lcm(std::iter::empty()), Err(Error::EmptyLcm));
    }

    #[test]
    fn divides_examples() {
        let u = GeneratorList::from_letters(&["bcg", "abg", "cdf", "adgh", "bef"]).unwrap();
        let l = u.lcm_of([2, 3].into_iter().collect()).unwrap();
        assert!(u.get(1).divides(&l));
        assert!(m("x*y").divides(&m("x*y")));
        assert!(!m("x^2").divides(&m("x")));
        assert!(Monomial::one().divides(&m("x")));
        assert!(!m("y").divides(&m("x*z")));
    }

    #[test]
    fn squarefree_examples() {
        assert!(m("x*y*z").is_squarefree());
        assert!(!m("x^2*y").is_squarefree());
        assert!(Monomial::one().is_squarefree());
    }

    #[test]
    fn product_examples() {
        assert_eq!(product([(&m("x"), 2)]), m("x^2"));
        assert_eq!(product([(&m("x*y"), 1), (&m("y*z"), 1)]), m("x*y^2*z"));
        assert_eq!(product(std::iter::empty()), Monomial::one());
    }

    #[test]
    fn render_and_parse() {
        let v = xyz();
        assert_eq!(m("y^3*x").render(&v), "x*y^3");
        assert_eq!(Monomial::one().render(&v), "1");
        assert_eq!(v.parse_monomial("1").unwrap(), Monomial::one());
        assert!(matches!(v.parse_monomial("q"), Err(Error::UnknownVariable(_))));
        assert!(matches!(v.parse_monomial("x^"), Err(Error::MalformedMonomial(_))));
        assert!(matches!(v.parse_monomial(""), Err(Error::MalformedMonomial(_))));
    }

    #[test]
    fn big_exponents_do_not_overflow() {
        let x = m("x").pow(u64::MAX);
        let x2 = x.mul(&x);
        assert_eq!(x2.exponent(0), BigUint::from(u64::MAX) * 2u32);
        assert!(x.divides(&x2));
    }

    #[test]
    fn generator_list_checks() {
        assert_eq!(
            GeneratorList::new(xyz(), vec![m("x"), m("x")]),
            Err(Error::GeneratorsNotDistinct)
        );
        assert!(VariableSet::new(["x", "x"]).is_err());
        let u = GeneratorList::parse(xyz(), &["x*y", "x"]).unwrap();
        assert!(!u.is_minimal());
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 4).prop_map(|v| Monomial::from_exponents(&v))
    }

    proptest! {
        #[test]
        fn lcm_laws(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            prop_assert!(a.divides(&a.lcm_with(&b)));
            prop_assert_eq!(a.lcm_with(&b), b.lcm_with(&a));
            prop_assert_eq!(a.lcm_with(&b).lcm_with(&c), a.lcm_with(&b.lcm_with(&c)));
            prop_assert_eq!(a.lcm_with(&a), a.clone());
        }

        #[test]
        fn power_squarefree(a in arb_monomial(), r in 0u64..4) {
            let p = product([(&a, r)]);
            prop_assert_eq!(p.is_squarefree(), r == 0 || a.is_one() || (a.is_squarefree() && r <= 1));
        }

        #[test]
        fn divides_matches_dense(a in arb_monomial(), b in arb_monomial()) {
            let da = a.dense(4);
            let db = b.dense(4);
            prop_assert_eq!(a.divides(&b), da.iter().zip(&db).all(|(x, y)| x <= y));
        }
    }
}
