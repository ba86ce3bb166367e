#![allow(dead_code)]

use std::collections::HashSet;

use divrel::{DivRel, GeneratorList, IndexSet, Monomial, RelationSet, VariableSet};
use proptest::prelude::*;

/// Relation sets over `[q]` with `q` in `qs`, arbitrary nonempty targets.
pub fn relation_sets(qs: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = RelationSet> {
    qs.prop_flat_map(move |q| {
        let rel = (1..=q, 1u64..(1u64 << q)).prop_map(|(b, bits)| DivRel::new(b, IndexSet::from_bits(bits << 1)).unwrap());
        prop::collection::vec(rel, 0..=max_len).prop_map(move |rs| RelationSet::new(q, rs).unwrap())
    })
}

/// Relation sets whose every target set has at least two elements other than
/// the base, the standing hypothesis of the extremal-ideal theorems. Draws
/// that miss the hypothesis are dropped, so small `q` yields short sets.
pub fn wide_relation_sets(qs: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = RelationSet> {
    qs.prop_flat_map(move |q| {
        let rel = (1..=q, 0u64..(1u64 << q)).prop_map(|(b, bits)| {
            let t = IndexSet::from_bits(bits << 1);
            (t.without(b).len() >= 2).then(|| DivRel::new(b, t).unwrap())
        });
        prop::collection::vec(rel, 0..=max_len)
            .prop_map(move |rs| RelationSet::new(q, rs.into_iter().flatten()).unwrap())
    })
}

/// Minimal generating sets of `q` monomials in `n` variables with exponents
/// up to `max_exp`.
pub fn ideals(
    ns: std::ops::RangeInclusive<usize>,
    qs: std::ops::RangeInclusive<usize>,
    max_exp: u64,
) -> impl Strategy<Value = GeneratorList> {
    (ns, qs)
        .prop_flat_map(move |(n, q)| prop::collection::vec(prop::collection::vec(0..=max_exp, n), q))
        .prop_filter_map("minimal and distinct", |rows| {
            let n = rows[0].len();
            let vars = VariableSet::new((1..=n).map(|k| format!("x{k}"))).unwrap();
            let gens = rows.iter().map(|r| Monomial::from_exponents(r)).collect();
            GeneratorList::new(vars, gens).ok().filter(|g| g.is_minimal() && g.gens().iter().all(|m| !m.is_one()))
        })
}

/// Exponent of every variable, as machine integers.
pub fn exps(m: &Monomial, n: usize) -> Vec<u64> {
    m.dense(n).iter().map(|e| u64::try_from(e).unwrap()).collect()
}

/// The closure computed by saturating `D` plus all trivial relations under
/// composition and upward extension, over all `q·(2^q−1)` pairs directly.
pub fn brute_closure(d: &RelationSet) -> Vec<DivRel> {
    let q = d.q();
    let all: Vec<DivRel> = (1..=q)
        .flat_map(|b| (1u64..(1u64 << q)).map(move |bits| DivRel::new(b, IndexSet::from_bits(bits << 1)).unwrap()))
        .collect();
    let mut inside: HashSet<DivRel> = all
        .iter()
        .filter(|r| r.targets().contains(r.base()) || d.contains(r))
        .copied()
        .collect();
    loop {
        let members: Vec<DivRel> = inside.iter().copied().collect();
        let mut next = inside.clone();
        for a in &members {
            for c in &members {
                next.insert(a.compose(c));
            }
        }
        for r in &all {
            if next.iter().any(|s| s.base() == r.base() && s.targets().is_subset(r.targets())) {
                next.insert(*r);
            }
        }
        if next.len() == inside.len() {
            let mut out: Vec<DivRel> = inside.into_iter().collect();
            out.sort();
            return out;
        }
        inside = next;
    }
}

/// Rank of a dense matrix over `GF(p)` by plain Gaussian elimination.
pub fn dense_rank_mod(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut a: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Reduced homology ranks of the complex with the given faces, each face
/// listed with its own vertex order, computed with dense boundary matrices
/// over `GF(p)` in the order given. The empty face is implied.
pub fn dense_reduced_homology(faces: &[Vec<usize>], p: i64) -> Vec<usize> {
    let mut all: Vec<Vec<usize>> = vec![vec![]];
    all.extend(faces.iter().filter(|f| !f.is_empty()).cloned());
    let top = all.iter().map(Vec::len).max().unwrap_or(0);
    let by_size = |k: usize| -> Vec<&Vec<usize>> { all.iter().filter(|f| f.len() == k).collect() };
    let sorted = |f: &[usize]| {
        let mut v = f.to_vec();
        v.sort_unstable();
        v
    };
    // rank of the boundary from size-k faces to size-(k-1) faces
    let boundary_rank = |k: usize| -> usize {
        if k == 0 {
            return 0;
        }
        let lo = by_size(k - 1);
        let rows = by_size(k)
            .iter()
            .map(|f| {
                let mut row = vec![0i64; lo.len()];
                for pos in 0..f.len() {
                    let mut g = (*f).clone();
                    g.remove(pos);
                    let col = lo.iter().position(|h| sorted(h) == sorted(&g)).expect("closed under subsets");
                    let sign = (if pos % 2 == 0 { 1 } else { -1 }) * perm_sign(&g) * perm_sign(lo[col]);
                    row[col] += sign;
                }
                row
            })
            .collect();
        dense_rank_mod(rows, p)
    };
    (0..=top)
        .map(|k| by_size(k).len() - boundary_rank(k) - if k < top { boundary_rank(k + 1) } else { 0 })
        .collect()
}

/// `+1` for an even arrangement of distinct values, `-1` for an odd one.
fn perm_sign(v: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
