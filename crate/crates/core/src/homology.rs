//! Reduced simplicial homology of small complexes over exact fields.
//!
//! Ranks over the rationals use sparse fraction-free elimination: rows stay
//! integral and are divided by their content after every update. The `i64`
//! path falls back to arbitrary precision on overflow.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::monomial::{GeneratorList, Monomial};

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 31) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidField(p))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A sparse integer matrix as rows of `(column, value)` sorted by column.
pub type SparseRows = Vec<Vec<(usize, i64)>>;

/// Rank of an integer matrix over `field`.
pub fn rank(rows: &SparseRows, field: Field) -> usize {
    match field {
        Field::Rational => {
            let small: Vec<Vec<(usize, i64)>> = rows.clone();
            match eliminate::<i64>(small) {
                Some(r) => r,
                None => {
                    let big = rows
                        .iter()
                        .map(|row| row.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
                        .collect();
                    eliminate::<BigInt>(big).expect("arbitrary precision never overflows")
                }
            }
        }
        Field::Prime(p) => rank_mod_p(rows, p),
    }
}

trait Entry: Clone + PartialEq + Sized {
    fn is_zero(&self) -> bool;
    /// `a·x − b·y`, `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
    /// Size used to prefer small pivots.
    fn weight(&self) -> u64;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn cross(a: &i64, x: &i64, b: &i64, y: &i64) -> Option<i64> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }

    fn gcd(&self, other: &i64) -> i64 {
        Integer::gcd(self, other)
    }

    fn div_exact(&self, d: &i64) -> i64 {
        self / d
    }

    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }

    fn weight(&self) -> u64 {
        self.unsigned_abs()
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn cross(a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(a * x - b * y)
    }

    fn gcd(&self, other: &BigInt) -> BigInt {
        Integer::gcd(self, other)
    }

    fn div_exact(&self, d: &BigInt) -> BigInt {
        self / d
    }

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }

    fn weight(&self) -> u64 {
        self.abs().to_u64().unwrap_or(u64::MAX)
    }
}

/// Column-by-column fraction-free elimination. Rows are bucketed by their
/// leading column; within a bucket the pivot is the row with the smallest
/// leading entry, then the fewest nonzeros.
fn eliminate<T: Entry>(rows: Vec<Vec<(usize, T)>>) -> Option<usize> {
    let ncols = rows
        .iter()
        .filter_map(|r| r.last().map(|(c, _)| c + 1))
        .max()
        .unwrap_or(0);
    let mut buckets: Vec<Vec<Vec<(usize, T)>>> = vec![Vec::new(); ncols];
    for row in rows {
        let row: Vec<(usize, T)> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if let Some(&(c, _)) = row.first() {
            buckets[c].push(row);
        }
    }
    let mut rank = 0;
    for col in 0..ncols {
        let mut bucket = std::mem::take(&mut buckets[col]);
        if bucket.is_empty() {
            continue;
        }
        let best = (0..bucket.len())
            .min_by_key(|&k| (bucket[k][0].1.weight(), bucket[k].len()))
            .unwrap();
        let pivot = bucket.swap_remove(best);
        rank += 1;
        for row in bucket {
            let reduced = combine(&row, &pivot)?;
            if let Some(&(c, _)) = reduced.first() {
                buckets[c].push(reduced);
            }
        }
    }
    Some(rank)
}

/// `a·row − b·pivot` where `a`, `b` are the leading entries, divided by the
/// content of the result.
fn combine<T: Entry>(row: &[(usize, T)], pivot: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let mut out: Vec<(usize, T)> = Vec::with_capacity(row.len() + pivot.len());
    let zero_like = |v: &T| T::cross(v, v, v, v);
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            let z = zero_like(b)?;
            let v = T::cross(a, &row[i].1, b, &z)?;
            i += 1;
            (ci, v)
        } else if cj < ci {
            let z = zero_like(a)?;
            let v = T::cross(a, &z, b, &pivot[j].1)?;
            j += 1;
            (cj, v)
        } else {
            let v = T::cross(a, &row[i].1, b, &pivot[j].1)?;
            i += 1;
            j += 1;
            (ci, v)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    if let Some(first) = out.first().map(|e| e.1.clone()) {
        if !first.is_unit() {
            let g = out.iter().skip(1).fold(first, |g, (_, v)| g.gcd(v));
            if !g.is_unit() {
                for e in &mut out {
                    e.1 = e.1.div_exact(&g);
                }
            }
        }
    }
    Some(out)
}

fn rank_mod_p(rows: &SparseRows, p: u64) -> usize {
    let reduce = |v: i64| v.rem_euclid(p as i64) as u64;
    let ncols = rows
        .iter()
        .filter_map(|r| r.last().map(|(c, _)| c + 1))
        .max()
        .unwrap_or(0);
    let mut buckets: Vec<Vec<Vec<(usize, u64)>>> = vec![Vec::new(); ncols];
    for row in rows {
        let row: Vec<(usize, u64)> = row
            .iter()
            .map(|&(c, v)| (c, reduce(v)))
            .filter(|(_, v)| *v != 0)
            .collect();
        if let Some(&(c, _)) = row.first() {
            buckets[c].push(row);
        }
    }
    let mut rank = 0;
    for col in 0..ncols {
        let mut bucket = std::mem::take(&mut buckets[col]);
        if bucket.is_empty() {
            continue;
        }
        let best = (0..bucket.len()).min_by_key(|&k| bucket[k].len()).unwrap();
        let pivot = bucket.swap_remove(best);
        rank += 1;
        let inv = mod_pow(pivot[0].1, p - 2, p);
        for row in bucket {
            let factor = row[0].1 * inv % p;
            let mut out = Vec::with_capacity(row.len() + pivot.len());
            let (mut i, mut j) = (1, 1);
            while i < row.len() || j < pivot.len() {
                let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
                let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
                let (col, v) = if ci < cj {
                    i += 1;
                    (ci, row[i - 1].1)
                } else if cj < ci {
                    j += 1;
                    (cj, (p - factor * pivot[j - 1].1 % p) % p)
                } else {
                    i += 1;
                    j += 1;
                    (ci, (row[i - 1].1 + p - factor * pivot[j - 1].1 % p) % p)
                };
                if v != 0 {
                    out.push((col, v));
                }
            }
            if let Some(&(c, _)) = out.first() {
                buckets[c].push(out);
            }
        }
    }
    rank
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// A simplicial complex on generator indices, closed under subsets and
/// containing the empty face. Faces are sorted by size, then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplexSlice {
    vertices: IndexSet,
    faces: Vec<IndexSet>,
}

impl SimplicialComplexSlice {
    /// Builds from an explicit face list; fails unless it is closed under
    /// taking subsets.
    pub fn from_faces<I: IntoIterator<Item = IndexSet>>(faces: I) -> Result<Self> {
        let mut faces: Vec<IndexSet> = faces.into_iter().collect();
        faces.push(IndexSet::EMPTY);
        faces.sort_by_key(|f| (f.len(), *f));
        faces.dedup();
        let lookup: std::collections::HashSet<IndexSet> = faces.iter().copied().collect();
        for f in &faces {
            for v in f.iter() {
                if !lookup.contains(&f.without(v)) {
                    return Err(Error::Precondition(format!(
                        "face list is not closed under subsets at {f}"
                    )));
                }
            }
        }
        let vertices = faces.iter().fold(IndexSet::EMPTY, |acc, f| acc.union(*f));
        Ok(SimplicialComplexSlice { vertices, faces })
    }

    /// The strictly-below Taylor subcomplex at `m`: subsets of the generators
    /// dividing `m` whose lcm is not `m`. Returns `None` when `m` is the unit,
    /// where the subcomplex has no faces at all.
    pub fn below(gens: &GeneratorList, m: &Monomial) -> Option<Self> {
        if m.is_one() {
            return None;
        }
        let vertices: IndexSet = (1..=gens.len()).filter(|&i| gens.get(i).divides(m)).collect();
        let mut faces: Vec<IndexSet> = vertices
            .subsets()
            .filter(|s| s.is_empty() || gens.lcm_of(*s).map(|l| &l != m).unwrap_or(true))
            .collect();
        faces.sort_by_key(|f| (f.len(), *f));
        Some(SimplicialComplexSlice { vertices, faces })
    }

    pub(crate) fn from_sorted(vertices: IndexSet, mut faces: Vec<IndexSet>) -> Self {
        faces.sort_by_key(|f| (f.len(), *f));
        SimplicialComplexSlice { vertices, faces }
    }

    pub fn vertices(&self) -> IndexSet {
        self.vertices
    }

    pub fn faces(&self) -> &[IndexSet] {
        &self.faces
    }

    /// Faces of dimension `dim` (`dim = -1` is the empty face).
    pub fn faces_of_dim(&self, dim: isize) -> Vec<IndexSet> {
        self.faces
            .iter()
            .filter(|f| f.len() as isize == dim + 1)
            .copied()
            .collect()
    }

    pub fn max_dim(&self) -> isize {
        self.faces.last().map(|f| f.len() as isize - 1).unwrap_or(-1)
    }
}

/// Matrix of `∂_dim : C_dim → C_{dim−1}` with one row per `dim`-face, both
/// bases in the slice's face order.
pub fn boundary_matrix(slice: &SimplicialComplexSlice, dim: isize) -> SparseRows {
    let lower = slice.faces_of_dim(dim - 1);
    let index: HashMap<IndexSet, usize> = lower.iter().enumerate().map(|(k, f)| (*f, k)).collect();
    slice
        .faces_of_dim(dim)
        .into_iter()
        .map(|f| {
            let mut row: Vec<(usize, i64)> = f
                .iter()
                .enumerate()
                .map(|(pos, v)| {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    (index[&f.without(v)], sign)
                })
                .collect();
            row.sort_by_key(|e| e.0);
            row
        })
        .collect()
}

/// `dim H̃_i` for `i ≥ −1`.
pub fn reduced_homology_rank(slice: &SimplicialComplexSlice, i: isize, field: Field) -> usize {
    if i < -1 {
        return 0;
    }
    let n = slice.faces_of_dim(i).len();
    let r_in = if i >= 0 { rank(&boundary_matrix(slice, i), field) } else { 0 };
    let r_out = rank(&boundary_matrix(slice, i + 1), field);
    n - r_in - r_out
}

/// `dim H̃_i` for `i = −1, ..., max_dim`, as a vector indexed by `i + 1`.
pub fn reduced_homology(slice: &SimplicialComplexSlice, field: Field) -> Vec<usize> {
    let top = slice.max_dim();
    let counts: Vec<usize> = (-1..=top).map(|d| slice.faces_of_dim(d).len()).collect();
    // ranks[k] = rank ∂_{k−1} for k = 0 ..= top+2 (∂_{−1} and ∂_{top+1} vanish).
    let mut ranks = vec![0usize; counts.len() + 1];
    for d in 0..=top {
        ranks[(d + 1) as usize] = rank(&boundary_matrix(slice, d), field);
    }
    (0..counts.len())
        .map(|k| counts[k] - ranks[k] - ranks[k + 1])
        .collect()
}
