//! Exact rank of sparse integer matrices by fraction-free elimination.
//!
//! Rows are reduced one at a time against the pivot rows found so far. A
//! reduction step cross-multiplies to clear the leading entry and divides
//! out the row content, so entries stay small in practice. Arithmetic runs
//! in checked `i64` and restarts in `BigInt` on overflow.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A sparse row: `(column, value)` sorted by column, no zero values.
pub type SparseRow = Vec<(usize, i64)>;

trait Entry: Clone + PartialEq + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn gcd(&self, other: &Self) -> Self;
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn is_one(&self) -> bool;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    /// `a * x - b * y`
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
}

struct Overflow;

/// `b_lead * row - a_lead * pivot` with `a_lead`, `b_lead` reduced by
/// their gcd, so the leading entry cancels.
fn eliminate<E: Entry>(row: &[(usize, E)], pivot: &[(usize, E)]) -> Result<Vec<(usize, E)>, Overflow> {
    let (a, b) = (&row[0].1, &pivot[0].1);
    let g = a.gcd(b);
    let (ra, rb) = (a.div_exact(&g), b.div_exact(&g));
    let zero = E::from_i64(0);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, x, y) = match ci.cmp(&cj) {
            std::cmp::Ordering::Less => {
                i += 1;
                (ci, &row[i - 1].1, &zero)
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                (cj, &zero, &pivot[j - 1].1)
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                (ci, &row[i - 1].1, &pivot[j - 1].1)
            }
        };
        let v = E::combine(&rb, x, &ra, y).ok_or(Overflow)?;
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    normalize(&mut out)?;
    Ok(out)
}

/// Divides out the content and makes the leading entry positive.
fn normalize<E: Entry>(row: &mut [(usize, E)]) -> Result<(), Overflow> {
    let Some(first) = row.first() else { return Ok(()) };
    let mut g = first.1.gcd(&first.1);
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = g.neg().ok_or(Overflow)?;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
    Ok(())
}

fn rank_with<E: Entry>(rows: &[SparseRow]) -> Result<usize, Overflow> {
    let mut pivots: HashMap<usize, Vec<(usize, E)>> = HashMap::new();
    for row in rows {
        let mut r: Vec<(usize, E)> = row.iter().map(|&(c, v)| (c, E::from_i64(v))).collect();
        normalize(&mut r)?;
        while let Some(&(lead, _)) = r.first() {
            match pivots.get(&lead) {
                Some(p) => r = eliminate(&r, p)?,
                None => {
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    Ok(pivots.len())
}

/// Rank over the rationals of the matrix whose rows are given sparsely.
/// Columns are relabelled so that sparse columns are eliminated first.
pub fn sparse_rank(rows: &[SparseRow]) -> usize {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for row in rows {
        for &(c, _) in row {
            *counts.entry(c).or_default() += 1;
        }
    }
    let mut order: Vec<(usize, usize)> = counts.into_iter().map(|(c, n)| (n, c)).collect();
    order.sort_unstable();
    let position: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &(_, c))| (c, i)).collect();
    let mut relabelled: Vec<SparseRow> = rows
        .iter()
        .map(|row| {
            let mut r: SparseRow = row.iter().filter(|e| e.1 != 0).map(|&(c, v)| (position[&c], v)).collect();
            r.sort_unstable_by_key(|e| e.0);
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    relabelled.sort_by_key(|r| (r.len(), r.first().map(|e| e.0)));
    match rank_with::<i64>(&relabelled) {
        Ok(rank) => rank,
        Err(Overflow) => match rank_with::<BigInt>(&relabelled) {
            Ok(rank) => rank,
            Err(Overflow) => unreachable!("big integers do not overflow"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense(rows: &[Vec<i64>]) -> Vec<SparseRow> {
        rows.iter()
            .map(|r| r.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &v)| (c, v)).collect())
            .collect()
    }

    /// Rank by Gaussian elimination over exact rationals held as (num, den).
    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        use num_rational::BigRational;
        let mut m: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(rank, p);
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[rank][c];
                    let pivot = m[rank].clone();
                    for (x, y) in m[i].iter_mut().zip(pivot) {
                        *x -= &f * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_examples() {
        assert_eq!(sparse_rank(&[]), 0);
        assert_eq!(sparse_rank(&dense(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(sparse_rank(&dense(&[vec![1, 2, 0], vec![0, 1, 1], vec![1, 3, 1]])), 2);
        assert_eq!(sparse_rank(&dense(&[vec![2, 0], vec![0, 3]])), 2);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let rows = dense(&[vec![big, big - 1, 0], vec![big - 3, big, 1], vec![1, big, big]]);
        assert_eq!(sparse_rank(&rows), 3);
        let dependent = dense(&[vec![big, 1], vec![big - 1, 1], vec![1, 0]]);
        assert_eq!(sparse_rank(&dependent), 2);
    }

    proptest! {
        #[test]
        fn agrees_with_rational_elimination(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 0..8)
        ) {
            prop_assert_eq!(sparse_rank(&dense(&rows)), rational_rank(&rows));
        }
    }
}
