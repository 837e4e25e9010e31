//! Exact row reduction over a generic field, plus a fraction-free rank for
//! integer matrices.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
}

impl Field for BigRational {}

/// Reduced row echelon form with the zero rows dropped. Two matrices span
/// the same row space exactly when their results are equal.
pub fn rref<F: Field>(mut rows: Vec<Vec<F>>) -> Vec<Vec<F>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = F::one() / &rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x = x.clone() * &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = x.clone() - &(factor.clone() * p);
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

pub fn rank<F: Field>(rows: Vec<Vec<F>>) -> usize {
    rref(rows).len()
}

/// Pivot column of each row of a matrix already in reduced form.
pub fn pivot_columns<F: Field>(reduced: &[Vec<F>]) -> Vec<usize> {
    reduced
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect()
}

/// A basis of `{x : row . x = 0 for every row}` in `F^width`.
pub fn nullspace<F: Field>(rows: Vec<Vec<F>>, width: usize) -> Vec<Vec<F>> {
    let reduced = rref(rows);
    let pivots = pivot_columns(&reduced);
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![F::zero(); width];
            v[free] = F::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Rank of an integer matrix by Bareiss elimination, which keeps every
/// intermediate entry integral.
pub fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(found) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, found);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
