//! Fraction-free null space computation over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly;

/// Basis of `{v : A v = 0}` for a dense rational matrix with `ncols`
/// columns. Each basis vector has a 1 at its free column and is returned
/// with integer entries divided through by their content.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r, ncols)).filter(|r| r.iter().any(|c| !c.is_zero())).collect();
    nullspace_int(int_rows, ncols)
}

fn integer_row(r: &[BigRational], ncols: usize) -> Vec<BigInt> {
    let den = r.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut out: Vec<BigInt> = (0..ncols)
        .map(|j| r.get(j).map(|q| q.numer() * (&den / q.denom())).unwrap_or_else(BigInt::zero))
        .collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut [BigInt]) {
    let g = intpoly::content(row);
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// Null space of an integer matrix by Gauss-Jordan elimination with
/// cross-multiplication and content removal after every row operation.
pub fn nullspace_int(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut next_row = 0;
    for col in 0..ncols {
        if next_row == rows.len() {
            break;
        }
        // Smallest nonzero entry keeps growth down.
        let Some(pr) = (next_row..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| (rows[r][col].bits(), rows[r].iter().map(|c| c.bits()).sum::<u64>()))
        else {
            continue;
        };
        rows.swap(next_row, pr);
        let pivot_row = rows[next_row].clone();
        let pv = pivot_row[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next_row || row[col].is_zero() {
                continue;
            }
            let g = row[col].gcd(&pv);
            let a = &pv / &g;
            let b = &row[col] / &g;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x *= &a;
                    }
                } else {
                    *x = &*x * &a - &b * y;
                }
            }
            remove_content(row);
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for &(r, c) in &pivots {
            let coef = &rows[r][free];
            if !coef.is_zero() {
                v[c] = BigRational::new(-coef.clone(), rows[r][c].clone());
            }
        }
        basis.push(normalize_vector(v));
    }
    basis
}

/// Scales a vector to primitive integer entries with a positive last
/// nonzero entry.
pub fn normalize_vector(v: Vec<BigRational>) -> Vec<BigRational> {
    let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    remove_content(&mut ints);
    if ints.iter().rev().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints.into_iter().map(BigRational::from_integer).collect()
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    ncols - nullspace(rows, ncols).len()
}
