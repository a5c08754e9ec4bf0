//! Hermite and Smith normal forms over the integers.
//!
//! HNF is row-style: `h = u * m` with `u` unimodular, `h` upper triangular
//! in echelon shape, pivots positive, entries above each pivot reduced into
//! `[0, pivot)`, zero rows last.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::rational::{from_bigint, Rational};
use crate::error::{Error, Result};

type IntRows = Vec<Vec<BigInt>>;

fn identity_rows(n: usize) -> IntRows {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

/// Replace rows (p, i) by (x*Rp + y*Ri, c*Rp + d*Ri).
fn combine(rows: &mut IntRows, p: usize, i: usize, x: &BigInt, y: &BigInt, c: &BigInt, d: &BigInt) {
    for j in 0..rows[p].len() {
        let a = rows[p][j].clone();
        let b = rows[i][j].clone();
        rows[p][j] = x * &a + y * &b;
        rows[i][j] = c * &a + d * &b;
    }
}

fn axpy_row(rows: &mut IntRows, target: usize, src: usize, q: &BigInt) {
    for j in 0..rows[target].len() {
        let v = q * &rows[src][j];
        rows[target][j] -= v;
    }
}

/// Integer row HNF together with the unimodular transform.
pub fn hnf_integer(m: &[Vec<BigInt>]) -> (IntRows, IntRows) {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    let mut h: IntRows = m.to_vec();
    let mut u = identity_rows(r);
    let mut pivot_row = 0;
    for col in 0..c {
        if pivot_row == r {
            break;
        }
        for i in pivot_row + 1..r {
            if h[i][col].is_zero() {
                continue;
            }
            let a = h[pivot_row][col].clone();
            let b = h[i][col].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let c2 = -(&b / &g);
            let d2 = &a / &g;
            combine(&mut h, pivot_row, i, &x, &y, &c2, &d2);
            combine(&mut u, pivot_row, i, &x, &y, &c2, &d2);
        }
        if h[pivot_row][col].is_zero() {
            continue;
        }
        if h[pivot_row][col].is_negative() {
            for v in h[pivot_row].iter_mut() {
                *v = -v.clone();
            }
            for v in u[pivot_row].iter_mut() {
                *v = -v.clone();
            }
        }
        let pivot = h[pivot_row][col].clone();
        for i in 0..pivot_row {
            let q = h[i][col].div_floor(&pivot);
            if !q.is_zero() {
                axpy_row(&mut h, i, pivot_row, &q);
                axpy_row(&mut u, i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Row-style Hermite normal form `(h, u)` with `h = u * m`.
pub fn hnf(m: &Matrix) -> Result<(Matrix, Matrix)> {
    let rows = m.to_integer_rows()?;
    let (h, u) = hnf_integer(&rows);
    if m.rows() == 0 {
        return Ok((m.clone(), Matrix::zeros(0, 0)));
    }
    Ok((Matrix::from_integer_rows(&h), Matrix::from_integer_rows(&u)))
}

/// Canonical basis of the Z-module spanned by rational row vectors.
///
/// Returns the nonzero rows of `hnf(D * rows) / D` where `D` clears all
/// denominators. Two generating sets span the same module exactly when
/// their canonical bases coincide.
pub fn span_basis(rows: &[Vec<Rational>]) -> Matrix {
    let cols = rows.first().map_or(0, Vec::len);
    let d = super::rational::common_denominator(rows.iter().flatten());
    let dq = from_bigint(d.clone());
    let ints: IntRows = rows
        .iter()
        .map(|row| row.iter().map(|x| (x * &dq).to_integer()).collect())
        .collect();
    let (h, _) = hnf_integer(&ints);
    let kept: Vec<Vec<Rational>> = h
        .into_iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .map(|row| row.into_iter().map(|x| Rational::new(x, d.clone())).collect())
        .collect();
    if kept.is_empty() {
        return Matrix::zeros(0, cols);
    }
    Matrix::from_rows(kept)
}

fn is_diagonal(rows: &IntRows) -> bool {
    rows.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
}

fn transpose(rows: &IntRows) -> IntRows {
    let c = rows.first().map_or(0, Vec::len);
    (0..c)
        .map(|j| rows.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Invariant factors `d1 | d2 | ... | dn` of a nonsingular integer matrix.
pub fn snf(m: &Matrix) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut rows = m.to_integer_rows()?;
    if m.det()?.is_zero() {
        return Err(Error::Singular);
    }
    // Alternate row and column HNF until the matrix is diagonal.
    while !is_diagonal(&rows) {
        rows = hnf_integer(&rows).0;
        if is_diagonal(&rows) {
            break;
        }
        rows = transpose(&hnf_integer(&transpose(&rows)).0);
    }
    let mut d: Vec<BigInt> = (0..rows.len()).map(|i| rows[i][i].abs()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    Ok(d)
}

/// Whether `u` has determinant +-1 and integer entries.
pub fn is_unimodular(u: &Matrix) -> bool {
    u.is_integral() && u.det().map(|d| d.abs().is_one()).unwrap_or(false)
}

/// Structural check of the HNF conventions used in this crate.
pub fn is_hnf(h: &Matrix) -> bool {
    if !h.is_integral() {
        return false;
    }
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let row = h.row(i);
        match row.iter().position(|x| !x.is_zero()) {
            None => seen_zero_row = true,
            Some(p) => {
                if seen_zero_row || last_pivot.is_some_and(|lp| p <= lp) {
                    return false;
                }
                let pivot = &row[p];
                if !pivot.is_positive() {
                    return false;
                }
                for k in 0..i {
                    let above = &h[(k, p)];
                    if above.is_negative() || above >= pivot {
                        return false;
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}
