//! Exact Fincke-Pohst enumeration of short lattice vectors.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{from_bigint, round, Matrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShortVector {
    pub norm: Rational,
    /// Coefficients with respect to the lattice basis.
    pub coords: Vec<BigInt>,
}

/// Rational Cholesky-type decomposition `Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
pub(crate) fn quadratic_decomposition(gram: &Matrix) -> Result<Vec<Vec<Rational>>> {
    if !gram.is_square() {
        return Err(Error::NotSquare {
            rows: gram.rows(),
            cols: gram.cols(),
        });
    }
    if !gram.is_symmetric() {
        return Err(Error::NotPositiveDefinite);
    }
    let n = gram.rows();
    let mut q: Vec<Vec<Rational>> = gram.row_vecs();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[k][i] * &q[i][l];
                q[k][l] -= v;
            }
        }
    }
    Ok(q)
}

struct Enumerator<'a> {
    q: &'a [Vec<Rational>],
    bound: &'a Rational,
    x: Vec<BigInt>,
    out: Vec<ShortVector>,
}

impl Enumerator<'_> {
    fn run(&mut self, i: usize, remaining: Rational) {
        let q = self.q;
        let n = q.len();
        let mut c = Rational::zero();
        for j in i + 1..n {
            if !self.x[j].is_zero() {
                c += &q[i][j] * from_bigint(self.x[j].clone());
            }
        }
        let qii = &q[i][i];
        let fits = |y: &BigInt| {
            let s = from_bigint(y.clone()) + &c;
            qii * &s * &s <= remaining
        };
        let center = round(&-c.clone());
        if !fits(&center) {
            return;
        }
        let bound = self.bound;
        let visit = |this: &mut Self, y: BigInt| {
            let s = from_bigint(y.clone()) + &c;
            let rest = &remaining - qii * &s * &s;
            this.x[i] = y;
            if i == 0 {
                if this.x.iter().any(|v| !v.is_zero()) {
                    this.out.push(ShortVector {
                        norm: bound - &rest,
                        coords: this.x.clone(),
                    });
                }
            } else {
                this.run(i - 1, rest);
            }
        };
        let mut y = center.clone();
        while fits(&y) {
            visit(self, y.clone());
            y += 1;
        }
        let mut y = center - 1;
        while fits(&y) {
            visit(self, y.clone());
            y -= 1;
        }
        self.x[i] = BigInt::zero();
    }
}

fn sign_canonical(v: &[BigInt]) -> bool {
    v.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_positive())
}

/// All nonzero `v` with `v G vᵀ <= bound`, one per `±` pair, sorted by norm
/// then coordinates.
pub fn short_vectors(gram: &Matrix, bound: &Rational) -> Result<Vec<ShortVector>> {
    let q = quadratic_decomposition(gram)?;
    let n = q.len();
    if n == 0 || bound.is_negative() {
        return Ok(Vec::new());
    }
    let mut e = Enumerator {
        q: &q,
        bound,
        x: vec![BigInt::zero(); n],
        out: Vec::new(),
    };
    e.run(n - 1, bound.clone());
    let mut out: Vec<ShortVector> = e
        .out
        .into_iter()
        .filter(|v| sign_canonical(&v.coords))
        .collect();
    out.sort();
    Ok(out)
}
