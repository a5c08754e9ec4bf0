//! Root-type recognition and parity invariants of integral Gram matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::enumerate::short_vectors;
use crate::error::{Error, Result};
use crate::linalg::{from_bigint, hnf_integer, int, snf, Matrix, Rational};

/// Largest rank accepted by [`classify_gram`].
pub const MAX_CLASSIFY_RANK: usize = 12;
/// Largest rank accepted by [`odd_trace_witness`].
pub const MAX_PARITY_RANK: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    /// Odd rank-3 lattice isometric to `x² + y² + 4z²`.
    Diag114,
    UnimodularOdd,
    Other,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E6 => write!(f, "E6"),
            RootType::E7 => write!(f, "E7"),
            RootType::E8 => write!(f, "E8"),
            RootType::Diag114 => write!(f, "diag114"),
            RootType::UnimodularOdd => write!(f, "unimodular_odd"),
            RootType::Other => write!(f, "other"),
        }
    }
}

impl FromStr for RootType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "E6" => RootType::E6,
            "E7" => RootType::E7,
            "E8" => RootType::E8,
            "diag114" => RootType::Diag114,
            "unimodular_odd" => RootType::UnimodularOdd,
            "other" => RootType::Other,
            _ => {
                let (head, tail) = s.split_at(1.min(s.len()));
                let n: usize = tail.parse().map_err(|_| format!("unknown type {s:?}"))?;
                match head {
                    "A" => RootType::A(n),
                    "D" => RootType::D(n),
                    _ => return Err(format!("unknown type {s:?}")),
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub root_type: RootType,
    pub rank: usize,
    pub det: Rational,
    pub even: bool,
    /// Number of roots counting both signs.
    pub root_count: usize,
    pub roots_generate: bool,
}

pub fn is_integral_gram(gram: &Matrix) -> bool {
    gram.is_integral()
}

pub fn is_even_gram(gram: &Matrix) -> bool {
    gram.is_integral() && (0..gram.rows()).all(|i| gram[(i, i)].to_integer().is_even())
}

/// Invariant factors of the discriminant group `L*/L`.
pub fn disc_group(gram: &Matrix) -> Result<Vec<BigInt>> {
    if !gram.is_integral() {
        return Err(Error::NotIntegral);
    }
    snf(gram)
}

fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(from_bigint).collect()
}

/// Whether integer row vectors span all of `Z^n`.
pub fn generates_full_lattice(rows: &[Vec<BigInt>], n: usize) -> bool {
    if rows.len() < n {
        return false;
    }
    let (h, _) = hnf_integer(rows);
    (0..n).all(|i| h[i][i].is_one())
}

fn has_diag114_basis(gram: &Matrix) -> Result<bool> {
    let vecs = short_vectors(gram, &int(4))?;
    let units: Vec<Vec<Rational>> = vecs
        .iter()
        .filter(|v| v.norm == int(1))
        .map(|v| to_rationals(&v.coords))
        .collect();
    let fours: Vec<Vec<Rational>> = vecs
        .iter()
        .filter(|v| v.norm == int(4))
        .map(|v| to_rationals(&v.coords))
        .collect();
    for (i, a) in units.iter().enumerate() {
        for b in &units[i + 1..] {
            if !gram.bilinear(a, b).is_zero() {
                continue;
            }
            for c in &fours {
                if gram.bilinear(a, c).is_zero() && gram.bilinear(b, c).is_zero() {
                    let m = Matrix::from_rows(vec![a.clone(), b.clone(), c.clone()]);
                    let d = m.det()?;
                    if d == int(1) || d == int(-1) {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Recognize A_n, D_n, E_6/7/8 from (evenness, det, root count, roots
/// generate), plus the odd templates `diag114` and `unimodular_odd`.
pub fn classify_gram(gram: &Matrix) -> Result<Classification> {
    let n = gram.rows();
    if !gram.is_square() {
        return Err(Error::NotSquare {
            rows: gram.rows(),
            cols: gram.cols(),
        });
    }
    if n > MAX_CLASSIFY_RANK {
        return Err(Error::RankTooLarge {
            rank: n,
            max: MAX_CLASSIFY_RANK,
        });
    }
    if !gram.is_integral() {
        return Err(Error::NotIntegral);
    }
    if !gram.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let det = gram.det()?;
    let even = is_even_gram(gram);
    let roots: Vec<Vec<BigInt>> = short_vectors(gram, &int(2))?
        .into_iter()
        .filter(|v| v.norm == int(2))
        .map(|v| v.coords)
        .collect();
    let root_count = 2 * roots.len();
    let roots_generate = generates_full_lattice(&roots, n);

    let root_type = if even {
        let det_is = |d: i64| det == int(d);
        let count_is = |c: usize| root_count == c;
        if !roots_generate {
            RootType::Other
        } else if det_is(n as i64 + 1) && count_is(n * (n + 1)) {
            RootType::A(n)
        } else if n >= 4 && det_is(4) && count_is(2 * n * (n - 1)) {
            RootType::D(n)
        } else if n == 6 && det_is(3) && count_is(72) {
            RootType::E6
        } else if n == 7 && det_is(2) && count_is(126) {
            RootType::E7
        } else if n == 8 && det_is(1) && count_is(240) {
            RootType::E8
        } else {
            RootType::Other
        }
    } else if det.is_one() {
        RootType::UnimodularOdd
    } else if n == 3 && det == int(4) && has_diag114_basis(gram)? {
        RootType::Diag114
    } else {
        RootType::Other
    };
    Ok(Classification {
        root_type,
        rank: n,
        det,
        even,
        root_count,
        roots_generate,
    })
}

/// A representative of `L/2L` with odd norm, or `None` exactly when the
/// lattice is even.
pub fn odd_trace_witness(gram: &Matrix) -> Result<Option<Vec<BigInt>>> {
    let n = gram.rows();
    if n > MAX_PARITY_RANK {
        return Err(Error::RankTooLarge {
            rank: n,
            max: MAX_PARITY_RANK,
        });
    }
    let g = gram.to_integer_rows()?;
    for mask in 1u32..(1u32 << n) {
        let bits: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut norm = BigInt::zero();
        for &i in &bits {
            for &j in &bits {
                norm += &g[i][j];
            }
        }
        if norm.is_odd() {
            return Ok(Some(
                (0..n).map(|i| BigInt::from(mask >> i & 1)).collect(),
            ));
        }
    }
    Ok(None)
}

/// Standard Gram matrices of the irreducible root lattices, using the node
/// orderings A: path, D: branch at node 3, E: branch at node 4.
pub fn standard_gram(t: RootType) -> Option<Matrix> {
    let (n, extra) = match t {
        RootType::A(n) => (n, None),
        RootType::D(n) if n >= 4 => (n, Some(3)),
        RootType::E6 => (6, Some(4)),
        RootType::E7 => (7, Some(4)),
        RootType::E8 => (8, Some(4)),
        RootType::Diag114 => {
            return Some(Matrix::diagonal(&[int(1), int(1), int(4)]));
        }
        _ => return None,
    };
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = int(2);
    }
    for i in 0..n.saturating_sub(1) {
        // Nodes are 1-based in the usual diagrams; edge {1,2} is replaced by
        // {1, branch} for D and E.
        if extra.is_some() && i == 0 {
            continue;
        }
        g[(i, i + 1)] = int(-1);
        g[(i + 1, i)] = int(-1);
    }
    if let Some(b) = extra {
        g[(0, b - 1)] = int(-1);
        g[(b - 1, 0)] = int(-1);
    }
    Some(g)
}
