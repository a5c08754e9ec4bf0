//! Full-rank lattices inside a number field with the trace form.

mod classify;
mod enumerate;

pub use classify::{
    classify_gram, disc_group, generates_full_lattice, is_even_gram, is_integral_gram,
    odd_trace_witness, standard_gram, Classification, RootType, MAX_CLASSIFY_RANK,
    MAX_PARITY_RANK,
};
pub use enumerate::{short_vectors, ShortVector};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ambient::Ambient;
use crate::error::{Error, Result};
use crate::linalg::{from_bigint, span_basis, Matrix, Rational};

#[derive(Clone, Debug)]
pub struct TraceLattice {
    ambient: Ambient,
    /// Rows are basis elements in the ambient power basis.
    basis: Matrix,
    gram: Matrix,
}

/// `gram[i][j] = Tr(b_i · conj(b_j))`.
pub fn gram_of(ambient: &Ambient, basis: &Matrix) -> Matrix {
    let n = basis.rows();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = ambient.pair(basis.row(i), basis.row(j));
            g[(j, i)] = v.clone();
            g[(i, j)] = v;
        }
    }
    g
}

impl TraceLattice {
    pub fn new(ambient: Ambient, basis: Matrix) -> Result<Self> {
        if basis.cols() != ambient.degree() {
            return Err(Error::DimensionMismatch(format!(
                "basis vectors have {} coordinates, field degree is {}",
                basis.cols(),
                ambient.degree()
            )));
        }
        if !basis.is_square() || basis.det()?.is_zero() {
            return Err(Error::DependentBasis);
        }
        let gram = gram_of(&ambient, &basis);
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self {
            ambient,
            basis,
            gram,
        })
    }

    pub fn from_rows(ambient: Ambient, rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(ambient, Matrix::from_rows(rows))
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn det(&self) -> Rational {
        self.gram.det().expect("gram is square")
    }

    pub fn is_integral(&self) -> bool {
        is_integral_gram(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        is_even_gram(&self.gram)
    }

    /// The dual lattice, with basis `gram⁻¹ · basis`.
    pub fn dual(&self) -> TraceLattice {
        let inv = self.gram.inverse().expect("gram is nonsingular");
        let basis = &inv * &self.basis;
        TraceLattice::new(self.ambient.clone(), basis).expect("dual of a lattice is a lattice")
    }

    pub fn disc_group(&self) -> Result<Vec<BigInt>> {
        disc_group(&self.gram)
    }

    pub fn short_vectors(&self, bound: &Rational) -> Result<Vec<ShortVector>> {
        short_vectors(&self.gram, bound)
    }

    pub fn classify(&self) -> Result<Classification> {
        classify_gram(&self.gram)
    }

    /// Basis coordinates of an element of `L/2L` with odd norm, if any.
    pub fn odd_trace_witness(&self) -> Result<Option<Vec<BigInt>>> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        odd_trace_witness(&self.gram)
    }

    /// Ambient coordinates of the combination `Σ c_i b_i`.
    pub fn element(&self, coeffs: &[BigInt]) -> Vec<Rational> {
        let c: Vec<Rational> = coeffs.iter().cloned().map(from_bigint).collect();
        self.basis.left_apply(&c)
    }

    /// Canonical basis; equal lattices have equal keys.
    pub fn canonical_basis(&self) -> Matrix {
        span_basis(&self.basis.row_vecs())
    }

    pub fn lattice_equal(&self, other: &TraceLattice) -> Result<bool> {
        if !self.ambient.same_field(&other.ambient) {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.canonical_basis() == other.canonical_basis())
    }

    /// Basis coordinates of `v`, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<BigInt>> {
        let inv = self.basis.inverse().expect("basis is nonsingular");
        let c = inv.left_apply(v);
        c.iter()
            .all(|x| x.is_integer())
            .then(|| c.iter().map(|x| x.to_integer()).collect())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn galois_stable(&self) -> bool {
        (0..self.rank()).all(|i| {
            self.ambient
                .galois_images(self.basis.row(i))
                .iter()
                .all(|img| self.contains(img))
        })
    }

    /// Same lattice with basis `u · basis` for unimodular `u`.
    pub fn change_basis(&self, u: &Matrix) -> Result<TraceLattice> {
        let basis = u.checked_mul(&self.basis)?;
        let l = TraceLattice::new(self.ambient.clone(), basis)?;
        if !l.lattice_equal(self)? {
            return Err(Error::Invariant("base change is not unimodular".into()));
        }
        Ok(l)
    }

    pub fn scaled(&self, s: &Rational) -> Result<TraceLattice> {
        TraceLattice::new(self.ambient.clone(), self.basis.scale(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Ambient;
    use crate::linalg::int;
    use crate::quadratic::QuadAmbient;

    fn eisenstein() -> TraceLattice {
        let amb = Ambient::Quadratic(QuadAmbient::new(3, -1).unwrap());
        let h = crate::linalg::frac(1, 2);
        TraceLattice::from_rows(amb, vec![vec![h.clone(), h.clone()], vec![h.clone(), -h]]).unwrap()
    }

    #[test]
    fn dual_is_an_involution() {
        let l = eisenstein();
        assert_eq!(l.gram(), &Matrix::from_i64(&[[2, -1], [-1, 2]]));
        let d = l.dual();
        assert_eq!(d.det(), crate::linalg::frac(1, 3));
        assert!(d.dual().lattice_equal(&l).unwrap());
        assert_eq!(l.disc_group().unwrap(), vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn equality_and_scaling() {
        let l = eisenstein();
        let swapped = l.change_basis(&Matrix::from_i64(&[[0, 1], [1, 0]])).unwrap();
        assert!(swapped.lattice_equal(&l).unwrap());
        let twice = l.scaled(&int(2)).unwrap();
        assert!(!twice.lattice_equal(&l).unwrap());
        assert_eq!(twice.gram(), &l.gram().scale(&int(4)));
        assert!(l.galois_stable());
    }

    #[test]
    fn dependent_bases_are_rejected() {
        let amb = Ambient::Quadratic(QuadAmbient::new(3, -1).unwrap());
        let r = TraceLattice::from_rows(amb, vec![vec![int(1), int(1)], vec![int(2), int(2)]]);
        assert_eq!(r.unwrap_err(), Error::DependentBasis);
    }
}
