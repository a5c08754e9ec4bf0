//! Cyclotomic fields Q(ζ_n) with the Hermitian trace form and principal
//! fractional-ideal lattices.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::ambient::Ambient;
use crate::error::{Error, Result};
use crate::lattice::{RootType, TraceLattice};
use crate::linalg::{Matrix, Rational};
use crate::poly::{self, Poly, QuotientRing};

/// Largest prime accepted by [`verify_cyclotomic_ap`].
pub const MAX_AP_PRIME: u64 = 13;

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd_u64(k, n) == 1).count() as u64
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Φ_n by exact division of x^n - 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_polynomial(n: u64) -> Poly {
    let mut p: Poly = vec![Rational::zero(); n as usize + 1];
    p[0] = -Rational::one();
    p[n as usize] = Rational::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let (q, r) = poly::divrem(&p, &cyclotomic_polynomial(d));
        debug_assert!(r.is_empty());
        p = q;
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycField {
    n: u64,
    ring: QuotientRing,
    /// Rows: images of ζ^i under ζ -> ζ^{n-1}.
    conj: Matrix,
}

impl CycField {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadCyclotomicIndex(n));
        }
        let ring = QuotientRing::new(cyclotomic_polynomial(n));
        let conj = ring.substitution_matrix(&power_of_generator(&ring, n - 1));
        Ok(Self { n, ring, conj })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// φ(n), the degree.
    pub fn phi(&self) -> usize {
        self.ring.degree()
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn zeta(&self) -> Vec<Rational> {
        self.ring.generator()
    }

    pub fn zeta_pow(&self, k: u64) -> Vec<Rational> {
        power_of_generator(&self.ring, k % self.n)
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        self.ring.mul(a, b)
    }

    pub fn inv(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        self.ring.inv(a).ok_or(Error::DivisionByZero)
    }

    /// Complex conjugation ζ -> ζ^{n-1}.
    pub fn conj(&self, a: &[Rational]) -> Vec<Rational> {
        self.conj.left_apply(a)
    }

    /// The automorphism ζ -> ζ^k for k coprime to n.
    pub fn automorphism(&self, a: &[Rational], k: u64) -> Vec<Rational> {
        debug_assert_eq!(gcd_u64(k, self.n), 1);
        self.ring.substitute(a, &self.zeta_pow(k))
    }

    pub fn galois_exponents(&self) -> Vec<u64> {
        (2..self.n).filter(|&k| gcd_u64(k, self.n) == 1).collect()
    }

    pub fn trace(&self, a: &[Rational]) -> Rational {
        self.ring.trace(a)
    }

    /// `Tr(a · conj(b))`.
    pub fn hermitian_pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        self.trace(&self.mul(a, &self.conj(b)))
    }

    /// The Z-lattice generated by `g ζ^i`, `0 <= i < φ(n)`.
    pub fn principal_ideal_lattice(self: &Arc<Self>, generator: &[Rational]) -> Result<TraceLattice> {
        if generator.iter().all(Zero::is_zero) {
            return Err(Error::ZeroGenerator);
        }
        let rows: Vec<Vec<Rational>> = (0..self.phi() as u64)
            .map(|i| self.mul(generator, &self.zeta_pow(i)))
            .collect();
        TraceLattice::new(Ambient::Cyclotomic(self.clone()), Matrix::from_rows(rows))
    }

    /// Parse an expression in the formal symbol `z` (standing for ζ_n).
    pub fn parse_element(&self, src: &str) -> Result<Vec<Rational>> {
        crate::expr::evaluate(src, &ExprField(self))
    }
}

fn power_of_generator(ring: &QuotientRing, k: u64) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); (k as usize + 1).max(1)];
    x[k as usize] = Rational::one();
    ring.reduce(&x)
}

struct ExprField<'a>(&'a CycField);

impl crate::expr::Field for ExprField<'_> {
    type Elem = Vec<Rational>;

    fn constant(&self, c: Rational) -> Self::Elem {
        self.0.ring.constant(c)
    }
    fn symbol(&self) -> Self::Elem {
        self.0.zeta()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.0.mul(a, b)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.0.ring.inv(a)
    }
}

/// `(1 - ζ_p)^{-(p-3)/2}`.
pub fn ap_generator(field: &CycField) -> Result<Vec<Rational>> {
    let p = field.n();
    let one_minus: Vec<Rational> = {
        let mut v = field.ring.one();
        let z = field.zeta();
        for (a, b) in v.iter_mut().zip(z) {
            *a -= b;
        }
        v
    };
    let base = field.inv(&one_minus)?;
    Ok(field.ring.pow(&base, (p - 3) / 2))
}

#[derive(Clone, Debug)]
pub struct ApVerification {
    pub p: u64,
    pub lattice: TraceLattice,
    pub root_type: RootType,
}

/// Build the ideal lattice of `(1 - ζ_p)^{-(p-3)/2}` and classify it.
pub fn verify_cyclotomic_ap(p: u64) -> Result<ApVerification> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_AP_PRIME {
        return Err(Error::TooLarge(p));
    }
    let field = Arc::new(CycField::new(p)?);
    let g = ap_generator(&field)?;
    let lattice = field.principal_ideal_lattice(&g)?;
    let root_type = lattice.classify()?.root_type;
    Ok(ApVerification {
        p,
        lattice,
        root_type,
    })
}
