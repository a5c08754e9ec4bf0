//! The cyclic cubic field Q[x]/(f_t) of the Shanks polynomial
//! `f_t(x) = x^3 - t x^2 - (t+3) x - 1`.
//!
//! Elements are stored in the power basis `(1, ε, ε²)` where ε is the class
//! of x. The Galois generator σ is fixed by `σ(ε) = -1/(1+ε)`.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{from_bigint, int, Matrix, Rational};
use crate::poly::{self, QuotientRing};

/// `a0 + a1 ε + a2 ε²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub coords: [Rational; 3],
}

impl FieldElement {
    pub fn new(a0: Rational, a1: Rational, a2: Rational) -> Self {
        Self {
            coords: [a0, a1, a2],
        }
    }

    pub fn from_slice(v: &[Rational]) -> Self {
        assert_eq!(v.len(), 3);
        Self::new(v[0].clone(), v[1].clone(), v[2].clone())
    }

    pub fn rational(c: Rational) -> Self {
        Self::new(c, Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// The root ε of f_t.
    pub fn epsilon() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1].is_zero() && self.coords[2].is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(&self.coords[0] * s, &self.coords[1] * s, &self.coords[2] * s)
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        self.coords.to_vec()
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::new(
            &self.coords[0] + &rhs.coords[0],
            &self.coords[1] + &rhs.coords[1],
            &self.coords[2] + &rhs.coords[2],
        )
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.scale(&-Rational::one())
    }
}

/// Wire form `{"kind":"shanks","t":"p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShanksDescriptor {
    pub t: String,
}

/// Coefficients `[-1, -(t+3), -t, 1]` of f_t, lowest degree first.
pub fn shanks_polynomial(t: &Rational) -> Vec<Rational> {
    vec![-int(1), -(t + int(3)), -t.clone(), int(1)]
}

/// `δ_t = t² + 3t + 9`.
pub fn delta(t: &Rational) -> Rational {
    t * t + int(3) * t + int(9)
}

/// Discriminant of a monic cubic `x³ + b x² + c x + d`.
pub fn cubic_discriminant(coeffs: &[Rational]) -> Rational {
    let (d, c, b) = (&coeffs[0], &coeffs[1], &coeffs[2]);
    b * b * c * c - int(4) * c * c * c - int(4) * b * b * b * d - int(27) * d * d
        + int(18) * b * c * d
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            small.push(i.clone());
            let q = &n / &i;
            if q != i {
                large.push(q);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// A rational root of a polynomial with rational coefficients, if any.
pub fn rational_root(coeffs: &[Rational]) -> Option<Rational> {
    let coeffs = poly::trim(coeffs.to_vec());
    if coeffs.first().is_some_and(Zero::is_zero) {
        return Some(Rational::zero());
    }
    let l = crate::linalg::common_denominator(&coeffs);
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * from_bigint(l.clone())).to_integer())
        .collect();
    let lead = ints.last()?;
    let constant = &ints[0];
    for p in positive_divisors(constant) {
        for q in positive_divisors(lead) {
            if !p.gcd(&q).is_one() {
                continue;
            }
            for cand in [Rational::new(p.clone(), q.clone()), -Rational::new(p.clone(), q.clone())] {
                if poly::eval(&coeffs, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// The parameter giving the same field as t = 0 (`f₀(x) = -x³ f₋₃(1/x)`).
pub fn remap_t0() -> Rational {
    int(-3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShanksField {
    t: Rational,
    delta: Rational,
    ring: QuotientRing,
    /// Rows: σ(1), σ(ε), σ(ε²).
    sigma: Matrix,
}

impl ShanksField {
    pub fn new(t: Rational) -> Result<Self> {
        let minpoly = shanks_polynomial(&t);
        if rational_root(&minpoly).is_some() {
            return Err(Error::Reducible(t));
        }
        let ring = QuotientRing::new(minpoly);
        let one_plus_eps = vec![int(1), int(1), int(0)];
        let inv = ring
            .inv(&one_plus_eps)
            .ok_or_else(|| Error::Invariant("1 + ε is not invertible".into()))?;
        let sigma_eps: Vec<Rational> = inv.iter().map(|x| -x).collect();
        let sigma = ring.substitution_matrix(&sigma_eps);
        Ok(Self {
            delta: delta(&t),
            t,
            ring,
            sigma,
        })
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    /// Coefficients of f_t, lowest degree first.
    pub fn minpoly(&self) -> &[Rational] {
        self.ring.modulus()
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn descriptor(&self) -> ShanksDescriptor {
        ShanksDescriptor {
            t: self.t.to_string(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement::from_slice(&self.ring.mul(&a.coords, &b.coords))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.ring
            .inv(&a.coords)
            .map(|v| FieldElement::from_slice(&v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        FieldElement::from_slice(&self.ring.pow(&a.coords, e))
    }

    /// The Galois generator σ with `σ(ε) = -1/(1+ε)`.
    pub fn sigma(&self, a: &FieldElement) -> FieldElement {
        FieldElement::from_slice(&self.sigma_coords(&a.coords))
    }

    pub fn sigma_coords(&self, a: &[Rational]) -> Vec<Rational> {
        self.sigma.left_apply(a)
    }

    pub fn sigma_matrix(&self) -> &Matrix {
        &self.sigma
    }

    pub fn trace(&self, a: &FieldElement) -> Rational {
        self.ring.trace(&a.coords)
    }

    pub fn trace_pair(&self, a: &FieldElement, b: &FieldElement) -> Rational {
        self.trace(&self.mul(a, b))
    }

    pub fn norm(&self, a: &FieldElement) -> Rational {
        self.ring
            .multiplication_matrix(&a.coords)
            .det()
            .expect("square")
    }

    /// Evaluate a polynomial (lowest degree first) at a field element.
    pub fn eval_poly(&self, coeffs: &[Rational], a: &FieldElement) -> FieldElement {
        let v = self.ring.substitute(coeffs, &a.coords);
        FieldElement::from_slice(&v)
    }

    /// `λ₀ ε + λ₁ ε^σ + λ₂ ε^{σ²}`.
    pub fn bracket(&self, lambda: &[Rational; 3]) -> Result<FieldElement> {
        if self.t.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(self.bracket_unchecked(lambda))
    }

    fn bracket_unchecked(&self, lambda: &[Rational; 3]) -> FieldElement {
        let (e0, e1, e2) = self.conjugates_of_epsilon();
        let terms = [e0.scale(&lambda[0]), e1.scale(&lambda[1]), e2.scale(&lambda[2])];
        &(&terms[0] + &terms[1]) + &terms[2]
    }

    pub fn conjugates_of_epsilon(&self) -> (FieldElement, FieldElement, FieldElement) {
        let e0 = FieldElement::epsilon();
        let e1 = self.sigma(&e0);
        let e2 = self.sigma(&e1);
        (e0, e1, e2)
    }

    /// Rows: ε, ε^σ, ε^{σ²} in the power basis. Singular exactly when t = 0.
    pub fn normal_basis_matrix(&self) -> Matrix {
        let (e0, e1, e2) = self.conjugates_of_epsilon();
        Matrix::from_rows(vec![e0.to_vec(), e1.to_vec(), e2.to_vec()])
    }

    /// Coordinates with respect to `(ε, ε^σ, ε^{σ²})`; inverse of `bracket`.
    pub fn normal_coords(&self, a: &FieldElement) -> Result<[Rational; 3]> {
        if self.t.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let inv = self.normal_basis_matrix().inverse()?;
        let c = inv.left_apply(&a.coords);
        Ok([c[0].clone(), c[1].clone(), c[2].clone()])
    }

    /// From a trace-zero irrational α, the parameter `t' = Tr(u)` with
    /// `u = σ(α)/α`, a root of `f_{t'}` generating the same field.
    pub fn reparametrize(&self, alpha: &FieldElement) -> Result<Reparametrization> {
        if alpha.is_rational() {
            return Err(Error::RationalInput);
        }
        if !self.trace(alpha).is_zero() {
            return Err(Error::NonzeroTrace);
        }
        let u = self.div(&self.sigma(alpha), alpha)?;
        let t_prime = self.trace(&u);
        let residual = self.eval_poly(&shanks_polynomial(&t_prime), &u);
        if !residual.is_zero() || u.is_rational() {
            return Err(Error::Invariant(
                "u = σ(α)/α is not a generating root of f_{Tr(u)}".into(),
            ));
        }
        Ok(Reparametrization { t_prime, u })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reparametrization {
    pub t_prime: Rational,
    pub u: FieldElement,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    fn field(t: Rational) -> ShanksField {
        ShanksField::new(t).unwrap()
    }

    #[test]
    fn construction() {
        let f0 = field(int(0));
        assert_eq!(f0.minpoly(), &[int(-1), int(-3), int(0), int(1)]);
        assert_eq!(
            ShanksField::new(frac(-3, 2)),
            Err(Error::Reducible(frac(-3, 2)))
        );
        assert_eq!(field(int(1)).delta(), &int(13));
    }

    #[test]
    fn multiplication_and_inverse() {
        let f = field(int(0));
        let e = FieldElement::epsilon();
        assert_eq!(f.mul(&e, &FieldElement::one()), e);
        assert_eq!(f.mul(&e, &f.inv(&e).unwrap()), FieldElement::one());
        assert_eq!(f.inv(&FieldElement::zero()), Err(Error::DivisionByZero));
        let (e0, e1, e2) = f.conjugates_of_epsilon();
        assert_eq!(f.mul(&f.mul(&e0, &e1), &e2), FieldElement::one());
    }

    #[test]
    fn sigma_at_t0() {
        let f = field(int(0));
        let s = f.sigma(&FieldElement::epsilon());
        assert_eq!(s, FieldElement::new(int(-2), int(-1), int(1)));
        assert_eq!(f.sigma(&s), FieldElement::new(int(2), int(0), int(-1)));
        assert!(f.eval_poly(f.minpoly(), &s).is_zero());
    }

    #[test]
    fn trace_constants_at_t0() {
        let f = field(int(0));
        let (e0, e1, _) = f.conjugates_of_epsilon();
        assert_eq!(f.trace(&FieldElement::one()), int(3));
        assert_eq!(f.trace(&e0), int(0));
        assert_eq!(f.trace_pair(&e0, &e1), int(-3));
        assert_eq!(f.trace_pair(&e0, &e0), int(6));
        assert_eq!(f.trace_pair(&e0, &e0), int(6));
        let f1 = field(int(1));
        let e = FieldElement::epsilon();
        assert_eq!(f1.trace(&e), int(1));
        assert_eq!(f1.trace_pair(&e, &e), int(9));
    }

    #[test]
    fn bracket_examples() {
        let f = field(int(2));
        assert_eq!(
            f.bracket(&[int(1), int(0), int(0)]).unwrap(),
            FieldElement::epsilon()
        );
        assert_eq!(
            f.bracket(&[int(1), int(1), int(1)]).unwrap(),
            FieldElement::rational(int(2))
        );
        assert_eq!(
            field(int(0)).bracket(&[int(1), int(0), int(0)]),
            Err(Error::ZeroParameter)
        );
        assert_eq!(
            f.normal_coords(&FieldElement::epsilon()).unwrap(),
            [int(1), int(0), int(0)]
        );
    }

    #[test]
    fn normal_basis_degenerates_exactly_at_t0() {
        let det0 = field(int(0)).normal_basis_matrix().det().unwrap();
        assert!(det0.is_zero());
        for t in [int(1), int(2), frac(1, 3), int(-1)] {
            let f = field(t.clone());
            let m = f.normal_basis_matrix();
            let d = m.det().unwrap();
            assert_eq!(&d * &d, &t * &t);
            let rows = m.row_vecs();
            let gram = Matrix::from_rows(
                rows.iter()
                    .map(|a| {
                        rows.iter()
                            .map(|b| f.ring().trace(&f.ring().mul(a, b)))
                            .collect()
                    })
                    .collect(),
            );
            assert_eq!(gram.det().unwrap(), &t * &t * f.delta() * f.delta());
        }
    }

    #[test]
    fn reparametrize_rejects_bad_inputs() {
        let f = field(int(1));
        assert_eq!(
            f.reparametrize(&FieldElement::epsilon()),
            Err(Error::NonzeroTrace)
        );
        assert_eq!(
            f.reparametrize(&FieldElement::rational(int(0))),
            Err(Error::RationalInput)
        );
        let alpha = &FieldElement::epsilon() - &FieldElement::rational(frac(1, 3));
        let r = f.reparametrize(&alpha).unwrap();
        assert_eq!(f.norm(&r.u), int(1));
    }

    #[test]
    fn remap() {
        assert_eq!(remap_t0(), int(-3));
        assert!(rational_root(&shanks_polynomial(&int(-3))).is_none());
    }
}
