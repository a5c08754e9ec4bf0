//! Dense univariate polynomials over Q and the quotient rings Q[x]/(f).
//!
//! Coefficient vectors are stored lowest degree first.

use num_traits::{One, Zero};

use crate::linalg::{Matrix, Rational};

pub type Poly = Vec<Rational>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Degree of a trimmed polynomial; `None` for zero.
pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[Rational], b: &[Rational]) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
                let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
                x + y
            })
            .collect(),
    )
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Poly {
    let nb: Poly = b.iter().map(|x| -x).collect();
    add(a, &nb)
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn scale(a: &[Rational], s: &Rational) -> Poly {
    trim(a.iter().map(|x| x * s).collect())
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r = trim(a.to_vec());
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Extended Euclid: returns `(g, s)` with `s*a ≡ g (mod b)`, `g` monic.
fn ext_gcd_left(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1): (Poly, Poly) = (vec![Rational::one()], Vec::new());
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    match degree(&r0) {
        Some(d) => {
            let inv = Rational::one() / &r0[d];
            (scale(&r0, &inv), scale(&s0, &inv))
        }
        None => (Vec::new(), Vec::new()),
    }
}

/// Arithmetic in Q[x]/(f) for a monic f of degree n; elements are coefficient
/// vectors of length n in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    modulus: Poly,
    /// Tr(x^i) for 0 <= i < n, traces of multiplication operators.
    power_traces: Vec<Rational>,
}

impl QuotientRing {
    pub fn new(modulus: Poly) -> Self {
        let modulus = trim(modulus);
        let n = degree(&modulus).expect("modulus must be nonconstant");
        assert!(n >= 1 && modulus[n].is_one(), "modulus must be monic");
        let mut ring = Self {
            modulus,
            power_traces: Vec::new(),
        };
        ring.power_traces = (0..n)
            .map(|i| {
                let mut xi = vec![Rational::zero(); n];
                if i < n {
                    xi[i] = Rational::one();
                }
                ring.multiplication_matrix(&xi).trace()
            })
            .collect();
        ring
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.degree()]
    }

    pub fn one(&self) -> Vec<Rational> {
        self.constant(Rational::one())
    }

    pub fn constant(&self, c: Rational) -> Vec<Rational> {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    /// The class of x.
    pub fn generator(&self) -> Vec<Rational> {
        let mut v = self.zero();
        if self.degree() > 1 {
            v[1] = Rational::one();
        } else {
            v[0] = -&self.modulus[0];
        }
        v
    }

    /// Reduce an arbitrary polynomial to a length-n coordinate vector.
    pub fn reduce(&self, p: &[Rational]) -> Vec<Rational> {
        let n = self.degree();
        let mut r = trim(p.to_vec());
        while r.len() > n {
            let top = r.len() - 1;
            let c = r[top].clone();
            if !c.is_zero() {
                let shift = top - n;
                for i in 0..n {
                    r[shift + i] -= &c * &self.modulus[i];
                }
            }
            r.pop();
        }
        r.resize(n, Rational::zero());
        r
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        self.reduce(&mul(a, b))
    }

    /// Inverse modulo f, or `None` when `a` shares a factor with f (or is 0).
    pub fn inv(&self, a: &[Rational]) -> Option<Vec<Rational>> {
        let (g, s) = ext_gcd_left(a, &self.modulus);
        (degree(&g) == Some(0)).then(|| self.reduce(&s))
    }

    pub fn pow(&self, a: &[Rational], mut e: u64) -> Vec<Rational> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Matrix whose i-th row is the coordinate vector of `a * x^i`.
    pub fn multiplication_matrix(&self, a: &[Rational]) -> Matrix {
        let n = self.degree();
        let mut rows = Vec::with_capacity(n);
        let mut cur = self.reduce(a);
        for _ in 0..n {
            rows.push(cur.clone());
            let mut shifted = vec![Rational::zero()];
            shifted.extend(cur);
            cur = self.reduce(&shifted);
        }
        Matrix::from_rows(rows)
    }

    pub fn trace(&self, a: &[Rational]) -> Rational {
        a.iter()
            .zip(&self.power_traces)
            .map(|(x, t)| x * t)
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Image under the ring map sending x to `image` (given in coordinates).
    pub fn substitute(&self, a: &[Rational], image: &[Rational]) -> Vec<Rational> {
        let mut acc = self.zero();
        for c in a.iter().rev() {
            acc = self.mul(&acc, image);
            acc[0] += c;
        }
        acc
    }

    /// Matrix whose i-th row is the image of x^i under x -> `image`.
    pub fn substitution_matrix(&self, image: &[Rational]) -> Matrix {
        let n = self.degree();
        let mut rows = Vec::with_capacity(n);
        let mut cur = self.one();
        for _ in 0..n {
            rows.push(cur.clone());
            cur = self.mul(&cur, image);
        }
        Matrix::from_rows(rows)
    }
}
