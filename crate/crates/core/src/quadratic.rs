//! A₂ lattices in quadratic fields Q(√±d).

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ambient::Ambient;
use crate::conic::unit_conic_point;
use crate::error::{Error, Result};
use crate::lattice::TraceLattice;
use crate::linalg::{frac, height, int, rational_sqrt, Matrix, Rational};

/// `Q(√(sign·d))` with `d` squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadAmbient {
    d: u64,
    sign: i8,
    /// `(original d, s)` with `original = s² d` when a reduction was applied.
    reduced_from: Option<(u64, u64)>,
}

/// Write `n = s² · r` with `r` squarefree.
pub fn squarefree_part(n: u64) -> (u64, u64) {
    let mut r = n;
    let mut s = 1;
    let mut p = 2;
    while p * p <= r {
        while r % (p * p) == 0 {
            r /= p * p;
            s *= p;
        }
        p += 1;
    }
    (r, s)
}

impl QuadAmbient {
    /// Non-squarefree `d` is replaced by its squarefree part.
    pub fn new(d: i64, sign: i8) -> Result<Self> {
        if d < 1 || (sign != 1 && sign != -1) {
            return Err(Error::BadQuadraticParameter(d));
        }
        let (r, s) = squarefree_part(d as u64);
        Ok(Self {
            d: r,
            sign,
            reduced_from: (s > 1).then_some((d as u64, s)),
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn reduced_from(&self) -> Option<(u64, u64)> {
        self.reduced_from
    }

    /// `Tr(a · conj b) = 2(a_x b_x + d a_y b_y)` on coordinates `(x, y)`.
    pub fn pairing_coords(&self, a: &[Rational], b: &[Rational]) -> Rational {
        int(2) * (&a[0] * &b[0] + int(self.d as i64) * &a[1] * &b[1])
    }

    pub fn pairing(&self, a: &QuadElement, b: &QuadElement) -> Rational {
        self.pairing_coords(&a.coords(), &b.coords())
    }
}

impl fmt::Display for QuadAmbient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign > 0 { "" } else { "-" };
        write!(f, "Q(sqrt({s}{}))", self.d)
    }
}

/// `x + y √±d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub x: Rational,
    pub y: Rational,
}

impl QuadElement {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn coords(&self) -> Vec<Rational> {
        vec![self.x.clone(), self.y.clone()]
    }

    pub fn conj(&self) -> Self {
        Self::new(self.x.clone(), -&self.y)
    }
}

/// Choice of root for `y₂` in the slope parametrization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `y₂ = −(s₀−3s₁)(s₀+s₁) / (2(s₀²+3s₁²))`
    Plus,
    /// `y₂ = (s₀+3s₁)(s₀−s₁) / (2(s₀²+3s₁²))`
    Minus,
}

/// A solution `(x₁, y₁, x₂, y₂)` of
/// `x₁²+dy₁² = 1, x₂²+dy₂² = 1, 2x₁x₂+2dy₁y₂ = −1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct A2Solution {
    pub x1: Rational,
    pub y1: Rational,
    pub x2: Rational,
    pub y2: Rational,
}

impl A2Solution {
    pub fn residuals(&self, d: &Rational) -> [Rational; 3] {
        let one = Rational::one();
        [
            &self.x1 * &self.x1 + d * &self.y1 * &self.y1 - &one,
            &self.x2 * &self.x2 + d * &self.y2 * &self.y2 - &one,
            int(2) * &self.x1 * &self.x2 + int(2) * d * &self.y1 * &self.y2 + &one,
        ]
    }

    pub fn satisfies(&self, d: &Rational) -> bool {
        self.residuals(d).iter().all(Zero::is_zero)
    }

    /// `max(|num|, den)` over all four coordinates.
    pub fn height(&self) -> num_bigint::BigInt {
        [&self.x1, &self.y1, &self.x2, &self.y2]
            .into_iter()
            .map(height)
            .max()
            .expect("four coordinates")
    }

    pub fn is_normal(&self) -> bool {
        self.x1 == self.x2 && self.y1 == -&self.y2
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rational>> {
        vec![
            vec![self.x1.clone(), self.y1.clone()],
            vec![self.x2.clone(), self.y2.clone()],
        ]
    }
}

pub fn a2_gram() -> Matrix {
    Matrix::from_i64(&[[2, -1], [-1, 2]])
}

/// The slope-parametrized solution for `d = 3`.
pub fn a2_solution_from_slopes(s0: i64, s1: i64, branch: Branch) -> Result<A2Solution> {
    let p1 = unit_conic_point(&int(3), s0, s1)?;
    let (a, b) = (int(s0), int(s1));
    let n = &a * &a + int(3) * &b * &b;
    let y2 = match branch {
        Branch::Plus => -((&a - int(3) * &b) * (&a + &b)) / (int(2) * &n),
        Branch::Minus => (&a + int(3) * &b) * (&a - &b) / (int(2) * &n),
    };
    let m = &a * &a - int(3) * &b * &b;
    let x2 = -(int(12) * &a * &b * &y2 - &n) / (int(2) * m);
    Ok(A2Solution {
        x1: p1.x,
        y1: p1.y,
        x2,
        y2,
    })
}

fn ambient3(sign: i8) -> Ambient {
    Ambient::Quadratic(QuadAmbient::new(3, sign).expect("valid"))
}

/// The lattice with basis `(x₁+y₁√±3, x₂+y₂√±3)` of the slope pair.
pub fn a2_from_slopes(s0: i64, s1: i64, branch: Branch, sign: i8) -> Result<TraceLattice> {
    let sol = a2_solution_from_slopes(s0, s1, branch)?;
    if !sol.satisfies(&int(3)) {
        return Err(Error::Invariant(format!("slope pair ({s0}, {s1}) misses the A2 system")));
    }
    let l = TraceLattice::from_rows(ambient3(sign), sol.basis_rows())?;
    if l.gram() != &a2_gram() {
        return Err(Error::Invariant("slope lattice Gram is not A2".into()));
    }
    Ok(l)
}

/// Primitive slope pairs `(s₀, s₁)` with `s₀ >= 0`, `|s₀|, |s₁| <= height`.
pub fn slope_pairs(height: u64) -> Vec<(i64, i64)> {
    let h = height as i64;
    let mut out = vec![(0, 1)];
    for s0 in 1..=h {
        for s1 in -h..=h {
            if s0.gcd(&s1) == 1 {
                out.push((s0, s1));
            }
        }
    }
    out
}

/// Result of the bounded search for A₂ bases in `Q(√±d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FalsifyReport {
    pub d: u64,
    pub height: u64,
    /// Points `(x₁, y₁)` of height `<= height` examined.
    pub points_checked: usize,
    pub solutions: Vec<A2Solution>,
}

/// Every rational solution of the A₂ system whose coordinates all have
/// height at most `height`.
///
/// Points on `x² + d y² = 1` share the denominator of both coordinates, so a
/// point of height `<= H` lies on the chord through `(1, 0)` with slope
/// `b/(a − c)`, `|b| <= H`, `|a − c| <= 2H`; those slopes are all tried. The
/// second vector is then forced: `4d y₂² + 4d y₁ y₂ + 1 − 4x₁² = 0` with
/// discriminant `48 d x₁²`, and `x₂ = (−1 − 2d y₁ y₂)/(2x₁)`.
pub fn falsify_a2(d: u64, height: u64) -> FalsifyReport {
    let dq = int(d as i64);
    let bound = num_bigint::BigInt::from(height);
    let h = height as i64;
    let mut points = HashSet::new();
    let mut pairs = vec![(0i64, 1i64)];
    for s0 in 1..=2 * h {
        for s1 in -h..=h {
            if s0.gcd(&s1) == 1 {
                pairs.push((s0, s1));
            }
        }
    }
    for (s0, s1) in pairs {
        let p = unit_conic_point(&dq, s0, s1).expect("nonzero pair");
        if height_of(&p.x) <= bound && height_of(&p.y) <= bound {
            points.insert(p);
        }
    }
    let mut solutions = Vec::new();
    let points_checked = points.len();
    for p in &points {
        for (x2, y2) in complete_a2(&dq, &p.x, &p.y) {
            let sol = A2Solution {
                x1: p.x.clone(),
                y1: p.y.clone(),
                x2,
                y2,
            };
            debug_assert!(sol.satisfies(&dq));
            if sol.height() <= bound {
                solutions.push(sol);
            }
        }
    }
    solutions.sort();
    solutions.dedup();
    FalsifyReport {
        d,
        height,
        points_checked,
        solutions,
    }
}

fn height_of(r: &Rational) -> num_bigint::BigInt {
    height(r)
}

/// All `(x₂, y₂)` completing a point `(x₁, y₁)` of `x² + d y² = 1`.
fn complete_a2(d: &Rational, x1: &Rational, y1: &Rational) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    if x1.is_zero() {
        // d y₁² = 1, and 2d y₁ y₂ = −1 fixes y₂.
        let y2 = -Rational::one() / (int(2) * d * y1);
        if let Some(x2) = rational_sqrt(&(Rational::one() - d * &y2 * &y2)) {
            out.push((x2.clone(), y2.clone()));
            if !x2.is_zero() {
                out.push((-x2, y2));
            }
        }
        return out;
    }
    let disc = int(48) * d * x1 * x1;
    let Some(root) = rational_sqrt(&disc) else {
        return out;
    };
    let a = int(4) * d;
    let b = int(4) * d * y1;
    for r in [root.clone(), -root] {
        let y2 = (-&b + r) / (int(2) * &a);
        let x2 = (-Rational::one() - int(2) * d * y1 * &y2) / (int(2) * x1);
        out.push((x2, y2));
    }
    out.dedup();
    out
}

/// Solutions of the A₂ system with `x₁ = x₂` and `y₁ = −y₂` for `d = 3`:
/// `4x₁² = 1` and `3y₁² = 3/4`.
pub fn normal_a2_solutions() -> Vec<A2Solution> {
    let mut out = Vec::new();
    for x in [frac(-1, 2), frac(1, 2)] {
        for y in [frac(-1, 2), frac(1, 2)] {
            let s = A2Solution {
                x1: x.clone(),
                y1: y.clone(),
                x2: x.clone(),
                y2: -&y,
            };
            if s.satisfies(&int(3)) {
                out.push(s);
            }
        }
    }
    out
}

/// `Z·(1+√±3)/2 + Z·(1−√±3)/2`, checked to be the only normal-basis solution.
pub fn normal_a2(sign: i8) -> Result<TraceLattice> {
    let h = frac(1, 2);
    let l = TraceLattice::from_rows(
        ambient3(sign),
        vec![vec![h.clone(), h.clone()], vec![h.clone(), -h]],
    )?;
    for s in normal_a2_solutions() {
        let other = TraceLattice::from_rows(ambient3(sign), s.basis_rows())?;
        if !other.lattice_equal(&l)? {
            return Err(Error::Invariant("normal A2 solutions span different lattices".into()));
        }
    }
    Ok(l)
}

/// Pairwise-distinct lattices among all slope pairs up to `height`, both
/// branches, in enumeration order.
pub fn a2_family(height: u64, sign: i8) -> Result<Vec<(i64, i64, Branch, TraceLattice)>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (s0, s1) in slope_pairs(height) {
        for branch in [Branch::Plus, Branch::Minus] {
            let l = a2_from_slopes(s0, s1, branch, sign)?;
            if seen.insert(l.canonical_basis()) {
                out.push((s0, s1, branch, l));
            }
        }
    }
    Ok(out)
}

pub fn family_distinctness(height: u64) -> Result<usize> {
    Ok(a2_family(height, -1)?.len())
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::RootType;

    #[test]
    fn squarefree_reduction() {
        assert_eq!(squarefree_part(12), (3, 2));
        assert_eq!(squarefree_part(7), (7, 1));
        assert_eq!(squarefree_part(72), (2, 6));
        let q = QuadAmbient::new(27, -1).unwrap();
        assert_eq!((q.d(), q.reduced_from()), (3, Some((27, 3))));
        assert!(QuadAmbient::new(0, 1).is_err());
    }

    #[test]
    fn pairings() {
        let q = QuadAmbient::new(3, -1).unwrap();
        let one = QuadElement::new(int(1), int(0));
        assert_eq!(q.pairing(&one, &one), int(2));
        let a = QuadElement::new(frac(1, 2), frac(1, 2));
        assert_eq!(q.pairing(&a, &a), int(2));
        assert_eq!(q.pairing(&a, &a.conj()), int(-1));
    }

    #[test]
    fn slope_examples() {
        let s = a2_solution_from_slopes(1, 0, Branch::Plus).unwrap();
        assert_eq!(
            (s.x1, s.y1, s.x2, s.y2),
            (int(-1), int(0), frac(1, 2), frac(-1, 2))
        );
        let s = a2_solution_from_slopes(2, 1, Branch::Plus).unwrap();
        assert!(s.satisfies(&int(3)));
        let s = a2_solution_from_slopes(1, 1, Branch::Minus).unwrap();
        assert_eq!(
            (s.x1, s.y1, s.x2, s.y2),
            (frac(1, 2), frac(-1, 2), int(-1), int(0))
        );
        for (s0, s1) in slope_pairs(10) {
            for b in [Branch::Plus, Branch::Minus] {
                let l = a2_from_slopes(s0, s1, b, 1).unwrap();
                assert_eq!(l.classify().unwrap().root_type, RootType::A(2));
            }
        }
    }

    #[test]
    fn normal_lattice_is_unique_up_to_sign() {
        let n = normal_a2(-1).unwrap();
        assert_eq!(n.gram(), &a2_gram());
        assert!(n.galois_stable());
        assert_eq!(normal_a2_solutions().len(), 4);
    }

    #[test]
    fn falsifier() {
        for d in [1, 2, 5] {
            assert!(falsify_a2(d, 10).solutions.is_empty(), "d = {d}");
        }
        let r = falsify_a2(3, 2);
        let target = A2Solution {
            x1: frac(1, 2),
            y1: frac(1, 2),
            x2: frac(1, 2),
            y2: frac(-1, 2),
        };
        assert!(r.solutions.contains(&target));
        assert!(r.solutions.iter().all(|s| s.satisfies(&int(3))));
    }
}
