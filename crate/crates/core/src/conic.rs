//! Rational points on ellipses `x² + D y² = m` by chords through a known point.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{frac, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    d: Rational,
    m: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConicPoint {
    pub x: Rational,
    pub y: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(s) => write!(f, "{s}"),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Serialize)]
struct PointJson {
    x: String,
    y: String,
}

impl Serialize for ConicPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointJson {
            x: self.x.to_string(),
            y: self.y.to_string(),
        }
        .serialize(s)
    }
}

impl ConicPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }
}

impl Conic {
    /// Panics unless `d > 0` and `m > 0`.
    pub fn new(d: Rational, m: Rational) -> Self {
        assert!(d.is_positive() && m.is_positive(), "conic must be an ellipse");
        Self { d, m }
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn residual(&self, p: &ConicPoint) -> Rational {
        &p.x * &p.x + &self.d * &p.y * &p.y - &self.m
    }

    pub fn contains(&self, p: &ConicPoint) -> bool {
        self.residual(p).is_zero()
    }

    /// The other intersection with the line through `p0` of the given slope.
    pub fn second_intersection(&self, p0: &ConicPoint, slope: &Slope) -> Result<ConicPoint> {
        if !self.contains(p0) {
            return Err(Error::PointNotOnConic);
        }
        Ok(match slope {
            Slope::Infinite => ConicPoint::new(p0.x.clone(), -&p0.y),
            Slope::Finite(s) => {
                let num = int(2) * &p0.x + int(2) * &self.d * &p0.y * s;
                let den = Rational::one() + &self.d * s * s;
                let u = -(num / den);
                ConicPoint::new(&p0.x + &u, &p0.y + s * &u)
            }
        })
    }

    /// Distinct points reached from `p0` by slopes `a/b` with `|a|, b <= height`
    /// (lowest terms) and the vertical slope, each with the first slope that
    /// produced it.
    pub fn enumerate_points(&self, p0: &ConicPoint, height: u64) -> Result<Vec<(ConicPoint, Slope)>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for slope in slopes_up_to(height) {
            let p = self.second_intersection(p0, &slope)?;
            debug_assert!(self.contains(&p));
            if seen.insert(p.clone()) {
                out.push((p, slope));
            }
        }
        Ok(out)
    }
}

/// `∞` followed by the reduced fractions `a/b`, `|a|, b <= height`, ordered by
/// height and then value.
pub fn slopes_up_to(height: u64) -> Vec<Slope> {
    let h = height as i64;
    let mut fr: Vec<(i64, i64)> = Vec::new();
    for b in 1..=h {
        for a in -h..=h {
            if a.gcd(&b) == 1 {
                fr.push((a, b));
            }
        }
    }
    fr.sort_by(|&(a1, b1), &(a2, b2)| {
        let h1 = a1.abs().max(b1);
        let h2 = a2.abs().max(b2);
        h1.cmp(&h2).then((a1 * b2).cmp(&(a2 * b1)))
    });
    std::iter::once(Slope::Infinite)
        .chain(fr.into_iter().map(|(a, b)| Slope::Finite(frac(a, b))))
        .collect()
}

/// The point `(t + 3/2, 3/2)` on `x² + 3y² = t² + 3t + 9`.
pub fn base_point_delta(t: &Rational) -> ConicPoint {
    ConicPoint::new(t + frac(3, 2), frac(3, 2))
}

/// The conic `x² + 3y² = δ_t`.
pub fn delta_conic(t: &Rational) -> Conic {
    Conic::new(int(3), crate::shanks::delta(t))
}

/// Point on `x² + d y² = 1` on the chord through `(1, 0)` of slope `s₁/s₀`;
/// `s₀ = 0` gives `(1, 0)` itself.
pub fn unit_conic_point(d: &Rational, s0: i64, s1: i64) -> Result<ConicPoint> {
    if s0 == 0 && s1 == 0 {
        return Err(Error::ZeroSlopePair);
    }
    let (a, b) = (int(s0), int(s1));
    let den = &a * &a + d * &b * &b;
    let x = -(&a * &a - d * &b * &b) / &den;
    let y = -(int(2) * &a * &b) / &den;
    Ok(ConicPoint::new(x, y))
}

/// `(x₁, y₁)` on `x² + 3y² = 1` for the slope pair `(s₀, s₁)`.
pub fn section5_x1y1(s0: i64, s1: i64) -> Result<ConicPoint> {
    unit_conic_point(&int(3), s0, s1)
}
