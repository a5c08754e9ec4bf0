//! A₃ and self-dual lattices with normal Z-bases in cyclic cubic fields,
//! built from rational points on `x² + 3y² = (d − e) δ_t`.

use std::collections::HashSet;
use std::sync::Arc;

use log::{debug, info};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::ambient::Ambient;
use crate::conic::{Conic, ConicPoint, Slope};
use crate::error::{Error, Result};
use crate::lattice::{Classification, RootType, TraceLattice};
use crate::linalg::{frac, int, rational_sqrt, Matrix, Rational};
use crate::shanks::{FieldElement, ShanksField};

/// Prescribed traces `Tr(⟨λ,ε⟩²) = d`, `Tr(⟨λ,ε⟩⟨λ,ε^σ⟩) = e`, with `f² = d + 2e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTarget {
    pub d: Rational,
    pub e: Rational,
    pub f: Rational,
}

impl TraceTarget {
    pub fn new(d: Rational, e: Rational, f: Rational) -> Result<Self> {
        let s = &d + int(2) * &e;
        if &f * &f != s {
            return Err(Error::InvalidTarget(s));
        }
        Ok(Self { d, e, f })
    }

    pub fn a3() -> Self {
        Self::new(int(2), int(1), int(2)).expect("valid preset")
    }

    pub fn self_dual() -> Self {
        Self::new(int(1), int(0), int(1)).expect("valid preset")
    }

    /// The circulant Gram `[[d,e,e],[e,d,e],[e,e,d]]`.
    pub fn gram(&self) -> Matrix {
        let mut g = Matrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                g[(i, j)] = if i == j { self.d.clone() } else { self.e.clone() };
            }
        }
        g
    }

    /// `x² + 3y² = (d − e) δ_t`.
    pub fn conic(&self, t: &Rational) -> Option<Conic> {
        let m = (&self.d - &self.e) * crate::shanks::delta(t);
        m.is_positive().then(|| Conic::new(int(3), m))
    }

    /// A rational point on [`TraceTarget::conic`] when `d − e = r²`, scaled
    /// from `(t + 3/2, 3/2)`. `None` means existence is not decided here.
    pub fn known_base_point(&self, t: &Rational) -> Option<ConicPoint> {
        let r = rational_sqrt(&(&self.d - &self.e))?;
        if r.is_zero() {
            return None;
        }
        Some(ConicPoint::new(&r * (t + frac(3, 2)), &r * frac(3, 2)))
    }
}

/// `(L, Q) = (Σ λᵢ, Σ_{i<j} λᵢλⱼ)`.
pub fn lq(lambda: &[Rational; 3]) -> (Rational, Rational) {
    let l = &lambda[0] + &lambda[1] + &lambda[2];
    let q = &lambda[0] * &lambda[1] + &lambda[0] * &lambda[2] + &lambda[1] * &lambda[2];
    (l, q)
}

/// Closed forms `d = (t²+2t+6)L² − 2δQ`, `e = −(t+3)L² + δQ`.
pub fn trace_targets_of(t: &Rational, lambda: &[Rational; 3]) -> Result<(Rational, Rational)> {
    if t.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let (l, q) = lq(lambda);
    let delta = crate::shanks::delta(t);
    let l2 = &l * &l;
    let d = (t * t + int(2) * t + int(6)) * &l2 - int(2) * &delta * &q;
    let e = -(t + int(3)) * &l2 + &delta * &q;
    Ok((d, e))
}

/// The same two traces computed in the field.
pub fn trace_targets_direct(field: &ShanksField, lambda: &[Rational; 3]) -> Result<(Rational, Rational)> {
    let b = field.bracket(lambda)?;
    let bs = field.sigma(&b);
    Ok((field.trace_pair(&b, &b), field.trace_pair(&b, &bs)))
}

/// `D_{t,e,f}(λ₀) = −(3tλ₀ − f)²/3 + (4t²f² − 12t²e)/(3δ_t)`.
pub fn d_tef(t: &Rational, target: &TraceTarget, lambda0: &Rational) -> Rational {
    let delta = crate::shanks::delta(t);
    let a = int(3) * t * lambda0 - &target.f;
    let t2 = t * t;
    -(&a * &a) / int(3)
        + (int(4) * &t2 * &target.f * &target.f - int(12) * &t2 * &target.e) / (int(3) * delta)
}

/// λ from a point on `x² + 3y² = (d − e)δ_t`:
/// `λ₀ = (2tx/δ + f)/(3t)`, `λ₁, λ₂ = ((f − tλ₀) ± 2ty/δ)/(2t)`.
pub fn lambda_from_point(
    t: &Rational,
    target: &TraceTarget,
    p: &ConicPoint,
) -> Result<[Rational; 3]> {
    if t.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let delta = crate::shanks::delta(t);
    if &p.x * &p.x + int(3) * &p.y * &p.y != (&target.d - &target.e) * &delta {
        return Err(Error::PointNotOnConic);
    }
    let two_t = int(2) * t;
    let l0 = (&two_t * &p.x / &delta + &target.f) / (int(3) * t);
    let r = &two_t * &p.y / &delta;
    let base = &target.f - t * &l0;
    let l1 = (&base + &r) / &two_t;
    let l2 = (&base - &r) / &two_t;
    let diff = t * (&l1 - &l2);
    if d_tef(t, target, &l0) != &r * &r || diff.clone() * diff != &r * &r {
        return Err(Error::Invariant("t(λ₁ − λ₂) does not square to D_{t,e,f}(λ₀)".into()));
    }
    let lambda = [l0, l1, l2];
    if trace_targets_of(t, &lambda)? != (target.d.clone(), target.e.clone()) {
        return Err(Error::Invariant("λ misses its trace target".into()));
    }
    Ok(lambda)
}

/// The lattice spanned by `⟨λ,ε⟩` and its two Galois conjugates.
pub fn normal_basis_lattice(field: &Arc<ShanksField>, lambda: &[Rational; 3]) -> Result<TraceLattice> {
    let b0 = field.bracket(lambda)?;
    let b1 = field.sigma(&b0);
    let b2 = field.sigma(&b1);
    let basis = Matrix::from_rows(vec![b0.to_vec(), b1.to_vec(), b2.to_vec()]);
    if basis.det()?.is_zero() {
        return Err(Error::DegenerateLambda);
    }
    TraceLattice::new(Ambient::Shanks(field.clone()), basis)
}

/// `A = [[1,0,0],[−1,1,0],[0,−1,1]]`.
pub fn a3_change_matrix() -> Matrix {
    Matrix::from_i64(&[[1, 0, 0], [-1, 1, 0], [0, -1, 1]])
}

pub fn a3_gram() -> Matrix {
    Matrix::from_i64(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
}

/// Rebase a lattice with Gram `[[2,1,1],[1,2,1],[1,1,2]]` onto a basis with
/// the standard A₃ Gram.
pub fn to_a3_basis(l: &TraceLattice) -> Result<TraceLattice> {
    if l.gram() != &TraceTarget::a3().gram() {
        return Err(Error::WrongGram);
    }
    let out = l.change_basis(&a3_change_matrix())?;
    debug_assert_eq!(out.gram(), &a3_gram());
    Ok(out)
}

/// `J · I · J = [[2,1,1],[1,2,1],[1,1,2]]` with `J = [[0,1,1],[1,0,1],[1,1,0]]`.
pub fn self_dual_transform_identity() -> bool {
    let j = Matrix::from_i64(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]);
    let lhs = &(&j * &Matrix::identity(3)) * &j;
    lhs == TraceTarget::a3().gram() && j.det().map(|d| d.abs()) == Ok(int(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    A3,
    SelfDual,
}

impl FamilyKind {
    pub fn target(self) -> TraceTarget {
        match self {
            FamilyKind::A3 => TraceTarget::a3(),
            FamilyKind::SelfDual => TraceTarget::self_dual(),
        }
    }
}

/// Checks made on every family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub classification: Classification,
    pub galois_stable: bool,
    pub gram_matches: bool,
    pub self_dual: bool,
}

impl Certificate {
    pub fn passes(&self, kind: FamilyKind) -> bool {
        let c = &self.classification;
        let shape = match kind {
            FamilyKind::A3 => {
                c.root_type == RootType::A(3)
                    && c.even
                    && c.det == int(4)
                    && c.root_count == 12
                    && c.roots_generate
            }
            FamilyKind::SelfDual => self.self_dual && c.det == int(1),
        };
        shape && self.galois_stable && self.gram_matches
    }
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub point: ConicPoint,
    pub slope: Slope,
    pub lambda: [Rational; 3],
    pub lattice: TraceLattice,
    pub certificate: Certificate,
}

impl FamilyMember {
    pub fn lambda0_denominator(&self) -> BigInt {
        self.lambda[0].denom().clone()
    }
}

#[derive(Clone, Debug)]
pub struct Family {
    pub t: Rational,
    pub kind: FamilyKind,
    pub height: u64,
    pub members: Vec<FamilyMember>,
    /// Conic points whose brackets were dependent.
    pub degenerate: usize,
    /// Conic points reproducing an earlier lattice.
    pub duplicates: usize,
}

impl Family {
    pub fn all_certified(&self) -> bool {
        self.members.iter().all(|m| m.certificate.passes(self.kind))
    }

    pub fn max_lambda0_denominator(&self) -> BigInt {
        self.members
            .iter()
            .map(FamilyMember::lambda0_denominator)
            .max()
            .unwrap_or_default()
    }
}

fn certify(l: &TraceLattice, target: &TraceTarget) -> Result<Certificate> {
    Ok(Certificate {
        classification: l.classify()?,
        galois_stable: l.galois_stable(),
        gram_matches: l.gram() == &target.gram(),
        self_dual: l.dual().lattice_equal(l)?,
    })
}

/// All pairwise-distinct family lattices from conic points up to slope
/// `height`, each certified.
pub fn build_family(t: &Rational, kind: FamilyKind, height: u64) -> Result<Family> {
    if t.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let field = Arc::new(ShanksField::new(t.clone())?);
    let target = kind.target();
    let conic = target.conic(t).expect("presets have d − e = 1");
    let p0 = target.known_base_point(t).expect("presets have d − e = 1");
    let points = conic.enumerate_points(&p0, height)?;

    let built: Vec<Result<Option<FamilyMember>>> = points
        .into_par_iter()
        .map(|(point, slope)| {
            let lambda = lambda_from_point(t, &target, &point)?;
            let lattice = match normal_basis_lattice(&field, &lambda) {
                Ok(l) => l,
                Err(Error::DegenerateLambda) => {
                    debug!("t = {t}: point ({}, {}) gives dependent brackets", point.x, point.y);
                    return Ok(None);
                }
                Err(e) => return Err(e),
            };
            let certificate = certify(&lattice, &target)?;
            Ok(Some(FamilyMember {
                point,
                slope,
                lambda,
                lattice,
                certificate,
            }))
        })
        .collect();

    let mut seen = HashSet::new();
    let mut members = Vec::new();
    let (mut degenerate, mut duplicates) = (0, 0);
    for m in built {
        match m? {
            None => degenerate += 1,
            Some(m) => {
                if seen.insert(m.lattice.canonical_basis()) {
                    members.push(m);
                } else {
                    duplicates += 1;
                }
            }
        }
    }
    info!(
        "t = {t}, height {height}: {} distinct lattices, {degenerate} degenerate points skipped, {duplicates} duplicates",
        members.len()
    );
    Ok(Family {
        t: t.clone(),
        kind,
        height,
        members,
        degenerate,
        duplicates,
    })
}

pub fn generate_family(t: &Rational, height: u64) -> Result<Family> {
    build_family(t, FamilyKind::A3, height)
}

pub fn self_dual_family(t: &Rational, height: u64) -> Result<Family> {
    if !self_dual_transform_identity() {
        return Err(Error::Invariant("J·I·J is not the circulant A3 Gram".into()));
    }
    build_family(t, FamilyKind::SelfDual, height)
}

/// Basis `(β₀, β₁, β₂)` with `βᵢ = (2 − ε^{σⁱ})/3` in the field at `t = 0`.
pub fn example_t0_basis(field: &ShanksField) -> Vec<FieldElement> {
    let (e0, e1, e2) = field.conjugates_of_epsilon();
    [e0, e1, e2]
        .iter()
        .map(|e| (&FieldElement::rational(int(2)) - e).scale(&frac(1, 3)))
        .collect()
}
