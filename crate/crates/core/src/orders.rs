//! Orders and ideals in Shanks cubic fields: maximal order, the different,
//! its square root, primes above 2, and the odd "fake A₃" ideal lattice.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ambient::Ambient;
use crate::error::{Error, Result};
use crate::lattice::{RootType, TraceLattice};
use crate::linalg::{from_bigint, hnf_integer, int, int_sqrt_exact, span_basis, Matrix, Rational};
use crate::shanks::ShanksField;

/// Largest conductor accepted by [`sqrt_different_inverse`].
pub const MAX_SQRT_CONDUCTOR: u64 = 200;

type Structure = Vec<Vec<Vec<BigInt>>>;

/// A full-rank subring of a Shanks cubic field.
#[derive(Clone, Debug)]
pub struct CubicOrder {
    field: Arc<ShanksField>,
    /// Rows: Z-basis in the power basis `(1, ε, ε²)`.
    basis: Matrix,
    basis_inv: Matrix,
    /// `c[i][j]` = coordinates of `b_i b_j` in the order basis.
    structure: Structure,
    disc: BigInt,
    maximal: bool,
}

fn to_ints(v: &[Rational]) -> Option<Vec<BigInt>> {
    v.iter()
        .all(|x| x.is_integer())
        .then(|| v.iter().map(|x| x.to_integer()).collect())
}

impl CubicOrder {
    /// Checks that the rows span a ring containing 1.
    pub fn from_basis(field: Arc<ShanksField>, basis: Matrix, maximal: bool) -> Result<Self> {
        let basis = span_basis(&basis.row_vecs());
        if basis.rows() != 3 {
            return Err(Error::DependentBasis);
        }
        let basis_inv = basis.inverse()?;
        let one = basis_inv.left_apply(&field.ring().one());
        if to_ints(&one).is_none() {
            return Err(Error::Invariant("order does not contain 1".into()));
        }
        let mut structure = vec![vec![Vec::new(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let prod = field.ring().mul(basis.row(i), basis.row(j));
                structure[i][j] = to_ints(&basis_inv.left_apply(&prod)).ok_or_else(|| {
                    Error::Invariant("basis is not closed under multiplication".into())
                })?;
            }
        }
        let mut o = Self {
            field,
            basis,
            basis_inv,
            structure,
            disc: BigInt::zero(),
            maximal,
        };
        o.disc = o.trace_gram().det()?.to_integer();
        Ok(o)
    }

    pub fn field(&self) -> &Arc<ShanksField> {
        &self.field
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// Set only by [`maximal_order`].
    pub fn is_maximal(&self) -> bool {
        self.maximal
    }

    /// Coordinates of a power-basis vector in the order basis.
    pub fn coords(&self, v: &[Rational]) -> Vec<Rational> {
        self.basis_inv.left_apply(v)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        to_ints(&self.coords(v)).is_some()
    }

    /// Product of two elements given in order coordinates.
    pub fn mul_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); 3];
        for i in 0..3 {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &ab * from_bigint(self.structure[i][j][k].clone());
                }
            }
        }
        out
    }

    /// Integer Gram `Tr(b_i b_j)`.
    pub fn trace_gram(&self) -> Matrix {
        let amb = Ambient::Shanks(self.field.clone());
        crate::lattice::gram_of(&amb, &self.basis)
    }

    pub fn trace_lattice(&self) -> TraceLattice {
        TraceLattice::new(Ambient::Shanks(self.field.clone()), self.basis.clone())
            .expect("orders are full rank")
    }

    /// `[other : self]` for an order `other ⊇ self`.
    pub fn index_in(&self, other: &CubicOrder) -> Result<BigInt> {
        let r = Rational::new(self.disc.clone(), other.disc.clone());
        crate::linalg::rational_sqrt(&r)
            .filter(|s| s.is_integer())
            .map(|s| s.to_integer())
            .ok_or_else(|| Error::Invariant("discriminant ratio is not a square".into()))
    }

    fn key(&self) -> Matrix {
        self.basis.clone()
    }
}

/// `Z[θ]` with `θ = qε`, `q` the denominator of `t`; θ has minimal polynomial
/// `x³ − px² − (pq + 3q²)x − q³` for `t = p/q`.
pub fn equation_order(t: &Rational) -> Result<CubicOrder> {
    let field = Arc::new(ShanksField::new(t.clone())?);
    let q = from_bigint(t.denom().clone());
    let basis = Matrix::from_rows(vec![
        vec![int(1), int(0), int(0)],
        vec![int(0), q.clone(), int(0)],
        vec![int(0), int(0), &q * &q],
    ]);
    CubicOrder::from_basis(field, basis, false)
}

fn mod_p(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced")
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Basis of `{a : a · M = 0}` over F_p for an `r × c` matrix `M`.
pub fn left_kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    // Row-reduce Mᵀ (c × r); its null space is the left kernel of M.
    let mut a: Vec<Vec<u64>> = (0..c).map(|j| (0..r).map(|i| m[i][j] % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let Some(piv) = (row..c).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(row, piv);
        let inv = powmod(a[row][col], p - 2, p);
        for v in a[row].iter_mut() {
            *v = mulmod(*v, inv, p);
        }
        for i in 0..c {
            if i != row && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..r {
                    let s = mulmod(f, a[row][j], p);
                    a[i][j] = (a[i][j] + p - s) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == c {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..r).filter(|j| !pivots.contains(j)) {
        let mut v = vec![0u64; r];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[i][free] % p) % p;
        }
        out.push(v);
    }
    out
}

impl CubicOrder {
    fn mul_mod_p(&self, a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; 3];
        for i in 0..3 {
            for j in 0..3 {
                let ab = mulmod(a[i], b[j], p);
                if ab == 0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + mulmod(ab, mod_p(&self.structure[i][j][k], p), p)) % p;
                }
            }
        }
        out
    }

    fn pow_mod_p(&self, a: &[u64], mut e: u64, p: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self
            .coords(&self.field.ring().one())
            .iter()
            .map(|x| mod_p(&x.to_integer(), p))
            .collect::<Vec<_>>();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod_p(&acc, &base, p);
            }
            base = self.mul_mod_p(&base, &base, p);
            e >>= 1;
        }
        acc
    }

    /// Order coordinates (integral rows) of the p-radical
    /// `{x : x^{p^k} ∈ pO}`, `p^k >= 3`.
    fn p_radical(&self, p: u64) -> Vec<Vec<BigInt>> {
        let e = if p == 2 { 4 } else { p };
        let frob: Vec<Vec<u64>> = (0..3)
            .map(|i| {
                let mut v = vec![0u64; 3];
                v[i] = 1 % p;
                self.pow_mod_p(&v, e, p)
            })
            .collect();
        let mut gens: Vec<Vec<BigInt>> = left_kernel_mod_p(&frob, p)
            .into_iter()
            .map(|v| v.into_iter().map(BigInt::from).collect())
            .collect();
        for i in 0..3 {
            let mut v = vec![BigInt::zero(); 3];
            v[i] = BigInt::from(p);
            gens.push(v);
        }
        let (h, _) = hnf_integer(&gens);
        h.into_iter().take(3).collect()
    }

    /// The ring of multipliers of the p-radical, or `None` when it equals
    /// the order (the order is p-maximal).
    fn multiplier_ring(&self, p: u64) -> Result<Option<CubicOrder>> {
        let rad = self.p_radical(p);
        let rad_power = Matrix::from_integer_rows(&rad).checked_mul(&self.basis)?;
        let rad_inv = rad_power.inverse()?;
        // system[i][3k + l]: l-th radical coordinate of b_i · r_k.
        let mut system = vec![vec![0u64; 9]; 3];
        for i in 0..3 {
            for k in 0..3 {
                let prod = self.field.ring().mul(self.basis.row(i), rad_power.row(k));
                let c = to_ints(&rad_inv.left_apply(&prod))
                    .ok_or_else(|| Error::Invariant("p-radical is not an ideal".into()))?;
                for (l, x) in c.iter().enumerate() {
                    system[i][3 * k + l] = mod_p(x, p);
                }
            }
        }
        let kernel = left_kernel_mod_p(&system, p);
        if kernel.is_empty() {
            return Ok(None);
        }
        let pq = from_bigint(BigInt::from(p));
        let mut rows = self.basis.row_vecs();
        for v in kernel {
            let c: Vec<Rational> = v.into_iter().map(|x| from_bigint(BigInt::from(x)) / &pq).collect();
            rows.push(self.basis.left_apply(&c));
        }
        let o = CubicOrder::from_basis(self.field.clone(), Matrix::from_rows(rows), false)?;
        Ok((o.key() != self.key()).then_some(o))
    }
}

/// Enlarge `o` until it is p-maximal (round-2 multiplier-ring iteration).
pub fn p_maximalize(o: &CubicOrder, p: u64) -> Result<CubicOrder> {
    let mut cur = o.clone();
    while let Some(next) = cur.multiplier_ring(p)? {
        let (mut ratio, rem) = cur.disc.div_rem(&next.disc);
        let p2 = BigInt::from(p) * BigInt::from(p);
        while rem.is_zero() && ratio > BigInt::one() && (&ratio % &p2).is_zero() {
            ratio /= &p2;
        }
        if !rem.is_zero() || !ratio.is_one() || cur.disc == next.disc {
            return Err(Error::Invariant(
                "enlargement did not divide the discriminant by a power of p²".into(),
            ));
        }
        cur = next;
    }
    Ok(cur)
}

/// Prime factorization by trial division.
pub fn factor(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    let mut n = n
        .abs()
        .to_u128()
        .ok_or_else(|| Error::TooLarge(u64::MAX))?;
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((u64::try_from(p).map_err(|_| Error::TooLarge(u64::MAX))?, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((u64::try_from(n).map_err(|_| Error::TooLarge(u64::MAX))?, 1));
    }
    Ok(out)
}

/// The ring of integers, by p-maximalization at every `p` with `p² | disc`.
pub fn maximal_order(t: &Rational) -> Result<CubicOrder> {
    let eq = equation_order(t)?;
    let mut o = eq.clone();
    for (p, k) in factor(eq.disc())? {
        if k >= 2 {
            o = p_maximalize(&o, p)?;
        }
    }
    o.maximal = true;
    if int_sqrt_exact(&o.disc).is_none() {
        return Err(Error::Invariant("field discriminant is not a square".into()));
    }
    Ok(o)
}

/// The conductor `m` with `d_F = m²`.
pub fn conductor(o: &CubicOrder) -> Result<BigInt> {
    if !o.maximal {
        return Err(Error::NotMaximal);
    }
    int_sqrt_exact(&o.disc).ok_or_else(|| Error::Invariant("d_F is not a square".into()))
}

/// A fractional ideal of a cubic order, as a Z-lattice in the power basis.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    order: Arc<CubicOrder>,
    basis: Matrix,
}

impl PartialEq for IdealLattice {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.order.basis == other.order.basis
    }
}

impl IdealLattice {
    /// The module spanned by `gens`, checked to be an ideal.
    pub fn new(order: Arc<CubicOrder>, gens: &[Vec<Rational>]) -> Result<Self> {
        let basis = span_basis(gens);
        if basis.rows() != 3 {
            return Err(Error::DependentBasis);
        }
        let l = Self { order, basis };
        if !l.is_ring_stable() {
            return Err(Error::Invariant("module is not stable under the order".into()));
        }
        Ok(l)
    }

    pub fn order(&self) -> &Arc<CubicOrder> {
        &self.order
    }

    /// Canonical (HNF) basis in the power basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let inv = self.basis.inverse().expect("full rank");
        to_ints(&inv.left_apply(v)).is_some()
    }

    pub fn is_ring_stable(&self) -> bool {
        let ring = self.order.field.ring();
        (0..3).all(|i| {
            (0..3).all(|j| self.contains(&ring.mul(self.order.basis.row(i), self.basis.row(j))))
        })
    }

    /// `N(I) = |det(I)/det(O)|`.
    pub fn norm(&self) -> Rational {
        let r = self.basis.det().expect("square") / self.order.basis.det().expect("square");
        r.abs()
    }

    /// The module generated by all pairwise products.
    pub fn product(&self, other: &IdealLattice) -> Result<IdealLattice> {
        let ring = self.order.field.ring();
        let mut gens = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                gens.push(ring.mul(self.basis.row(i), other.basis.row(j)));
            }
        }
        IdealLattice::new(self.order.clone(), &gens)
    }

    pub fn trace_lattice(&self) -> TraceLattice {
        TraceLattice::new(Ambient::Shanks(self.order.field.clone()), self.basis.clone())
            .expect("ideals are full rank")
    }

    fn sort_key(&self) -> Vec<Rational> {
        self.basis.entries().to_vec()
    }
}

/// `𝔇⁻¹`, the trace dual of the maximal order.
pub fn different_inverse(o: &Arc<CubicOrder>) -> Result<IdealLattice> {
    if !o.maximal {
        return Err(Error::NotMaximal);
    }
    let g_inv = o.trace_gram().inverse()?;
    let dual = (&g_inv * &o.basis).row_vecs();
    let d = IdealLattice::new(o.clone(), &dual)?;
    if d.norm() != Rational::new(BigInt::one(), o.disc.clone()) {
        return Err(Error::Invariant("[D⁻¹ : O] differs from d_F".into()));
    }
    Ok(d)
}

fn ideal_from_order_coords(o: &Arc<CubicOrder>, rows: &[Vec<Rational>]) -> Result<IdealLattice> {
    let gens: Vec<Vec<Rational>> = rows.iter().map(|r| o.basis.left_apply(r)).collect();
    IdealLattice::new(o.clone(), &gens)
}

/// The ideal `𝔠⁻¹` with `O ⊆ 𝔠⁻¹ ⊆ 𝔇⁻¹`, `[𝔠⁻¹ : O] = m` and `(𝔠⁻¹)² = 𝔇⁻¹`.
///
/// `𝔠⁻¹/O ≅ O/𝔠` is a cyclic O-module, so `𝔠⁻¹ = O + O·x` for some `x ∈ 𝔇⁻¹`;
/// every class of `𝔇⁻¹/O` is tried and the answer must be unique.
pub fn sqrt_different_inverse(o: &Arc<CubicOrder>) -> Result<IdealLattice> {
    let m = conductor(o)?;
    if m > BigInt::from(MAX_SQRT_CONDUCTOR) {
        return Err(Error::ConductorTooLarge(m));
    }
    let mq = from_bigint(m.clone());
    let gram = o.trace_gram();
    let g_inv = gram.inverse()?;
    let dual_key = span_basis(&g_inv.row_vecs());
    let (h, _) = hnf_integer(&gram.to_integer_rows()?);
    let bounds: Vec<i64> = (0..3)
        .map(|i| h[i][i].to_i64().expect("small conductor"))
        .collect();
    let unit: Vec<Vec<Rational>> = Matrix::identity(3).row_vecs();
    let target_index = Rational::new(BigInt::one(), m.clone());

    let mut tried = BTreeSet::new();
    let mut found: Vec<Matrix> = Vec::new();
    for a0 in 0..bounds[0] {
        for a1 in 0..bounds[1] {
            for a2 in 0..bounds[2] {
                let x = g_inv.left_apply(&[int(a0), int(a1), int(a2)]);
                if x.iter().any(|c| !(c * &mq).is_integer()) {
                    continue;
                }
                let mut gens = unit.clone();
                for e in &unit {
                    gens.push(o.mul_coords(&x, e));
                }
                let j = span_basis(&gens);
                if !tried.insert(j.to_string_rows()) {
                    continue;
                }
                if j.det()?.abs() != target_index {
                    continue;
                }
                let mut sq = Vec::with_capacity(9);
                for r in j.row_vecs() {
                    for s in j.row_vecs() {
                        sq.push(o.mul_coords(&r, &s));
                    }
                }
                if span_basis(&sq) == dual_key {
                    found.push(j);
                }
            }
        }
    }
    match found.len() {
        0 => Err(Error::NotFound),
        1 => ideal_from_order_coords(o, &found[0].row_vecs()),
        n => Err(Error::Invariant(format!("{n} square roots of the different"))),
    }
}

/// Maximal ideals of `O/2O` lifted to O, sorted by HNF basis.
///
/// There are three of norm 2 when 2 splits and the single ideal `2O` when 2
/// is inert.
pub fn primes_above_2(o: &Arc<CubicOrder>) -> Result<Vec<IdealLattice>> {
    let to_bits = |v: &[u64]| (v[0] | (v[1] << 1) | (v[2] << 2)) as usize;
    let from_bits = |b: usize| vec![(b & 1) as u64, ((b >> 1) & 1) as u64, ((b >> 2) & 1) as u64];
    // A subspace of F₂³ is stored as the 8-bit set of its members.
    let span = |gens: &[usize]| -> u8 {
        let mut set = 1u8;
        for &g in gens {
            let mut next = set;
            for v in 0..8 {
                if set >> v & 1 == 1 {
                    next |= 1 << (v ^ g);
                }
            }
            set = next;
        }
        set
    };
    let mut subspaces = BTreeSet::new();
    for a in 0..8 {
        for b in 0..8 {
            for c in 0..8 {
                subspaces.insert(span(&[a, b, c]));
            }
        }
    }
    let is_ideal = |s: u8| {
        (0..8).filter(|v| s >> v & 1 == 1).all(|v| {
            (0..3).all(|i| {
                let mut e = vec![0u64; 3];
                e[i] = 1;
                s >> to_bits(&o.mul_mod_p(&from_bits(v), &e, 2)) & 1 == 1
            })
        })
    };
    let ideals: Vec<u8> = subspaces
        .into_iter()
        .filter(|&s| s != 0xff && is_ideal(s))
        .collect();
    let maximal: Vec<u8> = ideals
        .iter()
        .copied()
        .filter(|&s| !ideals.iter().any(|&t| t != s && t & s == s))
        .collect();
    let mut out = Vec::new();
    for s in maximal {
        let mut rows: Vec<Vec<Rational>> = (0..8)
            .filter(|v| s >> v & 1 == 1)
            .map(|v| from_bits(v).into_iter().map(|x| int(x as i64)).collect())
            .collect();
        for i in 0..3 {
            let mut e = vec![int(0); 3];
            e[i] = int(2);
            rows.push(e);
        }
        out.push(ideal_from_order_coords(o, &rows)?);
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}

/// The odd ideal lattice `𝔭𝔠⁻¹` with its certificates.
#[derive(Clone, Debug)]
pub struct FakeA3 {
    pub prime: IdealLattice,
    pub lattice: TraceLattice,
    pub witness: Option<Vec<BigInt>>,
    pub disc_group: Vec<BigInt>,
    pub root_type: RootType,
    pub galois_stable: bool,
    pub dual_galois_stable: bool,
    /// `𝔭'𝔠⁻¹` for all three primes above 2, in prime order.
    pub all: Vec<TraceLattice>,
}

impl FakeA3 {
    pub fn odd(&self) -> bool {
        self.witness.is_some()
    }

    pub fn disc_group_is_z4(&self) -> bool {
        self.disc_group == [BigInt::from(1), BigInt::from(1), BigInt::from(4)]
    }

    pub fn passes(&self) -> bool {
        self.odd()
            && self.disc_group_is_z4()
            && self.root_type == RootType::Diag114
            && !self.galois_stable
            && !self.dual_galois_stable
    }
}

pub fn fake_a3(o: &Arc<CubicOrder>) -> Result<FakeA3> {
    let primes = primes_above_2(o)?;
    if primes.len() != 3 {
        return Err(Error::TwoInert);
    }
    let c_inv = sqrt_different_inverse(o)?;
    let all: Vec<TraceLattice> = primes
        .iter()
        .map(|p| p.product(&c_inv).map(|l| l.trace_lattice()))
        .collect::<Result<_>>()?;
    let lattice = all[0].clone();
    Ok(FakeA3 {
        prime: primes[0].clone(),
        witness: lattice.odd_trace_witness()?,
        disc_group: lattice.disc_group()?,
        root_type: lattice.classify()?.root_type,
        galois_stable: lattice.galois_stable(),
        dual_galois_stable: lattice.dual().galois_stable(),
        lattice,
        all,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Excluded,
    NotExcluded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Excluded => "excluded",
            Verdict::NotExcluded => "not excluded by this criterion",
        })
    }
}

/// A fractional ideal with Gram determinant `disc_order` needs
/// `disc_order ≡ d_F` modulo rational squares.
pub fn an_exclusion(d_f: &BigInt, disc_order: &BigInt) -> Result<Verdict> {
    if d_f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(if int_sqrt_exact(&(d_f * disc_order)).is_some() {
        Verdict::NotExcluded
    } else {
        Verdict::Excluded
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    #[test]
    fn equation_orders() {
        assert_eq!(equation_order(&int(1)).unwrap().disc(), &BigInt::from(169));
        assert_eq!(equation_order(&int(0)).unwrap().disc(), &BigInt::from(81));
        let o = equation_order(&frac(1, 2)).unwrap();
        assert_eq!(o.basis().row(1), &[int(0), int(2), int(0)]);
        assert_eq!(o.disc(), &BigInt::from(4 * 43 * 43));
    }

    #[test]
    fn kernel_mod_p() {
        let m = vec![vec![1, 2], vec![2, 4], vec![0, 1]];
        let k = left_kernel_mod_p(&m, 5);
        assert_eq!(k, vec![vec![3, 1, 0]]);
    }

    #[test]
    fn maximal_orders() {
        for (t, d) in [(int(1), 169), (int(0), 81), (frac(1, 2), 43 * 43)] {
            let o = maximal_order(&t).unwrap();
            assert_eq!(o.disc(), &BigInt::from(d), "t = {t}");
        }
        let eq = equation_order(&frac(1, 2)).unwrap();
        let max = maximal_order(&frac(1, 2)).unwrap();
        assert_eq!(eq.index_in(&max).unwrap(), BigInt::from(2));
        assert_eq!(
            different_inverse(&Arc::new(eq)).unwrap_err(),
            Error::NotMaximal
        );
    }

    #[test]
    fn different_and_its_root() {
        let o = Arc::new(maximal_order(&int(0)).unwrap());
        let d = different_inverse(&o).unwrap();
        assert_eq!(d.norm(), frac(1, 81));
        let c = sqrt_different_inverse(&o).unwrap();
        assert_eq!(c.norm(), frac(1, 9));
        assert_eq!(c.product(&c).unwrap().basis(), d.basis());
        assert!(c.trace_lattice().det() == int(1));
    }

    #[test]
    fn two_splitting() {
        let split = Arc::new(maximal_order(&frac(1, 2)).unwrap());
        let ps = primes_above_2(&split).unwrap();
        assert_eq!(ps.len(), 3);
        assert!(ps.iter().all(|p| p.norm() == int(2)));
        let inert = Arc::new(maximal_order(&int(1)).unwrap());
        let ps = primes_above_2(&inert).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].norm(), int(8));
        assert_eq!(fake_a3(&inert).unwrap_err(), Error::TwoInert);
    }

    #[test]
    fn exclusion_verdicts() {
        let b = BigInt::from;
        assert_eq!(an_exclusion(&b(169), &b(4)).unwrap(), Verdict::NotExcluded);
        assert_eq!(an_exclusion(&b(229), &b(4)).unwrap(), Verdict::Excluded);
        assert_eq!(an_exclusion(&b(169), &b(5)).unwrap(), Verdict::Excluded);
    }
}
