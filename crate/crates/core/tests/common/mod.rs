//! Independent oracles shared by the integration suites. Nothing here calls
//! the enumeration or classification code under test.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trace_lattice::lattice::RootType;
use trace_lattice::linalg::{frac, Matrix, Rational};
use trace_lattice::shanks::ShanksField;

pub fn int_gram(g: &Matrix) -> Vec<Vec<i64>> {
    (0..g.rows())
        .map(|i| {
            g.row(i)
                .iter()
                .map(|x| {
                    assert!(x.is_integer(), "non-integral Gram entry {x}");
                    x.to_integer().to_i64().expect("entry fits in i64")
                })
                .collect()
        })
        .collect()
}

fn qf(g: &[Vec<i64>], x: &[i64]) -> i64 {
    let n = x.len();
    let mut s = 0;
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        let mut r = 0;
        for j in 0..n {
            r += g[i][j] * x[j];
        }
        s += x[i] * r;
    }
    s
}

/// Coordinate box `|xᵢ| <= ⌊√(B · (G⁻¹)ᵢᵢ)⌋` containing every vector of norm `<= B`.
pub fn box_radii(gram: &Matrix, bound: i64) -> Vec<i64> {
    let inv = gram.inverse().expect("nonsingular Gram");
    (0..gram.rows())
        .map(|i| {
            let r: Rational = &inv[(i, i)] * Rational::from_integer(BigInt::from(bound));
            // floor(sqrt(p/q)) = floor(sqrt(floor(p/q)))
            r.floor().to_integer().sqrt().to_i64().unwrap()
        })
        .collect()
}

pub fn box_size(radii: &[i64]) -> u128 {
    radii.iter().map(|r| (2 * r + 1) as u128).product()
}

/// Pairwise size reduction: while some `2|gᵢⱼ| > gⱼⱼ`, replace `bᵢ` by
/// `bᵢ − round(gᵢⱼ/gⱼⱼ) bⱼ`. Returns `(U, U G Uᵀ)`.
pub fn pair_reduce(g: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = g.len();
    let mut g = g.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j || 2 * g[i][j].abs() <= g[j][j] {
                    continue;
                }
                let q = (2 * g[i][j] + g[j][j]).div_euclid(2 * g[j][j]);
                let gii = g[i][i] - 2 * q * g[i][j] + q * q * g[j][j];
                for k in 0..n {
                    u[i][k] -= q * u[j][k];
                    if k != i {
                        g[i][k] -= q * g[j][k];
                        g[k][i] = g[i][k];
                    }
                }
                g[i][i] = gii;
                changed = true;
            }
        }
    }
    (u, g)
}

/// Every nonzero `x` with `x G xᵀ <= bound`, found by scanning a coordinate
/// box after pairwise reduction; first nonzero coordinate positive, sorted
/// by norm then coordinates.
pub fn naive_short_vectors(gram: &Matrix, bound: i64) -> Vec<(i64, Vec<i64>)> {
    let (u, g) = pair_reduce(&int_gram(gram));
    let radii = box_radii(&Matrix::from_i64(&g), bound);
    let n = radii.len();
    let mut y: Vec<i64> = radii.iter().map(|r| -r).collect();
    let mut out = Vec::new();
    'scan: loop {
        if y.iter().any(|v| *v != 0) {
            let q = qf(&g, &y);
            if q <= bound {
                let mut x: Vec<i64> = (0..n)
                    .map(|k| (0..n).map(|i| y[i] * u[i][k]).sum())
                    .collect();
                if x.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) {
                    x.iter_mut().for_each(|v| *v = -*v);
                }
                out.push((q, x));
            }
        }
        for i in 0..n {
            if y[i] < radii[i] {
                y[i] += 1;
                continue 'scan;
            }
            y[i] = -radii[i];
        }
        break;
    }
    out.sort();
    out.dedup();
    out
}

fn det3(u: &[[i64; 3]; 3]) -> i64 {
    u[0][0] * (u[1][1] * u[2][2] - u[1][2] * u[2][1]) - u[0][1] * (u[1][0] * u[2][2] - u[1][2] * u[2][0])
        + u[0][2] * (u[1][0] * u[2][1] - u[1][1] * u[2][0])
}

fn bil(g: &[Vec<i64>], a: &[i64; 3], b: &[i64; 3]) -> i64 {
    (0..3).map(|i| (0..3).map(|j| a[i] * g[i][j] * b[j]).sum::<i64>()).sum()
}

/// Is there `U ∈ GL(3, Z)` with entries in `[-3, 3]` and `U G Uᵀ = T`?
pub fn box_equivalent(g: &[Vec<i64>], t: &[[i64; 3]; 3]) -> bool {
    let mut cands: Vec<Vec<[i64; 3]>> = vec![Vec::new(); 3];
    for a in -3..=3 {
        for b in -3..=3 {
            for c in -3..=3 {
                let v = [a, b, c];
                for (k, list) in cands.iter_mut().enumerate() {
                    if bil(g, &v, &v) == t[k][k] {
                        list.push(v);
                    }
                }
            }
        }
    }
    for r0 in &cands[0] {
        for r1 in &cands[1] {
            if bil(g, r0, r1) != t[0][1] {
                continue;
            }
            for r2 in &cands[2] {
                if bil(g, r0, r2) == t[0][2]
                    && bil(g, r1, r2) == t[1][2]
                    && det3(&[*r0, *r1, *r2]).abs() == 1
                {
                    return true;
                }
            }
        }
    }
    false
}

/// Rank-3 type by box search against the three rank-3 templates.
pub fn brute_rank3_type(gram: &Matrix) -> RootType {
    let g = int_gram(gram);
    let templates = [
        (RootType::A(3), [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]),
        (RootType::UnimodularOdd, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        (RootType::Diag114, [[1, 0, 0], [0, 1, 0], [0, 0, 4]]),
    ];
    templates
        .into_iter()
        .find(|(_, t)| box_equivalent(&g, t))
        .map_or(RootType::Other, |(r, _)| r)
}

/// A random `t = n/d` for which `f_t` is irreducible.
pub fn random_shanks_t(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let t = frac(rng.gen_range(-20..=20), rng.gen_range(1..=6));
        if nonzero && t.is_zero() {
            continue;
        }
        if ShanksField::new(t.clone()).is_ok() {
            return t;
        }
    }
}

pub fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    frac(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}
