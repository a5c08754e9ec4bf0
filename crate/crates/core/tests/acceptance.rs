//! End-to-end acceptance suite. Prints one line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use trace_lattice::a3::{
    example_t0_basis, generate_family, self_dual_family, self_dual_transform_identity,
    to_a3_basis, trace_targets_direct, trace_targets_of, Family, TraceTarget,
};
use trace_lattice::ambient::Ambient;
use trace_lattice::cli;
use trace_lattice::json::LatticeJson;
use trace_lattice::lattice::{classify_gram, RootType, TraceLattice};
use trace_lattice::linalg::{frac, int, Matrix, Rational};
use trace_lattice::orders::{an_exclusion, equation_order, fake_a3, maximal_order, primes_above_2, Verdict};
use trace_lattice::quadratic::{a2_family, a2_gram, falsify_a2, normal_a2, normal_a2_solutions};
use trace_lattice::shanks::{shanks_polynomial, FieldElement, ShanksField};

use common::{
    box_radii, box_size, brute_rank3_type, int_gram, is_perfect_square, naive_short_vectors, pair_reduce,
    random_rational, random_shanks_t,
};

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e:?}"))
}

/// Lattices produced by criteria 1 through 7, re-checked in criterion 8.
type Collected = Vec<(String, TraceLattice)>;

fn shanks(t: Rational) -> Arc<ShanksField> {
    Arc::new(ShanksField::new(t).expect("irreducible"))
}

fn distinct(lattices: &[&TraceLattice]) -> usize {
    lattices
        .iter()
        .map(|l| l.canonical_basis())
        .collect::<HashSet<_>>()
        .len()
}

fn criterion_1(out: &mut Collected) -> Outcome {
    let field = shanks(int(0));
    let rows: Vec<Vec<Rational>> = example_t0_basis(&field).iter().map(FieldElement::to_vec).collect();
    let l = ok(TraceLattice::from_rows(Ambient::Shanks(field), rows), "beta lattice")?;
    let beta = Matrix::from_i64(&[[2, 1, 1], [1, 2, 1], [1, 1, 2]]);
    check!(l.gram() == &beta, "beta Gram {:?}", l.gram().to_string_rows());
    let l2 = ok(to_a3_basis(&l), "beta' basis")?;
    let beta_prime = Matrix::from_i64(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]);
    check!(l2.gram() == &beta_prime, "beta' Gram {:?}", l2.gram().to_string_rows());
    out.push(("t=0 beta".into(), l));
    out.push(("t=0 beta'".into(), l2));
    Ok("beta and beta' Grams exact".into())
}

fn check_a3_family(f: &Family) -> Result<(), String> {
    for m in &f.members {
        let c = &m.certificate.classification;
        check!(
            c.even && c.det == int(4) && c.root_count == 12 && c.roots_generate,
            "t={} member {} fails shape: {c:?}",
            f.t,
            m.lattice.basis().to_string_rows().concat().join(",")
        );
        check!(m.lattice.galois_stable(), "t={} member not Galois-stable", f.t);
        check!(c.root_type == RootType::A(3), "t={} member typed {}", f.t, c.root_type);
    }
    check!(f.all_certified(), "t={} certificate failure", f.t);
    Ok(())
}

fn criterion_2(out: &mut Collected) -> Outcome {
    let mut summary = Vec::new();
    for t in [int(1), int(2), int(3), int(-1), frac(1, 3)] {
        let small = ok(generate_family(&t, 5), "height 5")?;
        let big = ok(generate_family(&t, 10), "height 10")?;
        check_a3_family(&small)?;
        check_a3_family(&big)?;
        let lats: Vec<&TraceLattice> = big.members.iter().map(|m| &m.lattice).collect();
        let n10 = distinct(&lats);
        let n5 = distinct(&small.members.iter().map(|m| &m.lattice).collect::<Vec<_>>());
        check!(n10 == big.members.len(), "t={t}: duplicate lattices in output");
        check!(n10 >= 10, "t={t}: only {n10} lattices at height 10");
        check!(n5 < n10, "t={t}: counts not increasing ({n5} -> {n10})");
        summary.push(format!("t={t}: {n5}->{n10}"));
        for (i, m) in big.members.iter().enumerate() {
            out.push((format!("A3 t={t} #{i}"), m.lattice.clone()));
        }
    }
    Ok(summary.join(", "))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e44);
    for k in 0..100 {
        let t = random_shanks_t(&mut rng, true);
        let field = ShanksField::new(t.clone()).expect("valid");
        let lambda = [
            random_rational(&mut rng, 9, 5),
            random_rational(&mut rng, 9, 5),
            random_rational(&mut rng, 9, 5),
        ];
        let closed = ok(trace_targets_of(&t, &lambda), "closed form")?;
        let direct = ok(trace_targets_direct(&field, &lambda), "direct")?;
        check!(
            closed == direct,
            "case {k}: t={t} lambda={lambda:?}: closed {closed:?} vs direct {direct:?}"
        );
    }
    Ok("100/100 exact agreements".into())
}

fn criterion_4(out: &mut Collected) -> Outcome {
    let f = ok(self_dual_family(&int(1), 5), "self-dual family")?;
    let lats: Vec<&TraceLattice> = f.members.iter().map(|m| &m.lattice).collect();
    let n = distinct(&lats);
    check!(n >= 8, "only {n} self-dual lattices");
    for m in &f.members {
        check!(m.lattice.gram().is_identity(), "Gram is not the identity");
        check!(m.lattice.det() == int(1), "not unimodular");
    }
    check!(f.all_certified(), "certificate failure");
    let j = Matrix::from_i64(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]);
    let jij = &(&j * &Matrix::identity(3)) * &j;
    check!(jij == TraceTarget::a3().gram(), "J I J = {:?}", jij.to_string_rows());
    check!(self_dual_transform_identity(), "library identity check failed");
    for (i, m) in f.members.iter().enumerate() {
        out.push((format!("self-dual #{i}"), m.lattice.clone()));
    }
    Ok(format!("{n} unimodular lattices; J·I·J identity holds"))
}

fn run_cli(args: &[&str]) -> Result<Value, String> {
    let mut argv = vec!["trace-lattice"];
    argv.extend_from_slice(args);
    let o = cli::run(argv);
    check!(o.code == 0, "{args:?} exited {}: {}", o.code, o.stderr);
    serde_json::from_str(&o.stdout).map_err(|e| format!("{args:?}: bad JSON: {e}"))
}

fn criterion_5(out: &mut Collected) -> Outcome {
    let mut p11 = Duration::ZERO;
    for p in [3u64, 5, 7, 11] {
        let start = Instant::now();
        let v = run_cli(&["cyclotomic", "--p", &p.to_string()])?;
        let elapsed = start.elapsed();
        if p == 11 {
            p11 = elapsed;
        }
        let expected = format!("A{}", p - 1);
        check!(v["type"] == expected.as_str(), "p={p}: type {}", v["type"]);
        let lj: LatticeJson = ok(serde_json::from_value(v["lattice"].clone()), "lattice JSON")?;
        let l = ok(lj.to_lattice(), "lattice rebuild")?;
        check!(l.rank() == (p - 1) as usize, "p={p}: rank {}", l.rank());
        out.push((format!("cyclotomic p={p}"), l));
    }
    check!(p11 < Duration::from_secs(60), "p=11 took {p11:?}");
    Ok(format!("A2, A4, A6, A10; p=11 in {:.2}s", p11.as_secs_f64()))
}

fn criterion_6(out: &mut Collected) -> Outcome {
    let fam = ok(a2_family(10, -1), "A2 family")?;
    let lats: Vec<&TraceLattice> = fam.iter().map(|(_, _, _, l)| l).collect();
    let n = distinct(&lats);
    check!(n == fam.len() && n >= 10, "{n} distinct of {}", fam.len());
    for l in &lats {
        check!(l.gram() == &a2_gram(), "non-A2 Gram {:?}", l.gram().to_string_rows());
    }
    let cli_v = run_cli(&["quad-a2", "--d", "3", "--height", "10"])?;
    check!(
        cli_v["distinct"].as_u64() == Some(n as u64),
        "CLI distinct count {} vs {n}",
        cli_v["distinct"]
    );
    for d in [1u64, 2, 5, 6, 7] {
        let r = falsify_a2(d, 50);
        check!(r.solutions.is_empty(), "d={d}: {} solutions", r.solutions.len());
        check!(r.points_checked > 0, "d={d}: no points examined");
    }
    let normal = ok(normal_a2(-1), "normal lattice")?;
    let search = falsify_a2(3, 10);
    let found: Vec<_> = search.solutions.iter().filter(|s| s.is_normal()).cloned().collect();
    check!(!found.is_empty(), "search found no normal solution");
    let mut expected = normal_a2_solutions();
    let mut got = found.clone();
    expected.sort_by_key(|s| format!("{s:?}"));
    got.sort_by_key(|s| format!("{s:?}"));
    check!(got == expected, "normal solutions differ: {got:?}");
    let amb = Ambient::Quadratic(trace_lattice::quadratic::QuadAmbient::new(3, -1).expect("d=3"));
    for s in &found {
        let l = ok(TraceLattice::from_rows(amb.clone(), s.basis_rows()), "normal basis")?;
        check!(ok(l.lattice_equal(&normal), "compare")?, "second normal lattice {s:?}");
    }
    for (i, l) in lats.iter().enumerate() {
        out.push((format!("A2 #{i}"), (*l).clone()));
    }
    out.push(("A2 normal".into(), normal));
    Ok(format!(
        "{n} A2 lattices; falsifier empty for d=1,2,5,6,7 at height 50; {} normal solutions, one lattice",
        found.len()
    ))
}

fn criterion_7(out: &mut Collected) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3_10);
    let a4_det = BigInt::from(5);
    for _ in 0..20 {
        let t = random_shanks_t(&mut rng, false);
        let o = ok(maximal_order(&t), "maximal order")?;
        let eq = ok(equation_order(&t), "equation order")?;
        let d_f = o.disc().clone();
        check!(is_perfect_square(&d_f), "t={t}: d_F={d_f} not a square");
        let idx = ok(eq.index_in(&o), "index")?;
        check!(eq.disc() == &(&idx * &idx * &d_f), "t={t}: index-discriminant law fails");
        check!(
            ok(an_exclusion(&d_f, &a4_det), "exclusion")? == Verdict::Excluded,
            "t={t}: A4 not excluded"
        );
    }
    check!(
        ok(an_exclusion(&BigInt::from(169), &a4_det), "exclusion")? == Verdict::Excluded,
        "(169, A4) not excluded"
    );
    check!(
        ok(an_exclusion(&BigInt::from(229), &BigInt::from(4)), "exclusion")? == Verdict::Excluded,
        "(229, A3) not excluded"
    );
    let o = Arc::new(ok(maximal_order(&frac(1, 2)), "t=1/2 order")?);
    check!(ok(primes_above_2(&o), "primes above 2")?.len() == 3, "2 does not split at t=1/2");
    let fake = ok(fake_a3(&o), "fake A3")?;
    let w = fake.witness.clone().ok_or("no odd witness")?;
    let wv: Vec<Rational> = w.iter().cloned().map(Rational::from_integer).collect();
    let norm = fake.lattice.gram().bilinear(&wv, &wv);
    check!(norm.is_integer() && norm.to_integer() % 2 != BigInt::zero(), "witness norm {norm} is even");
    check!(fake.disc_group_is_z4(), "discriminant group {:?}", fake.disc_group);
    check!(fake.root_type == RootType::Diag114, "type {}", fake.root_type);
    check!(!fake.galois_stable, "fake lattice is Galois-stable");
    check!(fake.passes(), "certificate bundle fails");
    for (i, l) in fake.all.iter().enumerate() {
        out.push((format!("fake A3 #{i}"), l.clone()));
    }
    Ok(format!("20 square d_F; both exclusions; fake A3 at t=1/2 (witness norm {norm})"))
}

fn random_rank3_gram(rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let a = rng.gen_range(1..=4);
        let b = rng.gen_range(1..=4);
        let c = rng.gen_range(1..=4);
        let (x, y, z) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let g = Matrix::from_i64(&[[a, x, y], [x, b, z], [y, z, c]]);
        if g.is_positive_definite() && g.det().is_ok_and(|d| d <= int(9)) {
            return g;
        }
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> Matrix {
    let mut u = Matrix::identity(3);
    for _ in 0..2 {
        let i = rng.gen_range(0..3);
        let j = (i + rng.gen_range(1..3)) % 3;
        let mut e = Matrix::identity(3);
        e[(i, j)] = int(if rng.gen_bool(0.5) { 1 } else { -1 });
        u = &u * &e;
    }
    if rng.gen_bool(0.5) {
        u.swap_rows(0, 2);
    }
    u
}

fn criterion_8(collected: &Collected) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8);
    let templates = [
        Matrix::from_i64(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]),
        Matrix::identity(3),
        Matrix::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 4]]),
    ];
    let mut tally = std::collections::BTreeMap::new();
    for k in 0..50 {
        let g = if k < 21 {
            let u = random_unimodular(&mut rng);
            &(&u * &templates[k % 3]) * &u.transpose()
        } else {
            random_rank3_gram(&mut rng)
        };
        let got = ok(classify_gram(&g), "classify")?.root_type;
        let want = brute_rank3_type(&g);
        check!(got == want, "Gram {:?}: classifier {got}, box search {want}", int_gram(&g));
        *tally.entry(want.to_string()).or_insert(0) += 1;
    }
    let mut vectors = 0usize;
    for (label, l) in collected {
        let bound: i64 = if l.rank() <= 3 { 4 } else { 2 };
        let (_, reduced) = pair_reduce(&int_gram(l.gram()));
        let radii = box_radii(&Matrix::from_i64(&reduced), bound);
        check!(box_size(&radii) < 200_000_000, "{label}: box {radii:?} too large");
        let naive = naive_short_vectors(l.gram(), bound);
        let mut fp: Vec<(i64, Vec<i64>)> = ok(l.short_vectors(&int(bound)), "short vectors")?
            .into_iter()
            .map(|v| {
                let mut c: Vec<i64> = v.coords.iter().map(|x| x.to_i64().unwrap()).collect();
                if c.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
                    c.iter_mut().for_each(|x| *x = -*x);
                }
                (v.norm.to_integer().to_i64().unwrap(), c)
            })
            .collect();
        fp.sort();
        check!(fp == naive, "{label}: enumeration {} vs box {}", fp.len(), naive.len());
        vectors += naive.len();
    }
    Ok(format!(
        "50 Grams agree {tally:?}; {} lattices, {vectors} short vectors agree",
        collected.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9);
    let mut runs = 0;
    for t in [int(0), int(1), int(2), int(-1), frac(1, 3)] {
        let field = ShanksField::new(t.clone()).expect("valid");
        let tr = |e: FieldElement| field.trace(&e);
        let (tr1, tre, tre2) = (
            tr(FieldElement::one()),
            tr(FieldElement::epsilon()),
            tr(field.mul(&FieldElement::epsilon(), &FieldElement::epsilon())),
        );
        for _ in 0..20 {
            let (a1, a2) = loop {
                let a1 = random_rational(&mut rng, 7, 4);
                let a2 = random_rational(&mut rng, 7, 4);
                if !(a1.is_zero() && a2.is_zero()) {
                    break (a1, a2);
                }
            };
            let a0 = -(&a1 * &tre + &a2 * &tre2) / &tr1;
            let alpha = FieldElement::new(a0, a1, a2);
            check!(field.trace(&alpha).is_zero(), "alpha not trace zero");
            let r = ok(field.reparametrize(&alpha), "reparametrize")?;
            let u = ok(field.div(&field.sigma(&alpha), &alpha), "sigma(alpha)/alpha")?;
            check!(u == r.u, "t={t}: u differs");
            let residual = field.eval_poly(&shanks_polynomial(&r.t_prime), &u);
            check!(residual.is_zero(), "t={t}: f_t'(u) = {residual:?}");
            let powers = Matrix::from_rows(vec![
                FieldElement::one().to_vec(),
                u.to_vec(),
                field.mul(&u, &u).to_vec(),
            ]);
            check!(!ok(powers.det(), "det")?.is_zero(), "t={t}: Q(u) has degree < 3");
            runs += 1;
        }
    }
    Ok(format!("{runs} reparametrizations exact, all of degree 3"))
}

fn main() {
    let started = Instant::now();
    let mut collected: Collected = Vec::new();
    let mut failures = 0;
    let mut report = |n: usize, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {n}: PASS ({secs:.1}s) {msg}"),
            Err(msg) => {
                failures += 1;
                println!("criterion {n}: FAIL ({secs:.1}s) {msg}");
            }
        }
    };
    report(1, &mut || criterion_1(&mut collected));
    report(2, &mut || criterion_2(&mut collected));
    report(3, &mut criterion_3);
    report(4, &mut || criterion_4(&mut collected));
    report(5, &mut || criterion_5(&mut collected));
    report(6, &mut || criterion_6(&mut collected));
    report(7, &mut || criterion_7(&mut collected));
    let snapshot = collected.clone();
    report(8, &mut || criterion_8(&snapshot));
    report(9, &mut criterion_9);
    println!(
        "acceptance: {} of 9 criteria passed in {:.1}s",
        9 - failures,
        started.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
