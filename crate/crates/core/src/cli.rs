//! The `trace-lattice` command line.
//!
//! Exit codes: 0 success, 1 a certificate or check failed, 2 usage error.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::a3::{self, Family, FamilyKind};
use crate::cyclotomic::{self, CycField};
use crate::error::Error;
use crate::json::{ints, matrix, parse_matrix_value, rat, rats, LatticeJson};
use crate::lattice::{classify_gram, disc_group, Classification, RootType, TraceLattice};
use crate::linalg::{parse_rational, Matrix, Rational};
use crate::orders;
use crate::quadratic::{self, QuadAmbient};
use crate::shanks::{shanks_polynomial, FieldElement, ShanksField};

pub const THREADS_ENV: &str = "TRACE_LATTICE_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "trace-lattice",
    version,
    about = "Root lattices inside number fields under the trace form"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn bigint_arg(s: &str) -> Result<BigInt, String> {
    s.parse::<BigInt>()
        .map_err(|_| format!("invalid integer {s:?}"))
}

fn rational_list_arg(s: &str) -> Result<Vec<Rational>, String> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        out.push(parse_rational(part.trim()).map_err(|e| {
            format!("component starting at column {}: {e}", offset + 1)
        })?);
        offset += part.len() + 1;
    }
    Ok(out)
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Shanks parameter t, as an integer or p/q.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    t: Rational,
    /// Slope height bound for conic points.
    #[arg(long, default_value_t = 5)]
    height: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["gram", "input"])))]
struct ClassifyArgs {
    /// Gram matrix as a JSON array of rows (integers or "p/q" strings).
    #[arg(long, allow_hyphen_values = true)]
    gram: Option<String>,
    /// A lattice JSON document (or array of them) emitted by this tool.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("field").required(true).args(["p", "n"])))]
struct CyclotomicArgs {
    /// Odd prime p: classify the ideal of (1 - z)^(-(p-3)/2) in Q(zeta_p).
    #[arg(long)]
    p: Option<u64>,
    /// Cyclotomic index n, used with --generator.
    #[arg(long, requires = "generator")]
    n: Option<u64>,
    /// Generator as an expression in z, e.g. "(1 - z)^-2".
    #[arg(long, requires = "n", allow_hyphen_values = true)]
    generator: Option<String>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct QuadArgs {
    /// Positive integer d; non-squarefree values are reduced.
    #[arg(long)]
    d: i64,
    #[arg(long, default_value_t = 5)]
    height: u64,
    /// Search for A2 bases of bounded height instead of generating the family.
    #[arg(long)]
    falsify: bool,
    /// Use Q(sqrt(d)) instead of Q(sqrt(-d)).
    #[arg(long)]
    real: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct OrderArgs {
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    t: Rational,
    /// Include the inverse different.
    #[arg(long)]
    different: bool,
    /// Include the square root of the inverse different.
    #[arg(long = "sqrt-different")]
    sqrt_different: bool,
    /// Include the primes above 2.
    #[arg(long)]
    primes2: bool,
    /// Build and certify the odd lattice p c^-1.
    #[arg(long = "fake-a3")]
    fake_a3: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct ObstructionArgs {
    /// Field discriminant d_F.
    #[arg(long = "dF", value_parser = bigint_arg, allow_hyphen_values = true)]
    d_f: BigInt,
    /// Gram determinant of the candidate lattice.
    #[arg(long = "disc-order", value_parser = bigint_arg, allow_hyphen_values = true)]
    disc_order: BigInt,
    #[command(flatten)]
    out: Output,
}

/// A single comma-separated flag value.
type Coords = Vec<Rational>;

#[derive(Args, Debug)]
struct ReparamArgs {
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    t: Rational,
    /// Power-basis coordinates a0,a1,a2 of a trace-zero element.
    #[arg(long, value_parser = rational_list_arg, allow_hyphen_values = true)]
    alpha: Coords,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distinct A3 lattices with normal Z-bases in a Shanks field.
    GenA3(FamilyArgs),
    /// Distinct self-dual lattices with normal Z-bases in a Shanks field.
    GenSelfdual(FamilyArgs),
    /// Root type of a Gram matrix or of emitted lattices.
    Classify(ClassifyArgs),
    /// Principal ideal lattices in cyclotomic fields.
    Cyclotomic(CyclotomicArgs),
    /// A2 lattices in quadratic fields.
    QuadA2(QuadArgs),
    /// Maximal order and ideals of a Shanks field.
    Order(OrderArgs),
    /// Square-class test between d_F and a discriminant.
    Obstruction(ObstructionArgs),
    /// New Shanks parameter from a trace-zero element.
    Reparam(ReparamArgs),
}

impl Command {
    fn output(&self) -> &Output {
        match self {
            Command::GenA3(a) | Command::GenSelfdual(a) => &a.out,
            Command::Classify(a) => &a.out,
            Command::Cyclotomic(a) => &a.out,
            Command::QuadA2(a) => &a.out,
            Command::Order(a) => &a.out,
            Command::Obstruction(a) => &a.out,
            Command::Reparam(a) => &a.out,
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Math(Error),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::NotFound => Failure::Math(e),
            _ => Failure::Other(e),
        }
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) => Some(n.max(1)),
            Err(_) => {
                return usage(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}"));
            }
        },
        Err(_) => None,
    };
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => return usage(format!("cannot start worker pool: {e}")),
        },
        None => dispatch(&cli.command),
    };
    let (value, ok) = match result {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => return usage(msg),
        Err(Failure::Other(e)) => return usage(e.to_string()),
        Err(Failure::Math(e)) => {
            return Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
    let code = if ok { 0 } else { 1 };
    match &cli.command.output().json {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => usage(format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}

fn usage(msg: String) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

type Handled = Result<(Value, bool), Failure>;

fn dispatch(cmd: &Command) -> Handled {
    match cmd {
        Command::GenA3(a) => family(a, FamilyKind::A3),
        Command::GenSelfdual(a) => family(a, FamilyKind::SelfDual),
        Command::Classify(a) => classify(a),
        Command::Cyclotomic(a) => cyclotomic_cmd(a),
        Command::QuadA2(a) => quad_a2(a),
        Command::Order(a) => order(a),
        Command::Obstruction(a) => obstruction(a),
        Command::Reparam(a) => reparam(a),
    }
}

fn classification_json(c: &Classification, gram: &Matrix) -> Value {
    json!({
        "type": c.root_type.to_string(),
        "rank": c.rank,
        "det": rat(&c.det),
        "even": c.even,
        "roots": c.root_count,
        "roots_generate": c.roots_generate,
        "disc_group": disc_group(gram).map(|d| ints(&d)).unwrap_or_default(),
    })
}

fn family_json(fam: &Family) -> Value {
    let members: Vec<Value> = fam
        .members
        .iter()
        .map(|m| {
            let mut v = LatticeJson::new(
                &m.lattice,
                Some(m.certificate.classification.root_type.to_string()),
            )
            .to_value();
            let obj = v.as_object_mut().expect("object");
            obj.insert("lambda".into(), json!(rats(&m.lambda)));
            obj.insert("point".into(), json!(m.point));
            obj.insert("slope".into(), json!(m.slope.to_string()));
            obj.insert("hnf".into(), json!(matrix(&m.lattice.canonical_basis())));
            v
        })
        .collect();
    Value::Array(members)
}

fn family(a: &FamilyArgs, kind: FamilyKind) -> Handled {
    let fam = match kind {
        FamilyKind::A3 => a3::generate_family(&a.t, a.height)?,
        FamilyKind::SelfDual => a3::self_dual_family(&a.t, a.height)?,
    };
    log::info!(
        "{} lattices, {} degenerate points skipped",
        fam.members.len(),
        fam.degenerate
    );
    Ok((family_json(&fam), fam.all_certified()))
}

fn classify(a: &ClassifyArgs) -> Handled {
    if let Some(g) = &a.gram {
        let v: Value = serde_json::from_str(g)
            .map_err(|e| Failure::Usage(format!("--gram is not valid JSON: {e}")))?;
        let gram = parse_matrix_value(&v)?;
        let c = classify_gram(&gram)?;
        return Ok((classification_json(&c, &gram), true));
    }
    let path = a.input.as_ref().expect("clap enforces one source");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{} is not valid JSON: {e}", path.display())))?;
    let single = !doc.is_array();
    let items: Vec<Value> = match doc {
        Value::Array(v) => v,
        other => vec![other],
    };
    let mut ok = true;
    let mut out = Vec::new();
    for item in items {
        let item = item.get("lattice").cloned().unwrap_or(item);
        let lj: LatticeJson = serde_json::from_value(item)
            .map_err(|e| Failure::Usage(format!("not a lattice document: {e}")))?;
        let l = lj.to_lattice()?;
        let c = l.classify()?;
        let mut v = classification_json(&c, l.gram());
        let matches = lj
            .root_type
            .as_ref()
            .map_or(true, |r| *r == c.root_type.to_string());
        ok &= matches;
        let obj = v.as_object_mut().expect("object");
        obj.insert("recorded".into(), json!(lj.root_type));
        obj.insert("matches".into(), json!(matches));
        out.push(v);
    }
    let value = if single {
        out.pop().expect("one item")
    } else {
        Value::Array(out)
    };
    Ok((value, ok))
}

fn lattice_summary(l: &TraceLattice) -> Result<(Value, Option<RootType>), Error> {
    if !l.is_integral() {
        return Ok((
            json!({"integral": false, "type": null, "lattice": LatticeJson::new(l, None)}),
            None,
        ));
    }
    let c = l.classify()?;
    let mut v = classification_json(&c, l.gram());
    v.as_object_mut().expect("object").insert(
        "lattice".into(),
        LatticeJson::new(l, Some(c.root_type.to_string())).to_value(),
    );
    Ok((v, Some(c.root_type)))
}

fn cyclotomic_cmd(a: &CyclotomicArgs) -> Handled {
    if let Some(p) = a.p {
        let r = cyclotomic::verify_cyclotomic_ap(p)?;
        let expected = RootType::A(p as usize - 1);
        let (mut v, _) = lattice_summary(&r.lattice)?;
        let obj = v.as_object_mut().expect("object");
        obj.insert("p".into(), json!(p));
        obj.insert("generator".into(), json!(format!("(1 - z)^(-{})", (p - 3) / 2)));
        obj.insert("expected".into(), json!(expected.to_string()));
        return Ok((v, r.root_type == expected));
    }
    let n = a.n.expect("clap enforces --p or --n");
    let src = a.generator.as_ref().expect("clap enforces --generator");
    let field = Arc::new(CycField::new(n)?);
    let g = field.parse_element(src)?;
    let l = field.principal_ideal_lattice(&g)?;
    let (mut v, _) = lattice_summary(&l)?;
    let obj = v.as_object_mut().expect("object");
    obj.insert("n".into(), json!(n));
    obj.insert("generator".into(), json!(rats(&g)));
    Ok((v, true))
}

fn quad_a2(a: &QuadArgs) -> Handled {
    let sign = if a.real { 1 } else { -1 };
    let amb = QuadAmbient::new(a.d, sign)?;
    let reduction = amb
        .reduced_from()
        .map(|(orig, s)| json!({"input_d": orig, "square_factor": s}));
    if a.falsify {
        let r = quadratic::falsify_a2(amb.d(), a.height);
        let sols: Vec<Value> = r
            .solutions
            .iter()
            .map(|s| json!(rats(&[s.x1.clone(), s.y1.clone(), s.x2.clone(), s.y2.clone()])))
            .collect();
        let found = !r.solutions.is_empty();
        let v = json!({
            "d": amb.d(),
            "reduction": reduction,
            "height": a.height,
            "points_checked": r.points_checked,
            "solutions": sols,
            "result": if found { "found" } else { "none" },
        });
        return Ok((v, !found || amb.d() == 3));
    }
    if amb.d() != 3 {
        return Err(Failure::Usage(format!(
            "Q(sqrt({}{})) contains no A2 lattice family; use --falsify to search",
            if sign < 0 { "-" } else { "" },
            amb.d()
        )));
    }
    let fam = quadratic::a2_family(a.height, sign)?;
    let normal = quadratic::normal_a2(sign)?;
    let lattices: Vec<Value> = fam
        .iter()
        .map(|(s0, s1, branch, l)| {
            let mut v = LatticeJson::new(l, Some("A2".into())).to_value();
            let obj = v.as_object_mut().expect("object");
            obj.insert("slopes".into(), json!([s0, s1]));
            obj.insert("branch".into(), json!(branch.to_string()));
            v
        })
        .collect();
    let ok = fam.iter().all(|(_, _, _, l)| l.gram() == &quadratic::a2_gram());
    let v = json!({
        "d": 3,
        "sign": sign,
        "reduction": reduction,
        "height": a.height,
        "distinct": fam.len(),
        "lattices": lattices,
        "normal": LatticeJson::new(&normal, Some("A2".into())),
    });
    Ok((v, ok))
}

fn order(a: &OrderArgs) -> Handled {
    let eq = orders::equation_order(&a.t)?;
    let max = Arc::new(orders::maximal_order(&a.t)?);
    let mut ok = true;
    let mut v = json!({
        "t": rat(&a.t),
        "equation_order": {"basis": matrix(eq.basis()), "disc": eq.disc().to_string()},
        "maximal_order": {"basis": matrix(max.basis()), "disc": max.disc().to_string()},
        "index": eq.index_in(&max)?.to_string(),
        "conductor": orders::conductor(&max)?.to_string(),
    });
    let obj = v.as_object_mut().expect("object");
    if a.different {
        let d = orders::different_inverse(&max)?;
        obj.insert(
            "different_inverse".into(),
            json!({"basis": matrix(d.basis()), "norm": rat(&d.norm())}),
        );
    }
    if a.sqrt_different {
        let c = orders::sqrt_different_inverse(&max)?;
        obj.insert(
            "sqrt_different_inverse".into(),
            json!({
                "basis": matrix(c.basis()),
                "norm": rat(&c.norm()),
                "gram": matrix(c.trace_lattice().gram()),
            }),
        );
    }
    if a.primes2 {
        let ps = orders::primes_above_2(&max)?;
        let list: Vec<Value> = ps
            .iter()
            .map(|p| json!({"basis": matrix(p.basis()), "norm": rat(&p.norm())}))
            .collect();
        obj.insert(
            "primes_above_2".into(),
            json!({"split": ps.len() == 3, "primes": list}),
        );
    }
    if a.fake_a3 {
        let f = orders::fake_a3(&max)?;
        let witness_norm = f.witness.as_ref().map(|w| {
            let c: Vec<Rational> = w.iter().cloned().map(Rational::from_integer).collect();
            rat(&f.lattice.gram().bilinear(&c, &c))
        });
        let distinct = (0..f.all.len())
            .all(|i| (i + 1..f.all.len()).all(|j| !f.all[i].lattice_equal(&f.all[j]).unwrap_or(true)));
        ok &= f.passes() && distinct;
        obj.insert(
            "fake_a3".into(),
            json!({
                "lattice": LatticeJson::new(&f.lattice, Some(f.root_type.to_string())),
                "prime": matrix(f.prime.basis()),
                "odd_witness": f.witness.as_ref().map(|w| ints(w)),
                "odd_witness_norm": witness_norm,
                "disc_group": ints(&f.disc_group),
                "type": f.root_type.to_string(),
                "galois_stable": f.galois_stable,
                "dual_galois_stable": f.dual_galois_stable,
                "three_distinct": distinct,
                "passes": f.passes(),
            }),
        );
    }
    Ok((v, ok))
}

fn obstruction(a: &ObstructionArgs) -> Handled {
    let verdict = orders::an_exclusion(&a.d_f, &a.disc_order)?;
    Ok((
        json!({
            "d_F": a.d_f.to_string(),
            "disc_order": a.disc_order.to_string(),
            "verdict": verdict.to_string(),
        }),
        true,
    ))
}

fn reparam(a: &ReparamArgs) -> Handled {
    if a.alpha.len() != 3 {
        return Err(Failure::Usage(format!(
            "--alpha needs 3 coordinates, got {}",
            a.alpha.len()
        )));
    }
    let field = ShanksField::new(a.t.clone())?;
    let alpha = FieldElement::from_slice(&a.alpha);
    let r = field.reparametrize(&alpha)?;
    let u = &r.u;
    let residual = field.eval_poly(&shanks_polynomial(&r.t_prime), u);
    let norm = field.norm(u);
    let u_sigma = field.sigma(u);
    let identity = &(&FieldElement::one() + u) + &field.mul(u, &u_sigma);
    let generates = !u.is_rational();
    let ok = residual.is_zero() && norm == Rational::from_integer(1.into()) && identity.is_zero() && generates;
    Ok((
        json!({
            "t": rat(&a.t),
            "alpha": rats(&a.alpha),
            "t_prime": rat(&r.t_prime),
            "u": rats(&u.to_vec()),
            "checks": {
                "minpoly_residual_zero": residual.is_zero(),
                "norm_u": rat(&norm),
                "one_plus_u_plus_u_sigma_u_zero": identity.is_zero(),
                "degree": if generates { 3 } else { 1 },
            },
        }),
        ok,
    ))
}
