//! `arith-tutte`: compute and cross-check Tutte-type polynomials from JSON inputs.
//!
//! Exit codes: 0 success, 1 identity or axiom failure, 2 parse or usage error,
//! 3 precondition not met or identity not applicable, 4 resource cap hit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arith_tutte::abelian::{build_arithmetic_matroid, VectorList};
use arith_tutte::axioms::{check_a1, check_a2, check_matroid, check_p, check_polymatroid, classify, AxiomReport};
use arith_tutte::builders::{bollobas_riordan, check_symmetric_exchange, graph_to_vectorlist, to_ranked_set};
use arith_tutte::corpus;
use arith_tutte::formats::{parse_input, ranked_set_to_json, Input, ParseOptions};
use arith_tutte::oracles::{
    count_colorings, count_flows, count_lattice_points, ehrhart, eval_univariate, scale_list,
    verify_corollary7, verify_corollary8, verify_face_decomposition, verify_theorem6, zonotope_hrep, OracleReport,
};
use arith_tutte::poly::{parse_rational, rational_to_string};
use arith_tutte::ranked::{
    verify_associativity_all, verify_lemma13, verify_theorem1, verify_theorem2, verify_zeta_inverse, MAX_GROUND,
};
use arith_tutte::{aritutte, tutte, Error, RankedSet, TutteFunction};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "arith-tutte", version, about = "Exact arithmetic Tutte polynomials and their convolution identities")]
struct Cli {
    /// Seed for randomized corpora (`verify --random`).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Lower the ground-set size cap.
    #[arg(long, global = true)]
    max_ground: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a polynomial or one of its values.
    Compute {
        #[arg(long, value_enum)]
        poly: PolyKind,
        #[arg(long)]
        input: PathBuf,
        /// Evaluate at `x,y` (exact rationals).
        #[arg(long, value_name = "X,Y")]
        eval: Option<String>,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Check an identity on an input or on a random corpus.
    #[command(group(ArgGroup::new("source").required(true).args(["input", "random"])))]
    Verify {
        #[arg(long, value_enum)]
        identity: Identity,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Check this many random cases instead of an input file.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        /// Second multiplicity for theorem2 (defaults to the first, giving m²).
        #[arg(long = "with", value_name = "FILE")]
        with: Option<PathBuf>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Check axioms.
    Validate {
        #[arg(long, value_enum)]
        axioms: Axioms,
        #[arg(long)]
        input: PathBuf,
    },
    /// Lattice points, Ehrhart polynomial and H-representation of the zonotope.
    #[command(group(ArgGroup::new("what").required(true).args(["points", "interior", "ehrhart", "hrep"])))]
    Zonotope {
        #[arg(long)]
        points: bool,
        #[arg(long)]
        interior: bool,
        #[arg(long)]
        ehrhart: bool,
        #[arg(long)]
        hrep: bool,
        /// Dilation factor.
        #[arg(long, value_name = "Q")]
        dilate: Option<i64>,
        #[arg(long)]
        input: PathBuf,
    },
    /// Brute-force flow or coloring counts.
    #[command(group(ArgGroup::new("what").required(true).args(["flows", "colorings"])))]
    Count {
        #[arg(long, value_name = "Q")]
        flows: Option<u64>,
        #[arg(long, value_name = "Q")]
        colorings: Option<u64>,
        #[arg(long)]
        input: PathBuf,
    },
    /// Convert an input to ranked-set JSON.
    Build {
        #[arg(long, value_enum)]
        from: Source,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    Tutte,
    Aritutte,
    BollobasRiordan,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Identity {
    Theorem1,
    Theorem2,
    ZetaInverse,
    Associativity,
    Lemma13,
    Theorem6,
    Corollary7,
    Corollary8,
    FaceDecomposition,
}

#[derive(Clone, Copy, ValueEnum)]
enum Axioms {
    Matroid,
    Polymatroid,
    #[value(name = "P")]
    P,
    #[value(name = "A1")]
    A1,
    #[value(name = "A2")]
    A2,
    Classify,
    DeltaExchange,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Vectors,
    Graph,
    Delta,
}

/// A finished command: text for stdout and the exit code.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }

    fn json(v: &Value, passed: bool) -> Self {
        Outcome { text: pretty(v), code: if passed { 0 } else { 1 } }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Argument(_) => 2,
        Error::Precondition(_) | Error::Domain(_) | Error::Unsupported(_) => 3,
        Error::Resource(_) => 4,
    }
}

struct Ctx {
    opts: ParseOptions,
    seed: u64,
}

impl Ctx {
    fn read(&self, path: &Path, lenient: bool) -> Result<Input, Error> {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        parse_input(&text, ParseOptions { lenient, ..self.opts })
    }
}

fn ranked_of(input: &Input) -> Result<RankedSet, Error> {
    match input {
        Input::RankedSet(m) => Ok(m.clone()),
        Input::Vectors(x) => build_arithmetic_matroid(x),
        Input::Graph { graph, orientation } => build_arithmetic_matroid(&graph_to_vectorlist(graph, orientation.as_deref())?),
        Input::Delta(d) => to_ranked_set(d),
    }
}

fn vectors_of(input: &Input) -> Result<VectorList, Error> {
    match input {
        Input::Vectors(x) => Ok(x.clone()),
        Input::Graph { graph, orientation } => graph_to_vectorlist(graph, orientation.as_deref()),
        other => Err(Error::Precondition(format!("this command needs a vector list or graph, got {}", other.kind()))),
    }
}

fn parse_point(s: &str) -> Result<(BigRational, BigRational), Error> {
    let (x, y) = s.split_once(',').ok_or_else(|| Error::Parse(format!("--eval expects X,Y, got {s:?}")))?;
    Ok((parse_rational(x.trim())?, parse_rational(y.trim())?))
}

fn polynomial_text(t: &TutteFunction) -> String {
    match t.expanded() {
        Ok(p) => p.to_string(),
        Err(_) => format!("shifted: {}", t.shifted()),
    }
}

fn compute(ctx: &Ctx, poly: PolyKind, input: &Path, eval: Option<&str>, as_json: bool) -> Result<Outcome, Error> {
    let input = ctx.read(input, false)?;
    let t = match poly {
        PolyKind::Tutte => tutte(&ranked_of(&input)?),
        PolyKind::Aritutte => aritutte(&ranked_of(&input)?),
        PolyKind::BollobasRiordan => match &input {
            Input::Delta(d) => bollobas_riordan(d)?,
            other => return Err(Error::Precondition(format!("bollobas-riordan needs a delta input, got {}", other.kind()))),
        },
    };
    if let Some(point) = eval {
        let (x, y) = parse_point(point)?;
        let v = rational_to_string(&t.eval(&x, &y)?);
        return Ok(Outcome::ok(if as_json { pretty(&json!({ "value": v })) } else { v }));
    }
    Ok(Outcome::ok(if as_json { pretty(&to_value(&t)) } else { polynomial_text(&t) }))
}

/// Reports from one input; `None` in the flag means "not applicable".
fn verify_one(
    identity: Identity,
    input: &Input,
    second: Option<&RankedSet>,
    p: Option<u64>,
    q: Option<u64>,
) -> Result<(Value, Option<bool>), Error> {
    let need = |v: Option<u64>, name: &str| v.ok_or_else(|| Error::Argument(format!("--{name} is required for this identity")));
    let oracle = |reports: Vec<OracleReport>| {
        let applicable = reports.iter().all(OracleReport::is_applicable);
        let equal = reports.iter().all(|r| r.equal);
        (to_value(&reports), applicable.then_some(equal))
    };
    Ok(match identity {
        Identity::Theorem1 => {
            let r = verify_theorem1(&ranked_of(input)?)?;
            (to_value(&r), Some(r.equal))
        }
        Identity::Theorem2 => {
            let m1 = ranked_of(input)?;
            let m2 = second.cloned().unwrap_or_else(|| m1.clone());
            let r = verify_theorem2(&m1, &m2)?;
            (to_value(&r), Some(r.equal))
        }
        Identity::ZetaInverse => {
            let r = verify_zeta_inverse(&ranked_of(input)?)?;
            (to_value(&r), Some(r.equal))
        }
        Identity::Associativity => {
            let r = verify_associativity_all(&ranked_of(input)?)?;
            (to_value(&r), Some(r.equal))
        }
        Identity::Lemma13 => {
            let m = ranked_of(input)?;
            let reports = [verify_lemma13(&m, false)?, verify_lemma13(&m, true)?];
            let equal = reports.iter().all(|r| r.equal);
            (to_value(&reports), Some(equal))
        }
        Identity::Theorem6 => oracle(verify_theorem6(&vectors_of(input)?, need(q, "q")?)?),
        Identity::Corollary7 => oracle(vec![verify_corollary7(&vectors_of(input)?, need(p, "p")?, need(q, "q")?)?]),
        Identity::Corollary8 => oracle(vec![verify_corollary8(&vectors_of(input)?, need(p, "p")?, need(q, "q")?)?]),
        Identity::FaceDecomposition => {
            let r = verify_face_decomposition(&vectors_of(input)?)?;
            (to_value(&r), Some(r.equal))
        }
    })
}

fn outcome_of(report: Value, status: Option<bool>) -> Outcome {
    match status {
        Some(equal) => Outcome::json(&report, equal),
        None => Outcome { text: pretty(&report), code: 3 },
    }
}

/// Random inputs matching the identity's domain.
fn random_case(identity: Identity, rng: &mut corpus::CorpusRng) -> (Input, Option<RankedSet>) {
    match identity {
        Identity::Theorem1 => (Input::RankedSet(corpus::random_ranked_set(rng, 7)), None),
        Identity::Theorem2 => {
            let m = corpus::random_ranked_set(rng, 6);
            let m2 = corpus::with_random_mult(rng, &m);
            (Input::RankedSet(m), Some(m2))
        }
        Identity::ZetaInverse | Identity::Associativity | Identity::Lemma13 => {
            (Input::RankedSet(corpus::random_ranked_set(rng, 5)), None)
        }
        Identity::Theorem6 | Identity::Corollary7 | Identity::Corollary8 => {
            (Input::Vectors(corpus::random_torsion_list(rng, 2, 4)), None)
        }
        Identity::FaceDecomposition => (Input::Vectors(corpus::random_lattice_list(rng, 3, 5, 2)), None),
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    ctx: &Ctx,
    identity: Identity,
    input: Option<&Path>,
    random: Option<usize>,
    with: Option<&Path>,
    p: Option<u64>,
    q: Option<u64>,
) -> Result<Outcome, Error> {
    if let Some(n) = random {
        let mut rng = corpus::rng(ctx.seed);
        let (mut checked, mut skipped, mut failures) = (0usize, 0usize, Vec::new());
        for case in 0..n {
            let (input, second) = random_case(identity, &mut rng);
            // oracle identities draw q (and p) from 1..=8 when not given
            let (p_case, q_case) = (p.or(Some(1 + (case as u64 * 3) % 8)), q.or(Some(1 + (case as u64 * 5) % 8)));
            match verify_one(identity, &input, second.as_ref(), p_case, q_case)? {
                (_, None) => skipped += 1,
                (_, Some(true)) => checked += 1,
                (report, Some(false)) => failures.push(json!({ "case": case, "report": report })),
            }
        }
        let summary = json!({
            "identity": identity.to_possible_value().expect("named").get_name(),
            "seed": ctx.seed,
            "cases": n,
            "checked": checked,
            "not_applicable": skipped,
            "failures": failures,
        });
        return Ok(Outcome::json(&summary, failures.is_empty()));
    }
    let input = ctx.read(input.expect("clap enforces a source"), false)?;
    let second = match with {
        Some(path) => Some(ranked_of(&ctx.read(path, false)?)?),
        None => None,
    };
    let (report, status) = verify_one(identity, &input, second.as_ref(), p, q)?;
    Ok(outcome_of(report, status))
}

fn validate(ctx: &Ctx, axioms: Axioms, input: &Path) -> Result<Outcome, Error> {
    let input = ctx.read(input, true)?;
    let report: AxiomReport = match axioms {
        Axioms::DeltaExchange => match &input {
            Input::Delta(d) => check_symmetric_exchange(d),
            other => return Err(Error::Precondition(format!("delta-exchange needs a delta input, got {}", other.kind()))),
        },
        Axioms::Classify => {
            let classes = classify(&ranked_of(&input)?);
            return Ok(Outcome::ok(pretty(&json!({ "classes": to_value(&classes) }))));
        }
        Axioms::Matroid => check_matroid(&ranked_of(&input)?),
        Axioms::Polymatroid => check_polymatroid(&ranked_of(&input)?),
        Axioms::P => check_p(&ranked_of(&input)?)?,
        Axioms::A1 => check_a1(&ranked_of(&input)?)?,
        Axioms::A2 => check_a2(&ranked_of(&input)?)?,
    };
    Ok(Outcome::json(&to_value(&report), report.passed))
}

fn zonotope(ctx: &Ctx, what: [bool; 4], dilate: Option<i64>, input: &Path) -> Result<Outcome, Error> {
    let [points, interior, ehr, hrep] = what;
    let mut x = vectors_of(&ctx.read(input, false)?)?;
    if ehr {
        let coeffs = ehrhart(&x)?;
        let qs: Vec<i64> = match dilate {
            Some(q) => vec![q],
            None => vec![1, 2, 3],
        };
        let mut all = true;
        let mut checks = Vec::new();
        for q in qs {
            if q < 1 {
                return Err(Error::Argument("--dilate must be positive".into()));
            }
            let poly = eval_univariate(&coeffs, &BigRational::from_integer(BigInt::from(q)));
            let count = BigRational::from_integer(count_lattice_points(&scale_list(&x, q)?, false)?);
            all &= poly == count;
            checks.push(json!({
                "q": q,
                "polynomial": rational_to_string(&poly),
                "count": rational_to_string(&count),
                "equal": poly == count,
            }));
        }
        let coefficients: Vec<String> = coeffs.iter().map(rational_to_string).collect();
        return Ok(Outcome::json(&json!({ "coefficients": coefficients, "dilates": checks }), all));
    }
    if let Some(q) = dilate {
        if q < 1 {
            return Err(Error::Argument("--dilate must be positive".into()));
        }
        x = scale_list(&x, q)?;
    }
    if hrep {
        return Ok(Outcome::ok(pretty(&to_value(&zonotope_hrep(&x)?))));
    }
    debug_assert!(points || interior);
    Ok(Outcome::ok(count_lattice_points(&x, interior)?.to_string()))
}

fn count(ctx: &Ctx, flows: Option<u64>, colorings: Option<u64>, input: &Path) -> Result<Outcome, Error> {
    let x = vectors_of(&ctx.read(input, false)?)?;
    let n = match (flows, colorings) {
        (Some(q), _) => count_flows(&x, q)?,
        (None, Some(q)) => count_colorings(&x, q)?,
        (None, None) => unreachable!("clap requires one of --flows, --colorings"),
    };
    Ok(Outcome::ok(n.to_string()))
}

fn build(ctx: &Ctx, from: Source, input: &Path, out: Option<&Path>) -> Result<Outcome, Error> {
    let input = ctx.read(input, false)?;
    let expected = match from {
        Source::Vectors => "vectors",
        Source::Graph => "graph",
        Source::Delta => "delta",
    };
    if input.kind() != expected {
        return Err(Error::Parse(format!("--from {expected} but the input has kind {}", input.kind())));
    }
    let text = pretty(&ranked_set_to_json(&ranked_of(&input)?));
    match out {
        Some(path) => {
            fs::write(path, format!("{text}\n"))
                .map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let max_ground = cli.max_ground.map_or(MAX_GROUND, |n| n.min(MAX_GROUND));
    let ctx = Ctx { opts: ParseOptions { lenient: false, max_ground }, seed: cli.seed };
    match cli.command {
        Command::Compute { poly, input, eval, json } => compute(&ctx, poly, &input, eval.as_deref(), json),
        Command::Verify { identity, input, random, with, p, q } => {
            verify(&ctx, identity, input.as_deref(), random, with.as_deref(), p, q)
        }
        Command::Validate { axioms, input } => validate(&ctx, axioms, &input),
        Command::Zonotope { points, interior, ehrhart, hrep, dilate, input } => {
            zonotope(&ctx, [points, interior, ehrhart, hrep], dilate, &input)
        }
        Command::Count { flows, colorings, input } => count(&ctx, flows, colorings, &input),
        Command::Build { from, input, out } => build(&ctx, from, &input, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            if !outcome.text.is_empty() {
                // a closed pipe downstream is not an error of ours
                let _ = writeln!(std::io::stdout(), "{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
