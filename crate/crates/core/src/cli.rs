//! The `biasalg` command line: JSON problem in, JSON report out.

use std::io::Read;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bias::BiasAlgebra;
use crate::checks::{self, Check};
use crate::corpus;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, PrimeField, Rationals};
use crate::input::{Problem, ProblemInput};
use crate::lift::{extended_lift, lift_by_modular_cut, lift_dual_hyperplanes};
use crate::linear_class::Verdict;
use crate::subset::Subset;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "biasalg", version, about = "Bias algebras of matroids with a linear class of circuits")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,

    /// Problem file, or `-` for stdin. `suite` runs the bundled corpus when omitted.
    #[arg(long, global = true)]
    pub input: Option<String>,

    /// Field for the oracle and for matrix entries: `Q` or `GF:p`. Overrides the input.
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,

    #[arg(long, global = true, default_value_t = 2)]
    pub json_indent: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the circuit axioms and linearity of the class.
    Validate,
    /// Circuits of the extended lift, with provenance.
    Lift,
    /// The NBC basis by degree.
    Nbc,
    /// NBC dimensions against the oracle quotient.
    Dim,
    /// Expand `e_X` in the NBC basis and cross-check each coefficient.
    Expand {
        /// Comma-separated elements, e.g. `2,3`; empty for the unit.
        #[arg(long)]
        set: String,
    },
    /// The matrix of flag functionals on the NBC basis.
    DualCheck,
    /// Deletion-contraction exact sequence at one element.
    Sequence {
        #[arg(long)]
        element: usize,
    },
    /// Graded dimensions as a polynomial.
    Poincare,
    /// Every invariant check.
    Suite {
        #[arg(long, default_value_t = 0)]
        relabel_seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Lift => "lift",
            Command::Nbc => "nbc",
            Command::Dim => "dim",
            Command::Expand { .. } => "expand",
            Command::DualCheck => "dual-check",
            Command::Sequence { .. } => "sequence",
            Command::Poincare => "poincare",
            Command::Suite { .. } => "suite",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: Option<String>,
    pub results: Value,
    pub warnings: Vec<String>,
    pub timing_ms: f64,
}

impl Report {
    pub fn render(&self, indent: usize) -> String {
        let value = serde_json::to_value(self).expect("serializable");
        if indent == 0 {
            return serde_json::to_string(&value).expect("serializable");
        }
        let pad = vec![b' '; indent];
        let formatter = serde_json::ser::PrettyFormatter::with_indent(&pad);
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, formatter);
        value.serialize(&mut ser).expect("serializable");
        String::from_utf8(out).expect("utf-8 JSON")
    }
}

struct Outcome {
    results: Value,
    passed: bool,
}

impl Outcome {
    fn ok(results: Value) -> Self {
        Outcome { results, passed: true }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::OutOfRange { .. } => "out_of_range",
        Error::AxiomViolation { .. } => "axiom_violation",
        Error::NotACircuit(_) => "not_a_circuit",
        Error::NotAHyperplane(_) => "not_a_hyperplane",
        Error::NotIndependent(_) => "not_independent",
        Error::NotInClosure { .. } => "not_in_closure",
        Error::NotInContraction { .. } => "not_in_contraction",
        Error::Overlap { .. } => "overlap",
        Error::LoopContraction(_) => "loop_contraction",
        Error::LoopPresent(_) => "loop_present",
        Error::SizeMismatch { .. } => "size_mismatch",
        Error::HypothesisViolated(_) => "hypothesis_violated",
        Error::TooLarge(_) => "too_large",
        Error::Input(_) => "input",
    }
}

fn diagnostic(e: &Error) -> Value {
    json!({ "error": { "kind": error_kind(e), "message": e.to_string() } })
}

fn read_input(path: &str) -> Result<ProblemInput> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")))?
    };
    ProblemInput::from_json(&text)
}

/// Execute one command. Returns the report and the process exit code.
pub fn run(args: &Args) -> (Report, i32) {
    run_with_input(args, None)
}

/// Like [`run`], but with the problem JSON supplied directly instead of
/// through `--input`.
pub fn run_with_input(args: &Args, text: Option<&str>) -> (Report, i32) {
    let start = Instant::now();
    let mut warnings = Vec::new();
    let mut digest = None;

    let outcome = (|| -> Result<Outcome> {
        let input = match (text, &args.input, &args.command) {
            (Some(text), _, _) => Some(ProblemInput::from_json(text)?),
            (None, None, Command::Suite { .. }) => None,
            (None, path, _) => Some(read_input(path.as_deref().unwrap_or("-"))?),
        };
        let input = input.map(|mut p| {
            if let Some(f) = args.field {
                p.field = f;
            }
            p
        });
        if let Some(p) = &input {
            digest = Some(p.digest());
        }
        let field = input
            .as_ref()
            .map(|p| p.field)
            .or(args.field)
            .unwrap_or_default();
        if field.characteristic() == 2 {
            warnings.push(
                "characteristic 2: every sign is +1, so sign conventions are not exercised".to_string(),
            );
        }
        match (&args.command, input) {
            (Command::Suite { relabel_seed }, None) => suite_corpus(field, *relabel_seed),
            (command, Some(input)) => run_on(command, &input, field, &mut warnings),
            (_, None) => unreachable!("only suite runs without input"),
        }
    })();

    let (results, code) = match outcome {
        Ok(o) => (o.results, if o.passed { EXIT_OK } else { EXIT_CHECK_FAILED }),
        Err(e) => (diagnostic(&e), EXIT_INPUT),
    };
    let report = Report {
        command: args.command.name().to_string(),
        input_digest: digest,
        results,
        warnings,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    (report, code)
}

fn run_on(command: &Command, input: &ProblemInput, field: FieldSpec, warnings: &mut Vec<String>) -> Result<Outcome> {
    if let Command::Validate = command {
        return validate(input);
    }
    let problem = input.resolve()?;
    let class = problem.class()?;
    let z = BiasAlgebra::new(problem.matroid.clone(), class);
    match command {
        Command::Validate => unreachable!(),
        Command::Lift => lift(&z, warnings),
        Command::Nbc => Ok(Outcome::ok(nbc(&z))),
        Command::Dim => dim(&z, field),
        Command::Expand { set } => expand(&z, &problem, set, field),
        Command::DualCheck => dual_check(&z),
        Command::Sequence { element } => {
            let report = z.check_exact_sequence(*element)?;
            Ok(Outcome {
                passed: report.passed(),
                results: json!({ "report": report, "passed": report.passed() }),
            })
        }
        Command::Poincare => Ok(Outcome::ok(poincare(&z))),
        Command::Suite { relabel_seed } => {
            let found = checks::all_checks(&z, field, *relabel_seed)?;
            let passed = found.iter().all(|c| c.passed);
            Ok(Outcome {
                passed,
                results: json!({ "checks": found, "passed": passed }),
            })
        }
    }
}

fn validate(input: &ProblemInput) -> Result<Outcome> {
    let m = match input.build_matroid() {
        Ok(m) => m,
        Err(e @ Error::AxiomViolation { .. }) => {
            return Ok(Outcome {
                passed: false,
                results: json!({ "matroid_valid": false, "violation": diagnostic(&e)["error"] }),
            })
        }
        Err(e) => return Err(e),
    };
    let problem = input.resolve()?;
    let matroid = json!({
        "n": m.n(),
        "rank": m.full_rank(),
        "circuits": m.circuits(),
        "loops": m.loops(),
    });
    let (class_valid, witness) = match problem.verdict() {
        Ok(Verdict::Linear) => (true, Value::Null),
        Ok(Verdict::Violation(v)) => (false, json!({ "modular_pair": [v.first, v.second], "missing": v.missing })),
        Err(e @ Error::NotACircuit(_)) => (false, diagnostic(&e)["error"].clone()),
        Err(e) => return Err(e),
    };
    Ok(Outcome {
        passed: class_valid,
        results: json!({
            "matroid_valid": true,
            "matroid": matroid,
            "linear_class_valid": class_valid,
            "linear_class": problem.family,
            "witness": witness,
        }),
    })
}

fn lift(z: &BiasAlgebra, warnings: &mut Vec<String>) -> Result<Outcome> {
    let (m, cl) = (z.matroid(), z.class());
    let lifted = extended_lift(m, cl)?;
    let by_cut = lift_by_modular_cut(m, cl)?;
    let mut agree = lifted.matroid.circuits() == by_cut.circuits();
    let mut routes = vec!["modular_cut"];
    if !cl.is_empty() && !cl.is_everything(m) {
        let dual = lift_dual_hyperplanes(m, cl)?.circuits_of_lift(m.ground());
        agree &= dual == lifted.matroid.circuits();
        routes.push("dual_hyperplanes");
    } else {
        warnings.push("dual hyperplane route skipped: class is empty or everything".to_string());
    }
    let provenance: Vec<Value> = lifted
        .provenance
        .iter()
        .map(|(c, p)| json!({ "circuit": c, "source": p }))
        .collect();
    Ok(Outcome {
        passed: agree,
        results: json!({
            "new_element": lifted.new_element,
            "circuits": lifted.matroid.circuits(),
            "provenance": provenance,
            "includes_pair_unions": lifted.includes_pair_unions,
            "cross_checked_with": routes,
            "routes_agree": agree,
        }),
    })
}

fn nbc(z: &BiasAlgebra) -> Value {
    let dims = z.poincare_polynomial();
    let by_degree: Vec<Vec<Subset>> = (0..dims.len()).map(|k| z.nbc_basis().of_degree(k).collect()).collect();
    json!({ "basis": by_degree, "graded_dims": dims, "total": z.dim() })
}

fn oracle_dims(z: &BiasAlgebra, field: FieldSpec) -> Result<Vec<usize>> {
    Ok(match field {
        FieldSpec::Rationals => z.oracle(Rationals)?.quotient_graded_dims_trimmed(),
        FieldSpec::PrimeField(p) => z.oracle(PrimeField::new(p)?)?.quotient_graded_dims_trimmed(),
    })
}

fn dim(z: &BiasAlgebra, field: FieldSpec) -> Result<Outcome> {
    let nbc = z.poincare_polynomial();
    let oracle = oracle_dims(z, field)?;
    let matches = nbc == oracle;
    Ok(Outcome {
        passed: matches,
        results: json!({ "nbc": nbc, "oracle": oracle, "match": matches }),
    })
}

fn parse_set(text: &str, n: usize) -> Result<Subset> {
    let elements = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Input(format!("--set: bad element {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Subset::try_from_elements(elements, n).map_err(|x| Error::Input(format!("--set: element {x} outside 1..={n}")))
}

fn expand(z: &BiasAlgebra, problem: &Problem, set: &str, field: FieldSpec) -> Result<Outcome> {
    let x = parse_set(set, problem.matroid.n())?;
    let expansion = z.straighten(x);
    let independent = z.matroid().is_independent(x);
    let mut rows = Vec::new();
    let mut agree = true;
    if independent {
        for i in z.nbc_basis().of_degree(x.len()) {
            let s = expansion.coefficient(i);
            let tau = z.xi_permutation(i, x)?;
            let flag = z.flag_on_monomial(i, x)?;
            agree &= s == tau && tau == flag;
            rows.push(json!({ "nbc": i, "straighten": s, "tau": tau, "flag": flag }));
        }
    }
    let residual = crate::exterior::ExteriorElement::monomial(&crate::field::Integers, x)
        .sub(&crate::field::Integers, &expansion.to_exterior());
    let oracle_agrees = match field {
        FieldSpec::Rationals => z.oracle(Rationals)?.vanishes(&residual),
        FieldSpec::PrimeField(p) => z.oracle(PrimeField::new(p)?)?.vanishes(&residual),
    };
    Ok(Outcome {
        passed: agree && oracle_agrees,
        results: json!({
            "set": x,
            "independent": independent,
            "expansion": expansion,
            "coefficients": rows,
            "methods_agree": agree,
            "oracle_agrees": oracle_agrees,
        }),
    })
}

fn dual_check(z: &BiasAlgebra) -> Result<Outcome> {
    let dims = z.poincare_polynomial();
    let mut identity = true;
    let mut degrees = Vec::new();
    for k in 0..dims.len() {
        let sets: Vec<Subset> = z.nbc_basis().of_degree(k).collect();
        let mut matrix = Vec::with_capacity(sets.len());
        for &i in &sets {
            let row = sets
                .iter()
                .map(|&j| z.flag_on_monomial(i, j))
                .collect::<Result<Vec<i64>>>()?;
            for (&j, &v) in sets.iter().zip(&row) {
                identity &= v == i64::from(i == j);
            }
            matrix.push(row);
        }
        degrees.push(json!({ "degree": k, "basis": sets, "matrix": matrix }));
    }
    Ok(Outcome {
        passed: identity,
        results: json!({ "degrees": degrees, "identity": identity }),
    })
}

fn poincare(z: &BiasAlgebra) -> Value {
    let dims = z.poincare_polynomial();
    let terms: Vec<String> = dims
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| match k {
            0 => c.to_string(),
            1 => format!("{c}t"),
            _ => format!("{c}t^{k}"),
        })
        .collect();
    json!({ "coefficients": dims, "polynomial": terms.join(" + "), "total": z.dim() })
}

#[derive(Serialize)]
struct CaseResult {
    matroid: String,
    class: Vec<Subset>,
    passed: bool,
    checks: Vec<Check>,
}

fn suite_corpus(field: FieldSpec, seed: u64) -> Result<Outcome> {
    let mut cases = Vec::new();
    for entry in corpus::bundled() {
        let m = entry.build_matroid()?;
        for class in entry.classes(&m)? {
            cases.push((entry.name.clone(), BiasAlgebra::new(m.clone(), class)));
        }
    }
    let results = cases
        .par_iter()
        .map(|(name, z)| {
            let found = checks::all_checks(z, field, seed)?;
            Ok(CaseResult {
                matroid: name.clone(),
                class: z.class().members().to_vec(),
                passed: found.iter().all(|c| c.passed),
                checks: found,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let failed = results.iter().filter(|r| !r.passed).count();
    Ok(Outcome {
        passed: failed == 0,
        results: json!({
            "cases": results,
            "case_count": results.len(),
            "failed": failed,
            "passed": failed == 0,
        }),
    })
}
