//! The `freelie` command line.
//!
//! Every command prints either an aligned text form or, with `--json`, a
//! stable JSON document. Exit status is 0 on success, 1 on usage, parse or
//! verification errors, and 2 when `conjecture` finds a bidegree whose
//! constants are not generated.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use freelie::pseudodet::{scan_constant_monomials, weighted_sum, WeightedTerm};
use freelie::reproduce::verify_all;
use freelie::subalgebra::GradedSubalgebra;
use freelie::witt::witt_dim;
use freelie::{
    analyze_constant_monomial, bracket, conjecture_check, constants_up_to, decompose_bracket_power,
    delta_power, enumerate_constant_pseudodets, graded_closure, hall_basis, hall_basis_multidegree,
    kernel_basis, make_pseudodet, membership_report, nilpotency_index, parse, parse_word, Error,
    HallWord, KernelComponent, LiePoly, MultiDegree, Shape,
};
use serde::Serialize;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "freelie",
    version,
    about = "Constants of the derivation y -> x, x -> 0 on the free Lie algebra L(x, y)"
)]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for per-bidegree work (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DegreeChoice {
    /// Total degree.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Bidegree as `deg_x,deg_y`.
    #[arg(long)]
    pub multidegree: Option<MultiDegree>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List Hall words of a degree or bidegree.
    Hall(DegreeChoice),
    /// Rewrite an expression into the Hall basis.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply the derivation.
    Delta {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Least n with δⁿ(p) = 0.
    Nilindex {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Constants by bidegree.
    Constants {
        #[arg(
            long,
            conflicts_with = "multidegree",
            required_unless_present = "multidegree"
        )]
        max_degree: Option<u32>,
        #[arg(long)]
        multidegree: Option<MultiDegree>,
    },
    /// One pseudodeterminant, or all constant ones up to a degree.
    Pseudodet {
        #[arg(long = "a", required_unless_present = "enumerate")]
        a: Option<String>,
        #[arg(long = "b", required_unless_present = "enumerate")]
        b: Option<String>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, requires = "max_degree")]
        enumerate: bool,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, default_value_t = Shape::All)]
        shape: Shape,
    },
    /// Write [p, δᵏ(p)] through degree (k,0) pseudodeterminants.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Classify a constant Hall monomial, or scan all of them.
    AnalyzeMonomial {
        #[arg(required_unless_present = "scan")]
        word: Option<String>,
        /// Analyze every constant Hall monomial up to --max-degree.
        #[arg(long, requires = "max_degree")]
        scan: bool,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Graded closure of generators, optionally checked against the constants.
    Subalgebra {
        /// File with one expression per line; `#` starts a comment.
        #[arg(long)]
        generators: Option<PathBuf>,
        /// Generator expression (repeatable).
        #[arg(long = "gen", allow_hyphen_values = true)]
        gens: Vec<String>,
        #[arg(long)]
        max_degree: u32,
        /// Also report whether the constants lie in the closure.
        #[arg(long)]
        check: bool,
    },
    /// Recheck the known results about constants through degree 7.
    #[command(name = "verify-paper")]
    Recheck,
    /// Test whether x and the constant pseudodeterminants generate the constants.
    Conjecture {
        #[arg(long, default_value_t = 9)]
        max_degree: u32,
        #[arg(long, default_value_t = Shape::All)]
        shape: Shape,
    },
    /// Dimensions: Hall basis, necklace count and constants per bidegree.
    Dims {
        #[arg(long, default_value_t = 10)]
        max_degree: u32,
        /// Skip the kernel computation.
        #[arg(long)]
        no_kernel: bool,
    },
}

/// Command failures other than usage errors.
#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<freelie::ParseError> for CliError {
    fn from(e: freelie::ParseError) -> Self {
        CliError::Lib(e.into())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Failed(e) => write!(f, "{e}"),
        }
    }
}

/// Output of one command: text or JSON plus an exit status.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub status: i32,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Output {
        Output {
            text,
            json,
            status: EXIT_OK,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn poly_json(p: &LiePoly) -> serde_json::Value {
    json!({ "text": p.to_string(), "terms": to_json(p) })
}

/// Parses `argv`, runs the command and writes to `out`/`err`. Returns the
/// exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let rendered = e.render().to_string();
            return match e.kind() {
                DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_ERROR
                }
            };
        }
    };
    if let Some(n) = cli.threads {
        // Fails only if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match execute(&cli.command) {
        Ok(o) => {
            let res = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).unwrap())
            } else {
                write!(out, "{}", o.text)
            };
            if res.is_err() {
                return EXIT_ERROR;
            }
            o.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn execute(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Hall(choice) => hall(choice),
        Command::Normalize { expr } => {
            let p = parse(expr)?;
            Ok(Output::ok(
                format!("{p}\n"),
                json!({ "input": expr, "value": poly_json(&p) }),
            ))
        }
        Command::Delta { expr, power } => {
            let p = parse(expr)?;
            let d = delta_power(&p, *power);
            Ok(Output::ok(
                format!("{d}\n"),
                json!({ "input": expr, "power": power, "value": poly_json(&d) }),
            ))
        }
        Command::Nilindex { expr } => {
            let p = parse(expr)?;
            let n = nilpotency_index(&p)?;
            Ok(Output::ok(
                format!("{n}\n"),
                json!({ "input": expr, "index": n }),
            ))
        }
        Command::Constants {
            max_degree,
            multidegree,
        } => constants(*max_degree, *multidegree),
        Command::Pseudodet {
            a,
            b,
            m,
            k,
            enumerate,
            max_degree,
            shape,
        } => {
            if *enumerate {
                let us = enumerate_constant_pseudodets(max_degree.unwrap(), *shape)?;
                let mut text = String::new();
                for u in &us {
                    writeln!(text, "{u}").unwrap();
                }
                writeln!(text, "{} constant pseudodeterminants", us.len()).unwrap();
                return Ok(Output::ok(text, to_json(&us)));
            }
            let a = parse_word(a.as_deref().unwrap())?;
            let b = parse_word(b.as_deref().unwrap())?;
            let u = make_pseudodet(&a, &b, *m, *k);
            Ok(Output::ok(format!("{u}\n"), to_json(&u)))
        }
        Command::Decompose { expr, k } => decompose(expr, *k),
        Command::AnalyzeMonomial {
            word,
            scan,
            max_degree,
        } => {
            if *scan {
                return scan_monomials(max_degree.unwrap());
            }
            let w = parse_word(word.as_deref().unwrap())?;
            let a = analyze_constant_monomial(&w)?;
            Ok(Output::ok(
                format!("{}\n", describe_analysis(&a)),
                to_json(&a),
            ))
        }
        Command::Subalgebra {
            generators,
            gens,
            max_degree,
            check,
        } => subalgebra(generators.as_ref(), gens, *max_degree, *check),
        Command::Recheck => verify(),
        Command::Conjecture { max_degree, shape } => {
            let r = conjecture_check(*max_degree, *shape)?;
            let status = if r.report.contained {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            };
            Ok(Output {
                text: r.to_string(),
                json: to_json(&r),
                status,
            })
        }
        Command::Dims {
            max_degree,
            no_kernel,
        } => dims(*max_degree, !no_kernel),
    }
}

fn hall(choice: &DegreeChoice) -> Result<Output, CliError> {
    let words: Vec<HallWord> = match (choice.degree, choice.multidegree) {
        (Some(d), _) => hall_basis(d)?.to_vec(),
        (None, Some(md)) => hall_basis_multidegree(md)?,
        (None, None) => unreachable!("clap requires one of the two"),
    };
    let mut text = String::new();
    for w in &words {
        writeln!(text, "{w}").unwrap();
    }
    let json = json!({
        "degree": choice.degree,
        "multidegree": choice.multidegree,
        "count": words.len(),
        "words": words.iter().map(|w| json!({ "text": w.to_string(), "tree": to_json(w) })).collect::<Vec<_>>(),
    });
    Ok(Output::ok(text, json))
}

fn constants(max_degree: Option<u32>, md: Option<MultiDegree>) -> Result<Output, CliError> {
    if let Some(md) = md {
        let basis = kernel_basis(md)?;
        let comp = KernelComponent {
            deg_x: md.deg_x,
            deg_y: md.deg_y,
            dim: basis.len(),
            basis,
        };
        let mut text = format!("{md}: dim {}\n", comp.dim);
        for b in &comp.basis {
            writeln!(text, "  {b}").unwrap();
        }
        return Ok(Output::ok(text, to_json(&comp)));
    }
    let report = constants_up_to(max_degree.unwrap())?;
    Ok(Output::ok(report.to_string(), to_json(&report)))
}

fn decompose(expr: &str, k: u32) -> Result<Output, CliError> {
    let p = parse(expr)?;
    let terms = decompose_bracket_power(&p, k)?;
    let sum = weighted_sum(&terms, k);
    let target = bracket(&p, &delta_power(&p, k));
    let mut text = String::new();
    for WeightedTerm { a, b, coeff } in &terms {
        writeln!(text, "{coeff} * U^({k},0)_{{{a}, {b}}}").unwrap();
    }
    writeln!(text, "sum = {sum}").unwrap();
    writeln!(text, "[p, δ^{k}(p)] = {target}").unwrap();
    let json_terms: Vec<_> = terms
        .iter()
        .map(|t| json!({ "A": to_json(&t.a), "B": to_json(&t.b), "coeff": t.coeff.to_string() }))
        .collect();
    let equal = sum == target;
    if !equal {
        return Err(CliError::Failed(format!(
            "decomposition mismatch: {sum} != {target}"
        )));
    }
    Ok(Output::ok(
        text,
        json!({ "input": expr, "k": k, "terms": json_terms, "sum": poly_json(&sum), "equal": equal }),
    ))
}

fn describe_analysis(a: &freelie::MonomialAnalysis) -> String {
    use freelie::MonomialClass::*;
    let detail = match &a.class {
        BothFactorsConstant => "both factors are constants".to_string(),
        OneFactorConstant {
            nonconstant, coeff, ..
        } => format!("M = {coeff} * U^(1,0)_{{{nonconstant}, {nonconstant}}}"),
        NeitherConstant { alpha } => {
            format!("δ^{}(A) = {alpha} * δ^{}(B)", a.r - 1, a.s - 1)
        }
    };
    format!(
        "M = {}  A = {}  B = {}  r = {}  s = {}  {}: {}",
        a.monomial,
        a.a,
        a.b,
        a.r,
        a.s,
        a.class_name(),
        detail
    )
}

fn scan_monomials(max_degree: u32) -> Result<Output, CliError> {
    let all = scan_constant_monomials(max_degree)?;
    let mut text = String::new();
    for a in &all {
        writeln!(text, "{}", describe_analysis(a)).unwrap();
    }
    let count = |name| all.iter().filter(|a| a.class_name() == name).count();
    let summary = json!({
        "both-factors-constant": count("both-factors-constant"),
        "one-factor-constant": count("one-factor-constant"),
        "neither-constant": count("neither-constant"),
    });
    writeln!(text, "{} constant Hall monomials: {summary}", all.len()).unwrap();
    Ok(Output::ok(
        text,
        json!({ "max_degree": max_degree, "count": all.len(), "summary": summary, "monomials": to_json(&all) }),
    ))
}

/// Reads generators: one expression per line, blank lines and `#` comments
/// ignored.
pub fn read_generator_file(src: &str) -> Result<Vec<LiePoly>, CliError> {
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let p = parse(line).map_err(|e| CliError::Failed(format!("line {}: {e}", i + 1)))?;
        out.push(p);
    }
    Ok(out)
}

fn closure_json(s: &GradedSubalgebra) -> serde_json::Value {
    let comps: Vec<_> = s
        .components
        .iter()
        .map(|(md, c)| {
            json!({
                "deg_x": md.deg_x,
                "deg_y": md.deg_y,
                "dim": c.dim(),
                "basis": c.elements().iter().map(to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "bound": s.bound, "components": comps })
}

fn subalgebra(
    file: Option<&PathBuf>,
    exprs: &[String],
    bound: u32,
    check: bool,
) -> Result<Output, CliError> {
    let mut gens = Vec::new();
    if let Some(path) = file {
        let src = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        gens.extend(read_generator_file(&src)?);
    }
    for e in exprs {
        gens.extend(parse(e)?.homogeneous_parts().into_values());
    }
    if gens.is_empty() {
        return Err(CliError::Failed("no generators given".into()));
    }
    // Inhomogeneous file entries are split, as for --gen.
    let gens: Vec<LiePoly> = gens
        .iter()
        .flat_map(|g| g.homogeneous_parts().into_values())
        .collect();
    let closure = graded_closure(&gens, bound)?;
    let mut text = String::new();
    let order = |md: &MultiDegree| (md.total(), md.deg_x);
    let mut mds: Vec<&MultiDegree> = closure.components.keys().collect();
    mds.sort_by_key(|md| order(md));
    for md in mds {
        let c = &closure.components[md];
        writeln!(text, "{md}: dim {}", c.dim()).unwrap();
        for e in c.elements() {
            writeln!(text, "  {e}").unwrap();
        }
    }
    let mut json = closure_json(&closure);
    if check {
        let report = membership_report(&closure, &constants_up_to(bound)?)?;
        write!(text, "{report}").unwrap();
        json["containment"] = to_json(&report);
    }
    Ok(Output::ok(text, json))
}

fn verify() -> Result<Output, CliError> {
    let checks = verify_all()?;
    let mut text = String::new();
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        writeln!(text, "{tag}  {}  ({})", c.name, c.detail).unwrap();
    }
    let passed = checks.iter().all(|c| c.passed);
    writeln!(
        text,
        "{}: {}/{} checks passed",
        if passed { "PASS" } else { "FAIL" },
        checks.iter().filter(|c| c.passed).count(),
        checks.len()
    )
    .unwrap();
    Ok(Output {
        text,
        json: json!({ "passed": passed, "checks": to_json(&checks) }),
        status: if passed { EXIT_OK } else { EXIT_ERROR },
    })
}

fn dims(max_degree: u32, with_kernel: bool) -> Result<Output, CliError> {
    let kernel = if with_kernel {
        Some(constants_up_to(max_degree)?)
    } else {
        None
    };
    let mut text = format!(
        "{:>8} {:>6} {:>6} {:>6}\n",
        "bidegree", "hall", "witt", "ker"
    );
    let mut rows = Vec::new();
    for md in MultiDegree::up_to(max_degree) {
        let hall = hall_basis_multidegree(md)?.len();
        let witt = witt_dim(md);
        let ker = kernel.as_ref().map(|k| k.dim(md));
        if hall == 0 && witt == 0 {
            continue;
        }
        let ker_text = ker.map_or("-".to_string(), |k| k.to_string());
        writeln!(
            text,
            "{:>8} {:>6} {:>6} {:>6}",
            md.to_string(),
            hall,
            witt,
            ker_text
        )
        .unwrap();
        rows.push(json!({ "deg_x": md.deg_x, "deg_y": md.deg_y, "hall": hall, "witt": witt, "kernel": ker }));
    }
    Ok(Output::ok(
        text,
        json!({ "max_degree": max_degree, "components": rows }),
    ))
}
