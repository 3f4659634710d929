mod error;
mod jobs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equiloc_core::algebra::{parse_polynomial, Polynomial, Rational, Var};
use equiloc_core::hyperbolicity::{
    critical_delta, euler_characteristic, gg_polynomial, positivity_threshold, theta,
};
use equiloc_core::jet::{column_subsets, invariant_minors, rho, sym_basis, JetCurve, Scalar};
use equiloc_core::localization::{flag_check, grass_integrate, Exactness};
use equiloc_core::residue::{iterated_residue, ResidueOptions};
use equiloc_core::thom::{positivity_check, ratio_check, thom_polynomial};
use serde_json::{json, Value};

use error::CliError;
use jobs::{q_table, rational, read_json, JetFile, ResidueJob};

#[derive(Parser)]
#[command(name = "equiloc", version, about = "Exact localization, iterated residues and jet invariants")]
struct Cli {
    /// Seed for every random weight draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest expansion order the residue engine may use in one variable.
    #[arg(long, global = true, default_value_t = 256)]
    cap: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Iterated residue of a JSON job.
    Residue {
        #[arg(long)]
        job: PathBuf,
    },
    /// Integral of a Chern class of the tautological bundle over Gr(k, n).
    GrassIntegrate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        class: String,
        /// Exact common-denominator summation instead of weight draws.
        #[arg(long)]
        symbolic: bool,
    },
    /// Random instances of the flag fixed-point/residue identity.
    FlagCheck {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Thom polynomial of A_k in the given codimension.
    Thom {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        codim: i64,
        #[command(flatten)]
        q: QFile,
    },
    /// Thom polynomials for all k <= kmax, codim <= lmax.
    ThomScan {
        #[arg(long)]
        kmax: u32,
        #[arg(long)]
        lmax: u32,
        #[arg(long)]
        check_positivity: bool,
        /// Also run the neighbouring-ratio check at this depth.
        #[arg(long)]
        ratio_depth: Option<u32>,
        #[command(flatten)]
        q: QFile,
    },
    /// Green-Griffiths intersection polynomial p(n, d, delta).
    Gg {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        d: Option<String>,
        #[command(flatten)]
        q: QFile,
    },
    /// The constant Theta(n).
    Theta {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        q: QFile,
    },
    /// Euler characteristic of the jet bundle as a polynomial in m.
    Euler {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: Option<String>,
        #[command(flatten)]
        q: QFile,
    },
    /// The matrix rho of a jet.
    Rho {
        #[command(flatten)]
        jet: JetArgs,
    },
    /// All k x k minors of rho, over column subsets in lexicographic order.
    Minors {
        #[command(flatten)]
        jet: JetArgs,
    },
}

#[derive(Args)]
struct QFile {
    /// JSON object mapping k to a user-supplied Q_k.
    #[arg(long)]
    q_file: Option<PathBuf>,
}

#[derive(Args)]
struct JetArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, required_unless_present = "symbolic", conflicts_with = "symbolic")]
    jet: Option<PathBuf>,
    /// Use the generic jet with coordinates f<coord>_<order>.
    #[arg(long)]
    symbolic: bool,
}

/// What a command prints, plus an optional failed check that sets the exit code.
struct Output {
    text: String,
    json: Value,
    failure: Option<String>,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, failure: None }
    }
}

fn terms_json(p: &Polynomial) -> Value {
    p.terms()
        .rev()
        .map(|(m, c)| json!({ "monomial": m.to_string(), "coefficient": c.to_string() }))
        .collect()
}

fn basis_names(n: usize, k: usize) -> Vec<String> {
    sym_basis(n, k)
        .iter()
        .map(|e| {
            e.iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("e{}", i + 1) } else { format!("e{}^{x}", i + 1) })
                .collect::<Vec<_>>()
                .join("*")
        })
        .collect()
}

fn matrix_output<T: Scalar + ToString>(n: usize, k: usize, rows: Vec<Vec<T>>) -> Output {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let text = rows.iter().map(|r| r.join(", ")).collect::<Vec<_>>().join("\n");
    Output::new(text, json!({ "n": n, "k": k, "basis": basis_names(n, k), "rows": rows }))
}

fn minors_output<T: Scalar + ToString>(k: usize, minors: Vec<T>, dim: usize) -> Output {
    let columns = column_subsets(dim, k);
    let text = columns
        .iter()
        .zip(&minors)
        .map(|(c, m)| format!("{}: {}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","), m.to_string()))
        .collect::<Vec<_>>()
        .join("\n");
    let minors: Vec<String> = minors.iter().map(ToString::to_string).collect();
    Output::new(text, json!({ "columns": columns, "minors": minors }))
}

fn symbolic_jet(args: &JetArgs) -> JetCurve<Polynomial> {
    JetCurve::symbolic(args.n, args.k)
}

fn numeric_jet(args: &JetArgs) -> Result<JetCurve<Rational>, CliError> {
    let path = args.jet.as_ref().expect("clap requires --jet without --symbolic");
    read_json::<JetFile>(path)?.to_jet(args.n, args.k)
}

fn substitute(p: &Polynomial, v: Var, value: &Option<String>) -> Result<Polynomial, CliError> {
    Ok(match value {
        Some(s) => p.evaluate(&[(v, rational(s)?)].into()),
        None => p.clone(),
    })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let opts = ResidueOptions { cap: cli.cap, ..ResidueOptions::default() };
    match &cli.command {
        Command::Residue { job } => {
            let form = read_json::<ResidueJob>(job)?.to_form()?;
            let r = iterated_residue(&form, opts)?;
            Ok(Output::new(r.to_string(), json!({ "residue": r.to_string() })))
        }
        Command::GrassIntegrate { n, k, class, symbolic } => {
            let how = if *symbolic { Exactness::Symbolic } else { Exactness::Draws { seed: cli.seed, count: 3 } };
            let c = parse_polynomial(class)?;
            let v = grass_integrate(*n, *k, &c, how)?;
            Ok(Output::new(v.to_string(), json!({ "n": n, "k": k, "class": c.to_string(), "value": v.to_string() })))
        }
        Command::FlagCheck { n, d, trials } => {
            let results = flag_check(*n, *d, *trials, cli.seed, opts)?;
            let agreeing = results.iter().filter(|t| t.agrees()).count();
            let strings = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
            let mut text: Vec<String> = results
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    format!(
                        "trial {}: Q = {}; fixed = [{}]; residue = [{}]; {}",
                        i + 1,
                        t.q,
                        strings(&t.fixed).join(", "),
                        strings(&t.residue).join(", "),
                        if t.agrees() { "agree" } else { "DISAGREE" }
                    )
                })
                .collect();
            text.push(format!("{agreeing}/{} trials agree", results.len()));
            let json = json!({
                "n": n, "d": d, "seed": cli.seed,
                "trials": results.iter().map(|t| json!({
                    "q": t.q.to_string(),
                    "fixed": strings(&t.fixed),
                    "residue": strings(&t.residue),
                    "agrees": t.agrees(),
                })).collect::<Vec<_>>(),
                "all_agree": agreeing == results.len(),
            });
            let mut out = Output::new(text.join("\n"), json);
            if agreeing != results.len() {
                out.failure = Some(format!("{} of {} trials disagree", results.len() - agreeing, results.len()));
            }
            Ok(out)
        }
        Command::Thom { k, codim, q } => {
            let table = q_table(q.q_file.as_deref())?;
            let r = thom_polynomial(*k, *codim, &table, opts)?;
            let json = json!({
                "k": k, "codim": codim,
                "polynomial": r.polynomial.to_string(),
                "terms": terms_json(&r.polynomial),
                "sign_calibration": r.sign_calibration,
                "q_verified": r.q_verified,
            });
            Ok(Output::new(r.polynomial.to_string(), json))
        }
        Command::ThomScan { kmax, lmax, check_positivity, ratio_depth, q } => {
            let table = q_table(q.q_file.as_deref())?;
            let mut text = Vec::new();
            let mut rows = Vec::new();
            let mut failures = Vec::new();
            for k in 1..=*kmax {
                for l in 0..=*lmax {
                    let r = thom_polynomial(k, l as i64, &table, opts)?;
                    let mut line = format!("k={k} codim={l}: {}", r.polynomial);
                    let mut row = json!({ "k": k, "codim": l, "polynomial": r.polynomial.to_string() });
                    if *check_positivity {
                        let report = positivity_check(&r);
                        line.push_str(if report.is_clean() { "  [nonnegative integral]" } else { "  [NOT nonnegative integral]" });
                        row["positive"] = json!(report.is_clean());
                        if !report.is_clean() {
                            failures.push(format!("k={k} codim={l}"));
                        }
                    }
                    if let Some(depth) = ratio_depth {
                        let rep = ratio_check(k, l as i64, &table, *depth, opts)?;
                        let max = rep.ratios.iter().map(|x| x.ratio.clone()).max();
                        line.push_str(&format!(
                            "\n  ratios: {} computed, {} skipped, max {}, all below k^2: {}",
                            rep.ratios.len(),
                            rep.skipped,
                            max.as_ref().map_or("none".into(), ToString::to_string),
                            rep.all_below_bound
                        ));
                        row["ratios"] = json!({
                            "depth": depth,
                            "computed": rep.ratios.len(),
                            "skipped": rep.skipped,
                            "max": max.map(|m| m.to_string()),
                            "all_below_bound": rep.all_below_bound,
                        });
                    }
                    text.push(line);
                    rows.push(row);
                }
            }
            let mut out = Output::new(text.join("\n"), Value::Array(rows));
            if !failures.is_empty() {
                out.failure = Some(format!("positivity fails for {}", failures.join(", ")));
            }
            Ok(out)
        }
        Command::Gg { n, delta, d, q } => {
            let table = q_table(q.q_file.as_deref())?;
            let r = gg_polynomial(*n, &table, opts)?;
            let at_delta = substitute(&r.polynomial, Var::Delta, delta)?;
            let value = substitute(&at_delta, Var::D, d)?;
            let mut json = json!({
                "n": n,
                "polynomial": value.to_string(),
                "theta": r.theta.to_string(),
                "leading": r.leading.to_string(),
                "expected_leading": r.expected_leading().to_string(),
                "critical_delta": critical_delta(*n).to_string(),
            });
            if delta.is_some() && d.is_none() {
                json["threshold"] = match positivity_threshold(&at_delta)? {
                    Some(t) => json!({ "d0": t.d0.to_string(), "cauchy_bound": t.cauchy_bound.to_string() }),
                    None => Value::Null,
                };
            }
            Ok(Output::new(value.to_string(), json))
        }
        Command::Theta { n, q } => {
            let t = theta(*n, &q_table(q.q_file.as_deref())?, opts)?;
            Ok(Output::new(t.to_string(), json!({ "n": n, "theta": t.to_string() })))
        }
        Command::Euler { n, d, q } => {
            let d = d.as_deref().map(rational).transpose()?;
            let r = euler_characteristic(*n, d, &q_table(q.q_file.as_deref())?, opts)?;
            let json = json!({
                "n": n,
                "d": r.d.as_ref().map(ToString::to_string),
                "chi": r.chi.to_string(),
            });
            Ok(Output::new(r.chi.to_string(), json))
        }
        Command::Rho { jet } => {
            if jet.symbolic {
                Ok(matrix_output(jet.n, jet.k, rho(&symbolic_jet(jet))))
            } else {
                Ok(matrix_output(jet.n, jet.k, rho(&numeric_jet(jet)?)))
            }
        }
        Command::Minors { jet } => {
            let dim = sym_basis(jet.n, jet.k).len();
            if jet.symbolic {
                Ok(minors_output(jet.k, invariant_minors(&symbolic_jet(jet))?, dim))
            } else {
                Ok(minors_output(jet.k, invariant_minors(&numeric_jet(jet)?)?, dim))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fail = |e: CliError| {
        eprintln!("{}", e.to_json());
        ExitCode::from(e.exit_code() as u8)
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialise")),
            }
            match out.failure {
                Some(msg) => fail(CliError::Check(msg)),
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => fail(e),
    }
}
