use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hecke_cli::{kl_table, parse_word, run_suite, CliError, Suite, SuiteOptions, SuiteReport};
use hecke_core::coxeter::{CoxeterGroup, CoxeterType};
use hecke_core::grfunctor::{GammaTable, GrElt, GrFunctor, MultTable};
use hecke_core::heckerep;
use hecke_core::pgl2ring::{self, StratumClass};
use hecke_core::CoxeterElement;

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact identity checks for Hecke algebras and the PGL2 stratified ring")]
struct Cli {
    /// Write a machine-readable report to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    json_out: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kazhdan-Lusztig polynomials.
    Klpoly {
        #[arg(long = "type")]
        ty: CoxeterType,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// CSV of every pair with y <= w.
        #[arg(long)]
        all: bool,
    },
    /// Identity suites for the dual module.
    DualCheck {
        #[arg(long = "type")]
        ty: CoxeterType,
        #[arg(long)]
        suite: Suite,
    },
    /// Graded expansions from a multiplicity table.
    Beta {
        #[arg(long, value_name = "FILE")]
        table: PathBuf,
        #[arg(long)]
        check_twist: bool,
        #[arg(long, value_name = "FILE")]
        gamma: Option<PathBuf>,
    },
    /// Central elements attached to irreducible representations.
    Centre {
        #[arg(long = "type")]
        ty: CoxeterType,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        verify: bool,
    },
    /// The Grothendieck ring of PGL2.
    Pgl2 {
        #[arg(long, default_value_t = 12)]
        char_order: u32,
        #[arg(long)]
        verify: bool,
        #[command(subcommand)]
        op: Option<Pgl2Op>,
    },
    /// Runs one identity suite.
    Suite {
        #[arg(long)]
        suite: Suite,
        #[arg(long = "type")]
        ty: Option<CoxeterType>,
    },
}

#[derive(Subcommand)]
enum Pgl2Op {
    /// Product of two Gr-basis elements, expanded in the Gr basis.
    Product {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

/// Text to print, JSON for `--json-out`, and whether every check passed.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn info(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }

    fn from_reports(reports: Vec<SuiteReport>) -> Self {
        let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
        let ok = reports.iter().all(SuiteReport::passed);
        let json = serde_json::to_value(&reports).expect("serializable");
        Self { text, json, ok }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let _ = writeln!(io::stdout(), "{}", out.text);
            if let Some(path) = &cli.json_out {
                let body = serde_json::to_string_pretty(&out.json).expect("serializable");
                if let Err(e) = fs::write(path, body + "\n") {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let opts = SuiteOptions { seed: cli.seed, ..SuiteOptions::default() };
    match &cli.command {
        Command::Klpoly { ty, y, w, all } => klpoly(*ty, y.as_deref(), w.as_deref(), *all),
        Command::DualCheck { ty, suite } => {
            if !matches!(suite, Suite::Lambda | Suite::AbSymmetry | Suite::TsRules) {
                return Err(CliError::Usage(format!("dual-check does not run {suite}")));
            }
            Ok(Outcome::from_reports(vec![run_suite(*suite, Some(*ty), &opts)?]))
        }
        Command::Beta { table, check_twist, gamma } => beta(table, *check_twist, gamma.as_ref()),
        Command::Centre { ty, list, verify } => centre(*ty, *list, *verify, &opts),
        Command::Pgl2 { char_order, verify, op } => pgl2(*char_order, *verify, op.as_ref(), &opts),
        Command::Suite { suite, ty } => Ok(Outcome::from_reports(vec![run_suite(*suite, *ty, &opts)?])),
    }
}

fn element(g: &CoxeterGroup, word: &str) -> Result<CoxeterElement, CliError> {
    g.from_labels(&parse_word(word)?).map_err(|e| CliError::Usage(e.to_string()))
}

fn word_string(g: &CoxeterGroup, w: CoxeterElement) -> String {
    let l: Vec<String> = g.labels(w).iter().map(|s| s.to_string()).collect();
    if l.is_empty() {
        "e".into()
    } else {
        l.join(" ")
    }
}

fn klpoly(ty: CoxeterType, y: Option<&str>, w: Option<&str>, all: bool) -> Result<Outcome, CliError> {
    let kl = kl_table(ty)?;
    let g = kl.group();
    if all {
        let mut text = String::from("y,w,P");
        let mut rows = Vec::new();
        for w in g.elements() {
            for y in g.elements().filter(|&y| g.bruhat_leq(y, w)) {
                let p = kl.kl_polynomial(y, w);
                let shown = p.display_in("q").to_string();
                write!(text, "\n{},{},{}", word_string(g, y), word_string(g, w), shown).unwrap();
                rows.push(json!({"y": g.labels(y), "w": g.labels(w), "P": shown}));
            }
        }
        return Ok(Outcome::info(text, json!({"type": ty.to_string(), "polynomials": rows})));
    }
    let (Some(y), Some(w)) = (y, w) else {
        return Err(CliError::Usage("klpoly needs --y and --w, or --all".into()));
    };
    let (y, w) = (element(g, y)?, element(g, w)?);
    let shown = kl.kl_polynomial(y, w).display_in("q").to_string();
    let json = json!({"type": ty.to_string(), "y": g.labels(y), "w": g.labels(w), "P": shown});
    Ok(Outcome::info(shown, json))
}

fn gr_json(g: &CoxeterGroup, e: &GrElt) -> Value {
    let coords: Vec<Value> = e.coeffs().iter().map(|(&w, c)| json!({"x": g.labels(w), "c": c.to_string()})).collect();
    json!({"side": e.side().to_string(), "coeffs": coords})
}

fn gr_text(g: &CoxeterGroup, e: &GrElt) -> String {
    if e.is_zero() {
        return "0".into();
    }
    e.coeffs().iter().map(|(&w, c)| format!("({c}) L[{}]", word_string(g, w))).collect::<Vec<_>>().join(" + ")
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::MalformedInput(format!("{}: {e}", path.display())))
}

fn beta(table: &PathBuf, check_twist: bool, gamma: Option<&PathBuf>) -> Result<Outcome, CliError> {
    let bad = |e: hecke_core::GrError| CliError::MalformedInput(e.to_string());
    let m = MultTable::from_json(&read(table)?).map_err(bad)?;
    m.check_parity().map_err(bad)?;
    let kl = kl_table(m.group().coxeter_type())?;
    let g = kl.group().clone();
    let f = GrFunctor::new(kl);
    let b = f.beta_expansion(&m).map_err(bad)?;
    let mut text = format!("beta: {}", gr_text(&g, &b));
    let mut json = json!({"beta": gr_json(&g, &b)});
    let mut ok = true;
    if check_twist {
        let twist = f.beta_twist_check(&m).map_err(bad)?;
        write!(text, "\ntwist: {}", if twist { "ok" } else { "FAILED" }).unwrap();
        json["twist"] = json!(twist);
        ok &= twist;
    }
    if let Some(path) = gamma {
        let t = GammaTable::from_json(&read(path)?).map_err(bad)?;
        let h = f.beta_from_gamma_bullet(&t, m.dprime_a as i64).map_err(|e| match e {
            hecke_core::GrError::Rep(r) => CliError::from(r),
            other => bad(other),
        })?;
        let (agree, shown, as_json) = match f.psi_prime(&h) {
            Ok(e) => (e.coeffs() == b.coeffs(), gr_text(&g, &e), gr_json(&g, &e)),
            Err(hecke_core::GrError::NonLaurentCoefficient { .. }) => {
                (false, format!("{h} (T-basis, not integral)"), json!({"t_basis": h.to_json()}))
            }
            Err(e) => return Err(bad(e)),
        };
        write!(text, "\ngamma: {shown}\nagree: {}", if agree { "yes" } else { "no" }).unwrap();
        json["gamma"] = as_json;
        json["agree"] = json!(agree);
        ok &= agree;
    }
    Ok(Outcome { text, json, ok })
}

fn centre(ty: CoxeterType, list: bool, verify: bool, opts: &SuiteOptions) -> Result<Outcome, CliError> {
    if list == verify {
        return Err(CliError::Usage("centre needs exactly one of --list, --verify".into()));
    }
    if verify {
        let reports = [Suite::Centrality, Suite::DaggerIdentity]
            .into_iter()
            .map(|s| run_suite(s, Some(ty), opts))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Outcome::from_reports(reports));
    }
    let kl = kl_table(ty)?;
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for rep in heckerep::irreducibles(kl.algebra())? {
        let c = heckerep::c_prime_e(&rep);
        text.push(format!("{} (dim {}): {}", rep.label(), rep.dim(), c));
        rows.push(json!({"E": rep.label(), "dim": rep.dim(), "c_prime": c.to_json()}));
    }
    Ok(Outcome::info(text.join("\n"), json!({"type": ty.to_string(), "centre": rows})))
}

fn pgl2(char_order: u32, verify: bool, op: Option<&Pgl2Op>, opts: &SuiteOptions) -> Result<Outcome, CliError> {
    match (verify, op) {
        (true, None) => {
            let opts = SuiteOptions { char_order, ..*opts };
            Ok(Outcome::from_reports(vec![run_suite(Suite::Pgl2Table, None, &opts)?]))
        }
        (false, Some(Pgl2Op::Product { a, b })) => {
            let parse = |s: &str| StratumClass::parse(s, char_order).map_err(|e| CliError::Usage(e.to_string()));
            let r = pgl2ring::structure_constants(parse(a)?, parse(b)?);
            Ok(Outcome::info(r.to_string(), json!({"a": a, "b": b, "product": r.to_json()})))
        }
        _ => Err(CliError::Usage("pgl2 needs exactly one of --verify, product".into())),
    }
}
