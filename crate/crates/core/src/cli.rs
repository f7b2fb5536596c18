//! The `qdt` command line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::ffcount::{CountError, CountFilter, CountOptions, DEFAULT_BUDGET};
use crate::mutation::{mutate_qp, MutationError};
use crate::qp::{load_qp, parse_qp_file, qp_to_file, validate_file, Cut, DimVector, DimerGraph, LoadedQp, QpError};
use crate::qtorus::{
    dilog_coefficient, dt_series, hn_factorize, rays_in_order, wallcross_check, CentralCharge,
    QTorusError, Region,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qdt", version, about = "Refined DT invariants of quivers with potential")]
pub struct Cli {
    /// Compact single-line JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CountArgs {
    /// Operation estimate above which counting is refused.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    pub budget: u64,
    /// Sample primes, comma separated, or "auto".
    #[arg(long, default_value = "auto")]
    pub primes: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a QP file and report every issue.
    Validate { file: PathBuf },
    /// List cuts with their strict sources and sinks.
    Cuts {
        file: PathBuf,
        /// Also list cuts using arrows absent from the potential.
        #[arg(long)]
        all: bool,
    },
    /// Mutate at a strict source of the cut.
    Mutate {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        cut: Option<String>,
    },
    /// Build the QP of a dimer model.
    FromDimer {
        file: PathBuf,
        /// Wrap the QP together with all perfect matchings and their cuts.
        #[arg(long)]
        matchings: bool,
    },
    /// Refined DT series on a box.
    Dt {
        file: PathBuf,
        #[arg(long = "box")]
        bx: String,
        #[arg(long)]
        cut: Option<String>,
        #[command(flatten)]
        count: CountArgs,
    },
    /// Compare DT series across the mutation at a vertex.
    Wallcross {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long = "box", conflicts_with = "degree", required_unless_present = "degree")]
        bx: Option<String>,
        /// Use all dimension vectors of total degree at most this.
        #[arg(long)]
        degree: Option<i64>,
        #[arg(long)]
        cut: Option<String>,
        #[command(flatten)]
        count: CountArgs,
    },
    /// Harder-Narasimhan factorization of the DT series.
    Factorize {
        file: PathBuf,
        /// One value per vertex, e.g. "-1+i, 1+i".
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
        #[arg(long = "box")]
        bx: String,
        #[arg(long)]
        cut: Option<String>,
        #[command(flatten)]
        count: CountArgs,
    },
    /// Quantum dilogarithm coefficients.
    Dilog {
        #[arg(long, default_value_t = 4)]
        n: u64,
    },
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    hint: Option<String>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
            hint: None,
        }
    }
}

impl From<QpError> for Failure {
    fn from(e: QpError) -> Self {
        Failure {
            code: EXIT_USAGE,
            kind: "input",
            message: e.to_string(),
            hint: None,
        }
    }
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        match e {
            CountError::BudgetExceeded { .. } => Failure {
                code: EXIT_BUDGET,
                kind: "budget",
                message: e.to_string(),
                hint: Some("use a smaller box or raise --budget".into()),
            },
            CountError::Qp(q) => q.into(),
            CountError::HoldoutMismatch { .. } | CountError::Interpolation(_) => Failure {
                code: EXIT_FAIL,
                kind: "interpolation",
                message: e.to_string(),
                hint: None,
            },
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<MutationError> for Failure {
    fn from(e: MutationError) -> Self {
        match e {
            MutationError::Qp(q) => q.into(),
            _ => Failure {
                code: EXIT_USAGE,
                kind: "mutation",
                message: e.to_string(),
                hint: None,
            },
        }
    }
}

impl From<QTorusError> for Failure {
    fn from(e: QTorusError) -> Self {
        match e {
            QTorusError::Count(c) => c.into(),
            QTorusError::Mutation(m) => m.into(),
            _ => Failure::usage(e.to_string()),
        }
    }
}

/// Report plus exit code.
struct Outcome {
    code: i32,
    json: Value,
    text: String,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { code: EXIT_OK, json, text }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<LoadedQp, Failure> {
    Ok(load_qp(&read(path)?)?)
}

fn pick_cut(loaded: &LoadedQp, cut: &Option<String>) -> Result<Cut, Failure> {
    let cut = match cut {
        Some(s) => Cut::parse(s),
        None => loaded
            .cut
            .clone()
            .ok_or_else(|| Failure::usage("the file has no cut; pass --cut"))?,
    };
    if !loaded.qp.is_cut(&cut) {
        return Err(Failure::usage(format!("{cut} is not a cut")));
    }
    Ok(cut)
}

fn count_options(a: &CountArgs) -> Result<CountOptions, Failure> {
    if a.budget == 0 {
        return Err(Failure::usage("budget must be positive"));
    }
    let primes = if a.primes.trim() == "auto" {
        None
    } else {
        let list: Vec<u64> = a
            .primes
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| Failure::usage(format!("bad prime {x:?}"))))
            .collect::<Result<_, _>>()?;
        if list.iter().collect::<BTreeSet<_>>().len() != list.len() {
            return Err(Failure::usage("primes must be distinct"));
        }
        Some(list)
    };
    Ok(CountOptions {
        budget: a.budget as f64,
        primes,
    })
}

fn parse_box(s: &str, n: usize) -> Result<Region, Failure> {
    let b = DimVector::parse(s)?;
    if b.len() != n {
        return Err(Failure::usage(format!("box has {} entries, quiver has {n} vertices", b.len())));
    }
    Ok(Region::boxed(&b))
}

fn series_text(s: &crate::qtorus::TorusSeries) -> String {
    s.region()
        .iter()
        .map(|v| format!("{}\t{}\n", DimVector::new(v.clone()).unwrap(), s.coeff(v)))
        .collect()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Validate { file } => {
            let text = read(file)?;
            let report = match parse_qp_file(&text) {
                Ok(f) => validate_file(&f),
                Err(e) => return Err(e.into()),
            };
            let code = if report.valid { EXIT_OK } else { EXIT_FAIL };
            let text = if report.valid {
                "valid\n".to_string()
            } else {
                report
                    .issues
                    .iter()
                    .map(|i| format!("{}: {}\n", i.location, i.message))
                    .collect()
            };
            Ok(Outcome {
                code,
                json: to_value(&report),
                text,
            })
        }
        Command::Cuts { file, all } => {
            let loaded = load(file)?;
            let qp = &loaded.qp;
            let q = &qp.quiver;
            let mut rows = Vec::new();
            let mut text = String::new();
            for cut in qp.find_cuts(!all) {
                let sources: Vec<&str> = (0..q.n_vertices())
                    .filter(|&k| qp.is_strict_source(&cut, k))
                    .map(|k| q.vertex_name(k))
                    .collect();
                let sinks: Vec<&str> = (0..q.n_vertices())
                    .filter(|&k| qp.is_strict_sink(&cut, k))
                    .map(|k| q.vertex_name(k))
                    .collect();
                text += &format!("{cut}\tsources {sources:?}\tsinks {sinks:?}\n");
                rows.push(json!({
                    "cut": cut.arrows(),
                    "strict_sources": sources,
                    "strict_sinks": sinks,
                }));
            }
            Ok(Outcome::ok(Value::Array(rows), text))
        }
        Command::Mutate { file, vertex, cut } => {
            let loaded = load(file)?;
            let cut = pick_cut(&loaded, cut)?;
            let k = loaded.qp.vertex(vertex)?;
            let m = mutate_qp(&loaded.qp, &cut, k)?;
            let out = qp_to_file(&m.qp, Some(&m.cut), Some(&m.grading));
            let json = to_value(&out);
            let text = serde_json::to_string_pretty(&out).unwrap() + "\n";
            Ok(Outcome::ok(json, text))
        }
        Command::FromDimer { file, matchings } => {
            let dimer = DimerGraph::parse(&read(file)?)?;
            let qp = dimer.to_qp()?;
            let all = dimer.perfect_matchings();
            let first = all.first().map(|m| dimer.matching_to_cut(m)).transpose()?;
            let out = to_value(&qp_to_file(&qp, first.as_ref(), None));
            let json = if *matchings {
                let list = all
                    .iter()
                    .map(|m| {
                        Ok(json!({
                            "edges": m,
                            "cut": dimer.matching_to_cut(m)?.arrows(),
                        }))
                    })
                    .collect::<Result<Vec<_>, QpError>>()?;
                json!({ "qp": out, "matchings": list })
            } else {
                out
            };
            let text = serde_json::to_string_pretty(&json).unwrap() + "\n";
            Ok(Outcome::ok(json, text))
        }
        Command::Dt { file, bx, cut, count } => {
            let loaded = load(file)?;
            let cut = pick_cut(&loaded, cut)?;
            let region = parse_box(bx, loaded.qp.quiver.n_vertices())?;
            let s = dt_series(&loaded.qp, &cut, &region, CountFilter::None, &count_options(count)?)?;
            Ok(Outcome::ok(to_value(&s.to_json()), series_text(&s)))
        }
        Command::Wallcross {
            file,
            vertex,
            bx,
            degree,
            cut,
            count,
        } => {
            let loaded = load(file)?;
            let cut = pick_cut(&loaded, cut)?;
            let n = loaded.qp.quiver.n_vertices();
            let region = match (bx, degree) {
                (Some(b), _) => parse_box(b, n)?,
                (None, Some(d)) => Region::total_degree(n, *d),
                (None, None) => return Err(Failure::usage("pass --box or --degree")),
            };
            let k = loaded.qp.vertex(vertex)?;
            let r = wallcross_check(&loaded.qp, &cut, k, &region, &count_options(count)?)?;
            let mut text = format!(
                "{}: {} coefficients matched, {} outside the mutation cone checked\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.matched,
                r.support_checked
            );
            if let Some(e) = &r.first_counterexample {
                text += &format!("first counterexample at {:?}: {} != {}\n", e.v, e.lhs, e.rhs);
            }
            Ok(Outcome {
                code: if r.pass { EXIT_OK } else { EXIT_FAIL },
                json: to_value(&r),
                text,
            })
        }
        Command::Factorize {
            file,
            charge,
            bx,
            cut,
            count,
        } => {
            let loaded = load(file)?;
            let cut = pick_cut(&loaded, cut)?;
            let n = loaded.qp.quiver.n_vertices();
            let z = CentralCharge::parse(charge)?;
            if z.len() != n {
                return Err(Failure::usage(format!("charge has {} values, quiver has {n} vertices", z.len())));
            }
            let region = parse_box(bx, n)?;
            let a = dt_series(&loaded.qp, &cut, &region, CountFilter::None, &count_options(count)?)?;
            let factors = hn_factorize(&a, &z)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for ray in rays_in_order(&factors) {
                let s = &factors[&ray];
                let terms: Vec<Value> = s
                    .terms()
                    .filter(|(v, _)| v.iter().any(|&x| x != 0))
                    .map(|(v, c)| json!({ "v": v, "coeff": c.to_string() }))
                    .collect();
                text += &format!("ray {ray}: {s}\n");
                rows.push(json!({ "ray": ray.to_string(), "terms": terms }));
            }
            Ok(Outcome::ok(Value::Array(rows), text))
        }
        Command::Dilog { n } => {
            let rows: Vec<Value> = (0..=*n)
                .map(|i| json!({ "n": i, "coeff": dilog_coefficient(i).to_string() }))
                .collect();
            let text = (0..=*n)
                .map(|i| format!("{i}\t{}\n", dilog_coefficient(i)))
                .collect();
            Ok(Outcome::ok(Value::Array(rows), text))
        }
    }
}

/// Runs the command line, writing the report to `out` (unless `--output` is
/// given) and diagnostics to `err`; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let body = if cli.json {
                serde_json::to_string(&o.json).unwrap() + "\n"
            } else {
                o.text
            };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, body).map_err(|e| e.to_string()),
                None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "{}", json!({ "error": "io", "message": e }));
                return EXIT_USAGE;
            }
            o.code
        }
        Err(f) => {
            let mut diag = json!({ "error": f.kind, "message": f.message });
            if let Some(h) = f.hint {
                diag["hint"] = Value::String(h);
            }
            let _ = writeln!(err, "{diag}");
            f.code
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}
