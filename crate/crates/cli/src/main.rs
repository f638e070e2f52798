mod cache;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quintic_modulus::certify::run_suite;
use quintic_modulus::kernel::nome;
use quintic_modulus::ladder::{audit_examples, ladder, LadderTrace};
use quintic_modulus::modular::{a_from_eta, rrcf_converged, rrcf_from_a};
use quintic_modulus::{Error, PosRational, PrecisionContext};
use serde_json::{json, Value};

use crate::cache::ModulusCache;
use crate::render::Renderer;

const EXIT_USAGE: u8 = 2;
const EXIT_CONVERGENCE: u8 = 3;
const EXIT_CERTIFICATION: u8 = 4;

/// Certified fifth-degree singular moduli, Rogers-Ramanujan continued
/// fractions and their modular identities.
#[derive(Debug, Parser)]
#[command(name = "quintic", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalFlags {
    /// Working precision in bits
    #[arg(long = "prec", global = true, default_value_t = 512)]
    prec: u32,

    /// Acceptance threshold exponent (residuals must be below 1e-TOL_EXP)
    #[arg(long = "tol-exp", global = true, default_value_t = 120)]
    tol_exp: u32,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Modulus cache file
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Significant digits in printed numbers
    #[arg(long, global = true, default_value_t = 50)]
    digits: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Singular modulus k_r with its certificate
    Kr {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Ascend k_{25^n r0} from k_{r0} and k_{r0/25}, certifying every level
    Ladder(LadderArgs),
    /// Ladder levels as CSV (r,k,residual)
    Table(LadderArgs),
    /// Rogers-Ramanujan continued fraction by closed form and by truncation
    Rrcf {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Run the identity suite at r
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Comma-separated subset of identity ids
        #[arg(long, value_delimiter = ',')]
        ids: Option<Vec<String>>,
    },
    /// Evaluate the worked examples as printed and in canonical form
    Audit,
}

#[derive(Debug, Args)]
struct LadderArgs {
    #[arg(long, allow_hyphen_values = true)]
    r0: String,
    #[arg(long)]
    n: usize,
    /// Override k_{r0} (decimal)
    #[arg(long = "seed-k")]
    seed_k: Option<String>,
    /// Override k_{r0/25} (decimal)
    #[arg(long = "seed-k25")]
    seed_k25: Option<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Convergence { .. } => EXIT_CONVERGENCE,
            Error::Certification { .. } | Error::Branch(_) => EXIT_CERTIFICATION,
            Error::Internal(_) => 1,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn parse_r(s: &str) -> Result<PosRational, Failure> {
    s.parse().map_err(|e: Error| usage(e.to_string()))
}

struct App {
    ctx: PrecisionContext,
    json: bool,
    out: Renderer,
    cache: ModulusCache,
}

impl App {
    fn emit(&self, text: String, command: &str, r: Option<PosRational>, key: &str, payload: Value) {
        if self.json {
            let doc = self.out.envelope(command, r, key, payload);
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        } else {
            print!("{text}");
        }
    }

    fn kr(&mut self, r: &str) -> Result<(), Failure> {
        let r = parse_r(r)?;
        let rec = self.cache.solve(r, &self.ctx)?;
        self.emit(
            self.out.modulus_text(&rec),
            "kr",
            Some(r),
            "modulus",
            self.out.modulus_json(&rec),
        );
        Ok(())
    }

    fn run_ladder(&mut self, args: &LadderArgs) -> Result<(LadderTrace, bool), Failure> {
        let r0 = parse_r(&args.r0)?;
        if args.n == 0 {
            return Err(usage("--n must be at least 1"));
        }
        let top = (0..args.n)
            .try_fold(r0, |r, _| r.times25())
            .map_err(Failure::from)?;
        if !top.at_least_one() {
            return Err(usage(format!(
                "25^n * r0 = {top} < 1; ladder from the reciprocal point and take complements"
            )));
        }
        let seed = |given: &Option<String>, r: PosRational, cache: &mut ModulusCache| match given {
            Some(s) => self.ctx.parse(s).map_err(Failure::from),
            None => Ok(cache.solve(r, &self.ctx)?.k),
        };
        let k_r0 = seed(&args.seed_k, r0, &mut self.cache)?;
        let k_below = seed(&args.seed_k25, r0.over25()?, &mut self.cache)?;
        match ladder(r0, &k_r0, &k_below, args.n, &self.ctx) {
            Ok(trace) => Ok((trace, true)),
            Err(Error::Certification { trace, .. }) => Ok((*trace, false)),
            Err(e) => Err(e.into()),
        }
    }

    fn ladder(&mut self, args: &LadderArgs) -> Result<(), Failure> {
        let (trace, certified) = self.run_ladder(args)?;
        self.emit(
            self.out.ladder_text(&trace, certified),
            "ladder",
            Some(trace.r0),
            "ladder",
            self.out.ladder_json(&trace, certified),
        );
        if certified {
            Ok(())
        } else {
            Err(Failure {
                code: EXIT_CERTIFICATION,
                message: "ladder certification failed".into(),
            })
        }
    }

    fn table(&mut self, args: &LadderArgs) -> Result<(), Failure> {
        let (trace, certified) = self.run_ladder(args)?;
        print!("{}", self.out.ladder_csv(&trace));
        if certified {
            Ok(())
        } else {
            Err(Failure {
                code: EXIT_CERTIFICATION,
                message: "ladder certification failed".into(),
            })
        }
    }

    fn rrcf(&mut self, r: &str) -> Result<(), Failure> {
        let r = parse_r(r)?;
        let q = nome(r, &self.ctx);
        let a = a_from_eta(&q, &self.ctx)?;
        let closed = rrcf_from_a(&a, &self.ctx)?;
        let truncated = rrcf_converged(&q, &self.ctx)?;
        let fields = self.out.rrcf_fields(&closed, &truncated, &a);
        let text: String = std::iter::once(format!("r = {r}\n"))
            .chain(fields.iter().map(|(k, v)| format!("{k:<9} = {v}\n")))
            .collect();
        let payload: serde_json::Map<String, Value> = fields
            .into_iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        self.emit(text, "rrcf", Some(r), "rrcf", Value::Object(payload));
        Ok(())
    }

    fn verify(&mut self, r: &str, ids: Option<&[String]>) -> Result<(), Failure> {
        let r = parse_r(r)?;
        let report = run_suite(r, ids, &self.ctx)?;
        self.emit(
            self.out.report_text(&report),
            "verify",
            Some(r),
            "report",
            self.out.report_json(&report),
        );
        if report.all_pass() {
            Ok(())
        } else {
            Err(Failure {
                code: EXIT_CERTIFICATION,
                message: format!(
                    "{}/{} identities pass",
                    report.passed(),
                    report.entries.len()
                ),
            })
        }
    }

    fn audit(&mut self) -> Result<(), Failure> {
        let checks = audit_examples(&self.ctx)?;
        self.emit(
            self.out.audit_text(&checks),
            "audit",
            None,
            "audit",
            self.out.audit_json(&checks),
        );
        if checks.iter().all(|c| c.canonical_pass) {
            Ok(())
        } else {
            Err(Failure {
                code: EXIT_CERTIFICATION,
                message: "canonical example forms failed to certify".into(),
            })
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let ctx = PrecisionContext::with_precision(g.prec)
        .and_then(|c| c.with_tol_exp(g.tol_exp))
        .map_err(|e| usage(e.to_string()))?;
    let cache = match &g.cache {
        Some(path) => {
            ModulusCache::load(path).map_err(|e| usage(format!("cache {}: {e}", path.display())))?
        }
        None => ModulusCache::disabled(),
    };
    let mut app = App {
        ctx,
        json: g.json,
        out: Renderer {
            digits: g.digits,
            ctx,
        },
        cache,
    };
    let result = match &cli.command {
        Command::Kr { r } => app.kr(r),
        Command::Ladder(args) => app.ladder(args),
        Command::Table(args) => app.table(args),
        Command::Rrcf { r } => app.rrcf(r),
        Command::Verify { r, ids } => app.verify(r, ids.as_deref()),
        Command::Audit => app.audit(),
    };
    if let Err(e) = app.cache.persist() {
        eprintln!("warning: could not write cache: {e}");
    }
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
