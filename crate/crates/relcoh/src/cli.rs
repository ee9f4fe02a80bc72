//! Argument parsing and command dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use relcoh_core::classes::{self, Method};
use relcoh_core::exactla::ArithConfig;
use relcoh_core::schemes;
use relcoh_core::trace::TraceWord;
use relcoh_core::{LieAlgebraSpec, MultiDegree};

use crate::cache::Cache;
use crate::engine::{Engine, EngineConfig};
use crate::output::{render, Format, Tables, Tabular};
use crate::repro::{self, ReproConfig};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "relcoh", version, about = "Relative Lie algebra cohomology of current superalgebras, sector by sector")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Number of primes every rank must agree on.
    #[arg(long, global = true, default_value_t = 2)]
    pub primes: usize,
    /// Seed for prime selection and evaluation points.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Exact certificates where available (class verification uses the monomial route).
    #[arg(long, global = true)]
    pub certify: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (default: one per CPU).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Sector cache directory (overrides RELCOH_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Force a linear-algebra route instead of choosing per algebra.
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodArg>,
    /// Include wall-clock times (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum MethodArg {
    Trace,
    Monomial,
}

fn parse_n(s: &str) -> Result<MultiDegree, String> {
    MultiDegree::parse(s)
}

fn parse_g(s: &str) -> Result<LieAlgebraSpec, String> {
    s.parse::<LieAlgebraSpec>().map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// dim H^{p;n} of one sector.
    Sector {
        #[arg(long, value_parser = parse_g)]
        g: LieAlgebraSpec,
        #[arg(long)]
        p: usize,
        /// Multidegree `n_{z+},n_{z-},n_{θ1},n_{θ2},n_{θ3}`.
        #[arg(long, value_parser = parse_n)]
        n: MultiDegree,
    },
    /// Every sector of one level, or of all levels up to --lmax.
    Table {
        #[arg(long, value_parser = parse_g)]
        g: LieAlgebraSpec,
        #[arg(long, conflicts_with = "lmax", required_unless_present = "lmax")]
        level: Option<u32>,
        #[arg(long)]
        lmax: Option<u32>,
    },
    /// Sectors up to level --lmax where two algebras have different cohomology.
    Compare {
        #[arg(long, value_parser = parse_g)]
        a: LieAlgebraSpec,
        #[arg(long, value_parser = parse_g)]
        b: LieAlgebraSpec,
        #[arg(long)]
        lmax: u32,
    },
    /// Restriction of super-commuting scheme invariants to the Cartan subalgebra.
    Restriction {
        #[arg(long, value_parser = parse_g)]
        g: LieAlgebraSpec,
        #[arg(long, value_parser = parse_n)]
        n: MultiDegree,
    },
    /// Closedness, exactness, fortuity and Cartan restriction of a class.
    Verify {
        /// Built-in name (XiF_sl2, XiF_so7, XiNC_so7) or a file of trace-word terms.
        class: String,
        /// Defaults to the algebra a built-in belongs to.
        #[arg(long, value_parser = parse_g)]
        g: Option<LieAlgebraSpec>,
    },
    /// Dimension of H^{p;n} modulo the multi-graviton span.
    Fortuitous {
        #[arg(long, value_parser = parse_g)]
        g: LieAlgebraSpec,
        #[arg(long)]
        p: usize,
        #[arg(long, value_parser = parse_n)]
        n: MultiDegree,
    },
    /// Runs the acceptance checks and prints a summary.
    Repro {
        /// sl2 saturation sweep through level 23 instead of 16.
        #[arg(long)]
        extended: bool,
        /// Highest level of the sl2 saturation sweep.
        #[arg(long)]
        level_budget: Option<u32>,
        /// Comma-separated check ids to run (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

impl Global {
    fn arith(&self) -> ArithConfig {
        let d = ArithConfig::default();
        ArithConfig { seed: self.seed.unwrap_or(d.seed), num_primes: self.primes.max(1), certify: self.certify, ..d }
    }

    fn method(&self) -> Option<Method> {
        self.method.map(|m| match m {
            MethodArg::Trace => Method::Trace,
            MethodArg::Monomial => Method::Monomial,
        })
    }

    fn engine(&self) -> Result<Engine, Error> {
        let config = EngineConfig { arith: self.arith(), method: self.method(), timing: self.timing, ..Default::default() };
        Ok(Engine::new(config, Cache::from_flag_or_env(self.cache_dir.as_deref())?))
    }
}

fn builtin_algebra(name: &str) -> Option<&'static str> {
    match name {
        "XiF_sl2" => Some("sl2"),
        "XiF_so7" | "XiNC_so7" => Some("so7"),
        _ => None,
    }
}

fn emit<T: Tabular>(value: &T, format: Format) -> Result<String, Error> {
    render(value, format)
}

/// Runs a parsed command, returning the rendered output.
pub fn execute(cli: &Cli) -> Result<(String, i32), Error> {
    let gl = &cli.global;
    let fmt = gl.format;
    let ec = Default::default();
    match &cli.command {
        Command::Sector { g, p, n } => {
            let engine = gl.engine()?;
            let r = engine.dim_h(&Engine::algebra(*g)?, *p, *n)?;
            Ok((emit(&r, fmt)?, 0))
        }
        Command::Table { g, level, lmax } => {
            let engine = gl.engine()?;
            let alg = Engine::algebra(*g)?;
            match (level, lmax) {
                (Some(l), _) => Ok((emit(&engine.level_table(&alg, *l)?, fmt)?, 0)),
                (None, Some(m)) => {
                    let tables = (0..=*m).map(|l| engine.level_table(&alg, l)).collect::<Result<Vec<_>, _>>()?;
                    Ok((emit(&Tables(tables), fmt)?, 0))
                }
                (None, None) => Err(Error::Input("table needs --level or --lmax".into())),
            }
        }
        Command::Compare { a, b, lmax } => {
            let engine = gl.engine()?;
            let r = engine.compare_langlands(&Engine::algebra(*a)?, &Engine::algebra(*b)?, *lmax)?;
            Ok((emit(&r, fmt)?, 0))
        }
        Command::Restriction { g, n } => {
            let alg = Engine::algebra(*g)?;
            let method = gl.method().unwrap_or_else(|| Method::auto(&alg));
            let r = match method {
                Method::Trace => schemes::restriction_report_traces(&alg, *n, &gl.arith(), &ec)?,
                Method::Monomial => schemes::non_cartan_kernel(&alg, *n, &gl.arith())?.report,
            };
            Ok((emit(&r, fmt)?, 0))
        }
        Command::Verify { class, g } => {
            let word = match classes::builtin_representative(class) {
                Ok(w) => w,
                Err(_) => {
                    let text = std::fs::read_to_string(class)
                        .map_err(|e| Error::Input(format!("`{class}` is neither a built-in class nor a readable file: {e}")))?;
                    TraceWord::parse(&text)?
                }
            };
            let spec = match (g, builtin_algebra(class)) {
                (Some(s), _) => *s,
                (None, Some(s)) => s.parse()?,
                (None, None) => return Err(Error::Input("--g is required for classes read from a file".into())),
            };
            let alg = Engine::algebra(spec)?;
            let method = if gl.certify { Method::Monomial } else { gl.method().unwrap_or_else(|| Method::auto(&alg)) };
            let r = classes::verify_class(&word, &alg, method, &gl.arith(), &ec)?;
            Ok((emit(&r, fmt)?, 0))
        }
        Command::Fortuitous { g, p, n } => {
            let alg = Engine::algebra(*g)?;
            let method = gl.method().unwrap_or_else(|| Method::auto(&alg));
            let r = classes::fortuity(&alg, *p, *n, method, &gl.arith(), &ec)?;
            Ok((emit(&r, fmt)?, 0))
        }
        Command::Repro { extended, level_budget, only } => {
            let mut cfg = if *extended { ReproConfig::extended() } else { ReproConfig::default() };
            cfg.seed = gl.arith().seed;
            if let Some(b) = level_budget {
                cfg.sl2_level_budget = *b;
            }
            let summary = repro::run(&cfg, only, |c| eprintln!("{}", c.line()));
            let code = if summary.all_pass() { 0 } else { 1 };
            Ok((emit(&summary, fmt)?, code))
        }
    }
}

/// Entry point; returns the process exit code (0 success, 1 bad input, 2 arithmetic disagreement).
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return 1;
        }
    }
    match execute(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<(String, i32), Error> {
        let cli = Cli::try_parse_from(std::iter::once("relcoh").chain(args.iter().copied())).map_err(|e| Error::Input(e.to_string()))?;
        execute(&cli)
    }

    fn json(args: &[&str]) -> serde_json::Value {
        serde_json::from_str(&run(args).unwrap().0).unwrap()
    }

    #[test]
    fn sector_command() {
        assert_eq!(json(&["sector", "--g", "sl2", "--p", "2", "--n", "0,0,1,1,0"])["dim_H"], 1);
        let top = json(&["sector", "--g", "sl2", "--p", "9", "--n", "0,0,1,1,0"]);
        assert_eq!(top["dim_H"], 0);
        assert_eq!(top["primes"], serde_json::json!([]));
    }

    #[test]
    fn bad_input_is_exit_one() {
        assert_eq!(run(&["sector", "--g", "sl2", "--p", "2", "--n", "0,0,1"]).unwrap_err().exit_code(), 1);
        assert_eq!(run(&["sector", "--g", "xx9", "--p", "2", "--n", "0,0,1,1,0"]).unwrap_err().exit_code(), 1);
        assert_eq!(run(&["verify", "NoSuchClass"]).unwrap_err().exit_code(), 1);
        assert_eq!(run(&["fortuitous", "--g", "so6", "--p", "2", "--n", "0,0,1,1,0", "--method", "trace"]).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn disagreement_is_exit_two() {
        assert_eq!(Error::Core(relcoh_core::RelcohError::Disagreement("x".into())).exit_code(), 2);
    }

    #[test]
    fn csv_table() {
        let (out, code) = run(&["table", "--g", "sl2", "--level", "4", "--format", "csv"]).unwrap();
        assert_eq!(code, 0);
        assert!(out.lines().count() > 1);
    }

    #[test]
    fn verify_from_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("killing.txt");
        std::fs::write(&path, "Tr(t1 t2)\n").unwrap();
        let v = json(&["verify", path.to_str().unwrap(), "--g", "sl2", "--certify"]);
        assert_eq!(v["closed"], true);
        assert_eq!(v["exact"], false);
        assert_eq!(v["fortuitous"], false);
        assert_eq!(v["cartan_restriction_zero"], false);
        assert_eq!(v["certified"], true);
    }
}
