use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use graded_hecke::error::{Error, Result};
use graded_hecke::functor::{cojacquet, hermitian_dual, jacquet};
use graded_hecke::hmodule::default_dim_cap;
use graded_hecke::verify::{self, Report, SuiteConfig};
use graded_hecke::weight::{kgroup_paths, w_prime_for, Direction};
use graded_hecke::{HModule, Scalar, Segment, Weight};

/// Exact-arithmetic workbench for graded Hecke algebra modules,
/// multisegment K-rings, and translation functor checks.
#[derive(Parser)]
#[command(name = "ghk", version, max_term_width = 100)]
struct Cli {
    /// Output format for reports and modules
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum DirArg {
    RaiseRight,
    LowerLeft,
    Both,
}

/// Where a module comes from: a JSON file, a weight, or a segment.
#[derive(Args)]
struct ModuleInput {
    /// Read the module from a JSON file ("-" for stdin)
    #[arg(long, value_name = "FILE")]
    module: Option<PathBuf>,
    /// Left weight coordinates, comma separated (with --lambdaR: Gamma module)
    #[arg(long = "lambdaL", value_name = "LIST")]
    lambda_l: Option<String>,
    /// Right weight coordinates, comma separated
    #[arg(long = "lambdaR", value_name = "LIST")]
    lambda_r: Option<String>,
    /// A single segment: Steinberg module
    #[arg(long, value_name = "SEG")]
    seg: Option<String>,
    /// Dimension cap for module construction
    #[arg(long, value_name = "N")]
    dim_cap: Option<usize>,
}

impl ModuleInput {
    fn cap(&self) -> usize {
        self.dim_cap.unwrap_or_else(default_dim_cap)
    }

    fn load(&self) -> Result<HModule> {
        if let Some(path) = &self.module {
            let text = if path.as_os_str() == "-" {
                use std::io::Read;
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf)?;
                buf
            } else {
                fs::read_to_string(path)?
            };
            return HModule::from_json_str(&text);
        }
        if let Some(seg) = &self.seg {
            let seg: Segment = seg.parse()?;
            return Ok(HModule::steinberg(&seg));
        }
        match (&self.lambda_l, &self.lambda_r) {
            (Some(l), Some(r)) => {
                let lam = Weight::parse_lists(l, r)?;
                HModule::gamma_module(&lam, self.cap())
            }
            _ => Err(Error::ModuleData(
                "provide --module FILE, --seg SEG, or --lambdaL/--lambdaR".to_string(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining algebra relations on a module
    Relations {
        #[command(flatten)]
        input: ModuleInput,
    },
    /// Build the induced module attached to a weight
    Gamma {
        #[arg(long = "lambdaL", value_name = "LIST")]
        lambda_l: String,
        #[arg(long = "lambdaR", value_name = "LIST")]
        lambda_r: String,
        #[arg(long, value_name = "N")]
        dim_cap: Option<usize>,
    },
    /// Jacquet restriction: generalized a-eigenspace of y_1
    Jac {
        #[command(flatten)]
        input: ModuleInput,
        /// Eigenvalue, e.g. "1/2" or "3/2 i-1"
        #[arg(long, short = 'a', value_name = "SCALAR")]
        a: String,
    },
    /// Co-Jacquet restriction: generalized a-eigenspace of y_m
    Cojac {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long, short = 'a', value_name = "SCALAR")]
        a: String,
    },
    /// Parabolic induction of two modules
    Induce {
        /// First factor as a segment (Steinberg)
        #[arg(long, value_name = "SEG", conflicts_with = "m1")]
        seg1: Option<String>,
        /// Second factor as a segment (Steinberg)
        #[arg(long, value_name = "SEG", conflicts_with = "m2")]
        seg2: Option<String>,
        /// First factor from a module JSON file
        #[arg(long, value_name = "FILE")]
        m1: Option<PathBuf>,
        /// Second factor from a module JSON file
        #[arg(long, value_name = "FILE")]
        m2: Option<PathBuf>,
        #[arg(long, value_name = "N")]
        dim_cap: Option<usize>,
    },
    /// Hermitian dual of a module
    Dual {
        #[command(flatten)]
        input: ModuleInput,
    },
    /// K-level commutativity of translation with Jacquet derivations
    Kcheck {
        #[arg(long = "lambdaL", value_name = "LIST")]
        lambda_l: String,
        #[arg(long = "lambdaR", value_name = "LIST")]
        lambda_r: String,
        /// Weight coordinate (1-based)
        #[arg(long, short = 'i')]
        i: usize,
        #[arg(long, value_enum, default_value_t = DirArg::Both)]
        direction: DirArg,
        /// Cap on the number of Weyl group elements sampled
        #[arg(long, default_value_t = 24)]
        w_limit: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the full randomized verification suite
    Suite {
        /// Read a SuiteConfig from a JSON file
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Size of the K-level section; other sections scale with it
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long, value_name = "N")]
        dim_cap: Option<usize>,
        /// Attach wall time to the report (makes output nondeterministic)
        #[arg(long)]
        timing: bool,
    },
}

fn load_factor(seg: &Option<String>, file: &Option<PathBuf>, which: &str) -> Result<HModule> {
    match (seg, file) {
        (Some(seg), None) => Ok(HModule::steinberg(&seg.parse()?)),
        (None, Some(path)) => HModule::from_json_str(&fs::read_to_string(path)?),
        _ => Err(Error::ModuleData(format!(
            "provide --seg{which} or --m{which} for factor {which}"
        ))),
    }
}

fn emit_module(module: &HModule, format: Format) {
    match format {
        Format::Json => println!("{}", module.to_json_string()),
        Format::Text => {
            println!("m = {}", module.m());
            println!("dim = {}", module.dim());
            println!("basis = {}", module.basis_labels().join(", "));
        }
    }
}

fn emit_report(report: &Report, format: Format) -> Result<bool> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
        Format::Text => print!("{}", report.render_text()),
    }
    Ok(report.pass)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Relations { input } => {
            let module = input.load()?;
            let rel = module.check_relations();
            let mut case = verify::CaseReport::new(format!("m={} dim={}", rel.m, rel.dim));
            for check in &rel.checks {
                case.push(verify::Check::compare(
                    &check.name,
                    "holds",
                    if check.pass { "holds" } else { "violated" },
                ));
            }
            emit_report(&Report::from_cases("relations", vec![case]), cli.format)
        }
        Command::Gamma { lambda_l, lambda_r, dim_cap } => {
            let lam = Weight::parse_lists(lambda_l, lambda_r)?;
            let cap = dim_cap.unwrap_or_else(default_dim_cap);
            emit_module(&HModule::gamma_module(&lam, cap)?, cli.format);
            Ok(true)
        }
        Command::Jac { input, a } => {
            let module = input.load()?;
            let a: Scalar = a.parse()?;
            emit_module(&jacquet(&module, &a)?, cli.format);
            Ok(true)
        }
        Command::Cojac { input, a } => {
            let module = input.load()?;
            let a: Scalar = a.parse()?;
            emit_module(&cojacquet(&module, &a)?, cli.format);
            Ok(true)
        }
        Command::Induce { seg1, seg2, m1, m2, dim_cap } => {
            let left = load_factor(seg1, m1, "1")?;
            let right = load_factor(seg2, m2, "2")?;
            let cap = dim_cap.unwrap_or_else(default_dim_cap);
            emit_module(&left.induce(&right, cap)?, cli.format);
            Ok(true)
        }
        Command::Dual { input } => {
            let module = input.load()?;
            emit_module(&hermitian_dual(&module), cli.format);
            Ok(true)
        }
        Command::Kcheck { lambda_l, lambda_r, i, direction, w_limit, seed } => {
            let lam = Weight::parse_lists(lambda_l, lambda_r)?;
            let dirs = match direction {
                DirArg::RaiseRight => vec![Direction::RaiseRight],
                DirArg::LowerLeft => vec![Direction::LowerLeft],
                DirArg::Both => vec![Direction::RaiseRight, Direction::LowerLeft],
            };
            let ws = w_prime_for(&lam, *w_limit, *seed);
            let mut cases = Vec::new();
            for dir in dirs {
                for kp in kgroup_paths(&lam, *i, dir, &ws)? {
                    let mut case = verify::CaseReport::new(format!(
                        "lam={lam} i={i} w={} dir={dir}",
                        kp.w.one_line()
                    ));
                    case.path_a = Some(kp.path_a.to_string());
                    case.path_b = Some(kp.path_b.to_string());
                    case.equal = Some(kp.equal);
                    case.push(verify::Check::compare("paths equal", &kp.path_a, &kp.path_b));
                    cases.push(case);
                }
            }
            emit_report(&Report::from_cases("kcheck", cases), cli.format)
        }
        Command::Suite { config, seed, cases, dim_cap, timing } => {
            let mut cfg = match config {
                Some(path) => serde_json::from_str::<SuiteConfig>(&fs::read_to_string(path)?)?,
                None => SuiteConfig::default(),
            };
            if let Some(seed) = seed {
                cfg.seed = *seed;
            }
            if let Some(cases) = cases {
                cfg.case_count = *cases;
            }
            if let Some(cap) = dim_cap {
                cfg.dim_cap = *cap;
            }
            let start = Instant::now();
            let mut report = verify::run_suite(&cfg);
            if *timing {
                report.wall_time_ms = Some(start.elapsed().as_millis());
            }
            emit_report(&report, cli.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
