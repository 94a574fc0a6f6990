use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use b0_cli::commands::{
    certificate_report, cmd_b0, cmd_catalog, cmd_central_product, cmd_info, cmd_transgression,
    oracle_cap, resolve_certificate, B0Options, CentralProductInput, ElementRef, MethodChoice,
};
use b0_cli::error::CliError;
use b0_cli::report::{Report, Verdict};
use b0_cli::source::{read, GroupSource, LoadedGroup};
use b0_cli::suite::{self, SuiteConfig};
use bogomolov::cohomology::SubgroupMode;
use bogomolov::pcgroup::{CatalogParams, Family};
use bogomolov::wedge::to_json_lines;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "b0",
    version,
    about = "Bogomolov multipliers of finite p-groups"
)]
struct Cli {
    /// Omit wall-clock times so that reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the presentation of a catalog group.
    Catalog {
        family: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Structural data of a group.
    Info {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Compute or certify B0(G).
    B0 {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Triviality certificate (JSON).
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Subgroup family used by the oracle.
        #[arg(long, value_enum, default_value = "abelian")]
        mode: ModeArg,
        /// Coefficient modulus for the oracle, a multiple of |G|.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// B0 of a central product from a JSON specification.
    CentralProduct { spec: PathBuf },
    /// Lower bound (N ∩ G')/<N ∩ K(G)> for B0(G/N).
    Transgression {
        #[command(flatten)]
        group: GroupArgs,
        /// Generators of N (words or table ids); N is their normal closure.
        #[arg(long = "normal", required = true)]
        normal: Vec<String>,
    },
    /// Check a certificate, audit its trace and optionally write it.
    Verify {
        cert: PathBuf,
        #[command(flatten)]
        group: GroupArgs,
        /// Write the expansion trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run the acceptance matrix.
    PaperSuite {
        /// Primes for the parametrised rows (repeatable).
        #[arg(long = "p")]
        primes: Vec<u64>,
        /// Row groups to skip; only `oracle` is recognised.
        #[arg(long)]
        skip: Vec<String>,
        #[arg(long, default_value_t = suite::DEFAULT_SEED)]
        seed: u64,
        /// Samples per group in the fuzz row.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Oracle,
    Class2,
    Cert,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Abelian,
    Bicyclic,
}

#[derive(Args, Default)]
struct ParamArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    /// Heisenberg divisors d_1|...|d_n (comma separated) or freest-special rank.
    #[arg(long, value_delimiter = ',')]
    d: Vec<u64>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args)]
struct GroupArgs {
    /// Catalog family.
    #[arg(long)]
    catalog: Option<String>,
    #[command(flatten)]
    params: ParamArgs,
    /// Full catalog parameters as JSON, e.g. for direct products.
    #[arg(long, conflicts_with = "catalog")]
    params_json: Option<String>,
    /// Multiplication table (JSON).
    #[arg(long, conflicts_with_all = ["catalog", "params_json"])]
    table: Option<PathBuf>,
    /// Presentation file.
    #[arg(conflicts_with_all = ["catalog", "params_json", "table"])]
    file: Option<PathBuf>,
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(format!("{family} requires --{flag}")))
}

fn catalog_params(family: &str, a: &ParamArgs) -> Result<CatalogParams, CliError> {
    let fam = Family::from_tag(family)
        .ok_or_else(|| CliError::usage(format!("unknown family `{family}`")))?;
    let tag = fam.tag();
    Ok(match fam {
        Family::Phi15 => CatalogParams::Phi15 {
            p: need(a.p, "p", tag)?,
        },
        Family::Phi28 => CatalogParams::Phi28 {
            p: need(a.p, "p", tag)?,
        },
        Family::Phi29 => CatalogParams::Phi29 {
            p: need(a.p, "p", tag)?,
        },
        Family::Heisenberg => CatalogParams::Heisenberg {
            r: need(a.r, "r", tag)?,
            d: if a.d.is_empty() { vec![1] } else { a.d.clone() },
        },
        Family::FreestSpecial => {
            let d = a.rank.or_else(|| a.d.first().map(|&d| d as usize));
            CatalogParams::FreestSpecial {
                p: need(a.p, "p", tag)?,
                d: need(d, "d", tag)?,
            }
        }
        Family::Cyclic => CatalogParams::Cyclic {
            n: need(a.n, "n", tag)?,
        },
        Family::ElementaryAbelian => CatalogParams::ElementaryAbelian {
            p: need(a.p, "p", tag)?,
            rank: need(a.rank, "rank", tag)?,
        },
        Family::DirectProduct => {
            return Err(CliError::usage(
                "direct_product takes its factors through --params-json",
            ))
        }
    })
}

impl GroupArgs {
    fn source(&self) -> Result<Option<GroupSource>, CliError> {
        Ok(if let Some(f) = &self.catalog {
            Some(GroupSource::Catalog(catalog_params(f, &self.params)?))
        } else if let Some(j) = &self.params_json {
            let p = serde_json::from_str(j)
                .map_err(|e| CliError::usage(format!("--params-json: {e}")))?;
            Some(GroupSource::Catalog(p))
        } else if let Some(t) = &self.table {
            Some(GroupSource::Table(t.clone()))
        } else {
            self.file.clone().map(GroupSource::Pc)
        })
    }

    fn load(&self) -> Result<Option<LoadedGroup>, CliError> {
        self.source()?.map(|s| LoadedGroup::load(&s)).transpose()
    }

    fn require(&self) -> Result<LoadedGroup, CliError> {
        self.load()?.ok_or_else(|| {
            CliError::usage("no group given: use --catalog, --params-json, --table or a file")
        })
    }
}

fn element_ref(s: &str) -> ElementRef {
    s.parse()
        .map(ElementRef::Id)
        .unwrap_or_else(|_| ElementRef::Word(s.to_string()))
}

/// Writes to stdout; a closed pipe ends output quietly.
fn out(text: &str) {
    let mut stdout = io::stdout().lock();
    let _ = stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush());
}

fn emit(report: Report, no_timing: bool) -> Result<(), CliError> {
    let report = if no_timing {
        report.timed(None)
    } else {
        report
    };
    if let Some(ms) = report.wall_clock_ms {
        eprintln!(
            "{}: {:?} via {:?} in {ms} ms",
            report.group.name, report.verdict, report.method
        );
    }
    out(&format!("{}\n", report.to_json()));
    if report.verdict == Verdict::Inconclusive {
        return Err(CliError::inconclusive(format!(
            "Inconclusive: the certificate bounds B0 by {}, which proves nothing",
            report.bound.map(|b| b.to_string()).unwrap_or_default()
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cap = oracle_cap()?;
    match cli.command {
        Command::Catalog { family, params } => {
            out(&cmd_catalog(&catalog_params(&family, &params)?)?);
            Ok(())
        }
        Command::Info { group } => {
            let info = cmd_info(&mut group.require()?, cap)?;
            out(&format!(
                "{}\n",
                serde_json::to_string_pretty(&info).expect("serializable")
            ));
            Ok(())
        }
        Command::B0 {
            group,
            method,
            cert,
            mode,
            modulus,
        } => {
            let opts = B0Options {
                method: match method {
                    MethodArg::Auto => MethodChoice::Auto,
                    MethodArg::Oracle => MethodChoice::Oracle,
                    MethodArg::Class2 => MethodChoice::Class2,
                    MethodArg::Cert => MethodChoice::Cert,
                },
                cert,
                mode: match mode {
                    ModeArg::Abelian => SubgroupMode::Abelian,
                    ModeArg::Bicyclic => SubgroupMode::Bicyclic,
                },
                modulus,
                cap,
            };
            emit(cmd_b0(group.load()?, &opts)?, cli.no_timing)
        }
        Command::CentralProduct { spec } => {
            let input: CentralProductInput = serde_json::from_str(&read(&spec)?)
                .map_err(|e| CliError::usage(format!("{}: {e}", spec.display())))?;
            let dir = spec.parent().map(PathBuf::from).unwrap_or_default();
            emit(cmd_central_product(&input, &dir, cap)?, cli.no_timing)
        }
        Command::Transgression { group, normal } => {
            let refs: Vec<ElementRef> = normal.iter().map(|s| element_ref(s)).collect();
            emit(
                cmd_transgression(&mut group.require()?, &refs)?,
                cli.no_timing,
            )
        }
        Command::Verify { cert, group, trace } => {
            let start = std::time::Instant::now();
            let (c, g, vars) = resolve_certificate(&cert, group.load()?)?;
            let (report, certified) = certificate_report(&c, &g, &vars)?;
            if let Some(path) = trace {
                std::fs::write(&path, to_json_lines(&certified.trace))
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
                eprintln!(
                    "wrote {} trace steps to {}",
                    certified.trace.len(),
                    path.display()
                );
            }
            emit(report.timed(Some(start.elapsed())), cli.no_timing)
        }
        Command::PaperSuite {
            primes,
            skip,
            seed,
            samples,
        } => {
            if let Some(s) = skip.iter().find(|s| s.as_str() != "oracle") {
                return Err(CliError::usage(format!(
                    "unknown row group `{s}` for --skip"
                )));
            }
            let cfg = SuiteConfig {
                primes: (!primes.is_empty()).then_some(primes),
                skip_oracle: !skip.is_empty(),
                seed,
                fuzz_samples: samples,
                oracle_cap: cap,
            };
            let report = suite::run(&cfg);
            for row in &report.rows {
                eprintln!("{}", row.line());
            }
            out(&format!(
                "{}\n",
                serde_json::to_string_pretty(&report).expect("serializable")
            ));
            if report.all_passed() {
                Ok(())
            } else {
                Err(CliError::internal(format!(
                    "{} row(s) failed",
                    report.failed
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
