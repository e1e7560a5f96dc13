//! `modknot`: batch front end for linking numbers, q-deformed link
//! functions, Alexander polynomials and quasi-morphisms of modular knots.

mod commands;
mod config;
mod error;
mod output;
mod selfcheck;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use commands::{CorpusEmit, LinkqMode, Out};
use config::{Config, Format};
use error::CliError;
use output::Emitter;

#[derive(Parser, Debug)]
#[command(name = "modknot", version, about = "Exact computations on modular knots")]
struct Cli {
    /// Length bound for corpus sweeps, self-checks and sampled words.
    #[arg(long, global = true, default_value_t = 5)]
    max_len: usize,

    /// Numeric tolerance for floating-point checks and root finding.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads; falls back to MODKNOT_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Pairs,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjugacy class of a matrix in PSL2(Z).
    Reduce {
        #[arg(long, allow_hyphen_values = true, value_name = "A,B,C,D")]
        matrix: String,
    },
    /// Linking number of two modular knots.
    Lk {
        a: String,
        b: String,
        /// shift, slp, oracle, or all (checks agreement).
        #[arg(long)]
        method: Option<String>,
    },
    /// Intersection number I(A, B).
    Intersection { a: String, b: String },
    /// Rademacher function.
    Rad { a: String },
    /// Cos_A(B).
    Cosa { a: String, b: String },
    /// The q-deformed linking function.
    #[command(group(ArgGroup::new("mode").required(true).args(["q", "symbolic", "roots", "grid"])))]
    Linkq {
        a: String,
        b: String,
        #[arg(long, allow_hyphen_values = true, value_name = "RE[,IM]")]
        q: Option<String>,
        #[arg(long)]
        symbolic: bool,
        #[arg(long)]
        roots: bool,
        #[arg(long, allow_hyphen_values = true, value_name = "CX,CY,R,PX")]
        grid: Option<String>,
        /// Output file for --grid (.ppm or .csv) or --roots (.csv).
        #[arg(long)]
        out: Option<String>,
    },
    /// Alexander polynomial of the closed braid.
    Alexander {
        a: String,
        /// Compare with the Fricke-trace side.
        #[arg(long)]
        check: bool,
    },
    /// The Fricke polynomial Tr(A_q).
    Fricke { a: String },
    /// Quasi-morphism defects and basis decompositions.
    #[command(group(ArgGroup::new("task").required(true).args(["defect", "decompose"])))]
    Qm {
        /// rad, mas:P or cos:A.
        #[arg(long, requires = "samples")]
        defect: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        /// Length bound m of the index set.
        #[arg(long, requires_all = ["basis", "values"])]
        decompose: Option<usize>,
        #[arg(long, value_parser = ["mas", "cos"])]
        basis: Option<String>,
        /// CSV file of `class,value` lines.
        #[arg(long)]
        values: Option<String>,
    },
    /// Sweep over primitive hyperbolic classes up to --max-len.
    Corpus {
        #[arg(long, value_enum, default_value_t = Emit::Table)]
        emit: Emit,
    },
    /// Run the invariant suites up to --max-len.
    Selfcheck,
}

fn run(command: Command, cfg: &Config, out: &mut Out) -> Result<(), CliError> {
    cfg.install_pool()?;
    match command {
        Command::Reduce { matrix } => commands::reduce(out, &matrix),
        Command::Lk { a, b, method } => commands::lk(out, &a, &b, method.as_deref()),
        Command::Intersection { a, b } => commands::intersection(out, &a, &b),
        Command::Rad { a } => commands::rad(out, &a),
        Command::Cosa { a, b } => commands::cosa(out, &a, &b),
        Command::Linkq {
            a,
            b,
            q,
            symbolic,
            roots,
            grid,
            out: file,
        } => {
            let mode = if let Some(q) = q {
                LinkqMode::At(commands::parse_complex(&q)?)
            } else if symbolic {
                LinkqMode::Symbolic
            } else if roots {
                LinkqMode::Roots { csv: file }
            } else {
                let grid = commands::parse_grid(grid.as_deref().unwrap_or_default())?;
                LinkqMode::Grid {
                    grid,
                    file: file.unwrap_or_else(|| "linkq.ppm".into()),
                }
            };
            commands::linkq(out, cfg, &a, &b, mode)
        }
        Command::Alexander { a, check } => commands::alexander_cmd(out, &a, check),
        Command::Fricke { a } => commands::fricke(out, &a),
        Command::Qm {
            defect,
            samples,
            decompose,
            basis,
            values,
        } => match (defect, decompose) {
            (Some(f), _) => commands::qm_defect(out, cfg, &f, samples.unwrap_or(500)),
            (None, Some(m)) => commands::qm_decompose(
                out,
                m,
                basis.as_deref().unwrap_or("cos"),
                values.as_deref().unwrap_or_default(),
            ),
            (None, None) => Err(CliError::Usage("qm needs --defect or --decompose".into())),
        },
        Command::Corpus { emit } => {
            let emit = match emit {
                Emit::Pairs => CorpusEmit::Pairs,
                Emit::Table => CorpusEmit::Table,
            };
            commands::corpus(out, cfg, emit)
        }
        Command::Selfcheck => selfcheck::selfcheck(out, cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or_default();
            return fail(&CliError::Usage(first.trim_start_matches("error: ").to_string()));
        }
    };
    let cfg = match Config::new(cli.max_len, cli.tolerance, cli.seed, cli.format, cli.threads) {
        Ok(cfg) => cfg,
        Err(e) => return fail(&e),
    };
    let stdout = io::stdout();
    let mut out: Out = Emitter::new(Box::new(io::BufWriter::new(stdout.lock())), cfg.format);
    let result = run(cli.command, &cfg, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    let _ = writeln!(io::stderr(), "{}", e.to_json());
    ExitCode::from(e.exit_code() as u8)
}
