use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fthresh::cli::{self, Command, Options, RingFile};
use fthresh::ring::MonomialOrder;
use fthresh::Error;

#[derive(Parser)]
#[command(name = "fthresh", version, about = "F-purity and F-pure thresholds of graded rings over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

#[derive(Args)]
struct Common {
    /// Ring file, or `corpus:<name>` for a built-in example.
    ring: String,
    /// Highest Frobenius level e.
    #[arg(long, default_value_t = 2)]
    emax: u32,
    #[arg(long, value_enum, default_value_t = Order::Grevlex)]
    order: Order,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cell budget for Hilbert function and resolution work.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fedder's criterion.
    Check(Common),
    /// F-pure threshold bounds, exact in the Gorenstein case.
    Fpt(Common),
    /// nu(p^e) and the diagonal F-threshold estimates.
    Nu(Common),
    /// a-invariants, depth and Cohen-Macaulay type.
    Ainv(Common),
    /// Graded Betti table.
    Betti(Common),
    /// Splitting ideals and the splitting prime estimate.
    Splitting(Common),
    /// Whether J is compatible with the Frobenius splittings of S/I.
    Compatible {
        #[command(flatten)]
        common: Common,
        /// Generators of J, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        ideal: Vec<String>,
    },
    /// F-pure sequence of linear forms.
    Sequence(Common),
    /// All inequality checks on one ring, or the built-in corpus.
    Verify {
        /// Ring file; omit with --corpus.
        ring: Option<String>,
        #[arg(long)]
        corpus: bool,
        #[arg(long, default_value_t = 2)]
        emax: u32,
        #[arg(long, value_enum, default_value_t = Order::Grevlex)]
        order: Order,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
}

fn load(source: &str, order: Order) -> Result<RingFile, Error> {
    let order = match order {
        Order::Grevlex => MonomialOrder::Grevlex,
        Order::Lex => MonomialOrder::Lex,
    };
    let text = match source.strip_prefix("corpus:") {
        Some(name) => cli::CORPUS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t.to_string())
            .ok_or_else(|| Error::parse(0, 0, format!("no corpus entry `{name}`")))?,
        None => std::fs::read_to_string(PathBuf::from(source))
            .map_err(|e| Error::parse(0, 0, format!("cannot read {source}: {e}")))?,
    };
    cli::parse_ring_file(&text, order)
}

fn run(cmd: Command, common: Common, ideal: Option<Vec<String>>) -> Result<cli::Outcome, Error> {
    let file = load(&common.ring, common.order)?;
    let opts = Options {
        emax: common.emax,
        seed: common.seed,
        budget: common.budget,
        json: common.json,
        compatible_with: ideal,
    };
    cli::run_command(cmd, &file, &opts)
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let result = match args.command {
        Cmd::Check(c) => run(Command::Check, c, None),
        Cmd::Fpt(c) => run(Command::Fpt, c, None),
        Cmd::Nu(c) => run(Command::Nu, c, None),
        Cmd::Ainv(c) => run(Command::Ainv, c, None),
        Cmd::Betti(c) => run(Command::Betti, c, None),
        Cmd::Splitting(c) => run(Command::Splitting, c, None),
        Cmd::Sequence(c) => run(Command::Sequence, c, None),
        Cmd::Compatible { common, ideal } => run(Command::Compatible, common, Some(ideal)),
        Cmd::Verify {
            ring,
            corpus,
            emax,
            order,
            budget,
            json,
        } => {
            let opts = Options {
                emax,
                budget,
                json,
                ..Options::default()
            };
            match (ring, corpus) {
                (None, true) => Ok(cli::run_corpus(&opts)),
                (Some(ring), false) => load(&ring, order).and_then(|f| cli::run_command(Command::Verify, &f, &opts)),
                _ => Err(Error::Argument("verify takes a ring file or --corpus, not both".into())),
            }
        }
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe downstream is not an error of ours.
            let _ = stdout.write_all(out.output.as_bytes());
            if !out.output.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code(&err) as u8)
        }
    }
}
