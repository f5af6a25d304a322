mod commands;
mod select;
mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use motifkit::{Caps, Error};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(
    name = "motifkit",
    version,
    about = "Exact induced-subgraph counting and hardness gadgets"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON record here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Pretty-print the JSON record.
    #[arg(long, global = true)]
    pretty: bool,
    #[arg(long, global = true)]
    max_canon: Option<usize>,
    #[arg(long, global = true)]
    max_treewidth: Option<usize>,
    #[arg(long, global = true, env = "MOTIFKIT_MAX_MASK_BITS")]
    max_mask_bits: Option<usize>,
    #[arg(long, global = true)]
    max_enumeration: Option<u64>,
}

impl GlobalOpts {
    fn caps(&self) -> Result<Caps, Error> {
        let mut caps = Caps::DEFAULT;
        if let Some(v) = self.max_canon {
            caps.canon = v;
        }
        if let Some(v) = self.max_treewidth {
            caps.treewidth = v;
        }
        if let Some(v) = self.max_mask_bits {
            caps.mask_bits = v;
        }
        if let Some(v) = self.max_enumeration {
            caps.enumeration = v;
        }
        if caps.canon == 0 || caps.treewidth == 0 || caps.mask_bits == 0 || caps.enumeration == 0 {
            return Err(Error::input("caps must be positive"));
        }
        Ok(caps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Meagre fast path for certified forbidden sets, then the homomorphism basis when k fits the basis cap, else brute force.
    Auto,
    Basis,
    Brute,
    Meagre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupKind {
    Sylow,
    Full,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count k-vertex induced subgraphs satisfying a property.
    Count {
        #[arg(long)]
        property: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(long)]
        check_bruteforce: bool,
    },
    /// Count k-vertex induced subgraphs of a bipartite graph under a
    /// bipartite property.
    CountBip {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        check_bruteforce: bool,
    },
    /// Colour-prescribed bipartite count through the coefficient expansion.
    CountCp {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long)]
        check_bruteforce: bool,
    },
    /// Coefficient table a_T of a bipartite property over a host.
    Coeffs {
        #[arg(long)]
        psi: String,
        #[arg(long, conflicts_with = "host_biclique")]
        host: Option<PathBuf>,
        #[arg(long)]
        host_biclique: Option<usize>,
    },
    /// Homomorphism basis of a property at size k.
    Basis {
        #[arg(long)]
        property: String,
        #[arg(long)]
        k: usize,
    },
    /// Largest treewidth in the support of the basis.
    Tphi {
        #[arg(long)]
        property: String,
        #[arg(long)]
        k: usize,
    },
    /// Recover colour-prescribed homomorphism counts from induced counts.
    Extract {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long)]
        check_bruteforce: bool,
    },
    /// Twin-free quotient and its blocks.
    Quotient {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Implant a bipartite graph into two blocks of a host.
    Implant {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        b1: String,
        #[arg(long)]
        b2: String,
        #[arg(long)]
        bip: PathBuf,
    },
    /// Witness member and blocks for a forbidden set.
    Witness {
        #[arg(long, value_delimiter = ',', required = true)]
        forbidden: Vec<PathBuf>,
        /// Take the witness of the complement property.
        #[arg(long)]
        inverse: bool,
    },
    /// Witness for a twin-invariant property.
    WitnessTwin {
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Complexity row of the hereditary property given by a forbidden set.
    Classify {
        #[arg(long, value_delimiter = ',', required = true)]
        forbidden: Vec<PathBuf>,
    },
    /// Run the inclusion-exclusion reduction and compare with the direct
    /// bipartite count.
    ReduceVerify {
        #[arg(long, value_delimiter = ',', required = true)]
        forbidden: Vec<PathBuf>,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Orbits of side-preserving biclique automorphisms on edge subsets.
    Orbits {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = GroupKind::Sylow)]
        group: GroupKind,
        /// Also check the top coefficient of this bipartite property.
        #[arg(long)]
        psi: Option<String>,
    },
    /// Exact treewidth with an optimal decomposition.
    Treewidth {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Seeded randomized cross-checks of the fast paths against brute force.
    Selftest {
        #[arg(long, default_value_t = 20)]
        rounds: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Count { .. } => "count",
            Command::CountBip { .. } => "count-bip",
            Command::CountCp { .. } => "count-cp",
            Command::Coeffs { .. } => "coeffs",
            Command::Basis { .. } => "basis",
            Command::Tphi { .. } => "tphi",
            Command::Extract { .. } => "extract",
            Command::Quotient { .. } => "quotient",
            Command::Implant { .. } => "implant",
            Command::Witness { .. } => "witness",
            Command::WitnessTwin { .. } => "witness-twin",
            Command::Classify { .. } => "classify",
            Command::ReduceVerify { .. } => "reduce-verify",
            Command::Orbits { .. } => "orbits",
            Command::Treewidth { .. } => "treewidth",
            Command::Selftest { .. } => "selftest",
        }
    }
}

#[derive(Serialize)]
struct Timing {
    elapsed_us: u128,
}

#[derive(Serialize)]
struct ResultRecord {
    tool: &'static str,
    version: &'static str,
    subcommand: &'static str,
    seed: u64,
    inputs_digest: String,
    caps: Caps,
    output: Value,
    timing: Timing,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Contract(_) => 2,
        Error::Capacity { .. } => 3,
        Error::Consistency(_) => 4,
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    let start = Instant::now();
    let caps = cli.opts.caps()?;
    let mut inputs = select::Inputs::new(&format!("{:?} seed={}", cli.command, cli.opts.seed));
    let output = commands::dispatch(&cli.command, &mut inputs, &caps, cli.opts.seed)?;
    let record = ResultRecord {
        tool: "motifkit",
        version: env!("CARGO_PKG_VERSION"),
        subcommand: cli.command.name(),
        seed: cli.opts.seed,
        inputs_digest: inputs.digest(),
        caps,
        output,
        timing: Timing {
            elapsed_us: start.elapsed().as_micros(),
        },
    };
    let text = if cli.opts.pretty {
        serde_json::to_string_pretty(&record)
    } else {
        serde_json::to_string(&record)
    }
    .map_err(|e| Error::consistency(e.to_string()))?;
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            if let Some(path) = &cli.opts.output {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                // A closed pipe is not an error worth reporting.
                let _ = writeln!(std::io::stdout().lock(), "{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
