use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use artinrg::commands::{self, ChainSpec, Context, ExprSource, OrderTarget, VerifyOptions};
use artinrg_core::fpgroup::DEFAULT_COSET_LIMIT;

/// Exact rank gradient, cost and first L²-Betti numbers of Artin groups,
/// Coxeter groups and amalgams, with certificates and empirical checks.
#[derive(Parser)]
#[command(name = "artinrg", version)]
struct Cli {
    /// Omit the timestamp line so reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Artin group of a graph file: components, cost, rank gradient.
    Artin {
        graph: PathBuf,
        /// Write the decomposition certificate as JSON.
        #[arg(long, value_name = "PATH")]
        certify: Option<PathBuf>,
    },
    /// Coxeter group of a planar graph of girth at least 6.
    Coxeter {
        graph: PathBuf,
        /// Write the elimination trace as JSON.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Evaluate a group expression file.
    #[command(group(ArgGroup::new("src").required(true).args(["file", "inline"])))]
    Expr {
        file: Option<PathBuf>,
        /// Expression text instead of a file.
        #[arg(short = 'e', long = "expr", value_name = "TEXT")]
        inline: Option<String>,
    },
    /// Build, write, re-read and check a certificate for a builtin group
    /// or a connected graph file.
    Certify {
        /// SL2Z, MCG, BnModCenter, AutF2, AutFn, OutFn, or a graph file.
        target: String,
        param: Option<u32>,
        #[arg(long, alias = "certify", value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check a certificate JSON file.
    Check { certificate: PathBuf },
    /// Sample (d(H) - 1)/[G:H] along a chain of normal subgroups.
    #[command(group(ArgGroup::new("chain").required(true).args(["modulus", "abelian_kill", "low_index"])))]
    Verify {
        /// SL2Z, PSL2Z, braid3, braid<N>, dinf, or a presentation file.
        target: String,
        /// Congruence kernels mod each n (SL2Z and PSL2Z).
        #[arg(long = "mod", value_name = "LIST", value_delimiter = ',')]
        modulus: Option<Vec<u64>>,
        /// Kernels of the map sending every generator to 1 mod m.
        #[arg(long, value_name = "LIST", value_delimiter = ',')]
        abelian_kill: Option<Vec<u64>>,
        /// All normal subgroups of index at most N.
        #[arg(long, value_name = "N")]
        low_index: Option<usize>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_COSET_LIMIT)]
        coset_limit: usize,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// Print the presentation used.
        #[arg(long)]
        dump_presentation: bool,
    },
    /// Order by Todd-Coxeter enumeration over the trivial subgroup.
    Order {
        /// Builtin name or presentation file; a graph file with --coxeter.
        target: String,
        #[arg(long)]
        coxeter: bool,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_COSET_LIMIT)]
        coset_limit: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context {
        command: std::iter::once("artinrg".to_string())
            .chain(std::env::args().skip(1))
            .collect::<Vec<_>>()
            .join(" "),
        timestamp: !cli.no_timestamp,
    };
    let report = match &cli.command {
        Command::Artin { graph, certify } => commands::artin(&ctx, graph, certify.as_deref()),
        Command::Coxeter { graph, trace } => commands::coxeter(&ctx, graph, trace.as_deref()),
        Command::Expr { file, inline } => {
            let src = match (file, inline) {
                (Some(f), _) => ExprSource::File(f),
                (None, Some(s)) => ExprSource::Inline(s),
                (None, None) => unreachable!("clap requires one source"),
            };
            commands::expr(&ctx, src)
        }
        Command::Certify { target, param, out } => commands::certify(&ctx, target, *param, out.as_deref()),
        Command::Check { certificate } => commands::check(&ctx, certificate),
        Command::Verify {
            target,
            modulus,
            abelian_kill,
            low_index,
            coset_limit,
            csv,
            dump_presentation,
        } => {
            let chain = match (modulus, abelian_kill, low_index) {
                (Some(m), _, _) => ChainSpec::Mod(m.clone()),
                (_, Some(k), _) => ChainSpec::AbelianKill(k.clone()),
                (_, _, Some(n)) => ChainSpec::LowIndex(*n),
                _ => unreachable!("clap requires one chain flag"),
            };
            let opts = VerifyOptions {
                target: target.clone(),
                chain,
                coset_limit: *coset_limit,
                csv: csv.clone(),
                dump_presentation: *dump_presentation,
            };
            commands::verify(&ctx, &opts)
        }
        Command::Order {
            target,
            coxeter,
            coset_limit,
        } => {
            let t = if *coxeter {
                OrderTarget::CoxeterGraph(target.as_ref())
            } else {
                OrderTarget::Presentation(target)
            };
            commands::order(&ctx, t, *coset_limit)
        }
    };
    print!("{report}");
    if let Some(e) = &report.error {
        eprintln!("artinrg: {e}");
    }
    ExitCode::from(report.exit_code() as u8)
}
