use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use pgblock::field::{FieldSpec, Modulus};

mod commands;
mod output;

#[derive(Parser, Debug)]
#[command(name = "pgblock", version, about = "Blocking sets and linear sets in finite projective spaces")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for output files.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    t: u32,
    /// Defining polynomial `c_0,..,c_t`, lowest degree first.
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn field(&self) -> anyhow::Result<Arc<FieldSpec>> {
        let modulus = match &self.modulus {
            None => Modulus::Auto,
            Some(s) => Modulus::Given(parse_list(s).context("--modulus")?),
        };
        Ok(Arc::new(FieldSpec::new(self.p, self.t, modulus)?))
    }
}

fn parse_list(s: &str) -> anyhow::Result<Vec<u32>> {
    let items: Vec<&str> = s.split([',', ' ']).filter(|w| !w.is_empty()).collect();
    if items.is_empty() {
        bail!("empty list");
    }
    items.iter().map(|w| w.parse::<u32>().with_context(|| format!("not an integer: {w:?}"))).collect()
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a point set and write it with its report.
    Build {
        #[command(subcommand)]
        what: BuildCmd,
    },
    /// Check a point-set file.
    Verify(VerifyArgs),
    /// Enumerate all minimal blocking sets up to a size in a small space.
    Search(SearchArgs),
    /// Project a point set from a point onto a hyperplane.
    Project(ProjectArgs),
}

#[derive(Subcommand, Debug)]
enum BuildCmd {
    Line {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    BaerSubplane {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    LinearSet {
        #[command(subcommand)]
        from: LinearFrom,
    },
}

#[derive(Subcommand, Debug)]
enum LinearFrom {
    /// GF(p^e)-span of vectors over GF(p^t), one vector of n+1 codes per line.
    FromVectors {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        vectors: PathBuf,
    },
    /// Subspace of the reduced space, in `RED m q0` format.
    FromSubspace {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        subspace: PathBuf,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    input: PathBuf,
    /// Comma-separated selection of 1modp, sublines, lemmas, certify.
    #[arg(long, default_value = "1modp,sublines,lemmas,certify")]
    checks: String,
    /// Reduced subspace whose linear set is the input, used as blocking evidence where
    /// scanning all hyperplanes is out of reach.
    #[arg(long)]
    subspace: Option<PathBuf>,
    /// Subfield degree of the subspace file.
    #[arg(long)]
    e: Option<u32>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Largest size searched (defaults to the largest size below 3(q+1)/2).
    #[arg(long)]
    max_size: Option<usize>,
    /// Run even when the space has more than 100 points.
    #[arg(long)]
    force: bool,
    /// Disable the lower-bound and inessential-point pruning.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Args, Debug)]
struct ProjectArgs {
    input: PathBuf,
    /// Centre of projection as n+1 codes (default: first point on no secant).
    #[arg(long)]
    center: Option<String>,
    /// Target hyperplane as n+1 dual codes (default: first hyperplane missing the centre).
    #[arg(long)]
    hyperplane: Option<String>,
}

/// How a command ended: exit code and a one-line summary for the manifest.
pub struct Outcome {
    pub code: u8,
    pub summary: String,
}

pub struct Failure {
    pub code: u8,
    pub err: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: 2, err: e.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = std::fs::create_dir_all(&cli.out)
        .with_context(|| format!("cannot create {}", cli.out.display()))
        .map_err(Failure::from)
        .and_then(|()| commands::run(&cli));
    let outcome = match result {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            Outcome { code: f.code, summary: format!("{:#}", f.err) }
        }
    };
    if let Err(e) = output::write_manifest(&cli, &outcome, started.elapsed()) {
        eprintln!("error: cannot write manifest: {e:#}");
    }
    ExitCode::from(outcome.code)
}
