//! Command line verification of attenuated space posets.
//!
//! Subcommands:
//!   build      construct one instance and emit it with counting checks
//!   verify     run the full verification suite
//!   spectrum   eigenvalues, eigenspace dimensions, both band orderings
//!   decompose  module diagram with one verified sample per class
//!   report     the verify suite plus per-class samples in one document
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (the first
//! failing section is named on stderr), 2 for usage and capacity errors.
//! Documents go to stdout or `--out`; progress and timing go to stderr.

mod render;
mod suite;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use atspace::gflinalg::is_prime;
use atspace::poset::{build_poset_with_cap, PosetInstance, DEFAULT_VERTEX_CAP};
use atspace::Operators;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::suite::{
    build_document, decompose_document, document, first_failing, spectrum_document,
    suite_document, suite_sections, Details, Document, InstanceDto, ParamsDto, Section,
};

/// The stock instances swept by `verify --all` and `report --all`.
const DEFAULT_INSTANCES: [(u32, u32, u32); 7] = [
    (2, 1, 1),
    (2, 2, 1),
    (2, 1, 2),
    (2, 2, 2),
    (3, 2, 1),
    (2, 3, 2),
    (3, 2, 2),
];

#[derive(Parser)]
#[command(
    name = "atspace",
    version,
    about = "Exact verification of attenuated space posets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one instance and emit it with its counting checks.
    Build(InstanceArgs),
    /// Run the verification suite; the exit code reports the outcome.
    Verify(SweepArgs),
    /// Emit eigenvalues, eigenspace dimensions, and both band orderings.
    Spectrum(InstanceArgs),
    /// Emit the module diagram with one verified sample per class.
    Decompose(InstanceArgs),
    /// Run the suite and append per-class samples, in one document.
    Report(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the document here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InstanceArgs {
    /// Field size, a prime.
    #[arg(long)]
    q: u32,
    /// Top rank: the dimension at which enumerated subspaces stop.
    #[arg(long = "N")]
    n: u32,
    /// Dimension of the fixed subspace every vertex must avoid.
    #[arg(long = "M")]
    m: u32,
    /// Refuse to enumerate more vertices than this.
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Field size, a prime.
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    q: Option<u32>,
    /// Top rank: the dimension at which enumerated subspaces stop.
    #[arg(long = "N", required_unless_present = "all", conflicts_with = "all")]
    n: Option<u32>,
    /// Dimension of the fixed subspace every vertex must avoid.
    #[arg(long = "M", required_unless_present = "all", conflicts_with = "all")]
    m: Option<u32>,
    /// Sweep the stock instance list instead of one instance.
    #[arg(long)]
    all: bool,
    /// Refuse to enumerate more vertices than this, per instance.
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    run(Cli::parse())
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Build(args) => instance_command(args, build_document),
        Command::Spectrum(args) => instance_command(args, spectrum_document),
        Command::Decompose(args) => instance_command(args, decompose_document),
        Command::Verify(args) => sweep_command(args, false),
        Command::Report(args) => sweep_command(args, true),
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("{msg}");
    ExitCode::from(2)
}

/// Parameter checks shared by every command. `None` means usable.
fn check_instance(q: u32, n: u32, m: u32) -> Option<String> {
    if !is_prime(q) {
        return Some("q must be prime".into());
    }
    if n < 1 {
        return Some("N must be at least 1".into());
    }
    if m < 1 {
        return Some("M must be at least 1".into());
    }
    None
}

fn build_checked(q: u32, n: u32, m: u32, cap: usize) -> Result<PosetInstance, String> {
    if let Some(msg) = check_instance(q, n, m) {
        return Err(msg);
    }
    build_poset_with_cap(q, n, m, cap).map_err(|e| e.to_string())
}

fn instance_command(
    args: InstanceArgs,
    make: fn(&PosetInstance, usize) -> Document,
) -> ExitCode {
    let cap = args.cap.unwrap_or(DEFAULT_VERTEX_CAP);
    let p = match build_checked(args.q, args.n, args.m, cap) {
        Ok(p) => p,
        Err(msg) => return usage(&msg),
    };
    finish(&make(&p, cap), &args.output)
}

fn sweep_command(args: SweepArgs, with_samples: bool) -> ExitCode {
    let cap = args.cap.unwrap_or(DEFAULT_VERTEX_CAP);
    let doc = if args.all {
        let mut sections = Vec::new();
        for (q, n, m) in DEFAULT_INSTANCES {
            let p = match build_checked(q, n, m, cap) {
                Ok(p) => p,
                Err(msg) => return usage(&msg),
            };
            let ops = Operators::build(&p);
            let inner = suite_sections(&p, &ops, with_samples);
            let pass = inner.iter().all(|s| s.pass);
            sections.push(Section {
                name: format!("q={q} N={n} M={m}"),
                pass,
                details: Details::Instance(InstanceDto { sections: inner }),
            });
        }
        document(
            ParamsDto::All {
                all: true,
                cap: cap as u64,
            },
            sections,
        )
    } else {
        let (q, n, m) = (
            args.q.expect("clap enforces q"),
            args.n.expect("clap enforces N"),
            args.m.expect("clap enforces M"),
        );
        let p = match build_checked(q, n, m, cap) {
            Ok(p) => p,
            Err(msg) => return usage(&msg),
        };
        suite_document(&p, cap, with_samples)
    };
    finish(&doc, &args.output)
}

/// Serialize, write, and map the document's verdict to the exit code.
fn finish(doc: &Document, output: &OutputArgs) -> ExitCode {
    let text = match output.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("document serialization");
            s.push('\n');
            s
        }
        Format::Table => render::render_document(doc),
    };
    if let Some(path) = &output.out {
        if let Err(e) = fs::write(path, &text) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        let mut stdout = std::io::stdout().lock();
        let written = stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush());
        if let Err(e) = written {
            eprintln!("cannot write document: {e}");
            return ExitCode::from(2);
        }
    }
    if doc.pass {
        ExitCode::SUCCESS
    } else {
        let name = first_failing(doc).unwrap_or_else(|| "unknown".into());
        eprintln!("FAIL: first failing section: {name}");
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_checks_catch_bad_instances() {
        assert_eq!(check_instance(4, 2, 2).as_deref(), Some("q must be prime"));
        assert_eq!(
            check_instance(2, 0, 2).as_deref(),
            Some("N must be at least 1")
        );
        assert_eq!(
            check_instance(2, 2, 0).as_deref(),
            Some("M must be at least 1")
        );
        assert_eq!(check_instance(7, 1, 3), None);
    }

    #[test]
    fn capacity_refusals_name_the_predicted_count() {
        let err = build_checked(2, 5, 5, DEFAULT_VERTEX_CAP).unwrap_err();
        assert!(err.contains("71299041"), "unexpected message: {err}");
    }

    #[test]
    fn stock_instances_are_valid_parameters() {
        for (q, n, m) in DEFAULT_INSTANCES {
            assert_eq!(check_instance(q, n, m), None);
        }
    }
}
