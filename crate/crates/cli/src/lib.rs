//! `dglab`: runs the checks of `dgla-core` on fixture files.
//!
//! [`run`] is the whole program minus process plumbing, so tests drive it
//! directly.

pub mod commands;
pub mod corpus;
pub mod format;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dgla_core::Exec;

use commands::{BttArgs, BvOp, Failure, LietypeOp};
use report::{Report, Verbosity};

#[derive(Parser, Debug)]
#[command(name = "dglab", version, about = "Exact checks for DG-Lie algebras, Cartan homotopies and dBV algebras")]
struct Cli {
    /// Print the machine-readable report.
    #[arg(long, global = true)]
    json: bool,
    /// Disable internal parallelism.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Target {
    file: PathBuf,
    /// Algebra of the file to use.
    #[arg(long, default_value = "main")]
    algebra: String,
}

#[derive(Args, Debug)]
struct BttFlags {
    file: PathBuf,
    /// Map name of the Cartan homotopy `i: L -> M` (degree -1).
    #[arg(long, default_value = "i")]
    i: String,
    /// Subspace name of the sub-DG-Lie algebra `H` of `M`.
    #[arg(long, default_value = "H")]
    h: String,
    /// After certification, run the MC probe on `L` (g=1 to order 5, g=2 to order 3).
    #[arg(long)]
    probe: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// DG-Lie axioms on basis tuples.
    Check {
        #[command(flatten)]
        target: Target,
        /// Count every violation instead of stopping at the first.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Cohomology dimensions and representatives.
    Cohomology {
        #[command(flatten)]
        target: Target,
    },
    /// Homotopy-abelian certificate from a Cartan calculus.
    Btt(BttFlags),
    /// The certificate with (3) in H^1 and (4) in H^2 only.
    BttRelaxed(BttFlags),
    /// dBV algebras given by "product", "unit", "delta" and "k".
    Bv {
        #[command(subcommand)]
        op: BvCommand,
    },
    /// Coderivation model on the symmetric coalgebra.
    Coder {
        #[command(subcommand)]
        op: CoderCommand,
    },
    /// DG-Lie algebras of Lie type and their derived brackets.
    Lietype {
        #[command(subcommand)]
        op: LietypeCommand,
    },
    /// Maurer-Cartan probe over K[t_1..t_g]/m^(n+1).
    Mc {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 1)]
        vars: usize,
        #[arg(long, default_value_t = 5)]
        order: u32,
        /// Upper bound on the order actually solved.
        #[arg(long)]
        max_order: Option<u32>,
    },
    /// Cone model, long exact sequence and factorisation of a morphism.
    Fiber {
        file: PathBuf,
        #[arg(long, default_value = "f")]
        f: String,
        /// Polynomial degree bound for the path-object models.
        #[arg(long, default_value_t = 2)]
        trunc: u32,
    },
    /// Runs the scenario stored in the file.
    Run { file: PathBuf },
    /// Writes the shipped fixture corpus into a directory.
    ExportCorpus { dir: PathBuf },
}

#[derive(Subcommand, Debug)]
enum BvCommand {
    Check {
        file: PathBuf,
        #[arg(long)]
        exhaustive: bool,
    },
    /// The DG-Lie algebra L = A[k] and its axioms.
    Dgla { file: PathBuf },
    Degeneration { file: PathBuf },
    /// Degeneration, then the consequences on L: axioms, H* bracket, MC probe.
    Pipeline {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        vars: usize,
        #[arg(long, default_value_t = 5)]
        order: u32,
    },
    /// ker d ∩ im Δ = ker Δ ∩ im d = im dΔ, degree by degree.
    Lemma { file: PathBuf },
    /// Chains a_i = f^i(a)/i! for Δ = [d, f].
    ExpTf {
        file: PathBuf,
        #[arg(long, default_value = "f")]
        f: String,
        #[arg(long)]
        max_steps: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum CoderCommand {
    /// pQ^2 on words of length 1, 2, 3 against the axioms.
    Q2 {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
    },
    /// Lifts every class of H(L[1]) to a coderivation commuting with Q.
    Split {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
    },
}

#[derive(Args, Debug)]
struct SplitFlags {
    file: PathBuf,
    /// Subspace names of L and A (ignored for a π-example).
    #[arg(long, default_value = "L")]
    l: String,
    #[arg(long, default_value = "A")]
    a: String,
}

#[derive(Subcommand, Debug)]
enum LietypeCommand {
    Check(SplitFlags),
    Dgla(SplitFlags),
    Btt(SplitFlags),
}

/// Exit code and stdout of one invocation; `args[0]` is the program name.
pub fn run(args: &[String]) -> (i32, String) {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let report = match dispatch(cli.command, exec) {
        Dispatched::Report(r) => r,
        Dispatched::Text(code, text) => return (code, text),
    };
    let out = if cli.json { report.to_json() } else { report.render(Verbosity::from_env()) };
    (report.exit_code(), out)
}

enum Dispatched {
    Report(Report),
    Text(i32, String),
}

fn load(path: &PathBuf) -> Result<format::Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(format::parse(&text)?.load()?)
}

fn finish(name: &str, r: Result<Report, Failure>) -> Dispatched {
    Dispatched::Report(match r {
        Ok(r) => r,
        Err(Failure::Input(msg)) => Report::input_error(name, msg),
        Err(Failure::Math(msg)) => {
            let mut r = Report::new(name);
            r.check("precondition", false, msg);
            r
        }
    })
}

fn with_file(name: &str, path: &PathBuf, body: impl FnOnce(&format::Loaded) -> Result<Report, Failure>) -> Dispatched {
    finish(name, load(path).and_then(|f| body(&f)))
}

fn dispatch(command: Command, exec: Exec) -> Dispatched {
    match command {
        Command::Check { target, exhaustive } => {
            with_file("check", &target.file, |f| commands::check(f, &target.algebra, exhaustive, exec))
        }
        Command::Cohomology { target } => with_file("cohomology", &target.file, |f| commands::cohomology(f, &target.algebra)),
        Command::Btt(b) => btt(b, false, exec),
        Command::BttRelaxed(b) => btt(b, true, exec),
        Command::Bv { op } => {
            let (name, file, op) = match op {
                BvCommand::Check { file, exhaustive } => ("bv check", file, BvOp::Check { exhaustive }),
                BvCommand::Dgla { file } => ("bv dgla", file, BvOp::Dgla),
                BvCommand::Degeneration { file } => ("bv degeneration", file, BvOp::Degeneration),
                BvCommand::Pipeline { file, vars, order } => ("bv pipeline", file, BvOp::Pipeline { vars, order }),
                BvCommand::Lemma { file } => ("bv lemma", file, BvOp::Lemma),
                BvCommand::ExpTf { file, f, max_steps } => ("bv exp-tf", file, BvOp::ExpTf { f, max_steps }),
            };
            with_file(name, &file, |f| commands::bv(f, op, exec))
        }
        Command::Coder { op } => {
            let (name, split, target, trunc) = match op {
                CoderCommand::Q2 { target, trunc } => ("coder q2", false, target, trunc),
                CoderCommand::Split { target, trunc } => ("coder split", true, target, trunc),
            };
            with_file(name, &target.file, |f| commands::coder(f, split, &target.algebra, trunc, exec))
        }
        Command::Lietype { op } => {
            let (name, flags, op) = match op {
                LietypeCommand::Check(s) => ("lietype check", s, LietypeOp::Check),
                LietypeCommand::Dgla(s) => ("lietype dgla", s, LietypeOp::Dgla),
                LietypeCommand::Btt(s) => ("lietype btt", s, LietypeOp::Btt),
            };
            with_file(name, &flags.file, |f| commands::lietype(f, op, &flags.l, &flags.a, exec))
        }
        Command::Mc { target, vars, order, max_order } => {
            with_file("mc", &target.file, |f| commands::mc(f, &target.algebra, vars, order, max_order, exec))
        }
        Command::Fiber { file, f: map, trunc } => with_file("fiber", &file, |f| commands::fiber(f, &map, trunc, exec)),
        Command::Run { file } => run_scenario(&file, exec),
        Command::ExportCorpus { dir } => match corpus::export(&dir) {
            Ok(n) => Dispatched::Text(0, format!("wrote {n} fixtures to {}\n", dir.display())),
            Err(e) => Dispatched::Text(2, format!("{}: {e}\n", dir.display())),
        },
    }
}

fn btt(b: BttFlags, relaxed: bool, exec: Exec) -> Dispatched {
    let name = if relaxed { "btt-relaxed" } else { "btt" };
    let args = BttArgs { i: &b.i, h: &b.h, relaxed, probe: b.probe };
    with_file(name, &b.file, |f| commands::btt(f, args, exec))
}

/// Re-parses the stored arguments with the file appended.
fn run_scenario(path: &PathBuf, exec: Exec) -> Dispatched {
    let loaded = match load(path) {
        Ok(l) => l,
        Err(e) => return finish("run", Err(e)),
    };
    let Some(s) = &loaded.file.scenario else {
        return finish("run", Err(Failure::Input("the file has no \"scenario\" block".into())));
    };
    let mut args = vec!["dglab".to_string()];
    args.extend(s.args.iter().cloned());
    args.push(path.display().to_string());
    match Cli::try_parse_from(&args) {
        Ok(Cli { command: Command::Run { .. } | Command::ExportCorpus { .. }, .. }) => {
            finish("run", Err(Failure::Input("a scenario must name a check".into())))
        }
        Ok(cli) => dispatch(cli.command, exec),
        Err(e) => finish("run", Err(Failure::Input(format!("bad scenario arguments: {e}")))),
    }
}
