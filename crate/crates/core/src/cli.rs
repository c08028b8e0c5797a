//! Command-line front end. [`run`] does all the work and returns the exit
//! code and output streams, so the binary is a thin wrapper and tests can
//! call it in-process.
//!
//! Exit codes: 0 for success or a "yes" verdict, 1 for a "no" verdict, 2 for
//! usage, input or I/O errors.
//!
//! Reports start with `key=value` lines, then a blank line, then free text.
//! Nothing in a report depends on the clock unless `--timing` is given, so
//! reruns on the same input are byte-identical.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::context::{consistency_context, DEFAULT_GUARD};
use crate::determinability::{extract_iterator, find_branching, is_determinable, Mode};
use crate::error::{Error, Result};
use crate::formats::{
    parse_context, parse_kripke, parse_modal_context, read_file, render_context, render_kripke,
    render_modal_context, write_file,
};
use crate::generators::{
    gen_alice_bob, gen_alice_bob_odd, gen_minigame, gen_random_context, gen_random_kripke,
};
use crate::logic::{
    check_modal_operator, formula_universe, parse_formula, Connectives, DEFAULT_CAP,
    DEFAULT_UNIVERSE_GUARD,
};
use crate::modal_context::{
    induced_model, is_modal_context, prove_in_context, quotient, to_modal_context,
    verify_representation,
};

pub const GUARD_ENV: &str = "CTXKIT_GUARD";

#[derive(Debug, Parser)]
#[command(
    name = "ctxkit",
    version,
    about = "Contexts, determinability and modal contexts"
)]
struct Cli {
    /// Append elapsed wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Commands on context files.
    #[command(subcommand)]
    Ctx(CtxCommand),
    /// Commands on Kripke models and modal contexts.
    #[command(subcommand)]
    Modal(ModalCommand),
    /// Write generated corpora.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Subcommand)]
enum CtxCommand {
    /// Decide whether the context is determinable.
    CheckDeterminable {
        file: PathBuf,
        #[arg(long, default_value = "literal")]
        mode: ModeArg,
    },
    /// Extract the iterator, or report the conflicting positions.
    Iterator { file: PathBuf },
    /// Print the consistency context of an instance at a time.
    Consistency {
        file: PathBuf,
        #[arg(long)]
        instance: String,
        #[arg(long)]
        time: String,
    },
    /// Decide whether every position has exactly one next snapshot.
    Deterministic { file: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Literal,
    Windowed,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Literal => Mode::Literal,
            ModeArg::Windowed => Mode::Windowed,
        }
    }
}

#[derive(Debug, clap::Args)]
struct UniverseArgs {
    /// Comma-separated atom names.
    #[arg(long)]
    atoms: String,
    /// Maximum modal depth.
    #[arg(long)]
    depth: usize,
    /// Maximum number of Boolean connectives per formula.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Comma-separated connective names.
    #[arg(long)]
    connectives: Option<String>,
}

#[derive(Debug, Subcommand)]
enum ModalCommand {
    /// Evaluate a formula at a world of a Kripke model.
    Eval {
        file: PathBuf,
        #[arg(long)]
        world: String,
        #[arg(long)]
        formula: String,
    },
    /// Build the modal context of a Kripke model.
    ToContext {
        file: PathBuf,
        #[command(flatten)]
        universe: UniverseArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the box/diamond conditions of a modal-context file.
    CheckContext { file: PathBuf },
    /// Build the modal context of a Kripke model and check every property of
    /// the construction.
    VerifyTheorem {
        file: PathBuf,
        #[command(flatten)]
        universe: UniverseArgs,
    },
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Household context: Bob home implies Alice home an hour later.
    AliceBob {
        #[arg(long)]
        horizon: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Household context with Bob also home at every odd hour.
    AliceBobOdd {
        #[arg(long)]
        horizon: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Two-token game on a 2x2 board.
    Minigame {
        #[arg(long, default_value = "base")]
        variant: Variant,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random context.
    RandomCtx {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        states: usize,
        #[arg(long)]
        entities: usize,
        #[arg(long)]
        times: usize,
        #[arg(long)]
        count: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random Kripke model.
    RandomKripke {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        worlds: usize,
        #[arg(long, default_value = "p,q")]
        atoms: String,
        #[arg(long)]
        density: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Variant {
    Base,
    Turn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    keys: Vec<(String, String)>,
    body: String,
    stderr: String,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            code: 0,
            keys: vec![("command".into(), command.into())],
            body: String::new(),
            stderr: String::new(),
        }
    }

    fn key(&mut self, k: &str, v: impl ToString) -> &mut Self {
        self.keys.push((k.into(), v.to_string()));
        self
    }

    fn verdict(&mut self, yes: bool) -> &mut Self {
        self.code = if yes { 0 } else { 1 };
        self.key("verdict", if yes { "yes" } else { "no" })
    }

    fn input(&mut self, path: &Path, text: &str) -> &mut Self {
        let digest = hex::encode(Sha256::digest(text.as_bytes()));
        self.key("input", path.display())
            .key("input_sha256", digest)
    }

    fn render(&self) -> String {
        let mut out: String = self
            .keys
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect();
        if !self.body.is_empty() {
            out.push('\n');
            out.push_str(&self.body);
        }
        out
    }
}

fn guards() -> Result<(usize, usize)> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => {
            let g = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{GUARD_ENV}={v} is not a number")))?;
            Ok((g, g))
        }
        Err(_) => Ok((DEFAULT_GUARD, DEFAULT_UNIVERSE_GUARD)),
    }
}

/// Parse `args` (including the program name) and execute the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let start = Instant::now();
    match execute(cli.command) {
        Ok(Output::Raw(text)) => Outcome {
            code: 0,
            stdout: text,
            stderr: String::new(),
        },
        Ok(Output::Report(mut report)) => {
            if cli.timing {
                report.key("elapsed_ms", start.elapsed().as_millis());
            }
            Outcome {
                code: report.code,
                stdout: report.render(),
                stderr: report.stderr,
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

enum Output {
    Raw(String),
    Report(Report),
}

fn execute(command: Command) -> Result<Output> {
    let (guard, universe_guard) = guards()?;
    match command {
        Command::Ctx(c) => ctx_command(c).map(Output::Report),
        Command::Modal(c) => modal_command(c, universe_guard),
        Command::Gen(c) => gen_command(c, guard),
    }
}

fn load_context_file(path: &Path, report: &mut Report) -> Result<crate::formats::LoadedContext> {
    let text = read_file(path)?;
    report.input(path, &text);
    let loaded = parse_context(&text)?;
    for w in &loaded.warnings {
        report.stderr.push_str(&format!("warning: {w}\n"));
    }
    report.key("instances", loaded.context.len());
    Ok(loaded)
}

fn ctx_command(c: CtxCommand) -> Result<Report> {
    Ok(match c {
        CtxCommand::CheckDeterminable { file, mode } => {
            let mut r = Report::new("ctx check-determinable");
            let loaded = load_context_file(&file, &mut r)?;
            let mode = Mode::from(mode);
            let result = is_determinable(&loaded.context, mode);
            r.key("mode", mode).verdict(result.determinable);
            if let Some(w) = &result.witness {
                let ctx = &loaded.context;
                let name = |inst| {
                    loaded
                        .names
                        .iter()
                        .find(|(_, i)| i == inst)
                        .map(|(n, _)| n.clone())
                        .unwrap_or_default()
                };
                r.key(
                    "witness_left",
                    format!(
                        "{}@{}",
                        name(&w.left),
                        ctx.signature().time_name(w.left_time)
                    ),
                );
                r.key(
                    "witness_right",
                    format!(
                        "{}@{}",
                        name(&w.right),
                        ctx.signature().time_name(w.right_time)
                    ),
                );
                r.body = w.render(ctx.signature());
            }
            r
        }
        CtxCommand::Iterator { file } => {
            let mut r = Report::new("ctx iterator");
            let loaded = load_context_file(&file, &mut r)?;
            let sig = loaded.context.signature();
            match extract_iterator(&loaded.context) {
                Ok(it) => {
                    r.verdict(true).key("domain", it.len());
                    r.body = it.render();
                }
                Err(conflict) => {
                    r.verdict(false);
                    r.body = conflict.render(sig);
                }
            }
            r
        }
        CtxCommand::Consistency {
            file,
            instance,
            time,
        } => {
            let mut r = Report::new("ctx consistency");
            let loaded = load_context_file(&file, &mut r)?;
            let inst = loaded.instance(&instance)?;
            let t = loaded.context.signature().time(&time)?;
            let sub = consistency_context(&loaded.context, inst, t)?;
            r.key("instance", &instance)
                .key("time", &time)
                .key("consistent", sub.len());
            r.body = render_context(&sub);
            r
        }
        CtxCommand::Deterministic { file } => {
            let mut r = Report::new("ctx deterministic");
            let loaded = load_context_file(&file, &mut r)?;
            let sig = loaded.context.signature().clone();
            match find_branching(&loaded.context) {
                None => {
                    r.verdict(true);
                }
                Some((inst, t, next)) => {
                    r.verdict(false);
                    let options: Vec<String> =
                        next.iter().map(|s| sig.render_snapshot(s)).collect();
                    r.body = format!(
                        "snapshot {} at time {} has {} next snapshots: {}\n",
                        sig.render_snapshot(&inst.snapshot(t)),
                        sig.time_name(t),
                        next.len(),
                        options.join(" | ")
                    );
                }
            }
            r
        }
    })
}

fn build_universe(args: &UniverseArgs, guard: usize) -> Result<crate::logic::FormulaUniverse> {
    let atoms: Vec<&str> = args.atoms.split(',').filter(|s| !s.is_empty()).collect();
    let connectives = match &args.connectives {
        Some(text) => Connectives::parse(text)?,
        None => Connectives::default(),
    };
    formula_universe(&atoms, args.depth, args.cap, &connectives, guard)
}

fn modal_command(c: ModalCommand, guard: usize) -> Result<Output> {
    Ok(match c {
        ModalCommand::Eval {
            file,
            world,
            formula,
        } => {
            let mut r = Report::new("modal eval");
            let text = read_file(&file)?;
            r.input(&file, &text);
            let model = parse_kripke(&text)?;
            let f = parse_formula(&formula)?;
            let value = model.satisfies(&world, &f)?;
            r.key("world", &world)
                .key("formula", &f)
                .key("value", value);
            r.code = if value { 0 } else { 1 };
            Output::Report(r)
        }
        ModalCommand::ToContext {
            file,
            universe,
            output,
        } => {
            let text = read_file(&file)?;
            let model = parse_kripke(&text)?;
            let u = build_universe(&universe, guard)?;
            let mc = to_modal_context(&model, &u);
            let rendered = render_modal_context(&mc);
            match output {
                None => Output::Raw(rendered),
                Some(out) => {
                    write_file(&out, &rendered)?;
                    let mut r = Report::new("modal to-context");
                    r.input(&file, &text)
                        .key("universe_size", u.len())
                        .key("worlds", model.worlds().len())
                        .key("classes", mc.worlds().len())
                        .key("output", out.display());
                    Output::Report(r)
                }
            }
        }
        ModalCommand::CheckContext { file } => {
            let mut r = Report::new("modal check-context");
            let text = read_file(&file)?;
            r.input(&file, &text);
            let mc = parse_modal_context(&text, guard)?;
            let violations = is_modal_context(&mc);
            r.key("worlds", mc.worlds().len())
                .key("violations", violations.len())
                .verdict(violations.is_empty());
            r.body = violations.iter().map(|v| format!("{v}\n")).collect();
            Output::Report(r)
        }
        ModalCommand::VerifyTheorem { file, universe } => {
            let mut r = Report::new("modal verify-theorem");
            let text = read_file(&file)?;
            r.input(&file, &text);
            let model = parse_kripke(&text)?;
            let u = build_universe(&universe, guard)?;
            let mc = to_modal_context(&model, &u);
            let violations = is_modal_context(&mc);
            let failing = verify_representation(&model, &mc);
            let operators = check_modal_operator(&u);

            let mut disagreements = Vec::new();
            for (w, name) in model.worlds().iter().enumerate() {
                let class = mc
                    .worlds()
                    .iter()
                    .find(|cw| cw.class.contains(name))
                    .expect("every world lands in a class");
                for f in u.members() {
                    if model.holds(w, f) != prove_in_context(&mc, &class.name, f)? {
                        disagreements.push(format!("{name}: {f}"));
                    }
                }
            }
            // Rebuilding from the context's own induced model should be a no-op.
            let again = to_modal_context(&induced_model(&mc), &u);
            let fixed_point = again.worlds().len() == mc.worlds().len()
                && again.relation() == mc.relation()
                && again
                    .worlds()
                    .iter()
                    .zip(mc.worlds())
                    .all(|(a, b)| a.cells() == b.cells());

            let ok = violations.is_empty()
                && failing.is_empty()
                && disagreements.is_empty()
                && operators.passed();
            r.key("universe_size", u.len())
                .key("worlds", model.worlds().len())
                .key("classes", quotient(&model, &u).len())
                .key("modal_context_violations", violations.len())
                .key("representation_failures", failing.len())
                .key("prover_disagreements", disagreements.len())
                .key("operator_violations", operators.violations.len())
                .key(
                    "exploratory_requotient_fixed_point",
                    if fixed_point { "yes" } else { "no" },
                )
                .verdict(ok);
            let mut body = String::new();
            for v in &violations {
                body.push_str(&format!("{v}\n"));
            }
            for w in &failing {
                body.push_str(&format!("world {w} does not match its class\n"));
            }
            for d in &disagreements {
                body.push_str(&format!("prover disagrees at {d}\n"));
            }
            for v in &operators.violations {
                body.push_str(&format!("{v}\n"));
            }
            r.body = body;
            Output::Report(r)
        }
    })
}

fn emit(
    text: String,
    output: Option<PathBuf>,
    command: &str,
    keys: &[(&str, String)],
) -> Result<Output> {
    match output {
        None => Ok(Output::Raw(text)),
        Some(out) => {
            write_file(&out, &text)?;
            let mut r = Report::new(command);
            for (k, v) in keys {
                r.key(k, v);
            }
            r.key("output", out.display());
            Ok(Output::Report(r))
        }
    }
}

fn gen_command(c: GenCommand, guard: usize) -> Result<Output> {
    match c {
        GenCommand::AliceBob { horizon, output } => {
            let ctx = gen_alice_bob(horizon, guard)?;
            let keys = [
                ("horizon", horizon.to_string()),
                ("instances", ctx.len().to_string()),
            ];
            emit(render_context(&ctx), output, "gen alice-bob", &keys)
        }
        GenCommand::AliceBobOdd { horizon, output } => {
            let ctx = gen_alice_bob_odd(horizon, guard)?;
            let keys = [
                ("horizon", horizon.to_string()),
                ("instances", ctx.len().to_string()),
            ];
            emit(render_context(&ctx), output, "gen alice-bob-odd", &keys)
        }
        GenCommand::Minigame { variant, output } => {
            let (base, turn) = gen_minigame()?;
            let (ctx, name) = match variant {
                Variant::Base => (base, "base"),
                Variant::Turn => (turn, "turn"),
            };
            let keys = [
                ("variant", name.to_string()),
                ("instances", ctx.len().to_string()),
            ];
            emit(render_context(&ctx), output, "gen minigame", &keys)
        }
        GenCommand::RandomCtx {
            seed,
            states,
            entities,
            times,
            count,
            output,
        } => {
            let ctx = gen_random_context(seed, states, entities, times, count)?;
            let keys = [
                ("seed", seed.to_string()),
                ("instances", ctx.len().to_string()),
            ];
            emit(render_context(&ctx), output, "gen random-ctx", &keys)
        }
        GenCommand::RandomKripke {
            seed,
            worlds,
            atoms,
            density,
            output,
        } => {
            let atoms: Vec<&str> = atoms.split(',').filter(|s| !s.is_empty()).collect();
            let model = gen_random_kripke(seed, worlds, &atoms, density)?;
            let keys = [
                ("seed", seed.to_string()),
                ("edges", model.relation().len().to_string()),
            ];
            emit(render_kripke(&model), output, "gen random-kripke", &keys)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(args: &[&str]) -> Outcome {
        let mut full = vec!["ctxkit"];
        full.extend_from_slice(args);
        run(full)
    }

    #[test]
    fn help_exits_zero() {
        let out = ok(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("ctx"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(ok(&["ctx"]).code, 2);
        assert_eq!(ok(&["bogus"]).code, 2);
        assert_eq!(ok(&["ctx", "iterator", "/nonexistent/file"]).code, 2);
    }

    #[test]
    fn generators_print_artifacts() {
        let out = ok(&["gen", "alice-bob", "--horizon", "3"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("states: Home Out\n"));
        assert_eq!(out.stdout.matches("instance ").count(), 36);
    }
}
