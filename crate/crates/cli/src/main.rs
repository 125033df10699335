//! `revkit`: run, transform and invert quadruple machines, evaluate
//! programs, explore finite partial functions and check reductions.
//!
//! Exit codes: 0 for success or a true answer, 1 for a false answer or a
//! missing output, 2 for usage errors and malformed input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use revkit::bits::is_bitstring;
use revkit::codec::{cofp_eval, code, inj_ev, pair_decode, pair_encode, regcofp_eval, serialize_machine, ClassTag, CodecError, Program};
use revkit::corpus;
use revkit::fnlab::{
    fmin, green_relations, group_inverse, idempotents, is_coinverse, is_inverse, is_mutual, is_subinverse,
    monoid_closure, pad_zero, random_fn, random_injective_fn, regular_elements, FiniteFn, Universe,
};
use revkit::inversion::{fmin_invert, levin_invert, InversionError};
use revkit::machine::{
    parse_machine, run_traced, validate_deterministic, validate_injective, Limits, Machine, Oracle, PolyBound, RunOutcome,
};
use revkit::reductions::{check_reduction, oracle_registry, OracleLanguage, OracleRegistry, ReductionKind, ReductionMap, ReductionWitness, UniversalLanguage};
use revkit::suites::{self, DEFAULT_SEED};
use revkit::transform::{bennett_clean, bennett_garbage, chain, reverse_flagged, TransformError};

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn malformed(e: impl std::fmt::Display) -> CliError {
    CliError::Malformed(e.to_string())
}

/// Printed text and whether the answer was positive.
struct Reply {
    text: String,
    ok: bool,
}

impl Reply {
    fn yes(text: String) -> Reply {
        Reply { text, ok: true }
    }

    fn verdict(text: String, ok: bool) -> Reply {
        Reply { text, ok }
    }
}

#[derive(Parser)]
#[command(name = "revkit", version, about = "Reversible machines, inverses and injective reductions")]
struct Cli {
    /// Seed for every randomized sample.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a machine's table for determinism and injectivity.
    Check {
        #[arg(long)]
        machine: String,
        #[arg(long)]
        deterministic: bool,
        #[arg(long)]
        injective: bool,
    },
    /// Run a machine on one input and print its output.
    Run {
        #[arg(long)]
        machine: String,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// Oracle language name; defaults to the one the machine names.
        #[arg(long)]
        oracle: Option<String>,
        /// Ignore the machine's bounds and stop after this many steps.
        #[arg(long)]
        max_steps: Option<u64>,
        /// Also print the step count.
        #[arg(long)]
        steps: bool,
    },
    /// Print the reverse machine.
    Reverse {
        #[arg(long)]
        machine: String,
    },
    /// Print the Bennett embedding x ↦ (x, f(x)), or with `--inverse` the
    /// clean machine computing f.
    Bennett {
        #[arg(long)]
        machine: String,
        #[arg(long)]
        inverse: Option<String>,
    },
    /// Print the machine running `first` and then `second`.
    Chain {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Prefix codes, pairs and machine serialization.
    #[command(subcommand)]
    Encode(EncodeCommand),
    /// Evaluate programs under a bound.
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Find a preimage of `output`.
    Invert {
        #[arg(long, value_enum, default_value_t = Mode::Fmin)]
        mode: Mode,
        #[arg(long)]
        machine: String,
        #[arg(long, allow_hyphen_values = true)]
        output: String,
        /// Directory of candidate inverter programs for Levin search.
        #[arg(long)]
        registry: Option<PathBuf>,
        /// Also print the search statistics.
        #[arg(long)]
        stats: bool,
    },
    /// Finite partial functions in `x -> y` table files.
    #[command(subcommand)]
    Lab(LabCommand),
    /// Check a reduction on every word of a window.
    Reduce {
        #[arg(long)]
        check: bool,
        /// Machine or function table computing the reduction.
        #[arg(long)]
        map: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 4)]
        window: usize,
        #[arg(long, value_enum, default_value_t = Kind::Invfp)]
        kind: Kind,
        #[command(flatten)]
        registry: RegistryArg,
    },
    /// Decide membership of a bitstring in a named oracle language.
    Member {
        #[arg(long)]
        oracle: String,
        #[arg(long, allow_hyphen_values = true)]
        string: String,
        #[command(flatten)]
        registry: RegistryArg,
    },
    /// Built-in machines and verification suites.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Args)]
struct RegistryArg {
    /// Extra oracle stanzas.
    #[arg(long = "oracles")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Fmin,
    Levin,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    ManyOne,
    OneOne,
    Invfp,
}

#[derive(Subcommand)]
enum EncodeCommand {
    /// Self-delimiting code of a bitstring.
    Code { x: String },
    /// `code(w) 11 x`.
    Pair { w: String, x: String },
    /// Split a pair back into `w` and `x`, one per line.
    Unpair { s: String },
    /// Canonical bit serialization of a machine.
    Machine { machine: String },
    /// The padded universal-language word for a registry verifier.
    Universal {
        #[arg(long)]
        verifier: String,
        #[arg(long)]
        input: String,
    },
}

#[derive(Subcommand)]
enum EvalCommand {
    /// The injective evaluator on `code(w) 11 x`.
    Inj {
        #[command(flatten)]
        q: Bound,
        #[arg(long)]
        program: String,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        oracle: Option<String>,
    },
    /// The cofP evaluator of `(v', w)` at `y`.
    Cofp {
        #[command(flatten)]
        q: Bound,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        oracle: Option<String>,
    },
    /// The regular cofP evaluator of pair programs `(u, v')` at `x`.
    Regcofp {
        #[command(flatten)]
        q: Bound,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        oracle: Option<String>,
    },
}

#[derive(Args)]
struct Bound {
    /// Evaluator bound `a(n^k+1)` as `a,k`.
    #[arg(long, default_value = "5,2")]
    q: String,
}

#[derive(Subcommand)]
enum LabCommand {
    /// The least-preimage choice function.
    Fmin { f: PathBuf },
    /// `outer ∘ inner`.
    Compose { outer: PathBuf, inner: PathBuf },
    /// Whether `g` relates to `f` as named.
    Is {
        #[arg(value_enum)]
        relation: Relation,
        g: PathBuf,
        f: PathBuf,
    },
    /// The padded function `f₀`.
    Pad { f: PathBuf },
    /// The group inverse `F'` built from `f` and its mutual inverse.
    GroupInverse { f: PathBuf, fp: PathBuf },
    /// Size and structure of the monoid generated by the tables.
    Monoid {
        #[arg(required = true)]
        generators: Vec<PathBuf>,
        #[arg(long, default_value_t = 4096)]
        cap: usize,
    },
    /// A random table on the words of length at most `max_len`.
    Random {
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        injective: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    Inverse,
    Coinverse,
    Mutual,
    Subinverse,
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Names of the corpus machines.
    List,
    /// A corpus machine in the text format.
    Show { name: String },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn bitstring(s: &str) -> Result<&str> {
    if is_bitstring(s) {
        Ok(s)
    } else {
        Err(CliError::Usage(format!("`{s}` is not a bitstring")))
    }
}

fn is_program_text(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("program "))
}

/// A machine file, a program file, or a corpus machine name.
fn load_machine(spec: &str) -> Result<Machine> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = read(path)?;
        if is_program_text(&text) {
            return Program::parse(&text).and_then(|p| p.machine()).map_err(malformed);
        }
        return parse_machine(&text).map_err(|e| malformed(format!("{spec}: {e}")));
    }
    corpus::by_name(spec).ok_or_else(|| CliError::Usage(format!("no file or corpus machine named `{spec}`")))
}

/// A program file, or a machine tagged invfP when injective and fP
/// otherwise.
fn load_program(spec: &str) -> Result<Program> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = read(path)?;
        if is_program_text(&text) {
            return Program::parse(&text).map_err(|e| malformed(format!("{spec}: {e}")));
        }
    }
    let m = load_machine(spec)?;
    let injective = validate_injective(&m).is_ok_and(|r| r.is_ok());
    let class = match (injective, m.has_oracle_calls()) {
        (true, false) => ClassTag::InvFp,
        (true, true) => ClassTag::InvFpNp,
        (false, _) => ClassTag::Fp,
    };
    Program::from_machine(&m, class).map_err(malformed)
}

fn load_fn(path: &Path) -> Result<FiniteFn> {
    FiniteFn::parse(&read(path)?).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

fn registry(arg: &RegistryArg) -> Result<OracleRegistry> {
    let mut r = oracle_registry();
    if let Some(path) = &arg.file {
        let text = read(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let load = |s: &str| {
            let p = base.join(s);
            load_machine(p.to_str().unwrap_or(s)).or_else(|_| load_machine(s)).ok()
        };
        r.load(&text, &load).map_err(malformed)?;
    }
    Ok(r)
}

fn oracle(name: &str) -> Result<OracleLanguage> {
    oracle_registry().lookup(name).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_bound(s: &str) -> Result<PolyBound> {
    let bad = || CliError::Usage(format!("bound `{s}` is not of the form `a,k` with a ≥ 1"));
    let (a, k) = s.split_once(',').ok_or_else(bad)?;
    let (a, k) = (a.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?);
    PolyBound::new(a, k).ok_or_else(bad)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(machine: &str, deterministic: bool, injective: bool) -> Result<Reply> {
    let m = load_machine(machine)?;
    let (det, inj) = if deterministic || injective {
        (deterministic, injective)
    } else {
        (true, true)
    };
    let mut text = String::new();
    let mut ok = true;
    if det {
        let r = validate_deterministic(&m);
        let _ = writeln!(text, "deterministic: {}", yes_no(r.is_ok()));
        for c in &r.conflicts {
            let _ = writeln!(text, "  {c}");
        }
        ok &= r.is_ok();
    }
    if inj {
        match validate_injective(&m) {
            Ok(r) => {
                let _ = writeln!(text, "injective: {}", yes_no(r.is_ok()));
                for c in &r.conflicts {
                    let _ = writeln!(text, "  {c}");
                }
                ok &= r.is_ok();
            }
            Err(e) => {
                let _ = writeln!(text, "injective: no ({e})");
                ok = false;
            }
        }
    }
    Ok(Reply::verdict(text, ok))
}

fn run_machine(machine: &str, input: &str, oracle_name: Option<&str>, max_steps: Option<u64>, steps: bool) -> Result<Reply> {
    let m = load_machine(machine)?;
    let input = bitstring(input)?;
    let lang = match oracle_name.or(m.oracle_name.as_deref()) {
        Some(n) => Some(oracle(n)?),
        None => None,
    };
    let limits = max_steps.map_or_else(Limits::default, Limits::unbounded);
    let (outcome, stats) = run_traced(&m, input, lang.as_ref().map(|l| l as &dyn Oracle), limits);
    let mut text = match &outcome {
        RunOutcome::Accept(y) => format!("{y}\n"),
        other => format!("{other}\n"),
    };
    if steps {
        let _ = writeln!(text, "steps: {}", stats.steps);
    }
    Ok(Reply::verdict(text, outcome.is_accept()))
}

fn bennett(machine: &str, inverse: Option<&str>) -> Result<Reply> {
    let m = load_machine(machine)?;
    let out = match inverse {
        None => bennett_garbage(&m),
        Some(inv) => bennett_clean(&m, &load_machine(inv)?),
    };
    match out {
        Ok(b) => Ok(Reply::yes(b.to_string())),
        Err(e @ TransformError::NotInverses { .. }) => Ok(Reply::verdict(format!("{e}\n"), false)),
        Err(e) => Err(malformed(e)),
    }
}

fn encode(cmd: &EncodeCommand) -> Result<Reply> {
    let text = match cmd {
        EncodeCommand::Code { x } => code(bitstring(x)?),
        EncodeCommand::Pair { w, x } => pair_encode(bitstring(w)?, bitstring(x)?),
        EncodeCommand::Unpair { s } => {
            let (w, x) = pair_decode(bitstring(s)?).map_err(malformed)?;
            format!("{w}\n{x}")
        }
        EncodeCommand::Machine { machine } => serialize_machine(&load_machine(machine)?),
        EncodeCommand::Universal { verifier, input } => {
            let u = UniversalLanguage::standard();
            let e = u
                .entry(verifier)
                .ok_or_else(|| CliError::Usage(format!("no registry verifier named `{verifier}`")))?;
            e.encode(bitstring(input)?)
        }
    };
    Ok(Reply::yes(text + "\n"))
}

fn eval_reply(r: std::result::Result<String, CodecError>) -> Result<Reply> {
    match r {
        Ok(y) => Ok(Reply::yes(format!("{y}\n"))),
        Err(e @ (CodecError::NoOutput | CodecError::NotInDomain)) => Ok(Reply::verdict(format!("no output: {e}\n"), false)),
        Err(e) => Err(malformed(e)),
    }
}

fn optional_oracle(name: &Option<String>) -> Result<Option<OracleLanguage>> {
    name.as_deref().map(oracle).transpose()
}

fn eval(cmd: &EvalCommand) -> Result<Reply> {
    match cmd {
        EvalCommand::Inj { q, program, input, oracle } => {
            let q = parse_bound(&q.q)?;
            let p = load_program(program)?;
            let lang = optional_oracle(oracle)?;
            let s = pair_encode(&p.bits, bitstring(input)?);
            eval_reply(inj_ev(&q, &s, lang.as_ref().map(|l| l as &dyn Oracle)))
        }
        EvalCommand::Cofp { q, v, w, input, oracle } => {
            let q = parse_bound(&q.q)?;
            let (v, w) = (load_program(v)?, load_program(w)?);
            let lang = optional_oracle(oracle)?;
            eval_reply(cofp_eval(&q, &v, &w, bitstring(input)?, lang.as_ref().map(|l| l as &dyn Oracle)))
        }
        EvalCommand::Regcofp { q, u, v, input, oracle } => {
            let q = parse_bound(&q.q)?;
            let (u, v) = (load_program(u)?, load_program(v)?);
            let lang = optional_oracle(oracle)?;
            eval_reply(regcofp_eval(&q, &u, &v, bitstring(input)?, lang.as_ref().map(|l| l as &dyn Oracle)))
        }
    }
}

fn registry_programs(dir: &Path) -> Result<Vec<Program>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    paths.iter().map(|p| load_program(&p.to_string_lossy())).collect()
}

fn invert(mode: Mode, machine: &str, output: &str, dir: Option<&Path>, stats: bool) -> Result<Reply> {
    let y = bitstring(output)?;
    let result = match mode {
        Mode::Fmin => fmin_invert(&load_machine(machine)?, y).map(|x| (x, None)),
        Mode::Levin => {
            let w = load_program(machine)?;
            let reg = dir.map(registry_programs).transpose()?.unwrap_or_default();
            levin_invert(&reg, &w, y).map(|(x, s)| (x, Some(s)))
        }
    };
    match result {
        Ok((x, s)) => {
            let mut text = format!("{x}\n");
            if let (true, Some(s)) = (stats, s) {
                let _ = writeln!(text, "steps_total: {}", s.steps_total);
                let _ = writeln!(text, "programs_tried: {}", s.programs_tried);
                let _ = writeln!(text, "winner: {}", s.winner.as_deref().unwrap_or("-"));
                for (id, n) in &s.per_program_steps {
                    let _ = writeln!(text, "steps {id}: {n}");
                }
            }
            Ok(Reply::yes(text))
        }
        Err(e @ InversionError::NotInImage(_)) => Ok(Reply::verdict(format!("{e}\n"), false)),
        Err(e) => Err(malformed(e)),
    }
}

fn lab(cmd: &LabCommand, seed: u64) -> Result<Reply> {
    match cmd {
        LabCommand::Fmin { f } => Ok(Reply::yes(fmin(&load_fn(f)?).to_string())),
        LabCommand::Compose { outer, inner } => Ok(Reply::yes(FiniteFn::compose(&load_fn(outer)?, &load_fn(inner)?).to_string())),
        LabCommand::Is { relation, g, f } => {
            let (g, f) = (load_fn(g)?, load_fn(f)?);
            let holds = match relation {
                Relation::Inverse => is_inverse(&g, &f),
                Relation::Coinverse => is_coinverse(&g, &f),
                Relation::Mutual => is_mutual(&g, &f),
                Relation::Subinverse => is_subinverse(&g, &f),
            };
            Ok(Reply::verdict(format!("{holds}\n"), holds))
        }
        LabCommand::Pad { f } => Ok(Reply::yes(pad_zero(&load_fn(f)?).to_string())),
        LabCommand::GroupInverse { f, fp } => {
            let big = group_inverse(&load_fn(f)?, &load_fn(fp)?).map_err(malformed)?;
            Ok(Reply::yes(big.to_string()))
        }
        LabCommand::Monoid { generators, cap } => {
            let gens: Vec<FiniteFn> = generators.iter().map(|p| load_fn(p)).collect::<Result<_>>()?;
            let mut points = std::collections::BTreeSet::new();
            for g in &gens {
                points.extend(g.domain());
                points.extend(g.image());
            }
            let m = monoid_closure(&gens, &points, *cap).map_err(malformed)?;
            let green = green_relations(&m);
            let mut text = String::new();
            let _ = writeln!(text, "elements: {}", m.len());
            let _ = writeln!(text, "idempotents: {}", idempotents(&m).len());
            let _ = writeln!(text, "regular: {}", regular_elements(&m).len());
            let _ = writeln!(text, "L-classes: {}", green.l.len());
            let _ = writeln!(text, "R-classes: {}", green.r.len());
            let _ = writeln!(text, "H-classes: {}", green.h.len());
            let _ = writeln!(text, "D-classes: {}", green.d.len());
            Ok(Reply::yes(text))
        }
        LabCommand::Random { max_len, density, injective } => {
            if !(0.0..=1.0).contains(density) {
                return Err(CliError::Usage(format!("density {density} is outside [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts = Universe::binary(*max_len).words();
            let f = if *injective {
                random_injective_fn(&mut rng, &pts, *density)
            } else {
                random_fn(&mut rng, &pts, *density)
            };
            Ok(Reply::yes(f.to_string()))
        }
    }
}

fn reduce(map: &str, from: &str, to: &str, window: usize, kind: Kind, reg: &RegistryArg) -> Result<Reply> {
    let r = registry(reg)?;
    let lookup = |n: &str| r.lookup(n).map_err(|e| CliError::Usage(e.to_string()));
    let (l1, l2) = (lookup(from)?, lookup(to)?);
    let path = Path::new(map);
    let map = match path.is_file().then(|| read(path)).transpose()? {
        Some(text) if text.contains("->") && !is_program_text(&text) && parse_machine(&text).is_err() => {
            ReductionMap::Table(FiniteFn::parse(&text).map_err(malformed)?)
        }
        _ => ReductionMap::Machine(load_machine(map)?),
    };
    let witness = ReductionWitness {
        map,
        window: Universe::binary(window),
        kind: match kind {
            Kind::ManyOne => ReductionKind::ManyOne,
            Kind::OneOne => ReductionKind::OneOne,
            Kind::Invfp => ReductionKind::InvFp,
        },
    };
    let report = check_reduction(&witness, &l1, &l2);
    let mut text = format!(
        "reduction: {} ({} words, {} counterexamples)\n",
        if report.passes() { "passes" } else { "fails" },
        report.checked,
        report.counterexamples.len()
    );
    for c in &report.counterexamples {
        let _ = writeln!(text, "  {c}");
    }
    Ok(Reply::verdict(text, report.passes()))
}

fn corpus_cmd(cmd: &CorpusCommand, seed: u64) -> Result<Reply> {
    match cmd {
        CorpusCommand::List => Ok(Reply::yes(corpus::names().join("\n") + "\n")),
        CorpusCommand::Show { name } => {
            let m = corpus::by_name(name).ok_or_else(|| CliError::Usage(format!("no corpus machine named `{name}`")))?;
            Ok(Reply::yes(m.to_string()))
        }
        CorpusCommand::Verify { suite } => {
            let names = if suite == "all" {
                suites::suite_names()
            } else if suites::suite_names().contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                return Err(CliError::Usage(format!(
                    "no suite named `{suite}`; known: {}",
                    suites::suite_names().join(", ")
                )));
            };
            let mut text = String::new();
            let mut ok = true;
            for n in names {
                let r = suites::run_suite(n, seed).expect("listed suite");
                ok &= r.passed();
                let _ = writeln!(text, "{r}");
            }
            Ok(Reply::verdict(text, ok))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Reply> {
    match &cli.command {
        Command::Check {
            machine,
            deterministic,
            injective,
        } => check(machine, *deterministic, *injective),
        Command::Run {
            machine,
            input,
            oracle,
            max_steps,
            steps,
        } => run_machine(machine, input, oracle.as_deref(), *max_steps, *steps),
        Command::Reverse { machine } => {
            let r = reverse_flagged(&load_machine(machine)?);
            Ok(Reply::verdict(r.machine.to_string(), !r.nondeterministic))
        }
        Command::Bennett { machine, inverse } => bennett(machine, inverse.as_deref()),
        Command::Chain { first, second } => Ok(Reply::yes(chain(&load_machine(first)?, &load_machine(second)?).to_string())),
        Command::Encode(c) => encode(c),
        Command::Eval(c) => eval(c),
        Command::Invert {
            mode,
            machine,
            output,
            registry,
            stats,
        } => invert(*mode, machine, output, registry.as_deref(), *stats),
        Command::Lab(c) => lab(c, cli.seed),
        Command::Reduce {
            check,
            map,
            from,
            to,
            window,
            kind,
            registry,
        } => {
            if !check {
                return Err(CliError::Usage("reduce needs --check".into()));
            }
            reduce(map, from, to, *window, *kind, registry)
        }
        Command::Member { oracle, string, registry: reg } => {
            let lang = registry(reg)?.lookup(oracle).map_err(|e| CliError::Usage(e.to_string()))?;
            let holds = lang.contains(bitstring(string)?);
            Ok(Reply::verdict(format!("{holds}\n"), holds))
        }
        Command::Corpus(c) => corpus_cmd(c, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(reply) => {
            print!("{}", reply.text);
            if reply.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("revkit: {e}");
            ExitCode::from(2)
        }
    }
}
