mod load;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use prlab::dovetail::{semidecide_halt_family, semidecide_haszeros, SearchBudget, SearchOutcome};
use prlab::fuel_vm::{encode_program, is_loop_index, print_while, run_program, validate_while, RunStatus};
use prlab::loop_lang::{eval_loop_bounded, print_loop, validate_loop};
use prlab::oracle::{gen_corpus, run_suite, unary, CorpusKind, Report, SuiteSpec};
use prlab::pr_algebra::FnHandle;
use prlab::pr_graph::{classify_nodes, expand_expression, normalize, print_dag};
use prlab::reductions::{catalogue, reduce, spec, Facts, Input, InstanceKind, Mutation, Params, Target, Window};
use prlab::Nat;

use load::{load, load_dag, single, Loaded};

const EXIT_USAGE: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "pr-lab", version, about = "Loop/While programs, reductions, DAG normal forms and verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a .loop, .whl or .dag file and print it back in canonical form.
    Parse(FileArgs),
    /// Run a program on the given arguments.
    Run(RunArgs),
    /// Print the program index of a .loop or .whl file.
    Encode(FileArgs),
    /// Apply a catalogue reduction and tabulate the target on the window.
    Reduce(ReduceArgs),
    /// Normal form h(x, f(g(x))) of a .dag system.
    Normalize(FileArgs),
    /// Fully inlined expression of a .dag system.
    Expand(FileArgs),
    /// INP-f / OUT-f / NEITHER class of each node of a .dag system.
    Classify(FileArgs),
    /// Bounded search: least zero of a .loop function, or dovetailed halting of .whl programs.
    Search(SearchArgs),
    /// Run a verification suite and emit its JSON report.
    Verify(VerifyArgs),
    /// Print planted corpus cases as JSON.
    Corpus(CorpusArgs),
    /// List the reduction catalogue.
    Catalogue(Io),
}

#[derive(Args)]
struct Io {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FileArgs {
    /// Input file; DAG commands also take .loop files binding function names.
    #[arg(long = "in", value_name = "FILE", num_args = 1.., required = true)]
    input: Vec<PathBuf>,
    #[command(flatten)]
    io: Io,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, num_args = 0.., allow_negative_numbers = false)]
    args: Vec<Nat>,
    /// Step limit; While programs default to the window fuel.
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    io: Io,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    id: String,
    /// Source instance; two files for rows over program pairs.
    #[arg(long = "in", value_name = "FILE", num_args = 1..=2, required = true)]
    input: Vec<PathBuf>,
    /// Arguments for halting-problem rows.
    #[arg(long, num_args = 0..)]
    args: Vec<Nat>,
    #[arg(long, value_parser = parse_window, default_value = "64")]
    window: Window,
    #[arg(long)]
    k: Option<Nat>,
    /// Named pre-function (id, odd, square, affine, const11, spread).
    #[arg(long)]
    g: Option<String>,
    /// Named post-function (is_pos, parity, mod3, ne5).
    #[arg(long)]
    h: Option<String>,
    #[command(flatten)]
    io: Io,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long = "in", value_name = "FILE", num_args = 1.., required = true)]
    input: Vec<PathBuf>,
    #[arg(long, num_args = 0..)]
    args: Vec<Nat>,
    /// Global step budget.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[command(flatten)]
    io: Io,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "default")]
    suite: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Restrict to these catalogue rows.
    #[arg(long, num_args = 1..)]
    id: Vec<String>,
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long, value_parser = parse_window)]
    window: Option<Window>,
    /// Inject a named fault into its row.
    #[arg(long)]
    mutation: Option<String>,
    #[command(flatten)]
    io: Io,
}

#[derive(Args)]
struct CorpusArgs {
    /// Catalogue row whose corpus to draw from.
    #[arg(long)]
    id: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    count: usize,
    #[arg(long, value_parser = parse_window, default_value = "64")]
    window: Window,
    #[command(flatten)]
    io: Io,
}

/// `64` or `n=64,fuel=20000,diag=256` (any subset of keys).
fn parse_window(s: &str) -> Result<Window, String> {
    if let Ok(n) = s.parse() {
        return Ok(Window::with_n(n));
    }
    let mut w = Window::default();
    for part in s.split(',') {
        let (key, val) = part.split_once('=').ok_or_else(|| format!("bad window entry `{part}`"))?;
        let val: u64 = val.trim().parse().map_err(|e| format!("{key}: {e}"))?;
        match key.trim() {
            "n" => w.n = val,
            "fuel" => w.fuel = val,
            "diag" => w.diag = val,
            other => return Err(format!("unknown window key `{other}`")),
        }
    }
    Ok(w)
}

struct Done {
    text: String,
    code: u8,
}

impl Done {
    fn ok(text: String) -> Self {
        Done { text, code: 0 }
    }
}

fn render(io: &Io, value: Json, plain: impl FnOnce() -> String) -> String {
    if io.json {
        serde_json::to_string_pretty(&value).expect("json values serialize") + "\n"
    } else {
        plain()
    }
}

fn parse(a: &FileArgs) -> Result<Done, String> {
    let loaded = load(single(&a.input)?)?;
    let (text, info) = match &loaded {
        Loaded::Loop(p) => {
            let v = validate_loop(p);
            (print_loop(p), json!({"name": p.name(), "arity": p.arity(), "size": p.size(), "validation": v}))
        }
        Loaded::While(p) => {
            let v = validate_while(p);
            (print_while(p), json!({"name": p.name(), "arity": p.arity(), "is_loop": p.is_loop(), "validation": v}))
        }
        Loaded::Dag(sys, d) => {
            (print_dag(sys), json!({"inputs": d.inputs(), "hole": d.hole_name(), "nodes": d.nodes().len()}))
        }
    };
    let mut info = info;
    info["format"] = json!(loaded.format());
    info["text"] = json!(text);
    Ok(Done::ok(render(&a.io, info, || text.clone())))
}

fn run(a: &RunArgs) -> Result<Done, String> {
    let loaded = load(&a.input)?;
    let (output, steps) = match &loaded {
        Loaded::Loop(p) => {
            let limit = a.budget.unwrap_or(u64::MAX);
            match eval_loop_bounded(p, &a.args, limit).map_err(|e| e.to_string())? {
                Some((v, s)) => (Some(v), s.steps),
                None => (None, limit),
            }
        }
        _ => {
            let p = loaded.program()?;
            if a.args.len() != p.arity() {
                return Err(format!("{} takes {} arguments, got {}", p.name(), p.arity(), a.args.len()));
            }
            let fuel = a.budget.unwrap_or(Window::default().fuel);
            let r = run_program(&p, &a.args, fuel);
            match r.status {
                RunStatus::Halted { output, at_step } => (Some(output), at_step),
                RunStatus::StillRunning { .. } => (None, r.fuel_used),
            }
        }
    };
    let value = json!({"output": output, "steps": steps, "halted": output.is_some()});
    let text = render(&a.io, value, || match output {
        Some(v) => format!("{v}\n"),
        None => format!("no halt within {steps} steps\n"),
    });
    Ok(Done { text, code: if output.is_some() { 0 } else { EXIT_UNDECIDED } })
}

fn encode(a: &FileArgs) -> Result<Done, String> {
    let p = load(single(&a.input)?)?.program()?;
    let e = encode_program(&p);
    let value = json!({"name": p.name(), "index": e.to_string(), "loop": is_loop_index(&e)});
    Ok(Done::ok(render(&a.io, value, || format!("{e}\n"))))
}

fn tabulate(f: &FnHandle, n: Nat) -> Vec<Nat> {
    (0..n).map(|x| f.at(x)).collect()
}

fn reduce_cmd(a: &ReduceArgs) -> Result<Done, String> {
    let s = spec(&a.id).ok_or_else(|| format!("unknown catalogue id `{}`", a.id))?;
    let programs = a.input.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
    let input = match (s.kind, programs.as_slice()) {
        (InstanceKind::Pr, [Loaded::Loop(p)]) => Input::Pr(FnHandle::from_loop(p.clone())),
        (InstanceKind::ParRec, [l]) => Input::ParRec(encode_program(&l.program()?)),
        (InstanceKind::ParRecPair, [l, r]) => Input::ParRecPair(encode_program(&l.program()?), encode_program(&r.program()?)),
        (InstanceKind::Halting, [l]) => Input::Halting { index: encode_program(&l.program()?), args: a.args.clone() },
        (kind, _) => return Err(format!("`{}` takes a {kind} instance; see `pr-lab catalogue`", a.id)),
    };
    let named = |n: &Option<String>| n.as_deref().map(|n| unary(n).ok_or_else(|| format!("unknown function `{n}`"))).transpose();
    let params = Params { k: a.k, g: named(&a.g)?, h: named(&a.h)?, ..Params::default() };
    let r = reduce(&a.id, &input, &params, None).map_err(|e| e.to_string())?;
    let w = a.window;
    let target = match &r.target {
        Target::Total(f) => json!({"total": tabulate(f, w.n)}),
        Target::Pair(f, g) => json!({"pair": [tabulate(f, w.n), tabulate(g, w.n)]}),
        Target::Partial(p) => {
            let runs: Vec<Json> = (0..w.n)
                .map(|x| match p.probe(x, w.fuel) {
                    Some((v, s)) => json!({"output": v, "steps": s}),
                    None => Json::Null,
                })
                .collect();
            json!({"partial": runs})
        }
    };
    let mut value = json!({"id": r.id(), "source": r.source_digest, "window": w, "target": target});
    if let Input::Pr(f) = &input {
        let facts = |x: Nat| f.at(x);
        let law = r.bound_map(&w);
        let out = law.check(&Facts::Pr(&facts), &r.target).map_err(|e| e.to_string())?;
        value["law"] = json!({"source": out.source, "target": out.target, "holds": out.holds()});
    }
    let text = render(&a.io, value.clone(), || {
        let mut s = format!("{} on {}\n", r.id(), r.source_digest);
        match &value["target"] {
            Json::Object(m) => {
                for (k, v) in m {
                    let _ = writeln!(s, "{k}: {v}");
                }
            }
            other => {
                let _ = writeln!(s, "{other}");
            }
        }
        if let Some(law) = value.get("law") {
            let _ = writeln!(s, "law: source {} target {} holds {}", law["source"], law["target"], law["holds"]);
        }
        s
    });
    let failed = value.get("law").is_some_and(|l| l["holds"] == json!(false));
    Ok(Done { text, code: if failed { EXIT_FAILED } else { 0 } })
}

fn normalize_cmd(a: &FileArgs) -> Result<Done, String> {
    let nf = normalize(&load_dag(&a.input)?);
    let value = json!({
        "g": nf.render_g(),
        "h": nf.render_h(),
        "trace": nf.trace,
    });
    Ok(Done::ok(render(&a.io, value, || format!("{nf}\n"))))
}

fn expand(a: &FileArgs) -> Result<Done, String> {
    let t = expand_expression(&load_dag(&a.input)?);
    Ok(Done::ok(render(&a.io, json!({"expression": t.to_string()}), || format!("{t}\n"))))
}

fn classify(a: &FileArgs) -> Result<Done, String> {
    let classes = classify_nodes(&load_dag(&a.input)?);
    let value = json!(classes
        .iter()
        .map(|c| json!({"var": c.var, "func": c.func, "class": c.class.to_string()}))
        .collect::<Vec<_>>());
    Ok(Done::ok(render(&a.io, value, || {
        classes.iter().map(|c| format!("{} = {}(..)\t{}\n", c.var, c.func, c.class)).collect()
    })))
}

fn search(a: &SearchArgs) -> Result<Done, String> {
    let budget = SearchBudget::new(a.budget).map_err(|e| e.to_string())?;
    let programs = a.input.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
    if let [Loaded::Loop(p)] = programs.as_slice() {
        if p.arity() != 1 {
            return Err(format!("zero search needs a unary program, {} has arity {}", p.name(), p.arity()));
        }
        let outcome = semidecide_haszeros(&FnHandle::from_loop(p.clone()), budget);
        let found = matches!(outcome, SearchOutcome::Found { .. });
        let text = render(&a.io, json!(outcome), || match &outcome {
            SearchOutcome::Found { witness, global_step } => format!("zero at {witness} (step {global_step})\n"),
            SearchOutcome::Exhausted { .. } => format!("exhausted after {} steps\n", a.budget),
        });
        return Ok(Done { text, code: if found { 0 } else { EXIT_UNDECIDED } });
    }
    let indices = programs.iter().map(|l| l.program().map(|p| encode_program(&p))).collect::<Result<Vec<_>, _>>()?;
    let emitted = semidecide_halt_family(&indices, &a.args, budget);
    let text = render(&a.io, json!(emitted), || {
        emitted
            .iter()
            .map(|e| format!("machine {} halts with {} after {} steps (global step {})\n", e.machine, e.output, e.at_step, e.global_step))
            .collect()
    });
    Ok(Done { text, code: if emitted.is_empty() { EXIT_UNDECIDED } else { 0 } })
}

fn verify(a: &VerifyArgs) -> Result<Done, String> {
    if a.suite != "default" {
        return Err(format!("unknown suite `{}` (only `default` exists)", a.suite));
    }
    let mut suite = SuiteSpec::default_suite(a.seed);
    if !a.id.is_empty() {
        if let Some(bad) = a.id.iter().find(|id| spec(id).is_none()) {
            return Err(format!("unknown catalogue id `{bad}`"));
        }
        suite.ids = a.id.clone();
    }
    if let Some(c) = a.cases {
        suite.cases = c;
    }
    if let Some(w) = a.window {
        suite.window = w;
    }
    if let Some(m) = &a.mutation {
        suite.mutation = Some(Mutation::from_name(m).ok_or_else(|| format!("unknown mutation `{m}`"))?);
    }
    if a.jobs == Some(0) {
        return Err("--jobs must be positive".into());
    }
    let verdicts = run_suite(&suite, a.jobs).map_err(|e| e.to_string())?;
    let report = Report::new(&suite, &verdicts);
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    Ok(Done { text, code: if report.pass { 0 } else { EXIT_FAILED } })
}

fn corpus(a: &CorpusArgs) -> Result<Done, String> {
    let s = spec(&a.id).ok_or_else(|| format!("unknown catalogue id `{}`", a.id))?;
    let kind = CorpusKind::for_instances(s.kind);
    let cases = gen_corpus(&kind, a.count, a.seed, &a.window).map_err(|e| e.to_string())?;
    let value = json!({"kind": kind, "seed": a.seed, "cases": cases});
    Ok(Done::ok(render(&a.io, value, || {
        cases.iter().map(|c| format!("{:016x}  {}\n", c.seed, c.label)).collect()
    })))
}

fn list(io: &Io) -> Result<Done, String> {
    let rows = catalogue();
    Ok(Done::ok(render(io, json!(rows), || {
        rows.iter()
            .map(|r| format!("{:<32} {:<10} {} => {}\n", r.id, r.kind.to_string(), r.source_problem, r.target_problem))
            .collect()
    })))
}

fn dispatch(cmd: &Cmd) -> (Result<Done, String>, &Io) {
    match cmd {
        Cmd::Parse(a) => (parse(a), &a.io),
        Cmd::Run(a) => (run(a), &a.io),
        Cmd::Encode(a) => (encode(a), &a.io),
        Cmd::Reduce(a) => (reduce_cmd(a), &a.io),
        Cmd::Normalize(a) => (normalize_cmd(a), &a.io),
        Cmd::Expand(a) => (expand(a), &a.io),
        Cmd::Classify(a) => (classify(a), &a.io),
        Cmd::Search(a) => (search(a), &a.io),
        Cmd::Verify(a) => (verify(a), &a.io),
        Cmd::Corpus(a) => (corpus(a), &a.io),
        Cmd::Catalogue(io) => (list(io), io),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let (result, io) = dispatch(&cli.cmd);
    match result {
        Ok(done) => {
            match &io.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &done.text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(EXIT_USAGE);
                    }
                }
                None => print!("{}", done.text),
            }
            ExitCode::from(done.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
