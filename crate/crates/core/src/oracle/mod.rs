//! Corpus generation with planted ground truth, and exhaustive checking of
//! every catalogue row's window law against it.
//!
//! Source-side facts never come from the code under test: tables are
//! planted, While programs come from families with closed-form halting
//! behaviour, and random Loop programs are evaluated by the Loop interpreter.

mod families;
mod tables;

pub use families::{Output, WhileFamily};
pub use tables::{random_loop, PlantedTable};

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuel_vm::encode_program;
use crate::loop_lang::{eval_loop, LoopProgram};
use crate::pr_algebra::FnHandle;
use crate::reductions::{
    catalogue, fnv1a, reduce, spec, Facts, HaltFacts, Input, InstanceKind, Mutation, Params, Value, Window,
};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unknown reduction `{0}`")]
    UnknownId(String),
    #[error("reduction `{id}` takes {expected} instances, the case is {got}")]
    KindMismatch { id: String, expected: InstanceKind, got: InstanceKind },
    #[error("unsatisfiable corpus spec: {0}")]
    Unsatisfiable(String),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternSpec {
    /// Zeros exactly at these points of a table twice the window long.
    Zeros(Vec<Nat>),
    /// Tables of assorted shapes.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DelaySpec {
    /// Halts on every input after exactly this many steps.
    Steps(u64),
    /// Assorted families, weighted towards halting times near the fuel bound.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusKind {
    ZeroPattern(PatternSpec),
    RandomLoop { depth: usize },
    /// Planted tables mixed with random Loop programs.
    MixedPr,
    WhileDelay(DelaySpec),
    WhileDiverger,
    WhilePair,
    Halting,
}

impl CorpusKind {
    fn tag(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// The corpus the default suite uses for rows of `kind`.
    pub fn for_instances(kind: InstanceKind) -> CorpusKind {
        match kind {
            InstanceKind::Pr => CorpusKind::MixedPr,
            InstanceKind::ParRec => CorpusKind::WhileDelay(DelaySpec::Mixed),
            InstanceKind::ParRecPair => CorpusKind::WhilePair,
            InstanceKind::Halting => CorpusKind::Halting,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    Table(PlantedTable),
    Loop { program: LoopProgram },
    While(WhileFamily),
    WhilePair { left: WhileFamily, right: WhileFamily },
    Halting { family: WhileFamily, args: Vec<Nat> },
}

impl Instance {
    pub fn kind(&self) -> InstanceKind {
        match self {
            Instance::Table(_) | Instance::Loop { .. } => InstanceKind::Pr,
            Instance::While(_) => InstanceKind::ParRec,
            Instance::WhilePair { .. } => InstanceKind::ParRecPair,
            Instance::Halting { .. } => InstanceKind::Halting,
        }
    }
}

/// Row parameters drawn with the case; each row reads what it needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseParams {
    pub k: Nat,
    pub g: String,
    pub h: String,
    /// Witnesses for `h`, or `None` to have the reduction search for them.
    pub ab: Option<(Nat, Nat)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCase {
    pub seed: u64,
    pub label: String,
    pub instance: Instance,
    pub params: CaseParams,
}

const G_PANEL: [&str; 6] = ["id", "odd", "square", "affine", "const11", "spread"];
/// With known witnesses `a`, `b`: `h(a) = 0`, `h(b) ≠ 0`.
const H_PANEL: [(&str, Nat, Nat); 4] = [("is_pos", 0, 1), ("parity", 2, 3), ("mod3", 3, 1), ("ne5", 5, 0)];

/// The fixed unary functions case parameters refer to.
pub fn unary(name: &str) -> Option<FnHandle> {
    let f: fn(Nat) -> Nat = match name {
        "id" => |y| y,
        "odd" => |y| y.saturating_mul(2).saturating_add(1),
        "square" => |y| y.saturating_mul(y),
        "affine" => |y| y.saturating_mul(3).saturating_add(7),
        "const11" => |_| 11,
        "spread" => |y| y.saturating_mul(400),
        "is_pos" => |v| Nat::from(v > 0),
        "parity" => |v| v % 2,
        "mod3" => |v| v % 3,
        "ne5" => |v| Nat::from(v != 5),
        _ => return None,
    };
    Some(FnHandle::unary(name, f))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of case `i` of a corpus; independent of how work is scheduled.
pub fn case_seed(seed: u64, kind: &CorpusKind, i: usize) -> u64 {
    splitmix(splitmix(seed ^ fnv1a(kind.tag().as_bytes())).wrapping_add(i as u64))
}

fn draw_params(rng: &mut ChaCha8Rng) -> CaseParams {
    let (h, a, b) = H_PANEL[rng.gen_range(0..H_PANEL.len())];
    CaseParams {
        k: rng.gen_range(1..=4),
        g: G_PANEL[rng.gen_range(0..G_PANEL.len())].to_string(),
        h: h.to_string(),
        ab: rng.gen_bool(0.5).then_some((a, b)),
    }
}

fn const_family(steps: u64, out: Nat) -> WhileFamily {
    WhileFamily::Const { steps, out: out.min(steps) }
}

fn random_output(rng: &mut ChaCha8Rng) -> Output {
    if rng.gen_bool(0.5) {
        Output::Input
    } else {
        Output::Const(rng.gen_range(0..=2))
    }
}

fn mixed_family(rng: &mut ChaCha8Rng, fuel: u64) -> WhileFamily {
    match rng.gen_range(0..10) {
        0..=3 => {
            let steps = if rng.gen_bool(0.6) {
                let edges = [0, 1, fuel.saturating_sub(2), fuel.saturating_sub(1), fuel, fuel + 1];
                edges[rng.gen_range(0..edges.len())]
            } else if rng.gen_bool(0.5) {
                rng.gen_range(0..=300)
            } else {
                rng.gen_range(0..=2 * fuel)
            };
            const_family(steps, rng.gen_range(0..=2))
        }
        4 | 5 => {
            let per = if rng.gen_bool(0.8) { rng.gen_range(0..=60) } else { rng.gen_range(200..=1_000) };
            WhileFamily::Linear { per, out: random_output(rng) }
        }
        6 | 7 => WhileFamily::Below { a: rng.gen_range(0..=40), invert: rng.gen_bool(0.4), out: random_output(rng) },
        8 => WhileFamily::EvenOnly,
        _ => WhileFamily::Diverger,
    }
}

fn small_family(rng: &mut ChaCha8Rng) -> WhileFamily {
    match rng.gen_range(0..8) {
        0..=2 => const_family(rng.gen_range(0..=300), rng.gen_range(0..=2)),
        3 | 4 => WhileFamily::Linear { per: rng.gen_range(0..=8), out: random_output(rng) },
        5 => WhileFamily::Below { a: rng.gen_range(0..=20), invert: rng.gen_bool(0.5), out: random_output(rng) },
        6 => WhileFamily::EvenOnly,
        _ => WhileFamily::Diverger,
    }
}

fn tweak(f: &WhileFamily, rng: &mut ChaCha8Rng) -> WhileFamily {
    match *f {
        WhileFamily::Const { steps, out } => {
            if rng.gen_bool(0.5) {
                const_family(steps.max(out + 1), out + 1)
            } else {
                const_family(steps + 1, out)
            }
        }
        WhileFamily::Linear { per, out } => WhileFamily::Linear {
            per,
            out: if out == Output::Input { Output::Const(0) } else { Output::Input },
        },
        WhileFamily::Below { a, invert, out } => WhileFamily::Below { a: a + 1, invert, out },
        WhileFamily::EvenOnly => WhileFamily::Linear { per: 4, out: Output::Input },
        WhileFamily::Diverger => WhileFamily::Below { a: 3, invert: false, out: Output::Input },
    }
}

fn checked_family(f: WhileFamily) -> Result<WhileFamily, OracleError> {
    f.verify(&f.program(), &f.probe_points()).map_err(OracleError::Unsatisfiable)?;
    Ok(f)
}

/// Generates case number `seed` of `kind`; planted facts are verified.
pub fn gen_case(kind: &CorpusKind, seed: u64, window: &Window) -> Result<CorpusCase, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = draw_params(&mut rng);
    let n = window.n;
    let instance = match kind {
        CorpusKind::ZeroPattern(PatternSpec::Zeros(zs)) => {
            let len = (2 * n as usize + 2).max(zs.iter().max().map_or(0, |&z| z as usize + 1));
            Instance::Table(PlantedTable::with_zeros(zs, len).map_err(OracleError::Unsatisfiable)?)
        }
        CorpusKind::ZeroPattern(PatternSpec::Mixed) => Instance::Table(PlantedTable::random(&mut rng, n)),
        CorpusKind::RandomLoop { depth } => {
            Instance::Loop { program: random_loop(&mut rng, *depth, 4 * n + 4) }
        }
        CorpusKind::MixedPr => {
            if rng.gen_bool(0.85) {
                Instance::Table(PlantedTable::random(&mut rng, n))
            } else {
                Instance::Loop { program: random_loop(&mut rng, 3, 4 * n + 4) }
            }
        }
        CorpusKind::WhileDelay(DelaySpec::Steps(s)) => Instance::While(checked_family(const_family(*s, 0))?),
        CorpusKind::WhileDelay(DelaySpec::Mixed) => {
            Instance::While(checked_family(mixed_family(&mut rng, window.fuel))?)
        }
        CorpusKind::WhileDiverger => Instance::While(checked_family(WhileFamily::Diverger)?),
        CorpusKind::WhilePair => {
            let left = small_family(&mut rng);
            let right = match rng.gen_range(0..4) {
                0 => left.clone(),
                1 | 2 => tweak(&left, &mut rng),
                _ => small_family(&mut rng),
            };
            Instance::WhilePair { left: checked_family(left)?, right: checked_family(right)? }
        }
        CorpusKind::Halting => {
            let g = unary(&params.g).expect("panel name");
            let reach = (0..=n).map(|y| g.at(y)).max().unwrap_or(0);
            let family = if rng.gen_bool(0.4) {
                // Halting right around the last step the window can see.
                let steps = reach.saturating_sub(1) + rng.gen_range(0..=2);
                const_family(steps, rng.gen_range(0..=2))
            } else {
                mixed_family(&mut rng, reach.max(1))
            };
            Instance::Halting { family: checked_family(family)?, args: vec![rng.gen_range(0..=30)] }
        }
    };
    if let Instance::Table(t) = &instance {
        t.verify(&t.program(), &mut rng).map_err(OracleError::Unsatisfiable)?;
    }
    let label = match &instance {
        Instance::Table(t) => format!("table:{}", t.shape),
        Instance::Loop { .. } => "random_loop".into(),
        Instance::While(f) => f.label(),
        Instance::WhilePair { left, right } => format!("{} vs {}", left.label(), right.label()),
        Instance::Halting { family, args } => format!("{} on {args:?}", family.label()),
    };
    Ok(CorpusCase { seed, label, instance, params })
}

pub fn gen_corpus(kind: &CorpusKind, count: usize, seed: u64, window: &Window) -> Result<Vec<CorpusCase>, OracleError> {
    (0..count).map(|i| gen_case(kind, case_seed(seed, kind, i), window)).collect()
}

impl CorpusCase {
    /// The reduction input built from the case.
    pub fn input(&self) -> Input {
        match &self.instance {
            Instance::Table(t) => {
                let t2 = t.clone();
                Input::Pr(FnHandle::unary("planted", move |x| t2.value(x)).with_source(t.program()))
            }
            Instance::Loop { program } => Input::Pr(FnHandle::from_loop(program.clone()).memoized()),
            Instance::While(f) => Input::ParRec(encode_program(&f.program())),
            Instance::WhilePair { left, right } => {
                Input::ParRecPair(encode_program(&left.program()), encode_program(&right.program()))
            }
            Instance::Halting { family, args } => {
                Input::Halting { index: encode_program(&family.program()), args: args.clone() }
            }
        }
    }

    /// Row parameters for `id`.
    pub fn params_for(&self, id: &str) -> Params {
        let p = &self.params;
        let k = if id == "not_zero_fn_to_cod_k" { p.k.max(2) } else { p.k };
        Params {
            k: Some(k),
            g: unary(&p.g),
            h: unary(&p.h),
            a: p.ab.map(|(a, _)| a),
            b: p.ab.map(|(_, b)| b),
            witness_budget: None,
        }
    }

    /// Runs `body` with the planted source facts.
    pub fn with_facts<R>(&self, body: impl FnOnce(&Facts<'_>) -> R) -> R {
        let unary_run = |f: &WhileFamily, a: &[Nat]| if a.len() == 1 { f.run(a[0]) } else { None };
        match &self.instance {
            Instance::Table(t) => {
                let v = |x: Nat| t.value(x);
                body(&Facts::Pr(&v))
            }
            Instance::Loop { program } => {
                let cache: Mutex<HashMap<Nat, Nat>> = Mutex::new(HashMap::new());
                let v = |x: Nat| {
                    if let Some(&y) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&x) {
                        return y;
                    }
                    let y = eval_loop(program, &[x]).expect("unary program").0;
                    cache.lock().unwrap_or_else(|e| e.into_inner()).insert(x, y);
                    y
                };
                body(&Facts::Pr(&v))
            }
            Instance::While(f) | Instance::Halting { family: f, .. } => {
                let run = |a: &[Nat]| unary_run(f, a);
                body(&Facts::Halt(HaltFacts(&run)))
            }
            Instance::WhilePair { left, right } => {
                let l = |a: &[Nat]| unary_run(left, a);
                let r = |a: &[Nat]| unary_run(right, a);
                body(&Facts::Pair(HaltFacts(&l), HaltFacts(&r)))
            }
        }
    }
}

/// Why a case violated (or could not evaluate) its window law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub params: CaseParams,
    pub source_claim: Option<String>,
    pub target_claim: Option<String>,
    pub source: Option<Value>,
    pub target: Option<Value>,
    pub error: Option<String>,
}

/// Checks one case against row `id` on `window`. `Ok(None)` means both
/// sides of the law agree.
pub fn brute_check_reduction(
    id: &str,
    case: &CorpusCase,
    window: &Window,
    mutation: Option<Mutation>,
) -> Result<Option<Witness>, OracleError> {
    let s = spec(id).ok_or_else(|| OracleError::UnknownId(id.into()))?;
    if s.kind != case.instance.kind() {
        return Err(OracleError::KindMismatch { id: id.into(), expected: s.kind, got: case.instance.kind() });
    }
    let mut w = Witness {
        label: case.label.clone(),
        params: case.params.clone(),
        source_claim: None,
        target_claim: None,
        source: None,
        target: None,
        error: None,
    };
    let r = match reduce(id, &case.input(), &case.params_for(id), mutation) {
        Ok(r) => r,
        Err(e) => {
            w.error = Some(e.to_string());
            return Ok(Some(w));
        }
    };
    let law = r.bound_map(window);
    w.source_claim = Some(format!("{:?}", law.source));
    w.target_claim = Some(law.target.name().to_string());
    match case.with_facts(|facts| law.check(facts, &r.target)) {
        Ok(out) if out.holds() => Ok(None),
        Ok(out) => {
            w.source = Some(out.source);
            w.target = Some(out.target);
            Ok(Some(w))
        }
        Err(e) => {
            w.error = Some(e.to_string());
            Ok(Some(w))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub id: String,
    /// Index of the case within the row's corpus.
    pub case: usize,
    pub instance_digest: String,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub cases: usize,
    pub window: Window,
    pub failures: Vec<Failure>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSpec {
    pub name: String,
    pub ids: Vec<String>,
    pub cases: usize,
    pub seed: u64,
    pub window: Window,
    pub mutation: Option<Mutation>,
}

impl SuiteSpec {
    /// Every catalogue row, 200 cases each, default window.
    pub fn default_suite(seed: u64) -> Self {
        SuiteSpec {
            name: "default".into(),
            ids: catalogue().iter().map(|s| s.id.to_string()).collect(),
            cases: 200,
            seed,
            window: Window::default(),
            mutation: None,
        }
    }
}

/// Checks every `(id, case)` pair; `jobs` caps the worker threads. The
/// result does not depend on scheduling.
pub fn run_suite(suite: &SuiteSpec, jobs: Option<usize>) -> Result<Vec<Verdict>, OracleError> {
    let run = || -> Result<Vec<Verdict>, OracleError> {
        let kinds: Vec<InstanceKind> = suite
            .ids
            .iter()
            .map(|id| spec(id).map(|s| s.kind).ok_or_else(|| OracleError::UnknownId(id.clone())))
            .collect::<Result<_, _>>()?;
        let mut corpora: HashMap<InstanceKind, Vec<CorpusCase>> = HashMap::new();
        for &k in &kinds {
            if let Entry::Vacant(slot) = corpora.entry(k) {
                let kind = CorpusKind::for_instances(k);
                let cases = (0..suite.cases)
                    .into_par_iter()
                    .map(|i| gen_case(&kind, case_seed(suite.seed, &kind, i), &suite.window))
                    .collect::<Result<Vec<_>, _>>()?;
                slot.insert(cases);
            }
        }
        let work: Vec<(usize, usize)> =
            (0..suite.ids.len()).flat_map(|r| (0..suite.cases).map(move |c| (r, c))).collect();
        let results = work
            .par_iter()
            .map(|&(r, c)| {
                let case = &corpora[&kinds[r]][c];
                let id = &suite.ids[r];
                brute_check_reduction(id, case, &suite.window, suite.mutation).map(|w| {
                    w.map(|witness| Failure {
                        id: id.clone(),
                        case: c,
                        instance_digest: case.input().digest(),
                        witness,
                    })
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut verdicts: Vec<Verdict> = suite
            .ids
            .iter()
            .map(|id| Verdict { id: id.clone(), cases: suite.cases, window: suite.window, failures: vec![], pass: true })
            .collect();
        for (&(r, _), f) in work.iter().zip(results) {
            if let Some(f) = f {
                verdicts[r].failures.push(f);
                verdicts[r].pass = false;
            }
        }
        Ok(verdicts)
    };
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| OracleError::Pool(e.to_string()))?
            .install(run),
        None => run(),
    }
}

/// Regenerates case `case` of row `id` under `seed` and checks it again.
pub fn replay(
    seed: u64,
    id: &str,
    window: &Window,
    case: usize,
    mutation: Option<Mutation>,
) -> Result<Option<Witness>, OracleError> {
    let s = spec(id).ok_or_else(|| OracleError::UnknownId(id.into()))?;
    let kind = CorpusKind::for_instances(s.kind);
    let c = gen_case(&kind, case_seed(seed, &kind, case), window)?;
    brute_check_reduction(id, &c, window, mutation)
}

/// The JSON report of a suite run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub window: Window,
    pub mutation: Option<Mutation>,
    /// Total `(row, case)` checks.
    pub cases: usize,
    pub pass: bool,
    pub rows: Vec<RowSummary>,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSummary {
    pub id: String,
    pub cases: usize,
    pub failures: usize,
}

impl Report {
    pub fn new(suite: &SuiteSpec, verdicts: &[Verdict]) -> Self {
        Report {
            suite: suite.name.clone(),
            seed: suite.seed,
            window: suite.window,
            mutation: suite.mutation,
            cases: verdicts.iter().map(|v| v.cases).sum(),
            pass: verdicts.iter().all(|v| v.pass),
            rows: verdicts
                .iter()
                .map(|v| RowSummary { id: v.id.clone(), cases: v.cases, failures: v.failures.len() })
                .collect(),
            failures: verdicts.iter().flat_map(|v| v.failures.iter().cloned()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Window {
        Window { n: 16, fuel: 300, diag: 40 }
    }

    #[test]
    fn planted_zero_pattern() {
        let kind = CorpusKind::ZeroPattern(PatternSpec::Zeros(vec![3, 7]));
        let cases = gen_corpus(&kind, 2, 1, &small()).unwrap();
        let Instance::Table(t) = &cases[0].instance else { panic!() };
        assert_eq!(t.zeros(), [3, 7].into());
        let far = CorpusKind::ZeroPattern(PatternSpec::Zeros(vec![500]));
        assert!(gen_corpus(&far, 1, 1, &small()).is_ok());
    }

    #[test]
    fn delay_case_halts_at_planted_step() {
        let kind = CorpusKind::WhileDelay(DelaySpec::Steps(137));
        let c = &gen_corpus(&kind, 1, 9, &small()).unwrap()[0];
        let Input::ParRec(e) = c.input() else { panic!() };
        assert_eq!(crate::fuel_vm::run_bounded(&e, &[5], 1_000).halted(), Some((0, 137)));
    }

    #[test]
    fn generation_is_deterministic() {
        let a = gen_corpus(&CorpusKind::MixedPr, 10, 4, &small()).unwrap();
        let b = gen_corpus(&CorpusKind::MixedPr, 10, 4, &small()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_corpus(&CorpusKind::MixedPr, 10, 5, &small()).unwrap());
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let c = &gen_corpus(&CorpusKind::WhileDiverger, 1, 0, &small()).unwrap()[0];
        assert!(matches!(
            brute_check_reduction("hz_to_not_injective", c, &small(), None),
            Err(OracleError::KindMismatch { .. })
        ));
    }

    #[test]
    fn small_suite_passes_and_a_mutation_is_caught() {
        let mut suite = SuiteSpec::default_suite(7);
        suite.cases = 12;
        suite.window = small();
        let verdicts = run_suite(&suite, Some(2)).unwrap();
        let report = Report::new(&suite, &verdicts);
        assert!(report.pass, "{:#?}", report.failures);

        suite.ids = vec!["hz_to_not_injective".into()];
        suite.cases = 40;
        suite.mutation = Some(Mutation::InjShift);
        let verdicts = run_suite(&suite, None).unwrap();
        let f = &verdicts[0].failures[0];
        let again = replay(7, &f.id, &suite.window, f.case, suite.mutation).unwrap();
        assert_eq!(again.as_ref(), Some(&f.witness));
    }

    #[test]
    fn empty_suite() {
        let mut suite = SuiteSpec::default_suite(1);
        suite.ids.clear();
        assert!(run_suite(&suite, None).unwrap().is_empty());
    }
}
