//! Many-one reduction constructions, each packaged with an exact finite-window
//! form of its defining biconditional.
//!
//! A [`ReductionResult`] holds the target instance and a `bound_map` from a
//! [`Window`] to a [`WindowLaw`]: a claim about the source instance and a
//! claim about the target that must evaluate to the same [`Value`].

mod catalogue;
mod claims;
mod loop_targets;
mod parrec;
mod pr;

pub use catalogue::{catalogue, spec, InstanceKind, ReductionSpec};
pub use claims::{ClaimError, Facts, HaltFacts, HaltFn, LawOutcome, SourceClaim, TargetClaim, Value, WindowLaw};
pub use parrec::{
    fin_dom_to_almost_all_zeros, fin_dom_to_fin_zeros, hp_to_hz_fg, hp_to_hz_hfg, inf_dom_to_onto,
    not_hp_to_equivalence, parrec_gadget, shp_to_has_zeros, total_to_zero_equivalence,
};
pub use pr::{
    at_least_k_to_exactly_k, ff_graph, ff_z2, fin_zeros_to_fin_cod, fn_iter_graph, hz_to_at_least_k,
    hz_to_equal_at_one_point, hz_to_equal_next, hz_to_exactly_one_zero, hz_to_hz_hf, hz_to_nonzero_function,
    hz_to_not_injective, hz_to_zero_more, no_zeros_to_exactly_k, no_zeros_to_exactly_one_zero,
    not_zero_fn_to_cod_k, onto_to_bijective, zero_fn_to_cod_k,
};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuel_vm::{ProgramIndex, Universal, WhileProgram};
use crate::pr_algebra::FnHandle;
use crate::Nat;

/// Verification window: `n` bounds PR arguments, `fuel` bounds simulated
/// steps, `diag` bounds the `x + t` diagonal for pair-coded searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub n: Nat,
    pub fuel: u64,
    pub diag: Nat,
}

impl Default for Window {
    fn default() -> Self {
        Window { n: 64, fuel: 20_000, diag: 256 }
    }
}

impl Window {
    pub fn with_n(n: Nat) -> Self {
        Window { n, ..Window::default() }
    }
}

/// A unary partial function observed under fuel.
#[derive(Clone)]
pub struct PartialFn {
    name: Arc<str>,
    kind: PartialKind,
}

type NativePartial = dyn Fn(Nat, u64) -> Option<(Nat, u64)> + Send + Sync;

#[derive(Clone)]
enum PartialKind {
    Program { program: Arc<WhileProgram>, universal: Arc<Universal> },
    Native(Arc<NativePartial>),
}

impl fmt::Debug for PartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            PartialKind::Program { .. } => "program",
            PartialKind::Native(_) => "native",
        };
        f.debug_struct("PartialFn").field("name", &self.name).field("kind", &kind).finish()
    }
}

impl PartialFn {
    pub fn program(p: WhileProgram) -> Self {
        let universal = Arc::new(Universal::from_program(&p));
        PartialFn { name: Arc::from(p.name()), kind: PartialKind::Program { program: Arc::new(p), universal } }
    }

    /// `probe(x, fuel)` must return `Some((output, halting step))` exactly
    /// when the value is defined with halting step `≤ fuel`.
    pub fn native(name: impl Into<String>, probe: impl Fn(Nat, u64) -> Option<(Nat, u64)> + Send + Sync + 'static) -> Self {
        PartialFn { name: Arc::from(name.into()), kind: PartialKind::Native(Arc::new(probe)) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn as_program(&self) -> Option<&WhileProgram> {
        match &self.kind {
            PartialKind::Program { program, .. } => Some(program),
            PartialKind::Native(_) => None,
        }
    }

    pub fn probe(&self, x: Nat, fuel: u64) -> Option<(Nat, u64)> {
        match &self.kind {
            PartialKind::Program { universal, .. } => match universal.probe(&[x], fuel) {
                crate::fuel_vm::Probe::Halted { output, at_step } => Some((output, at_step)),
                crate::fuel_vm::Probe::Running => None,
            },
            PartialKind::Native(f) => f(x, fuel),
        }
    }
}

/// The instance a reduction produces.
#[derive(Debug, Clone)]
pub enum Target {
    /// A unary total function.
    Total(FnHandle),
    /// Two unary total functions compared pointwise.
    Pair(FnHandle, FnHandle),
    Partial(PartialFn),
}

impl Target {
    pub fn total(&self) -> Option<&FnHandle> {
        match self {
            Target::Total(f) => Some(f),
            _ => None,
        }
    }
}

/// The source instance handed to a reduction.
#[derive(Debug, Clone)]
pub enum Input {
    Pr(FnHandle),
    ParRec(ProgramIndex),
    ParRecPair(ProgramIndex, ProgramIndex),
    /// A program together with the arguments whose halting is asked about.
    Halting { index: ProgramIndex, args: Vec<Nat> },
}

impl Input {
    pub fn kind(&self) -> InstanceKind {
        match self {
            Input::Pr(_) => InstanceKind::Pr,
            Input::ParRec(_) => InstanceKind::ParRec,
            Input::ParRecPair(..) => InstanceKind::ParRecPair,
            Input::Halting { .. } => InstanceKind::Halting,
        }
    }

    /// Short stable fingerprint used in reports.
    pub fn digest(&self) -> String {
        match self {
            Input::Pr(f) => match f.source() {
                Some(p) => format!("loop:{:016x}", fnv1a(p.to_string().as_bytes())),
                None => format!("native:{}", f.name()),
            },
            Input::ParRec(e) => format!("index:{:016x}", fnv1a(&e.to_bytes())),
            Input::ParRecPair(e, d) => {
                format!("pair:{:016x}:{:016x}", fnv1a(&e.to_bytes()), fnv1a(&d.to_bytes()))
            }
            Input::Halting { index, args } => format!(
                "halting:{:016x}:{}",
                fnv1a(&index.to_bytes()),
                args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Extra parameters; which ones a row needs is listed in its spec.
#[derive(Debug, Clone, Default)]
pub struct Params {
    /// `k` for the k-zero and codomain rows, `n` for iterated graphs.
    pub k: Option<Nat>,
    /// The fixed pre-function.
    pub g: Option<FnHandle>,
    /// The fixed post-function.
    pub h: Option<FnHandle>,
    pub a: Option<Nat>,
    pub b: Option<Nat>,
    /// Budget for finding `a`, `b` when they are not supplied.
    pub witness_budget: Option<u64>,
}

/// Deliberate off-by-one faults, used to show the suite detects them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// First-zero marker compares `x' ≤ x` instead of `x' < x`.
    EozStrictLe,
    /// Shifted copy reads `f(x)` instead of `f(x−1)`.
    NoZerosShift,
    /// Block copy reads `f((x+1) div k)`.
    GtkzShift,
    /// Prefix sum includes the current term.
    PrefixInclusive,
    /// Identity prefix runs to `x ≤ k`.
    CodKBoundary,
    /// Injectivity gadget reads `f(n)` instead of `f(n−1)`.
    InjShift,
    /// Odd fill-in values start at 3.
    BijOddStart3,
    /// Odd nodes point to `2f(i+1)`.
    FfGraph,
    /// Self-application target asks about `t+1` steps.
    ShpFuelOffByOne,
    /// Two-valued codomain gadget looks back `t−1` steps instead of `t−2`.
    Cod2NotShp,
}

impl Mutation {
    pub const ALL: [Mutation; 10] = [
        Mutation::EozStrictLe,
        Mutation::NoZerosShift,
        Mutation::GtkzShift,
        Mutation::PrefixInclusive,
        Mutation::CodKBoundary,
        Mutation::InjShift,
        Mutation::BijOddStart3,
        Mutation::FfGraph,
        Mutation::ShpFuelOffByOne,
        Mutation::Cod2NotShp,
    ];

    /// The catalogue row whose construction the mutation alters.
    pub fn row(self) -> &'static str {
        match self {
            Mutation::EozStrictLe => "hz_to_exactly_one_zero",
            Mutation::NoZerosShift => "no_zeros_to_exactly_one_zero",
            Mutation::GtkzShift => "hz_to_at_least_k",
            Mutation::PrefixInclusive => "hz_to_equal_next",
            Mutation::CodKBoundary => "zero_fn_to_cod_k",
            Mutation::InjShift => "hz_to_not_injective",
            Mutation::BijOddStart3 => "onto_to_bijective",
            Mutation::FfGraph => "ff_graph",
            Mutation::ShpFuelOffByOne => "shp_to_has_zeros",
            Mutation::Cod2NotShp => "cod2_not_shp",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mutation::EozStrictLe => "eoz_strict_le",
            Mutation::NoZerosShift => "no_zeros_shift",
            Mutation::GtkzShift => "gtkz_shift",
            Mutation::PrefixInclusive => "prefix_inclusive",
            Mutation::CodKBoundary => "cod_k_boundary",
            Mutation::InjShift => "inj_shift",
            Mutation::BijOddStart3 => "bij_odd_start3",
            Mutation::FfGraph => "ff_graph",
            Mutation::ShpFuelOffByOne => "shp_fuel_off_by_one",
            Mutation::Cod2NotShp => "cod2_not_shp",
        }
    }

    pub fn from_name(s: &str) -> Option<Mutation> {
        Mutation::ALL.into_iter().find(|m| m.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("unknown reduction `{0}`")]
    UnknownId(String),
    #[error("reduction `{id}` expects a {expected} instance, got {got}")]
    WrongInstance { id: String, expected: InstanceKind, got: InstanceKind },
    #[error("reduction `{id}` needs parameter `{param}`")]
    MissingParam { id: String, param: &'static str },
    #[error("reduction `{id}`: {msg}")]
    BadParam { id: String, msg: String },
    #[error("no witnesses a, b with h(a) = 0 and h(b) ≠ 0 found within {budget} evaluations")]
    NoWitness { budget: u64 },
}

type BoundMap = dyn Fn(&Window) -> WindowLaw + Send + Sync;

/// Output of a catalogue reduction.
#[derive(Clone)]
pub struct ReductionResult {
    pub spec: &'static ReductionSpec,
    pub target: Target,
    pub source_digest: String,
    pub mutation: Option<Mutation>,
    bound_map: Arc<BoundMap>,
}

impl fmt::Debug for ReductionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReductionResult")
            .field("id", &self.spec.id)
            .field("target", &self.target)
            .field("source_digest", &self.source_digest)
            .field("mutation", &self.mutation)
            .finish()
    }
}

impl ReductionResult {
    pub(crate) fn new(
        id: &str,
        target: Target,
        source_digest: String,
        mutation: Option<Mutation>,
        bound_map: impl Fn(&Window) -> WindowLaw + Send + Sync + 'static,
    ) -> Self {
        let spec = spec(id).unwrap_or_else(|| panic!("`{id}` is not in the catalogue"));
        ReductionResult { spec, target, source_digest, mutation, bound_map: Arc::new(bound_map) }
    }

    pub fn id(&self) -> &'static str {
        self.spec.id
    }

    /// The window law for `w`.
    pub fn bound_map(&self, w: &Window) -> WindowLaw {
        (self.bound_map)(w)
    }
}

/// Builds catalogue row `id` on `input`. `mutation` only takes effect on
/// the row it belongs to.
pub fn reduce(id: &str, input: &Input, params: &Params, mutation: Option<Mutation>) -> Result<ReductionResult, ReductionError> {
    let s = spec(id).ok_or_else(|| ReductionError::UnknownId(id.to_string()))?;
    if input.kind() != s.kind {
        return Err(ReductionError::WrongInstance { id: id.into(), expected: s.kind, got: input.kind() });
    }
    let m = mutation.filter(|m| m.row() == id);
    let digest = input.digest();
    let mut r = match input {
        Input::Pr(f) => pr::build(id, f, params, m)?,
        Input::ParRec(e) => parrec::build(id, e, params, m)?,
        Input::ParRecPair(e, d) => parrec::build_pair(id, e, d, m)?,
        Input::Halting { index, args } => parrec::build_halting(id, index, args, params, m)?,
    };
    r.source_digest = digest;
    Ok(r)
}

pub(crate) fn need_k(id: &str, params: &Params, min: Nat) -> Result<Nat, ReductionError> {
    let k = params.k.ok_or(ReductionError::MissingParam { id: id.into(), param: "k" })?;
    if k < min {
        return Err(ReductionError::BadParam { id: id.into(), msg: format!("k must be at least {min}, got {k}") });
    }
    Ok(k)
}
