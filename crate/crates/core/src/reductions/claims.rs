use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{PartialFn, Target};
use crate::dovetail::{bounded_count_zeros, codomain_within, collision_within};
use crate::pr_algebra::FnHandle;
use crate::Nat;

/// What a claim evaluates to. Both sides of a law must produce equal values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Bool(bool),
    Num(Nat),
    Opt(Option<Nat>),
    Set(BTreeSet<Nat>),
    Pair(Box<Value>, Box<Value>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Num(n) => write!(f, "{n}"),
            Value::Opt(Some(n)) => write!(f, "some({n})"),
            Value::Opt(None) => f.write_str("none"),
            Value::Set(s) => {
                let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            Value::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// Known halting behaviour of a program: `Some((output, step))` when it
/// halts on the given arguments at exactly that step, `None` otherwise.
#[derive(Clone, Copy)]
pub struct HaltFacts<'a>(pub &'a HaltFn<'a>);

/// Output and halting step of a run, or `None` if it never halts.
pub type HaltFn<'a> = dyn Fn(&[Nat]) -> Option<(Nat, u64)> + Sync + 'a;

impl HaltFacts<'_> {
    pub fn run(&self, args: &[Nat]) -> Option<(Nat, u64)> {
        (self.0)(args)
    }

    pub fn halts_within(&self, args: &[Nat], fuel: u64) -> bool {
        self.run(args).is_some_and(|(_, s)| s <= fuel)
    }
}

/// Ground truth about a source instance, supplied by the caller.
#[derive(Clone, Copy)]
pub enum Facts<'a> {
    Pr(&'a (dyn Fn(Nat) -> Nat + Sync)),
    Halt(HaltFacts<'a>),
    Pair(HaltFacts<'a>, HaltFacts<'a>),
}

impl Facts<'_> {
    fn kind(&self) -> &'static str {
        match self {
            Facts::Pr(_) => "pr",
            Facts::Halt(_) => "halt",
            Facts::Pair(..) => "pair",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClaimError {
    #[error("source claim {claim} needs {want} facts, got {got}")]
    Facts { claim: &'static str, want: &'static str, got: &'static str },
    #[error("target claim {claim} needs a {want} target")]
    Target { claim: &'static str, want: &'static str },
}

/// A statement about the source instance over a finite window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceClaim {
    /// Some `x ≤ n` has `f(x) = 0`.
    HasZero { n: Nat },
    NoZero { n: Nat },
    /// `scale` times the number of zeros on `[0, n]`.
    ZeroCount { n: Nat, scale: Nat },
    AtLeastZeros { n: Nat, k: Nat },
    ZeroFunction { n: Nat },
    NotZeroFunction { n: Nat },
    /// The integer range from `[f(0) = 0]` up to the zero count on `[0, n]`.
    ZeroCountRange { n: Nat },
    /// `(2·img f[0,n] ∪ {1, 3, …, 2(2n+2 − |img|) − 1}, true)`.
    BijectiveImage { n: Nat },
    /// `f` vanishes somewhere on `[0, n] ∪ {f(x) − 1 : x ≤ n, f(x) ≥ 1}`.
    HasZeroClosure { n: Nat },
    /// The halting step on `args` if it is at most `upto`.
    FirstHalt { args: Vec<Nat>, upto: u64 },
    /// Number of `x` with `x + s_x ≤ diag`, where `s_x` is the halting step.
    HaltCensus { diag: Nat },
    /// The integer range `0 ..= HaltCensus { diag }`.
    HaltCensusRange { diag: Nat },
    /// `{x ≤ n : s_x ≤ fuel}`.
    HaltDomain { n: Nat, fuel: u64 },
    /// No `x ≤ diag` on which both programs halt within `diag` steps with
    /// different outputs.
    NoDisagreement { diag: Nat },
    HaltsWithin { args: Vec<Nat>, fuel: u64 },
    NotHaltsWithin { args: Vec<Nat>, fuel: u64 },
    /// Some `x ≤ n` halts within `fuel` steps with output 0.
    HaltsWithZeroSomewhere { n: Nat, fuel: u64 },
}

impl SourceClaim {
    pub fn name(&self) -> &'static str {
        match self {
            SourceClaim::HasZero { .. } => "has_zero",
            SourceClaim::NoZero { .. } => "no_zero",
            SourceClaim::ZeroCount { .. } => "zero_count",
            SourceClaim::AtLeastZeros { .. } => "at_least_zeros",
            SourceClaim::ZeroFunction { .. } => "zero_function",
            SourceClaim::NotZeroFunction { .. } => "not_zero_function",
            SourceClaim::ZeroCountRange { .. } => "zero_count_range",
            SourceClaim::BijectiveImage { .. } => "bijective_image",
            SourceClaim::HasZeroClosure { .. } => "has_zero_closure",
            SourceClaim::FirstHalt { .. } => "first_halt",
            SourceClaim::HaltCensus { .. } => "halt_census",
            SourceClaim::HaltCensusRange { .. } => "halt_census_range",
            SourceClaim::HaltDomain { .. } => "halt_domain",
            SourceClaim::NoDisagreement { .. } => "no_disagreement",
            SourceClaim::HaltsWithin { .. } => "halts_within",
            SourceClaim::NotHaltsWithin { .. } => "not_halts_within",
            SourceClaim::HaltsWithZeroSomewhere { .. } => "halts_with_zero_somewhere",
        }
    }

    pub fn eval(&self, facts: &Facts<'_>) -> Result<Value, ClaimError> {
        use SourceClaim as S;
        let wrong = |want| ClaimError::Facts { claim: self.name(), want, got: facts.kind() };
        match (self, facts) {
            (S::HasZero { n }, Facts::Pr(f)) => Ok(Value::Bool((0..=*n).any(|x| f(x) == 0))),
            (S::NoZero { n }, Facts::Pr(f)) => Ok(Value::Bool((0..=*n).all(|x| f(x) != 0))),
            (S::ZeroCount { n, scale }, Facts::Pr(f)) => {
                Ok(Value::Num(zero_count(*f, *n).saturating_mul(*scale)))
            }
            (S::AtLeastZeros { n, k }, Facts::Pr(f)) => Ok(Value::Bool(zero_count(*f, *n) >= *k)),
            (S::ZeroFunction { n }, Facts::Pr(f)) => Ok(Value::Bool((0..=*n).all(|x| f(x) == 0))),
            (S::NotZeroFunction { n }, Facts::Pr(f)) => Ok(Value::Bool((0..=*n).any(|x| f(x) != 0))),
            (S::ZeroCountRange { n }, Facts::Pr(f)) => {
                let lo = (f(0) == 0) as Nat;
                Ok(Value::Set((lo..=zero_count(*f, *n)).collect()))
            }
            (S::BijectiveImage { n }, Facts::Pr(f)) => {
                let img: BTreeSet<Nat> = (0..=*n).map(f).collect();
                let odd_count = 2 * (n + 1) - img.len() as Nat;
                let mut out: BTreeSet<Nat> = img.iter().map(|v| v.saturating_mul(2)).collect();
                out.extend((0..odd_count).map(|i| 2 * i + 1));
                Ok(Value::Pair(Box::new(Value::Set(out)), Box::new(Value::Bool(true))))
            }
            (S::HasZeroClosure { n }, Facts::Pr(f)) => Ok(Value::Bool((0..=*n).any(|x| {
                let v = f(x);
                v == 0 || f(v - 1) == 0
            }))),
            (S::FirstHalt { args, upto }, Facts::Halt(h)) => {
                Ok(Value::Opt(h.run(args).map(|(_, s)| s).filter(|s| s <= upto)))
            }
            (S::HaltCensus { diag }, Facts::Halt(h)) => Ok(Value::Num(census(h, *diag))),
            (S::HaltCensusRange { diag }, Facts::Halt(h)) => Ok(Value::Set((0..=census(h, *diag)).collect())),
            (S::HaltDomain { n, fuel }, Facts::Halt(h)) => {
                Ok(Value::Set((0..=*n).filter(|&x| h.halts_within(&[x], *fuel)).collect()))
            }
            (S::NoDisagreement { diag }, Facts::Pair(a, b)) => Ok(Value::Bool(!(0..=*diag).any(|x| {
                match (a.run(&[x]), b.run(&[x])) {
                    (Some((u, s)), Some((v, r))) => s <= *diag && r <= *diag && u != v,
                    _ => false,
                }
            }))),
            (S::HaltsWithin { args, fuel }, Facts::Halt(h)) => Ok(Value::Bool(h.halts_within(args, *fuel))),
            (S::NotHaltsWithin { args, fuel }, Facts::Halt(h)) => {
                Ok(Value::Bool(!h.halts_within(args, *fuel)))
            }
            (S::HaltsWithZeroSomewhere { n, fuel }, Facts::Halt(h)) => Ok(Value::Bool(
                (0..=*n).any(|x| h.run(&[x]).is_some_and(|(v, s)| v == 0 && s <= *fuel)),
            )),
            (S::NoDisagreement { .. }, _) => Err(wrong("pair")),
            (
                S::FirstHalt { .. }
                | S::HaltCensus { .. }
                | S::HaltCensusRange { .. }
                | S::HaltDomain { .. }
                | S::HaltsWithin { .. }
                | S::NotHaltsWithin { .. }
                | S::HaltsWithZeroSomewhere { .. },
                _,
            ) => Err(wrong("halt")),
            _ => Err(wrong("pr")),
        }
    }
}

fn census(h: &HaltFacts<'_>, diag: Nat) -> Nat {
    (0..=diag).filter(|&x| h.run(&[x]).is_some_and(|(_, s)| s <= diag - x)).count() as Nat
}

fn zero_count(f: &(dyn Fn(Nat) -> Nat + Sync), n: Nat) -> Nat {
    (0..=n).filter(|&x| f(x) == 0).count() as Nat
}

/// A statement about the target instance over a finite window.
#[derive(Debug, Clone)]
pub enum TargetClaim {
    /// The number of zeros on `[0, n]` equals `k`.
    ExactlyZeros { n: Nat, k: Nat },
    /// Number of zeros on `[0, upto]`.
    ZeroCount { upto: Nat },
    NonzeroCount { upto: Nat },
    /// Some `x ≤ n` has `g(x) = g(x+1)`.
    EqualNext { n: Nat },
    NotIdenticallyZero { n: Nat },
    /// The two functions of a pair agree at some `x ≤ n`.
    EqualSomewhere { n: Nat },
    /// The two functions of a pair agree on all of `[0, n]`.
    EquivalentWithin { n: Nat },
    CodomainSize { n: Nat, k: Nat },
    Codomain { n: Nat },
    Injective { n: Nat },
    /// `(image of [0, n], injective on [0, n])`.
    ImageAndInjective { n: Nat },
    /// Some `a, b ≤ n` with `g(a) = 0` and `g(b) ≠ 0`.
    ZeroAndNonzero { n: Nat },
    /// At least `at_least` points `x ≤ upto` with `g^iter(x) = 0`.
    IteratedZeros { iter: usize, upto: Nat, at_least: Nat },
    /// Some `y ≤ n` with `post(g(pre(y))) = 0`, absent parts read as identity.
    HasZeroComposed { pre: Option<FnHandle>, post: Option<FnHandle>, n: Nat },
    /// The least zero on `[0, upto]`.
    FirstZero { upto: Nat },
    /// `{x ≤ n : g(x) = 0 within fuel}` for a partial target.
    PartialZeroDomain { n: Nat, fuel: u64 },
    /// The values of a partial target on `[0, n]` observed within `fuel`
    /// form a set of size `k`.
    PartialCodomainSize { n: Nat, fuel: u64, k: Nat },
    /// Two distinct points of `[0, n]` take the same value within `fuel`.
    PartialNotInjective { n: Nat, fuel: u64 },
    /// The partial target is 0 at 0 within `fuel`.
    PartialZeroAtZero { fuel: u64 },
}

impl TargetClaim {
    pub fn name(&self) -> &'static str {
        match self {
            TargetClaim::ExactlyZeros { .. } => "exactly_zeros",
            TargetClaim::ZeroCount { .. } => "zero_count",
            TargetClaim::NonzeroCount { .. } => "nonzero_count",
            TargetClaim::EqualNext { .. } => "equal_next",
            TargetClaim::NotIdenticallyZero { .. } => "not_identically_zero",
            TargetClaim::EqualSomewhere { .. } => "equal_somewhere",
            TargetClaim::EquivalentWithin { .. } => "equivalent_within",
            TargetClaim::CodomainSize { .. } => "codomain_size",
            TargetClaim::Codomain { .. } => "codomain",
            TargetClaim::Injective { .. } => "injective",
            TargetClaim::ImageAndInjective { .. } => "image_and_injective",
            TargetClaim::ZeroAndNonzero { .. } => "zero_and_nonzero",
            TargetClaim::IteratedZeros { .. } => "iterated_zeros",
            TargetClaim::HasZeroComposed { .. } => "has_zero_composed",
            TargetClaim::FirstZero { .. } => "first_zero",
            TargetClaim::PartialZeroDomain { .. } => "partial_zero_domain",
            TargetClaim::PartialCodomainSize { .. } => "partial_codomain_size",
            TargetClaim::PartialNotInjective { .. } => "partial_not_injective",
            TargetClaim::PartialZeroAtZero { .. } => "partial_zero_at_zero",
        }
    }

    pub fn eval(&self, target: &Target) -> Result<Value, ClaimError> {
        use TargetClaim as T;
        let claim = self.name();
        match (self, target) {
            (T::EqualSomewhere { n }, Target::Pair(f, g)) => Ok(Value::Bool((0..=*n).any(|x| f.at(x) == g.at(x)))),
            (T::EquivalentWithin { n }, Target::Pair(f, g)) => {
                Ok(Value::Bool((0..=*n).all(|x| f.at(x) == g.at(x))))
            }
            (T::EqualSomewhere { .. } | T::EquivalentWithin { .. }, _) => {
                Err(ClaimError::Target { claim, want: "pair" })
            }
            (T::PartialZeroDomain { n, fuel }, Target::Partial(p)) => {
                Ok(Value::Set((0..=*n).filter(|&x| p.probe(x, *fuel).is_some_and(|(v, _)| v == 0)).collect()))
            }
            (T::PartialCodomainSize { n, fuel, k }, Target::Partial(p)) => {
                let vals: BTreeSet<Nat> = defined(p, *n, *fuel).map(|(_, v)| v).collect();
                Ok(Value::Bool(vals.len() as Nat == *k))
            }
            (T::PartialNotInjective { n, fuel }, Target::Partial(p)) => {
                let mut seen = HashMap::new();
                let hit = defined(p, *n, *fuel).any(|(x, v)| seen.insert(v, x).is_some());
                Ok(Value::Bool(hit))
            }
            (T::PartialZeroAtZero { fuel }, Target::Partial(p)) => {
                Ok(Value::Bool(p.probe(0, *fuel).is_some_and(|(v, _)| v == 0)))
            }
            (
                T::PartialZeroDomain { .. }
                | T::PartialCodomainSize { .. }
                | T::PartialNotInjective { .. }
                | T::PartialZeroAtZero { .. },
                _,
            ) => Err(ClaimError::Target { claim, want: "partial" }),
            (_, Target::Total(g)) => Ok(self.eval_total(g)),
            _ => Err(ClaimError::Target { claim, want: "total" }),
        }
    }

    fn eval_total(&self, g: &FnHandle) -> Value {
        use TargetClaim as T;
        match self {
            T::ExactlyZeros { n, k } => Value::Bool(bounded_count_zeros(g, *n) == *k),
            T::ZeroCount { upto } => Value::Num(bounded_count_zeros(g, *upto)),
            T::NonzeroCount { upto } => Value::Num(upto + 1 - bounded_count_zeros(g, *upto)),
            T::EqualNext { n } => Value::Bool((0..=*n).any(|x| g.at(x) == g.at(x + 1))),
            T::NotIdenticallyZero { n } => Value::Bool((0..=*n).any(|x| g.at(x) != 0)),
            T::CodomainSize { n, k } => Value::Bool(codomain_within(g, *n).len() as Nat == *k),
            T::Codomain { n } => Value::Set(codomain_within(g, *n)),
            T::Injective { n } => Value::Bool(collision_within(g, *n).is_none()),
            T::ImageAndInjective { n } => Value::Pair(
                Box::new(Value::Set(codomain_within(g, *n))),
                Box::new(Value::Bool(collision_within(g, *n).is_none())),
            ),
            T::ZeroAndNonzero { n } => {
                let vals: Vec<Nat> = (0..=*n).map(|x| g.at(x)).collect();
                Value::Bool(vals.contains(&0) && vals.iter().any(|&v| v != 0))
            }
            T::IteratedZeros { iter, upto, at_least } => {
                let hits = (0..=*upto).filter(|&x| (0..*iter).fold(x, |y, _| g.at(y)) == 0).count();
                Value::Bool(hits as Nat >= *at_least)
            }
            T::HasZeroComposed { pre, post, n } => Value::Bool((0..=*n).any(|y| {
                let t = pre.as_ref().map_or(y, |p| p.at(y));
                let v = g.at(t);
                post.as_ref().map_or(v, |h| h.at(v)) == 0
            })),
            T::FirstZero { upto } => Value::Opt((0..=*upto).find(|&x| g.at(x) == 0)),
            T::EqualSomewhere { .. }
            | T::EquivalentWithin { .. }
            | T::PartialZeroDomain { .. }
            | T::PartialCodomainSize { .. }
            | T::PartialNotInjective { .. }
            | T::PartialZeroAtZero { .. } => unreachable!("handled by eval"),
        }
    }
}

fn defined(p: &PartialFn, n: Nat, fuel: u64) -> impl Iterator<Item = (Nat, Nat)> + '_ {
    (0..=n).filter_map(move |x| p.probe(x, fuel).map(|(v, _)| (x, v)))
}

/// Both sides of a reduction's biconditional restricted to one window.
#[derive(Debug, Clone)]
pub struct WindowLaw {
    pub source: SourceClaim,
    pub target: TargetClaim,
}

/// The two evaluated sides of a [`WindowLaw`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawOutcome {
    pub source: Value,
    pub target: Value,
}

impl LawOutcome {
    pub fn holds(&self) -> bool {
        self.source == self.target
    }
}

impl WindowLaw {
    pub fn new(source: SourceClaim, target: TargetClaim) -> Self {
        WindowLaw { source, target }
    }

    pub fn check(&self, facts: &Facts<'_>, target: &Target) -> Result<LawOutcome, ClaimError> {
        Ok(LawOutcome { source: self.source.eval(facts)?, target: self.target.eval(target)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn source_claims_on_a_table() {
        let table = [2, 0, 2, 0, 7];
        let f = move |x: Nat| table.get(x as usize).copied().unwrap_or(1);
        let facts = Facts::Pr(&f);
        let eval = |c: SourceClaim| c.eval(&facts).unwrap();
        assert_eq!(eval(SourceClaim::HasZero { n: 0 }), Value::Bool(false));
        assert_eq!(eval(SourceClaim::ZeroCount { n: 4, scale: 3 }), Value::Num(6));
        assert_eq!(eval(SourceClaim::ZeroCountRange { n: 9 }), Value::Set([0, 1, 2].into()));
        // f(0) = 2 and f(1) = 0, so the closure reaches a zero at n = 0.
        assert_eq!(eval(SourceClaim::HasZeroClosure { n: 0 }), Value::Bool(true));
        assert!(SourceClaim::HaltCensus { diag: 3 }.eval(&facts).is_err());
    }

    #[test]
    fn bijective_image_matches_the_worked_table() {
        let table = [3, 2, 5, 5, 3, 40];
        let f = move |x: Nat| table[x as usize];
        let v = SourceClaim::BijectiveImage { n: 5 }.eval(&Facts::Pr(&f)).unwrap();
        let want: BTreeSet<Nat> = [6, 1, 4, 3, 10, 5, 7, 9, 11, 13, 80, 15].into();
        assert_eq!(v, Value::Pair(Box::new(Value::Set(want)), Box::new(Value::Bool(true))));
    }

    #[test]
    fn halt_claims() {
        let run = |a: &[Nat]| a[0].is_multiple_of(2).then_some((a[0], 3 * a[0]));
        let facts = Facts::Halt(HaltFacts(&run));
        let eval = |c: SourceClaim| c.eval(&facts).unwrap();
        assert_eq!(eval(SourceClaim::HaltCensus { diag: 8 }), Value::Num(2));
        assert_eq!(eval(SourceClaim::HaltDomain { n: 5, fuel: 6 }), Value::Set([0, 2].into()));
        assert_eq!(eval(SourceClaim::FirstHalt { args: vec![4], upto: 11 }), Value::Opt(None));
        assert_eq!(eval(SourceClaim::FirstHalt { args: vec![4], upto: 12 }), Value::Opt(Some(12)));
        assert_eq!(eval(SourceClaim::HaltsWithZeroSomewhere { n: 9, fuel: 0 }), Value::Bool(true));
    }

    #[test]
    fn target_claims_check_target_shape() {
        let t = Target::Total(FnHandle::identity());
        assert!(TargetClaim::EqualSomewhere { n: 3 }.eval(&t).is_err());
        assert_eq!(TargetClaim::FirstZero { upto: 3 }.eval(&t).unwrap(), Value::Opt(Some(0)));
        assert_eq!(TargetClaim::NonzeroCount { upto: 3 }.eval(&t).unwrap(), Value::Num(3));
        let sq = FnHandle::unary("sq", |x| x * x);
        let pre = TargetClaim::HasZeroComposed { pre: Some(FnHandle::unary("p", |y| y + 1)), post: None, n: 5 };
        assert_eq!(pre.eval(&Target::Total(sq)).unwrap(), Value::Bool(false));
    }
}
