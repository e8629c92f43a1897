//! Reductions whose source is a total unary function.

use std::collections::HashSet;

use super::claims::{SourceClaim as S, TargetClaim as T, WindowLaw};
use super::loop_targets as lt;
use super::{need_k, Input, Mutation, Params, ReductionError, ReductionResult, Target, Window};
use crate::dovetail::{semidecide_zeromore, SearchBudget};
use crate::loop_lang::LoopProgram;
use crate::pr_algebra::{prefix_sum, FnHandle};
use crate::Nat;

const DEFAULT_WITNESS_BUDGET: u64 = 10_000;

/// A memoized unary target with an attached Loop source when `f` has one
/// and the construction is unmutated.
fn target(
    name: String,
    f: &FnHandle,
    m: Option<Mutation>,
    eval: impl Fn(Nat) -> Nat + Send + Sync + 'static,
    source: impl FnOnce(&LoopProgram) -> LoopProgram,
) -> FnHandle {
    let mut g = FnHandle::unary(name, eval);
    if let (None, Some(src)) = (m, f.source()) {
        let p = source(src);
        let p = p.renamed(g.name()).unwrap_or(p);
        g = g.with_source(p);
    }
    g.memoized()
}

fn law(source: S, target: T) -> WindowLaw {
    WindowLaw::new(source, target)
}

fn check_unary(id: &str, f: &FnHandle) -> Result<(), ReductionError> {
    if f.arity() != 1 || f.out_arity() != 1 {
        return Err(ReductionError::BadParam {
            id: id.into(),
            msg: format!("`{}` must be unary with one output", f.name()),
        });
    }
    Ok(())
}

pub(crate) fn build(id: &str, f: &FnHandle, params: &Params, m: Option<Mutation>) -> Result<ReductionResult, ReductionError> {
    check_unary(id, f)?;
    let digest = Input::Pr(f.clone()).digest();
    let fm = f.memoized();
    let name = |tag: &str| format!("{tag}_{}", f.name());
    let done = |t: Target, bm: Box<dyn Fn(&Window) -> WindowLaw + Send + Sync>| {
        Ok(ReductionResult::new(id, t, digest.clone(), m, bm))
    };
    match id {
        "hz_to_exactly_one_zero" => {
            let strict = m == Some(Mutation::EozStrictLe);
            let ff = fm.clone();
            let g = target(name("eoz"), f, m, move |x| {
                let earlier = if strict { 0..x.saturating_add(1) } else { 0..x };
                let fresh = earlier.into_iter().all(|i| ff.at(i) != 0);
                Nat::from(!(ff.at(x) == 0 && fresh))
            }, lt::first_zero);
            done(Target::Total(g), Box::new(|w| law(S::HasZero { n: w.n }, T::ExactlyZeros { n: w.n, k: 1 })))
        }
        "no_zeros_to_exactly_one_zero" => {
            let shift = m == Some(Mutation::NoZerosShift);
            let ff = fm.clone();
            let g = target(name("nzeoz"), f, m, move |x| {
                if x == 0 {
                    return 0;
                }
                let v = if shift { ff.at(x) } else { ff.at(x - 1) };
                Nat::from(v != 0)
            }, lt::shifted_zero_marker);
            done(Target::Total(g), Box::new(|w| law(S::NoZero { n: w.n }, T::ExactlyZeros { n: w.n.saturating_add(1), k: 1 })))
        }
        "hz_to_at_least_k" => {
            let k = need_k(id, params, 1)?;
            let shift = m == Some(Mutation::GtkzShift);
            let ff = fm.clone();
            let g = target(name("blocks"), f, m, move |x| {
                if shift {
                    ff.at(x.saturating_add(1) / k)
                } else {
                    ff.at(x / k)
                }
            }, |src| lt::blocks(src, k));
            done(Target::Total(g), Box::new(move |w| {
                law(S::ZeroCount { n: w.n, scale: k }, T::ZeroCount { upto: k.saturating_mul(w.n.saturating_add(1)) - 1 })
            }))
        }
        "at_least_k_to_exactly_k" => {
            let k = need_k(id, params, 1)?;
            let ff = fm.clone();
            let g = target(name("firstk"), f, m, move |x| {
                let before = (0..x).filter(|&i| ff.at(i) == 0).count() as Nat;
                Nat::from(!(ff.at(x) == 0 && before < k))
            }, |src| lt::first_k_zeros(src, k));
            done(Target::Total(g), Box::new(move |w| law(S::AtLeastZeros { n: w.n, k }, T::ExactlyZeros { n: w.n, k })))
        }
        "no_zeros_to_exactly_k" => {
            let k = need_k(id, params, 1)?;
            let ff = fm.clone();
            let g = target(name("padk"), f, m, move |x| {
                if x < k {
                    0
                } else {
                    Nat::from(ff.at(x - k) != 0)
                }
            }, |src| lt::padded_zero_marker(src, k));
            done(Target::Total(g), Box::new(move |w| law(S::NoZero { n: w.n }, T::ExactlyZeros { n: w.n.saturating_add(k), k })))
        }
        "hz_to_equal_next" => {
            let g = if m == Some(Mutation::PrefixInclusive) {
                let ff = fm.clone();
                FnHandle::unary(name("sum_incl"), move |x| {
                    (0..=x).fold(0 as Nat, |acc, i| acc.saturating_add(ff.at(i)))
                })
                .memoized()
            } else {
                prefix_sum(f).expect("unary checked").memoized()
            };
            done(Target::Total(g), Box::new(|w| law(S::HasZero { n: w.n }, T::EqualNext { n: w.n })))
        }
        "hz_to_nonzero_function" => {
            let ff = fm.clone();
            let g = target(name("zind"), f, m, move |x| Nat::from(ff.at(x) == 0), lt::zero_indicator);
            done(Target::Total(g), Box::new(|w| law(S::HasZero { n: w.n }, T::NotIdenticallyZero { n: w.n })))
        }
        "hz_to_equal_at_one_point" => {
            let zero = crate::pr_algebra::library::handle("zero").expect("bundled zero program");
            done(Target::Pair(fm.clone(), zero), Box::new(|w| law(S::HasZero { n: w.n }, T::EqualSomewhere { n: w.n })))
        }
        "zero_fn_to_cod_k" => {
            let k = need_k(id, params, 1)?;
            let wide = m == Some(Mutation::CodKBoundary);
            let ff = fm.clone();
            let g = target(name("stairs"), f, m, move |x| {
                if x < k || (wide && x == k) {
                    x
                } else {
                    k.saturating_mul(ff.at(x - k))
                }
            }, |src| lt::staircase(src, k));
            done(Target::Total(g), Box::new(move |w| {
                law(S::ZeroFunction { n: w.n }, T::CodomainSize { n: w.n.saturating_add(k), k })
            }))
        }
        "not_zero_fn_to_cod_k" => {
            let k = need_k(id, params, 2)?;
            let ff = fm.clone();
            let g = target(name("residues"), f, m, move |x| if ff.at(x / k) == 0 { 0 } else { x % k }, |src| {
                lt::block_residues(src, k)
            });
            done(Target::Total(g), Box::new(move |w| {
                law(S::NotZeroFunction { n: w.n }, T::CodomainSize { n: k.saturating_mul(w.n.saturating_add(1)) - 1, k })
            }))
        }
        "fin_zeros_to_fin_cod" => {
            let ff = fm.clone();
            let g = target(name("zcount"), f, m, move |x| (0..=x).filter(|&i| ff.at(i) == 0).count() as Nat, lt::running_zero_count);
            done(Target::Total(g), Box::new(|w| law(S::ZeroCountRange { n: w.n }, T::Codomain { n: w.n })))
        }
        "hz_to_not_injective" => {
            let shift = m == Some(Mutation::InjShift);
            let ff = fm.clone();
            let g = target(name("collapse"), f, m, move |x| {
                if x == 0 {
                    return 0;
                }
                let v = if shift { ff.at(x) } else { ff.at(x - 1) };
                if v != 0 {
                    x
                } else {
                    0
                }
            }, lt::collapse_after_zero);
            done(Target::Total(g), Box::new(|w| law(S::NoZero { n: w.n }, T::Injective { n: w.n.saturating_add(1) })))
        }
        "onto_to_bijective" => {
            let first_odd = if m == Some(Mutation::BijOddStart3) { 3 } else { 1 };
            let ff = fm.clone();
            let g = target(name("bij"), f, m, move |x| {
                let mut seen = HashSet::new();
                let mut odd = first_odd;
                let mut out = 0;
                for n in 0..=x {
                    let v = ff.at(n / 2);
                    out = if seen.insert(v) {
                        v.saturating_mul(2)
                    } else {
                        odd += 2;
                        odd - 2
                    };
                }
                out
            }, lt::doubled_or_odd);
            done(Target::Total(g), Box::new(|w| {
                law(S::BijectiveImage { n: w.n }, T::ImageAndInjective { n: w.n.saturating_mul(2).saturating_add(1) })
            }))
        }
        "hz_to_zero_more" => {
            let ff = fm.clone();
            let g = target(name("zmore"), f, m, move |x| Nat::from(!(x > 0 && ff.at(x - 1) == 0)), lt::zero_more_marker);
            done(Target::Total(g), Box::new(|w| law(S::HasZero { n: w.n }, T::ZeroAndNonzero { n: w.n.saturating_add(1) })))
        }
        "ff_z2" => {
            let ff = fm.clone();
            let g = target(name("ffz2"), f, m, move |x| if x == 0 { 0 } else { ff.at(x - 1) }, lt::shift_right);
            done(Target::Total(g), Box::new(|w| {
                law(S::HasZeroClosure { n: w.n }, T::IteratedZeros { iter: 2, upto: w.n.saturating_add(1), at_least: 2 })
            }))
        }
        "ff_graph" => {
            let ahead = m == Some(Mutation::FfGraph);
            let ff = fm.clone();
            let g = target(name("ffg"), f, m, move |x| {
                let i = x / 2;
                if x % 2 == 0 {
                    x + 1
                } else {
                    ff.at(if ahead { i + 1 } else { i }).saturating_mul(2)
                }
            }, |src| lt::chains(src, 2));
            done(Target::Total(g), Box::new(|w| {
                law(S::HasZero { n: w.n }, T::IteratedZeros { iter: 2, upto: w.n.saturating_mul(2).saturating_add(1), at_least: 1 })
            }))
        }
        "fn_iter_graph" => {
            let n = need_k(id, params, 1)?;
            let ff = fm.clone();
            let g = target(name("chains"), f, m, move |x| {
                if x % n == n - 1 {
                    ff.at(x / n).saturating_mul(n)
                } else {
                    x + 1
                }
            }, |src| lt::chains(src, n));
            let iter = usize::try_from(n).map_err(|_| ReductionError::BadParam { id: id.into(), msg: "n too large".into() })?;
            done(Target::Total(g), Box::new(move |w| {
                law(S::HasZero { n: w.n }, T::IteratedZeros { iter, upto: n.saturating_mul(w.n.saturating_add(1)) - 1, at_least: 1 })
            }))
        }
        "hz_to_hz_hf" => {
            let h = params.h.clone().ok_or(ReductionError::MissingParam { id: id.into(), param: "h" })?;
            check_unary(id, &h)?;
            let (a, b) = witnesses(id, &h, params)?;
            let ff = fm.clone();
            let g = target(name("ab"), f, m, move |x| if ff.at(x) == 0 { a } else { b }, |src| lt::two_valued(src, a, b));
            done(Target::Total(g), Box::new(move |w| {
                law(S::HasZero { n: w.n }, T::HasZeroComposed { pre: None, post: Some(h.clone()), n: w.n })
            }))
        }
        other => Err(ReductionError::WrongInstance {
            id: other.into(),
            expected: super::spec(other).map_or(super::InstanceKind::Pr, |s| s.kind),
            got: super::InstanceKind::Pr,
        }),
    }
}

/// `(a, b)` with `h(a) = 0 ≠ h(b)`, checked when supplied and searched for
/// otherwise.
pub(crate) fn witnesses(id: &str, h: &FnHandle, params: &Params) -> Result<(Nat, Nat), ReductionError> {
    match (params.a, params.b) {
        (Some(a), Some(b)) => {
            if h.at(a) != 0 || h.at(b) == 0 {
                return Err(ReductionError::BadParam {
                    id: id.into(),
                    msg: format!("need h(a) = 0 and h(b) != 0, got h({a}) = {}, h({b}) = {}", h.at(a), h.at(b)),
                });
            }
            Ok((a, b))
        }
        (None, None) => {
            let budget = params.witness_budget.unwrap_or(DEFAULT_WITNESS_BUDGET);
            let sb = SearchBudget::new(budget)
                .map_err(|e| ReductionError::BadParam { id: id.into(), msg: e.to_string() })?;
            semidecide_zeromore(h, sb).witness().copied().ok_or(ReductionError::NoWitness { budget })
        }
        _ => Err(ReductionError::BadParam { id: id.into(), msg: "supply both a and b or neither".into() }),
    }
}

fn infallible(id: &str, f: &FnHandle, params: Params) -> ReductionResult {
    build(id, f, &params, None).unwrap_or_else(|e| panic!("{e}"))
}

fn with_k(k: Nat) -> Params {
    Params { k: Some(k), ..Params::default() }
}

pub fn hz_to_exactly_one_zero(f: &FnHandle) -> ReductionResult {
    infallible("hz_to_exactly_one_zero", f, Params::default())
}

pub fn no_zeros_to_exactly_one_zero(f: &FnHandle) -> ReductionResult {
    infallible("no_zeros_to_exactly_one_zero", f, Params::default())
}

pub fn hz_to_at_least_k(f: &FnHandle, k: Nat) -> Result<ReductionResult, ReductionError> {
    build("hz_to_at_least_k", f, &with_k(k), None)
}

pub fn at_least_k_to_exactly_k(f: &FnHandle, k: Nat) -> Result<ReductionResult, ReductionError> {
    build("at_least_k_to_exactly_k", f, &with_k(k), None)
}

pub fn no_zeros_to_exactly_k(f: &FnHandle, k: Nat) -> Result<ReductionResult, ReductionError> {
    build("no_zeros_to_exactly_k", f, &with_k(k), None)
}

pub fn hz_to_equal_next(f: &FnHandle) -> ReductionResult {
    infallible("hz_to_equal_next", f, Params::default())
}

pub fn hz_to_nonzero_function(f: &FnHandle) -> ReductionResult {
    infallible("hz_to_nonzero_function", f, Params::default())
}

pub fn hz_to_equal_at_one_point(f: &FnHandle) -> ReductionResult {
    infallible("hz_to_equal_at_one_point", f, Params::default())
}

pub fn zero_fn_to_cod_k(f: &FnHandle, k: Nat) -> Result<ReductionResult, ReductionError> {
    build("zero_fn_to_cod_k", f, &with_k(k), None)
}

pub fn not_zero_fn_to_cod_k(f: &FnHandle, k: Nat) -> Result<ReductionResult, ReductionError> {
    build("not_zero_fn_to_cod_k", f, &with_k(k), None)
}

pub fn fin_zeros_to_fin_cod(f: &FnHandle) -> ReductionResult {
    infallible("fin_zeros_to_fin_cod", f, Params::default())
}

pub fn hz_to_not_injective(f: &FnHandle) -> ReductionResult {
    infallible("hz_to_not_injective", f, Params::default())
}

pub fn onto_to_bijective(f: &FnHandle) -> ReductionResult {
    infallible("onto_to_bijective", f, Params::default())
}

pub fn hz_to_zero_more(f: &FnHandle) -> ReductionResult {
    infallible("hz_to_zero_more", f, Params::default())
}

pub fn ff_z2(f: &FnHandle) -> ReductionResult {
    infallible("ff_z2", f, Params::default())
}

pub fn ff_graph(f: &FnHandle) -> ReductionResult {
    infallible("ff_graph", f, Params::default())
}

pub fn fn_iter_graph(f: &FnHandle, n: Nat) -> Result<ReductionResult, ReductionError> {
    build("fn_iter_graph", f, &with_k(n), None)
}

/// `witnesses` may be omitted, in which case they are searched for.
pub fn hz_to_hz_hf(f: &FnHandle, h: &FnHandle, witnesses: Option<(Nat, Nat)>) -> Result<ReductionResult, ReductionError> {
    let params = Params {
        h: Some(h.clone()),
        a: witnesses.map(|w| w.0),
        b: witnesses.map(|w| w.1),
        ..Params::default()
    };
    build("hz_to_hz_hf", f, &params, None)
}
