//! Reductions whose source is a program index, built on step-bounded
//! simulation of the source program.

use std::sync::{Arc, Mutex};

use super::claims::{SourceClaim as S, TargetClaim as T, WindowLaw};
use super::{
    pr, spec, Input, InstanceKind, Mutation, Params, PartialFn, ReductionError, ReductionResult, Target, Window,
};
use crate::fuel_vm::{decode_program, parse_while, Probe, ProgramIndex, TMode, Universal, WhileProgram};
use crate::loop_lang::{Stmt, Var};
use crate::pr_algebra::{library, pair, unpair, FnHandle, Provenance};
use crate::Nat;

/// The gadget rows that [`parrec_gadget`] accepts.
pub const GADGETS: [&str; 8] =
    ["eoz_parrec", "zero_fn_parrec", "cod1_shp", "cod1_not_shp", "cod2_shp", "cod2_not_shp", "inj_parrec", "f0_eq_0"];

fn fuel_handle(name: String, f: impl Fn(Nat) -> Nat + Send + Sync + 'static) -> FnHandle {
    FnHandle::unary(name, f).with_provenance(Provenance::WhileFuel)
}

fn halted(p: Probe) -> Option<(Nat, u64)> {
    match p {
        Probe::Halted { output, at_step } => Some((output, at_step)),
        Probe::Running => None,
    }
}

fn short(e: &ProgramIndex) -> String {
    format!("{:08x}", super::fnv1a(&e.to_bytes()) as u32)
}

fn diverger() -> WhileProgram {
    parse_while("fn diverge(1){ inc x2  while x2 { } }").expect("diverger parses")
}

/// `e`'s body followed by `clear x0`: halts exactly where `e` does, one
/// step later, with output 0.
fn zeroed(e: &ProgramIndex) -> WhileProgram {
    match decode_program(e).filter(|p| p.arity() == 1) {
        Some(p) => {
            let mut body = p.body().to_vec();
            body.push(Stmt::Clear(Var::OUT));
            WhileProgram::new(format!("zeroed_{}", p.name()), 1, body).expect("appending clear keeps it valid")
        }
        None => diverger(),
    }
}

pub(crate) fn build(id: &str, e: &ProgramIndex, _params: &Params, m: Option<Mutation>) -> Result<ReductionResult, ReductionError> {
    let digest = Input::ParRec(e.clone()).digest();
    let u = Arc::new(Universal::from_index(e));
    let me = e.saturating_nat();
    let tag = short(e);
    let done = |t: Target, bm: Box<dyn Fn(&Window) -> WindowLaw + Send + Sync>| {
        Ok(ReductionResult::new(id, t, digest.clone(), m, bm))
    };
    match id {
        "shp_to_has_zeros" => {
            let late = u64::from(m == Some(Mutation::ShpFuelOffByOne));
            let g = fuel_handle(format!("selfT_{tag}"), move |t| u.t(&[me], t.saturating_add(late), TMode::AtMost));
            done(Target::Total(g), Box::new(move |w| {
                WindowLaw::new(S::FirstHalt { args: vec![me], upto: w.fuel }, T::FirstZero { upto: w.fuel })
            }))
        }
        "fin_dom_to_fin_zeros" | "fin_dom_to_almost_all_zeros" => {
            let flip = id == "fin_dom_to_almost_all_zeros";
            let g = fuel_handle(format!("pairT_{tag}"), move |m| {
                let (x, t) = unpair(m);
                let v = u.t(&[x], t, TMode::Exactly);
                if flip {
                    1 - v
                } else {
                    v
                }
            })
            .memoized();
            done(Target::Total(g), Box::new(move |w| {
                let upto = pair(0, w.diag);
                let target = if flip { T::NonzeroCount { upto } } else { T::ZeroCount { upto } };
                WindowLaw::new(S::HaltCensus { diag: w.diag }, target)
            }))
        }
        "inf_dom_to_onto" => {
            // counts[n] = number of m < n with T(e, unpair(m)) = 0.
            let counts = Mutex::new(vec![0 as Nat]);
            let g = fuel_handle(format!("census_{tag}"), move |n| {
                let mut c = counts.lock().unwrap_or_else(|e| e.into_inner());
                while (c.len() as Nat) <= n {
                    let m = c.len() as Nat - 1;
                    let (x, t) = unpair(m);
                    let last = *c.last().expect("seeded");
                    c.push(last + Nat::from(u.t(&[x], t, TMode::Exactly) == 0));
                }
                c[n as usize]
            });
            done(Target::Total(g), Box::new(|w| {
                WindowLaw::new(S::HaltCensusRange { diag: w.diag }, T::Codomain { n: pair(0, w.diag) + 1 })
            }))
        }
        "total_to_zero_equivalence" | "zero_fn_parrec" => {
            let g = PartialFn::program(zeroed(e));
            done(Target::Partial(g), Box::new(|w| {
                WindowLaw::new(
                    S::HaltDomain { n: w.n, fuel: w.fuel.saturating_sub(1) },
                    T::PartialZeroDomain { n: w.n, fuel: w.fuel },
                )
            }))
        }
        "cod1_shp" => {
            let g = PartialFn::native(format!("cod1_shp_{tag}"), move |t, fuel| {
                halted(u.probe(&[me], t.min(fuel))).map(|(_, s)| (0, s))
            });
            done(Target::Partial(g), Box::new(move |w| {
                WindowLaw::new(
                    S::HaltsWithin { args: vec![me], fuel: w.fuel },
                    T::PartialCodomainSize { n: w.fuel, fuel: w.fuel, k: 1 },
                )
            }))
        }
        "cod1_not_shp" => {
            let g = fuel_handle(format!("cod1_not_shp_{tag}"), move |t| {
                Nat::from(t > 0 && u.t(&[me], t, TMode::AtMost) == 0)
            });
            done(Target::Total(g), Box::new(move |w| {
                let b = w.fuel.max(1);
                WindowLaw::new(S::NotHaltsWithin { args: vec![me], fuel: b }, T::CodomainSize { n: b, k: 1 })
            }))
        }
        "cod2_shp" => {
            let g = fuel_handle(format!("cod2_shp_{tag}"), move |t| {
                Nat::from(t > 0 && u.t(&[me], t - 1, TMode::AtMost) == 0)
            });
            done(Target::Total(g), Box::new(move |w| {
                let b = w.fuel.max(1);
                WindowLaw::new(S::HaltsWithin { args: vec![me], fuel: b - 1 }, T::CodomainSize { n: b, k: 2 })
            }))
        }
        "cod2_not_shp" => {
            let look = if m == Some(Mutation::Cod2NotShp) { 1 } else { 2 };
            let g = fuel_handle(format!("cod2_not_shp_{tag}"), move |t| match t {
                0 => 0,
                1 => 1,
                _ if u.t(&[me], t - look, TMode::AtMost) == 0 => 2,
                _ => 0,
            });
            done(Target::Total(g), Box::new(move |w| {
                let b = w.fuel.max(2);
                WindowLaw::new(S::NotHaltsWithin { args: vec![me], fuel: b - 2 }, T::CodomainSize { n: b, k: 2 })
            }))
        }
        "inj_parrec" => {
            let g = PartialFn::native(format!("inj_parrec_{tag}"), move |n, fuel| {
                if n == 0 {
                    return Some((0, 0));
                }
                halted(u.probe(&[n - 1], fuel)).filter(|&(v, _)| v == 0)
            });
            done(Target::Partial(g), Box::new(|w| {
                WindowLaw::new(
                    S::HaltsWithZeroSomewhere { n: w.n, fuel: w.fuel },
                    T::PartialNotInjective { n: w.n.saturating_add(1), fuel: w.fuel },
                )
            }))
        }
        "f0_eq_0" => {
            let g = PartialFn::native(format!("f0_eq_0_{tag}"), move |_, fuel| {
                halted(u.probe(&[me], fuel)).map(|(_, s)| (0, s))
            });
            done(Target::Partial(g), Box::new(move |w| {
                WindowLaw::new(S::HaltsWithin { args: vec![me], fuel: w.fuel }, T::PartialZeroAtZero { fuel: w.fuel })
            }))
        }
        other => Err(mismatch(other, InstanceKind::ParRec)),
    }
}

fn mismatch(id: &str, got: InstanceKind) -> ReductionError {
    match spec(id) {
        Some(s) => ReductionError::WrongInstance { id: id.into(), expected: s.kind, got },
        None => ReductionError::UnknownId(id.into()),
    }
}

pub(crate) fn build_pair(
    id: &str,
    e: &ProgramIndex,
    d: &ProgramIndex,
    m: Option<Mutation>,
) -> Result<ReductionResult, ReductionError> {
    if id != "eoz_parrec" {
        return Err(mismatch(id, InstanceKind::ParRecPair));
    }
    let digest = Input::ParRecPair(e.clone(), d.clone()).digest();
    let (ue, ud) = (Universal::from_index(e), Universal::from_index(d));
    let g = fuel_handle(format!("disagree_{}_{}", short(e), short(d)), move |n| {
        if n == 0 {
            return 0;
        }
        let differ = (0..=n).any(|x| match (halted(ue.probe(&[x], n)), halted(ud.probe(&[x], n))) {
            (Some((a, _)), Some((b, _))) => a != b,
            _ => false,
        });
        Nat::from(!differ)
    })
    .memoized();
    Ok(ReductionResult::new(id, Target::Total(g), digest, m, |w: &Window| {
        let d = w.diag.max(1);
        WindowLaw::new(S::NoDisagreement { diag: d }, T::ExactlyZeros { n: d, k: 1 })
    }))
}

pub(crate) fn build_halting(
    id: &str,
    e: &ProgramIndex,
    args: &[Nat],
    params: &Params,
    m: Option<Mutation>,
) -> Result<ReductionResult, ReductionError> {
    let digest = Input::Halting { index: e.clone(), args: args.to_vec() }.digest();
    let u = Arc::new(Universal::from_index(e));
    let a0 = args.to_vec();
    let tag = short(e);
    let need_g = || params.g.clone().ok_or(ReductionError::MissingParam { id: id.into(), param: "g" });
    match id {
        "not_hp_to_equivalence" => {
            let a = a0.clone();
            let h = fuel_handle(format!("haltsAt_{tag}"), move |t| Nat::from(u.t(&a, t, TMode::Exactly) == 0));
            let zero = library::handle("zero").expect("bundled zero program");
            Ok(ReductionResult::new(id, Target::Pair(h, zero), digest, m, move |w: &Window| {
                WindowLaw::new(S::NotHaltsWithin { args: a0.clone(), fuel: w.fuel }, T::EquivalentWithin { n: w.fuel })
            }))
        }
        "hp_to_hz_fg" | "hp_to_hz_hfg" => {
            let g = need_g()?;
            let post = if id == "hp_to_hz_hfg" {
                let h = params.h.clone().ok_or(ReductionError::MissingParam { id: id.into(), param: "h" })?;
                let (a, b) = pr::witnesses(id, &h, params)?;
                Some((h, a, b))
            } else {
                None
            };
            let a = a0.clone();
            let ab = post.as_ref().map(|&(_, a, b)| (a, b));
            let target = fuel_handle(format!("T_{tag}"), move |t| {
                let z = u.t(&a, t, TMode::AtMost);
                match ab {
                    Some((va, vb)) => {
                        if z == 0 {
                            va
                        } else {
                            vb
                        }
                    }
                    None => z,
                }
            });
            let h = post.map(|(h, _, _)| h);
            Ok(ReductionResult::new(id, Target::Total(target), digest, m, move |w: &Window| {
                let reach = (0..=w.n).map(|y| g.at(y)).max().unwrap_or(0);
                WindowLaw::new(
                    S::HaltsWithin { args: a0.clone(), fuel: reach },
                    T::HasZeroComposed { pre: Some(g.clone()), post: h.clone(), n: w.n },
                )
            }))
        }
        other => Err(mismatch(other, InstanceKind::Halting)),
    }
}

/// One of the partial-function gadget rows, by name.
pub fn parrec_gadget(name: &str, input: &Input) -> Result<ReductionResult, ReductionError> {
    if !GADGETS.contains(&name) {
        return Err(ReductionError::UnknownId(name.into()));
    }
    super::reduce(name, input, &Params::default(), None)
}

fn expect(r: Result<ReductionResult, ReductionError>) -> ReductionResult {
    r.unwrap_or_else(|e| panic!("{e}"))
}

pub fn shp_to_has_zeros(e: &ProgramIndex) -> ReductionResult {
    expect(build("shp_to_has_zeros", e, &Params::default(), None))
}

pub fn fin_dom_to_fin_zeros(e: &ProgramIndex) -> ReductionResult {
    expect(build("fin_dom_to_fin_zeros", e, &Params::default(), None))
}

pub fn fin_dom_to_almost_all_zeros(e: &ProgramIndex) -> ReductionResult {
    expect(build("fin_dom_to_almost_all_zeros", e, &Params::default(), None))
}

pub fn inf_dom_to_onto(e: &ProgramIndex) -> ReductionResult {
    expect(build("inf_dom_to_onto", e, &Params::default(), None))
}

pub fn total_to_zero_equivalence(e: &ProgramIndex) -> ReductionResult {
    expect(build("total_to_zero_equivalence", e, &Params::default(), None))
}

pub fn not_hp_to_equivalence(e: &ProgramIndex, x: &[Nat]) -> ReductionResult {
    expect(build_halting("not_hp_to_equivalence", e, x, &Params::default(), None))
}

pub fn hp_to_hz_fg(e: &ProgramIndex, x: &[Nat], g: &FnHandle) -> ReductionResult {
    let params = Params { g: Some(g.clone()), ..Params::default() };
    expect(build_halting("hp_to_hz_fg", e, x, &params, None))
}

/// `witnesses` may be omitted, in which case they are searched for.
pub fn hp_to_hz_hfg(
    e: &ProgramIndex,
    x: &[Nat],
    g: &FnHandle,
    h: &FnHandle,
    witnesses: Option<(Nat, Nat)>,
) -> Result<ReductionResult, ReductionError> {
    let params = Params {
        g: Some(g.clone()),
        h: Some(h.clone()),
        a: witnesses.map(|w| w.0),
        b: witnesses.map(|w| w.1),
        ..Params::default()
    };
    build_halting("hp_to_hz_hfg", e, x, &params, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuel_vm::{encode_program, run_program};
    use crate::reductions::{Facts, HaltFacts, Value};

    fn index(text: &str) -> ProgramIndex {
        encode_program(&parse_while(text).unwrap())
    }

    fn facts_of(p: &WhileProgram) -> impl Fn(&[Nat]) -> Option<(Nat, u64)> + Sync + '_ {
        move |a: &[Nat]| run_program(p, a, 5_000).halted()
    }

    fn small() -> Window {
        Window { n: 12, fuel: 400, diag: 24 }
    }

    const EVEN_ONLY: &str =
        "fn even(1){ loop x1 { x9 = x8  clear x8  inc x8  loop x9 { clear x8 } }  while x8 { }  x0 = x1 }";

    #[test]
    fn self_application_zero_is_the_halting_time() {
        let p = parse_while("fn id(1){ x0 = x1 }").unwrap();
        let e = encode_program(&p);
        let r = shp_to_has_zeros(&e);
        let g = r.target.total().unwrap();
        assert_eq!((g.at(0), g.at(1), g.at(50)), (1, 0, 0));
        let bot = index("fn bot(1){ inc x2  while x2 { } }");
        let g = shp_to_has_zeros(&bot).target.total().unwrap().clone();
        assert!((0..2_000).all(|t| g.at(t) == 1));
    }

    #[test]
    fn laws_hold_on_hand_built_programs() {
        let progs = [
            "fn id(1){ x0 = x1 }",
            "fn bot(1){ inc x2  while x2 { } }",
            EVEN_ONLY,
            "fn slow(1){ loop x1 { inc x2 inc x3 } inc x0 }",
        ];
        for text in progs {
            let p = parse_while(text).unwrap();
            let e = encode_program(&p);
            let run = facts_of(&p);
            let facts = Facts::Halt(HaltFacts(&run));
            for s in crate::reductions::catalogue().iter().filter(|s| s.kind == InstanceKind::ParRec) {
                let r = build(s.id, &e, &Params::default(), None).unwrap();
                let out = r.bound_map(&small()).check(&facts, &r.target).unwrap();
                assert!(out.holds(), "{} on {text}: {out:?}", s.id);
            }
            let g = FnHandle::unary("odd", |y| 2 * y + 1);
            let h = FnHandle::unary("parity", |v| v % 2);
            for r in [
                not_hp_to_equivalence(&e, &[4]),
                hp_to_hz_fg(&e, &[4], &g),
                hp_to_hz_hfg(&e, &[4], &g, &h, Some((2, 3))).unwrap(),
            ] {
                let out = r.bound_map(&small()).check(&facts, &r.target).unwrap();
                assert!(out.holds(), "{} on {text}: {out:?}", r.id());
            }
        }
    }

    #[test]
    fn disagreement_pair() {
        let id = parse_while("fn id(1){ x0 = x1 }").unwrap();
        let even = parse_while(EVEN_ONLY).unwrap();
        let zero = parse_while("fn z(1){ clear x0 }").unwrap();
        for (a, b) in [(&id, &id), (&id, &even), (&id, &zero), (&zero, &zero)] {
            let r = build_pair("eoz_parrec", &encode_program(a), &encode_program(b), None).unwrap();
            let (ra, rb) = (facts_of(a), facts_of(b));
            let facts = Facts::Pair(HaltFacts(&ra), HaltFacts(&rb));
            let out = r.bound_map(&small()).check(&facts, &r.target).unwrap();
            assert!(out.holds(), "{out:?}");
            assert_eq!(out.source, Value::Bool(a == b || (a == &id && b == &even)));
        }
    }

    #[test]
    fn gadget_examples() {
        let bot = index("fn bot(1){ inc x2  while x2 { } }");
        let r = parrec_gadget("cod1_not_shp", &Input::ParRec(bot.clone())).unwrap();
        let cod = crate::dovetail::codomain_within(r.target.total().unwrap(), 500);
        assert_eq!(cod.into_iter().collect::<Vec<_>>(), vec![0]);

        let id = index("fn id(1){ x0 = x1 }");
        let r = parrec_gadget("cod2_shp", &Input::ParRec(id)).unwrap();
        let cod = crate::dovetail::codomain_within(r.target.total().unwrap(), 50);
        assert_eq!(cod.into_iter().collect::<Vec<_>>(), vec![0, 1]);

        let one = index("fn one(1){ inc x0 }");
        let r = parrec_gadget("inj_parrec", &Input::ParRec(one)).unwrap();
        let Target::Partial(g) = &r.target else { panic!("partial target") };
        assert_eq!(g.probe(0, 100), Some((0, 0)));
        assert!((1..30).all(|n| g.probe(n, 1_000).is_none()));

        assert!(matches!(parrec_gadget("shp_to_has_zeros", &Input::ParRec(bot)), Err(ReductionError::UnknownId(_))));
    }

    #[test]
    fn zeroed_program_halts_one_step_later() {
        let p = parse_while("fn slow(1){ loop x1 { inc x2 } x0 = x1 }").unwrap();
        let z = zeroed(&encode_program(&p));
        for x in 0..10 {
            let (v, s) = run_program(&p, &[x], 1_000).halted().unwrap();
            assert!(v == x);
            assert_eq!(run_program(&z, &[x], 1_000).halted(), Some((0, s + 1)));
        }
        assert!(run_program(&zeroed(&ProgramIndex::from(7)), &[1], 1_000).halted().is_none());
    }
}
