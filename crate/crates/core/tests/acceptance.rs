//! The ten acceptance criteria, one pass/fail line each.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use prlab::dovetail::{decide_hz_fg_finite, decide_hz_hf_trivial, dovetail_schedule, Decision, HClass};
use prlab::fuel_vm::{encode_program, run_program, t_predicate, u_extract, TMode, Universal};
use prlab::oracle::{replay, run_suite, Output, Report, SuiteSpec, WhileFamily};
use prlab::pr_algebra::{checked_pair, pair, tuple_decode, tuple_encode, unpair, FnHandle};
use prlab::pr_graph::{
    build_dag, eval_dag, eval_normal_form, expand_expression, hole_panel, normalize, parse_dag, random_registry,
    random_system, Registry, Term,
};
use prlab::reductions::{ff_graph, onto_to_bijective, Mutation};
use prlab::Nat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = fn() -> Result<(), String>;

fn table(values: &'static [Nat], tail: Nat) -> FnHandle {
    FnHandle::unary("table", move |x| values.get(x as usize).copied().unwrap_or(tail))
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn bijection_golden() -> Result<(), String> {
    let r = onto_to_bijective(&table(&[3, 2, 5, 5, 3, 40], 0));
    let h = r.target.total().ok_or("target is not total")?;
    let got: Vec<Nat> = (0..12).map(|n| h.at(n)).collect();
    check(got == [6, 1, 4, 3, 10, 5, 7, 9, 11, 13, 80, 15], || format!("h(0..11) = {got:?}"))
}

fn ff_golden() -> Result<(), String> {
    let r = ff_graph(&table(&[1, 1, 0, 4, 0, 4], 1));
    let g = r.target.total().ok_or("target is not total")?;
    let edges: Vec<(Nat, Nat)> = (0..12).map(|v| (v, g.at(v))).collect();
    let want = [(0, 1), (1, 2), (2, 3), (3, 2), (4, 5), (5, 0), (6, 7), (7, 8), (8, 9), (9, 0), (10, 11), (11, 8)];
    check(edges == want, || format!("edges {edges:?}"))?;
    check(g.at(g.at(4)) == 0, || "g(g(4)) != 0".into())
}

fn normal_form_golden() -> Result<(), String> {
    let text = include_str!("fixtures/ag.dag");
    let d = build_dag(&parse_dag(text).map_err(|e| e.to_string())?, &Registry::new()).map_err(|e| e.to_string())?;
    let nf = normalize(&d);
    check(nf.render_g() == "g(x1,x2) = <x1,q(x1,x2)>", || nf.render_g())?;
    check(nf.render_h() == "h(x1,x2,y') = m(y',q(x1,x2),p(q(x1,x2),x2))", || nf.render_h())?;
    let t = expand_expression(&d);
    check(t.to_string() == "m(f(x1,q(x1,x2)),q(x1,x2),p(q(x1,x2),x2))", || t.to_string())?;
    let q = Term::App("q".into(), vec![Term::Var("x1".into()), Term::Var("x2".into())]);
    check(t.occurrences(&q) == 3, || format!("q(x1,x2) occurs {} times", t.occurrences(&q)))
}

fn normalization_sweep() -> Result<(), String> {
    let reg = random_registry();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut points = 0u64;
    for round in 0..100 {
        let n = rng.gen_range(1..=2);
        let sys = random_system(&mut rng, n, 8);
        let d = build_dag(&sys, &reg).map_err(|e| format!("round {round}: {e}"))?;
        let nf = normalize(&d);
        for hole in hole_panel(d.hole_arity()) {
            let mut x = vec![0; n];
            loop {
                let direct = eval_dag(&d, &hole, &x).map_err(|e| e.to_string())?;
                let via = eval_normal_form(&nf, &hole, &x).map_err(|e| e.to_string())?;
                check(direct == via, || format!("round {round}, hole {}, x = {x:?}: {direct} vs {via}", hole.name()))?;
                points += 1;
                let Some(i) = (0..n).rev().find(|&i| x[i] < 12) else { break };
                x[i] += 1;
                x[i + 1..].iter_mut().for_each(|v| *v = 0);
            }
        }
    }
    check(points > 0, || "no points".into())
}

fn catalogue_suite() -> Result<(), String> {
    let suite = SuiteSpec::default_suite(7);
    let verdicts = run_suite(&suite, Some(1)).map_err(|e| e.to_string())?;
    let report = Report::new(&suite, &verdicts);
    check(verdicts.len() == prlab::reductions::catalogue().len() && verdicts.iter().all(|v| v.cases >= 200), || {
        "suite does not cover every row with 200 cases".into()
    })?;
    check(report.pass, || {
        let f = &report.failures[0];
        format!("{} failures; first: {} case {} {:?}", report.failures.len(), f.id, f.case, f.witness)
    })
}

fn kleene_identity() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..100 {
        let (family, x) = match case % 4 {
            0 => (WhileFamily::Const { steps: rng.gen_range(1..=10_000), out: rng.gen_range(0..=3) }, rng.gen_range(0..50)),
            1 => (WhileFamily::Linear { per: rng.gen_range(0..=150), out: Output::Input }, rng.gen_range(0..60)),
            2 => {
                let a = rng.gen_range(1..=40);
                (WhileFamily::Below { a, invert: false, out: Output::Const(1) }, rng.gen_range(0..a))
            }
            _ => (WhileFamily::EvenOnly, 2 * rng.gen_range(0..500)),
        };
        let (out, planted) = family.run(x).ok_or("case does not halt")?;
        check(planted <= 10_000, || format!("{}: planted time {planted}", family.label()))?;
        let p = family.program();
        let e = encode_program(&p);
        let direct = run_program(&p, &[x], u64::MAX).halted().ok_or("direct run did not halt")?;
        check(direct == (out, planted), || format!("{} on {x}: {direct:?}", family.label()))?;
        let t_min = match Universal::from_index(&e).probe(&[x], planted) {
            prlab::fuel_vm::Probe::Halted { at_step, .. } => at_step,
            prlab::fuel_vm::Probe::Running => return Err(format!("{}: universal did not halt", family.label())),
        };
        check(t_predicate(&e, &[x], t_min, TMode::AtMost) == 0, || "T fails at t_min".into())?;
        if t_min > 0 {
            check(t_predicate(&e, &[x], t_min - 1, TMode::AtMost) == 1, || "t_min is not minimal".into())?;
        }
        check(u_extract(&e, &[x], t_min) == direct.0, || format!("{}: U differs", family.label()))?;
        for _ in 0..10 {
            let t = rng.gen_range(0..=2 * planted + 2);
            let want = Nat::from(t < planted);
            check(t_predicate(&e, &[x], t, TMode::AtMost) == want, || format!("monotonicity at {t}"))?;
        }
    }
    Ok(())
}

fn dovetail_golden() -> Result<(), String> {
    let got: Vec<(u64, u64)> = (1..=10).map(|k| dovetail_schedule(k).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    let want = [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1), (1, 4), (2, 3), (3, 2), (4, 1)];
    check(got == want, || format!("{got:?}"))
}

fn frontier_branches() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for case in 0..50 {
        let f: Vec<Nat> = (0..30).map(|_| rng.gen_range(0..6)).collect();
        let listing: Vec<Nat> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(0..30)).collect();
        let fh = {
            let f = f.clone();
            FnHandle::unary("f", move |y| f.get(y as usize).copied().unwrap_or(1))
        };
        let g = |y: usize| listing[y % listing.len()];
        let scan = (0..4 * listing.len()).any(|y| f[g(y) as usize] == 0);
        check(decide_hz_fg_finite(&fh, &listing) == scan, || format!("fg case {case}"))?;
    }
    for case in 0..50 {
        let range: Vec<Nat> = (0..rng.gen_range(1..=6)).map(|_| rng.gen_range(0..20)).collect();
        let f: Vec<Nat> = (0..40).map(|_| range[rng.gen_range(0..range.len())]).collect();
        let hz: Vec<bool> = (0..20).map(|_| rng.gen_bool([0.0, 1.0, 0.5][case % 3])).collect();
        let on_range: BTreeSet<bool> = f.iter().map(|&v| hz[v as usize]).collect();
        let class = match (on_range.contains(&true), on_range.contains(&false)) {
            (true, false) => HClass::AlwaysZeroOnRange,
            (false, true) => HClass::NeverZeroOnRange,
            _ => HClass::Mixed,
        };
        let scan = f.iter().any(|&v| hz[v as usize]);
        let ok = match decide_hz_hf_trivial(class) {
            Decision::Yes => scan,
            Decision::No => !scan,
            Decision::Undecided => class == HClass::Mixed,
        };
        check(ok, || format!("hf case {case}: {class:?}"))?;
    }
    Ok(())
}

fn pairing_laws() -> Result<(), String> {
    for x in 0..=200 {
        for y in 0..=200 {
            check(unpair(pair(x, y)) == (x, y), || format!("unpair(pair({x},{y}))"))?;
        }
    }
    for z in 0..=50_000 {
        let (x, y) = unpair(z);
        check(pair(x, y) == z, || format!("pair(unpair({z}))"))?;
    }
    check(tuple_encode(&[5]) == Ok(5), || "singleton".into())?;
    check(tuple_encode(&[1, 2, 3]) == Ok(pair(1, pair(2, 3))), || "right nesting".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2_000 {
        let xs: Vec<Nat> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(0..40)).collect();
        let nested = xs[..xs.len() - 1].iter().rev().try_fold(xs[xs.len() - 1], |acc, &x| checked_pair(x, acc));
        let Some(nested) = nested else {
            check(tuple_encode(&xs).is_err(), || format!("{xs:?} should overflow"))?;
            continue;
        };
        let z = tuple_encode(&xs).map_err(|e| e.to_string())?;
        check(z == nested, || format!("{xs:?}"))?;
        check(tuple_decode(z, xs.len()).as_deref() == Ok(&xs[..]), || format!("decode {xs:?}"))?;
    }
    Ok(())
}

fn mutation_sensitivity() -> Result<(), String> {
    for m in Mutation::ALL {
        let mut suite = SuiteSpec::default_suite(7);
        suite.ids = vec![m.row().to_string()];
        suite.mutation = Some(m);
        let verdicts = run_suite(&suite, None).map_err(|e| e.to_string())?;
        let f = verdicts[0].failures.first().ok_or_else(|| format!("{} went undetected", m.name()))?;
        let again = replay(suite.seed, &f.id, &suite.window, f.case, Some(m)).map_err(|e| e.to_string())?;
        check(again.as_ref() == Some(&f.witness), || format!("{}: witness does not replay", m.name()))?;
        let clean = replay(suite.seed, &f.id, &suite.window, f.case, None).map_err(|e| e.to_string())?;
        check(clean.is_none(), || format!("{}: unmutated row fails too", m.name()))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("bijection construction golden table", bijection_golden),
        ("f∘f graph golden edges", ff_golden),
        ("normal form golden example", normal_form_golden),
        ("normalization soundness sweep", normalization_sweep),
        ("reduction catalogue suite", catalogue_suite),
        ("Kleene identity and fuel monotonicity", kleene_identity),
        ("dovetail schedule golden trace", dovetail_golden),
        ("frontier decidable branches", frontier_branches),
        ("pairing and tupling laws", pairing_laws),
        ("mutation sensitivity", mutation_sensitivity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
