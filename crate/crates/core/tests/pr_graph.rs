use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use prlab::pr_graph::{
    build_dag, classify_nodes, eval_dag, eval_normal_form, hole_panel, normalize, parse_dag, print_dag, random_registry,
    random_system, EquationSystem, NodeClass,
};
use prlab::Nat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Variables reachable from `start` along def-use edges, `start` excluded.
fn downstream(sys: &EquationSystem, start: &str) -> BTreeSet<String> {
    let mut users: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for e in &sys.equations {
        for a in &e.args {
            users.entry(a.as_str()).or_default().push(&e.lhs);
        }
    }
    let mut seen = BTreeSet::new();
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in users.get(v).into_iter().flatten() {
            if seen.insert(u.to_string()) {
                stack.push(u);
            }
        }
    }
    seen
}

fn system(seed: u64) -> EquationSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_system(&mut rng, 1 + (seed % 3) as usize, 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classes_match_reachability(seed in any::<u64>()) {
        let sys = system(seed);
        let d = build_dag(&sys, &random_registry()).unwrap();
        let hole = sys.equations.iter().find(|e| e.func == sys.hole).unwrap().lhs.clone();
        let after_hole = downstream(&sys, &hole);
        for c in classify_nodes(&d) {
            let feeds = downstream(&sys, &c.var).contains(&hole);
            let fed = after_hole.contains(&c.var);
            prop_assert!(!(feeds && fed));
            let want = if feeds { NodeClass::InpF } else if fed { NodeClass::OutF } else { NodeClass::Neither };
            prop_assert_eq!(c.class, want, "{}", c.var);
        }
    }

    #[test]
    fn normal_form_keeps_the_hole(seed in any::<u64>()) {
        let sys = system(seed);
        let d = build_dag(&sys, &random_registry()).unwrap();
        let nf = normalize(&d);
        prop_assert_eq!(&nf.hole_name, &sys.hole);
        prop_assert_eq!(nf.g.len(), d.hole_arity());
    }

    #[test]
    fn normalization_is_sound(seed in any::<u64>(), x in prop::collection::vec(0u64..=12, 3)) {
        let sys = system(seed);
        let d = build_dag(&sys, &random_registry()).unwrap();
        let nf = normalize(&d);
        let x: Vec<Nat> = x[..d.inputs().len()].to_vec();
        for hole in hole_panel(d.hole_arity()) {
            prop_assert_eq!(eval_dag(&d, &hole, &x).unwrap(), eval_normal_form(&nf, &hole, &x).unwrap());
        }
    }

    #[test]
    fn dag_text_round_trips(seed in any::<u64>()) {
        let sys = system(seed);
        let text = print_dag(&sys);
        let again = parse_dag(&text).unwrap();
        prop_assert_eq!(print_dag(&again), text);
    }
}
