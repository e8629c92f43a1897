use proptest::prelude::*;
use prlab::fuel_vm::{loop_to_while, run_program};
use prlab::oracle::{gen_case, CorpusKind};
use prlab::reductions::{catalogue, reduce, InstanceKind, Target, Window};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pr_rows_have_total_targets_that_embed(seed in any::<u64>()) {
        let w = Window::with_n(20);
        let case = gen_case(&CorpusKind::MixedPr, seed, &w).unwrap();
        for s in catalogue().iter().filter(|s| s.kind == InstanceKind::Pr) {
            let r = reduce(s.id, &case.input(), &case.params_for(s.id), None).unwrap();
            let out = case.with_facts(|facts| r.bound_map(&w).check(facts, &r.target)).unwrap();
            prop_assert!(out.holds(), "{} on {}: {:?}", s.id, case.label, out);
            let parts: Vec<_> = match &r.target {
                Target::Total(f) => vec![f],
                Target::Pair(f, g) => vec![f, g],
                Target::Partial(_) => panic!("{} promises a total target", s.id),
            };
            for f in parts {
                let vals: Vec<_> = (0..30).map(|x| f.at(x)).collect();
                if let Some(src) = f.source() {
                    let p = loop_to_while(src);
                    for (x, v) in vals.iter().enumerate() {
                        prop_assert_eq!(run_program(&p, &[x as u64], u64::MAX).halted().map(|h| h.0), Some(*v), "{}", s.id);
                    }
                }
            }
        }
    }
}
