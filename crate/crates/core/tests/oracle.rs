use prlab::oracle::{replay, run_suite, Report, SuiteSpec};
use prlab::reductions::{Mutation, Window};

fn small_suite(seed: u64) -> SuiteSpec {
    SuiteSpec {
        name: "small".into(),
        ids: ["hz_to_not_injective", "ff_graph", "shp_to_has_zeros", "hp_to_hz_fg"].map(String::from).to_vec(),
        cases: 12,
        seed,
        window: Window { n: 24, fuel: 2_000, diag: 64 },
        mutation: None,
    }
}

#[test]
fn verdicts_do_not_depend_on_scheduling() {
    let suite = small_suite(3);
    let one = run_suite(&suite, Some(1)).unwrap();
    let three = run_suite(&suite, Some(3)).unwrap();
    assert_eq!(one, three);
    assert_eq!(one, run_suite(&suite, None).unwrap());
    assert!(Report::new(&suite, &one).pass);
}

#[test]
fn failures_replay() {
    let mut suite = small_suite(9);
    suite.ids = vec!["hz_to_not_injective".into()];
    suite.cases = 60;
    suite.mutation = Some(Mutation::InjShift);
    let v = run_suite(&suite, None).unwrap();
    assert!(!v[0].pass);
    for f in &v[0].failures {
        let again = replay(suite.seed, &f.id, &suite.window, f.case, suite.mutation).unwrap();
        assert_eq!(again.as_ref(), Some(&f.witness));
    }
}

#[test]
fn empty_id_list() {
    let mut suite = small_suite(1);
    suite.ids.clear();
    assert!(run_suite(&suite, None).unwrap().is_empty());
}

#[test]
fn unknown_ids_are_rejected() {
    let mut suite = small_suite(1);
    suite.ids = vec!["nope".into()];
    assert!(run_suite(&suite, None).is_err());
}
