use lingoe::algebra::{PrimeField, Rationals};
use lingoe::analysis::{replay_witness, Scales};
use lingoe::examples::{diff_expected, list_examples, run_example};
use lingoe::shiftspace::StabilizationPolicy;

#[test]
fn every_example_meets_its_expectations_over_gf2() {
    for ex in list_examples(PrimeField::new(2).unwrap()) {
        let scales = Scales::default_for(ex.group());
        let policy = StabilizationPolicy::for_group(ex.group());
        let run = run_example(&ex, &scales, &policy).unwrap();
        assert_eq!(diff_expected(&ex.expected, &run), Vec::<String>::new(), "{}", ex.name);
        for v in [&run.preinj, &run.surj] {
            if let Some(w) = v.witness() {
                assert!(replay_witness(&ex.automaton, &ex.subshift, w, &policy).unwrap(), "{}", ex.name);
            }
        }
    }
}

#[test]
fn every_example_meets_its_expectations_over_q() {
    for ex in list_examples(Rationals) {
        let scales = Scales::new(ex.group(), 2, 2);
        let policy = StabilizationPolicy::for_group(ex.group());
        let mut expected = ex.expected.clone();
        if let Some(d) = &mut expected.profile_dims {
            d.truncate(3);
        }
        let run = run_example(&lingoe::examples::NamedExample { expected: expected.clone(), ..ex.clone() }, &scales, &policy).unwrap();
        assert_eq!(diff_expected(&expected, &run), Vec::<String>::new(), "{}", ex.name);
    }
}
