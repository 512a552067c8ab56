mod common;

use common::{bad_lits_hold, bad_reachable, lasso_exists, random_model, replay};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use syntkit::aig::lit_value;
use syntkit::mc::{check_justice_universal, check_safety, Verdict};

#[test]
fn safety_agrees_with_explicit_reachability() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut violated = 0;
    for _ in 0..80 {
        let latches = rng.gen_range(1..=10);
        let inputs = rng.gen_range(0..=2);
        let doc = random_model(&mut rng, latches, inputs);
        let verdict = check_safety(&doc);
        assert_eq!(!verdict.holds(), bad_reachable(&doc));
        if let Verdict::Violated(t) = verdict {
            violated += 1;
            let vals = replay(&doc, &t);
            assert!(vals.iter().all(|v| doc.constraints.iter().all(|c| lit_value(v, c.lit))));
            assert!(bad_lits_hold(&doc, vals.last().unwrap()));
            assert_eq!(t.loop_start, None);
        }
    }
    assert!(violated > 10 && violated < 70, "violated: {violated}");
}

#[test]
fn justice_agrees_with_lasso_enumeration() {
    let mut rng = StdRng::seed_from_u64(6);
    let mut violated = 0;
    for _ in 0..80 {
        let latches = rng.gen_range(1..=3);
        let inputs = rng.gen_range(0..=2);
        let doc = random_model(&mut rng, latches, inputs);
        let verdict = check_justice_universal(&doc).unwrap();
        assert_eq!(!verdict.holds(), lasso_exists(&doc, &|e| !e.just));
        if let Verdict::Violated(t) = verdict {
            violated += 1;
            let vals = replay(&doc, &t);
            let l = t.loop_start.expect("a lasso");
            let just = doc.justice[0].lits[0];
            assert!(vals.iter().all(|v| doc.constraints.iter().all(|c| lit_value(v, c.lit))));
            assert!(vals[l..].iter().all(|v| !lit_value(v, just)));
        }
    }
    assert!(violated > 10 && violated < 70, "violated: {violated}");
}

#[test]
fn trace_text_has_one_line_per_step() {
    let mut rng = StdRng::seed_from_u64(9);
    loop {
        let doc = random_model(&mut rng, 3, 1);
        if let Verdict::Violated(t) = check_safety(&doc) {
            let text = t.to_string();
            let lines: Vec<&str> = text.lines().collect();
            assert_eq!(lines.len(), t.steps.len() + 1);
            assert_eq!(lines[0], "inputs: u0 | latches: l0 l1 l2");
            assert!(lines[1..].iter().all(|l| l.len() == 1 + 1 + 3));
            break;
        }
    }
}
