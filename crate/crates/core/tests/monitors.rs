mod common;

use std::collections::BTreeSet;

use common::{check_against_raw, fixture_monitors, letters};
use syntkit::aig::{compile, lit_value};
use syntkit::smv::{flatten, parse_smv, resolve};

#[test]
fn monitors_follow_automaton_runs() {
    let all = fixture_monitors();
    assert_eq!(all.len(), 9);
    for (raw, negated, m) in &all {
        assert!(raw.props.len() <= 4 && raw.num_states() <= 6);
        check_against_raw(raw, *negated, m, 8);
    }
}

/// The monitor register inside the compiled circuit tracks the same states.
#[test]
fn compiled_registers_follow_monitors() {
    for (_, _, m) in fixture_monitors() {
        let decls: String = m.props.iter().map(|p| format!("{p}: boolean; ")).collect();
        let design = resolve(&parse_smv(&format!("MODULE main VAR {decls}")).unwrap()).unwrap();
        let model = flatten(&design).unwrap();
        let doc = compile(&model, std::slice::from_ref(&m), &[]).unwrap();
        let bits: Vec<usize> = (0..m.state_bits())
            .map(|i| {
                let name = format!("{}.state.__bit{i}", m.name);
                doc.latches.iter().position(|l| l.name.as_deref() == Some(&name)).unwrap()
            })
            .collect();
        let decode = |latches: &[bool]| -> usize {
            bits.iter()
                .enumerate()
                .map(|(i, &k)| ((latches[k] ^ (m.init >> i & 1 == 1)) as usize) << i)
                .sum()
        };
        let bad = doc.bad[0].lit;
        let mut level = BTreeSet::from([(vec![false; doc.latches.len()], m.init)]);
        for _ in 0..8 {
            let mut next = BTreeSet::new();
            for (latches, s) in &level {
                assert_eq!(decode(latches), *s, "{}", m.name);
                for val in letters(&m.props) {
                    let inputs: Vec<bool> = model.inputs_u.iter().map(|n| val[n]).collect();
                    let v = doc.eval(&inputs, latches);
                    assert_eq!(lit_value(&v, bad), m.bad[*s], "{}", m.name);
                    next.insert((doc.next_latches(&v), m.step(*s, &|p| val[p])));
                }
            }
            level = next;
        }
    }
}
