//! Acceptance checks. Runs without the libtest harness and prints one
//! `criterion N: PASS|FAIL` line per check; exits non-zero on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{
    check_against_raw, fixture, fixture_monitors, lasso_exists, random_game, random_model,
    read_fixture, realizable, recorded_objective, transform_suite, with_recorders, Shape,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use syntkit::aig::{read_aiger, write_aiger, AigerDoc, Format};
use syntkit::game::Game;
use syntkit::mc::{
    check_justice_universal, check_safety, find_fair_trace, solve_explicit, ExplicitArena,
};
use syntkit::pipeline::{load_spec, spec_to_game};
use syntkit::smv::Value;
use syntkit::transforms::{justice_to_safety, reverse_justice};

fn syntkit(args: &[&str]) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_syntkit")).args(args).output().unwrap();
    (o.status.code(), String::from_utf8_lossy(&o.stdout).trim().to_string())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Value of a design variable in a model state. Circuit latches start at
/// zero, so each bit is stored relative to its declared initial value.
fn value_of(doc: &AigerDoc, latches: &[bool], spec: &syntkit::pipeline::LoadedSpec, var: &str) -> Value {
    let enc = &spec.model.encodings[var];
    let bits: Vec<bool> = enc
        .bits
        .iter()
        .map(|b| {
            let k = doc.latches.iter().position(|l| l.name.as_deref() == Some(b.as_str())).unwrap();
            let init = spec.model.latches.iter().find(|l| &l.name == b).unwrap().init;
            latches[k] ^ init
        })
        .collect();
    enc.ty
        .values()
        .into_iter()
        .find(|v| enc.encode(v).as_deref() == Some(bits.as_slice()))
        .unwrap()
}

fn huffman_code(letter: u64) -> &'static str {
    ["", "0", "10", "110", "111"][letter as usize]
}

/// Synthesizes the encoder, model checks it and reads the emitted code of
/// each letter back from the decoder registers.
fn criterion_1() -> String {
    let dir = tempfile::tempdir().unwrap();
    let spec = fixture("huffman/spec.smv");
    let (game, model) = (dir.path().join("game.aag"), dir.path().join("model.aag"));
    let t = Instant::now();
    assert_eq!(syntkit(&["spec2aag", p(&spec), "-o", p(&game), "--extended"]).0, Some(0));
    let (code, out) = syntkit(&["synth", p(&game), "-o", p(&model)]);
    let elapsed = t.elapsed();
    assert_eq!((code, out.as_str()), (Some(0), "REALIZABLE"));
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    assert_eq!(syntkit(&["mc", p(&model)]), (Some(0), "HOLDS".to_string()));

    let loaded = load_spec(&spec).unwrap();
    let doc = read_aiger(&std::fs::read_to_string(&model).unwrap()).unwrap();
    let names: Vec<&str> = doc.inputs.iter().map(|i| i.name.as_deref().unwrap()).collect();
    assert_eq!(names, ["dataIn.__bit0", "dataIn.__bit1", "dataIn.__bit2"]);
    let word = [1u64, 2, 3, 4, 4, 3, 2, 1, 1, 4, 2, 2, 3];
    let mut latches = vec![false; doc.latches.len()];
    let (mut idx, mut bits, mut codes) = (0, String::new(), Vec::new());
    for _ in 0..200 {
        if idx == word.len() {
            break;
        }
        let letter = word[idx];
        let inputs: Vec<bool> = (0..3).map(|i| letter >> i & 1 == 1).collect();
        let v = doc.eval(&inputs, &latches);
        latches = doc.next_latches(&v);
        // one cipher bit per step: the decoder outputs nothing or D after a 1
        let out = value_of(&doc, &latches, &loaded, "dec.out");
        bits.push(if matches!(out, Value::Int(0 | 4)) { '1' } else { '0' });
        if value_of(&doc, &latches, &loaded, "done_d") == Value::Bool(true) {
            codes.push((letter, std::mem::take(&mut bits)));
            idx += 1;
        }
    }
    assert_eq!(codes.len(), word.len(), "the encoder stalled: {codes:?}");
    for (letter, bits) in &codes {
        assert_eq!(bits, huffman_code(*letter), "letter {letter}");
    }
    format!("synthesized in {elapsed:.2?}, {} letters encoded", codes.len())
}

fn huffman_window(k: u32, dir: &Path) -> (bool, bool) {
    let spec = fixture("huffman/spec.smv");
    let out = dir.join(format!("k{k}.aag"));
    let ks = k.to_string();
    assert_eq!(syntkit(&["spec2aag", p(&spec), "-o", p(&out), "--standard", "--k", &ks]).0, Some(0));
    let (code, verdict) = syntkit(&["synth", p(&out), "--print-realizability-only"]);
    let cli = match verdict.as_str() {
        "REALIZABLE" => true,
        "UNREALIZABLE" => false,
        other => panic!("unexpected verdict {other:?} (exit {code:?})"),
    };
    let doc = read_aiger(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let arena = ExplicitArena::build(&doc, true, 1 << 22).unwrap();
    (cli, arena.is_winning_initial(&arena.solve()))
}

/// The bounded-window game of the encoder: realizable from k = 3 on, with
/// the symbolic verdict confirmed by an explicit solver over reachable states.
fn criterion_2() -> String {
    let dir = tempfile::tempdir().unwrap();
    let mut verdicts = Vec::new();
    for k in 1..=4 {
        let (cli, explicit) = huffman_window(k, dir.path());
        assert_eq!(cli, explicit, "k = {k}");
        verdicts.push(cli);
    }
    assert_eq!(verdicts, [false, false, true, true]);
    "k = 1, 2 unrealizable; k = 3, 4 realizable".into()
}

fn criterion_3() -> String {
    let mut rng = StdRng::seed_from_u64(100);
    let t = Instant::now();
    let mut agree = 0;
    for _ in 0..100 {
        let shape = Shape::random(&mut rng, 6);
        let doc = random_game(&mut rng, shape);
        let explicit = solve_explicit(&doc).unwrap();
        let mut game = Game::build(&doc).unwrap();
        let sol = game.solve();
        let n = game.num_latches();
        let symbolic: Vec<bool> =
            (0..1u64 << n).map(|s| game.sym.eval(sol.winning, &common::decode(s, n), &[])).collect();
        if symbolic == explicit && sol.realizable == explicit[0] {
            agree += 1;
        }
    }
    let elapsed = t.elapsed();
    assert_eq!(agree, 100);
    assert!(elapsed < Duration::from_secs(120));
    format!("{agree}/100 regions agree in {elapsed:.2?}")
}

fn criterion_4() -> String {
    let suite = transform_suite();
    for (i, doc) in suite.iter().enumerate() {
        let v: Vec<bool> = (0..=5).map(|k| realizable(&justice_to_safety(doc, k).unwrap())).collect();
        assert!(v.windows(2).all(|w| !w[0] || w[1]), "doc {i}: {v:?}");
        assert!(!v.iter().any(|x| *x) || realizable(doc), "doc {i}");
    }
    let mut rng = StdRng::seed_from_u64(44);
    for _ in 0..60 {
        let latches = rng.gen_range(1..=3);
        let inputs = rng.gen_range(0..=2);
        let doc = random_model(&mut rng, latches, inputs);
        let violated = lasso_exists(&doc, &|e| !e.just);
        let reversed = reverse_justice(&doc).unwrap();
        assert_eq!(find_fair_trace(&reversed).unwrap().is_some(), violated);
    }
    format!("{} games, 60 reversed models", suite.len())
}

fn criterion_5() -> String {
    let golden = [
        "empty", "buffer", "inverter", "and", "or", "half_adder", "toggle", "hand_game", "arbiter",
        "listing1_extended",
    ];
    for name in golden {
        let text = read_fixture(&format!("aiger/{name}.aag"));
        assert_eq!(write_aiger(&read_aiger(&text).unwrap()).unwrap(), text, "{name}");
    }
    let arb = read_aiger(&read_fixture("aiger/arbiter.aag")).unwrap();
    let c: Vec<_> = arb.controllable_inputs().map(|i| i.name.clone().unwrap()).collect();
    let u: Vec<_> = arb.uncontrollable_inputs().map(|i| i.name.clone().unwrap()).collect();
    assert_eq!((c.as_slice(), u.as_slice()), (&["controllable_grant".to_string()][..], &["req".to_string()][..]));
    format!("{} files", golden.len())
}

fn criterion_6() -> String {
    let all = fixture_monitors();
    assert_eq!(all.len(), 9);
    for (raw, negated, m) in &all {
        check_against_raw(raw, *negated, m, 8);
    }
    format!("{} automata", all.len())
}

/// Every synthesized controller passes the model checker.
fn criterion_7() -> String {
    let mut games: Vec<(String, AigerDoc)> = Vec::new();
    for spec in ["huffman/spec.smv", "listing1/spec.smv"] {
        games.push((spec.into(), spec_to_game(&fixture(spec)).unwrap()));
    }
    let huffman = games[0].1.clone();
    for k in [3, 4] {
        games.push((format!("huffman k = {k}"), justice_to_safety(&huffman, k).unwrap()));
    }
    for name in ["hand_game", "arbiter"] {
        games.push((name.into(), read_aiger(&read_fixture(&format!("aiger/{name}.aag"))).unwrap()));
    }
    let mut rng = StdRng::seed_from_u64(7);
    for i in 0..40 {
        let shape = Shape::random(&mut rng, 6);
        games.push((format!("random {i}"), random_game(&mut rng, shape)));
    }
    let mut checked = 0;
    for (name, doc) in &games {
        let mut game = Game::build(doc).unwrap();
        let sol = game.solve();
        if !sol.realizable {
            continue;
        }
        let strategy = game.extract_strategy(&sol).unwrap();
        let model = game.strategy_to_circuit(&strategy);
        assert!(check_safety(&model).holds(), "{name}");
        if model.format == Format::New {
            assert!(check_justice_universal(&model).unwrap().holds(), "{name}");
        }
        checked += 1;
    }
    // window strategies also satisfy the original objective
    for doc in transform_suite() {
        let recorded = with_recorders(&doc);
        let mut game = Game::build(&justice_to_safety(&recorded, 3).unwrap()).unwrap();
        let sol = game.solve();
        if sol.realizable {
            let strategy = game.extract_strategy(&sol).unwrap();
            let model = recorded_objective(&game.strategy_to_circuit(&strategy));
            assert!(check_safety(&model).holds());
            assert!(check_justice_universal(&model).unwrap().holds());
            checked += 1;
        }
    }
    assert!(checked >= 20, "only {checked} realizable instances");
    format!("{checked} controllers verified")
}

fn main() {
    let criteria: [(u32, &str, fn() -> String); 7] = [
        (1, "huffman encoder synthesis", criterion_1),
        (2, "minimal bounded window", criterion_2),
        (3, "symbolic vs explicit solver", criterion_3),
        (4, "transformations", criterion_4),
        (5, "aiger round trip", criterion_5),
        (6, "monitor faithfulness", criterion_6),
        (7, "end-to-end verification", criterion_7),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, title, run) in criteria {
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(detail) => println!("criterion {n}: PASS  {title} ({detail})"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {n}: FAIL  {title}: {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
