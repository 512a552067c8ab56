mod common;

use common::{fixture, read_fixture};
use std::collections::HashMap;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use syntkit::smv::{flatten, parse_smv, resolve, FlatModel, Interpreter, SmvError, Value, VarRole};

#[test]
fn listing_one_parses_verbatim() {
    let spec = parse_smv(&read_fixture("listing1_verbatim.smv")).unwrap();
    let names: Vec<&str> = spec.modules.iter().map(|m| m.name.as_str()).collect();
    assert_eq!(names, ["helper1", "main"]);
    let main = spec.main().unwrap();
    let controllable: Vec<&str> = main
        .vars
        .iter()
        .filter(|v| v.controllable)
        .map(|v| v.name.as_str())
        .collect();
    assert_eq!(controllable, ["valueOut"]);
    assert_eq!(main.sys_automata.len(), 2);
    assert_eq!(main.env_automata.len(), 2);
    assert_eq!(main.sys_automata.iter().filter(|a| a.negated).count(), 1);
    assert_eq!(main.env_automata.iter().filter(|a| a.negated).count(), 1);
    assert_eq!(main.sys_automata[1].path, "guarantee2.gff");
    assert!(main.sys_automata[1].negated);
}

#[test]
fn minimal_spec() {
    let spec = parse_smv("MODULE main VAR x: boolean;").unwrap();
    let design = resolve(&spec).unwrap();
    assert_eq!(design.vars.len(), 1);
    assert_eq!(design.vars[0].role(), VarRole::Input);
    let model = flatten(&design).unwrap();
    assert_eq!(model.inputs_u, ["x"]);
    assert!(model.latches.is_empty() && model.inputs_c.is_empty());
}

#[test]
fn duplicate_module_is_rejected() {
    let err = parse_smv("MODULE main MODULE main").unwrap_err();
    assert!(matches!(err, SmvError::DuplicateModule { .. }), "{err}");
}

#[test]
fn completed_listing_one_resolves_and_flattens() {
    let text = std::fs::read_to_string(fixture("listing1/spec.smv")).unwrap();
    let design = resolve(&parse_smv(&text).unwrap()).unwrap();
    assert!(design.define_by_name("is42").is_some());
    assert!(design.var_by_name("h.state").is_some());
    let model = flatten(&design).unwrap();
    model.check_names().unwrap();
    assert_eq!(model.inputs_c, ["valueOut"]);
    assert_eq!(model.inputs_u, ["CPUread", "CPUwrite", "valueIn", "done"]);
    assert!(model.defines.contains_key("is42"));
    // 0..100 needs seven bits
    assert_eq!(model.encodings["h.state"].bits.len(), 7);
}

#[test]
fn frontend_errors() {
    let cases: &[(&str, fn(&SmvError) -> bool)] = &[
        ("MODULE main VAR --controllable\n x: 0..3;", |e| {
            matches!(e, SmvError::ControllableNotBoolean { .. })
        }),
        ("MODULE main DEFINE a := b;", |e| matches!(e, SmvError::Unbound { .. })),
        ("MODULE main VAR x: boolean; n: 0..3; DEFINE a := x = n;", |e| {
            matches!(e, SmvError::Type { .. })
        }),
        ("MODULE m VAR s: n; MODULE n VAR t: m; MODULE main VAR a: m;", |e| {
            matches!(e, SmvError::CyclicInstantiation(_))
        }),
        ("MODULE main DEFINE a := b; b := a;", |e| matches!(e, SmvError::CyclicDefinition(_))),
    ];
    for (text, ok) in cases {
        let err = parse_smv(text).and_then(|s| resolve(&s).map(|_| ())).unwrap_err();
        assert!(ok(&err), "{text}: {err}");
    }
}

/// Random specification text over a fixed set of variables: boolean and
/// range inputs, a controllable boolean, and boolean, range and enum state.
struct SpecGen {
    rng: StdRng,
    defines: usize,
}

const ENUM: [&str; 3] = ["red", "green", "blue"];

impl SpecGen {
    fn bool_atom(&mut self) -> String {
        match self.rng.gen_range(0..9) {
            0 => "TRUE".into(),
            1 => "FALSE".into(),
            2 => "i0".into(),
            3 => "c0".into(),
            4 => "s0".into(),
            5 => format!("s1 {} {}", ["<", "<=", ">", ">=", "=", "!="][self.rng.gen_range(0..6)], self.rng.gen_range(0..6)),
            6 => format!("i1 {} s1", ["<", "=", "!=", ">="][self.rng.gen_range(0..4)]),
            7 => format!("s2 {} {}", ["=", "!="][self.rng.gen_range(0..2)], ENUM[self.rng.gen_range(0..3)]),
            _ if self.defines > 0 => format!("d{}", self.rng.gen_range(0..self.defines)),
            _ => "i0".into(),
        }
    }

    fn bool_expr(&mut self, depth: u32) -> String {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return self.bool_atom();
        }
        let a = self.bool_expr(depth - 1);
        match self.rng.gen_range(0..6) {
            0 => format!("!({a})"),
            1 => format!("({a} & {})", self.bool_expr(depth - 1)),
            2 => format!("({a} | {})", self.bool_expr(depth - 1)),
            3 => format!("({a} xor {})", self.bool_expr(depth - 1)),
            4 => format!("({a} -> {})", self.bool_expr(depth - 1)),
            _ => format!("({a} <-> {})", self.bool_expr(depth - 1)),
        }
    }

    fn case(&mut self, value: &mut dyn FnMut(&mut Self) -> String) -> String {
        let n = self.rng.gen_range(1..4);
        let mut s = String::from("case\n");
        for _ in 0..n {
            let c = self.bool_expr(2);
            let v = value(self);
            s += &format!("      {c} : {v};\n");
        }
        // the last branch is not always TRUE, exercising fall-through
        let c = if self.rng.gen_bool(0.8) { "TRUE".into() } else { self.bool_expr(1) };
        let v = value(self);
        s += &format!("      {c} : {v};\n    esac");
        s
    }

    fn spec(&mut self) -> String {
        self.defines = 0;
        let mut defs = String::new();
        for k in 0..3 {
            let e = self.bool_expr(3);
            defs += &format!("  d{k} := {e};\n");
            self.defines = k + 1;
        }
        let next_s0 = self.case(&mut |g| g.bool_expr(2));
        let next_s1 = self.case(&mut |g| match g.rng.gen_range(0..3) {
            0 => "s1".into(),
            1 => "i1".into(),
            _ => g.rng.gen_range(0..6).to_string(),
        });
        let next_s2 = self.case(&mut |g| match g.rng.gen_range(0..2) {
            0 => "s2".into(),
            _ => ENUM[g.rng.gen_range(0..3)].into(),
        });
        let (i0, i1, i2) = (
            self.rng.gen_bool(0.5).to_string().to_uppercase(),
            self.rng.gen_range(0..6),
            ENUM[self.rng.gen_range(0..3)],
        );
        format!(
            "MODULE main\nVAR\n  i0: boolean;\n  i1: 0..3;\nVAR --controllable\n  c0: boolean;\nVAR\n  s0: boolean;\n  s1: 0..5;\n  s2: {{red, green, blue}};\nDEFINE\n{defs}ASSIGN\n  init(s0) := {i0};\n  init(s1) := {i1};\n  init(s2) := {i2};\n  next(s0) := {next_s0};\n  next(s1) := {next_s1};\n  next(s2) := {next_s2};\n"
        )
    }
}

fn flat_inputs(model: &FlatModel, names: &[String], vals: &[(String, Value)]) -> Vec<bool> {
    let mut bits = HashMap::new();
    for (var, v) in vals {
        let enc = &model.encodings[var];
        for (b, x) in enc.bits.iter().zip(enc.encode(v).unwrap()) {
            bits.insert(b.clone(), x);
        }
    }
    names.iter().map(|n| bits[n]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The flattened boolean model and the typed interpreter agree on every
    /// state variable and define along all input sequences of length ≤ 6.
    /// Both sides are deterministic, so walking the set of reachable state
    /// pairs level by level covers every sequence.
    #[test]
    fn flattening_preserves_semantics(seed in any::<u64>()) {
        let mut g = SpecGen { rng: StdRng::seed_from_u64(seed), defines: 0 };
        let text = g.spec();
        let design = resolve(&parse_smv(&text).unwrap()).unwrap();
        let model = flatten(&design).unwrap();
        model.check_names().unwrap();
        prop_assert!(["d0", "d1", "d2"].iter().all(|d| model.defines.contains_key(*d)));
        prop_assert_eq!(model.latches.len(), 6);
        let interp = Interpreter::new(&design);
        let latch_index: HashMap<&str, usize> =
            model.latches.iter().enumerate().map(|(i, l)| (l.name.as_str(), i)).collect();
        let mut level: HashMap<Vec<bool>, Vec<Value>> =
            HashMap::from([(model.initial_latches(), interp.initial().unwrap())]);
        for _ in 0..6 {
            let mut next_level = HashMap::new();
            for (latches, vals) in &level {
                for v in design.vars.iter().filter(|v| v.role() == VarRole::Latch) {
                    let enc = &model.encodings[&v.name];
                    let expect = enc.encode(&vals[design.var_by_name(&v.name).unwrap()]).unwrap();
                    let got: Vec<bool> = enc.bits.iter().map(|b| latches[latch_index[b.as_str()]]).collect();
                    prop_assert_eq!(got, expect, "{} in\n{}", &v.name, &text);
                }
                for (i0, i1, c0) in all_letters() {
                    let iv = [
                        ("i0".to_string(), Value::Bool(i0)),
                        ("i1".to_string(), Value::Int(i1)),
                        ("c0".to_string(), Value::Bool(c0)),
                    ];
                    let mut vals = vals.clone();
                    for (n, v) in &iv {
                        vals[design.var_by_name(n).unwrap()] = v.clone();
                    }
                    let u = flat_inputs(&model, &model.inputs_u, &iv);
                    let c = flat_inputs(&model, &model.inputs_c, &iv);
                    let (defs, next) = model.step(latches, &u, &c);
                    let typed = interp.define_values(&vals);
                    for (d, tv) in design.defines.iter().zip(&typed) {
                        let k = model.defines.get_index_of(&d.name).unwrap();
                        prop_assert_eq!(Value::Bool(defs[k]), tv.clone(), "{} in\n{}", &d.name, &text);
                    }
                    next_level.insert(next, interp.next(&vals));
                }
            }
            level = next_level;
        }
    }
}

/// Every input letter: `i0`, `i1 ∈ 0..3`, `c0`.
fn all_letters() -> Vec<(bool, i64, bool)> {
    let mut out = Vec::new();
    for i0 in [false, true] {
        for i1 in 0..4 {
            for c0 in [false, true] {
                out.push((i0, i1, c0));
            }
        }
    }
    out
}
