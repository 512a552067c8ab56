//! Helpers shared by the integration tests: fixture paths, random circuit
//! generators and brute-force oracles that only use circuit simulation.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use syntkit::aig::{lit_value, AigerDoc, Format, Justice, Lit, Signal};
use syntkit::automata::{parse_gff, BuchiAutomaton, Monitor};
use syntkit::game::Game;
use syntkit::mc::Trace;
use syntkit::pipeline::load_spec;
use syntkit::transforms::single_justice;

/// Fixtures live with the core crate; the path also works from the other
/// workspace crates that include this module.
pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap()
}

fn random_lit(rng: &mut StdRng, pool: &[Lit]) -> Lit {
    pool[rng.gen_range(0..pool.len())].negate_if(rng.gen())
}

/// Shape of a random game.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub latches: usize,
    pub u: usize,
    pub c: usize,
    pub gates: usize,
    pub constraint: bool,
    pub justice: bool,
}

impl Shape {
    pub fn random(rng: &mut StdRng, max_latches: usize) -> Shape {
        Shape {
            latches: rng.gen_range(1..=max_latches),
            u: rng.gen_range(0..=2),
            c: rng.gen_range(0..=2),
            gates: rng.gen_range(4..16),
            constraint: rng.gen_bool(0.3),
            justice: rng.gen_bool(0.6),
        }
    }
}

/// A random extended game. Justice, when present, reads latches only.
pub fn random_game(rng: &mut StdRng, shape: Shape) -> AigerDoc {
    let mut d = AigerDoc::new(Format::New);
    let mut pool = Vec::new();
    for i in 0..shape.u {
        pool.push(d.add_input(format!("u{i}")));
    }
    for i in 0..shape.c {
        pool.push(d.add_input(format!("controllable_c{i}")));
    }
    let latches: Vec<Lit> = (0..shape.latches).map(|i| d.add_latch(format!("l{i}"))).collect();
    pool.extend(&latches);
    for _ in 0..shape.gates {
        let a = random_lit(rng, &pool);
        let b = random_lit(rng, &pool);
        let g = d.aig.and(a, b);
        pool.push(g);
    }
    for &l in &latches {
        let n = random_lit(rng, &pool);
        d.set_next(l, n);
    }
    // sparse bad: a conjunction of up to three literals
    let k = rng.gen_range(1..=3);
    let parts: Vec<Lit> = (0..k).map(|_| random_lit(rng, &pool)).collect();
    let bad = d.aig.and_all(parts);
    d.bad.push(Signal::new(bad, Some("bad")));
    if shape.constraint {
        let a = random_lit(rng, &pool);
        let b = random_lit(rng, &pool);
        let c = d.aig.or(a, b);
        d.constraints.push(Signal::new(c, Some("inv")));
    }
    if shape.justice {
        let a = random_lit(rng, &latches);
        let b = random_lit(rng, &latches);
        let j = if rng.gen() { a } else { d.aig.or(a, b) };
        d.justice.push(Justice {
            lits: vec![j],
            name: Some("just".into()),
        });
    }
    d
}

/// A random closed-or-open model (no controllable inputs) for model
/// checking oracles.
pub fn random_model(rng: &mut StdRng, latches: usize, inputs: usize) -> AigerDoc {
    let shape = Shape {
        latches,
        u: inputs,
        c: 0,
        gates: rng.gen_range(3..12),
        constraint: rng.gen_bool(0.3),
        justice: true,
    };
    random_game(rng, shape)
}

pub fn decode(code: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| code >> i & 1 == 1).collect()
}

pub fn encode(v: &[bool]) -> u64 {
    v.iter().enumerate().map(|(i, b)| (*b as u64) << i).sum()
}

/// One explicit transition: the input vector and the signal values.
pub struct Edge {
    pub inputs: Vec<bool>,
    pub inv: bool,
    pub bad: bool,
    pub just: bool,
    pub next: u64,
}

/// All transitions out of `state`, one per input vector.
pub fn edges(doc: &AigerDoc, state: u64) -> Vec<Edge> {
    let nl = doc.latches.len();
    let ni = doc.inputs.len();
    let latches = decode(state, nl);
    let bads: Vec<Lit> = match doc.format {
        Format::Old => doc.outputs.iter().map(|s| s.lit).collect(),
        Format::New => doc.bad.iter().map(|s| s.lit).collect(),
    };
    (0..1u64 << ni)
        .map(|m| {
            let inputs = decode(m, ni);
            let vals = doc.eval(&inputs, &latches);
            Edge {
                inv: doc.constraints.iter().all(|c| lit_value(&vals, c.lit)),
                bad: bads.iter().any(|b| lit_value(&vals, *b)),
                just: doc
                    .justice
                    .first()
                    .map_or(true, |j| j.lits.iter().all(|l| lit_value(&vals, *l))),
                next: encode(&doc.next_latches(&vals)),
                inputs,
            }
        })
        .collect()
}

/// Breadth-first search over constraint-respecting transitions: is a step
/// with `inv ∧ bad` reachable from the initial state?
pub fn bad_reachable(doc: &AigerDoc) -> bool {
    let mut seen = HashSet::from([0u64]);
    let mut queue = VecDeque::from([0u64]);
    while let Some(s) = queue.pop_front() {
        for e in edges(doc, s) {
            if !e.inv {
                continue;
            }
            if e.bad {
                return true;
            }
            if seen.insert(e.next) {
                queue.push_back(e.next);
            }
        }
    }
    false
}

/// Enumerates lassos with pairwise distinct states: a stem of
/// constraint-respecting steps from the initial state, then a cycle whose
/// steps satisfy `loop_ok`. Returns whether one exists.
pub fn lasso_exists(doc: &AigerDoc, loop_ok: &dyn Fn(&Edge) -> bool) -> bool {
    let mut succ: HashMap<u64, Vec<(u64, bool)>> = HashMap::new();
    let mut frontier = vec![0u64];
    while let Some(s) = frontier.pop() {
        if succ.contains_key(&s) {
            continue;
        }
        let out: Vec<(u64, bool)> = edges(doc, s)
            .iter()
            .filter(|e| e.inv)
            .map(|e| (e.next, loop_ok(e)))
            .collect();
        frontier.extend(out.iter().map(|(t, _)| *t));
        succ.insert(s, out);
    }
    fn extend(path: &mut Vec<u64>, succ: &HashMap<u64, Vec<(u64, bool)>>) -> bool {
        let s = *path.last().unwrap();
        // close the loop at any earlier position whose cycle is all `loop_ok`
        for &(t, _) in &succ[&s] {
            if let Some(start) = path.iter().position(|x| *x == t) {
                let cycle_ok = (start..path.len()).all(|i| {
                    let from = path[i];
                    let to = if i + 1 < path.len() { path[i + 1] } else { t };
                    succ[&from].iter().any(|&(x, ok)| x == to && ok)
                });
                if cycle_ok {
                    return true;
                }
            }
        }
        let mut nexts: Vec<u64> = succ[&s].iter().map(|(t, _)| *t).collect();
        nexts.sort_unstable();
        nexts.dedup();
        for t in nexts {
            if path.contains(&t) {
                continue;
            }
            path.push(t);
            if extend(path, succ) {
                return true;
            }
            path.pop();
        }
        false
    }
    extend(&mut vec![0], &succ)
}

/// Replays a trace on the circuit: consecutive latch vectors must follow
/// from the recorded inputs, and a lasso must close.
pub fn replay(doc: &AigerDoc, t: &Trace) -> Vec<Vec<bool>> {
    assert!(!t.steps.is_empty());
    assert!(t.steps[0].latches.iter().all(|b| !b), "trace starts in the initial state");
    let mut values = Vec::new();
    for (i, s) in t.steps.iter().enumerate() {
        let vals = doc.eval(&s.inputs, &s.latches);
        let next = doc.next_latches(&vals);
        match t.steps.get(i + 1) {
            Some(n) => assert_eq!(next, n.latches, "step {i} does not lead to step {}", i + 1),
            None => {
                if let Some(l) = t.loop_start {
                    assert_eq!(next, t.steps[l].latches, "loop does not close");
                }
            }
        }
        values.push(vals);
    }
    values
}

/// Whether any bad signal (outputs for old-format documents) holds.
pub fn bad_lits_hold(doc: &AigerDoc, vals: &[bool]) -> bool {
    match doc.format {
        Format::Old => doc.outputs.iter().any(|s| lit_value(vals, s.lit)),
        Format::New => doc.bad.iter().any(|s| lit_value(vals, s.lit)),
    }
}

pub const SPECS: [&str; 2] = ["listing1/spec.smv", "huffman/spec.smv"];

/// Every monitor of the fixture specifications, paired with the raw
/// automaton it was built from and its negation flag.
pub fn fixture_monitors() -> Vec<(BuchiAutomaton, bool, Monitor)> {
    let mut out = Vec::new();
    for spec in SPECS {
        let loaded = load_spec(&fixture(spec)).unwrap();
        let dir = std::path::Path::new(spec).parent().unwrap();
        let refs = loaded.design.sys_automata.iter().chain(&loaded.design.env_automata);
        for (m, r) in loaded.sys.into_iter().chain(loaded.env).zip(refs) {
            assert_eq!(r.path, format!("{}.gff", m.name));
            let raw = parse_gff(&read_fixture(dir.join(&r.path).to_str().unwrap())).unwrap();
            out.push((raw, r.negated, m));
        }
    }
    out
}

pub fn letters(props: &[String]) -> Vec<HashMap<String, bool>> {
    (0..1u32 << props.len())
        .map(|m| props.iter().enumerate().map(|(i, p)| (p.clone(), m >> i & 1 == 1)).collect())
        .collect()
}

/// Walks all words up to the given length level by level; since both
/// machines are deterministic, tracking the set of reachable state pairs
/// covers every word.
pub fn check_against_raw(raw: &BuchiAutomaton, negated: bool, m: &Monitor, depth: usize) {
    // a live run is lost once it sits in a rejecting state it cannot leave
    let sink = |q: usize| raw.is_accepting(q) == negated && raw.outgoing(q).all(|t| t.dst == q);
    let mut level: BTreeSet<(Option<usize>, usize)> = BTreeSet::from([(Some(raw.initial), m.init)]);
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for &(q, s) in &level {
            for val in letters(&raw.props) {
                let f = |p: &str| val[p];
                let q2 = q.and_then(|q| {
                    let succ = raw.enabled(q, &f);
                    assert!(succ.len() <= 1, "fixture automata are deterministic");
                    succ.into_iter().next()
                });
                let s2 = m.step(s, &f);
                match q2 {
                    Some(q2) => {
                        assert_eq!(m.states[s2], raw.states[q2], "{}", m.name);
                        assert_eq!(m.bad[s2], sink(q2), "{}", m.name);
                    }
                    None => assert!(m.bad[s2], "{}: a dead run must be in the bad state", m.name),
                }
                if m.bad[s] {
                    assert!(m.bad[s2], "{}: bad is absorbing", m.name);
                }
                next.insert((q2, s2));
            }
        }
        level = next;
    }
}

pub fn realizable(doc: &AigerDoc) -> bool {
    Game::build(doc).unwrap().solve().realizable
}

/// Adds latches recording the previous step's bad, ¬inv and just, so a
/// synthesized model can be checked against the original objective.
/// Recording ¬inv keeps the all-zero first step harmless.
pub fn with_recorders(doc: &AigerDoc) -> AigerDoc {
    let mut d = doc.clone();
    let bad = d.aig.or_all(doc.bad.iter().map(|s| s.lit));
    let inv = d.aig.and_all(doc.constraints.iter().map(|s| s.lit));
    let just = single_justice(doc).unwrap();
    for (name, lit) in [("rec_bad", bad), ("rec_ninv", !inv), ("rec_just", just)] {
        let l = d.add_latch(name);
        d.set_next(l, lit);
    }
    d
}

/// Reads the recorders back as the objective of a closed model.
pub fn recorded_objective(model: &AigerDoc) -> AigerDoc {
    let find = |n: &str| model.latches.iter().find(|l| l.name.as_deref() == Some(n)).unwrap().lit;
    let mut m = model.clone();
    m.format = Format::New;
    m.outputs.clear();
    m.bad = vec![Signal::new(find("rec_bad"), None)];
    m.constraints = vec![Signal::new(!find("rec_ninv"), None)];
    m.justice = vec![Justice {
        lits: vec![find("rec_just")],
        name: None,
    }];
    m
}

pub fn transform_suite() -> Vec<AigerDoc> {
    let mut docs = Vec::new();
    // the system toggles `s` itself: just every second step at best
    let mut d = AigerDoc::new(Format::New);
    let c = d.add_input("controllable_c");
    let s = d.add_latch("s");
    let n = d.aig.and(c, !s);
    d.set_next(s, n);
    d.justice.push(Justice { lits: vec![s], name: None });
    docs.push(d);
    // the environment may delay `s` by holding `u`, up to a constraint
    let mut d = AigerDoc::new(Format::New);
    let u = d.add_input("u");
    let c = d.add_input("controllable_c");
    let s = d.add_latch("s");
    let w = d.add_latch("w");
    let n = d.aig.and(c, !u);
    d.set_next(s, n);
    d.set_next(w, u);
    let twice = d.aig.and(u, w);
    d.constraints.push(Signal::new(!twice, None));
    d.justice.push(Justice { lits: vec![s], name: None });
    docs.push(d);
    let mut rng = StdRng::seed_from_u64(77);
    while docs.len() < 25 {
        let mut shape = Shape::random(&mut rng, 5);
        shape.justice = true;
        docs.push(random_game(&mut rng, shape));
    }
    docs
}

