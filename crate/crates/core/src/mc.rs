//! Model checking of AIGER documents, and an explicit-state game solver
//! used as a reference for the symbolic one.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::aig::{lit_value, AigerDoc, Format, Lit};
use crate::bdd::Bdd;
use crate::symbolic::SymbolicDoc;
use crate::transforms::{single_justice, TransformError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McError {
    #[error(transparent)]
    Justice(#[from] TransformError),
    #[error("state space too large for explicit exploration: {0}")]
    TooLarge(String),
    #[error("the justice signal reads inputs; explicit solving needs a state predicate")]
    InputDependentJustice,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub inputs: Vec<bool>,
    pub latches: Vec<bool>,
}

/// A finite trace, or a lasso when `loop_start` is set: the successor of
/// the last step is step `loop_start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub input_names: Vec<String>,
    pub latch_names: Vec<String>,
    pub steps: Vec<Step>,
    pub loop_start: Option<usize>,
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "inputs: {} | latches: {}",
            self.input_names.join(" "),
            self.latch_names.join(" ")
        )?;
        for s in &self.steps {
            writeln!(f, "{} {}", bits(&s.inputs), bits(&s.latches))?;
        }
        if let Some(l) = self.loop_start {
            writeln!(f, "loop {l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(Trace),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

fn names(doc: &AigerDoc) -> (Vec<String>, Vec<String>) {
    let n = |o: &Option<String>, p: char, i: usize| o.clone().unwrap_or_else(|| format!("{p}{i}"));
    (
        doc.inputs.iter().enumerate().map(|(i, x)| n(&x.name, 'i', i)).collect(),
        doc.latches.iter().enumerate().map(|(i, x)| n(&x.name, 'l', i)).collect(),
    )
}

fn trace(doc: &AigerDoc, steps: Vec<Step>, loop_start: Option<usize>) -> Trace {
    let (input_names, latch_names) = names(doc);
    Trace {
        input_names,
        latch_names,
        steps,
        loop_start,
    }
}

fn bad_lits(doc: &AigerDoc) -> Vec<Lit> {
    match doc.format {
        Format::Old => doc.outputs.iter().map(|s| s.lit).collect(),
        Format::New => doc.bad.iter().map(|s| s.lit).collect(),
    }
}

struct Checker<'d> {
    doc: &'d AigerDoc,
    sym: SymbolicDoc,
    inv: Bdd,
}

impl<'d> Checker<'d> {
    fn new(doc: &'d AigerDoc) -> Self {
        let mut sym = SymbolicDoc::new(doc, false);
        let lits: Vec<Lit> = doc.constraints.iter().map(|s| s.lit).collect();
        let invs: Vec<Bdd> = lits.iter().map(|l| sym.lit(doc, *l)).collect();
        let inv = sym.mgr.and_all(invs);
        Checker { doc, sym, inv }
    }

    fn lit(&mut self, l: Lit) -> Bdd {
        self.sym.lit(self.doc, l)
    }

    /// `∃I. guard ∧ target(δ)`
    fn pre(&mut self, guard: Bdd, target: Bdd) -> Bdd {
        let next = self.sym.successor(target);
        let both = self.sym.mgr.and(guard, next);
        self.sym.mgr.exists(both, self.sym.input_set)
    }

    fn next_state(&self, state: &[bool], inputs: &[bool]) -> Vec<bool> {
        self.doc.next_latches(&self.doc.eval(inputs, state))
    }

    /// Index of the first ring containing `state`.
    fn ring_of(&self, rings: &[Bdd], state: &[bool]) -> usize {
        rings
            .iter()
            .position(|r| self.sym.eval(*r, state, &[]))
            .expect("state lies in some ring")
    }

    /// Walks down the rings from `state` (excluding the final target step):
    /// each step takes an input satisfying `guard ∧ lower_ring(δ)`.
    fn descend(&mut self, rings: &[Bdd], guard: Bdd, mut state: Vec<bool>, steps: &mut Vec<Step>) -> Vec<bool> {
        loop {
            let r = self.ring_of(rings, &state);
            if r == 0 {
                return state;
            }
            let lower = rings[r - 1];
            let next = self.sym.successor(lower);
            let step = self.sym.mgr.and(guard, next);
            let inputs = self
                .sym
                .pick_inputs(step, &state)
                .expect("ring membership guarantees a move");
            let succ = self.next_state(&state, &inputs);
            steps.push(Step {
                inputs,
                latches: state,
            });
            state = succ;
        }
    }

    /// Backward rings: `rings[0] = base`, `rings[j+1] = rings[j] ∨ pre(rings[j])`.
    /// Stops early once the initial state is covered.
    fn rings(&mut self, guard: Bdd, base: Bdd) -> Vec<Bdd> {
        let mut rings = vec![base];
        loop {
            let last = *rings.last().unwrap();
            if self.sym.contains_initial(last) {
                return rings;
            }
            let p = self.pre(guard, last);
            let next = self.sym.mgr.or(last, p);
            if next == last {
                return rings;
            }
            rings.push(next);
        }
    }

    /// Deterministic walk inside `region`, each step satisfying `step_ok`
    /// and staying in `region`, until a state repeats. `steps` holds the
    /// stem so far; returns the loop start.
    fn close_loop(&mut self, step_ok: Bdd, mut state: Vec<bool>, steps: &mut Vec<Step>) -> usize {
        let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
        loop {
            if let Some(&i) = seen.get(&state) {
                return i;
            }
            seen.insert(state.clone(), steps.len());
            let inputs = self
                .sym
                .pick_inputs(step_ok, &state)
                .expect("region is closed under some move");
            let succ = self.next_state(&state, &inputs);
            steps.push(Step {
                inputs,
                latches: state,
            });
            state = succ;
        }
    }
}

/// Checks that `bad` never holds while all constraints have held so far
/// (constraints included at the current step). Inputs are universally
/// quantified.
pub fn check_safety(doc: &AigerDoc) -> Verdict {
    let mut c = Checker::new(doc);
    let bads: Vec<Bdd> = bad_lits(doc).iter().map(|l| c.lit(*l)).collect();
    let bad = c.sym.mgr.or_all(bads);
    let inv = c.inv;
    let hit = c.sym.mgr.and(inv, bad);
    let base = c.sym.mgr.exists(hit, c.sym.input_set);
    let rings = c.rings(inv, base);
    if !c.sym.contains_initial(*rings.last().unwrap()) {
        return Verdict::Holds;
    }
    let mut steps = Vec::new();
    let init = vec![false; doc.latches.len()];
    let last = c.descend(&rings, inv, init, &mut steps);
    let inputs = c.sym.pick_inputs(hit, &last).expect("base ring state can hit bad");
    steps.push(Step {
        inputs,
        latches: last,
    });
    Verdict::Violated(trace(doc, steps, None))
}

/// Checks `G inv → GF just` over all input sequences; a violation is a lasso
/// along which the constraints always hold and `just` eventually stops.
pub fn check_justice_universal(doc: &AigerDoc) -> Result<Verdict, McError> {
    let just_lit = match doc.justice.len() {
        0 => return Ok(Verdict::Holds),
        _ => single_justice(doc)?,
    };
    let mut c = Checker::new(doc);
    let just = c.lit(just_lit);
    let inv = c.inv;
    let nj = c.sym.mgr.not(just);
    let guard = c.sym.mgr.and(inv, nj);
    // states with an infinite path on which inv ∧ ¬just always holds
    let mut s = Bdd::TRUE;
    loop {
        let p = c.pre(guard, s);
        if p == s {
            break;
        }
        s = p;
    }
    if s.is_false() {
        return Ok(Verdict::Holds);
    }
    let rings = c.rings(inv, s);
    if !c.sym.contains_initial(*rings.last().unwrap()) {
        return Ok(Verdict::Holds);
    }
    let mut steps = Vec::new();
    let init = vec![false; doc.latches.len()];
    let entry = c.descend(&rings, inv, init, &mut steps);
    let stay = c.sym.successor(s);
    let step_ok = c.sym.mgr.and(guard, stay);
    let l = c.close_loop(step_ok, entry, &mut steps);
    Ok(Verdict::Violated(trace(doc, steps, Some(l))))
}

/// Searches for a reachable lasso along which the constraints always hold
/// and whose loop visits `just` (standard AIGER justice semantics).
pub fn find_fair_trace(doc: &AigerDoc) -> Result<Option<Trace>, McError> {
    let just_lit = match doc.justice.len() {
        0 => Lit::TRUE,
        _ => single_justice(doc)?,
    };
    let mut c = Checker::new(doc);
    let just = c.lit(just_lit);
    let inv = c.inv;
    let fair_step = c.sym.mgr.and(inv, just);
    // νZ. μY. pre(inv ∧ just, Z) ∨ pre(inv, Y)
    let mut z = Bdd::TRUE;
    let layers = loop {
        let hit = c.pre(fair_step, z);
        let mut layers = vec![hit];
        let mut y = hit;
        loop {
            let p = c.pre(inv, y);
            let next = c.sym.mgr.or(y, p);
            if next == y {
                break;
            }
            y = next;
            layers.push(y);
        }
        if y == z {
            break layers;
        }
        z = y;
    };
    if !c.sym.contains_initial(z) {
        return Ok(None);
    }
    // walk: in layer 0 take a fair step back into z, elsewhere descend
    let mut steps = Vec::new();
    let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut state = vec![false; doc.latches.len()];
    let z_next = c.sym.successor(z);
    let fair_move = c.sym.mgr.and(fair_step, z_next);
    let loop_start = loop {
        if let Some(&i) = seen.get(&state) {
            break i;
        }
        seen.insert(state.clone(), steps.len());
        let r = c.ring_of(&layers, &state);
        let guard = if r == 0 {
            fair_move
        } else {
            let lower = c.sym.successor(layers[r - 1]);
            c.sym.mgr.and(inv, lower)
        };
        let inputs = c.sym.pick_inputs(guard, &state).expect("layer guarantees a move");
        let succ = c.next_state(&state, &inputs);
        steps.push(Step {
            inputs,
            latches: state,
        });
        state = succ;
    };
    Ok(Some(trace(doc, steps, Some(loop_start))))
}

/// Explicitly enumerated game arena. States are latch vectors encoded as
/// integers (latch `i` is bit `i`).
pub struct ExplicitArena {
    pub states: Vec<u64>,
    index: HashMap<u64, usize>,
    /// `moves[s][u][c] = (bad, inv, successor index)`.
    moves: Vec<Vec<Vec<(bool, bool, usize)>>>,
    just: Vec<bool>,
}

fn decode(code: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| code >> i & 1 == 1).collect()
}

fn encode(v: &[bool]) -> u64 {
    v.iter().enumerate().map(|(i, b)| (*b as u64) << i).sum()
}

impl ExplicitArena {
    /// Enumerates all states, or only those reachable from the initial
    /// state when `reachable_only` is set.
    pub fn build(doc: &AigerDoc, reachable_only: bool, max_states: usize) -> Result<ExplicitArena, McError> {
        let nl = doc.latches.len();
        let u: Vec<usize> = (0..doc.inputs.len()).filter(|&i| !doc.inputs[i].is_controllable()).collect();
        let c: Vec<usize> = (0..doc.inputs.len()).filter(|&i| doc.inputs[i].is_controllable()).collect();
        if u.len() + c.len() > 16 || nl > 63 {
            return Err(McError::TooLarge(format!("{} inputs, {nl} latches", u.len() + c.len())));
        }
        if !reachable_only && (nl > 20 || 1usize << nl > max_states) {
            return Err(McError::TooLarge(format!("2^{nl} states")));
        }
        let bads = bad_lits(doc);
        let just_lit = match doc.justice.len() {
            0 => Lit::TRUE,
            _ => single_justice(doc)?,
        };
        let mut arena = ExplicitArena {
            states: Vec::new(),
            index: HashMap::new(),
            moves: Vec::new(),
            just: Vec::new(),
        };
        let mut queue: Vec<u64> = if reachable_only {
            vec![0]
        } else {
            (0..1u64 << nl).collect()
        };
        for &s in &queue {
            arena.index.insert(s, arena.states.len());
            arena.states.push(s);
        }
        let mut pending: Vec<Vec<Vec<(bool, bool, u64)>>> = Vec::new();
        let mut k = 0;
        while k < queue.len() {
            let s = queue[k];
            k += 1;
            let latches = decode(s, nl);
            let mut per_u = Vec::with_capacity(1 << u.len());
            let mut just_values = Vec::new();
            for um in 0..1u32 << u.len() {
                let mut per_c = Vec::with_capacity(1 << c.len());
                for cm in 0..1u32 << c.len() {
                    let mut inputs = vec![false; doc.inputs.len()];
                    for (j, &i) in u.iter().enumerate() {
                        inputs[i] = um >> j & 1 == 1;
                    }
                    for (j, &i) in c.iter().enumerate() {
                        inputs[i] = cm >> j & 1 == 1;
                    }
                    let vals = doc.eval(&inputs, &latches);
                    let bad = bads.iter().any(|l| lit_value(&vals, *l));
                    let inv = doc.constraints.iter().all(|x| lit_value(&vals, x.lit));
                    just_values.push(lit_value(&vals, just_lit));
                    let succ = encode(&doc.next_latches(&vals));
                    if !arena.index.contains_key(&succ) {
                        if arena.states.len() >= max_states {
                            return Err(McError::TooLarge(format!("more than {max_states} reachable states")));
                        }
                        arena.index.insert(succ, arena.states.len());
                        arena.states.push(succ);
                        queue.push(succ);
                    }
                    per_c.push((bad, inv, succ));
                }
                per_u.push(per_c);
            }
            if just_values.iter().any(|j| *j != just_values[0]) {
                return Err(McError::InputDependentJustice);
            }
            arena.just.push(just_values[0]);
            pending.push(per_u);
        }
        // queue order equals index order
        arena.moves = pending
            .into_iter()
            .map(|per_u| {
                per_u
                    .into_iter()
                    .map(|per_c| {
                        per_c
                            .into_iter()
                            .map(|(b, i, s)| (b, i, arena.index[&s]))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(arena)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Winning states by direct fixpoint iteration.
    pub fn solve(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut z = vec![true; n];
        loop {
            let mut y = vec![false; n];
            loop {
                let next: Vec<bool> = (0..n)
                    .map(|s| {
                        self.moves[s].iter().all(|per_c| {
                            per_c.iter().any(|&(bad, inv, t)| {
                                !inv || (!bad && ((self.just[t] && z[t]) || y[t]))
                            })
                        })
                    })
                    .collect();
                if next == y {
                    break;
                }
                y = next;
            }
            if y == z {
                return z;
            }
            z = y;
        }
    }

    pub fn is_winning_initial(&self, winning: &[bool]) -> bool {
        winning[self.index[&0]]
    }

    pub fn state_index(&self, code: u64) -> Option<usize> {
        self.index.get(&code).copied()
    }
}

/// Winning region over the full state space, indexed by state code.
pub fn solve_explicit(doc: &AigerDoc) -> Result<Vec<bool>, McError> {
    let arena = ExplicitArena::build(doc, false, 1 << 12)?;
    Ok(arena.solve())
}

/// Realizability decided on the reachable part of the state space only.
pub fn solve_explicit_reachable(doc: &AigerDoc, max_states: usize) -> Result<bool, McError> {
    let arena = ExplicitArena::build(doc, true, max_states)?;
    let w = arena.solve();
    Ok(arena.is_winning_initial(&w))
}
