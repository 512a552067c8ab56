//! Symbolic solving of the synthesis game and strategy extraction.
//!
//! The system wins a play if `bad` never holds before the first step where
//! `inv` fails, and, if `inv` holds forever, `just` holds infinitely often.
//! The environment picks the uncontrollable inputs first; the system then
//! picks the controllable ones knowing them.

use std::collections::HashMap;

use thiserror::Error;

use crate::aig::{AigerDoc, Format, Input, Latch, Lit, Node};
use crate::bdd::{Bdd, Var};
use crate::symbolic::SymbolicDoc;
use crate::transforms::{single_justice, TransformError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error(transparent)]
    Justice(#[from] TransformError),
    #[error("the initial state is not winning")]
    Unrealizable,
}

pub struct Game {
    /// The document the game was built from, with a delay latch added if
    /// the justice signal read inputs.
    pub doc: AigerDoc,
    pub sym: SymbolicDoc,
    pub bad: Bdd,
    pub inv: Bdd,
    pub just: Bdd,
}

/// Result of [`Game::solve`].
pub struct Solution {
    pub winning: Bdd,
    /// Iterates `Y_0 = ∅ ⊆ Y_1 ⊆ … ⊆ Y_m = winning` of the last inner
    /// fixpoint: from `Y_{i+1}` the system can force a visit to
    /// `just ∧ winning` or to `Y_i`.
    pub layers: Vec<Bdd>,
    pub realizable: bool,
}

/// One function over latches and uncontrollable inputs per controllable
/// input, in document order.
pub struct Strategy {
    pub winning: Bdd,
    pub functions: Vec<Bdd>,
}

fn reads_inputs(doc: &AigerDoc, l: Lit) -> bool {
    let mut stack = vec![l.var()];
    let mut seen = vec![false; doc.aig.num_nodes()];
    while let Some(v) = stack.pop() {
        if std::mem::replace(&mut seen[v as usize], true) {
            continue;
        }
        match doc.aig.node(v) {
            Node::Input => return true,
            Node::And(a, b) => {
                stack.push(a.var());
                stack.push(b.var());
            }
            _ => {}
        }
    }
    false
}

impl Game {
    /// Builds the game. A standard single-output document plays the safety
    /// game `G ¬(o_1 ∨ … ∨ o_n)`.
    pub fn build(doc: &AigerDoc) -> Result<Game, GameError> {
        let mut doc = doc.clone();
        let just_lit = match doc.justice.len() {
            0 => Lit::TRUE,
            _ => single_justice(&doc)?,
        };
        let just_lit = if reads_inputs(&doc, just_lit) {
            let name = doc.fresh_name("__just_delay");
            let d = doc.add_latch(name);
            doc.set_next(d, just_lit);
            doc.justice[0].lits[0] = d;
            d
        } else {
            just_lit
        };
        let mut sym = SymbolicDoc::new(&doc, true);
        let bad_lits: Vec<Lit> = match doc.format {
            Format::Old => doc.outputs.iter().map(|s| s.lit).collect(),
            Format::New => doc.bad.iter().map(|s| s.lit).collect(),
        };
        let bads: Vec<Bdd> = bad_lits.iter().map(|l| sym.lit(&doc, *l)).collect();
        let bad = sym.mgr.or_all(bads);
        let inv_lits: Vec<Lit> = doc.constraints.iter().map(|s| s.lit).collect();
        let invs: Vec<Bdd> = inv_lits.iter().map(|l| sym.lit(&doc, *l)).collect();
        let inv = sym.mgr.and_all(invs);
        let just = sym.lit(&doc, just_lit);
        Ok(Game {
            doc,
            sym,
            bad,
            inv,
            just,
        })
    }

    pub fn num_latches(&self) -> usize {
        self.sym.latch_vars.len()
    }

    /// States from which, for every uncontrollable input, some controllable
    /// input either violates `inv` now or avoids `bad` and moves into
    /// `target`.
    pub fn cpre(&mut self, target: Bdd) -> Bdd {
        let m = &mut self.sym;
        let next = m.successor(target);
        let nb = m.mgr.not(self.bad);
        let safe = m.mgr.and(nb, next);
        let ninv = m.mgr.not(self.inv);
        let step = m.mgr.or(ninv, safe);
        let some_c = m.mgr.exists(step, m.c_set);
        m.mgr.forall(some_c, m.u_set)
    }

    /// `W = νZ. μY. cpre((just ∧ Z) ∨ Y)`.
    pub fn solve(&mut self) -> Solution {
        let mut z = Bdd::TRUE;
        loop {
            let jz = self.sym.mgr.and(self.just, z);
            let mut layers = vec![Bdd::FALSE];
            let mut y = Bdd::FALSE;
            loop {
                let t = self.sym.mgr.or(jz, y);
                let y2 = self.cpre(t);
                if y2 == y {
                    break;
                }
                y = y2;
                layers.push(y);
            }
            if y == z {
                let realizable = self.sym.contains_initial(z);
                return Solution {
                    winning: z,
                    layers,
                    realizable,
                };
            }
            z = y;
        }
    }

    /// Move relation of the rank-decreasing strategy: outside the winning
    /// region anything goes.
    fn moves(&mut self, sol: &Solution) -> Bdd {
        let m = &mut self.sym;
        let jw = m.mgr.and(self.just, sol.winning);
        let mut progress = Bdd::FALSE;
        for w in sol.layers.windows(2) {
            let (lower, upper) = (w[0], w[1]);
            let nl = m.mgr.not(lower);
            let band = m.mgr.and(upper, nl);
            let goal = m.mgr.or(jw, lower);
            let goal_next = m.successor(goal);
            let here = m.mgr.and(band, goal_next);
            progress = m.mgr.or(progress, here);
        }
        let nb = m.mgr.not(self.bad);
        let safe = m.mgr.and(nb, progress);
        let ninv = m.mgr.not(self.inv);
        let r = m.mgr.or(ninv, safe);
        let outside = m.mgr.not(sol.winning);
        m.mgr.or(outside, r)
    }

    /// Determinizes the move relation one controllable input at a time, in
    /// document order: 1 if only 1 keeps the relation satisfiable, else 0.
    pub fn extract_strategy(&mut self, sol: &Solution) -> Result<Strategy, GameError> {
        if !sol.realizable {
            return Err(GameError::Unrealizable);
        }
        let mut r = self.moves(sol);
        let c_vars: Vec<Var> = self
            .sym
            .c_inputs
            .iter()
            .map(|&i| self.sym.input_vars[i])
            .collect();
        let mut functions = Vec::with_capacity(c_vars.len());
        for (k, &c) in c_vars.iter().enumerate() {
            let m = &mut self.sym;
            let rest = m.mgr.var_set(&c_vars[k + 1..]);
            let r1 = m.mgr.restrict(r, c, true);
            let r0 = m.mgr.restrict(r, c, false);
            let pos = m.mgr.exists(r1, rest);
            let neg = m.mgr.exists(r0, rest);
            let nneg = m.mgr.not(neg);
            let f = m.mgr.and(pos, nneg);
            let mut map = vec![None; m.mgr.num_vars() as usize];
            map[c.0 as usize] = Some(f);
            r = m.mgr.substitute(r, &map);
            functions.push(f);
        }
        Ok(Strategy {
            winning: sol.winning,
            functions,
        })
    }

    /// Replaces every controllable input by a multiplexer cone built from
    /// its strategy function. Latches and all other sections are kept.
    pub fn strategy_to_circuit(&self, s: &Strategy) -> AigerDoc {
        let doc = &self.doc;
        let mut out = AigerDoc::new(doc.format);
        out.comments = doc.comments.clone();
        let mut map: Vec<Option<Lit>> = vec![None; doc.aig.num_nodes()];
        map[0] = Some(Lit::FALSE);
        let mut var_lit: HashMap<Var, Lit> = HashMap::new();
        for (i, inp) in doc.inputs.iter().enumerate() {
            if inp.is_controllable() {
                continue;
            }
            let l = out.aig.new_input();
            out.inputs.push(Input {
                lit: l,
                name: inp.name.clone(),
            });
            map[inp.lit.var() as usize] = Some(l);
            var_lit.insert(self.sym.input_vars[i], l);
        }
        for (k, latch) in doc.latches.iter().enumerate() {
            let l = out.aig.new_latch();
            out.latches.push(Latch {
                lit: l,
                next: Lit::FALSE,
                name: latch.name.clone(),
            });
            map[latch.lit.var() as usize] = Some(l);
            var_lit.insert(self.sym.latch_vars[k], l);
        }
        let mut cones: HashMap<Bdd, Lit> = HashMap::new();
        for (&i, &f) in self.sym.c_inputs.iter().zip(&s.functions) {
            let l = self.cone(&mut out, &var_lit, &mut cones, f);
            map[doc.inputs[i].lit.var() as usize] = Some(l);
        }
        let tr = |map: &[Option<Lit>], l: Lit| {
            map[l.var() as usize]
                .expect("operand translated before use")
                .negate_if(l.is_negated())
        };
        for v in 0..doc.aig.num_nodes() as u32 {
            if let Node::And(a, b) = doc.aig.node(v) {
                let (x, y) = (tr(&map, a), tr(&map, b));
                map[v as usize] = Some(out.aig.and(x, y));
            }
        }
        for (o, l) in out.latches.iter_mut().zip(&doc.latches) {
            o.next = tr(&map, l.next);
        }
        let signals = |sigs: &[crate::aig::Signal]| -> Vec<crate::aig::Signal> {
            sigs.iter()
                .map(|s| crate::aig::Signal {
                    lit: tr(&map, s.lit),
                    name: s.name.clone(),
                })
                .collect()
        };
        out.outputs = signals(&doc.outputs);
        out.bad = signals(&doc.bad);
        out.constraints = signals(&doc.constraints);
        out.justice = doc
            .justice
            .iter()
            .map(|j| crate::aig::Justice {
                lits: j.lits.iter().map(|l| tr(&map, *l)).collect(),
                name: j.name.clone(),
            })
            .collect();
        out
    }

    /// Shannon expansion of `f` along its BDD: one multiplexer per node.
    fn cone(
        &self,
        out: &mut AigerDoc,
        var_lit: &HashMap<Var, Lit>,
        cones: &mut HashMap<Bdd, Lit>,
        f: Bdd,
    ) -> Lit {
        if f.is_const() {
            return Lit::constant(f.is_true());
        }
        if let Some(&l) = cones.get(&f) {
            return l;
        }
        let m = &self.sym.mgr;
        let v = m.top_var(f).expect("non-constant");
        let (lo, hi) = (m.low(f), m.high(f));
        let lo = self.cone(out, var_lit, cones, lo);
        let hi = self.cone(out, var_lit, cones, hi);
        let sel = *var_lit
            .get(&v)
            .expect("strategy functions depend on latches and uncontrollable inputs only");
        let l = out.aig.ite(sel, hi, lo);
        cones.insert(f, l);
        l
    }
}
