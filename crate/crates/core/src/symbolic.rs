//! Decision-diagram view of an AIGER document, shared by the game solver and
//! the model checker.
//!
//! Variable order: latches in document order, then uncontrollable inputs,
//! then controllable inputs. Successor states are obtained by composing
//! with the next-state functions, so no primed copies are allocated.

use crate::aig::{Aig, AigerDoc, Lit, Node};
use crate::bdd::{Bdd, BddManager, Var, VarSet};

/// BDD of `l` given BDDs for the leaves (indexed by AIG variable).
pub fn from_aig(mgr: &mut BddManager, aig: &Aig, leaves: &[Option<Bdd>], l: Lit) -> Bdd {
    let mut memo: Vec<Option<Bdd>> = vec![None; aig.num_nodes()];
    memo[0] = Some(Bdd::FALSE);
    lit_bdd(mgr, aig, leaves, &mut memo, l)
}

fn lit_bdd(
    mgr: &mut BddManager,
    aig: &Aig,
    leaves: &[Option<Bdd>],
    memo: &mut [Option<Bdd>],
    l: Lit,
) -> Bdd {
    // mark the cone, then build bottom-up in index (topological) order
    let mut cone = Vec::new();
    let mut stack = vec![l.var()];
    let mut seen = vec![false; aig.num_nodes()];
    while let Some(v) = stack.pop() {
        if seen[v as usize] || memo[v as usize].is_some() {
            continue;
        }
        seen[v as usize] = true;
        cone.push(v);
        if let Node::And(a, b) = aig.node(v) {
            stack.push(a.var());
            stack.push(b.var());
        }
    }
    cone.sort_unstable();
    for v in cone {
        let f = match aig.node(v) {
            Node::False => Bdd::FALSE,
            Node::Input | Node::Latch => {
                leaves[v as usize].unwrap_or_else(|| panic!("AIG leaf {v} has no variable"))
            }
            Node::And(a, b) => {
                let fa = signed(mgr, memo[a.var() as usize].unwrap(), a);
                let fb = signed(mgr, memo[b.var() as usize].unwrap(), b);
                mgr.and(fa, fb)
            }
        };
        memo[v as usize] = Some(f);
    }
    let f = memo[l.var() as usize].unwrap();
    signed(mgr, f, l)
}

fn signed(mgr: &mut BddManager, f: Bdd, l: Lit) -> Bdd {
    if l.is_negated() {
        mgr.not(f)
    } else {
        f
    }
}

pub struct SymbolicDoc {
    pub mgr: BddManager,
    pub latch_vars: Vec<Var>,
    /// Per document input, in document order.
    pub input_vars: Vec<Var>,
    /// Document indices of uncontrollable and controllable inputs.
    pub u_inputs: Vec<usize>,
    pub c_inputs: Vec<usize>,
    pub delta: Vec<Bdd>,
    delta_map: Vec<Option<Bdd>>,
    leaves: Vec<Option<Bdd>>,
    memo: Vec<Option<Bdd>>,
    pub u_set: VarSet,
    pub c_set: VarSet,
    pub input_set: VarSet,
    pub latch_set: VarSet,
}

impl SymbolicDoc {
    /// With `split_controllable` unset every input counts as uncontrollable.
    pub fn new(doc: &AigerDoc, split_controllable: bool) -> SymbolicDoc {
        let mut mgr = BddManager::new();
        let latch_vars: Vec<Var> = doc.latches.iter().map(|_| mgr.new_var()).collect();
        let (c_inputs, u_inputs): (Vec<usize>, Vec<usize>) =
            (0..doc.inputs.len()).partition(|&i| split_controllable && doc.inputs[i].is_controllable());
        let mut input_vars = vec![Var(0); doc.inputs.len()];
        for &i in u_inputs.iter().chain(&c_inputs) {
            input_vars[i] = mgr.new_var();
        }
        let mut leaves = vec![None; doc.aig.num_nodes()];
        for (l, v) in doc.latches.iter().zip(&latch_vars) {
            leaves[l.lit.var() as usize] = Some(mgr.var(*v));
        }
        for (inp, v) in doc.inputs.iter().zip(&input_vars) {
            leaves[inp.lit.var() as usize] = Some(mgr.var(*v));
        }
        let u_vars: Vec<Var> = u_inputs.iter().map(|&i| input_vars[i]).collect();
        let c_vars: Vec<Var> = c_inputs.iter().map(|&i| input_vars[i]).collect();
        let u_set = mgr.var_set(&u_vars);
        let c_set = mgr.var_set(&c_vars);
        let input_set = mgr.var_set(&input_vars);
        let latch_set = mgr.var_set(&latch_vars);
        let mut memo = vec![None; doc.aig.num_nodes()];
        memo[0] = Some(Bdd::FALSE);
        let mut s = SymbolicDoc {
            mgr,
            latch_vars,
            input_vars,
            u_inputs,
            c_inputs,
            delta: Vec::new(),
            delta_map: Vec::new(),
            leaves,
            memo,
            u_set,
            c_set,
            input_set,
            latch_set,
        };
        s.delta = doc.latches.iter().map(|l| s.lit(doc, l.next)).collect();
        let mut map = vec![None; s.mgr.num_vars() as usize];
        for (v, d) in s.latch_vars.iter().zip(&s.delta) {
            map[v.0 as usize] = Some(*d);
        }
        s.delta_map = map;
        s
    }

    pub fn lit(&mut self, doc: &AigerDoc, l: Lit) -> Bdd {
        lit_bdd(&mut self.mgr, &doc.aig, &self.leaves, &mut self.memo, l)
    }

    /// `target` evaluated in the successor state: a function of the current
    /// latches and inputs.
    pub fn successor(&mut self, target: Bdd) -> Bdd {
        self.mgr.substitute(target, &self.delta_map)
    }

    /// The all-zero initial state.
    pub fn initial(&mut self) -> Bdd {
        let cube: Vec<(Var, bool)> = self.latch_vars.iter().map(|v| (*v, false)).collect();
        self.mgr.cube(&cube)
    }

    pub fn contains_initial(&self, f: Bdd) -> bool {
        self.mgr.eval(f, |_| false)
    }

    /// Evaluates `f` at a concrete state and input vector (document order).
    pub fn eval(&self, f: Bdd, state: &[bool], inputs: &[bool]) -> bool {
        let mut vals = vec![false; self.mgr.num_vars() as usize];
        for (v, b) in self.latch_vars.iter().zip(state) {
            vals[v.0 as usize] = *b;
        }
        for (v, b) in self.input_vars.iter().zip(inputs) {
            vals[v.0 as usize] = *b;
        }
        self.mgr.eval(f, |v| vals[v.0 as usize])
    }

    /// Cofactor of `f` at a concrete state.
    pub fn at_state(&mut self, f: Bdd, state: &[bool]) -> Bdd {
        let mut map = vec![None; self.mgr.num_vars() as usize];
        for (v, b) in self.latch_vars.iter().zip(state) {
            map[v.0 as usize] = Some(self.mgr.constant(*b));
        }
        self.mgr.substitute(f, &map)
    }

    /// A deterministic input vector (document order) satisfying `f` at
    /// `state`; unconstrained inputs are 0.
    pub fn pick_inputs(&mut self, f: Bdd, state: &[bool]) -> Option<Vec<bool>> {
        let g = self.at_state(f, state);
        let path = self.mgr.pick_path(g)?;
        let mut inputs = vec![false; self.input_vars.len()];
        for (v, b) in path {
            if let Some(i) = self.input_vars.iter().position(|x| *x == v) {
                inputs[i] = b;
            }
        }
        Some(inputs)
    }
}
