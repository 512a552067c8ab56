//! Compilation of a flat model and its monitors into a game circuit.
//!
//! Latches holding a value that starts at 1 are stored inverted, so every
//! AIGER latch resets to 0.

use std::collections::HashMap;

use thiserror::Error;

use super::{AigerDoc, Format, Justice, Lit, Signal, CONTROLLABLE_PREFIX};
use crate::automata::{Label, Monitor};
use crate::smv::{BoolExpr, FlatModel};

/// Name of the single justice signal.
pub const JUST_NAME: &str = "just";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("monitor `{monitor}` reads `{name}`, which the model does not define")]
    UnresolvedProposition { monitor: String, name: String },
}

/// Bits of a value register: (latch literal, literal reading the value).
type Register = Vec<(Lit, Lit)>;

struct Builder {
    doc: AigerDoc,
    signals: HashMap<String, Lit>,
    memo: HashMap<*const BoolExpr, Lit>,
}

impl Builder {
    fn expr(&mut self, e: &BoolExpr) -> Lit {
        let key = e as *const BoolExpr;
        if let Some(&l) = self.memo.get(&key) {
            return l;
        }
        let l = match e {
            BoolExpr::Const(b) => Lit::constant(*b),
            BoolExpr::Sig(n) => *self
                .signals
                .get(&**n)
                .unwrap_or_else(|| panic!("flat model reads undeclared `{n}`")),
            BoolExpr::Not(a) => !self.expr(a),
            BoolExpr::And(a, b) => {
                let (x, y) = (self.expr(a), self.expr(b));
                self.doc.aig.and(x, y)
            }
            BoolExpr::Or(a, b) => {
                let (x, y) = (self.expr(a), self.expr(b));
                self.doc.aig.or(x, y)
            }
            BoolExpr::Xor(a, b) => {
                let (x, y) = (self.expr(a), self.expr(b));
                self.doc.aig.xor(x, y)
            }
            BoolExpr::Ite(c, t, f) => {
                let (x, y, z) = (self.expr(c), self.expr(t), self.expr(f));
                self.doc.aig.ite(x, y, z)
            }
        };
        self.memo.insert(key, l);
        l
    }

    fn register(&mut self, base: &str, bits: usize, init: usize) -> Register {
        (0..bits)
            .map(|i| {
                let name = self.doc.fresh_name(&format!("{base}.__bit{i}"));
                let reg = self.doc.add_latch(name);
                (reg, reg.negate_if(init >> i & 1 == 1))
            })
            .collect()
    }

    fn set_register(&mut self, reg: &Register, init: usize, next: &[Lit]) {
        for (i, ((latch, _), n)) in reg.iter().zip(next).enumerate() {
            self.doc.set_next(*latch, n.negate_if(init >> i & 1 == 1));
        }
    }

    /// Literal for "the register holds `code`".
    fn equals(&mut self, reg: &Register, code: usize) -> Lit {
        let lits: Vec<Lit> = reg
            .iter()
            .enumerate()
            .map(|(i, (_, v))| v.negate_if(code >> i & 1 == 0))
            .collect();
        self.doc.aig.and_all(lits)
    }

    fn label(&mut self, l: &Label) -> Lit {
        let lits: Vec<Lit> = l
            .literals()
            .iter()
            .map(|(p, pos)| self.signals[p.as_str()].negate_if(!pos))
            .collect();
        self.doc.aig.and_all(lits)
    }

    /// Wires a monitor; returns (bad, fair) literals.
    fn monitor(&mut self, m: &Monitor) -> Result<(Lit, Lit), CompileError> {
        if let Some(p) = m.props.iter().find(|p| !self.signals.contains_key(p.as_str())) {
            return Err(CompileError::UnresolvedProposition {
                monitor: m.name.clone(),
                name: p.clone(),
            });
        }
        let bits = m.state_bits();
        let reg = self.register(&format!("{}.state", m.name), bits, m.init);
        let at: Vec<Lit> = (0..m.num_states()).map(|s| self.equals(&reg, s)).collect();
        let mut next = vec![Lit::FALSE; bits];
        for (s, out) in m.transitions.iter().enumerate() {
            for (label, d) in out {
                let l = self.label(label);
                let taken = self.doc.aig.and(at[s], l);
                for (i, n) in next.iter_mut().enumerate() {
                    if d >> i & 1 == 1 {
                        *n = self.doc.aig.or(*n, taken);
                    }
                }
            }
        }
        self.set_register(&reg, m.init, &next);
        let pick = |flags: &[bool]| -> Vec<Lit> {
            flags
                .iter()
                .zip(&at)
                .filter(|(f, _)| **f)
                .map(|(_, l)| *l)
                .collect()
        };
        let bad = self.doc.aig.or_all(pick(&m.bad));
        let fair = self.doc.aig.or_all(pick(&m.fair));
        Ok((bad, fair))
    }

    /// Round-robin counter over several fairness signals: waits for
    /// `fairs[c]`, then advances; `just` holds when the last one is seen.
    fn round_robin(&mut self, fairs: &[Lit]) -> Lit {
        let n = fairs.len();
        let bits = (usize::BITS - (n - 1).leading_zeros()) as usize;
        let name = self.doc.fresh_name("__gba");
        let reg = self.register(&name, bits, 0);
        let at: Vec<Lit> = (0..n).map(|c| self.equals(&reg, c)).collect();
        let mut next = vec![Lit::FALSE; bits];
        for c in 0..n {
            let advance = self.doc.aig.and(at[c], fairs[c]);
            let stay = self.doc.aig.and(at[c], !fairs[c]);
            for (i, b) in next.iter_mut().enumerate() {
                let mut x = *b;
                if (c + 1) % n >> i & 1 == 1 {
                    x = self.doc.aig.or(x, advance);
                }
                if c >> i & 1 == 1 {
                    x = self.doc.aig.or(x, stay);
                }
                *b = x;
            }
        }
        self.set_register(&reg, 0, &next);
        self.doc.aig.and(at[n - 1], fairs[n - 1])
    }
}

/// Builds the game circuit: model inputs and latches, one latch register
/// per monitor, a bad literal per guarantee monitor, an invariant
/// constraint per assumption monitor and at most one justice signal.
pub fn compile(
    model: &FlatModel,
    sys: &[Monitor],
    env: &[Monitor],
) -> Result<AigerDoc, CompileError> {
    let mut b = Builder {
        doc: AigerDoc::new(Format::New),
        signals: HashMap::new(),
        memo: HashMap::new(),
    };
    for n in &model.inputs_u {
        let l = b.doc.add_input(n.clone());
        b.signals.insert(n.clone(), l);
    }
    for n in &model.inputs_c {
        let l = b.doc.add_input(format!("{CONTROLLABLE_PREFIX}{n}"));
        b.signals.insert(n.clone(), l);
    }
    let mut regs = Vec::with_capacity(model.latches.len());
    for l in &model.latches {
        let reg = b.doc.add_latch(l.name.clone());
        b.signals.insert(l.name.clone(), reg.negate_if(l.init));
        regs.push(reg);
    }
    for (name, e) in &model.defines {
        let l = b.expr(e);
        b.signals.insert(name.clone(), l);
    }
    for (l, reg) in model.latches.iter().zip(regs) {
        let n = b.expr(&l.next);
        b.doc.set_next(reg, n.negate_if(l.init));
    }

    let mut fairs = Vec::new();
    for m in sys {
        let (bad, fair) = b.monitor(m)?;
        b.doc.bad.push(Signal::new(bad, Some(&format!("{}.bad", m.name))));
        if !m.fair_is_trivial() {
            fairs.push(fair);
        }
    }
    for m in env {
        let (bad, _) = b.monitor(m)?;
        b.doc
            .constraints
            .push(Signal::new(!bad, Some(&format!("{}.ok", m.name))));
    }
    let just = match fairs.len() {
        0 => None,
        1 => Some(fairs[0]),
        _ => Some(b.round_robin(&fairs)),
    };
    if let Some(j) = just {
        b.doc.justice.push(Justice {
            lits: vec![j],
            name: Some(JUST_NAME.into()),
        });
    }
    Ok(b.doc)
}
