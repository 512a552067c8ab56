//! Boolean encoding of a resolved design.
//!
//! A scalar over `n` values occupies `ceil(log2 n)` bits named
//! `v.__bit<i>`, least significant first; value `j` of the type (in
//! declaration order, ranges offset by `lo`) has code `j`. Booleans keep
//! their own name.

use std::collections::HashMap;
use std::rc::Rc;

use indexmap::IndexMap;

use super::expr::{BoolExpr, ExprRef};
use super::interp::{compare, eval_with};
use super::resolve::{CmpOp, Design, LogicOp, ScalarType, TExpr, TKind, Ty, Value, VarRole};
use super::SmvError;

pub fn bit_name(var: &str, i: usize) -> String {
    format!("{var}.__bit{i}")
}

fn bits_for(cardinality: u64) -> usize {
    if cardinality <= 1 {
        0
    } else {
        (64 - (cardinality - 1).leading_zeros()) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLatch {
    pub name: String,
    pub init: bool,
    pub next: ExprRef,
}

/// How one design variable maps onto boolean signals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub ty: ScalarType,
    pub bits: Vec<String>,
}

impl Encoding {
    /// Bit values (in `bits` order) encoding `v`.
    pub fn encode(&self, v: &Value) -> Option<Vec<bool>> {
        let code = self.ty.code_of(v)?;
        Some((0..self.bits.len()).map(|i| code >> i & 1 == 1).collect())
    }
}

/// Boolean-only transition system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatModel {
    pub inputs_u: Vec<String>,
    pub inputs_c: Vec<String>,
    pub latches: Vec<FlatLatch>,
    /// Boolean defines in dependency order.
    pub defines: IndexMap<String, ExprRef>,
    pub encodings: IndexMap<String, Encoding>,
}

impl FlatModel {
    /// Every name read by an expression must be an input, a latch, or a
    /// define appearing earlier in `defines`.
    pub fn check_names(&self) -> Result<(), String> {
        let mut known: std::collections::HashSet<&str> = self
            .inputs_u
            .iter()
            .chain(&self.inputs_c)
            .chain(self.latches.iter().map(|l| &l.name))
            .map(String::as_str)
            .collect();
        let check = |e: &ExprRef, known: &std::collections::HashSet<&str>, what: &str| {
            match e.free_names().into_iter().find(|n| !known.contains(&**n)) {
                Some(n) => Err(format!("{what} reads undeclared `{n}`")),
                None => Ok(()),
            }
        };
        for (name, e) in &self.defines {
            check(e, &known, name)?;
            known.insert(name);
        }
        for l in &self.latches {
            check(&l.next, &known, &l.name)?;
        }
        Ok(())
    }

    /// Evaluates all defines and next-state values for one step.
    /// Returns (define values, next latch values).
    pub fn step(&self, latches: &[bool], inputs_u: &[bool], inputs_c: &[bool]) -> (Vec<bool>, Vec<bool>) {
        let mut env: HashMap<&str, bool> = HashMap::new();
        for (n, v) in self.inputs_u.iter().zip(inputs_u) {
            env.insert(n, *v);
        }
        for (n, v) in self.inputs_c.iter().zip(inputs_c) {
            env.insert(n, *v);
        }
        for (l, v) in self.latches.iter().zip(latches) {
            env.insert(&l.name, *v);
        }
        let mut defs = Vec::with_capacity(self.defines.len());
        for (name, e) in &self.defines {
            let v = e.eval(&|n| env[n]);
            env.insert(name, v);
            defs.push(v);
        }
        let next = self.latches.iter().map(|l| l.next.eval(&|n| env[n])).collect();
        (defs, next)
    }

    pub fn initial_latches(&self) -> Vec<bool> {
        self.latches.iter().map(|l| l.init).collect()
    }
}

/// Mutually exclusive, exhaustive conditions, one per possible value.
type Table = Vec<(Value, ExprRef)>;

enum Enc {
    Bool(ExprRef),
    Scalar(Table),
}

struct Flattener<'d> {
    design: &'d Design,
    var_enc: Vec<Enc>,
    define_enc: Vec<Option<Rc<Enc>>>,
    defines: IndexMap<String, ExprRef>,
}

/// Flattens a resolved design to a boolean model.
pub fn flatten(design: &Design) -> Result<FlatModel, SmvError> {
    let mut inputs_u = Vec::new();
    let mut inputs_c = Vec::new();
    let mut encodings = IndexMap::new();
    let mut var_enc = Vec::with_capacity(design.vars.len());
    for v in &design.vars {
        let bits: Vec<String> = if v.ty == ScalarType::Bool {
            vec![v.name.clone()]
        } else {
            (0..bits_for(v.ty.cardinality()))
                .map(|i| bit_name(&v.name, i))
                .collect()
        };
        match v.role() {
            VarRole::Input if v.controllable => inputs_c.extend(bits.iter().cloned()),
            VarRole::Input => inputs_u.extend(bits.iter().cloned()),
            VarRole::Latch => {
                if v.next.is_none() {
                    if !v.in_main {
                        return Err(SmvError::MissingNext(v.name.clone()));
                    }
                    return Err(SmvError::Unsupported(format!(
                        "init({}) without next({})",
                        v.name, v.name
                    )));
                }
            }
        }
        let sigs: Vec<ExprRef> = bits.iter().map(|b| BoolExpr::sig(b)).collect();
        var_enc.push(if v.ty == ScalarType::Bool {
            Enc::Bool(sigs[0].clone())
        } else {
            Enc::Scalar(decode_table(&v.ty, &sigs))
        });
        encodings.insert(v.name.clone(), Encoding { ty: v.ty.clone(), bits });
    }

    let mut f = Flattener {
        design,
        var_enc,
        define_enc: vec![None; design.defines.len()],
        defines: IndexMap::new(),
    };
    for id in 0..design.defines.len() {
        f.define(id);
    }

    let mut latches = Vec::new();
    for (id, v) in design.vars.iter().enumerate() {
        if v.role() != VarRole::Latch {
            continue;
        }
        let init = match &v.init {
            Some(e) => eval_with(design, e, &mut |_| None).ok_or_else(|| {
                SmvError::Unsupported(format!("init({}) is not a constant", v.name))
            })?,
            None => {
                let d = v.ty.first_value();
                log::warn!("`{}` has no init(); defaulting to {d}", v.name);
                d
            }
        };
        let enc = &encodings[id];
        let init_bits = enc.encode(&init).expect("type checker bounds init values");
        let next = f.expr(v.next.as_ref().expect("latches have next"));
        let next_bits: Vec<ExprRef> = match next {
            Enc::Bool(e) => vec![e],
            Enc::Scalar(table) => (0..enc.bits.len())
                .map(|i| {
                    let set: Vec<&ExprRef> = table
                        .iter()
                        .filter(|(val, _)| v.ty.code_of(val).unwrap() >> i & 1 == 1)
                        .map(|(_, c)| c)
                        .collect();
                    BoolExpr::or_all(set)
                })
                .collect(),
        };
        for ((name, init), next) in enc.bits.iter().zip(init_bits).zip(next_bits) {
            latches.push(FlatLatch {
                name: name.clone(),
                init,
                next,
            });
        }
    }

    Ok(FlatModel {
        inputs_u,
        inputs_c,
        latches,
        defines: f.defines,
        encodings,
    })
}

/// Conditions on `bits` selecting each value. Patterns outside the encoding
/// (possible only for inputs) decode to the first value.
fn decode_table(ty: &ScalarType, bits: &[ExprRef]) -> Table {
    let values = ty.values();
    let conds: Vec<ExprRef> = (0..values.len() as u64)
        .map(|code| {
            let lits: Vec<ExprRef> = bits
                .iter()
                .enumerate()
                .map(|(i, b)| if code >> i & 1 == 1 { b.clone() } else { BoolExpr::not(b) })
                .collect();
            BoolExpr::and_all(&lits)
        })
        .collect();
    let first = BoolExpr::not(&BoolExpr::or_all(&conds[1..]));
    values
        .into_iter()
        .zip(std::iter::once(first).chain(conds.into_iter().skip(1)))
        .collect()
}

impl Flattener<'_> {
    fn define(&mut self, id: usize) -> Rc<Enc> {
        if let Some(e) = &self.define_enc[id] {
            return e.clone();
        }
        let d = &self.design.defines[id];
        let enc = match self.expr(&d.expr) {
            Enc::Bool(e) => {
                self.defines.insert(d.name.clone(), e);
                Enc::Bool(BoolExpr::sig(&d.name))
            }
            scalar => scalar,
        };
        let enc = Rc::new(enc);
        self.define_enc[id] = Some(enc.clone());
        enc
    }

    fn boolean(&mut self, e: &TExpr) -> ExprRef {
        match self.expr(e) {
            Enc::Bool(b) => b,
            Enc::Scalar(_) => unreachable!("type checker guarantees a boolean"),
        }
    }

    fn table(&mut self, e: &TExpr) -> Table {
        match self.expr(e) {
            Enc::Scalar(t) => t,
            Enc::Bool(_) => unreachable!("type checker guarantees a scalar"),
        }
    }

    fn expr(&mut self, e: &TExpr) -> Enc {
        match &e.kind {
            TKind::Const(Value::Bool(b)) => Enc::Bool(BoolExpr::constant(*b)),
            TKind::Const(v) => Enc::Scalar(vec![(v.clone(), BoolExpr::constant(true))]),
            TKind::Var(id) => match &self.var_enc[*id] {
                Enc::Bool(b) => Enc::Bool(b.clone()),
                Enc::Scalar(t) => Enc::Scalar(t.clone()),
            },
            TKind::Define(id) => match &*self.define(*id) {
                Enc::Bool(b) => Enc::Bool(b.clone()),
                Enc::Scalar(t) => Enc::Scalar(t.clone()),
            },
            TKind::Not(a) => Enc::Bool(BoolExpr::not(&self.boolean(a))),
            TKind::Logic(op, a, b) => {
                let x = self.boolean(a);
                let y = self.boolean(b);
                Enc::Bool(match op {
                    LogicOp::And => BoolExpr::and(&x, &y),
                    LogicOp::Or => BoolExpr::or(&x, &y),
                    LogicOp::Xor => BoolExpr::xor(&x, &y),
                    LogicOp::Xnor | LogicOp::Iff => BoolExpr::iff(&x, &y),
                    LogicOp::Implies => BoolExpr::implies(&x, &y),
                })
            }
            TKind::Cmp(op, a, b) if a.ty == Ty::Bool => {
                let x = self.boolean(a);
                let y = self.boolean(b);
                Enc::Bool(match op {
                    CmpOp::Eq => BoolExpr::iff(&x, &y),
                    CmpOp::Neq => BoolExpr::xor(&x, &y),
                    _ => unreachable!("no ordering on booleans"),
                })
            }
            TKind::Cmp(op, a, b) => {
                let ta = self.table(a);
                let tb = self.table(b);
                let mut terms = Vec::new();
                for (va, ca) in &ta {
                    for (vb, cb) in &tb {
                        let ord = compare(va, vb, &a.ty, &b.ty);
                        let holds = match op {
                            CmpOp::Eq => va == vb,
                            CmpOp::Neq => va != vb,
                            CmpOp::Lt => ord.is_lt(),
                            CmpOp::Le => ord.is_le(),
                            CmpOp::Gt => ord.is_gt(),
                            CmpOp::Ge => ord.is_ge(),
                        };
                        if holds {
                            terms.push(BoolExpr::and(ca, cb));
                        }
                    }
                }
                Enc::Bool(BoolExpr::or_all(&terms))
            }
            TKind::Case(arms) => {
                let conds: Vec<ExprRef> = arms.iter().map(|(c, _)| self.boolean(c)).collect();
                if e.ty == Ty::Bool {
                    let vals: Vec<ExprRef> = arms.iter().map(|(_, v)| self.boolean(v)).collect();
                    Enc::Bool(case_chain(&conds, &vals))
                } else {
                    let tables: Vec<Table> = arms.iter().map(|(_, v)| self.table(v)).collect();
                    let mut values: Vec<Value> = Vec::new();
                    for t in &tables {
                        for (v, _) in t {
                            if !values.contains(v) {
                                values.push(v.clone());
                            }
                        }
                    }
                    let falsum = BoolExpr::constant(false);
                    let table = values
                        .into_iter()
                        .map(|v| {
                            let per_arm: Vec<ExprRef> = tables
                                .iter()
                                .map(|t| {
                                    t.iter()
                                        .find(|(x, _)| *x == v)
                                        .map_or(falsum.clone(), |(_, c)| c.clone())
                                })
                                .collect();
                            (v, case_chain(&conds, &per_arm))
                        })
                        .filter(|(_, c)| c.as_const() != Some(false))
                        .collect();
                    Enc::Scalar(table)
                }
            }
        }
    }
}

/// `ite(c0, v0, ite(c1, v1, ... vn))`; the last condition is not consulted.
fn case_chain(conds: &[ExprRef], vals: &[ExprRef]) -> ExprRef {
    let (last, rest) = vals.split_last().expect("case has a branch");
    rest.iter()
        .zip(conds)
        .rev()
        .fold(last.clone(), |acc, (v, c)| BoolExpr::ite(c, v, &acc))
}
