//! Reference interpreter over typed values. It works on the resolved design
//! directly, without any boolean encoding, and serves as the oracle for the
//! flattening.

use std::cmp::Ordering;

use super::resolve::{CmpOp, Design, LogicOp, TExpr, TKind, Ty, Value, VarId};
use super::SmvError;

/// Evaluates `e`; `var` supplies variable values and may refuse with `None`.
pub(crate) fn eval_with(
    design: &Design,
    e: &TExpr,
    var: &mut dyn FnMut(VarId) -> Option<Value>,
) -> Option<Value> {
    Some(match &e.kind {
        TKind::Const(v) => v.clone(),
        TKind::Var(id) => var(*id)?,
        TKind::Define(id) => eval_with(design, &design.defines[*id].expr, var)?,
        TKind::Not(a) => Value::Bool(!as_bool(&eval_with(design, a, var)?)),
        TKind::Logic(op, a, b) => {
            let x = as_bool(&eval_with(design, a, var)?);
            let y = as_bool(&eval_with(design, b, var)?);
            Value::Bool(match op {
                LogicOp::And => x && y,
                LogicOp::Or => x || y,
                LogicOp::Xor => x != y,
                LogicOp::Xnor | LogicOp::Iff => x == y,
                LogicOp::Implies => !x || y,
            })
        }
        TKind::Cmp(op, a, b) => {
            let x = eval_with(design, a, var)?;
            let y = eval_with(design, b, var)?;
            let ord = compare(&x, &y, &a.ty, &b.ty);
            Value::Bool(match op {
                CmpOp::Eq => x == y,
                CmpOp::Neq => x != y,
                CmpOp::Lt => ord == Ordering::Less,
                CmpOp::Le => ord != Ordering::Greater,
                CmpOp::Gt => ord == Ordering::Greater,
                CmpOp::Ge => ord != Ordering::Less,
            })
        }
        TKind::Case(arms) => {
            let (last, rest) = arms.split_last().expect("case has a branch");
            for (c, v) in rest {
                if as_bool(&eval_with(design, c, var)?) {
                    return eval_with(design, v, var);
                }
            }
            eval_with(design, &last.1, var)?
        }
    })
}

fn as_bool(v: &Value) -> bool {
    match v {
        Value::Bool(b) => *b,
        other => panic!("type checker admitted non-boolean {other} in a boolean position"),
    }
}

/// Ordering used by `<` and friends: numeric for integers, declaration
/// order for enumeration symbols.
pub(crate) fn compare(x: &Value, y: &Value, tx: &Ty, ty: &Ty) -> Ordering {
    match (x, y) {
        (Value::Int(a), Value::Int(b)) => a.cmp(b),
        (Value::Sym(a), Value::Sym(b)) => {
            let order = [tx, ty]
                .into_iter()
                .find_map(|t| match t {
                    Ty::Scalar { order: Some(o), .. } => Some(o.clone()),
                    _ => None,
                })
                .expect("ordering comparison involves an enumeration");
            let rank = |s| order.iter().position(|o| o == s);
            rank(a).cmp(&rank(b))
        }
        _ => Ordering::Equal,
    }
}

/// Steps the design over typed values. A valuation holds one value per
/// design variable; input slots are filled by the caller each step.
pub struct Interpreter<'d> {
    design: &'d Design,
}

impl<'d> Interpreter<'d> {
    pub fn new(design: &'d Design) -> Self {
        Interpreter { design }
    }

    /// Initial valuation; inputs hold the first value of their type.
    pub fn initial(&self) -> Result<Vec<Value>, SmvError> {
        self.design
            .vars
            .iter()
            .map(|v| match &v.init {
                None => Ok(v.ty.first_value()),
                Some(e) => eval_with(self.design, e, &mut |_| None).ok_or_else(|| {
                    SmvError::Unsupported(format!("init({}) is not a constant", v.name))
                }),
            })
            .collect()
    }

    pub fn eval(&self, e: &TExpr, vals: &[Value]) -> Value {
        eval_with(self.design, e, &mut |id| Some(vals[id].clone())).expect("total valuation")
    }

    pub fn define_values(&self, vals: &[Value]) -> Vec<Value> {
        self.design
            .defines
            .iter()
            .map(|d| self.eval(&d.expr, vals))
            .collect()
    }

    /// Successor valuation; input slots are copied unchanged.
    pub fn next(&self, vals: &[Value]) -> Vec<Value> {
        self.design
            .vars
            .iter()
            .enumerate()
            .map(|(id, v)| match &v.next {
                Some(e) => self.eval(e, vals),
                None => vals[id].clone(),
            })
            .collect()
    }
}
