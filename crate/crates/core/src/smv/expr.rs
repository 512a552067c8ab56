use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

pub type ExprRef = Rc<BoolExpr>;

/// Boolean expression over named signals. Built through the folding
/// constructors, so constants only appear at the root.
#[derive(Debug, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Const(bool),
    Sig(Rc<str>),
    Not(ExprRef),
    And(ExprRef, ExprRef),
    Or(ExprRef, ExprRef),
    Xor(ExprRef, ExprRef),
    Ite(ExprRef, ExprRef, ExprRef),
}

impl BoolExpr {
    pub fn constant(b: bool) -> ExprRef {
        Rc::new(BoolExpr::Const(b))
    }

    pub fn sig(name: &str) -> ExprRef {
        Rc::new(BoolExpr::Sig(Rc::from(name)))
    }

    pub fn as_const(&self) -> Option<bool> {
        match self {
            BoolExpr::Const(b) => Some(*b),
            _ => None,
        }
    }

    pub fn not(a: &ExprRef) -> ExprRef {
        match &**a {
            BoolExpr::Const(b) => Self::constant(!b),
            BoolExpr::Not(x) => x.clone(),
            _ => Rc::new(BoolExpr::Not(a.clone())),
        }
    }

    pub fn and(a: &ExprRef, b: &ExprRef) -> ExprRef {
        match (a.as_const(), b.as_const()) {
            (Some(false), _) | (_, Some(false)) => Self::constant(false),
            (Some(true), _) => b.clone(),
            (_, Some(true)) => a.clone(),
            _ if Rc::ptr_eq(a, b) => a.clone(),
            _ => Rc::new(BoolExpr::And(a.clone(), b.clone())),
        }
    }

    pub fn or(a: &ExprRef, b: &ExprRef) -> ExprRef {
        match (a.as_const(), b.as_const()) {
            (Some(true), _) | (_, Some(true)) => Self::constant(true),
            (Some(false), _) => b.clone(),
            (_, Some(false)) => a.clone(),
            _ if Rc::ptr_eq(a, b) => a.clone(),
            _ => Rc::new(BoolExpr::Or(a.clone(), b.clone())),
        }
    }

    pub fn xor(a: &ExprRef, b: &ExprRef) -> ExprRef {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Self::constant(x != y),
            (Some(false), _) => b.clone(),
            (Some(true), _) => Self::not(b),
            (_, Some(false)) => a.clone(),
            (_, Some(true)) => Self::not(a),
            _ if Rc::ptr_eq(a, b) => Self::constant(false),
            _ => Rc::new(BoolExpr::Xor(a.clone(), b.clone())),
        }
    }

    pub fn iff(a: &ExprRef, b: &ExprRef) -> ExprRef {
        Self::not(&Self::xor(a, b))
    }

    pub fn implies(a: &ExprRef, b: &ExprRef) -> ExprRef {
        Self::or(&Self::not(a), b)
    }

    pub fn ite(c: &ExprRef, t: &ExprRef, e: &ExprRef) -> ExprRef {
        match (c.as_const(), t.as_const(), e.as_const()) {
            (Some(true), ..) => t.clone(),
            (Some(false), ..) => e.clone(),
            (_, Some(true), Some(false)) => c.clone(),
            (_, Some(false), Some(true)) => Self::not(c),
            (_, Some(false), _) => Self::and(&Self::not(c), e),
            (_, Some(true), _) => Self::or(c, e),
            (_, _, Some(false)) => Self::and(c, t),
            (_, _, Some(true)) => Self::or(&Self::not(c), t),
            _ if Rc::ptr_eq(t, e) => t.clone(),
            _ => Rc::new(BoolExpr::Ite(c.clone(), t.clone(), e.clone())),
        }
    }

    pub fn and_all<'a>(xs: impl IntoIterator<Item = &'a ExprRef>) -> ExprRef {
        xs.into_iter()
            .fold(Self::constant(true), |acc, x| Self::and(&acc, x))
    }

    pub fn or_all<'a>(xs: impl IntoIterator<Item = &'a ExprRef>) -> ExprRef {
        xs.into_iter()
            .fold(Self::constant(false), |acc, x| Self::or(&acc, x))
    }

    /// Names of all signals the expression reads.
    pub fn free_names(&self) -> BTreeSet<Rc<str>> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            if !seen.insert(e as *const BoolExpr) {
                continue;
            }
            match e {
                BoolExpr::Const(_) => {}
                BoolExpr::Sig(n) => {
                    out.insert(n.clone());
                }
                BoolExpr::Not(a) => stack.push(a),
                BoolExpr::And(a, b) | BoolExpr::Or(a, b) | BoolExpr::Xor(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                BoolExpr::Ite(c, t, e) => {
                    stack.push(c);
                    stack.push(t);
                    stack.push(e);
                }
            }
        }
        out
    }

    /// Evaluates with `env` supplying signal values; shared subterms are
    /// evaluated once.
    pub fn eval(&self, env: &dyn Fn(&str) -> bool) -> bool {
        fn go(
            e: &BoolExpr,
            env: &dyn Fn(&str) -> bool,
            memo: &mut HashMap<*const BoolExpr, bool>,
        ) -> bool {
            if let Some(&v) = memo.get(&(e as *const _)) {
                return v;
            }
            let v = match e {
                BoolExpr::Const(b) => *b,
                BoolExpr::Sig(n) => env(n),
                BoolExpr::Not(a) => !go(a, env, memo),
                BoolExpr::And(a, b) => go(a, env, memo) && go(b, env, memo),
                BoolExpr::Or(a, b) => go(a, env, memo) || go(b, env, memo),
                BoolExpr::Xor(a, b) => go(a, env, memo) != go(b, env, memo),
                BoolExpr::Ite(c, t, f) => {
                    if go(c, env, memo) {
                        go(t, env, memo)
                    } else {
                        go(f, env, memo)
                    }
                }
            };
            memo.insert(e as *const _, v);
            v
        }
        go(self, env, &mut HashMap::new())
    }
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolExpr::Const(b) => write!(f, "{}", if *b { "TRUE" } else { "FALSE" }),
            BoolExpr::Sig(n) => write!(f, "{n}"),
            BoolExpr::Not(a) => write!(f, "!{a}"),
            BoolExpr::And(a, b) => write!(f, "({a} & {b})"),
            BoolExpr::Or(a, b) => write!(f, "({a} | {b})"),
            BoolExpr::Xor(a, b) => write!(f, "({a} xor {b})"),
            BoolExpr::Ite(c, t, e) => write!(f, "({c} ? {t} : {e})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folding() {
        let x = BoolExpr::sig("x");
        let t = BoolExpr::constant(true);
        let f = BoolExpr::constant(false);
        assert_eq!(BoolExpr::and(&x, &t), x);
        assert_eq!(BoolExpr::and(&x, &f), f);
        assert_eq!(BoolExpr::not(&BoolExpr::not(&x)), x);
        assert_eq!(BoolExpr::ite(&x, &t, &f), x);
        assert_eq!(BoolExpr::xor(&x, &x), f);
    }

    #[test]
    fn ite_folding_matches_truth_table() {
        let names = ["a", "b", "c"];
        let atoms: Vec<ExprRef> = names
            .iter()
            .map(|n| BoolExpr::sig(n))
            .chain([BoolExpr::constant(false), BoolExpr::constant(true)])
            .collect();
        for c in &atoms {
            for t in &atoms {
                for e in &atoms {
                    let r = BoolExpr::ite(c, t, e);
                    for bits in 0..8u32 {
                        let env = |n: &str| bits >> names.iter().position(|m| *m == n).unwrap() & 1 == 1;
                        let want = if c.eval(&env) { t.eval(&env) } else { e.eval(&env) };
                        assert_eq!(r.eval(&env), want, "ite({c}, {t}, {e})");
                    }
                }
            }
        }
    }
}
