//! Elaboration of the module hierarchy: every identifier is bound to a
//! variable, define, parameter or instance member, and every expression is
//! type checked. Parameters are passed by expression: each use of a formal
//! inlines the actual, elaborated in the instantiating scope.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::rc::Rc;

use super::ast::{self, BinOp, Expr, Pos, SmvModule, SmvSpec, VarType};
use super::SmvError;

pub type VarId = usize;
pub type DefineId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Sym(Rc<str>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{}", if *b { "TRUE" } else { "FALSE" }),
            Value::Int(i) => write!(f, "{i}"),
            Value::Sym(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarType {
    Bool,
    Range(i64, i64),
    Enum(Rc<[Rc<str>]>),
}

impl ScalarType {
    /// All values in encoding order.
    pub fn values(&self) -> Vec<Value> {
        match self {
            ScalarType::Bool => vec![Value::Bool(false), Value::Bool(true)],
            ScalarType::Range(lo, hi) => (*lo..=*hi).map(Value::Int).collect(),
            ScalarType::Enum(syms) => syms.iter().cloned().map(Value::Sym).collect(),
        }
    }

    pub fn first_value(&self) -> Value {
        match self {
            ScalarType::Bool => Value::Bool(false),
            ScalarType::Range(lo, _) => Value::Int(*lo),
            ScalarType::Enum(syms) => Value::Sym(syms[0].clone()),
        }
    }

    pub fn cardinality(&self) -> u64 {
        match self {
            ScalarType::Bool => 2,
            ScalarType::Range(lo, hi) => (hi - lo + 1) as u64,
            ScalarType::Enum(syms) => syms.len() as u64,
        }
    }

    /// Position of `v` in [`values`](Self::values).
    pub fn code_of(&self, v: &Value) -> Option<u64> {
        match (self, v) {
            (ScalarType::Bool, Value::Bool(b)) => Some(*b as u64),
            (ScalarType::Range(lo, hi), Value::Int(i)) if lo <= i && i <= hi => {
                Some((i - lo) as u64)
            }
            (ScalarType::Enum(syms), Value::Sym(s)) => {
                syms.iter().position(|x| x == s).map(|p| p as u64)
            }
            _ => None,
        }
    }

    fn ty(&self) -> Ty {
        match self {
            ScalarType::Bool => Ty::Bool,
            ScalarType::Range(..) => Ty::Scalar {
                kind: Kind::Int,
                values: Rc::new(self.values().into_iter().collect()),
                order: None,
            },
            ScalarType::Enum(syms) => Ty::Scalar {
                kind: Kind::Sym,
                values: Rc::new(self.values().into_iter().collect()),
                order: Some(syms.clone()),
            },
        }
    }
}

impl fmt::Display for ScalarType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarType::Bool => write!(f, "boolean"),
            ScalarType::Range(lo, hi) => write!(f, "{lo}..{hi}"),
            ScalarType::Enum(syms) => write!(f, "{{{}}}", syms.join(", ")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Int,
    Sym,
}

/// Static type of an expression. Scalar types carry the set of values the
/// expression can take, and enumerations their declaration order.
#[derive(Clone, Debug, PartialEq)]
pub enum Ty {
    Bool,
    Scalar {
        kind: Kind,
        values: Rc<BTreeSet<Value>>,
        order: Option<Rc<[Rc<str>]>>,
    },
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Bool => write!(f, "boolean"),
            Ty::Scalar {
                kind: Kind::Int, ..
            } => write!(f, "integer"),
            Ty::Scalar {
                kind: Kind::Sym, ..
            } => write!(f, "enumeration"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogicOp {
    And,
    Or,
    Xor,
    Xnor,
    Implies,
    Iff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
}

pub type TRef = Rc<TExpr>;

#[derive(Clone, Debug)]
pub struct TExpr {
    pub kind: TKind,
    pub ty: Ty,
}

#[derive(Clone, Debug)]
pub enum TKind {
    Const(Value),
    Var(VarId),
    Define(DefineId),
    Not(TRef),
    Logic(LogicOp, TRef, TRef),
    Cmp(CmpOp, TRef, TRef),
    /// Branches are tried in order; if no condition holds the last branch's
    /// value is taken.
    Case(Vec<(TRef, TRef)>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarRole {
    Input,
    Latch,
}

#[derive(Clone, Debug)]
pub struct DVar {
    /// Fully qualified name, instance path joined with `.`.
    pub name: String,
    pub ty: ScalarType,
    pub controllable: bool,
    pub in_main: bool,
    pub init: Option<TRef>,
    pub next: Option<TRef>,
}

impl DVar {
    /// Unassigned variables of `main` are inputs; everything else is state.
    pub fn role(&self) -> VarRole {
        if self.in_main && self.init.is_none() && self.next.is_none() {
            VarRole::Input
        } else {
            VarRole::Latch
        }
    }
}

#[derive(Clone, Debug)]
pub struct DDefine {
    pub name: String,
    pub expr: TRef,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignalRef {
    Var(VarId),
    Define(DefineId),
}

/// The resolved, type-checked design: the instance tree from `main`
/// unrolled into qualified variables and defines.
#[derive(Clone, Debug)]
pub struct Design {
    pub vars: Vec<DVar>,
    pub defines: Vec<DDefine>,
    pub sys_automata: Vec<ast::AutomatonRef>,
    pub env_automata: Vec<ast::AutomatonRef>,
    /// Names of `main` usable in automaton labels.
    pub main_signals: BTreeMap<String, SignalRef>,
    main_non_boolean: BTreeSet<String>,
}

impl Design {
    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn define_by_name(&self, name: &str) -> Option<DefineId> {
        self.defines.iter().position(|d| d.name == name)
    }

    /// Checks that every automaton proposition names a boolean signal
    /// declared in `main`.
    pub fn check_propositions<'a>(
        &self,
        props: impl IntoIterator<Item = &'a str>,
    ) -> Result<(), SmvError> {
        for p in props {
            if !self.main_signals.contains_key(p) {
                let _ = self.main_non_boolean.contains(p);
                return Err(SmvError::UnknownProposition { name: p.into() });
            }
        }
        Ok(())
    }
}

enum Slot {
    Pending,
    Busy,
    Done(TRef),
}

struct Scope<'a> {
    module: &'a SmvModule,
    prefix: String,
    parent: Option<usize>,
    actuals: &'a [Expr],
    params: Vec<Slot>,
    vars: HashMap<&'a str, VarId>,
    defines: HashMap<&'a str, DefineId>,
    instances: HashMap<&'a str, usize>,
}

struct Elab<'a> {
    modules: HashMap<&'a str, &'a SmvModule>,
    symbols: HashSet<&'a str>,
    scopes: Vec<Scope<'a>>,
    vars: Vec<DVar>,
    defines: Vec<(usize, &'a ast::Define, Slot)>,
}

fn type_err(context: &str, msg: impl Into<String>) -> SmvError {
    SmvError::Type {
        context: context.to_string(),
        msg: msg.into(),
    }
}

/// Resolves names and types and unrolls the instance tree rooted at `main`.
pub fn resolve(spec: &SmvSpec) -> Result<Design, SmvError> {
    let main = spec.main().ok_or(SmvError::NoMain)?;
    let modules: HashMap<&str, &SmvModule> =
        spec.modules.iter().map(|m| (m.name.as_str(), m)).collect();
    check_module_graph(spec, &modules)?;
    let symbols = spec
        .modules
        .iter()
        .flat_map(|m| &m.vars)
        .filter_map(|v| match &v.ty {
            VarType::Enum(syms) => Some(syms.iter().map(String::as_str)),
            _ => None,
        })
        .flatten()
        .collect();
    let mut elab = Elab {
        modules,
        symbols,
        scopes: Vec::new(),
        vars: Vec::new(),
        defines: Vec::new(),
    };
    elab.build_scope(main, String::new(), None, &[])?;
    for id in 0..elab.defines.len() {
        elab.define(id)?;
    }
    for s in 0..elab.scopes.len() {
        elab.assignments(s)?;
    }

    let mut main_signals = BTreeMap::new();
    let mut main_non_boolean = BTreeSet::new();
    let root = &elab.scopes[0];
    for (&name, &id) in &root.vars {
        if elab.vars[id].ty == ScalarType::Bool {
            main_signals.insert(name.to_string(), SignalRef::Var(id));
        } else {
            main_non_boolean.insert(name.to_string());
        }
    }
    let defines: Vec<DDefine> = elab
        .defines
        .iter()
        .map(|(s, d, slot)| DDefine {
            name: format!("{}{}", elab.scopes[*s].prefix, d.name),
            expr: match slot {
                Slot::Done(e) => e.clone(),
                _ => unreachable!("every define is elaborated"),
            },
        })
        .collect();
    for (&name, &id) in &root.defines {
        if defines[id].expr.ty == Ty::Bool {
            main_signals.insert(name.to_string(), SignalRef::Define(id));
        } else {
            main_non_boolean.insert(name.to_string());
        }
    }
    Ok(Design {
        vars: elab.vars,
        defines,
        sys_automata: main.sys_automata.clone(),
        env_automata: main.env_automata.clone(),
        main_signals,
        main_non_boolean,
    })
}

fn check_module_graph(spec: &SmvSpec, modules: &HashMap<&str, &SmvModule>) -> Result<(), SmvError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Finished,
    }
    fn visit<'a>(
        m: &'a SmvModule,
        modules: &HashMap<&str, &'a SmvModule>,
        marks: &mut HashMap<&'a str, Mark>,
        stack: &mut Vec<&'a str>,
    ) -> Result<(), SmvError> {
        match marks.get(m.name.as_str()).copied().unwrap_or(Mark::New) {
            Mark::Finished => return Ok(()),
            Mark::Active => {
                let start = stack.iter().position(|s| *s == m.name).unwrap();
                let mut cycle: Vec<String> = stack[start..].iter().map(|s| s.to_string()).collect();
                cycle.push(m.name.clone());
                return Err(SmvError::CyclicInstantiation(cycle));
            }
            Mark::New => {}
        }
        marks.insert(&m.name, Mark::Active);
        stack.push(&m.name);
        for inst in &m.instances {
            let callee = modules
                .get(inst.module.as_str())
                .ok_or_else(|| SmvError::UnknownModule(inst.module.clone()))?;
            visit(callee, modules, marks, stack)?;
        }
        stack.pop();
        marks.insert(&m.name, Mark::Finished);
        Ok(())
    }
    let mut marks = HashMap::new();
    for m in &spec.modules {
        visit(m, modules, &mut marks, &mut Vec::new())?;
    }
    Ok(())
}

impl<'a> Elab<'a> {
    fn build_scope(
        &mut self,
        module: &'a SmvModule,
        prefix: String,
        parent: Option<usize>,
        actuals: &'a [Expr],
    ) -> Result<usize, SmvError> {
        let mut seen = HashSet::new();
        let names = module
            .params
            .iter()
            .chain(module.vars.iter().map(|v| &v.name))
            .chain(module.defines.iter().map(|d| &d.name))
            .chain(module.instances.iter().map(|i| &i.name));
        for n in names {
            if !seen.insert(n.as_str()) {
                return Err(SmvError::DuplicateName {
                    module: module.name.clone(),
                    name: n.clone(),
                });
            }
        }

        let idx = self.scopes.len();
        let in_main = parent.is_none();
        let mut vars = HashMap::new();
        for v in &module.vars {
            let ty = match &v.ty {
                VarType::Boolean => ScalarType::Bool,
                VarType::Range(lo, hi) => ScalarType::Range(*lo, *hi),
                VarType::Enum(syms) => {
                    ScalarType::Enum(syms.iter().map(|s| Rc::from(s.as_str())).collect())
                }
            };
            vars.insert(v.name.as_str(), self.vars.len());
            self.vars.push(DVar {
                name: format!("{prefix}{}", v.name),
                ty,
                controllable: v.controllable,
                in_main,
                init: None,
                next: None,
            });
        }
        let mut defines = HashMap::new();
        for d in &module.defines {
            defines.insert(d.name.as_str(), self.defines.len());
            self.defines.push((idx, d, Slot::Pending));
        }
        self.scopes.push(Scope {
            module,
            prefix: prefix.clone(),
            parent,
            actuals,
            params: module.params.iter().map(|_| Slot::Pending).collect(),
            vars,
            defines,
            instances: HashMap::new(),
        });
        for inst in &module.instances {
            let callee = self.modules[inst.module.as_str()];
            if callee.params.len() != inst.actuals.len() {
                return Err(SmvError::Arity {
                    instance: format!("{prefix}{}", inst.name),
                    module: callee.name.clone(),
                    expected: callee.params.len(),
                    found: inst.actuals.len(),
                });
            }
            let child = self.build_scope(
                callee,
                format!("{prefix}{}.", inst.name),
                Some(idx),
                &inst.actuals,
            )?;
            self.scopes[idx].instances.insert(inst.name.as_str(), child);
        }
        Ok(idx)
    }

    fn define(&mut self, id: DefineId) -> Result<TRef, SmvError> {
        let (scope, def, slot) = &self.defines[id];
        let (scope, def) = (*scope, *def);
        match slot {
            Slot::Done(e) => return Ok(e.clone()),
            Slot::Busy => {
                return Err(SmvError::CyclicDefinition(format!(
                    "{}{}",
                    self.scopes[scope].prefix, def.name
                )))
            }
            Slot::Pending => {}
        }
        self.defines[id].2 = Slot::Busy;
        let context = format!("define `{}{}`", self.scopes[scope].prefix, def.name);
        let e = self.expr(scope, &def.expr, &context)?;
        self.defines[id].2 = Slot::Done(e.clone());
        Ok(e)
    }

    fn param(&mut self, scope: usize, i: usize) -> Result<TRef, SmvError> {
        match &self.scopes[scope].params[i] {
            Slot::Done(e) => return Ok(e.clone()),
            Slot::Busy => {
                return Err(SmvError::CyclicDefinition(format!(
                    "{}{}",
                    self.scopes[scope].prefix, self.scopes[scope].module.params[i]
                )))
            }
            Slot::Pending => {}
        }
        self.scopes[scope].params[i] = Slot::Busy;
        let parent = self.scopes[scope].parent.expect("parameters only exist below main");
        let actual = &self.scopes[scope].actuals[i];
        let context = format!(
            "argument `{}` of instance `{}`",
            self.scopes[scope].module.params[i],
            self.scopes[scope].prefix.trim_end_matches('.')
        );
        let e = self.expr(parent, actual, &context)?;
        self.scopes[scope].params[i] = Slot::Done(e.clone());
        Ok(e)
    }

    fn lookup(&mut self, scope: usize, path: &[String], pos: Pos) -> Result<TRef, SmvError> {
        let unbound = |this: &Self| SmvError::Unbound {
            name: path.join("."),
            module: this.scopes[scope].module.name.clone(),
            pos,
        };
        let mut s = scope;
        for (k, seg) in path.iter().enumerate() {
            let last = k + 1 == path.len();
            let sc = &self.scopes[s];
            if k == 0 {
                if let Some(i) = sc.module.params.iter().position(|p| p == seg) {
                    if !last {
                        return Err(SmvError::Unsupported(format!(
                            "{pos}: member access on parameter `{seg}`"
                        )));
                    }
                    return self.param(s, i);
                }
            }
            if let Some(&v) = sc.vars.get(seg.as_str()) {
                if !last {
                    return Err(unbound(self));
                }
                return Ok(Rc::new(TExpr {
                    kind: TKind::Var(v),
                    ty: self.vars[v].ty.ty(),
                }));
            }
            if let Some(&d) = sc.defines.get(seg.as_str()) {
                if !last {
                    return Err(unbound(self));
                }
                let e = self.define(d)?;
                return Ok(Rc::new(TExpr {
                    kind: TKind::Define(d),
                    ty: e.ty.clone(),
                }));
            }
            if let Some(&child) = sc.instances.get(seg.as_str()) {
                if last {
                    return Err(type_err(
                        &format!("{pos}"),
                        format!("instance `{}` used as a value", path.join(".")),
                    ));
                }
                s = child;
                continue;
            }
            if k == 0 && last && self.symbols.contains(seg.as_str()) {
                let v = Value::Sym(Rc::from(seg.as_str()));
                return Ok(constant(v));
            }
            return Err(unbound(self));
        }
        unreachable!("paths are non-empty")
    }

    fn expr(&mut self, scope: usize, e: &Expr, ctx: &str) -> Result<TRef, SmvError> {
        Ok(match e {
            Expr::Bool(b) => constant(Value::Bool(*b)),
            Expr::Int(i) => constant(Value::Int(*i)),
            Expr::Name { path, pos } => self.lookup(scope, path, *pos)?,
            Expr::Not(inner) => {
                let x = self.expr(scope, inner, ctx)?;
                if x.ty != Ty::Bool {
                    return Err(type_err(ctx, format!("`!` expects a boolean, found {}", x.ty)));
                }
                Rc::new(TExpr {
                    kind: TKind::Not(x),
                    ty: Ty::Bool,
                })
            }
            Expr::Binary(op, l, r) => {
                if matches!(op, BinOp::Add | BinOp::Sub) {
                    return Err(SmvError::Unsupported(format!(
                        "arithmetic operator `{}` in {ctx}",
                        op.symbol()
                    )));
                }
                let a = self.expr(scope, l, ctx)?;
                let b = self.expr(scope, r, ctx)?;
                binary(*op, a, b, ctx)?
            }
            Expr::Case(arms) => {
                let mut out = Vec::with_capacity(arms.len());
                for (c, v) in arms {
                    let c = self.expr(scope, c, ctx)?;
                    if c.ty != Ty::Bool {
                        return Err(type_err(ctx, "case condition is not boolean"));
                    }
                    let v = self.expr(scope, v, ctx)?;
                    out.push((c, v));
                }
                let ty = case_type(out.iter().map(|(_, v)| &v.ty), ctx)?;
                Rc::new(TExpr {
                    kind: TKind::Case(out),
                    ty,
                })
            }
        })
    }

    fn assignments(&mut self, s: usize) -> Result<(), SmvError> {
        let module = self.scopes[s].module;
        for a in &module.assigns {
            let Some(&v) = self.scopes[s].vars.get(a.target.as_str()) else {
                return Err(SmvError::Unbound {
                    name: a.target.clone(),
                    module: module.name.clone(),
                    pos: a.pos,
                });
            };
            let name = self.vars[v].name.clone();
            if self.vars[v].controllable {
                return Err(SmvError::Unsupported(format!(
                    "assignment to controllable variable `{name}`"
                )));
            }
            for (is_init, src) in [(true, &a.init), (false, &a.next)] {
                let Some(src) = src else { continue };
                let ctx = format!("{}(`{name}`)", if is_init { "init" } else { "next" });
                let e = self.expr(s, src, &ctx)?;
                check_assignable(&self.vars[v].ty, &e.ty, &ctx)?;
                if is_init {
                    self.vars[v].init = Some(e);
                } else {
                    self.vars[v].next = Some(e);
                }
            }
        }
        Ok(())
    }
}

fn constant(v: Value) -> TRef {
    let ty = match &v {
        Value::Bool(_) => Ty::Bool,
        Value::Int(_) => Ty::Scalar {
            kind: Kind::Int,
            values: Rc::new([v.clone()].into_iter().collect()),
            order: None,
        },
        Value::Sym(_) => Ty::Scalar {
            kind: Kind::Sym,
            values: Rc::new([v.clone()].into_iter().collect()),
            order: None,
        },
    };
    Rc::new(TExpr {
        kind: TKind::Const(v),
        ty,
    })
}

fn binary(op: BinOp, a: TRef, b: TRef, ctx: &str) -> Result<TRef, SmvError> {
    let logic = match op {
        BinOp::And => Some(LogicOp::And),
        BinOp::Or => Some(LogicOp::Or),
        BinOp::Xor => Some(LogicOp::Xor),
        BinOp::Xnor => Some(LogicOp::Xnor),
        BinOp::Implies => Some(LogicOp::Implies),
        BinOp::Iff => Some(LogicOp::Iff),
        _ => None,
    };
    if let Some(lop) = logic {
        if a.ty != Ty::Bool || b.ty != Ty::Bool {
            return Err(type_err(
                ctx,
                format!("`{}` expects boolean operands, found {} and {}", op.symbol(), a.ty, b.ty),
            ));
        }
        return Ok(Rc::new(TExpr {
            kind: TKind::Logic(lop, a, b),
            ty: Ty::Bool,
        }));
    }
    let cop = match op {
        BinOp::Eq => CmpOp::Eq,
        BinOp::Neq => CmpOp::Neq,
        BinOp::Lt => CmpOp::Lt,
        BinOp::Le => CmpOp::Le,
        BinOp::Gt => CmpOp::Gt,
        BinOp::Ge => CmpOp::Ge,
        _ => unreachable!(),
    };
    let ordering = !matches!(cop, CmpOp::Eq | CmpOp::Neq);
    let mismatch = || {
        type_err(
            ctx,
            format!("cannot compare {} with {} using `{}`", a.ty, b.ty, op.symbol()),
        )
    };
    match (&a.ty, &b.ty) {
        (Ty::Bool, Ty::Bool) if !ordering => {}
        (
            Ty::Scalar {
                kind: ka,
                values: va,
                order: oa,
            },
            Ty::Scalar {
                kind: kb,
                values: vb,
                order: ob,
            },
        ) if ka == kb => {
            if *ka == Kind::Sym {
                let all: Vec<&Value> = va.iter().chain(vb.iter()).collect();
                // with an enumeration on either side, every symbol must belong to it
                for order in [oa, ob].into_iter().flatten() {
                    for v in &all {
                        if let Value::Sym(s) = v {
                            if !order.contains(s) {
                                return Err(type_err(
                                    ctx,
                                    format!("symbol `{s}` is not a value of {{{}}}", order.join(", ")),
                                ));
                            }
                        }
                    }
                }
                if ordering && oa.is_none() && ob.is_none() {
                    return Err(type_err(ctx, "ordering comparison between bare symbols"));
                }
            }
        }
        _ => return Err(mismatch()),
    }
    Ok(Rc::new(TExpr {
        kind: TKind::Cmp(cop, a, b),
        ty: Ty::Bool,
    }))
}

fn case_type<'t>(mut tys: impl Iterator<Item = &'t Ty>, ctx: &str) -> Result<Ty, SmvError> {
    let first = tys.next().expect("case has at least one branch").clone();
    tys.try_fold(first, |acc, t| match (acc, t) {
        (Ty::Bool, Ty::Bool) => Ok(Ty::Bool),
        (
            Ty::Scalar {
                kind,
                values,
                order,
            },
            Ty::Scalar {
                kind: k2,
                values: v2,
                order: o2,
            },
        ) if kind == *k2 => {
            let mut union = (*values).clone();
            union.extend(v2.iter().cloned());
            Ok(Ty::Scalar {
                kind,
                values: Rc::new(union),
                order: order.or_else(|| o2.clone()),
            })
        }
        (acc, t) => Err(type_err(
            ctx,
            format!("case branches mix {acc} and {t} values"),
        )),
    })
}

fn check_assignable(target: &ScalarType, ty: &Ty, ctx: &str) -> Result<(), SmvError> {
    match (target, ty) {
        (ScalarType::Bool, Ty::Bool) => Ok(()),
        (ScalarType::Range(..), Ty::Scalar { kind: Kind::Int, values, .. })
        | (ScalarType::Enum(_), Ty::Scalar { kind: Kind::Sym, values, .. }) => {
            match values.iter().find(|v| target.code_of(v).is_none()) {
                Some(v) => Err(type_err(ctx, format!("value {v} is outside {target}"))),
                None => Ok(()),
            }
        }
        _ => Err(type_err(ctx, format!("cannot assign {ty} to a {target} variable"))),
    }
}
