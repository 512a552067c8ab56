use std::fmt;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A parsed extended-SMV file.
#[derive(Clone, Debug, PartialEq)]
pub struct SmvSpec {
    pub modules: Vec<SmvModule>,
}

impl SmvSpec {
    pub const MAIN: &'static str = "main";

    pub fn module(&self, name: &str) -> Option<&SmvModule> {
        self.modules.iter().find(|m| m.name == name)
    }

    pub fn main(&self) -> Option<&SmvModule> {
        self.module(Self::MAIN)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmvModule {
    pub name: String,
    pub params: Vec<String>,
    pub vars: Vec<VarDecl>,
    pub defines: Vec<Define>,
    pub assigns: Vec<Assign>,
    pub instances: Vec<Instance>,
    pub sys_automata: Vec<AutomatonRef>,
    pub env_automata: Vec<AutomatonRef>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarType {
    Boolean,
    Range(i64, i64),
    Enum(Vec<String>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarDecl {
    pub name: String,
    pub ty: VarType,
    pub controllable: bool,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub name: String,
    pub module: String,
    pub actuals: Vec<Expr>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Define {
    pub name: String,
    pub expr: Expr,
    pub pos: Pos,
}

/// `init(target)` and `next(target)` for one variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Assign {
    pub target: String,
    pub init: Option<Expr>,
    pub next: Option<Expr>,
    pub pos: Pos,
}

/// An entry of `SYS_AUTOMATON_SPEC` / `ENV_AUTOMATON_SPEC`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomatonRef {
    pub path: String,
    pub negated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    And,
    Or,
    Xor,
    Xnor,
    Implies,
    Iff,
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Xor => "xor",
            BinOp::Xnor => "xnor",
            BinOp::Implies => "->",
            BinOp::Iff => "<->",
            BinOp::Eq => "=",
            BinOp::Neq => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Add => "+",
            BinOp::Sub => "-",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Bool(bool),
    Int(i64),
    /// Possibly dotted reference such as `h.reached42`.
    Name { path: Vec<String>, pos: Pos },
    Not(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// `case c1 : e1; ... esac`
    Case(Vec<(Expr, Expr)>),
}
