//! Front end for the extended SMV format: parsing, name resolution with
//! type checking, and flattening to a boolean model.
//!
//! ```text
//! MODULE main
//! VAR  x : boolean;
//! VAR --controllable
//!   y : boolean;
//! DEFINE ok := x = y;
//! SYS_AUTOMATON_SPEC
//!   guarantee.gff;
//! ENV_AUTOMATON_SPEC
//!   !assumption.gff;
//! ```

pub mod ast;
mod expr;
mod flatten;
mod interp;
mod lexer;
mod parser;
mod resolve;

use thiserror::Error;

pub use ast::{AutomatonRef, SmvModule, SmvSpec, VarType};
pub use expr::{BoolExpr, ExprRef};
pub use flatten::{bit_name, flatten, Encoding, FlatLatch, FlatModel};
pub use interp::Interpreter;
pub use parser::parse_smv;
pub use resolve::{
    resolve, CmpOp, DDefine, DVar, Design, LogicOp, ScalarType, SignalRef, TExpr, TKind, TRef,
    Ty, Value, VarRole,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmvError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("module `{name}` declared twice (lines {first} and {second})")]
    DuplicateModule {
        name: String,
        first: usize,
        second: usize,
    },
    #[error("no module named `main`")]
    NoMain,
    #[error("module `{module}`: variable `{var}` is marked controllable, but only `main` may declare controllable variables")]
    ControllableOutsideMain { module: String, var: String },
    #[error("module `{module}`: automaton sections are only allowed in `main`")]
    AutomataOutsideMain { module: String },
    #[error("controllable variable `{var}` must be boolean")]
    ControllableNotBoolean { var: String },
    #[error("module `{module}`: name `{name}` declared more than once")]
    DuplicateName { module: String, name: String },
    #[error("more than one {kind}() assignment for `{var}`")]
    DuplicateAssign { var: String, kind: &'static str },
    #[error("{pos}: unbound identifier `{name}` in module `{module}`")]
    Unbound {
        name: String,
        module: String,
        pos: ast::Pos,
    },
    #[error("unknown module `{0}`")]
    UnknownModule(String),
    #[error("instance `{instance}` passes {found} argument(s) to `{module}`, which takes {expected}")]
    Arity {
        instance: String,
        module: String,
        expected: usize,
        found: usize,
    },
    #[error("type error in {context}: {msg}")]
    Type { context: String, msg: String },
    #[error("cyclic module instantiation: {}", .0.join(" -> "))]
    CyclicInstantiation(Vec<String>),
    #[error("cyclic definition of `{0}`")]
    CyclicDefinition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("variable `{0}` outside `main` has no next() assignment")]
    MissingNext(String),
    #[error("automaton proposition `{name}` is not a boolean signal of `main`")]
    UnknownProposition { name: String },
}
