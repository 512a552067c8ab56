use super::ast::*;
use super::lexer::{is_section_keyword, tokenize, Tok, Token, ENV_MARKER, SYS_MARKER};
use super::SmvError;

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

fn keyword(tok: &Tok, kw: &str) -> bool {
    matches!(tok, Tok::Ident(w) if w.eq_ignore_ascii_case(kw))
}

const RESERVED: [&str; 13] = [
    "MODULE", "VAR", "DEFINE", "ASSIGN", "init", "next", "case", "esac", "boolean", "TRUE",
    "FALSE", "xor", "xnor",
];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SmvError> {
        let pos = self.pos();
        Err(SmvError::Syntax {
            line: pos.line,
            col: pos.col,
            msg: msg.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(w) => format!("`{w}`"),
            Tok::Int(v) => format!("`{v}`"),
            Tok::Path(p) => format!("`{p}`"),
            Tok::Controllable => "`--controllable`".into(),
            Tok::Ellipsis => "`...`".into(),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eof => "end of file".into(),
        }
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if matches!(self.peek(), Tok::Punct(q) if *q == p) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: &str) -> Result<(), SmvError> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            self.err(format!("expected `{p}`, found {}", self.describe()))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if keyword(self.peek(), kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, SmvError> {
        match self.peek().clone() {
            Tok::Ident(w) if !RESERVED.iter().any(|r| r.eq_ignore_ascii_case(&w)) => {
                self.advance();
                Ok(w)
            }
            _ => self.err(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn int(&mut self) -> Result<i64, SmvError> {
        let neg = self.eat_punct("-");
        match *self.peek() {
            Tok::Int(v) => {
                self.advance();
                Ok(if neg { -v } else { v })
            }
            _ => self.err(format!("expected an integer, found {}", self.describe())),
        }
    }

    fn at_section_end(&self) -> bool {
        match self.peek() {
            Tok::Eof => true,
            Tok::Ident(w) => is_section_keyword(w),
            _ => false,
        }
    }

    fn skip_ellipses(&mut self) {
        while *self.peek() == Tok::Ellipsis {
            self.advance();
        }
    }

    fn spec(&mut self) -> Result<SmvSpec, SmvError> {
        let mut modules: Vec<SmvModule> = Vec::new();
        while *self.peek() != Tok::Eof {
            let m = self.module()?;
            if let Some(prev) = modules.iter().find(|p| p.name == m.name) {
                return Err(SmvError::DuplicateModule {
                    name: m.name,
                    first: prev.pos.line,
                    second: m.pos.line,
                });
            }
            modules.push(m);
        }
        Ok(SmvSpec { modules })
    }

    fn module(&mut self) -> Result<SmvModule, SmvError> {
        let pos = self.pos();
        if !self.eat_keyword("MODULE") {
            return self.err(format!("expected `MODULE`, found {}", self.describe()));
        }
        let name = self.ident("module name")?;
        let mut params = Vec::new();
        if self.eat_punct("(") {
            if !self.eat_punct(")") {
                loop {
                    params.push(self.ident("parameter name")?);
                    if self.eat_punct(")") {
                        break;
                    }
                    self.expect_punct(",")?;
                }
            }
        }
        let mut m = SmvModule {
            name,
            params,
            vars: Vec::new(),
            defines: Vec::new(),
            assigns: Vec::new(),
            instances: Vec::new(),
            sys_automata: Vec::new(),
            env_automata: Vec::new(),
            pos,
        };
        loop {
            self.skip_ellipses();
            let Tok::Ident(w) = self.peek().clone() else {
                if *self.peek() == Tok::Eof {
                    break;
                }
                return self.err(format!("expected a section, found {}", self.describe()));
            };
            if w.eq_ignore_ascii_case("MODULE") {
                break;
            } else if w.eq_ignore_ascii_case("VAR") {
                self.advance();
                let controllable = *self.peek() == Tok::Controllable;
                if controllable {
                    self.advance();
                }
                self.var_section(&mut m, controllable)?;
            } else if w.eq_ignore_ascii_case("DEFINE") {
                self.advance();
                self.define_section(&mut m)?;
            } else if w.eq_ignore_ascii_case("ASSIGN") {
                self.advance();
                self.assign_section(&mut m)?;
            } else if w == SYS_MARKER || w == ENV_MARKER {
                self.advance();
                let refs = self.automaton_section()?;
                if w == SYS_MARKER {
                    m.sys_automata.extend(refs);
                } else {
                    m.env_automata.extend(refs);
                }
            } else {
                return self.err(format!("expected a section, found `{w}`"));
            }
        }
        if m.name != SmvSpec::MAIN {
            if let Some(v) = m.vars.iter().find(|v| v.controllable) {
                return Err(SmvError::ControllableOutsideMain {
                    module: m.name,
                    var: v.name.clone(),
                });
            }
            if !m.sys_automata.is_empty() || !m.env_automata.is_empty() {
                return Err(SmvError::AutomataOutsideMain { module: m.name });
            }
        }
        Ok(m)
    }

    fn var_section(&mut self, m: &mut SmvModule, controllable: bool) -> Result<(), SmvError> {
        loop {
            self.skip_ellipses();
            if self.at_section_end() {
                return Ok(());
            }
            let pos = self.pos();
            let name = self.ident("variable name")?;
            self.expect_punct(":")?;
            if self.eat_keyword("boolean") {
                m.vars.push(VarDecl {
                    name,
                    ty: VarType::Boolean,
                    controllable,
                    pos,
                });
            } else if self.eat_punct("{") {
                let mut syms = Vec::new();
                loop {
                    let s = self.ident("enumeration symbol")?;
                    if syms.contains(&s) {
                        return self.err(format!("duplicate enumeration symbol `{s}`"));
                    }
                    syms.push(s);
                    if self.eat_punct("}") {
                        break;
                    }
                    self.expect_punct(",")?;
                }
                self.push_scalar(m, name, VarType::Enum(syms), controllable, pos)?;
            } else if matches!(self.peek(), Tok::Int(_) | Tok::Punct("-")) {
                let lo = self.int()?;
                self.expect_punct("..")?;
                let hi = self.int()?;
                if lo > hi {
                    return self.err(format!("empty range {lo}..{hi}"));
                }
                self.push_scalar(m, name, VarType::Range(lo, hi), controllable, pos)?;
            } else {
                let module = self.ident("type")?;
                let mut actuals = Vec::new();
                if self.eat_punct("(") && !self.eat_punct(")") {
                    loop {
                        actuals.push(self.expr()?);
                        if self.eat_punct(")") {
                            break;
                        }
                        self.expect_punct(",")?;
                    }
                }
                if controllable {
                    return Err(SmvError::ControllableNotBoolean { var: name });
                }
                m.instances.push(Instance {
                    name,
                    module,
                    actuals,
                    pos,
                });
            }
            self.expect_punct(";")?;
        }
    }

    fn push_scalar(
        &self,
        m: &mut SmvModule,
        name: String,
        ty: VarType,
        controllable: bool,
        pos: Pos,
    ) -> Result<(), SmvError> {
        if controllable {
            return Err(SmvError::ControllableNotBoolean { var: name });
        }
        m.vars.push(VarDecl {
            name,
            ty,
            controllable,
            pos,
        });
        Ok(())
    }

    fn define_section(&mut self, m: &mut SmvModule) -> Result<(), SmvError> {
        loop {
            self.skip_ellipses();
            if self.at_section_end() {
                return Ok(());
            }
            let pos = self.pos();
            let name = self.ident("define name")?;
            self.expect_punct(":=")?;
            let expr = self.expr()?;
            self.expect_punct(";")?;
            m.defines.push(Define { name, expr, pos });
        }
    }

    fn assign_section(&mut self, m: &mut SmvModule) -> Result<(), SmvError> {
        loop {
            self.skip_ellipses();
            if self.at_section_end() {
                return Ok(());
            }
            let pos = self.pos();
            let is_init = if self.eat_keyword("init") {
                true
            } else if self.eat_keyword("next") {
                false
            } else if matches!(self.peek(), Tok::Ident(_)) {
                return Err(SmvError::Unsupported(format!(
                    "{pos}: only init(...) and next(...) assignments are supported"
                )));
            } else {
                return self.err(format!("expected `init` or `next`, found {}", self.describe()));
            };
            self.expect_punct("(")?;
            let target = self.ident("variable name")?;
            self.expect_punct(")")?;
            self.expect_punct(":=")?;
            let expr = self.expr()?;
            self.expect_punct(";")?;
            let slot = match m.assigns.iter_mut().find(|a| a.target == target) {
                Some(a) => a,
                None => {
                    m.assigns.push(Assign {
                        target: target.clone(),
                        init: None,
                        next: None,
                        pos,
                    });
                    m.assigns.last_mut().unwrap()
                }
            };
            let field = if is_init { &mut slot.init } else { &mut slot.next };
            if field.is_some() {
                return Err(SmvError::DuplicateAssign {
                    var: target,
                    kind: if is_init { "init" } else { "next" },
                });
            }
            *field = Some(expr);
        }
    }

    fn automaton_section(&mut self) -> Result<Vec<AutomatonRef>, SmvError> {
        let mut refs = Vec::new();
        loop {
            self.skip_ellipses();
            match self.peek().clone() {
                Tok::Path(raw) => {
                    self.advance();
                    self.expect_punct(";")?;
                    let (negated, path) = match raw.strip_prefix('!') {
                        Some(p) => (true, p.trim_start()),
                        None => (false, raw.as_str()),
                    };
                    if path.is_empty() {
                        return self.err("empty automaton path");
                    }
                    refs.push(AutomatonRef {
                        path: path.to_string(),
                        negated,
                    });
                }
                _ => return Ok(refs),
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, SmvError> {
        let lhs = self.iff()?;
        if self.eat_punct("->") {
            let rhs = self.expr()?;
            return Ok(Expr::Binary(BinOp::Implies, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn iff(&mut self) -> Result<Expr, SmvError> {
        let mut lhs = self.or()?;
        while self.eat_punct("<->") {
            let rhs = self.or()?;
            lhs = Expr::Binary(BinOp::Iff, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr, SmvError> {
        let mut lhs = self.and()?;
        loop {
            let op = if self.eat_punct("|") {
                BinOp::Or
            } else if self.eat_keyword("xor") {
                BinOp::Xor
            } else if self.eat_keyword("xnor") {
                BinOp::Xnor
            } else {
                return Ok(lhs);
            };
            let rhs = self.and()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn and(&mut self) -> Result<Expr, SmvError> {
        let mut lhs = self.comparison()?;
        while self.eat_punct("&") {
            let rhs = self.comparison()?;
            lhs = Expr::Binary(BinOp::And, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn comparison(&mut self) -> Result<Expr, SmvError> {
        let lhs = self.additive()?;
        let op = match self.peek() {
            Tok::Punct("=") => BinOp::Eq,
            Tok::Punct("!=") => BinOp::Neq,
            Tok::Punct("<") => BinOp::Lt,
            Tok::Punct("<=") => BinOp::Le,
            Tok::Punct(">") => BinOp::Gt,
            Tok::Punct(">=") => BinOp::Ge,
            _ => return Ok(lhs),
        };
        self.advance();
        let rhs = self.additive()?;
        Ok(Expr::Binary(op, Box::new(lhs), Box::new(rhs)))
    }

    fn additive(&mut self) -> Result<Expr, SmvError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat_punct("+") {
                BinOp::Add
            } else if self.eat_punct("-") {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, SmvError> {
        if self.eat_punct("!") {
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        if *self.peek() == Tok::Punct("-") {
            return Ok(Expr::Int(self.int()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, SmvError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.advance();
                Ok(Expr::Int(v))
            }
            Tok::Punct("(") => {
                self.advance();
                let e = self.expr()?;
                self.expect_punct(")")?;
                Ok(e)
            }
            Tok::Ident(w) if w.eq_ignore_ascii_case("TRUE") => {
                self.advance();
                Ok(Expr::Bool(true))
            }
            Tok::Ident(w) if w.eq_ignore_ascii_case("FALSE") => {
                self.advance();
                Ok(Expr::Bool(false))
            }
            Tok::Ident(w) if w.eq_ignore_ascii_case("case") => {
                self.advance();
                let mut arms = Vec::new();
                while !self.eat_keyword("esac") {
                    let cond = self.expr()?;
                    self.expect_punct(":")?;
                    let value = self.expr()?;
                    self.expect_punct(";")?;
                    arms.push((cond, value));
                }
                if arms.is_empty() {
                    return self.err("empty case expression");
                }
                Ok(Expr::Case(arms))
            }
            Tok::Ident(w) if w.eq_ignore_ascii_case("next") || w.eq_ignore_ascii_case("init") => {
                Err(SmvError::Unsupported(format!(
                    "{pos}: `{w}(...)` inside expressions"
                )))
            }
            Tok::Ident(_) => {
                let mut path = vec![self.ident("identifier")?];
                while self.eat_punct(".") {
                    path.push(self.ident("member name")?);
                }
                Ok(Expr::Name { path, pos })
            }
            _ => self.err(format!("expected an expression, found {}", self.describe())),
        }
    }
}

/// Parses extended-SMV source text.
pub fn parse_smv(text: &str) -> Result<SmvSpec, SmvError> {
    let toks = tokenize(text)?;
    Parser { toks, i: 0 }.spec()
}
