use super::ast::Pos;
use super::SmvError;

pub const SYS_MARKER: &str = "SYS_AUTOMATON_SPEC";
pub const ENV_MARKER: &str = "ENV_AUTOMATON_SPEC";

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    /// Raw entry of an automaton section, up to (excluding) the `;`.
    Path(String),
    /// The `--controllable` comment marker.
    Controllable,
    /// A `...` elision line.
    Ellipsis,
    Punct(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

const PUNCT: [&str; 22] = [
    "<->", "->", ":=", "..", "!=", "<=", ">=", "(", ")", "{", "}", ",", ";", ":", ".", "!", "&",
    "|", "=", "<", ">", "+",
];

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '$' | '#')
}

/// Whether `word` opens a new section (and therefore ends an automaton list).
pub fn is_section_keyword(word: &str) -> bool {
    word == SYS_MARKER
        || word == ENV_MARKER
        || ["MODULE", "VAR", "DEFINE", "ASSIGN"]
            .iter()
            .any(|k| k.eq_ignore_ascii_case(word))
}

struct Lexer<'a> {
    src: &'a str,
    off: usize,
    line: usize,
    col: usize,
    out: Vec<Token>,
}

impl<'a> Lexer<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.off..]
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self, n: usize) {
        for c in self.src[self.off..self.off + n].chars() {
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        self.off += n;
    }

    fn skip_line(&mut self) {
        let n = self.rest().find('\n').unwrap_or(self.rest().len());
        self.bump(n);
    }

    fn err(&self, msg: impl Into<String>) -> SmvError {
        SmvError::Syntax {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    /// Skips blanks and comments, emitting the `--controllable` marker.
    fn skip_trivia(&mut self) {
        loop {
            let rest = self.rest();
            let Some(c) = rest.chars().next() else { return };
            if c.is_whitespace() {
                self.bump(c.len_utf8());
            } else if let Some(after) = rest.strip_prefix("--") {
                if let Some(tail) = after.strip_prefix("controllable") {
                    if !tail.starts_with(is_ident_char) {
                        self.out.push(Token {
                            tok: Tok::Controllable,
                            pos: self.pos(),
                        });
                    }
                }
                self.skip_line();
            } else if rest.starts_with("//") {
                self.skip_line();
            } else {
                return;
            }
        }
    }

    fn word_ahead(&self) -> &'a str {
        let rest = self.rest();
        if !rest.starts_with(is_ident_start) {
            return "";
        }
        let n = rest.find(|c| !is_ident_char(c)).unwrap_or(rest.len());
        &rest[..n]
    }

    fn lex_paths(&mut self) -> Result<(), SmvError> {
        loop {
            self.skip_trivia();
            let rest = self.rest();
            if rest.is_empty() || is_section_keyword(self.word_ahead()) {
                return Ok(());
            }
            let pos = self.pos();
            if rest.starts_with("...") {
                self.out.push(Token { tok: Tok::Ellipsis, pos });
                self.bump(3);
                continue;
            }
            let line_end = rest.find('\n').unwrap_or(rest.len());
            let Some(semi) = rest[..line_end].find(';') else {
                return Err(self.err("expected `;` after automaton path"));
            };
            let path = rest[..semi].trim_end().to_string();
            self.out.push(Token {
                tok: Tok::Path(path),
                pos,
            });
            self.bump(semi);
            self.out.push(Token {
                tok: Tok::Punct(";"),
                pos: self.pos(),
            });
            self.bump(1);
        }
    }

    fn run(mut self) -> Result<Vec<Token>, SmvError> {
        loop {
            self.skip_trivia();
            let pos = self.pos();
            let rest = self.rest();
            let Some(c) = rest.chars().next() else { break };
            if is_ident_start(c) {
                let word = self.word_ahead();
                self.bump(word.len());
                self.out.push(Token {
                    tok: Tok::Ident(word.to_string()),
                    pos,
                });
                if word == SYS_MARKER || word == ENV_MARKER {
                    self.lex_paths()?;
                }
            } else if c.is_ascii_digit() {
                let n = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                let v = rest[..n]
                    .parse()
                    .map_err(|_| self.err(format!("integer `{}` out of range", &rest[..n])))?;
                self.bump(n);
                self.out.push(Token { tok: Tok::Int(v), pos });
            } else if rest.starts_with("...") {
                self.bump(3);
                self.out.push(Token { tok: Tok::Ellipsis, pos });
            } else if let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) {
                self.bump(p.len());
                self.out.push(Token { tok: Tok::Punct(p), pos });
            } else if c == '-' {
                self.bump(1);
                self.out.push(Token { tok: Tok::Punct("-"), pos });
            } else {
                return Err(self.err(format!("unexpected character `{c}`")));
            }
        }
        let pos = self.pos();
        self.out.push(Token { tok: Tok::Eof, pos });
        Ok(self.out)
    }
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, SmvError> {
    Lexer {
        src,
        off: 0,
        line: 1,
        col: 1,
        out: Vec::new(),
    }
    .run()
}
