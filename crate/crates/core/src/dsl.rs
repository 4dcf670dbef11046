//! Textual front end for recursive function programs.
//!
//! The grammar is LL(1):
//!
//! ```text
//! program := { def }
//! def     := "def" ident "=" term ";"
//! term    := "Z" "[" nat "]"
//!          | "S"
//!          | "P" "[" nat "," nat "]"
//!          | "C" "(" term ";" term { "," term } ")"
//!          | "R" "(" term "," term ")"
//!          | "M" "(" term ")"
//!          | ident
//! ```
//!
//! Comments run from `#` to end of line; identifiers match `[a-z][a-z0-9_]*`.
//! Definitions may only reference earlier names, so a program is acyclic by
//! construction, and every definition is arity-checked as it is parsed. The
//! canonical rendering produced by [`pretty`] parses back to a structurally
//! identical program.

use std::collections::BTreeMap;
use std::fmt;

use crate::recfn::{arity_of, Env, RecTerm, TermPath};

/// A line/column position in the source, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// First problem found in a source text, with its position and, for pure
/// syntax errors, the token classes that would have been accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub message: String,
    pub line: u32,
    pub column: u32,
    pub expected: Vec<String>,
}

impl ParseDiagnostic {
    fn new(message: String, pos: Pos, expected: Vec<String>) -> Self {
        Self {
            message,
            line: pos.line,
            column: pos.column,
            expected,
        }
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseDiagnostic {}

/// One named definition with positions for diagnostics.
#[derive(Debug, Clone)]
pub struct Def {
    pub name: String,
    pub term: RecTerm,
    /// Position of the name in the source.
    pub pos: Pos,
    /// Position of every subterm, keyed by its path from the root.
    pub node_pos: BTreeMap<TermPath, Pos>,
}

/// An ordered, arity-checked list of definitions.
#[derive(Debug, Clone, Default)]
pub struct Program {
    defs: Vec<Def>,
}

impl Program {
    pub fn defs(&self) -> &[Def] {
        &self.defs
    }

    pub fn lookup(&self, name: &str) -> Option<&Def> {
        self.defs.iter().find(|d| d.name == name)
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    /// The definitions as an evaluation environment.
    pub fn env(&self) -> Env {
        let mut env = Env::new();
        for def in &self.defs {
            env.define(def.name.clone(), def.term.clone())
                .expect("programs are validated during parsing");
        }
        env
    }
}

/// Structural equality ignores source positions.
impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.defs.len() == other.defs.len()
            && self
                .defs
                .iter()
                .zip(&other.defs)
                .all(|(a, b)| a.name == b.name && a.term == b.term)
    }
}

impl Eq for Program {}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Def,
    Ident(String),
    Nat(usize),
    Z,
    S,
    P,
    C,
    R,
    M,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semi,
    Equals,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Def => "`def`".to_string(),
            Tok::Ident(n) => format!("identifier `{n}`"),
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::Z => "`Z`".to_string(),
            Tok::S => "`S`".to_string(),
            Tok::P => "`P`".to_string(),
            Tok::C => "`C`".to_string(),
            Tok::R => "`R`".to_string(),
            Tok::M => "`M`".to_string(),
            Tok::LBracket => "`[`".to_string(),
            Tok::RBracket => "`]`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Semi => "`;`".to_string(),
            Tok::Equals => "`=`".to_string(),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

fn lex(source: &str) -> Result<Vec<(Tok, Pos)>, ParseDiagnostic> {
    let mut tokens = Vec::new();
    let mut line: u32 = 1;
    let mut column: u32 = 1;
    let mut chars = source.chars().peekable();

    while let Some(&ch) = chars.peek() {
        let pos = Pos { line, column };
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    column += 1;
                }
            }
            '[' | ']' | '(' | ')' | ',' | ';' | '=' => {
                chars.next();
                column += 1;
                let tok = match ch {
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    _ => Tok::Equals,
                };
                tokens.push((tok, pos));
            }
            'Z' | 'S' | 'P' | 'C' | 'R' | 'M' => {
                chars.next();
                column += 1;
                let tok = match ch {
                    'Z' => Tok::Z,
                    'S' => Tok::S,
                    'P' => Tok::P,
                    'C' => Tok::C,
                    'R' => Tok::R,
                    _ => Tok::M,
                };
                tokens.push((tok, pos));
            }
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        text.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                let value: usize = text.parse().map_err(|_| {
                    ParseDiagnostic::new(format!("number `{text}` is too large"), pos, vec![])
                })?;
                tokens.push((Tok::Nat(value), pos));
            }
            c if c.is_ascii_lowercase() => {
                let mut text = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_lowercase() || d.is_ascii_digit() || d == '_' {
                        text.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                let tok = if text == "def" {
                    Tok::Def
                } else {
                    Tok::Ident(text)
                };
                tokens.push((tok, pos));
            }
            other => {
                return Err(ParseDiagnostic::new(
                    format!("unexpected character {other:?}"),
                    pos,
                    vec![],
                ));
            }
        }
    }

    // Point end-of-input diagnostics at the last real token, so positions
    // always index an actual source character.
    let end = tokens
        .last()
        .map(|(_, pos)| *pos)
        .unwrap_or(Pos { line: 1, column: 1 });
    tokens.push((Tok::Eof, end));
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    tokens: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let entry = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        entry
    }

    fn expect(&mut self, want: &Tok, expected: &str) -> Result<Pos, ParseDiagnostic> {
        if self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&[expected]))
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseDiagnostic {
        ParseDiagnostic::new(
            format!("unexpected {}", self.peek().describe()),
            self.pos(),
            expected.iter().map(|s| s.to_string()).collect(),
        )
    }

    fn nat(&mut self) -> Result<usize, ParseDiagnostic> {
        match self.peek() {
            Tok::Nat(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(&["number"])),
        }
    }

    fn term(
        &mut self,
        path: &mut Vec<crate::recfn::PathStep>,
        node_pos: &mut BTreeMap<TermPath, Pos>,
    ) -> Result<RecTerm, ParseDiagnostic> {
        use crate::recfn::PathStep;
        let start = self.pos();
        node_pos.insert(TermPath(path.clone()), start);
        let save = self.at;
        match self.bump().0 {
            Tok::Z => {
                self.expect(&Tok::LBracket, "`[`")?;
                let n = self.nat()?;
                self.expect(&Tok::RBracket, "`]`")?;
                Ok(RecTerm::Zero(n))
            }
            Tok::S => Ok(RecTerm::Succ),
            Tok::P => {
                self.expect(&Tok::LBracket, "`[`")?;
                let index = self.nat()?;
                self.expect(&Tok::Comma, "`,`")?;
                let arity = self.nat()?;
                self.expect(&Tok::RBracket, "`]`")?;
                Ok(RecTerm::Proj { index, arity })
            }
            Tok::C => {
                self.expect(&Tok::LParen, "`(`")?;
                path.push(PathStep::Outer);
                let outer = self.term(path, node_pos)?;
                path.pop();
                self.expect(&Tok::Semi, "`;`")?;
                let mut inners = Vec::new();
                path.push(PathStep::Inner(0));
                inners.push(self.term(path, node_pos)?);
                path.pop();
                while self.peek() == &Tok::Comma {
                    self.bump();
                    path.push(PathStep::Inner(inners.len()));
                    inners.push(self.term(path, node_pos)?);
                    path.pop();
                }
                self.expect(&Tok::RParen, "`)`")?;
                Ok(RecTerm::Compose {
                    outer: Box::new(outer),
                    inners,
                })
            }
            Tok::R => {
                self.expect(&Tok::LParen, "`(`")?;
                path.push(PathStep::Base);
                let base = self.term(path, node_pos)?;
                path.pop();
                self.expect(&Tok::Comma, "`,`")?;
                path.push(PathStep::Step);
                let step = self.term(path, node_pos)?;
                path.pop();
                self.expect(&Tok::RParen, "`)`")?;
                Ok(RecTerm::prim_rec(base, step))
            }
            Tok::M => {
                self.expect(&Tok::LParen, "`(`")?;
                path.push(PathStep::Body);
                let body = self.term(path, node_pos)?;
                path.pop();
                self.expect(&Tok::RParen, "`)`")?;
                Ok(RecTerm::mu(body))
            }
            Tok::Ident(name) => Ok(RecTerm::Name(name)),
            _ => {
                // Step back so the diagnostic points at the offender.
                self.at = save;
                Err(self.unexpected(&["term"]))
            }
        }
    }
}

/// Parses a program: definitions are checked for duplicate names, unresolved
/// or forward references, and arity violations as they are read. On success,
/// `parse(pretty(p))` is structurally identical to `p`.
pub fn parse(source: &str) -> Result<Program, ParseDiagnostic> {
    let tokens = lex(source)?;
    let mut parser = Parser { tokens, at: 0 };
    let mut program = Program::default();
    let mut env = Env::new();

    loop {
        if parser.peek() == &Tok::Eof {
            return Ok(program);
        }
        parser.expect(&Tok::Def, "`def`")?;
        let name_pos = parser.pos();
        let save = parser.at;
        let name = match parser.bump().0 {
            Tok::Ident(name) => name,
            _ => {
                parser.at = save;
                return Err(parser.unexpected(&["identifier"]));
            }
        };
        if env.lookup(&name).is_some() {
            return Err(ParseDiagnostic::new(
                format!("`{name}` is defined twice"),
                name_pos,
                vec![],
            ));
        }
        parser.expect(&Tok::Equals, "`=`")?;
        let mut node_pos = BTreeMap::new();
        let mut path = Vec::new();
        let term = parser.term(&mut path, &mut node_pos)?;
        parser.expect(&Tok::Semi, "`;`")?;

        if let Err(arity_err) = arity_of(&term, &env) {
            let pos = node_pos.get(&arity_err.path).copied().unwrap_or(name_pos);
            return Err(ParseDiagnostic::new(format!("{arity_err}"), pos, vec![]));
        }
        env.define(name.clone(), term.clone())
            .expect("checked just above");
        program.defs.push(Def {
            name,
            term,
            pos: name_pos,
            node_pos,
        });
    }
}

// ---------------------------------------------------------------------------
// Pretty-printer
// ---------------------------------------------------------------------------

fn render_term(term: &RecTerm, out: &mut String) {
    match term {
        RecTerm::Zero(n) => {
            out.push_str("Z[");
            out.push_str(&n.to_string());
            out.push(']');
        }
        RecTerm::Succ => out.push('S'),
        RecTerm::Proj { index, arity } => {
            out.push_str("P[");
            out.push_str(&index.to_string());
            out.push(',');
            out.push_str(&arity.to_string());
            out.push(']');
        }
        RecTerm::Compose { outer, inners } => {
            out.push_str("C(");
            render_term(outer, out);
            out.push_str("; ");
            for (i, inner) in inners.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                render_term(inner, out);
            }
            out.push(')');
        }
        RecTerm::PrimRec { base, step } => {
            out.push_str("R(");
            render_term(base, out);
            out.push_str(", ");
            render_term(step, out);
            out.push(')');
        }
        RecTerm::Mu(body) => {
            out.push_str("M(");
            render_term(body, out);
            out.push(')');
        }
        RecTerm::Name(name) => out.push_str(name),
    }
}

/// Canonical rendering: one definition per line, fixed spacing.
pub fn pretty(program: &Program) -> String {
    let mut out = String::new();
    for def in program.defs() {
        out.push_str("def ");
        out.push_str(&def.name);
        out.push_str(" = ");
        render_term(&def.term, &mut out);
        out.push_str(";\n");
    }
    out
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
