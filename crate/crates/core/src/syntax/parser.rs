//! Recursive-descent parser for terms, equations, systems and quasi-identities.
//!
//! Grammar (`*` binds tighter than `+`, `~` tightest, both binary operators
//! associate to the left):
//!
//! ```text
//! equation := term ('=' | '<=' | '>=') term
//! term     := product ('+' product)*
//! product  := unary ('*' unary)*
//! unary    := '~' unary | atom
//! atom     := '0' | '1' | x<digits> | c<ident> | '(' term ')'
//! ```

use std::collections::BTreeSet;

use super::ast::{sort_vars, Equation, Position, QuasiIdentity, System, Term};
use crate::algebra::{is_algebra_directive, strip_comment, CAlgebra};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(String),
    Const(String),
    Zero,
    One,
    Plus,
    Star,
    Tilde,
    LParen,
    RParen,
    Eq,
    Le,
    Ge,
    Amp,
    Arrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Var(v) | Tok::Const(v) => format!("`{v}`"),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Ge => "`>=`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Arrow => "`->`".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    line: usize,
    column0: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(&self) -> Result<Vec<(Tok, usize)>> {
        let bytes = self.src.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let col = self.column0 + i;
            let b = bytes[i];
            let two = bytes.get(i..i + 2);
            let single = match b {
                b' ' | b'\t' | b'\r' => {
                    i += 1;
                    continue;
                }
                b'+' => Some(Tok::Plus),
                b'*' => Some(Tok::Star),
                b'~' => Some(Tok::Tilde),
                b'(' => Some(Tok::LParen),
                b')' => Some(Tok::RParen),
                b'=' => Some(Tok::Eq),
                b'&' => Some(Tok::Amp),
                _ => None,
            };
            if let Some(t) = single {
                out.push((t, col));
                i += 1;
                continue;
            }
            match two {
                Some(b"<=") => {
                    out.push((Tok::Le, col));
                    i += 2;
                    continue;
                }
                Some(b">=") => {
                    out.push((Tok::Ge, col));
                    i += 2;
                    continue;
                }
                Some(b"->") => {
                    out.push((Tok::Arrow, col));
                    i += 2;
                    continue;
                }
                _ => {}
            }
            if b.is_ascii_alphanumeric() || b == b'_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &self.src[start..i];
                let tok = match word {
                    "0" => Tok::Zero,
                    "1" => Tok::One,
                    w if w.len() > 1
                        && w.starts_with('x')
                        && w[1..].bytes().all(|d| d.is_ascii_digit()) =>
                    {
                        Tok::Var(w.to_string())
                    }
                    w if w.len() > 1 && w.starts_with('c') => Tok::Const(w.to_string()),
                    w => return Err(Error::syntax(
                        self.line,
                        col,
                        format!(
                            "unknown identifier `{w}` (variables are x<digits>, constants c<name>)"
                        ),
                    )),
                };
                out.push((tok, col));
                continue;
            }
            let ch = self.src[i..].chars().next().unwrap_or('?');
            return Err(Error::syntax(
                self.line,
                col,
                format!("unexpected character `{ch}`"),
            ));
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn new(src: &str, line: usize, column0: usize) -> Result<Parser> {
        let toks = Lexer { src, line, column0 }.tokens()?;
        Ok(Parser {
            toks,
            pos: 0,
            line,
            end_col: column0 + src.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::syntax(self.line, self.col(), msg)
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.product()?;
        while self.eat(&Tok::Plus) {
            t = Term::join(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        while self.eat(&Tok::Star) {
            t = Term::meet(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term> {
        if self.eat(&Tok::Tilde) {
            return Ok(Term::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term> {
        let t = match self.peek().cloned() {
            Some(Tok::Zero) => Term::Zero,
            Some(Tok::One) => Term::One,
            Some(Tok::Var(v)) => Term::Var(v),
            Some(Tok::Const(c)) => Term::Const(c),
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.term()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                return Ok(inner);
            }
            _ => return Err(self.unexpected("a term")),
        };
        self.pos += 1;
        if matches!(
            self.peek(),
            Some(Tok::Var(_) | Tok::Const(_) | Tok::Zero | Tok::One | Tok::LParen | Tok::Tilde)
        ) {
            return Err(self.error("juxtaposition is not a product; write `*`"));
        }
        Ok(t)
    }

    fn equation(&mut self) -> Result<Equation> {
        let lhs = self.term()?;
        let rel = self.peek().cloned();
        let eq = match rel {
            Some(Tok::Eq) => {
                self.pos += 1;
                Equation::eq(lhs, self.term()?)
            }
            Some(Tok::Le) => {
                self.pos += 1;
                Equation::leq(lhs, self.term()?)
            }
            Some(Tok::Ge) => {
                self.pos += 1;
                let rhs = self.term()?;
                Equation::leq(rhs, lhs)
            }
            _ => return Err(self.unexpected("`=`, `<=` or `>=`")),
        };
        Ok(eq)
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text, 1, 1)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_equation(text: &str) -> Result<Equation> {
    parse_equation_at(text, 1, 1)
}

fn parse_equation_at(text: &str, line: usize, column: usize) -> Result<Equation> {
    let mut p = Parser::new(text, line, column)?;
    let e = p.equation()?;
    p.finish()?;
    Ok(e)
}

/// `p1 & p2 & .. -> conclusion`; the premise list may be empty.
pub fn parse_quasi_identity(text: &str) -> Result<QuasiIdentity> {
    let mut p = Parser::new(text, 1, 1)?;
    let mut premises = Vec::new();
    if !p.eat(&Tok::Arrow) {
        loop {
            premises.push(p.equation()?);
            if p.eat(&Tok::Arrow) {
                break;
            }
            if !p.eat(&Tok::Amp) {
                return Err(p.unexpected("`&` or `->`"));
            }
        }
    }
    let conclusion = p.equation()?;
    p.finish()?;
    Ok(QuasiIdentity {
        premises,
        conclusion,
    })
}

/// Checks that every constant of `eq` resolves in `calg`.
pub fn check_constants(eq: &Equation, calg: &CAlgebra) -> Result<()> {
    let mut names = BTreeSet::new();
    eq.collect_constants(&mut names);
    match names.into_iter().find(|n| calg.constant(n).is_none()) {
        Some(name) => Err(Error::UnknownConstant { name }),
        None => Ok(()),
    }
}

/// Parses an equation and resolves its constants.
pub fn parse_equation_in(text: &str, calg: &CAlgebra) -> Result<Equation> {
    let eq = parse_equation(text)?;
    check_constants(&eq, calg)?;
    Ok(eq)
}

/// Whether a (comment-stripped) line is handled outside the equation grammar.
pub(crate) fn is_directive(line: &str) -> bool {
    is_algebra_directive(line)
        || matches!(
            line.split_whitespace().next(),
            Some("include-algebra" | "vars")
        )
}

/// Parses a system file body. Algebra directives and `include-algebra` lines are
/// skipped here; constants are resolved against `calg`. Without a `vars` header the
/// variables are those the equations mention.
pub fn parse_system(text: &str, calg: &CAlgebra) -> Result<System> {
    let mut vars: Option<Vec<String>> = None;
    let mut equations = Vec::new();
    let mut positions = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let column = raw.find(line).unwrap_or(0) + 1;
        if line.split_whitespace().next() == Some("vars") {
            if vars.is_some() {
                return Err(Error::syntax(line_no, column, "duplicate `vars` header"));
            }
            if !equations.is_empty() {
                return Err(Error::syntax(
                    line_no,
                    column,
                    "`vars` must precede the equations",
                ));
            }
            let mut list = Vec::new();
            for (offset, word) in word_offsets(line).skip(1) {
                let ok = word.len() > 1
                    && word.starts_with('x')
                    && word[1..].bytes().all(|d| d.is_ascii_digit());
                if !ok || list.contains(&word.to_string()) {
                    return Err(Error::syntax(
                        line_no,
                        column + offset,
                        format!("bad or repeated variable `{word}`"),
                    ));
                }
                list.push(word.to_string());
            }
            vars = Some(list);
            continue;
        }
        if is_directive(line) {
            continue;
        }
        let eq = parse_equation_at(line, line_no, column)?;
        let mut names = BTreeSet::new();
        eq.collect_constants(&mut names);
        if let Some(name) = names.into_iter().find(|n| calg.constant(n).is_none()) {
            let col = column + line.find(name.as_str()).unwrap_or(0);
            return Err(Error::syntax(
                line_no,
                col,
                format!("unknown constant `{name}`"),
            ));
        }
        if let Some(declared) = &vars {
            let mut used = BTreeSet::new();
            eq.collect_vars(&mut used);
            if let Some(name) = used.into_iter().find(|v| !declared.contains(v)) {
                let col = column + line.find(name.as_str()).unwrap_or(0);
                return Err(Error::syntax(
                    line_no,
                    col,
                    format!("undeclared variable `{name}`"),
                ));
            }
        }
        equations.push(eq);
        positions.push(Position {
            line: line_no,
            column,
        });
    }
    let vars = match vars {
        Some(v) => v,
        None => {
            let mut used = BTreeSet::new();
            for e in &equations {
                e.collect_vars(&mut used);
            }
            sort_vars(used)
        }
    };
    Ok(System {
        vars,
        equations,
        positions,
    })
}

fn word_offsets(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |w| {
        let offset = w.as_ptr() as usize - line.as_ptr() as usize;
        (offset, w)
    })
}
