//! Textual term syntax.
//!
//! ```text
//! lam x:e . body      forall d:d . body     exists y:e . body
//! atleast 2 x:e . b   atmost 1 x:e . b      iota d:d . body
//! f a b               (application, left associative)
//! a & b   a | b   a -> b   ~a   d' > d
//! ```
//!
//! Types are written `e`, `d`, `t`, `<a,b>`. Identifiers bound by an
//! enclosing binder are variables, `name:type` is a free variable and any
//! other identifier must be a constant of the [`Signature`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::term::{BinOp, Binder, CardKind, Term, Var};
use super::types::SemType;
use super::LambdaError;

/// Types of the constants a reader may resolve.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    consts: BTreeMap<String, SemType>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, ty: SemType) -> Self {
        self.insert(name, ty);
        self
    }

    pub fn insert(&mut self, name: &str, ty: SemType) {
        self.consts.insert(name.to_string(), ty);
    }

    pub fn get(&self, name: &str) -> Option<&SemType> {
        self.consts.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &SemType)> {
        self.consts.iter()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(u32),
    LParen,
    RParen,
    Dot,
    Colon,
    Lt,
    Gt,
    Comma,
    Amp,
    Bar,
    Arrow,
    Tilde,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, LambdaError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            '.' => {
                out.push((pos, Tok::Dot));
                i += 1;
            }
            ':' => {
                out.push((pos, Tok::Colon));
                i += 1;
            }
            '<' => {
                out.push((pos, Tok::Lt));
                i += 1;
            }
            '>' => {
                out.push((pos, Tok::Gt));
                i += 1;
            }
            ',' => {
                out.push((pos, Tok::Comma));
                i += 1;
            }
            '&' => {
                out.push((pos, Tok::Amp));
                i += 1;
            }
            '|' => {
                out.push((pos, Tok::Bar));
                i += 1;
            }
            '~' => {
                out.push((pos, Tok::Tilde));
                i += 1;
            }
            '-' if chars.get(i + 1).map(|p| p.1) == Some('>') => {
                out.push((pos, Tok::Arrow));
                i += 2;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|p| p.1).collect();
                let n = text.parse().map_err(|_| LambdaError::Syntax {
                    position: pos,
                    message: format!("number out of range: {text}"),
                })?;
                out.push((pos, Tok::Num(n)));
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                while i < chars.len() && (chars[i].1 == '\'' || chars[i].1 == '*') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|p| p.1).collect();
                out.push((pos, Tok::Ident(text)));
            }
            other => {
                return Err(LambdaError::Syntax {
                    position: pos,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

const KEYWORDS: [&str; 6] = ["lam", "forall", "exists", "atleast", "atmost", "iota"];

struct Reader<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: &'a Signature,
    scope: Vec<Var>,
}

impl Reader<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|p| &p.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|p| p.0).unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> LambdaError {
        LambdaError::Syntax {
            position: self.here(),
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), LambdaError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {tok:?}")))
        }
    }

    fn ident(&mut self) -> Result<String, LambdaError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected identifier")),
        }
    }

    fn ty(&mut self) -> Result<SemType, LambdaError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                match s.as_str() {
                    "e" => Ok(SemType::Entity),
                    "d" => Ok(SemType::Degree),
                    "t" => Ok(SemType::Truth),
                    _ => Err(self.error(format!("unknown base type {s}"))),
                }
            }
            Some(Tok::Lt) => {
                self.pos += 1;
                let a = self.ty()?;
                self.expect(Tok::Comma)?;
                let r = self.ty()?;
                self.expect(Tok::Gt)?;
                Ok(SemType::arrow(a, r))
            }
            _ => Err(self.error("expected type")),
        }
    }

    fn term(&mut self) -> Result<Term, LambdaError> {
        let left = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let right = self.term()?;
            Ok(Term::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn disjunction(&mut self) -> Result<Term, LambdaError> {
        let mut left = self.conjunction()?;
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            let right = self.conjunction()?;
            left = Term::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Term, LambdaError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let right = self.unary()?;
            left = Term::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Term, LambdaError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Term::not(self.unary()?))
            }
            Some(Tok::Ident(s)) if KEYWORDS.contains(&s.as_str()) => self.binder(),
            _ => self.comparison(),
        }
    }

    fn binder(&mut self) -> Result<Term, LambdaError> {
        let kw = self.ident()?;
        let binder = match kw.as_str() {
            "lam" => Binder::Lam,
            "forall" => Binder::Forall,
            "exists" => Binder::Exists,
            "iota" => Binder::Iota,
            "atleast" | "atmost" => {
                let n = match self.peek() {
                    Some(Tok::Num(n)) if *n > 0 => *n,
                    _ => return Err(self.error("expected positive count")),
                };
                self.pos += 1;
                let kind = if kw == "atleast" {
                    CardKind::AtLeast
                } else {
                    CardKind::AtMost
                };
                Binder::Card(kind, n)
            }
            _ => unreachable!("keyword list"),
        };
        let name = self.ident()?;
        self.expect(Tok::Colon)?;
        let ty = self.ty()?;
        self.expect(Tok::Dot)?;
        let v = Var::new(name, ty);
        self.scope.push(v.clone());
        let body = self.term();
        self.scope.pop();
        Ok(Term::Bind(binder, v, Box::new(body?)))
    }

    fn comparison(&mut self) -> Result<Term, LambdaError> {
        let left = self.application()?;
        if self.peek() == Some(&Tok::Gt) {
            self.pos += 1;
            let right = self.application()?;
            Ok(Term::greater(left, right))
        } else {
            Ok(left)
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(Tok::LParen) => true,
            Some(Tok::Ident(s)) => !KEYWORDS.contains(&s.as_str()),
            _ => false,
        }
    }

    fn application(&mut self) -> Result<Term, LambdaError> {
        let mut head = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            head = Term::app(head, arg);
        }
        Ok(head)
    }

    fn atom(&mut self) -> Result<Term, LambdaError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Colon) {
                    self.pos += 1;
                    let ty = self.ty()?;
                    return Ok(Term::var(name, ty));
                }
                if let Some(v) = self.scope.iter().rev().find(|v| v.name == name) {
                    return Ok(Term::Var(v.clone()));
                }
                match self.sig.get(&name) {
                    Some(ty) => Ok(Term::constant(name, ty.clone())),
                    None => Err(LambdaError::UnknownIdentifier(name)),
                }
            }
            _ => Err(self.error("expected term")),
        }
    }
}

/// Reads a term; constants are typed through `sig`. The result is
/// type-checked, so ill-typed input is an error.
pub fn parse_term(src: &str, sig: &Signature) -> Result<Term, LambdaError> {
    let toks = tokenize(src)?;
    let mut r = Reader {
        toks,
        pos: 0,
        end: src.len(),
        sig,
        scope: Vec::new(),
    };
    let t = r.term()?;
    if r.pos != r.toks.len() {
        return Err(r.error("trailing input"));
    }
    super::type_of(&t)?;
    Ok(t)
}

/// Reads a type such as `<<d,t>,t>`.
pub fn parse_type(src: &str) -> Result<SemType, LambdaError> {
    let sig = Signature::new();
    let mut r = Reader {
        toks: tokenize(src)?,
        pos: 0,
        end: src.len(),
        sig: &sig,
        scope: Vec::new(),
    };
    let ty = r.ty()?;
    if r.pos != r.toks.len() {
        return Err(r.error("trailing input"));
    }
    Ok(ty)
}

/// Fully parenthesized canonical form; [`parse_term`] reads it back.
pub fn print_term(term: &Term) -> String {
    let mut out = String::new();
    write_canonical(term, &mut Vec::new(), &mut out);
    out
}

fn binder_keyword(b: Binder) -> String {
    match b {
        Binder::Lam => "lam".into(),
        Binder::Forall => "forall".into(),
        Binder::Exists => "exists".into(),
        Binder::Iota => "iota".into(),
        Binder::Card(CardKind::AtLeast, n) => format!("atleast {n}"),
        Binder::Card(CardKind::AtMost, n) => format!("atmost {n}"),
    }
}

fn write_canonical(term: &Term, bound: &mut Vec<String>, out: &mut String) {
    match term {
        Term::Var(v) => {
            if bound.contains(&v.name) {
                out.push_str(&v.name);
            } else {
                let _ = write!(out, "{}:{}", v.name, v.ty);
            }
        }
        Term::Const(c) => out.push_str(&c.name),
        Term::App(f, a) => {
            out.push('(');
            write_canonical(f, bound, out);
            out.push(' ');
            write_canonical(a, bound, out);
            out.push(')');
        }
        Term::Bind(b, v, body) => {
            let _ = write!(out, "({} {}:{} . ", binder_keyword(*b), v.name, v.ty);
            bound.push(v.name.clone());
            write_canonical(body, bound, out);
            bound.pop();
            out.push(')');
        }
        Term::Not(a) => {
            out.push_str("(~");
            write_canonical(a, bound, out);
            out.push(')');
        }
        Term::Binary(op, a, b) => {
            let sym = match op {
                BinOp::And => "&",
                BinOp::Or => "|",
                BinOp::Implies => "->",
                BinOp::Greater => ">",
            };
            out.push('(');
            write_canonical(a, bound, out);
            let _ = write!(out, " {sym} ");
            write_canonical(b, bound, out);
            out.push(')');
        }
    }
}
