//! Expression language over mobinads and triples.
//!
//! ```text
//! expr    := expr '<->' expr | expr '->' expr | expr '|' expr | expr '&' expr
//!          | expr ('+' | '-') expr | expr ('*' | '/') expr | expr '^' expr
//!          | '!' expr | '(' expr ')' | '(' expr ',' expr ',' expr ')' | literal
//! literal := '-'? number ('^{' mark '}')? | '(' '-'? number ('/' number)? ')' '^{' mark '}'
//! ```
//!
//! Binding, loosest first: `<->`, `->` (right), `|`, `&`, `+ -`, `* /`,
//! `^` (right), prefix `!`. `AND`, `OR`, `NOT`, `IMPLIES` and `IFF` are
//! accepted for the logic symbols in any letter case. Logic operators act on
//! triples and arithmetic on mobinads; mixing them is a type error.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, ArithError, Op};
use crate::logic::Logic;
use crate::mobinad::{Mobinad, NeutrosophicTriple};

const MAX_DEPTH: usize = 200;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Syntax,
    Type,
    DivisionByZeroNeighborhood,
    NonpositivePowerBase,
    Overflow,
    Evaluation,
}

impl ErrorKind {
    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::Syntax => "syntax",
            ErrorKind::Type => "type",
            ErrorKind::DivisionByZeroNeighborhood => "division-by-zero-neighborhood",
            ErrorKind::NonpositivePowerBase => "nonpositive-power-base",
            ErrorKind::Overflow => "overflow",
            ErrorKind::Evaluation => "evaluation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{kind_name} error at {line}:{column}: {message}", kind_name = kind.name())]
pub struct ExprError {
    pub kind: ErrorKind,
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl ExprError {
    fn new(kind: ErrorKind, span: Span, message: impl Into<String>) -> Self {
        ExprError {
            kind,
            message: message.into(),
            line: span.line,
            column: span.column,
        }
    }

    fn syntax(span: Span, message: impl Into<String>) -> Self {
        ExprError::new(ErrorKind::Syntax, span, message)
    }

    /// `{"error": {"kind", "message", "line", "column"}}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "error": self })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogicOp {
    And,
    Or,
    Implies,
    Equiv,
}

impl LogicOp {
    pub fn symbol(self) -> &'static str {
        match self {
            LogicOp::And => "&",
            LogicOp::Or => "|",
            LogicOp::Implies => "->",
            LogicOp::Equiv => "<->",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Mobinad(Mobinad, Span),
    Triple(Box<[Expr; 3]>, Span),
    Not(Box<Expr>, Span),
    Logic(LogicOp, Box<Expr>, Box<Expr>, Span),
    Arith(Op, Box<Expr>, Box<Expr>, Span),
}

impl Expr {
    pub fn span(&self) -> Span {
        match self {
            Expr::Mobinad(_, s)
            | Expr::Triple(_, s)
            | Expr::Not(_, s)
            | Expr::Logic(_, _, _, s)
            | Expr::Arith(_, _, _, s) => *s,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Mobinad(m, _) => write!(f, "{m}"),
            Expr::Triple(items, _) => write!(f, "({}, {}, {})", items[0], items[1], items[2]),
            Expr::Not(e, _) => write!(f, "!{e}"),
            Expr::Logic(op, l, r, _) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Arith(op, l, r, _) => write!(f, "({l} {} {r})", op.symbol()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Type {
    Mobinad,
    Triple,
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Type::Mobinad => "mobinad",
            Type::Triple => "triple",
        })
    }
}

/// Result of evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Mobinad(Mobinad),
    Triple(NeutrosophicTriple),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Mobinad(m) => write!(f, "{m}"),
            Value::Triple(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Literal(String),
    LParen,
    RParen,
    Comma,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Literal(t) => format!("literal `{t}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DoubleArrow => "`<->`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn peek_at(&self, off: usize) -> Option<char> {
        self.chars.get(self.pos + off).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span(&self) -> Span {
        Span {
            line: self.line,
            column: self.column,
        }
    }

    fn take_digits(&mut self, out: &mut String) {
        while let Some(c) = self.peek_at(0).filter(char::is_ascii_digit) {
            out.push(c);
            self.bump();
        }
    }

    fn number(&mut self, out: &mut String) -> Result<(), ExprError> {
        let start = self.span();
        self.take_digits(out);
        if self.peek_at(0) == Some('.') {
            out.push('.');
            self.bump();
            let before = out.len();
            self.take_digits(out);
            if out.len() == before {
                return Err(ExprError::syntax(start, format!("malformed number `{out}`")));
            }
        }
        Ok(())
    }

    fn mark_suffix(&mut self, out: &mut String) -> Result<(), ExprError> {
        if !(self.peek_at(0) == Some('^') && self.peek_at(1) == Some('{')) {
            return Ok(());
        }
        let start = self.span();
        self.bump();
        self.bump();
        let mut mark = String::new();
        loop {
            match self.bump() {
                Some('}') => break,
                Some(c) if !c.is_whitespace() || c == ' ' => mark.push(c),
                _ => return Err(ExprError::syntax(start, "unterminated mark `^{`")),
            }
        }
        let mark = mark.trim();
        if mark.parse::<crate::mark::Mark>().is_err() {
            return Err(ExprError::syntax(
                start,
                format!("unknown mark `{mark}` (expected one of 0, -, -0, +, 0+, -+, -0+)"),
            ));
        }
        out.push_str("^{");
        out.push_str(mark);
        out.push('}');
        Ok(())
    }

    /// `( -? number (/ number)? ) ^{` at the cursor, as one literal.
    fn paren_literal_len(&self) -> Option<usize> {
        let mut i = 1;
        let at = |i: usize| self.peek_at(i);
        let skip_ws = |mut i: usize| {
            while at(i).is_some_and(|c| c == ' ' || c == '\t') {
                i += 1;
            }
            i
        };
        let num = |mut i: usize| -> Option<usize> {
            let s = i;
            while at(i).is_some_and(|c| c.is_ascii_digit()) {
                i += 1;
            }
            if i == s {
                return None;
            }
            if at(i) == Some('.') {
                i += 1;
                let s = i;
                while at(i).is_some_and(|c| c.is_ascii_digit()) {
                    i += 1;
                }
                if i == s {
                    return None;
                }
            }
            Some(i)
        };
        i = skip_ws(i);
        if at(i) == Some('-') {
            i = skip_ws(i + 1);
        }
        i = num(i)?;
        i = skip_ws(i);
        if at(i) == Some('/') {
            i = num(skip_ws(i + 1))?;
            i = skip_ws(i);
        }
        if at(i) != Some(')') || at(i + 1) != Some('^') || at(i + 2) != Some('{') {
            return None;
        }
        Some(i + 1)
    }

    fn next(&mut self) -> Result<(Tok, Span), ExprError> {
        while self.peek_at(0).is_some_and(char::is_whitespace) {
            self.bump();
        }
        let span = self.span();
        let Some(c) = self.peek_at(0) else {
            return Ok((Tok::Eof, span));
        };
        let tok = match c {
            '(' => {
                if let Some(len) = self.paren_literal_len() {
                    let mut text = String::new();
                    for _ in 0..len {
                        let c = self.bump().unwrap();
                        if !c.is_whitespace() {
                            text.push(c);
                        }
                    }
                    self.mark_suffix(&mut text)?;
                    Tok::Literal(text)
                } else {
                    self.bump();
                    Tok::LParen
                }
            }
            ')' => {
                self.bump();
                Tok::RParen
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '!' => {
                self.bump();
                Tok::Bang
            }
            '&' => {
                self.bump();
                Tok::Amp
            }
            '|' => {
                self.bump();
                Tok::Pipe
            }
            '+' => {
                self.bump();
                Tok::Plus
            }
            '*' => {
                self.bump();
                Tok::Star
            }
            '/' => {
                self.bump();
                Tok::Slash
            }
            '^' => {
                self.bump();
                Tok::Caret
            }
            '-' => {
                self.bump();
                if self.peek_at(0) == Some('>') {
                    self.bump();
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            '<' => {
                if self.peek_at(1) == Some('-') && self.peek_at(2) == Some('>') {
                    self.bump();
                    self.bump();
                    self.bump();
                    Tok::DoubleArrow
                } else {
                    return Err(ExprError::syntax(span, "unexpected `<` (did you mean `<->`?)"));
                }
            }
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                self.number(&mut text)?;
                self.mark_suffix(&mut text)?;
                Tok::Literal(text)
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(c) = self.peek_at(0).filter(char::is_ascii_alphanumeric) {
                    word.push(c);
                    self.bump();
                }
                match word.to_ascii_uppercase().as_str() {
                    "AND" => Tok::Amp,
                    "OR" => Tok::Pipe,
                    "NOT" => Tok::Bang,
                    "IMPLIES" => Tok::Arrow,
                    "IFF" => Tok::DoubleArrow,
                    _ => return Err(ExprError::syntax(span, format!("unknown word `{word}`"))),
                }
            }
            other => {
                return Err(ExprError::syntax(span, format!("unexpected character `{}`", other.escape_default())));
            }
        };
        Ok((tok, span))
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, Span)>, ExprError> {
    let mut lx = Lexer::new(src);
    let mut out = Vec::new();
    loop {
        let (t, s) = lx.next()?;
        let done = t == Tok::Eof;
        out.push((t, s));
        if done {
            return Ok(out);
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    depth: usize,
}

enum Infix {
    Logic(LogicOp),
    Arith(Op),
}

fn infix(t: &Tok) -> Option<(u8, bool, Infix)> {
    // (binding power, right associative, operator)
    Some(match t {
        Tok::DoubleArrow => (10, false, Infix::Logic(LogicOp::Equiv)),
        Tok::Arrow => (20, true, Infix::Logic(LogicOp::Implies)),
        Tok::Pipe => (30, false, Infix::Logic(LogicOp::Or)),
        Tok::Amp => (40, false, Infix::Logic(LogicOp::And)),
        Tok::Plus => (50, false, Infix::Arith(Op::Add)),
        Tok::Minus => (50, false, Infix::Arith(Op::Sub)),
        Tok::Star => (60, false, Infix::Arith(Op::Mul)),
        Tok::Slash => (60, false, Infix::Arith(Op::Div)),
        Tok::Caret => (70, true, Infix::Arith(Op::Pow)),
        _ => return None,
    })
}

const PREFIX_NOT_BP: u8 = 80;

impl Parser {
    fn peek(&self) -> &(Tok, Span) {
        &self.toks[self.pos]
    }

    fn advance(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Span, ExprError> {
        let (t, s) = self.advance();
        if t == want {
            Ok(s)
        } else {
            Err(ExprError::syntax(s, format!("expected {}, found {}", want.describe(), t.describe())))
        }
    }

    fn literal(text: &str, negate: bool, span: Span) -> Result<Expr, ExprError> {
        let m: Mobinad = text
            .parse()
            .map_err(|e| ExprError::syntax(span, format!("invalid literal `{text}`: {e}")))?;
        let m = if negate { Mobinad::new(-m.value, m.mark) } else { m };
        Ok(Expr::Mobinad(m, span))
    }

    fn prefix(&mut self) -> Result<Expr, ExprError> {
        let (t, span) = self.advance();
        match t {
            Tok::Literal(text) => Parser::literal(&text, false, span),
            Tok::Minus => match self.advance() {
                (Tok::Literal(text), _) => Parser::literal(&text, true, span),
                (other, s) => Err(ExprError::syntax(
                    s,
                    format!("prefix `-` must be followed by a number, found {}", other.describe()),
                )),
            },
            Tok::Bang => {
                let e = self.expr(PREFIX_NOT_BP)?;
                Ok(Expr::Not(Box::new(e), span))
            }
            Tok::LParen => {
                let first = self.expr(0)?;
                if self.peek().0 == Tok::Comma {
                    self.advance();
                    let second = self.expr(0)?;
                    self.expect(Tok::Comma)?;
                    let third = self.expr(0)?;
                    if self.peek().0 == Tok::Comma {
                        return Err(ExprError::syntax(self.peek().1, "a triple has exactly three components"));
                    }
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Triple(Box::new([first, second, third]), span))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(first)
                }
            }
            other => Err(ExprError::syntax(span, format!("expected an operand, found {}", other.describe()))),
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Expr, ExprError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ExprError::syntax(self.peek().1, "expression nested too deeply"));
        }
        let mut lhs = self.prefix()?;
        while let Some((bp, right, op)) = infix(&self.peek().0) {
            if bp <= min_bp {
                break;
            }
            let (_, span) = self.advance();
            let rhs = self.expr(if right { bp - 1 } else { bp })?;
            lhs = match op {
                Infix::Logic(o) => Expr::Logic(o, Box::new(lhs), Box::new(rhs), span),
                Infix::Arith(o) => Expr::Arith(o, Box::new(lhs), Box::new(rhs), span),
            };
        }
        self.depth -= 1;
        Ok(lhs)
    }
}

/// Parses without type checking.
pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, depth: 0 };
    let e = p.expr(0)?;
    let (t, s) = p.advance();
    if t != Tok::Eof {
        return Err(ExprError::syntax(s, format!("unexpected {} after expression", t.describe())));
    }
    Ok(e)
}

pub fn type_of(e: &Expr) -> Result<Type, ExprError> {
    let want = |e: &Expr, t: Type, what: String| -> Result<(), ExprError> {
        let got = type_of(e)?;
        if got == t {
            Ok(())
        } else {
            Err(ExprError::new(ErrorKind::Type, e.span(), format!("{what} expects a {t}, found a {got}")))
        }
    };
    match e {
        Expr::Mobinad(..) => Ok(Type::Mobinad),
        Expr::Triple(items, _) => {
            for it in items.iter() {
                want(it, Type::Mobinad, "triple component".into())?;
            }
            Ok(Type::Triple)
        }
        Expr::Not(inner, _) => {
            want(inner, Type::Triple, "`!`".into())?;
            Ok(Type::Triple)
        }
        Expr::Logic(op, l, r, _) => {
            want(l, Type::Triple, format!("`{}`", op.symbol()))?;
            want(r, Type::Triple, format!("`{}`", op.symbol()))?;
            Ok(Type::Triple)
        }
        Expr::Arith(op, l, r, _) => {
            want(l, Type::Mobinad, format!("`{}`", op.symbol()))?;
            want(r, Type::Mobinad, format!("`{}`", op.symbol()))?;
            Ok(Type::Mobinad)
        }
    }
}

fn arith_error(e: ArithError, span: Span) -> ExprError {
    let kind = match e {
        ArithError::DivisionByZeroNeighborhood => ErrorKind::DivisionByZeroNeighborhood,
        ArithError::NonpositivePowerBase => ErrorKind::NonpositivePowerBase,
        ArithError::Overflow => ErrorKind::Overflow,
        _ => ErrorKind::Evaluation,
    };
    ExprError::new(kind, span, e.to_string())
}

fn mobinad(e: &Expr, logic: &Logic) -> Result<Mobinad, ExprError> {
    match eval_unchecked(e, logic)? {
        Value::Mobinad(m) => Ok(m),
        Value::Triple(_) => Err(ExprError::new(ErrorKind::Type, e.span(), "expected a mobinad")),
    }
}

fn triple(e: &Expr, logic: &Logic) -> Result<NeutrosophicTriple, ExprError> {
    match eval_unchecked(e, logic)? {
        Value::Triple(t) => Ok(t),
        Value::Mobinad(_) => Err(ExprError::new(ErrorKind::Type, e.span(), "expected a triple")),
    }
}

fn eval_unchecked(e: &Expr, logic: &Logic) -> Result<Value, ExprError> {
    Ok(match e {
        Expr::Mobinad(m, _) => Value::Mobinad(m.clone()),
        Expr::Triple(items, _) => Value::Triple(NeutrosophicTriple::new(
            mobinad(&items[0], logic)?,
            mobinad(&items[1], logic)?,
            mobinad(&items[2], logic)?,
        )),
        Expr::Not(inner, _) => Value::Triple(logic.not(&triple(inner, logic)?)),
        Expr::Logic(op, l, r, _) => {
            let (p, q) = (triple(l, logic)?, triple(r, logic)?);
            Value::Triple(match op {
                LogicOp::And => logic.and(&p, &q),
                LogicOp::Or => logic.or(&p, &q),
                LogicOp::Implies => logic.implies(&p, &q),
                LogicOp::Equiv => logic.equiv(&p, &q),
            })
        }
        Expr::Arith(op, l, r, span) => {
            let (x, y) = (mobinad(l, logic)?, mobinad(r, logic)?);
            Value::Mobinad(arith::apply(*op, &x, &y).map_err(|err| arith_error(err, *span))?)
        }
    })
}

/// Type checks, then evaluates.
pub fn eval(e: &Expr, logic: &Logic) -> Result<Value, ExprError> {
    type_of(e)?;
    eval_unchecked(e, logic)
}

/// Parse, check and evaluate in one step.
pub fn evaluate(src: &str, logic: &Logic) -> Result<Value, ExprError> {
    eval(&parse_expr(src)?, logic)
}
