//! Terms and formulas of additive arithmetic, with the surface parser and
//! the canonical serializer.
//!
//! Bound variables are de Bruijn indices; the only free variable is the
//! designated `x`. Canonical text names binders by depth (`y`, `z`, `u`, ...)
//! so that equal formulas always print identically.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PTerm {
    Zero,
    One,
    /// The designated free variable `x`.
    Free,
    /// De Bruijn index: 0 is the innermost enclosing binder.
    Bound(usize),
    Add(Box<PTerm>, Box<PTerm>),
    /// The numeral `1+1+...+1` with `n >= 2` summands, stored compactly.
    /// Only produced by substitution; equal as a formula to its expansion.
    Num(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PFormula {
    Eq(PTerm, PTerm),
    Not(Box<PFormula>),
    And(Box<PFormula>, Box<PFormula>),
    Or(Box<PFormula>, Box<PFormula>),
    Implies(Box<PFormula>, Box<PFormula>),
    Exists(Box<PFormula>),
    Forall(Box<PFormula>),
}

impl PTerm {
    #[allow(clippy::should_implement_trait)]
    pub fn add(a: PTerm, b: PTerm) -> PTerm {
        PTerm::Add(Box::new(a), Box::new(b))
    }

    /// `0` for zero, otherwise `1+1+...+1` nested to the right.
    pub fn numeral(n: u64) -> PTerm {
        if n == 0 {
            return PTerm::Zero;
        }
        let mut t = PTerm::One;
        for _ in 1..n {
            t = PTerm::add(PTerm::One, t);
        }
        t
    }

    pub fn size(&self) -> usize {
        match self {
            PTerm::Add(a, b) => 1 + a.size() + b.size(),
            PTerm::Num(n) => (2 * n - 1) as usize,
            _ => 1,
        }
    }

    pub fn has_free(&self) -> bool {
        match self {
            PTerm::Free => true,
            PTerm::Add(a, b) => a.has_free() || b.has_free(),
            _ => false,
        }
    }

    fn max_escape(&self, depth: usize) -> Option<usize> {
        match self {
            PTerm::Bound(i) if *i >= depth => Some(*i - depth),
            PTerm::Add(a, b) => a.max_escape(depth).max(b.max_escape(depth)),
            _ => None,
        }
    }

    /// Like [`PTerm::numeral`] but without materializing the sum.
    pub fn compact_numeral(n: u64) -> PTerm {
        match n {
            0 => PTerm::Zero,
            1 => PTerm::One,
            n => PTerm::Num(n),
        }
    }

    pub fn expand_numerals(&self) -> PTerm {
        match self {
            PTerm::Num(n) => PTerm::numeral(*n),
            PTerm::Add(a, b) => PTerm::add(a.expand_numerals(), b.expand_numerals()),
            t => t.clone(),
        }
    }

    fn has_compact_numerals(&self) -> bool {
        match self {
            PTerm::Num(_) => true,
            PTerm::Add(a, b) => a.has_compact_numerals() || b.has_compact_numerals(),
            _ => false,
        }
    }

    fn replace_free(&self, with: &PTerm) -> PTerm {
        match self {
            PTerm::Free => with.clone(),
            PTerm::Add(a, b) => PTerm::add(a.replace_free(with), b.replace_free(with)),
            t => t.clone(),
        }
    }
}

impl PFormula {
    pub fn eq(a: PTerm, b: PTerm) -> PFormula {
        PFormula::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: PFormula) -> PFormula {
        PFormula::Not(Box::new(f))
    }

    pub fn and(a: PFormula, b: PFormula) -> PFormula {
        PFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PFormula, b: PFormula) -> PFormula {
        PFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: PFormula, b: PFormula) -> PFormula {
        PFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(f: PFormula) -> PFormula {
        PFormula::Exists(Box::new(f))
    }

    pub fn forall(f: PFormula) -> PFormula {
        PFormula::Forall(Box::new(f))
    }

    pub fn size(&self) -> usize {
        match self {
            PFormula::Eq(a, b) => 1 + a.size() + b.size(),
            PFormula::Not(f) | PFormula::Exists(f) | PFormula::Forall(f) => 1 + f.size(),
            PFormula::And(a, b) | PFormula::Or(a, b) | PFormula::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn has_free(&self) -> bool {
        match self {
            PFormula::Eq(a, b) => a.has_free() || b.has_free(),
            PFormula::Not(f) | PFormula::Exists(f) | PFormula::Forall(f) => f.has_free(),
            PFormula::And(a, b) | PFormula::Or(a, b) | PFormula::Implies(a, b) => a.has_free() || b.has_free(),
        }
    }

    /// True when every de Bruijn index points at an enclosing binder.
    pub fn is_well_scoped(&self) -> bool {
        self.max_escape(0).is_none()
    }

    fn max_escape(&self, depth: usize) -> Option<usize> {
        match self {
            PFormula::Eq(a, b) => a.max_escape(depth).max(b.max_escape(depth)),
            PFormula::Not(f) => f.max_escape(depth),
            PFormula::Exists(f) | PFormula::Forall(f) => f.max_escape(depth + 1),
            PFormula::And(a, b) | PFormula::Or(a, b) | PFormula::Implies(a, b) => {
                a.max_escape(depth).max(b.max_escape(depth))
            }
        }
    }

    /// Replaces every occurrence of `x` by a closed term.
    pub fn instantiate(&self, with: &PTerm) -> PFormula {
        match self {
            PFormula::Eq(a, b) => PFormula::Eq(a.replace_free(with), b.replace_free(with)),
            PFormula::Not(f) => PFormula::not(f.instantiate(with)),
            PFormula::And(a, b) => PFormula::and(a.instantiate(with), b.instantiate(with)),
            PFormula::Or(a, b) => PFormula::or(a.instantiate(with), b.instantiate(with)),
            PFormula::Implies(a, b) => PFormula::implies(a.instantiate(with), b.instantiate(with)),
            PFormula::Exists(f) => PFormula::exists(f.instantiate(with)),
            PFormula::Forall(f) => PFormula::forall(f.instantiate(with)),
        }
    }

    /// `φ[n]` with the numeral stored compactly.
    pub fn substitute_numeral(&self, n: u64) -> PFormula {
        self.instantiate(&PTerm::compact_numeral(n))
    }

    /// Rewrites compact numerals into explicit sums.
    pub fn expand_numerals(&self) -> PFormula {
        let ex = |t: &PTerm| t.expand_numerals();
        match self {
            PFormula::Eq(a, b) => PFormula::Eq(ex(a), ex(b)),
            PFormula::Not(f) => PFormula::not(f.expand_numerals()),
            PFormula::And(a, b) => PFormula::and(a.expand_numerals(), b.expand_numerals()),
            PFormula::Or(a, b) => PFormula::or(a.expand_numerals(), b.expand_numerals()),
            PFormula::Implies(a, b) => PFormula::implies(a.expand_numerals(), b.expand_numerals()),
            PFormula::Exists(f) => PFormula::exists(f.expand_numerals()),
            PFormula::Forall(f) => PFormula::forall(f.expand_numerals()),
        }
    }

    pub fn has_compact_numerals(&self) -> bool {
        match self {
            PFormula::Eq(a, b) => a.has_compact_numerals() || b.has_compact_numerals(),
            PFormula::Not(f) | PFormula::Exists(f) | PFormula::Forall(f) => f.has_compact_numerals(),
            PFormula::And(a, b) | PFormula::Or(a, b) | PFormula::Implies(a, b) => {
                a.has_compact_numerals() || b.has_compact_numerals()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("free variable `{name}` at byte {pos}; only `x` may occur free")]
    FreeVariable { name: String, pos: usize },
    #[error("numeral `{0}` is too large")]
    NumeralTooLarge(String),
}

const MAX_NUMERAL: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Dot,
    LParen,
    RParen,
    Plus,
    Eq,
    Neq,
    Not,
    And,
    Or,
    Arrow,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'.' => Tok::Dot,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'+' => Tok::Plus,
            b'=' => Tok::Eq,
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'!' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::Neq
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Tok::Num(text[start..=i].to_string())
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap_or('?')),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    /// Names of enclosing binders, innermost last.
    scope: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn is_quantifier(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == "E" || s == "A")
            && matches!(self.toks.get(self.pos + 1), Some((Tok::Ident(_), _)))
    }

    // F ::= Q ident '.' F | Imp
    fn formula(&mut self) -> Result<PFormula, ParseError> {
        if self.is_quantifier() {
            return self.quantified();
        }
        self.implication()
    }

    fn quantified(&mut self) -> Result<PFormula, ParseError> {
        let universal = matches!(self.bump(), Tok::Ident(s) if s == "A");
        let var = match self.bump() {
            Tok::Ident(v) => v,
            _ => return self.error("expected a variable after quantifier"),
        };
        if var == "x" {
            return self.error("`x` is reserved for the free variable and cannot be bound");
        }
        self.expect(Tok::Dot, "`.` after quantified variable")?;
        self.scope.push(var);
        let body = self.formula();
        self.scope.pop();
        let body = body?;
        Ok(if universal {
            PFormula::forall(body)
        } else {
            PFormula::exists(body)
        })
    }

    // Operand of a binary connective: a quantifier swallows everything to its right.
    fn operand(&mut self, next: fn(&mut Self) -> Result<PFormula, ParseError>) -> Result<PFormula, ParseError> {
        if self.is_quantifier() {
            self.quantified()
        } else {
            next(self)
        }
    }

    fn implication(&mut self) -> Result<PFormula, ParseError> {
        let lhs = self.operand(Self::disjunction)?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.operand(Self::implication)?;
            return Ok(PFormula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<PFormula, ParseError> {
        let mut lhs = self.operand(Self::conjunction)?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.operand(Self::conjunction)?;
            lhs = PFormula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<PFormula, ParseError> {
        let mut lhs = self.operand(Self::unary)?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.operand(Self::unary)?;
            lhs = PFormula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<PFormula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                let f = self.operand(Self::unary)?;
                Ok(PFormula::not(f))
            }
            Tok::LParen if self.paren_is_formula() => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => self.atom(),
        }
    }

    /// Distinguishes `(F)` from a parenthesized term by scanning to the
    /// matching `)` for a connective, comparison or quantifier.
    fn paren_is_formula(&self) -> bool {
        let mut depth = 0usize;
        let mut i = self.pos;
        loop {
            match &self.toks[i].0 {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return false;
                    }
                }
                Tok::Eq | Tok::Neq | Tok::Not | Tok::And | Tok::Or | Tok::Arrow | Tok::Dot => return true,
                Tok::End => return false,
                _ => {}
            }
            i += 1;
        }
    }

    fn atom(&mut self) -> Result<PFormula, ParseError> {
        let lhs = self.term()?;
        match self.bump() {
            Tok::Eq => Ok(PFormula::eq(lhs, self.term()?)),
            Tok::Neq => Ok(PFormula::not(PFormula::eq(lhs, self.term()?))),
            _ => {
                self.pos -= 1;
                self.error("expected `=` or `!=`")
            }
        }
    }

    // `+` associates to the right so numerals parse as their canonical shape.
    fn term(&mut self) -> Result<PTerm, ParseError> {
        let lhs = self.term_atom()?;
        if *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.term()?;
            return Ok(PTerm::add(lhs, rhs));
        }
        Ok(lhs)
    }

    fn term_atom(&mut self) -> Result<PTerm, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(digits) => {
                let n: u64 = digits.parse().map_err(|_| ParseError::NumeralTooLarge(digits.clone()))?;
                if n > MAX_NUMERAL {
                    return Err(ParseError::NumeralTooLarge(digits));
                }
                Ok(PTerm::numeral(n))
            }
            Tok::Ident(name) => {
                if let Some(k) = self.scope.iter().rev().position(|v| *v == name) {
                    Ok(PTerm::Bound(k))
                } else if name == "x" {
                    Ok(PTerm::Free)
                } else {
                    Err(ParseError::FreeVariable { name, pos: at })
                }
            }
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => {
                self.pos -= 1;
                self.error("expected a term")
            }
        }
    }
}

pub fn parse(text: &str) -> Result<PFormula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        scope: Vec::new(),
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.error("trailing input");
    }
    Ok(f)
}

const BINDER_NAMES: [&str; 5] = ["y", "z", "u", "v", "w"];

fn binder_name(level: usize) -> String {
    match BINDER_NAMES.get(level) {
        Some(s) => s.to_string(),
        None => format!("y{level}"),
    }
}

fn write_term(t: &PTerm, depth: usize, out: &mut String) {
    match t {
        PTerm::Zero => out.push('0'),
        PTerm::One => out.push('1'),
        PTerm::Free => out.push('x'),
        PTerm::Bound(i) => out.push_str(&binder_name(depth - 1 - i)),
        PTerm::Num(n) => {
            out.push('1');
            for _ in 1..*n {
                out.push_str("+1");
            }
        }
        PTerm::Add(a, b) => {
            if matches!(**a, PTerm::Add(..) | PTerm::Num(_)) {
                out.push('(');
                write_term(a, depth, out);
                out.push(')');
            } else {
                write_term(a, depth, out);
            }
            out.push('+');
            write_term(b, depth, out);
        }
    }
}

fn write_operand(f: &PFormula, depth: usize, out: &mut String) {
    if matches!(f, PFormula::Not(_)) {
        write_formula(f, depth, out);
    } else {
        out.push('(');
        write_formula(f, depth, out);
        out.push(')');
    }
}

fn write_formula(f: &PFormula, depth: usize, out: &mut String) {
    match f {
        PFormula::Eq(a, b) => {
            write_term(a, depth, out);
            out.push_str(" = ");
            write_term(b, depth, out);
        }
        PFormula::Not(g) => {
            out.push('~');
            write_operand(g, depth, out);
        }
        PFormula::And(a, b) | PFormula::Or(a, b) | PFormula::Implies(a, b) => {
            let op = match f {
                PFormula::And(..) => " & ",
                PFormula::Or(..) => " | ",
                _ => " -> ",
            };
            write_operand(a, depth, out);
            out.push_str(op);
            write_operand(b, depth, out);
        }
        PFormula::Exists(g) | PFormula::Forall(g) => {
            out.push_str(if matches!(f, PFormula::Exists(_)) { "E " } else { "A " });
            out.push_str(&binder_name(depth));
            out.push_str(". ");
            write_formula(g, depth + 1, out);
        }
    }
}

/// Canonical text of a formula.
pub fn serialize(f: &PFormula) -> String {
    let mut out = String::new();
    write_formula(f, 0, &mut out);
    out
}

pub fn serialize_term(t: &PTerm) -> String {
    let mut out = String::new();
    write_term(t, 0, &mut out);
    out
}

impl fmt::Display for PFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}
