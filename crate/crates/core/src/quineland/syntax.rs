use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QTerm {
    /// The single variable `x`.
    Var,
    /// `<e>`: quotation of any expression.
    Quote(Box<QExpr>),
    /// `diag(t)`: the diagonal of the formula `t` names.
    Diag(Box<QTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QFormula {
    Pr(QTerm),
    Not(Box<QFormula>),
    And(Box<QFormula>, Box<QFormula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QExpr {
    Formula(QFormula),
    Term(QTerm),
}

/// A name: the quotation `<f>` of a formula `f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QName(pub QFormula);

impl QName {
    pub fn formula(&self) -> &QFormula {
        &self.0
    }

    pub fn as_term(&self) -> QTerm {
        QTerm::quote(QExpr::Formula(self.0.clone()))
    }
}

impl QTerm {
    pub fn quote(e: QExpr) -> QTerm {
        QTerm::Quote(Box::new(e))
    }

    pub fn quote_formula(f: QFormula) -> QTerm {
        QTerm::quote(QExpr::Formula(f))
    }

    pub fn diag(t: QTerm) -> QTerm {
        QTerm::Diag(Box::new(t))
    }

    pub fn size(&self) -> usize {
        match self {
            QTerm::Var => 1,
            QTerm::Quote(e) => 1 + e.size(),
            QTerm::Diag(t) => 1 + t.size(),
        }
    }

    /// Whether `x` occurs outside every quotation.
    pub fn has_var(&self) -> bool {
        match self {
            QTerm::Var => true,
            QTerm::Quote(_) => false,
            QTerm::Diag(t) => t.has_var(),
        }
    }

    fn replace_var(&self, with: &QTerm) -> QTerm {
        match self {
            QTerm::Var => with.clone(),
            QTerm::Quote(_) => self.clone(),
            QTerm::Diag(t) => QTerm::diag(t.replace_var(with)),
        }
    }
}

impl QFormula {
    pub fn pr(t: QTerm) -> QFormula {
        QFormula::Pr(t)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: QFormula) -> QFormula {
        QFormula::Not(Box::new(f))
    }

    pub fn and(a: QFormula, b: QFormula) -> QFormula {
        QFormula::And(Box::new(a), Box::new(b))
    }

    pub fn size(&self) -> usize {
        match self {
            QFormula::Pr(t) => 1 + t.size(),
            QFormula::Not(f) => 1 + f.size(),
            QFormula::And(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn has_var(&self) -> bool {
        match self {
            QFormula::Pr(t) => t.has_var(),
            QFormula::Not(f) => f.has_var(),
            QFormula::And(a, b) => a.has_var() || b.has_var(),
        }
    }

    pub fn is_sentence(&self) -> bool {
        !self.has_var()
    }

    /// Replaces every unquoted `x` by `with`.
    pub fn replace_var(&self, with: &QTerm) -> QFormula {
        match self {
            QFormula::Pr(t) => QFormula::Pr(t.replace_var(with)),
            QFormula::Not(f) => QFormula::not(f.replace_var(with)),
            QFormula::And(a, b) => QFormula::and(a.replace_var(with), b.replace_var(with)),
        }
    }

    /// `φ[<n>]`.
    pub fn substitute(&self, n: &QName) -> QFormula {
        if self.is_sentence() {
            return self.clone();
        }
        self.replace_var(&n.as_term())
    }
}

impl QExpr {
    pub fn size(&self) -> usize {
        match self {
            QExpr::Formula(f) => f.size(),
            QExpr::Term(t) => t.size(),
        }
    }

    pub fn as_formula(&self) -> Option<&QFormula> {
        match self {
            QExpr::Formula(f) => Some(f),
            QExpr::Term(_) => None,
        }
    }
}

impl From<QFormula> for QExpr {
    fn from(f: QFormula) -> Self {
        QExpr::Formula(f)
    }
}

impl From<QTerm> for QExpr {
    fn from(t: QTerm) -> Self {
        QExpr::Term(t)
    }
}

fn write_term(t: &QTerm, out: &mut String) {
    match t {
        QTerm::Var => out.push('x'),
        QTerm::Quote(e) => {
            out.push('<');
            write_expr(e, out);
            out.push('>');
        }
        QTerm::Diag(t) => {
            out.push_str("diag(");
            write_term(t, out);
            out.push(')');
        }
    }
}

fn write_formula(f: &QFormula, out: &mut String) {
    match f {
        QFormula::Pr(t) => {
            out.push_str("Pr(");
            write_term(t, out);
            out.push(')');
        }
        QFormula::Not(g) => {
            out.push('~');
            write_formula(g, out);
        }
        QFormula::And(a, b) => {
            out.push('(');
            write_formula(a, out);
            out.push_str(" & ");
            write_formula(b, out);
            out.push(')');
        }
    }
}

fn write_expr(e: &QExpr, out: &mut String) {
    match e {
        QExpr::Formula(f) => write_formula(f, out),
        QExpr::Term(t) => write_term(t, out),
    }
}

pub fn serialize(e: &QExpr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

pub fn serialize_formula(f: &QFormula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

pub fn serialize_term(t: &QTerm) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

impl fmt::Display for QFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_formula(self))
    }
}

impl fmt::Display for QTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_term(self))
    }
}

impl fmt::Display for QExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

impl fmt::Display for QName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expected a formula, found the term {0}")]
    NotAFormula(String),
}

struct Parser<'s> {
    src: &'s str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.peek_str(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    fn error(&self, msg: String) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg }
    }

    fn expr(&mut self) -> Result<QExpr, ParseError> {
        if self.peek_str("Pr") || self.peek_str("~") || self.peek_str("(") {
            Ok(QExpr::Formula(self.formula()?))
        } else {
            Ok(QExpr::Term(self.term()?))
        }
    }

    fn formula(&mut self) -> Result<QFormula, ParseError> {
        if self.eat("Pr") {
            self.expect("(")?;
            let t = self.term()?;
            self.expect(")")?;
            Ok(QFormula::Pr(t))
        } else if self.eat("~") {
            Ok(QFormula::not(self.formula()?))
        } else if self.eat("(") {
            let a = self.formula()?;
            self.expect("&")?;
            let b = self.formula()?;
            self.expect(")")?;
            Ok(QFormula::and(a, b))
        } else {
            Err(self.error("expected `Pr(`, `~` or `(`".into()))
        }
    }

    fn term(&mut self) -> Result<QTerm, ParseError> {
        if self.eat("diag") {
            self.expect("(")?;
            let t = self.term()?;
            self.expect(")")?;
            Ok(QTerm::diag(t))
        } else if self.eat("<") {
            let e = self.expr()?;
            self.expect(">")?;
            Ok(QTerm::quote(e))
        } else if self.eat("x") {
            Ok(QTerm::Var)
        } else {
            Err(self.error("expected `x`, `<` or `diag(`".into()))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.src.len() {
            Err(self.error("trailing input".into()))
        } else {
            Ok(())
        }
    }
}

/// Parses any expression: a formula or a term.
pub fn parse(text: &str) -> Result<QExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_formula(text: &str) -> Result<QFormula, ParseError> {
    match parse(text)? {
        QExpr::Formula(f) => Ok(f),
        QExpr::Term(t) => Err(ParseError::NotAFormula(serialize_term(&t))),
    }
}

/// Memoizing generator of all expressions of a given size.
#[derive(Default)]
pub struct Generator {
    terms: HashMap<usize, Vec<QTerm>>,
    formulas: HashMap<usize, Vec<QFormula>>,
}

impl Generator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn terms(&mut self, size: usize) -> Vec<QTerm> {
        if let Some(v) = self.terms.get(&size) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.push(QTerm::Var);
        } else if size >= 2 {
            for f in self.formulas(size - 1) {
                out.push(QTerm::quote(QExpr::Formula(f)));
            }
            for t in self.terms(size - 1) {
                out.push(QTerm::quote(QExpr::Term(t.clone())));
                out.push(QTerm::diag(t));
            }
        }
        self.terms.insert(size, out.clone());
        out
    }

    pub fn formulas(&mut self, size: usize) -> Vec<QFormula> {
        if let Some(v) = self.formulas.get(&size) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size >= 2 {
            for t in self.terms(size - 1) {
                out.push(QFormula::Pr(t));
            }
            for f in self.formulas(size - 1) {
                out.push(QFormula::not(f));
            }
            for left in 2..size.saturating_sub(2) {
                let ls = self.formulas(left);
                let rs = self.formulas(size - 1 - left);
                for a in &ls {
                    for b in &rs {
                        out.push(QFormula::and(a.clone(), b.clone()));
                    }
                }
            }
        }
        self.formulas.insert(size, out.clone());
        out
    }
}

/// Every formula of exactly `size` nodes, ordered by serialization bytes.
pub fn formulas_of_size(size: usize) -> Vec<QFormula> {
    let mut keyed: Vec<(String, QFormula)> = Generator::new()
        .formulas(size)
        .into_iter()
        .map(|f| (serialize_formula(&f), f))
        .collect();
    keyed.sort_unstable_by(|a, b| a.0.as_bytes().cmp(b.0.as_bytes()));
    keyed.into_iter().map(|(_, f)| f).collect()
}
