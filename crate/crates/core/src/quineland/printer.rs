//! The printer and the truth evaluator.
//!
//! `P` is the least set containing the axiom `~Pr(<x>)` and closed under
//!
//! - R1: `σ ⟹ (σ & σ)`
//! - R2: `σ ⟹ ~~σ`
//! - R3: `σ ⟹ Pr(<σ>)`
//!
//! Every rule grows the sentence and each shape has at most one
//! predecessor, so membership is decided by unfolding backwards.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::syntax::{QExpr, QFormula, QName, QTerm};

/// The axiom `~Pr(<x>)`.
pub fn axiom() -> QFormula {
    QFormula::not(QFormula::Pr(QTerm::quote(QExpr::Term(QTerm::Var))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    R1,
    R2,
    R3,
}

impl Rule {
    pub fn apply(self, s: &QFormula) -> QFormula {
        match self {
            Rule::R1 => QFormula::and(s.clone(), s.clone()),
            Rule::R2 => QFormula::not(QFormula::not(s.clone())),
            Rule::R3 => QFormula::Pr(QTerm::quote_formula(s.clone())),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
        })
    }
}

/// How a sentence could have been printed, judged by its shape alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predecessor<'f> {
    Axiom,
    Rule(Rule, &'f QFormula),
    None,
}

pub fn predecessor(s: &QFormula) -> Predecessor<'_> {
    if *s == axiom() {
        return Predecessor::Axiom;
    }
    match s {
        QFormula::And(a, b) if a == b => Predecessor::Rule(Rule::R1, a),
        QFormula::Not(inner) => match inner.as_ref() {
            QFormula::Not(g) => Predecessor::Rule(Rule::R2, g),
            _ => Predecessor::None,
        },
        QFormula::Pr(QTerm::Quote(e)) => match e.as_ref() {
            QExpr::Formula(g) if g.is_sentence() => Predecessor::Rule(Rule::R3, g),
            _ => Predecessor::None,
        },
        _ => Predecessor::None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    Axiom,
    /// Rule applied to the step at the given index.
    Rule(Rule, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<QFormula>,
    pub justifications: Vec<Justification>,
}

impl Derivation {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn conclusion(&self) -> Option<&QFormula> {
        self.steps.last()
    }

    /// Re-checks every step against its justification.
    pub fn verify(&self) -> bool {
        if self.steps.is_empty() || self.steps.len() != self.justifications.len() {
            return false;
        }
        self.steps.iter().zip(&self.justifications).enumerate().all(|(i, (s, j))| match *j {
            Justification::Axiom => *s == axiom(),
            Justification::Rule(rule, k) => k < i && rule.apply(&self.steps[k]) == *s,
        })
    }
}

/// The chain of sentences from `σ` back to the axiom, or `None` when the
/// unfolding gets stuck.
fn unfold(s: &QFormula) -> Option<Vec<(&QFormula, Option<Rule>)>> {
    if !s.is_sentence() {
        return None;
    }
    let mut chain = Vec::new();
    let mut cur = s;
    loop {
        match predecessor(cur) {
            Predecessor::Axiom => {
                chain.push((cur, None));
                return Some(chain);
            }
            Predecessor::Rule(rule, prev) => {
                chain.push((cur, Some(rule)));
                cur = prev;
            }
            Predecessor::None => return None,
        }
    }
}

/// Length of the shortest derivation of `σ`; `None` if unprintable.
pub fn min_proof_length(s: &QFormula) -> Option<usize> {
    unfold(s).map(|c| c.len())
}

pub fn printable(s: &QFormula) -> bool {
    unfold(s).is_some()
}

/// A shortest derivation of `σ`.
pub fn derivation(s: &QFormula) -> Option<Derivation> {
    let chain = unfold(s)?;
    let mut steps = Vec::with_capacity(chain.len());
    let mut justifications = Vec::with_capacity(chain.len());
    for (i, (f, rule)) in chain.into_iter().rev().enumerate() {
        steps.push(f.clone());
        justifications.push(match rule {
            None => Justification::Axiom,
            Some(r) => Justification::Rule(r, i - 1),
        });
    }
    Some(Derivation { steps, justifications })
}

/// `P_n`: printable in fewer than `n` steps.
pub fn in_p_n(s: &QFormula, n: usize) -> bool {
    min_proof_length(s).is_some_and(|k| k < n)
}

/// A printable sentence needing exactly `n` steps: R3 and R2 applied in
/// alternation, starting with R3, `n - 1` times over the axiom.
pub fn long_theorem(n: usize) -> QFormula {
    let mut s = axiom();
    for k in 1..n.max(1) {
        s = if k % 2 == 1 { Rule::R3.apply(&s) } else { Rule::R2.apply(&s) };
    }
    s
}

/// The first `limit` printed sentences in breadth-first order from the
/// axiom, applying R1, R2, R3 in that order.
pub fn forward_closure(limit: usize) -> Vec<QFormula> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(limit);
    let mut queue = VecDeque::from([axiom()]);
    seen.insert(axiom());
    while let Some(s) = queue.pop_front() {
        if out.len() >= limit {
            break;
        }
        for rule in [Rule::R1, Rule::R2, Rule::R3] {
            let t = rule.apply(&s);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
        out.push(s);
    }
    out
}

/// The expression a closed term denotes, i.e. the payload of the quotation
/// it evaluates to. `None` for terms containing `x`.
pub fn denote(t: &QTerm) -> Option<QExpr> {
    match t {
        QTerm::Var => None,
        QTerm::Quote(e) => Some(e.as_ref().clone()),
        QTerm::Diag(inner) => match denote(inner)? {
            QExpr::Formula(f) => {
                let n = QName(f.clone());
                Some(QExpr::Formula(f.substitute(&n)))
            }
            other => Some(other),
        },
    }
}

/// Truth of a sentence. `Pr(t)` holds iff `t` denotes a printable sentence.
/// Formulas with a free `x` are never true.
pub fn truth(s: &QFormula) -> bool {
    s.is_sentence() && eval(s)
}

fn eval(s: &QFormula) -> bool {
    match s {
        QFormula::Pr(t) => match denote(t) {
            Some(QExpr::Formula(f)) => printable(&f),
            _ => false,
        },
        QFormula::Not(f) => !eval(f),
        QFormula::And(a, b) => eval(a) && eval(b),
    }
}
