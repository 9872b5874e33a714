//! A quotation language that can talk about its own sentences.
//!
//! Terms are `x`, quotations `<E>` and `diag(t)`; formulas are built from
//! `Pr(t)`, `~` and `&`. The name of a formula `f` is its quotation `<f>`,
//! and `diag(<f>)` denotes `<f[<f>]>`. With that term the sentence
//! `~Pr(diag(<~Pr(diag(x))>))` says of itself that it cannot be printed,
//! and the printer indeed never prints it.

mod printer;
mod syntax;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use printer::{
    axiom, denote, derivation, forward_closure, in_p_n, long_theorem, min_proof_length, predecessor, printable,
    truth, Derivation, Justification, Predecessor, Rule,
};
pub use syntax::{
    parse, parse_formula, serialize, serialize_formula, serialize_term, Generator, ParseError, QExpr, QFormula,
    QName, QTerm,
};

use crate::afs::{
    check_representation, diagonal_sentence, image_under_naming, AfsError, ExprKind, FormalSystem, NameSet,
    Outcome, Result, SentenceSet, Violation,
};
use crate::logic::{LogicalSystem, Target};

const MAX_ENUM_SIZE: usize = 14;

#[derive(Default)]
pub struct Quineland {
    batches: Mutex<HashMap<usize, Arc<Vec<QExpr>>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoedelFacts {
    /// `diag(<π>)` denotes `λ`.
    pub diag_fixed_point: bool,
    pub truth_lambda: bool,
    pub printable_lambda: bool,
    /// Printability of `~λ`.
    pub printable_negation: bool,
}

impl GoedelFacts {
    /// The facts a sound printer forces: `λ` true, neither `λ` nor `~λ`
    /// printed.
    pub fn as_expected(&self) -> bool {
        self.diag_fixed_point && self.truth_lambda && !self.printable_lambda && !self.printable_negation
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoedelSentence {
    pub pi: QFormula,
    pub lambda: QFormula,
    pub facts: GoedelFacts,
}

impl Quineland {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn truth_set(&self) -> SentenceSet<'_, QExpr> {
        SentenceSet::new("T", |e: &QExpr| e.as_formula().is_some_and(truth))
    }

    pub fn provable_set(&self) -> SentenceSet<'_, QExpr> {
        SentenceSet::new("P", |e: &QExpr| e.as_formula().is_some_and(|f| f.is_sentence() && printable(f)))
    }

    /// `𝐏`, the quotations of printable sentences.
    pub fn printable_names(&self) -> NameSet<'_, QExpr, QName> {
        image_under_naming(self, &self.provable_set(), usize::MAX).relabel("𝐏")
    }

    pub fn logical_system(&self) -> LogicalSystem<'_, Quineland> {
        LogicalSystem::new(self, self.provable_set(), self.truth_set(), negate)
            .with_self_reference(Target::Truth, |e: &QExpr| match e {
                QExpr::Formula(f) => QExpr::Formula(self_ref_transform_t(f)),
                other => other.clone(),
            })
    }

    /// The Gödel sentence together with its recomputed facts.
    pub fn goedel_sentence(&self) -> GoedelSentence {
        let pi = goedel_pi();
        let lambda = match diagonal_sentence(self, &QExpr::Formula(pi.clone())) {
            Ok(QExpr::Formula(f)) => f,
            _ => unreachable!("the diagonal of a formula is a formula"),
        };
        let diag_term = QTerm::diag(QTerm::quote_formula(pi.clone()));
        let facts = GoedelFacts {
            diag_fixed_point: denote(&diag_term) == Some(QExpr::Formula(lambda.clone())),
            truth_lambda: truth(&lambda),
            printable_lambda: printable(&lambda),
            printable_negation: printable(&QFormula::not(lambda.clone())),
        };
        GoedelSentence { pi, lambda, facts }
    }

    /// Checks that `Pr(x)` T-represents `𝐏` on the first `sample_size` names.
    pub fn check_printability_representer(&self, sample_size: usize) -> Result<Outcome<Violation<Self>>> {
        let sample = self.enumerate_names(sample_size)?;
        let phi = QExpr::Formula(QFormula::Pr(QTerm::Var));
        check_representation(self, &phi, &self.printable_names(), &self.truth_set(), &sample)
    }
}

/// `~φ` for formulas; other expressions are left alone.
pub fn negate(e: &QExpr) -> QExpr {
    match e {
        QExpr::Formula(f) => QExpr::Formula(QFormula::not(f.clone())),
        other => other.clone(),
    }
}

/// `~Pr(diag(x))`.
pub fn goedel_pi() -> QFormula {
    QFormula::not(QFormula::Pr(QTerm::diag(QTerm::Var)))
}

/// Replaces every free `x` by `diag(x)`. If `φ` T-represents `X`, the result
/// T-represents the diagonal transform of `X`.
pub fn self_ref_transform_t(f: &QFormula) -> QFormula {
    f.replace_var(&QTerm::diag(QTerm::Var))
}

impl FormalSystem for Quineland {
    type Expr = QExpr;
    type Name = QName;

    fn kind(&self, e: &QExpr) -> ExprKind {
        match e {
            QExpr::Formula(f) if f.has_var() => ExprKind::ProperFormula,
            QExpr::Formula(_) => ExprKind::Sentence,
            QExpr::Term(_) => ExprKind::Other,
        }
    }

    fn is_name(&self, _n: &QName) -> bool {
        true
    }

    fn name_of(&self, f: &QExpr) -> Result<QName> {
        match f {
            QExpr::Formula(f) => Ok(QName(f.clone())),
            QExpr::Term(t) => Err(AfsError::NotAFormula(serialize_term(t))),
        }
    }

    fn formula_of(&self, n: &QName) -> Result<QExpr> {
        Ok(QExpr::Formula(n.0.clone()))
    }

    fn substitute_unchecked(&self, f: &QExpr, n: &QName) -> QExpr {
        match f {
            QExpr::Formula(f) => QExpr::Formula(f.substitute(n)),
            other => other.clone(),
        }
    }

    fn size(&self, e: &QExpr) -> usize {
        e.size()
    }

    fn formulas_of_size(&self, size: usize) -> Vec<QExpr> {
        if size > MAX_ENUM_SIZE {
            return Vec::new();
        }
        let cached = self.batches.lock().unwrap_or_else(|e| e.into_inner()).get(&size).cloned();
        let batch = match cached {
            Some(b) => b,
            None => {
                let b: Arc<Vec<QExpr>> = Arc::new(
                    syntax::formulas_of_size(size)
                        .into_iter()
                        .map(QExpr::Formula)
                        .collect(),
                );
                self.batches
                    .lock()
                    .unwrap_or_else(|e| e.into_inner())
                    .insert(size, b.clone());
                b
            }
        };
        batch.as_ref().clone()
    }

    fn render_expr(&self, e: &QExpr) -> String {
        serialize(e)
    }

    fn render_name(&self, n: &QName) -> String {
        n.to_string()
    }

    fn max_enumeration_size(&self) -> usize {
        MAX_ENUM_SIZE
    }
}
