//! Logical systems: an abstract formal system with a negation map and the
//! distinguished sets of provable (`P`) and true (`T`) sentences.
//!
//! The limitation theorems are all the generalized liar construction with a
//! particular choice of the pair `(A, B)`; [`LimitationVariant`] carries that
//! table.

use std::fmt;
use std::sync::Arc;

use crate::afs::{
    enumerate_sentences, generalized_liar_witness, substitute, AfsError, FormalSystem, LiarWitness, Outcome,
    Result, SentenceSet, Violation, ViolationReport,
};

type Transform<'a, E> = Arc<dyn Fn(&E) -> E + Send + Sync + 'a>;

/// Which distinguished set a self-reference transform serves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Truth,
    Provability,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Truth => "T",
            Target::Provability => "P",
        })
    }
}

/// One of the four roles the sets can play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetSpec {
    /// `∼P`, complement of `P` among formulas.
    NotProvable,
    /// `P' = {φ : φ' ∈ P}`, the refutable sentences.
    Refutable,
    Provable,
    True,
}

impl SetSpec {
    pub fn symbol(self) -> &'static str {
        match self {
            SetSpec::NotProvable => "~P",
            SetSpec::Refutable => "P'",
            SetSpec::Provable => "P",
            SetSpec::True => "T",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitationVariant {
    /// Consistency implies incompleteness.
    GoedelSyntactic,
    /// Soundness implies incompleteness.
    GoedelSemantic,
    /// Truth is not definable.
    Tarski,
    /// Provability is not decidable.
    Church,
}

impl LimitationVariant {
    pub const ALL: [LimitationVariant; 4] = [
        LimitationVariant::GoedelSyntactic,
        LimitationVariant::GoedelSemantic,
        LimitationVariant::Tarski,
        LimitationVariant::Church,
    ];

    /// The `(A, B)` substitution for the generalized liar theorem.
    pub fn sets(self) -> (SetSpec, SetSpec) {
        match self {
            LimitationVariant::GoedelSyntactic => (SetSpec::NotProvable, SetSpec::Refutable),
            LimitationVariant::GoedelSemantic => (SetSpec::Provable, SetSpec::True),
            LimitationVariant::Tarski => (SetSpec::True, SetSpec::True),
            LimitationVariant::Church => (SetSpec::Provable, SetSpec::Provable),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            LimitationVariant::GoedelSyntactic => "goedel-syn",
            LimitationVariant::GoedelSemantic => "goedel-sem",
            LimitationVariant::Tarski => "tarski",
            LimitationVariant::Church => "church",
        }
    }

    pub fn from_tag(tag: &str) -> Option<LimitationVariant> {
        LimitationVariant::ALL.into_iter().find(|v| v.tag() == tag)
    }
}

pub struct LogicalSystem<'a, S: FormalSystem> {
    base: &'a S,
    negate: Transform<'a, S::Expr>,
    provable: SentenceSet<'a, S::Expr>,
    truth: SentenceSet<'a, S::Expr>,
    self_ref_truth: Option<Transform<'a, S::Expr>>,
    self_ref_provability: Option<Transform<'a, S::Expr>>,
}

impl<'a, S> LogicalSystem<'a, S>
where
    S: FormalSystem + Sync,
    S::Expr: Send + Sync + 'a,
    S::Name: 'a,
{
    /// `provable` and `truth` are restricted to sentences here, so proper
    /// formulas are never members regardless of what the oracles say.
    pub fn new(
        base: &'a S,
        provable: SentenceSet<'a, S::Expr>,
        truth: SentenceSet<'a, S::Expr>,
        negate: impl Fn(&S::Expr) -> S::Expr + Send + Sync + 'a,
    ) -> Self {
        LogicalSystem {
            base,
            negate: Arc::new(negate),
            provable: restrict(base, provable),
            truth: restrict(base, truth),
            self_ref_truth: None,
            self_ref_provability: None,
        }
    }

    /// Declares a transform `φ ↦ φ*` such that whenever `φ` A-represents `X`,
    /// `φ*` A-represents the diagonal transform of `X`, for `A` = `target`.
    pub fn with_self_reference(mut self, target: Target, transform: impl Fn(&S::Expr) -> S::Expr + Send + Sync + 'a) -> Self {
        let t: Transform<'a, S::Expr> = Arc::new(transform);
        match target {
            Target::Truth => self.self_ref_truth = Some(t),
            Target::Provability => self.self_ref_provability = Some(t),
        }
        self
    }

    pub fn base(&self) -> &'a S {
        self.base
    }

    pub fn negate(&self, f: &S::Expr) -> S::Expr {
        (self.negate)(f)
    }

    pub fn provable(&self) -> &SentenceSet<'a, S::Expr> {
        &self.provable
    }

    pub fn truth(&self) -> &SentenceSet<'a, S::Expr> {
        &self.truth
    }

    pub fn has_self_reference(&self, target: Target) -> bool {
        self.self_reference(target).is_some()
    }

    fn self_reference(&self, target: Target) -> Option<&Transform<'a, S::Expr>> {
        match target {
            Target::Truth => self.self_ref_truth.as_ref(),
            Target::Provability => self.self_ref_provability.as_ref(),
        }
    }

    pub fn self_reference_transform(&self, target: Target, f: &S::Expr) -> Result<S::Expr> {
        let t = self
            .self_reference(target)
            .ok_or_else(|| AfsError::NoSelfRefCapability(target.to_string()))?;
        Ok(t(f))
    }

    /// `H' = {φ : φ' ∈ H}`.
    pub fn primed(&self, h: &SentenceSet<'a, S::Expr>) -> SentenceSet<'a, S::Expr> {
        let negate = self.negate.clone();
        let inner = h.clone();
        SentenceSet::new(format!("{}'", h.label()), move |f| inner.contains(&negate(f)))
    }

    pub fn set(&self, spec: SetSpec) -> SentenceSet<'a, S::Expr> {
        match spec {
            SetSpec::Provable => self.provable.clone(),
            SetSpec::True => self.truth.clone(),
            SetSpec::NotProvable => self.provable.complement().relabel("~P"),
            SetSpec::Refutable => self.primed(&self.provable),
        }
    }

    /// Checks `φ[n] ∈ T iff φ'[n] ∉ T` and `φ[n] ∈ P iff φ''[n] ∈ P` over the
    /// first `formula_count` formulas and `name_count` names.
    pub fn negation_axiom_check(&self, formula_count: usize, name_count: usize) -> Result<Outcome<Violation<S>>> {
        if formula_count == 0 || name_count == 0 {
            return Err(AfsError::Precondition("grid dimensions must be at least 1".into()));
        }
        let sys = self.base;
        let formulas = sys.enumerate_formulas(formula_count)?;
        let names = sys.enumerate_names(name_count)?;
        for phi in &formulas {
            let neg = self.negate(phi);
            let neg2 = self.negate(&neg);
            for n in &names {
                let inst = substitute(sys, phi, n)?;
                let in_t = self.truth.contains(&inst);
                let neg_out_t = !self.truth.contains(&substitute(sys, &neg, n)?);
                if in_t != neg_out_t {
                    return Ok(Outcome::Refuted(ViolationReport {
                        witness_name: n.clone(),
                        lhs: in_t,
                        rhs: neg_out_t,
                        narrative: format!(
                            "axiom (a) fails: {}[n] ∈ T is {in_t} but its negation's instance ∉ T is {neg_out_t}",
                            sys.render_expr(phi)
                        ),
                        lambda: inst,
                    }));
                }
                let in_p = self.provable.contains(&inst);
                let neg2_in_p = self.provable.contains(&substitute(sys, &neg2, n)?);
                if in_p != neg2_in_p {
                    return Ok(Outcome::Refuted(ViolationReport {
                        witness_name: n.clone(),
                        lhs: in_p,
                        rhs: neg2_in_p,
                        narrative: format!(
                            "axiom (b) fails: {}[n] ∈ P is {in_p} but its double negation's instance ∈ P is {neg2_in_p}",
                            sys.render_expr(phi)
                        ),
                        lambda: inst,
                    }));
                }
            }
        }
        Ok(Outcome::NotRefuted {
            checked: formulas.len() * names.len(),
        })
    }

    fn first_sentence_where(&self, count: usize, pred: impl Fn(&S::Expr) -> bool) -> Result<Outcome<S::Expr>> {
        let sentences = enumerate_sentences(self.base, count)?;
        Ok(match sentences.iter().find(|s| pred(s)) {
            Some(s) => Outcome::Refuted(s.clone()),
            None => Outcome::NotRefuted {
                checked: sentences.len(),
            },
        })
    }

    /// First enumerated `σ` with `σ ∈ P` and `σ' ∈ P`.
    pub fn consistency_check(&self, count: usize) -> Result<Outcome<S::Expr>> {
        self.first_sentence_where(count, |s| self.provable.contains(s) && self.provable.contains(&self.negate(s)))
    }

    /// First enumerated `σ` with `σ ∉ P` and `σ' ∉ P`.
    pub fn completeness_check(&self, count: usize) -> Result<Outcome<S::Expr>> {
        self.first_sentence_where(count, |s| !self.provable.contains(s) && !self.provable.contains(&self.negate(s)))
    }

    /// First enumerated `σ ∈ P` with `σ ∉ T`.
    pub fn soundness_check(&self, count: usize) -> Result<Outcome<S::Expr>> {
        self.first_sentence_where(count, |s| self.provable.contains(s) && !self.truth.contains(s))
    }

    /// Of an undecided sentence and its negation, the one that is true. For
    /// a sound system it is a true sentence outside `P`.
    pub fn true_member(&self, sigma: &S::Expr) -> S::Expr {
        if self.truth.contains(sigma) {
            sigma.clone()
        } else {
            self.negate(sigma)
        }
    }

    /// The generalized liar construction with the variant's `(A, B)`.
    pub fn limitation_witness(&self, variant: LimitationVariant, pi: &S::Expr) -> Result<LiarWitness<S::Expr, S::Name>> {
        let (a, b) = variant.sets();
        generalized_liar_witness(self.base, &self.set(a), &self.set(b), pi)
    }

    /// Builds `π` from `φ'` through the truth self-reference transform and
    /// returns the name `n = g(λ)` of `λ = π[g(π)]`, where `φ[n] ∈ T` and
    /// `n ∈ 𝐓` always disagree: `φ` does not T-represent `𝐓`.
    pub fn tarski_counterexample(&self, phi: &S::Expr) -> Result<Violation<S>> {
        let sys = self.base;
        if !sys.is_formula(phi) {
            return Err(AfsError::NotAFormula(sys.render_expr(phi)));
        }
        let pi = self.self_reference_transform(Target::Truth, &self.negate(phi))?;
        let pi_name = sys.name_of(&pi)?;
        let lambda = substitute(sys, &pi, &pi_name)?;
        let n = sys.name_of(&lambda)?;
        let lhs = self.truth.contains(&substitute(sys, phi, &n)?);
        let rhs = self.truth.contains(&sys.formula_of(&n)?);
        Ok(ViolationReport {
            narrative: format!(
                "{}[{}] {} T while the named sentence {} T",
                sys.render_expr(phi),
                sys.render_name(&n),
                if lhs { "∈" } else { "∉" },
                if rhs { "∈" } else { "∉" },
            ),
            witness_name: n,
            lhs,
            rhs,
            lambda,
        })
    }
}

fn restrict<'a, S>(base: &'a S, set: SentenceSet<'a, S::Expr>) -> SentenceSet<'a, S::Expr>
where
    S: FormalSystem + Sync,
    S::Expr: 'a,
{
    let label = set.label().to_string();
    SentenceSet::new(label, move |e| base.is_sentence(e) && set.contains(e))
}
