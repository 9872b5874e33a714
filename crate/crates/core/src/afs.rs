//! The abstract formal system kernel.
//!
//! A [`FormalSystem`] bundles expressions, a classification into sentences
//! and proper formulas, a naming bijection between formulas and names, and a
//! substitution operation. Everything here is generic over the instance and
//! never enumerates an infinite set: universal claims are checked on bounded,
//! deterministic samples, and a passing check only means "not refuted".

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AfsError {
    #[error("not a formula: {0}")]
    NotAFormula(String),
    #[error("not a name: {0}")]
    NotAName(String),
    #[error("name {0} is not assigned within the naming budget")]
    NameUnassigned(String),
    #[error("budget of {limit} exceeded while {context}")]
    BudgetExceeded { limit: usize, context: String },
    #[error("instance has no self-reference transform for {0}")]
    NoSelfRefCapability(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = AfsError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExprKind {
    Sentence,
    ProperFormula,
    Other,
}

impl ExprKind {
    pub fn is_formula(self) -> bool {
        !matches!(self, ExprKind::Other)
    }
}

/// An abstract formal system `<E, S, F, N, g, s>`.
///
/// Implementations must keep `name_of` injective with `formula_of` as its
/// inverse, and `substitute_unchecked(σ, n) == σ` for every sentence `σ`.
/// Enumerations are ordered by [`FormalSystem::size`] and then by whatever
/// canonical order the instance fixes inside one size.
pub trait FormalSystem {
    type Expr: Clone + Eq + Hash + fmt::Debug;
    type Name: Clone + Eq + Hash + fmt::Debug;

    fn kind(&self, e: &Self::Expr) -> ExprKind;

    fn is_name(&self, n: &Self::Name) -> bool;

    /// The naming function `g`.
    fn name_of(&self, f: &Self::Expr) -> Result<Self::Name>;

    /// `g⁻¹`.
    fn formula_of(&self, n: &Self::Name) -> Result<Self::Expr>;

    /// `s(φ, n)` without classification checks; see [`substitute`].
    fn substitute_unchecked(&self, f: &Self::Expr, n: &Self::Name) -> Self::Expr;

    /// Node count of an expression.
    fn size(&self, e: &Self::Expr) -> usize;

    /// Every formula with exactly `size` nodes, in canonical order.
    fn formulas_of_size(&self, size: usize) -> Vec<Self::Expr>;

    fn render_expr(&self, e: &Self::Expr) -> String;

    fn render_name(&self, n: &Self::Name) -> String;

    /// Upper bound on formula size for which `formulas_of_size` can return
    /// anything; enumeration stops with `BudgetExceeded` past it.
    fn max_enumeration_size(&self) -> usize {
        64
    }

    fn is_sentence(&self, e: &Self::Expr) -> bool {
        self.kind(e) == ExprKind::Sentence
    }

    fn is_proper_formula(&self, e: &Self::Expr) -> bool {
        self.kind(e) == ExprKind::ProperFormula
    }

    fn is_formula(&self, e: &Self::Expr) -> bool {
        self.kind(e).is_formula()
    }

    /// The first `count` formulas in canonical order.
    fn enumerate_formulas(&self, count: usize) -> Result<Vec<Self::Expr>> {
        let mut out = Vec::with_capacity(count);
        let mut size = 0;
        while out.len() < count {
            if size > self.max_enumeration_size() {
                return Err(AfsError::BudgetExceeded {
                    limit: self.max_enumeration_size(),
                    context: format!("enumerating {count} formulas"),
                });
            }
            let batch = self.formulas_of_size(size);
            let need = count - out.len();
            out.extend(batch.into_iter().take(need));
            size += 1;
        }
        Ok(out)
    }

    /// Names of the first `count` enumerated formulas, in the same order.
    fn enumerate_names(&self, count: usize) -> Result<Vec<Self::Name>> {
        self.enumerate_formulas(count)?
            .iter()
            .map(|f| self.name_of(f))
            .collect()
    }

    /// Every formula with at most `cap` nodes.
    fn formulas_up_to(&self, cap: usize) -> Vec<Self::Expr> {
        (0..=cap).flat_map(|s| self.formulas_of_size(s)).collect()
    }
}

/// The first `count` enumerated sentences.
pub fn enumerate_sentences<S: FormalSystem>(sys: &S, count: usize) -> Result<Vec<S::Expr>> {
    let mut out = Vec::with_capacity(count);
    let mut size = 0;
    while out.len() < count {
        if size > sys.max_enumeration_size() {
            return Err(AfsError::BudgetExceeded {
                limit: sys.max_enumeration_size(),
                context: format!("enumerating {count} sentences"),
            });
        }
        let need = count - out.len();
        out.extend(
            sys.formulas_of_size(size)
                .into_iter()
                .filter(|f| sys.is_sentence(f))
                .take(need),
        );
        size += 1;
    }
    Ok(out)
}

type ExprPredicate<'a, E> = Arc<dyn Fn(&E) -> bool + Send + Sync + 'a>;
type NamePredicate<'a, N> = Arc<dyn Fn(&N) -> Result<bool> + Send + Sync + 'a>;
type FallibleExprPredicate<'a, E> = Arc<dyn Fn(&E) -> Result<bool> + Send + Sync + 'a>;

/// A labeled, total membership oracle over expressions.
///
/// Used for sentence sets such as `T` and `P`, and for the formula sets the
/// generalized liar construction needs; those are expected to answer `false`
/// on proper formulas unless they say otherwise.
#[derive(Clone)]
pub struct SentenceSet<'a, E> {
    label: String,
    member: ExprPredicate<'a, E>,
}

impl<'a, E> SentenceSet<'a, E> {
    pub fn new(label: impl Into<String>, member: impl Fn(&E) -> bool + Send + Sync + 'a) -> Self {
        SentenceSet {
            label: label.into(),
            member: Arc::new(member),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, e: &E) -> bool {
        (self.member)(e)
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

impl<'a, E: 'a> SentenceSet<'a, E> {
    pub fn everything() -> Self {
        SentenceSet::new("all", |_| true)
    }

    pub fn nothing() -> Self {
        SentenceSet::new("none", |_| false)
    }

    /// Complement relative to all expressions: `∼A`.
    pub fn complement(&self) -> Self {
        let inner = self.member.clone();
        SentenceSet {
            label: format!("~{}", self.label),
            member: Arc::new(move |e| !inner(e)),
        }
    }
}

impl<E> fmt::Debug for SentenceSet<'_, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SentenceSet").field("label", &self.label).finish()
    }
}

/// A labeled membership oracle over names.
///
/// A name set may also know how to decide `g(f) ∈ X` directly from the
/// formula `f`. Sets built with [`image_under_naming`] always do, since
/// `g(f) ∈ g*C` iff `f ∈ C`; instances whose `g` is expensive to evaluate
/// (the Presburger ledger) rely on this to answer diagonal queries without
/// computing the name of every substituted sentence.
#[derive(Clone)]
pub struct NameSet<'a, E, N> {
    label: String,
    member: NamePredicate<'a, N>,
    by_formula: Option<FallibleExprPredicate<'a, E>>,
}

impl<'a, E: 'a, N: 'a> NameSet<'a, E, N> {
    pub fn new(label: impl Into<String>, member: impl Fn(&N) -> Result<bool> + Send + Sync + 'a) -> Self {
        NameSet {
            label: label.into(),
            member: Arc::new(member),
            by_formula: None,
        }
    }

    /// Attach a decision for `g(f) ∈ self` phrased on `f`. It must agree with
    /// the name-side membership wherever both are defined.
    pub fn with_formula_side(mut self, by_formula: impl Fn(&E) -> Result<bool> + Send + Sync + 'a) -> Self {
        self.by_formula = Some(Arc::new(by_formula));
        self
    }

    pub fn all() -> Self {
        NameSet::new("N", |_| Ok(true)).with_formula_side(|_| Ok(true))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, n: &N) -> Result<bool> {
        (self.member)(n)
    }

    pub fn has_formula_side(&self) -> bool {
        self.by_formula.is_some()
    }

    /// Decides `g(f) ∈ self`, going through `g` only when no formula-side
    /// decision is attached.
    pub fn contains_name_of<S>(&self, sys: &S, f: &E) -> Result<bool>
    where
        S: FormalSystem<Expr = E, Name = N>,
    {
        match &self.by_formula {
            Some(p) => p(f),
            None => self.contains(&sys.name_of(f)?),
        }
    }

    /// `∼X = N ∖ X`.
    pub fn complement(&self) -> Self {
        let inner = self.member.clone();
        let by_formula = self.by_formula.clone().map(|p| -> FallibleExprPredicate<'a, E> {
            Arc::new(move |f| p(f).map(|b| !b))
        });
        NameSet {
            label: format!("~{}", self.label),
            member: Arc::new(move |n| inner(n).map(|b| !b)),
            by_formula,
        }
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

impl<E, N> fmt::Debug for NameSet<'_, E, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NameSet")
            .field("label", &self.label)
            .field("formula_side", &self.by_formula.is_some())
            .finish()
    }
}

/// A concrete refutation of a biconditional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport<E, N> {
    pub witness_name: N,
    /// Left side, typically `φ[n] ∈ A`.
    pub lhs: bool,
    /// Right side, typically `n ∈ X`.
    pub rhs: bool,
    /// The sentence the left side was evaluated on.
    pub lambda: E,
    pub narrative: String,
}

impl<E, N> ViolationReport<E, N> {
    pub fn is_violation(&self) -> bool {
        self.lhs != self.rhs
    }
}

/// Result of a bounded check. `NotRefuted` never means "proved".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<W> {
    NotRefuted { checked: usize },
    Refuted(W),
}

impl<W> Outcome<W> {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Outcome::Refuted(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Outcome::Refuted(w) => Some(w),
            Outcome::NotRefuted { .. } => None,
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Outcome::Refuted(w) => Some(w),
            Outcome::NotRefuted { .. } => None,
        }
    }
}

pub type Violation<S> = ViolationReport<<S as FormalSystem>::Expr, <S as FormalSystem>::Name>;

/// `φ[n]`, checking that `φ` is a formula and `n` a name.
pub fn substitute<S: FormalSystem>(sys: &S, f: &S::Expr, n: &S::Name) -> Result<S::Expr> {
    if !sys.is_formula(f) {
        return Err(AfsError::NotAFormula(sys.render_expr(f)));
    }
    if !sys.is_name(n) {
        return Err(AfsError::NotAName(sys.render_name(n)));
    }
    if sys.is_sentence(f) {
        return Ok(f.clone());
    }
    Ok(sys.substitute_unchecked(f, n))
}

/// The boldface set `g*C`: `n ∈ 𝐂` iff `g⁻¹(n) ∈ C`.
///
/// `bound` caps the number of formulas `g⁻¹` may enumerate for instances
/// that resolve names lazily; a name beyond it is reported as unassigned.
pub fn image_under_naming<'a, S>(
    sys: &'a S,
    set: &SentenceSet<'a, S::Expr>,
    bound: usize,
) -> NameSet<'a, S::Expr, S::Name>
where
    S: FormalSystem + Sync,
    S::Expr: 'a,
    S::Name: 'a,
{
    let by_name = set.clone();
    let by_formula = set.clone();
    NameSet::new(format!("g*{}", set.label()), move |n| {
        let f = resolve_bounded(sys, n, bound)?;
        Ok(by_name.contains(&f))
    })
    .with_formula_side(move |f| Ok(by_formula.contains(f)))
}

fn resolve_bounded<S: FormalSystem>(sys: &S, n: &S::Name, bound: usize) -> Result<S::Expr> {
    match sys.formula_of(n) {
        Ok(f) => Ok(f),
        Err(AfsError::BudgetExceeded { .. }) | Err(AfsError::NameUnassigned(_)) => {
            Err(AfsError::NameUnassigned(format!("{} (bound {bound})", sys.render_name(n))))
        }
        Err(e) => Err(e),
    }
}

/// The formal liar `λ = π[g(π)]`.
pub fn diagonal_sentence<S: FormalSystem>(sys: &S, pi: &S::Expr) -> Result<S::Expr> {
    if !sys.is_formula(pi) {
        return Err(AfsError::NotAFormula(sys.render_expr(pi)));
    }
    let n = sys.name_of(pi)?;
    substitute(sys, pi, &n)
}

/// `{n ∈ N : g(g⁻¹(n)[n]) ∈ X}`.
pub fn diagonal_name_set<'a, S>(sys: &'a S, x: &NameSet<'a, S::Expr, S::Name>) -> NameSet<'a, S::Expr, S::Name>
where
    S: FormalSystem + Sync,
    S::Expr: 'a,
    S::Name: 'a,
{
    let by_name = x.clone();
    let by_formula = x.clone();
    NameSet::new(format!("diag({})", x.label()), move |n| {
        let f = sys.formula_of(n)?;
        let d = substitute(sys, &f, n)?;
        by_name.contains_name_of(sys, &d)
    })
    .with_formula_side(move |f| {
        let d = diagonal_sentence(sys, f)?;
        by_formula.contains_name_of(sys, &d)
    })
}

/// Checks `n ∈ X iff φ[n] ∈ A` on `sample`, in order, and reports the first
/// name where it fails.
pub fn check_representation<S: FormalSystem>(
    sys: &S,
    phi: &S::Expr,
    x: &NameSet<'_, S::Expr, S::Name>,
    a: &SentenceSet<'_, S::Expr>,
    sample: &[S::Name],
) -> Result<Outcome<Violation<S>>> {
    if sample.is_empty() {
        return Err(AfsError::Precondition("name sample must be non-empty".into()));
    }
    if !sys.is_formula(phi) {
        return Err(AfsError::NotAFormula(sys.render_expr(phi)));
    }
    for n in sample {
        let inst = substitute(sys, phi, n)?;
        let lhs = a.contains(&inst);
        let rhs = x.contains(n)?;
        if lhs != rhs {
            return Ok(Outcome::Refuted(ViolationReport {
                witness_name: n.clone(),
                lhs,
                rhs,
                narrative: format!(
                    "{}[{}] {} {} but {} {} {}",
                    sys.render_expr(phi),
                    sys.render_name(n),
                    if lhs { "∈" } else { "∉" },
                    a.label(),
                    sys.render_name(n),
                    if rhs { "∈" } else { "∉" },
                    x.label(),
                ),
                lambda: inst,
            }));
        }
    }
    Ok(Outcome::NotRefuted { checked: sample.len() })
}

/// Instantiates the representability condition of `{n : g⁻¹(n)[n] ∉ T}` at
/// `n = g(π)`. The two sides are computed along different routes: the left
/// from `λ = π[g(π)]`, the right from `g⁻¹(n)[n]`. They always differ.
pub fn liar_violation<S: FormalSystem>(sys: &S, pi: &S::Expr, truth: &SentenceSet<'_, S::Expr>) -> Result<Violation<S>> {
    let n = sys.name_of(pi)?;
    let lambda = substitute(sys, pi, &n)?;
    let lhs = truth.contains(&lambda);
    let back = sys.formula_of(&n)?;
    let diag = substitute(sys, &back, &n)?;
    let rhs = !truth.contains(&diag);
    Ok(ViolationReport {
        narrative: format!(
            "λ = {}: λ {} {}, while g⁻¹(n)[n] {} {} at n = {}",
            sys.render_expr(&lambda),
            if lhs { "∈" } else { "∉" },
            truth.label(),
            if rhs { "∉" } else { "∈" },
            truth.label(),
            sys.render_name(&n),
        ),
        witness_name: n,
        lhs,
        rhs,
        lambda,
    })
}

/// The four facts the generalized liar argument turns on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LiarFacts {
    pub lambda_is_sentence: bool,
    pub lambda_in_a: bool,
    pub lambda_in_b: bool,
    /// `π[n] ∈ B iff g(g⁻¹(n)[n]) ∉ 𝐀` at `n = g(π)`.
    pub represents_at_self: bool,
}

impl LiarFacts {
    /// `λ ∈ S` and `λ` lies in exactly one of `A`, `B`: a witness of `S ∩ A ≠ B`.
    pub fn separates(&self) -> bool {
        self.lambda_is_sentence && self.lambda_in_a != self.lambda_in_b
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiarWitness<E, N> {
    pub pi: E,
    pub name: N,
    pub lambda: E,
    pub facts: LiarFacts,
}

/// Runs the generalized liar construction for `π` against `A` (total on
/// formulas) and `B`.
///
/// Whenever `facts.represents_at_self` holds, `facts.separates()` holds too.
pub fn generalized_liar_witness<S: FormalSystem>(
    sys: &S,
    a: &SentenceSet<'_, S::Expr>,
    b: &SentenceSet<'_, S::Expr>,
    pi: &S::Expr,
) -> Result<LiarWitness<S::Expr, S::Name>> {
    let n = sys.name_of(pi)?;
    let lambda = substitute(sys, pi, &n)?;
    let lambda_in_a = a.contains(&lambda);
    let lambda_in_b = b.contains(&lambda);
    // g(d) ∉ 𝐀 iff d ∉ A, with d rebuilt through g⁻¹.
    let d = substitute(sys, &sys.formula_of(&n)?, &n)?;
    let diag_outside_a = !a.contains(&d);
    let facts = LiarFacts {
        lambda_is_sentence: sys.is_sentence(&lambda),
        lambda_in_a,
        lambda_in_b,
        represents_at_self: lambda_in_b == diag_outside_a,
    };
    Ok(LiarWitness {
        pi: pi.clone(),
        name: n,
        lambda,
        facts,
    })
}
