//! Additive arithmetic of the naturals as a complete logical system.
//!
//! Truth is decided by quantifier elimination, `P` and `T` coincide, and the
//! naming function is the even/odd ledger. With that naming the even numbers
//! are exactly the names of true sentences, so `E y. y+y = x` defines truth.

mod bounded;
mod enumerate;
mod naming;
mod qe;
mod syntax;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, MutexGuard};

pub use bounded::{eval_bounded, BoundedEval};
pub use enumerate::{count_of_size, enumerate_formulas, formulas_of_size, Generator};
pub use naming::{Assignment, NamingLedger, Parity};
pub use qe::{decide, decide_with_cap, DecideError};
pub use syntax::{parse, serialize, serialize_term, PFormula, PTerm, ParseError};

use crate::afs::{
    check_representation, diagonal_name_set, image_under_naming, AfsError, ExprKind, FormalSystem, NameSet,
    Outcome, Result, SentenceSet, Violation,
};
use crate::logic::LogicalSystem;

/// Default cap on the number of ledger assignments a single lookup may force.
pub const DEFAULT_BUDGET: usize = 2_000_000;

const MAX_ENUM_SIZE: usize = 12;

pub struct Presburger {
    ledger: Mutex<NamingLedger>,
    budget: usize,
    batches: Mutex<HashMap<usize, Arc<Vec<PFormula>>>>,
    truths: Mutex<HashMap<PFormula, bool>>,
}

impl Default for Presburger {
    fn default() -> Self {
        Presburger::new()
    }
}

impl Presburger {
    pub fn new() -> Self {
        Presburger::with_budget(DEFAULT_BUDGET)
    }

    pub fn with_budget(budget: usize) -> Self {
        Presburger {
            ledger: Mutex::new(NamingLedger::new()),
            budget,
            batches: Mutex::new(HashMap::new()),
            truths: Mutex::new(HashMap::new()),
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn ledger(&self) -> MutexGuard<'_, NamingLedger> {
        self.ledger.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Truth over ℕ; `false` for anything that is not a sentence.
    pub fn is_true(&self, f: &PFormula) -> bool {
        if f.has_free() || !f.is_well_scoped() {
            return false;
        }
        if let Some(&b) = self.truths.lock().unwrap_or_else(|e| e.into_inner()).get(f) {
            return b;
        }
        let b = decide(f).expect("closed formula");
        self.truths.lock().unwrap_or_else(|e| e.into_inner()).insert(f.clone(), b);
        b
    }

    pub fn truth_set(&self) -> SentenceSet<'_, PFormula> {
        SentenceSet::new("T", move |f| self.is_true(f))
    }

    /// `P`, which is `T` for this complete system.
    pub fn provable_set(&self) -> SentenceSet<'_, PFormula> {
        SentenceSet::new("P", move |f| self.is_true(f))
    }

    /// The even numbers. By construction of the ledger `g(f)` is even iff
    /// `f` is a true sentence, which is the formula-side decision.
    pub fn evens(&self) -> NameSet<'_, PFormula, u64> {
        NameSet::new("evens", |n: &u64| Ok(n.is_multiple_of(2))).with_formula_side(move |f| Ok(self.is_true(f)))
    }

    pub fn odds(&self) -> NameSet<'_, PFormula, u64> {
        self.evens().complement().relabel("odds")
    }

    /// Snapshot of the assignment at enumeration `index`, advancing the
    /// ledger as needed.
    pub fn assignment(&self, index: usize) -> Result<Assignment> {
        if index >= self.budget {
            return Err(AfsError::BudgetExceeded {
                limit: self.budget,
                context: format!("assigning enumeration index {index}"),
            });
        }
        let mut l = self.ledger();
        l.fill_to(index + 1);
        Ok(l.assignment(index).expect("filled"))
    }

    pub fn assignments(&self, count: usize) -> Result<Vec<Assignment>> {
        if count > self.budget {
            return Err(AfsError::BudgetExceeded {
                limit: self.budget,
                context: format!("assigning {count} formulas"),
            });
        }
        let mut l = self.ledger();
        l.fill_to(count);
        Ok((0..count).map(|i| l.assignment(i).expect("filled")).collect())
    }

    /// `(cursor, next_even, next_odd)` of the ledger.
    pub fn ledger_state(&self) -> (usize, u64, u64) {
        let l = self.ledger();
        (l.cursor(), l.next_even(), l.next_odd())
    }

    pub fn goedel_name(&self, f: &PFormula) -> Result<u64> {
        self.name_of(f)
    }

    pub fn goedel_formula(&self, n: u64) -> Result<PFormula> {
        self.formula_of(&n)
    }

    pub fn logical_system(&self) -> LogicalSystem<'_, Presburger> {
        LogicalSystem::new(self, self.provable_set(), self.truth_set(), |f: &PFormula| PFormula::not(f.clone()))
    }

    /// Checks that `phi` T-represents `𝐓` on the first `sample_size` names.
    pub fn check_truth_representer(&self, phi: &PFormula, sample_size: usize) -> Result<Outcome<Violation<Self>>> {
        let sample = self.enumerate_names(sample_size)?;
        let t = self.truth_set();
        let bold_t = image_under_naming(self, &t, self.budget).relabel("𝐓");
        check_representation(self, phi, &bold_t, &t, &sample)
    }

    /// Even representer against `𝐓` (= `𝐏`) and odd representer against
    /// `∼𝐏`, plus agreement of `𝐓` with the evens, on the first
    /// `sample_size` assigned names.
    pub fn truth_definability_check(&self, sample_size: usize) -> Result<Outcome<Violation<Self>>> {
        if sample_size == 0 {
            return Err(AfsError::Precondition("sample size must be at least 1".into()));
        }
        let sample = self.enumerate_names(sample_size)?;
        let t = self.truth_set();
        let p = self.provable_set();
        let bold_t = image_under_naming(self, &t, self.budget).relabel("𝐓");
        let not_bold_p = image_under_naming(self, &p, self.budget).complement().relabel("∼𝐏");

        let r = check_representation(self, &even_representer(), &bold_t, &t, &sample)?;
        if r.is_refuted() {
            return Ok(r);
        }
        let r = check_representation(self, &odd_representer(), &not_bold_p, &t, &sample)?;
        if r.is_refuted() {
            return Ok(r);
        }
        let evens = self.evens();
        for n in &sample {
            let (by_parity, by_image) = (evens.contains(n)?, bold_t.contains(n)?);
            if by_parity != by_image {
                let f = self.formula_of(n)?;
                return Ok(Outcome::Refuted(crate::afs::ViolationReport {
                    witness_name: *n,
                    lhs: by_image,
                    rhs: by_parity,
                    narrative: format!("ledger parity disagrees with truth of {f} at {n}"),
                    lambda: f,
                }));
            }
        }
        Ok(Outcome::NotRefuted { checked: sample.len() })
    }

    /// Searches every formula of at most `size_cap` nodes for a T-representer
    /// of the diagonal transform of the evens, on the first `sample_size`
    /// names. Survivors are reported, never claimed as representers.
    pub fn non_self_referentiality_evidence(&self, size_cap: usize, sample_size: usize) -> Result<SelfRefEvidence> {
        if sample_size == 0 {
            return Err(AfsError::Precondition("sample size must be at least 1".into()));
        }
        if size_cap > MAX_ENUM_SIZE {
            return Err(AfsError::BudgetExceeded {
                limit: MAX_ENUM_SIZE,
                context: format!("enumerating candidates up to size {size_cap}"),
            });
        }
        let sample = self.enumerate_names(sample_size)?;
        let evens = self.evens();
        let diag = diagonal_name_set(self, &evens);
        let mut table = HashMap::with_capacity(sample.len());
        for n in &sample {
            table.insert(*n, diag.contains(n)?);
        }
        let label = diag.label().to_string();
        let frozen = NameSet::new(label, move |n: &u64| {
            table
                .get(n)
                .copied()
                .ok_or_else(|| AfsError::NameUnassigned(n.to_string()))
        });
        let t = self.truth_set();
        let candidates = self.formulas_up_to(size_cap);
        let mut survivors = Vec::new();
        for phi in &candidates {
            if let Outcome::NotRefuted { .. } = check_representation(self, phi, &frozen, &t, &sample)? {
                survivors.push(phi.clone());
            }
        }
        Ok(SelfRefEvidence {
            size_cap,
            sample,
            candidates: candidates.len(),
            survivors,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfRefEvidence {
    pub size_cap: usize,
    pub sample: Vec<u64>,
    pub candidates: usize,
    /// Formulas the sample failed to refute.
    pub survivors: Vec<PFormula>,
}

impl SelfRefEvidence {
    pub fn all_refuted(&self) -> bool {
        self.survivors.is_empty()
    }
}

/// `E y. y+y = x`
pub fn even_representer() -> PFormula {
    PFormula::exists(PFormula::eq(PTerm::add(PTerm::Bound(0), PTerm::Bound(0)), PTerm::Free))
}

/// `A y. ~(y+y = x)`
pub fn odd_representer() -> PFormula {
    PFormula::forall(PFormula::not(PFormula::eq(
        PTerm::add(PTerm::Bound(0), PTerm::Bound(0)),
        PTerm::Free,
    )))
}

impl FormalSystem for Presburger {
    type Expr = PFormula;
    type Name = u64;

    fn kind(&self, e: &PFormula) -> ExprKind {
        if !e.is_well_scoped() {
            ExprKind::Other
        } else if e.has_free() {
            ExprKind::ProperFormula
        } else {
            ExprKind::Sentence
        }
    }

    /// Every natural is a name in the limit; unassigned ones are resolved
    /// lazily by `formula_of`.
    fn is_name(&self, _n: &u64) -> bool {
        true
    }

    fn name_of(&self, f: &PFormula) -> Result<u64> {
        if !self.is_formula(f) {
            return Err(AfsError::NotAFormula(serialize(f)));
        }
        let expanded;
        let f = if f.has_compact_numerals() {
            expanded = f.expand_numerals();
            &expanded
        } else {
            f
        };
        let mut l = self.ledger();
        if let Some(n) = l.name_of(f) {
            return Ok(n);
        }
        let size = f.size();
        let before: u128 = (0..size).map(count_of_size).sum();
        if size > MAX_ENUM_SIZE || before >= self.budget as u128 {
            return Err(AfsError::BudgetExceeded {
                limit: self.budget,
                context: format!("naming {f}"),
            });
        }
        while l.current_size() <= size && l.cursor() < self.budget {
            let a = l.advance();
            if a.formula == *f {
                return Ok(a.name);
            }
        }
        Err(AfsError::BudgetExceeded {
            limit: self.budget,
            context: format!("naming {f}"),
        })
    }

    fn formula_of(&self, n: &u64) -> Result<PFormula> {
        let mut l = self.ledger();
        loop {
            if let Some(f) = l.formula_of(*n) {
                return Ok(f.clone());
            }
            if l.cursor() >= self.budget {
                return Err(AfsError::NameUnassigned(format!("{n} (ledger budget {})", self.budget)));
            }
            l.advance();
        }
    }

    fn substitute_unchecked(&self, f: &PFormula, n: &u64) -> PFormula {
        f.substitute_numeral(*n)
    }

    fn size(&self, e: &PFormula) -> usize {
        e.size()
    }

    fn formulas_of_size(&self, size: usize) -> Vec<PFormula> {
        if size > MAX_ENUM_SIZE {
            return Vec::new();
        }
        let cached = self.batches.lock().unwrap_or_else(|e| e.into_inner()).get(&size).cloned();
        let batch = match cached {
            Some(b) => b,
            None => {
                let b = Arc::new(formulas_of_size(size));
                self.batches
                    .lock()
                    .unwrap_or_else(|e| e.into_inner())
                    .insert(size, b.clone());
                b
            }
        };
        batch.as_ref().clone()
    }

    fn render_expr(&self, e: &PFormula) -> String {
        serialize(e)
    }

    fn render_name(&self, n: &u64) -> String {
        n.to_string()
    }

    fn max_enumeration_size(&self) -> usize {
        MAX_ENUM_SIZE
    }

    fn enumerate_names(&self, count: usize) -> Result<Vec<u64>> {
        Ok(self.assignments(count)?.into_iter().map(|a| a.name).collect())
    }

    fn enumerate_formulas(&self, count: usize) -> Result<Vec<PFormula>> {
        Ok(enumerate_formulas(count))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afs::{diagonal_sentence, substitute};

    #[test]
    fn numeral_substitution() {
        let sys = Presburger::new();
        let f = parse("E y. y+y = x").unwrap();
        assert_eq!(serialize(&substitute(&sys, &f, &4).unwrap()), "E y. y+y = 1+1+1+1");
        let s = parse("0 = 0").unwrap();
        assert_eq!(substitute(&sys, &s, &17).unwrap(), s);
    }

    #[test]
    fn representers_decide_parity() {
        let sys = Presburger::new();
        let even = even_representer();
        let odd = odd_representer();
        assert_eq!(serialize(&even), "E y. y+y = x");
        assert_eq!(serialize(&odd), "A y. ~(y+y = x)");
        assert_eq!(serialize(&even.substitute_numeral(4)), "E y. y+y = 1+1+1+1");
        assert!(sys.is_true(&even.substitute_numeral(4)));
        assert_eq!(serialize(&odd.substitute_numeral(3)), "A y. ~(y+y = 1+1+1)");
        assert!(sys.is_true(&odd.substitute_numeral(3)));
        assert!(!sys.is_true(&even.substitute_numeral(3)));
    }

    #[test]
    fn first_names() {
        let sys = Presburger::new();
        assert_eq!(sys.goedel_name(&parse("0 = 0").unwrap()).unwrap(), 0);
        assert_eq!(sys.goedel_name(&parse("0 = 1").unwrap()).unwrap(), 1);
        assert_eq!(serialize(&sys.goedel_formula(0).unwrap()), "0 = 0");
        let second_true = sys.goedel_formula(2).unwrap();
        assert!(sys.is_true(&second_true));
    }

    #[test]
    fn diagonal_of_even_representer_uses_its_own_name() {
        let sys = Presburger::new();
        let pi = even_representer();
        let k = sys.goedel_name(&pi).unwrap();
        assert_eq!(k % 2, 1, "a proper formula gets an odd name");
        let lambda = diagonal_sentence(&sys, &pi).unwrap();
        assert_eq!(lambda, pi.substitute_numeral(k));
    }

    #[test]
    fn budget_is_enforced() {
        let sys = Presburger::with_budget(10);
        let f = parse("A y. E z. z = y+1").unwrap();
        assert!(matches!(sys.goedel_name(&f), Err(AfsError::BudgetExceeded { .. })));
        assert!(matches!(sys.goedel_formula(1001), Err(AfsError::NameUnassigned(_))));
    }

    #[test]
    fn truth_definability_small_and_mutated() {
        let sys = Presburger::new();
        assert!(!sys.truth_definability_check(1).unwrap().is_refuted());
        let mutated = parse("E y. y+y+1 = x").unwrap();
        let r = sys.check_truth_representer(&mutated, 20).unwrap();
        let w = r.witness().expect("odd representer cannot define truth");
        assert_eq!(w.witness_name, 0);
        assert!(matches!(sys.truth_definability_check(0), Err(AfsError::Precondition(_))));
    }

    #[test]
    fn self_ref_evidence_rejects_empty_sample() {
        let sys = Presburger::new();
        assert!(matches!(
            sys.non_self_referentiality_evidence(3, 0),
            Err(AfsError::Precondition(_))
        ));
        assert!(sys.non_self_referentiality_evidence(3, 20).unwrap().all_refuted());
    }
}
