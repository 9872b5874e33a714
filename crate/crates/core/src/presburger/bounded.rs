//! Brute-force evaluation with every quantifier restricted to `0..=M`.
//!
//! This is the independent test oracle for the decision procedure. A bounded
//! verdict transfers to ℕ only in the directions its quantifier structure
//! allows, which [`BoundedEval::sound`] records.

use super::syntax::{PFormula, PTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedEval {
    pub value: bool,
    /// Whether `value` is guaranteed to be the truth over ℕ.
    pub sound: bool,
}

impl BoundedEval {
    /// `Some(value)` when sound, `None` when only advisory.
    pub fn verdict(&self) -> Option<bool> {
        self.sound.then_some(self.value)
    }
}

/// Which quantifiers act existentially / universally once negations and
/// implication antecedents are accounted for.
#[derive(Debug, Default, Clone, Copy)]
struct QuantifierShape {
    existential: bool,
    universal: bool,
}

fn shape(f: &PFormula, positive: bool, acc: &mut QuantifierShape) {
    match f {
        PFormula::Eq(..) => {}
        PFormula::Not(g) => shape(g, !positive, acc),
        PFormula::And(a, b) | PFormula::Or(a, b) => {
            shape(a, positive, acc);
            shape(b, positive, acc);
        }
        PFormula::Implies(a, b) => {
            shape(a, !positive, acc);
            shape(b, positive, acc);
        }
        PFormula::Exists(g) | PFormula::Forall(g) => {
            if matches!(f, PFormula::Exists(_)) == positive {
                acc.existential = true;
            } else {
                acc.universal = true;
            }
            shape(g, positive, acc);
        }
    }
}

fn term_value(t: &PTerm, env: &[u64]) -> u64 {
    match t {
        PTerm::Zero => 0,
        PTerm::One => 1,
        PTerm::Num(n) => *n,
        PTerm::Free => panic!("bounded evaluation needs a sentence"),
        PTerm::Bound(i) => env[env.len() - 1 - i],
        PTerm::Add(a, b) => term_value(a, env) + term_value(b, env),
    }
}

fn eval(f: &PFormula, bound: u64, env: &mut Vec<u64>) -> bool {
    match f {
        PFormula::Eq(a, b) => term_value(a, env) == term_value(b, env),
        PFormula::Not(g) => !eval(g, bound, env),
        PFormula::And(a, b) => eval(a, bound, env) && eval(b, bound, env),
        PFormula::Or(a, b) => eval(a, bound, env) || eval(b, bound, env),
        PFormula::Implies(a, b) => !eval(a, bound, env) || eval(b, bound, env),
        PFormula::Exists(g) | PFormula::Forall(g) => {
            let want = matches!(f, PFormula::Exists(_));
            let mut hit = false;
            for k in 0..=bound {
                env.push(k);
                let v = eval(g, bound, env);
                env.pop();
                if v == want {
                    hit = true;
                    break;
                }
            }
            if want {
                hit
            } else {
                !hit
            }
        }
    }
}

/// Evaluates a sentence with quantifiers ranging over `0..=bound`.
///
/// # Panics
///
/// If `sentence` mentions the free variable `x`.
pub fn eval_bounded(sentence: &PFormula, bound: u64) -> BoundedEval {
    assert!(!sentence.has_free(), "eval_bounded expects a sentence");
    let value = eval(sentence, bound, &mut Vec::new());
    let mut acc = QuantifierShape::default();
    shape(sentence, true, &mut acc);
    let sound = if value { !acc.universal } else { !acc.existential };
    BoundedEval { value, sound }
}
