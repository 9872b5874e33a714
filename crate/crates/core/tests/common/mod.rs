//! A four-sentence toy system for degenerate and artificial cases.
//!
//! Sentences `S0..S3`, proper formulas `O0..O3` with `Ok[n] = S((k+n) mod 4)`,
//! names `0..8` (`Sk ↦ k`, `Ok ↦ 4+k`), and one non-formula `Junk`.

#![allow(dead_code)]

use liarlab_core::afs::{AfsError, ExprKind, FormalSystem, Result, SentenceSet};
use liarlab_core::logic::LogicalSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Toy {
    S(u32),
    O(u32),
    Junk,
}

pub struct ToySystem;

impl FormalSystem for ToySystem {
    type Expr = Toy;
    type Name = u32;

    fn kind(&self, e: &Toy) -> ExprKind {
        match e {
            Toy::S(_) => ExprKind::Sentence,
            Toy::O(_) => ExprKind::ProperFormula,
            Toy::Junk => ExprKind::Other,
        }
    }

    fn is_name(&self, n: &u32) -> bool {
        *n < 8
    }

    fn name_of(&self, f: &Toy) -> Result<u32> {
        match f {
            Toy::S(k) => Ok(*k),
            Toy::O(k) => Ok(4 + k),
            Toy::Junk => Err(AfsError::NotAFormula("Junk".into())),
        }
    }

    fn formula_of(&self, n: &u32) -> Result<Toy> {
        match n {
            0..=3 => Ok(Toy::S(*n)),
            4..=7 => Ok(Toy::O(n - 4)),
            _ => Err(AfsError::NotAName(n.to_string())),
        }
    }

    fn substitute_unchecked(&self, f: &Toy, n: &u32) -> Toy {
        match f {
            Toy::O(k) => Toy::S((k + n) % 4),
            other => *other,
        }
    }

    fn size(&self, e: &Toy) -> usize {
        match e {
            Toy::S(_) => 1,
            Toy::O(_) => 2,
            Toy::Junk => 0,
        }
    }

    fn formulas_of_size(&self, size: usize) -> Vec<Toy> {
        match size {
            1 => (0..4).map(Toy::S).collect(),
            2 => (0..4).map(Toy::O).collect(),
            _ => Vec::new(),
        }
    }

    fn render_expr(&self, e: &Toy) -> String {
        format!("{e:?}")
    }

    fn render_name(&self, n: &u32) -> String {
        n.to_string()
    }

    fn max_enumeration_size(&self) -> usize {
        2
    }
}

pub fn flip(e: &Toy) -> Toy {
    match e {
        Toy::S(k) => Toy::S(k ^ 1),
        Toy::O(k) => Toy::O(k ^ 1),
        Toy::Junk => Toy::Junk,
    }
}

pub fn even_sentences() -> SentenceSet<'static, Toy> {
    SentenceSet::new("T", |e: &Toy| matches!(e, Toy::S(k) if k % 2 == 0))
}

/// A well-behaved logical system: `P = T = {S0, S2}`, negation flips parity.
pub fn toy_logic(sys: &ToySystem) -> LogicalSystem<'_, ToySystem> {
    LogicalSystem::new(sys, even_sentences(), even_sentences(), flip)
}
