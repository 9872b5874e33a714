//! The even/odd naming ledger.
//!
//! Formulas are visited in canonical enumeration order. A true sentence
//! receives the smallest unused even number, anything else the smallest
//! unused odd number. The ledger only grows; assigned pairs never change.

use std::collections::HashMap;

use super::enumerate::formulas_of_size;
use super::qe::decide;
use super::syntax::PFormula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub index: usize,
    pub formula: PFormula,
    pub name: u64,
}

impl Assignment {
    pub fn parity(&self) -> Parity {
        Parity::of(self.name)
    }
}

#[derive(Debug, Default)]
pub struct NamingLedger {
    size: usize,
    batch: Vec<PFormula>,
    pos: usize,
    forward: HashMap<PFormula, u64>,
    evens: Vec<PFormula>,
    odds: Vec<PFormula>,
    /// Name given at each enumeration index.
    order: Vec<u64>,
}

impl NamingLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of formulas assigned so far.
    pub fn cursor(&self) -> usize {
        self.order.len()
    }

    pub fn next_even(&self) -> u64 {
        2 * self.evens.len() as u64
    }

    pub fn next_odd(&self) -> u64 {
        2 * self.odds.len() as u64 + 1
    }

    /// Size of the formulas currently being assigned.
    pub fn current_size(&self) -> usize {
        self.size
    }

    pub fn name_of(&self, f: &PFormula) -> Option<u64> {
        self.forward.get(f).copied()
    }

    pub fn formula_of(&self, n: u64) -> Option<&PFormula> {
        let k = (n / 2) as usize;
        if n.is_multiple_of(2) {
            self.evens.get(k)
        } else {
            self.odds.get(k)
        }
    }

    pub fn name_at(&self, index: usize) -> Option<u64> {
        self.order.get(index).copied()
    }

    pub fn assignment(&self, index: usize) -> Option<Assignment> {
        let name = self.name_at(index)?;
        Some(Assignment {
            index,
            formula: self.formula_of(name)?.clone(),
            name,
        })
    }

    /// Assigns the next formula in enumeration order.
    pub fn advance(&mut self) -> Assignment {
        while self.pos == self.batch.len() {
            self.size += 1;
            self.batch = formulas_of_size(self.size);
            self.pos = 0;
        }
        let f = self.batch[self.pos].clone();
        self.pos += 1;
        let provable = !f.has_free() && decide(&f).expect("enumerated sentences are closed");
        let name = if provable {
            let n = self.next_even();
            self.evens.push(f.clone());
            n
        } else {
            let n = self.next_odd();
            self.odds.push(f.clone());
            n
        };
        self.forward.insert(f.clone(), name);
        self.order.push(name);
        Assignment {
            index: self.order.len() - 1,
            formula: f,
            name,
        }
    }

    /// Advances until `cursor() >= count`.
    pub fn fill_to(&mut self, count: usize) {
        while self.cursor() < count {
            self.advance();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presburger::syntax::serialize;

    #[test]
    fn smallest_unused_even_and_odd() {
        let mut l = NamingLedger::new();
        let a0 = l.advance();
        assert_eq!(serialize(&a0.formula), "0 = 0");
        assert_eq!(a0.name, 0);
        let a1 = l.advance();
        assert_eq!(serialize(&a1.formula), "0 = 1");
        assert_eq!(a1.name, 1);
        l.fill_to(40);
        let evens: Vec<u64> = (0..40).filter_map(|i| l.name_at(i)).filter(|n| n % 2 == 0).collect();
        let odds: Vec<u64> = (0..40).filter_map(|i| l.name_at(i)).filter(|n| n % 2 == 1).collect();
        assert!(evens.iter().enumerate().all(|(k, &n)| n == 2 * k as u64));
        assert!(odds.iter().enumerate().all(|(k, &n)| n == 2 * k as u64 + 1));
    }

    #[test]
    fn forward_backward_inverse() {
        let mut l = NamingLedger::new();
        l.fill_to(200);
        for i in 0..200 {
            let a = l.assignment(i).unwrap();
            assert_eq!(l.name_of(&a.formula), Some(a.name));
            assert_eq!(l.formula_of(a.name), Some(&a.formula));
        }
    }
}
