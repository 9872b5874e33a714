//! Canonical enumeration of formulas: by node count, then by the bytes of
//! the canonical serialization.

use std::collections::HashMap;

use super::syntax::{serialize, PFormula, PTerm};

/// Memoizing generator of every term and formula of a given size under a
/// given binder depth.
#[derive(Default)]
pub struct Generator {
    terms: HashMap<(usize, usize), Vec<PTerm>>,
    formulas: HashMap<(usize, usize), Vec<PFormula>>,
}

impl Generator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn terms(&mut self, size: usize, depth: usize) -> Vec<PTerm> {
        if let Some(v) = self.terms.get(&(size, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.extend([PTerm::Zero, PTerm::One, PTerm::Free]);
            out.extend((0..depth).map(PTerm::Bound));
        } else if size >= 3 {
            for left in 1..size - 1 {
                let ls = self.terms(left, depth);
                let rs = self.terms(size - 1 - left, depth);
                for a in &ls {
                    for b in &rs {
                        out.push(PTerm::add(a.clone(), b.clone()));
                    }
                }
            }
        }
        self.terms.insert((size, depth), out.clone());
        out
    }

    /// All formulas (free `x` allowed) of exactly `size` nodes at binder
    /// `depth`, in generation order.
    pub fn formulas(&mut self, size: usize, depth: usize) -> Vec<PFormula> {
        if let Some(v) = self.formulas.get(&(size, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size >= 3 {
            for left in 1..size - 1 {
                let ls = self.terms(left, depth);
                let rs = self.terms(size - 1 - left, depth);
                for a in &ls {
                    for b in &rs {
                        out.push(PFormula::eq(a.clone(), b.clone()));
                    }
                }
            }
            for f in self.formulas(size - 1, depth) {
                out.push(PFormula::not(f));
            }
            for left in 3..size.saturating_sub(3) {
                let ls = self.formulas(left, depth);
                let rs = self.formulas(size - 1 - left, depth);
                for a in &ls {
                    for b in &rs {
                        out.push(PFormula::and(a.clone(), b.clone()));
                        out.push(PFormula::or(a.clone(), b.clone()));
                        out.push(PFormula::implies(a.clone(), b.clone()));
                    }
                }
            }
            for f in self.formulas(size - 1, depth + 1) {
                out.push(PFormula::exists(f.clone()));
                out.push(PFormula::forall(f));
            }
        }
        self.formulas.insert((size, depth), out.clone());
        out
    }
}

/// Every closed-scope formula with exactly `size` nodes, canonically ordered.
pub fn formulas_of_size(size: usize) -> Vec<PFormula> {
    let mut keyed: Vec<(String, PFormula)> = Generator::new()
        .formulas(size, 0)
        .into_iter()
        .map(|f| (serialize(&f), f))
        .collect();
    keyed.sort_unstable_by(|a, b| a.0.as_bytes().cmp(b.0.as_bytes()));
    keyed.into_iter().map(|(_, f)| f).collect()
}

/// The first `count` formulas in canonical order.
pub fn enumerate_formulas(count: usize) -> Vec<PFormula> {
    let mut out = Vec::with_capacity(count);
    let mut size = 0;
    while out.len() < count {
        let need = count - out.len();
        out.extend(formulas_of_size(size).into_iter().take(need));
        size += 1;
    }
    out
}

/// Number of formulas with exactly `size` nodes, without generating them.
pub fn count_of_size(size: usize) -> u128 {
    fn terms(s: usize, d: usize, memo: &mut HashMap<(usize, usize), u128>) -> u128 {
        if s == 1 {
            return 3 + d as u128;
        }
        if s < 3 {
            return 0;
        }
        if let Some(&c) = memo.get(&(s, d)) {
            return c;
        }
        let c = (1..s - 1).map(|l| terms(l, d, memo) * terms(s - 1 - l, d, memo)).sum();
        memo.insert((s, d), c);
        c
    }
    fn formulas(
        s: usize,
        d: usize,
        tm: &mut HashMap<(usize, usize), u128>,
        fm: &mut HashMap<(usize, usize), u128>,
    ) -> u128 {
        if s < 3 {
            return 0;
        }
        if let Some(&c) = fm.get(&(s, d)) {
            return c;
        }
        let mut c: u128 = (1..s - 1).map(|l| terms(l, d, tm) * terms(s - 1 - l, d, tm)).sum();
        c += formulas(s - 1, d, tm, fm);
        for l in 3..s.saturating_sub(3) {
            c += 3 * formulas(l, d, tm, fm) * formulas(s - 1 - l, d, tm, fm);
        }
        c += 2 * formulas(s - 1, d + 1, tm, fm);
        fm.insert((s, d), c);
        c
    }
    formulas(size, 0, &mut HashMap::new(), &mut HashMap::new())
}
