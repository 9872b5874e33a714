//! Cooper-style quantifier elimination for linear arithmetic, used as the
//! decision procedure for sentences over the naturals.
//!
//! Formulas are translated into quantifier-free integer constraints over
//! variables numbered by binder level. Each natural-number quantifier is
//! relativized to `v ≥ 0` and eliminated innermost first. Divisibility atoms
//! only ever appear here.

use std::collections::BTreeMap;

use num_integer::Integer;
use thiserror::Error;

use super::syntax::{PFormula, PTerm};

type Int = i128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("not a sentence: free variable `x` occurs")]
    NotASentence,
    #[error("quantifier elimination exceeded the node cap of {0}")]
    BudgetExceeded(usize),
}

/// `Σ coeffs[v]·v + constant`, with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Lin {
    coeffs: BTreeMap<usize, Int>,
    constant: Int,
}

impl Lin {
    fn constant(c: Int) -> Lin {
        Lin {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    fn var(v: usize) -> Lin {
        Lin {
            coeffs: BTreeMap::from([(v, 1)]),
            constant: 0,
        }
    }

    fn coeff(&self, v: usize) -> Int {
        self.coeffs.get(&v).copied().unwrap_or(0)
    }

    fn is_ground(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Lin) -> Lin {
        let mut out = self.clone();
        for (&v, &c) in &other.coeffs {
            let e = out.coeffs.entry(v).or_insert(0);
            *e += c;
            if *e == 0 {
                out.coeffs.remove(&v);
            }
        }
        out.constant += other.constant;
        out
    }

    fn scale(&self, k: Int) -> Lin {
        if k == 0 {
            return Lin::constant(0);
        }
        Lin {
            coeffs: self.coeffs.iter().map(|(&v, &c)| (v, c * k)).collect(),
            constant: self.constant * k,
        }
    }

    fn neg(&self) -> Lin {
        self.scale(-1)
    }

    fn plus_const(&self, c: Int) -> Lin {
        let mut out = self.clone();
        out.constant += c;
        out
    }

    fn without(&self, v: usize) -> Lin {
        let mut out = self.clone();
        out.coeffs.remove(&v);
        out
    }

    /// Replace `v` by `s`.
    fn subst(&self, v: usize, s: &Lin) -> Lin {
        let a = self.coeff(v);
        if a == 0 {
            return self.clone();
        }
        self.without(v).add(&s.scale(a))
    }

    fn coeff_gcd(&self) -> Int {
        self.coeffs.values().fold(0, |g, c| g.gcd(c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Atom {
    /// `t > 0`
    Pos(Lin),
    /// `t = 0`
    Zero(Lin),
    /// `t ≠ 0`
    NonZero(Lin),
    /// `d | t`
    Dvd(Int, Lin),
    /// `¬(d | t)`
    NDvd(Int, Lin),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Qf {
    True,
    False,
    Atom(Atom),
    And(Vec<Qf>),
    Or(Vec<Qf>),
}

impl Qf {
    fn from_bool(b: bool) -> Qf {
        if b {
            Qf::True
        } else {
            Qf::False
        }
    }

    fn pos(t: Lin) -> Qf {
        if t.is_ground() {
            return Qf::from_bool(t.constant > 0);
        }
        let g = t.coeff_gcd();
        if g > 1 {
            // Σ g·a·v + c > 0  iff  Σ a·v + ⌈c/g⌉ > 0
            let Lin { coeffs, constant } = t;
            return Qf::Atom(Atom::Pos(Lin {
                coeffs: coeffs.into_iter().map(|(v, c)| (v, c / g)).collect(),
                constant: Integer::div_ceil(&constant, &g),
            }));
        }
        Qf::Atom(Atom::Pos(t))
    }

    fn zero(t: Lin) -> Qf {
        match Qf::normalize_eq(t) {
            Ok(t) => Qf::Atom(Atom::Zero(t)),
            Err(b) => Qf::from_bool(b),
        }
    }

    fn nonzero(t: Lin) -> Qf {
        match Qf::normalize_eq(t) {
            Ok(t) => Qf::Atom(Atom::NonZero(t)),
            Err(b) => Qf::from_bool(!b),
        }
    }

    /// Canonical form of `t = 0`, or `Err(truth)` when it is decided.
    fn normalize_eq(t: Lin) -> Result<Lin, bool> {
        if t.is_ground() {
            return Err(t.constant == 0);
        }
        let g = t.coeff_gcd();
        if t.constant % g != 0 {
            return Err(false);
        }
        let mut t = Lin {
            coeffs: t.coeffs.into_iter().map(|(v, c)| (v, c / g)).collect(),
            constant: t.constant / g,
        };
        if t.coeffs.values().next().is_some_and(|&c| c < 0) {
            t = t.neg();
        }
        Ok(t)
    }

    fn dvd(d: Int, t: Lin, negated: bool) -> Qf {
        let d = d.abs();
        let t = Lin {
            coeffs: t
                .coeffs
                .into_iter()
                .map(|(v, c)| (v, c.mod_floor(&d)))
                .filter(|&(_, c)| c != 0)
                .collect(),
            constant: t.constant.mod_floor(&d),
        };
        if d == 1 || t.is_ground() {
            let holds = t.constant == 0;
            return Qf::from_bool(holds != negated);
        }
        Qf::Atom(if negated { Atom::NDvd(d, t) } else { Atom::Dvd(d, t) })
    }

    fn atom(a: Atom) -> Qf {
        match a {
            Atom::Pos(t) => Qf::pos(t),
            Atom::Zero(t) => Qf::zero(t),
            Atom::NonZero(t) => Qf::nonzero(t),
            Atom::Dvd(d, t) => Qf::dvd(d, t, false),
            Atom::NDvd(d, t) => Qf::dvd(d, t, true),
        }
    }

    fn and(parts: Vec<Qf>) -> Qf {
        let mut out = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                Qf::True => {}
                Qf::False => return Qf::False,
                Qf::And(inner) => out.extend(inner),
                p => out.push(p),
            }
        }
        out.sort();
        out.dedup();
        match out.len() {
            0 => Qf::True,
            1 => out.pop().unwrap(),
            _ => Qf::And(out),
        }
    }

    fn or(parts: Vec<Qf>) -> Qf {
        let mut out = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                Qf::False => {}
                Qf::True => return Qf::True,
                Qf::Or(inner) => out.extend(inner),
                p => out.push(p),
            }
        }
        out.sort();
        out.dedup();
        match out.len() {
            0 => Qf::False,
            1 => out.pop().unwrap(),
            _ => Qf::Or(out),
        }
    }

    fn negate(&self) -> Qf {
        match self {
            Qf::True => Qf::False,
            Qf::False => Qf::True,
            Qf::Atom(a) => Qf::atom(match a {
                // ¬(t > 0)  iff  -t + 1 > 0 over the integers
                Atom::Pos(t) => Atom::Pos(t.neg().plus_const(1)),
                Atom::Zero(t) => Atom::NonZero(t.clone()),
                Atom::NonZero(t) => Atom::Zero(t.clone()),
                Atom::Dvd(d, t) => Atom::NDvd(*d, t.clone()),
                Atom::NDvd(d, t) => Atom::Dvd(*d, t.clone()),
            }),
            Qf::And(ps) => Qf::or(ps.iter().map(Qf::negate).collect()),
            Qf::Or(ps) => Qf::and(ps.iter().map(Qf::negate).collect()),
        }
    }

    fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Qf) -> Qf {
        match self {
            Qf::True | Qf::False => self.clone(),
            Qf::Atom(a) => f(a),
            Qf::And(ps) => Qf::and(ps.iter().map(|p| p.map_atoms(f)).collect()),
            Qf::Or(ps) => Qf::or(ps.iter().map(|p| p.map_atoms(f)).collect()),
        }
    }

    fn for_each_atom(&self, f: &mut impl FnMut(&Atom)) {
        match self {
            Qf::True | Qf::False => {}
            Qf::Atom(a) => f(a),
            Qf::And(ps) | Qf::Or(ps) => ps.iter().for_each(|p| p.for_each_atom(f)),
        }
    }

    fn subst(&self, v: usize, s: &Lin) -> Qf {
        self.map_atoms(&mut |a| Qf::atom(a.map_lin(|t| t.subst(v, s))))
    }

    fn node_count(&self) -> usize {
        match self {
            Qf::True | Qf::False | Qf::Atom(_) => 1,
            Qf::And(ps) | Qf::Or(ps) => 1 + ps.iter().map(Qf::node_count).sum::<usize>(),
        }
    }

    fn eval_ground(&self) -> Option<bool> {
        match self {
            Qf::True => Some(true),
            Qf::False => Some(false),
            _ => None,
        }
    }
}

impl Atom {
    fn lin(&self) -> &Lin {
        match self {
            Atom::Pos(t) | Atom::Zero(t) | Atom::NonZero(t) | Atom::Dvd(_, t) | Atom::NDvd(_, t) => t,
        }
    }

    fn map_lin(&self, f: impl FnOnce(&Lin) -> Lin) -> Atom {
        match self {
            Atom::Pos(t) => Atom::Pos(f(t)),
            Atom::Zero(t) => Atom::Zero(f(t)),
            Atom::NonZero(t) => Atom::NonZero(f(t)),
            Atom::Dvd(d, t) => Atom::Dvd(*d, f(t)),
            Atom::NDvd(d, t) => Atom::NDvd(*d, f(t)),
        }
    }
}

/// `∃v. φ` over the integers, for quantifier-free `φ`.
fn eliminate_exists(v: usize, phi: &Qf) -> Qf {
    let mut l: Int = 1;
    phi.for_each_atom(&mut |a| {
        let c = a.lin().coeff(v);
        if c != 0 {
            l = l.lcm(&c.abs());
        }
    });
    let mentions = {
        let mut any = false;
        phi.for_each_atom(&mut |a| any |= a.lin().coeff(v) != 0);
        any
    };
    if !mentions {
        return phi.clone();
    }

    // Scale every atom so that v has coefficient ±1, standing for l·v.
    let unit = phi.map_atoms(&mut |a| {
        let c = a.lin().coeff(v);
        if c == 0 {
            return Qf::Atom(a.clone());
        }
        let m = l / c.abs();
        let mut s = a.lin().scale(m);
        s.coeffs.insert(v, c.signum());
        if c < 0 && !matches!(a, Atom::Pos(_)) {
            s = s.neg();
        }
        Qf::Atom(match a {
            Atom::Pos(_) => Atom::Pos(s),
            Atom::Zero(_) => Atom::Zero(s),
            Atom::NonZero(_) => Atom::NonZero(s),
            Atom::Dvd(d, _) => Atom::Dvd(d * m, s),
            Atom::NDvd(d, _) => Atom::NDvd(d * m, s),
        })
    });
    let unit = if l > 1 {
        Qf::and(vec![unit, Qf::Atom(Atom::Dvd(l, Lin::var(v)))])
    } else {
        unit
    };

    let mut delta: Int = 1;
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    unit.for_each_atom(&mut |a| {
        let c = a.lin().coeff(v);
        if c == 0 {
            return;
        }
        let rest = a.lin().without(v);
        match a {
            Atom::Dvd(d, _) | Atom::NDvd(d, _) => delta = delta.lcm(d),
            Atom::Pos(_) if c > 0 => lower.push(rest.neg()),
            Atom::Pos(_) => upper.push(rest),
            Atom::Zero(_) => {
                lower.push(rest.neg().plus_const(-1));
                upper.push(rest.neg().plus_const(1));
            }
            Atom::NonZero(_) => {
                lower.push(rest.neg());
                upper.push(rest.neg());
            }
        }
    });
    lower.sort();
    lower.dedup();
    upper.sort();
    upper.dedup();

    let from_below = lower.len() <= upper.len();
    let points = if from_below { lower } else { upper };
    let infinite = unit.map_atoms(&mut |a| {
        let c = a.lin().coeff(v);
        if c == 0 {
            return Qf::Atom(a.clone());
        }
        match a {
            Atom::Pos(_) => Qf::from_bool((c > 0) != from_below),
            Atom::Zero(_) => Qf::False,
            Atom::NonZero(_) => Qf::True,
            _ => Qf::Atom(a.clone()),
        }
    });

    let sign: Int = if from_below { 1 } else { -1 };
    let mut disjuncts = Vec::new();
    for j in 1..=delta {
        let d = infinite.subst(v, &Lin::constant(sign * j));
        if d == Qf::True {
            return Qf::True;
        }
        disjuncts.push(d);
        for p in &points {
            let d = unit.subst(v, &p.plus_const(sign * j));
            if d == Qf::True {
                return Qf::True;
            }
            disjuncts.push(d);
        }
    }
    Qf::or(disjuncts)
}

fn term_lin(t: &PTerm, depth: usize) -> Result<Lin, DecideError> {
    Ok(match t {
        PTerm::Zero => Lin::constant(0),
        PTerm::One => Lin::constant(1),
        PTerm::Num(n) => Lin::constant(*n as Int),
        PTerm::Free => return Err(DecideError::NotASentence),
        PTerm::Bound(i) => Lin::var(depth - 1 - i),
        PTerm::Add(a, b) => term_lin(a, depth)?.add(&term_lin(b, depth)?),
    })
}

struct Eliminator {
    cap: Option<usize>,
}

impl Eliminator {
    fn check(&self, q: Qf) -> Result<Qf, DecideError> {
        match self.cap {
            Some(cap) if q.node_count() > cap => Err(DecideError::BudgetExceeded(cap)),
            _ => Ok(q),
        }
    }

    fn run(&self, f: &PFormula, depth: usize) -> Result<Qf, DecideError> {
        let q = match f {
            PFormula::Eq(a, b) => Qf::zero(term_lin(a, depth)?.add(&term_lin(b, depth)?.neg())),
            PFormula::Not(g) => self.run(g, depth)?.negate(),
            PFormula::And(a, b) => Qf::and(vec![self.run(a, depth)?, self.run(b, depth)?]),
            PFormula::Or(a, b) => Qf::or(vec![self.run(a, depth)?, self.run(b, depth)?]),
            PFormula::Implies(a, b) => Qf::or(vec![self.run(a, depth)?.negate(), self.run(b, depth)?]),
            PFormula::Exists(g) => {
                let body = self.run(g, depth + 1)?;
                let nonneg = Qf::pos(Lin::var(depth).plus_const(1));
                eliminate_exists(depth, &Qf::and(vec![nonneg, body]))
            }
            PFormula::Forall(g) => {
                let body = self.run(g, depth + 1)?.negate();
                let nonneg = Qf::pos(Lin::var(depth).plus_const(1));
                eliminate_exists(depth, &Qf::and(vec![nonneg, body])).negate()
            }
        };
        self.check(q)
    }
}

/// Truth of a sentence over ℕ.
pub fn decide(sentence: &PFormula) -> Result<bool, DecideError> {
    decide_with_cap(sentence, None)
}

/// Like [`decide`], failing with `BudgetExceeded` when any intermediate
/// quantifier-free formula grows past `cap` nodes.
pub fn decide_with_cap(sentence: &PFormula, cap: Option<usize>) -> Result<bool, DecideError> {
    if sentence.has_free() {
        return Err(DecideError::NotASentence);
    }
    let q = Eliminator { cap }.run(sentence, 0)?;
    Ok(q.eval_ground().expect("closed formula reduces to a constant"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presburger::syntax::parse;

    fn d(s: &str) -> bool {
        decide(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn halving() {
        assert!(d("E y. y+y = 1+1"));
        assert!(!d("E y. y+y = 1"));
        assert!(d("E y. y+y = 6"));
        assert!(!d("E y. y+y = 7"));
    }

    #[test]
    fn parity_cover() {
        assert!(d("A z. E y. (y+y = z) | (y+y+1 = z)"));
        assert!(!d("A z. E y. z = y+y+y"));
        assert!(!d("A z. E y. z = y+y"));
    }

    #[test]
    fn naturals_not_integers() {
        // no natural below zero
        assert!(!d("E y. y+1 = 0"));
        assert!(d("A y. ~(y+1 = 0)"));
        assert!(d("A y. E z. z = y+1"));
        assert!(!d("A y. E z. y = z+1"));
        assert!(d("A y. (y = 0) | (E z. y = z+1)"));
    }

    #[test]
    fn order_sugar_and_divisibility_chains() {
        // every n ≥ 2 is a sum of twos and threes
        assert!(d("A y. (E w. y = w+2) -> E u. E v. y = u+u+v+v+v"));
        assert!(!d("A y. E u. E v. y = u+u+v+v+v"));
        assert!(d("E y. E z. (y+y+y = z+z) & ~(y = 0)"));
    }

    #[test]
    fn node_cap() {
        let f = parse("A y. A z. E u. (u+u = y+z) | (u+u+1 = y+z)").unwrap();
        assert_eq!(decide_with_cap(&f, Some(1)), Err(DecideError::BudgetExceeded(1)));
        assert_eq!(decide_with_cap(&f, None), Ok(true));
    }

    #[test]
    fn rejects_proper_formula() {
        assert_eq!(decide(&parse("x = 0").unwrap()), Err(DecideError::NotASentence));
    }
}
