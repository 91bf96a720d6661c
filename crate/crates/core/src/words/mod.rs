//! Words in a free group, optionally with coefficient letters, and what can
//! be done with them over finite groups.
//!
//! Variables are stored 0-based (`Var(0)` prints as `x1`). Coefficients are
//! tags into a caller-supplied table of group elements.

mod enumerate;
mod normal_form;
mod parse;
mod verbal;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use enumerate::{canonical_key, enumerate_word_classes, reduced_words};
pub use normal_form::{normal_form, replay, NielsenMove, NormalFormResult};
pub use parse::parse_word;
pub use verbal::{
    algebraically_closed_probe, check_words, retraction_system, solve_equation, solve_system, verbal_image,
    verbal_image_sampled, verbally_closed_bounded, ClosednessReport, Counterexample, EquationSystem,
    ProbeReport, RetractionSystem, VerbalImage, DEFAULT_EVAL_BUDGET,
};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupLaw};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Var(u8),
    Coeff(u32),
}

/// `symbol^exp`, `exp != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub symbol: Symbol,
    pub exp: i32,
}

/// A freely reduced word: no zero exponents, no two adjacent syllables on
/// the same symbol.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn var(i: u8) -> Self {
        Self::power(Symbol::Var(i), 1)
    }

    pub fn coeff(tag: u32) -> Self {
        Self::power(Symbol::Coeff(tag), 1)
    }

    pub fn power(symbol: Symbol, exp: i32) -> Self {
        Self::from_syllables([Syllable { symbol, exp }])
    }

    /// Freely reduces the given syllables.
    pub fn from_syllables(syllables: impl IntoIterator<Item = Syllable>) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for s in syllables {
            if s.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.symbol == s.symbol => {
                    last.exp += s.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(s),
            }
        }
        Self { syllables: out }
    }

    /// Builds a coefficient-free word from letter codes `2 * var + inverted`.
    pub fn from_letters(letters: &[u8]) -> Self {
        Self::from_syllables(
            letters.iter().map(|&c| Syllable { symbol: Symbol::Var(c / 2), exp: if c % 2 == 0 { 1 } else { -1 } }),
        )
    }

    /// Letter codes `2 * var + inverted`, one per unit of exponent.
    pub fn letters(&self) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(self.len());
        for s in &self.syllables {
            let Symbol::Var(v) = s.symbol else { return Err(Error::HasCoefficients) };
            let code = 2 * v + u8::from(s.exp < 0);
            out.extend(std::iter::repeat(code).take(s.exp.unsigned_abs() as usize));
        }
        Ok(out)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Length as a reduced word (sum of absolute exponents).
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// One more than the largest variable index, i.e. the `s` in `F(x_1..x_s)`.
    pub fn num_vars(&self) -> usize {
        self.syllables
            .iter()
            .filter_map(|s| match s.symbol {
                Symbol::Var(v) => Some(v as usize + 1),
                Symbol::Coeff(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn num_coeffs(&self) -> usize {
        self.syllables
            .iter()
            .filter_map(|s| match s.symbol {
                Symbol::Coeff(c) => Some(c as usize + 1),
                Symbol::Var(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn has_coefficients(&self) -> bool {
        self.syllables.iter().any(|s| matches!(s.symbol, Symbol::Coeff(_)))
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_syllables(self.syllables.iter().chain(&other.syllables).copied())
    }

    pub fn inverse(&self) -> Word {
        Word::from_syllables(self.syllables.iter().rev().map(|s| Syllable { symbol: s.symbol, exp: -s.exp }))
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `[u, v] = u^-1 v^-1 u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    /// Per-variable exponent totals, of length [`Word::num_vars`].
    pub fn exponent_sums(&self) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.num_vars()];
        for s in &self.syllables {
            match s.symbol {
                Symbol::Var(v) => out[v as usize] += s.exp as i64,
                Symbol::Coeff(_) => return Err(Error::HasCoefficients),
            }
        }
        Ok(out)
    }

    /// Replaces each variable `x_i` by `images[i]` (variables beyond the
    /// table are kept).
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for s in &self.syllables {
            match s.symbol {
                Symbol::Var(v) if (v as usize) < images.len() => {
                    out.extend(images[v as usize].pow(s.exp).syllables);
                }
                _ => out.push(*s),
            }
        }
        Word::from_syllables(out)
    }

    /// Evaluates under any group law. Missing variables or coefficients are
    /// errors.
    pub fn evaluate_in<L: GroupLaw>(&self, law: &L, assignment: &[L::Elem], coeffs: &[L::Elem]) -> Result<L::Elem> {
        let mut acc = law.identity();
        for s in &self.syllables {
            let base = match s.symbol {
                Symbol::Var(v) => assignment.get(v as usize).ok_or(Error::MissingAssignment(v as usize + 1))?,
                Symbol::Coeff(c) => coeffs.get(c as usize).ok_or(Error::MissingCoefficient(c))?,
            };
            acc = law.mul(&acc, &law.pow(base, s.exp as i64));
        }
        Ok(acc)
    }

    pub fn evaluate(&self, g: &FiniteGroup, assignment: &[Elem], coeffs: &[Elem]) -> Result<Elem> {
        self.check_bounds(assignment.len(), coeffs.len())?;
        Ok(self.eval_unchecked(g, assignment, coeffs))
    }

    /// Checks that every variable and coefficient has a value.
    fn check_bounds(&self, num_vars: usize, num_coeffs: usize) -> Result<()> {
        if self.num_vars() > num_vars {
            return Err(Error::MissingAssignment(num_vars + 1));
        }
        match self.syllables.iter().find_map(|s| match s.symbol {
            Symbol::Coeff(c) if c as usize >= num_coeffs => Some(c),
            _ => None,
        }) {
            Some(c) => Err(Error::MissingCoefficient(c)),
            None => Ok(()),
        }
    }

    /// Fast path for table groups; the caller has checked bounds.
    #[inline]
    pub(crate) fn eval_unchecked(&self, g: &FiniteGroup, assignment: &[Elem], coeffs: &[Elem]) -> Elem {
        let mut acc = g.identity();
        for s in &self.syllables {
            let base = match s.symbol {
                Symbol::Var(v) => assignment[v as usize],
                Symbol::Coeff(c) => coeffs[c as usize],
            };
            let b = if s.exp < 0 { g.inv(base) } else { base };
            for _ in 0..s.exp.unsigned_abs() {
                acc = g.mul(acc, b);
            }
        }
        acc
    }

    /// Cyclic reduction: strips a conjugating prefix/suffix pair.
    pub fn cyclically_reduced(&self) -> Word {
        let mut syl = self.syllables.clone();
        loop {
            if syl.len() < 2 {
                return Word { syllables: syl };
            }
            let (first, last) = (syl[0], syl[syl.len() - 1]);
            if first.symbol != last.symbol {
                return Word { syllables: syl };
            }
            // rotate the last syllable to the front, merging
            syl.pop();
            syl[0].exp += last.exp;
            if syl[0].exp == 0 {
                syl.remove(0);
            }
            syl = Word::from_syllables(syl).syllables;
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match s.symbol {
                Symbol::Var(v) => write!(f, "x{}", v + 1)?,
                Symbol::Coeff(c) => write!(f, "#c{c}")?,
            }
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Coefficient names are numbered in order of first appearance.
    fn from_str(s: &str) -> Result<Word> {
        parse_word(s).map(|(w, _)| w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::q8;
    use crate::group::{abelian, cyclic};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn free_reduction() {
        assert_eq!(w("x1 x2 x2^-1 x1^-1"), Word::empty());
        assert_eq!(w("x1 x1 x1^-3").to_string(), "x1^-1");
        assert_eq!(w("x1^2 x2^4").len(), 6);
        assert_eq!(w("[x1,x2]").to_string(), "x1^-1 x2^-1 x1 x2");
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w("x1 x2 x1^-1").exponent_sums().unwrap(), vec![0, 1]);
        assert_eq!(w("[x1,x2]").exponent_sums().unwrap(), vec![0, 0]);
        assert_eq!(w("x1^2 x2^4").exponent_sums().unwrap(), vec![2, 4]);
        assert_eq!(w("x1 #a").exponent_sums(), Err(Error::HasCoefficients));
    }

    #[test]
    fn evaluation_examples() {
        let z6 = cyclic(6).unwrap();
        assert_eq!(w("x1 x2").evaluate(&z6, &[2, 5], &[]).unwrap(), 1);
        let g = abelian(&[2, 4]).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(w("[x1,x2]").evaluate(&g, &[a, b], &[]).unwrap(), g.identity());
            }
        }
        let q = q8();
        let i = q.element_by_name("i").unwrap();
        assert_eq!(q.name(w("x1^2").evaluate(&q, &[i], &[]).unwrap()), "-1");
        assert_eq!(w("x2").evaluate(&q, &[i], &[]), Err(Error::MissingAssignment(2)));
        assert_eq!(w("#a x1").evaluate(&q, &[i], &[]), Err(Error::MissingCoefficient(0)));
        assert_eq!(Word::empty().evaluate(&q, &[], &[]).unwrap(), q.identity());
    }

    #[test]
    fn table_and_generic_evaluation_agree() {
        let q = q8();
        let word = w("x1^3 #a x2^-2 [x1,#a]");
        for a in q.elements() {
            for b in q.elements() {
                assert_eq!(
                    word.evaluate(&q, &[a, b], &[4]).unwrap(),
                    word.evaluate_in(&q, &[a, b], &[4]).unwrap()
                );
            }
        }
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(w("x1 x2 x1^-1").cyclically_reduced(), w("x2"));
        assert_eq!(w("x1^2 x2 x1^-1").cyclically_reduced(), w("x1 x2"));
        assert_eq!(w("x2 x1 x2 x1^-1 x2^-1").cyclically_reduced(), w("x2"));
    }

    #[test]
    fn substitution() {
        let u = w("x1 x2");
        assert_eq!(w("x1^2").substitute(&[u.clone()]), w("x1 x2 x1 x2"));
        assert_eq!(w("x1^-1 x2").substitute(&[u, Word::var(0)]), w("x2^-1"));
    }
}
