//! The normal form `w = x_1^m w'` up to an automorphism of the free group,
//! with `w'` in the commutator subgroup.
//!
//! The automorphism is built from Nielsen moves chosen by running Euclid's
//! algorithm on the exponent-sum vector, and every move is logged so the
//! transformation can be replayed.

use serde::{Deserialize, Serialize};

use super::{Symbol, Syllable, Word};
use crate::error::Result;

/// An elementary automorphism of `F(x_1, ..., x_s)`, indices 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum NielsenMove {
    /// `x_target -> x_target x_by^power`. Changes the exponent sum of
    /// `x_by` by `power` times the exponent sum of `x_target`.
    MulRight { target: u8, by: u8, power: i32 },
    /// Exchanges `x_a` and `x_b`.
    Swap { a: u8, b: u8 },
    /// `x_var -> x_var^-1`.
    Invert { var: u8 },
}

impl NielsenMove {
    pub fn apply(&self, w: &Word) -> Word {
        let s = w.num_vars().max(self.max_var() + 1);
        let mut images: Vec<Word> = (0..s as u8).map(Word::var).collect();
        match *self {
            NielsenMove::MulRight { target, by, power } => {
                images[target as usize] = Word::var(target).concat(&Word::power(Symbol::Var(by), power));
            }
            NielsenMove::Swap { a, b } => images.swap(a as usize, b as usize),
            NielsenMove::Invert { var } => images[var as usize] = Word::power(Symbol::Var(var), -1),
        }
        w.substitute(&images)
    }

    fn max_var(&self) -> usize {
        match *self {
            NielsenMove::MulRight { target, by, .. } => target.max(by) as usize,
            NielsenMove::Swap { a, b } => a.max(b) as usize,
            NielsenMove::Invert { var } => var as usize,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormResult {
    pub m: u64,
    pub w_prime: Word,
    pub transform_log: Vec<NielsenMove>,
}

impl NormalFormResult {
    /// `x_1^m w'`.
    pub fn recombined(&self) -> Word {
        Word::power(Symbol::Var(0), self.m as i32).concat(&self.w_prime)
    }
}

/// Applies logged moves in order.
pub fn replay(w: &Word, log: &[NielsenMove]) -> Word {
    log.iter().fold(w.clone(), |acc, mv| mv.apply(&acc))
}

/// Computes `m = gcd` of the exponent sums (0 when all vanish) and an
/// automorphism `φ` with `φ(w) = x_1^m w'`, `w'` having zero exponent sums.
pub fn normal_form(w: &Word) -> Result<NormalFormResult> {
    let mut e = w.exponent_sums()?;
    let mut log = Vec::new();
    loop {
        let nonzero: Vec<usize> = (0..e.len()).filter(|&i| e[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let pivot = *nonzero.iter().min_by_key(|&&i| (e[i].abs(), i)).unwrap();
        for &i in &nonzero {
            if i == pivot {
                continue;
            }
            let q = e[i].div_euclid(e[pivot]);
            if q != 0 {
                // x_pivot -> x_pivot x_i^-q lowers e_i by q * e_pivot
                log.push(NielsenMove::MulRight { target: pivot as u8, by: i as u8, power: -q as i32 });
                e[i] -= q * e[pivot];
            }
        }
    }
    let lead = (0..e.len()).find(|&i| e[i] != 0);
    if let Some(i) = lead {
        if i != 0 {
            log.push(NielsenMove::Swap { a: 0, b: i as u8 });
            e.swap(0, i);
        }
        if e[0] < 0 {
            log.push(NielsenMove::Invert { var: 0 });
            e[0] = -e[0];
        }
    }
    let m = e.first().copied().unwrap_or(0) as u64;
    let image = replay(w, &log);
    let w_prime = Word::from_syllables(
        std::iter::once(Syllable { symbol: Symbol::Var(0), exp: -(m as i32) }).chain(image.syllables().iter().copied()),
    );
    Ok(NormalFormResult { m, w_prime, transform_log: log })
}
