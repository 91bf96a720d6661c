//! Verbal images of coefficient-free words in `H_n(F_q)`.
//!
//! After a free-group automorphism a word reads `x_1^m w'` with `w'` of zero
//! exponent sums. On `H_n(F_q)` the word map sends `T(a_i, b_i, c_i)` to
//! `T(m a_1, m b_1, m c_1 + f(a; b))` with `f` linear in each `a_i` and each
//! `b_i`. So the image is everything when `q ∤ m`, and otherwise the
//! center or trivial according to whether `f` vanishes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::finite::{heis_group, heis_index, HeisElement, HeisLaw};
use crate::error::{Error, Result};
use crate::group::subgroup::commutator_subgroup;
use crate::group::{Elem, GroupLaw};
use crate::words::{normal_form, verbal_image, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageClass {
    Trivial,
    CommutatorSubgroup,
    WholeGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub class: ImageClass,
    pub m: u64,
    /// `f` vanishes identically; always `false` when `q ∤ m`.
    pub f_is_zero: bool,
}

fn unit(n: usize, k: usize) -> Vec<i64> {
    (0..n).map(|i| i64::from(i == k)).collect()
}

/// Classifies the image of `w` on `H_n(F_q)`.
pub fn verbal_image_classify(w: &Word, n: usize, q: u64) -> Result<Classification> {
    if w.has_coefficients() {
        return Err(Error::HasCoefficients);
    }
    if n == 0 || !crate::util::is_prime(q) {
        return Err(Error::InvalidArgument(format!("need n >= 1 and prime q, got n = {n}, q = {q}")));
    }
    let nf = normal_form(w)?;
    let v = nf.recombined();
    let s = v.num_vars().max(1);
    let law = HeisLaw { n, modulus: Some(q as i64) };
    // f is determined by its values with one a-coordinate and one
    // b-coordinate set to a unit vector
    let mut f_is_zero = nf.m % q == 0;
    'outer: for i in 0..s {
        for j in 0..s {
            for k in 0..n {
                for l in 0..n {
                    if !f_is_zero {
                        break 'outer;
                    }
                    let mut xs: Vec<HeisElement> = vec![law.identity(); s];
                    xs[i].a = unit(n, k);
                    xs[j].b = unit(n, l);
                    f_is_zero = v.evaluate_in(&law, &xs, &[])?.c == 0;
                }
            }
        }
    }
    let class = if nf.m % q != 0 {
        ImageClass::WholeGroup
    } else if f_is_zero {
        ImageClass::Trivial
    } else {
        ImageClass::CommutatorSubgroup
    };
    Ok(Classification { class, m: nf.m, f_is_zero })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyCheck {
    pub classification: Classification,
    /// The exhaustive image is one of `1`, `G'`, `G`, and which.
    pub exhaustive: Option<ImageClass>,
    pub image_order: usize,
    pub agrees: bool,
}

/// Compares [`verbal_image_classify`] with the exhaustive verbal image on
/// the table of `H_n(F_q)`.
pub fn classify_cross_check(w: &Word, n: usize, q: u64, budget: u64) -> Result<ClassifyCheck> {
    let classification = verbal_image_classify(w, n, q)?;
    let g = heis_group(n, q)?;
    let image = verbal_image(&g, w, budget)?;
    let set: BTreeSet<Elem> = image.elements.iter().copied().collect();
    let derived: BTreeSet<Elem> = commutator_subgroup(&g).members().iter().copied().collect();
    let exhaustive = if set.len() == 1 && set.contains(&g.identity()) {
        Some(ImageClass::Trivial)
    } else if set == derived {
        Some(ImageClass::CommutatorSubgroup)
    } else if set.len() == g.order() {
        Some(ImageClass::WholeGroup)
    } else {
        None
    };
    Ok(ClassifyCheck {
        agrees: exhaustive == Some(classification.class),
        classification,
        exhaustive,
        image_order: set.len(),
    })
}

/// Table index of `T(e_k, 0, 0)` (`b_side = false`) or `T(0, e_k, 0)`.
pub fn basis_element(n: usize, q: u64, k: usize, b_side: bool) -> Elem {
    let zero = vec![0; n];
    let x = if b_side {
        HeisElement::new(zero, unit(n, k), 0)
    } else {
        HeisElement::new(unit(n, k), zero, 0)
    };
    heis_index(&x, q)
}
