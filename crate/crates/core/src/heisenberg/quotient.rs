//! Quotients of the discrete Heisenberg group `⟨a, b⟩` by
//! `N = ⟨⟨a^α, [a,b]^n⟩⟩`, in coordinates `a^x b^y c^z`.
//!
//! Since `[a^α, b] = [a,b]^α` lies in `N`, the central coordinate is reduced
//! modulo `g = gcd(α, n)`, and `(α, n)` and `(α, g)` give the same group.
//! Multiplication is `(x, y, z)(x', y', z') = (x + x', y + y', z + z' + x'y)`,
//! which is the normal form with `c = b^-1 a^-1 b a`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupLaw;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QuotientHeisElement {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

/// The group `G(α, n)`. A modulus of 0 means the coordinate is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientHeis {
    pub alpha: i64,
    pub n_param: i64,
    /// `gcd(α, n)`.
    pub g: i64,
}

fn reduce(v: i64, modulus: i64) -> i64 {
    if modulus == 0 {
        v
    } else {
        v.rem_euclid(modulus)
    }
}

pub fn quotient_heis(alpha: i64, n_param: i64) -> Result<QuotientHeis> {
    if alpha < 0 || n_param < 0 {
        return Err(Error::InvalidArgument("α and n must be non-negative".into()));
    }
    Ok(QuotientHeis { alpha, n_param, g: alpha.gcd(&n_param) })
}

impl QuotientHeis {
    pub fn element(&self, x: i64, y: i64, z: i64) -> QuotientHeisElement {
        QuotientHeisElement { x: reduce(x, self.alpha), y, z: reduce(z, self.g) }
    }

    pub fn a(&self) -> QuotientHeisElement {
        self.element(1, 0, 0)
    }

    pub fn b(&self) -> QuotientHeisElement {
        self.element(0, 1, 0)
    }

    /// `[a, b]` computed from the law.
    pub fn commutator_ab(&self) -> QuotientHeisElement {
        self.commutator(&self.a(), &self.b())
    }

    /// Abelian exactly when `[a, b]` is trivial, which is decided by the law
    /// rather than by the gcd.
    pub fn is_abelian(&self) -> bool {
        self.commutator_ab() == self.identity()
    }

    /// The same group with `n` replaced by `gcd(α, n)`.
    pub fn canonical(&self) -> QuotientHeis {
        QuotientHeis { alpha: self.alpha, n_param: self.g, g: self.g }
    }
}

impl GroupLaw for QuotientHeis {
    type Elem = QuotientHeisElement;

    fn identity(&self) -> QuotientHeisElement {
        QuotientHeisElement { x: 0, y: 0, z: 0 }
    }

    fn mul(&self, p: &QuotientHeisElement, q: &QuotientHeisElement) -> QuotientHeisElement {
        self.element(p.x + q.x, p.y + q.y, p.z + q.z + q.x * p.y)
    }

    fn inv(&self, p: &QuotientHeisElement) -> QuotientHeisElement {
        // (x,y,z)(-x,-y,z') = (0,0,z + z' - x y)
        self.element(-p.x, -p.y, -p.z + p.x * p.y)
    }
}

/// Elements of finite order: `{(x, 0, z)} ≅ Z_α × Z_g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionDescription {
    pub alpha: i64,
    pub g: i64,
    pub order: i64,
    /// Invariant factors `[α, g]` of the product.
    pub factors: Vec<i64>,
    /// Computed from the law on the generators `(1,0,0)` and `(0,0,1)`.
    pub abelian: bool,
}

pub fn torsion_subgroup(group: &QuotientHeis) -> Result<TorsionDescription> {
    if group.alpha == 0 {
        return Err(Error::Unbounded);
    }
    let x = group.element(1, 0, 0);
    let z = group.element(0, 0, 1);
    Ok(TorsionDescription {
        alpha: group.alpha,
        g: group.g,
        order: group.alpha * group.g,
        factors: vec![group.alpha, group.g],
        abelian: group.mul(&x, &z) == group.mul(&z, &x),
    })
}

/// Order of an element if it divides `bound`, by repeated multiplication.
pub fn element_order_bounded(group: &QuotientHeis, e: &QuotientHeisElement, bound: u64) -> Option<u64> {
    let id = group.identity();
    let mut acc = e.clone();
    for k in 1..=bound {
        if acc == id {
            return Some(k);
        }
        acc = group.mul(&acc, e);
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub alpha: i64,
    pub n_param: i64,
    pub window: i64,
    pub pairs_checked: u64,
    /// Solutions `(x, z)` of `a^x = [a,b]^z` with `x ∉ αZ`.
    pub solutions_outside: Vec<(i64, i64)>,
    /// Solutions with `x ∈ αZ`.
    pub solutions_inside: u64,
    /// For every `x ∉ αZ` in the window, `x - αt ≠ 0` for all `t`, so
    /// `a^(x - αt)` is a nontrivial non-central power in the free class-2
    /// group and cannot equal a power of `[a,b]`.
    pub symbolic_ok: bool,
    pub bounded: bool,
}

/// Searches `x, z ∈ [-B, B]` for `(aN)^x = [aN, bN]^z`.
pub fn identity_obstruction_check(group: &QuotientHeis, window: i64) -> ObstructionReport {
    let a = group.a();
    let c = group.commutator_ab();
    let outside = |x: i64| if group.alpha == 0 { x != 0 } else { x % group.alpha != 0 };
    let mut report = ObstructionReport {
        alpha: group.alpha,
        n_param: group.n_param,
        window,
        pairs_checked: 0,
        solutions_outside: Vec::new(),
        solutions_inside: 0,
        symbolic_ok: true,
        bounded: true,
    };
    let c_powers: Vec<QuotientHeisElement> = (-window..=window).map(|z| group.pow(&c, z)).collect();
    for x in -window..=window {
        let lhs = group.pow(&a, x);
        if outside(x) && lhs.x == 0 {
            report.symbolic_ok = false;
        }
        for (i, rhs) in c_powers.iter().enumerate() {
            report.pairs_checked += 1;
            if lhs == *rhs {
                let z = i as i64 - window;
                if outside(x) {
                    report.solutions_outside.push((x, z));
                } else {
                    report.solutions_inside += 1;
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_iff_coprime() {
        for alpha in 0..=12 {
            for n in 0..=12 {
                let g = quotient_heis(alpha, n).unwrap();
                assert_eq!(g.is_abelian(), alpha.gcd(&n) == 1, "α = {alpha}, n = {n}");
            }
        }
    }

    #[test]
    fn law_is_associative_with_central_commutator() {
        for (alpha, n) in [(0, 0), (4, 2), (6, 4), (3, 0), (0, 5)] {
            let g = quotient_heis(alpha, n).unwrap();
            let xs: Vec<i64> = if alpha == 0 { (-2..=2).collect() } else { (0..alpha).collect() };
            let zs: Vec<i64> = if g.g == 0 { (-2..=2).collect() } else { (0..g.g).collect() };
            let mut elems = Vec::new();
            for &x in &xs {
                for y in -2..=2 {
                    for &z in &zs {
                        elems.push(g.element(x, y, z));
                    }
                }
            }
            let c = g.commutator_ab();
            for p in &elems {
                assert_eq!(g.mul(p, &c), g.mul(&c, p));
                assert_eq!(g.mul(p, &g.inv(p)), g.identity());
                for q in elems.iter().step_by(3) {
                    for r in elems.iter().step_by(5) {
                        assert_eq!(g.mul(&g.mul(p, q), r), g.mul(p, &g.mul(q, r)));
                    }
                }
            }
        }
    }

    #[test]
    fn discrete_heisenberg_matches_matrices() {
        // a = T(1,0,0), b = T(0,1,0) in 3x3 unitriangular integer matrices;
        // a^x b^y c^z with c = b^-1 a^-1 b a = T(0,0,-1)
        use crate::heisenberg::finite::{HeisElement, HeisLaw};
        let law = HeisLaw { n: 1, modulus: None };
        let ta = HeisElement::new(vec![1], vec![0], 0);
        let tb = HeisElement::new(vec![0], vec![1], 0);
        let tc = law.commutator(&tb, &ta);
        let g = quotient_heis(0, 0).unwrap();
        let to_matrix = |e: &QuotientHeisElement| {
            law.mul(&law.mul(&law.pow(&ta, e.x), &law.pow(&tb, e.y)), &law.pow(&tc, e.z))
        };
        let sample: Vec<QuotientHeisElement> =
            [(1, 2, -1), (-3, 1, 4), (0, -2, 2), (2, 0, 0)].iter().map(|&(x, y, z)| g.element(x, y, z)).collect();
        for p in &sample {
            for q in &sample {
                assert_eq!(to_matrix(&g.mul(p, q)), law.mul(&to_matrix(p), &to_matrix(q)));
            }
        }
    }

    #[test]
    fn torsion_examples() {
        let t = torsion_subgroup(&quotient_heis(4, 2).unwrap()).unwrap();
        assert_eq!((t.order, t.factors.clone(), t.abelian), (8, vec![4, 2], true));
        assert_eq!(torsion_subgroup(&quotient_heis(1, 7).unwrap()).unwrap().order, 1);
        assert_eq!(torsion_subgroup(&quotient_heis(2, 2).unwrap()).unwrap().order, 4);
        assert_eq!(torsion_subgroup(&quotient_heis(0, 3).unwrap()), Err(Error::Unbounded));
        // elements off y = 0 have infinite order, those on it finite order
        let g = quotient_heis(4, 2).unwrap();
        assert_eq!(element_order_bounded(&g, &g.element(3, 0, 1), 100), Some(4));
        assert_eq!(element_order_bounded(&g, &g.element(1, 1, 0), 100), None);
    }

    #[test]
    fn obstruction_examples() {
        let g = quotient_heis(4, 2).unwrap();
        let r = identity_obstruction_check(&g, 20);
        assert!(r.solutions_outside.is_empty());
        assert!(r.symbolic_ok);
        // x = 4 with even z, and x = 0 with z = 0
        assert!(r.solutions_inside > 0);
        assert_eq!(g.pow(&g.a(), 4), g.pow(&g.commutator_ab(), 2));
        assert_eq!(g.pow(&g.a(), 2) == g.pow(&g.commutator_ab(), 0), false);
    }
}
