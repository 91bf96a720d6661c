//! Finite abelian groups: primary decomposition, the strong-retract
//! criterion and the embedding that witnesses its failure.
//!
//! A finite group of bounded period is divisible only when trivial, so the
//! divisibility case of the criterion has no finite content and is not
//! modelled here.

use std::collections::{BTreeMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::hom::Homomorphism;
use crate::group::subgroup::{closure, intersection, Subgroup};
use crate::group::{abelian, cyclic, mixed_radix_index, Elem, FiniteGroup};
use crate::util::{factorize, prime_power};

/// `n` copies of `Z_{p^k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Summand {
    pub p: u64,
    pub k: u32,
    pub n: u32,
}

impl Summand {
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.k)
    }
}

/// Primary decomposition, summands sorted by `(p, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimaryDecomposition {
    pub summands: Vec<Summand>,
}

impl PrimaryDecomposition {
    /// Groups equal prime powers; `moduli` may be in any order but each must
    /// be a prime power greater than one.
    pub fn from_moduli(moduli: &[u64]) -> Result<Self> {
        let mut counts: BTreeMap<(u64, u32), u32> = BTreeMap::new();
        for &m in moduli {
            if m == 1 {
                continue;
            }
            let (p, k) = prime_power(m).ok_or_else(|| Error::InvalidArgument(format!("{m} is not a prime power")))?;
            *counts.entry((p, k)).or_default() += 1;
        }
        Ok(Self { summands: counts.into_iter().map(|((p, k), n)| Summand { p, k, n }).collect() })
    }

    /// One modulus per cyclic summand, in summand order.
    pub fn moduli(&self) -> Vec<u64> {
        self.summands.iter().flat_map(|s| std::iter::repeat(s.modulus()).take(s.n as usize)).collect()
    }

    pub fn order(&self) -> u64 {
        self.moduli().iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.moduli().into_iter().fold(1, num_integer::lcm)
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.summands.iter().map(|s| s.p).collect();
        ps.dedup();
        ps
    }

    /// Number of elements `x` with `x^q = 1`, for every prime power `q`
    /// dividing the exponent.
    pub fn divisor_counts(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for p in self.primes() {
            let max_k = self.summands.iter().filter(|s| s.p == p).map(|s| s.k).max().unwrap();
            for j in 1..=max_k {
                let count = self
                    .summands
                    .iter()
                    .filter(|s| s.p == p)
                    .map(|s| p.pow(s.k.min(j) * s.n))
                    .product();
                out.insert(p.pow(j), count);
            }
        }
        out
    }

    /// The group `⊕ Z_{p^k}` in summand order.
    pub fn build(&self) -> Result<FiniteGroup> {
        let moduli: Vec<usize> = self.moduli().iter().map(|&m| m as usize).collect();
        match moduli.len() {
            0 => cyclic(1),
            _ => abelian(&moduli),
        }
    }

    /// Compact name such as `Z2+Z4+Z4`, `1` for the trivial group.
    pub fn label(&self) -> String {
        let m = self.moduli();
        if m.is_empty() {
            return "1".into();
        }
        m.iter().map(|x| format!("Z{x}")).collect::<Vec<_>>().join("+")
    }
}

fn check_abelian(g: &FiniteGroup, a: &Subgroup) -> Result<()> {
    let ok = a.generators().iter().all(|&x| a.generators().iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
    if ok {
        Ok(())
    } else {
        Err(Error::NotAbelian)
    }
}

/// Elements of `a` whose order is a power of `p`.
pub fn p_component(g: &FiniteGroup, a: &Subgroup, p: u64) -> Result<Subgroup> {
    check_abelian(g, a)?;
    let members = a
        .members()
        .iter()
        .copied()
        .filter(|&x| {
            let o = g.element_order(x) as u64;
            o == 1 || prime_power(o).is_some_and(|(q, _)| q == p)
        })
        .collect();
    Ok(Subgroup::from_members_unchecked(g, members))
}

/// A basis of the abelian subgroup `a`: elements of prime-power order whose
/// cyclic subgroups form a direct sum equal to `a`. Listed by prime, and
/// within a prime by decreasing order.
pub fn cyclic_basis(g: &FiniteGroup, a: &Subgroup) -> Result<Vec<Elem>> {
    check_abelian(g, a)?;
    let mut basis = Vec::new();
    for (p, _) in factorize(a.order() as u64) {
        let comp = p_component(g, a, p)?;
        let mut picked = Vec::new();
        let mut current = Subgroup::trivial(g);
        if !extend_basis(g, &comp, &mut picked, &mut current) {
            unreachable!("finite abelian p-groups are direct sums of cyclic groups");
        }
        basis.extend(picked);
    }
    Ok(basis)
}

/// Depth-first extraction: adds an element of the largest order available
/// whose cyclic group meets the current span trivially, backtracking when
/// the span cannot be completed.
fn extend_basis(g: &FiniteGroup, comp: &Subgroup, picked: &mut Vec<Elem>, span: &mut Subgroup) -> bool {
    if span.order() == comp.order() {
        return true;
    }
    let bound = picked.last().map_or(usize::MAX, |&x| g.element_order(x));
    let mut cand: Vec<(usize, Elem)> = comp
        .members()
        .iter()
        .map(|&x| (g.element_order(x), x))
        .filter(|&(o, x)| o > 1 && o <= bound && !span.contains(x))
        .collect();
    cand.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, x) in cand {
        let cx = closure(g, &[x]);
        if !intersection(g, &cx, span).is_trivial() {
            continue;
        }
        let mut gens = span.generators().to_vec();
        gens.push(x);
        let mut next = closure(g, &gens);
        picked.push(x);
        if extend_basis(g, comp, picked, &mut next) {
            *span = next;
            return true;
        }
        picked.pop();
    }
    false
}

/// Primary decomposition of an abelian table group.
pub fn primary_decompose(g: &FiniteGroup) -> Result<PrimaryDecomposition> {
    primary_decompose_subgroup(g, &Subgroup::whole(g))
}

pub fn primary_decompose_subgroup(g: &FiniteGroup, a: &Subgroup) -> Result<PrimaryDecomposition> {
    let basis = cyclic_basis(g, a)?;
    let moduli: Vec<u64> = basis.iter().map(|&x| g.element_order(x) as u64).collect();
    PrimaryDecomposition::from_moduli(&moduli)
}

/// Counts of elements with `x^q = 1` for prime powers `q`, computed directly
/// from the group. Matches [`PrimaryDecomposition::divisor_counts`] exactly
/// when the decomposition is correct.
pub fn divisor_counts(g: &FiniteGroup, a: &Subgroup) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for (p, _) in factorize(a.order() as u64) {
        let max = a
            .members()
            .iter()
            .filter_map(|&x| prime_power(g.element_order(x) as u64).filter(|&(q, _)| q == p).map(|(_, k)| k))
            .max()
            .unwrap_or(0);
        for j in 1..=max {
            let q = p.pow(j);
            let c = a.members().iter().filter(|&&x| g.pow(x, q as i64) == g.identity()).count();
            out.insert(q, c as u64);
        }
    }
    out
}

/// Each prime occurs with a single exponent: any two cyclic summand orders
/// are equal or coprime.
pub fn strong_retract_criterion(d: &PrimaryDecomposition) -> bool {
    d.summands.windows(2).all(|w| w[0].p != w[1].p)
}

/// Failure witness for the criterion.
#[derive(Debug, Clone)]
pub struct ViolationEmbedding {
    /// Decomposition of the ambient group, each `p^k` raised to `p^{s_p}`.
    pub ambient: PrimaryDecomposition,
    pub h: FiniteGroup,
    /// `A -> H`, generator `b_j` of order `p^k` sent to `p^{s-k}` times the
    /// matching generator of `H`.
    pub f: Homomorphism,
    pub basis: Vec<Elem>,
}

/// Builds `H = ⊕ Z_{p^{s_p}}` with one summand per cyclic summand of `A`,
/// `s_p` the largest exponent of `p` in `A`, and the summand-wise natural
/// injection.
pub fn violation_embedding(a: &FiniteGroup) -> Result<ViolationEmbedding> {
    let d = primary_decompose(a)?;
    if strong_retract_criterion(&d) {
        return Err(Error::CriterionHolds);
    }
    let whole = Subgroup::whole(a);
    let mut basis = cyclic_basis(a, &whole)?;
    // order the basis like the summands: by prime, then increasing exponent
    basis.sort_by_key(|&x| {
        let (p, k) = prime_power(a.element_order(x) as u64).unwrap();
        (p, k, x)
    });
    let max_k: BTreeMap<u64, u32> = d.summands.iter().fold(BTreeMap::new(), |mut m, s| {
        let e = m.entry(s.p).or_insert(0);
        *e = (*e).max(s.k);
        m
    });
    let mut ambient_moduli = Vec::new();
    let mut scale = Vec::new();
    for &b in &basis {
        let (p, k) = prime_power(a.element_order(b) as u64).unwrap();
        let s = max_k[&p];
        ambient_moduli.push(p.pow(s) as usize);
        scale.push(p.pow(s - k) as usize);
    }
    let h = abelian(&ambient_moduli)?;
    let images: Vec<Elem> = scale
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            let mut digits = vec![0; ambient_moduli.len()];
            digits[j] = c;
            mixed_radix_index(&digits, &ambient_moduli)
        })
        .collect();
    let f = Homomorphism::extend(a, &basis, &images, &h).expect("summand-wise injection is well defined");
    let ambient = PrimaryDecomposition::from_moduli(&ambient_moduli.iter().map(|&m| m as u64).collect::<Vec<_>>())?;
    Ok(ViolationEmbedding { ambient, h, f, basis })
}

/// Largest ambient order accepted by [`direct_summand_complement`].
pub const COMPLEMENT_ORDER_LIMIT: usize = 256;

/// A subgroup `X` of the abelian group `h` with `S ∩ X = 1` and `S + X = H`,
/// or `None` if there is none. Depth-first over subgroups meeting `S`
/// trivially, each visited once, in element order; the first complement
/// reached is returned.
pub fn direct_summand_complement(h: &FiniteGroup, s: &Subgroup) -> Result<Option<Subgroup>> {
    if h.order() > COMPLEMENT_ORDER_LIMIT {
        return Err(Error::SearchBudgetExceeded { used: 0, limit: COMPLEMENT_ORDER_LIMIT as u64 });
    }
    check_abelian(h, &Subgroup::whole(h))?;
    if h.order() % s.order() != 0 {
        return Err(Error::InvalidArgument("S is not a subgroup of H".into()));
    }
    let target = h.order() / s.order();
    let mut seen = HashSet::new();
    Ok(search_complement(h, s, target, Subgroup::trivial(h), &mut seen))
}

fn search_complement(
    h: &FiniteGroup,
    s: &Subgroup,
    target: usize,
    x: Subgroup,
    seen: &mut HashSet<FixedBitSet>,
) -> Option<Subgroup> {
    if x.order() == target {
        return Some(x);
    }
    if !seen.insert(x.mask().clone()) {
        return None;
    }
    for y in h.elements() {
        if x.contains(y) || s.contains(y) {
            continue;
        }
        let mut gens = x.generators().to_vec();
        gens.push(y);
        let next = closure(h, &gens);
        if target % next.order() != 0 || !intersection(h, &next, s).is_trivial() {
            continue;
        }
        if let Some(c) = search_complement(h, s, target, next, seen) {
            return Some(c);
        }
    }
    None
}

/// Isomorphism types of abelian groups of order `n`, one decomposition per
/// type, from the partitions of each prime exponent.
pub fn abelian_groups_of_order(n: u64) -> Vec<PrimaryDecomposition> {
    let mut per_prime: Vec<Vec<Vec<u64>>> = Vec::new();
    for (p, e) in factorize(n) {
        per_prime.push(partitions(e).into_iter().map(|part| part.into_iter().map(|k| p.pow(k)).collect()).collect());
    }
    let mut out = vec![Vec::new()];
    for choices in per_prime {
        out = out
            .into_iter()
            .flat_map(|acc: Vec<u64>| {
                choices.iter().map(move |c| {
                    let mut v = acc.clone();
                    v.extend(c);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|m| PrimaryDecomposition::from_moduli(&m).unwrap()).collect()
}

/// All subgroups of the abelian group `g` isomorphic to `a`, built one
/// cyclic summand at a time: `S ⊕ ⟨x⟩` with `ord(x) = p^k` and
/// `⟨x⟩ ∩ S = 1`.
pub fn subgroups_isomorphic_to(g: &FiniteGroup, a: &PrimaryDecomposition) -> Result<Vec<Subgroup>> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let orders = g.element_orders();
    let mut level = vec![Subgroup::trivial(g)];
    for m in a.moduli() {
        let m = m as usize;
        let candidates: Vec<Elem> = g.elements().filter(|&x| orders[x] == m).collect();
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for s in &level {
            for &x in &candidates {
                let mut gens = s.generators().to_vec();
                gens.push(x);
                let t = closure(g, &gens);
                if t.order() == s.order() * m && seen.insert(t.members().to_vec()) {
                    next.push(t);
                }
            }
        }
        level = next;
    }
    level.sort_by(|x, y| x.members().cmp(y.members()));
    Ok(level)
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
