//! Groups whose elements are tuples over a table group, composed
//! coordinatewise, and their quotients by explicitly listed normal subgroups.
//!
//! Nothing here builds a Cayley table unless [`materialize`] is called.

use std::collections::{BTreeSet, HashMap};

use super::subgroup::Subgroup;
use super::{check_table_size, Elem, FiniteGroup, GroupLaw, RepresentationKind};
use crate::error::{Error, Result};

pub type Tuple = Vec<Elem>;

/// `H^t` with coordinatewise multiplication.
#[derive(Clone, Debug)]
pub struct DirectPower<'a> {
    pub base: &'a FiniteGroup,
    pub t: usize,
}

impl GroupLaw for DirectPower<'_> {
    type Elem = Tuple;

    fn identity(&self) -> Tuple {
        vec![self.base.identity(); self.t]
    }

    fn mul(&self, a: &Tuple, b: &Tuple) -> Tuple {
        a.iter().zip(b).map(|(&x, &y)| self.base.mul(x, y)).collect()
    }

    fn inv(&self, a: &Tuple) -> Tuple {
        a.iter().map(|&x| self.base.inv(x)).collect()
    }
}

/// `Q = {(h_1, ..., h_t) : h_1 L = ... = h_t L}` inside `H^t`.
#[derive(Clone, Debug)]
pub struct FiberedProduct<'a> {
    power: DirectPower<'a>,
    l: Subgroup,
    /// Minimal element of the left coset `xL`, for each `x`.
    coset_key: Vec<Elem>,
}

impl<'a> FiberedProduct<'a> {
    pub fn new(h: &'a FiniteGroup, l: &Subgroup, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidArgument("fibered product needs t >= 1".into()));
        }
        if !super::subgroup::is_normal(h, l) {
            return Err(Error::NotNormal);
        }
        let coset_key = h.elements().map(|x| l.members().iter().map(|&m| h.mul(x, m)).min().unwrap()).collect();
        Ok(Self { power: DirectPower { base: h, t }, l: l.clone(), coset_key })
    }

    pub fn base(&self) -> &'a FiniteGroup {
        self.power.base
    }

    pub fn t(&self) -> usize {
        self.power.t
    }

    pub fn fiber(&self) -> &Subgroup {
        &self.l
    }

    pub fn order(&self) -> u128 {
        self.base().order() as u128 * (self.l.order() as u128).pow(self.t() as u32 - 1)
    }

    pub fn contains(&self, x: &Tuple) -> bool {
        x.len() == self.t() && x.iter().all(|&c| self.coset_key[c] == self.coset_key[x[0]])
    }

    pub fn diagonal(&self, h: Elem) -> Tuple {
        vec![h; self.t()]
    }

    /// All elements in lexicographic order. Refuses above `limit`.
    pub fn elements(&self, limit: u128) -> Result<Vec<Tuple>> {
        let order = self.order();
        if order > limit {
            return Err(Error::TooLarge { order, limit });
        }
        let h = self.base();
        let mut out = Vec::with_capacity(order as usize);
        for first in h.elements() {
            let mut coset: Vec<Elem> = self.l.members().iter().map(|&m| h.mul(first, m)).collect();
            coset.sort_unstable();
            let mut partial: Vec<Tuple> = vec![vec![first]];
            for _ in 1..self.t() {
                partial = partial
                    .into_iter()
                    .flat_map(|p| coset.iter().map(move |&c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    }))
                    .collect();
            }
            out.extend(partial);
        }
        out.sort();
        Ok(out)
    }
}

impl GroupLaw for FiberedProduct<'_> {
    type Elem = Tuple;

    fn identity(&self) -> Tuple {
        self.power.identity()
    }

    fn mul(&self, a: &Tuple, b: &Tuple) -> Tuple {
        self.power.mul(a, b)
    }

    fn inv(&self, a: &Tuple) -> Tuple {
        self.power.inv(a)
    }
}

/// Quotient of a tuple group by a listed normal subgroup `R`. Each coset is
/// represented by its lexicographically least member.
pub struct TupleQuotient<'a, G: GroupLaw> {
    law: &'a G,
    normal: Vec<G::Elem>,
}

impl<'a, G: GroupLaw> TupleQuotient<'a, G> {
    /// The caller guarantees `normal` is a normal subgroup of `law`.
    pub fn new(law: &'a G, normal: Vec<G::Elem>) -> Self {
        Self { law, normal }
    }

    pub fn canonical(&self, x: &G::Elem) -> G::Elem {
        self.normal.iter().map(|r| self.law.mul(x, r)).min().expect("normal subgroup is nonempty")
    }

    pub fn normal(&self) -> &[G::Elem] {
        &self.normal
    }
}

impl<G: GroupLaw> GroupLaw for TupleQuotient<'_, G> {
    type Elem = G::Elem;

    fn identity(&self) -> G::Elem {
        self.canonical(&self.law.identity())
    }

    fn mul(&self, a: &G::Elem, b: &G::Elem) -> G::Elem {
        self.canonical(&self.law.mul(a, b))
    }

    fn inv(&self, a: &G::Elem) -> G::Elem {
        self.canonical(&self.law.inv(a))
    }
}

/// Subgroup generated by `gens` under an arbitrary law, sorted.
pub fn closure_under<G: GroupLaw>(law: &G, gens: &[G::Elem], limit: usize) -> Result<Vec<G::Elem>> {
    let mut seen = BTreeSet::new();
    let e = law.identity();
    seen.insert(e.clone());
    let mut frontier = vec![e];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = law.mul(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(Error::TooLarge { order: seen.len() as u128, limit: limit as u128 });
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Checks `g^-1 n g ∈ N` for every listed `n` and every generator `g`.
pub fn is_normal_under<G: GroupLaw>(law: &G, normal: &[G::Elem], gens: &[G::Elem]) -> bool {
    let set: BTreeSet<&G::Elem> = normal.iter().collect();
    gens.iter().all(|g| normal.iter().all(|n| set.contains(&law.conjugate(n, g))))
}

/// Cayley table of a finite set of elements closed under `law`. Elements
/// are sorted first, so the table index order is the element order.
pub fn materialize<G: GroupLaw>(
    law: &G,
    mut elements: Vec<G::Elem>,
    kind: RepresentationKind,
) -> Result<(FiniteGroup, Vec<G::Elem>)> {
    elements.sort();
    elements.dedup();
    check_table_size(elements.len())?;
    let index: HashMap<&G::Elem, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let group = FiniteGroup::from_law(elements.len(), kind, |a, b| {
        *index.get(&law.mul(&elements[a], &elements[b])).expect("element set is closed under the law")
    })?;
    drop(index);
    Ok((group, elements))
}
