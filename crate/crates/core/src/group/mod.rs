//! Finite groups with an explicit Cayley table.
//!
//! Elements are indices `0..order`. Tables are stored as `u16`, so no table
//! group may exceed [`MAX_TABLE_ORDER`] elements; larger constructions use the
//! implicit tuple groups in [`implicit`] and are only materialised once they
//! shrink below that bound.

pub mod catalog;
pub mod hom;
pub mod implicit;
pub mod quotient;
pub mod subgroup;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::DEFAULT_SEED;

pub type Elem = usize;

/// Largest group that may be stored as a Cayley table.
pub const MAX_TABLE_ORDER: usize = 4096;
/// Up to this order the group axioms are checked on every triple.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 512;
/// Number of sampled triples for the associativity check above the limit.
pub const SAMPLED_TRIPLES: usize = 1_000_000;

/// How a table group was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepresentationKind {
    Table,
    DirectPower,
    TupleSubgroup,
    Quotient,
    MatrixHeisenberg,
    Symbolic,
}

/// A composition law on some element type. Implemented by table groups and
/// by the implicit tuple groups, so that closures and word evaluation can run
/// on either.
pub trait GroupLaw: Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        let base = if n < 0 { self.inv(a) } else { a.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inv(&ba), &ab)
    }

    /// `g^-1 x g`.
    fn conjugate(&self, x: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(g), x), g)
    }
}

/// A finite group given by its Cayley table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    inverses: Vec<u16>,
    identity: usize,
    names: Option<Vec<String>>,
    kind: RepresentationKind,
}

impl Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .field("kind", &self.kind)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major table and validates every axiom.
    pub fn from_table(order: usize, table: &[Vec<usize>]) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        check_table_size(order)?;
        if table.len() != order || table.iter().any(|row| row.len() != order) {
            return Err(Error::InvalidGroup(format!("table must be {order} x {order}")));
        }
        let mut flat = Vec::with_capacity(order * order);
        for row in table {
            for &x in row {
                if x >= order {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range")));
                }
                flat.push(x as u16);
            }
        }
        let g = Self::from_flat(order, flat, RepresentationKind::Table)?;
        g.verify_axioms()?;
        Ok(g)
    }

    /// Builds the table from a composition law on `0..order`. The law is
    /// trusted to be a group law apart from the identity/inverse lookup.
    pub fn from_law<F>(order: usize, kind: RepresentationKind, law: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize + Sync,
    {
        check_table_size(order)?;
        let mut flat = vec![0u16; order * order];
        flat.par_chunks_mut(order).enumerate().for_each(|(a, row)| {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = law(a, b) as u16;
            }
        });
        Self::from_flat(order, flat, kind)
    }

    pub(crate) fn from_flat(order: usize, table: Vec<u16>, kind: RepresentationKind) -> Result<Self> {
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inverses = vec![0u16; order];
        for (x, inv) in inverses.iter_mut().enumerate() {
            let y = (0..order)
                .find(|&y| table[x * order + y] as usize == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
            if table[y * order + x] as usize != identity {
                return Err(Error::InvalidGroup(format!("inverse of {x} is one-sided")));
            }
            *inv = y as u16;
        }
        Ok(Self { order, table, inverses, identity, names: None, kind })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order);
        self.names = Some(names);
        self
    }

    pub fn with_kind(mut self, kind: RepresentationKind) -> Self {
        self.kind = kind;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a] as usize
    }

    pub fn kind(&self) -> RepresentationKind {
        self.kind
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn name(&self, x: Elem) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Index of the element with the given display name.
    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        match &self.names {
            Some(n) => n.iter().position(|s| s == name),
            None => name.parse().ok().filter(|&x: &usize| x < self.order),
        }
    }

    pub fn pow(&self, a: Elem, n: i64) -> Elem {
        GroupLaw::pow(self, &a, n)
    }

    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|x| self.element_order(x)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|x| self.element_order(x))
            .fold(1, num_integer::lcm)
    }

    /// Checks identity, inverses and associativity. Associativity is checked
    /// on every triple up to [`EXHAUSTIVE_AXIOM_LIMIT`] and on a fixed-seed
    /// sample of [`SAMPLED_TRIPLES`] triples above it.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::InvalidGroup("identity is not two-sided".into()));
            }
            if self.mul(self.inv(x), x) != self.identity {
                return Err(Error::InvalidGroup(format!("bad inverse for {x}")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        let ok = if n <= EXHAUSTIVE_AXIOM_LIMIT {
            (0..n).into_par_iter().all(|a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
            (0..SAMPLED_TRIPLES).all(|_| assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGroup("law is not associative".into()))
        }
    }

    /// Number of elements of each order.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for x in self.elements() {
            *m.entry(self.element_order(x)).or_insert(0) += 1;
        }
        m
    }

    /// Isomorphism invariants: order profile, center size, derived length.
    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            order: self.order,
            order_profile: self.order_profile(),
            center_order: subgroup::center(self).order(),
            derived_length: subgroup::derived_length(self),
        }
    }

    /// The row-major table, for serialisation.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

impl GroupLaw for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteGroup::mul(self, *a, *b)
    }

    fn inv(&self, a: &usize) -> usize {
        FiniteGroup::inv(self, *a)
    }
}

/// Cheap isomorphism invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub order_profile: BTreeMap<usize, usize>,
    pub center_order: usize,
    pub derived_length: usize,
}

fn check_table_size(order: usize) -> Result<()> {
    if order > MAX_TABLE_ORDER {
        Err(Error::TooLarge { order: order as u128, limit: MAX_TABLE_ORDER as u128 })
    } else {
        Ok(())
    }
}

/// The cyclic group `Z_n`, element `i` standing for `i mod n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("Z_0 is not finite".into()));
    }
    FiniteGroup::from_law(n, RepresentationKind::Table, |a, b| (a + b) % n)
}

/// Direct sum `Z_{m_1} + ... + Z_{m_r}`. Elements are digit tuples in
/// lexicographic order, first coordinate most significant.
pub fn abelian(moduli: &[usize]) -> Result<FiniteGroup> {
    if moduli.iter().any(|&m| m == 0) {
        return Err(Error::InvalidArgument("modulus 0".into()));
    }
    let order: usize = moduli.iter().product();
    check_table_size(order)?;
    let moduli = moduli.to_vec();
    let g = FiniteGroup::from_law(order, RepresentationKind::DirectPower, |a, b| {
        let da = mixed_radix_digits(a, &moduli);
        let db = mixed_radix_digits(b, &moduli);
        let sum: Vec<usize> = da.iter().zip(&db).zip(&moduli).map(|((x, y), m)| (x + y) % m).collect();
        mixed_radix_index(&sum, &moduli)
    })?;
    Ok(g)
}

pub fn mixed_radix_digits(mut x: usize, radices: &[usize]) -> Vec<usize> {
    let mut d = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        d[i] = x % radices[i];
        x /= radices[i];
    }
    d
}

pub fn mixed_radix_index(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (d, r)| acc * r + d)
}

/// `A x B` with element `(a, b)` at index `a * |B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let nb = b.order();
    let order = a.order() * nb;
    let mut g = FiniteGroup::from_law(order, RepresentationKind::DirectPower, |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    })?;
    if a.names.is_some() || b.names.is_some() {
        let names = (0..order)
            .map(|x| format!("({},{})", a.name(x / nb), b.name(x % nb)))
            .collect();
        g = g.with_names(names);
    }
    Ok(g)
}

/// The group generated by permutations of `0..degree`, elements sorted by
/// their image arrays (so the identity comes first).
pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<FiniteGroup> {
    for p in generators {
        let mut seen = vec![false; degree];
        if p.len() != degree || p.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidGroup(format!("{p:?} is not a permutation of 0..{degree}")));
        }
    }
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { (0..degree).map(|i| q[p[i]]).collect() };
    let id: Vec<usize> = (0..degree).collect();
    let mut elems = std::collections::BTreeSet::new();
    elems.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = compose(&x, g);
            if elems.insert(y.clone()) {
                if elems.len() > MAX_TABLE_ORDER {
                    return Err(Error::TooLarge { order: elems.len() as u128, limit: MAX_TABLE_ORDER as u128 });
                }
                frontier.push(y);
            }
        }
    }
    let elems: Vec<Vec<usize>> = elems.into_iter().collect();
    let index: std::collections::HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let g = FiniteGroup::from_law(elems.len(), RepresentationKind::Table, |a, b| {
        index[&compose(&elems[a], &elems[b])]
    })?;
    let names = elems.iter().map(|p| format!("{p:?}")).collect();
    Ok(g.with_names(names))
}
