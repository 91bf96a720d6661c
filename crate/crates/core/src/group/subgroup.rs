//! Subgroups of table groups and the standard subgroup constructions.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::{Elem, FiniteGroup, RepresentationKind};

/// A subgroup of a parent [`FiniteGroup`], stored as a sorted member list,
/// a membership mask and a generating list.
///
/// The parent is not referenced; every function takes the parent explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: FixedBitSet,
    generators: Vec<Elem>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Members in increasing index order.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let members: Vec<Elem> = g.elements().collect();
        Self::from_members_unchecked(g, members)
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        closure(g, &[])
    }

    /// Builds a subgroup from a member set that is already known to be
    /// closed, computing a greedy generating set.
    pub(crate) fn from_members_unchecked(g: &FiniteGroup, mut members: Vec<Elem>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = FixedBitSet::with_capacity(g.order());
        for &x in &members {
            mask.insert(x);
        }
        let generators = greedy_generators(g, &members);
        Self { members, mask, generators }
    }

    /// Builds a subgroup from an arbitrary set, returning `None` unless the
    /// set is closed under the law and contains the identity.
    pub fn from_members(g: &FiniteGroup, members: Vec<Elem>) -> Option<Self> {
        let s = Self::from_members_unchecked(g, members);
        let closed = s.contains(g.identity())
            && s.members.iter().all(|&a| s.generators.iter().all(|&b| s.contains(g.mul(a, b))));
        if closed && closure(g, &s.generators).members == s.members {
            Some(s)
        } else {
            None
        }
    }

    /// Checks the structural invariants against the parent group.
    pub fn is_valid_in(&self, g: &FiniteGroup) -> bool {
        self.contains(g.identity())
            && self.members.iter().all(|&a| {
                self.contains(g.inv(a)) && self.members.iter().all(|&b| self.contains(g.mul(a, b)))
            })
            && closure(g, &self.generators).members == self.members
    }

    /// The subgroup as a group of its own, together with the embedding
    /// `i -> members[i]`.
    pub fn as_group(&self, g: &FiniteGroup) -> (FiniteGroup, Vec<Elem>) {
        let pos = self.position_map(g);
        let members = &self.members;
        let h = FiniteGroup::from_law(members.len(), RepresentationKind::TupleSubgroup, |a, b| {
            pos[g.mul(members[a], members[b])]
        })
        .expect("subgroup of a table group is a table group");
        let h = match g.names() {
            Some(n) => h.with_names(members.iter().map(|&x| n[x].clone()).collect()),
            None => h,
        };
        (h, members.clone())
    }

    /// Maps each parent element to its position among the members
    /// (`usize::MAX` for non-members).
    pub fn position_map(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &x) in self.members.iter().enumerate() {
            pos[x] = i;
        }
        pos
    }
}

/// Generators picked greedily from `members`: larger element order first,
/// then smaller index, skipping anything already generated.
fn greedy_generators(g: &FiniteGroup, members: &[Elem]) -> Vec<Elem> {
    let mut cand: Vec<(usize, Elem)> = members.iter().map(|&x| (g.element_order(x), x)).collect();
    cand.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut gens = Vec::new();
    let mut cur = FixedBitSet::with_capacity(g.order());
    cur.insert(g.identity());
    let mut count = 1;
    for (_, x) in cand {
        if count == members.len() {
            break;
        }
        if !cur.contains(x) {
            gens.push(x);
            let s = closure(g, &gens);
            count = s.order();
            cur = s.mask;
        }
    }
    gens
}

/// Smallest subgroup containing `gens`.
pub fn closure(g: &FiniteGroup, gens: &[Elem]) -> Subgroup {
    let mut mask = FixedBitSet::with_capacity(g.order());
    let e = g.identity();
    mask.insert(e);
    let mut members = vec![e];
    let mut queue = VecDeque::from([e]);
    let gens: Vec<Elem> = {
        let mut seen = HashSet::new();
        gens.iter().copied().filter(|x| seen.insert(*x)).collect()
    };
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = g.mul(x, s);
            if !mask.put(y) {
                members.push(y);
                queue.push_back(y);
            }
        }
    }
    members.sort_unstable();
    Subgroup { members, mask, generators: gens }
}

/// Subgroup generated by the union of two subgroups.
pub fn join(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let gens: Vec<Elem> = a.generators.iter().chain(&b.generators).copied().collect();
    closure(g, &gens)
}

pub fn intersection(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let members = a.members.iter().copied().filter(|&x| b.contains(x)).collect();
    Subgroup::from_members_unchecked(g, members)
}

/// `{c : cx = xc for all x in xs}`.
pub fn centralizer(g: &FiniteGroup, xs: &[Elem]) -> Subgroup {
    let members = g
        .elements()
        .filter(|&c| xs.iter().all(|&x| g.mul(c, x) == g.mul(x, c)))
        .collect();
    Subgroup::from_members_unchecked(g, members)
}

/// Centralizer of `xs` intersected with the subgroup `within`.
pub fn centralizer_in(g: &FiniteGroup, within: &Subgroup, xs: &[Elem]) -> Subgroup {
    let members = within
        .members()
        .iter()
        .copied()
        .filter(|&c| xs.iter().all(|&x| g.mul(c, x) == g.mul(x, c)))
        .collect();
    Subgroup::from_members_unchecked(g, members)
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let all: Vec<Elem> = g.elements().collect();
    centralizer(g, &all)
}

/// Center of a subgroup `l`, i.e. `C(l) ∩ l`.
pub fn center_of(g: &FiniteGroup, l: &Subgroup) -> Subgroup {
    centralizer_in(g, l, l.members())
}

/// Mutual commutator subgroup `[A, B]`.
pub fn commutator_of(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut gens = Vec::new();
    let mut seen = FixedBitSet::with_capacity(g.order());
    for &x in a.members() {
        for &y in b.members() {
            let c = g.commutator(x, y);
            if !seen.put(c) {
                gens.push(c);
            }
        }
    }
    gens.sort_unstable();
    let s = closure(g, &gens);
    Subgroup::from_members_unchecked(g, s.members)
}

pub fn commutator_subgroup(g: &FiniteGroup) -> Subgroup {
    let all = Subgroup::whole(g);
    commutator_of(g, &all, &all)
}

/// Smallest normal subgroup containing `xs`.
pub fn normal_closure(g: &FiniteGroup, xs: &[Elem]) -> Subgroup {
    normal_closure_in(g, &Subgroup::whole(g), xs)
}

/// Smallest subgroup containing `xs` and normalised by every element of
/// `ambient`.
pub fn normal_closure_in(g: &FiniteGroup, ambient: &Subgroup, xs: &[Elem]) -> Subgroup {
    let mut gens: Vec<Elem> = Vec::new();
    let mut seen = FixedBitSet::with_capacity(g.order());
    for &x in xs {
        for &h in ambient.members() {
            let c = g.conj(x, h);
            if !seen.put(c) {
                gens.push(c);
            }
        }
    }
    gens.sort_unstable();
    let s = closure(g, &gens);
    Subgroup::from_members_unchecked(g, s.members)
}

/// Whether every element of `by` normalises `h`.
pub fn is_normalized_by(g: &FiniteGroup, h: &Subgroup, by: &Subgroup) -> bool {
    by.generators()
        .iter()
        .all(|&x| h.generators().iter().all(|&y| h.contains(g.conj(y, x))))
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.elements().all(|x| h.generators().iter().all(|&y| h.contains(g.conj(y, x))))
}

/// All subgroups of `within`, sorted by order and then by member list.
pub fn subgroups_of(g: &FiniteGroup, within: &Subgroup) -> Vec<Subgroup> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(trivial.mask.clone());
    let mut out = vec![trivial.clone()];
    let mut queue = VecDeque::from([trivial]);
    while let Some(k) = queue.pop_front() {
        for &x in within.members() {
            if k.contains(x) {
                continue;
            }
            let mut gens = k.generators.clone();
            gens.push(x);
            let s = closure(g, &gens);
            if seen.insert(s.mask.clone()) {
                let s = Subgroup::from_members_unchecked(g, s.members);
                out.push(s.clone());
                queue.push_back(s);
            }
        }
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    out
}

pub fn subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    subgroups_of(g, &Subgroup::whole(g))
}

/// Subgroups of `within` normalised by `ambient`, sorted like
/// [`subgroups_of`]. Built as joins of normal closures of single elements.
pub fn normal_subgroups_of(g: &FiniteGroup, within: &Subgroup, ambient: &Subgroup) -> Vec<Subgroup> {
    let atoms: Vec<Subgroup> = {
        let mut seen = HashSet::new();
        within
            .members()
            .iter()
            .map(|&x| normal_closure_in(g, ambient, &[x]))
            .filter(|s| seen.insert(s.mask.clone()))
            .collect()
    };
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(trivial.mask.clone());
    let mut out = vec![trivial.clone()];
    let mut queue = VecDeque::from([trivial]);
    while let Some(k) = queue.pop_front() {
        for a in &atoms {
            if a.is_subset_of(&k) {
                continue;
            }
            let s = join(g, &k, a);
            if seen.insert(s.mask.clone()) {
                let s = Subgroup::from_members_unchecked(g, s.members);
                out.push(s.clone());
                queue.push_back(s);
            }
        }
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    out
}

pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let all = Subgroup::whole(g);
    normal_subgroups_of(g, &all, &all)
}

/// Lower central series `G = γ1 ≥ γ2 ≥ ...` until it stabilises.
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let all = Subgroup::whole(g);
    let mut series = vec![all.clone()];
    loop {
        let next = commutator_of(g, series.last().unwrap(), &all);
        if next.order() == series.last().unwrap().order() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    lower_central_series(g).last().unwrap().is_trivial()
}

/// Length of the derived series, or `usize::MAX` for non-solvable groups.
pub fn derived_length(g: &FiniteGroup) -> usize {
    let mut cur = Subgroup::whole(g);
    let mut len = 0;
    while !cur.is_trivial() {
        let next = commutator_of(g, &cur, &cur);
        if next.order() == cur.order() {
            return usize::MAX;
        }
        cur = next;
        len += 1;
    }
    len
}

/// Elements `x` of the abelian subgroup `a` with `x^p = 1`.
pub fn omega_subgroup(g: &FiniteGroup, a: &Subgroup, p: usize) -> crate::Result<Subgroup> {
    let abelian = a.members().iter().all(|&x| a.generators().iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
    if !abelian {
        return Err(crate::Error::NotAbelian);
    }
    let members = a.members().iter().copied().filter(|&x| g.pow(x, p as i64) == g.identity()).collect();
    Ok(Subgroup::from_members_unchecked(g, members))
}

/// For `N ⊴ G`: elements in the same coset of `C_G(N)` conjugate every
/// element of `N` identically. Checked on all pairs; returns `false` if
/// `N` is not normal or some pair disagrees.
pub fn conjugation_factors_through_centralizer(g: &FiniteGroup, n: &Subgroup) -> bool {
    if !is_normal(g, n) {
        return false;
    }
    let c = centralizer(g, n.members());
    g.elements().all(|x| {
        c.members().iter().all(|&z| {
            let y = g.mul(x, z);
            n.members().iter().all(|&m| g.conj(m, x) == g.conj(m, y))
        })
    })
}
