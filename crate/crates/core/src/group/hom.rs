//! Homomorphisms between table groups and the backtracking search over
//! generator images used to enumerate them and to look for retractions.

use std::collections::VecDeque;

use rayon::prelude::*;

use super::subgroup::{closure, Subgroup};
use super::{Elem, FiniteGroup, EXHAUSTIVE_AXIOM_LIMIT};
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// Default node limit for retraction searches.
pub const DEFAULT_NODE_LIMIT: u64 = 1_000_000_000;

/// A homomorphism given by generator images and extended to its whole
/// domain. Elements outside the domain (when the domain is a proper
/// subgroup of the source table) map to nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    generators: Vec<Elem>,
    images: Vec<Elem>,
    map: Vec<Elem>,
}

impl Homomorphism {
    /// Wraps a complete element map. The caller vouches that it is a
    /// homomorphism; [`Homomorphism::is_homomorphism`] checks it.
    pub fn from_map(map: Vec<Elem>, generators: Vec<Elem>) -> Self {
        let images = generators.iter().map(|&g| map[g]).collect();
        Self { generators, images, map }
    }

    /// Extends generator images along the Cayley graph of the subgroup they
    /// generate. Returns `None` if two paths disagree, i.e. the assignment
    /// does not respect some relation.
    pub fn extend(src: &FiniteGroup, gens: &[Elem], images: &[Elem], tgt: &FiniteGroup) -> Option<Self> {
        let map = extend_map(src, gens, images, tgt)?;
        Some(Self { generators: gens.to_vec(), images: images.to_vec(), map })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        let all = Subgroup::whole(g);
        Self::from_map(g.elements().collect(), all.generators().to_vec())
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn try_apply(&self, x: Elem) -> Option<Elem> {
        self.map.get(x).copied().filter(|&y| y != NONE)
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    /// Domain elements in increasing order.
    pub fn domain(&self) -> Vec<Elem> {
        (0..self.map.len()).filter(|&x| self.map[x] != NONE).collect()
    }

    /// Checks `f(xy) = f(x) f(y)` on the domain: on every pair when the
    /// domain has at most [`EXHAUSTIVE_AXIOM_LIMIT`] elements, otherwise on
    /// every (element, generator) pair.
    pub fn is_homomorphism(&self, src: &FiniteGroup, tgt: &FiniteGroup) -> bool {
        let dom = self.domain();
        if dom.iter().any(|&x| self.map[x] >= tgt.order()) {
            return false;
        }
        let partners: Vec<Elem> = if dom.len() <= EXHAUSTIVE_AXIOM_LIMIT {
            dom.clone()
        } else {
            self.generators.clone()
        };
        dom.par_iter().all(|&x| {
            partners.iter().all(|&y| {
                let xy = src.mul(x, y);
                self.map[xy] != NONE && self.map[xy] == tgt.mul(self.map[x], self.map[y])
            })
        })
    }

    pub fn kernel(&self, src: &FiniteGroup) -> Subgroup {
        let e_img = self.map[src.identity()];
        let members = self.domain().into_iter().filter(|&x| self.map[x] == e_img).collect();
        Subgroup::from_members_unchecked(src, members)
    }

    pub fn image(&self, tgt: &FiniteGroup) -> Subgroup {
        let members = self.domain().into_iter().map(|x| self.map[x]).collect();
        Subgroup::from_members_unchecked(tgt, members)
    }

    pub fn is_injective(&self, src: &FiniteGroup) -> bool {
        self.kernel(src).is_trivial()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Homomorphism) -> Homomorphism {
        let map = other.map.iter().map(|&y| if y == NONE { NONE } else { self.map[y] }).collect();
        Homomorphism::from_map(map, other.generators.clone())
    }
}

fn extend_map(src: &FiniteGroup, gens: &[Elem], images: &[Elem], tgt: &FiniteGroup) -> Option<Vec<Elem>> {
    let mut map = vec![NONE; src.order()];
    let e = src.identity();
    map[e] = tgt.identity();
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x];
        for (&s, &fs) in gens.iter().zip(images) {
            let y = src.mul(x, s);
            let fy = tgt.mul(fx, fs);
            if map[y] == NONE {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Result of a bounded backtracking search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome<T> {
    pub found: Option<T>,
    pub nodes: u64,
}

enum Flow {
    Continue,
    Stop,
    OutOfBudget,
}

/// Depth-first search over image assignments. `gens[..fixed]` have a
/// single candidate each. After every assignment the partial map is
/// extended over the subgroup generated so far and rejected if some
/// relation is violated.
struct ImageSearch<'a> {
    src: &'a FiniteGroup,
    tgt: &'a FiniteGroup,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    limit: u64,
}

impl ImageSearch<'_> {
    fn dfs(
        &self,
        level: usize,
        imgs: &mut Vec<Elem>,
        nodes: &mut u64,
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> Flow {
        if level == self.gens.len() {
            return if visit(imgs) { Flow::Continue } else { Flow::Stop };
        }
        for &c in &self.candidates[level] {
            *nodes += 1;
            if *nodes > self.limit {
                return Flow::OutOfBudget;
            }
            imgs.push(c);
            let ok = extend_map(self.src, &self.gens[..=level], imgs, self.tgt).is_some();
            if ok {
                match self.dfs(level + 1, imgs, nodes, visit) {
                    Flow::Continue => {}
                    other => {
                        imgs.pop();
                        return other;
                    }
                }
            }
            imgs.pop();
        }
        Flow::Continue
    }
}

fn divisor_candidates(src: &FiniteGroup, tgt: &FiniteGroup, x: Elem, pool: &[Elem]) -> Vec<Elem> {
    let ox = src.element_order(x);
    pool.iter().copied().filter(|&y| ox % tgt.element_order(y) == 0).collect()
}

/// Every homomorphism from `⟨domain_gens⟩ ≤ src` into `tgt`, in
/// lexicographic order of generator images.
pub fn all_homomorphisms(
    src: &FiniteGroup,
    domain: &Subgroup,
    tgt: &FiniteGroup,
    limit: u64,
) -> Result<Vec<Homomorphism>> {
    let gens = domain.generators().to_vec();
    let pool: Vec<Elem> = tgt.elements().collect();
    let candidates = gens.iter().map(|&x| divisor_candidates(src, tgt, x, &pool)).collect();
    let search = ImageSearch { src, tgt, gens: gens.clone(), candidates, limit };
    let mut out = Vec::new();
    let mut nodes = 0;
    let mut imgs = Vec::new();
    let flow = search.dfs(0, &mut imgs, &mut nodes, &mut |imgs| {
        out.push(Homomorphism::extend(src, &gens, imgs, tgt).expect("consistent leaf"));
        true
    });
    if let Flow::OutOfBudget = flow {
        return Err(Error::SearchBudgetExceeded { used: nodes, limit });
    }
    Ok(out)
}

/// Generators of `g` over `h`: generators of `h` first, then elements of `g`
/// picked greedily by decreasing order until they generate `g`.
pub fn relative_generators(g: &FiniteGroup, h: &Subgroup) -> (Vec<Elem>, Vec<Elem>) {
    let fixed = h.generators().to_vec();
    let mut extra = Vec::new();
    let mut cand: Vec<(usize, Elem)> = g.elements().map(|x| (g.element_order(x), x)).collect();
    cand.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut cur = closure(g, &fixed);
    for (_, x) in cand {
        if cur.order() == g.order() {
            break;
        }
        if !cur.contains(x) {
            extra.push(x);
            let all: Vec<Elem> = fixed.iter().chain(&extra).copied().collect();
            cur = closure(g, &all);
        }
    }
    (fixed, extra)
}

/// Bounded search for a retraction `ρ: G → H` with `ρ|_H = id`.
///
/// Images of the extra generators range over elements of `H` whose order
/// divides the generator's order, in increasing index order, so the first
/// retraction found is lexicographically least. The first branching level
/// is explored in parallel with a node cap of `limit / branches` per branch.
pub fn search_retraction(g: &FiniteGroup, h: &Subgroup, limit: u64) -> Result<SearchOutcome<Homomorphism>> {
    let (fixed, extra) = relative_generators(g, h);
    let gens: Vec<Elem> = fixed.iter().chain(&extra).copied().collect();
    let mut candidates: Vec<Vec<Elem>> = fixed.iter().map(|&x| vec![x]).collect();
    for &x in &extra {
        candidates.push(divisor_candidates(g, g, x, h.members()));
    }
    let leaf = |imgs: &[Elem]| -> Homomorphism { Homomorphism::extend(g, &gens, imgs, g).expect("consistent leaf") };
    if extra.is_empty() {
        let rho = leaf(&fixed);
        return Ok(SearchOutcome { found: Some(rho), nodes: 1 });
    }
    let first = fixed.len();
    let branches = candidates[first].clone();
    let per_branch = (limit / branches.len().max(1) as u64).max(1);
    let results: Vec<(Option<Vec<Elem>>, u64, bool)> = branches
        .par_iter()
        .map(|&c| {
            let mut cands = candidates.clone();
            cands[first] = vec![c];
            let search = ImageSearch { src: g, tgt: g, gens: gens.clone(), candidates: cands, limit: per_branch };
            let mut nodes = 0;
            let mut found = None;
            let mut imgs = Vec::new();
            let flow = search.dfs(0, &mut imgs, &mut nodes, &mut |imgs| {
                found = Some(imgs.to_vec());
                false
            });
            (found, nodes, matches!(flow, Flow::OutOfBudget))
        })
        .collect();
    let nodes: u64 = results.iter().map(|r| r.1).sum();
    if let Some(imgs) = results.iter().find_map(|r| r.0.clone()) {
        let rho = leaf(&imgs);
        assert!(is_retraction(g, h, &rho), "search returned a map that is not a retraction");
        return Ok(SearchOutcome { found: Some(rho), nodes });
    }
    if results.iter().any(|r| r.2) {
        return Err(Error::SearchBudgetExceeded { used: nodes, limit });
    }
    Ok(SearchOutcome { found: None, nodes })
}

/// Lexicographically first retraction of `g` onto `h`, if any.
pub fn find_retraction(g: &FiniteGroup, h: &Subgroup, limit: u64) -> Result<Option<Homomorphism>> {
    search_retraction(g, h, limit).map(|o| o.found)
}

/// Checks `ρ` is an endomorphism of `g` with image in `h`, `ρ|_H = id` and
/// `ρ∘ρ = ρ`, on every element.
pub fn is_retraction(g: &FiniteGroup, h: &Subgroup, rho: &Homomorphism) -> bool {
    rho.domain().len() == g.order()
        && rho.is_homomorphism(g, g)
        && g.elements().all(|x| h.contains(rho.apply(x)) && rho.apply(rho.apply(x)) == rho.apply(x))
        && h.members().iter().all(|&x| rho.apply(x) == x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::{q8, s3};
    use crate::group::subgroup::center;
    use crate::group::{abelian, cyclic, direct_product};

    #[test]
    fn extend_detects_inconsistency() {
        let z4 = cyclic(4).unwrap();
        let z2 = cyclic(2).unwrap();
        assert!(Homomorphism::extend(&z4, &[1], &[1], &z2).is_some());
        let z3 = cyclic(3).unwrap();
        assert!(Homomorphism::extend(&z4, &[1], &[1], &z3).is_none());
    }

    #[test]
    fn hom_counts() {
        let q = q8();
        let all = Subgroup::whole(&q);
        // 4 maps through the abelianisation to the center, 24 automorphisms
        assert_eq!(all_homomorphisms(&q, &all, &q, DEFAULT_NODE_LIMIT).unwrap().len(), 28);
        let s = s3();
        let z2 = cyclic(2).unwrap();
        assert_eq!(all_homomorphisms(&s, &Subgroup::whole(&s), &z2, DEFAULT_NODE_LIMIT).unwrap().len(), 2);
        let z6 = cyclic(6).unwrap();
        assert_eq!(all_homomorphisms(&z6, &Subgroup::whole(&z6), &z6, DEFAULT_NODE_LIMIT).unwrap().len(), 6);
    }

    #[test]
    fn retraction_of_whole_group_is_identity() {
        let q = q8();
        let rho = find_retraction(&q, &Subgroup::whole(&q), DEFAULT_NODE_LIMIT).unwrap().unwrap();
        assert!(q.elements().all(|x| rho.apply(x) == x));
    }

    #[test]
    fn direct_factor_is_retract() {
        let g = direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        // A x {1}: elements a*2
        let a = closure(&g, &[2]);
        assert_eq!(a.order(), 4);
        let rho = find_retraction(&g, &a, DEFAULT_NODE_LIMIT).unwrap().unwrap();
        assert!(is_retraction(&g, &a, &rho));
    }

    #[test]
    fn z4_onto_order_two_is_not_a_retract() {
        let z4 = cyclic(4).unwrap();
        let h = closure(&z4, &[2]);
        let out = search_retraction(&z4, &h, DEFAULT_NODE_LIMIT).unwrap();
        assert!(out.found.is_none());
        // two branches (images 0 and 2 of the generator), each visiting the
        // fixed generator 2 and then the branch image
        assert_eq!(out.nodes, 4);
    }

    #[test]
    fn center_of_q8_is_not_a_retract() {
        let q = q8();
        assert!(find_retraction(&q, &center(&q), DEFAULT_NODE_LIMIT).unwrap().is_none());
    }

    #[test]
    fn budget_exceeded_is_not_absence() {
        let g = abelian(&[2, 2, 2, 2]).unwrap();
        let h = closure(&g, &[1]);
        let err = search_retraction(&g, &h, 1).unwrap_err();
        assert!(matches!(err, Error::SearchBudgetExceeded { .. }));
    }
}
