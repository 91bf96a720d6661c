//! Central products, fibered products, direct-factor tests for centers, and
//! the witness groups `G = Q/R` built from a fibered product.

pub mod witness;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::hom::Homomorphism;
use crate::group::implicit::FiberedProduct;
use crate::group::quotient::quotient;
use crate::group::subgroup::{center_of, intersection, normal_subgroups_of, Subgroup};
use crate::group::{direct_product, Elem, FiniteGroup};

pub use witness::{
    build_witness, build_witness_with_code, verify_witness_not_retract, verify_witness_verbal_closedness, BundleChecks,
    BundleData, RetractVerdict, RetractionReport, VerbalClosednessReport, WitnessBundle,
};

/// Two groups and an isomorphism between central subgroups, given as
/// `(left element, right element)` pairs.
#[derive(Debug, Clone)]
pub struct CentralProductSpec<'a> {
    pub left: &'a FiniteGroup,
    pub right: &'a FiniteGroup,
    pub amalgam: Vec<(Elem, Elem)>,
}

#[derive(Debug, Clone)]
pub struct CentralProduct {
    pub group: FiniteGroup,
    pub left: Homomorphism,
    pub right: Homomorphism,
    /// Image of the amalgamated subgroup.
    pub joined: Subgroup,
}

fn is_central(g: &FiniteGroup, x: Elem) -> bool {
    g.elements().all(|y| g.mul(x, y) == g.mul(y, x))
}

/// `(left × right) / {(g, φ(g)^-1)}`.
pub fn central_product(spec: &CentralProductSpec<'_>) -> Result<CentralProduct> {
    let (a, b) = (spec.left, spec.right);
    let mut phi = vec![usize::MAX; a.order()];
    for &(x, y) in &spec.amalgam {
        if x >= a.order() || y >= b.order() {
            return Err(Error::InvalidArgument("amalgam element out of range".into()));
        }
        if !is_central(a, x) || !is_central(b, y) {
            return Err(Error::NotCentral);
        }
        if phi[x] != usize::MAX && phi[x] != y {
            return Err(Error::NotIsomorphism);
        }
        phi[x] = y;
    }
    let dom: Vec<Elem> = (0..a.order()).filter(|&x| phi[x] != usize::MAX).collect();
    let dom_sub = Subgroup::from_members(a, dom.clone()).ok_or(Error::NotIsomorphism)?;
    let mut img: Vec<Elem> = dom.iter().map(|&x| phi[x]).collect();
    img.sort_unstable();
    img.dedup();
    if img.len() != dom.len() || Subgroup::from_members(b, img).is_none() {
        return Err(Error::NotIsomorphism);
    }
    let multiplicative = dom.iter().all(|&x| dom.iter().all(|&y| phi[a.mul(x, y)] == b.mul(phi[x], phi[y])));
    if !multiplicative {
        return Err(Error::NotIsomorphism);
    }
    let prod = direct_product(a, b)?;
    let nb = b.order();
    let pair = |x: Elem, y: Elem| x * nb + y;
    let n_members: Vec<Elem> = dom_sub.members().iter().map(|&x| pair(x, b.inv(phi[x]))).collect();
    let n = Subgroup::from_members(&prod, n_members).expect("graph of an isomorphism is a subgroup");
    let (group, proj) = quotient(&prod, &n)?;
    let left_map: Vec<Elem> = a.elements().map(|x| proj.apply(pair(x, b.identity()))).collect();
    let right_map: Vec<Elem> = b.elements().map(|y| proj.apply(pair(a.identity(), y))).collect();
    let left = Homomorphism::from_map(left_map, Subgroup::whole(a).generators().to_vec());
    let right = Homomorphism::from_map(right_map, Subgroup::whole(b).generators().to_vec());
    let joined_members: Vec<Elem> = dom_sub.members().iter().map(|&x| left.apply(x)).collect();
    let joined = Subgroup::from_members(&group, joined_members).expect("image of a subgroup");
    Ok(CentralProduct { group, left, right, joined })
}

/// Checks the two injections are injective homomorphisms with commuting
/// images meeting exactly in the joined subgroup.
pub fn check_central_product(spec: &CentralProductSpec<'_>, cp: &CentralProduct) -> bool {
    let g = &cp.group;
    let homs = cp.left.is_homomorphism(spec.left, g)
        && cp.right.is_homomorphism(spec.right, g)
        && cp.left.is_injective(spec.left)
        && cp.right.is_injective(spec.right);
    let li = cp.left.image(g);
    let ri = cp.right.image(g);
    let commute = li.members().iter().all(|&x| ri.members().iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
    homs && commute && intersection(g, &li, &ri) == cp.joined
}

/// `Q = {(h_1, ..., h_t) : h_i L all equal}`.
pub fn fibered_product<'a>(h: &'a FiniteGroup, l: &Subgroup, t: usize) -> Result<FiberedProduct<'a>> {
    FiberedProduct::new(h, l, t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectFactor {
    pub complement: Subgroup,
    /// With an ambient group: whether some complement is normal in it.
    pub normal_in_ambient: Option<bool>,
}

/// Looks for `D ⊴ L` with `D ∩ Z(L) = 1` and `D Z(L) = L`. With `ambient`,
/// prefers a complement normal in the ambient subgroup and reports whether
/// one exists.
pub fn center_direct_factor(g: &FiniteGroup, l: &Subgroup, ambient: Option<&Subgroup>) -> Option<DirectFactor> {
    let z = center_of(g, l);
    let complements: Vec<Subgroup> = normal_subgroups_of(g, l, l)
        .into_iter()
        .filter(|d| d.order() * z.order() == l.order() && intersection(g, d, &z).is_trivial())
        .collect();
    let first = complements.first()?.clone();
    match ambient {
        None => Some(DirectFactor { complement: first, normal_in_ambient: None }),
        Some(amb) => {
            let normal = complements.iter().find(|d| crate::group::subgroup::is_normalized_by(g, d, amb));
            Some(match normal {
                Some(d) => DirectFactor { complement: d.clone(), normal_in_ambient: Some(true) },
                None => DirectFactor { complement: first, normal_in_ambient: Some(false) },
            })
        }
    }
}

/// Outcome of instantiating the non-closedness criterion with `A = Z(T)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corollary1Verdict {
    pub a: Vec<Elem>,
    pub l: Vec<Elem>,
    /// `Z(C_T(A))` is a direct factor of `C_T(A)` with a complement normal
    /// in the group.
    pub center_splits: bool,
    /// The witness construction applies.
    pub witness_applicable: bool,
}

/// For a nonabelian torsion subgroup `T` of a nilpotent group `g`, takes
/// `A = Z(T)` and reports whether the center of `C_T(A)` fails to split off
/// normally.
pub fn corollary1_check(g: &FiniteGroup, torsion: &Subgroup) -> Result<Corollary1Verdict> {
    let gens = torsion.generators();
    if gens.iter().all(|&x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x))) {
        return Err(Error::AbelianTorsion);
    }
    let a = center_of(g, torsion);
    let l = crate::group::subgroup::centralizer_in(g, torsion, a.members());
    let whole = Subgroup::whole(g);
    let center_splits = center_direct_factor(g, &l, Some(&whole)).is_some_and(|f| f.normal_in_ambient == Some(true));
    Ok(Corollary1Verdict {
        a: a.members().to_vec(),
        l: l.members().to_vec(),
        center_splits,
        witness_applicable: !center_splits,
    })
}
