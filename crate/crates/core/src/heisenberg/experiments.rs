//! Finite experiments around `H_n(F_q)` inside its central product with a
//! copy of itself.

use serde::{Deserialize, Serialize};

use super::classify::basis_element;
use super::finite::heis_group;
use crate::constructions::{central_product, CentralProductSpec};
use crate::error::Result;
use crate::group::hom::search_retraction;
use crate::group::subgroup::{center, closure, commutator_subgroup, Subgroup};
use crate::group::{Elem, FiniteGroup};
use crate::words::{verbal_image, verbally_closed_bounded, ClosednessReport, Word};

/// With `V` the verbal image of `w`: `v (V ∩ G') ⊆ V` for every `v ∈ V`.
pub fn absorption_check(g: &FiniteGroup, w: &Word, budget: u64) -> Result<bool> {
    let image = verbal_image(g, w, budget)?;
    let derived = commutator_subgroup(g);
    let meet: Vec<Elem> = image.elements.iter().copied().filter(|&x| derived.contains(x)).collect();
    Ok(image.elements.iter().all(|&v| meet.iter().all(|&c| image.contains(g.mul(v, c)))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop6Report {
    pub n: usize,
    pub q: u64,
    pub k_order: usize,
    pub hbar_order: usize,
    pub retraction_found: bool,
    pub retraction_nodes: u64,
    pub closedness: ClosednessReport,
}

/// `K = H ×_{H' = H̃'} H̃` and `H̄ = ⟨H, (1, h_i), (1, g_i)⟩` with `h_i`,
/// `g_i` the unit matrices in the `a` and `b` positions of the second
/// factor. Looks for a retraction `H̄ → H` and runs the bounded verbal
/// closedness check of `H` in `K`.
pub fn prop6_experiment(n: usize, q: u64, max_len: usize, max_vars: usize, budget: u64, node_limit: u64) -> Result<Prop6Report> {
    let h = heis_group(n, q)?;
    let z = center(&h);
    let amalgam: Vec<(Elem, Elem)> = z.members().iter().map(|&x| (x, x)).collect();
    let spec = CentralProductSpec { left: &h, right: &h, amalgam };
    let cp = central_product(&spec)?;
    let k = &cp.group;
    let h_in_k = cp.left.image(k);
    let mut gens: Vec<Elem> = h_in_k.generators().to_vec();
    for i in 0..n {
        gens.push(cp.right.apply(basis_element(n, q, i, false)));
        gens.push(cp.right.apply(basis_element(n, q, i, true)));
    }
    let hbar_sub = closure(k, &gens);
    let (hbar, positions) = hbar_sub.as_group(k);
    let h_members: Vec<Elem> = h_in_k
        .members()
        .iter()
        .map(|&x| positions.binary_search(&x).expect("H lies in H̄"))
        .collect();
    let h_in_hbar = Subgroup::from_members(&hbar, h_members).expect("image of a subgroup");
    let outcome = search_retraction(&hbar, &h_in_hbar, node_limit)?;
    let closedness = verbally_closed_bounded(k, &h_in_k, max_len, max_vars, budget)?;
    Ok(Prop6Report {
        n,
        q,
        k_order: k.order(),
        hbar_order: hbar.order(),
        retraction_found: outcome.found.is_some(),
        retraction_nodes: outcome.nodes,
        closedness,
    })
}
