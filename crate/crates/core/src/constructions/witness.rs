//! The witness `G = Q/R`: `Q` is the fibered product of `t` copies of `H`
//! over `L = C_T(A)`, and `R ≤ C^t` is the lift of an approximation code,
//! where `C` is the elements of order dividing `p` in the `p`-part of
//! `Z(L)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{cyclic_basis, p_component};
use crate::approx::{
    lift_to_r, search_code_for_rank, verify_certificate, verify_property1_rank, ApproxCertificate,
};
use crate::error::{Error, Result};
use crate::group::hom::{all_homomorphisms, is_retraction, Homomorphism};
use crate::group::implicit::{is_normal_under, materialize, FiberedProduct, Tuple, TupleQuotient};
use crate::group::subgroup::{
    center_of, centralizer, centralizer_in, is_normal, is_normalized_by, omega_subgroup, subgroups_of, Subgroup,
};
use crate::group::{Elem, FiniteGroup, GroupLaw, RepresentationKind, MAX_TABLE_ORDER};
use crate::words::{verbally_closed_bounded, ClosednessReport};

/// Largest `|Q|` whose elements are listed to build the table of `G`.
pub const Q_ENUMERATION_LIMIT: u128 = 1 << 22;

/// Consistency facts recomputed during construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleChecks {
    pub certificate_valid: bool,
    /// `C_T(A)` recomputed equals the stored `L` (for loaded bundles).
    pub l_recomputed: bool,
    /// `R` is closed under conjugation by generators of `Q`.
    pub r_normal_direct: bool,
    /// `R` is `End(C)`-invariant and `Q` acts on `C^t` diagonally.
    pub r_normal_invariance: bool,
    /// Every element of `R` has an identity coordinate.
    pub r_identity_coordinate: bool,
    pub embed_injective: bool,
}

impl BundleChecks {
    pub fn all_pass(&self) -> bool {
        self.certificate_valid
            && self.l_recomputed
            && self.r_normal_direct
            && self.r_normal_invariance
            && self.r_identity_coordinate
            && self.embed_injective
    }
}

/// Table of `G` with the diagonal embedding of `H`.
#[derive(Debug, Clone)]
pub struct MaterializedQuotient {
    pub g: FiniteGroup,
    /// Canonical coset representative (a tuple in `H^t`) of each element.
    pub reps: Vec<Tuple>,
    pub embed: Homomorphism,
    pub image: Subgroup,
}

#[derive(Debug, Clone)]
pub struct WitnessBundle {
    pub group_name: String,
    pub h: FiniteGroup,
    pub t_sub: Subgroup,
    pub a: Subgroup,
    pub l: Subgroup,
    pub p: u32,
    pub c: Subgroup,
    pub c_basis: Vec<Elem>,
    pub k: usize,
    pub t: usize,
    pub certificate: ApproxCertificate,
    pub method: String,
    pub r: Vec<Tuple>,
    pub q_order: u128,
    pub g_order: u128,
    pub checks: BundleChecks,
    pub quotient: Option<MaterializedQuotient>,
}

/// Serialisable form of a bundle: inputs, the certificate and derived
/// orders. Loading rebuilds everything else from these.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleData {
    pub group: String,
    pub h_order: usize,
    #[serde(rename = "T")]
    pub t_members: Vec<Elem>,
    #[serde(rename = "A")]
    pub a_members: Vec<Elem>,
    #[serde(rename = "L")]
    pub l_members: Vec<Elem>,
    #[serde(rename = "C")]
    pub c_members: Vec<Elem>,
    pub p: u32,
    pub k: usize,
    pub t: usize,
    pub method: String,
    pub q_order: u64,
    pub r_order: u64,
    pub g_order: u64,
    pub g_materialized: bool,
    pub checks: BundleChecks,
    pub certificate: ApproxCertificate,
}

impl WitnessBundle {
    pub fn fibered(&self) -> FiberedProduct<'_> {
        FiberedProduct::new(&self.h, &self.l, self.t).expect("L is normal in H")
    }

    /// Generators of `Q`: the diagonal copy of `H` and each coordinate copy
    /// of `L`.
    pub fn q_generators(&self) -> Vec<Tuple> {
        let e = self.h.identity();
        let mut gens: Vec<Tuple> = Subgroup::whole(&self.h).generators().iter().map(|&x| vec![x; self.t]).collect();
        for i in 0..self.t {
            for &x in self.l.generators() {
                let mut v = vec![e; self.t];
                v[i] = x;
                gens.push(v);
            }
        }
        gens
    }

    pub fn to_data(&self) -> BundleData {
        BundleData {
            group: self.group_name.clone(),
            h_order: self.h.order(),
            t_members: self.t_sub.members().to_vec(),
            a_members: self.a.members().to_vec(),
            l_members: self.l.members().to_vec(),
            c_members: self.c.members().to_vec(),
            p: self.p,
            k: self.k,
            t: self.t,
            method: self.method.clone(),
            q_order: self.q_order as u64,
            r_order: self.r.len() as u64,
            g_order: self.g_order as u64,
            g_materialized: self.quotient.is_some(),
            checks: self.checks.clone(),
            certificate: self.certificate.clone(),
        }
    }

    /// Rebuilds a bundle from its data over the group `h` (which must be the
    /// group named in the data), re-verifying the certificate.
    pub fn from_data(data: &BundleData, h: FiniteGroup) -> Result<Self> {
        if h.order() != data.h_order {
            return Err(Error::InvalidArgument(format!(
                "bundle expects a group of order {}, got {}",
                data.h_order,
                h.order()
            )));
        }
        let t_sub = Subgroup::from_members(&h, data.t_members.clone())
            .ok_or_else(|| Error::InvalidArgument("T is not a subgroup".into()))?;
        let a = Subgroup::from_members(&h, data.a_members.clone())
            .ok_or_else(|| Error::InvalidArgument("A is not a subgroup".into()))?;
        let mut bundle = build_witness_with_code(
            &data.group,
            h,
            &t_sub,
            &a,
            data.p,
            data.k,
            data.certificate.clone(),
            &data.method,
        )?;
        bundle.checks.l_recomputed = bundle.l.members() == data.l_members.as_slice();
        Ok(bundle)
    }
}

fn validate_inputs(h: &FiniteGroup, t_sub: &Subgroup, a: &Subgroup) -> Result<()> {
    if !is_normal(h, t_sub) || !is_normal(h, a) {
        return Err(Error::NotNormal);
    }
    if !a.is_subset_of(t_sub) {
        return Err(Error::InvalidArgument("A must be contained in T".into()));
    }
    let gens = a.generators();
    if !gens.iter().all(|&x| gens.iter().all(|&y| h.mul(x, y) == h.mul(y, x))) {
        return Err(Error::NotAbelian);
    }
    Ok(())
}

/// `L = C_T(A)` and `C = Ω_p(Z(L)_p)`.
fn l_and_c(h: &FiniteGroup, t_sub: &Subgroup, a: &Subgroup, p: u32) -> Result<(Subgroup, Subgroup)> {
    let l = centralizer_in(h, t_sub, a.members());
    let z = center_of(h, &l);
    let zp = p_component(h, &z, p as u64)?;
    let c = omega_subgroup(h, &zp, p as usize)?;
    if c.is_trivial() {
        return Err(Error::TrivialC(p));
    }
    Ok((l, c))
}

/// Builds the witness for `(H, T, A, p)`. The strength `k` defaults to the
/// number of subgroups of `T`.
pub fn build_witness(
    group_name: &str,
    h: FiniteGroup,
    t_sub: &Subgroup,
    a: &Subgroup,
    p: u32,
    k_override: Option<usize>,
) -> Result<WitnessBundle> {
    validate_inputs(&h, t_sub, a)?;
    let (_, c) = l_and_c(&h, t_sub, a, p)?;
    let k = k_override.unwrap_or_else(|| subgroups_of(&h, t_sub).len());
    let rank = cyclic_basis(&h, &c)?.len();
    let found = search_code_for_rank(p, k, k + 8, rank).map_err(|e| Error::ApproxSearchFailed(e.to_string()))?;
    build_witness_with_code(group_name, h, t_sub, a, p, k, found.certificate, &found.method)
}

/// As [`build_witness`] with a given certificate.
#[allow(clippy::too_many_arguments)]
pub fn build_witness_with_code(
    group_name: &str,
    h: FiniteGroup,
    t_sub: &Subgroup,
    a: &Subgroup,
    p: u32,
    k: usize,
    certificate: ApproxCertificate,
    method: &str,
) -> Result<WitnessBundle> {
    validate_inputs(&h, t_sub, a)?;
    let (l, c) = l_and_c(&h, t_sub, a, p)?;
    if certificate.p != p || certificate.k != k {
        return Err(Error::ApproxSearchFailed("certificate parameters do not match".into()));
    }
    let code = certificate.code();
    let c_basis = cyclic_basis(&h, &c)?;
    let check = verify_certificate(&certificate)?;
    let certificate_valid = check.all_pass() && verify_property1_rank(&code, c_basis.len())?;
    if !certificate_valid {
        return Err(Error::ApproxSearchFailed(format!("certificate rejected: {:?}", check.problems)));
    }
    let lifted = lift_to_r(&code, &h, &c)?;
    let t = code.t;
    let r = lifted.elements;
    let fp = FiberedProduct::new(&h, &l, t)?;
    let q_order = fp.order();
    let g_order = q_order / r.len() as u128;

    let mut bundle = WitnessBundle {
        group_name: group_name.to_string(),
        h,
        t_sub: t_sub.clone(),
        a: a.clone(),
        l,
        p,
        c,
        c_basis,
        k,
        t,
        certificate,
        method: method.to_string(),
        r,
        q_order,
        g_order,
        checks: BundleChecks {
            certificate_valid,
            l_recomputed: true,
            r_normal_direct: false,
            r_normal_invariance: false,
            r_identity_coordinate: lifted.identity_coordinate,
            embed_injective: false,
        },
        quotient: None,
    };
    let h = &bundle.h;
    let fp = bundle.fibered();
    bundle.checks.r_normal_direct = is_normal_under(&fp, &bundle.r, &bundle.q_generators());
    let l_centralizes_c = bundle
        .l
        .generators()
        .iter()
        .all(|&x| bundle.c.generators().iter().all(|&y| h.mul(x, y) == h.mul(y, x)));
    bundle.checks.r_normal_invariance = lifted.end_invariant && is_normal(h, &bundle.c) && l_centralizes_c;
    bundle.checks.embed_injective =
        h.elements().all(|x| x == h.identity() || bundle.r.binary_search(&vec![x; bundle.t]).is_err());
    if bundle.checks.r_normal_direct && g_order <= MAX_TABLE_ORDER as u128 && q_order <= Q_ENUMERATION_LIMIT {
        bundle.quotient = Some(materialize_quotient(&bundle)?);
    }
    Ok(bundle)
}

fn materialize_quotient(bundle: &WitnessBundle) -> Result<MaterializedQuotient> {
    let fp = bundle.fibered();
    let tq = TupleQuotient::new(&fp, bundle.r.clone());
    let elements = fp.elements(Q_ENUMERATION_LIMIT)?;
    let mut reps: Vec<Tuple> = elements.par_iter().map(|x| tq.canonical(x)).collect();
    reps.sort();
    reps.dedup();
    let (g, reps) = materialize(&tq, reps, RepresentationKind::Quotient)?;
    let h = &bundle.h;
    let map: Vec<Elem> = h
        .elements()
        .map(|x| reps.binary_search(&tq.canonical(&vec![x; bundle.t])).expect("diagonal lies in Q"))
        .collect();
    let embed = Homomorphism::from_map(map, Subgroup::whole(h).generators().to_vec());
    let image = embed.image(&g);
    Ok(MaterializedQuotient { g, reps, embed, image })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerbalClosednessReport {
    pub g_order: u64,
    pub identity_coordinate: bool,
    pub closedness: ClosednessReport,
}

/// Bounded verbal closedness of the diagonal copy of `H` in `G`, plus the
/// structural fact that every element of `R` has an identity coordinate.
pub fn verify_witness_verbal_closedness(
    bundle: &WitnessBundle,
    max_len: usize,
    max_vars: usize,
    budget: u64,
) -> Result<VerbalClosednessReport> {
    let quotient = bundle
        .quotient
        .as_ref()
        .ok_or(Error::TooLarge { order: bundle.g_order, limit: MAX_TABLE_ORDER as u128 })?;
    let closedness = verbally_closed_bounded(&quotient.g, &quotient.image, max_len, max_vars, budget)?;
    Ok(VerbalClosednessReport {
        g_order: bundle.g_order as u64,
        identity_coordinate: bundle.checks.r_identity_coordinate,
        closedness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RetractVerdict {
    Found,
    Absent,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractionReport {
    pub verdict: RetractVerdict,
    /// Homomorphisms `L → H` surviving the per-coordinate constraints.
    pub candidates: usize,
    pub nodes: u64,
    pub limit: u64,
    /// Coordinate order used by the search.
    pub order: Vec<usize>,
    /// For a found retraction: the images of the generators of `L` under
    /// each coordinate map.
    pub coordinate_images: Option<Vec<Vec<Elem>>>,
    /// A found retraction was checked on the table of `G`.
    pub verified_on_table: Option<bool>,
}

struct RetractSearch<'a> {
    h: &'a FiniteGroup,
    l_gens: Vec<Elem>,
    candidates: Vec<Homomorphism>,
    commute: Vec<Vec<bool>>,
    order: Vec<usize>,
    /// R generators as `(coordinate, element of C)` lists.
    r_gens: Vec<Vec<(usize, Elem)>>,
    /// Indices of `r_gens` to test once position `i` of `order` is set.
    checks_at: Vec<Vec<usize>>,
    limit: u64,
}

enum Flow {
    Continue,
    Found,
    OutOfBudget,
}

impl RetractSearch<'_> {
    fn dfs(&self, pos: usize, assign: &mut [usize], nodes: &mut u64) -> Flow {
        if pos == self.order.len() {
            return if self.diagonal_ok(assign) { Flow::Found } else { Flow::Continue };
        }
        let coord = self.order[pos];
        for cand in 0..self.candidates.len() {
            *nodes += 1;
            if *nodes > self.limit {
                return Flow::OutOfBudget;
            }
            if !self.order[..pos].iter().all(|&j| self.commute[cand][assign[j]]) {
                continue;
            }
            assign[coord] = cand;
            if self.checks_at[pos].iter().all(|&r| self.kills(r, assign)) {
                match self.dfs(pos + 1, assign, nodes) {
                    Flow::Continue => {}
                    other => return other,
                }
            }
        }
        Flow::Continue
    }

    fn kills(&self, r: usize, assign: &[usize]) -> bool {
        let h = self.h;
        let value = self.r_gens[r]
            .iter()
            .fold(h.identity(), |acc, &(j, x)| h.mul(acc, self.candidates[assign[j]].apply(x)));
        value == h.identity()
    }

    fn diagonal_ok(&self, assign: &[usize]) -> bool {
        let h = self.h;
        self.l_gens.iter().all(|&x| assign.iter().fold(h.identity(), |acc, &c| h.mul(acc, self.candidates[c].apply(x))) == x)
    }
}

/// Decides whether a retraction `G → H` (onto the diagonal copy) exists.
///
/// A retraction is determined by its restrictions `φ_i: L → H` to the
/// coordinate copies of `L`. These must be homomorphisms that commute with
/// conjugation by `H`, land in the centralizer of `C_T(L)`, have pairwise
/// commuting images, multiply to the identity map on `L`, and kill `R`.
/// Coordinates are assigned in order of decreasing number of `R`
/// generators touching them. The first coordinate is split across threads,
/// each with a share of the node limit.
pub fn verify_witness_not_retract(bundle: &WitnessBundle, limit: u64) -> Result<RetractionReport> {
    let h = &bundle.h;
    let t = bundle.t;
    let l_gens = bundle.l.generators().to_vec();
    let h_gens = Subgroup::whole(h).generators().to_vec();
    let ctl = centralizer_in(h, &bundle.t_sub, bundle.l.members());
    let target = centralizer(h, ctl.members());
    let homs = match all_homomorphisms(h, &bundle.l, h, limit) {
        Ok(homs) => homs,
        Err(Error::SearchBudgetExceeded { used, .. }) => {
            return Ok(RetractionReport {
                verdict: RetractVerdict::Indeterminate,
                candidates: 0,
                nodes: used,
                limit,
                order: Vec::new(),
                coordinate_images: None,
                verified_on_table: None,
            })
        }
        Err(e) => return Err(e),
    };
    let candidates: Vec<Homomorphism> = homs
        .into_iter()
        .filter(|phi| {
            bundle.l.members().iter().all(|&x| target.contains(phi.apply(x)))
                && h_gens
                    .iter()
                    .all(|&g| l_gens.iter().all(|&x| phi.apply(h.conj(x, g)) == h.conj(phi.apply(x), g)))
        })
        .collect();
    let commute: Vec<Vec<bool>> = candidates
        .iter()
        .map(|a| {
            candidates
                .iter()
                .map(|b| {
                    l_gens.iter().all(|&x| {
                        l_gens.iter().all(|&y| {
                            let (u, v) = (a.apply(x), b.apply(y));
                            h.mul(u, v) == h.mul(v, u)
                        })
                    })
                })
                .collect()
        })
        .collect();
    let mut r_gens = Vec::new();
    for row in &bundle.certificate.basis {
        for &b in &bundle.c_basis {
            let gen: Vec<(usize, Elem)> =
                (0..t).filter(|&j| row[j] != 0).map(|j| (j, h.pow(b, row[j] as i64))).collect();
            r_gens.push(gen);
        }
    }
    let mut order: Vec<usize> = (0..t).collect();
    let degree = |j: usize| r_gens.iter().filter(|g| g.iter().any(|&(c, _)| c == j)).count();
    order.sort_by_key(|&j| (std::cmp::Reverse(degree(j)), j));
    let position: Vec<usize> = {
        let mut pos = vec![0; t];
        for (i, &j) in order.iter().enumerate() {
            pos[j] = i;
        }
        pos
    };
    let mut checks_at = vec![Vec::new(); t];
    for (i, g) in r_gens.iter().enumerate() {
        if let Some(last) = g.iter().map(|&(j, _)| position[j]).max() {
            checks_at[last].push(i);
        }
    }
    let mut report = RetractionReport {
        verdict: RetractVerdict::Absent,
        candidates: candidates.len(),
        nodes: 0,
        limit,
        order: order.clone(),
        coordinate_images: None,
        verified_on_table: None,
    };
    if candidates.is_empty() {
        return Ok(report);
    }
    let branches = candidates.len();
    let per_branch = (limit / branches as u64).max(1);
    let search = RetractSearch { h, l_gens: l_gens.clone(), candidates, commute, order, r_gens, checks_at, limit: per_branch };
    let first = search.order[0];
    let results: Vec<(Option<Vec<usize>>, u64, bool)> = (0..branches)
        .into_par_iter()
        .map(|c| {
            let mut nodes = 1;
            let mut assign = vec![0usize; t];
            assign[first] = c;
            if !search.checks_at[0].iter().all(|&r| search.kills(r, &assign)) {
                return (None, nodes, false);
            }
            match search.dfs(1, &mut assign, &mut nodes) {
                Flow::Found => (Some(assign), nodes, false),
                Flow::Continue => (None, nodes, false),
                Flow::OutOfBudget => (None, nodes, true),
            }
        })
        .collect();
    report.nodes = results.iter().map(|r| r.1).sum();
    if let Some(assign) = results.iter().find_map(|r| r.0.clone()) {
        report.verdict = RetractVerdict::Found;
        report.coordinate_images = Some(
            assign.iter().map(|&c| l_gens.iter().map(|&x| search.candidates[c].apply(x)).collect()).collect(),
        );
        if let Some(q) = &bundle.quotient {
            let phis: Vec<&Homomorphism> = assign.iter().map(|&c| &search.candidates[c]).collect();
            report.verified_on_table = Some(check_on_table(bundle, q, &phis));
        }
    } else if results.iter().any(|r| r.2) {
        report.verdict = RetractVerdict::Indeterminate;
    }
    Ok(report)
}

/// Assembles `ρ(h_1, ..., h_t) = h_1 ∏ φ_j(h_1^-1 h_j)` on the table of `G`
/// and checks it is a retraction onto the diagonal copy of `H`.
fn check_on_table(bundle: &WitnessBundle, q: &MaterializedQuotient, phis: &[&Homomorphism]) -> bool {
    let h = &bundle.h;
    let map: Vec<Elem> = q
        .reps
        .iter()
        .map(|x| {
            let h1 = x[0];
            let inv = h.inv(h1);
            let value = x.iter().zip(phis).fold(h1, |acc, (&hj, phi)| h.mul(acc, phi.apply(h.mul(inv, hj))));
            q.embed.apply(value)
        })
        .collect();
    let rho = Homomorphism::from_map(map, Subgroup::whole(&q.g).generators().to_vec());
    rho.is_homomorphism(&q.g, &q.g) && is_retraction(&q.g, &q.image, &rho)
}

/// `Q` acts on `C^t` by conjugation through `Q / L^t`: elements of `Q` in
/// the same `L^t`-coset conjugate `C^t` identically. Checked on every
/// element of `Q` and every generator of `L^t` and `C^t`.
pub fn diagonal_action_holds(bundle: &WitnessBundle) -> Result<bool> {
    let fp = bundle.fibered();
    let h = &bundle.h;
    let t = bundle.t;
    let unit = |i: usize, x: Elem| {
        let mut v = vec![h.identity(); t];
        v[i] = x;
        v
    };
    let l_gens: Vec<Tuple> = (0..t).flat_map(|i| bundle.l.generators().iter().map(move |&x| unit(i, x))).collect();
    let c_gens: Vec<Tuple> = (0..t).flat_map(|i| bundle.c.generators().iter().map(move |&x| unit(i, x))).collect();
    let elements = fp.elements(Q_ENUMERATION_LIMIT)?;
    Ok(elements.par_iter().all(|q| {
        l_gens.iter().all(|m| {
            let qm = fp.mul(q, m);
            c_gens.iter().all(|x| fp.conjugate(x, q) == fp.conjugate(x, &qm))
        })
    }))
}

/// The subgroup `C` is normal in `H` and conjugation on it factors through
/// `H / C_H(C)`.
pub fn c_action_factors(bundle: &WitnessBundle) -> bool {
    is_normalized_by(&bundle.h, &bundle.c, &Subgroup::whole(&bundle.h))
        && crate::group::subgroup::conjugation_factors_through_centralizer(&bundle.h, &bundle.c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{verify_property3, CodeSubspace};
    use crate::group::catalog::{d4, q8};
    use crate::group::implicit::closure_under;
    use crate::group::quotient::quotient;
    use crate::group::subgroup::{center, closure};
    use crate::words::DEFAULT_EVAL_BUDGET;

    fn q8_bundle(k: usize) -> WitnessBundle {
        let h = q8();
        let whole = Subgroup::whole(&h);
        let z = center(&h);
        build_witness("q8", h, &whole, &z, 2, Some(k)).unwrap()
    }

    fn d4_rotation_bundle() -> WitnessBundle {
        let h = d4();
        let whole = Subgroup::whole(&h);
        let r = h.elements().find(|&x| h.element_order(x) == 4).unwrap();
        let a = closure(&h, &[r]);
        build_witness("d4", h, &whole, &a, 2, Some(2)).unwrap()
    }

    #[test]
    fn q8_bundle_orders() {
        let b = q8_bundle(2);
        assert_eq!((b.t, b.q_order, b.r.len(), b.g_order), (3, 512, 4, 128));
        assert!(b.checks.all_pass());
        let q = b.quotient.as_ref().unwrap();
        assert_eq!(q.g.order(), 128);
        assert!(q.embed.is_homomorphism(&b.h, &q.g));
        assert!(q.embed.is_injective(&b.h));
    }

    #[test]
    fn d4_bundles() {
        let h = d4();
        let whole = Subgroup::whole(&h);
        let z = center(&h);
        let b = build_witness("d4", h, &whole, &z, 2, Some(2)).unwrap();
        assert_eq!((b.t, b.g_order), (3, 128));
        assert!(b.checks.all_pass());
        let b = d4_rotation_bundle();
        assert_eq!(b.l.order(), 4);
        assert_eq!(b.c.order(), 2);
        assert_eq!((b.q_order, b.g_order), (128, 32));
        assert!(b.checks.all_pass());
    }

    #[test]
    fn trivial_c_is_rejected() {
        let h = q8();
        let whole = Subgroup::whole(&h);
        let z = center(&h);
        assert!(matches!(build_witness("q8", h, &whole, &z, 3, Some(2)), Err(Error::TrivialC(3))));
    }

    #[test]
    fn full_k_uses_subgroup_count() {
        let b = q8_bundle(6);
        let h = q8();
        assert_eq!(subgroups_of(&h, &Subgroup::whole(&h)).len(), 6);
        assert_eq!((b.t, b.g_order), (7, 32768));
        assert!(b.quotient.is_none());
        assert!(b.checks.all_pass());
    }

    #[test]
    fn retraction_absent_for_q8() {
        for k in [2, 6] {
            let b = q8_bundle(k);
            let report = verify_witness_not_retract(&b, crate::group::hom::DEFAULT_NODE_LIMIT).unwrap();
            assert_eq!(report.verdict, RetractVerdict::Absent, "k = {k}");
            // trivial map, the three maps onto the center, and the four
            // inner automorphisms
            assert_eq!(report.candidates, 8);
        }
    }

    #[test]
    fn structured_search_matches_table_search() {
        for b in [q8_bundle(2), d4_rotation_bundle()] {
            let report = verify_witness_not_retract(&b, crate::group::hom::DEFAULT_NODE_LIMIT).unwrap();
            let q = b.quotient.as_ref().unwrap();
            let direct = crate::group::hom::find_retraction(&q.g, &q.image, crate::group::hom::DEFAULT_NODE_LIMIT).unwrap();
            assert_eq!(report.verdict == RetractVerdict::Found, direct.is_some());
            if report.verdict == RetractVerdict::Found {
                assert_eq!(report.verified_on_table, Some(true));
            }
        }
    }

    #[test]
    fn zero_code_gives_identity_retraction() {
        let h = q8();
        let whole = Subgroup::whole(&h);
        let z = center(&h);
        let cert = verify_property3(&CodeSubspace::zero(2, 1), 0).unwrap();
        let b = build_witness_with_code("q8", h, &whole, &z, 2, 0, cert, "given").unwrap();
        assert_eq!((b.t, b.r.len(), b.g_order), (1, 1, 8));
        let report = verify_witness_not_retract(&b, 1_000_000).unwrap();
        assert_eq!(report.verdict, RetractVerdict::Found);
        assert_eq!(report.verified_on_table, Some(true));
        let vc = verify_witness_verbal_closedness(&b, 4, 2, DEFAULT_EVAL_BUDGET).unwrap();
        assert!(vc.closedness.counterexamples.is_empty());
    }

    #[test]
    fn budget_exhaustion_is_indeterminate() {
        let b = q8_bundle(6);
        let report = verify_witness_not_retract(&b, 50).unwrap();
        assert_eq!(report.verdict, RetractVerdict::Indeterminate);
        // candidate enumeration fits, the coordinate search does not
        let report = verify_witness_not_retract(&b, 2000).unwrap();
        assert_eq!(report.verdict, RetractVerdict::Indeterminate);
        assert_eq!(report.candidates, 8);
    }

    #[test]
    fn verbal_closedness_small_words() {
        for b in [q8_bundle(2), d4_rotation_bundle()] {
            let report = verify_witness_verbal_closedness(&b, 4, 2, DEFAULT_EVAL_BUDGET).unwrap();
            assert!(report.identity_coordinate);
            assert!(report.closedness.counterexamples.is_empty(), "{}", b.group_name);
        }
    }

    #[test]
    fn r_normality_agrees_and_action_is_diagonal() {
        for b in [q8_bundle(2), d4_rotation_bundle()] {
            assert_eq!(b.checks.r_normal_direct, b.checks.r_normal_invariance);
            assert!(diagonal_action_holds(&b).unwrap());
            assert!(c_action_factors(&b));
        }
    }

    /// Pairs `q, q'` in the same `L^t`-coset, every `x ∈ C^t`.
    #[test]
    fn diagonal_action_exhaustive() {
        let b = d4_rotation_bundle();
        let fp = b.fibered();
        let h = &b.h;
        let power = crate::group::implicit::DirectPower { base: h, t: b.t };
        let lt_gens: Vec<Tuple> = (0..b.t)
            .flat_map(|i| {
                b.l.members().iter().map(move |&x| {
                    let mut v = vec![h.identity(); b.t];
                    v[i] = x;
                    v
                })
            })
            .collect();
        let lt = closure_under(&power, &lt_gens, 1 << 16).unwrap();
        let ct_gens: Vec<Tuple> = lt_gens.iter().filter(|v| v.iter().all(|&x| b.c.contains(x))).cloned().collect();
        let ct = closure_under(&power, &ct_gens, 1 << 16).unwrap();
        assert_eq!(ct.len(), 8);
        for q in fp.elements(1 << 20).unwrap() {
            for m in &lt {
                let q2 = fp.mul(&q, m);
                for x in &ct {
                    assert_eq!(fp.conjugate(x, &q), fp.conjugate(x, &q2));
                }
            }
        }
    }

    /// `Q / L^t ≅ H / L` through the first coordinate.
    #[test]
    fn quotient_by_coordinate_copies() {
        let b = d4_rotation_bundle();
        let fp = b.fibered();
        let h = &b.h;
        let lt: Vec<Tuple> = {
            let gens: Vec<Tuple> = (0..b.t)
                .flat_map(|i| {
                    b.l.members().iter().map(move |&x| {
                        let mut v = vec![h.identity(); b.t];
                        v[i] = x;
                        v
                    })
                })
                .collect();
            closure_under(&fp, &gens, 1 << 16).unwrap()
        };
        let tq = TupleQuotient::new(&fp, lt);
        let mut reps: Vec<Tuple> = fp.elements(1 << 20).unwrap().iter().map(|x| tq.canonical(x)).collect();
        reps.sort();
        reps.dedup();
        let (qq, reps) = materialize(&tq, reps, RepresentationKind::Quotient).unwrap();
        let (hl, proj) = quotient(h, &b.l).unwrap();
        assert_eq!(qq.fingerprint(), hl.fingerprint());
        // the first coordinate induces a bijection of cosets
        let images: std::collections::BTreeSet<Elem> = reps.iter().map(|x| proj.apply(x[0])).collect();
        assert_eq!(images.len(), hl.order());
    }

    #[test]
    fn bundle_data_round_trip() {
        let b = q8_bundle(2);
        let data = b.to_data();
        let json = serde_json::to_string(&data).unwrap();
        let back: BundleData = serde_json::from_str(&json).unwrap();
        assert_eq!(back, data);
        let rebuilt = WitnessBundle::from_data(&back, q8()).unwrap();
        assert_eq!(rebuilt.to_data(), data);
        let mut bad = data.clone();
        bad.certificate.basis = CodeSubspace::full(2, 3).basis;
        assert!(WitnessBundle::from_data(&bad, q8()).is_err());
    }
}
