use super::hom::Homomorphism;
use super::subgroup::{is_normal, Subgroup};
use super::{FiniteGroup, RepresentationKind};
use crate::error::{Error, Result};

/// Coset group `G/N` with its canonical projection.
///
/// Each coset is keyed by its smallest element index and cosets are ordered
/// by that key, so the identity coset is first whenever the identity of `G`
/// has the smallest index.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Homomorphism)> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let rep: Vec<usize> = g
        .elements()
        .map(|x| n.members().iter().map(|&m| g.mul(x, m)).min().unwrap())
        .collect();
    let mut reps = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut index = vec![usize::MAX; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        index[r] = i;
    }
    let q = FiniteGroup::from_law(reps.len(), RepresentationKind::Quotient, |a, b| {
        index[rep[g.mul(reps[a], reps[b])]]
    })?;
    let q = match g.names() {
        Some(names) => q.with_names(reps.iter().map(|&r| format!("[{}]", names[r])).collect()),
        None => q,
    };
    let map: Vec<usize> = g.elements().map(|x| index[rep[x]]).collect();
    let whole = Subgroup::whole(g);
    let proj = Homomorphism::from_map(map, whole.generators().to_vec());
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::{q8, s3};
    use crate::group::subgroup::{center, closure};

    #[test]
    fn trivial_and_full_quotients() {
        let q = q8();
        let (g1, p1) = quotient(&q, &Subgroup::trivial(&q)).unwrap();
        assert_eq!(g1.order(), 8);
        assert!(q.elements().all(|x| p1.apply(x) == x));
        let (g2, _) = quotient(&q, &Subgroup::whole(&q)).unwrap();
        assert_eq!(g2.order(), 1);
    }

    #[test]
    fn q8_mod_center_is_klein_four() {
        let q = q8();
        let z = center(&q);
        let (v, proj) = quotient(&q, &z).unwrap();
        assert_eq!(v.order(), 4);
        assert!(v.elements().all(|x| v.mul(x, x) == v.identity()));
        assert!(proj.is_homomorphism(&q, &v));
        assert_eq!(proj.kernel(&q).members(), z.members());
        assert_eq!(proj.image(&v).order(), 4);
    }

    #[test]
    fn non_normal_rejected() {
        let s = s3();
        let t = s.elements().find(|&x| s.element_order(x) == 2).unwrap();
        assert_eq!(quotient(&s, &closure(&s, &[t])).unwrap_err(), Error::NotNormal);
    }
}
