use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{mixed_radix_digits, mixed_radix_index, FiniteGroup, GroupLaw, RepresentationKind, MAX_TABLE_ORDER};
use crate::util::is_prime;

/// `T(a, b, c)`: the unitriangular block matrix with row vector `a`, column
/// vector `b` and corner `c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HeisElement {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: i64,
}

impl HeisElement {
    pub fn new(a: Vec<i64>, b: Vec<i64>, c: i64) -> Self {
        assert_eq!(a.len(), b.len());
        Self { a, b, c }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// The `(n + 2) x (n + 2)` matrix form.
    pub fn to_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        let size = n + 2;
        let mut m = vec![vec![0; size]; size];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for j in 0..n {
            m[0][1 + j] = self.a[j];
            m[1 + j][n + 1] = self.b[j];
        }
        m[0][n + 1] = self.c;
        m
    }
}

/// The Heisenberg law over `Z` (`modulus = None`) or `Z/q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeisLaw {
    pub n: usize,
    pub modulus: Option<i64>,
}

impl HeisLaw {
    fn reduce(&self, v: i64) -> i64 {
        match self.modulus {
            Some(q) => v.rem_euclid(q),
            None => v,
        }
    }

    fn dot(a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }
}

impl GroupLaw for HeisLaw {
    type Elem = HeisElement;

    fn identity(&self) -> HeisElement {
        HeisElement::new(vec![0; self.n], vec![0; self.n], 0)
    }

    fn mul(&self, x: &HeisElement, y: &HeisElement) -> HeisElement {
        let a = x.a.iter().zip(&y.a).map(|(p, q)| self.reduce(p + q)).collect();
        let b = x.b.iter().zip(&y.b).map(|(p, q)| self.reduce(p + q)).collect();
        let c = self.reduce(x.c + y.c + Self::dot(&x.a, &y.b));
        HeisElement { a, b, c }
    }

    fn inv(&self, x: &HeisElement) -> HeisElement {
        let a = x.a.iter().map(|v| self.reduce(-v)).collect();
        let b = x.b.iter().map(|v| self.reduce(-v)).collect();
        let c = self.reduce(-x.c + Self::dot(&x.a, &x.b));
        HeisElement { a, b, c }
    }
}

/// Table index of `T(a, b, c)` in [`heis_group`]: mixed radix over
/// `(a_1..a_n, b_1..b_n, c)`, first digit most significant.
pub fn heis_index(x: &HeisElement, q: u64) -> usize {
    let digits: Vec<usize> = x.a.iter().chain(&x.b).chain([&x.c]).map(|&v| v.rem_euclid(q as i64) as usize).collect();
    mixed_radix_index(&digits, &vec![q as usize; digits.len()])
}

pub fn heis_element(index: usize, n: usize, q: u64) -> HeisElement {
    let d = mixed_radix_digits(index, &vec![q as usize; 2 * n + 1]);
    let v: Vec<i64> = d.into_iter().map(|x| x as i64).collect();
    HeisElement::new(v[..n].to_vec(), v[n..2 * n].to_vec(), v[2 * n])
}

/// `H_n(F_q)` for prime `q`, of order `q^(2n+1)`.
pub fn heis_group(n: usize, q: u64) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("Heisenberg dimension n must be at least 1".into()));
    }
    if !is_prime(q) {
        return Err(Error::InvalidArgument(format!("q = {q} is not prime")));
    }
    let order = (q as u128).checked_pow(2 * n as u32 + 1).unwrap_or(u128::MAX);
    if order > MAX_TABLE_ORDER as u128 {
        return Err(Error::BudgetExceeded { required: order, limit: MAX_TABLE_ORDER as u64 });
    }
    let law = HeisLaw { n, modulus: Some(q as i64) };
    let elems: Vec<HeisElement> = (0..order as usize).map(|i| heis_element(i, n, q)).collect();
    let g = FiniteGroup::from_law(order as usize, RepresentationKind::MatrixHeisenberg, |x, y| {
        heis_index(&law.mul(&elems[x], &elems[y]), q)
    })?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::subgroup::{center, commutator_subgroup};

    fn matmul(x: &[Vec<i64>], y: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = x.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect()).collect()
    }

    #[test]
    fn law_matches_matrix_product() {
        let law = HeisLaw { n: 2, modulus: None };
        let x = HeisElement::new(vec![1, -2], vec![3, 0], 5);
        let y = HeisElement::new(vec![-4, 1], vec![2, 7], -1);
        assert_eq!(law.mul(&x, &y).to_matrix(), matmul(&x.to_matrix(), &y.to_matrix()));
        assert_eq!(law.mul(&x, &law.inv(&x)), law.identity());
    }

    #[test]
    fn small_heisenberg_groups() {
        let h = heis_group(1, 2).unwrap();
        assert_eq!(h.order(), 8);
        assert_eq!(h.exponent(), 4);
        assert!(!h.is_abelian());
        assert_eq!(h.fingerprint(), crate::group::catalog::d4().fingerprint());
        let h3 = heis_group(1, 3).unwrap();
        assert_eq!(center(&h3).order(), 3);
        assert_eq!(commutator_subgroup(&h3).members(), center(&h3).members());
        assert!(heis_group(3, 5).is_err());
    }

    #[test]
    fn commutator_of_basis_elements() {
        let law = HeisLaw { n: 1, modulus: Some(5) };
        let x = HeisElement::new(vec![2], vec![0], 0);
        let y = HeisElement::new(vec![0], vec![3], 0);
        assert_eq!(law.commutator(&x, &y), HeisElement::new(vec![0], vec![0], 1));
    }
}
