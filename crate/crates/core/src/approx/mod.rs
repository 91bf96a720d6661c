//! Subspaces `S ≤ F_p^t` with the three approximation properties, their
//! certificates, and the lift `R = S ⊗ C ≤ C^t` for an elementary abelian
//! `p`-group `C`.
//!
//! For a strength parameter `k` the properties are:
//!
//! 1. every codeword has a zero coordinate;
//! 2. for every `J` with `|J| = k`, `S + span{e_j : j ∉ J} = F_p^t`;
//! 3. every such `J` extends to `J' ⊇ J` with `F_p^t = S ⊕ span{e_j : j ∉ J'}`,
//!    and the projection with kernel `S` is recorded as an integer matrix.
//!
//! Coordinates are 0-based throughout.

pub mod linalg;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::implicit::Tuple;
use crate::group::subgroup::Subgroup;
use crate::group::FiniteGroup;
use crate::util::{combinations, is_prime};
use linalg::{rank, rref, select_columns, solve_left};

/// Largest number of codewords property 1 will enumerate.
pub const CODEWORD_LIMIT: u64 = 10_000_000;

/// A subspace of `F_p^t` given by a generator matrix in reduced row-echelon
/// form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeSubspace {
    pub p: u32,
    pub t: usize,
    pub basis: Vec<Vec<u32>>,
}

impl CodeSubspace {
    /// Row-reduces `rows` (any spanning set).
    pub fn new(p: u32, t: usize, rows: &[Vec<u32>]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if rows.iter().any(|r| r.len() != t) {
            return Err(Error::InvalidArgument(format!("rows must have length {t}")));
        }
        let (basis, _) = rref(rows, p);
        Ok(Self { p, t, basis })
    }

    pub fn zero(p: u32, t: usize) -> Self {
        Self { p, t, basis: Vec::new() }
    }

    pub fn full(p: u32, t: usize) -> Self {
        let rows = (0..t).map(|i| (0..t).map(|j| u32::from(i == j)).collect()).collect();
        Self { p, t, basis: rows }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// True when the stored basis is already in reduced row-echelon form.
    pub fn is_canonical(&self) -> bool {
        self.basis.iter().all(|r| r.len() == self.t && r.iter().all(|&x| x < self.p))
            && rref(&self.basis, self.p).0 == self.basis
    }

    pub fn codeword_count(&self) -> u128 {
        (self.p as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX)
    }

    /// The codeword with coefficient vector given by the base-`p` digits of
    /// `index` (first row least significant).
    pub fn codeword(&self, mut index: u64) -> Vec<u32> {
        let mut v = vec![0u32; self.t];
        for row in &self.basis {
            let c = (index % self.p as u64) as u32;
            index /= self.p as u64;
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + c * r) % self.p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows, self.p) == self.dim()
    }

    /// Rank of the projection onto the coordinates `cols`.
    pub fn rank_on(&self, cols: &[usize]) -> usize {
        if self.basis.is_empty() {
            return 0;
        }
        rank(&select_columns(&self.basis, cols), self.p)
    }
}

/// The even-weight code of odd length `t ≥ 3` over `F_2`.
pub fn parity_code(t: usize) -> Result<CodeSubspace> {
    if t % 2 == 0 {
        return Err(Error::EvenLength(t));
    }
    if t < 3 {
        return Err(Error::InvalidArgument(format!("parity code needs t >= 3, got {t}")));
    }
    let rows: Vec<Vec<u32>> = (0..t - 1)
        .map(|i| (0..t).map(|j| u32::from(j == i || j == i + 1)).collect())
        .collect();
    CodeSubspace::new(2, t, &rows)
}

/// Property 1: no codeword has full support.
pub fn verify_property1(code: &CodeSubspace) -> Result<bool> {
    let count = code.codeword_count();
    if count > CODEWORD_LIMIT as u128 {
        return Err(Error::BudgetExceeded { required: count, limit: CODEWORD_LIMIT });
    }
    Ok((0..count as u64).into_par_iter().all(|i| code.codeword(i).contains(&0)))
}

/// Property 1 at the level of `R = S ⊗ C` for `C` of rank `d`: any `d`
/// codewords share a zero coordinate, so every element of `R` has an
/// identity coordinate. For `d = 1` this is [`verify_property1`].
pub fn verify_property1_rank(code: &CodeSubspace, d: usize) -> Result<bool> {
    let count = code.codeword_count();
    if count > CODEWORD_LIMIT as u128 || code.t > 128 {
        return Err(Error::BudgetExceeded { required: count, limit: CODEWORD_LIMIT });
    }
    let zero_mask = |v: &[u32]| v.iter().enumerate().fold(0u128, |m, (i, &x)| if x == 0 { m | 1 << i } else { m });
    let single: std::collections::BTreeSet<u128> = (0..count as u64).map(|i| zero_mask(&code.codeword(i))).collect();
    let mut reach = single.clone();
    for _ in 1..d.max(1) {
        reach = reach.iter().flat_map(|&a| single.iter().map(move |&b| a & b)).collect();
    }
    Ok(!reach.contains(&0))
}

/// Property 2 for every `J` of size `k`: the projection onto `J` is onto.
pub fn verify_property2(code: &CodeSubspace, k: usize) -> bool {
    if k > code.t {
        return false;
    }
    combinations(code.t, k).par_iter().all(|j| code.rank_on(j) == k)
}

/// Complement data for one `J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "Jprime")]
    pub j_prime: Vec<usize>,
    /// `matrix[i][j]` is the coefficient of `e_j` in the image of `e_i`
    /// under the projection with kernel `S` onto `span{e_j : j ∉ J'}`.
    pub matrix: Vec<Vec<u32>>,
}

/// Field order is fixed so serialised certificates diff cleanly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxCertificate {
    pub p: u32,
    pub t: usize,
    pub k: usize,
    pub basis: Vec<Vec<u32>>,
    pub witnesses: Vec<Witness>,
}

impl ApproxCertificate {
    pub fn code(&self) -> CodeSubspace {
        CodeSubspace { p: self.p, t: self.t, basis: self.basis.clone() }
    }
}

/// The projection with kernel `S` onto `span{e_j : j ∉ J'}`, applied to `v`:
/// subtracts the unique codeword agreeing with `v` on `J'`.
fn project(code: &CodeSubspace, j_prime: &[usize], v: &[u32]) -> Option<Vec<u32>> {
    let p = code.p;
    let square = select_columns(&code.basis, j_prime);
    let target: Vec<u32> = j_prime.iter().map(|&j| v[j]).collect();
    let coeffs = if code.dim() == 0 { Vec::new() } else { solve_left(&square, &target, p)? };
    let mut out = v.to_vec();
    for (c, row) in coeffs.iter().zip(&code.basis) {
        for (x, &r) in out.iter_mut().zip(row) {
            *x = (*x + p * p - c * r % p) % p;
        }
    }
    Some(out)
}

fn witness_for(code: &CodeSubspace, j: &[usize]) -> Option<Witness> {
    let d = code.dim();
    if j.len() > d {
        return None;
    }
    let rest: Vec<usize> = (0..code.t).filter(|c| !j.contains(c)).collect();
    for extra in combinations(rest.len(), d - j.len()) {
        let mut j_prime: Vec<usize> = j.iter().copied().chain(extra.iter().map(|&i| rest[i])).collect();
        j_prime.sort_unstable();
        if code.rank_on(&j_prime) != d {
            continue;
        }
        let matrix = (0..code.t)
            .map(|i| {
                let e: Vec<u32> = (0..code.t).map(|c| u32::from(c == i)).collect();
                project(code, &j_prime, &e).expect("square block is invertible")
            })
            .collect();
        return Some(Witness { j: j.to_vec(), j_prime, matrix });
    }
    None
}

/// Property 3: a certificate with the lexicographically first valid `J'`
/// for every `J`, or `None` if some `J` has none.
pub fn verify_property3(code: &CodeSubspace, k: usize) -> Option<ApproxCertificate> {
    if k > code.t {
        return None;
    }
    let witnesses: Option<Vec<Witness>> = combinations(code.t, k).par_iter().map(|j| witness_for(code, j)).collect();
    Some(ApproxCertificate { p: code.p, t: code.t, k, basis: code.basis.clone(), witnesses: witnesses? })
}

/// Outcome of independently re-checking a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub property1: bool,
    pub property2: bool,
    pub property3: bool,
    pub problems: Vec<String>,
}

impl CertificateCheck {
    pub fn all_pass(&self) -> bool {
        self.property1 && self.property2 && self.property3
    }
}

/// Re-checks every claim in a certificate from scratch: the basis, both
/// spanning properties, and each witness matrix against the definition of
/// the projection (`v - π(v) ∈ S`, `π(v)` vanishing on `J'`).
pub fn verify_certificate(cert: &ApproxCertificate) -> Result<CertificateCheck> {
    let code = cert.code();
    let mut problems = Vec::new();
    if !is_prime(cert.p as u64) {
        return Err(Error::InvalidArgument(format!("{} is not prime", cert.p)));
    }
    if !code.is_canonical() {
        problems.push("basis is not in reduced row-echelon form".to_string());
    }
    let property1 = verify_property1(&code)?;
    if !property1 {
        problems.push("some codeword has full support".to_string());
    }
    let property2 = verify_property2(&code, cert.k);
    if !property2 {
        problems.push(format!("some J of size {} is not spanned", cert.k));
    }
    let mut property3 = cert.witnesses.len() == combinations(cert.t, cert.k).len();
    if !property3 {
        problems.push("witness list does not cover every J".to_string());
    }
    let mut seen = std::collections::BTreeSet::new();
    for w in &cert.witnesses {
        let ok = w.j.len() == cert.k
            && seen.insert(w.j.clone())
            && w.j.iter().all(|x| w.j_prime.contains(x))
            && w.j_prime.len() == code.dim()
            && w.j_prime.iter().all(|&x| x < cert.t)
            && code.rank_on(&w.j_prime) == code.dim()
            && w.matrix.len() == cert.t
            && w.matrix.iter().enumerate().all(|(i, row)| {
                let e: Vec<u32> = (0..cert.t).map(|c| u32::from(c == i)).collect();
                let diff: Vec<u32> = e.iter().zip(row).map(|(&a, &b)| (a + cert.p - b % cert.p) % cert.p).collect();
                row.len() == cert.t
                    && row.iter().all(|&x| x < cert.p)
                    && w.j_prime.iter().all(|&j| row[j] == 0)
                    && code.contains(&diff)
            });
        if !ok {
            property3 = false;
            problems.push(format!("witness for J = {:?} is invalid", w.j));
        }
    }
    Ok(CertificateCheck { property1, property2, property3, problems })
}

/// Every subspace of `F_p^t` of dimension `d`, as RREF bases, in order of
/// pivot set and then free entries.
pub fn subspaces_of_dim(p: u32, t: usize, d: usize) -> Vec<CodeSubspace> {
    let mut out = Vec::new();
    for pivots in combinations(t, d) {
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| {
                let piv = pivots.clone();
                (pivots[r] + 1..t).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = (p as u64).pow(free.len() as u32);
        for mut idx in 0..total {
            let mut rows = vec![vec![0u32; t]; d];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            for &(r, c) in &free {
                rows[r][c] = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            out.push(CodeSubspace { p, t, basis: rows });
        }
    }
    out
}

/// Result of [`search_code`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundCode {
    pub t: usize,
    pub code: CodeSubspace,
    pub certificate: ApproxCertificate,
    /// `"parity"` or `"exhaustive"`.
    pub method: String,
}

fn passes(code: &CodeSubspace, k: usize, rank: usize) -> Option<ApproxCertificate> {
    if code.dim() < k || !verify_property2(code, k) {
        return None;
    }
    let p1 = if rank <= 1 { verify_property1(code) } else { verify_property1_rank(code, rank) };
    if !p1.ok()? {
        return None;
    }
    verify_property3(code, k)
}

/// Smallest `t ≤ t_max` with a subspace passing all three properties for
/// `k`. For each `t` in turn: over `F_2` with odd `t` the parity code is
/// tried first; otherwise every RREF generator matrix of dimension
/// `k..t` is enumerated.
pub fn search_code(p: u32, k: usize, t_max: usize) -> Result<FoundCode> {
    search_code_for_rank(p, k, t_max, 1)
}

/// As [`search_code`], with property 1 strengthened to
/// [`verify_property1_rank`] for a `C` of rank `rank`.
pub fn search_code_for_rank(p: u32, k: usize, t_max: usize, rank: usize) -> Result<FoundCode> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    for t in k.max(1)..=t_max {
        if p == 2 && t % 2 == 1 && t >= 3 {
            let code = parity_code(t)?;
            if let Some(certificate) = passes(&code, k, rank) {
                return Ok(FoundCode { t, code, certificate, method: "parity".into() });
            }
        }
        for d in k..t {
            let found = subspaces_of_dim(p, t, d).into_par_iter().find_map_first(|code| {
                let cert = passes(&code, k, rank)?;
                Some((code, cert))
            });
            if let Some((code, certificate)) = found {
                return Ok(FoundCode { t, code, certificate, method: "exhaustive".into() });
            }
        }
    }
    Err(Error::NotFoundWithinBound { p, k, t_max })
}

/// `R = S ⊗ C` inside `C^t`, with `C` elementary abelian of exponent `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedCode {
    /// Elements of `R` as `t`-tuples of elements of the ambient group,
    /// sorted.
    pub elements: Vec<Tuple>,
    /// `F_p`-basis of `C` used for coordinates.
    pub c_basis: Vec<usize>,
    /// Invariance under every elementary endomorphism of `C` applied
    /// diagonally.
    pub end_invariant: bool,
    /// Every element has at least one identity coordinate.
    pub identity_coordinate: bool,
}

/// Coordinates of `x ∈ C` in the basis `c_basis` (by table lookup).
fn c_coordinates(g: &FiniteGroup, c: &Subgroup, basis: &[usize], p: u32) -> Vec<Option<Vec<u32>>> {
    let mut coords = vec![None; g.order()];
    let d = basis.len();
    let total = (p as u64).pow(d as u32);
    for mut idx in 0..total {
        let mut v = vec![0u32; d];
        let mut x = g.identity();
        for (l, &b) in basis.iter().enumerate() {
            v[l] = (idx % p as u64) as u32;
            idx /= p as u64;
            x = g.mul(x, g.pow(b, v[l] as i64));
        }
        coords[x] = Some(v);
    }
    debug_assert!(c.members().iter().all(|&x| coords[x].is_some()));
    coords
}

/// Element of `C` with coordinates `v`.
fn c_element(g: &FiniteGroup, basis: &[usize], v: &[u32]) -> usize {
    basis.iter().zip(v).fold(g.identity(), |acc, (&b, &e)| g.mul(acc, g.pow(b, e as i64)))
}

pub fn lift_to_r(code: &CodeSubspace, g: &FiniteGroup, c: &Subgroup) -> Result<LiftedCode> {
    let p = code.p;
    let exponent = c.members().iter().map(|&x| g.element_order(x)).fold(1, num_integer::lcm);
    if !c.is_trivial() && exponent != p as usize {
        return Err(Error::ExponentMismatch { expected: p, found: exponent });
    }
    let abelian = c.generators().iter().all(|&x| c.generators().iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
    if !abelian {
        return Err(Error::NotAbelian);
    }
    let c_basis = crate::abelian::cyclic_basis(g, c)?;
    let d = c_basis.len();
    let t = code.t;
    // each element of R is a d-tuple of codewords: coordinate j of R is the
    // element of C with coordinates (s^1_j, ..., s^d_j)
    let words: Vec<Vec<u32>> = (0..code.codeword_count() as u64).map(|i| code.codeword(i)).collect();
    let mut elements = Vec::new();
    let total = (words.len() as u64).pow(d as u32);
    for mut idx in 0..total {
        let picks: Vec<&Vec<u32>> = (0..d)
            .map(|_| {
                let w = &words[(idx % words.len() as u64) as usize];
                idx /= words.len() as u64;
                w
            })
            .collect();
        let tuple: Tuple = (0..t)
            .map(|j| {
                let v: Vec<u32> = picks.iter().map(|w| w[j]).collect();
                c_element(g, &c_basis, &v)
            })
            .collect();
        elements.push(tuple);
    }
    elements.sort();
    elements.dedup();
    let coords = c_coordinates(g, c, &c_basis, p);
    let end_invariant = is_end_invariant(g, &c_basis, &coords, &elements, p);
    let identity_coordinate = elements.iter().all(|r| r.contains(&g.identity()));
    Ok(LiftedCode { elements, c_basis, end_invariant, identity_coordinate })
}

/// Applies every matrix unit `E_ab` (coordinate `b` moved to position `a`,
/// all else zero) coordinatewise and checks the image stays in the set.
/// Matrix units generate the endomorphism ring of `C`.
pub fn is_end_invariant(g: &FiniteGroup, basis: &[usize], coords: &[Option<Vec<u32>>], set: &[Tuple], p: u32) -> bool {
    let d = basis.len();
    let lookup: std::collections::HashSet<&Tuple> = set.iter().collect();
    for a in 0..d {
        for b in 0..d {
            for r in set {
                let image: Tuple = r
                    .iter()
                    .map(|&x| {
                        let v = coords[x].as_ref().expect("coordinate lies in C");
                        let mut w = vec![0u32; d];
                        w[a] = v[b] % p;
                        c_element(g, basis, &w)
                    })
                    .collect();
                if !lookup.contains(&image) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::implicit::{closure_under, DirectPower};
    use crate::group::{abelian, cyclic};

    #[test]
    fn parity_code_examples() {
        let c3 = parity_code(3).unwrap();
        assert_eq!(c3.basis, vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(parity_code(5).unwrap().dim(), 4);
        assert_eq!(parity_code(4), Err(Error::EvenLength(4)));
    }

    #[test]
    fn property1_examples() {
        assert!(verify_property1(&CodeSubspace::zero(2, 3)).unwrap());
        assert!(verify_property1(&parity_code(3).unwrap()).unwrap());
        assert!(!verify_property1(&CodeSubspace::full(2, 3)).unwrap());
    }

    #[test]
    fn property2_examples() {
        assert!(verify_property2(&parity_code(3).unwrap(), 2));
        assert!(!verify_property2(&CodeSubspace::zero(2, 3), 1));
        assert!(verify_property2(&parity_code(7).unwrap(), 6));
    }

    #[test]
    fn property3_examples() {
        let cert = verify_property3(&parity_code(3).unwrap(), 2).unwrap();
        let w = cert.witnesses.iter().find(|w| w.j == vec![0, 1]).unwrap();
        assert_eq!(w.j_prime, vec![0, 1]);
        // e_0 = (e_0 + e_2) + e_2
        assert_eq!(w.matrix[0], vec![0, 0, 1]);
        assert_eq!(w.matrix[2], vec![0, 0, 1]);
        let zero = verify_property3(&CodeSubspace::zero(2, 3), 0).unwrap();
        assert_eq!(zero.witnesses.len(), 1);
        assert!(zero.witnesses[0].j_prime.is_empty());
        assert_eq!(zero.witnesses[0].matrix[1], vec![0, 1, 0]);
        let cert7 = verify_property3(&parity_code(7).unwrap(), 6).unwrap();
        assert_eq!(cert7.witnesses.len(), 7);
        assert!(verify_certificate(&cert7).unwrap().all_pass());
    }

    #[test]
    fn search_small_cases() {
        let f = search_code(2, 2, 10).unwrap();
        assert_eq!((f.t, f.method.as_str()), (3, "parity"));
        let f = search_code(2, 6, 10).unwrap();
        assert_eq!(f.t, 7);
        let f = search_code(3, 1, 6).unwrap();
        assert!(verify_certificate(&f.certificate).unwrap().all_pass());
        assert_eq!(f.t, 4);
        assert!(matches!(search_code(2, 3, 4), Err(Error::NotFoundWithinBound { .. })));
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let mut cert = verify_property3(&parity_code(5).unwrap(), 4).unwrap();
        cert.witnesses[0].matrix[0][4] ^= 1;
        assert!(!verify_certificate(&cert).unwrap().property3);
        let mut full = cert.clone();
        full.basis = CodeSubspace::full(2, 5).basis;
        assert!(!verify_certificate(&full).unwrap().property1);
    }

    #[test]
    fn lift_orders() {
        let z2 = cyclic(2).unwrap();
        let c = Subgroup::whole(&z2);
        let r = lift_to_r(&CodeSubspace::zero(2, 3), &z2, &c).unwrap();
        assert_eq!(r.elements, vec![vec![0, 0, 0]]);
        let r = lift_to_r(&parity_code(3).unwrap(), &z2, &c).unwrap();
        assert_eq!(r.elements.len(), 4);
        assert!(r.end_invariant);
        let v = abelian(&[2, 2]).unwrap();
        let r = lift_to_r(&parity_code(3).unwrap(), &v, &Subgroup::whole(&v)).unwrap();
        assert_eq!(r.elements.len(), 16);
        assert!(r.end_invariant);
        // (110, 011) read as a pair covers every coordinate of C^3
        assert!(!r.identity_coordinate);
        assert!(!verify_property1_rank(&parity_code(3).unwrap(), 2).unwrap());
        let r = lift_to_r(&parity_code(5).unwrap(), &z2, &c).unwrap();
        assert!(r.identity_coordinate);
        let z4 = cyclic(4).unwrap();
        assert!(matches!(lift_to_r(&parity_code(3).unwrap(), &z4, &Subgroup::whole(&z4)), Err(Error::ExponentMismatch { .. })));
    }

    #[test]
    fn rank_property1_matches_lift() {
        let v = abelian(&[2, 2]).unwrap();
        let c = Subgroup::whole(&v);
        for t in 1..=4 {
            for dim in 0..=t {
                for code in subspaces_of_dim(2, t, dim) {
                    let lifted = lift_to_r(&code, &v, &c).unwrap();
                    assert_eq!(lifted.identity_coordinate, verify_property1_rank(&code, 2).unwrap());
                    assert_eq!(verify_property1(&code).unwrap(), verify_property1_rank(&code, 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn projection_on_random_vectors() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(crate::util::DEFAULT_SEED);
        let found = search_code(3, 1, 6).unwrap();
        for cert in [found.certificate, verify_property3(&parity_code(5).unwrap(), 4).unwrap()] {
            let code = cert.code();
            for w in &cert.witnesses {
                for _ in 0..20 {
                    let v: Vec<u32> = (0..cert.t).map(|_| rng.gen_range(0..cert.p)).collect();
                    let pi: Vec<u32> = (0..cert.t)
                        .map(|j| (0..cert.t).map(|i| v[i] * w.matrix[i][j]).sum::<u32>() % cert.p)
                        .collect();
                    assert!(w.j_prime.iter().all(|&j| pi[j] == 0));
                    let diff: Vec<u32> = v.iter().zip(&pi).map(|(&a, &b)| (a + cert.p - b) % cert.p).collect();
                    assert!(code.contains(&diff));
                }
            }
        }
    }

    /// Brute force over all subgroups of `C^t`: the End-invariant ones are
    /// exactly the lifted subspaces.
    #[test]
    fn end_invariant_subgroups_are_lifted_codes() {
        for d in 1..=2usize {
            let c_group = abelian(&vec![2; d]).unwrap();
            let c = Subgroup::whole(&c_group);
            for t in 1..=3usize {
                let mut lifted = std::collections::BTreeSet::new();
                for dim in 0..=t {
                    for code in subspaces_of_dim(2, t, dim) {
                        lifted.insert(lift_to_r(&code, &c_group, &c).unwrap().elements);
                    }
                }
                let power = DirectPower { base: &c_group, t };
                let all: Vec<Tuple> = {
                    let gens: Vec<Tuple> = (0..t)
                        .flat_map(|j| {
                            c.members().iter().map(move |&x| {
                                let mut v = vec![0; t];
                                v[j] = x;
                                v
                            })
                        })
                        .collect();
                    closure_under(&power, &gens, 1 << 12).unwrap()
                };
                let basis = crate::abelian::cyclic_basis(&c_group, &c).unwrap();
                let coords = c_coordinates(&c_group, &c, &basis, 2);
                // enumerate subgroups of the elementary abelian group C^t via
                // closures of element subsets built incrementally
                let mut subgroups = std::collections::BTreeSet::new();
                let mut frontier = vec![vec![vec![0usize; t]]];
                subgroups.insert(vec![vec![0usize; t]]);
                while let Some(s) = frontier.pop() {
                    for x in &all {
                        if s.binary_search(x).is_ok() {
                            continue;
                        }
                        let mut gens = s.clone();
                        gens.push(x.clone());
                        let next = closure_under(&power, &gens, 1 << 12).unwrap();
                        if subgroups.insert(next.clone()) {
                            frontier.push(next);
                        }
                    }
                }
                let invariant: std::collections::BTreeSet<Vec<Tuple>> =
                    subgroups.into_iter().filter(|s| is_end_invariant(&c_group, &basis, &coords, s, 2)).collect();
                assert_eq!(invariant, lifted, "d = {d}, t = {t}");
            }
        }
    }
}
