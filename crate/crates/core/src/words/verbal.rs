//! Verbal images, equations over table groups and bounded closedness checks.

use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::enumerate_word_classes;
use super::{Symbol, Syllable, Word};
use crate::error::{Error, Result};
use crate::group::hom::{relative_generators, Homomorphism};
use crate::group::subgroup::Subgroup;
use crate::group::{Elem, FiniteGroup};

/// Default cap on word evaluations for exact computations.
pub const DEFAULT_EVAL_BUDGET: u64 = 100_000_000;

fn tuple_count(domain: usize, s: usize) -> u128 {
    (domain as u128).checked_pow(s as u32).unwrap_or(u128::MAX)
}

fn check_budget(required: u128, budget: u64) -> Result<()> {
    if required > budget as u128 {
        Err(Error::BudgetExceeded { required, limit: budget })
    } else {
        Ok(())
    }
}

/// Calls `f` on every tuple of `domain^s` whose first coordinate is
/// `first`, in lexicographic order; stops early when `f` returns `true`.
fn for_tuples_with_first(domain: &[Elem], s: usize, first: Elem, f: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
    let mut tuple = vec![first; s];
    let mut idx = vec![0usize; s];
    if s <= 1 {
        return f(&tuple);
    }
    for slot in tuple.iter_mut().skip(1) {
        *slot = domain[0];
    }
    loop {
        if f(&tuple) {
            return true;
        }
        let mut pos = s - 1;
        loop {
            idx[pos] += 1;
            if idx[pos] < domain.len() {
                tuple[pos] = domain[idx[pos]];
                break;
            }
            idx[pos] = 0;
            tuple[pos] = domain[0];
            pos -= 1;
            if pos == 0 {
                return false;
            }
        }
    }
}

/// `{ w(d_1, ..., d_s) : d_i ∈ domain }` as a bitset over `g`.
fn image_over(g: &FiniteGroup, w: &Word, domain: &[Elem], coeffs: &[Elem]) -> FixedBitSet {
    let s = w.num_vars();
    let empty = || FixedBitSet::with_capacity(g.order());
    if s == 0 {
        let mut b = empty();
        b.insert(w.eval_unchecked(g, &[], coeffs));
        return b;
    }
    domain
        .par_iter()
        .map(|&first| {
            let mut b = empty();
            for_tuples_with_first(domain, s, first, &mut |t| {
                b.insert(w.eval_unchecked(g, t, coeffs));
                false
            });
            b
        })
        .reduce(empty, |mut a, b| {
            a.union_with(&b);
            a
        })
}

/// Lexicographically first tuple over `domain` with `w(tuple) = target`.
fn first_solution(g: &FiniteGroup, w: &Word, domain: &[Elem], coeffs: &[Elem], target: Elem) -> Option<Vec<Elem>> {
    let s = w.num_vars();
    if s == 0 {
        return (w.eval_unchecked(g, &[], coeffs) == target).then(Vec::new);
    }
    domain.par_iter().find_map_first(|&first| {
        let mut found = None;
        for_tuples_with_first(domain, s, first, &mut |t| {
            if w.eval_unchecked(g, t, coeffs) == target {
                found = Some(t.to_vec());
                true
            } else {
                false
            }
        });
        found
    })
}

/// A verbal image, exact or sampled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerbalImage {
    pub elements: Vec<Elem>,
    /// `false` when only a sample of assignments was evaluated, in which
    /// case `elements` is a subset of the true image.
    pub exact: bool,
    pub evaluations: u64,
}

impl VerbalImage {
    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Exact image of the word map `G^s -> G`.
pub fn verbal_image(g: &FiniteGroup, w: &Word, budget: u64) -> Result<VerbalImage> {
    if w.has_coefficients() {
        return Err(Error::HasCoefficients);
    }
    let required = tuple_count(g.order(), w.num_vars());
    check_budget(required, budget)?;
    let domain: Vec<Elem> = g.elements().collect();
    let bits = image_over(g, w, &domain, &[]);
    Ok(VerbalImage { elements: bits.ones().collect(), exact: true, evaluations: required as u64 })
}

/// Image restricted to `samples` random assignments drawn with a fixed seed.
pub fn verbal_image_sampled(g: &FiniteGroup, w: &Word, samples: u64, seed: u64) -> Result<VerbalImage> {
    if w.has_coefficients() {
        return Err(Error::HasCoefficients);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = w.num_vars();
    let mut bits = FixedBitSet::with_capacity(g.order());
    let mut tuple = vec![0; s];
    for _ in 0..samples {
        for x in tuple.iter_mut() {
            *x = rng.gen_range(0..g.order());
        }
        bits.insert(w.eval_unchecked(g, &tuple, &[]));
    }
    Ok(VerbalImage { elements: bits.ones().collect(), exact: false, evaluations: samples })
}

/// Lexicographically first solution of `w(x) = h` in `g` (variables ranging
/// over all of `g` in index order), or `None` after an exhaustive search.
pub fn solve_equation(g: &FiniteGroup, w: &Word, coeffs: &[Elem], h: Elem, budget: u64) -> Result<Option<Vec<Elem>>> {
    w.evaluate(g, &vec![g.identity(); w.num_vars()], coeffs)?;
    check_budget(tuple_count(g.order(), w.num_vars()), budget)?;
    let domain: Vec<Elem> = g.elements().collect();
    Ok(first_solution(g, w, &domain, coeffs, h))
}

/// An equation `w(x) = h` with `h ∈ H` solvable in `G` but not in `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub word: String,
    pub h: Elem,
    #[serde(rename = "solvable_in_G")]
    pub solvable_in_g: bool,
    #[serde(rename = "solvable_in_H")]
    pub solvable_in_h: bool,
    /// Lexicographically first solution in `G`.
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosednessReport {
    pub max_len: usize,
    pub max_vars: usize,
    pub words_checked: usize,
    pub evaluations: u64,
    pub counterexamples: Vec<Counterexample>,
}

/// Bounded verbal closedness: for every class representative of length at
/// most `max_len` in at most `max_vars` variables and every `h ∈ H`,
/// solvability of `w = h` in `G` implies solvability in `H`.
pub fn verbally_closed_bounded(
    g: &FiniteGroup,
    h: &Subgroup,
    max_len: usize,
    max_vars: usize,
    budget: u64,
) -> Result<ClosednessReport> {
    let words = enumerate_word_classes(max_len, max_vars, max_len >= 6);
    let mut report = check_words(g, h, &words, budget)?;
    report.max_len = max_len;
    report.max_vars = max_vars;
    Ok(report)
}

/// Same as [`verbally_closed_bounded`] over an explicit word list.
pub fn check_words(g: &FiniteGroup, h: &Subgroup, words: &[Word], budget: u64) -> Result<ClosednessReport> {
    if words.iter().any(Word::has_coefficients) {
        return Err(Error::HasCoefficients);
    }
    let required: u128 = words
        .iter()
        .map(|w| tuple_count(g.order(), w.num_vars()) + tuple_count(h.order(), w.num_vars()))
        .sum();
    check_budget(required, budget)?;
    let all: Vec<Elem> = g.elements().collect();
    let mut counterexamples = Vec::new();
    for w in words {
        let in_g = image_over(g, w, &all, &[]);
        let in_h = image_over(g, w, h.members(), &[]);
        for &x in h.members() {
            if in_g.contains(x) && !in_h.contains(x) {
                let witness = first_solution(g, w, &all, &[], x).expect("x is in the image");
                counterexamples.push(Counterexample {
                    word: w.to_string(),
                    h: x,
                    solvable_in_g: true,
                    solvable_in_h: false,
                    witness,
                });
            }
        }
    }
    Ok(ClosednessReport {
        max_len: words.iter().map(Word::len).max().unwrap_or(0),
        max_vars: words.iter().map(Word::num_vars).max().unwrap_or(0),
        words_checked: words.len(),
        evaluations: required as u64,
        counterexamples,
    })
}

/// Equations `w_i = 1` with coefficient tags resolved through `coeffs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationSystem {
    pub equations: Vec<Word>,
    pub coeffs: Vec<Elem>,
}

impl EquationSystem {
    pub fn new(equations: Vec<Word>, coeffs: Vec<Elem>) -> Self {
        Self { equations, coeffs }
    }

    /// Turns `w = h` into `w h^-1 = 1` by adding `h` as a coefficient.
    pub fn push_with_rhs(&mut self, w: Word, h: Elem) {
        let tag = self.coeffs.len() as u32;
        self.coeffs.push(h);
        self.equations.push(w.concat(&Word::power(Symbol::Coeff(tag), -1)));
    }

    pub fn num_vars(&self) -> usize {
        self.equations.iter().map(Word::num_vars).max().unwrap_or(0)
    }

    pub fn is_solution(&self, g: &FiniteGroup, x: &[Elem]) -> bool {
        self.equations.iter().all(|w| w.eval_unchecked(g, x, &self.coeffs) == g.identity())
    }
}

/// Lexicographically first solution with every variable in `within`.
/// Assignments are built variable by variable, and each equation is checked
/// as soon as all of its variables are set.
pub fn solve_system(g: &FiniteGroup, system: &EquationSystem, within: &Subgroup, budget: u64) -> Result<Option<Vec<Elem>>> {
    for w in &system.equations {
        w.evaluate(g, &vec![g.identity(); w.num_vars()], &system.coeffs)?;
    }
    let s = system.num_vars();
    check_budget(tuple_count(within.order(), s), budget)?;
    let mut by_last: Vec<Vec<&Word>> = vec![Vec::new(); s.max(1)];
    for w in &system.equations {
        by_last[w.num_vars().saturating_sub(1)].push(w);
    }
    let closed_ok = by_last[0].iter().all(|w| w.num_vars() > 0 || w.eval_unchecked(g, &[], &system.coeffs) == g.identity());
    if !closed_ok {
        return Ok(None);
    }
    if s == 0 {
        return Ok(Some(Vec::new()));
    }
    let domain = within.members();
    let found = domain.par_iter().find_map_first(|&first| {
        let mut x = vec![first; s];
        dfs_system(g, system, &by_last, domain, &mut x, 0).then_some(x)
    });
    Ok(found)
}

fn dfs_system(g: &FiniteGroup, sys: &EquationSystem, by_last: &[Vec<&Word>], domain: &[Elem], x: &mut [Elem], level: usize) -> bool {
    let ok = by_last[level].iter().all(|w| w.eval_unchecked(g, x, &sys.coeffs) == g.identity());
    if !ok {
        return false;
    }
    if level + 1 == x.len() {
        return true;
    }
    for &d in domain {
        x[level + 1] = d;
        if dfs_system(g, sys, by_last, domain, x, level + 1) {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub solvable_in_g: bool,
    pub solvable_in_h: bool,
    pub witness_g: Option<Vec<Elem>>,
    pub witness_h: Option<Vec<Elem>>,
}

/// Solves the system in `G` and, if solvable there, in `H`.
pub fn algebraically_closed_probe(g: &FiniteGroup, h: &Subgroup, system: &EquationSystem, budget: u64) -> Result<ProbeReport> {
    let witness_g = solve_system(g, system, &Subgroup::whole(g), budget)?;
    let witness_h = match witness_g {
        Some(_) => solve_system(g, system, h, budget)?,
        None => None,
    };
    Ok(ProbeReport { solvable_in_g: witness_g.is_some(), solvable_in_h: witness_h.is_some(), witness_g, witness_h })
}

/// A system whose solutions in `H` are exactly the retractions `G -> H`:
/// `G` is generated by the generators of `H` (coefficients) and `extra`
/// (variables), and the equations are the relators read off the Cayley
/// graph of `G` along a breadth-first spanning tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractionSystem {
    pub system: EquationSystem,
    pub h_generators: Vec<Elem>,
    pub extra: Vec<Elem>,
}

impl RetractionSystem {
    /// The retraction determined by a solution in `H`.
    pub fn to_retraction(&self, g: &FiniteGroup, solution: &[Elem]) -> Option<Homomorphism> {
        let gens: Vec<Elem> = self.h_generators.iter().chain(&self.extra).copied().collect();
        let imgs: Vec<Elem> = self.h_generators.iter().chain(solution).copied().collect();
        Homomorphism::extend(g, &gens, &imgs, g)
    }
}

pub fn retraction_system(g: &FiniteGroup, h: &Subgroup) -> RetractionSystem {
    let (fixed, extra) = relative_generators(g, h);
    let symbols: Vec<Symbol> = (0..fixed.len() as u32)
        .map(Symbol::Coeff)
        .chain((0..extra.len() as u8).map(Symbol::Var))
        .collect();
    let gens: Vec<Elem> = fixed.iter().chain(&extra).copied().collect();
    let mut path: Vec<Option<Word>> = vec![None; g.order()];
    path[g.identity()] = Some(Word::empty());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &sym) in gens.iter().zip(&symbols) {
            let y = g.mul(x, s);
            if path[y].is_none() {
                let w = path[x].as_ref().unwrap().concat(&Word::power(sym, 1));
                path[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    let mut relators = BTreeSet::new();
    for x in g.elements() {
        for (&s, &sym) in gens.iter().zip(&symbols) {
            let y = g.mul(x, s);
            let ux = path[x].as_ref().unwrap();
            let uy = path[y].as_ref().unwrap();
            let r = Word::from_syllables(
                ux.syllables()
                    .iter()
                    .copied()
                    .chain([Syllable { symbol: sym, exp: 1 }])
                    .chain(uy.inverse().syllables().iter().copied()),
            );
            if !r.is_empty() {
                relators.insert(r);
            }
        }
    }
    let system = EquationSystem::new(relators.into_iter().collect(), fixed.clone());
    RetractionSystem { system, h_generators: fixed, extra }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::q8;
    use crate::group::hom::{find_retraction, is_retraction, DEFAULT_NODE_LIMIT};
    use crate::group::subgroup::{center, centralizer, closure};
    use crate::group::{abelian, cyclic, direct_product};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn image_examples() {
        let q = q8();
        assert_eq!(verbal_image(&q, &w("x1"), DEFAULT_EVAL_BUDGET).unwrap().elements.len(), 8);
        let sq = verbal_image(&q, &w("x1^2"), DEFAULT_EVAL_BUDGET).unwrap();
        let names: Vec<String> = sq.elements.iter().map(|&x| q.name(x)).collect();
        assert_eq!(names, vec!["1", "-1"]);
        let a = abelian(&[2, 4]).unwrap();
        assert_eq!(verbal_image(&a, &w("[x1,x2]"), DEFAULT_EVAL_BUDGET).unwrap().elements, vec![0]);
        assert!(matches!(verbal_image(&q, &w("x1 x2 x3"), 100), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn sampled_image_is_subset() {
        let q = q8();
        let exact = verbal_image(&q, &w("[x1,x2] x1^2"), DEFAULT_EVAL_BUDGET).unwrap();
        let sample = verbal_image_sampled(&q, &w("[x1,x2] x1^2"), 20, 7).unwrap();
        assert!(!sample.exact);
        assert!(sample.elements.iter().all(|&x| exact.contains(x)));
    }

    #[test]
    fn equation_examples() {
        let q = q8();
        let e = |s: &str| q.element_by_name(s).unwrap();
        assert_eq!(solve_equation(&q, &w("x1"), &[], e("j"), DEFAULT_EVAL_BUDGET).unwrap(), Some(vec![e("j")]));
        assert_eq!(solve_equation(&q, &w("x1^2"), &[], e("-1"), DEFAULT_EVAL_BUDGET).unwrap(), Some(vec![e("i")]));
        assert_eq!(solve_equation(&q, &w("x1^2"), &[], e("i"), DEFAULT_EVAL_BUDGET).unwrap(), None);
        // x1 #a x1^-1 = #a^-1 with a = i: conjugating i to -i
        let sol = solve_equation(&q, &w("x1 #a x1^-1"), &[e("i")], e("-i"), DEFAULT_EVAL_BUDGET).unwrap().unwrap();
        assert_eq!(q.name(sol[0]), "j");
    }

    #[test]
    fn closedness_examples() {
        let q = q8();
        let r = verbally_closed_bounded(&q, &Subgroup::whole(&q), 4, 2, DEFAULT_EVAL_BUDGET).unwrap();
        assert!(r.counterexamples.is_empty());
        let g = direct_product(&q, &cyclic(2).unwrap()).unwrap();
        let factor = closure(&g, &(0..8).map(|x| 2 * x).collect::<Vec<_>>());
        assert_eq!(factor.order(), 8);
        let r = verbally_closed_bounded(&g, &factor, 4, 2, DEFAULT_EVAL_BUDGET).unwrap();
        assert!(r.counterexamples.is_empty());
        // Z(Q8) is not verbally closed: x1^2 = -1 has no solution in the center
        let r = verbally_closed_bounded(&q, &center(&q), 2, 1, DEFAULT_EVAL_BUDGET).unwrap();
        let found: Vec<(String, String)> = r.counterexamples.iter().map(|c| (c.word.clone(), q.name(c.h))).collect();
        assert_eq!(found, vec![("x1^2".to_string(), "-1".to_string()), ("x1^-2".to_string(), "-1".to_string())]);
        assert_eq!(q.name(r.counterexamples[0].witness[0]), "i");
    }

    #[test]
    fn centralizer_systems_match_centralizers() {
        let q = q8();
        let e = |s: &str| q.element_by_name(s).unwrap();
        let mut sys = EquationSystem::new(vec![w("[x1,#a]")], vec![e("i")]);
        let all = Subgroup::whole(&q);
        let sols: Vec<Elem> = q.elements().filter(|&x| sys.is_solution(&q, &[x])).collect();
        assert_eq!(sols, centralizer(&q, &[e("i")]).members());
        sys.push_with_rhs(w("x1^2"), e("-1"));
        assert_eq!(solve_system(&q, &sys, &all, DEFAULT_EVAL_BUDGET).unwrap(), Some(vec![e("i")]));
        let probe = algebraically_closed_probe(&q, &center(&q), &sys, DEFAULT_EVAL_BUDGET).unwrap();
        assert!(probe.solvable_in_g && !probe.solvable_in_h);
    }

    #[test]
    fn retraction_system_on_non_retract() {
        let z4 = cyclic(4).unwrap();
        let h = closure(&z4, &[2]);
        let rs = retraction_system(&z4, &h);
        assert!(rs.system.is_solution(&z4, &rs.extra));
        let probe = algebraically_closed_probe(&z4, &h, &rs.system, DEFAULT_EVAL_BUDGET).unwrap();
        assert!(probe.solvable_in_g);
        assert!(!probe.solvable_in_h);
    }

    #[test]
    fn retraction_system_solutions_are_retractions() {
        let g = direct_product(&q8(), &cyclic(2).unwrap()).unwrap();
        let factor = closure(&g, &(0..8).map(|x| 2 * x).collect::<Vec<_>>());
        let rs = retraction_system(&g, &factor);
        let sol = solve_system(&g, &rs.system, &factor, DEFAULT_EVAL_BUDGET).unwrap().unwrap();
        let rho = rs.to_retraction(&g, &sol).unwrap();
        assert!(is_retraction(&g, &factor, &rho));
        assert!(find_retraction(&g, &factor, DEFAULT_NODE_LIMIT).unwrap().is_some());
    }
}
