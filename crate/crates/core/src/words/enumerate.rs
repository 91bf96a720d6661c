//! Enumeration of short coefficient-free words up to equivalences that do
//! not change verbal images.
//!
//! Cyclic permutations conjugate every value of a word, so they preserve
//! the image set. Relabelling variables, inverting a variable and inverting
//! the whole word are automorphisms (or anti-automorphisms followed by
//! inversion), which preserve the image up to `V -> V^-1`; bounded
//! closedness checks run over all `h` in a subgroup, which is closed under
//! inversion, so one representative per class suffices.

use std::collections::BTreeSet;

use super::Word;

/// Every freely reduced word of length `1..=max_len` in the first
/// `max_vars` variables, as letter codes, in length-then-lexicographic order.
pub fn reduced_words(max_len: usize, max_vars: usize) -> Vec<Vec<u8>> {
    let alphabet = (2 * max_vars) as u8;
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for c in 0..alphabet {
                if w.last().is_some_and(|&l| l ^ 1 == c) {
                    continue;
                }
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn is_cyclically_reduced(w: &[u8]) -> bool {
    w.len() < 2 || w[0] ^ 1 != w[w.len() - 1]
}

fn min_rotation(w: &[u8]) -> Vec<u8> {
    (0..w.len().max(1))
        .map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<u8>>())
        .min()
        .unwrap_or_default()
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, (n - 1) as u8);
            out.push(q);
        }
    }
    out
}

/// Canonical representative key of a cyclically reduced letter sequence:
/// the least rotation, optionally also minimised over signed variable
/// permutations and inversion of the word.
pub fn canonical_key(w: &[u8], max_vars: usize, automorphic: bool) -> Vec<u8> {
    if !automorphic {
        return min_rotation(w);
    }
    let mut best: Option<Vec<u8>> = None;
    let inverse: Vec<u8> = w.iter().rev().map(|&c| c ^ 1).collect();
    for perm in permutations(max_vars) {
        for signs in 0..(1u32 << max_vars) {
            for base in [w, inverse.as_slice()] {
                let mapped: Vec<u8> = base
                    .iter()
                    .map(|&c| {
                        let v = (c / 2) as usize;
                        2 * perm[v] + ((c % 2) ^ ((signs >> v) & 1) as u8)
                    })
                    .collect();
                let r = min_rotation(&mapped);
                if best.as_ref().is_none_or(|b| r < *b) {
                    best = Some(r);
                }
            }
        }
    }
    best.unwrap_or_default()
}

/// One cyclically reduced representative per class of words of length
/// `1..=max_len` in at most `max_vars` variables. Classes are rotations;
/// with `automorphic` also signed relabellings and inversion. Ordered by
/// length, then letters.
pub fn enumerate_word_classes(max_len: usize, max_vars: usize, automorphic: bool) -> Vec<Word> {
    let mut keys: BTreeSet<(usize, Vec<u8>)> = BTreeSet::new();
    for w in reduced_words(max_len, max_vars) {
        if is_cyclically_reduced(&w) {
            keys.insert((w.len(), canonical_key(&w, max_vars, automorphic)));
        }
    }
    keys.into_iter().map(|(_, k)| Word::from_letters(&k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_word_counts() {
        // 2s (2s-1)^(n-1) reduced words of length n
        let words = reduced_words(6, 2);
        let total: usize = (1..=6).map(|n| 4 * 3usize.pow(n - 1)).sum();
        assert_eq!(words.len(), total);
        assert_eq!(reduced_words(3, 1).len(), 6);
    }

    #[test]
    fn classes_are_cyclically_reduced_and_distinct() {
        let classes = enumerate_word_classes(5, 2, false);
        for w in &classes {
            assert_eq!(w.cyclically_reduced(), *w);
        }
        let set: BTreeSet<_> = classes.iter().collect();
        assert_eq!(set.len(), classes.len());
        // x1^n, x1^-n, x2^n, x2^-n for each n plus mixed words
        assert!(classes.len() > 20);
    }

    #[test]
    fn automorphic_classes_in_one_variable() {
        let classes = enumerate_word_classes(4, 1, true);
        let printed: Vec<String> = classes.iter().map(|w| w.to_string()).collect();
        assert_eq!(printed, vec!["x1", "x1^2", "x1^3", "x1^4"]);
    }

    #[test]
    fn commutator_class_is_found_once() {
        let classes = enumerate_word_classes(4, 2, true);
        let comm: Vec<&Word> = classes.iter().filter(|w| w.len() == 4 && w.exponent_sums().unwrap() == vec![0, 0]).collect();
        // every cyclically reduced length-4 word with zero exponent sums is a
        // commutator of two distinct signed variables
        assert_eq!(comm.len(), 1);
    }
}
