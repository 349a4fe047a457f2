//! Reference procedures that do not go through the Garside engine. They are
//! exponential and only meant for cross-checking on small inputs.

use std::collections::HashSet;

use crate::word::{BraidWord, Letter};

/// A reduced word in the free group `F_n`; generator `x_j` is `j` (1-based),
/// its inverse `-j`.
type FreeWord = Vec<i32>;

fn free_reduce(w: impl IntoIterator<Item = i32>) -> FreeWord {
    let mut out: FreeWord = Vec::new();
    for g in w {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

fn free_inverse(w: &[i32]) -> FreeWord {
    w.iter().rev().map(|g| -g).collect()
}

/// Image of the free generator `x_j` under the Artin automorphism of one letter.
fn letter_image(l: Letter, j: i32) -> FreeWord {
    let i = l.index() as i32;
    if l.is_positive() {
        if j == i {
            vec![i, i + 1, -i]
        } else if j == i + 1 {
            vec![i]
        } else {
            vec![j]
        }
    } else if j == i {
        vec![i + 1]
    } else if j == i + 1 {
        vec![-(i + 1), i, i + 1]
    } else {
        vec![j]
    }
}

fn substitute(w: &[i32], l: Letter) -> FreeWord {
    free_reduce(w.iter().flat_map(|&g| {
        if g > 0 {
            letter_image(l, g)
        } else {
            free_inverse(&letter_image(l, -g))
        }
    }))
}

/// Images of `x_1, …, x_n` under the Artin action of `w`. The action is
/// faithful, so two words are equal in `B_n` iff these images agree.
pub fn artin_images(w: &BraidWord) -> Vec<FreeWord> {
    (1..=w.strands() as i32)
        .map(|j| {
            let mut img = vec![j];
            for &l in w.letters().iter().rev() {
                img = substitute(&img, l);
            }
            img
        })
        .collect()
}

pub fn artin_equal(a: &BraidWord, b: &BraidWord) -> bool {
    a.strands() == b.strands() && artin_images(a) == artin_images(b)
}

/// All freely reduced words on `n` strands with at most `max_len` letters.
pub fn all_words(n: usize, max_len: usize) -> Vec<BraidWord> {
    let gens: Vec<i32> = (1..n as i32).flat_map(|i| [i, -i]).collect();
    let mut out = vec![BraidWord::identity(n)];
    let mut frontier = vec![Vec::<i32>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &g in &gens {
                if w.last() == Some(&-g) {
                    continue;
                }
                let mut v = w.clone();
                v.push(g);
                out.push(BraidWord::from_signed(n, &v).expect("valid"));
                next.push(v);
            }
        }
        frontier = next;
    }
    out
}

/// Searches words of at most `max_len` letters for `ξ` with `ξ⁻¹ a ξ = b`,
/// testing equality with `eq`.
pub fn brute_conjugator(
    a: &BraidWord,
    b: &BraidWord,
    max_len: usize,
    eq: impl Fn(&BraidWord, &BraidWord) -> bool,
) -> Option<BraidWord> {
    all_words(a.strands(), max_len)
        .into_iter()
        .find(|x| eq(&a.conjugate_by(x).expect("same strands"), b))
}

/// Distinct elements among the given words, keyed by a canonical invariant.
pub fn dedup_by<K: std::hash::Hash + Eq>(
    words: Vec<BraidWord>,
    key: impl Fn(&BraidWord) -> K,
) -> Vec<BraidWord> {
    let mut seen = HashSet::new();
    words.into_iter().filter(|w| seen.insert(key(w))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn artin_action_respects_relations() {
        let a = BraidWord::from_signed(4, &[1, 2, 1]).unwrap();
        let b = BraidWord::from_signed(4, &[2, 1, 2]).unwrap();
        assert!(artin_equal(&a, &b));
        let c = BraidWord::from_signed(4, &[1, 3]).unwrap();
        let d = BraidWord::from_signed(4, &[3, 1]).unwrap();
        assert!(artin_equal(&c, &d));
        let e = BraidWord::from_signed(4, &[1, 2]).unwrap();
        let f = BraidWord::from_signed(4, &[2, 1]).unwrap();
        assert!(!artin_equal(&e, &f));
    }

    #[test]
    fn word_counts() {
        // 1 + 4 + 12 + 36 freely reduced words on 4 letters
        assert_eq!(all_words(3, 3).len(), 53);
    }
}
