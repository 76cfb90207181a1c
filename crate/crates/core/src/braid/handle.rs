//! Word problem by handle reduction.
//!
//! A `σ_i`-handle is a factor `σ_i^e v σ_i^{-e}` where `v` contains neither
//! `σ_i^{±1}` nor `σ_{i-1}^{±1}`. Reducing it deletes the two ends and replaces
//! every `σ_{i+1}^d` in `v` by `σ_{i+1}^{-e} σ_i^d σ_{i+1}^e`. We always reduce
//! the handle whose closing letter comes first; its interior then holds no
//! handle at all, so every step is a permitted reduction and the process
//! terminates. A handle-free word is empty exactly when it is trivial: a
//! nonempty handle-free word has its lowest generator occurring with a single
//! sign, and such words never represent the identity.

use super::{BraidWord, Letter};
use crate::error::{Error, Result};

pub const DEFAULT_HANDLE_BUDGET: u64 = 1_000_000;

/// Finds the handle whose closing letter is leftmost.
fn first_handle(letters: &[Letter], strands: usize) -> Option<(usize, usize)> {
    // open[i]: position of the latest σ_i not yet blocked by σ_i or σ_{i-1}
    let mut open: Vec<Option<usize>> = vec![None; strands + 1];
    for (j, l) in letters.iter().enumerate() {
        let i = l.index();
        if let Some(k) = open[i] {
            if letters[k].is_inverse() != l.is_inverse() {
                return Some((k, j));
            }
        }
        open[i] = Some(j);
        if i < strands {
            open[i + 1] = None;
        }
    }
    None
}

fn reduce_handle(letters: &[Letter], start: usize, end: usize) -> Vec<Letter> {
    let head = letters[start];
    let i = head.index();
    let mut out = Vec::with_capacity(letters.len() + 2 * (end - start));
    out.extend_from_slice(&letters[..start]);
    for &l in &letters[start + 1..end] {
        if l.index() == i + 1 {
            out.push(Letter::new(i + 1, !head.is_inverse()));
            out.push(Letter::new(i, l.is_inverse()));
            out.push(Letter::new(i + 1, head.is_inverse()));
        } else {
            out.push(l);
        }
    }
    out.extend_from_slice(&letters[end + 1..]);
    out
}

/// Runs handle reduction to a handle-free word equivalent to `word`.
pub fn handle_reduce(word: &BraidWord, budget: u64) -> Result<BraidWord> {
    let strands = word.strands();
    let mut letters = word.free_reduce().letters().to_vec();
    let mut steps = 0u64;
    while let Some((start, end)) = first_handle(&letters, strands) {
        steps += 1;
        if steps > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        letters = reduce_handle(&letters, start, end);
    }
    BraidWord::new(strands, letters)
}

/// True iff `word` is the identity braid.
pub fn is_trivial_word(word: &BraidWord) -> Result<bool> {
    is_trivial_word_with_budget(word, DEFAULT_HANDLE_BUDGET)
}

pub fn is_trivial_word_with_budget(word: &BraidWord, budget: u64) -> Result<bool> {
    Ok(handle_reduce(word, budget)?.is_empty())
}

/// True iff `a` and `b` represent the same braid.
pub fn braid_equal(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    is_trivial_word(&a.concat(&b.inverse())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn trivial_examples() {
        assert!(is_trivial_word(&w("1 -1", 4)).unwrap());
        assert!(is_trivial_word(&w("1 2 1 -2 -1 -2", 4)).unwrap());
        assert!(is_trivial_word(&w("1 3 -1 -3", 4)).unwrap());
        assert!(is_trivial_word(&BraidWord::identity(3)).unwrap());
    }

    #[test]
    fn nontrivial_examples() {
        assert!(!is_trivial_word(&w("1", 2)).unwrap());
        assert!(!is_trivial_word(&w("1 2 -1 -2", 3)).unwrap());
        assert!(!is_trivial_word(&w("1 2 1 -2 -1 2", 3)).unwrap());
        assert!(!is_trivial_word(&w("3 -2 1 2 -3", 4)).unwrap());
    }

    #[test]
    fn reduced_words_are_handle_free() {
        let reduced = handle_reduce(&w("1 2 -1 -2 1 3 -2", 4), DEFAULT_HANDLE_BUDGET).unwrap();
        assert!(first_handle(reduced.letters(), 4).is_none());
    }

    #[test]
    fn budget_is_reported() {
        let word = w("1 2 1 -2 -1 -2", 3);
        assert!(matches!(
            is_trivial_word_with_budget(&word, 1),
            Err(Error::BudgetExceeded(1))
        ));
    }

    #[test]
    fn handles_in_each_sign() {
        for text in ["1 2 -1", "-1 2 1", "1 -2 -1", "-1 -2 1"] {
            let word = w(text, 3);
            let reduced = handle_reduce(&word, 10).unwrap();
            assert!(braid_equal(&word, &reduced).unwrap());
            assert_eq!(reduced.len(), 3);
        }
    }
}
