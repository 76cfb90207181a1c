//! Bounded enumeration of freely reduced words with identity Burau image.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::braid::{is_trivial_word, BraidWord, Letter};
use crate::burau::{burau_image, BurauMatrix};
use crate::error::{Error, Result};
use crate::laurent::CoeffRing;

pub const MAX_SEARCH_LEN: usize = 32;

const STRANDS: usize = 4;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub ring: CoeffRing,
    pub max_len: usize,
    pub alphabet: Vec<Letter>,
    /// Optional per-position alphabets; position `i` draws from
    /// `positional[i % positional.len()]` intersected with `alphabet`.
    pub positional: Option<Vec<Vec<Letter>>>,
    pub meet_in_middle: bool,
    /// Depth-first search stops after visiting this many words.
    pub node_cap: u64,
    /// Meet-in-the-middle stops after tabulating this many half-words.
    pub table_cap: usize,
}

impl SearchConfig {
    pub fn new(ring: CoeffRing, max_len: usize) -> Self {
        let alphabet = (1..STRANDS)
            .flat_map(|i| [Letter::pos(i), Letter::neg(i)])
            .collect();
        SearchConfig {
            ring,
            max_len,
            alphabet,
            positional: None,
            meet_in_middle: false,
            node_cap: 200_000_000,
            table_cap: 4_000_000,
        }
    }

    fn letters_at(&self, pos: usize) -> Vec<Letter> {
        match &self.positional {
            Some(sets) if !sets.is_empty() => self
                .alphabet
                .iter()
                .copied()
                .filter(|l| sets[pos % sets.len()].contains(l))
                .collect(),
            _ => self.alphabet.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_len > MAX_SEARCH_LEN {
            return Err(Error::SearchLimit(format!(
                "max length {} exceeds the cap of {MAX_SEARCH_LEN}",
                self.max_len
            )));
        }
        if let Some(l) = self.alphabet.iter().find(|l| l.index() >= STRANDS) {
            return Err(Error::IndexOutOfRange {
                index: l.to_int(),
                strands: STRANDS,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nontriviality {
    /// Forgetting the listed strands leaves a braid shown nontrivial.
    Certified { strands: Vec<usize>, witness: String },
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub word: BraidWord,
    pub nontriviality: Nontriviality,
}

impl SearchHit {
    pub fn line(&self) -> String {
        let flag = match self.nontriviality {
            Nontriviality::Certified { .. } => "verified",
            Nontriviality::Unverified => "unverified",
        };
        format!("{}\t{}\t{flag}", self.word.len(), self.word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub hits: Vec<SearchHit>,
    /// False when a cap cut the enumeration short.
    pub complete: bool,
    pub visited: u64,
}

/// Lists nonempty freely reduced words of length at most `max_len` whose
/// image is the identity and which are nontrivial braids. Output is sorted by
/// length, then lexicographically.
pub fn kernel_search(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let (candidates, complete, visited) = if cfg.meet_in_middle {
        search_mitm(cfg)?
    } else {
        search_dfs(cfg)?
    };
    let mut hits = Vec::new();
    for word in candidates {
        // independent recomputation, no shared prefixes
        if !burau_image(&word, cfg.ring)?.is_identity() {
            return Err(Error::Inconsistent(format!(
                "search reported `{word}` but its image is not the identity"
            )));
        }
        if is_trivial_word(&word)? {
            continue;
        }
        let nontriviality = certify_nontrivial(&word)?;
        hits.push(SearchHit { word, nontriviality });
    }
    hits.sort_by(|a, b| {
        (a.word.len(), a.word.letters()).cmp(&(b.word.len(), b.word.letters()))
    });
    Ok(SearchResult {
        hits,
        complete,
        visited,
    })
}

/// Looks for a strand-forgetting image that is visibly nontrivial: a 3-braid
/// with non-identity image over Z, or a 2-braid with nonzero exponent sum.
fn certify_nontrivial(word: &BraidWord) -> Result<Nontriviality> {
    for s in 1..=STRANDS {
        let w3 = word.forget_strand(s)?;
        if w3.exponent_sum() != 0 {
            return Ok(Nontriviality::Certified {
                strands: vec![s],
                witness: format!("exponent sum {}", w3.exponent_sum()),
            });
        }
        if !burau_image(&w3, CoeffRing::INTEGERS)?.is_identity() {
            return Ok(Nontriviality::Certified {
                strands: vec![s],
                witness: "nonidentity Burau image over Z".into(),
            });
        }
    }
    for a in 1..=STRANDS {
        for b in a + 1..=STRANDS {
            let w2 = word.forget_strands(&[a, b])?;
            if w2.exponent_sum() != 0 {
                return Ok(Nontriviality::Certified {
                    strands: vec![a, b],
                    witness: format!("exponent sum {}", w2.exponent_sum()),
                });
            }
        }
    }
    Ok(Nontriviality::Unverified)
}

fn cancels(prev: Option<&Letter>, next: Letter) -> bool {
    prev.is_some_and(|p| p.inv() == next)
}

struct Dfs<'a> {
    cfg: &'a SearchConfig,
    visited: &'a AtomicU64,
    stopped: &'a AtomicBool,
    hits: Vec<Vec<Letter>>,
}

impl Dfs<'_> {
    fn run(&mut self, word: &mut Vec<Letter>, image: &BurauMatrix) -> Result<()> {
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.cfg.node_cap {
            self.stopped.store(true, Ordering::Relaxed);
            return Ok(());
        }
        if !word.is_empty() && image.is_identity() {
            self.hits.push(word.clone());
        }
        if word.len() == self.cfg.max_len || self.stopped.load(Ordering::Relaxed) {
            return Ok(());
        }
        for l in self.cfg.letters_at(word.len()) {
            if cancels(word.last(), l) {
                continue;
            }
            let next = image.mul_letter(l)?;
            word.push(l);
            self.run(word, &next)?;
            word.pop();
        }
        Ok(())
    }
}

/// Freely reduced words of exactly `len` letters whose positions start at `offset`.
fn words_of_length(cfg: &SearchConfig, offset: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for i in 0..len {
        let letters = cfg.letters_at(offset + i);
        layer = layer
            .into_iter()
            .flat_map(|w| {
                letters
                    .iter()
                    .filter(|&&l| !cancels(w.last(), l))
                    .map(|&l| {
                        let mut next = w.clone();
                        next.push(l);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    layer
}

fn search_dfs(cfg: &SearchConfig) -> Result<(Vec<BraidWord>, bool, u64)> {
    let visited = AtomicU64::new(0);
    let stopped = AtomicBool::new(false);
    // split the tree at depth two so the workers get comparable subtrees
    let split = cfg.max_len.min(2);
    let mut roots = Vec::new();
    for len in 0..=split {
        roots.extend(words_of_length(cfg, 0, len).into_iter().map(|w| (w, len == split)));
    }
    let per_root = roots
        .par_iter()
        .map(|(prefix, expand)| -> Result<Vec<Vec<Letter>>> {
            let image = burau_image(&BraidWord::new(STRANDS, prefix.clone())?, cfg.ring)?;
            let mut dfs = Dfs {
                cfg,
                visited: &visited,
                stopped: &stopped,
                hits: Vec::new(),
            };
            if *expand {
                dfs.run(&mut prefix.clone(), &image)?;
            } else {
                visited.fetch_add(1, Ordering::Relaxed);
                if !prefix.is_empty() && image.is_identity() {
                    dfs.hits.push(prefix.clone());
                }
            }
            Ok(dfs.hits)
        })
        .collect::<Result<Vec<_>>>()?;
    let words = per_root
        .into_iter()
        .flatten()
        .map(|l| BraidWord::new(STRANDS, l))
        .collect::<Result<Vec<_>>>()?;
    let complete = !stopped.load(Ordering::Relaxed);
    Ok((words, complete, visited.load(Ordering::Relaxed)))
}

fn search_mitm(cfg: &SearchConfig) -> Result<(Vec<BraidWord>, bool, u64)> {
    let mut found = Vec::new();
    let mut visited = 0u64;
    for n in 1..=cfg.max_len {
        let left_len = n.div_ceil(2);
        let lefts = words_of_length(cfg, 0, left_len);
        let rights = words_of_length(cfg, left_len, n - left_len);
        if lefts.len() + rights.len() > cfg.table_cap {
            return Ok((found, false, visited));
        }
        visited += (lefts.len() + rights.len()) as u64;
        let keys = |words: &[Vec<Letter>], invert: bool| -> Result<Vec<String>> {
            words
                .par_iter()
                .map(|w| {
                    let word = BraidWord::new(STRANDS, w.clone())?;
                    let word = if invert { word.inverse() } else { word };
                    Ok(burau_image(&word, cfg.ring)?.key())
                })
                .collect()
        };
        let mut table: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, key) in keys(&lefts, false)?.into_iter().enumerate() {
            table.entry(key).or_default().push(i);
        }
        // ρ(u)ρ(v) = I exactly when ρ(u) = ρ(v⁻¹)
        for (v, key) in rights.iter().zip(keys(&rights, true)?) {
            for &i in table.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
                let u = &lefts[i];
                if v.first().is_some_and(|&f| cancels(u.last(), f)) {
                    continue;
                }
                let mut word = u.clone();
                word.extend_from_slice(v);
                found.push(BraidWord::new(STRANDS, word)?);
            }
        }
    }
    Ok((found, true, visited))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_searches_find_nothing() {
        for p in [2, 3] {
            let cfg = SearchConfig::new(CoeffRing::modp(p), 4);
            let result = kernel_search(&cfg).unwrap();
            assert!(result.complete);
            assert!(result.hits.is_empty());
        }
    }

    #[test]
    fn dfs_and_mitm_see_the_same_identity_words() {
        let mut cfg = SearchConfig::new(CoeffRing::modp(2), 6);
        let (mut a, _, _) = search_dfs(&cfg).unwrap();
        cfg.meet_in_middle = true;
        let (mut b, _, _) = search_mitm(&cfg).unwrap();
        a.sort_by(|x, y| x.letters().cmp(y.letters()));
        b.sort_by(|x, y| x.letters().cmp(y.letters()));
        // commutators and braid relations
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }

    #[test]
    fn node_cap_marks_incomplete() {
        let mut cfg = SearchConfig::new(CoeffRing::modp(2), 6);
        cfg.node_cap = 100;
        assert!(!kernel_search(&cfg).unwrap().complete);
    }

    #[test]
    fn length_cap_is_enforced() {
        let cfg = SearchConfig::new(CoeffRing::modp(2), MAX_SEARCH_LEN + 1);
        assert!(matches!(kernel_search(&cfg), Err(Error::SearchLimit(_))));
    }
}
