//! Explicit kernel elements, Brunnian analysis and kernel search.

mod search;

use std::fmt;

use serde::Serialize;

use crate::braid::{is_trivial_word, BraidWord};
use crate::burau::burau_image;
use crate::error::{Error, Result};
use crate::laurent::CoeffRing;

pub use search::{kernel_search, Nontriviality, SearchConfig, SearchHit, SearchResult, MAX_SEARCH_LEN};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelExample {
    pub name: String,
    pub word: BraidWord,
    pub ring: CoeffRing,
    pub note: String,
}

/// `(σ₁⁻¹ σ₂^k σ₁ σ₃ σ₂^{-k} σ₃⁻¹)⁴`, in the kernel mod 2.
pub fn alpha_k(k: i64) -> Result<KernelExample> {
    if k == 0 {
        return Err(Error::InvalidInput("alpha_k needs k != 0".into()));
    }
    let base = [
        BraidWord::from_ints(4, &[-1])?,
        BraidWord::generator_power(4, 2, k)?,
        BraidWord::from_ints(4, &[1, 3])?,
        BraidWord::generator_power(4, 2, -k)?,
        BraidWord::from_ints(4, &[-3])?,
    ]
    .iter()
    .try_fold(BraidWord::identity(4), |acc, w| acc.concat(w))?;
    Ok(KernelExample {
        name: format!("alpha_{k}"),
        word: base.pow(4),
        ring: CoeffRing::modp(2),
        note: format!("fourth power of σ1^-1 σ2^{k} σ1 σ3 σ2^{} σ3^-1", -k),
    })
}

const COOPER_LONG_ALPHA: &[i64] = &[
    2, 2, 1, -2, -2, -3, -3, 2, -1, -1, -1, -2, 3, -2, 1, 2, 2, -3, -3, -1, -2, -2, 1, -2, -2, 1,
    3, -2, 3, 2, 2, 2, 1, -2, 3, -2, 1, -2, -2, 1, 3, 3, 2, -3,
];

const COOPER_LONG_ALPHA_PRIME: &[i64] = &[
    2, 2, 1, -2, -1, -1, -1, -2, 1, 1, -2, -2, -1, -1, 2, 2, 2, -1, 2, -1, 2, 2,
];

/// A 4-braid conjugate to the Cooper–Long element of the mod-3 kernel.
pub fn cooper_long_alpha() -> KernelExample {
    KernelExample {
        name: "alpha".into(),
        word: BraidWord::from_ints(4, COOPER_LONG_ALPHA).unwrap(),
        ring: CoeffRing::modp(3),
        note: "conjugate of the Cooper-Long element of the mod 3 kernel".into(),
    }
}

/// The 3-braid left after forgetting the fourth strand of [`cooper_long_alpha`].
pub fn cooper_long_alpha_prime() -> BraidWord {
    BraidWord::from_ints(3, COOPER_LONG_ALPHA_PRIME).unwrap()
}

/// `(σ₂σ₁⁻¹σ₂σ₁⁻¹σ₂²)³ Δ₃⁻²`, another spelling of α′.
pub fn alpha_prime_product_form() -> BraidWord {
    BraidWord::from_ints(3, &[2, -1, 2, -1, 2, 2])
        .unwrap()
        .pow(3)
        .concat(&BraidWord::delta3().pow(-2))
        .unwrap()
}

pub fn kernel_examples() -> Vec<KernelExample> {
    let mut out: Vec<KernelExample> = (1..=4).map(|k| alpha_k(k).unwrap()).collect();
    out.push(cooper_long_alpha());
    out
}

/// True iff `w` maps to the identity under the Burau representation over `ring`.
pub fn verify_kernel(w: &BraidWord, ring: CoeffRing) -> Result<bool> {
    Ok(burau_image(w, ring)?.is_identity())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    ExponentSum { value: i64 },
    /// ρ₃ over the integers is not the identity.
    NontrivialImage { matrix: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ExponentSum { value } => write!(f, "exponent sum {value}"),
            Witness::NontrivialImage { matrix } => write!(f, "Burau image over Z [{matrix}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrandDeletion {
    pub strand: usize,
    pub word: BraidWord,
    pub trivial: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrunnianReport {
    pub word: BraidWord,
    pub deletions: Vec<StrandDeletion>,
}

impl BrunnianReport {
    pub fn is_brunnian(&self) -> bool {
        self.deletions.iter().all(|d| d.trivial)
    }
}

/// Nontriviality witness for a 3-braid, checked against handle reduction.
fn classify_3braid(word: &BraidWord) -> Result<(bool, Option<Witness>)> {
    let trivial = is_trivial_word(word)?;
    let image = burau_image(word, CoeffRing::INTEGERS)?;
    if trivial {
        if !image.is_identity() {
            return Err(Error::Inconsistent(format!(
                "`{word}` reduces to the empty word but has image {}",
                image.key()
            )));
        }
        return Ok((true, None));
    }
    let e = word.exponent_sum();
    if e != 0 {
        return Ok((false, Some(Witness::ExponentSum { value: e })));
    }
    if !image.is_identity() {
        return Ok((false, Some(Witness::NontrivialImage { matrix: image.key() })));
    }
    Err(Error::Inconsistent(format!(
        "`{word}` is nontrivial but has identity image over Z"
    )))
}

/// Forgets each strand of a 4-braid in turn and decides the resulting 3-braids.
pub fn brunnian_report(w: &BraidWord) -> Result<BrunnianReport> {
    if w.strands() != 4 {
        return Err(Error::UnsupportedStrands(w.strands()));
    }
    let deletions = (1..=4)
        .map(|strand| {
            let word = w.forget_strand(strand)?;
            let (trivial, witness) = classify_3braid(&word)?;
            Ok(StrandDeletion {
                strand,
                word,
                trivial,
                witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BrunnianReport {
        word: w.clone(),
        deletions,
    })
}

impl fmt::Display for BrunnianReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.deletions {
            write!(f, "strand {}: {} -> ", d.strand, d.word.to_line())?;
            match &d.witness {
                None => writeln!(f, "trivial")?,
                Some(w) => writeln!(f, "nontrivial ({w})")?,
            }
        }
        let verdict = if self.is_brunnian() { "Brunnian" } else { "not Brunnian" };
        writeln!(f, "verdict: {verdict}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_one_is_in_the_mod_two_kernel_only() {
        let a1 = alpha_k(1).unwrap();
        assert_eq!(a1.word.len(), 24);
        assert!(verify_kernel(&a1.word, CoeffRing::modp(2)).unwrap());
        assert!(!verify_kernel(&a1.word, CoeffRing::modp(3)).unwrap());
        assert!(!verify_kernel(&a1.word, CoeffRing::INTEGERS).unwrap());
        assert!(!is_trivial_word(&a1.word).unwrap());
    }

    #[test]
    fn alpha_zero_is_rejected() {
        assert!(alpha_k(0).is_err());
    }

    #[test]
    fn empty_word_is_in_every_kernel() {
        for m in [0, 2, 3] {
            let ring = CoeffRing::new(m).unwrap();
            assert!(verify_kernel(&BraidWord::identity(4), ring).unwrap());
        }
    }

    #[test]
    fn alpha_prime_exponent_sum() {
        assert_eq!(cooper_long_alpha_prime().exponent_sum(), 0);
        assert_eq!(alpha_prime_product_form().exponent_sum(), 0);
    }

    #[test]
    fn identity_is_vacuously_brunnian() {
        let report = brunnian_report(&BraidWord::identity(4)).unwrap();
        assert!(report.is_brunnian());
        assert_eq!(report.deletions.len(), 4);
    }

    #[test]
    fn cooper_long_alpha_loses_its_fourth_strand_nontrivially() {
        let report = brunnian_report(&cooper_long_alpha().word).unwrap();
        assert!(!report.is_brunnian());
        assert!(!report.deletions[3].trivial);
    }
}
