//! Certificate builders, one per normal form.

use std::fmt;
use std::str::FromStr;

use crate::b2::{b2_normalize, b2_rotate_cyclic, b2_rotate_to_yx, b2_segment, delta_sigma1_prefix, B2Letter, B2Word, State};
use crate::braid::{is_trivial_word, BraidWord, Letter};
use crate::burau::{burau_image, RowVector};
use crate::error::{Error, Result};
use crate::laurent::{CoeffRing, LaurentPoly};

use super::certificate::{Certificate, Evidence, IntRelation, Param, Relation, Verdict};
use super::{region_member, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PeriodicVariant {
    /// `δ = σ_{n-1} ⋯ σ₁`
    Delta,
    /// `γ = σ_{n-1} ⋯ σ₁ σ₁`
    Gamma,
}

impl PeriodicVariant {
    pub fn base(self, strands: usize) -> BraidWord {
        let mut ints: Vec<i64> = (1..strands as i64).rev().collect();
        if self == PeriodicVariant::Gamma {
            ints.push(1);
        }
        BraidWord::from_ints(strands, &ints).expect("indices below strand count")
    }
}

impl fmt::Display for PeriodicVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodicVariant::Delta => write!(f, "delta"),
            PeriodicVariant::Gamma => write!(f, "gamma"),
        }
    }
}

impl FromStr for PeriodicVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "delta" | "δ" => Ok(PeriodicVariant::Delta),
            "gamma" | "γ" => Ok(PeriodicVariant::Gamma),
            other => Err(Error::InvalidInput(format!(
                "unknown periodic variant `{other}` (expected delta or gamma)"
            ))),
        }
    }
}

/// Normal forms of 3-braids up to conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalFormB3 {
    Periodic { variant: PeriodicVariant, k: i64 },
    /// `Δ₃^{2m} σ₁^k (σ₂σ₁²σ₂)^l`
    Reducible { m: i64, k: i64, l: i64 },
    /// `P · Δ₃^{2k}` with `P` a nonempty word in `σ₁⁻¹, σ₂` starting with `σ₂`.
    PA { word: BraidWord, k: i64 },
}

/// `Δ₄^{2l} (σ₃σ₂σ₁²σ₂σ₃)^k · tail`, `tail` in `σ₁, σ₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormB4a {
    pub k: i64,
    pub l: i64,
    pub tail: BraidWord,
}

/// `σ₁^k · W(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormB4b {
    pub k: i64,
    pub tail: B2Word,
}

fn int(name: &str, v: i64) -> (String, Param) {
    (name.to_string(), Param::Int(v))
}

fn text(name: &str, v: impl fmt::Display) -> (String, Param) {
    (name.to_string(), Param::Text(v.to_string()))
}

fn rel(terms: &[(i64, &str)], relation: Relation, rhs: i64) -> Evidence {
    Evidence::Int(IntRelation::new(terms, relation, rhs))
}

fn cat(words: &[&BraidWord]) -> BraidWord {
    let strands = words[0].strands();
    words
        .iter()
        .fold(BraidWord::identity(strands), |acc, w| acc.concat(w).unwrap())
}

fn inconsistent(what: impl Into<String>) -> Error {
    Error::Inconsistent(what.into())
}

fn act_item(start: &RowVector, word: &BraidWord) -> Result<(Evidence, RowVector)> {
    let result = start.act(word)?;
    Ok((
        Evidence::Act {
            start: start.clone(),
            word: word.clone(),
            result: result.clone(),
        },
        result,
    ))
}

fn member_item(v: &RowVector, region: Region, expected: bool, context: &str) -> Result<Evidence> {
    if region_member(region, v)? != expected {
        let rel = if expected { "∈" } else { "∉" };
        return Err(inconsistent(format!("{context}: expected {v} {rel} {region}")));
    }
    Ok(Evidence::Member {
        vector: v.clone(),
        region,
        member: expected,
    })
}

fn trivial_certificate(
    case: &str,
    ring: CoeffRing,
    braid: BraidWord,
    params: Vec<(String, Param)>,
    mut evidence: Vec<Evidence>,
) -> Result<Certificate> {
    if !is_trivial_word(&braid)? {
        return Err(inconsistent(format!(
            "{case}: parameters force triviality but `{braid}` is not trivial"
        )));
    }
    evidence.push(Evidence::Trivial { word: braid.clone() });
    Ok(Certificate {
        case: case.to_string(),
        ring,
        braid,
        params,
        evidence,
        verdict: Verdict::TrivialBraid,
    })
}

/// Drops items that say nothing (`[w] = [w]`, actions of the empty word) and
/// repeated items, keeping the last copy so the closing item stays last.
fn tidy(evidence: Vec<Evidence>) -> Vec<Evidence> {
    let vacuous = |e: &Evidence| match e {
        Evidence::Equal { left, right } => left == right,
        Evidence::Act { word, .. } => word.is_empty(),
        _ => false,
    };
    let mut kept: Vec<Evidence> = Vec::with_capacity(evidence.len());
    for e in evidence.into_iter().rev() {
        if !vacuous(&e) && !kept.contains(&e) {
            kept.push(e);
        }
    }
    kept.reverse();
    kept
}

fn nontrivial_certificate(
    case: &str,
    ring: CoeffRing,
    braid: BraidWord,
    params: Vec<(String, Param)>,
    evidence: Vec<Evidence>,
) -> Result<Certificate> {
    let evidence = tidy(evidence);
    let cert = Certificate {
        case: case.to_string(),
        ring,
        braid,
        params,
        evidence,
        verdict: Verdict::NontrivialImage,
    };
    cert.check().map_err(|e| inconsistent(format!("{case}: {e}\n{cert}")))?;
    Ok(cert)
}

/// Periodic braids `δ^k` or `γ^k` on 3 or 4 strands, told apart from the
/// identity by the determinant `(−t)^e`.
pub fn certify_periodic(
    strands: usize,
    variant: PeriodicVariant,
    k: i64,
    ring: CoeffRing,
) -> Result<Certificate> {
    if strands != 3 && strands != 4 {
        return Err(Error::UnsupportedStrands(strands));
    }
    let braid = variant.base(strands).pow(k);
    let params = vec![int("n", strands as i64), text("variant", variant), int("k", k)];
    if k == 0 {
        return trivial_certificate("periodic", ring, braid, params, vec![rel(&[(1, "k")], Relation::Eq, 0)]);
    }
    let e = match variant {
        PeriodicVariant::Delta => k * (strands as i64 - 1),
        PeriodicVariant::Gamma => k * strands as i64,
    };
    let expected = LaurentPoly::neg_t_pow(ring, e);
    let det = burau_image(&braid, ring)?.det();
    if det != expected {
        return Err(inconsistent(format!(
            "periodic: det of `{braid}` is {det}, expected {expected}"
        )));
    }
    let evidence = vec![
        rel(&[(1, "k")], Relation::Ne, 0),
        Evidence::Det {
            word: braid.clone(),
            value: det,
        },
    ];
    nontrivial_certificate("periodic", ring, braid, params, evidence)
}

pub fn certify_b3(form: &NormalFormB3, ring: CoeffRing) -> Result<Certificate> {
    match form {
        NormalFormB3::Periodic { variant, k } => certify_periodic(3, *variant, *k, ring),
        NormalFormB3::Reducible { m, k, l } => certify_b3_reducible(*m, *k, *l, ring),
        NormalFormB3::PA { word, k } => certify_b3_pa(word, *k, ring),
    }
}

fn certify_b3_reducible(m: i64, k: i64, l: i64, ring: CoeffRing) -> Result<Certificate> {
    let case = "b3/reducible";
    let d2 = BraidWord::delta3().pow(2);
    let x = BraidWord::from_ints(3, &[2, 1, 1, 2]).unwrap();
    let braid = cat(&[
        &d2.pow(m),
        &BraidWord::generator_power(3, 1, k)?,
        &x.pow(l),
    ]);
    let j = k - 2 * l;
    let rewritten = d2.pow(l + m).concat(&BraidWord::generator_power(3, 1, j)?)?;
    let params = vec![int("m", m), int("k", k), int("l", l)];
    let mut evidence = vec![Evidence::Equal {
        left: braid.clone(),
        right: rewritten.clone(),
    }];
    if l + m == 0 && j == 0 {
        evidence.push(rel(&[(1, "l"), (1, "m")], Relation::Eq, 0));
        evidence.push(rel(&[(1, "k"), (-2, "l")], Relation::Eq, 0));
        return trivial_certificate(case, ring, braid, params, evidence);
    }
    let image = burau_image(&rewritten, ring)?;
    let scale = LaurentPoly::t_pow(ring, 3 * (l + m));
    let corner = &scale * &LaurentPoly::neg_t_pow(ring, j);
    if image.entry(1, 1) != &scale || image.entry(0, 0) != &corner || !image.entry(0, 1).is_zero() {
        return Err(inconsistent(format!(
            "{case}: image of `{rewritten}` is not t^(3(l+m)) times a lower-triangular matrix with corner (-t)^(k-2l)"
        )));
    }
    if l + m != 0 {
        evidence.push(rel(&[(1, "l"), (1, "m")], Relation::Ne, 0));
        evidence.push(Evidence::Entry {
            word: rewritten.clone(),
            row: 2,
            col: 2,
            value: scale,
        });
    } else {
        evidence.push(rel(&[(1, "l"), (1, "m")], Relation::Eq, 0));
        evidence.push(rel(&[(1, "k"), (-2, "l")], Relation::Ne, 0));
        evidence.push(Evidence::Entry {
            word: rewritten,
            row: 1,
            col: 1,
            value: corner,
        });
    }
    nontrivial_certificate(case, ring, braid, params, evidence)
}

fn certify_b3_pa(word: &BraidWord, k: i64, ring: CoeffRing) -> Result<Certificate> {
    let case = "b3/pseudo-anosov";
    let allowed = |l: &Letter| *l == Letter::pos(2) || *l == Letter::neg(1);
    if word.strands() != 3 || word.letters().first() != Some(&Letter::pos(2)) || !word.letters().iter().all(allowed) {
        return Err(Error::InvalidInput(format!(
            "`{word}` must be a 3-braid word in σ₂ and σ₁⁻¹ starting with σ₂"
        )));
    }
    let twist = BraidWord::delta3().pow(2 * k);
    let braid = word.concat(&twist)?;
    let params = vec![text("P", word.to_line()), int("k", k)];
    let v0 = RowVector::basis(2, 0, ring);
    let mut evidence = vec![member_item(&v0, Region::V0, false, case)?];
    let mut v = v0.clone();
    for &letter in word.letters() {
        let step = BraidWord::new(3, vec![letter])?;
        let (item, next) = act_item(&v, &step)?;
        evidence.push(item);
        evidence.push(member_item(&next, Region::V0, true, case)?);
        v = next;
    }
    if k != 0 {
        let (item, next) = act_item(&v, &twist)?;
        evidence.push(item);
        evidence.push(member_item(&next, Region::V0, true, case)?);
        v = next;
    }
    let (item, end) = act_item(&v0, &braid)?;
    if end != v {
        return Err(inconsistent(format!("{case}: step-wise and direct actions disagree")));
    }
    evidence.push(item);
    nontrivial_certificate(case, ring, braid, params, evidence)
}

pub fn certify_reducible_a(form: &NormalFormB4a, ring: CoeffRing) -> Result<Certificate> {
    let NormalFormB4a { k, l, tail } = form;
    let (k, l) = (*k, *l);
    if tail.strands() > 4 || tail.letters().iter().any(|x| x.index() > 2) {
        return Err(Error::InvalidInput(format!(
            "tail `{tail}` must use only σ₁ and σ₂"
        )));
    }
    let tail4 = tail.embed(4)?;
    let tail3 = BraidWord::new(3, tail.letters().to_vec())?;
    let band = BraidWord::from_ints(4, &[3, 2, 1, 1, 2, 3]).unwrap();
    let braid = cat(&[&BraidWord::delta4().pow(2 * l), &band.pow(k), &tail4]);
    let params = vec![int("k", k), int("l", l), text("tail", tail3.to_line())];
    let e3 = RowVector::basis(3, 2, ring);
    let (act, v) = act_item(&e3, &braid)?;

    if k + l != 0 {
        let expected = LaurentPoly::t_pow(ring, 4 * (k + l));
        if v.coords()[2] != expected {
            return Err(inconsistent(format!(
                "reducible-a: third coordinate of (0, 0, 1) * β is {}, expected {expected}",
                v.coords()[2]
            )));
        }
        let evidence = vec![rel(&[(1, "k"), (1, "l")], Relation::Ne, 0), act];
        return nontrivial_certificate("reducible-a/outer", ring, braid, params, evidence);
    }

    let case = "reducible-a/residual";
    let residual3 = BraidWord::delta3().pow(-2 * k).concat(&tail3)?;
    let residual4 = residual3.embed(4)?;
    let mut evidence = vec![
        rel(&[(1, "k"), (1, "l")], Relation::Eq, 0),
        Evidence::Equal {
            left: braid.clone(),
            right: residual4.clone(),
        },
    ];
    let image3 = burau_image(&residual3, ring)?;
    if image3.is_identity() {
        if !is_trivial_word(&residual3)? {
            return Err(inconsistent(format!(
                "{case}: `{residual3}` has identity image but is not trivial"
            )));
        }
        evidence.push(Evidence::Identity { word: residual3 });
        return trivial_certificate(case, ring, braid, params, evidence);
    }
    // the 3-strand image is the upper-left block of the 4-strand one
    for i in 0..2 {
        let e = RowVector::basis(3, i, ring);
        let (item, moved) = act_item(&e, &residual4)?;
        if moved != e {
            evidence.push(item);
            return nontrivial_certificate(case, ring, braid, params, evidence);
        }
    }
    Err(inconsistent(format!(
        "{case}: 3-strand image of `{residual3}` is not the identity but fixes both basis rows"
    )))
}

/// Conjugates `P` until it either misses a letter or has a rotation starting
/// with `y`, ending with `x` and free of `xyxy`/`yxyx`. Rotations that create a
/// forbidden factor across the seam are collected into `Δ` again.
fn rotate_and_collect(mut m: i64, mut p: B2Word) -> Result<(i64, B2Word, B2Word)> {
    let mut conjugator = Vec::new();
    while p.contains(B2Letter::X) && p.contains(B2Letter::Y) {
        match b2_rotate_to_yx(&p) {
            Ok((rotated, c)) => {
                conjugator.extend_from_slice(c.letters());
                return Ok((m, rotated, B2Word::new(conjugator)));
            }
            Err(Error::Inconsistent(_)) => {
                let (rotated, c) = b2_rotate_cyclic(&p)?;
                conjugator.extend_from_slice(c.letters());
                let normal = b2_normalize(&rotated);
                if normal.delta_exp == 0 {
                    return Err(inconsistent(format!("rotating `{p}` left no collectible Δ")));
                }
                m += normal.delta_exp;
                p = normal.positive;
            }
            Err(other) => return Err(other),
        }
    }
    Ok((m, p, B2Word::new(conjugator)))
}

pub fn certify_reducible_b(form: &NormalFormB4b, ring: CoeffRing) -> Result<Certificate> {
    let NormalFormB4b { k, tail } = form;
    let k = *k;
    let braid = BraidWord::generator_power(4, 1, k)?.concat(&tail.expand())?;
    let normal = b2_normalize(tail);
    let mut params = vec![
        int("k", k),
        text("tail", tail),
        int("m0", normal.delta_exp),
        text("P0", &normal.positive),
    ];
    let (m, p, conjugator) = rotate_and_collect(normal.delta_exp, normal.positive)?;
    params.extend([text("conjugator", &conjugator), int("m", m), text("P", &p)]);
    // σ₁ commutes with x and y, so only P is conjugated
    let normalized = delta_sigma1_prefix(m, k - 2 * m).concat(&p.expand())?;
    let mut evidence = Vec::new();
    if conjugator.is_empty() {
        evidence.push(Evidence::Equal {
            left: braid.clone(),
            right: normalized.clone(),
        });
    } else {
        let c = conjugator.expand();
        let conjugated = cat(&[&c.inverse(), &braid, &c]);
        evidence.push(Evidence::Conjugate {
            word: braid.clone(),
            result: conjugated.clone(),
            conjugator: c,
        });
        evidence.push(Evidence::Equal {
            left: conjugated,
            right: normalized.clone(),
        });
    }

    if !p.contains(B2Letter::Y) {
        // P = x^l: σ₁ powers and x both live on the first three strands
        let l = p.len() as i64;
        params.push(int("l", l));
        let residual = BraidWord::generator_power(3, 1, k - 2 * m)?
            .concat(&BraidWord::from_ints(3, &[2, 1, 1, 2])?.pow(l))?;
        let sub = certify_reducible_a(&NormalFormB4a { k: 0, l: m, tail: residual }, ring)?;
        evidence.push(Evidence::Equal {
            left: normalized,
            right: sub.braid.clone(),
        });
        evidence.extend(sub.evidence.iter().filter(|e| !matches!(e, Evidence::Int(_))).cloned());
        let case = format!("reducible-b/x-power/{}", sub.case);
        return match sub.verdict {
            Verdict::TrivialBraid => trivial_certificate(&case, ring, braid, params, evidence),
            Verdict::NontrivialImage => nontrivial_certificate(&case, ring, braid, params, evidence),
        };
    }

    if !p.contains(B2Letter::X) {
        let case = "reducible-b/y-power";
        let l = p.len() as i64;
        params.push(int("l", l));
        let (item, third) = act_item(&RowVector::basis(3, 2, ring), &normalized)?;
        if third.coords()[2] != LaurentPoly::neg_t_pow(ring, 4 * m + l) {
            return Err(inconsistent(format!("{case}: unexpected (0, 0, 1) * β = {third}")));
        }
        evidence.push(item);
        let (item, first) = act_item(&RowVector::basis(3, 0, ring), &normalized)?;
        if first.coords()[0] != LaurentPoly::neg_t_pow(ring, 2 * m + k) {
            return Err(inconsistent(format!("{case}: unexpected (1, 0, 0) * β = {first}")));
        }
        evidence.push(item);
        let det = burau_image(&normalized, ring)?.det();
        if det != LaurentPoly::neg_t_pow(ring, 10 * m + k + l) {
            return Err(inconsistent(format!("{case}: unexpected determinant {det}")));
        }
        evidence.push(Evidence::Det {
            word: normalized,
            value: det,
        });
        return nontrivial_certificate(case, ring, braid, params, evidence);
    }

    let case = "reducible-b/mixed";
    let seq = b2_segment(&p)?;
    let m1 = m + seq.delta_exp;
    let k1 = k - 2 * m + seq.sigma1_exp;
    params.extend([int("m1", m1), int("k1", k1)]);
    let moves = seq.moves_word();
    let delta_part = BraidWord::delta4().pow(2 * m1);
    let sigma_part = BraidWord::generator_power(4, 1, k1)?;
    let target = cat(&[&delta_part, &sigma_part, &moves]);
    evidence.push(Evidence::Equal {
        left: normalized,
        right: target.clone(),
    });

    let start = RowVector::basis(3, 2, ring);
    evidence.push(member_item(&start, Region::VY, true, case)?);
    evidence.push(member_item(&start, Region::VX, false, case)?);
    let (item, mut v) = act_item(&start, &delta_part)?;
    if v.coords()[2] != LaurentPoly::t_pow(ring, 4 * m1) {
        return Err(inconsistent(format!("{case}: unexpected (0, 0, 1) * Δ₄^(2m1) = {v}")));
    }
    evidence.push(item);
    evidence.push(member_item(&v, Region::VY, true, case)?);
    let (item, fixed) = act_item(&v, &sigma_part)?;
    if fixed != v {
        return Err(inconsistent(format!("{case}: σ₁ power moved {v}")));
    }
    evidence.push(item);
    for step in &seq.moves {
        let (item, next) = act_item(&v, &step.mv.expand())?;
        evidence.push(item);
        let region = match step.to {
            State::X => Region::VX,
            State::Y => Region::VY,
        };
        evidence.push(member_item(&next, region, true, case)?);
        v = next;
    }
    let (item, end) = act_item(&start, &target)?;
    if end != v {
        return Err(inconsistent(format!("{case}: step-wise and direct actions disagree")));
    }
    evidence.push(item);
    evidence.push(member_item(&end, Region::VX, true, case)?);
    nontrivial_certificate(case, ring, braid, params, evidence)
}
