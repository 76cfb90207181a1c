//! Seeded randomized checks of the algebraic identities the certificates rely on.
//!
//! Samples are drawn in fixed-size chunks; chunk `c` uses a ChaCha8 stream
//! derived from `(seed, c)`, so reports are identical for identical seeds no
//! matter how rayon schedules the chunks.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::b2::Move;
use crate::braid::{is_trivial_word, BraidWord, Letter};
use crate::burau::{burau_image, RowVector};
use crate::error::Result;
use crate::laurent::{CoeffRing, LaurentPoly};
use crate::pingpong::{action_table, region_member, Region};

const CHUNK: usize = 256;
const MAX_EXAMPLES: usize = 5;
pub const EXP_RANGE: i64 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub name: String,
    pub trials: usize,
    pub violations: usize,
    /// The first few violations, in sample order.
    pub examples: Vec<String>,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: trials={} violations={}",
            self.name, self.trials, self.violations
        )?;
        for e in &self.examples {
            writeln!(f, "  {e}")?;
        }
        Ok(())
    }
}

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

/// Runs `trial` on `trials` samples; it returns `Some(description)` on a violation.
fn run<F>(name: &str, seed: u64, trials: usize, trial: F) -> Result<FuzzReport>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Option<String>> + Sync,
{
    let chunks = trials.div_ceil(CHUNK);
    let per_chunk = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let n = CHUNK.min(trials - c * CHUNK);
            let mut bad = Vec::new();
            for _ in 0..n {
                if let Some(msg) = trial(&mut rng)? {
                    bad.push(msg);
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?;
    let all: Vec<String> = per_chunk.into_iter().flatten().collect();
    Ok(FuzzReport {
        name: name.to_string(),
        trials,
        violations: all.len(),
        examples: all.into_iter().take(MAX_EXAMPLES).collect(),
    })
}

pub fn random_word<R: Rng>(rng: &mut R, strands: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| Letter::new(rng.gen_range(1..strands), rng.gen_bool(0.5)))
        .collect();
    BraidWord::new(strands, letters).expect("indices drawn below strand count")
}

fn random_coeff<R: Rng>(rng: &mut R, ring: CoeffRing) -> i64 {
    if ring.is_integers() {
        rng.gen_range(-EXP_RANGE..=EXP_RANGE)
    } else {
        rng.gen_range(0..ring.modulus() as i64)
    }
}

fn nonzero_coeff<R: Rng>(rng: &mut R, ring: CoeffRing) -> i64 {
    loop {
        let c = random_coeff(rng, ring);
        if c != 0 {
            return c;
        }
    }
}

/// A polynomial with exponents in `[lo, hi]`; the coefficient at `hi` is
/// nonzero when `exact` is set, so the degree is exactly `hi`.
fn random_poly<R: Rng>(rng: &mut R, ring: CoeffRing, lo: i64, hi: i64, exact: bool) -> LaurentPoly {
    let mut terms: Vec<(i64, i64)> = Vec::new();
    for e in lo..hi {
        if rng.gen_bool(0.5) {
            terms.push((e, random_coeff(rng, ring)));
        }
    }
    if exact {
        terms.push((hi, nonzero_coeff(rng, ring)));
    } else if hi >= lo && rng.gen_bool(0.5) {
        terms.push((hi, random_coeff(rng, ring)));
    }
    LaurentPoly::from_terms(ring, terms)
}

/// A polynomial of degree below `bound`, zero about a fifth of the time.
fn poly_below<R: Rng>(rng: &mut R, ring: CoeffRing, bound: i64) -> LaurentPoly {
    if bound <= -EXP_RANGE || rng.gen_ratio(1, 5) {
        return LaurentPoly::zero(ring);
    }
    let hi = rng.gen_range(-EXP_RANGE..bound);
    random_poly(rng, ring, -EXP_RANGE, hi, true)
}

fn poly_at_most<R: Rng>(rng: &mut R, ring: CoeffRing, bound: i64) -> LaurentPoly {
    poly_below(rng, ring, bound + 1)
}

pub fn random_vector<R: Rng>(rng: &mut R, ring: CoeffRing, dim: usize) -> RowVector {
    let coords = (0..dim)
        .map(|_| random_poly(rng, ring, -EXP_RANGE, EXP_RANGE, false))
        .collect();
    RowVector::new(coords).unwrap()
}

/// A random member of `region` with exponents in `[-5, 5]`.
pub fn random_member<R: Rng>(rng: &mut R, ring: CoeffRing, region: Region) -> RowVector {
    let d = rng.gen_range(-EXP_RANGE..=EXP_RANGE);
    let lead = random_poly(rng, ring, -EXP_RANGE, d, true);
    let coords = match region {
        Region::V0 => vec![poly_below(rng, ring, d), lead],
        Region::VX => vec![poly_below(rng, ring, d), lead, poly_at_most(rng, ring, d)],
        Region::VY => vec![poly_below(rng, ring, d), poly_below(rng, ring, d), lead],
    };
    RowVector::new(coords).unwrap()
}

fn pick_ring<R: Rng>(rng: &mut R, moduli: &[u64]) -> CoeffRing {
    CoeffRing::new(moduli[rng.gen_range(0..moduli.len())]).unwrap()
}

/// `det ρ(w) = (−t)^{e(w)}` for random words on 3 and 4 strands.
pub fn det_fuzz(seed: u64, trials: usize, moduli: &[u64]) -> Result<FuzzReport> {
    run("determinant identity", seed, trials, |rng| {
        let strands = rng.gen_range(3..=4);
        let ring = pick_ring(rng, moduli);
        let w = random_word(rng, strands, 20);
        let det = burau_image(&w, ring)?.det();
        let expected = LaurentPoly::neg_t_pow(ring, w.exponent_sum());
        Ok((det != expected).then(|| format!("[{}] mod {}: det {det}", w.to_line(), ring.modulus())))
    })
}

/// Closed-form move actions agree with the matrix action on random vectors.
pub fn action_formula_fuzz(seed: u64, trials: usize, moduli: &[u64]) -> Result<FuzzReport> {
    run("action formulas", seed, trials, |rng| {
        let ring = pick_ring(rng, moduli);
        let v = random_vector(rng, ring, 3);
        for mv in Move::ALL {
            if action_table(&v, mv)? != v.act(&mv.expand())? {
                return Ok(Some(format!("{v} * {mv} mod {}", ring.modulus())));
            }
        }
        Ok(None)
    })
}

/// The closure rules of the automaton regions, one report per rule.
pub fn closure_fuzz(seed: u64, samples: usize, moduli: &[u64]) -> Result<Vec<FuzzReport>> {
    let d3sq = BraidWord::delta3().pow(2);
    let s1inv = BraidWord::from_ints(3, &[-1]).unwrap();
    let s2 = BraidWord::from_ints(3, &[2]).unwrap();
    let rules: Vec<(String, Region, BraidWord, Region)> = vec![
        ("V_X * x ⊂ V_X".into(), Region::VX, Move::X.expand(), Region::VX),
        ("V_X * y^-1 ⊂ V_X".into(), Region::VX, Move::YInv.expand(), Region::VX),
        ("V_X * xy ⊂ V_Y".into(), Region::VX, Move::XY.expand(), Region::VY),
        ("V_Y * y ⊂ V_Y".into(), Region::VY, Move::Y.expand(), Region::VY),
        ("V_Y * x^-1 ⊂ V_Y".into(), Region::VY, Move::XInv.expand(), Region::VY),
        ("V_Y * yx ⊂ V_X".into(), Region::VY, Move::YX.expand(), Region::VX),
        ("V_0 * σ1^-1 ⊂ V_0".into(), Region::V0, s1inv, Region::V0),
        ("V_0 * σ2 ⊂ V_0".into(), Region::V0, s2, Region::V0),
        ("V_0 * Δ3^2 ⊂ V_0".into(), Region::V0, d3sq, Region::V0),
    ];
    rules
        .iter()
        .enumerate()
        .map(|(i, (name, from, word, to))| {
            let rule_seed = seed.wrapping_add(i as u64);
            run(name, rule_seed, samples, |rng| {
                let ring = pick_ring(rng, moduli);
                let v = random_member(rng, ring, *from);
                if !region_member(*from, &v)? {
                    return Ok(Some(format!("sampler produced {v} ∉ {from}")));
                }
                let image = v.act(word)?;
                Ok((!region_member(*to, &image)?)
                    .then(|| format!("{v} ↦ {image} ∉ {to} (mod {})", ring.modulus())))
            })
        })
        .collect()
}

/// No random vector lies in both `V_X` and `V_Y`.
pub fn disjointness_fuzz(seed: u64, samples: usize, moduli: &[u64]) -> Result<FuzzReport> {
    run("V_X ∩ V_Y = ∅", seed, samples, |rng| {
        let ring = pick_ring(rng, moduli);
        // half the samples are drawn from one of the regions to make the test bite
        let v = match rng.gen_range(0..4) {
            0 => random_member(rng, ring, Region::VX),
            1 => random_member(rng, ring, Region::VY),
            _ => random_vector(rng, ring, 3),
        };
        let both = region_member(Region::VX, &v)? && region_member(Region::VY, &v)?;
        Ok(both.then(|| format!("{v}")))
    })
}

/// Random 3-braid words with identity image mod `p` must be trivial braids.
pub fn b3_faithful_fuzz(seed: u64, trials: usize, max_len: usize, ring: CoeffRing) -> Result<FuzzReport> {
    run("3-strand faithfulness", seed, trials, |rng| {
        let w = random_word(rng, 3, max_len);
        let identity = burau_image(&w, ring)?.is_identity();
        Ok((identity && !is_trivial_word(&w)?).then(|| format!("[{}]", w.to_line())))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_members_are_members() {
        let mut rng = chunk_rng(7, 0);
        for p in [2, 3, 5] {
            let ring = CoeffRing::modp(p);
            for region in [Region::V0, Region::VX, Region::VY] {
                for _ in 0..200 {
                    let v = random_member(&mut rng, ring, region);
                    assert!(region_member(region, &v).unwrap(), "{v} ∉ {region}");
                }
            }
        }
    }

    #[test]
    fn reports_depend_only_on_the_seed() {
        let a = det_fuzz(11, 300, &[0, 2]).unwrap();
        let b = det_fuzz(11, 300, &[0, 2]).unwrap();
        assert_eq!(a, b);
        assert!(a.is_clean());
    }

    #[test]
    fn a_broken_rule_is_reported() {
        // σ₁ does not preserve V_0: (0, 1) * σ1 = (1, 1)
        let s1 = BraidWord::from_ints(3, &[1]).unwrap();
        let report = run("bad", 3, 200, |rng| {
            let v = random_member(rng, CoeffRing::modp(2), Region::V0);
            Ok((!region_member(Region::V0, &v.act(&s1)?)?).then(|| v.to_string()))
        })
        .unwrap();
        assert!(report.violations > 0);
        assert!(report.examples.len() <= MAX_EXAMPLES);
    }
}
