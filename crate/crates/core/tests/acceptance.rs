//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use burau_core::b2::{b2_segment, B2Letter, B2Word, Move, State};
use burau_core::braid::{braid_equal, is_trivial_word, BraidWord, Letter};
use burau_core::burau::{burau_image, RowVector};
use burau_core::fuzz;
use burau_core::kernel::{
    alpha_k, alpha_prime_product_form, cooper_long_alpha, cooper_long_alpha_prime, kernel_search,
    verify_kernel, SearchConfig,
};
use burau_core::laurent::CoeffRing;
use burau_core::pingpong::{
    action_table, certify_b3, certify_periodic, certify_reducible_a, certify_reducible_b, Certificate,
    Evidence, NormalFormB3, NormalFormB4a, NormalFormB4b, PeriodicVariant, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn kernel_membership() -> Outcome {
    let start = Instant::now();
    for k in 1..=4 {
        let a = alpha_k(k).map_err(e)?;
        ensure(verify_kernel(&a.word, CoeffRing::modp(2)).map_err(e)?, || {
            format!("alpha_{k} is not in the mod 2 kernel")
        })?;
    }
    let alpha = cooper_long_alpha();
    ensure(verify_kernel(&alpha.word, CoeffRing::modp(3)).map_err(e)?, || {
        "alpha is not in the mod 3 kernel".into()
    })?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("alpha_1..alpha_4 mod 2 and alpha mod 3 map to I ({:?})", start.elapsed()))
}

fn non_brunnian_witnesses() -> Outcome {
    let start = Instant::now();
    for k in 1..=4 {
        let a = alpha_k(k).map_err(e)?.word;
        let two = a.forget_strands(&[2, 4]).map_err(e)?;
        ensure(two.strands() == 2 && two.exponent_sum() == 4 * k, || {
            format!("alpha_{k} minus strands 2, 4 has exponent sum {}", two.exponent_sum())
        })?;
        let power = BraidWord::generator_power(2, 1, 4 * k).map_err(e)?;
        ensure(braid_equal(&two, &power).map_err(e)?, || {
            format!("alpha_{k} minus strands 2, 4 is not σ1^{}", 4 * k)
        })?;
    }
    let alpha = cooper_long_alpha().word;
    let prime = cooper_long_alpha_prime();
    let forgotten = alpha.forget_strand(4).map_err(e)?;
    ensure(braid_equal(&forgotten, &prime).map_err(e)?, || {
        format!("forgetting strand 4 of alpha gives [{}], not alpha'", forgotten.to_line())
    })?;
    ensure(!is_trivial_word(&prime).map_err(e)?, || "alpha' is trivial".into())?;
    ensure(!burau_image(&prime, CoeffRing::INTEGERS).map_err(e)?.is_identity(), || {
        "alpha' has identity image over Z".into()
    })?;
    ensure(braid_equal(&prime, &alpha_prime_product_form()).map_err(e)?, || {
        "alpha' differs from its product form".into()
    })?;
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("forgetting witnesses confirmed ({:?})", start.elapsed()))
}

fn determinant_fuzz() -> Outcome {
    let r = fuzz::det_fuzz(0xD37, 1000, &[0, 2, 3, 5]).map_err(e)?;
    ensure(r.is_clean(), || r.to_string())?;
    Ok(format!("{} words, 0 failures", r.trials))
}

fn action_formulas() -> Outcome {
    for m in [0, 2, 3, 5] {
        let ring = CoeffRing::new(m).map_err(e)?;
        for i in 0..3 {
            let v = RowVector::basis(3, i, ring);
            for mv in Move::ALL {
                let table = action_table(&v, mv).map_err(e)?;
                let matrix = v.act(&mv.expand()).map_err(e)?;
                ensure(table == matrix, || format!("{v} * {mv}: {table} vs {matrix}"))?;
            }
        }
    }
    let r = fuzz::action_formula_fuzz(0xAC7, 1000, &[0, 2, 3, 5]).map_err(e)?;
    ensure(r.is_clean(), || r.to_string())?;
    Ok(format!("basis vectors and {} random vectors agree", r.trials))
}

fn closure_rules() -> Outcome {
    let reports = fuzz::closure_fuzz(0xC105E, 10_000, &[2, 3, 5]).map_err(e)?;
    let disjoint = fuzz::disjointness_fuzz(0xD15, 10_000, &[2, 3, 5]).map_err(e)?;
    for r in reports.iter().chain([&disjoint]) {
        ensure(r.is_clean(), || r.to_string())?;
    }
    Ok(format!("{} rules x 10^4 samples plus disjointness, 0 violations", reports.len()))
}

/// Positive words over x, y avoiding xyxy and yxyx, starting y and ending x.
fn segmentable_words(max_len: usize) -> Vec<B2Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<B2Letter>> = vec![vec![B2Letter::Y]];
    for _ in 1..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in [B2Letter::X, B2Letter::Y] {
                let mut c = w.clone();
                c.push(l);
                if !B2Word::new(c.clone()).has_forbidden_factor() {
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().filter(|w| w.last() == Some(&B2Letter::X)).cloned().map(B2Word::new));
        layer = next;
    }
    out
}

fn segmentation() -> Outcome {
    let start = Instant::now();
    let words = segmentable_words(12);
    for p in &words {
        let seq = b2_segment(p).map_err(|err| format!("{p}: {err}"))?;
        ensure(seq.is_well_formed(), || format!("{p}: moves do not chain"))?;
        ensure(seq.moves.first().map(|s| s.from) == Some(State::Y), || format!("{p}: does not start at Y"))?;
        ensure(seq.moves.last().map(|s| s.to) == Some(State::X), || format!("{p}: does not end at X"))?;
        let lhs = burau_image(&p.expand(), CoeffRing::INTEGERS).map_err(e)?;
        let rhs = burau_image(&seq.expand(), CoeffRing::INTEGERS).map_err(e)?;
        ensure(lhs == rhs, || format!("{p}: segmented product has a different image"))?;
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{} words of length <= 12 ({:?})", words.len(), start.elapsed()))
}

fn faithfulness() -> Outcome {
    let start = Instant::now();
    let r = fuzz::b3_faithful_fuzz(0xFA17, 10_000, 16, CoeffRing::modp(2)).map_err(e)?;
    ensure(r.is_clean(), || r.to_string())?;
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{} random 3-braids, 0 counterexamples ({:?})", r.trials, start.elapsed()))
}

fn random_b2_word(rng: &mut ChaCha8Rng, max_len: usize) -> B2Word {
    let len = rng.gen_range(0..=max_len);
    let letters = [B2Letter::X, B2Letter::Y, B2Letter::XInv, B2Letter::YInv];
    B2Word::new((0..len).map(|_| letters[rng.gen_range(0..4)]).collect())
}

fn pa_word(rng: &mut ChaCha8Rng, max_len: usize) -> BraidWord {
    let len = rng.gen_range(1..=max_len);
    let mut letters = vec![Letter::pos(2)];
    letters.extend((1..len).map(|_| if rng.gen_bool(0.5) { Letter::pos(2) } else { Letter::neg(1) }));
    BraidWord::new(3, letters).unwrap()
}

fn certificate_corpus() -> Result<Vec<Certificate>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xCE27);
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let ring = CoeffRing::modp(p);
        for n in [3, 4] {
            for variant in [PeriodicVariant::Delta, PeriodicVariant::Gamma] {
                for k in -3..=3 {
                    out.push(certify_periodic(n, variant, k, ring).map_err(e)?);
                }
            }
        }
        for m in -2..=2 {
            for k in -4..=4 {
                for l in -2..=2 {
                    out.push(certify_b3(&NormalFormB3::Reducible { m, k, l }, ring).map_err(e)?);
                }
            }
        }
        for _ in 0..40 {
            let form = NormalFormB3::PA { word: pa_word(&mut rng, 10), k: rng.gen_range(-2..=2) };
            out.push(certify_b3(&form, ring).map_err(e)?);
        }
        for k in -2..=2 {
            for l in -2..=2 {
                for _ in 0..3 {
                    let tail = fuzz::random_word(&mut rng, 3, 8);
                    out.push(certify_reducible_a(&NormalFormB4a { k, l, tail }, ring).map_err(e)?);
                }
            }
        }
        for _ in 0..150 {
            let form = NormalFormB4b { k: rng.gen_range(-4..=4), tail: random_b2_word(&mut rng, 8) };
            out.push(certify_reducible_b(&form, ring).map_err(|err| format!("{form:?}: {err}"))?);
        }
    }
    Ok(out)
}

fn certificate_audit() -> Outcome {
    let corpus = certificate_corpus()?;
    for c in &corpus {
        c.audit().map_err(|err| format!("{err}\n{c}"))?;
        let back = Certificate::parse(&c.to_string()).map_err(e)?;
        ensure(&back == c, || format!("text form does not round-trip:\n{c}"))?;
    }
    let trivial = corpus.iter().filter(|c| c.verdict == Verdict::TrivialBraid).count();
    Ok(format!("{} certificates re-validated ({trivial} trivial)", corpus.len()))
}

fn periodic() -> Outcome {
    let mut count = 0;
    for n in [3, 4] {
        for variant in [PeriodicVariant::Delta, PeriodicVariant::Gamma] {
            for k in (-3..=3).filter(|&k| k != 0) {
                for p in [2, 3] {
                    let c = certify_periodic(n, variant, k, CoeffRing::modp(p)).map_err(e)?;
                    ensure(c.verdict == Verdict::NontrivialImage, || format!("{c}"))?;
                    let det_ok = c.evidence.iter().any(|item| {
                        matches!(item, Evidence::Det { value, .. } if !value.is_one())
                    });
                    ensure(det_ok, || format!("no det != 1 item:\n{c}"))?;
                    c.check().map_err(e)?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} certificates with det != 1"))
}

fn search() -> Outcome {
    let start = Instant::now();
    let cfg = SearchConfig::new(CoeffRing::modp(2), 8);
    let first = kernel_search(&cfg).map_err(e)?;
    let elapsed = start.elapsed();
    ensure(first.complete && first.hits.is_empty(), || {
        format!("complete={} hits={}", first.complete, first.hits.len())
    })?;
    within(elapsed, Duration::from_secs(60))?;
    let second = kernel_search(&cfg).map_err(e)?;
    ensure(first == second, || "repeated search differs".into())?;

    let pattern = [-1, 2, 1, 3, -2, -3].map(|k| Letter::from_int(k).unwrap());
    let mut directed = SearchConfig::new(CoeffRing::modp(2), 24);
    directed.positional = Some(pattern.iter().map(|&l| vec![l, l.inv()]).collect());
    directed.meet_in_middle = true;
    let found = kernel_search(&directed).map_err(e)?;
    let a1 = alpha_k(1).map_err(e)?.word;
    ensure(found.hits.iter().any(|h| h.word == a1), || "directed search missed alpha_1".into())?;
    Ok(format!(
        "length <= 8 empty ({} words, {elapsed:?}); directed search found alpha_1",
        first.visited
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("kernel membership", kernel_membership),
        ("non-Brunnian witnesses", non_brunnian_witnesses),
        ("determinant identity fuzz", determinant_fuzz),
        ("action formula agreement", action_formulas),
        ("closure rule fuzz", closure_rules),
        ("segmentation totality and soundness", segmentation),
        ("3-strand faithfulness cross-check", faithfulness),
        ("certificate soundness audit", certificate_audit),
        ("periodic certificates", periodic),
        ("search regression", search),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
