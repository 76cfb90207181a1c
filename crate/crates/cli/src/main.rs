//! `burau`: evaluate Burau images, check kernel membership, emit and check
//! nontriviality certificates, run the randomized suites and kernel search.
//!
//! Exit codes: 0 clean, 1 negative verdict on a membership query, 2 usage
//! error, 3 internal inconsistency.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use burau_core::b2::{b2_normalize, b2_rotate_to_yx, b2_segment, B2Word};
use burau_core::braid::{parse_word_file, BraidWord, Letter};
use burau_core::burau::burau_image;
use burau_core::fuzz::{self, FuzzReport};
use burau_core::kernel::{
    alpha_k, brunnian_report, cooper_long_alpha, kernel_examples, kernel_search, verify_kernel,
    KernelExample, Nontriviality, SearchConfig,
};
use burau_core::laurent::CoeffRing;
use burau_core::pingpong::{
    certify_b3, certify_periodic, certify_reducible_a, certify_reducible_b, Certificate,
    NormalFormB3, NormalFormB4a, NormalFormB4b, Param, PeriodicVariant,
};
use burau_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "burau", version, about = "Reduced Burau representations of B3 and B4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "json")]
    Structured,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct WordInput {
    /// Strand count for `--word`.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Space separated generator indices, negative for inverses.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "word_file")]
    word: Option<String>,
    /// File of `n: k1 k2 ...` lines; `#` starts a comment.
    #[arg(long)]
    word_file: Option<PathBuf>,
}

#[derive(Args)]
struct KernelInput {
    #[command(flatten)]
    words: WordInput,
    /// Named example: alpha_<k> (mod 2 kernel) or alpha (mod 3 kernel).
    #[arg(long, conflicts_with_all = ["word", "word_file"])]
    example: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Burau matrix of each word.
    Eval {
        #[command(flatten)]
        input: WordInput,
        #[arg(long = "mod")]
        modulus: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether each word maps to the identity.
    KernelCheck {
        #[command(flatten)]
        input: KernelInput,
        /// Defaults to the example's modulus when `--example` is given.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Forget each strand of a 4-braid and decide the resulting 3-braids.
    Brunnian {
        #[command(flatten)]
        input: KernelInput,
        #[command(flatten)]
        out: Output,
    },
    /// Build a nontriviality certificate, or check one with `--check FILE`.
    #[command(args_conflicts_with_subcommands = true)]
    Certify {
        #[command(subcommand)]
        case: Option<CertifyCase>,
        #[arg(long)]
        check: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Collect `xyxy` factors of an x,y-word and segment the rest.
    B2Normalize {
        #[arg(long, allow_hyphen_values = true)]
        b2_word: String,
        #[command(flatten)]
        out: Output,
    },
    /// Closure rules, region disjointness and action formulas on random samples.
    PingpongFuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        moduli: Vec<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Random 3-braids with identity image must be trivial.
    B3FaithfulFuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate nontrivial 4-braid words with identity image.
    Search {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        max_len: usize,
        /// Letters allowed anywhere, e.g. "1 -1 2 -2".
        #[arg(long, allow_hyphen_values = true)]
        alphabet: Option<String>,
        /// Letter i of the word must be pattern[i mod len] or its inverse.
        #[arg(long, allow_hyphen_values = true)]
        pattern: Option<String>,
        #[arg(long)]
        meet_in_middle: bool,
        #[arg(long)]
        node_cap: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Print the named kernel elements in word-file format.
    #[command(alias = "kernel-examples")]
    Examples,
}

#[derive(Subcommand)]
enum CertifyCase {
    /// δ^k or γ^k with δ = σ_{n-1}⋯σ1 and γ = δσ1.
    Periodic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        variant: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// 3-braid normal forms: reducible Δ3^{2m}σ1^k(σ2σ1²σ2)^l, or P·Δ3^{2k}
    /// with P in σ2, σ1⁻¹ (`--pa-word`), or periodic (`--variant`).
    B3 {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        m: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        k: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        l: i64,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "variant")]
        pa_word: Option<String>,
        #[arg(long)]
        variant: Option<String>,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Δ4^{2l}(σ3σ2σ1²σ2σ3)^k·tail with tail in σ1, σ2.
    ReducibleA {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        tail: String,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// σ1^k·W(x, y) with x = σ2σ1²σ2 and y = σ3.
    ReducibleB {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        b2_word: String,
        #[arg(long = "mod")]
        modulus: u64,
    },
}

/// Failure of a command, mapped onto the exit-code contract.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run = Result<bool, Failure>;

fn ring(modulus: u64) -> Result<CoeffRing, Failure> {
    Ok(CoeffRing::new(modulus)?)
}

fn read_words(input: &WordInput) -> Result<Vec<BraidWord>, Failure> {
    match (&input.word, &input.word_file) {
        (Some(w), None) => Ok(vec![BraidWord::parse(w, input.n)?]),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(parse_word_file(&text)?)
        }
        _ => Err(Failure::Usage("give exactly one of --word or --word-file".into())),
    }
}

fn example(name: &str) -> Result<KernelExample, Failure> {
    if name == "alpha" {
        return Ok(cooper_long_alpha());
    }
    name.strip_prefix("alpha_")
        .and_then(|k| k.parse::<i64>().ok())
        .ok_or_else(|| Failure::Usage(format!("unknown example `{name}` (alpha_<k> or alpha)")))
        .and_then(|k| Ok(alpha_k(k)?))
}

fn read_kernel_input(input: &KernelInput) -> Result<(Vec<BraidWord>, Option<CoeffRing>), Failure> {
    match &input.example {
        Some(name) => {
            let ex = example(name)?;
            Ok((vec![ex.word], Some(ex.ring)))
        }
        None => Ok((read_words(&input.words)?, None)),
    }
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
}

fn eval(input: &WordInput, modulus: u64, out: &Output) -> Run {
    let ring = ring(modulus)?;
    let words = read_words(input)?;
    let mut records = Vec::new();
    for (i, w) in words.iter().enumerate() {
        let m = burau_image(w, ring)?;
        match out.format {
            Format::Text => {
                if i > 0 {
                    println!();
                }
                println!("# {}", w.to_line());
                print!("{}", m.render_grid());
            }
            Format::Structured => records.push(json!({ "word": w.to_line(), "image": m.to_record() })),
        }
    }
    if out.format == Format::Structured {
        print_json(&Value::Array(records));
    }
    Ok(true)
}

fn kernel_check(input: &KernelInput, modulus: Option<u64>, out: &Output) -> Run {
    let (words, default_ring) = read_kernel_input(input)?;
    let ring = match (modulus, default_ring) {
        (Some(m), _) => ring(m)?,
        (None, Some(r)) => r,
        (None, None) => return Err(Failure::Usage("--mod is required unless --example is given".into())),
    };
    let mut all = true;
    let mut records = Vec::new();
    for w in &words {
        let identity = verify_kernel(w, ring)?;
        all &= identity;
        match out.format {
            Format::Text => {
                if words.len() > 1 {
                    println!("# {}", w.to_line());
                }
                println!("identity: {}", if identity { "yes" } else { "no" });
            }
            Format::Structured => records.push(json!({
                "word": w.to_line(),
                "modulus": ring.modulus(),
                "identity": identity,
            })),
        }
    }
    if out.format == Format::Structured {
        print_json(&Value::Array(records));
    }
    Ok(all)
}

fn brunnian(input: &KernelInput, out: &Output) -> Run {
    let (words, _) = read_kernel_input(input)?;
    let mut all = true;
    let mut reports = Vec::new();
    for w in &words {
        let report = brunnian_report(w)?;
        all &= report.is_brunnian();
        match out.format {
            Format::Text => {
                println!("# {}", w.to_line());
                print!("{report}");
            }
            Format::Structured => {
                let mut v = serde_json::to_value(&report).expect("report serializes");
                v["brunnian"] = json!(report.is_brunnian());
                reports.push(v);
            }
        }
    }
    if out.format == Format::Structured {
        print_json(&Value::Array(reports));
    }
    Ok(all)
}

fn certificate_json(c: &Certificate) -> Value {
    let params: serde_json::Map<String, Value> = c
        .params
        .iter()
        .map(|(name, p)| {
            let v = match p {
                Param::Int(i) => json!(i),
                Param::Text(s) => json!(s),
            };
            (name.clone(), v)
        })
        .collect();
    json!({
        "case": c.case,
        "modulus": c.ring.modulus(),
        "braid": c.braid.to_line(),
        "params": params,
        "evidence": c.evidence.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "verdict": c.verdict.to_string(),
    })
}

fn build_certificate(case: &CertifyCase) -> Result<Certificate, Failure> {
    Ok(match case {
        CertifyCase::Periodic { n, variant, k, modulus } => {
            certify_periodic(*n, variant.parse()?, *k, ring(*modulus)?)?
        }
        CertifyCase::B3 { m, k, l, pa_word, variant, modulus } => {
            let form = match (pa_word, variant) {
                (Some(w), _) => NormalFormB3::PA { word: BraidWord::parse(w, 3)?, k: *k },
                (None, Some(v)) => NormalFormB3::Periodic { variant: v.parse::<PeriodicVariant>()?, k: *k },
                (None, None) => NormalFormB3::Reducible { m: *m, k: *k, l: *l },
            };
            certify_b3(&form, ring(*modulus)?)?
        }
        CertifyCase::ReducibleA { k, l, tail, modulus } => {
            let tail = BraidWord::parse(tail, 3)?;
            certify_reducible_a(&NormalFormB4a { k: *k, l: *l, tail }, ring(*modulus)?)?
        }
        CertifyCase::ReducibleB { k, b2_word, modulus } => {
            let tail = B2Word::parse(b2_word)?;
            certify_reducible_b(&NormalFormB4b { k: *k, tail }, ring(*modulus)?)?
        }
    })
}

fn certify(case: &Option<CertifyCase>, check: &Option<PathBuf>, out: &Output) -> Run {
    if let Some(path) = check {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let cert = Certificate::parse(&text)?;
        let outcome = cert.audit();
        match out.format {
            Format::Text => match &outcome {
                Ok(()) => println!("certificate valid: {}", cert.verdict),
                Err(e) => println!("certificate invalid: {e}"),
            },
            Format::Structured => print_json(&json!({
                "valid": outcome.is_ok(),
                "verdict": cert.verdict.to_string(),
                "error": outcome.as_ref().err().map(|e| e.to_string()),
            })),
        }
        return Ok(outcome.is_ok());
    }
    let case = case
        .as_ref()
        .ok_or_else(|| Failure::Usage("give a certificate case or --check FILE".into()))?;
    let cert = build_certificate(case)?;
    if let Err(e) = cert.audit() {
        return Err(Failure::Internal(format!("emitted certificate fails its audit: {e}\n{cert}")));
    }
    match out.format {
        Format::Text => print!("{cert}"),
        Format::Structured => print_json(&certificate_json(&cert)),
    }
    Ok(true)
}

fn b2_normalize_cmd(text: &str, out: &Output) -> Run {
    let w = B2Word::parse(text)?;
    let normal = b2_normalize(&w);
    let p = &normal.positive;
    let segmented = match b2_rotate_to_yx(p) {
        Ok((rotated, conjugator)) => {
            let seq = b2_segment(&rotated)?;
            Some((rotated, conjugator, seq))
        }
        Err(_) => None,
    };
    match out.format {
        Format::Text => {
            println!("delta_exp: {}", normal.delta_exp);
            println!("positive: {p}");
            if let Some((rotated, conjugator, seq)) = &segmented {
                println!("rotated: {rotated}");
                println!("conjugator: {conjugator}");
                let moves: Vec<String> = seq.moves.iter().map(|s| format!("{}:{}->{}", s.mv, s.from, s.to)).collect();
                println!("moves: {}", moves.join(" "));
                println!("segment_delta_exp: {}", seq.delta_exp);
            }
        }
        Format::Structured => {
            let seg = segmented.as_ref().map(|(rotated, conjugator, seq)| {
                json!({
                    "rotated": rotated.to_string(),
                    "conjugator": conjugator.to_string(),
                    "delta_exp": seq.delta_exp,
                    "sigma1_exp": seq.sigma1_exp,
                    "moves": seq.moves.iter().map(|s| json!({
                        "move": s.mv.to_string(),
                        "from": s.from.to_string(),
                        "to": s.to.to_string(),
                    })).collect::<Vec<_>>(),
                })
            });
            print_json(&json!({
                "delta_exp": normal.delta_exp,
                "positive": p.to_string(),
                "segmentation": seg,
            }));
        }
    }
    Ok(true)
}

fn print_reports(reports: &[FuzzReport], out: &Output) -> Run {
    match out.format {
        Format::Text => reports.iter().for_each(|r| print!("{r}")),
        Format::Structured => print_json(&serde_json::to_value(reports).expect("reports serialize")),
    }
    Ok(reports.iter().all(FuzzReport::is_clean))
}

fn parse_letters(text: &str) -> Result<Vec<Letter>, Failure> {
    Ok(BraidWord::parse(text, 4)?.letters().to_vec())
}

#[allow(clippy::too_many_arguments)]
fn search(
    modulus: u64,
    max_len: usize,
    alphabet: &Option<String>,
    pattern: &Option<String>,
    mitm: bool,
    node_cap: Option<u64>,
    out: &Output,
) -> Run {
    let mut cfg = SearchConfig::new(ring(modulus)?, max_len);
    if let Some(a) = alphabet {
        cfg.alphabet = parse_letters(a)?;
    }
    if let Some(p) = pattern {
        cfg.positional = Some(parse_letters(p)?.into_iter().map(|l| vec![l, l.inv()]).collect());
    }
    cfg.meet_in_middle = mitm;
    if let Some(cap) = node_cap {
        cfg.node_cap = cap;
    }
    let result = kernel_search(&cfg)?;
    match out.format {
        Format::Text => {
            for hit in &result.hits {
                println!("{}", hit.line());
            }
            eprintln!(
                "# {} hits, {} words visited, complete: {}",
                result.hits.len(),
                result.visited,
                if result.complete { "yes" } else { "no" }
            );
        }
        Format::Structured => print_json(&json!({
            "complete": result.complete,
            "visited": result.visited,
            "hits": result.hits.iter().map(|h| json!({
                "length": h.word.len(),
                "word": h.word.to_string(),
                "verified": matches!(h.nontriviality, Nontriviality::Certified { .. }),
            })).collect::<Vec<_>>(),
        })),
    }
    Ok(true)
}

fn examples() -> Run {
    for ex in kernel_examples() {
        println!("# {} (mod {}): {}", ex.name, ex.ring.modulus(), ex.note);
        println!("{}", ex.word.to_line());
    }
    Ok(true)
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Eval { input, modulus, out } => eval(input, *modulus, out),
        Command::KernelCheck { input, modulus, out } => kernel_check(input, *modulus, out),
        Command::Brunnian { input, out } => brunnian(input, out),
        Command::Certify { case, check, out } => certify(case, check, out),
        Command::B2Normalize { b2_word, out } => b2_normalize_cmd(b2_word, out),
        Command::PingpongFuzz { seed, samples, moduli, out } => {
            let mut reports = fuzz::closure_fuzz(*seed, *samples, moduli)?;
            reports.push(fuzz::disjointness_fuzz(*seed, *samples, moduli)?);
            reports.push(fuzz::action_formula_fuzz(*seed, *samples, moduli)?);
            print_reports(&reports, out)
        }
        Command::B3FaithfulFuzz { seed, trials, max_len, modulus, out } => {
            let report = fuzz::b3_faithful_fuzz(*seed, *trials, *max_len, ring(*modulus)?)?;
            print_reports(&[report], out)
        }
        Command::Search { modulus, max_len, alphabet, pattern, meet_in_middle, node_cap, out } => {
            search(*modulus, *max_len, alphabet, pattern, *meet_in_middle, *node_cap, out)
        }
        Command::Examples => examples(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal inconsistency: {msg}");
            ExitCode::from(3)
        }
    }
}
