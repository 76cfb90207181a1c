//! Self-validating nontriviality certificates.
//!
//! Text format, one item per line:
//!
//! ```text
//! case: reducible-b/mixed
//! modulus: 2
//! braid: [4: 3 2 1 1 2]
//! param: k = 0
//! param: tail = "y x"
//! act: (0, 0, 1) * [4: 3 2 1 1 2] = (t+t^2, t+t^3, t)
//! member: (t+t^2, t+t^3, t) ∈ V_X
//! nonmember: (1, 0) ∉ V_0
//! det: [4: 1 2 3] = t^3
//! entry: [3: 1] (1,1) = t
//! identity: [3: ]
//! trivial: [4: 1 -1]
//! equal: [3: 2 1 1 2] = [3: 1 2 1 1 2 1 -1 -1]
//! conj: [4: ...] ~ [4: ...] by [4: ...]
//! int: k + l != 0
//! verdict: NONTRIVIAL_IMAGE
//! ```
//!
//! `conj: [a] ~ [b] by [c]` claims `b = c⁻¹ a c`. Every item is recomputed by
//! [`Certificate::check`]; the verdict must then follow from the items.

use std::collections::HashSet;
use std::fmt;

use crate::braid::{braid_equal, is_trivial_word, BraidWord};
use crate::burau::{burau_image, RowVector};
use crate::error::{Error, Result};
use crate::laurent::{CoeffRing, LaurentPoly};

use super::{region_member, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    NontrivialImage,
    TrivialBraid,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NontrivialImage => write!(f, "NONTRIVIAL_IMAGE"),
            Verdict::TrivialBraid => write!(f, "TRIVIAL_BRAID"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Int(i64),
    Text(String),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Text(s) => write!(f, "\"{s}\""),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ne,
}

/// `Σ coeff·param  (= | !=)  rhs` over the certificate's integer parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRelation {
    pub terms: Vec<(i64, String)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl IntRelation {
    pub fn new(terms: &[(i64, &str)], relation: Relation, rhs: i64) -> Self {
        IntRelation {
            terms: terms.iter().map(|&(c, n)| (c, n.to_string())).collect(),
            relation,
            rhs,
        }
    }

    fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Certificate(format!("malformed integer relation `{text}`"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (lhs, relation, rhs) = if let Some((l, r)) = compact.split_once("!=") {
            (l.to_string(), Relation::Ne, r)
        } else if let Some((l, r)) = compact.split_once('=') {
            (l.to_string(), Relation::Eq, r)
        } else {
            return Err(bad());
        };
        let rhs: i64 = rhs.parse().map_err(|_| bad())?;
        let mut terms = Vec::new();
        let mut rest = lhs.as_str();
        while !rest.is_empty() {
            let mut sign = 1;
            if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let (coeff, name) = match term.split_once('*') {
                Some((c, n)) => (c.parse::<i64>().map_err(|_| bad())?, n),
                None => (1, term),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(bad());
            }
            terms.push((sign * coeff, name.to_string()));
        }
        if terms.is_empty() {
            return Err(bad());
        }
        Ok(IntRelation {
            terms,
            relation,
            rhs,
        })
    }
}

impl fmt::Display for IntRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, name)) in self.terms.iter().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            match (i, sign) {
                (0, "+") => {}
                (0, _) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if mag == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        let rel = match self.relation {
            Relation::Eq => "=",
            Relation::Ne => "!=",
        };
        write!(f, " {rel} {}", self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// `start * word = result`.
    Act {
        start: RowVector,
        word: BraidWord,
        result: RowVector,
    },
    Member {
        vector: RowVector,
        region: Region,
        member: bool,
    },
    /// `det ρ(word) = value`.
    Det { word: BraidWord, value: LaurentPoly },
    /// `ρ(word)[row][col] = value`, 1-based indices.
    Entry {
        word: BraidWord,
        row: usize,
        col: usize,
        value: LaurentPoly,
    },
    /// `ρ(word)` is the identity matrix.
    Identity { word: BraidWord },
    /// `word` is the trivial braid.
    Trivial { word: BraidWord },
    /// `left` and `right` are the same braid.
    Equal { left: BraidWord, right: BraidWord },
    /// `result = conjugator⁻¹ · word · conjugator`.
    Conjugate {
        word: BraidWord,
        result: BraidWord,
        conjugator: BraidWord,
    },
    Int(IntRelation),
}

fn render_word(w: &BraidWord) -> String {
    format!("[{}]", w.to_line())
}

fn parse_word(text: &str) -> Result<BraidWord> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Certificate(format!("expected `[n: ...]`, got `{text}`")))?;
    BraidWord::parse_line(inner)
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Act {
                start,
                word,
                result,
            } => write!(f, "act: {start} * {} = {result}", render_word(word)),
            Evidence::Member {
                vector,
                region,
                member: true,
            } => write!(f, "member: {vector} ∈ {region}"),
            Evidence::Member { vector, region, .. } => write!(f, "nonmember: {vector} ∉ {region}"),
            Evidence::Det { word, value } => write!(f, "det: {} = {value}", render_word(word)),
            Evidence::Entry {
                word,
                row,
                col,
                value,
            } => write!(f, "entry: {} ({row},{col}) = {value}", render_word(word)),
            Evidence::Identity { word } => write!(f, "identity: {}", render_word(word)),
            Evidence::Trivial { word } => write!(f, "trivial: {}", render_word(word)),
            Evidence::Equal { left, right } => {
                write!(f, "equal: {} = {}", render_word(left), render_word(right))
            }
            Evidence::Conjugate {
                word,
                result,
                conjugator,
            } => write!(
                f,
                "conj: {} ~ {} by {}",
                render_word(word),
                render_word(result),
                render_word(conjugator)
            ),
            Evidence::Int(rel) => write!(f, "int: {rel}"),
        }
    }
}

impl Evidence {
    fn parse(key: &str, body: &str, ring: CoeffRing) -> Result<Evidence> {
        let bad = || Error::Certificate(format!("malformed `{key}` item: `{body}`"));
        let split2 = |sep: &str| body.split_once(sep).ok_or_else(bad);
        Ok(match key {
            "act" => {
                let (lhs, result) = split2(" = ")?;
                let (start, word) = lhs.split_once(" * ").ok_or_else(bad)?;
                Evidence::Act {
                    start: RowVector::parse(start, ring)?,
                    word: parse_word(word)?,
                    result: RowVector::parse(result, ring)?,
                }
            }
            "member" | "nonmember" => {
                let sep = if key == "member" { " ∈ " } else { " ∉ " };
                let (v, region) = split2(sep)?;
                Evidence::Member {
                    vector: RowVector::parse(v, ring)?,
                    region: region.parse()?,
                    member: key == "member",
                }
            }
            "det" => {
                let (word, value) = split2(" = ")?;
                Evidence::Det {
                    word: parse_word(word)?,
                    value: LaurentPoly::parse(value, ring)?,
                }
            }
            "entry" => {
                let (lhs, value) = split2(" = ")?;
                let close = lhs.find(']').ok_or_else(bad)?;
                let word = parse_word(&lhs[..=close])?;
                let idx = lhs[close + 1..]
                    .trim()
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let (r, c) = idx.split_once(',').ok_or_else(bad)?;
                Evidence::Entry {
                    word,
                    row: r.trim().parse().map_err(|_| bad())?,
                    col: c.trim().parse().map_err(|_| bad())?,
                    value: LaurentPoly::parse(value, ring)?,
                }
            }
            "identity" => Evidence::Identity {
                word: parse_word(body)?,
            },
            "trivial" => Evidence::Trivial {
                word: parse_word(body)?,
            },
            "equal" => {
                let (l, r) = split2(" = ")?;
                Evidence::Equal {
                    left: parse_word(l)?,
                    right: parse_word(r)?,
                }
            }
            "conj" => {
                let (a, rest) = split2(" ~ ")?;
                let (b, c) = rest.split_once(" by ").ok_or_else(bad)?;
                Evidence::Conjugate {
                    word: parse_word(a)?,
                    result: parse_word(b)?,
                    conjugator: parse_word(c)?,
                }
            }
            "int" => Evidence::Int(IntRelation::parse(body)?),
            _ => return Err(Error::Certificate(format!("unknown item `{key}`"))),
        })
    }

    /// Recomputes the claim; `Ok(())` when it holds.
    fn verify(&self, ring: CoeffRing, params: &[(String, Param)]) -> Result<()> {
        let fail = |what: String| Err(Error::Certificate(format!("{what} does not hold: {self}")));
        match self {
            Evidence::Act {
                start,
                word,
                result,
            } => {
                let got = start.act(word)?;
                if &got != result || start.ring() != ring {
                    return fail(format!("row action (got {got})"));
                }
            }
            Evidence::Member {
                vector,
                region,
                member,
            } => {
                if region_member(*region, vector)? != *member {
                    return fail("region membership".into());
                }
            }
            Evidence::Det { word, value } => {
                let det = burau_image(word, ring)?.det();
                if &det != value {
                    return fail(format!("determinant (got {det})"));
                }
            }
            Evidence::Entry {
                word,
                row,
                col,
                value,
            } => {
                let m = burau_image(word, ring)?;
                if *row == 0 || *col == 0 || *row > m.dim() || *col > m.dim() {
                    return fail("entry index".into());
                }
                if m.entry(row - 1, col - 1) != value {
                    return fail("matrix entry".into());
                }
            }
            Evidence::Identity { word } => {
                if !burau_image(word, ring)?.is_identity() {
                    return fail("identity image".into());
                }
            }
            Evidence::Trivial { word } => {
                if !is_trivial_word(word)? {
                    return fail("word triviality".into());
                }
            }
            Evidence::Equal { left, right } => {
                if !braid_equal(left, right)? {
                    return fail("braid equality".into());
                }
            }
            Evidence::Conjugate {
                word,
                result,
                conjugator,
            } => {
                let expected = conjugator.inverse().concat(word)?.concat(conjugator)?;
                if !braid_equal(result, &expected)? {
                    return fail("conjugation".into());
                }
            }
            Evidence::Int(rel) => {
                let mut lhs = 0i64;
                for (c, name) in &rel.terms {
                    match params.iter().find(|(n, _)| n == name) {
                        Some((_, Param::Int(v))) => lhs += c * v,
                        _ => return fail(format!("integer parameter `{name}`")),
                    }
                }
                let holds = match rel.relation {
                    Relation::Eq => lhs == rel.rhs,
                    Relation::Ne => lhs != rel.rhs,
                };
                if !holds {
                    return fail("integer relation".into());
                }
            }
        }
        Ok(())
    }

    /// The word this item proves to have non-identity image, if any.
    fn nontrivial_witness(&self) -> Option<&BraidWord> {
        match self {
            Evidence::Act {
                start,
                word,
                result,
            } if start != result => Some(word),
            Evidence::Det { word, value } if !value.is_one() => Some(word),
            Evidence::Entry {
                word,
                row,
                col,
                value,
            } => {
                let expected_one = row == col;
                let off = if expected_one { !value.is_one() } else { !value.is_zero() };
                off.then_some(word)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub case: String,
    pub ring: CoeffRing,
    /// The braid the verdict is about.
    pub braid: BraidWord,
    pub params: Vec<(String, Param)>,
    pub evidence: Vec<Evidence>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn param_int(&self, name: &str) -> Option<i64> {
        self.params.iter().find_map(|(n, p)| match p {
            Param::Int(v) if n == name => Some(*v),
            _ => None,
        })
    }

    /// Words proven equal or conjugate to `braid` by the certificate's own items.
    fn linked_words(&self) -> HashSet<BraidWord> {
        let mut linked = HashSet::from([self.braid.clone()]);
        loop {
            let before = linked.len();
            for item in &self.evidence {
                let (a, b) = match item {
                    Evidence::Equal { left, right } => (left, right),
                    Evidence::Conjugate { word, result, .. } => (word, result),
                    _ => continue,
                };
                if linked.contains(a) || linked.contains(b) {
                    linked.insert(a.clone());
                    linked.insert(b.clone());
                }
            }
            if linked.len() == before {
                return linked;
            }
        }
    }

    /// Re-runs every evidence item and checks that the verdict follows.
    pub fn check(&self) -> Result<()> {
        for item in &self.evidence {
            item.verify(self.ring, &self.params)?;
        }
        match self.verdict {
            Verdict::TrivialBraid => {
                let direct = self
                    .evidence
                    .iter()
                    .any(|e| matches!(e, Evidence::Trivial { word } if *word == self.braid));
                if !direct {
                    return Err(Error::Certificate(
                        "TRIVIAL_BRAID needs a `trivial` item on the certified braid".into(),
                    ));
                }
            }
            Verdict::NontrivialImage => {
                let linked = self.linked_words();
                let decisive = self
                    .evidence
                    .iter()
                    .filter_map(Evidence::nontrivial_witness)
                    .any(|w| linked.contains(w));
                if !decisive {
                    return Err(Error::Certificate(
                        "no item shows a non-identity image for the certified braid".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Independent recomputation: the full matrix product of the certified
    /// braid must agree with the verdict.
    pub fn audit(&self) -> Result<()> {
        self.check()?;
        let identity = burau_image(&self.braid, self.ring)?.is_identity();
        match self.verdict {
            Verdict::NontrivialImage if identity => Err(Error::Certificate(
                "certified braid has identity image".into(),
            )),
            Verdict::TrivialBraid if !identity || !is_trivial_word(&self.braid)? => {
                Err(Error::Certificate("certified braid is not trivial".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn parse(text: &str) -> Result<Certificate> {
        let mut case = None;
        let mut ring = None;
        let mut braid = None;
        let mut params = Vec::new();
        let mut raw_items: Vec<(String, String)> = Vec::new();
        let mut verdict = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, body) = line
                .split_once(':')
                .ok_or_else(|| Error::Certificate(format!("line without `key:`: `{line}`")))?;
            let body = body.trim();
            match key {
                "case" => case = Some(body.to_string()),
                "modulus" => {
                    let m: u64 = body
                        .parse()
                        .map_err(|_| Error::Certificate(format!("bad modulus `{body}`")))?;
                    ring = Some(CoeffRing::new(m)?);
                }
                "braid" => braid = Some(parse_word(body)?),
                "param" => {
                    let (name, value) = body
                        .split_once('=')
                        .ok_or_else(|| Error::Certificate(format!("bad param `{body}`")))?;
                    let value = value.trim();
                    let param = match value.strip_prefix('"').and_then(|v| v.strip_suffix('"')) {
                        Some(text) => Param::Text(text.to_string()),
                        None => Param::Int(value.parse().map_err(|_| {
                            Error::Certificate(format!("bad integer param `{value}`"))
                        })?),
                    };
                    params.push((name.trim().to_string(), param));
                }
                "verdict" => {
                    verdict = Some(match body {
                        "NONTRIVIAL_IMAGE" => Verdict::NontrivialImage,
                        "TRIVIAL_BRAID" => Verdict::TrivialBraid,
                        other => {
                            return Err(Error::Certificate(format!("unknown verdict `{other}`")))
                        }
                    })
                }
                other => raw_items.push((other.to_string(), body.to_string())),
            }
        }
        let missing = |what: &str| Error::Certificate(format!("missing `{what}` line"));
        let ring = ring.ok_or_else(|| missing("modulus"))?;
        let evidence = raw_items
            .iter()
            .map(|(k, b)| Evidence::parse(k, b, ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            case: case.ok_or_else(|| missing("case"))?,
            ring,
            braid: braid.ok_or_else(|| missing("braid"))?,
            params,
            evidence,
            verdict: verdict.ok_or_else(|| missing("verdict"))?,
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case: {}", self.case)?;
        writeln!(f, "modulus: {}", self.ring.modulus())?;
        writeln!(f, "braid: {}", render_word(&self.braid))?;
        for (name, value) in &self.params {
            writeln!(f, "param: {name} = {value}")?;
        }
        for item in &self.evidence {
            writeln!(f, "{item}")?;
        }
        writeln!(f, "verdict: {}", self.verdict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    fn sample() -> Certificate {
        let ring = CoeffRing::modp(2);
        let braid = word("1", 3);
        Certificate {
            case: "test".into(),
            ring,
            braid: braid.clone(),
            params: vec![
                ("k".into(), Param::Int(1)),
                ("tail".into(), Param::Text("1 -1".into())),
            ],
            evidence: vec![
                Evidence::Int(IntRelation::new(&[(1, "k")], Relation::Ne, 0)),
                Evidence::Det {
                    word: braid.clone(),
                    value: LaurentPoly::t_pow(ring, 1),
                },
                Evidence::Entry {
                    word: braid,
                    row: 1,
                    col: 1,
                    value: LaurentPoly::t_pow(ring, 1),
                },
            ],
            verdict: Verdict::NontrivialImage,
        }
    }

    #[test]
    fn text_roundtrip() {
        let c = sample();
        let back = Certificate::parse(&c.to_string()).unwrap();
        assert_eq!(back, c);
        back.audit().unwrap();
    }

    #[test]
    fn tampered_items_are_rejected() {
        let mut c = sample();
        c.evidence[1] = Evidence::Det {
            word: c.braid.clone(),
            value: LaurentPoly::t_pow(c.ring, 2),
        };
        assert!(c.check().is_err());

        let mut c = sample();
        c.params[0].1 = Param::Int(0);
        assert!(c.check().is_err());
    }

    #[test]
    fn verdict_needs_a_decisive_item() {
        let mut c = sample();
        c.evidence.truncate(1);
        assert!(c.check().is_err());

        let mut c = sample();
        c.verdict = Verdict::TrivialBraid;
        assert!(c.check().is_err());
    }

    #[test]
    fn int_relation_text() {
        let rel = IntRelation::new(&[(1, "k"), (-2, "l"), (4, "m")], Relation::Ne, 0);
        assert_eq!(rel.to_string(), "k - 2*l + 4*m != 0");
        assert_eq!(IntRelation::parse(&rel.to_string()).unwrap(), rel);
        let neg = IntRelation::new(&[(-1, "k")], Relation::Eq, 3);
        assert_eq!(neg.to_string(), "-k = 3");
        assert_eq!(IntRelation::parse("-k = 3").unwrap(), neg);
        assert!(IntRelation::parse("k +").is_err());
    }
}
