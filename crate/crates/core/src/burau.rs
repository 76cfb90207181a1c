//! Reduced Burau representations of `B_3` and `B_4`.
//!
//! Braids act on row vectors from the right: `v * β = v ρ(β)`. The generator
//! matrices of `ρ₄` are
//!
//! ```text
//! σ₁ = [-t 0 0]   σ₂ = [1  t 0]   σ₃ = [1 0  0]
//!      [ 1 1 0]        [0 -t 0]        [0 1  t]
//!      [ 0 0 1]        [0  1 1]        [0 0 -t]
//! ```
//!
//! and `ρ₃(σ₁), ρ₃(σ₂)` are the upper-left 2×2 blocks of `ρ₄(σ₁), ρ₄(σ₂)`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Letter};
use crate::error::{Error, Result};
use crate::laurent::{CoeffRing, LaurentPoly};

/// Sparse integer entry `(row, col, coeff, exp)` meaning `coeff * t^exp`.
type Entry = (usize, usize, i64, i64);

const SIGMA1: &[Entry] = &[(0, 0, -1, 1), (1, 0, 1, 0), (1, 1, 1, 0), (2, 2, 1, 0)];
const SIGMA1_INV: &[Entry] = &[(0, 0, -1, -1), (1, 0, 1, -1), (1, 1, 1, 0), (2, 2, 1, 0)];
const SIGMA2: &[Entry] = &[
    (0, 0, 1, 0),
    (0, 1, 1, 1),
    (1, 1, -1, 1),
    (2, 1, 1, 0),
    (2, 2, 1, 0),
];
const SIGMA2_INV: &[Entry] = &[
    (0, 0, 1, 0),
    (0, 1, 1, 0),
    (1, 1, -1, -1),
    (2, 1, 1, -1),
    (2, 2, 1, 0),
];
const SIGMA3: &[Entry] = &[(0, 0, 1, 0), (1, 1, 1, 0), (1, 2, 1, 1), (2, 2, -1, 1)];
const SIGMA3_INV: &[Entry] = &[(0, 0, 1, 0), (1, 1, 1, 0), (1, 2, 1, 0), (2, 2, -1, -1)];

fn check_strands(strands: usize) -> Result<usize> {
    match strands {
        3 | 4 => Ok(strands - 1),
        n => Err(Error::UnsupportedStrands(n)),
    }
}

/// Nonzero entries of `ρ_n(letter)` restricted to the `(n-1)×(n-1)` block.
fn generator_entries(strands: usize, letter: Letter) -> Result<impl Iterator<Item = Entry>> {
    let dim = check_strands(strands)?;
    let table = match (letter.index(), letter.is_inverse()) {
        (1, false) => SIGMA1,
        (1, true) => SIGMA1_INV,
        (2, false) => SIGMA2,
        (2, true) => SIGMA2_INV,
        (3, false) if strands == 4 => SIGMA3,
        (3, true) if strands == 4 => SIGMA3_INV,
        _ => {
            return Err(Error::IndexOutOfRange {
                index: letter.to_int(),
                strands,
            })
        }
    };
    Ok(table
        .iter()
        .copied()
        .filter(move |&(r, c, _, _)| r < dim && c < dim))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BurauMatrix {
    strands: usize,
    ring: CoeffRing,
    rows: Vec<Vec<LaurentPoly>>,
}

impl BurauMatrix {
    pub fn identity(strands: usize, ring: CoeffRing) -> Result<Self> {
        let dim = check_strands(strands)?;
        let rows = (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| {
                        if r == c {
                            LaurentPoly::one(ring)
                        } else {
                            LaurentPoly::zero(ring)
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(BurauMatrix { strands, ring, rows })
    }

    pub fn from_rows(strands: usize, ring: CoeffRing, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let dim = check_strands(strands)?;
        if rows.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: rows.len(),
            });
        }
        for row in &rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            if let Some(p) = row.iter().find(|p| p.ring() != ring) {
                return Err(Error::RingMismatch {
                    left: ring.modulus(),
                    right: p.ring().modulus(),
                });
            }
        }
        Ok(BurauMatrix { strands, ring, rows })
    }

    /// `ρ_n(σ_i^{±1})` with coefficients in `ring`.
    pub fn generator(strands: usize, letter: Letter, ring: CoeffRing) -> Result<Self> {
        let mut m = Self::identity(strands, ring)?;
        for r in m.rows.iter_mut() {
            for e in r.iter_mut() {
                *e = LaurentPoly::zero(ring);
            }
        }
        for (r, c, coeff, exp) in generator_entries(strands, letter)? {
            m.rows[r][c] = LaurentPoly::monomial(ring, coeff, exp);
        }
        Ok(m)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.rows[row][col]
    }

    pub fn row(&self, row: usize) -> RowVector {
        RowVector {
            ring: self.ring,
            coords: self.rows[row].clone(),
        }
    }

    pub fn checked_mul(&self, other: &BurauMatrix) -> Result<BurauMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.modulus(),
                right: other.ring.modulus(),
            });
        }
        let dim = self.dim();
        let mut rows = Vec::with_capacity(dim);
        for r in 0..dim {
            let mut row = Vec::with_capacity(dim);
            for c in 0..dim {
                let mut acc = LaurentPoly::zero(self.ring);
                for k in 0..dim {
                    acc = &acc + &(&self.rows[r][k] * &other.rows[k][c]);
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(BurauMatrix {
            strands: self.strands,
            ring: self.ring,
            rows,
        })
    }

    /// `M · ρ(letter)`, row by row through the sparse generator table.
    pub fn mul_letter(&self, letter: Letter) -> Result<BurauMatrix> {
        let rows = (0..self.dim())
            .map(|r| Ok(self.row(r).act_letter(self.strands, letter)?.into_coords()))
            .collect::<Result<Vec<_>>>()?;
        Ok(BurauMatrix {
            strands: self.strands,
            ring: self.ring,
            rows,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, e)| if r == c { e.is_one() } else { e.is_zero() })
        })
    }

    pub fn det(&self) -> LaurentPoly {
        let m = &self.rows;
        match self.dim() {
            2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
            3 => {
                let minor = |a: usize, b: usize, c: usize, d: usize| {
                    &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d])
                };
                let t0 = &m[0][0] * &minor(1, 2, 2, 1);
                let t1 = &m[0][1] * &minor(0, 2, 2, 0);
                let t2 = &m[0][2] * &minor(0, 1, 1, 0);
                &(&t0 - &t1) + &t2
            }
            d => unreachable!("Burau matrices have dimension 2 or 3, not {d}"),
        }
    }

    /// Entrywise reduction of an integer matrix into `target`.
    pub fn reduce_to(&self, target: CoeffRing) -> Result<BurauMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|e| e.reduce_to(target)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(BurauMatrix {
            strands: self.strands,
            ring: target,
            rows,
        })
    }

    /// Exact canonical text used as a lookup key.
    pub fn key(&self) -> String {
        self.rows
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Text grid: one row per line, entries separated by whitespace.
    pub fn render_grid(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect();
        let width = cells
            .iter()
            .flat_map(|row| row.iter().map(|s| s.len()))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn parse_grid(text: &str, strands: usize, ring: CoeffRing) -> Result<BurauMatrix> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|cell| LaurentPoly::parse(cell, ring))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(strands, ring, rows)
    }

    pub fn to_record(&self) -> MatrixRecord {
        MatrixRecord {
            n: self.strands,
            modulus: self.ring.modulus(),
            entries: self
                .rows
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_record(record: &MatrixRecord) -> Result<BurauMatrix> {
        let ring = CoeffRing::new(record.modulus)?;
        let rows = record
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| LaurentPoly::parse(cell, ring))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(record.n, ring, rows)
    }
}

impl fmt::Display for BurauMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_grid())
    }
}

/// Structured matrix output: entries row-major as polynomial strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub n: usize,
    pub modulus: u64,
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowVector {
    ring: CoeffRing,
    coords: Vec<LaurentPoly>,
}

impl RowVector {
    pub fn new(coords: Vec<LaurentPoly>) -> Result<Self> {
        let ring = coords
            .first()
            .map(|p| p.ring())
            .ok_or_else(|| Error::InvalidInput("empty row vector".into()))?;
        if let Some(p) = coords.iter().find(|p| p.ring() != ring) {
            return Err(Error::RingMismatch {
                left: ring.modulus(),
                right: p.ring().modulus(),
            });
        }
        Ok(RowVector { ring, coords })
    }

    /// The `i`-th standard basis vector (0-based) of length `dim`.
    pub fn basis(dim: usize, i: usize, ring: CoeffRing) -> Self {
        let coords = (0..dim)
            .map(|j| {
                if j == i {
                    LaurentPoly::one(ring)
                } else {
                    LaurentPoly::zero(ring)
                }
            })
            .collect();
        RowVector { ring, coords }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[LaurentPoly] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<LaurentPoly> {
        self.coords
    }

    /// `v * σ_i^{±1}` using the sparse generator table.
    pub fn act_letter(&self, strands: usize, letter: Letter) -> Result<RowVector> {
        let dim = check_strands(strands)?;
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        let mut out = vec![LaurentPoly::zero(self.ring); dim];
        for (r, c, coeff, exp) in generator_entries(strands, letter)? {
            if self.coords[r].is_zero() {
                continue;
            }
            let term = self.coords[r].mul_monomial(&BigInt::from(coeff), exp);
            out[c] = &out[c] + &term;
        }
        Ok(RowVector {
            ring: self.ring,
            coords: out,
        })
    }

    /// `v * w`, applied letter by letter.
    pub fn act(&self, word: &BraidWord) -> Result<RowVector> {
        word.letters()
            .iter()
            .try_fold(self.clone(), |v, &l| v.act_letter(word.strands(), l))
    }

    /// `v · M`.
    pub fn mul_matrix(&self, m: &BurauMatrix) -> Result<RowVector> {
        if self.dim() != m.dim() {
            return Err(Error::DimensionMismatch {
                expected: m.dim(),
                found: self.dim(),
            });
        }
        let coords = (0..m.dim())
            .map(|c| {
                self.coords
                    .iter()
                    .zip(&m.rows)
                    .try_fold(LaurentPoly::zero(self.ring), |acc, (v, row)| {
                        acc.checked_add(&v.checked_mul(&row[c])?)
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RowVector {
            ring: self.ring,
            coords,
        })
    }

    pub fn parse(text: &str, ring: CoeffRing) -> Result<RowVector> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidInput(format!("row vector `{text}` needs parentheses")))?;
        let coords = inner
            .split(',')
            .map(|cell| LaurentPoly::parse(cell, ring))
            .collect::<Result<Vec<_>>>()?;
        RowVector::new(coords)
    }
}

impl fmt::Display for RowVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `ρ_n(w)` as the ordered product of generator matrices.
pub fn burau_image(word: &BraidWord, ring: CoeffRing) -> Result<BurauMatrix> {
    let strands = word.strands();
    let mut m = BurauMatrix::identity(strands, ring)?;
    for &l in word.letters() {
        m = m.checked_mul(&BurauMatrix::generator(strands, l, ring)?)?;
    }
    Ok(m)
}

/// `ρ_n(w)` computed by acting on each row; same result as [`burau_image`].
pub fn burau_image_by_rows(word: &BraidWord, ring: CoeffRing) -> Result<BurauMatrix> {
    let strands = word.strands();
    let dim = check_strands(strands)?;
    let rows = (0..dim)
        .map(|i| RowVector::basis(dim, i, ring).act(word).map(RowVector::into_coords))
        .collect::<Result<Vec<_>>>()?;
    BurauMatrix::from_rows(strands, ring, rows)
}

/// `v * w`.
pub fn act_row(v: &RowVector, word: &BraidWord) -> Result<RowVector> {
    v.act(word)
}

/// Checks `det ρ(w) = (-t)^{e(w)}`.
pub fn check_det_identity(word: &BraidWord, ring: CoeffRing) -> Result<bool> {
    let det = burau_image(word, ring)?.det();
    Ok(det == LaurentPoly::neg_t_pow(ring, word.exponent_sum()))
}

pub fn is_identity(m: &BurauMatrix) -> bool {
    m.is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CoeffRing {
        CoeffRing::INTEGERS
    }

    fn poly(text: &str, ring: CoeffRing) -> LaurentPoly {
        LaurentPoly::parse(text, ring).unwrap()
    }

    fn grid(rows: &[&[&str]], strands: usize, ring: CoeffRing) -> BurauMatrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| poly(s, ring)).collect())
            .collect();
        BurauMatrix::from_rows(strands, ring, rows).unwrap()
    }

    #[test]
    fn generators_match_displayed_matrices() {
        let r4 = |i| BurauMatrix::generator(4, Letter::pos(i), z()).unwrap();
        assert_eq!(r4(1), grid(&[&["-t", "0", "0"], &["1", "1", "0"], &["0", "0", "1"]], 4, z()));
        assert_eq!(r4(2), grid(&[&["1", "t", "0"], &["0", "-t", "0"], &["0", "1", "1"]], 4, z()));
        assert_eq!(r4(3), grid(&[&["1", "0", "0"], &["0", "1", "t"], &["0", "0", "-t"]], 4, z()));
        let r3 = |i| BurauMatrix::generator(3, Letter::pos(i), z()).unwrap();
        assert_eq!(r3(1), grid(&[&["-t", "0"], &["1", "1"]], 3, z()));
        assert_eq!(r3(2), grid(&[&["1", "t"], &["0", "-t"]], 3, z()));
    }

    #[test]
    fn inverse_generators_invert() {
        for strands in [3, 4] {
            for i in 1..strands {
                let m = BurauMatrix::generator(strands, Letter::pos(i), z()).unwrap();
                let inv = BurauMatrix::generator(strands, Letter::neg(i), z()).unwrap();
                assert!(m.checked_mul(&inv).unwrap().is_identity());
                assert!(inv.checked_mul(&m).unwrap().is_identity());
            }
        }
        // X·ρ₃(σ₁) = I for X = [[-t^-1, 0], [t^-1, 1]]
        let x = grid(&[&["-t^-1", "0"], &["t^-1", "1"]], 3, z());
        assert_eq!(BurauMatrix::generator(3, Letter::neg(1), z()).unwrap(), x);
    }

    #[test]
    fn out_of_range_generators() {
        assert!(BurauMatrix::generator(3, Letter::pos(3), z()).is_err());
        assert!(matches!(
            burau_image(&BraidWord::identity(5), z()),
            Err(Error::UnsupportedStrands(5))
        ));
    }

    #[test]
    fn images_of_small_words() {
        assert!(burau_image(&BraidWord::identity(4), z()).unwrap().is_identity());
        let rel = BraidWord::parse("1 2 1 -2 -1 -2", 4).unwrap();
        for p in [0, 2, 3, 5] {
            assert!(burau_image(&rel, CoeffRing::new(p).unwrap()).unwrap().is_identity());
        }
        assert!(!burau_image(&BraidWord::parse("1", 4).unwrap(), z()).unwrap().is_identity());
    }

    #[test]
    fn row_actions() {
        let ring = z();
        let v = RowVector::new(vec![poly("t^2", ring), poly("1+t", ring), poly("3", ring)]).unwrap();
        // (f,g,h)*σ₁ = (-tf+g, g, h)
        let got = v.act(&BraidWord::parse("1", 4).unwrap()).unwrap();
        assert_eq!(got.to_string(), "(1+t-t^3, 1+t, 3)");

        let v0 = RowVector::basis(2, 0, ring);
        assert_eq!(v0.act(&BraidWord::parse("2", 3).unwrap()).unwrap().to_string(), "(1, t)");

        let e3 = RowVector::basis(3, 2, ring);
        assert_eq!(e3.act(&BraidWord::parse("3", 4).unwrap()).unwrap().to_string(), "(0, 0, -t)");
        assert!(v0.act(&BraidWord::parse("1", 4).unwrap()).is_err());
    }

    #[test]
    fn determinant_identity() {
        assert!(check_det_identity(&BraidWord::parse("1", 4).unwrap(), z()).unwrap());
        let d2 = BraidWord::delta4().pow(2);
        let m2 = CoeffRing::modp(2);
        assert_eq!(burau_image(&d2, m2).unwrap().det(), LaurentPoly::t_pow(m2, 12));
        assert!(check_det_identity(&d2, m2).unwrap());
    }

    #[test]
    fn grid_and_record_roundtrip() {
        let m = burau_image(&BraidWord::parse("1 -2 3", 4).unwrap(), z()).unwrap();
        assert_eq!(BurauMatrix::parse_grid(&m.render_grid(), 4, z()).unwrap(), m);
        let rec = m.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: MatrixRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(BurauMatrix::from_record(&back).unwrap(), m);
    }
}
