//! Degree-defined regions and nontriviality certificates.
//!
//! `V₀ = {(f,g) : deg f < deg g}` is invariant under `σ₁⁻¹`, `σ₂` and `Δ₃²`
//! in `ρ₃`. For `ρ₄`,
//!
//! ```text
//! V_X = {(f,g,h) : deg g > deg f, deg g >= deg h}
//! V_Y = {(f,g,h) : deg h > deg f, deg h >  deg g}
//! ```
//!
//! are disjoint, and the automaton arrows map them into each other:
//! `V_X * x, V_X * y⁻¹ ⊂ V_X`, `V_X * xy ⊂ V_Y`, `V_Y * y, V_Y * x⁻¹ ⊂ V_Y`,
//! `V_Y * yx ⊂ V_X`.

mod certificate;
mod certify;

use std::fmt;
use std::str::FromStr;

use crate::b2::Move;
use crate::burau::RowVector;
use crate::error::{Error, Result};
use crate::laurent::{CoeffRing, LaurentPoly};

pub use certificate::{Certificate, Evidence, IntRelation, Param, Relation, Verdict};
pub use certify::{
    certify_b3, certify_periodic, certify_reducible_a, certify_reducible_b, NormalFormB3,
    NormalFormB4a, NormalFormB4b, PeriodicVariant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    V0,
    VX,
    VY,
}

impl Region {
    pub fn dim(self) -> usize {
        match self {
            Region::V0 => 2,
            Region::VX | Region::VY => 3,
        }
    }

    pub fn contains(self, v: &RowVector) -> Result<bool> {
        region_member(self, v)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::V0 => "V_0",
            Region::VX => "V_X",
            Region::VY => "V_Y",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Region> {
        match s.trim() {
            "V_0" | "V0" => Ok(Region::V0),
            "V_X" | "VX" => Ok(Region::VX),
            "V_Y" | "VY" => Ok(Region::VY),
            other => Err(Error::InvalidInput(format!("unknown region `{other}`"))),
        }
    }
}

pub fn region_member(region: Region, v: &RowVector) -> Result<bool> {
    if v.dim() != region.dim() {
        return Err(Error::DimensionMismatch {
            expected: region.dim(),
            found: v.dim(),
        });
    }
    let deg: Vec<_> = v.coords().iter().map(LaurentPoly::degree).collect();
    Ok(match region {
        Region::V0 => deg[0] < deg[1],
        Region::VX => deg[1] > deg[0] && deg[1] >= deg[2],
        Region::VY => deg[2] > deg[0] && deg[2] > deg[1],
    })
}

fn poly(ring: CoeffRing, terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(ring, terms.iter().map(|&(c, e)| (e, c)))
}

/// Closed-form action of each automaton arrow on `(f, g, h)`.
pub fn action_table(v: &RowVector, mv: Move) -> Result<RowVector> {
    if v.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: v.dim(),
        });
    }
    let ring = v.ring();
    let (f, g, h) = (&v.coords()[0], &v.coords()[1], &v.coords()[2]);
    let p = |terms: &[(i64, i64)]| poly(ring, terms);
    // coefficient pairs are (coeff, exponent)
    let coords = match mv {
        Move::X => vec![
            &(&(&p(&[(1, 1)]) * f) + &(&p(&[(1, 2), (-1, 1)]) * g)) + &(&p(&[(1, 0), (-1, 1)]) * h),
            &(&p(&[(1, 3)]) * g) + &(&p(&[(1, 0), (-1, 2)]) * h),
            h.clone(),
        ],
        Move::Y => vec![f.clone(), g.clone(), &(&p(&[(1, 1)]) * g) - &(&p(&[(1, 1)]) * h)],
        Move::XY => vec![
            &(&(&p(&[(1, 1)]) * f) + &(&p(&[(1, 2), (-1, 1)]) * g)) + &(&p(&[(1, 0), (-1, 1)]) * h),
            &(&p(&[(1, 3)]) * g) + &(&p(&[(1, 0), (-1, 2)]) * h),
            &(&p(&[(1, 4)]) * g) - &(&p(&[(1, 3)]) * h),
        ],
        Move::YX => vec![
            &(&p(&[(1, 1)]) * f) + &(&p(&[(1, 2), (-1, 1)]) * h),
            &(&p(&[(1, 1)]) * g) + &(&p(&[(1, 3), (-1, 1)]) * h),
            &(&p(&[(1, 1)]) * g) - &(&p(&[(1, 1)]) * h),
        ],
        Move::XInv => vec![
            &(&(&p(&[(1, -1)]) * f) + &(&p(&[(1, -3), (-1, -2)]) * g))
                + &(&p(&[(1, -2), (-1, -3)]) * h),
            // (t⁻¹ − t⁻³)h, from inverting the second coordinate of v*x
            &(&p(&[(1, -3)]) * g) + &(&p(&[(1, -1), (-1, -3)]) * h),
            h.clone(),
        ],
        Move::YInv => vec![f.clone(), g.clone(), g - &(&p(&[(1, -1)]) * h)],
    };
    RowVector::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(texts: &[&str], ring: CoeffRing) -> RowVector {
        RowVector::new(texts.iter().map(|t| LaurentPoly::parse(t, ring).unwrap()).collect()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let z = CoeffRing::INTEGERS;
        assert!(!region_member(Region::V0, &vec_of(&["1", "0"], z)).unwrap());
        assert!(region_member(Region::V0, &vec_of(&["1", "t"], z)).unwrap());
        assert!(region_member(Region::VY, &vec_of(&["0", "0", "1"], z)).unwrap());
        assert!(region_member(Region::VX, &vec_of(&["0", "t", "t"], z)).unwrap());
        assert!(!region_member(Region::VY, &vec_of(&["0", "t", "t"], z)).unwrap());
        assert!(!region_member(Region::VX, &vec_of(&["0", "0", "0"], z)).unwrap());
        assert!(!region_member(Region::VY, &vec_of(&["0", "0", "0"], z)).unwrap());
        assert!(region_member(Region::V0, &vec_of(&["1"], z)).is_err());
    }

    #[test]
    fn action_table_examples() {
        let z = CoeffRing::INTEGERS;
        let got = action_table(&vec_of(&["0", "0", "1"], z), Move::Y).unwrap();
        assert_eq!(got, vec_of(&["0", "0", "-t"], z));
        let got = action_table(&vec_of(&["0", "1", "0"], z), Move::X).unwrap();
        assert_eq!(got, vec_of(&["t^2-t", "t^3", "0"], z));
        let got = action_table(&vec_of(&["1", "0", "0"], z), Move::XInv).unwrap();
        assert_eq!(got, vec_of(&["t^-1", "0", "0"], z));
        let got = action_table(&vec_of(&["0", "0", "1"], z), Move::XInv).unwrap();
        assert_eq!(got, vec_of(&["t^-2-t^-3", "t^-1-t^-3", "1"], z));
        let got = action_table(&vec_of(&["0", "0", "1"], z), Move::YX).unwrap();
        assert_eq!(got, vec_of(&["t^2-t", "t^3-t", "-t"], z));
    }

    #[test]
    fn table_matches_matrix_action_on_basis() {
        for m in [0, 2, 3] {
            let ring = CoeffRing::new(m).unwrap();
            for i in 0..3 {
                let v = RowVector::basis(3, i, ring);
                for mv in Move::ALL {
                    assert_eq!(action_table(&v, mv).unwrap(), v.act(&mv.expand()).unwrap(), "{v} * {mv}");
                }
            }
        }
    }

    #[test]
    fn region_names_roundtrip() {
        for r in [Region::V0, Region::VX, Region::VY] {
            assert_eq!(r.to_string().parse::<Region>().unwrap(), r);
        }
    }
}
