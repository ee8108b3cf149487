//! Classification of holes against the two avoidance regions: the closed
//! region bounded by a finite corner staircase (nine corners, ten
//! anti-corners) and the open region bounded by the infinite Devil's
//! staircase built from the extremal Sturmian words.
//!
//! Geometry conventions: both regions live below-right of their boundary
//! staircase, so growing `a` or shrinking `b` never leaves a region. The
//! corner-table region is closed, the staircase region is open.

mod gap;
mod staircase;
mod witness;

pub use gap::{boundary_gap_experiment, BoundaryGap};
pub use staircase::{
    final_stretch, kappa, phi, plateau_find, plateau_find_capped, plateau_for, Plateau,
    StretchCase, PLATEAU_DESCENT_CAP,
};
pub use witness::{
    anti_corner_witness, construct_avoiding_cycle, construct_avoiding_cycle_mirrored,
    default_exit_epsilon, exit_periods,
};

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::cycles::{bad_set, CycleError, Hole};
use crate::exact::{ratio, Rational};
use crate::words::{RotationNumber, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegionError {
    #[error("{0} is outside the staircase domain (1/4, 1/2)")]
    OutsideStaircaseDomain(Rational),
    #[error("{0} is outside the supported domain (1/4, 5/12)")]
    OutsidePhiDomain(Rational),
    #[error("no plateau found for {a} within {cap} descent steps")]
    PlateauSearchDepthExceeded { a: Rational, cap: usize },
    #[error("classification is undefined on the lines a = 1/2 and b = 1/2")]
    UnsupportedHalfLine,
    #[error("corner index {0} out of range 1..=9")]
    CornerIndex(usize),
    #[error("anti-corner index {0} out of range 0..=9")]
    AntiCornerIndex(usize),
    #[error("witnesses only exist for cycle lengths n >= 3, got {0}")]
    WitnessLength(usize),
    #[error("no avoiding {n}-cycle found for anti-corner {index}")]
    WitnessUnavailable { index: usize, n: usize },
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("length {n} is below the smallest supported length {minimal} for this epsilon")]
    CycleLengthTooSmall { n: usize, minimal: usize },
    #[error("bad-set pattern not confirmed by enumeration up to {nmax}")]
    StretchPatternUnconfirmed { nmax: usize },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

/// Exact three-valued classification against a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionClass {
    Interior,
    Boundary,
    Exterior,
}

impl RegionClass {
    pub fn is_member(self) -> bool {
        matches!(self, RegionClass::Interior | RegionClass::Boundary)
    }
}

impl fmt::Display for RegionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionClass::Interior => "interior",
            RegionClass::Boundary => "boundary",
            RegionClass::Exterior => "exterior",
        };
        f.write_str(s)
    }
}

/// The finite corner table: nine corners (a_i, b_i) and the ten
/// anti-corners (a_i, b_{i+1}) they induce, with a_0 = 0 and b_10 = 1.
#[derive(Debug, Clone)]
pub struct D3Table {
    corners: Vec<(Rational, Rational)>,
}

impl D3Table {
    /// The nine corners in increasing order.
    pub fn corners(&self) -> &[(Rational, Rational)] {
        &self.corners
    }

    /// Corner (a_i, b_i), 1-based.
    pub fn corner(&self, i: usize) -> &(Rational, Rational) {
        &self.corners[i - 1]
    }

    /// a_i with the convention a_0 = 0.
    pub fn a(&self, i: usize) -> Rational {
        if i == 0 {
            ratio(0, 1)
        } else {
            self.corners[i - 1].0.clone()
        }
    }

    /// b_i with the convention b_10 = 1.
    pub fn b(&self, i: usize) -> Rational {
        if i == 10 {
            ratio(1, 1)
        } else {
            self.corners[i - 1].1.clone()
        }
    }

    /// Anti-corner (a_i, b_{i+1}), 0-based: i in 0..=9.
    pub fn anti_corner(&self, i: usize) -> (Rational, Rational) {
        (self.a(i), self.b(i + 1))
    }
}

pub fn d3_table() -> &'static D3Table {
    static TABLE: OnceLock<D3Table> = OnceLock::new();
    TABLE.get_or_init(|| D3Table {
        corners: vec![
            (ratio(2, 7), ratio(3, 7)),
            (ratio(20, 63), ratio(32, 63)),
            (ratio(10, 31), ratio(16, 31)),
            (ratio(2, 5), ratio(8, 15)),
            (ratio(3, 7), ratio(4, 7)),
            (ratio(7, 15), ratio(3, 5)),
            (ratio(15, 31), ratio(21, 31)),
            (ratio(31, 63), ratio(43, 63)),
            (ratio(4, 7), ratio(5, 7)),
        ],
    })
}

/// Classification against the closed corner-table region. A hole belongs
/// to it iff no corner lies strictly above-left, i.e. for every i either
/// a >= a_i or b <= b_i. Degenerate holes (a >= b) count as interior.
pub fn d3_classify(a: &Rational, b: &Rational) -> RegionClass {
    if a >= b {
        return RegionClass::Interior;
    }
    let table = d3_table();
    let member = (1..=9).all(|i| *a >= table.a(i) || *b <= table.b(i));
    if !member {
        return RegionClass::Exterior;
    }
    // The boundary is the staircase polyline through corners and
    // anti-corners: vertical pieces {a_i} x [b_i, b_{i+1}] and horizontal
    // pieces [a_{i-1}, a_i] x {b_i}.
    let on_boundary = (1..=9).any(|i| {
        (*a == table.a(i) && table.b(i) <= *b && *b <= table.b(i + 1))
            || (*b == table.b(i) && table.a(i - 1) <= *a && *a <= table.a(i))
    });
    if on_boundary {
        RegionClass::Boundary
    } else {
        RegionClass::Interior
    }
}

/// Classification against the open staircase region.
///
/// Outside the square (1/4, 1/2) x (1/2, 3/4) the answer is immediate:
/// holes covering (1/4, 1/2) or (1/2, 3/4) kill every cycle family
/// (exterior), while holes entirely on one side of 1/2 always leave the
/// high cycle family intact (interior). Holes with an endpoint exactly on
/// a = 1/2 or b = 1/2 are not classified.
pub fn d2_classify(a: &Rational, b: &Rational) -> Result<RegionClass, RegionError> {
    let half = ratio(1, 2);
    if a >= b {
        return Ok(RegionClass::Interior);
    }
    if (*a <= ratio(1, 4) && *b >= half) || (*a <= half && *b >= ratio(3, 4)) {
        return Ok(RegionClass::Exterior);
    }
    if *b < half || *a > half {
        return Ok(RegionClass::Interior);
    }
    if *a == half || *b == half {
        return Err(RegionError::UnsupportedHalfLine);
    }

    // Now 1/4 < a < 1/2 < b < 3/4. The boundary over this square is the
    // staircase b = kappa(a) together with the vertical jump segments at
    // plateau right-endpoints (which are the mirror images of the
    // plateaus themselves).
    let plateau = plateau_find(a)?;
    let on_plateau = *b == *plateau.kappa();
    let on_jump = *a == *plateau.right() && *plateau.kappa() <= *b && *b <= *plateau.phi();
    if on_plateau || on_jump {
        return Ok(RegionClass::Boundary);
    }
    let below = *b < *plateau.kappa();
    let mirror = plateau_find(&(ratio(1, 1) - b))?;
    let mirror_below = ratio(1, 1) - a < *mirror.kappa();
    if below && mirror_below {
        Ok(RegionClass::Interior)
    } else {
        Ok(RegionClass::Exterior)
    }
}

/// The staircase corner associated with an interior rotation number:
/// (value of s t^inf, value of t s^inf).
pub fn d2_corner(r: RotationNumber) -> Result<(Rational, Rational), RegionError> {
    let plateau = plateau_for(r)?;
    Ok((plateau.right().clone(), plateau.kappa().clone()))
}

/// JSON-facing summary of one hole: both classifications, the staircase
/// height above `a` when defined, and the bad set up to `bad_upto`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationRecord {
    pub a: String,
    pub b: String,
    pub d3: String,
    pub d2: String,
    pub kappa: Option<String>,
    pub bad_upto: usize,
    pub bad: Vec<usize>,
}

pub fn classification_record(
    a: &Rational,
    b: &Rational,
    bad_upto: usize,
) -> Result<ClassificationRecord, RegionError> {
    let d3 = d3_classify(a, b).to_string();
    let d2 = match d2_classify(a, b) {
        Ok(class) => class.to_string(),
        Err(RegionError::UnsupportedHalfLine) => "unsupported".to_string(),
        Err(other) => return Err(other),
    };
    let kappa_value = kappa(a).ok().map(|k| k.to_string());
    let bad = if a < b {
        bad_set(&Hole::new(a.clone(), b.clone())?, bad_upto)?
            .into_iter()
            .collect()
    } else {
        Vec::new()
    };
    Ok(ClassificationRecord {
        a: a.to_string(),
        b: b.to_string(),
        d3,
        d2,
        kappa: kappa_value,
        bad_upto,
        bad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_table_shape() {
        let t = d3_table();
        assert_eq!(t.corners().len(), 9);
        for i in 1..9 {
            assert!(t.a(i) < t.a(i + 1));
            assert!(t.b(i) < t.b(i + 1));
        }
        for i in 1..=9 {
            let (a, b) = t.corner(i).clone();
            assert!(ratio(1, 4) < a && a < ratio(3, 4));
            assert!(ratio(1, 4) < b && b < ratio(3, 4));
        }
        // narrowest corner and widest anti-corner
        let widths: Vec<Rational> = (1..=9).map(|i| t.b(i) - t.a(i)).collect();
        assert_eq!(widths.iter().min().unwrap(), &ratio(2, 15));
        assert_eq!(&widths[3], &ratio(2, 15));
        let anti_widths: Vec<Rational> = (0..=9).map(|i| t.b(i + 1) - t.a(i)).collect();
        assert_eq!(anti_widths.iter().max().unwrap(), &ratio(3, 7));
        assert_eq!(&anti_widths[0], &ratio(3, 7));
    }

    #[test]
    fn d3_classify_examples() {
        assert_eq!(
            d3_classify(&ratio(3, 7), &ratio(4, 7)),
            RegionClass::Boundary
        );
        assert_eq!(
            d3_classify(&ratio(2, 5), &(ratio(8, 15) - ratio(1, 100))),
            RegionClass::Interior
        );
        assert_eq!(
            d3_classify(&(ratio(2, 7) - ratio(1, 64)), &(ratio(3, 7) + ratio(1, 64))),
            RegionClass::Exterior
        );
        // degenerate holes are vacuously inside
        assert_eq!(
            d3_classify(&ratio(1, 2), &ratio(1, 3)),
            RegionClass::Interior
        );
        // anti-corners are members sitting on the boundary
        for i in 0..=9 {
            let (a, b) = d3_table().anti_corner(i);
            assert_eq!(
                d3_classify(&a, &b),
                RegionClass::Boundary,
                "anti-corner {}",
                i
            );
        }
    }

    #[test]
    fn d2_classify_examples() {
        assert_eq!(
            d2_classify(&ratio(5, 12), &ratio(7, 12)).unwrap(),
            RegionClass::Boundary
        );
        assert_eq!(
            d2_classify(&ratio(2, 5), &ratio(11, 20)).unwrap(),
            RegionClass::Interior
        );
        assert_eq!(
            d2_classify(&ratio(1, 3), &ratio(7, 12)).unwrap(),
            RegionClass::Boundary
        );
        // the square shortcuts
        assert_eq!(
            d2_classify(&ratio(1, 5), &ratio(3, 5)).unwrap(),
            RegionClass::Exterior
        );
        assert_eq!(
            d2_classify(&ratio(1, 3), &ratio(4, 5)).unwrap(),
            RegionClass::Exterior
        );
        assert_eq!(
            d2_classify(&ratio(1, 5), &ratio(2, 5)).unwrap(),
            RegionClass::Interior
        );
        assert_eq!(
            d2_classify(&ratio(3, 5), &ratio(4, 5)).unwrap(),
            RegionClass::Interior
        );
        assert!(matches!(
            d2_classify(&ratio(2, 5), &ratio(1, 2)),
            Err(RegionError::UnsupportedHalfLine)
        ));
        // jump segment points are boundary
        assert_eq!(
            d2_classify(&ratio(5, 12), &ratio(5, 8)).unwrap(),
            RegionClass::Boundary
        );
    }

    #[test]
    fn d2_corner_examples() {
        let r = |p, q| RotationNumber::new(p, q).unwrap();
        assert_eq!(d2_corner(r(1, 2)).unwrap(), (ratio(5, 12), ratio(7, 12)));
        assert_eq!(d2_corner(r(1, 3)).unwrap(), (ratio(9, 28), ratio(15, 28)));
        assert_eq!(
            d2_corner(r(2, 5)).unwrap(),
            (ratio(41, 124), ratio(71, 124))
        );
    }

    #[test]
    fn classification_record_shape() {
        let rec = classification_record(&ratio(2, 5), &ratio(11, 20), 10).unwrap();
        assert_eq!(rec.a, "2/5");
        assert_eq!(rec.d2, "interior");
        assert_eq!(rec.kappa.as_deref(), Some("7/12"));
        let rec = classification_record(&ratio(2, 5), &ratio(1, 2), 10).unwrap();
        assert_eq!(rec.d2, "unsupported");
    }
}
