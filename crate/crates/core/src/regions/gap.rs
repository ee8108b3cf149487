//! Exact minimum distance between the two region boundaries, sampled as
//! the full corner-table staircase on one side and the staircase corners
//! (with their plateau and jump segments) for denominators up to 8 on the
//! other.

use num_traits::ToPrimitive;

use crate::exact::{ratio, Rational};
use crate::regions::{d3_table, plateau_for};
use crate::words::RotationNumber;

/// Axis-aligned segment, possibly degenerate (a point).
#[derive(Debug, Clone)]
struct Segment {
    x0: Rational,
    x1: Rational,
    y0: Rational,
    y1: Rational,
}

impl Segment {
    fn point(x: Rational, y: Rational) -> Segment {
        Segment {
            x0: x.clone(),
            x1: x,
            y0: y.clone(),
            y1: y,
        }
    }

    fn horizontal(y: Rational, x0: Rational, x1: Rational) -> Segment {
        Segment {
            x0,
            x1,
            y0: y.clone(),
            y1: y,
        }
    }

    fn vertical(x: Rational, y0: Rational, y1: Rational) -> Segment {
        Segment {
            x0: x.clone(),
            x1: x,
            y0,
            y1,
        }
    }
}

// Gap between two closed intervals plus the closest coordinates realizing
// it (the shared value when they overlap).
fn interval_gap(
    lo1: &Rational,
    hi1: &Rational,
    lo2: &Rational,
    hi2: &Rational,
) -> (Rational, Rational, Rational) {
    if hi1 < lo2 {
        (lo2 - hi1, hi1.clone(), lo2.clone())
    } else if hi2 < lo1 {
        (lo1 - hi2, lo1.clone(), hi2.clone())
    } else {
        let shared = lo1.max(lo2).clone();
        (ratio(0, 1), shared.clone(), shared)
    }
}

fn segment_distance_squared(
    s1: &Segment,
    s2: &Segment,
) -> (Rational, (Rational, Rational), (Rational, Rational)) {
    let (dx, x1, x2) = interval_gap(&s1.x0, &s1.x1, &s2.x0, &s2.x1);
    let (dy, y1, y2) = interval_gap(&s1.y0, &s1.y1, &s2.y0, &s2.y1);
    (&dx * &dx + &dy * &dy, (x1, y1), (x2, y2))
}

/// Result of the boundary-distance experiment: the closest sampled points
/// on the corner-table staircase and on the infinite staircase, with the
/// exact squared distance.
#[derive(Debug, Clone)]
pub struct BoundaryGap {
    pub d3_point: (Rational, Rational),
    pub d2_point: (Rational, Rational),
    pub distance_squared: Rational,
}

impl BoundaryGap {
    pub fn distance(&self) -> f64 {
        self.distance_squared.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

fn d3_segments() -> Vec<Segment> {
    let table = d3_table();
    let mut segments = Vec::new();
    for i in 1..=9 {
        segments.push(Segment::horizontal(table.b(i), table.a(i - 1), table.a(i)));
        segments.push(Segment::vertical(table.a(i), table.b(i), table.b(i + 1)));
    }
    segments
}

fn d2_segments(max_denominator: u64) -> Vec<Segment> {
    let mut rotations: Vec<RotationNumber> = Vec::new();
    for q in 2..=max_denominator {
        for p in 1..q {
            let r = RotationNumber::new(p, q).unwrap();
            if r.denominator() == q {
                rotations.push(r);
            }
        }
    }
    rotations.sort();
    let mut segments = Vec::new();
    for r in rotations {
        let plat = plateau_for(r).expect("interior rotation number");
        segments.push(Segment::point(plat.right().clone(), plat.kappa().clone()));
        segments.push(Segment::horizontal(
            plat.kappa().clone(),
            plat.left().clone(),
            plat.right().clone(),
        ));
        segments.push(Segment::vertical(
            plat.right().clone(),
            plat.kappa().clone(),
            plat.phi().clone(),
        ));
    }
    segments
}

/// Scans all pairs of boundary pieces and returns the strictly first pair
/// realizing the minimal distance. Everything is exact; the float is only
/// derived at the end.
pub fn boundary_gap_experiment() -> BoundaryGap {
    let d2 = d2_segments(8);
    let mut best: Option<BoundaryGap> = None;
    for fixed in d3_segments() {
        for moving in &d2 {
            let (dist2, p3, p2) = segment_distance_squared(&fixed, moving);
            let better = match &best {
                None => true,
                Some(current) => dist2 < current.distance_squared,
            };
            if better {
                best = Some(BoundaryGap {
                    d3_point: p3,
                    d2_point: p2,
                    distance_squared: dist2,
                });
            }
        }
    }
    best.expect("both boundary samples are nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_minimizing_pair() {
        let gap = boundary_gap_experiment();
        assert_eq!(gap.d3_point, (ratio(10, 31), ratio(8, 15)));
        assert_eq!(gap.d2_point, (ratio(9, 28), ratio(15, 28)));
        // (1/868)^2 + (1/420)^2 = 1186 / 13020^2
        assert_eq!(gap.distance_squared, ratio(1186, 13020) / ratio(13020, 1));
        assert!((gap.distance() - 0.002645).abs() < 1e-6);
    }

    #[test]
    fn candidate_pair_distance_is_exact() {
        let dx = ratio(10, 31) - ratio(9, 28);
        let dy = ratio(8, 15) - ratio(15, 28);
        assert_eq!(dx, ratio(1, 868));
        assert_eq!(dy, ratio(-1, 420));
        assert_eq!(&dx * &dx + &dy * &dy, ratio(1186, 169_520_400));
    }

    #[test]
    fn symmetric_pair_is_farther() {
        let dx = ratio(3, 7) - ratio(5, 12);
        let dy = ratio(4, 7) - ratio(7, 12);
        let symmetric = &dx * &dx + &dy * &dy;
        assert!(symmetric > ratio(1186, 169_520_400));
    }
}
