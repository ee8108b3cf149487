//! The Devil's staircase over hole left-endpoints: plateau lookup by
//! Stern-Brocot descent, the staircase height kappa, the plateau ceiling
//! phi, and the classification of the bad-set tail on the boundary.

use crate::cycles::{bad_set, Hole};
use crate::exact::{ratio, value_of, EventuallyPeriodicWord, Rational};
use crate::regions::RegionError;
use crate::words::{mediant, sturmian_pair, RotationNumber, SturmianPair, Word};

/// Cap on Stern-Brocot descent steps; inputs that get anywhere near it are
/// indistinguishable from the exceptional (aperiodic) endpoints.
pub const PLATEAU_DESCENT_CAP: usize = 64;

/// One plateau of the staircase: the rotation number, its word pair and
/// the four derived values
///
///   left  = value(s^inf)      right = value(s t^inf)
///   kappa = value(t s^inf)    phi   = value(t^inf)
///
/// with left < right < kappa < phi, kappa - left = 1/4 and
/// kappa - right = (2^q - 2) / (4 (2^q - 1)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plateau {
    r: RotationNumber,
    pair: SturmianPair,
    left: Rational,
    right: Rational,
    kappa: Rational,
    phi: Rational,
}

impl Plateau {
    pub fn rotation_number(&self) -> RotationNumber {
        self.r
    }

    pub fn pair(&self) -> &SturmianPair {
        &self.pair
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    pub fn phi(&self) -> &Rational {
        &self.phi
    }
}

fn periodic_value(word: &Word) -> Rational {
    value_of(&EventuallyPeriodicWord::periodic(word.clone()).expect("nonempty period"))
}

fn eventually_value(pre: &Word, per: &Word) -> Rational {
    value_of(&EventuallyPeriodicWord::new(pre.clone(), per.clone()).expect("nonempty period"))
}

/// The plateau data of an interior rotation number.
pub fn plateau_for(r: RotationNumber) -> Result<Plateau, RegionError> {
    let pair = sturmian_pair(r)?;
    let left = periodic_value(pair.s());
    let right = eventually_value(pair.s(), pair.t());
    let kappa = eventually_value(pair.t(), pair.s());
    let phi = periodic_value(pair.t());
    debug_assert!(left < right && right < kappa && kappa < phi);
    Ok(Plateau {
        r,
        pair,
        left,
        right,
        kappa,
        phi,
    })
}

/// Finds the unique plateau whose closed interval [left, right] contains
/// `a`, by Stern-Brocot descent. Every rational in (1/4, 1/2) lies in such
/// an interval (the exceptional complement consists of irrationals), so
/// the cap is only a guard against near-exceptional inputs.
pub fn plateau_find(a: &Rational) -> Result<Plateau, RegionError> {
    plateau_find_capped(a, PLATEAU_DESCENT_CAP)
}

pub fn plateau_find_capped(a: &Rational, cap: usize) -> Result<Plateau, RegionError> {
    if *a <= ratio(1, 4) || *a >= ratio(1, 2) {
        return Err(RegionError::OutsideStaircaseDomain(a.clone()));
    }
    let mut lo = RotationNumber::ZERO;
    let mut hi = RotationNumber::ONE;
    for _ in 0..cap {
        let mid = mediant(lo, hi)?;
        let plateau = plateau_for(mid)?;
        if *a < *plateau.left() {
            hi = mid;
        } else if *a > *plateau.right() {
            lo = mid;
        } else {
            return Ok(plateau);
        }
    }
    Err(RegionError::PlateauSearchDepthExceeded { a: a.clone(), cap })
}

/// Staircase height above `a`: the value of t s^inf on the plateau that
/// contains `a`. At a jump point (a = right plateau endpoint) this is the
/// left value of the jump.
pub fn kappa(a: &Rational) -> Result<Rational, RegionError> {
    Ok(plateau_find(a)?.kappa().clone())
}

/// Plateau ceiling above `a`: the value of t^inf on the plateau containing
/// `a`. Only defined on (1/4, 5/12); strictly larger than kappa.
pub fn phi(a: &Rational) -> Result<Rational, RegionError> {
    if *a <= ratio(1, 4) || *a >= ratio(5, 12) {
        return Err(RegionError::OutsidePhiDomain(a.clone()));
    }
    Ok(plateau_find(a)?.phi().clone())
}

/// The two shapes the bad set can take on a plateau of the staircase
/// boundary, i.e. for the hole (a, kappa(a)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StretchCase {
    /// Every length from `tail_start` on is bad: only the plateau's own
    /// q-cycle survives.
    AllOfTail { tail_start: usize },
    /// Exactly the non-multiples of `period` are bad from `tail_start` on:
    /// block concatenations of s and t supply all long multiple lengths.
    MultiplesRemoved { period: usize, tail_start: usize },
}

/// Classifies the bad-set tail for the boundary hole (a, kappa(a)) and
/// validates the claimed pattern by enumeration up to `nmax`. The split
/// point between the two regimes is the value of s t s^inf.
pub fn final_stretch(a: &Rational, nmax: usize) -> Result<StretchCase, RegionError> {
    let plateau = plateau_find(a)?;
    let pair = plateau.pair();
    let split = eventually_value(&pair.s().concat(pair.t()), pair.s());
    let hole = Hole::new(a.clone(), plateau.kappa().clone())?;
    let bad = bad_set(&hole, nmax)?;
    let q = pair.len();
    if *a <= split {
        for tail_start in 3..=nmax {
            if (tail_start..=nmax).all(|n| bad.contains(&n)) {
                return Ok(StretchCase::AllOfTail { tail_start });
            }
        }
    } else {
        for tail_start in 3..=nmax {
            if (tail_start..=nmax).all(|n| bad.contains(&n) == (n % q != 0)) {
                return Ok(StretchCase::MultiplesRemoved {
                    period: q,
                    tail_start,
                });
            }
        }
    }
    Err(RegionError::StretchPatternUnconfirmed { nmax })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: u64, q: u64) -> RotationNumber {
        RotationNumber::new(p, q).unwrap()
    }

    #[test]
    fn plateau_find_examples() {
        let p = plateau_find(&ratio(2, 5)).unwrap();
        assert_eq!(p.rotation_number(), r(1, 2));
        assert_eq!((p.left(), p.right()), (&ratio(1, 3), &ratio(5, 12)));

        let p = plateau_find(&ratio(2, 7)).unwrap();
        assert_eq!(p.rotation_number(), r(1, 3));
        assert_eq!(p.left(), &ratio(2, 7));

        let p = plateau_find(&ratio(9, 28)).unwrap();
        assert_eq!(p.rotation_number(), r(1, 3));
        assert_eq!(p.right(), &ratio(9, 28));

        assert!(matches!(
            plateau_find(&ratio(1, 5)),
            Err(RegionError::OutsideStaircaseDomain(_))
        ));
        assert!(matches!(
            plateau_find(&ratio(1, 2)),
            Err(RegionError::OutsideStaircaseDomain(_))
        ));
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&ratio(2, 5)).unwrap(), ratio(7, 12));
        assert_eq!(kappa(&ratio(9, 28)).unwrap(), ratio(15, 28));
        assert_eq!(kappa(&ratio(1, 3)).unwrap(), ratio(7, 12));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&ratio(2, 7)).unwrap(), ratio(4, 7));
        assert_eq!(phi(&ratio(10, 31)).unwrap(), ratio(18, 31));
        assert_eq!(phi(&ratio(9, 28)).unwrap(), ratio(4, 7));
        assert!(phi(&ratio(9, 20)).is_err());
    }

    #[test]
    fn plateau_value_identities() {
        for (p, q) in [(1, 2), (1, 3), (2, 5), (3, 7), (2, 3)] {
            let plat = plateau_for(r(p, q)).unwrap();
            assert_eq!(plat.kappa() - plat.left(), ratio(1, 4));
            let denom = (1i64 << q) - 1;
            assert_eq!(plat.kappa() - plat.right(), ratio(denom - 1, 4 * denom));
        }
    }

    #[test]
    fn final_stretch_examples() {
        assert_eq!(
            final_stretch(&ratio(1, 3), 14).unwrap(),
            StretchCase::AllOfTail { tail_start: 3 }
        );
        assert_eq!(
            final_stretch(&ratio(5, 12), 14).unwrap(),
            StretchCase::MultiplesRemoved {
                period: 2,
                tail_start: 3
            }
        );
        assert_eq!(
            final_stretch(&ratio(9, 28), 15).unwrap(),
            StretchCase::MultiplesRemoved {
                period: 3,
                tail_start: 3
            }
        );
        // inside the plateau of 1/3 but past s t s^inf the regime flips
        assert_eq!(
            final_stretch(&ratio(2, 7), 12).unwrap(),
            StretchCase::AllOfTail { tail_start: 4 }
        );
    }

    #[test]
    fn jump_is_detected_near_plateau_end() {
        let step = Rational::new(1.into(), num_bigint::BigInt::from(1) << 20);
        let at_end = kappa(&ratio(9, 28)).unwrap();
        let past_end = kappa(&(ratio(9, 28) + step)).unwrap();
        assert!(past_end > at_end);
    }
}
