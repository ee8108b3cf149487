//! Prime cycles of the doubling map, enumerated as aperiodic binary
//! necklaces, and the hole-avoidance scans built on top of them.
//!
//! A prime n-cycle is identified with the aperiodic necklace of length n
//! formed by the binary expansions of its points; the points themselves are
//! the rationals k/(2^n - 1) obtained from the rotations. Enumeration walks
//! necklace representatives directly (no generate-then-dedup), in
//! lexicographic order of the representative.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::exact::Rational;
use crate::words::Word;

/// Default enumeration cap; 2^28/28 necklaces is still comfortable.
pub const DEFAULT_CYCLE_CAP: usize = 28;

/// Hard limit keeping rotation values inside a u64.
const ABSOLUTE_CYCLE_CAP: usize = 48;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("cycle length {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("cycle length must be at least 1")]
    ZeroLength,
    #[error("`{0}` is periodic, so it does not define a prime cycle")]
    PeriodicWord(Word),
    #[error("hole endpoints must satisfy 0 <= a < b <= 1, got ({a}, {b})")]
    BadHole { a: Rational, b: Rational },
    #[error("bad-set scans start at n = 3, got nmax = {0}")]
    BadSetRange(usize),
    #[error("the high cycle family needs length >= 2")]
    HighCycleLength,
    #[error("block words must have equal nonzero length")]
    MismatchedBlocks,
}

/// An open interval hole (a, b) in [0, 1]; endpoint touching never counts
/// as inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hole {
    a: Rational,
    b: Rational,
}

impl Hole {
    pub fn new(a: Rational, b: Rational) -> Result<Self, CycleError> {
        if a.is_negative() || a >= b || b > Rational::one() {
            return Err(CycleError::BadHole { a, b });
        }
        Ok(Hole { a, b })
    }

    pub fn left(&self) -> &Rational {
        &self.a
    }

    pub fn right(&self) -> &Rational {
        &self.b
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        self.a < *x && *x < self.b
    }

    /// The mirror hole (1 - b, 1 - a) under the complement symmetry.
    pub fn complemented(&self) -> Hole {
        Hole {
            a: Rational::one() - &self.b,
            b: Rational::one() - &self.a,
        }
    }
}

/// A prime n-cycle: the lexicographically least rotation of its symbolic
/// word plus the n rational points, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    word: Word,
    points: Vec<Rational>,
}

/// Serialization shape shared by the CLI's JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct CycleRecord {
    pub n: usize,
    pub representative: String,
    pub points: Vec<String>,
}

impl Cycle {
    /// Builds the cycle generated by any rotation of `word`; the stored
    /// representative is the least rotation. Periodic words are rejected.
    pub fn from_word(word: &Word) -> Result<Cycle, CycleError> {
        if word.is_empty() {
            return Err(CycleError::ZeroLength);
        }
        if !word.is_primitive() {
            return Err(CycleError::PeriodicWord(word.clone()));
        }
        Ok(Self::from_representative(word.least_rotation()))
    }

    // Caller guarantees `word` is an aperiodic least rotation.
    fn from_representative(word: Word) -> Cycle {
        let n = word.len();
        let modulus = pow2(n) - BigInt::one();
        let mut points: Vec<Rational> = (0..n)
            .map(|k| {
                let rotated = word.rotated_left(k);
                Rational::new(bits_to_int(rotated.bits()), modulus.clone())
            })
            .collect();
        points.sort();
        Cycle { word, points }
    }

    /// Cycle length; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn representative(&self) -> &Word {
        &self.word
    }

    /// Points in increasing order.
    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn min_point(&self) -> &Rational {
        &self.points[0]
    }

    pub fn max_point(&self) -> &Rational {
        self.points.last().unwrap()
    }

    /// The image cycle under x -> 1 - x (bitwise complement of the word).
    pub fn complemented(&self) -> Cycle {
        Self::from_representative(self.word.complement().least_rotation())
    }

    pub fn record(&self) -> CycleRecord {
        CycleRecord {
            n: self.len(),
            representative: self.word.to_string(),
            points: self.points.iter().map(|p| p.to_string()).collect(),
        }
    }
}

fn bits_to_int(bits: &[u8]) -> BigInt {
    let mut acc = BigInt::from(0u8);
    for &b in bits {
        acc = (acc << 1) + b;
    }
    acc
}

fn pow2(exp: usize) -> BigInt {
    BigInt::one() << exp
}

/// Visits every aperiodic binary necklace of length n (its lexicographically
/// least rotation, i.e. a Lyndon word) in lexicographic order. Classic
/// constant-amortized-time necklace generation, filtered to full period.
pub fn try_for_each_prime_necklace<B>(
    n: usize,
    f: &mut dyn FnMut(&[u8]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    fn descend<B>(
        t: usize,
        p: usize,
        n: usize,
        a: &mut [u8],
        f: &mut dyn FnMut(&[u8]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if t > n {
            if p == n {
                f(&a[1..=n])?;
            }
            return ControlFlow::Continue(());
        }
        a[t] = a[t - p];
        descend(t + 1, p, n, a, f)?;
        for v in (a[t - p] + 1)..=1 {
            a[t] = v;
            descend(t + 1, t, n, a, f)?;
        }
        ControlFlow::Continue(())
    }

    if n == 0 {
        return ControlFlow::Continue(());
    }
    let mut a = vec![0u8; n + 1];
    descend(1, 1, n, &mut a, f)
}

pub fn for_each_prime_necklace(n: usize, mut f: impl FnMut(&[u8])) {
    let _ = try_for_each_prime_necklace::<()>(n, &mut |bits| {
        f(bits);
        ControlFlow::Continue(())
    });
}

fn check_cap(n: usize, cap: usize) -> Result<(), CycleError> {
    if n == 0 {
        return Err(CycleError::ZeroLength);
    }
    let cap = cap.min(ABSOLUTE_CYCLE_CAP);
    if n > cap {
        return Err(CycleError::CapExceeded { n, cap });
    }
    Ok(())
}

/// All prime n-cycles, sorted by representative.
pub fn enumerate_cycles(n: usize) -> Result<Vec<Cycle>, CycleError> {
    enumerate_cycles_capped(n, DEFAULT_CYCLE_CAP)
}

pub fn enumerate_cycles_capped(n: usize, cap: usize) -> Result<Vec<Cycle>, CycleError> {
    check_cap(n, cap)?;
    let mut out = Vec::new();
    for_each_prime_necklace(n, |bits| {
        out.push(Cycle::from_representative(Word::from_bits(bits)));
    });
    Ok(out)
}

/// True when no point of the cycle lies strictly inside the hole.
pub fn avoids(cycle: &Cycle, hole: &Hole) -> bool {
    !cycle.points().iter().any(|p| hole.contains_point(p))
}

/// Integer window: the lattice points k with a < k/(2^n - 1) < b are
/// exactly lo..=hi, or None when the window is empty (every n-cycle then
/// avoids the hole trivially).
fn lattice_window(hole: &Hole, n: usize) -> Option<(u64, u64)> {
    let modulus = pow2(n) - BigInt::one();
    let lo = (hole.left().numer() * &modulus).div_floor(hole.left().denom()) + BigInt::one();
    let hi = (hole.right().numer() * &modulus).div_ceil(hole.right().denom()) - BigInt::one();
    if lo > hi {
        None
    } else {
        Some((lo.to_u64().unwrap(), hi.to_u64().unwrap()))
    }
}

/// Does some rotation value of the necklace fall in [lo, hi]?
fn necklace_hits(bits: &[u8], lo: u64, hi: u64) -> bool {
    let mask = (1u64 << bits.len()) - 1;
    let mut value = 0u64;
    for &b in bits {
        value = (value << 1) | b as u64;
    }
    // shifting the leading bit back in walks through every rotation
    for &b in bits {
        if lo <= value && value <= hi {
            return true;
        }
        value = ((value << 1) & mask) | b as u64;
    }
    false
}

/// Is every prime n-cycle forced through the hole?
fn is_bad_length(hole: &Hole, n: usize) -> bool {
    let Some((lo, hi)) = lattice_window(hole, n) else {
        return false;
    };
    let survivor_found = try_for_each_prime_necklace::<()>(n, &mut |bits| {
        if necklace_hits(bits, lo, hi) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    });
    survivor_found.is_continue()
}

/// The set of n in [3, nmax] for which every prime n-cycle meets the hole.
pub fn bad_set(hole: &Hole, nmax: usize) -> Result<BTreeSet<usize>, CycleError> {
    bad_set_capped(hole, nmax, DEFAULT_CYCLE_CAP)
}

pub fn bad_set_capped(hole: &Hole, nmax: usize, cap: usize) -> Result<BTreeSet<usize>, CycleError> {
    if nmax < 3 {
        return Err(CycleError::BadSetRange(nmax));
    }
    check_cap(nmax, cap)?;
    Ok((3..=nmax).filter(|&n| is_bad_length(hole, n)).collect())
}

/// All prime cycles of length <= nmax avoiding the hole.
pub fn survivor_cycles(hole: &Hole, nmax: usize) -> Result<Vec<Cycle>, CycleError> {
    survivor_cycles_capped(hole, nmax, DEFAULT_CYCLE_CAP)
}

pub fn survivor_cycles_capped(
    hole: &Hole,
    nmax: usize,
    cap: usize,
) -> Result<Vec<Cycle>, CycleError> {
    check_cap(nmax, cap)?;
    let mut out = Vec::new();
    for n in 1..=nmax {
        match lattice_window(hole, n) {
            None => for_each_prime_necklace(n, |bits| {
                out.push(Cycle::from_representative(Word::from_bits(bits)));
            }),
            Some((lo, hi)) => for_each_prime_necklace(n, |bits| {
                if !necklace_hits(bits, lo, hi) {
                    out.push(Cycle::from_representative(Word::from_bits(bits)));
                }
            }),
        }
    }
    Ok(out)
}

/// First prime n-cycle (by representative order) avoiding the hole.
pub fn first_avoiding_cycle(hole: &Hole, n: usize) -> Result<Option<Cycle>, CycleError> {
    first_avoiding_cycle_capped(hole, n, DEFAULT_CYCLE_CAP)
}

pub fn first_avoiding_cycle_capped(
    hole: &Hole,
    n: usize,
    cap: usize,
) -> Result<Option<Cycle>, CycleError> {
    check_cap(n, cap)?;
    let window = lattice_window(hole, n);
    let mut found: Option<Cycle> = None;
    let _ = try_for_each_prime_necklace::<()>(n, &mut |bits| {
        let hits = match window {
            Some((lo, hi)) => necklace_hits(bits, lo, hi),
            None => false,
        };
        if hits {
            ControlFlow::Continue(())
        } else {
            found = Some(Cycle::from_representative(Word::from_bits(bits)));
            ControlFlow::Break(())
        }
    });
    Ok(found)
}

/// Number of prime n-cycles avoiding the hole.
pub fn count_avoiding_cycles(hole: &Hole, n: usize) -> Result<u64, CycleError> {
    count_avoiding_cycles_capped(hole, n, DEFAULT_CYCLE_CAP)
}

pub fn count_avoiding_cycles_capped(hole: &Hole, n: usize, cap: usize) -> Result<u64, CycleError> {
    check_cap(n, cap)?;
    let window = lattice_window(hole, n);
    let mut count = 0u64;
    for_each_prime_necklace(n, |bits| match window {
        Some((lo, hi)) if necklace_hits(bits, lo, hi) => {}
        _ => count += 1,
    });
    Ok(count)
}

/// The n-cycle of (2^{n-1} - 1)/(2^n - 1), which lives entirely in
/// [(2^{n-1} - 1)/(2^n - 1), 1]: symbolically the necklace 0 1^{n-1}.
pub fn high_cycle(n: usize) -> Result<Cycle, CycleError> {
    if n < 2 {
        return Err(CycleError::HighCycleLength);
    }
    let mut bits = vec![1u8; n];
    bits[0] = 0;
    Ok(Cycle::from_representative(Word::from_bits(&bits)))
}

/// True when some rotation of the cycle's word is a concatenation of the
/// equal-length blocks s and t.
pub fn factorizes_over(cycle: &Cycle, s: &Word, t: &Word) -> Result<bool, CycleError> {
    if s.is_empty() || s.len() != t.len() {
        return Err(CycleError::MismatchedBlocks);
    }
    let q = s.len();
    let n = cycle.len();
    if !n.is_multiple_of(q) {
        return Ok(false);
    }
    let word = cycle.representative();
    'rotation: for k in 0..n {
        let rotated = word.rotated_left(k);
        for chunk in rotated.bits().chunks(q) {
            if chunk != s.bits() && chunk != t.bits() {
                continue 'rotation;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// Exponential growth estimate log2(n * A(n)) / n, where A(n) counts the
/// avoiding prime n-cycles. `None` when there are no survivors at all
/// (an empty set is not an entropy-zero set).
pub fn growth_exponent(hole: &Hole, n: usize) -> Result<Option<f64>, CycleError> {
    growth_exponent_capped(hole, n, DEFAULT_CYCLE_CAP)
}

pub fn growth_exponent_capped(
    hole: &Hole,
    n: usize,
    cap: usize,
) -> Result<Option<f64>, CycleError> {
    let count = count_avoiding_cycles_capped(hole, n, cap)?;
    if count == 0 {
        return Ok(None);
    }
    Ok(Some((n as f64 * count as f64).log2() / n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{doubling, ratio};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn hole(a: Rational, b: Rational) -> Hole {
        Hole::new(a, b).unwrap()
    }

    fn points(fractions: &[(i64, i64)]) -> Vec<Rational> {
        let mut v: Vec<Rational> = fractions.iter().map(|&(p, q)| ratio(p, q)).collect();
        v.sort();
        v
    }

    /// Independent count of aperiodic binary necklaces via Moebius
    /// inversion: (1/n) * sum over d | n of mu(d) 2^{n/d}.
    fn lyndon_count(n: u64) -> u64 {
        fn moebius(mut d: u64) -> i64 {
            let mut mu = 1i64;
            let mut p = 2;
            while p * p <= d {
                if d.is_multiple_of(p) {
                    d /= p;
                    if d.is_multiple_of(p) {
                        return 0;
                    }
                    mu = -mu;
                }
                p += 1;
            }
            if d > 1 {
                mu = -mu;
            }
            mu
        }
        let mut total = 0i64;
        for d in 1..=n {
            if n.is_multiple_of(d) {
                total += moebius(d) * (1i64 << (n / d));
            }
        }
        (total / n as i64) as u64
    }

    #[test]
    fn enumeration_matches_moebius_count() {
        for n in 1..=20 {
            let mut seen = 0u64;
            for_each_prime_necklace(n, |_| seen += 1);
            assert_eq!(seen, lyndon_count(n as u64), "n = {}", n);
        }
        assert_eq!(enumerate_cycles(3).unwrap().len(), 2);
        assert_eq!(enumerate_cycles(4).unwrap().len(), 3);
        assert_eq!(enumerate_cycles(5).unwrap().len(), 6);
        assert_eq!(enumerate_cycles(6).unwrap().len(), 9);
    }

    #[test]
    fn enumerate_small_cycles() {
        let three = enumerate_cycles(3).unwrap();
        assert_eq!(three[0].points(), points(&[(1, 7), (2, 7), (4, 7)]));
        assert_eq!(three[1].points(), points(&[(3, 7), (5, 7), (6, 7)]));

        let one = enumerate_cycles(1).unwrap();
        assert_eq!(one.len(), 2);
        assert_eq!(one[0].points(), points(&[(0, 1)]));
        assert_eq!(one[1].points(), points(&[(1, 1)]));

        let six = enumerate_cycles(6).unwrap();
        assert!(six
            .iter()
            .any(|c| c.points() == points(&[(1, 9), (2, 9), (4, 9), (5, 9), (7, 9), (8, 9)])));

        assert!(matches!(
            enumerate_cycles(64),
            Err(CycleError::CapExceeded { .. })
        ));
    }

    #[test]
    fn representatives_are_sorted_least_rotations() {
        let five = enumerate_cycles(5).unwrap();
        let reps: Vec<&Word> = five.iter().map(|c| c.representative()).collect();
        assert!(reps.windows(2).all(|pair| pair[0] < pair[1]));
        for c in &five {
            assert_eq!(c.representative().least_rotation(), *c.representative());
            assert!(c.representative().is_primitive());
        }
    }

    #[test]
    fn avoids_examples() {
        let two_cycle = Cycle::from_word(&w("01")).unwrap();
        assert!(avoids(&two_cycle, &hole(ratio(3, 7), ratio(4, 7))));

        let c = Cycle::from_word(&w("001")).unwrap();
        assert!(!avoids(
            &c,
            &hole(ratio(2, 7) - ratio(1, 64), ratio(3, 7) + ratio(1, 64))
        ));

        // endpoint touching does not count as inside
        let c = Cycle::from_word(&w("011")).unwrap();
        assert!(avoids(&c, &hole(ratio(2, 7), ratio(3, 7))));
    }

    #[test]
    fn bad_set_examples() {
        let widened = hole(ratio(2, 7) - ratio(1, 64), ratio(3, 7) + ratio(1, 64));
        assert!(bad_set(&widened, 8).unwrap().contains(&3));

        assert!(bad_set(&hole(ratio(3, 7), ratio(4, 7)), 12)
            .unwrap()
            .is_empty());

        let wide = hole(ratio(1, 3), ratio(7, 12));
        let expected: BTreeSet<usize> = (3..=12).collect();
        assert_eq!(bad_set(&wide, 12).unwrap(), expected);

        assert!(matches!(bad_set(&wide, 2), Err(CycleError::BadSetRange(2))));
    }

    #[test]
    fn survivor_examples() {
        let survivors = survivor_cycles(&hole(ratio(5, 12), ratio(7, 12)), 4).unwrap();
        let reps: Vec<String> = survivors
            .iter()
            .map(|c| c.representative().to_string())
            .collect();
        assert_eq!(reps, vec!["0", "1", "01", "0011"]);

        let survivors = survivor_cycles(&hole(ratio(1, 4), ratio(3, 4)), 10).unwrap();
        let reps: Vec<String> = survivors
            .iter()
            .map(|c| c.representative().to_string())
            .collect();
        assert_eq!(reps, vec!["0", "1"]);

        let survivors = survivor_cycles(&hole(ratio(2, 7), ratio(32, 63)), 7).unwrap();
        let seven: Vec<&Cycle> = survivors.iter().filter(|c| c.len() == 7).collect();
        let target = points(&[
            (9, 127),
            (18, 127),
            (36, 127),
            (72, 127),
            (17, 127),
            (34, 127),
            (68, 127),
        ]);
        assert!(seven.iter().any(|c| c.points() == target));
    }

    #[test]
    fn high_cycle_examples() {
        assert_eq!(
            high_cycle(3).unwrap().points(),
            points(&[(3, 7), (5, 7), (6, 7)])
        );
        assert_eq!(
            high_cycle(4).unwrap().points(),
            points(&[(7, 15), (11, 15), (13, 15), (14, 15)])
        );
        assert_eq!(
            high_cycle(5).unwrap().points(),
            points(&[(15, 31), (23, 31), (27, 31), (29, 31), (30, 31)])
        );
        assert!(high_cycle(1).is_err());

        // avoids any hole ending below its minimum point
        for n in 2..=10 {
            let c = high_cycle(n).unwrap();
            let h = hole(ratio(1, 5), c.min_point() - ratio(1, 1000));
            assert!(avoids(&c, &h));
        }
    }

    #[test]
    fn factorization_examples() {
        let c = Cycle::from_word(&w("0110")).unwrap();
        assert!(factorizes_over(&c, &w("01"), &w("10")).unwrap());

        let c = Cycle::from_word(&w("011")).unwrap();
        assert!(!factorizes_over(&c, &w("01"), &w("10")).unwrap());

        // the cycle of (010)^infinity, blocks of length three
        let c = Cycle::from_word(&w("001")).unwrap();
        assert!(factorizes_over(&c, &w("010"), &w("100")).unwrap());

        assert!(factorizes_over(&c, &w("01"), &w("100")).is_err());
    }

    #[test]
    fn growth_exponent_sentinel() {
        // only the fixed points survive, so no prime 12-cycles at all
        let g = growth_exponent(&hole(ratio(1, 4), ratio(3, 4)), 12).unwrap();
        assert_eq!(g, None);
    }

    #[test]
    fn orbit_closure() {
        for n in 1..=10 {
            for cycle in enumerate_cycles(n).unwrap() {
                let mut mapped: Vec<Rational> = cycle
                    .points()
                    .iter()
                    .map(|p| doubling(p).unwrap())
                    .collect();
                mapped.sort();
                assert_eq!(mapped, cycle.points());
            }
        }
    }

    #[test]
    fn complemented_cycle_mirrors_hole_avoidance() {
        let h = hole(ratio(2, 7), ratio(32, 63));
        for cycle in enumerate_cycles(6).unwrap() {
            assert_eq!(
                avoids(&cycle, &h),
                avoids(&cycle.complemented(), &h.complemented())
            );
        }
    }

    #[test]
    fn hole_validation() {
        assert!(Hole::new(ratio(1, 2), ratio(1, 2)).is_err());
        assert!(Hole::new(ratio(2, 3), ratio(1, 3)).is_err());
        assert!(Hole::new(ratio(-1, 3), ratio(1, 3)).is_err());
        assert!(Hole::new(ratio(1, 3), ratio(4, 3)).is_err());
        assert!(Hole::new(ratio(0, 1), ratio(1, 1)).is_ok());
    }

    /// The integer-window scan must agree with the point-by-point test,
    /// in particular on holes whose endpoints are themselves cycle points
    /// (where the open-interval convention bites).
    #[test]
    fn window_scan_agrees_with_point_test() {
        for n in 2..=9usize {
            let denom = (1i64 << n) - 1;
            let endpoint_pairs = [
                (ratio(1, denom), ratio(denom - 1, denom)),
                (ratio(2, denom), ratio(denom / 2, denom)),
                (ratio(denom / 3, denom), ratio(denom / 2 + 1, denom)),
                (ratio(1, 4), ratio(denom / 2, denom)),
                (ratio(denom / 3, denom), ratio(3, 4)),
            ];
            for (a, b) in endpoint_pairs {
                if a >= b {
                    continue;
                }
                let h = hole(a, b);
                let by_scan: Vec<String> = survivor_cycles(&h, n)
                    .unwrap()
                    .into_iter()
                    .filter(|c| c.len() == n)
                    .map(|c| c.representative().to_string())
                    .collect();
                let by_points: Vec<String> = enumerate_cycles(n)
                    .unwrap()
                    .into_iter()
                    .filter(|c| avoids(c, &h))
                    .map(|c| c.representative().to_string())
                    .collect();
                assert_eq!(by_scan, by_points, "n = {}, hole ({}, {})", n, h.a, h.b);
            }
        }
    }
}
