//! Constructive avoiding cycles: the per-anti-corner witness families of
//! the corner table, the exit-period scan around the corners, and the
//! block-built cycles that avoid slightly shrunk staircase-corner holes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::cycles::{avoids, bad_set, first_avoiding_cycle_capped, Cycle, Hole};
use crate::exact::{ratio, Rational};
use crate::regions::{d3_table, plateau_for, RegionError};
use crate::words::{block_factorization, RotationNumber, Word};

/// Default widening used when probing just outside a corner.
pub fn default_exit_epsilon() -> Rational {
    ratio(1, 4096)
}

/// Bad set of the widened corner hole (a_i - eps, b_i + eps), scanned up
/// to length 12. The union over all nine corners is {3, 4, 5, 6}.
pub fn exit_periods(i: usize, epsilon: &Rational) -> Result<BTreeSet<usize>, RegionError> {
    if !(1..=9).contains(&i) {
        return Err(RegionError::CornerIndex(i));
    }
    if !epsilon.is_positive() {
        return Err(RegionError::NonPositiveEpsilon);
    }
    let (a, b) = d3_table().corner(i).clone();
    let hole = Hole::new(a - epsilon, b + epsilon)?;
    Ok(bad_set(&hole, 12)?)
}

fn zeros(count: usize) -> Word {
    Word::from_bits(&vec![0u8; count])
}

// The suffix families per anti-corner row. Rows 1..=3 all start from the
// length-3 base block 010 followed by j more copies and a length-m suffix
// (m in 1..=3 chosen by the residue of n); the suffixes differ per row so
// that the near-hole rotation clears each row's own upper endpoint.
fn family_word(i: usize, n: usize) -> Word {
    debug_assert!(n >= 3);
    match i {
        // hole (0, 3/7): take 0 1^{n-1}, which lives in [3/7, 1]
        0 => {
            let mut bits = vec![1u8; n];
            bits[0] = 0;
            Word::from_bits(&bits)
        }
        1..=3 => {
            let base: Word = "010".parse().unwrap();
            if n == 3 {
                return base;
            }
            let m = (n - 4) % 3 + 1;
            let j = (n - 3 - m) / 3;
            let suffix = match (i, m) {
                // all-zero tails; the 2^{n-3}-style rotation stays above
                // 32/63 for row 1 but dips below 16/31, so row 2 swaps its
                // length-3 tail for 100, and row 3 needs 10/100 tails to
                // clear 8/15
                (1, m) => zeros(m),
                (2, 3) => "100".parse().unwrap(),
                (2, m) => zeros(m),
                (3, 1) => zeros(1),
                (3, 2) => "10".parse().unwrap(),
                (3, _) => "100".parse().unwrap(),
                _ => unreachable!(),
            };
            base.concat(&base.repeated(j)).concat(&suffix)
        }
        // hole (2/5, 4/7): alternating words with one defect
        4 => {
            let pair: Word = "01".parse().unwrap();
            if n % 2 == 1 {
                pair.repeated((n - 1) / 2).concat(&zeros(1))
            } else {
                pair.repeated((n - 2) / 2).concat(&"10".parse().unwrap())
            }
        }
        _ => unreachable!("mirrored rows handled by complementation"),
    }
}

/// A verified n-cycle avoiding the open anti-corner hole (a_i, b_{i+1}).
/// Rows 5..=9 are served by complementing the mirror row. Every witness is
/// checked with `avoids` before being returned; if a family word ever
/// failed the check, the scan fallback would still produce a witness.
pub fn anti_corner_witness(i: usize, n: usize) -> Result<Cycle, RegionError> {
    if i > 9 {
        return Err(RegionError::AntiCornerIndex(i));
    }
    if n < 3 {
        return Err(RegionError::WitnessLength(n));
    }
    let (a, b) = d3_table().anti_corner(i);
    let hole = Hole::new(a, b)?;
    if i >= 5 {
        let mirrored = anti_corner_witness(9 - i, n)?;
        let cycle = mirrored.complemented();
        debug_assert!(avoids(&cycle, &hole));
        return Ok(cycle);
    }
    if let Ok(cycle) = Cycle::from_word(&family_word(i, n)) {
        if avoids(&cycle, &hole) {
            return Ok(cycle);
        }
    }
    first_avoiding_cycle_capped(&hole, n, n)?.ok_or(RegionError::WitnessUnavailable { index: i, n })
}

// Smallest m with 2^{1 - m q} < eps, the margin at which a t^m run provably
// clears the shrunk hole top.
fn analytic_exponent(q: usize, epsilon: &Rational) -> usize {
    let mut m = 1usize;
    loop {
        // 2^{m q - 1} * num > den  <=>  2^{1 - m q} < num / den
        let lhs: BigInt = (BigInt::one() << (m * q - 1)) * epsilon.numer();
        if lhs > *epsilon.denom() {
            return m;
        }
        m += 1;
    }
}

fn mod_inverse(a: usize, modulus: usize) -> usize {
    // modulus is small; brute force keeps it obvious
    (1..modulus)
        .find(|&x| (a * x) % modulus == 1)
        .expect("block length is coprime to the period")
}

// Ascending sequences of `parts` distinct positive integers with the given
// sum, largest-minimum first so the most promising candidates are tried
// before the marginal ones.
fn distinct_partitions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn descend(
        total: usize,
        parts: usize,
        min: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 1 {
            if total >= min {
                prefix.push(total);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        let mut v = min;
        // leave room for parts-1 strictly larger values
        while v * parts + parts * (parts - 1) / 2 <= total {
            prefix.push(v);
            descend(total - v, parts - 1, v + 1, prefix, out);
            prefix.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    descend(total, parts, 1, &mut Vec::new(), &mut out);
    out.sort_by(|x, y| y[0].cmp(&x[0]).then_with(|| y.cmp(x)));
    out
}

fn build_block_word(u: &Word, v: &Word, exponents: &[usize]) -> Word {
    let vu = v.concat(u);
    let mut word = Word::empty();
    for &m in exponents {
        word = word.concat(u).concat(&vu.repeated(m));
    }
    word
}

/// Builds a prime n-cycle avoiding the shrunk hole
/// (value(s t^inf), value(t s^inf) - eps) from the blocks u, v of the
/// factorization s = u v, t = v u: a chain of k blocks u (v u)^{m_i} with
/// distinct exponents, where k solves k |u| = n mod q. Candidates start at
/// the analytic exponent bound and every result is verified with `avoids`
/// before it is returned; n too small for any verifiable assignment is an
/// error reporting the smallest guaranteed length in the residue class.
pub fn construct_avoiding_cycle(
    r: RotationNumber,
    epsilon: &Rational,
    n: usize,
) -> Result<Cycle, RegionError> {
    if !epsilon.is_positive() {
        return Err(RegionError::NonPositiveEpsilon);
    }
    let plateau = plateau_for(r)?;
    let (u, v) = block_factorization(r)?;
    let q = plateau.pair().len();
    let j = u.len();
    let k = {
        let k = (n % q) * mod_inverse(j % q, q) % q;
        if k == 0 {
            q
        } else {
            k
        }
    };
    let m_floor = analytic_exponent(q, epsilon);
    let guaranteed = k * j + q * (k * m_floor + k * (k - 1) / 2);
    let too_small = RegionError::CycleLengthTooSmall {
        n,
        minimal: guaranteed,
    };
    if n < k * j + q * (k * (k + 1) / 2) {
        // not even k distinct positive exponents fit
        return Err(too_small);
    }
    let total = (n - k * j) / q;
    debug_assert_eq!(k * j + q * total, n);

    let bottom = plateau.right().clone();
    let top = plateau.kappa() - epsilon;
    for exponents in distinct_partitions(total, k) {
        let word = build_block_word(&u, &v, &exponents);
        debug_assert_eq!(word.len(), n);
        let Ok(cycle) = Cycle::from_word(&word) else {
            continue;
        };
        if cycle.points().iter().all(|p| !(*p > bottom && *p < top)) {
            return Ok(cycle);
        }
    }
    Err(too_small)
}

/// Mirror variant serving the hole (value(s t^inf) + eps, value(t s^inf)),
/// obtained by complementing a witness for the complementary slope.
pub fn construct_avoiding_cycle_mirrored(
    r: RotationNumber,
    epsilon: &Rational,
    n: usize,
) -> Result<Cycle, RegionError> {
    Ok(construct_avoiding_cycle(r.complemented(), epsilon, n)?.complemented())
}
