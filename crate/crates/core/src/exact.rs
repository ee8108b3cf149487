//! Exact dyadic machinery: arbitrary-precision rationals, canonical binary
//! expansions, the doubling map, and lexicographic comparison of eventually
//! periodic words.
//!
//! Conventions baked in here and relied on everywhere else:
//!
//! * binary expansions are canonical: the period is primitive, the
//!   preperiod is as short as possible, and no expansion ends in an
//!   all-ones period except `x = 1`, which is represented as `(1)`;
//! * the doubling map takes the branch `2x` on `[0, 1/2]` and `2x - 1` on
//!   `(1/2, 1]`, so `T(1/2) = 1`;
//! * word order is the total lexicographic order; two distinct words may
//!   still have the same value (`w01(1)` versus `w1(0)`).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::words::Word;

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0} lies outside the unit interval [0, 1]")]
    OutsideUnitInterval(Rational),
    #[error("invalid rational literal `{0}` (expected `p/q` or an integer)")]
    BadRationalLiteral(String),
    #[error("invalid word literal `{0}` (expected PRE(PER) over 0/1)")]
    BadWordLiteral(String),
    #[error("the period of an eventually periodic word must be nonempty")]
    EmptyPeriod,
}

/// Convenience constructor used pervasively in tests and the CLI.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `p/q` or a bare integer, rejecting zero denominators instead of
/// panicking like `Ratio::new` would.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadRationalLiteral(text.to_string());
    let s = text.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(Rational::from_integer(num))
        }
    }
}

fn in_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

/// Canonical form of an eventually periodic 0/1 word `PRE (PER)^infinity`:
/// the period is primitive and the preperiod is shortest, i.e. its last
/// letter differs from the aligned last letter of the period.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicWord {
    preperiod: Word,
    period: Word,
}

impl EventuallyPeriodicWord {
    pub fn new(preperiod: Word, period: Word) -> Result<Self, ExactError> {
        if period.is_empty() {
            return Err(ExactError::EmptyPeriod);
        }
        let mut pre: Vec<u8> = preperiod.bits().to_vec();
        let mut per: Vec<u8> = period.bits().to_vec();

        // Reduce the period to its primitive root.
        let n = per.len();
        for d in 1..n {
            if n.is_multiple_of(d) && (0..n).all(|i| per[i] == per[i % d]) {
                per.truncate(d);
                break;
            }
        }
        // Absorb preperiod letters that merely repeat the period's tail.
        while let Some(&last) = pre.last() {
            if last == *per.last().unwrap() {
                pre.pop();
                per.rotate_right(1);
            } else {
                break;
            }
        }
        Ok(EventuallyPeriodicWord {
            preperiod: Word::from_bits(&pre),
            period: Word::from_bits(&per),
        })
    }

    /// Purely periodic word `(PER)^infinity`.
    pub fn periodic(period: Word) -> Result<Self, ExactError> {
        Self::new(Word::empty(), period)
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// Symbol at position `i` (0-based) of the infinite word.
    pub fn symbol(&self, i: usize) -> u8 {
        let m = self.preperiod.len();
        if i < m {
            self.preperiod.bit(i)
        } else {
            self.period.bit((i - m) % self.period.len())
        }
    }

    /// The word with its first symbol removed; this is what the doubling
    /// map does to expansions of points with odd denominator.
    pub fn shifted(&self) -> Self {
        if self.preperiod.is_empty() {
            Self::periodic(self.period.rotated_left(1)).expect("period stays nonempty")
        } else {
            let pre = Word::from_bits(&self.preperiod.bits()[1..]);
            Self::new(pre, self.period.clone()).expect("period stays nonempty")
        }
    }
}

impl fmt::Display for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.preperiod, self.period)
    }
}

impl fmt::Debug for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EventuallyPeriodicWord({})", self)
    }
}

impl FromStr for EventuallyPeriodicWord {
    type Err = ExactError;

    /// Parses the shared `PRE(PER)` literal format, e.g. `01(10)`, `(011)`.
    fn from_str(s: &str) -> Result<Self, ExactError> {
        let bad = || ExactError::BadWordLiteral(s.to_string());
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let pre: Word = s[..open].parse().map_err(|_| bad())?;
        let per: Word = s[open + 1..s.len() - 1].parse().map_err(|_| bad())?;
        if per.is_empty() {
            return Err(bad());
        }
        Self::new(pre, per)
    }
}

fn bits_to_int(bits: &[u8]) -> BigInt {
    if bits.is_empty() {
        return BigInt::zero();
    }
    let magnitude = num_bigint::BigUint::from_radix_be(bits, 2).expect("binary digits");
    BigInt::from(magnitude)
}

fn pow2(exp: usize) -> BigInt {
    BigInt::one() << exp
}

/// Value of the infinite word under the binary-digit map, i.e. the sum of
/// `w_j 2^{-j}`. With preperiod length m and period length l the result has
/// denominator dividing `2^m (2^l - 1)`.
pub fn value_of(w: &EventuallyPeriodicWord) -> Rational {
    let m = w.preperiod().len();
    let l = w.period().len();
    let pre = bits_to_int(w.preperiod().bits());
    let per = bits_to_int(w.period().bits());
    let period_denom = pow2(l) - BigInt::one();
    Rational::new(pre * &period_denom + per, pow2(m) * period_denom)
}

/// Canonical binary expansion of a rational in [0, 1]. Round-trips with
/// `value_of`, and never returns an all-ones period except for x = 1.
pub fn expansion_of(x: &Rational) -> Result<EventuallyPeriodicWord, ExactError> {
    if !in_unit_interval(x) {
        return Err(ExactError::OutsideUnitInterval(x.clone()));
    }
    if x.is_one() {
        return EventuallyPeriodicWord::periodic(Word::from_bits(&[1]));
    }
    // Long division by repeated doubling; the first repeated remainder
    // closes the period. Minimality of both parts follows from the states
    // being in bijection with the tails they generate.
    let (pre_bits, per_bits) = match (x.numer().to_u64(), x.denom().to_u64()) {
        (Some(num), Some(den)) if den <= u64::MAX / 2 => expansion_digits_u64(num, den),
        _ => expansion_digits_big(x.numer(), x.denom()),
    };
    EventuallyPeriodicWord::new(Word::from_bits(&pre_bits), Word::from_bits(&per_bits))
}

fn expansion_digits_u64(numer: u64, denom: u64) -> (Vec<u8>, Vec<u8>) {
    let mut state = numer;
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut bits: Vec<u8> = Vec::new();
    loop {
        if let Some(&start) = seen.get(&state) {
            return (bits[..start].to_vec(), bits[start..].to_vec());
        }
        seen.insert(state, bits.len());
        let doubled = state * 2;
        if doubled >= denom {
            bits.push(1);
            state = doubled - denom;
        } else {
            bits.push(0);
            state = doubled;
        }
    }
}

fn expansion_digits_big(numer: &BigInt, denom: &BigInt) -> (Vec<u8>, Vec<u8>) {
    let mut state = numer.clone();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut bits: Vec<u8> = Vec::new();
    loop {
        if let Some(&start) = seen.get(&state) {
            return (bits[..start].to_vec(), bits[start..].to_vec());
        }
        seen.insert(state.clone(), bits.len());
        let doubled = &state * 2;
        if doubled >= *denom {
            bits.push(1);
            state = doubled - denom;
        } else {
            bits.push(0);
            state = doubled;
        }
    }
}

/// The doubling map: `2x` on [0, 1/2], `2x - 1` on (1/2, 1].
pub fn doubling(x: &Rational) -> Result<Rational, ExactError> {
    if !in_unit_interval(x) {
        return Err(ExactError::OutsideUnitInterval(x.clone()));
    }
    let doubled = x * Rational::from_integer(BigInt::from(2));
    if *x <= ratio(1, 2) {
        Ok(doubled)
    } else {
        Ok(doubled - Rational::one())
    }
}

/// The orbit `[x, Tx, ..., T^n x]` (n + 1 points).
pub fn orbit(x: &Rational, n: usize) -> Result<Vec<Rational>, ExactError> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(x.clone());
    for _ in 0..n {
        let next = doubling(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// Total lexicographic order on eventually periodic words. Distinct words
/// can share a value; callers who need the value order compare `value_of`.
pub fn lex_compare(u: &EventuallyPeriodicWord, v: &EventuallyPeriodicWord) -> Ordering {
    let lu = u.period().len();
    let lv = v.period().len();
    let horizon = u.preperiod().len() + v.preperiod().len() + 2 * lu.lcm(&lv);
    for i in 0..horizon {
        match u.symbol(i).cmp(&v.symbol(i)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn epw(s: &str) -> EventuallyPeriodicWord {
        s.parse().unwrap()
    }

    #[test]
    fn value_of_examples() {
        assert_eq!(value_of(&epw("(011)")), ratio(3, 7));
        assert_eq!(value_of(&epw("(0)")), ratio(0, 1));
        assert_eq!(value_of(&epw("01(10)")), ratio(5, 12));
        assert_eq!(value_of(&epw("(1)")), ratio(1, 1));
        assert_eq!(value_of(&epw("1(0)")), ratio(1, 2));
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expansion_of(&ratio(2, 7)).unwrap(), epw("(010)"));
        assert_eq!(expansion_of(&ratio(1, 1)).unwrap(), epw("(1)"));
        assert_eq!(expansion_of(&ratio(5, 12)).unwrap(), epw("01(10)"));
        assert_eq!(expansion_of(&ratio(1, 2)).unwrap(), epw("1(0)"));
        assert_eq!(expansion_of(&ratio(0, 1)).unwrap(), epw("(0)"));
        assert!(expansion_of(&ratio(3, 2)).is_err());
        assert!(expansion_of(&ratio(-1, 2)).is_err());
    }

    #[test]
    fn expansions_never_end_in_ones_except_one() {
        for q in 1..=64i64 {
            for p in 0..q {
                let e = expansion_of(&ratio(p, q)).unwrap();
                assert_ne!(e.period(), &w("1"), "{}/{} expanded to {}", p, q, e);
            }
        }
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(doubling(&ratio(1, 3)).unwrap(), ratio(2, 3));
        assert_eq!(doubling(&ratio(1, 1)).unwrap(), ratio(1, 1));
        // 2 * 3 mod 7 = 6
        assert_eq!(doubling(&ratio(3, 7)).unwrap(), ratio(6, 7));
        // branch boundary: first branch applies at exactly 1/2
        assert_eq!(doubling(&ratio(1, 2)).unwrap(), ratio(1, 1));
        assert!(doubling(&ratio(7, 5)).is_err());
    }

    #[test]
    fn orbit_examples() {
        let orb = orbit(&ratio(1, 7), 3).unwrap();
        assert_eq!(
            orb,
            vec![ratio(1, 7), ratio(2, 7), ratio(4, 7), ratio(1, 7)]
        );
        assert_eq!(orbit(&ratio(0, 1), 5).unwrap(), vec![ratio(0, 1); 6]);
        let orb = orbit(&ratio(5, 31), 5).unwrap();
        assert_eq!(
            orb,
            vec![
                ratio(5, 31),
                ratio(10, 31),
                ratio(20, 31),
                ratio(9, 31),
                ratio(18, 31),
                ratio(5, 31)
            ]
        );
    }

    #[test]
    fn lex_compare_examples() {
        assert_eq!(lex_compare(&epw("(010)"), &epw("(011)")), Ordering::Less);
        assert_eq!(lex_compare(&epw("01(10)"), &epw("(01)")), Ordering::Greater);
        // equal values, distinct words: w 0 (1) versus w 1 (0)
        let u = epw("010(1)");
        let v = epw("011(0)");
        assert_eq!(lex_compare(&u, &v), Ordering::Less);
        assert_eq!(value_of(&u), value_of(&v));
        assert_eq!(lex_compare(&u, &u), Ordering::Equal);
    }

    #[test]
    fn canonicalization() {
        // period reduced to its primitive root
        let e = EventuallyPeriodicWord::new(w("01"), w("1010")).unwrap();
        assert_eq!((e.preperiod(), e.period()), (&w("01"), &w("10")));
        // preperiod absorbed into a rotated period
        let e = EventuallyPeriodicWord::new(w("0110"), w("10")).unwrap();
        assert_eq!(e, epw("01(10)"));
        assert_eq!(value_of(&e), ratio(5, 12));
        assert!(EventuallyPeriodicWord::new(w("01"), Word::empty()).is_err());
    }

    #[test]
    fn shifted_matches_doubling() {
        let e = epw("01(10)");
        assert_eq!(e.shifted(), epw("1(10)"));
        assert_eq!(value_of(&e.shifted()), doubling(&value_of(&e)).unwrap());
    }

    #[test]
    fn literal_round_trip() {
        for text in ["01(10)", "(011)", "(0)", "1(0)", "(1)"] {
            let e = epw(text);
            assert_eq!(e.to_string(), text);
        }
        assert!("01".parse::<EventuallyPeriodicWord>().is_err());
        assert!("01()".parse::<EventuallyPeriodicWord>().is_err());
        assert!("0x(1)".parse::<EventuallyPeriodicWord>().is_err());
    }

    #[test]
    fn parse_rational_literals() {
        assert_eq!(parse_rational("5/12").unwrap(), ratio(5, 12));
        assert_eq!(parse_rational("3").unwrap(), ratio(3, 1));
        assert_eq!(parse_rational("4/10").unwrap(), ratio(2, 5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    /// Shift conjugacy on the purely periodic points: for x = p/(2^l - 1)
    /// the doubling map acts as the one-symbol left shift.
    #[test]
    fn shift_conjugacy_on_cycle_denominators() {
        for l in 1..=12usize {
            let q = (1i64 << l) - 1;
            for p in 0..=q {
                let x = ratio(p, q);
                let shifted = expansion_of(&doubling(&x).unwrap()).unwrap();
                assert_eq!(shifted, expansion_of(&x).unwrap().shifted());
            }
        }
    }

    /// Denominators up to 10^4 keep the expansion periods (multiplicative
    /// orders of 2) small enough for a thousand cases; the full range up
    /// to 10^6 is exercised by `round_trip_large_denominators` below.
    fn rational_strategy() -> impl Strategy<Value = Rational> {
        (1u32..10_000)
            .prop_flat_map(|q| (0..=q, Just(q)).prop_map(|(p, q)| ratio(p as i64, q as i64)))
    }

    #[test]
    fn round_trip_large_denominators() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for _ in 0..40 {
            let q = rng.gen_range(10_000i64..=1_000_000);
            let p = rng.gen_range(0..=q);
            let x = ratio(p, q);
            assert_eq!(value_of(&expansion_of(&x).unwrap()), x);
        }
    }

    fn epw_strategy() -> impl Strategy<Value = EventuallyPeriodicWord> {
        (
            proptest::collection::vec(0u8..=1, 0..6),
            proptest::collection::vec(0u8..=1, 1..6),
        )
            .prop_map(|(pre, per)| {
                EventuallyPeriodicWord::new(Word::from_bits(&pre), Word::from_bits(&per)).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn round_trip(x in rational_strategy()) {
            prop_assert_eq!(value_of(&expansion_of(&x).unwrap()), x);
        }

        #[test]
        fn lex_order_is_consistent_with_values(u in epw_strategy(), v in epw_strategy()) {
            if lex_compare(&u, &v) == Ordering::Less {
                let (xu, xv) = (value_of(&u), value_of(&v));
                prop_assert!(xu <= xv);
                if xu == xv {
                    // only the w 0 (1) / w 1 (0) pair collapses
                    prop_assert_eq!(u.period().bits(), &[1]);
                    prop_assert_eq!(v.period().bits(), &[0]);
                }
            }
        }

        #[test]
        fn value_distance_bounded_by_agreement(u in epw_strategy(), v in epw_strategy()) {
            let mut k = 0usize;
            while k < 64 && u.symbol(k) == v.symbol(k) {
                k += 1;
            }
            let diff = (value_of(&u) - value_of(&v)).abs();
            let bound = Rational::new(2.into(), num_bigint::BigInt::from(1) << k);
            prop_assert!(diff <= bound);
        }

        #[test]
        fn shift_conjugacy_random_odd(q in (1u32..4096).prop_map(|q| 2 * q + 1), p in 0u32..4096) {
            let p = p % (q + 1);
            let x = ratio(p as i64, q as i64);
            let e = expansion_of(&x).unwrap();
            prop_assert!(e.preperiod().is_empty() || x == ratio(1, 1));
            prop_assert_eq!(expansion_of(&doubling(&x).unwrap()).unwrap(), e.shifted());
        }
    }
}
