//! Combinatorics on binary words: balance, extremal rotations, standard
//! words built from continued fractions, the extremal pair `s(r)`/`t(r)`
//! for a rational slope, and exact Farey / Stern-Brocot navigation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("word letters must be 0 or 1, got `{0}`")]
    BadLetter(char),
    #[error("the empty word has no 1-ratio")]
    EmptyWord,
    #[error("{p}/{q} is not a fraction in [0, 1]")]
    BadRotationNumber { p: u64, q: u64 },
    #[error("rotation number {0} must lie strictly between 0 and 1")]
    NotInterior(RotationNumber),
    #[error("standard words are only defined for slopes at most 1/2, got {0}")]
    SlopeAboveHalf(RotationNumber),
    #[error("{0} and {1} are not Farey neighbours")]
    NotFareyNeighbours(RotationNumber, RotationNumber),
    #[error("expected an ordered pair r1 < r2")]
    UnorderedPair,
    #[error("partial quotients {0:?} do not determine {1} symbols")]
    InsufficientQuotients(Vec<u64>, usize),
    #[error(
        "invalid partial quotients {0:?} (need a leading quotient >= 2 and all quotients >= 1)"
    )]
    BadQuotients(Vec<u64>),
}

/// A finite word over the alphabet {0, 1}. The empty word is allowed.
///
/// The derived `Ord` is lexicographic with `0 < 1`, which is the order the
/// whole library uses on equal-length words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from raw bits. Panics on letters outside {0, 1};
    /// use `FromStr` for untrusted input.
    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "word letters must be 0 or 1");
        Word(bits.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.0[i]
    }

    /// Number of 1s.
    pub fn ones(&self) -> usize {
        self.0.iter().map(|&b| b as usize).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        Word(bits)
    }

    pub fn repeated(&self, times: usize) -> Word {
        let mut bits = Vec::with_capacity(self.len() * times);
        for _ in 0..times {
            bits.extend_from_slice(&self.0);
        }
        Word(bits)
    }

    /// Cyclic left rotation by `k` positions.
    pub fn rotated_left(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut bits = Vec::with_capacity(self.len());
        bits.extend_from_slice(&self.0[k..]);
        bits.extend_from_slice(&self.0[..k]);
        Word(bits)
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len().max(1)).map(move |k| self.rotated_left(k))
    }

    pub fn complement(&self) -> Word {
        Word(self.0.iter().map(|&b| 1 - b).collect())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// True when no proper divisor of the length is a period, i.e. the word
    /// is not a power of a shorter word.
    pub fn is_primitive(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        for d in 1..n {
            if n.is_multiple_of(d) && (0..n).all(|i| self.0[i] == self.0[i % d]) {
                return false;
            }
        }
        true
    }

    /// Lexicographically least cyclic rotation.
    pub fn least_rotation(&self) -> Word {
        self.rotations().min().unwrap_or_else(Word::empty)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                other => return Err(WordError::BadLetter(other)),
            }
        }
        Ok(Word(bits))
    }
}

/// A reduced fraction p/q in [0, 1]. Interior values (0 < p < q) are the
/// rotation numbers proper; the endpoints 0/1 and 1/1 only ever appear as
/// Farey parents.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RotationNumber {
    p: u64,
    q: u64,
}

impl RotationNumber {
    pub const ZERO: RotationNumber = RotationNumber { p: 0, q: 1 };
    pub const ONE: RotationNumber = RotationNumber { p: 1, q: 1 };

    pub fn new(p: u64, q: u64) -> Result<Self, WordError> {
        if q == 0 || p > q {
            return Err(WordError::BadRotationNumber { p, q });
        }
        let g = gcd(p, q);
        Ok(RotationNumber { p: p / g, q: q / g })
    }

    pub fn numerator(&self) -> u64 {
        self.p
    }

    pub fn denominator(&self) -> u64 {
        self.q
    }

    pub fn is_interior(&self) -> bool {
        0 < self.p && self.p < self.q
    }

    /// 1 - r.
    pub fn complemented(&self) -> RotationNumber {
        RotationNumber {
            p: self.q - self.p,
            q: self.q,
        }
    }

    fn at_most_half(&self) -> bool {
        2 * self.p <= self.q
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a.max(1)
}

impl PartialOrd for RotationNumber {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RotationNumber {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.p as u128 * other.q as u128).cmp(&(other.p as u128 * self.q as u128))
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl fmt::Debug for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RotationNumber({}/{})", self.p, self.q)
    }
}

impl FromStr for RotationNumber {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let bad = || WordError::BadRotationNumber { p: 0, q: 0 };
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse::<u64>().map_err(|_| bad())?;
                let q = q.trim().parse::<u64>().map_err(|_| bad())?;
                RotationNumber::new(p, q)
            }
            None => {
                let p = s.trim().parse::<u64>().map_err(|_| bad())?;
                RotationNumber::new(p, 1)
            }
        }
    }
}

/// The extremal cyclically balanced words of slope `r`: `s` is the largest
/// such word of length q starting with 0, `t` the smallest starting with 1.
/// They are rotations of each other and share all letters from position 3 on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmianPair {
    r: RotationNumber,
    s: Word,
    t: Word,
}

impl SturmianPair {
    pub fn rotation_number(&self) -> RotationNumber {
        self.r
    }

    pub fn s(&self) -> &Word {
        &self.s
    }

    pub fn t(&self) -> &Word {
        &self.t
    }

    /// Common length q of both words; at least 2.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.s.len()
    }
}

/// 1-ratio |w|_1 / |w| of a nonempty word, in lowest terms.
pub fn ratio_of(w: &Word) -> Result<RotationNumber, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    RotationNumber::new(w.ones() as u64, w.len() as u64)
}

/// Balanced: any two factors of equal length have 1-counts differing by at
/// most one. The empty word is vacuously balanced.
pub fn is_balanced(w: &Word) -> bool {
    let n = w.len();
    for len in 1..n {
        let mut count: usize = w.bits()[..len].iter().map(|&b| b as usize).sum();
        let (mut lo, mut hi) = (count, count);
        for i in len..n {
            count += w.bit(i) as usize;
            count -= w.bit(i - len) as usize;
            lo = lo.min(count);
            hi = hi.max(count);
        }
        if hi - lo > 1 {
            return false;
        }
    }
    true
}

/// Cyclically balanced: every rotation is balanced.
pub fn is_cyclically_balanced(w: &Word) -> bool {
    if w.is_empty() {
        return true;
    }
    w.rotations().all(|rot| is_balanced(&rot))
}

/// 0-max: starts with 0 and is lexicographically at least every rotation
/// that starts with 0.
pub fn is_zero_max(w: &Word) -> bool {
    if w.is_empty() || w.bit(0) != 0 {
        return false;
    }
    w.rotations()
        .filter(|rot| rot.bit(0) == 0)
        .all(|rot| rot <= *w)
}

/// 1-min: starts with 1 and is lexicographically at most every rotation
/// that starts with 1.
pub fn is_one_min(w: &Word) -> bool {
    if w.is_empty() || w.bit(0) != 1 {
        return false;
    }
    w.rotations()
        .filter(|rot| rot.bit(0) == 1)
        .all(|rot| rot >= *w)
}

/// Continued fraction of an interior r as `[c1, c2, ..., cn]` with
/// `r = 1/(c1 + 1/(c2 + ...))` and `cn >= 2` (the canonical form without a
/// trailing quotient 1, which plain Euclid already produces for reduced
/// fractions).
pub fn continued_fraction(r: RotationNumber) -> Result<Vec<u64>, WordError> {
    if !r.is_interior() {
        return Err(WordError::NotInterior(r));
    }
    let (mut num, mut den) = (r.denominator(), r.numerator());
    let mut quotients = Vec::new();
    while den != 0 {
        quotients.push(num / den);
        let rem = num % den;
        num = den;
        den = rem;
    }
    debug_assert!(*quotients.last().unwrap() >= 2 || quotients.len() == 1);
    Ok(quotients)
}

/// The standard word of slope r = p/q <= 1/2: length q, p ones, built by
/// the recursion u_{k+1} = u_k^{d_{k+1}} u_{k-1} from u_{-1} = 1, u_0 = 0,
/// where [d_1 + 1, d_2, ..., d_n] is the continued fraction of r.
pub fn standard_word(r: RotationNumber) -> Result<Word, WordError> {
    if !r.is_interior() {
        return Err(WordError::NotInterior(r));
    }
    if !r.at_most_half() {
        return Err(WordError::SlopeAboveHalf(r));
    }
    let cf = continued_fraction(r)?;
    let mut prev = Word::from_bits(&[1]);
    let mut cur = Word::from_bits(&[0]);
    for (k, &c) in cf.iter().enumerate() {
        let d = if k == 0 { c - 1 } else { c } as usize;
        let next = cur.repeated(d).concat(&prev);
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(cur.len(), r.denominator() as usize);
    debug_assert_eq!(cur.ones(), r.numerator() as usize);
    Ok(cur)
}

/// The pair (s(r), t(r)) for interior r. For r <= 1/2 both words are read
/// off the standard word; for r > 1/2 the pair of 1 - r is complemented.
pub fn sturmian_pair(r: RotationNumber) -> Result<SturmianPair, WordError> {
    if !r.is_interior() {
        return Err(WordError::NotInterior(r));
    }
    if r.at_most_half() {
        let q = r.denominator() as usize;
        let w = standard_word(r)?;
        let tail = w.prefix(q - 2);
        let s = Word::from_bits(&[0, 1]).concat(&tail);
        let t = Word::from_bits(&[1, 0]).concat(&tail);
        Ok(SturmianPair { r, s, t })
    } else {
        let mirror = sturmian_pair(r.complemented())?;
        Ok(SturmianPair {
            r,
            s: mirror.t.complement(),
            t: mirror.s.complement(),
        })
    }
}

/// Mediant (p1 + p2)/(q1 + q2) of an ordered pair r1 < r2. Already in
/// lowest terms whenever the arguments are Farey neighbours.
pub fn mediant(r1: RotationNumber, r2: RotationNumber) -> Result<RotationNumber, WordError> {
    if r1 >= r2 {
        return Err(WordError::UnorderedPair);
    }
    RotationNumber::new(
        r1.numerator() + r2.numerator(),
        r1.denominator() + r2.denominator(),
    )
}

/// Farey neighbours: p2 q1 - p1 q2 = 1.
pub fn are_farey_neighbours(r1: RotationNumber, r2: RotationNumber) -> bool {
    let det = r2.numerator() as i128 * r1.denominator() as i128
        - r1.numerator() as i128 * r2.denominator() as i128;
    det == 1
}

/// The unique Farey neighbours (r1, r2) with mediant r, found by
/// Stern-Brocot descent. The endpoints 0/1 and 1/1 may appear.
pub fn farey_parents(r: RotationNumber) -> Result<(RotationNumber, RotationNumber), WordError> {
    if !r.is_interior() {
        return Err(WordError::NotInterior(r));
    }
    let mut lo = RotationNumber::ZERO;
    let mut hi = RotationNumber::ONE;
    loop {
        let med = mediant(lo, hi)?;
        if med == r {
            return Ok((lo, hi));
        } else if r < med {
            hi = med;
        } else {
            lo = med;
        }
    }
}

// s(r) extended to the left Farey endpoint, t(r) to the right one. The
// extensions are exactly the ones block_factorization needs; the remaining
// two endpoint words stay undefined.
fn extended_s(r: RotationNumber) -> Option<Word> {
    if r == RotationNumber::ZERO {
        Some(Word::from_bits(&[0]))
    } else if r.is_interior() {
        sturmian_pair(r).ok().map(|p| p.s)
    } else {
        None
    }
}

fn extended_t(r: RotationNumber) -> Option<Word> {
    if r == RotationNumber::ONE {
        Some(Word::from_bits(&[1]))
    } else if r.is_interior() {
        sturmian_pair(r).ok().map(|p| p.t)
    } else {
        None
    }
}

/// Checks the concatenation identities for a Farey-neighbour pair and its
/// mediant r3:
///
///   s3 = s2 s1,  t3 = t1 t2,  s3 = s1 t2,  t3 = t2 s1.
///
/// Identities whose constituent words are undefined at an endpoint parent
/// (only s is extended to 0/1, only t to 1/1) are skipped.
pub fn verify_farey_identities(r1: RotationNumber, r2: RotationNumber) -> Result<bool, WordError> {
    if r1 >= r2 {
        return Err(WordError::UnorderedPair);
    }
    if !are_farey_neighbours(r1, r2) {
        return Err(WordError::NotFareyNeighbours(r1, r2));
    }
    let r3 = mediant(r1, r2)?;
    let pair3 = sturmian_pair(r3)?;
    let (s3, t3) = (pair3.s(), pair3.t());
    let s1 = extended_s(r1);
    let t1 = extended_t(r1);
    let s2 = extended_s(r2);
    let t2 = extended_t(r2);

    let mut ok = true;
    if let (Some(s2), Some(s1)) = (&s2, &s1) {
        ok &= *s3 == s2.concat(s1);
    }
    if let (Some(t1), Some(t2)) = (&t1, &t2) {
        ok &= *t3 == t1.concat(t2);
    }
    if let (Some(s1), Some(t2)) = (&s1, &t2) {
        ok &= *s3 == s1.concat(t2);
        ok &= *t3 == t2.concat(s1);
    }
    Ok(ok)
}

/// Splits s(r) = u v and t(r) = v u with u = s(r1), v = t(r2) for the Farey
/// parents (r1, r2) of r, using the endpoint extensions at the tree root.
/// Both block lengths are coprime to q.
pub fn block_factorization(r: RotationNumber) -> Result<(Word, Word), WordError> {
    let (r1, r2) = farey_parents(r)?;
    let u = extended_s(r1).expect("left Farey parent always has an s-word");
    let v = extended_t(r2).expect("right Farey parent always has a t-word");
    if cfg!(debug_assertions) {
        let pair = sturmian_pair(r)?;
        debug_assert_eq!(*pair.s(), u.concat(&v));
        debug_assert_eq!(*pair.t(), v.concat(&u));
        debug_assert_eq!(gcd(u.len() as u64, r.denominator()), 1);
        debug_assert_eq!(gcd(v.len() as u64, r.denominator()), 1);
    }
    Ok((u, v))
}

/// First `length` symbols of the characteristic word determined by the
/// partial quotients `[d1 + 1, d2, ...]`. Errors when the supplied
/// quotients run out before `length` symbols are pinned down.
pub fn characteristic_prefix(quotients: &[u64], length: usize) -> Result<Word, WordError> {
    if length == 0 {
        return Ok(Word::empty());
    }
    if quotients.is_empty() || quotients[0] < 2 || quotients.contains(&0) {
        return Err(WordError::BadQuotients(quotients.to_vec()));
    }
    // Every u_k is a prefix of u_{k+1}, so symbols never change once emitted.
    let mut prev = Word::from_bits(&[1]);
    let mut cur = Word::from_bits(&[0]);
    for (k, &c) in quotients.iter().enumerate() {
        if cur.len() >= length {
            break;
        }
        let d = if k == 0 { c - 1 } else { c } as usize;
        let next = cur.repeated(d).concat(&prev);
        prev = cur;
        cur = next;
    }
    if cur.len() < length {
        return Err(WordError::InsufficientQuotients(quotients.to_vec(), length));
    }
    Ok(cur.prefix(length))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Checks the one-sided word limits along the mediant approach r_n -> r:
/// from the left, s(r_n) starts with s(r)^n and t(r_n) with t(r) s(r)^{n-1};
/// from the right, s(r_n) starts with s(r) t(r)^{n-1} and t(r_n) with t(r)^n.
pub fn limit_word_check(r: RotationNumber, side: Side, depth: usize) -> Result<bool, WordError> {
    let pair = sturmian_pair(r)?;
    let (parent_lo, parent_hi) = farey_parents(r)?;
    let mut cur = match side {
        Side::Left => parent_lo,
        Side::Right => parent_hi,
    };
    for n in 1..=depth {
        cur = match side {
            Side::Left => mediant(cur, r)?,
            Side::Right => mediant(r, cur)?,
        };
        let approx = sturmian_pair(cur)?;
        let (s_prefix, t_prefix) = match side {
            Side::Left => (
                pair.s().repeated(n),
                pair.t().concat(&pair.s().repeated(n - 1)),
            ),
            Side::Right => (
                pair.s().concat(&pair.t().repeated(n - 1)),
                pair.t().repeated(n),
            ),
        };
        if !approx.s().starts_with(&s_prefix) || !approx.t().starts_with(&t_prefix) {
            return Ok(false);
        }
    }
    Ok(true)
}
