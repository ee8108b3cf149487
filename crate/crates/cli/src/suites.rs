//! Named verification suites behind `verify`. Each suite re-derives its
//! expectations from frozen constants and reports one claim per check;
//! `verify all` chains every suite.

use std::collections::BTreeSet;

use doubling_hole::cycles::{
    avoids, bad_set, count_avoiding_cycles, enumerate_cycles, factorizes_over, growth_exponent,
    Cycle, Hole,
};
use doubling_hole::exact::{ratio, Rational};
use doubling_hole::regions::{
    anti_corner_witness, boundary_gap_experiment, construct_avoiding_cycle_mirrored, d2_classify,
    d3_classify, d3_table, exit_periods, kappa, phi, plateau_for, RegionClass,
};
use doubling_hole::words::{
    is_cyclically_balanced, is_one_min, is_zero_max, mediant, sturmian_pair,
    verify_farey_identities, RotationNumber, Word,
};

pub struct Claim {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn claim(name: &str, ok: bool, detail: impl Into<String>) -> Claim {
    Claim {
        name: name.to_string(),
        ok,
        detail: detail.into(),
    }
}

const SUITES: &[&str] = &[
    "table1",
    "table2",
    "exit-periods",
    "d3-constants",
    "farey",
    "sturmian",
    "survivor",
    "d2-corner",
    "d2-constants",
    "staircase",
    "growth",
    "gap",
    "symmetry",
];

pub fn run_suite(name: &str, _cap: usize) -> Result<Vec<Claim>, String> {
    match name {
        "table1" => Ok(table1()),
        "table2" => Ok(table2()),
        "exit-periods" => Ok(exit_period_suite()),
        "d3-constants" => Ok(d3_constants()),
        "farey" => Ok(farey()),
        "sturmian" => Ok(sturmian()),
        "survivor" => Ok(survivor()),
        "d2-corner" => Ok(d2_corner_suite()),
        "d2-constants" => Ok(d2_constants()),
        "staircase" => Ok(staircase()),
        "growth" => Ok(growth()),
        "gap" => Ok(gap()),
        "symmetry" => Ok(symmetry()),
        "all" => {
            let mut all = Vec::new();
            for suite in SUITES {
                all.extend(run_suite(suite, _cap)?);
            }
            Ok(all)
        }
        other => Err(format!(
            "unknown suite `{other}`; available: {}, all",
            SUITES.join(", ")
        )),
    }
}

fn rot(p: u64, q: u64) -> RotationNumber {
    RotationNumber::new(p, q).unwrap()
}

fn hole(a: Rational, b: Rational) -> Hole {
    Hole::new(a, b).unwrap()
}

fn pow2_recip(exp: usize) -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(1) << exp)
}

fn table1() -> Vec<Claim> {
    let mut claims = Vec::new();
    let counts: Vec<usize> = (3..=6)
        .map(|n| enumerate_cycles(n).unwrap().len())
        .collect();
    claims.push(claim(
        "table1/counts",
        counts == vec![2, 3, 6, 9],
        format!(
            "{}+{}+{}+{} cycles matched",
            counts[0], counts[1], counts[2], counts[3]
        ),
    ));

    let three: Vec<Vec<String>> = enumerate_cycles(3)
        .unwrap()
        .iter()
        .map(|c| c.record().points)
        .collect();
    claims.push(claim(
        "table1/three-cycles",
        three == vec![vec!["1/7", "2/7", "4/7"], vec!["3/7", "5/7", "6/7"]],
        "the two 3-cycles",
    ));

    let mut hits = true;
    for &(i, n) in &[(1usize, 3usize), (2, 6), (3, 5), (4, 4), (5, 3)] {
        let (a, b) = d3_table().corner(i).clone();
        for cycle in enumerate_cycles(n).unwrap() {
            hits &= cycle.points().iter().any(|p| a <= *p && *p <= b);
        }
    }
    claims.push(claim(
        "table1/corner-hits",
        hits,
        "every listed cycle meets its closed corner box",
    ));
    claims
}

fn table2() -> Vec<Claim> {
    let mut ok = true;
    let mut empty = true;
    let mut detail = String::new();
    for i in 0..=9 {
        let (a, b) = d3_table().anti_corner(i);
        let h = hole(a, b);
        for n in 3..=40 {
            match anti_corner_witness(i, n) {
                Ok(c) if c.len() == n && avoids(&c, &h) => {}
                _ => {
                    ok = false;
                    detail = format!("row {i}, length {n}");
                }
            }
        }
        empty &= bad_set(&h, 20).unwrap().is_empty();
    }
    vec![
        claim(
            "table2/witnesses",
            ok,
            if ok {
                "witnesses verified for lengths 3..=40".to_string()
            } else {
                detail
            },
        ),
        claim("table2/empty-bad-sets", empty, "no bad lengths up to 20"),
    ]
}

fn exit_period_suite() -> Vec<Claim> {
    let eps = ratio(1, 4096);
    let mut union: BTreeSet<usize> = BTreeSet::new();
    for i in 1..=9 {
        union.extend(exit_periods(i, &eps).unwrap());
    }
    let expected: BTreeSet<usize> = [3, 4, 5, 6].into_iter().collect();
    vec![claim(
        "exit-periods/union",
        union == expected,
        format!("{union:?}"),
    )]
}

fn d3_constants() -> Vec<Claim> {
    let width = ratio(2, 15);
    let sample_ok = (1..=50i64).all(|k| {
        let a = ratio(11, 30) + ratio(2 * k, 765);
        d3_classify(&a, &(&a + &width)).is_member()
    });
    let delta = pow2_recip(16);
    let outside =
        d3_classify(&(ratio(2, 5) - &delta), &(ratio(8, 15) + &delta)) == RegionClass::Exterior;
    let table = d3_table();
    let max_width = (0..=9).map(|i| table.b(i + 1) - table.a(i)).max().unwrap();
    vec![
        claim(
            "d3-constants/width-2-15",
            sample_ok,
            "50 width-2/15 holes inside",
        ),
        claim(
            "d3-constants/sharp",
            outside,
            "widened narrowest corner outside",
        ),
        claim(
            "d3-constants/max-anti-width",
            max_width == ratio(3, 7),
            format!("max anti-corner width {max_width}"),
        ),
    ]
}

fn farey() -> Vec<Claim> {
    let mut stack = vec![(RotationNumber::ZERO, RotationNumber::ONE)];
    let mut pairs = 0usize;
    let mut ok = true;
    while let Some((r1, r2)) = stack.pop() {
        if r1.denominator() + r2.denominator() > 34 {
            continue;
        }
        pairs += 1;
        ok &= verify_farey_identities(r1, r2).unwrap();
        let med = mediant(r1, r2).unwrap();
        stack.push((r1, med));
        stack.push((med, r2));
    }
    vec![claim(
        "farey/identities",
        ok,
        format!("{pairs} neighbour pairs checked"),
    )]
}

fn interior_rotations(max_denominator: u64) -> Vec<RotationNumber> {
    let mut out = Vec::new();
    for q in 2..=max_denominator {
        for p in 1..q {
            let r = rot(p, q);
            if r.denominator() == q {
                out.push(r);
            }
        }
    }
    out
}

fn sturmian() -> Vec<Claim> {
    let mut ok = true;
    let mut checked = 0usize;
    for r in interior_rotations(34) {
        checked += 1;
        let q = r.denominator() as usize;
        let pair = sturmian_pair(r).unwrap();
        let (s, t) = (pair.s(), pair.t());
        ok &= s.len() == q && s.ones() == r.numerator() as usize;
        ok &= s.rotations().any(|w| w == *t);
        ok &= is_cyclically_balanced(s) && is_one_min(t) && is_zero_max(s);
        ok &= s < t;
        if q >= 3 {
            ok &= s.bits()[2..] == t.bits()[2..];
        }
        let mirror = sturmian_pair(r.complemented()).unwrap();
        ok &= *mirror.s() == t.complement();
        let plat = plateau_for(r).unwrap();
        ok &= plat.kappa() - plat.left() == ratio(1, 4);
        let denom = (1i64 << q) - 1;
        ok &= plat.kappa() - plat.right() == ratio(denom - 1, 4 * denom);
    }

    let mut unique = true;
    for q in 2..=16usize {
        let mut buckets: Vec<Vec<Word>> = vec![Vec::new(); q + 1];
        for mask in 0u32..(1 << q) {
            let ones = mask.count_ones() as usize;
            if ones == 0 || ones == q || num_integer::gcd(ones, q) != 1 {
                continue;
            }
            let bits: Vec<u8> = (0..q).map(|i| ((mask >> (q - 1 - i)) & 1) as u8).collect();
            let word = Word::from_bits(&bits);
            if is_cyclically_balanced(&word) {
                buckets[ones].push(word);
            }
        }
        for (p, words) in buckets.iter().enumerate().take(q).skip(1) {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            unique &= words.len() == q;
            if let Some(first) = words.first() {
                let rotations: BTreeSet<Word> = first.rotations().collect();
                unique &= words.iter().all(|w| rotations.contains(w));
                let expected = sturmian_pair(rot(p as u64, q as u64)).unwrap().s().clone();
                unique &= words.iter().filter(|w| w.bit(0) == 0).max() == Some(&expected);
            }
        }
    }

    vec![
        claim(
            "sturmian/invariants",
            ok,
            format!("{checked} rotation numbers up to q = 34"),
        ),
        claim(
            "sturmian/uniqueness",
            unique,
            "extremal words unique up to rotation for q <= 16",
        ),
    ]
}

fn survivor() -> Vec<Claim> {
    let mut forward = true;
    let mut converse = true;
    for r in [rot(1, 2), rot(1, 3), rot(2, 5)] {
        let plat = plateau_for(r).unwrap();
        let pair = plat.pair().clone();
        let q = pair.len();
        let h = hole(plat.right().clone(), plat.kappa().clone());
        for n in 1..=18usize {
            for cycle in enumerate_cycles(n).unwrap() {
                let inside = cycle
                    .points()
                    .iter()
                    .all(|x| plat.left() < x && x < plat.phi());
                if avoids(&cycle, &h) && inside {
                    forward &= factorizes_over(&cycle, pair.s(), pair.t()).unwrap();
                }
            }
            if n % q == 0 {
                for mask in 0u32..(1 << (n / q)) {
                    let mut word = Word::empty();
                    for i in 0..(n / q) {
                        let block = if (mask >> i) & 1 == 0 {
                            pair.s()
                        } else {
                            pair.t()
                        };
                        word = word.concat(block);
                    }
                    if let Ok(cycle) = Cycle::from_word(&word) {
                        converse &= avoids(&cycle, &h);
                    }
                }
            }
        }
    }
    vec![
        claim("survivor/forward", forward, "interior avoiders factorize"),
        claim("survivor/converse", converse, "block cycles avoid"),
    ]
}

fn d2_corner_suite() -> Vec<Claim> {
    let expected: BTreeSet<usize> = (3..=18).filter(|n| n % 2 == 1).collect();
    let got = bad_set(&hole(ratio(5, 12), ratio(7, 12)), 18).unwrap();

    let delta = pow2_recip(10);
    let shifted = hole(ratio(5, 12) + &delta, ratio(7, 12));
    let mut brute = true;
    let mut constructed = true;
    let mut failed_lengths = Vec::new();
    for n in 7..=18usize {
        brute &= count_avoiding_cycles(&shifted, n).unwrap() > 0;
        match construct_avoiding_cycle_mirrored(rot(1, 2), &delta, n) {
            Ok(c) if c.len() == n && avoids(&c, &shifted) => {}
            _ => {
                constructed = false;
                failed_lengths.push(n);
            }
        }
    }
    vec![
        claim(
            "d2-corner/odd-bad-set",
            got == expected,
            "exactly the odd lengths are bad at the step-2 corner",
        ),
        claim(
            "d2-corner/brute-witnesses",
            brute,
            "lengths 7..=18 by enumeration",
        ),
        claim(
            "d2-corner/constructed-witnesses",
            constructed,
            if constructed {
                "lengths 7..=18 by construction".to_string()
            } else {
                format!("construction has no witness for lengths {failed_lengths:?}")
            },
        ),
    ]
}

fn d2_constants() -> Vec<Claim> {
    let width = ratio(1, 6) - ratio(1, 1024);
    let interior = (1..=50i64).all(|k| {
        let a = ratio(1, 4) + ratio(k, 204);
        matches!(d2_classify(&a, &(&a + &width)), Ok(RegionClass::Interior))
    });
    let delta = pow2_recip(16);
    let outside = matches!(
        d2_classify(&(ratio(5, 12) - &delta), &(ratio(7, 12) + &delta)),
        Ok(RegionClass::Exterior)
    );
    let steps = interior_rotations(12).into_iter().all(|r| {
        let plat = plateau_for(r).unwrap();
        plat.kappa() - plat.left() == ratio(1, 4)
    });
    vec![
        claim(
            "d2-constants/width-below-1-6",
            interior,
            "50 narrow holes interior",
        ),
        claim(
            "d2-constants/sharp",
            outside,
            "widened step-2 corner outside",
        ),
        claim(
            "d2-constants/step-height",
            steps,
            "step height 1/4 up to q = 12",
        ),
    ]
}

fn staircase() -> Vec<Claim> {
    let mut monotone = true;
    let mut dominated = true;
    let mut previous: Option<Rational> = None;
    for k in 1..=200i64 {
        let a = ratio(1, 4) + ratio(k, 804);
        let value = kappa(&a).unwrap();
        if let Some(prev) = &previous {
            monotone &= value >= *prev;
        }
        if a < ratio(5, 12) {
            dominated &= phi(&a).unwrap() > value;
        }
        previous = Some(value);
    }
    let flat = (1..=20i64).all(|k| kappa(&(ratio(1, 3) + ratio(k, 252))).unwrap() == ratio(7, 12));
    let delta = pow2_recip(20);
    let jump = [ratio(9, 28), ratio(5, 12)]
        .into_iter()
        .all(|a| kappa(&(&a + &delta)).unwrap() > kappa(&a).unwrap());
    vec![
        claim("staircase/monotone", monotone, "200 ordered samples"),
        claim(
            "staircase/plateau",
            flat,
            "20 samples on the step-2 plateau",
        ),
        claim("staircase/ceiling", dominated, "phi dominates kappa"),
        claim("staircase/jump", jump, "jumps detected at 9/28 and 5/12"),
    ]
}

fn growth() -> Vec<Claim> {
    let g2 = growth_exponent(&hole(ratio(5, 12), ratio(7, 12)), 24)
        .unwrap()
        .unwrap();
    let g3 = growth_exponent(&hole(ratio(9, 28), ratio(15, 28)), 24)
        .unwrap()
        .unwrap();
    vec![
        claim(
            "growth/step-2",
            (0.45..=0.55).contains(&g2),
            format!("exponent {g2:.4}, window [0.45, 0.55]"),
        ),
        claim(
            "growth/step-3",
            (0.28..=0.39).contains(&g3),
            format!("exponent {g3:.4}, window [0.28, 0.39]"),
        ),
    ]
}

fn gap() -> Vec<Claim> {
    let gap = boundary_gap_experiment();
    let pair_ok = gap.d3_point == (ratio(10, 31), ratio(8, 15))
        && gap.d2_point == (ratio(9, 28), ratio(15, 28));
    let exact = gap.distance_squared == ratio(1186, 169_520_400);
    let rendered = (gap.distance() - 0.002645).abs() < 1e-6;
    vec![
        claim("gap/pair", pair_ok, "closest pair of boundary points"),
        claim(
            "gap/distance",
            exact && rendered,
            format!("distance {:.6}", gap.distance()),
        ),
    ]
}

// Tiny deterministic generator so the suite needs no rand dependency.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn rational(&mut self) -> Rational {
        let q = 2 + (self.next() % 59) as i64;
        let p = (self.next() % (q as u64 + 1)) as i64;
        ratio(p, q)
    }
}

fn symmetry() -> Vec<Claim> {
    let mut rng = Lcg(0x5eed);
    let mut symmetric = true;
    let mut holes = 0;
    while holes < 50 {
        let (mut a, mut b) = (rng.rational(), rng.rational());
        if a == b {
            continue;
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        holes += 1;
        let h = hole(a, b);
        symmetric &= bad_set(&h, 14).unwrap() == bad_set(&h.complemented(), 14).unwrap();
    }

    let mut monotone = true;
    let mut pairs = 0;
    while pairs < 200 {
        let mut xs = [
            rng.rational(),
            rng.rational(),
            rng.rational(),
            rng.rational(),
        ];
        xs.sort();
        if xs[0] == xs[1] || xs[1] >= xs[2] || xs[2] == xs[3] {
            continue;
        }
        pairs += 1;
        let inner = bad_set(&hole(xs[1].clone(), xs[2].clone()), 14).unwrap();
        let outer = bad_set(&hole(xs[0].clone(), xs[3].clone()), 14).unwrap();
        monotone &= inner.is_subset(&outer);
    }
    vec![
        claim("symmetry/mirror", symmetric, "50 random holes"),
        claim("symmetry/monotone", monotone, "200 nested hole pairs"),
    ]
}
