//! Executable acceptance checks: ten numbered criteria covering the tree,
//! the map, the periodicity theory and the invariant algebra. Each returns
//! a [`CriterionResult`]; `run_all` runs them in order. Randomized checks
//! use fixed seeds so results are reproducible.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::berggren::{
    children, descend, enumerate_bfs, enumerate_oracle, is_funnel, parent, Triple,
};
use crate::error::Result;
use crate::field::{fundamental_unit, Int, Qfe, Rational};
use crate::lagrange::{
    circular_root, construct_periodic, detect_period, galois_check, primitive_root, w_sequence,
};
use crate::quadspace::{act, bilinear, mat_m, mat_word, q_cross, q_form, Vec3};
use crate::romik::{expand_rational, expand_rational_both, expand_stream, Digit, Tail};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {:2} {:<28} {} ({})",
            self.index,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

fn result(index: usize, name: &'static str, r: Result<String>) -> CriterionResult {
    match r {
        Ok(detail) => CriterionResult {
            index,
            name,
            pass: true,
            detail,
        },
        Err(e) => CriterionResult {
            index,
            name,
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn fail(msg: String) -> crate::Error {
    crate::Error::InvariantViolated(msg)
}

fn word(ds: &[u8]) -> Vec<Digit> {
    crate::romik::word_from_u8s(ds).expect("literal digits")
}

/// All words of length k over {1,2,3} except 1^k and 3^k, lexicographic.
fn admissible_words(k: usize) -> Vec<Vec<Digit>> {
    let mut out = Vec::new();
    for idx in 0..3usize.pow(k as u32) {
        let mut w = Vec::with_capacity(k);
        let mut rem = idx;
        for _ in 0..k {
            w.push(Digit::from_u8((rem % 3) as u8 + 1).unwrap());
            rem /= 3;
        }
        w.reverse();
        if w.iter().all(|&d| d == Digit::One) || w.iter().all(|&d| d == Digit::Three) {
            continue;
        }
        out.push(w);
    }
    out
}

/// Depth-2 Berggren trees, frozen: for each root, the three children and
/// then the nine grandchildren, each row in M1, M2, M3 order.
pub fn criterion_1() -> CriterionResult {
    // (root, level-1 children, level-2 grandchildren)
    type FrozenTree = (Triple, [[i64; 3]; 3], [[i64; 3]; 9]);
    let run = || -> Result<String> {
        let frozen: [FrozenTree; 2] = [
            (
                Triple::root_345(),
                [[15, 8, 17], [21, 20, 29], [5, 12, 13]],
                [
                    [35, 12, 37],
                    [65, 72, 97],
                    [33, 56, 65],
                    [77, 36, 85],
                    [119, 120, 169],
                    [39, 80, 89],
                    [45, 28, 53],
                    [55, 48, 73],
                    [7, 24, 25],
                ],
            ),
            (
                Triple::root_435(),
                [[12, 5, 13], [20, 21, 29], [8, 15, 17]],
                [
                    [24, 7, 25],
                    [48, 55, 73],
                    [28, 45, 53],
                    [80, 39, 89],
                    [120, 119, 169],
                    [36, 77, 85],
                    [56, 33, 65],
                    [72, 65, 97],
                    [12, 35, 37],
                ],
            ),
        ];
        for (root, level1, level2) in &frozen {
            let kids = children(root);
            for (k, want) in kids.iter().zip(level1) {
                if k != &Triple::from_ints(want[0], want[1], want[2])? {
                    return Err(fail(format!("level-1 mismatch under {root}")));
                }
            }
            let mut idx = 0;
            for k in &kids {
                for g in children(k) {
                    let want = level2[idx];
                    if g != Triple::from_ints(want[0], want[1], want[2])? {
                        return Err(fail(format!("level-2 mismatch at {g}")));
                    }
                    idx += 1;
                }
            }
        }
        Ok("2 x 13 nodes, byte-identical".into())
    };
    result(1, "depth-2 tree reproduction", run())
}

/// Tree enumeration agrees with the coprime-generator oracle.
pub fn criterion_2() -> CriterionResult {
    let run = || -> Result<String> {
        let mut sizes = Vec::new();
        for c_max in [100u64, 1000, 10_000] {
            let tree = enumerate_bfs(c_max);
            let oracle = enumerate_oracle(c_max);
            if tree != oracle {
                return Err(fail(format!("set mismatch at c_max = {c_max}")));
            }
            sizes.push(tree.len().to_string());
        }
        Ok(format!("set sizes {} at 100/1000/10000", sizes.join("/")))
    };
    result(2, "tree = oracle enumeration", run())
}

/// Every primitive triple with c <= 1000 is a funnel vertex, except the
/// two roots, which have indegree 0.
pub fn criterion_3() -> CriterionResult {
    let run = || -> Result<String> {
        let all = enumerate_oracle(1000);
        let mut roots = 0;
        for t in &all {
            let rep = is_funnel(t)?;
            if t.is_root() {
                roots += 1;
                if !(rep.is_root && rep.indegree == 0 && rep.outdegree_three && rep.monotone_c)
                {
                    return Err(fail(format!("root report wrong for {t}")));
                }
            } else if !rep.all_pass() {
                return Err(fail(format!("funnel check failed for {t}")));
            }
        }
        if roots != 2 {
            return Err(fail(format!("expected 2 roots, saw {roots}")));
        }
        Ok(format!("{} triples checked", all.len()))
    };
    result(3, "funnel property, c <= 1000", run())
}

/// Word -> periodic point -> detected expansion round trip, all admissible
/// words of length <= 5, plus the digit stream over 3k digits.
pub fn criterion_4() -> CriterionResult {
    let run = || -> Result<String> {
        let mut n = 0usize;
        for k in 1..=5 {
            for w in admissible_words(k) {
                let data = construct_periodic(&w)?;
                let det = detect_period(&data.point, 10 * k + 10)?;
                if !det.preperiod.is_empty() || det.period != primitive_root(&w) {
                    return Err(fail(format!(
                        "round trip failed for {}",
                        crate::romik::word_string(&w)
                    )));
                }
                let stream = expand_stream(&data.point, 3 * k)?;
                let want: Vec<Digit> = w.iter().cycle().take(3 * k).copied().collect();
                if stream != want {
                    return Err(fail(format!(
                        "stream mismatch for {}",
                        crate::romik::word_string(&w)
                    )));
                }
                n += 1;
            }
        }
        Ok(format!("{n} words round-tripped"))
    };
    result(4, "periodic-word round trip", run())
}

/// Galois conjugate sign table and reversed-rotated period, words k <= 4.
pub fn criterion_5() -> CriterionResult {
    let run = || -> Result<String> {
        let mut n = 0usize;
        for k in 1..=4 {
            for w in admissible_words(k) {
                let rep = galois_check(&w)?;
                if !rep.pass() {
                    return Err(fail(format!(
                        "galois check failed for {}",
                        crate::romik::word_string(&w)
                    )));
                }
                n += 1;
            }
        }
        Ok(format!("{n} words verified"))
    };
    result(5, "galois conjugate corollary", run())
}

/// Named periodic points and the two unit classes of the word (3,1).
pub fn criterion_6() -> CriterionResult {
    let run = || -> Result<String> {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let s2h = Qfe::new(Rational::from_integer(BigInt::from(0)), half.clone(), 2)?;
        let d2 = construct_periodic(&word(&[2]))?;
        let l2 = Qfe::new(
            Rational::from_integer(BigInt::from(3)),
            Rational::from_integer(BigInt::from(2)),
            2,
        )?;
        if d2.point.x() != &s2h || d2.point.y() != &s2h || d2.lambda1 != l2 {
            return Err(fail("word (2) data mismatch".into()));
        }

        let s3h = Qfe::new(Rational::from_integer(BigInt::from(0)), half, 3)?;
        let d31 = construct_periodic(&word(&[3, 1]))?;
        let l31 = Qfe::new(
            Rational::from_integer(BigInt::from(7)),
            Rational::from_integer(BigInt::from(4)),
            3,
        )?;
        if d31.point.x() != &Qfe::ratio(1, 2) || d31.point.y() != &s3h {
            return Err(fail("word (3,1) point mismatch".into()));
        }
        if d31.lambda1 != l31 || d31.d != 3 {
            return Err(fail("word (3,1) eigendata mismatch".into()));
        }

        let eps = fundamental_unit(3)?;
        let want_eps = Qfe::new(
            Rational::from_integer(BigInt::from(2)),
            Rational::from_integer(BigInt::one()),
            3,
        )?;
        if eps.value != want_eps {
            return Err(fail("fundamental unit of Q(sqrt 3) mismatch".into()));
        }
        let nodes = circular_root(&word(&[3, 1]), true)?;
        let s3 = Qfe::sqrt_d(3)?;
        let class0 = Vec3::new(Qfe::one(), s3.clone(), Qfe::from_int(2));
        let class1 = Vec3::new(s3, Qfe::one(), Qfe::from_int(2));
        if nodes.len() != 2
            || nodes[0].representative != class0
            || nodes[1].representative != class1
        {
            return Err(fail("circular-root classes mismatch".into()));
        }
        Ok("(2), (3,1) and both unit classes verified".into())
    };
    result(6, "named points and unit classes", run())
}

fn random_admissible_word(rng: &mut ChaCha8Rng, max_k: usize) -> Vec<Digit> {
    loop {
        let k = rng.gen_range(1..=max_k);
        let w: Vec<Digit> = (0..k)
            .map(|_| Digit::from_u8(rng.gen_range(1..=3)).unwrap())
            .collect();
        let constant = w.iter().all(|&d| d == Digit::One) || w.iter().all(|&d| d == Digit::Three);
        if !constant {
            return w;
        }
    }
}

/// w-sequence invariants on 50 random eventually periodic points. The
/// per-term invariants live inside `w_sequence`; here we also check that
/// max |x3(w_n)| stabilizes once the orbit enters its cycle.
pub fn criterion_7() -> CriterionResult {
    let run = || -> Result<String> {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let w = random_admissible_word(&mut rng, 4);
            let k = w.len();
            let mut point = construct_periodic(&w)?.point;
            let prefix_len = rng.gen_range(0..=4usize);
            for _ in 0..prefix_len {
                let d = Digit::from_u8(rng.gen_range(1..=3)).unwrap();
                point = act(&mat_m(d), &point)?;
            }
            let short = w_sequence(&point, prefix_len + k)?;
            let long = w_sequence(&point, prefix_len + 4 * k)?;
            if short.max_abs_x3 != long.max_abs_x3 {
                return Err(fail(format!(
                    "max |x3| kept growing for prefix over {}",
                    crate::romik::word_string(&w)
                )));
            }
            if long.signs.len() != long.terms.len() {
                return Err(fail("sign bookkeeping length mismatch".into()));
            }
        }
        Ok("50 sequences, all invariants hold".into())
    };
    result(7, "w-sequence invariants", run())
}

/// A random integer null vector (a, b, c) with c > 0: a scaled, sign- and
/// order-randomized Pythagorean parametrization, including leg-zero cases.
fn random_null_vector(rng: &mut ChaCha8Rng) -> (Int, Int, Int) {
    let scale = Int::from(rng.gen_range(1..=12i64));
    let (p, q): (i64, i64) = if rng.gen_ratio(1, 20) {
        (1, 1) // degenerate: one leg zero
    } else {
        (rng.gen_range(1..=40i64), rng.gen_range(1..=40i64))
    };
    let mut a = Int::from(p * p - q * q) * &scale;
    let mut b = Int::from(2 * p * q) * &scale;
    let c = Int::from(p * p + q * q) * scale;
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut a, &mut b);
    }
    if rng.gen_bool(0.5) {
        a = -a;
    }
    if rng.gen_bool(0.5) {
        b = -b;
    }
    (a, b, c)
}

/// Descent criterion: with (a', b', c') = H (a, b, c), |c'| < |c| holds
/// exactly when 1 < a/c + b/c < 2.
pub fn criterion_8() -> CriterionResult {
    let run = || -> Result<String> {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10_000 {
            let (a, b, c) = random_null_vector(&mut rng);
            let c_new = Int::from(-2) * &a + Int::from(-2) * &b + Int::from(3) * &c;
            let shrinks = c_new.abs() < c.abs();
            let s = Rational::new(&a + &b, c.clone());
            let inside = s > Rational::one() && s < Rational::from_integer(BigInt::from(2));
            if shrinks != inside {
                return Err(fail(format!("criterion failed at ({a}, {b}, {c})")));
            }
        }
        Ok("10000 samples, equivalence exact".into())
    };
    result(8, "descent criterion", run())
}

/// Rational two-ended expansions, and prefix = descent digits for every
/// primitive triple with c <= 1000.
pub fn criterion_9() -> CriterionResult {
    let run = || -> Result<String> {
        let p35 = Triple::root_345().project();
        let both = expand_rational_both(&p35)?;
        if both.0.prefix != word(&[2])
            || both.0.tail != Tail::Ones
            || both.1.prefix != word(&[3])
            || both.1.tail != Tail::Ones
        {
            return Err(fail("(3/5, 4/5) endings mismatch".into()));
        }
        let p513 = Triple::from_ints(5, 12, 13)?.project();
        let both = expand_rational_both(&p513)?;
        if both.0.prefix != word(&[3, 2])
            || both.0.tail != Tail::Ones
            || both.1.prefix != word(&[3, 3])
            || both.1.tail != Tail::Ones
        {
            return Err(fail("(5/13, 12/13) endings mismatch".into()));
        }

        let all = enumerate_oracle(1000);
        for t in &all {
            let exp = expand_rational(&t.project())?;
            let mut digits: Vec<Digit> = descend(t)?.iter().map(|(_, d)| *d).collect();
            let root = if digits.is_empty() {
                t.clone()
            } else {
                descend(t)?.last().unwrap().0.clone()
            };
            digits.push(parent(&root)?.1);
            if exp.prefix != digits {
                return Err(fail(format!("prefix/descent mismatch at {t}")));
            }
        }
        Ok(format!("{} triples, prefixes match descents", all.len()))
    };
    result(9, "rational expansions", run())
}

/// Q-cross-product algebra: equivariance under random Q-orthogonal words
/// and the null-vector norm identity, on random exact samples.
pub fn criterion_10() -> CriterionResult {
    let run = || -> Result<String> {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..10_000 {
            let (a1, b1, c1) = random_null_vector(&mut rng);
            let (a2, b2, c2) = random_null_vector(&mut rng);
            let v1 = Vec3::new(
                Qfe::from_rational(Rational::from_integer(a1)),
                Qfe::from_rational(Rational::from_integer(b1)),
                Qfe::from_rational(Rational::from_integer(c1)),
            );
            let v2 = Vec3::new(
                Qfe::from_rational(Rational::from_integer(a2)),
                Qfe::from_rational(Rational::from_integer(b2)),
                Qfe::from_rational(Rational::from_integer(c2)),
            );
            let v3 = q_cross(&v1, &v2);
            let ip = bilinear(&v1, &v2);
            if q_form(&v3) != ip.checked_mul(&ip)? {
                return Err(fail("norm identity failed".into()));
            }

            let k = rng.gen_range(1..=4usize);
            let w: Vec<Digit> = (0..k)
                .map(|_| Digit::from_u8(rng.gen_range(1..=3)).unwrap())
                .collect();
            let m = mat_word(&w)?;
            let lhs = q_cross(&m.mul_vec(&v1), &m.mul_vec(&v2));
            let mut rhs = m.mul_vec(&v3);
            if m.det() == Qfe::from_int(-1) {
                rhs = rhs.neg();
            }
            if lhs != rhs {
                return Err(fail("equivariance failed".into()));
            }
        }
        Ok("10000 samples, both identities exact".into())
    };
    result(10, "cross-product algebra", run())
}

/// Runs all ten criteria in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}
