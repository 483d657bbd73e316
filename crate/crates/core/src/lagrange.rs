//! Constructive Lagrange/Galois theory for the Romik map: periodic-point
//! construction from a digit word, eventual-periodicity detection by exact
//! cycle detection, the Galois conjugate check, the w-sequence invariants,
//! and field-level explorations (unit classes, circular roots, N(k, K)).

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{
    fundamental_unit, squarefree_part_big, FundamentalUnit, Int, Qfe, Rational,
};
use crate::quadspace::{
    mat_const, mat_u, mat_word, q_cross, q_form, CirclePoint, Mat3, MatName, Vec3,
};
use crate::romik::{digit, t_map, word_string, Digit};

/// Default safety cap on period detection; overridable through the CLI.
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

/// Output of [`construct_periodic`]: the purely periodic point of a digit
/// word together with its eigendata over Q(sqrt D).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicPointData {
    pub word: Vec<Digit>,
    pub point: CirclePoint,
    pub lambda1: Qfe,
    pub lambda3: i8,
    pub d: u64,
}

fn is_constant_word(word: &[Digit], d: Digit) -> bool {
    word.iter().all(|&x| x == d)
}

fn qfe_to_int(q: &Qfe) -> Result<Int> {
    match q.as_rational() {
        Some(r) if r.is_integer() => Ok(r.to_integer()),
        _ => Err(Error::InvariantViolated(format!(
            "expected a rational integer, got {q}"
        ))),
    }
}

/// Solves (M - lambda I) v = 0 for v = (x, y, 1) by 2x2 elimination over
/// Q(sqrt D), trying row pairs until one is nonsingular.
fn eigenvector_x3_one(m: &Mat3, lambda: &Qfe) -> Result<(Qfe, Qfe)> {
    // Row i of M - lambda I applied to (x, y, 1).
    let row = |i: usize| -> [Qfe; 3] {
        let mut r = [m.0[i][0].clone(), m.0[i][1].clone(), m.0[i][2].clone()];
        r[i] = &r[i] - lambda;
        r
    };
    let rows = [row(0), row(1), row(2)];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let (ri, rj) = (&rows[i], &rows[j]);
        let det = &(&ri[0] * &rj[1]) - &(&ri[1] * &rj[0]);
        if det.is_zero() {
            continue;
        }
        let x = (&(&ri[1] * &rj[2]) - &(&rj[1] * &ri[2])).checked_div(&det)?;
        let y = (&(&rj[0] * &ri[2]) - &(&ri[0] * &rj[2])).checked_div(&det)?;
        // All three rows must vanish on the solution.
        let ok = rows.iter().all(|r| {
            (&(&(&r[0] * &x) + &(&r[1] * &y)) + &r[2]).is_zero()
        });
        if ok {
            return Ok((x, y));
        }
    }
    Err(Error::EigenSolveFailed(String::new()))
}

/// Builds the purely periodic point of a nonempty word other than 1^k, 3^k.
///
/// The characteristic polynomial of M = M_{d1}...M_{dk} factors as
/// (lambda - det M)(lambda^2 - (t - e) lambda + 1) with t the trace and
/// e = det M; the larger quadratic root is lambda1 and its eigenvector,
/// normalized to third coordinate 1, is the fixed point of the cylinder.
pub fn construct_periodic(word: &[Digit]) -> Result<PeriodicPointData> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    if is_constant_word(word, Digit::One) || is_constant_word(word, Digit::Three) {
        return Err(Error::ExcludedWord(word_string(word)));
    }
    let m = mat_word(word)?;
    let t = qfe_to_int(&m.trace())?;
    let e = qfe_to_int(&m.det())?;
    debug_assert!(e.abs() == BigInt::one());
    let p = &t - &e;
    let disc = &p * &p - BigInt::from(4);
    if !disc.is_positive() {
        return Err(Error::InvariantViolated(format!(
            "nonpositive discriminant {disc} for word {}",
            word_string(word)
        )));
    }
    let (d, f) = squarefree_part_big(&disc)?;
    if d == 1 {
        return Err(Error::DegenerateWord(word_string(word), disc.to_string()));
    }
    let lambda1 = Qfe::new(
        Rational::new(p, BigInt::from(2)),
        Rational::new(BigInt::from(f), BigInt::from(2)),
        d,
    )?;
    let (x, y) =
        eigenvector_x3_one(&m, &lambda1).map_err(|_| Error::EigenSolveFailed(word_string(word)))?;
    let point = CirclePoint::new(x, y)?;

    // Invariants from the eigenvector theorem.
    if !point.in_quarter() {
        return Err(Error::InvariantViolated(format!(
            "periodic point {point} left the quarter circle"
        )));
    }
    let v1 = point.lift();
    let scaled = Vec3::new(
        &lambda1 * v1.x1(),
        &lambda1 * v1.x2(),
        &lambda1 * v1.x3(),
    );
    if m.mul_vec(&v1) != scaled {
        return Err(Error::EigenSolveFailed(word_string(word)));
    }
    if lambda1.checked_mul(&lambda1.conj())? != Qfe::one()
        || !lambda1.checked_sub(&Qfe::one())?.is_positive()
    {
        return Err(Error::InvariantViolated(
            "lambda1 must be a unit > 1".into(),
        ));
    }
    let lambda3 = if e.is_positive() { 1 } else { -1 };
    Ok(PeriodicPointData {
        word: word.to_vec(),
        point,
        lambda1,
        lambda3,
        d,
    })
}

/// An eventually periodic expansion: minimal preperiod and primitive period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionResult {
    pub preperiod: Vec<Digit>,
    pub period: Vec<Digit>,
}

impl fmt::Display for ExpansionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} ({})^inf]",
            word_string(&self.preperiod),
            word_string(&self.period)
        )
    }
}

/// The primitive root of a word: the shortest u with word = u^m.
pub fn primitive_root(word: &[Digit]) -> Vec<Digit> {
    let n = word.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && word.iter().enumerate().all(|(i, &d)| d == word[i % p]) {
            return word[..p].to_vec();
        }
    }
    word.to_vec()
}

/// Detects the eventually periodic expansion of an irrational quadratic
/// point by iterating T exactly and hashing canonical coordinate tuples.
///
/// The first revisited point is the cycle entry, so the preperiod is minimal
/// and the period primitive by uniqueness of expansions.
pub fn detect_period(p: &CirclePoint, max_iter: usize) -> Result<ExpansionResult> {
    if p.is_rational() {
        return Err(Error::ExpectedIrrational);
    }
    if !p.in_quarter() {
        return Err(Error::OutsideQuarter(p.x().to_string(), p.y().to_string()));
    }
    let mut seen: HashMap<CirclePoint, usize> = HashMap::new();
    let mut digits: Vec<Digit> = Vec::new();
    let mut cur = p.clone();
    for i in 0..=max_iter {
        if let Some(&j) = seen.get(&cur) {
            let period = primitive_root(&digits[j..i]);
            let preperiod = digits[..j].to_vec();
            return Ok(ExpansionResult { preperiod, period });
        }
        seen.insert(cur.clone(), i);
        digits.push(digit(&cur)?);
        cur = t_map(&cur)?;
    }
    Err(Error::MaxIterExceeded(max_iter))
}

/// Clears denominators of (x, y, 1) into (O_K)^3 and removes any common
/// rational integer factor.
pub fn integralize(p: &CirclePoint) -> Vec3 {
    let dens = [
        p.x().rational_part().denom().clone(),
        p.x().surd_part().denom().clone(),
        p.y().rational_part().denom().clone(),
        p.y().surd_part().denom().clone(),
    ];
    let l = dens.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
    let v = Vec3::new(p.x().scale(&l), p.y().scale(&l), Qfe::from_rational(Rational::from_integer(l)));
    // Common content over the integer coefficients of all coordinates.
    let mut g = BigInt::zero();
    for c in &v.0 {
        g = g.gcd(c.rational_part().numer()).gcd(c.surd_part().numer());
    }
    if g <= BigInt::one() {
        return v;
    }
    let ginv = Rational::new(BigInt::one(), g);
    Vec3::new(
        Qfe::new(
            v.0[0].rational_part() * &ginv,
            v.0[0].surd_part() * &ginv,
            v.0[0].field_d().max(v.0[1].field_d()).max(v.0[2].field_d()),
        )
        .expect("rescaling preserves the field"),
        Qfe::new(
            v.0[1].rational_part() * &ginv,
            v.0[1].surd_part() * &ginv,
            v.0[1].field_d().max(v.0[0].field_d()).max(v.0[2].field_d()),
        )
        .expect("rescaling preserves the field"),
        Qfe::new(
            v.0[2].rational_part() * &ginv,
            v.0[2].surd_part() * &ginv,
            v.0[2].field_d().max(v.0[0].field_d()).max(v.0[1].field_d()),
        )
        .expect("rescaling preserves the field"),
    )
}

/// The sequence w_n = v_n x_Q v_n^sigma with its invariant data.
#[derive(Clone, Debug, Serialize)]
pub struct WSequence {
    pub d: u64,
    pub w0: Vec3,
    /// w_0 .. w_n inclusive.
    pub terms: Vec<Vec3>,
    /// W = Q(w_0), a positive rational, conserved along the sequence.
    #[serde(serialize_with = "crate::field::ser_rational")]
    pub w_norm: Rational,
    /// (-1)^{epsilon_n} per term, epsilon_n the digit-2 count so far.
    pub signs: Vec<i8>,
    /// Digits d_1 .. d_n driving the recurrence.
    pub digits: Vec<Digit>,
    /// Empirical boundedness witness: max |x_3(w_n)| over the stored terms.
    pub max_abs_x3: Qfe,
}

/// True when q lies in sqrt(D) Z / 2: zero rational part and a surd
/// coefficient with denominator dividing 2.
fn in_sqrtd_half_lattice(q: &Qfe) -> bool {
    q.rational_part().is_zero()
        && (q.surd_part() * Rational::from_integer(BigInt::from(2))).is_integer()
}

/// Hyperboloid closeness: if w3 > 0 then w1, w2 > -sqrt W; if w3 < 0 then
/// w1, w2 < sqrt W. Decided exactly by comparing squares against W.
fn closeness_holds(w: &Vec3, w_norm: &Rational) -> bool {
    let s3 = w.x3().sign();
    let check = |c: &Qfe| -> bool {
        let c2 = c
            .checked_mul(c)
            .expect("same field")
            .as_rational()
            .cloned()
            .unwrap_or_else(|| unreachable!("square of sqrt(D)-multiple is rational"));
        match s3 {
            1 => !c.is_negative() || c2 < *w_norm,
            -1 => !c.is_positive() || c2 < *w_norm,
            _ => true,
        }
    };
    check(w.x1()) && check(w.x2())
}

/// Computes w_0 .. w_n for an irrational quadratic point, asserting the
/// lattice, norm, recurrence and closeness invariants at every step.
pub fn w_sequence(p: &CirclePoint, n: usize) -> Result<WSequence> {
    if p.is_rational() {
        return Err(Error::ExpectedIrrational);
    }
    let d = p.x().field_d().max(p.y().field_d());
    let v0 = integralize(p);
    let w0 = q_cross(&v0, &v0.conj());
    if w0.is_zero() {
        return Err(Error::ExpectedIrrational);
    }
    let w_norm = q_form(&w0)
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::InvariantViolated("Q(w0) must be rational".into()))?;
    if !w_norm.is_positive() {
        return Err(Error::InvariantViolated("Q(w0) must be positive".into()));
    }

    let h = mat_const(MatName::H);
    let mut terms = vec![w0.clone()];
    let mut signs = vec![1i8];
    let mut digits = Vec::new();
    let mut max_abs_x3 = w0.x3().abs();

    let mut cur_point = p.clone();
    let mut v = v0;
    let mut w = w0.clone();
    let mut sign = 1i8;
    for _ in 0..n {
        let dgt = digit(&cur_point)?;
        let step = mat_u(dgt).mul(&h);
        v = step.mul_vec(&v);
        let mut next_w = step.mul_vec(&w);
        if dgt == Digit::Two {
            sign = -sign;
            next_w = next_w.neg();
        }
        w = next_w;
        cur_point = t_map(&cur_point)?;

        // Definition and recurrence must agree term by term.
        if w != q_cross(&v, &v.conj()) {
            return Err(Error::InvariantViolated(
                "w recurrence disagrees with v x_Q v^sigma".into(),
            ));
        }
        if q_form(&w).as_rational() != Some(&w_norm) {
            return Err(Error::InvariantViolated("Q(w_n) drifted from W".into()));
        }
        if !w.0.iter().all(in_sqrtd_half_lattice) {
            return Err(Error::InvariantViolated(
                "w_n left the lattice (sqrt D Z/2)^3".into(),
            ));
        }
        if !closeness_holds(&w, &w_norm) {
            return Err(Error::InvariantViolated(
                "hyperboloid closeness inequality failed".into(),
            ));
        }
        let a3 = w.x3().abs();
        if a3.checked_cmp(&max_abs_x3)? == std::cmp::Ordering::Greater {
            max_abs_x3 = a3;
        }
        digits.push(dgt);
        signs.push(sign);
        terms.push(w.clone());
    }
    Ok(WSequence {
        d,
        w0,
        terms,
        w_norm,
        signs,
        digits,
        max_abs_x3,
    })
}

/// Outcome of the Galois-conjugate verification for a periodic word.
#[derive(Clone, Debug, Serialize)]
pub struct GaloisReport {
    pub word: Vec<Digit>,
    pub conjugate: CirclePoint,
    /// Sign pattern of (alpha^sigma, beta^sigma) dictated by the last digit.
    pub signs_ok: bool,
    /// The reversed-rotated word (d_{k-1}, ..., d_1, d_k).
    pub expected_period: Vec<Digit>,
    pub detected: ExpansionResult,
    pub period_ok: bool,
}

impl GaloisReport {
    pub fn pass(&self) -> bool {
        self.signs_ok && self.period_ok
    }
}

/// Checks the Galois corollary: sign table for the conjugate coordinates
/// and pure periodicity of (|alpha^sigma|, |beta^sigma|) with the
/// reversed-rotated word.
pub fn galois_check(word: &[Digit]) -> Result<GaloisReport> {
    let data = construct_periodic(word)?;
    let alpha_c = data.point.x().conj();
    let beta_c = data.point.y().conj();
    let conjugate = CirclePoint::new(alpha_c.clone(), beta_c.clone())?;

    let last = *word.last().expect("word is nonempty");
    let signs_ok = match last {
        Digit::One => alpha_c.is_positive() && beta_c.is_negative(),
        Digit::Two => alpha_c.is_negative() && beta_c.is_negative(),
        Digit::Three => alpha_c.is_negative() && beta_c.is_positive(),
    };

    let k = word.len();
    let mut expected: Vec<Digit> = word[..k - 1].iter().rev().copied().collect();
    expected.push(last);

    let abs_point = CirclePoint::new(alpha_c.abs(), beta_c.abs())?;
    let detected = detect_period(&abs_point, 4 * k + 16)?;
    let period_ok =
        detected.preperiod.is_empty() && detected.period == primitive_root(&expected);
    Ok(GaloisReport {
        word: word.to_vec(),
        conjugate,
        signs_ok,
        expected_period: expected,
        detected,
        period_ok,
    })
}

/// Sweeps all 3^k words (except 1^k, 3^k) and counts those whose periodic
/// point is defined over Q(sqrt D), classifying by the squarefree part of
/// the quadratic-factor discriminant (t - e)^2 - 4.
pub fn count_nkk(k: usize, d: u64) -> Result<(usize, Vec<Vec<Digit>>)> {
    if d <= 1 || !crate::field::is_squarefree(d) {
        return Err(Error::BadDiscriminant(d));
    }
    if k == 0 {
        return Err(Error::EmptyWord);
    }
    let mut witnesses = Vec::new();
    let total = 3usize.pow(k as u32);
    for idx in 0..total {
        let mut word = Vec::with_capacity(k);
        let mut rem = idx;
        for _ in 0..k {
            word.push(Digit::from_u8((rem % 3) as u8 + 1)?);
            rem /= 3;
        }
        word.reverse();
        if is_constant_word(&word, Digit::One) || is_constant_word(&word, Digit::Three) {
            continue;
        }
        let m = mat_word(&word)?;
        let t = qfe_to_int(&m.trace())?;
        let e = qfe_to_int(&m.det())?;
        let p = &t - &e;
        let disc = &p * &p - BigInt::from(4);
        if !disc.is_positive() {
            continue;
        }
        let (d0, _) = squarefree_part_big(&disc)?;
        if d0 == d {
            witnesses.push(word);
        }
    }
    Ok((witnesses.len(), witnesses))
}

/// A unit class [x, y, z]: an O_K-integer triple modulo powers of the
/// fundamental unit, stored via the canonical representative whose third
/// coordinate lies in the window [1, eps_K).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleClass {
    pub representative: Vec3,
    pub d: u64,
}

fn scale_vec(v: &Vec3, k: &Qfe) -> Vec3 {
    Vec3::new(k * v.x1(), k * v.x2(), k * v.x3())
}

impl TripleClass {
    /// Normalizes by scanning unit powers until the third coordinate
    /// enters [1, eps_K). The window itself is just a convention; only
    /// the equivalence up to unit powers is meaningful.
    pub fn new(v: Vec3, unit: &FundamentalUnit) -> Result<Self> {
        if !v.x3().is_positive() {
            return Err(Error::InvariantViolated(
                "class representative needs a positive third coordinate".into(),
            ));
        }
        let eps = &unit.value;
        let eps_inv = Qfe::one().checked_div(eps)?;
        let mut v = v;
        while v.x3().checked_cmp(eps)? != std::cmp::Ordering::Less {
            v = scale_vec(&v, &eps_inv);
        }
        while v.x3().checked_cmp(&Qfe::one())? == std::cmp::Ordering::Less {
            v = scale_vec(&v, eps);
        }
        Ok(TripleClass {
            representative: v,
            d: unit.d,
        })
    }
}

/// One node of a circular root: the rotation of the word starting at this
/// index, its purely periodic point, and its (optionally unit-normalized)
/// integral representative. The outgoing edge M_{edge} maps this node to
/// node (index - 1) mod k.
#[derive(Clone, Debug, Serialize)]
pub struct CircularRootNode {
    pub index: usize,
    pub rotation: Vec<Digit>,
    pub point: CirclePoint,
    pub representative: Vec3,
    pub edge: Digit,
    pub edge_to: usize,
}

/// The cycle of unit classes for the rotations of a periodic word, with
/// edge labels as in the circular-root picture.
pub fn circular_root(word: &[Digit], unit_normalize: bool) -> Result<Vec<CircularRootNode>> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let k = word.len();
    let data0 = construct_periodic(word)?;
    let unit = if unit_normalize {
        Some(fundamental_unit(data0.d)?)
    } else {
        None
    };
    let mut nodes = Vec::with_capacity(k);
    for i in 0..k {
        let rotation: Vec<Digit> = word[i..].iter().chain(&word[..i]).copied().collect();
        let data = construct_periodic(&rotation)?;
        let mut rep = integralize(&data.point);
        if let Some(u) = &unit {
            rep = TripleClass::new(rep, u)?.representative;
        }
        // M_{word[i-1]} maps the node of rotation i to the node of
        // rotation i-1 (prepending a digit rotates backwards).
        let prev = (i + k - 1) % k;
        nodes.push(CircularRootNode {
            index: i,
            rotation,
            point: data.point,
            representative: rep,
            edge: word[prev],
            edge_to: prev,
        });
    }
    Ok(nodes)
}

/// Eigenvector triple (v1, v2, v3) of a constructed periodic point:
/// v2 is the conjugate lift, v3 the Q-cross product.
pub fn eigen_triple(data: &PeriodicPointData) -> (Vec3, Vec3, Vec3) {
    let v1 = data.point.lift();
    let v2 = v1.conj();
    let v3 = q_cross(&v1, &v2);
    (v1, v2, v3)
}
