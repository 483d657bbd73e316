//! The Romik map T on the closed unit quarter circle, its digit function,
//! and digit expansions: terminating form for rational points, streaming
//! form for quadratic ones.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Qfe;
use crate::quadspace::CirclePoint;

/// A Romik digit in {1, 2, 3}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "u8")]
pub enum Digit {
    One = 1,
    Two = 2,
    Three = 3,
}

impl Digit {
    pub const ALL: [Digit; 3] = [Digit::One, Digit::Two, Digit::Three];

    pub fn from_u8(v: u8) -> Result<Digit> {
        match v {
            1 => Ok(Digit::One),
            2 => Ok(Digit::Two),
            3 => Ok(Digit::Three),
            other => Err(Error::BadDigit(other)),
        }
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }
}

impl From<Digit> for u8 {
    fn from(d: Digit) -> u8 {
        d.as_u8()
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl fmt::Debug for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Renders a word like "312".
pub fn word_string(word: &[Digit]) -> String {
    word.iter().map(|d| d.to_string()).collect()
}

pub fn word_from_u8s(digits: &[u8]) -> Result<Vec<Digit>> {
    digits.iter().map(|&v| Digit::from_u8(v)).collect()
}

/// All valid digits of a point: a single digit off the boundary, both
/// adjacent digits at x = 4/5 and x = 3/5.
pub fn digit_all(p: &CirclePoint) -> Result<Vec<Digit>> {
    if !p.in_quarter() {
        return Err(Error::OutsideQuarter(p.x().to_string(), p.y().to_string()));
    }
    let three_fifths = Qfe::ratio(3, 5);
    let four_fifths = Qfe::ratio(4, 5);
    Ok(match (
        p.x().checked_cmp(&four_fifths)?,
        p.x().checked_cmp(&three_fifths)?,
    ) {
        (std::cmp::Ordering::Greater, _) => vec![Digit::One],
        (std::cmp::Ordering::Equal, _) => vec![Digit::One, Digit::Two],
        (_, std::cmp::Ordering::Greater) => vec![Digit::Two],
        (_, std::cmp::Ordering::Equal) => vec![Digit::Two, Digit::Three],
        _ => vec![Digit::Three],
    })
}

/// The canonical digit: the smaller valid digit at the two boundary points.
pub fn digit(p: &CirclePoint) -> Result<Digit> {
    Ok(digit_all(p)?[0])
}

/// T(x, y) = (|2 - x - 2y|, |2 - 2x - y|) / (3 - 2x - 2y), evaluated exactly.
///
/// Equals the action of M_j^{-1} = U_j H for j = digit(P), but the closed
/// formula needs no digit first.
pub fn t_map(p: &CirclePoint) -> Result<CirclePoint> {
    if !p.in_quarter() {
        return Err(Error::OutsideQuarter(p.x().to_string(), p.y().to_string()));
    }
    let two = Qfe::from_int(2);
    let three = Qfe::from_int(3);
    let x2 = p.x().checked_mul(&two)?;
    let y2 = p.y().checked_mul(&two)?;
    let den = three.checked_sub(&x2)?.checked_sub(&y2)?;
    // On the quarter circle x + y <= sqrt 2, so 3 - 2x - 2y > 0 always.
    if !den.is_positive() {
        return Err(Error::InvariantViolated(format!(
            "T denominator 3 - 2x - 2y not positive at {p}"
        )));
    }
    let nx = two.checked_sub(p.x())?.checked_sub(&y2)?.abs();
    let ny = two.checked_sub(&x2)?.checked_sub(p.y())?.abs();
    CirclePoint::new(nx.checked_div(&den)?, ny.checked_div(&den)?)
}

/// Tail of a rational expansion: an infinite run of 1s or of 3s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Tail {
    Ones,
    Threes,
}

impl Tail {
    pub fn digit(self) -> Digit {
        match self {
            Tail::Ones => Digit::One,
            Tail::Threes => Digit::Three,
        }
    }
}

/// A terminating Romik expansion: finite prefix, then 1^inf or 3^inf.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalExpansion {
    pub prefix: Vec<Digit>,
    pub tail: Tail,
}

impl fmt::Display for RationalExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for d in &self.prefix {
            write!(f, "{d},")?;
        }
        write!(f, "{}^inf]", self.tail.digit())
    }
}

fn fixed_point_tail(p: &CirclePoint) -> Option<Tail> {
    if p.x() == &Qfe::one() {
        Some(Tail::Ones)
    } else if p.y() == &Qfe::one() {
        Some(Tail::Threes)
    } else {
        None
    }
}

/// The canonical expansion of a rational point in the quarter circle.
///
/// Terminates because the parent chain of the integer representative
/// strictly decreases the hypotenuse.
pub fn expand_rational(p: &CirclePoint) -> Result<RationalExpansion> {
    if !p.is_rational() {
        return Err(Error::ExpectedRational);
    }
    if !p.in_quarter() {
        return Err(Error::OutsideQuarter(p.x().to_string(), p.y().to_string()));
    }
    let mut prefix = Vec::new();
    let mut cur = p.clone();
    loop {
        if let Some(tail) = fixed_point_tail(&cur) {
            return Ok(RationalExpansion { prefix, tail });
        }
        prefix.push(digit(&cur)?);
        cur = t_map(&cur)?;
    }
}

/// Both valid endings of a rational point other than the fixed points.
///
/// The canonical prefix hits a boundary point exactly once, at its last
/// digit; the two expansions differ only there. The ending through
/// digit 2 comes first.
pub fn expand_rational_both(
    p: &CirclePoint,
) -> Result<(RationalExpansion, RationalExpansion)> {
    let canonical = expand_rational(p)?;
    if canonical.prefix.is_empty() {
        return Err(Error::FixedPoint);
    }
    let mut a = canonical.clone();
    let mut b = canonical;
    let last = a.prefix.len() - 1;
    match b.tail {
        // Boundary (3/5, 4/5): digits {2, 3}, canonical 2.
        Tail::Ones => b.prefix[last] = Digit::Three,
        // Boundary (4/5, 3/5): digits {1, 2}, canonical 1.
        Tail::Threes => {
            a.prefix[last] = Digit::Two;
            b.prefix[last] = Digit::One;
        }
    }
    Ok((a, b))
}

/// The first n canonical digits of the expansion of any quarter-circle point.
pub fn expand_stream(p: &CirclePoint, n: usize) -> Result<Vec<Digit>> {
    let mut stream = DigitStream::new(p.clone())?;
    stream.extend_to(n)?;
    Ok(stream.emitted().to_vec())
}

/// A lazily extensible digit stream: digit n+1 is digit(T^n(point)).
#[derive(Clone, Debug)]
pub struct DigitStream {
    front: CirclePoint,
    emitted: Vec<Digit>,
}

impl DigitStream {
    pub fn new(point: CirclePoint) -> Result<Self> {
        if !point.in_quarter() {
            return Err(Error::OutsideQuarter(
                point.x().to_string(),
                point.y().to_string(),
            ));
        }
        Ok(DigitStream {
            front: point,
            emitted: Vec::new(),
        })
    }

    pub fn emitted(&self) -> &[Digit] {
        &self.emitted
    }

    /// The current orbit point T^n(start) with n = emitted count.
    pub fn front(&self) -> &CirclePoint {
        &self.front
    }

    pub fn next_digit(&mut self) -> Result<Digit> {
        let d = digit(&self.front)?;
        self.front = t_map(&self.front)?;
        self.emitted.push(d);
        Ok(d)
    }

    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.emitted.len() < n {
            self.next_digit()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Qfe, Rational};
    use crate::quadspace::{act, mat_m, CirclePoint};
    use num_bigint::BigInt;

    fn cp(xn: i64, xd: i64, yn: i64, yd: i64) -> CirclePoint {
        CirclePoint::new(Qfe::ratio(xn, xd), Qfe::ratio(yn, yd)).unwrap()
    }

    fn half_sqrt3() -> CirclePoint {
        let y = Qfe::new(
            Rational::from_integer(BigInt::from(0)),
            Rational::new(BigInt::from(1), BigInt::from(2)),
            3,
        )
        .unwrap();
        CirclePoint::new(Qfe::ratio(1, 2), y).unwrap()
    }

    fn sqrt2_half() -> CirclePoint {
        let c = Qfe::new(
            Rational::from_integer(BigInt::from(0)),
            Rational::new(BigInt::from(1), BigInt::from(2)),
            2,
        )
        .unwrap();
        CirclePoint::new(c.clone(), c).unwrap()
    }

    #[test]
    fn digit_examples() {
        assert_eq!(digit_all(&cp(1, 1, 0, 1)).unwrap(), vec![Digit::One]);
        assert_eq!(
            digit_all(&cp(3, 5, 4, 5)).unwrap(),
            vec![Digit::Two, Digit::Three]
        );
        assert_eq!(digit(&cp(3, 5, 4, 5)).unwrap(), Digit::Two);
        assert_eq!(
            digit_all(&cp(4, 5, 3, 5)).unwrap(),
            vec![Digit::One, Digit::Two]
        );
        assert_eq!(digit(&cp(4, 5, 3, 5)).unwrap(), Digit::One);
        assert_eq!(digit_all(&half_sqrt3()).unwrap(), vec![Digit::Three]);
        assert!(digit(&cp(-3, 5, 4, 5)).is_err());
    }

    #[test]
    fn t_map_examples() {
        assert_eq!(t_map(&cp(3, 5, 4, 5)).unwrap(), cp(1, 1, 0, 1));
        assert_eq!(t_map(&cp(1, 1, 0, 1)).unwrap(), cp(1, 1, 0, 1));
        let p = half_sqrt3();
        let q = t_map(&p).unwrap();
        assert_eq!((q.x(), q.y()), (p.y(), p.x()));
        assert_eq!(t_map(&q).unwrap(), p);
    }

    #[test]
    fn t_map_matches_matrix_action_and_parent_finding() {
        // For interior P and each j: digit(M_j . P) = j and T(M_j . P) = P.
        for p in [cp(5, 13, 12, 13), half_sqrt3(), cp(8, 17, 15, 17)] {
            for d in Digit::ALL {
                let child = act(&mat_m(d), &p).unwrap();
                assert_eq!(digit(&child).unwrap(), d);
                assert_eq!(t_map(&child).unwrap(), p);
            }
        }
    }

    #[test]
    fn expand_rational_examples() {
        let e = expand_rational(&cp(1, 1, 0, 1)).unwrap();
        assert_eq!((e.prefix.as_slice(), e.tail), (&[][..], Tail::Ones));

        let e = expand_rational(&cp(3, 5, 4, 5)).unwrap();
        assert_eq!((e.prefix.as_slice(), e.tail), (&[Digit::Two][..], Tail::Ones));

        let e = expand_rational(&cp(5, 13, 12, 13)).unwrap();
        assert_eq!(
            (e.prefix.as_slice(), e.tail),
            (&[Digit::Three, Digit::Two][..], Tail::Ones)
        );

        let e = expand_rational(&cp(0, 1, 1, 1)).unwrap();
        assert_eq!((e.prefix.as_slice(), e.tail), (&[][..], Tail::Threes));
    }

    #[test]
    fn expand_rational_both_examples() {
        let (a, b) = expand_rational_both(&cp(3, 5, 4, 5)).unwrap();
        assert_eq!((a.prefix.as_slice(), a.tail), (&[Digit::Two][..], Tail::Ones));
        assert_eq!(
            (b.prefix.as_slice(), b.tail),
            (&[Digit::Three][..], Tail::Ones)
        );

        let (a, b) = expand_rational_both(&cp(4, 5, 3, 5)).unwrap();
        assert_eq!(
            (a.prefix.as_slice(), a.tail),
            (&[Digit::Two][..], Tail::Threes)
        );
        assert_eq!(
            (b.prefix.as_slice(), b.tail),
            (&[Digit::One][..], Tail::Threes)
        );

        let (a, b) = expand_rational_both(&cp(5, 13, 12, 13)).unwrap();
        assert_eq!(a.prefix, vec![Digit::Three, Digit::Two]);
        assert_eq!(b.prefix, vec![Digit::Three, Digit::Three]);
        assert_eq!((a.tail, b.tail), (Tail::Ones, Tail::Ones));

        assert_eq!(
            expand_rational_both(&cp(1, 1, 0, 1)).unwrap_err(),
            Error::FixedPoint
        );
    }

    #[test]
    fn two_endings_differ_only_at_boundary_digit() {
        let (a, b) = expand_rational_both(&cp(20, 29, 21, 29)).unwrap();
        assert_eq!(a.prefix.len(), b.prefix.len());
        let diffs = a
            .prefix
            .iter()
            .zip(&b.prefix)
            .filter(|(x, y)| x != y)
            .count();
        assert_eq!(diffs, 1);
        assert_ne!(a.prefix.last(), b.prefix.last());
    }

    #[test]
    fn expand_stream_examples() {
        let w = expand_stream(&half_sqrt3(), 6).unwrap();
        assert_eq!(
            w,
            vec![
                Digit::Three,
                Digit::One,
                Digit::Three,
                Digit::One,
                Digit::Three,
                Digit::One
            ]
        );
        let w = expand_stream(&cp(1, 1, 0, 1), 4).unwrap();
        assert_eq!(w, vec![Digit::One; 4]);
        let w = expand_stream(&sqrt2_half(), 3).unwrap();
        assert_eq!(w, vec![Digit::Two; 3]);
    }

    #[test]
    fn stream_is_incremental() {
        let mut s = DigitStream::new(cp(5, 13, 12, 13)).unwrap();
        assert_eq!(s.next_digit().unwrap(), Digit::Three);
        assert_eq!(s.front(), &cp(3, 5, 4, 5));
        s.extend_to(4).unwrap();
        assert_eq!(
            s.emitted(),
            &[Digit::Three, Digit::Two, Digit::One, Digit::One]
        );
    }
}
