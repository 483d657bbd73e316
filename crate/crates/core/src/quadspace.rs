//! The quadratic space (R^3, Q) with Q(x) = x1^2 + x2^2 - x3^2, realized
//! exactly over [`Qfe`]: the form and its pairing, reflections, the seven
//! integer matrix constants, the Q-cross product, and projection onto the
//! unit circle.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Qfe;
use crate::romik::Digit;

/// Column vector in R^3 over Q(sqrt D).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Vec3(pub [Qfe; 3]);

impl Vec3 {
    pub fn new(x1: Qfe, x2: Qfe, x3: Qfe) -> Self {
        Vec3([x1, x2, x3])
    }

    pub fn from_ints(x1: i64, x2: i64, x3: i64) -> Self {
        Vec3([Qfe::from_int(x1), Qfe::from_int(x2), Qfe::from_int(x3)])
    }

    pub fn x1(&self) -> &Qfe {
        &self.0[0]
    }

    pub fn x2(&self) -> &Qfe {
        &self.0[1]
    }

    pub fn x3(&self) -> &Qfe {
        &self.0[2]
    }

    pub fn conj(&self) -> Vec3 {
        Vec3([self.0[0].conj(), self.0[1].conj(), self.0[2].conj()])
    }

    pub fn neg(&self) -> Vec3 {
        Vec3([self.0[0].neg(), self.0[1].neg(), self.0[2].neg()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Qfe::is_zero)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vec3{self}")
    }
}

/// Dense 3x3 matrix over Qfe. The named constants are integral, but products
/// with eigenvector scalings live in Q(sqrt D), hence the general entry type.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Mat3(pub [[Qfe; 3]; 3]);

impl Mat3 {
    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Mat3(rows.map(|r| r.map(Qfe::from_int)))
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        let row = |i: usize| {
            let t = &(&self.0[i][0] * &v.0[0]) + &(&self.0[i][1] * &v.0[1]);
            &t + &(&self.0[i][2] * &v.0[2])
        };
        Vec3([row(0), row(1), row(2)])
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let entry = |i: usize, j: usize| {
            let t = &(&self.0[i][0] * &other.0[0][j]) + &(&self.0[i][1] * &other.0[1][j]);
            &t + &(&self.0[i][2] * &other.0[2][j])
        };
        Mat3([
            [entry(0, 0), entry(0, 1), entry(0, 2)],
            [entry(1, 0), entry(1, 1), entry(1, 2)],
            [entry(2, 0), entry(2, 1), entry(2, 2)],
        ])
    }

    pub fn transpose(&self) -> Mat3 {
        let e = |i: usize, j: usize| self.0[j][i].clone();
        Mat3([
            [e(0, 0), e(0, 1), e(0, 2)],
            [e(1, 0), e(1, 1), e(1, 2)],
            [e(2, 0), e(2, 1), e(2, 2)],
        ])
    }

    pub fn trace(&self) -> Qfe {
        &(&self.0[0][0] + &self.0[1][1]) + &self.0[2][2]
    }

    pub fn det(&self) -> Qfe {
        let m = &self.0;
        let c0 = &(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]);
        let c1 = &(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]);
        let c2 = &(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]);
        let t = &(&m[0][0] * &c0) - &(&m[0][1] * &c1);
        &t + &(&m[0][2] * &c2)
    }

    /// M^T M_Q M == M_Q, i.e. membership in O_Q.
    pub fn is_q_orthogonal(&self) -> bool {
        let mq = Mat3::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, -1]]);
        self.transpose().mul(&mq).mul(self) == mq
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in &self.0 {
            writeln!(f, "  [{}, {}, {}]", r[0], r[1], r[2])?;
        }
        write!(f, "]")
    }
}

/// Names of the integral matrix constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatName {
    M1,
    M2,
    M3,
    U1,
    U2,
    U3,
    H,
}

impl std::str::FromStr for MatName {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "M1" => Ok(MatName::M1),
            "M2" => Ok(MatName::M2),
            "M3" => Ok(MatName::M3),
            "U1" => Ok(MatName::U1),
            "U2" => Ok(MatName::U2),
            "U3" => Ok(MatName::U3),
            "H" => Ok(MatName::H),
            _ => Err(format!("unknown matrix name: {s}")),
        }
    }
}

/// The exact integer constant with the given name.
pub fn mat_const(name: MatName) -> Mat3 {
    let rows = match name {
        MatName::M1 => [[-1, 2, 2], [-2, 1, 2], [-2, 2, 3]],
        MatName::M2 => [[1, 2, 2], [2, 1, 2], [2, 2, 3]],
        MatName::M3 => [[1, -2, 2], [2, -1, 2], [2, -2, 3]],
        MatName::U1 => [[1, 0, 0], [0, -1, 0], [0, 0, 1]],
        MatName::U2 => [[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
        MatName::U3 => [[-1, 0, 0], [0, 1, 0], [0, 0, 1]],
        MatName::H => [[-1, -2, 2], [-2, -1, 2], [-2, -2, 3]],
    };
    Mat3::from_ints(rows)
}

pub fn mat_m(digit: Digit) -> Mat3 {
    mat_const(match digit {
        Digit::One => MatName::M1,
        Digit::Two => MatName::M2,
        Digit::Three => MatName::M3,
    })
}

pub fn mat_u(digit: Digit) -> Mat3 {
    mat_const(match digit {
        Digit::One => MatName::U1,
        Digit::Two => MatName::U2,
        Digit::Three => MatName::U3,
    })
}

/// The ordered product M_{d1} ... M_{dk}.
pub fn mat_word(word: &[Digit]) -> Result<Mat3> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut m = mat_m(word[0]);
    for &d in &word[1..] {
        m = m.mul(&mat_m(d));
    }
    Ok(m)
}

/// Q(v) = x1^2 + x2^2 - x3^2.
pub fn q_form(v: &Vec3) -> Qfe {
    let t = &(&v.0[0] * &v.0[0]) + &(&v.0[1] * &v.0[1]);
    &t - &(&v.0[2] * &v.0[2])
}

/// <u, v> = u1 v1 + u2 v2 - u3 v3; the symmetric pairing of Q.
pub fn bilinear(u: &Vec3, v: &Vec3) -> Qfe {
    let t = &(&u.0[0] * &v.0[0]) + &(&u.0[1] * &v.0[1]);
    &t - &(&u.0[2] * &v.0[2])
}

/// The reflection s_z(x) = x - 2 <x,z>/Q(z) z, a Q-orthogonal involution.
pub fn reflect(z: &Vec3, x: &Vec3) -> Result<Vec3> {
    let qz = q_form(z);
    if qz.is_zero() {
        return Err(Error::NullReflectionAxis);
    }
    let coeff = bilinear(x, z)
        .checked_mul(&Qfe::from_int(2))?
        .checked_div(&qz)?;
    Ok(Vec3([
        &x.0[0] - &(&coeff * &z.0[0]),
        &x.0[1] - &(&coeff * &z.0[1]),
        &x.0[2] - &(&coeff * &z.0[2]),
    ]))
}

/// The matrix of the reflection in z, via its action on the standard basis.
pub fn reflect_matrix(z: &Vec3) -> Result<Mat3> {
    let e = [
        Vec3::from_ints(1, 0, 0),
        Vec3::from_ints(0, 1, 0),
        Vec3::from_ints(0, 0, 1),
    ];
    let cols: Vec<Vec3> = e.iter().map(|b| reflect(z, b)).collect::<Result<_>>()?;
    let entry = |i: usize, j: usize| cols[j].0[i].clone();
    Ok(Mat3([
        [entry(0, 0), entry(0, 1), entry(0, 2)],
        [entry(1, 0), entry(1, 1), entry(1, 2)],
        [entry(2, 0), entry(2, 1), entry(2, 2)],
    ]))
}

/// The Q-cross product by the coordinate formula
/// (b1 c2 - b2 c1, a2 c1 - a1 c2, a2 b1 - a1 b2).
///
/// Satisfies <v1, v3> = <v2, v3> = 0 and Q(v3) = [v1, v2, v3].
pub fn q_cross(v1: &Vec3, v2: &Vec3) -> Vec3 {
    let (a1, b1, c1) = (&v1.0[0], &v1.0[1], &v1.0[2]);
    let (a2, b2, c2) = (&v2.0[0], &v2.0[1], &v2.0[2]);
    Vec3([
        &(b1 * c2) - &(b2 * c1),
        &(a2 * c1) - &(a1 * c2),
        &(a2 * b1) - &(a1 * b2),
    ])
}

/// A point (x, y) with x^2 + y^2 = 1 exactly, coordinates in Q(sqrt D).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CirclePoint {
    x: Qfe,
    y: Qfe,
}

impl CirclePoint {
    /// Checks the circle invariant (and field compatibility) on construction.
    pub fn new(x: Qfe, y: Qfe) -> Result<Self> {
        let sum = x.checked_mul(&x)?.checked_add(&y.checked_mul(&y)?)?;
        if sum != Qfe::one() {
            return Err(Error::OffCircle(x.to_string(), y.to_string()));
        }
        Ok(CirclePoint { x, y })
    }

    pub fn x(&self) -> &Qfe {
        &self.x
    }

    pub fn y(&self) -> &Qfe {
        &self.y
    }

    /// Membership in the closed quarter circle.
    pub fn in_quarter(&self) -> bool {
        !self.x.is_negative() && !self.y.is_negative()
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_rational() && self.y.is_rational()
    }

    /// The representative (x, y, 1).
    pub fn lift(&self) -> Vec3 {
        Vec3([self.x.clone(), self.y.clone(), Qfe::one()])
    }

    pub fn conj(&self) -> Result<CirclePoint> {
        CirclePoint::new(self.x.conj(), self.y.conj())
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CirclePoint{self}")
    }
}

/// pi(v) = (x1/x3, x2/x3), defined for null vectors with x3 != 0 only.
pub fn project(v: &Vec3) -> Result<CirclePoint> {
    if v.0[2].is_zero() {
        return Err(Error::ProjectThirdZero);
    }
    if !q_form(v).is_zero() {
        return Err(Error::ProjectNonNull);
    }
    CirclePoint::new(
        v.0[0].checked_div(&v.0[2])?,
        v.0[1].checked_div(&v.0[2])?,
    )
}

/// M . P: the point represented by M v for any v representing P.
pub fn act(m: &Mat3, p: &CirclePoint) -> Result<CirclePoint> {
    project(&m.mul_vec(&p.lift()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::romik::Digit;
    use num_bigint::BigInt;
    use num_rational::Ratio;

    fn half_sqrt3_point() -> CirclePoint {
        // (1/2, sqrt3/2)
        let x = Qfe::ratio(1, 2);
        let y = Qfe::new(
            Rational::from_integer(BigInt::from(0)),
            Ratio::new(BigInt::from(1), BigInt::from(2)),
            3,
        )
        .unwrap();
        CirclePoint::new(x, y).unwrap()
    }

    #[test]
    fn q_form_examples() {
        assert_eq!(q_form(&Vec3::from_ints(3, 4, 5)), Qfe::zero());
        assert_eq!(q_form(&Vec3::from_ints(1, 1, 1)), Qfe::one());
        // (4 sqrt3, 0, 2 sqrt3): 48 - 12 = 36.
        let s3 = Qfe::sqrt_d(3).unwrap();
        let v = Vec3::new(
            s3.checked_mul(&Qfe::from_int(4)).unwrap(),
            Qfe::zero(),
            s3.checked_mul(&Qfe::from_int(2)).unwrap(),
        );
        assert_eq!(q_form(&v), Qfe::from_int(36));
    }

    #[test]
    fn bilinear_examples() {
        assert_eq!(
            bilinear(&Vec3::from_ints(1, 0, 1), &Vec3::from_ints(0, 1, 1)),
            Qfe::from_int(-1)
        );
        let s3 = Qfe::sqrt_d(3).unwrap();
        let u = Vec3::new(Qfe::one(), s3.clone(), Qfe::from_int(2));
        let v = Vec3::new(Qfe::one(), s3.neg(), Qfe::from_int(2));
        assert_eq!(bilinear(&u, &v), Qfe::from_int(-6));
        let w = Vec3::from_ints(2, -3, 7);
        assert_eq!(bilinear(&w, &w), q_form(&w));
    }

    #[test]
    fn reflection_examples() {
        let z = Vec3::from_ints(1, 1, 1);
        assert_eq!(reflect(&z, &z).unwrap(), Vec3::from_ints(-1, -1, -1));
        // The table row (3,4,5) -> (-1,0,1) for H = s_(1,1,1).
        assert_eq!(
            reflect(&z, &Vec3::from_ints(3, 4, 5)).unwrap(),
            Vec3::from_ints(-1, 0, 1)
        );
        // U1 = s_(0,1,0).
        assert_eq!(
            reflect_matrix(&Vec3::from_ints(0, 1, 0)).unwrap(),
            mat_const(MatName::U1)
        );
        // U3 = s_(1,0,0).
        assert_eq!(
            reflect_matrix(&Vec3::from_ints(1, 0, 0)).unwrap(),
            mat_const(MatName::U3)
        );
        assert!(reflect(&Vec3::from_ints(3, 4, 5), &z).is_err());
    }

    #[test]
    fn reflection_is_involution_with_det_minus_one() {
        let z = Vec3::from_ints(2, 3, 1);
        let m = reflect_matrix(&z).unwrap();
        assert_eq!(m.mul(&m), Mat3::identity());
        assert_eq!(m.det(), Qfe::from_int(-1));
        assert!(m.is_q_orthogonal());
    }

    #[test]
    fn matrix_constants_generate_frozen_children() {
        let v = Vec3::from_ints(3, 4, 5);
        assert_eq!(
            mat_const(MatName::M2).mul_vec(&v),
            Vec3::from_ints(21, 20, 29)
        );
        assert_eq!(
            mat_const(MatName::M1).mul_vec(&v),
            Vec3::from_ints(15, 8, 17)
        );
        assert_eq!(
            mat_const(MatName::H).mul_vec(&Vec3::from_ints(0, 1, 1)),
            Vec3::from_ints(0, 1, 1)
        );
    }

    #[test]
    fn factorizations_hold_exactly() {
        let h = mat_const(MatName::H);
        for (m, u) in [
            (MatName::M1, MatName::U1),
            (MatName::M2, MatName::U2),
            (MatName::M3, MatName::U3),
        ] {
            let mj = mat_const(m);
            let uj = mat_const(u);
            assert_eq!(h.mul(&uj), mj);
            // M_j^-1 = U_j H, checked as M_j (U_j H) = I.
            assert_eq!(mj.mul(&uj.mul(&h)), Mat3::identity());
        }
    }

    #[test]
    fn mat_word_examples() {
        assert_eq!(mat_word(&[Digit::Two]).unwrap(), mat_const(MatName::M2));
        assert_eq!(
            mat_word(&[Digit::Three, Digit::One]).unwrap().det(),
            Qfe::one()
        );
        assert_eq!(
            mat_word(&[Digit::Two, Digit::Two]).unwrap().det(),
            Qfe::one()
        );
        assert_eq!(mat_word(&[]).unwrap_err(), Error::EmptyWord);
    }

    #[test]
    fn q_cross_examples() {
        assert_eq!(
            q_cross(&Vec3::from_ints(1, 0, 1), &Vec3::from_ints(0, 1, 1)),
            Vec3::from_ints(-1, -1, -1)
        );
        let v = Vec3::from_ints(2, 5, 9);
        assert!(q_cross(&v, &v).is_zero());
        // (1, sqrt3, 2) x_Q (1, -sqrt3, 2) = (4 sqrt3, 0, 2 sqrt3).
        let s3 = Qfe::sqrt_d(3).unwrap();
        let u = Vec3::new(Qfe::one(), s3.clone(), Qfe::from_int(2));
        let w = q_cross(&u, &u.conj());
        assert_eq!(
            w,
            Vec3::new(
                s3.checked_mul(&Qfe::from_int(4)).unwrap(),
                Qfe::zero(),
                s3.checked_mul(&Qfe::from_int(2)).unwrap()
            )
        );
    }

    #[test]
    fn cross_orthogonality_and_triple_product_norm() {
        let v1 = Vec3::from_ints(3, 4, 5);
        let v2 = Vec3::from_ints(1, 7, 2);
        let v3 = q_cross(&v1, &v2);
        assert!(bilinear(&v1, &v3).is_zero());
        assert!(bilinear(&v2, &v3).is_zero());
        // Null v1: Q(v3) = <v1, v2>^2.
        let ip = bilinear(&v1, &v2);
        assert_eq!(q_form(&v3), ip.checked_mul(&ip).unwrap());
    }

    #[test]
    fn projection_examples() {
        let p = project(&Vec3::from_ints(3, 4, 5)).unwrap();
        assert_eq!(p.x(), &Qfe::ratio(3, 5));
        assert_eq!(p.y(), &Qfe::ratio(4, 5));

        let s3 = Qfe::sqrt_d(3).unwrap();
        let v = Vec3::new(Qfe::one(), s3, Qfe::from_int(2));
        assert_eq!(project(&v).unwrap(), half_sqrt3_point());

        let p = project(&Vec3::from_ints(0, 1, 1)).unwrap();
        assert_eq!((p.x(), p.y()), (&Qfe::zero(), &Qfe::one()));

        assert_eq!(
            project(&Vec3::from_ints(1, 0, 0)).unwrap_err(),
            Error::ProjectThirdZero
        );
        assert_eq!(
            project(&Vec3::from_ints(1, 1, 1)).unwrap_err(),
            Error::ProjectNonNull
        );
    }

    #[test]
    fn act_examples() {
        let p = half_sqrt3_point();
        let moved = act(&mat_const(MatName::M1), &p).unwrap();
        // (sqrt3/2, 1/2)
        assert_eq!(moved.x(), &p.y().clone());
        assert_eq!(moved.y(), &p.x().clone());

        let q = CirclePoint::new(Qfe::ratio(3, 5), Qfe::ratio(4, 5)).unwrap();
        let u1 = act(&mat_const(MatName::U1), &q).unwrap();
        assert_eq!(u1.x(), &Qfe::ratio(3, 5));
        assert_eq!(u1.y(), &Qfe::ratio(-4, 5));

        let h = act(&mat_const(MatName::H), &q).unwrap();
        assert_eq!((h.x(), h.y()), (&Qfe::from_int(-1), &Qfe::zero()));
    }

    #[test]
    fn circle_invariant_enforced() {
        assert!(CirclePoint::new(Qfe::ratio(1, 2), Qfe::ratio(1, 2)).is_err());
    }
}
