//! Property-based checks: field axioms that the sign/comparison logic must
//! respect, Q-orthogonality of the generator matrices, cross-product
//! equivariance, and the descent criterion, all against randomized inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use romik_core::quadspace::{bilinear, mat_word, q_cross, q_form, Vec3};
use romik_core::romik::Digit;
use romik_core::{Qfe, Rational};

const SQUAREFREE_DS: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn rational() -> impl Strategy<Value = Rational> {
    (-400i64..=400, 1i64..=60).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn qfe(d: u64) -> impl Strategy<Value = Qfe> {
    (rational(), rational()).prop_map(move |(a, b)| Qfe::new(a, b, d).unwrap())
}

/// Two scalars sharing one field Q(sqrt D), so every operation is defined.
fn qfe_pair() -> impl Strategy<Value = (Qfe, Qfe)> {
    (0usize..SQUAREFREE_DS.len())
        .prop_flat_map(|i| (qfe(SQUAREFREE_DS[i]), qfe(SQUAREFREE_DS[i])))
}

/// Interval-arithmetic comparison oracle: scale by 10^40, bracket sqrt(D)
/// by integer square roots, and compare the resulting integer intervals.
/// Disjoint intervals decide the order; overlap means "too close to call",
/// and the property skips (Qfe equality handles the exact-tie case).
fn cmp_oracle(x: &Qfe, y: &Qfe) -> Option<std::cmp::Ordering> {
    let diff = x - y;
    if diff.is_zero() {
        return Some(std::cmp::Ordering::Equal);
    }
    let scale = BigInt::from(10u32).pow(40);
    let bound = |r: &BigRational, down: bool| -> BigInt {
        let s = r * BigRational::from_integer(scale.clone());
        let q = s.floor().to_integer();
        if down {
            q
        } else {
            q + 1
        }
    };
    let d = BigInt::from(diff.field_d().max(1));
    let sq = (&d * &scale * &scale).sqrt(); // floor sqrt of D * 10^80
    let (sq_lo, sq_hi) = (sq.clone(), sq + 1);
    let b = diff.surd_part();
    let (b_lo, b_hi) = (bound(b, true), bound(b, false));
    // surd contribution interval: b * sqrt(D) * 10^80, endpoints by sign.
    let mut cands = [
        &b_lo * &sq_lo,
        &b_lo * &sq_hi,
        &b_hi * &sq_lo,
        &b_hi * &sq_hi,
    ];
    cands.sort();
    let a = diff.rational_part();
    let a_lo = bound(a, true) * &scale;
    let a_hi = bound(a, false) * &scale;
    let lo = &a_lo + &cands[0];
    let hi = &a_hi + &cands[3];
    if lo.is_positive() {
        Some(std::cmp::Ordering::Greater)
    } else if hi.is_negative() {
        Some(std::cmp::Ordering::Less)
    } else {
        None
    }
}

fn digits() -> impl Strategy<Value = Vec<Digit>> {
    proptest::collection::vec((1u8..=3).prop_map(|v| Digit::from_u8(v).unwrap()), 1..=5)
}

fn null_vector() -> impl Strategy<Value = (BigInt, BigInt, BigInt)> {
    (1i64..=50, 0i64..=50, 1i64..=10, any::<bool>(), any::<bool>(), any::<bool>()).prop_map(
        |(p, q, s, swap, na, nb)| {
            let (mut a, mut b, c) = (
                BigInt::from((p * p - q * q) * s),
                BigInt::from(2 * p * q * s),
                BigInt::from((p * p + q * q) * s),
            );
            if swap {
                std::mem::swap(&mut a, &mut b);
            }
            if na {
                a = -a;
            }
            if nb {
                b = -b;
            }
            (a, b, c)
        },
    )
}

fn int_qfe(n: &BigInt) -> Qfe {
    Qfe::from_rational(Rational::from_integer(n.clone()))
}

proptest! {
    #[test]
    fn sign_is_multiplicative((x, y) in qfe_pair()) {
        let p = x.checked_mul(&y).unwrap();
        prop_assert_eq!(p.sign(), x.sign() * y.sign());
    }

    #[test]
    fn conjugation_is_a_ring_map((x, y) in qfe_pair()) {
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        let p = x.checked_mul(&y).unwrap();
        prop_assert_eq!(p.conj(), x.conj().checked_mul(&y.conj()).unwrap());
        prop_assert_eq!(Rational::from_integer(BigInt::from(0)),
            &x.norm() - &(x.checked_mul(&x.conj()).unwrap().as_rational().unwrap().clone()));
    }

    #[test]
    fn division_inverts_multiplication((x, y) in qfe_pair()) {
        prop_assume!(!y.is_zero());
        let q = x.checked_div(&y).unwrap();
        prop_assert_eq!(q.checked_mul(&y).unwrap(), x);
    }

    #[test]
    fn comparison_matches_interval_oracle((x, y) in qfe_pair()) {
        if let Some(expected) = cmp_oracle(&x, &y) {
            prop_assert_eq!(x.checked_cmp(&y).unwrap(), expected);
        }
    }

    #[test]
    fn generator_words_are_q_orthogonal(w in digits()) {
        let m = mat_word(&w).unwrap();
        prop_assert!(m.is_q_orthogonal());
        let det = m.det();
        prop_assert!(det == Qfe::one() || det == Qfe::from_int(-1));
    }

    #[test]
    fn cross_product_equivariance(w in digits(),
                                  v1 in null_vector(),
                                  v2 in null_vector()) {
        let m = mat_word(&w).unwrap();
        let a = Vec3::new(int_qfe(&v1.0), int_qfe(&v1.1), int_qfe(&v1.2));
        let b = Vec3::new(int_qfe(&v2.0), int_qfe(&v2.1), int_qfe(&v2.2));
        let lhs = q_cross(&m.mul_vec(&a), &m.mul_vec(&b));
        let mut rhs = m.mul_vec(&q_cross(&a, &b));
        if m.det() == Qfe::from_int(-1) {
            rhs = rhs.neg();
        }
        prop_assert_eq!(lhs, rhs);
        let ip = bilinear(&a, &b);
        prop_assert_eq!(q_form(&q_cross(&a, &b)), ip.checked_mul(&ip).unwrap());
    }

    #[test]
    fn descent_criterion(v in null_vector()) {
        let (a, b, c) = v;
        let c_new = BigInt::from(-2) * &a + BigInt::from(-2) * &b + BigInt::from(3) * &c;
        let shrinks = c_new.abs() < c.abs();
        let s = Rational::new(&a + &b, c);
        let inside = s > Rational::one()
            && s < Rational::from_integer(BigInt::from(2));
        prop_assert_eq!(shrinks, inside);
    }
}
