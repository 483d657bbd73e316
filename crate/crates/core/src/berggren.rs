//! Berggren tree generation on primitive Pythagorean triples: child
//! expansion, parent descent, funnel-vertex verification, and an
//! independent enumeration oracle via the Euclid parametrization.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Int, Qfe, Rational};
use crate::quadspace::{mat_m, mat_u, mat_const, CirclePoint, Mat3, MatName, Vec3};
use crate::romik::{digit, Digit};

/// A primitive Pythagorean triple: a^2 + b^2 = c^2, all positive, gcd 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triple {
    #[serde(serialize_with = "crate::field::ser_int")]
    pub a: Int,
    #[serde(serialize_with = "crate::field::ser_int")]
    pub b: Int,
    #[serde(serialize_with = "crate::field::ser_int")]
    pub c: Int,
}

impl Triple {
    pub fn new(a: Int, b: Int, c: Int) -> Result<Self> {
        let ok = a.is_positive()
            && b.is_positive()
            && c.is_positive()
            && &a * &a + &b * &b == &c * &c
            && a.gcd(&b).gcd(&c) == BigInt::from(1);
        if !ok {
            return Err(Error::NotPrimitiveTriple(
                a.to_string(),
                b.to_string(),
                c.to_string(),
            ));
        }
        Ok(Triple { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Triple::new(Int::from(a), Int::from(b), Int::from(c))
    }

    pub fn root_345() -> Triple {
        Triple::from_ints(3, 4, 5).unwrap()
    }

    pub fn root_435() -> Triple {
        Triple::from_ints(4, 3, 5).unwrap()
    }

    pub fn is_root(&self) -> bool {
        self == &Triple::root_345() || self == &Triple::root_435()
    }

    pub fn to_vec3(&self) -> Vec3 {
        Vec3::new(
            Qfe::from_rational(Rational::from_integer(self.a.clone())),
            Qfe::from_rational(Rational::from_integer(self.b.clone())),
            Qfe::from_rational(Rational::from_integer(self.c.clone())),
        )
    }

    /// The rational circle point (a/c, b/c).
    pub fn project(&self) -> CirclePoint {
        CirclePoint::new(
            Qfe::from_rational(Rational::new(self.a.clone(), self.c.clone())),
            Qfe::from_rational(Rational::new(self.b.clone(), self.c.clone())),
        )
        .expect("a^2 + b^2 = c^2 guarantees the circle invariant")
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Triple{self}")
    }
}

fn triple_from_vec3(v: &Vec3) -> Result<Triple> {
    let int_of = |q: &Qfe| -> Result<Int> {
        let r = q.as_rational().ok_or_else(|| {
            Error::InvariantViolated("expected integer coordinate".into())
        })?;
        if !r.is_integer() {
            return Err(Error::InvariantViolated(
                "expected integer coordinate".into(),
            ));
        }
        Ok(r.to_integer())
    };
    Triple::new(int_of(v.x1())?, int_of(v.x2())?, int_of(v.x3())?)
}

fn apply_to_triple(m: &Mat3, t: &Triple) -> Result<Triple> {
    triple_from_vec3(&m.mul_vec(&t.to_vec3()))
}

/// The three children (M1 t, M2 t, M3 t), each primitive with larger c.
pub fn children(t: &Triple) -> [Triple; 3] {
    Digit::ALL.map(|d| {
        apply_to_triple(&mat_m(d), t)
            .expect("Berggren children of a primitive triple are primitive")
    })
}

/// Result of one parent step: another triple, or one of the two terminal
/// null vectors (1,0,1) / (0,1,1), which are not themselves triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ParentStep {
    Node(Triple),
    /// U_j H applied to a root: (1, 0, 1).
    TerminalOneZero,
    /// U_j H applied to a root: (0, 1, 1).
    TerminalZeroOne,
}

/// The unique parent U_j H t, with j the canonical Romik digit of pi(t).
pub fn parent(t: &Triple) -> Result<(ParentStep, Digit)> {
    let j = digit(&t.project())?;
    let v = mat_u(j).mul_vec(&mat_const(MatName::H).mul_vec(&t.to_vec3()));
    if v == Vec3::from_ints(1, 0, 1) {
        return Ok((ParentStep::TerminalOneZero, j));
    }
    if v == Vec3::from_ints(0, 1, 1) {
        return Ok((ParentStep::TerminalZeroOne, j));
    }
    Ok((ParentStep::Node(triple_from_vec3(&v)?), j))
}

/// The chain of parent steps down to a root; empty for the roots themselves.
pub fn descend(t: &Triple) -> Result<Vec<(Triple, Digit)>> {
    let mut chain = Vec::new();
    let mut cur = t.clone();
    while !cur.is_root() {
        match parent(&cur)? {
            (ParentStep::Node(p), j) => {
                debug_assert!(p.c < cur.c);
                chain.push((p.clone(), j));
                cur = p;
            }
            _ => {
                return Err(Error::InvariantViolated(format!(
                    "descent from {t} hit a terminal before a root"
                )))
            }
        }
    }
    Ok(chain)
}

/// All tree descendants of both roots with c <= c_max, breadth-first with
/// a frontier ordered by c so pruning is exact.
pub fn enumerate_bfs(c_max: u64) -> BTreeSet<Triple> {
    let cap = Int::from(c_max);
    let mut out = BTreeSet::new();
    let mut frontier: BinaryHeap<Reverse<Triple>> = BinaryHeap::new();
    for root in [Triple::root_345(), Triple::root_435()] {
        if root.c <= cap {
            frontier.push(Reverse(root));
        }
    }
    while let Some(Reverse(t)) = frontier.pop() {
        for child in children(&t) {
            if child.c <= cap {
                frontier.push(Reverse(child));
            }
        }
        out.insert(t);
    }
    out
}

/// Independent oracle: all primitive triples with c <= c_max from the Euclid
/// parametrization (m^2 - n^2, 2mn, m^2 + n^2), both leg orders emitted.
pub fn enumerate_oracle(c_max: u64) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    let mut m = 2u64;
    while m * m < c_max {
        for n in 1..m {
            if (m - n).is_multiple_of(2) || m.gcd(&n) != 1 {
                continue;
            }
            let c = m * m + n * n;
            if c > c_max {
                break;
            }
            let a = m * m - n * n;
            let b = 2 * m * n;
            out.insert(Triple::from_ints(a as i64, b as i64, c as i64).unwrap());
            out.insert(Triple::from_ints(b as i64, a as i64, c as i64).unwrap());
        }
        m += 1;
    }
    out
}

/// Per-property verdicts for the funnel-vertex properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunnelReport {
    /// All three children are primitive triples.
    pub outdegree_three: bool,
    /// Count of j with U_j H t a primitive triple (1 for funnel vertices,
    /// 0 for the two roots).
    pub indegree: usize,
    /// Children strictly increase c; the parent strictly decreases it.
    pub monotone_c: bool,
    /// Set when t is one of the two roots (flagged indegree-0 exception).
    pub is_root: bool,
}

impl FunnelReport {
    pub fn all_pass(&self) -> bool {
        self.outdegree_three && self.indegree == 1 && self.monotone_c && !self.is_root
    }
}

/// Checks the three funnel properties for a primitive triple.
pub fn is_funnel(t: &Triple) -> Result<FunnelReport> {
    let h = mat_const(MatName::H);
    let kids: Vec<_> = Digit::ALL
        .iter()
        .map(|&d| triple_from_vec3(&mat_m(d).mul_vec(&t.to_vec3())))
        .collect();
    let outdegree_three = kids.iter().all(|k| k.is_ok());
    let mut monotone_c = kids
        .iter()
        .flatten()
        .all(|k| k.c > t.c);

    let mut indegree = 0usize;
    for d in Digit::ALL {
        let v = mat_u(d).mul_vec(&h.mul_vec(&t.to_vec3()));
        if let Ok(p) = triple_from_vec3(&v) {
            indegree += 1;
            monotone_c &= p.c < t.c;
        }
    }
    Ok(FunnelReport {
        outdegree_three,
        indegree,
        monotone_c,
        is_root: t.is_root(),
    })
}
