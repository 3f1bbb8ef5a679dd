//! Split-free (Euclidean) octonions by Cayley-Dickson doubling of the
//! quaternions: `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`.
//!
//! Basis `e0..e7`, where `e0..e3` are the quaternion units `1, i, j, k` of the
//! first half and `e4..e7` the same units times the doubling element.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::rational::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Octonion(pub [Q; 8]);

type Quat = [Q; 4];

fn qmul(x: &Quat, y: &Quat) -> Quat {
    let [a1, b1, c1, d1] = x;
    let [a2, b2, c2, d2] = y;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

fn qconj(x: &Quat) -> Quat {
    [x[0].clone(), -&x[1], -&x[2], -&x[3]]
}

fn qsub(x: &Quat, y: &Quat) -> Quat {
    std::array::from_fn(|i| &x[i] - &y[i])
}

fn qadd(x: &Quat, y: &Quat) -> Quat {
    std::array::from_fn(|i| &x[i] + &y[i])
}

impl Octonion {
    pub fn zero() -> Octonion {
        Octonion(std::array::from_fn(|_| Q::zero()))
    }

    pub fn real(r: Q) -> Octonion {
        let mut o = Octonion::zero();
        o.0[0] = r;
        o
    }

    pub fn unit(i: usize) -> Octonion {
        let mut o = Octonion::zero();
        o.0[i] = q(1);
        o
    }

    pub fn from_slice(v: &[Q]) -> Octonion {
        Octonion(std::array::from_fn(|i| v[i].clone()))
    }

    fn halves(&self) -> (Quat, Quat) {
        (
            std::array::from_fn(|i| self.0[i].clone()),
            std::array::from_fn(|i| self.0[i + 4].clone()),
        )
    }

    fn from_halves(a: Quat, b: Quat) -> Octonion {
        let [a0, a1, a2, a3] = a;
        let [b0, b1, b2, b3] = b;
        Octonion([a0, a1, a2, a3, b0, b1, b2, b3])
    }

    pub fn conj(&self) -> Octonion {
        let mut o = self.clone();
        for x in o.0.iter_mut().skip(1) {
            *x = -&*x;
        }
        o
    }

    /// Sum of squares of the coordinates.
    pub fn norm(&self) -> Q {
        self.0.iter().map(|x| x * x).sum()
    }

    /// `x + conj(x)`.
    pub fn trace(&self) -> Q {
        &self.0[0] * q(2)
    }

    pub fn scale(&self, s: &Q) -> Octonion {
        Octonion(std::array::from_fn(|i| &self.0[i] * s))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, o: &Octonion) -> Octonion {
        let (a, b) = self.halves();
        let (c, d) = o.halves();
        Octonion::from_halves(
            qsub(&qmul(&a, &c), &qmul(&qconj(&d), &b)),
            qadd(&qmul(&d, &a), &qmul(&b, &qconj(&c))),
        )
    }
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, o: &Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, o: &Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(std::array::from_fn(|i| -&self.0[i]))
    }
}
