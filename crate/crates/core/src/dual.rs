use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::Coeff;

/// `a + eps*b` with `eps^2 = 0`, over any coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct DualNumber<S> {
    pub a: S,
    pub b: S,
}

impl<S: Coeff> DualNumber<S> {
    pub fn new(a: S, b: S) -> Self {
        DualNumber { a, b }
    }

    /// `a + 0*eps`.
    pub fn real(a: S) -> Self {
        let b = a.zero_like();
        DualNumber { a, b }
    }

    /// The tangent vector `1 + eps` over the ring of `like`.
    pub fn one_plus_eps(like: &S) -> Self {
        DualNumber { a: like.one_like(), b: like.one_like() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = DualNumber::real(self.a.one_like());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl<S: Coeff> Add for DualNumber<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        DualNumber { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl<S: Coeff> Sub for DualNumber<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        DualNumber { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl<S: Coeff> Mul for DualNumber<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let b = self.a.clone() * rhs.b + self.b * rhs.a.clone();
        DualNumber { a: self.a * rhs.a, b }
    }
}

impl<S: Coeff> Neg for DualNumber<S> {
    type Output = Self;
    fn neg(self) -> Self {
        DualNumber { a: -self.a, b: -self.b }
    }
}
