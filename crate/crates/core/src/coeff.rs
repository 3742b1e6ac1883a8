use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclotomic::CyclotomicElem;
use crate::dual::DualNumber;
use crate::error::{Error, Result};
use crate::padic::PadicInt;

/// A commutative coefficient ring for q-expansions and measure values.
///
/// The modulus `p^N` is a runtime quantity, so constants are produced from a
/// sample element (`zero_like`) or from an embedded `PadicInt` rather than
/// through context-free `Zero`/`One`.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_padic(x: PadicInt) -> Self;

    /// Embed a cyclotomic value; fails when the value has no image in `Self`.
    fn from_cyclo(x: &CyclotomicElem) -> Result<Self>;

    fn is_zero(&self) -> bool;

    /// Minimum known p-adic precision.
    fn prec(&self) -> u32;

    /// Largest `v` with the element divisible by `p^v`.
    fn valuation(&self) -> u32;

    /// Equality modulo the common precision.
    fn agrees(&self, other: &Self) -> bool;

    fn truncate(&self, e: u32) -> Self;

    fn zero_like(&self) -> Self;

    fn one_like(&self) -> Self;

    fn scale(&self, c: &CyclotomicElem) -> Result<Self> {
        Ok(self.clone() * Self::from_cyclo(c)?)
    }

    fn mul_padic(&self, c: &PadicInt) -> Self {
        self.clone() * Self::from_padic(*c)
    }
}

impl Coeff for PadicInt {
    fn from_padic(x: PadicInt) -> Self {
        x
    }

    fn from_cyclo(x: &CyclotomicElem) -> Result<Self> {
        x.as_padic()
            .ok_or_else(|| Error::ValueOutsideRing(format!("{x} is not in Z/p^N")))
    }

    fn is_zero(&self) -> bool {
        PadicInt::is_zero(self)
    }

    fn prec(&self) -> u32 {
        PadicInt::prec(self)
    }

    fn valuation(&self) -> u32 {
        PadicInt::valuation(self)
    }

    fn agrees(&self, other: &Self) -> bool {
        PadicInt::agrees(self, other)
    }

    fn truncate(&self, e: u32) -> Self {
        PadicInt::truncate(self, e)
    }

    fn zero_like(&self) -> Self {
        PadicInt::with_prec(self.p(), self.n(), self.n(), 0)
    }

    fn one_like(&self) -> Self {
        PadicInt::with_prec(self.p(), self.n(), self.n(), 1)
    }

    fn mul_padic(&self, c: &PadicInt) -> Self {
        *self * *c
    }
}

impl Coeff for CyclotomicElem {
    fn from_padic(x: PadicInt) -> Self {
        CyclotomicElem::from_padic(x)
    }

    fn from_cyclo(x: &CyclotomicElem) -> Result<Self> {
        Ok(x.clone())
    }

    fn is_zero(&self) -> bool {
        CyclotomicElem::is_zero(self)
    }

    fn prec(&self) -> u32 {
        CyclotomicElem::prec(self)
    }

    fn valuation(&self) -> u32 {
        CyclotomicElem::valuation(self)
    }

    fn agrees(&self, other: &Self) -> bool {
        CyclotomicElem::agrees(self, other)
    }

    fn truncate(&self, e: u32) -> Self {
        CyclotomicElem::truncate(self, e)
    }

    fn zero_like(&self) -> Self {
        CyclotomicElem::zero(&self.context(), 0)
    }

    fn one_like(&self) -> Self {
        CyclotomicElem::one(&self.context(), 0)
    }

    fn scale(&self, c: &CyclotomicElem) -> Result<Self> {
        Ok(self * c)
    }

    fn mul_padic(&self, c: &PadicInt) -> Self {
        CyclotomicElem::scale(self, c)
    }
}

impl<S: Coeff> Coeff for DualNumber<S> {
    fn from_padic(x: PadicInt) -> Self {
        DualNumber::real(S::from_padic(x))
    }

    fn from_cyclo(x: &CyclotomicElem) -> Result<Self> {
        Ok(DualNumber::real(S::from_cyclo(x)?))
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn prec(&self) -> u32 {
        self.a.prec().min(self.b.prec())
    }

    fn valuation(&self) -> u32 {
        self.a.valuation().min(self.b.valuation())
    }

    fn agrees(&self, other: &Self) -> bool {
        self.a.agrees(&other.a) && self.b.agrees(&other.b)
    }

    fn truncate(&self, e: u32) -> Self {
        DualNumber::new(self.a.truncate(e), self.b.truncate(e))
    }

    fn zero_like(&self) -> Self {
        DualNumber::real(self.a.zero_like())
    }

    fn one_like(&self) -> Self {
        DualNumber::real(self.a.one_like())
    }

    fn scale(&self, c: &CyclotomicElem) -> Result<Self> {
        Ok(DualNumber::new(self.a.scale(c)?, self.b.scale(c)?))
    }

    fn mul_padic(&self, c: &PadicInt) -> Self {
        DualNumber::new(self.a.mul_padic(c), self.b.mul_padic(c))
    }
}
