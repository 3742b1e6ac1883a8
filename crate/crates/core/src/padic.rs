use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::context::{pow_u64, PadicContext};
use crate::error::{Error, Result};

/// A p-adic integer known modulo `p^prec`, stored inside `Z/p^n`.
///
/// The residue is always reduced modulo `p^prec`. Sums and products take the
/// minimum of the operand precisions; exact division by `p` lowers it by one.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    n: u32,
    prec: u32,
    residue: u64,
    modulus: u64,
}

impl PadicInt {
    pub fn from_i128(ctx: &PadicContext, value: i128) -> Self {
        Self::with_prec(ctx.p, ctx.n, ctx.n, value)
    }

    pub fn from_int(ctx: &PadicContext, value: i64) -> Self {
        Self::from_i128(ctx, value as i128)
    }

    pub fn from_bigint(ctx: &PadicContext, value: &BigInt) -> Self {
        let modulus = BigInt::from(ctx.modulus());
        let r = value.mod_floor(&modulus);
        PadicInt {
            p: ctx.p,
            n: ctx.n,
            prec: ctx.n,
            residue: r.to_u64().expect("reduced residue fits u64"),
            modulus: ctx.modulus(),
        }
    }

    pub fn zero(ctx: &PadicContext) -> Self {
        Self::from_int(ctx, 0)
    }

    pub fn one(ctx: &PadicContext) -> Self {
        Self::from_int(ctx, 1)
    }

    /// A value known only modulo `p^prec` (`prec` is clamped to `n`).
    pub fn with_prec(p: u64, n: u32, prec: u32, value: i128) -> Self {
        let prec = prec.min(n);
        let modulus = pow_u64(p, prec);
        let residue = value.rem_euclid(modulus as i128) as u64;
        PadicInt { p, n, prec, residue, modulus }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Ambient precision `N` of the context.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn context(&self, m: usize) -> PadicContext {
        PadicContext { p: self.p, n: self.n, m }
    }

    /// Residue as a signed integer in `(-p^prec/2, p^prec/2]`.
    pub fn centered(&self) -> i128 {
        let r = self.residue as i128;
        let m = self.modulus as i128;
        if 2 * r > m {
            r - m
        } else {
            r
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.residue)
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn is_one(&self) -> bool {
        self.residue == 1 % self.modulus
    }

    /// `v_p` of the value, capped at the known precision.
    pub fn valuation(&self) -> u32 {
        if self.residue == 0 {
            return self.prec;
        }
        let mut v = 0;
        let mut r = self.residue;
        while r % self.p == 0 {
            r /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self) -> bool {
        self.prec > 0 && self.residue % self.p != 0
    }

    /// Drop precision to `min(prec, e)`.
    pub fn truncate(&self, e: u32) -> Self {
        Self::with_prec(self.p, self.n, self.prec.min(e), self.residue as i128)
    }

    /// True when both values are known to precision `e` and agree modulo `p^e`.
    pub fn agrees_to(&self, other: &Self, e: u32) -> bool {
        self.check_compatible(other);
        if self.prec < e || other.prec < e {
            return false;
        }
        let m = pow_u64(self.p, e);
        self.residue % m == other.residue % m
    }

    /// Agreement modulo `p^min(prec, prec')`.
    pub fn agrees(&self, other: &Self) -> bool {
        let e = self.prec.min(other.prec);
        self.agrees_to(other, e)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotUnit(format!("{self}")));
        }
        let inv = mod_inverse(self.residue as i128, self.modulus as i128)
            .expect("units are invertible");
        Ok(Self::with_prec(self.p, self.n, self.prec, inv))
    }

    /// Divide by `p^e`; the value must be divisible by `p^e` and precision drops by `e`.
    pub fn div_p_exact(&self, e: u32) -> Result<Self> {
        if self.valuation() < e || self.prec < e {
            return Err(Error::NotPIntegral(format!("{self} is not divisible by p^{e}")));
        }
        let d = pow_u64(self.p, e);
        Ok(Self::with_prec(self.p, self.n, self.prec - e, (self.residue / d) as i128))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::with_prec(self.p, self.n, self.prec, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.p == other.p && self.n == other.n,
            "mixing p-adic contexts ({}, {}) and ({}, {})",
            self.p,
            self.n,
            other.p,
            other.n
        );
    }

    fn combine(&self, other: &Self, f: impl Fn(u128, u128, u128) -> u128) -> Self {
        self.check_compatible(other);
        let prec = self.prec.min(other.prec);
        let modulus = if prec == self.prec { self.modulus } else { other.modulus };
        let m = modulus as u128;
        let a = self.residue as u128 % m;
        let b = other.residue as u128 % m;
        PadicInt { p: self.p, n: self.n, prec, residue: f(a, b, m) as u64, modulus }
    }
}

pub(crate) fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let e = a.extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// `p`-adic valuation of a nonzero big integer.
pub fn bigint_valuation(x: &BigInt, p: u64) -> u32 {
    assert!(!x.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut v = 0;
    let mut y = x.abs();
    loop {
        let (q, r) = y.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        y = q;
        v += 1;
    }
}

impl Add for PadicInt {
    type Output = PadicInt;
    fn add(self, rhs: PadicInt) -> PadicInt {
        self.combine(&rhs, |a, b, m| (a + b) % m)
    }
}

impl Sub for PadicInt {
    type Output = PadicInt;
    fn sub(self, rhs: PadicInt) -> PadicInt {
        self.combine(&rhs, |a, b, m| (a + m - b) % m)
    }
}

impl Mul for PadicInt {
    type Output = PadicInt;
    fn mul(self, rhs: PadicInt) -> PadicInt {
        self.combine(&rhs, |a, b, m| a * b % m)
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        let r = if self.residue == 0 { 0 } else { self.modulus - self.residue };
        PadicInt { residue: r, ..self }
    }
}

impl fmt::Debug for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.p, self.prec)
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
