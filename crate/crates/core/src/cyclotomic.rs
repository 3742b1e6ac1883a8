use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::context::{pow_u64, PadicContext};
use crate::error::{Error, Result};
use crate::padic::PadicInt;

/// Degree of the p^level-th cyclotomic polynomial.
pub fn totient_p_power(p: u64, level: u32) -> usize {
    if level == 0 {
        1
    } else {
        ((p - 1) * pow_u64(p, level - 1)) as usize
    }
}

/// An element of `(Z/p^N)[T] / Phi_{p^level}(T)`, with `zeta` the class of `T`.
///
/// Coefficients are kept in the power basis `1, T, ..., T^(phi-1)`, which is a
/// basis of the quotient, so the representation is canonical. Mixed-level
/// arithmetic lifts the lower level through `T -> T^(p^d)`.
#[derive(Clone)]
pub struct CyclotomicElem {
    level: u32,
    coeffs: Vec<PadicInt>,
}

impl CyclotomicElem {
    pub fn from_padic(x: PadicInt) -> Self {
        CyclotomicElem { level: 0, coeffs: vec![x] }
    }

    pub fn from_int(ctx: &PadicContext, v: i64) -> Self {
        Self::from_padic(PadicInt::from_int(ctx, v))
    }

    pub fn zero(ctx: &PadicContext, level: u32) -> Self {
        let z = PadicInt::zero(ctx);
        CyclotomicElem { level, coeffs: vec![z; totient_p_power(ctx.p, level)] }
    }

    pub fn one(ctx: &PadicContext, level: u32) -> Self {
        let mut out = Self::zero(ctx, level);
        out.coeffs[0] = PadicInt::one(ctx);
        out
    }

    /// The primitive root `zeta_{p^level}` (equal to 1 at level 0).
    pub fn zeta(ctx: &PadicContext, level: u32) -> Self {
        Self::zeta_power(ctx, level, 1)
    }

    /// `zeta_{p^level}^e` for any integer exponent.
    pub fn zeta_power(ctx: &PadicContext, level: u32, e: i128) -> Self {
        let mut out = Self::zero(ctx, level);
        if level == 0 {
            out.coeffs[0] = PadicInt::one(ctx);
            return out;
        }
        let order = pow_u64(ctx.p, level) as i128;
        let e = e.rem_euclid(order) as usize;
        let phi = out.coeffs.len();
        if e < phi {
            out.coeffs[e] = PadicInt::one(ctx);
        } else {
            // T^phi = -sum_{i<p-1} T^(i p^(level-1))
            let r = e - phi;
            let step = pow_u64(ctx.p, level - 1) as usize;
            let minus_one = PadicInt::from_int(ctx, -1);
            for i in 0..(ctx.p as usize - 1) {
                out.coeffs[r + i * step] = minus_one;
            }
        }
        out
    }

    /// Build from power-basis coefficients of arbitrary length, reducing
    /// modulo `Phi_{p^level}`.
    pub fn from_coeffs(level: u32, coeffs: Vec<PadicInt>) -> Self {
        assert!(!coeffs.is_empty(), "empty coefficient vector");
        let p = coeffs[0].p();
        let phi = totient_p_power(p, level);
        let mut v = coeffs;
        if v.len() < phi {
            let n = v[0].n();
            v.resize(phi, PadicInt::with_prec(p, n, n, 0));
        }
        reduce_mod_cyclotomic(&mut v, p, level);
        CyclotomicElem { level, coeffs: v }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn p(&self) -> u64 {
        self.coeffs[0].p()
    }

    pub fn n(&self) -> u32 {
        self.coeffs[0].n()
    }

    pub fn context(&self) -> PadicContext {
        self.coeffs[0].context(1)
    }

    pub fn coeffs(&self) -> &[PadicInt] {
        &self.coeffs
    }

    /// Minimum precision over the coordinates.
    pub fn prec(&self) -> u32 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(0)
    }

    /// Largest `v` with every coordinate divisible by `p^v`.
    pub fn valuation(&self) -> u32 {
        self.coeffs.iter().map(|c| c.valuation()).min().unwrap_or(0)
    }

    pub fn truncate(&self, e: u32) -> Self {
        CyclotomicElem { level: self.level, coeffs: self.coeffs.iter().map(|c| c.truncate(e)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The value as an element of `Z/p^N` when it has no `zeta`-part.
    pub fn as_padic(&self) -> Option<PadicInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Image in the residue field `Z[zeta]/(zeta - 1) = F_p`.
    pub fn residue_mod_p(&self) -> u64 {
        let p = self.p();
        self.coeffs.iter().map(|c| c.residue() % p).sum::<u64>() % p
    }

    pub fn is_unit(&self) -> bool {
        self.residue_mod_p() != 0
    }

    /// Embed into a higher level via `zeta_{p^m} = zeta_{p^m'}^(p^(m'-m))`.
    pub fn lift(&self, level: u32) -> Self {
        assert!(level >= self.level, "cannot lower cyclotomic level");
        if level == self.level {
            return self.clone();
        }
        let p = self.p();
        let ctx = self.context();
        let stride = pow_u64(p, level - self.level) as usize;
        let mut out = Self::zero(&ctx, level);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i * stride] = *c;
        }
        out
    }

    /// Agreement of every coordinate modulo the common precision.
    pub fn agrees(&self, other: &Self) -> bool {
        let level = self.level.max(other.level);
        let (a, b) = (self.lift(level), other.lift(level));
        a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| x.agrees(y))
    }

    pub fn agrees_to(&self, other: &Self, e: u32) -> bool {
        let level = self.level.max(other.level);
        let (a, b) = (self.lift(level), other.lift(level));
        a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| x.agrees_to(y, e))
    }

    pub fn scale(&self, c: &PadicInt) -> Self {
        CyclotomicElem { level: self.level, coeffs: self.coeffs.iter().map(|x| *x * *c).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.context(), self.level);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True when `self^(p^level) = 1`.
    pub fn is_root_of_unity(&self) -> bool {
        self.pow(pow_u64(self.p(), self.level)).is_one()
    }

    /// `x^e` for a p-adic exponent, valid for p-power roots of unity of this level.
    pub fn cyclo_pow(&self, e: &PadicInt) -> Result<Self> {
        if !self.is_root_of_unity() {
            return Err(Error::NotRootOfUnity { level: self.level });
        }
        if e.prec() < self.level {
            return Err(Error::PrecisionExhausted(format!(
                "exponent {e} is not known modulo p^{}",
                self.level
            )));
        }
        let order = pow_u64(self.p(), self.level);
        Ok(self.pow(e.residue() % order))
    }

    /// Multiplicative inverse of a unit, by Newton iteration from the
    /// residue-field inverse.
    pub fn inverse(&self) -> Result<Self> {
        let p = self.p();
        let s = self.residue_mod_p();
        if s == 0 {
            return Err(Error::NotUnit(format!("{self}")));
        }
        let ctx = self.context();
        let s_inv = PadicInt::from_int(&ctx, s as i64).inverse()?;
        let mut x = Self::from_padic(s_inv).lift(self.level);
        let two = Self::from_int(&ctx, 2);
        let bits = (self.n() as usize * self.coeffs.len()).next_power_of_two().trailing_zeros() + 2;
        for _ in 0..bits {
            if (&x * self).is_one() {
                break;
            }
            x = &x * &(&two - &(self * &x));
        }
        debug_assert!((&x * self).is_one(), "Newton iteration for inverse mod p = {p}");
        Ok(x)
    }

    fn binary(&self, other: &Self, f: impl Fn(PadicInt, PadicInt) -> PadicInt) -> Self {
        let level = self.level.max(other.level);
        let (a, b) = (self.lift(level), other.lift(level));
        CyclotomicElem { level, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(*x, *y)).collect() }
    }
}

fn reduce_mod_cyclotomic(v: &mut Vec<PadicInt>, p: u64, level: u32) {
    let phi = totient_p_power(p, level);
    if level == 0 {
        let total = v.iter().skip(1).fold(v[0], |acc, c| acc + *c);
        v.clear();
        v.push(total);
        return;
    }
    let step = pow_u64(p, level - 1) as usize;
    for d in (phi..v.len()).rev() {
        let c = v[d];
        if c.is_zero() && c.prec() == c.n() {
            continue;
        }
        for i in 0..(p as usize - 1) {
            let idx = d - phi + i * step;
            v[idx] = v[idx] - c;
        }
    }
    v.truncate(phi);
}

impl PartialEq for CyclotomicElem {
    /// Structural equality after lifting to a common level (precisions included).
    fn eq(&self, other: &Self) -> bool {
        let level = self.level.max(other.level);
        self.lift(level).coeffs == other.lift(level).coeffs
    }
}

impl Eq for CyclotomicElem {}

impl Add for &CyclotomicElem {
    type Output = CyclotomicElem;
    fn add(self, rhs: &CyclotomicElem) -> CyclotomicElem {
        self.binary(rhs, |a, b| a + b)
    }
}

impl Sub for &CyclotomicElem {
    type Output = CyclotomicElem;
    fn sub(self, rhs: &CyclotomicElem) -> CyclotomicElem {
        self.binary(rhs, |a, b| a - b)
    }
}

impl Mul for &CyclotomicElem {
    type Output = CyclotomicElem;
    fn mul(self, rhs: &CyclotomicElem) -> CyclotomicElem {
        let level = self.level.max(rhs.level);
        if self.level == 0 {
            return rhs.lift(level).scale(&self.coeffs[0]);
        }
        if rhs.level == 0 {
            return self.lift(level).scale(&rhs.coeffs[0]);
        }
        let (a, b) = (self.lift(level), rhs.lift(level));
        let n = a.n();
        let zero = PadicInt::with_prec(a.p(), n, n, 0);
        let mut prod = vec![zero; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() && x.prec() == x.n() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] = prod[i + j] + *x * *y;
            }
        }
        reduce_mod_cyclotomic(&mut prod, a.p(), level);
        CyclotomicElem { level, coeffs: prod }
    }
}

impl Neg for &CyclotomicElem {
    type Output = CyclotomicElem;
    fn neg(self) -> CyclotomicElem {
        CyclotomicElem { level: self.level, coeffs: self.coeffs.iter().map(|c| -*c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for CyclotomicElem {
            type Output = CyclotomicElem;
            fn $method(self, rhs: CyclotomicElem) -> CyclotomicElem {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CyclotomicElem {
    type Output = CyclotomicElem;
    fn neg(self) -> CyclotomicElem {
        -&self
    }
}

impl fmt::Debug for CyclotomicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && i > 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c.residue())?,
                1 => write!(f, "{}*z", c.residue())?,
                _ => write!(f, "{}*z^{}", c.residue(), i)?,
            }
        }
        write!(f, " + O({}^{}) [level {}]", self.p(), self.prec(), self.level)
    }
}

impl fmt::Display for CyclotomicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
