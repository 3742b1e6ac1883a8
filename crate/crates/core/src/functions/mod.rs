//! Continuous functions on `Z_p` with exact representations.

mod mahler;
mod piecewise;
mod twovar;

pub use mahler::mahler_coeffs;
pub use piecewise::{PieceTerm, PiecewisePoly};
pub use twovar::TwoVarFn;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::coeff::Coeff;
use crate::context::{pow_u64, PadicContext};
use crate::cyclotomic::CyclotomicElem;
use crate::error::{Error, Result};
use crate::padic::PadicInt;
use crate::rational::binomial_signed;

/// Declared decay of the Mahler coefficients past the stored ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MahlerTail {
    /// All further coefficients vanish.
    Zero,
    /// Every further coefficient is divisible by `p^v`.
    AtLeast(u32),
}

/// A continuous function `Z_p -> Z_p[zeta]`.
#[derive(Debug, Clone, PartialEq)]
pub enum ContinuousFn {
    /// `z -> sum_j c_j z^j`.
    Polynomial(Vec<PadicInt>),
    /// `z -> zeta^z` for a p-power root of unity `zeta`.
    Character(CyclotomicElem),
    /// Value `values[c]` on the class `c + p^level Z_p`.
    LocallyConstant { level: u32, values: Vec<CyclotomicElem> },
    /// `z -> sum_k c_k C(z, k)` with a declared tail bound.
    MahlerSeries { coeffs: Vec<CyclotomicElem>, tail: MahlerTail },
    /// Pointwise product.
    Product(Box<ContinuousFn>, Box<ContinuousFn>),
    /// `z -> f(u z)` for a unit `u`.
    Scaled { inner: Box<ContinuousFn>, unit: PadicInt },
    /// `f` on `Z_p^x`, zero on `p Z_p`.
    ZeroExtendedUnits(Box<ContinuousFn>),
}

impl ContinuousFn {
    pub fn polynomial(coeffs: Vec<PadicInt>) -> Self {
        assert!(!coeffs.is_empty(), "use a zero constant for the zero polynomial");
        ContinuousFn::Polynomial(coeffs)
    }

    pub fn constant(ctx: &PadicContext, c: i64) -> Self {
        ContinuousFn::Polynomial(vec![PadicInt::from_int(ctx, c)])
    }

    pub fn monomial(ctx: &PadicContext, degree: usize) -> Self {
        let mut coeffs = vec![PadicInt::zero(ctx); degree + 1];
        coeffs[degree] = PadicInt::one(ctx);
        ContinuousFn::Polynomial(coeffs)
    }

    pub fn character(zeta: CyclotomicElem) -> Result<Self> {
        if !zeta.is_root_of_unity() {
            return Err(Error::NotRootOfUnity { level: zeta.level() });
        }
        Ok(ContinuousFn::Character(zeta))
    }

    /// The character `z -> (zeta_{p^level}^power)^z`.
    pub fn character_power(ctx: &PadicContext, level: u32, power: i64) -> Self {
        ContinuousFn::Character(CyclotomicElem::zeta_power(ctx, level, power as i128))
    }

    pub fn locally_constant(level: u32, values: Vec<CyclotomicElem>) -> Result<Self> {
        let Some(first) = values.first() else {
            return Err(Error::InvalidDescriptor("empty value table".into()));
        };
        let expected = pow_u64(first.p(), level) as usize;
        if values.len() != expected {
            return Err(Error::InvalidDescriptor(format!(
                "level {level} table needs {expected} entries, got {}",
                values.len()
            )));
        }
        Ok(ContinuousFn::LocallyConstant { level, values })
    }

    /// Integer-valued step function from a table of residues.
    pub fn step(ctx: &PadicContext, level: u32, values: &[i64]) -> Result<Self> {
        Self::locally_constant(level, values.iter().map(|&v| CyclotomicElem::from_int(ctx, v)).collect())
    }

    /// Indicator of `class + p^level Z_p`.
    pub fn indicator(ctx: &PadicContext, level: u32, class: u64) -> Self {
        let size = ctx.pow_p(level);
        let values = (0..size)
            .map(|c| CyclotomicElem::from_int(ctx, (c == class % size) as i64))
            .collect();
        ContinuousFn::LocallyConstant { level, values }
    }

    pub fn mahler(coeffs: Vec<CyclotomicElem>, tail: MahlerTail) -> Self {
        assert!(!coeffs.is_empty(), "Mahler series needs at least c_0");
        ContinuousFn::MahlerSeries { coeffs, tail }
    }

    /// The binomial function `z -> C(z, k)`.
    pub fn binomial(ctx: &PadicContext, k: usize) -> Self {
        let mut coeffs = vec![CyclotomicElem::from_int(ctx, 0); k + 1];
        coeffs[k] = CyclotomicElem::from_int(ctx, 1);
        ContinuousFn::MahlerSeries { coeffs, tail: MahlerTail::Zero }
    }

    pub fn zero_extended_units(f: ContinuousFn) -> Self {
        ContinuousFn::ZeroExtendedUnits(Box::new(f))
    }

    /// A representative scalar, used to recover `p` and `N`.
    fn sample(&self) -> PadicInt {
        match self {
            ContinuousFn::Polynomial(c) => c[0],
            ContinuousFn::Character(z) => z.coeffs()[0],
            ContinuousFn::LocallyConstant { values, .. } => values[0].coeffs()[0],
            ContinuousFn::MahlerSeries { coeffs, .. } => coeffs[0].coeffs()[0],
            ContinuousFn::Product(f, _) => f.sample(),
            ContinuousFn::Scaled { unit, .. } => *unit,
            ContinuousFn::ZeroExtendedUnits(f) => f.sample(),
        }
    }

    pub fn p(&self) -> u64 {
        self.sample().p()
    }

    pub fn context(&self) -> PadicContext {
        self.sample().context(1)
    }

    /// Exact value at an integer argument, modulo `p^N`.
    pub fn eval_at(&self, x: i128) -> CyclotomicElem {
        let ctx = self.context();
        match self {
            ContinuousFn::Polynomial(coeffs) => {
                let x = PadicInt::from_i128(&ctx, x);
                let v = coeffs.iter().rev().fold(PadicInt::zero(&ctx), |acc, c| acc * x + *c);
                CyclotomicElem::from_padic(v)
            }
            ContinuousFn::Character(zeta) => {
                let order = pow_u64(ctx.p, zeta.level()) as i128;
                zeta.pow(x.rem_euclid(order) as u64)
            }
            ContinuousFn::LocallyConstant { level, values } => {
                let size = pow_u64(ctx.p, *level) as i128;
                values[x.rem_euclid(size) as usize].clone()
            }
            ContinuousFn::MahlerSeries { coeffs, tail } => {
                let xb = BigInt::from(x);
                let mut acc = CyclotomicElem::zero(&ctx, 0);
                for (k, c) in coeffs.iter().enumerate() {
                    if x >= 0 && k as i128 > x {
                        break;
                    }
                    let b = PadicInt::from_bigint(&ctx, &binomial_signed(&xb, k as u64));
                    acc = &acc + &c.scale(&b);
                }
                let beyond_stored = x < 0 || x >= coeffs.len() as i128;
                match tail {
                    MahlerTail::AtLeast(v) if beyond_stored => acc.truncate(*v),
                    _ => acc,
                }
            }
            ContinuousFn::Product(f, g) => &f.eval_at(x) * &g.eval_at(x),
            ContinuousFn::Scaled { inner, unit } => {
                let ux = unit.residue() as i128 * x;
                let loss = inner.argument_loss();
                inner.eval_at(ux).truncate(ctx.n.saturating_sub(loss))
            }
            ContinuousFn::ZeroExtendedUnits(f) => {
                if x.rem_euclid(ctx.p as i128) == 0 {
                    CyclotomicElem::zero(&ctx, 0)
                } else {
                    f.eval_at(x)
                }
            }
        }
    }

    /// Value at a p-adic argument known modulo `p^prec`; the result's
    /// precision reflects what the argument determines.
    pub fn evaluate(&self, x: &PadicInt) -> CyclotomicElem {
        let value = self.eval_at(x.residue() as i128);
        let mut prec = x.prec().saturating_sub(self.argument_loss());
        if let Some(level) = self.max_level() {
            if x.prec() < level {
                prec = 0;
            }
        }
        if self.has_mahler_tail() {
            if let Some(v) = self.tail_floor() {
                prec = prec.min(v);
            }
        }
        value.truncate(prec)
    }

    /// Digits of the argument consumed by non-polynomial binomial terms.
    pub fn argument_loss(&self) -> u32 {
        match self {
            ContinuousFn::MahlerSeries { coeffs, .. } => factorial_valuation(coeffs.len() as u64 - 1, self.p()),
            ContinuousFn::Product(f, g) => f.argument_loss().max(g.argument_loss()),
            ContinuousFn::Scaled { inner, .. } | ContinuousFn::ZeroExtendedUnits(inner) => inner.argument_loss(),
            _ => 0,
        }
    }

    /// Largest level of a character or step table inside `self`.
    fn max_level(&self) -> Option<u32> {
        match self {
            ContinuousFn::Character(z) => Some(z.level()),
            ContinuousFn::LocallyConstant { level, .. } => Some(*level),
            ContinuousFn::Product(f, g) => match (f.max_level(), g.max_level()) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            },
            ContinuousFn::Scaled { inner, .. } => inner.max_level(),
            ContinuousFn::ZeroExtendedUnits(inner) => Some(inner.max_level().unwrap_or(0).max(1)),
            _ => None,
        }
    }

    fn has_mahler_tail(&self) -> bool {
        match self {
            ContinuousFn::MahlerSeries { tail, .. } => matches!(tail, MahlerTail::AtLeast(_)),
            ContinuousFn::Product(f, g) => f.has_mahler_tail() || g.has_mahler_tail(),
            ContinuousFn::Scaled { inner, .. } | ContinuousFn::ZeroExtendedUnits(inner) => inner.has_mahler_tail(),
            _ => false,
        }
    }

    fn tail_floor(&self) -> Option<u32> {
        match self {
            ContinuousFn::MahlerSeries { tail: MahlerTail::AtLeast(v), .. } => Some(*v),
            ContinuousFn::Product(f, g) => match (f.tail_floor(), g.tail_floor()) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
            ContinuousFn::Scaled { inner, .. } | ContinuousFn::ZeroExtendedUnits(inner) => inner.tail_floor(),
            _ => None,
        }
    }

    /// Integer-valued evaluation; fails when the value carries a `zeta`-part.
    pub fn eval_at_padic(&self, x: i128) -> Result<PadicInt> {
        let v = self.eval_at(x);
        v.as_padic()
            .ok_or_else(|| Error::ValueOutsideRing(format!("f({x}) = {v} is not in Z/p^N")))
    }

    /// Pointwise product, merged into a single representation where possible.
    pub fn multiply(&self, other: &ContinuousFn) -> ContinuousFn {
        use ContinuousFn::*;
        if other.is_constant_one() {
            return self.clone();
        }
        if self.is_constant_one() {
            return other.clone();
        }
        match (self, other) {
            (Polynomial(a), Polynomial(b)) => {
                let zero = a[0].zero_like();
                let mut c = vec![zero; a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        c[i + j] = c[i + j] + *x * *y;
                    }
                }
                Polynomial(c)
            }
            (Character(a), Character(b)) => Character(a * b),
            (LocallyConstant { .. } | Character(_), LocallyConstant { .. } | Character(_)) => {
                let level = self.max_level().unwrap().max(other.max_level().unwrap());
                let size = pow_u64(self.p(), level) as i128;
                let values = (0..size).map(|c| &self.eval_at(c) * &other.eval_at(c)).collect();
                LocallyConstant { level, values }
            }
            _ => Product(Box::new(self.clone()), Box::new(other.clone())),
        }
    }

    fn is_constant_one(&self) -> bool {
        matches!(self, ContinuousFn::Polynomial(c) if c.len() == 1 && c[0].is_one() && c[0].prec() == c[0].n())
    }

    /// `z -> f(u z)` for a unit `u`.
    pub fn scale_argument(&self, u: &PadicInt) -> Result<ContinuousFn> {
        if !u.is_unit() {
            return Err(Error::NotUnit(format!("{u}")));
        }
        use ContinuousFn::*;
        Ok(match self {
            Polynomial(c) => {
                let mut power = u.one_like();
                Polynomial(
                    c.iter()
                        .map(|x| {
                            let out = *x * power;
                            power = power * *u;
                            out
                        })
                        .collect(),
                )
            }
            LocallyConstant { level, values } => {
                let size = pow_u64(self.p(), *level) as u128;
                let u_mod = u.residue() as u128 % size.max(1);
                let values = (0..size)
                    .map(|c| values[((u_mod * c) % size) as usize].clone())
                    .collect();
                LocallyConstant { level: *level, values }
            }
            Character(z) => Character(z.cyclo_pow(u)?),
            Product(f, g) => Product(Box::new(f.scale_argument(u)?), Box::new(g.scale_argument(u)?)),
            ZeroExtendedUnits(f) => ZeroExtendedUnits(Box::new(f.scale_argument(u)?)),
            Scaled { inner, unit } => Scaled { inner: inner.clone(), unit: *unit * *u },
            MahlerSeries { .. } => Scaled { inner: Box::new(self.clone()), unit: *u },
        })
    }

    /// Lower bound for `v_p(c_j)` over all Mahler coefficients with `j >= k`;
    /// `None` when they all vanish.
    pub fn mahler_tail_bound(&self, k: usize) -> Option<u32> {
        mahler::tail_bound(self, k)
    }

    pub fn to_piecewise(&self) -> Result<PiecewisePoly> {
        PiecewisePoly::from_fn(self)
    }
}

pub(crate) fn factorial_valuation(k: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut q = k / p;
    while q > 0 {
        v += q;
        q /= p;
    }
    v.to_u32().expect("small factorial")
}
