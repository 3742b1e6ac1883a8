//! p-adic measures on `Z_p` and `Z_p x Z_p`.

mod eisenstein;
mod kl;
mod lvalue;
mod product;

pub use eisenstein::{eisenstein_eval, EisensteinMeasure};
pub use kl::KlConstantTerm;
pub use lvalue::{two_variable_l, TwoVariableL, UnitCharacter};
pub use product::{convolution_nu, nu_moment_series, product_measure, pushforward_halving};

use std::fmt::Debug;

use crate::context::PadicContext;
use crate::cyclotomic::{totient_p_power, CyclotomicElem};
use crate::error::{Error, Result};
use crate::functions::{mahler_coeffs, ContinuousFn};
use crate::padic::PadicInt;
use crate::qseries::QExpansion;

/// Values a measure can take: cyclotomic scalars or q-expansions of them.
pub trait MeasureValue: Clone + Debug + PartialEq + Send + Sync {
    fn zero_in(ctx: &PadicContext) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &CyclotomicElem) -> Self;
    fn truncate(&self, e: u32) -> Self;
    fn agrees(&self, other: &Self) -> bool;
    fn prec(&self) -> u32;
}

impl MeasureValue for CyclotomicElem {
    fn zero_in(ctx: &PadicContext) -> Self {
        CyclotomicElem::zero(ctx, 0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &CyclotomicElem) -> Self {
        self * c
    }
    fn truncate(&self, e: u32) -> Self {
        CyclotomicElem::truncate(self, e)
    }
    fn agrees(&self, other: &Self) -> bool {
        CyclotomicElem::agrees(self, other)
    }
    fn prec(&self) -> u32 {
        CyclotomicElem::prec(self)
    }
}

impl MeasureValue for QExpansion<CyclotomicElem> {
    fn zero_in(ctx: &PadicContext) -> Self {
        QExpansion::zero(ctx)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &CyclotomicElem) -> Self {
        QExpansion::scale(self, c)
    }
    fn truncate(&self, e: u32) -> Self {
        QExpansion::truncate(self, e)
    }
    fn agrees(&self, other: &Self) -> bool {
        QExpansion::agrees(self, other)
    }
    fn prec(&self) -> u32 {
        QExpansion::prec(self)
    }
}

/// A bounded linear functional on continuous functions.
pub trait Measure {
    type Value: MeasureValue;

    fn context(&self) -> PadicContext;

    fn eval(&self, f: &ContinuousFn) -> Result<Self::Value>;
}

/// What is known about Amice coefficients past the stored ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmiceTail {
    /// They vanish: the transform is a polynomial in `T`.
    Zero,
    /// They are integral and nothing more.
    Bounded,
}

/// A measure given by its Amice coefficients `b_k = mu(C(x, k))`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmiceSeries<V> {
    ctx: PadicContext,
    coeffs: Vec<V>,
    tail: AmiceTail,
}

impl<V: MeasureValue> AmiceSeries<V> {
    pub fn new(ctx: &PadicContext, coeffs: Vec<V>, tail: AmiceTail) -> Self {
        assert!(!coeffs.is_empty(), "Amice series needs b_0");
        AmiceSeries { ctx: *ctx, coeffs, tail }
    }

    pub fn coeffs(&self) -> &[V] {
        &self.coeffs
    }

    pub fn tail(&self) -> AmiceTail {
        self.tail
    }

    /// `sum_k c_k(f) b_k`, with the precision the tails can certify.
    pub fn eval_to(&self, f: &ContinuousFn) -> Result<V> {
        let k_max = self.coeffs.len() - 1;
        let c = mahler_coeffs(f, k_max);
        let mut acc = V::zero_in(&self.ctx);
        for (ck, bk) in c.iter().zip(&self.coeffs) {
            if !ck.is_zero() {
                acc = acc.add(&bk.scale(ck));
            }
        }
        let bound = match self.tail {
            AmiceTail::Zero => None,
            AmiceTail::Bounded => f.mahler_tail_bound(k_max + 1),
        };
        Ok(match bound {
            Some(v) => acc.truncate(v),
            None => acc,
        })
    }

    /// `A_mu(zeta - 1)` for a p-power root of unity `zeta`.
    pub fn amice_at_character(&self, zeta: &CyclotomicElem) -> Result<V> {
        if !zeta.is_root_of_unity() {
            return Err(Error::NotRootOfUnity { level: zeta.level() });
        }
        let ctx = zeta.context();
        let t = zeta - &CyclotomicElem::one(&ctx, 0);
        let mut power = CyclotomicElem::one(&ctx, 0);
        let mut acc = V::zero_in(&self.ctx);
        for b in &self.coeffs {
            acc = acc.add(&b.scale(&power));
            power = &power * &t;
        }
        if self.tail == AmiceTail::Bounded && !t.is_zero() {
            // (zeta - 1)^phi is p times a unit
            let phi = totient_p_power(ctx.p, zeta.level());
            acc = acc.truncate((self.coeffs.len() / phi) as u32);
        }
        Ok(acc)
    }
}

impl<V: MeasureValue> Measure for AmiceSeries<V> {
    type Value = V;

    fn context(&self) -> PadicContext {
        self.ctx
    }

    /// Strict evaluation: fails unless the tails certify all `N` digits.
    fn eval(&self, f: &ContinuousFn) -> Result<V> {
        let v = self.eval_to(f)?;
        let n = f.context().n;
        if v.prec() < n && self.tail == AmiceTail::Bounded {
            return Err(Error::PrecisionExhausted(format!(
                "Amice series with {} coefficients certifies only {} digits",
                self.coeffs.len(),
                v.prec()
            )));
        }
        Ok(v)
    }
}

/// Point mass at an integer.
#[derive(Debug, Clone, PartialEq)]
pub struct Dirac {
    point: PadicInt,
}

impl Dirac {
    pub fn new(point: PadicInt) -> Self {
        Dirac { point }
    }

    pub fn point(&self) -> &PadicInt {
        &self.point
    }

    /// `b_k = C(c, k)`; a polynomial in `T` once `K >= c`.
    pub fn amice(&self, k_max: usize) -> AmiceSeries<CyclotomicElem> {
        let ctx = self.context();
        let c = self.point.residue() as i128;
        let coeffs = (0..=k_max).map(|k| ContinuousFn::binomial(&ctx, k).eval_at(c)).collect();
        let tail = if c <= k_max as i128 { AmiceTail::Zero } else { AmiceTail::Bounded };
        AmiceSeries::new(&ctx, coeffs, tail)
    }
}

impl Measure for Dirac {
    type Value = CyclotomicElem;

    fn context(&self) -> PadicContext {
        self.point.context(1)
    }

    /// `f(c)` at the integer representative `c` of the point.
    fn eval(&self, f: &ContinuousFn) -> Result<CyclotomicElem> {
        Ok(f.eval_at(self.point.residue() as i128))
    }
}

/// `sum_i w_i mu_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Combination<M> {
    pub terms: Vec<(CyclotomicElem, M)>,
}

impl<M: Measure> Measure for Combination<M> {
    type Value = M::Value;

    fn context(&self) -> PadicContext {
        self.terms.first().expect("empty combination").1.context()
    }

    fn eval(&self, f: &ContinuousFn) -> Result<M::Value> {
        let mut acc = M::Value::zero_in(&self.context());
        for (w, mu) in &self.terms {
            acc = acc.add(&mu.eval(f)?.scale(w));
        }
        Ok(acc)
    }
}

/// `b_k = mu(C(x, k))` for `k <= K`.
pub fn amice_transform<M: Measure>(mu: &M, k_max: usize) -> Result<AmiceSeries<M::Value>> {
    let ctx = mu.context();
    let coeffs = (0..=k_max)
        .map(|k| mu.eval(&ContinuousFn::binomial(&ctx, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AmiceSeries::new(&ctx, coeffs, AmiceTail::Bounded))
}

/// `mu(chi_zeta)`.
pub fn eval_at_character<M: Measure>(mu: &M, zeta: &CyclotomicElem) -> Result<M::Value> {
    mu.eval(&ContinuousFn::character(zeta.clone())?)
}
