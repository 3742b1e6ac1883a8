//! The action of continuous functions and of p-power roots of unity on
//! q-expansions: `f . sum a_n q^n = sum f(n) a_n q^n`.
//!
//! Roots of unity act on the left, `zeta . g = sum zeta^n a_n q^n`, so the
//! tangent direction `1 + eps` acts by `g + eps theta(g)`. The opposite
//! convention, without the inverse, differentiates to `-theta`.

use crate::coeff::Coeff;
use crate::context::PadicContext;
use crate::cyclotomic::CyclotomicElem;
use crate::dual::DualNumber;
use crate::error::{Error, Result};
use crate::functions::ContinuousFn;
use crate::measures::{AmiceSeries, AmiceTail, Measure};
use crate::padic::PadicInt;
use crate::qseries::QExpansion;

/// A p-adic context together with the deepest cyclotomic level allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActionContext {
    pub ctx: PadicContext,
    pub max_level: u32,
}

impl ActionContext {
    pub fn new(ctx: PadicContext, max_level: u32) -> Self {
        ActionContext { ctx, max_level }
    }
}

/// `sum a_n q^n -> sum f(n) a_n q^n`.
pub fn act<S: Coeff>(f: &ContinuousFn, g: &QExpansion<S>) -> Result<QExpansion<S>> {
    let values = (0..g.coeffs().len())
        .map(|n| S::from_cyclo(&f.eval_at(n as i128)))
        .collect::<Result<Vec<_>>>()?;
    Ok(g.map_indexed(|n, a| values[n].clone() * a.clone()))
}

/// `sum a_n q^n -> sum u^n a_n q^n` for any coefficient `u`.
pub fn act_unit_power<S: Coeff>(u: &S, g: &QExpansion<S>) -> QExpansion<S> {
    let mut powers = Vec::with_capacity(g.coeffs().len());
    let mut acc = u.one_like();
    for _ in 0..g.coeffs().len() {
        powers.push(acc.clone());
        acc = acc * u.clone();
    }
    g.map_indexed(|n, a| powers[n].clone() * a.clone())
}

/// `sum a_n q^n -> sum zeta^n a_n q^n` for a p-power root of unity.
pub fn act_character(actx: &ActionContext, zeta: &CyclotomicElem, g: &QExpansion<CyclotomicElem>) -> Result<QExpansion<CyclotomicElem>> {
    if zeta.level() > actx.max_level || !zeta.is_root_of_unity() {
        return Err(Error::NotRootOfUnity { level: zeta.level() });
    }
    Ok(act_unit_power(zeta, g))
}

/// `g` acted on by `1 + eps`; its `eps`-part is `theta(g)`.
pub fn derivative_check(g: &QExpansion<PadicInt>) -> QExpansion<DualNumber<PadicInt>> {
    let lifted = g.map_indexed(|_, a| DualNumber::real(*a));
    let tangent = DualNumber::one_plus_eps(&PadicInt::one(g.context()));
    act_unit_power(&tangent, &lifted)
}

/// The measure `f -> act(f, g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionMeasure {
    g: QExpansion<CyclotomicElem>,
}

pub fn psi(g: &QExpansion<CyclotomicElem>) -> ActionMeasure {
    ActionMeasure { g: g.clone() }
}

impl ActionMeasure {
    pub fn series(&self) -> &QExpansion<CyclotomicElem> {
        &self.g
    }

    /// Amice coefficients `b_k = act(C(x, k), g)`: coefficient `n` of `b_k` is
    /// `C(n, k) a_n`, which vanishes once `k > M`.
    pub fn amice(&self, k_max: usize) -> Result<AmiceSeries<QExpansion<CyclotomicElem>>> {
        let ctx = *self.g.context();
        let coeffs = (0..=k_max)
            .map(|k| act(&ContinuousFn::binomial(&ctx, k), &self.g))
            .collect::<Result<Vec<_>>>()?;
        let tail = if k_max >= ctx.m { AmiceTail::Zero } else { AmiceTail::Bounded };
        Ok(AmiceSeries::new(&ctx, coeffs, tail))
    }
}

impl Measure for ActionMeasure {
    type Value = QExpansion<CyclotomicElem>;

    fn context(&self) -> PadicContext {
        *self.g.context()
    }

    fn eval(&self, f: &ContinuousFn) -> Result<Self::Value> {
        act(f, &self.g)
    }
}
