use rayon::prelude::*;

use crate::context::PadicContext;
use crate::cyclotomic::CyclotomicElem;
use crate::error::{Error, Result};
use crate::functions::ContinuousFn;
use crate::padic::PadicInt;
use crate::qseries::QExpansion;

use super::{KlConstantTerm, Measure};

/// The Eisenstein measure: coefficient `n >= 1` of `mu(f)` is
/// `2 sum_{d | n} [f(d) - a f(ad)]`, the constant term is the KL functional.
#[derive(Debug, Clone, PartialEq)]
pub struct EisensteinMeasure {
    ctx: PadicContext,
    kl: KlConstantTerm,
}

impl EisensteinMeasure {
    pub fn new(ctx: &PadicContext, a: &PadicInt, m_max: u32) -> Result<Self> {
        Ok(EisensteinMeasure { ctx: *ctx, kl: KlConstantTerm::new(a, m_max)? })
    }

    pub fn with_default_cap(ctx: &PadicContext, a: &PadicInt) -> Result<Self> {
        Self::new(ctx, a, KlConstantTerm::DEFAULT_LEVEL_CAP)
    }

    pub fn unit(&self) -> &PadicInt {
        self.kl.unit()
    }

    pub fn constant_term(&self) -> &KlConstantTerm {
        &self.kl
    }

    /// Only the non-constant coefficients; needs no level cap.
    pub fn divisor_part(&self, f: &ContinuousFn) -> QExpansion<CyclotomicElem> {
        let ctx = &self.ctx;
        let a = self.kl.unit();
        let a_int = a.residue() as i128;
        let h: Vec<CyclotomicElem> = (1..=ctx.m)
            .into_par_iter()
            .map(|d| {
                let d = d as i128;
                &f.eval_at(d) - &f.eval_at(a_int * d).scale(a)
            })
            .collect();
        let mut sums = vec![CyclotomicElem::zero(ctx, 0); ctx.m + 1];
        for d in 1..=ctx.m {
            if h[d - 1].is_zero() {
                continue;
            }
            for n in (d..=ctx.m).step_by(d) {
                sums[n] = &sums[n] + &h[d - 1];
            }
        }
        let two = PadicInt::from_int(ctx, 2);
        QExpansion::new(ctx, sums.into_iter().map(|s| s.scale(&two)).collect())
    }
}

impl Measure for EisensteinMeasure {
    type Value = QExpansion<CyclotomicElem>;

    fn context(&self) -> PadicContext {
        self.ctx
    }

    fn eval(&self, f: &ContinuousFn) -> Result<Self::Value> {
        let mut series = self.divisor_part(f);
        series.set_coeff(0, self.kl.eval(f)?);
        Ok(series)
    }
}

/// `mu^(a)(f)` with the default level cap.
pub fn eisenstein_eval(ctx: &PadicContext, a: &PadicInt, f: &ContinuousFn) -> Result<QExpansion<CyclotomicElem>> {
    if !a.is_unit() {
        return Err(Error::NotUnit(format!("{a}")));
    }
    EisensteinMeasure::with_default_cap(ctx, a)?.eval(f)
}
