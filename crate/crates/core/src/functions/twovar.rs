use crate::cyclotomic::CyclotomicElem;
use crate::PadicContext;

use super::ContinuousFn;

/// `F(x, y) = sum_i f_i(x) g_i(y)`, kept as an explicit tensor sum.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TwoVarFn {
    pub terms: Vec<(ContinuousFn, ContinuousFn)>,
}

impl TwoVarFn {
    pub fn new(terms: Vec<(ContinuousFn, ContinuousFn)>) -> Self {
        TwoVarFn { terms }
    }

    pub fn pure(f: ContinuousFn, g: ContinuousFn) -> Self {
        TwoVarFn { terms: vec![(f, g)] }
    }

    /// `x^s y^t`.
    pub fn monomial(ctx: &PadicContext, s: usize, t: usize) -> Self {
        Self::pure(ContinuousFn::monomial(ctx, s), ContinuousFn::monomial(ctx, t))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TwoVarFn) -> TwoVarFn {
        TwoVarFn { terms: self.terms.iter().chain(&other.terms).cloned().collect() }
    }

    pub fn eval_at(&self, x: i128, y: i128, ctx: &PadicContext) -> CyclotomicElem {
        self.terms.iter().fold(CyclotomicElem::zero(ctx, 0), |acc, (f, g)| {
            &acc + &(&f.eval_at(x) * &g.eval_at(y))
        })
    }
}
