use std::collections::BTreeMap;
use std::fmt;

use crate::context::PadicContext;
use crate::cyclotomic::CyclotomicElem;
use crate::error::Result;

/// A Laurent polynomial in `u = q^{1/p^depth}` with cyclotomic coefficients.
#[derive(Clone)]
pub struct LaurentCyclo {
    ctx: PadicContext,
    terms: BTreeMap<i64, CyclotomicElem>,
}

impl LaurentCyclo {
    pub fn zero(ctx: &PadicContext) -> Self {
        LaurentCyclo { ctx: *ctx, terms: BTreeMap::new() }
    }

    /// `coef * u^exp`.
    pub fn monomial(coef: CyclotomicElem, exp: i64) -> Self {
        let ctx = coef.context();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        LaurentCyclo { ctx, terms }
    }

    pub fn constant(coef: CyclotomicElem) -> Self {
        Self::monomial(coef, 0)
    }

    pub fn one(ctx: &PadicContext) -> Self {
        Self::constant(CyclotomicElem::one(ctx, 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CyclotomicElem)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coef, exp)` when `self` is a single term.
    pub fn as_monomial(&self) -> Option<(&CyclotomicElem, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(e, c)| (c, *e))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let sum = match terms.get(e) {
                Some(x) => x + c,
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(e);
            } else {
                terms.insert(*e, sum);
            }
        }
        LaurentCyclo { ctx: self.ctx, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out = out.add(&Self::monomial(c1 * c2, e1 + e2));
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a monomial with a unit coefficient.
    pub fn inverse_monomial(&self) -> Result<Self> {
        let (c, e) = self.as_monomial().ok_or_else(|| {
            crate::error::Error::NotUnit("only monomials are inverted".into())
        })?;
        Ok(Self::monomial(c.inverse()?, -e))
    }

    /// Apply `u^e -> weight(e) u^e` term by term.
    pub fn twist(&self, weight: impl Fn(i64) -> CyclotomicElem) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            out = out.add(&Self::monomial(c * &weight(*e), *e));
        }
        out
    }
}

impl PartialEq for LaurentCyclo {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((e1, c1), (e2, c2))| e1 == e2 && c1 == c2)
    }
}

impl fmt::Debug for LaurentCyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("({c}) u^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
