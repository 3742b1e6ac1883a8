use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::context::pow_u64;
use crate::cyclotomic::CyclotomicElem;
use crate::error::{Error, Result};
use crate::rational::{reduce_rational, RationalPoly};

use super::{ContinuousFn, MahlerTail};

/// `coef * poly(z)` on the class `class + p^level Z_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PieceTerm {
    pub class: u64,
    pub coef: CyclotomicElem,
    pub poly: RationalPoly,
}

/// A function written as a sum of polynomials supported on residue classes
/// of a single level. Every polynomial is integer-valued on integers.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePoly {
    pub p: u64,
    pub level: u32,
    pub terms: Vec<PieceTerm>,
}

impl PiecewisePoly {
    pub fn from_fn(f: &ContinuousFn) -> Result<Self> {
        let p = f.p();
        let ctx = f.context();
        let whole = |coef: CyclotomicElem, poly: RationalPoly| PieceTerm { class: 0, coef, poly };
        Ok(match f {
            ContinuousFn::Polynomial(coeffs) => {
                let one = CyclotomicElem::one(&ctx, 0);
                let terms = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| whole(one.scale(c), RationalPoly::monomial(j)))
                    .collect();
                PiecewisePoly { p, level: 0, terms }
            }
            ContinuousFn::Character(zeta) => {
                let level = zeta.level();
                let terms = (0..pow_u64(p, level))
                    .map(|c| PieceTerm { class: c, coef: zeta.pow(c), poly: RationalPoly::one() })
                    .collect();
                PiecewisePoly { p, level, terms }
            }
            ContinuousFn::LocallyConstant { level, values } => {
                let terms = values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| PieceTerm { class: c as u64, coef: v.clone(), poly: RationalPoly::one() })
                    .collect();
                PiecewisePoly { p, level: *level, terms }
            }
            ContinuousFn::MahlerSeries { coeffs, tail: MahlerTail::Zero } => {
                let terms = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| whole(c.clone(), RationalPoly::binomial(k)))
                    .collect();
                PiecewisePoly { p, level: 0, terms }
            }
            ContinuousFn::MahlerSeries { .. } => {
                return Err(Error::UnsupportedShape(
                    "a Mahler series with an infinite tail has no finite piecewise form".into(),
                ))
            }
            ContinuousFn::Product(f, g) => Self::from_fn(f)?.multiply(&Self::from_fn(g)?),
            ContinuousFn::Scaled { inner, unit } => {
                let base = Self::from_fn(inner)?;
                let size = pow_u64(p, base.level);
                let u = BigInt::from(unit.residue());
                let u_inv = if size == 1 { 0 } else { unit.inverse()?.residue() as u128 % size as u128 };
                let terms = base
                    .terms
                    .into_iter()
                    .map(|t| PieceTerm {
                        class: ((t.class as u128 * u_inv) % size as u128) as u64,
                        coef: t.coef,
                        poly: t.poly.compose_scale(&u),
                    })
                    .collect();
                PiecewisePoly { p, level: base.level, terms }
            }
            ContinuousFn::ZeroExtendedUnits(inner) => {
                let base = Self::from_fn(inner)?;
                let refined = base.refine(base.level.max(1));
                let terms = refined.terms.into_iter().filter(|t| t.class % p != 0).collect();
                PiecewisePoly { p, level: refined.level, terms }
            }
        })
    }

    /// Rewrite at a finer level.
    pub fn refine(&self, level: u32) -> Self {
        assert!(level >= self.level);
        let step = pow_u64(self.p, self.level);
        let copies = pow_u64(self.p, level - self.level);
        let terms = self
            .terms
            .iter()
            .flat_map(|t| {
                (0..copies).map(move |i| PieceTerm { class: t.class + i * step, coef: t.coef.clone(), poly: t.poly.clone() })
            })
            .collect();
        PiecewisePoly { p: self.p, level, terms }
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let level = self.level.max(other.level);
        let a = self.refine(level);
        let b = other.refine(level);
        let mut by_class: BTreeMap<u64, Vec<&PieceTerm>> = BTreeMap::new();
        for t in &b.terms {
            by_class.entry(t.class).or_default().push(t);
        }
        let mut terms = Vec::new();
        for s in &a.terms {
            for t in by_class.get(&s.class).into_iter().flatten() {
                terms.push(PieceTerm { class: s.class, coef: &s.coef * &t.coef, poly: &s.poly * &t.poly });
            }
        }
        PiecewisePoly { p: self.p, level, terms }
    }

    /// Value at an integer, for cross-checking against the source function.
    pub fn eval_at(&self, x: i128, like: &CyclotomicElem) -> Result<CyclotomicElem> {
        let ctx = like.context();
        let size = pow_u64(self.p, self.level) as i128;
        let class = x.rem_euclid(size) as u64;
        let xr = BigRational::from_integer(BigInt::from(x));
        let mut acc = CyclotomicElem::zero(&ctx, 0);
        for t in self.terms.iter().filter(|t| t.class == class) {
            let v = reduce_rational(&t.poly.eval(&xr), &ctx)?;
            acc = &acc + &t.coef.scale(&v);
        }
        Ok(acc)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.iter().filter_map(|t| t.poly.degree()).max().unwrap_or(0)
    }
}
