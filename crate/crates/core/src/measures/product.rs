use crate::action::act;
use crate::context::{pow_u64, PadicContext};
use crate::cyclotomic::CyclotomicElem;
use crate::eisenstein::regularized_eisenstein;
use crate::error::{Error, Result};
use crate::functions::{ContinuousFn, TwoVarFn};
use crate::padic::PadicInt;
use crate::qseries::QExpansion;

use super::{EisensteinMeasure, Measure, MeasureValue};

/// Extend a bilinear form on pairs of functions to tensor sums.
pub fn product_measure<V: MeasureValue>(
    ctx: &PadicContext,
    bilinear: impl Fn(&ContinuousFn, &ContinuousFn) -> Result<V>,
    f: &TwoVarFn,
) -> Result<V> {
    let mut acc = V::zero_in(ctx);
    for (x_part, y_part) in &f.terms {
        acc = acc.add(&bilinear(x_part, y_part)?);
    }
    Ok(acc)
}

/// `nu(f ⊗ g) = act(g, mu^(a)(f))`, extended to tensor sums.
pub fn convolution_nu(mu: &EisensteinMeasure, f: &TwoVarFn) -> Result<QExpansion<CyclotomicElem>> {
    product_measure(&mu.context(), |x_part, y_part| act(y_part, &mu.eval(x_part)?), f)
}

/// `(1 - a^{s+1}) theta^t 2 G_{s+1}` for odd `s`.
pub fn nu_moment_series(ctx: &PadicContext, a: &PadicInt, s: u32, t: u32) -> Result<QExpansion<PadicInt>> {
    if s % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "s = {s}: the moment series is defined for odd s (even weight s + 1)"
        )));
    }
    Ok(regularized_eisenstein(ctx, a, s + 1)?.theta_pow(t))
}

/// `g(xy)` as a tensor sum `sum_i a_i(x) b_i(y)`.
fn halve(g: &ContinuousFn) -> Result<Vec<(ContinuousFn, ContinuousFn)>> {
    let ctx = g.context();
    let classes = |level: u32| 0..pow_u64(ctx.p, level);
    Ok(match g {
        ContinuousFn::Polynomial(c) => c
            .iter()
            .enumerate()
            .filter(|(_, ct)| !ct.is_zero())
            .map(|(t, ct)| {
                let mut coeffs = vec![PadicInt::zero(&ctx); t + 1];
                coeffs[t] = *ct;
                (ContinuousFn::Polynomial(coeffs), ContinuousFn::monomial(&ctx, t))
            })
            .collect(),
        ContinuousFn::Character(zeta) => classes(zeta.level())
            .map(|c| (ContinuousFn::indicator(&ctx, zeta.level(), c), ContinuousFn::Character(zeta.pow(c))))
            .collect(),
        ContinuousFn::LocallyConstant { level, values } => {
            let size = pow_u64(ctx.p, *level);
            classes(*level)
                .map(|c| {
                    let table = (0..size).map(|y| values[((c as u128 * y as u128) % size as u128) as usize].clone());
                    let y_part = ContinuousFn::LocallyConstant { level: *level, values: table.collect() };
                    (ContinuousFn::indicator(&ctx, *level, c), y_part)
                })
                .collect()
        }
        ContinuousFn::Product(g1, g2) => {
            let (h1, h2) = (halve(g1)?, halve(g2)?);
            let mut out = Vec::with_capacity(h1.len() * h2.len());
            for (a1, b1) in &h1 {
                for (a2, b2) in &h2 {
                    out.push((a1.multiply(a2), b1.multiply(b2)));
                }
            }
            out
        }
        ContinuousFn::Scaled { inner, unit } => halve(inner)?
            .into_iter()
            .map(|(a, b)| Ok((a, b.scale_argument(unit)?)))
            .collect::<Result<_>>()?,
        ContinuousFn::ZeroExtendedUnits(inner) => halve(inner)?
            .into_iter()
            .map(|(a, b)| (ContinuousFn::zero_extended_units(a), ContinuousFn::zero_extended_units(b)))
            .collect(),
        ContinuousFn::MahlerSeries { .. } => {
            return Err(Error::UnsupportedShape("g(xy) for a Mahler series has no finite tensor form".into()))
        }
    })
}

/// `F -> F o (x, y) -> (x, xy)`, re-expressed as a tensor sum.
pub fn pushforward_halving(f: &TwoVarFn) -> Result<TwoVarFn> {
    let mut terms = Vec::new();
    for (x_part, y_part) in &f.terms {
        for (a, b) in halve(y_part)? {
            terms.push((x_part.multiply(&a), b));
        }
    }
    Ok(TwoVarFn::new(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::Dirac;

    fn ctx() -> PadicContext {
        PadicContext::new(5, 12, 20).unwrap()
    }

    #[test]
    fn dirac_pair_on_pure_tensor() {
        let c = ctx();
        let (d1, d2) = (Dirac::new(PadicInt::from_int(&c, 3)), Dirac::new(PadicInt::from_int(&c, 7)));
        let bilinear = |f: &ContinuousFn, g: &ContinuousFn| Ok(&d1.eval(f)? * &d2.eval(g)?);
        let f = TwoVarFn::monomial(&c, 2, 1);
        assert_eq!(product_measure(&c, bilinear, &f).unwrap(), CyclotomicElem::from_int(&c, 63));
        assert!(product_measure(&c, bilinear, &TwoVarFn::default()).unwrap().is_zero());
    }

    #[test]
    fn nu_weight_two_example() {
        let c = ctx();
        let two = PadicInt::from_int(&c, 2);
        let mu = EisensteinMeasure::with_default_cap(&c, &two).unwrap();
        let nu = convolution_nu(&mu, &TwoVarFn::monomial(&c, 1, 1)).unwrap().to_padic().unwrap();
        assert_eq!(*nu.coeff(2), PadicInt::from_int(&c, -36));
        assert_eq!(nu, nu_moment_series(&c, &two, 1, 1).unwrap());
        let t0 = convolution_nu(&mu, &TwoVarFn::monomial(&c, 3, 0)).unwrap();
        assert_eq!(t0, mu.eval(&ContinuousFn::monomial(&c, 3)).unwrap());
        let s0 = convolution_nu(&mu, &TwoVarFn::monomial(&c, 0, 2)).unwrap();
        assert!(s0.coeff(0).is_zero());
    }

    #[test]
    fn halving_examples() {
        let c = ctx();
        let f = TwoVarFn::monomial(&c, 2, 3);
        assert_eq!(pushforward_halving(&f).unwrap(), TwoVarFn::monomial(&c, 5, 3));
        let g = TwoVarFn::pure(ContinuousFn::indicator(&c, 1, 2), ContinuousFn::constant(&c, 1));
        assert_eq!(pushforward_halving(&g).unwrap(), g);
    }

    #[test]
    fn halving_is_composition_on_a_grid() {
        let c = ctx();
        let shapes = vec![
            TwoVarFn::pure(ContinuousFn::monomial(&c, 1), ContinuousFn::character_power(&c, 1, 1)),
            TwoVarFn::pure(ContinuousFn::constant(&c, 2), ContinuousFn::indicator(&c, 2, 7)),
            TwoVarFn::pure(
                ContinuousFn::monomial(&c, 1),
                ContinuousFn::zero_extended_units(
                    ContinuousFn::monomial(&c, 2).multiply(&ContinuousFn::character_power(&c, 2, 3)),
                ),
            ),
        ];
        for f in &shapes {
            let h = pushforward_halving(f).unwrap();
            for x in 0..25i128 {
                for y in 0..25i128 {
                    assert_eq!(h.eval_at(x, y, &c), f.eval_at(x, x * y, &c), "{f:?} at ({x},{y})");
                }
            }
        }
        let mahler = TwoVarFn::pure(ContinuousFn::monomial(&c, 1), ContinuousFn::binomial(&c, 2));
        assert!(matches!(pushforward_halving(&mahler), Err(Error::UnsupportedShape(_))));
    }
}
