use crate::context::{pow_u64, PadicContext};
use crate::cyclotomic::CyclotomicElem;
use crate::error::{Error, Result};
use crate::functions::{ContinuousFn, TwoVarFn};
use crate::padic::mod_inverse;
use crate::qseries::QExpansion;

use super::{convolution_nu, EisensteinMeasure, Measure};

/// A finite-order character of `Z_p^x`, trivial on `1 + p^level Z_p`,
/// given by its values on `(Z/p^level)^x`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCharacter {
    level: u32,
    values: Vec<CyclotomicElem>,
}

impl UnitCharacter {
    /// Entries at non-units are ignored.
    pub fn new(level: u32, values: Vec<CyclotomicElem>) -> Result<Self> {
        let Some(first) = values.first() else {
            return Err(Error::InvalidCharacter("empty table".into()));
        };
        let p = first.p();
        let ctx = first.context();
        if level == 0 {
            return Err(Error::InvalidCharacter("characters of Z_p^x need level >= 1".into()));
        }
        let size = pow_u64(p, level);
        if values.len() as u64 != size {
            return Err(Error::InvalidCharacter(format!("level {level} needs {size} entries")));
        }
        let zero = CyclotomicElem::zero(&ctx, 0);
        let values: Vec<_> = values
            .into_iter()
            .enumerate()
            .map(|(c, v)| if c as u64 % p == 0 { zero.clone() } else { v })
            .collect();
        if !values[1 % size as usize].is_one() {
            return Err(Error::InvalidCharacter(format!("chi(1) = {} is not 1", values[1])));
        }
        let units: Vec<u64> = (1..size).filter(|c| c % p != 0).collect();
        for &x in &units {
            for &y in &units {
                let xy = ((x as u128 * y as u128) % size as u128) as usize;
                if values[xy] != &values[x as usize] * &values[y as usize] {
                    return Err(Error::InvalidCharacter(format!("chi({x} * {y}) != chi({x}) chi({y})")));
                }
            }
        }
        Ok(UnitCharacter { level, values })
    }

    pub fn trivial(ctx: &PadicContext) -> Self {
        let values = (0..ctx.p).map(|c| CyclotomicElem::from_int(ctx, (c != 0) as i64)).collect();
        UnitCharacter { level: 1, values }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn values(&self) -> &[CyclotomicElem] {
        &self.values
    }

    fn p(&self) -> u64 {
        self.values[0].p()
    }

    /// `chi(x)` for an integer `x`, zero when `p | x`.
    pub fn at(&self, x: i128) -> CyclotomicElem {
        let size = pow_u64(self.p(), self.level) as i128;
        self.values[x.rem_euclid(size) as usize].clone()
    }

    fn at_level(&self, level: u32) -> Self {
        let size = pow_u64(self.p(), level);
        UnitCharacter { level, values: (0..size as i128).map(|c| self.at(c)).collect() }
    }

    /// `chi / other`.
    pub fn ratio(&self, other: &UnitCharacter) -> UnitCharacter {
        let level = self.level.max(other.level);
        let (a, b) = (self.at_level(level), other.at_level(level));
        let size = pow_u64(self.p(), level) as i128;
        let values = (0..size)
            .map(|c| match mod_inverse(c, size) {
                Some(inv) if c % self.p() as i128 != 0 => &a.at(c) * &b.at(inv),
                _ => a.at(c),
            })
            .collect();
        UnitCharacter { level, values }
    }

    /// The character on `Z_p^x`, extended by zero to `Z_p`.
    pub fn extended_by_zero(&self) -> ContinuousFn {
        ContinuousFn::zero_extended_units(ContinuousFn::LocallyConstant { level: self.level, values: self.values.clone() })
    }
}

/// The two-variable L-series attached to a pair of characters.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoVariableL {
    /// `1 - chi1(a) a / chi2(a)`.
    pub factor: CyclotomicElem,
    /// `nu(ZeroExt(chi1/chi2)(x) ZeroExt(chi2)(y))`.
    pub nu: QExpansion<CyclotomicElem>,
    /// `nu / factor`.
    pub series: QExpansion<CyclotomicElem>,
    /// Constant term of `series`.
    pub constant: CyclotomicElem,
}

pub fn two_variable_l(mu: &EisensteinMeasure, chi1: &UnitCharacter, chi2: &UnitCharacter) -> Result<TwoVariableL> {
    let cap = mu.constant_term().level_cap();
    for chi in [chi1, chi2] {
        if chi.level() > cap {
            return Err(Error::InvalidCharacter(format!(
                "character of level {} exceeds the level cap {cap}",
                chi.level()
            )));
        }
    }
    let a = mu.unit();
    let ratio = chi1.ratio(chi2);
    let factor = &CyclotomicElem::one(&mu.context(), 0) - &ratio.at(a.residue() as i128).scale(a);
    if !factor.is_unit() {
        return Err(Error::EulerFactorNotInvertible(format!("{factor}")));
    }
    let f = TwoVarFn::pure(ratio.extended_by_zero(), chi2.extended_by_zero());
    let nu = convolution_nu(mu, &f)?;
    let inverse = factor.inverse()?;
    let series = nu.scale(&inverse);
    let constant = series.coeff(0).clone();
    Ok(TwoVariableL { factor, nu, series, constant })
}
