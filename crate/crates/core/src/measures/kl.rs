use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::context::pow_u64;
use crate::cyclotomic::CyclotomicElem;
use crate::error::{Error, Result};
use crate::functions::{ContinuousFn, PieceTerm};
use crate::padic::PadicInt;
use crate::rational::{bernoulli_poly, reduce_fraction, zeta_one_minus};

/// The constant-term functional of the Eisenstein measure.
///
/// It is a multiple of the regularized Bernoulli distribution
/// `E_{1,a}(U) = E_1(U) - a E_1(a^{-1} U)`, `E_1(c + p^m Z_p) = B_1(c/p^m)`.
/// Polynomial densities use `z^{k-1} dE_{1,a} = dE_{k,a} / k`, so every
/// value is an exact rational before reduction. The scalar multiple is fixed
/// at construction by matching the weight 2 and 4 moments against
/// `(1 - a^k) zeta(1 - k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KlConstantTerm {
    a: PadicInt,
    a_int: BigInt,
    m_max: u32,
    sign: i32,
}

impl KlConstantTerm {
    pub const DEFAULT_LEVEL_CAP: u32 = 3;

    pub fn new(a: &PadicInt, m_max: u32) -> Result<Self> {
        if !a.is_unit() {
            return Err(Error::NotUnit(format!("{a}")));
        }
        let mut kl = KlConstantTerm { a: *a, a_int: BigInt::from(a.residue()), m_max, sign: 1 };
        let raw: Vec<_> = [2u32, 4].iter().map(|&k| (k, kl.raw_moment(k))).collect();
        let sign = [-1, 1].into_iter().find(|&s| {
            raw.iter().all(|(k, r)| {
                let oracle = (BigRational::one() - kl.a_pow(*k)) * zeta_one_minus(*k as usize);
                r * BigRational::from_integer(BigInt::from(s)) == oracle
            })
        });
        kl.sign = sign.ok_or_else(|| {
            Error::InvalidArgument(format!("constant-term calibration failed for a = {a}"))
        })?;
        Ok(kl)
    }

    pub fn unit(&self) -> &PadicInt {
        &self.a
    }

    pub fn level_cap(&self) -> u32 {
        self.m_max
    }

    /// Calibrated scalar multiple of `E_{1,a}`.
    pub fn sign(&self) -> i32 {
        self.sign
    }

    fn a_pow(&self, k: u32) -> BigRational {
        BigRational::from_integer(self.a_int.pow(k))
    }

    /// `E_{k,a}(class + p^level Z_p)`.
    fn regularized_bernoulli(&self, k: u32, class: u64, level: u32) -> BigRational {
        let p = self.a.p();
        let size = pow_u64(p, level);
        let a_inv = if size == 1 {
            0
        } else {
            let inv = self.a_int.extended_gcd(&BigInt::from(size)).x;
            let inv: BigInt = inv.mod_floor(&BigInt::from(size));
            u64::try_from(inv).expect("small residue")
        };
        let moved = ((class as u128 * a_inv as u128) % size as u128) as u64;
        let denom = BigInt::from(size);
        let b = |c: u64| bernoulli_poly(k as usize, &BigRational::new(BigInt::from(c), denom.clone()));
        let scale = BigRational::from_integer(denom.pow(k - 1));
        scale * (b(class) - self.a_pow(k) * b(moved))
    }

    fn raw_moment(&self, k: u32) -> BigRational {
        self.regularized_bernoulli(k, 0, 0) / BigRational::from_integer(BigInt::from(k))
    }

    fn term_value(&self, t: &PieceTerm, level: u32) -> BigRational {
        let mut acc = BigRational::zero();
        for (j, r) in t.poly.coeffs().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let k = j as u32 + 1;
            acc += r * self.regularized_bernoulli(k, t.class, level) / BigRational::from_integer(BigInt::from(k));
        }
        acc * BigRational::from_integer(BigInt::from(self.sign))
    }

    /// Exact rational value on `z^{k-1}`, i.e. `(1 - a^k) zeta(1 - k)`.
    pub fn moment_rational(&self, k: u32) -> BigRational {
        self.raw_moment(k) * BigRational::from_integer(BigInt::from(self.sign))
    }

    /// The value on `z^{k-1}`, reduced into `Z/p^N`.
    pub fn moment(&self, k: u32) -> Result<PadicInt> {
        let r = self.moment_rational(k);
        reduce_fraction(r.numer(), r.denom(), &self.a.context(1))
    }

    /// Value on a function with a finite piecewise-polynomial form.
    pub fn eval(&self, f: &ContinuousFn) -> Result<CyclotomicElem> {
        let pw = f.to_piecewise()?;
        if pw.level > self.m_max {
            return Err(Error::PrecisionExhausted(format!(
                "function needs level {} but the constant term is capped at level {}",
                pw.level, self.m_max
            )));
        }
        let ctx = self.a.context(1);
        if pw.terms.is_empty() {
            return Ok(CyclotomicElem::zero(&ctx, 0));
        }
        let values: Vec<BigRational> = pw.terms.iter().map(|t| self.term_value(t, pw.level)).collect();
        let denom = values.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let level = pw.terms.iter().map(|t| t.coef.level()).max().unwrap_or(0);
        let width = crate::cyclotomic::totient_p_power(ctx.p, level);
        let mut acc = vec![BigInt::zero(); width];
        for (t, v) in pw.terms.iter().zip(&values) {
            let scaled = v.numer() * (&denom / v.denom());
            for (slot, c) in acc.iter_mut().zip(t.coef.lift(level).coeffs()) {
                if !c.is_zero() {
                    *slot += &scaled * BigInt::from(c.centered());
                }
            }
        }
        let coords = acc
            .iter()
            .map(|num| reduce_fraction(num, &denom, &ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(CyclotomicElem::from_coeffs(level, coords))
    }
}
