//! Exact rational utilities: p-adic reduction of rationals, Bernoulli
//! numbers and polynomials, and small rational polynomials.

use std::ops::{Add, Mul};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::context::PadicContext;
use crate::error::{Error, Result};
use crate::padic::{bigint_valuation, PadicInt};

/// Reduce an exact rational into `Z/p^N`.
///
/// The value must be p-integral. Any power of `p` shared by numerator and
/// denominator is cancelled and costs that many digits of precision, so a
/// normalized rational always reduces at full precision.
pub fn reduce_fraction(num: &BigInt, den: &BigInt, ctx: &PadicContext) -> Result<PadicInt> {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return Ok(PadicInt::zero(ctx));
    }
    let vd = bigint_valuation(den, ctx.p);
    let vn = bigint_valuation(num, ctx.p);
    if vd > vn {
        return Err(Error::NotPIntegral(format!("{num}/{den} has a pole at p = {}", ctx.p)));
    }
    if vd >= ctx.n {
        return Err(Error::PrecisionExhausted(format!(
            "cancelling p^{vd} from {num}/{den} leaves no digits at N = {}",
            ctx.n
        )));
    }
    let pd = BigInt::from(ctx.p).pow(vd);
    let num = num / &pd;
    let den = den / &pd;
    let prec = ctx.n - vd;
    let modulus = BigInt::from(ctx.pow_p(prec));
    let den_inv = bigint_mod_inverse(&den.mod_floor(&modulus), &modulus);
    let value = (num * den_inv).mod_floor(&modulus);
    let v: i128 = value.try_into().expect("residue below 2^62");
    Ok(PadicInt::with_prec(ctx.p, ctx.n, prec, v))
}

pub fn reduce_rational(r: &BigRational, ctx: &PadicContext) -> Result<PadicInt> {
    reduce_fraction(r.numer(), r.denom(), ctx)
}

fn bigint_mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Exact `p`-adic valuation of a nonzero rational.
pub fn rational_valuation(r: &BigRational, p: u64) -> i64 {
    bigint_valuation(r.numer(), p) as i64 - bigint_valuation(r.denom(), p) as i64
}

fn bernoulli_table() -> &'static RwLock<Vec<BigRational>> {
    static TABLE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// Bernoulli number `B_k` (with `B_1 = -1/2`), from
/// `sum_{j=0}^{k} C(k+1, j) B_j = 0`. Memoized across threads.
pub fn bernoulli(k: usize) -> BigRational {
    if let Some(b) = bernoulli_table().read().expect("bernoulli table").get(k) {
        return b.clone();
    }
    let mut table = bernoulli_table().write().expect("bernoulli table");
    while table.len() <= k {
        let m = table.len();
        let mut acc = BigRational::zero();
        let mut c = BigInt::one(); // C(m+1, j)
        for (j, b) in table.iter().enumerate() {
            acc += BigRational::from_integer(c.clone()) * b;
            c = c * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        // c is now C(m+1, m)
        table.push(-acc / BigRational::from_integer(c));
    }
    table[k].clone()
}

/// `zeta(1-k) = -B_k / k` for `k >= 1`.
pub fn zeta_one_minus(k: usize) -> BigRational {
    assert!(k >= 1);
    -bernoulli(k) / BigRational::from_integer(BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(x, k)` for an arbitrary integer `x` (negative allowed).
pub fn binomial_signed(x: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= x - BigInt::from(i);
    }
    let mut fact = BigInt::one();
    for i in 2..=k {
        fact *= BigInt::from(i);
    }
    acc / fact
}

/// Polynomial with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn monomial(j: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); j + 1];
        coeffs[j] = BigRational::one();
        RationalPoly { coeffs }
    }

    /// The binomial polynomial `C(z, k) = z(z-1)...(z-k+1)/k!`.
    pub fn binomial(k: usize) -> Self {
        let mut p = Self::one();
        for i in 0..k {
            let factor = RationalPoly::new(vec![
                BigRational::from_integer(BigInt::from(-(i as i64))),
                BigRational::one(),
            ]);
            p = &p * &factor;
            p = p.scale(&BigRational::new(BigInt::one(), BigInt::from(i + 1)));
        }
        p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `z -> P(u z)`.
    pub fn compose_scale(&self, u: &BigInt) -> Self {
        let mut power = BigRational::one();
        let u = BigRational::from_integer(u.clone());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * &power;
                power = &power * &u;
                out
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// True when every coefficient is p-integral.
    pub fn is_p_integral(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.coeffs.iter().all(|c| !c.denom().is_multiple_of(&p))
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                let b = rhs.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                a + b
            })
            .collect();
        RationalPoly::new(coeffs)
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::new(vec![]);
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RationalPoly::new(coeffs)
    }
}

/// Bernoulli polynomial `B_k(x) = sum_j C(k, j) B_j x^(k-j)`.
pub fn bernoulli_poly(k: usize, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut xp = BigRational::one();
    // accumulate from j = k down to 0 so powers of x grow
    for j in (0..=k).rev() {
        let c = BigRational::from_integer(binomial(k as u64, j as u64));
        acc += c * bernoulli(j) * &xp;
        xp *= x;
    }
    acc
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
