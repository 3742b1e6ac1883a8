//! Truncated q-expansions `a_0 + a_1 q + ... + a_M q^M`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::Coeff;
use crate::context::PadicContext;
use crate::cyclotomic::CyclotomicElem;
use crate::error::Result;
use crate::padic::PadicInt;

/// A q-expansion with coefficients in `S`, truncated after `q^M`.
///
/// `q_prec` is the largest exponent whose coefficient is known; it equals `M`
/// except after `u_p`, which only knows coefficients up to `floor(M/p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QExpansion<S> {
    ctx: PadicContext,
    q_prec: usize,
    coeffs: Vec<S>,
}

impl<S: Coeff> QExpansion<S> {
    /// Pads with zeros or truncates to `M + 1` coefficients.
    pub fn new(ctx: &PadicContext, mut coeffs: Vec<S>) -> Self {
        let zero = S::from_padic(PadicInt::zero(ctx));
        coeffs.resize(ctx.m + 1, zero);
        QExpansion { ctx: *ctx, q_prec: ctx.m, coeffs }
    }

    pub fn zero(ctx: &PadicContext) -> Self {
        Self::new(ctx, Vec::new())
    }

    pub fn constant(ctx: &PadicContext, c: S) -> Self {
        Self::new(ctx, vec![c])
    }

    /// `c q^n` (zero when `n > M`).
    pub fn monomial(ctx: &PadicContext, n: usize, c: S) -> Self {
        let mut out = Self::zero(ctx);
        if n <= ctx.m {
            out.coeffs[n] = c;
        }
        out
    }

    pub fn from_fn(ctx: &PadicContext, f: impl Fn(usize) -> S) -> Self {
        Self::new(ctx, (0..=ctx.m).map(f).collect())
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn q_prec(&self) -> usize {
        self.q_prec
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &S {
        &self.coeffs[n]
    }

    pub fn set_coeff(&mut self, n: usize, c: S) {
        self.coeffs[n] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs[..=self.q_prec].iter().all(|c| c.is_zero())
    }

    /// Coefficient-wise map `a_n -> f(n, a_n)`, keeping the q-precision.
    pub fn map_indexed<T: Coeff>(&self, f: impl Fn(usize, &S) -> T) -> QExpansion<T> {
        QExpansion {
            ctx: self.ctx,
            q_prec: self.q_prec,
            coeffs: self.coeffs.iter().enumerate().map(|(n, a)| f(n, a)).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_indexed(|_, a| a.clone() * c.clone())
    }

    pub fn mul_padic(&self, c: &PadicInt) -> Self {
        self.map_indexed(|_, a| a.mul_padic(c))
    }

    pub fn truncate(&self, e: u32) -> Self {
        self.map_indexed(|_, a| a.truncate(e))
    }

    /// `theta = q d/dq`: `a_n -> n a_n`.
    pub fn theta(&self) -> Self {
        self.map_indexed(|n, a| a.mul_padic(&PadicInt::from_int(&self.ctx, n as i64)))
    }

    pub fn theta_pow(&self, t: u32) -> Self {
        self.map_indexed(|n, a| a.mul_padic(&PadicInt::from_int(&self.ctx, n as i64).pow(t as u64)))
    }

    /// `a_n -> a_{pn}`; only `floor(M/p)` coefficients survive.
    pub fn u_p(&self) -> Self {
        let p = self.ctx.p as usize;
        let q_prec = self.q_prec / p;
        let zero = self.coeffs[0].zero_like();
        let coeffs = (0..=self.ctx.m)
            .map(|n| if n <= q_prec { self.coeffs[n * p].clone() } else { zero.clone() })
            .collect();
        QExpansion { ctx: self.ctx, q_prec, coeffs }
    }

    /// `a_n q^n -> a_n q^{pn}`.
    pub fn v_p(&self) -> Self {
        let p = self.ctx.p as usize;
        let zero = self.coeffs[0].zero_like();
        let coeffs = (0..=self.ctx.m)
            .map(|n| if n % p == 0 && n / p <= self.q_prec { self.coeffs[n / p].clone() } else { zero.clone() })
            .collect();
        let q_prec = (self.q_prec * p + p - 1).min(self.ctx.m);
        QExpansion { ctx: self.ctx, q_prec, coeffs }
    }

    /// Equality of every known coefficient modulo the common precision.
    pub fn agrees(&self, other: &Self) -> bool {
        let top = self.q_prec.min(other.q_prec);
        (0..=top).all(|n| self.coeffs[n].agrees(&other.coeffs[n]))
    }

    /// First exponent where the two series disagree.
    pub fn first_disagreement(&self, other: &Self) -> Option<usize> {
        let top = self.q_prec.min(other.q_prec);
        (0..=top).find(|&n| !self.coeffs[n].agrees(&other.coeffs[n]))
    }

    /// Smallest p-adic precision among known coefficients.
    pub fn prec(&self) -> u32 {
        self.coeffs[..=self.q_prec].iter().map(|c| c.prec()).min().unwrap_or(0)
    }

    /// Smallest coefficient valuation among known coefficients.
    pub fn valuation(&self) -> u32 {
        self.coeffs[..=self.q_prec].iter().map(|c| c.valuation()).min().unwrap_or(0)
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.ctx.p, other.ctx.p, "series over different primes");
        QExpansion {
            ctx: self.ctx,
            q_prec: self.q_prec.min(other.q_prec),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl QExpansion<PadicInt> {
    pub fn to_cyclo(&self) -> QExpansion<CyclotomicElem> {
        self.map_indexed(|_, a| CyclotomicElem::from_padic(*a))
    }
}

impl QExpansion<CyclotomicElem> {
    /// Coefficients in `Z/p^N`, if every coefficient lies there.
    pub fn to_padic(&self) -> Result<QExpansion<PadicInt>> {
        let coeffs = self.coeffs.iter().map(PadicInt::from_cyclo).collect::<Result<Vec<_>>>()?;
        Ok(QExpansion { ctx: self.ctx, q_prec: self.q_prec, coeffs })
    }
}

impl<S: Coeff> Add for &QExpansion<S> {
    type Output = QExpansion<S>;
    fn add(self, rhs: Self) -> QExpansion<S> {
        self.zip(rhs, |a, b| a.clone() + b.clone())
    }
}

impl<S: Coeff> Sub for &QExpansion<S> {
    type Output = QExpansion<S>;
    fn sub(self, rhs: Self) -> QExpansion<S> {
        self.zip(rhs, |a, b| a.clone() - b.clone())
    }
}

impl<S: Coeff> Neg for &QExpansion<S> {
    type Output = QExpansion<S>;
    fn neg(self) -> QExpansion<S> {
        self.map_indexed(|_, a| -a.clone())
    }
}

impl<S: Coeff> Mul for &QExpansion<S> {
    type Output = QExpansion<S>;
    fn mul(self, rhs: Self) -> QExpansion<S> {
        let q_prec = self.q_prec.min(rhs.q_prec);
        let zero = self.coeffs[0].zero_like();
        let coeffs = (0..=self.ctx.m)
            .map(|n| {
                (0..=n).fold(zero.clone(), |acc, i| acc + self.coeffs[i].clone() * rhs.coeffs[n - i].clone())
            })
            .collect();
        QExpansion { ctx: self.ctx, q_prec, coeffs }
    }
}
