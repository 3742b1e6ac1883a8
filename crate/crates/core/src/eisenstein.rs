//! Eisenstein series `2 G_k`, their twists by periodic functions, and the
//! two-index divisor series `Phi_{k,r}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::context::{mod_pow, pow_u64, PadicContext};
use crate::error::{Error, Result};
use crate::functions::ContinuousFn;
use crate::padic::PadicInt;
use crate::qseries::QExpansion;
use crate::rational::{bernoulli_poly, reduce_rational, zeta_one_minus};

type SieveKey = (u64, u32, usize, u32);

fn sieve_cache() -> &'static Mutex<HashMap<SieveKey, Arc<Vec<u64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<SieveKey, Arc<Vec<u64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `sigma_e(n) mod p^N` for `0 <= n <= M` (entry 0 is 0), by a divisor sieve.
pub fn divisor_sums(ctx: &PadicContext, e: u32) -> Arc<Vec<u64>> {
    let key = (ctx.p, ctx.n, ctx.m, e);
    if let Some(hit) = sieve_cache().lock().expect("sieve cache").get(&key) {
        return hit.clone();
    }
    let modulus = ctx.modulus();
    let mut sums = vec![0u64; ctx.m + 1];
    for d in 1..=ctx.m {
        let de = mod_pow(d as u64 % modulus, e as u64, modulus);
        for n in (d..=ctx.m).step_by(d) {
            sums[n] = ((sums[n] as u128 + de as u128) % modulus as u128) as u64;
        }
    }
    let sums = Arc::new(sums);
    sieve_cache().lock().expect("sieve cache").insert(key, sums.clone());
    sums
}

fn check_weight(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("weight k = {k}: 2G_k needs k >= 2")));
    }
    Ok(())
}

/// `2 G_k = zeta(1-k) + 2 sum_n sigma_{k-1}(n) q^n`; zero for odd `k`.
pub fn eisenstein_2g(ctx: &PadicContext, k: u32) -> Result<QExpansion<PadicInt>> {
    check_weight(k)?;
    if k % 2 == 1 {
        return Ok(QExpansion::zero(ctx));
    }
    let constant = reduce_rational(&zeta_one_minus(k as usize), ctx)?;
    Ok(with_constant(ctx, constant, &divisor_sums(ctx, k - 1), &PadicInt::one(ctx)))
}

fn with_constant(ctx: &PadicContext, constant: PadicInt, sigma: &[u64], factor: &PadicInt) -> QExpansion<PadicInt> {
    let two = PadicInt::from_int(ctx, 2) * *factor;
    QExpansion::from_fn(ctx, |n| {
        if n == 0 {
            constant
        } else {
            two * PadicInt::from_i128(ctx, sigma[n] as i128)
        }
    })
}

/// `(1 - a^k) 2 G_k`, with the constant term formed as an exact rational
/// before reduction, so it exists even when `(p-1) | k`. The unit `a` is
/// taken to be the integer given by its residue.
pub fn regularized_eisenstein(ctx: &PadicContext, a: &PadicInt, k: u32) -> Result<QExpansion<PadicInt>> {
    check_weight(k)?;
    if k % 2 == 1 {
        return Ok(QExpansion::zero(ctx));
    }
    let a_int = BigInt::from(a.residue());
    let factor = BigRational::one() - BigRational::from_integer(a_int.pow(k));
    let constant = reduce_rational(&(factor * zeta_one_minus(k as usize)), ctx)?;
    let one_minus = PadicInt::one(ctx) - a.pow(k as u64);
    Ok(with_constant(ctx, constant, &divisor_sums(ctx, k - 1), &one_minus))
}

/// Reduce a function to a table of `Z/p^N` values on the classes of one level.
pub fn step_table(f: &ContinuousFn) -> Result<(u32, Vec<PadicInt>)> {
    let pw = f.to_piecewise()?;
    if pw.max_degree() > 0 {
        return Err(Error::UnsupportedShape("expected a locally constant function".into()));
    }
    let size = pow_u64(pw.p, pw.level);
    let values = (0..size as i128).map(|c| f.eval_at_padic(c)).collect::<Result<Vec<_>>>()?;
    Ok((pw.level, values))
}

/// `L(1-k, f) = -B_{k,f}/k`, `B_{k,f} = F^{k-1} sum_c f(c) B_k(c/F)`, `F = p^level`.
pub fn lvalue_periodic(k: u32, f: &ContinuousFn) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidArgument("L(1-k, f) needs k >= 1".into()));
    }
    let (level, values) = step_table(f)?;
    let period = BigInt::from(pow_u64(f.p(), level));
    let mut acc = BigRational::zero();
    for (c, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let x = BigRational::new(BigInt::from(c), period.clone());
        acc += BigRational::from_integer(BigInt::from(v.centered())) * bernoulli_poly(k as usize, &x);
    }
    let scale = BigRational::from_integer(period.pow(k - 1));
    Ok(-(acc * scale) / BigRational::from_integer(BigInt::from(k)))
}

/// `L(1-k, f) + 2 sum_n q^n sum_{d|n} d^{k-1} f(d)` for locally constant `f`.
///
/// Fails with `NotPIntegral` when `L(1-k, f)` has a pole at `p`, which is the
/// usual situation for functions that are not constant on `Z_p`.
pub fn eisenstein_2g_twisted(ctx: &PadicContext, k: u32, f: &ContinuousFn) -> Result<QExpansion<PadicInt>> {
    check_weight(k)?;
    let constant = reduce_rational(&lvalue_periodic(k, f)?, ctx)?;
    let mut series = twisted_divisor_series(ctx, k, f)?;
    series.set_coeff(0, constant);
    Ok(series)
}

/// The non-constant part `2 sum_n q^n sum_{d|n} d^{k-1} f(d)`.
pub fn twisted_divisor_series(ctx: &PadicContext, k: u32, f: &ContinuousFn) -> Result<QExpansion<PadicInt>> {
    check_weight(k)?;
    let (level, values) = step_table(f)?;
    let size = pow_u64(ctx.p, level) as usize;
    let modulus = ctx.modulus();
    let mut sums = vec![PadicInt::zero(ctx); ctx.m + 1];
    for d in 1..=ctx.m {
        let fd = values[d % size];
        if fd.is_zero() {
            continue;
        }
        let term = PadicInt::from_i128(ctx, mod_pow(d as u64, k as u64 - 1, modulus) as i128) * fd;
        for n in (d..=ctx.m).step_by(d) {
            sums[n] = sums[n] + term;
        }
    }
    let two = PadicInt::from_int(ctx, 2);
    Ok(QExpansion::from_fn(ctx, |n| two * sums[n]))
}

/// `Phi_{k,r} = 2 sum_n q^n sum_{dd'=n} d^k d'^r` (no constant term).
pub fn phi_series(ctx: &PadicContext, k: u32, r: u32) -> QExpansion<PadicInt> {
    let modulus = ctx.modulus();
    let mut sums = vec![PadicInt::zero(ctx); ctx.m + 1];
    for d in 1..=ctx.m {
        let dk = PadicInt::from_i128(ctx, mod_pow(d as u64, k as u64, modulus) as i128);
        for (j, n) in (d..=ctx.m).step_by(d).enumerate() {
            let e = j as u64 + 1;
            sums[n] = sums[n] + dk * PadicInt::from_i128(ctx, mod_pow(e, r as u64, modulus) as i128);
        }
    }
    let two = PadicInt::from_int(ctx, 2);
    QExpansion::from_fn(ctx, |n| two * sums[n])
}

/// Exact `sigma_e(n)`.
pub fn sigma_exact(e: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(e)).sum()
}

/// Exact `2 sum_{dd'=n} d^k d'^r`.
pub fn phi_coefficient_exact(k: u32, r: u32, n: u64) -> BigInt {
    let s: BigInt = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| BigInt::from(d).pow(k) * BigInt::from(n / d).pow(r))
        .sum();
    s * 2
}
