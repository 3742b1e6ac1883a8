use crate::context::pow_u64;
use crate::cyclotomic::{totient_p_power, CyclotomicElem};

use super::{ContinuousFn, MahlerTail};

/// Mahler coefficients `c_0..c_K`, `c_k = (Delta^k f)(0)`.
pub fn mahler_coeffs(f: &ContinuousFn, k_max: usize) -> Vec<CyclotomicElem> {
    if let ContinuousFn::MahlerSeries { coeffs, .. } = f {
        if k_max < coeffs.len() {
            return coeffs[..=k_max].to_vec();
        }
    }
    let mut diffs: Vec<CyclotomicElem> = (0..=k_max as i128).map(|x| f.eval_at(x)).collect();
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        out.push(diffs[0].clone());
        for i in 0..diffs.len() - 1 - k {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    out
}

pub(super) fn tail_bound(f: &ContinuousFn, k: usize) -> Option<u32> {
    match f {
        ContinuousFn::Polynomial(c) => (k < c.len()).then_some(0),
        ContinuousFn::Character(zeta) => {
            if zeta.level() == 0 {
                (k == 0).then_some(0)
            } else {
                Some((k / totient_p_power(zeta.p(), zeta.level())) as u32)
            }
        }
        ContinuousFn::LocallyConstant { level, values } => {
            if *level == 0 {
                (k == 0).then_some(0)
            } else {
                Some((k as u64 / pow_u64(values[0].p(), *level)) as u32)
            }
        }
        ContinuousFn::MahlerSeries { coeffs, tail } => {
            let stored = coeffs.iter().skip(k).map(|c| c.valuation()).min();
            let beyond = match tail {
                MahlerTail::Zero => None,
                MahlerTail::AtLeast(v) => Some(*v),
            };
            match (stored, beyond) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            }
        }
        ContinuousFn::Product(f, g) => product_bound(|i| tail_bound(f, i), |i| tail_bound(g, i), k),
        ContinuousFn::Scaled { inner, .. } => tail_bound(inner, k),
        ContinuousFn::ZeroExtendedUnits(inner) => {
            let p = f.p();
            let units = move |i: usize| Some((i as u64 / p) as u32);
            product_bound(|i| tail_bound(inner, i), units, k)
        }
    }
}

/// `min_{i<=k} T_f(i) + T_g(k-i)`, with `None` read as `+infinity`.
fn product_bound(tf: impl Fn(usize) -> Option<u32>, tg: impl Fn(usize) -> Option<u32>, k: usize) -> Option<u32> {
    (0..=k)
        .filter_map(|i| Some(tf(i)? + tg(k - i)?))
        .min()
}
