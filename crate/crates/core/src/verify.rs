//! Invariant suites behind the `verify` command.
//!
//! Each suite recomputes an identity two ways and counts agreements. Random
//! inputs come from a seeded ChaCha stream, so reports are reproducible.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{act, derivative_check};
use crate::context::{pow_u64, PadicContext};
use crate::cyclotomic::CyclotomicElem;
use crate::eisenstein::sigma_exact;
use crate::error::{Error, Result};
use crate::functions::{ContinuousFn, TwoVarFn};
use crate::kummer::{
    cayley_table, invariant_factors, kummer_mul, kummer_pair, pairing_matrix, realized_pairing,
    serre_tate_action_check, serre_tate_action_check_with, KummerBase, KummerElement, KummerGroup,
};
use crate::measures::{
    convolution_nu, eval_at_character, nu_moment_series, AmiceSeries, AmiceTail, Dirac, EisensteinMeasure, Measure,
};
use crate::padic::PadicInt;
use crate::qseries::QExpansion;
use crate::rational::{reduce_rational, zeta_one_minus};

pub const SUITES: [&str; 6] = ["moments", "congruences", "action", "amice", "kummer", "nu"];

/// Parameters shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub ctx: PadicContext,
    pub a: i64,
    pub m_max: u32,
    pub kummer_k: u32,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(ctx: PadicContext, a: i64) -> Self {
        VerifyConfig { ctx, a, m_max: 3, kummer_k: 1, seed: 0x5eed }
    }

    fn unit(&self) -> PadicInt {
        PadicInt::from_int(&self.ctx, self.a)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Pass/fail counts of one suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), passed: 0, failed: 0, first_counterexample: None }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }

    fn check(&mut self, holds: bool, describe: impl FnOnce() -> String) {
        if holds {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.first_counterexample.get_or_insert_with(describe);
        }
    }

    fn check_eq<T: PartialEq + Debug>(&mut self, lhs: &T, rhs: &T, what: impl FnOnce() -> String) {
        self.check(lhs == rhs, || format!("{}: {lhs:?} != {rhs:?}", what()));
    }

    fn record<T>(&mut self, result: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }
}

/// Run one suite by name, or every suite for `"all"`.
pub fn run(name: &str, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    let one = |n: &str| -> Result<SuiteReport> {
        Ok(match n {
            "moments" => moments(cfg),
            "congruences" => congruences(cfg),
            "action" => action(cfg),
            "amice" => amice(cfg),
            "kummer" => kummer(cfg),
            "nu" => nu(cfg),
            other => return Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        })
    };
    if name == "all" {
        SUITES.iter().map(|n| one(n)).collect()
    } else {
        Ok(vec![one(name)?])
    }
}

fn unit_power_factor(a: &PadicInt, k: u32) -> PadicInt {
    PadicInt::one(&a.context(1)) - a.pow(k as u64)
}

/// `mu^(a)(z^{k-1}) = (1 - a^k) 2 G_k` coefficient by coefficient.
pub fn moments(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("moments");
    let ctx = &cfg.ctx;
    let a = cfg.unit();
    let Some(mu) = report.record(EisensteinMeasure::new(ctx, &a, cfg.m_max), || "measure".into()) else {
        return report;
    };
    for k in (2..=12u32).step_by(2) {
        let Some(g) = report.record(mu.eval(&ContinuousFn::monomial(ctx, k as usize - 1)), || format!("k = {k}"))
        else {
            continue;
        };
        let factor = unit_power_factor(&a, k);
        for n in 1..=ctx.m {
            let expected = factor * PadicInt::from_bigint(ctx, &(sigma_exact(k - 1, n as u64) * 2));
            let got = g.coeff(n).as_padic();
            report.check_eq(&got, &Some(expected), || format!("k = {k}, coefficient {n}"));
        }
        match regularized_constant(ctx, cfg.a, k) {
            Ok(oracle) => {
                let got = g.coeff(0).as_padic();
                let good = got.is_some_and(|c| c.agrees(&oracle) && c.prec() + 1 >= ctx.n);
                report.check(good, || format!("k = {k}, constant {got:?} vs {oracle:?}"));
            }
            Err(e) => report.check(false, || format!("k = {k}, oracle: {e}")),
        }
    }
    report
}

/// Coefficients of `mu^(a)(z^{k-1}) - mu^(a)(z^{k'-1})` are divisible by
/// `p^m` when `k = k' mod (p-1)p^{m-1}`.
pub fn congruences(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("congruences");
    let ctx = &cfg.ctx;
    let Some(mu) = report.record(EisensteinMeasure::new(ctx, &cfg.unit(), cfg.m_max), || "measure".into()) else {
        return report;
    };
    for m in 1..=2u32 {
        let period = ((ctx.p - 1) * pow_u64(ctx.p, m - 1)) as u32;
        let start = (m + 1).max(2) + (m + 1) % 2;
        for k in (start..=12).step_by(2) {
            let k2 = k + period;
            let pair = mu
                .eval(&ContinuousFn::monomial(ctx, k as usize - 1))
                .and_then(|g| Ok((g, mu.eval(&ContinuousFn::monomial(ctx, k2 as usize - 1))?)));
            if let Some((g1, g2)) = report.record(pair, || format!("k = {k}, k' = {k2}")) {
                let diff = &g1 - &g2;
                for n in 0..=ctx.m {
                    let v = diff.coeff(n).valuation();
                    report.check(v >= m, || format!("m = {m}, k = {k}, k' = {k2}, coefficient {n}: valuation {v}"));
                }
            }
        }
    }
    report
}

/// A random step, polynomial or character function at level <= 2.
pub fn random_fn(rng: &mut impl Rng, ctx: &PadicContext) -> ContinuousFn {
    match rng.gen_range(0..3) {
        0 => {
            let level = rng.gen_range(1..=2);
            let size = pow_u64(ctx.p, level) as usize;
            let values: Vec<i64> = (0..size).map(|_| rng.gen_range(-50..50)).collect();
            ContinuousFn::step(ctx, level, &values).expect("table has p^level entries")
        }
        1 => {
            let degree = rng.gen_range(0..=3);
            ContinuousFn::polynomial((0..=degree).map(|_| PadicInt::from_int(ctx, rng.gen_range(-20..20))).collect())
        }
        _ => ContinuousFn::character_power(ctx, rng.gen_range(1..=2), rng.gen_range(0..25)),
    }
}

/// A series with random residues mod `p^N`.
pub fn random_series(rng: &mut impl Rng, ctx: &PadicContext) -> QExpansion<PadicInt> {
    let modulus = ctx.modulus() as i128;
    let coeffs = (0..=ctx.m).map(|_| PadicInt::from_i128(ctx, rng.gen_range(0..modulus))).collect();
    QExpansion::new(ctx, coeffs)
}

/// Algebra action laws and the derivative of the action.
pub fn action(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("action");
    let ctx = &cfg.ctx;
    let mut rng = cfg.rng(1);
    let series: Vec<_> = (0..10).map(|_| random_series(&mut rng, ctx).to_cyclo()).collect();
    let one = ContinuousFn::constant(ctx, 1);
    for g in &series {
        let same = report.record(act(&one, g), || "act(1, g)".into());
        report.check(same.as_ref() == Some(g), || "act(1, g) != g".into());
    }
    for i in 0..30 {
        let (f1, f2) = (random_fn(&mut rng, ctx), random_fn(&mut rng, ctx));
        let g = &series[i % series.len()];
        let lhs = act(&f1.multiply(&f2), g);
        let rhs = act(&f2, g).and_then(|h| act(&f1, &h));
        let pair = lhs.and_then(|l| Ok((l, rhs?)));
        if let Some((l, r)) = report.record(pair, || format!("pair {i}")) {
            report.check(l == r, || format!("act(fg) != act(f) act(g) for {f1:?}, {f2:?}"));
        }
    }
    for i in 0..20 {
        let g = random_series(&mut rng, ctx);
        let eps: Vec<_> = derivative_check(&g).coeffs().iter().map(|d| d.b).collect();
        report.check(eps.as_slice() == g.theta().coeffs(), || format!("derivative series {i}"));
    }
    report
}

/// `mu(chi_zeta) = A_mu(zeta - 1)` for Dirac and random Amice measures.
pub fn amice(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("amice");
    let ctx = &cfg.ctx;
    let mut rng = cfg.rng(2);
    let zetas: Vec<_> = (0..ctx.p).map(|e| CyclotomicElem::zeta_power(ctx, 1, e as i128)).collect();
    for c in 0..3 {
        let dirac = Dirac::new(PadicInt::from_int(ctx, c));
        let series = dirac.amice(4);
        for zeta in &zetas {
            compare_character(&mut report, &dirac, &series, zeta, || format!("Dirac {c}"));
        }
    }
    let modulus = ctx.modulus() as i128;
    for i in 0..10 {
        let len = rng.gen_range(1..=8);
        let coeffs = (0..len).map(|_| CyclotomicElem::from_padic(PadicInt::from_i128(ctx, rng.gen_range(0..modulus))));
        let mu = AmiceSeries::new(ctx, coeffs.collect(), AmiceTail::Zero);
        for zeta in &zetas {
            compare_character(&mut report, &mu, &mu, zeta, || format!("random Amice series {i}"));
        }
    }
    report
}

fn compare_character<M: Measure<Value = CyclotomicElem>>(
    report: &mut SuiteReport,
    mu: &M,
    series: &AmiceSeries<CyclotomicElem>,
    zeta: &CyclotomicElem,
    what: impl Fn() -> String,
) {
    let pair = eval_at_character(mu, zeta).and_then(|v| Ok((v, series.amice_at_character(zeta)?)));
    if let Some((direct, transform)) = report.record(pair, &what) {
        report.check_eq(&direct, &transform, || format!("{} at {zeta}", what()));
    }
}

/// Exhaustive table checks on `G_q[p^k]` for the configured `p` and `k`.
pub fn kummer(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("kummer");
    let (p, k) = (cfg.ctx.p, cfg.kummer_k);
    let order = pow_u64(p, k);
    if order > 27 {
        report.check(false, || format!("p^k = {order} exceeds the exhaustive limit 27"));
        return report;
    }
    let Some(base) = report.record(KummerBase::new(p, k, 2 * k, cfg.ctx.n), || "base".into()) else {
        return report;
    };
    kummer_tables(&mut report, &base);

    let ctx = *base.context();
    let zeta = CyclotomicElem::zeta(&ctx, k);
    let st = serre_tate_action_check(&zeta);
    report.check(st.passed, || format!("Serre-Tate check: {st:?}"));
    let corrupted = serre_tate_action_check_with(&zeta, |e1, e2| {
        let carried = e1.a + e2.a >= order;
        KummerElement { a: (e1.a + e2.a) % order, j: (e1.j + e2.j + carried as u64) % order, ..*e1 }
    });
    report.check(!corrupted.passed, || "corrupted carrying passed the Serre-Tate check".into());
    report
}

fn kummer_tables(report: &mut SuiteReport, base: &KummerBase) {
    let elements: Vec<_> = base.elements().collect();
    let table = cayley_table(base);
    let size = elements.len();
    let identity = KummerElement::identity(base).index();
    report.check(size as u64 == base.order() * base.order(), || format!("{size} elements"));
    let associative = (0..size).all(|x| (0..size).all(|y| (0..size).all(|z| table[table[x][y]][z] == table[x][table[y][z]])));
    report.check(associative, || "associativity".into());
    report.check((0..size).all(|x| table[identity][x] == x && table[x][identity] == x), || "identity".into());
    report.check((0..size).all(|x| table[x].contains(&identity)), || "inverses".into());
    report.check((0..size).all(|x| table[x].iter().enumerate().all(|(y, &z)| table[y][x] == z)), || "commutativity".into());
    let factors = invariant_factors(&table, identity, base.p);
    report.check_eq(&factors, &vec![base.k, base.k], || "invariant factors".into());

    // projection to a is a homomorphism with kernel the roots of unity
    let proj_ok = elements.iter().all(|x| {
        elements.iter().all(|y| table[x.index()][y.index()] / base.order() as usize == ((x.a + y.a) % base.order()) as usize)
    });
    report.check(proj_ok, || "projection to Z/p^k".into());

    let pairing = pairing_matrix(base);
    let left = (0..size).filter(|&x| pairing[x].iter().all(|&v| v == 0)).count();
    let right = (0..size).filter(|&y| (0..size).all(|x| pairing[x][y] == 0)).count();
    report.check(left == 1 && right == 1, || format!("pairing kernels of sizes {left}, {right}"));

    let (g, g_dual) = (KummerGroup::standard(*base), KummerGroup::inverted(*base));
    let law = |x: &KummerElement, y: &KummerElement| kummer_mul(x, y).expect("same base");
    for x in &elements {
        for y in &elements {
            let ring = g.law_matches_ring(law, x, y);
            report.check(matches!(ring, Ok(true)), || format!("ring product of {x:?}, {y:?}"));
            let closed = kummer_pair(x, y).ok();
            let realized = realized_pairing(&g, &g_dual, x, y);
            report.check_eq(&realized, &closed, || format!("pairing of {x:?}, {y:?}"));
        }
    }
}

/// Both paths for `nu(x^s y^t)`.
pub fn nu(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("nu");
    let ctx = &cfg.ctx;
    let a = cfg.unit();
    let Some(mu) = report.record(EisensteinMeasure::new(ctx, &a, cfg.m_max), || "measure".into()) else {
        return report;
    };
    for s in [1u32, 3, 5] {
        for t in 0..=3u32 {
            let conv = convolution_nu(&mu, &TwoVarFn::monomial(ctx, s as usize, t as usize)).and_then(|g| g.to_padic());
            let pair = conv.and_then(|c| Ok((c, nu_moment_series(ctx, &a, s, t)?)));
            if let Some((lhs, rhs)) = report.record(pair, || format!("s = {s}, t = {t}")) {
                report.check(lhs == rhs, || format!("s = {s}, t = {t}: first difference at {:?}", lhs.first_disagreement(&rhs)));
            }
        }
    }
    report
}

/// `(1 - a^k)(-B_k/k)` reduced, for use as a constant-term oracle.
pub fn regularized_constant(ctx: &PadicContext, a: i64, k: u32) -> Result<PadicInt> {
    let a_k = BigRational::from_integer(num_traits::pow(BigInt::from(a), k as usize));
    reduce_rational(&((BigRational::one() - a_k) * zeta_one_minus(k as usize)), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_scale() {
        let ctx = PadicContext::new(5, 8, 20).unwrap();
        let cfg = VerifyConfig::new(ctx, 2);
        for report in run("all", &cfg).unwrap() {
            assert!(report.ok(), "{report:?}");
        }
    }

    #[test]
    fn kummer_suite_at_level_two() {
        let ctx = PadicContext::new(3, 6, 10).unwrap();
        let cfg = VerifyConfig { kummer_k: 2, ..VerifyConfig::new(ctx, 2) };
        let report = kummer(&cfg);
        assert!(report.ok(), "{report:?}");
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let cfg = VerifyConfig::new(PadicContext::new(5, 4, 5).unwrap(), 2);
        assert!(matches!(run("everything", &cfg), Err(Error::InvalidArgument(_))));
    }
}
