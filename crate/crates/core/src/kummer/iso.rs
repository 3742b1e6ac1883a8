use serde::Serialize;

use crate::context::pow_u64;
use crate::cyclotomic::CyclotomicElem;
use crate::error::{Error, Result};

use super::{kummer_mul, KummerBase, KummerElement, KummerGroup, LaurentCyclo};

/// The isomorphism `G_q[p^k] -> G_{tq}[p^k]` attached to a compatible
/// system of roots `t^{1/p^n}`, `n = 0..=k`.
#[derive(Debug, Clone)]
pub struct KummerIso {
    source: KummerGroup,
    target: KummerGroup,
    shift: LaurentCyclo,
}

impl KummerIso {
    /// `roots[0]` is `t` and `roots[n + 1]^p = roots[n]`.
    pub fn new(source: &KummerGroup, roots: &[LaurentCyclo]) -> Result<Self> {
        let base = source.base;
        if roots.len() <= base.k as usize {
            return Err(Error::IncompatibleRoots(format!(
                "need roots up to t^(1/p^{}), got {}",
                base.k,
                roots.len()
            )));
        }
        for (n, pair) in roots.windows(2).enumerate() {
            if pair[1].pow(base.p) != pair[0] {
                return Err(Error::IncompatibleRoots(format!("root {} raised to p is not root {n}", n + 1)));
            }
        }
        let shift = roots[base.k as usize].clone();
        let target = KummerGroup::new(base, roots[0].mul(&source.q), source.root.mul(&shift))?;
        Ok(KummerIso { source: source.clone(), target, shift })
    }

    /// The identity map `t = 1`.
    pub fn trivial(source: &KummerGroup) -> Self {
        let one = LaurentCyclo::one(source.base.context());
        Self::new(source, &vec![one; source.base.k as usize + 1]).expect("trivial roots are compatible")
    }

    pub fn source(&self) -> &KummerGroup {
        &self.source
    }

    pub fn target(&self) -> &KummerGroup {
        &self.target
    }

    /// `(x, a/p^k) -> (x t^{a/p^k}, a/p^k)`, located in the target group.
    pub fn apply(&self, e: &KummerElement) -> Result<KummerElement> {
        let image = self.source.realize(e).mul(&self.shift.pow(e.a));
        self.target
            .locate(&image)
            .ok_or_else(|| Error::IncompatibleRoots(format!("image of {e:?} is not a point of the target")))
    }
}

/// Outcome of [`serre_tate_action_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SerreTateReport {
    pub p: u64,
    pub k: u32,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<(KummerElement, KummerElement)>,
    pub message: Option<String>,
}

/// Check that `q -> zeta^{-1} q` carries `G_q[p^k]` onto `G_{zeta^{-1} q}[p^k]`
/// with the carrying law, and that the iso along `t = zeta` brings it back.
pub fn serre_tate_action_check(zeta: &CyclotomicElem) -> SerreTateReport {
    serre_tate_action_check_with(zeta, |e1, e2| kummer_mul(e1, e2).expect("same base"))
}

/// [`serre_tate_action_check`] against an arbitrary candidate group law.
pub fn serre_tate_action_check_with(
    zeta: &CyclotomicElem,
    law: impl Fn(&KummerElement, &KummerElement) -> KummerElement,
) -> SerreTateReport {
    let (p, k) = (zeta.p(), zeta.level().max(1));
    let mut report = SerreTateReport { p, k, passed: false, checked: 0, counterexample: None, message: None };
    match run_check(zeta, k, &law, &mut report) {
        Ok(()) => report.passed = report.counterexample.is_none() && report.message.is_none(),
        Err(e) => report.message = Some(e.to_string()),
    }
    report
}

fn run_check(
    zeta: &CyclotomicElem,
    k: u32,
    law: &impl Fn(&KummerElement, &KummerElement) -> KummerElement,
    report: &mut SerreTateReport,
) -> Result<()> {
    let ctx = zeta.context();
    let base = KummerBase::new(ctx.p, k, 2 * k, ctx.n)?;
    let depth = base.depth;
    let zeta_k = base.zeta_k();
    let Some(s) = (0..base.order()).find(|&s| zeta_k.pow(s) == *zeta) else {
        report.message = Some(format!("not a root of unity of order dividing {}", base.order()));
        return Ok(());
    };
    let root_of_unity = |e: i128| LaurentCyclo::constant(CyclotomicElem::zeta_power(&ctx, depth, e));

    // q^{m/p^k} -> (zeta^{-1/p^k})^m q^{m/p^k}
    let stride = pow_u64(ctx.p, depth - k) as i64;
    let inner = pow_u64(ctx.p, depth - 2 * k) as i128;
    let substitute = |x: &LaurentCyclo| {
        x.twist(|exp| {
            assert_eq!(exp % stride, 0, "exponent outside q^(1/p^k) Z");
            CyclotomicElem::zeta_power(&ctx, depth, -(s as i128) * inner * (exp / stride) as i128)
        })
    };

    let original = KummerGroup::standard(base);
    let twisted = KummerGroup::new(base, substitute(&original.q), substitute(&original.root))?;
    let elements: Vec<_> = base.elements().collect();

    for e in &elements {
        report.checked += 1;
        if substitute(&original.realize(e)) != twisted.realize(e) {
            report.counterexample = Some((*e, *e));
            return Ok(());
        }
    }
    for e1 in &elements {
        for e2 in &elements {
            report.checked += 1;
            if !twisted.law_matches_ring(law, e1, e2)? || !original.law_matches_ring(law, e1, e2)? {
                report.counterexample = Some((*e1, *e2));
                return Ok(());
            }
        }
    }

    // roots of t = zeta: t^{1/p^n} = zeta_{p^depth}^{s p^{depth - k - n}}
    let roots: Vec<_> = (0..=k)
        .map(|n| root_of_unity(s as i128 * pow_u64(ctx.p, depth - k - n) as i128))
        .collect();
    let iso = KummerIso::new(&twisted, &roots)?;
    if iso.target() != &original {
        report.message = Some("iso along zeta does not return to G_q".into());
        return Ok(());
    }
    for e in &elements {
        report.checked += 1;
        if iso.apply(e)? != *e {
            report.counterexample = Some((*e, *e));
            return Ok(());
        }
    }
    Ok(())
}
