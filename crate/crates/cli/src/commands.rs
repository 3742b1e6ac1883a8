use std::time::Instant;

use padic_circle::eisenstein::{eisenstein_2g, eisenstein_2g_twisted};
use padic_circle::json::{document, scalar_json, series_json, FnDescriptor, MeasureDescriptor};
use padic_circle::kummer::{cayley_table, pairing_matrix, serre_tate_action_check, KummerBase};
use padic_circle::measures::{convolution_nu, nu_moment_series, two_variable_l, EisensteinMeasure, Measure, UnitCharacter};
use padic_circle::verify::{self, VerifyConfig};
use padic_circle::{ContinuousFn, CyclotomicElem, Error, PadicContext, PadicInt, Result, TwoVarFn};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::{Command, Failure};

/// A failed command, possibly with a document worth printing.
pub struct Outcome {
    pub output: Option<Value>,
    pub failure: Failure,
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome { output: None, failure: Failure::Error(e) }
    }
}

pub fn run(command: &Command, cfg: &RunConfig) -> std::result::Result<Value, Outcome> {
    let ctx = &cfg.ctx;
    match command {
        Command::Eisenstein { k, twist } => Ok(eisenstein(ctx, *k, twist.as_deref())?),
        Command::Moment { k } => Ok(moment(cfg, *k)?),
        Command::Nu { s, t } => nu(cfg, *s, *t),
        Command::Lvalue { chi1, chi2 } => Ok(lvalue(cfg, chi1, chi2)?),
        Command::Verify { suite, k, seed } => run_verify(cfg, suite, *k, *seed),
        Command::Kummer { k } => Ok(kummer(ctx, *k)?),
        Command::Eval { measure, f } => Ok(eval(cfg, measure, f)?),
    }
}

fn with_fields(mut doc: Value, extra: Value) -> Value {
    if let (Value::Object(d), Value::Object(e)) = (&mut doc, extra) {
        d.extend(e);
    }
    doc
}

fn eisenstein(ctx: &PadicContext, k: u32, twist: Option<&str>) -> Result<Value> {
    let series = match twist {
        Some(text) => eisenstein_2g_twisted(ctx, k, &FnDescriptor::parse(text)?.build(ctx)?)?,
        None => eisenstein_2g(ctx, k)?,
    };
    Ok(with_fields(series_json(&series), json!({ "command": "eisenstein", "k": k })))
}

fn measure(cfg: &RunConfig) -> Result<EisensteinMeasure> {
    EisensteinMeasure::new(&cfg.ctx, &PadicInt::from_int(&cfg.ctx, cfg.a), cfg.m_max)
}

fn moment(cfg: &RunConfig, k: u32) -> Result<Value> {
    if k == 0 {
        return Err(Error::InvalidArgument("moment needs k >= 1".into()));
    }
    let mu = measure(cfg)?;
    let series = mu.eval(&ContinuousFn::monomial(&cfg.ctx, k as usize - 1))?;
    let exact = mu.constant_term().moment_rational(k);
    Ok(document(
        &cfg.ctx,
        json!({
            "command": "moment",
            "a": cfg.a,
            "k": k,
            "constant": scalar_json(series.coeff(0)),
            "rational": exact.to_string(),
            "series": series_json(&series),
        }),
    ))
}

fn nu(cfg: &RunConfig, s: u32, t: u32) -> std::result::Result<Value, Outcome> {
    let ctx = &cfg.ctx;
    let mu = measure(cfg)?;
    let convolution = convolution_nu(&mu, &TwoVarFn::monomial(ctx, s as usize, t as usize))?.to_padic()?;
    let closed = nu_moment_series(ctx, &PadicInt::from_int(ctx, cfg.a), s, t)?;
    let agree = convolution == closed;
    let doc = document(
        ctx,
        json!({
            "command": "nu",
            "a": cfg.a,
            "s": s,
            "t": t,
            "convolution": series_json(&convolution),
            "closed_form": series_json(&closed),
            "agree": agree,
        }),
    );
    if agree {
        Ok(doc)
    } else {
        Err(Outcome { output: Some(doc), failure: Failure::Disagreement })
    }
}

/// `"trivial"`, `{"level": m, "values": [...]}` with integer values, or
/// `{"level": m, "zeta_level": r, "powers": [...]}` with values
/// `zeta_{p^r}^power` (`null` at non-units).
fn parse_character(ctx: &PadicContext, text: &str) -> Result<UnitCharacter> {
    if text.trim() == "trivial" {
        return Ok(UnitCharacter::trivial(ctx));
    }
    let bad = |msg: &str| Error::InvalidDescriptor(format!("character {text:?}: {msg}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let level = v["level"].as_u64().ok_or_else(|| bad("missing level"))? as u32;
    let values = if let Some(values) = v["values"].as_array() {
        values
            .iter()
            .map(|x| x.as_i64().map(|x| CyclotomicElem::from_int(ctx, x)).ok_or_else(|| bad("values must be integers")))
            .collect::<Result<Vec<_>>>()?
    } else if let Some(powers) = v["powers"].as_array() {
        let zeta_level = v["zeta_level"].as_u64().ok_or_else(|| bad("missing zeta_level"))? as u32;
        powers
            .iter()
            .map(|x| match x {
                Value::Null => Ok(CyclotomicElem::zero(ctx, 0)),
                x => x
                    .as_i64()
                    .map(|e| CyclotomicElem::zeta_power(ctx, zeta_level, e as i128))
                    .ok_or_else(|| bad("powers must be integers or null")),
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        return Err(bad("expected values or powers"));
    };
    UnitCharacter::new(level, values)
}

fn lvalue(cfg: &RunConfig, chi1: &str, chi2: &str) -> Result<Value> {
    let ctx = &cfg.ctx;
    let (chi1, chi2) = (parse_character(ctx, chi1)?, parse_character(ctx, chi2)?);
    let l = two_variable_l(&measure(cfg)?, &chi1, &chi2)?;
    Ok(document(
        ctx,
        json!({
            "command": "lvalue",
            "a": cfg.a,
            "factor": scalar_json(&l.factor),
            "value": scalar_json(&l.constant),
            "series": series_json(&l.series),
            "nu": series_json(&l.nu),
        }),
    ))
}

fn run_verify(cfg: &RunConfig, suite: &str, k: u32, seed: u64) -> std::result::Result<Value, Outcome> {
    let vcfg = VerifyConfig { ctx: cfg.ctx, a: cfg.a, m_max: cfg.m_max, kummer_k: k, seed };
    let start = Instant::now();
    let reports = verify::run(suite, &vcfg)?;
    eprintln!("verify {suite}: {:.2}s", start.elapsed().as_secs_f64());
    let passed: usize = reports.iter().map(|r| r.passed).sum();
    let failed: usize = reports.iter().map(|r| r.failed).sum();
    let ok = reports.iter().all(|r| r.ok());
    let first = reports.iter().find_map(|r| r.first_counterexample.clone());
    let doc = document(
        &cfg.ctx,
        json!({
            "command": "verify",
            "suite": suite,
            "a": cfg.a,
            "ok": ok,
            "passed": passed,
            "failed": failed,
            "first_counterexample": first,
            "reports": reports,
        }),
    );
    if ok {
        Ok(doc)
    } else {
        Err(Outcome { output: Some(doc), failure: Failure::Verification })
    }
}

fn kummer(ctx: &PadicContext, k: u32) -> Result<Value> {
    let base = KummerBase::new(ctx.p, k, 2 * k, ctx.n)?;
    if base.order() > 27 {
        return Err(Error::InvalidArgument(format!("p^k = {} exceeds the table limit 27", base.order())));
    }
    let elements: Vec<_> = base.elements().collect();
    let pair = |i: usize| json!([elements[i].a, elements[i].j]);
    let table: Vec<Vec<Value>> = cayley_table(&base).iter().map(|row| row.iter().map(|&i| pair(i)).collect()).collect();
    let zeta = CyclotomicElem::zeta(base.context(), k);
    Ok(document(
        ctx,
        json!({
            "command": "kummer",
            "k": k,
            "elements": (0..elements.len()).map(pair).collect::<Vec<_>>(),
            "table": table,
            "pairing": pairing_matrix(&base),
            "serre_tate": serre_tate_action_check(&zeta),
        }),
    ))
}

fn eval(cfg: &RunConfig, measure: &str, f: &str) -> Result<Value> {
    let mu = MeasureDescriptor::parse(measure)?.build(&cfg.ctx, cfg.m_max)?;
    let f = FnDescriptor::parse(f)?.build(&cfg.ctx)?;
    Ok(with_fields(mu.eval_json(&f)?, json!({ "command": "eval" })))
}
