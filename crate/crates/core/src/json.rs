//! JSON descriptors for functions and measures, and the JSON output format.
//!
//! Every emitted number is a decimal residue string next to its precision.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coeff::Coeff;
use crate::context::PadicContext;
use crate::cyclotomic::CyclotomicElem;
use crate::error::{Error, Result};
use crate::functions::{ContinuousFn, MahlerTail};
use crate::measures::{AmiceSeries, AmiceTail, Dirac, EisensteinMeasure, Measure};
use crate::padic::PadicInt;
use crate::qseries::QExpansion;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "padic-circle/1";

/// A [`ContinuousFn`] as JSON, tagged by `"kind"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FnDescriptor {
    Constant { value: i64 },
    Monomial { degree: usize },
    Polynomial { coeffs: Vec<i64> },
    Binomial { k: usize },
    Indicator { level: u32, class: u64 },
    Step { level: u32, values: Vec<i64> },
    Character { level: u32, power: i64 },
    Mahler { coeffs: Vec<i64>, tail: Option<u32> },
    Units { inner: Box<FnDescriptor> },
    Product { left: Box<FnDescriptor>, right: Box<FnDescriptor> },
    Scaled { inner: Box<FnDescriptor>, unit: i64 },
}

impl FnDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDescriptor(e.to_string()))
    }

    pub fn build(&self, ctx: &PadicContext) -> Result<ContinuousFn> {
        Ok(match self {
            FnDescriptor::Constant { value } => ContinuousFn::constant(ctx, *value),
            FnDescriptor::Monomial { degree } => ContinuousFn::monomial(ctx, *degree),
            FnDescriptor::Polynomial { coeffs } => {
                ContinuousFn::polynomial(coeffs.iter().map(|&c| PadicInt::from_int(ctx, c)).collect())
            }
            FnDescriptor::Binomial { k } => ContinuousFn::binomial(ctx, *k),
            FnDescriptor::Indicator { level, class } => {
                check_level(ctx, *level)?;
                ContinuousFn::indicator(ctx, *level, *class)
            }
            FnDescriptor::Step { level, values } => {
                check_level(ctx, *level)?;
                ContinuousFn::step(ctx, *level, values)?
            }
            FnDescriptor::Character { level, power } => {
                check_level(ctx, *level)?;
                ContinuousFn::character_power(ctx, *level, *power)
            }
            FnDescriptor::Mahler { coeffs, tail } => ContinuousFn::mahler(
                coeffs.iter().map(|&c| CyclotomicElem::from_int(ctx, c)).collect(),
                tail.map_or(MahlerTail::Zero, MahlerTail::AtLeast),
            ),
            FnDescriptor::Units { inner } => ContinuousFn::zero_extended_units(inner.build(ctx)?),
            FnDescriptor::Product { left, right } => left.build(ctx)?.multiply(&right.build(ctx)?),
            FnDescriptor::Scaled { inner, unit } => {
                inner.build(ctx)?.scale_argument(&PadicInt::from_int(ctx, *unit))?
            }
        })
    }
}

fn check_level(ctx: &PadicContext, level: u32) -> Result<()> {
    // tables of p^level entries; keep them small enough to enumerate
    if ctx.p.checked_pow(level).map_or(true, |size| size > 1 << 20) {
        return Err(Error::InvalidDescriptor(format!("level {level} is too deep for p = {}", ctx.p)));
    }
    Ok(())
}

/// A measure as JSON, tagged by `"kind"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureDescriptor {
    Eisenstein { a: i64 },
    Dirac { c: i64 },
    Amice { coeffs: Vec<i64> },
}

/// A built measure together with its value type.
#[derive(Debug, Clone)]
pub enum BuiltMeasure {
    Eisenstein(EisensteinMeasure),
    Dirac(Dirac),
    Amice(AmiceSeries<CyclotomicElem>),
}

impl MeasureDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDescriptor(e.to_string()))
    }

    pub fn build(&self, ctx: &PadicContext, m_max: u32) -> Result<BuiltMeasure> {
        Ok(match self {
            MeasureDescriptor::Eisenstein { a } => {
                BuiltMeasure::Eisenstein(EisensteinMeasure::new(ctx, &PadicInt::from_int(ctx, *a), m_max)?)
            }
            MeasureDescriptor::Dirac { c } => BuiltMeasure::Dirac(Dirac::new(PadicInt::from_int(ctx, *c))),
            MeasureDescriptor::Amice { coeffs } => {
                if coeffs.is_empty() {
                    return Err(Error::InvalidDescriptor("amice measure needs at least b_0".into()));
                }
                let b = coeffs.iter().map(|&c| CyclotomicElem::from_int(ctx, c)).collect();
                BuiltMeasure::Amice(AmiceSeries::new(ctx, b, AmiceTail::Zero))
            }
        })
    }
}

impl BuiltMeasure {
    /// `mu(f)` rendered as JSON: a series for Eisenstein, a scalar otherwise.
    pub fn eval_json(&self, f: &ContinuousFn) -> Result<Value> {
        Ok(match self {
            BuiltMeasure::Eisenstein(mu) => series_json(&mu.eval(f)?),
            BuiltMeasure::Dirac(mu) => scalar_json(&mu.eval(f)?),
            BuiltMeasure::Amice(mu) => scalar_json(&mu.eval(f)?),
        })
    }
}

/// Scalars that can be written as residue strings with a precision.
pub trait JsonScalar {
    fn residue_json(&self) -> Value;
    fn prec(&self) -> u32;
}

impl JsonScalar for PadicInt {
    fn residue_json(&self) -> Value {
        Value::String(self.residue().to_string())
    }
    fn prec(&self) -> u32 {
        PadicInt::prec(self)
    }
}

impl JsonScalar for CyclotomicElem {
    /// A plain string at level 0, otherwise the power-basis coordinates.
    fn residue_json(&self) -> Value {
        match self.as_padic() {
            Some(x) => x.residue_json(),
            None => Value::Array(self.coeffs().iter().map(|c| c.residue_json()).collect()),
        }
    }
    fn prec(&self) -> u32 {
        CyclotomicElem::prec(self)
    }
}

fn context_fields(ctx: &PadicContext) -> Value {
    json!({ "schema": SCHEMA, "p": ctx.p, "N": ctx.n, "M": ctx.m })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

/// `{schema, p, N, M, coeffs, prec}`.
pub fn series_json<S: JsonScalar + Coeff>(g: &QExpansion<S>) -> Value {
    let coeffs: Vec<Value> = g.coeffs().iter().map(JsonScalar::residue_json).collect();
    let prec: Vec<u32> = g.coeffs().iter().map(JsonScalar::prec).collect();
    let ctx = g.context().with_q_prec(g.q_prec());
    merge(context_fields(&ctx), json!({ "coeffs": coeffs, "prec": prec }))
}

/// `{schema, p, N, value, prec}`.
pub fn scalar_json<S: JsonScalar>(x: &S) -> Value {
    json!({ "schema": SCHEMA, "value": x.residue_json(), "prec": x.prec() })
}

/// Attach context fields and extra members to a JSON object.
pub fn document(ctx: &PadicContext, extra: Value) -> Value {
    merge(context_fields(ctx), extra)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PadicContext {
        PadicContext::new(5, 12, 20).unwrap()
    }

    #[test]
    fn descriptors_round_trip() {
        let text = r#"{"kind":"product","left":{"kind":"monomial","degree":2},"right":{"kind":"indicator","level":1,"class":2}}"#;
        let d = FnDescriptor::parse(text).unwrap();
        let back: FnDescriptor = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(d, back);
        let f = d.build(&ctx()).unwrap();
        assert_eq!(f.eval_at(7), CyclotomicElem::from_int(&ctx(), 49));
        assert_eq!(f.eval_at(8), CyclotomicElem::from_int(&ctx(), 0));
    }

    #[test]
    fn malformed_descriptors_are_rejected() {
        for text in [r#"{"kind":"wavelet"}"#, r#"{"kind":"monomial"}"#, "not json", r#"{"kind":"indicator","level":40,"class":0}"#] {
            let err = FnDescriptor::parse(text).and_then(|d| d.build(&ctx()));
            assert!(matches!(err, Err(Error::InvalidDescriptor(_))), "{text}");
        }
        assert!(matches!(MeasureDescriptor::parse(r#"{"kind":"amice"}"#), Err(Error::InvalidDescriptor(_))));
    }

    #[test]
    fn series_format_carries_precision() {
        let c = ctx();
        let g = QExpansion::from_fn(&c, |n| PadicInt::from_int(&c, n as i64 - 1));
        let v = series_json(&g);
        assert_eq!(v["p"], 5);
        assert_eq!(v["N"], 12);
        assert_eq!(v["M"], 20);
        assert_eq!(v["coeffs"][0], "244140624");
        assert_eq!(v["coeffs"][3], "2");
        assert_eq!(v["prec"][3], 12);
        assert_eq!(v["schema"], SCHEMA);
    }

    #[test]
    fn measure_descriptors() {
        let c = ctx();
        let dirac = MeasureDescriptor::parse(r#"{"kind":"dirac","c":3}"#).unwrap().build(&c, 3).unwrap();
        let v = dirac.eval_json(&ContinuousFn::monomial(&c, 2)).unwrap();
        assert_eq!(v["value"], "9");
        let amice = MeasureDescriptor::parse(r#"{"kind":"amice","coeffs":[0,1]}"#).unwrap().build(&c, 3).unwrap();
        assert_eq!(amice.eval_json(&ContinuousFn::monomial(&c, 2)).unwrap()["value"], "1");
        let eis = MeasureDescriptor::parse(r#"{"kind":"eisenstein","a":3}"#).unwrap().build(&c, 3).unwrap();
        let s = eis.eval_json(&ContinuousFn::monomial(&c, 1)).unwrap();
        assert_eq!(s["coeffs"][1], (5u64.pow(12) - 16).to_string());
    }
}
