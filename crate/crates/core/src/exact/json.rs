//! JSON form of set-system witnesses.
//!
//! Rationals are `{"num": n, "den": d}` with integer fields (decimal strings
//! when they exceed 64 bits). Elements and members are referred to by name.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

use super::certificate::{ForcedValueCertificate, InfeasibilityProof, NotForced};
use super::decide::{EquiRefutation, PositivityObstruction, WeightFunction, WeightingFailure};
use super::strong::{ConstantTotal, StrongRefutation};
use super::system::SetSystem;
use super::Q;

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn int_from(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("non-integer number")),
        Value::String(s) => s.parse().map_err(|_| bad("bad integer string")),
        _ => Err(bad("expected an integer")),
    }
}

fn bad(msg: &str) -> Error {
    Error::Certificate(msg.to_string())
}

/// Inserts `num` and `den` into `obj`.
fn put_rational(obj: &mut Map<String, Value>, x: &Q) {
    obj.insert("num".into(), int_json(x.numer()));
    obj.insert("den".into(), int_json(x.denom()));
}

pub fn rational_json(x: &Q) -> Value {
    let mut m = Map::new();
    put_rational(&mut m, x);
    Value::Object(m)
}

pub fn rational_from(v: &Value) -> Result<Q> {
    let num = int_from(v.get("num").ok_or_else(|| bad("missing num"))?)?;
    let den = int_from(v.get("den").ok_or_else(|| bad("missing den"))?)?;
    if !den.is_positive() {
        return Err(bad("denominator must be positive"));
    }
    Ok(Q::new(num, den))
}

fn element_names(s: &SetSystem, set: &[usize]) -> Value {
    Value::Array(set.iter().map(|&x| json!(s.element_names()[x])).collect())
}

fn elements_from(s: &SetSystem, v: &Value) -> Result<Vec<usize>> {
    let arr = v.as_array().ok_or_else(|| bad("expected a list of element names"))?;
    let mut out = arr
        .iter()
        .map(|x| {
            let name = x.as_str().ok_or_else(|| bad("element names are strings"))?;
            s.element(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `[{key: name, num, den}, …]` over members or elements, skipping zeros
/// when `sparse`.
fn named_values(names: &[String], key: &str, values: &[Q], sparse: bool) -> Value {
    Value::Array(
        names
            .iter()
            .zip(values)
            .filter(|(_, v)| !(sparse && v.is_zero()))
            .map(|(n, v)| {
                let mut m = Map::new();
                m.insert(key.into(), json!(n));
                put_rational(&mut m, v);
                Value::Object(m)
            })
            .collect(),
    )
}

fn values_from(v: &Value, key: &str, len: usize, lookup: impl Fn(&str) -> Option<usize>) -> Result<Vec<Q>> {
    let arr = v.as_array().ok_or_else(|| bad("expected a list"))?;
    let mut out = vec![Q::from(BigInt::from(0)); len];
    for item in arr {
        let name = item
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| bad("entry without a name"))?;
        let i = lookup(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
        out[i] = rational_from(item)?;
    }
    Ok(out)
}

fn member_coefficients(s: &SetSystem, coeffs: &[Q]) -> Value {
    named_values(s.member_names(), "member", coeffs, true)
}

fn member_coefficients_from(s: &SetSystem, v: &Value) -> Result<Vec<Q>> {
    values_from(v, "member", s.family().len(), |n| s.member_by_name(n))
}

fn element_values(s: &SetSystem, values: &[Q]) -> Value {
    named_values(s.element_names(), "element", values, false)
}

fn element_values_from(s: &SetSystem, v: &Value) -> Result<Vec<Q>> {
    values_from(v, "element", s.ground_size(), |n| s.element(n))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(&format!("missing `{key}`")))
}

/// Any witness produced over a set system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemWitness {
    Forced(ForcedValueCertificate),
    NotForced(NotForced),
    Weighting(WeightFunction),
    Infeasible(InfeasibilityProof),
    Obstruction(PositivityObstruction),
    Constant(ConstantTotal),
    /// A weighting together with the subset that defeats it.
    BadWeighting(WeightFunction, WeightingFailure),
}

impl From<EquiRefutation> for SystemWitness {
    fn from(r: EquiRefutation) -> Self {
        match r {
            EquiRefutation::Infeasible(p) => SystemWitness::Infeasible(p),
            EquiRefutation::NoPositiveSolution(o) => SystemWitness::Obstruction(o),
            EquiRefutation::Forced(c) => SystemWitness::Forced(c),
        }
    }
}

impl From<StrongRefutation> for SystemWitness {
    fn from(r: StrongRefutation) -> Self {
        match r {
            StrongRefutation::EmptyPolytope(o) => SystemWitness::Obstruction(o),
            StrongRefutation::Constant(c) => SystemWitness::Constant(c),
        }
    }
}

impl SystemWitness {
    pub fn to_json(&self, s: &SetSystem) -> Value {
        match self {
            SystemWitness::Forced(c) => json!({
                "type": "forced_value",
                "target": element_names(s, &c.target),
                "coefficients": member_coefficients(s, &c.coefficients),
                "value": rational_json(&c.value),
            }),
            SystemWitness::NotForced(n) => json!({
                "type": "not_forced",
                "target": element_names(s, &n.target),
                "direction": element_values(s, &n.direction),
            }),
            SystemWitness::Weighting(w) => json!({
                "type": "weighting",
                "weights": element_values(s, &w.weights),
            }),
            SystemWitness::Infeasible(p) => json!({
                "type": "infeasible_unit_system",
                "coefficients": member_coefficients(s, &p.combination),
            }),
            SystemWitness::Obstruction(o) => json!({
                "type": "positivity_obstruction",
                "coefficients": member_coefficients(s, &o.combination),
            }),
            SystemWitness::Constant(c) => json!({
                "type": "constant_total",
                "target": element_names(s, &c.target),
                "value": rational_json(&c.gamma),
            }),
            SystemWitness::BadWeighting(w, WeightingFailure::NonMemberUnit { subset }) => json!({
                "type": "unit_non_member",
                "weights": element_values(s, &w.weights),
                "target": element_names(s, subset),
            }),
            SystemWitness::BadWeighting(w, f) => json!({
                "type": "bad_weighting",
                "weights": element_values(s, &w.weights),
                "failure": format!("{f:?}"),
            }),
        }
    }

    pub fn from_json(s: &SetSystem, v: &Value) -> Result<SystemWitness> {
        let ty = field(v, "type")?.as_str().ok_or_else(|| bad("type is a string"))?;
        Ok(match ty {
            "forced_value" => SystemWitness::Forced(ForcedValueCertificate {
                target: elements_from(s, field(v, "target")?)?,
                coefficients: member_coefficients_from(s, field(v, "coefficients")?)?,
                value: rational_from(field(v, "value")?)?,
            }),
            "not_forced" => SystemWitness::NotForced(NotForced {
                target: elements_from(s, field(v, "target")?)?,
                direction: element_values_from(s, field(v, "direction")?)?,
            }),
            "weighting" => SystemWitness::Weighting(WeightFunction::new(element_values_from(s, field(v, "weights")?)?)),
            "infeasible_unit_system" => SystemWitness::Infeasible(InfeasibilityProof {
                combination: member_coefficients_from(s, field(v, "coefficients")?)?,
            }),
            "positivity_obstruction" => SystemWitness::Obstruction(PositivityObstruction {
                combination: member_coefficients_from(s, field(v, "coefficients")?)?,
            }),
            "constant_total" => SystemWitness::Constant(ConstantTotal {
                target: elements_from(s, field(v, "target")?)?,
                gamma: rational_from(field(v, "value")?)?,
            }),
            "unit_non_member" => SystemWitness::BadWeighting(
                WeightFunction::new(element_values_from(s, field(v, "weights")?)?),
                WeightingFailure::NonMemberUnit {
                    subset: elements_from(s, field(v, "target")?)?,
                },
            ),
            other => return Err(bad(&format!("unknown witness type `{other}`"))),
        })
    }

    /// Re-validates the witness against the system. Forced certificates are
    /// accepted for any value; refutation-specific conditions (value 1,
    /// non-member target) are checked by the callers that need them.
    pub fn verify(&self, s: &SetSystem) -> bool {
        match self {
            SystemWitness::Forced(c) => c.verify(s),
            SystemWitness::NotForced(n) => n.verify(s),
            SystemWitness::Weighting(w) => {
                super::decide::verify_weighting(s, w, super::scan::MAX_SCAN_BITS).is_ok_and(|v| v.is_yes())
            }
            SystemWitness::Infeasible(p) => p.verify(s),
            SystemWitness::Obstruction(o) => o.verify(s),
            SystemWitness::Constant(c) => StrongRefutation::Constant(c.clone()).verify(s),
            SystemWitness::BadWeighting(w, f) => f.verify(s, w),
        }
    }
}
