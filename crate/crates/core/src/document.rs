//! JSON documents for functions and certificates.
//!
//! Rationals travel as strings (`"p/q"` or `"p"`); plain JSON integers are
//! accepted on input. Floating-point literals are rejected.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::model::{
    quad_pairs, BoxDomain, Certificate, ClassKind, FunctionBody, FunctionSpec, Int, Method, Rat,
    Shape,
};
use crate::oracle::{Counterexample, ViolationReason};

pub const SCHEMA_VERSION: &str = "1";

/// Integers below this magnitude are written as JSON numbers.
const SAFE_INTEGER: i64 = 1 << 53;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDocument {
    pub schema_version: String,
    pub class: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub radius: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub method: String,
    pub gap: String,
    pub bound: String,
    pub verified: bool,
    pub counterexample: Option<CounterexampleDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleDocument {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub reason: String,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn parse_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(Rat::from_integer(Int::from(i)))
            } else if let Some(u) = num.as_u64() {
                Ok(Rat::from_integer(Int::from(u)))
            } else {
                Err(bad(format!("floating-point literal {num} is not exact; use a \"p/q\" string")))
            }
        }
        Value::String(s) => {
            Rat::from_str(s.trim()).map_err(|e| bad(format!("cannot parse rational {s:?}: {e}")))
        }
        other => Err(bad(format!("expected a rational, found {other}"))),
    }
}

pub fn parse_int(v: &Value) -> Result<Int> {
    let r = parse_rat(v)?;
    if !r.is_integer() {
        return Err(bad(format!("expected an integer, found {r}")));
    }
    Ok(r.to_integer())
}

fn rat_value(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn int_value(v: &Int) -> Value {
    let safe = Int::from(SAFE_INTEGER);
    if *v < safe && *v > -safe {
        json!(i64::try_from(v).expect("fits"))
    } else {
        Value::String(v.to_string())
    }
}

fn rats(field: &str, v: &Option<Vec<Value>>) -> Result<Vec<Rat>> {
    v.as_ref()
        .ok_or_else(|| bad(format!("missing field {field:?}")))?
        .iter()
        .map(parse_rat)
        .collect()
}

fn shapes(v: &Option<Vec<String>>) -> Result<Vec<Shape>> {
    v.as_ref()
        .map(|s| s.iter().map(|x| Shape::from_str(x)).collect())
        .unwrap_or_else(|| Ok(Vec::new()))
}

impl FunctionDocument {
    fn empty(kind: ClassKind, domain: BoxDomain) -> Self {
        FunctionDocument {
            schema_version: SCHEMA_VERSION.into(),
            class: kind.as_str().into(),
            n: domain.dim(),
            radius: domain.radius(),
            coeffs: None,
            tables: None,
            shape: None,
            alpha: None,
            beta: None,
            gamma: None,
            certificate: None,
        }
    }

    pub fn from_spec(f: &FunctionSpec) -> Self {
        let mut doc = Self::empty(f.kind(), f.domain());
        let shape_names = |s: &[Shape]| {
            if s.iter().all(|x| *x == Shape::Free) {
                None
            } else {
                Some(s.iter().map(|x| x.as_str().to_string()).collect())
            }
        };
        match f.body() {
            FunctionBody::Linear(g) => doc.coeffs = Some(g.coeffs.iter().map(rat_value).collect()),
            FunctionBody::Separable(g) => {
                doc.tables = Some(
                    g.tables
                        .iter()
                        .map(|row| row.iter().map(int_value).collect())
                        .collect(),
                );
                doc.shape = shape_names(&g.shapes);
            }
            FunctionBody::SeparableQuadratic(g) => {
                doc.alpha = Some(g.alpha.iter().map(rat_value).collect());
                doc.beta = Some(g.beta.iter().map(rat_value).collect());
                doc.gamma = Some(Value::Array(g.gamma.iter().map(rat_value).collect()));
                doc.shape = shape_names(&g.shapes);
            }
            FunctionBody::Quadratic(g) => {
                let n = g.beta.len();
                doc.alpha = Some(
                    quad_pairs(n)
                        .into_iter()
                        .zip(&g.alpha)
                        .filter(|(_, a)| !num_traits::Zero::is_zero(*a))
                        .map(|((i, j), a)| json!([i + 1, j + 1, a.to_string()]))
                        .collect(),
                );
                doc.beta = Some(g.beta.iter().map(rat_value).collect());
                doc.gamma = Some(rat_value(&g.gamma));
            }
        }
        doc
    }

    pub fn with_certificate(mut self, cert: &Certificate) -> Self {
        self.certificate = Some(CertificateDocument::from_certificate(cert));
        self
    }

    pub fn to_spec(&self) -> Result<FunctionSpec> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(bad(format!("unsupported schema_version {:?}", self.schema_version)));
        }
        let kind = ClassKind::from_str(&self.class)?;
        let domain = BoxDomain::new(self.n, self.radius)?;
        let n = self.n;
        let unexpected = |present: bool, field: &str| {
            if present {
                Err(bad(format!("field {field:?} does not belong to the {} class", kind.as_str())))
            } else {
                Ok(())
            }
        };
        match kind {
            ClassKind::Linear => {
                unexpected(self.tables.is_some(), "tables")?;
                unexpected(self.alpha.is_some() || self.beta.is_some(), "alpha/beta")?;
                unexpected(self.shape.is_some(), "shape")?;
                FunctionSpec::linear(domain, rats("coeffs", &self.coeffs)?)
            }
            ClassKind::Separable => {
                unexpected(self.coeffs.is_some(), "coeffs")?;
                unexpected(self.alpha.is_some() || self.beta.is_some(), "alpha/beta")?;
                let rows = self.tables.as_ref().ok_or_else(|| bad("missing field \"tables\""))?;
                let tables = rows
                    .iter()
                    .map(|r| r.iter().map(parse_int).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                if tables.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        actual: tables.len(),
                    });
                }
                if let Some(r) = tables.iter().find(|r| r.len() != domain.side()) {
                    return Err(Error::DimensionMismatch {
                        expected: domain.side(),
                        actual: r.len(),
                    });
                }
                FunctionSpec::separable(domain, tables, &shapes(&self.shape)?)
            }
            ClassKind::SeparableQuadratic => {
                unexpected(self.coeffs.is_some(), "coeffs")?;
                unexpected(self.tables.is_some(), "tables")?;
                let gamma = match &self.gamma {
                    None => vec![Rat::from_integer(Int::from(0)); n],
                    Some(Value::Array(v)) => v.iter().map(parse_rat).collect::<Result<_>>()?,
                    Some(_) => return Err(bad("\"gamma\" must be an array for this class")),
                };
                FunctionSpec::separable_quadratic(
                    domain,
                    rats("alpha", &self.alpha)?,
                    rats("beta", &self.beta)?,
                    gamma,
                    &shapes(&self.shape)?,
                )
            }
            ClassKind::Quadratic => {
                unexpected(self.coeffs.is_some(), "coeffs")?;
                unexpected(self.tables.is_some(), "tables")?;
                unexpected(self.shape.is_some(), "shape")?;
                let mut alpha = vec![Rat::from_integer(Int::from(0)); n * (n + 1) / 2];
                let mut seen = vec![false; alpha.len()];
                for entry in self.alpha.as_deref().unwrap_or_default() {
                    let (i, j, v) = parse_triple(entry, n)?;
                    let k = crate::model::pair_index(n, i, j);
                    if std::mem::replace(&mut seen[k], true) {
                        return Err(bad(format!("duplicate alpha entry for ({}, {})", i + 1, j + 1)));
                    }
                    alpha[k] = v;
                }
                let gamma = match &self.gamma {
                    None => Rat::from_integer(Int::from(0)),
                    Some(v) => parse_rat(v)?,
                };
                FunctionSpec::quadratic(domain, alpha, rats("beta", &self.beta)?, gamma)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| bad(format!("malformed document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// `[i, j, value]` with `1 <= i <= j <= n`, returned zero based.
fn parse_triple(v: &Value, n: usize) -> Result<(usize, usize, Rat)> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| bad(format!("alpha entries are [i, j, value] triples, found {v}")))?;
    let idx = |x: &Value| {
        x.as_u64()
            .filter(|&k| k >= 1 && k as usize <= n)
            .map(|k| k as usize - 1)
            .ok_or_else(|| bad(format!("alpha index {x} outside 1..={n}")))
    };
    let (i, j) = (idx(&arr[0])?, idx(&arr[1])?);
    if i > j {
        return Err(bad(format!("alpha entry ({}, {}) must have i <= j", i + 1, j + 1)));
    }
    Ok((i, j, parse_rat(&arr[2])?))
}

impl CertificateDocument {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertificateDocument {
            method: c.method.as_str().into(),
            gap: c.gap.to_string(),
            bound: c.bound.to_string(),
            verified: c.verified,
            counterexample: c.counterexample.as_ref().map(|ce| CounterexampleDocument {
                x: ce.x.clone(),
                y: ce.y.clone(),
                reason: ce.reason.as_str().into(),
            }),
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate> {
        let int = |s: &str| Int::from_str(s).map_err(|_| bad(format!("expected an integer, found {s:?}")));
        let counterexample = match &self.counterexample {
            None => None,
            Some(c) => Some(Counterexample {
                x: c.x.clone(),
                y: c.y.clone(),
                reason: ViolationReason::parse(&c.reason)
                    .ok_or_else(|| bad(format!("unknown reason {:?}", c.reason)))?,
            }),
        };
        Ok(Certificate {
            method: Method::from_str(&self.method)?,
            gap: int(&self.gap)?,
            bound: int(&self.bound)?,
            verified: self.verified,
            counterexample,
        })
    }
}
