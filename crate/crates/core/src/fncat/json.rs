//! `{"op": name, "args": [...], "params": {...}}` encoding of expression trees.

use super::AnalyticMap;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};

fn cval(c: Complex64) -> Value {
    if c.im == 0.0 {
        json!(c.re)
    } else {
        json!([c.re, c.im])
    }
}

fn parse_c(v: &Value, what: &str) -> Result<Complex64> {
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(xs) if xs.len() == 2 => {
            let re = xs[0].as_f64();
            let im = xs[1].as_f64();
            match (re, im) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(Error::Expression(format!("{what}: expected [re, im]"))),
            }
        }
        _ => Err(Error::Expression(format!("{what}: expected number or [re, im]"))),
    }
}

fn node(op: &str, args: Vec<Value>, params: Map<String, Value>) -> Value {
    let mut m = Map::new();
    m.insert("op".into(), json!(op));
    if !args.is_empty() {
        m.insert("args".into(), Value::Array(args));
    }
    if !params.is_empty() {
        m.insert("params".into(), Value::Object(params));
    }
    Value::Object(m)
}

impl AnalyticMap {
    pub fn to_json(&self) -> Value {
        let mut p = Map::new();
        match self {
            AnalyticMap::Constant(c) => {
                p.insert("value".into(), cval(*c));
                node("constant", vec![], p)
            }
            AnalyticMap::Identity => node("identity", vec![], p),
            AnalyticMap::Affine { a, b } => {
                p.insert("a".into(), cval(*a));
                p.insert("b".into(), cval(*b));
                node("affine", vec![], p)
            }
            AnalyticMap::Moebius { a, b } => {
                p.insert("A".into(), json!(a));
                p.insert("B".into(), json!(b));
                node("moebius", vec![], p)
            }
            AnalyticMap::Exp => node("exp", vec![], p),
            AnalyticMap::Sqrt1p => node("sqrt1p", vec![], p),
            AnalyticMap::Power { base, exponent } => {
                p.insert("exponent".into(), json!(exponent));
                node("power", vec![base.to_json()], p)
            }
            AnalyticMap::Sigmoid => node("sigmoid", vec![], p),
            AnalyticMap::Sine => node("sine", vec![], p),
            AnalyticMap::Crescent => node("crescent", vec![], p),
            AnalyticMap::Polynomial(cs) => {
                p.insert("coeffs".into(), Value::Array(cs.iter().map(|c| cval(*c)).collect()));
                node("polynomial", vec![], p)
            }
            AnalyticMap::Sum(a, b) => node("sum", vec![a.to_json(), b.to_json()], p),
            AnalyticMap::Product(a, b) => node("product", vec![a.to_json(), b.to_json()], p),
            AnalyticMap::Quotient(a, b) => node("quotient", vec![a.to_json(), b.to_json()], p),
            AnalyticMap::Scaled { c, inner } => {
                p.insert("c".into(), cval(*c));
                node("scale", vec![inner.to_json()], p)
            }
            AnalyticMap::Compose { outer, inner } => {
                node("compose", vec![outer.to_json(), inner.to_json()], p)
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Expression("expression must be an object".into()))?;
        let op = obj
            .get("op")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Expression("missing \"op\"".into()))?;
        let empty = Vec::new();
        let args = match obj.get("args") {
            None => &empty,
            Some(Value::Array(a)) => a,
            Some(_) => return Err(Error::Expression("\"args\" must be an array".into())),
        };
        let no_params = Map::new();
        let params = match obj.get("params") {
            None => &no_params,
            Some(Value::Object(m)) => m,
            Some(_) => return Err(Error::Expression("\"params\" must be an object".into())),
        };
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Expression(format!("{op} takes {n} args, got {}", args.len())))
            }
        };
        let param = |k: &str| -> Result<&Value> {
            params.get(k).ok_or_else(|| Error::Expression(format!("{op}: missing param {k}")))
        };
        let real = |k: &str| -> Result<f64> {
            param(k)?
                .as_f64()
                .ok_or_else(|| Error::Expression(format!("{op}: param {k} must be a number")))
        };
        let arg = |i: usize| AnalyticMap::from_json(&args[i]);
        let map = match op {
            "constant" => {
                arity(0)?;
                AnalyticMap::Constant(parse_c(param("value")?, "value")?)
            }
            "identity" => {
                arity(0)?;
                AnalyticMap::Identity
            }
            "affine" => {
                arity(0)?;
                AnalyticMap::Affine { a: parse_c(param("a")?, "a")?, b: parse_c(param("b")?, "b")? }
            }
            "moebius" => {
                arity(0)?;
                AnalyticMap::Moebius { a: real("A")?, b: real("B")? }
            }
            "exp" => AnalyticMap::Exp,
            "sqrt1p" => AnalyticMap::Sqrt1p,
            "sigmoid" => AnalyticMap::Sigmoid,
            "sine" => AnalyticMap::Sine,
            "crescent" => AnalyticMap::Crescent,
            "power" => {
                arity(1)?;
                AnalyticMap::power(arg(0)?, real("exponent")?)
            }
            "polynomial" => {
                arity(0)?;
                let cs = param("coeffs")?
                    .as_array()
                    .ok_or_else(|| Error::Expression("coeffs must be an array".into()))?;
                AnalyticMap::Polynomial(
                    cs.iter().map(|c| parse_c(c, "coeff")).collect::<Result<_>>()?,
                )
            }
            "sum" | "product" | "quotient" => {
                arity(2)?;
                let (a, b) = (arg(0)?, arg(1)?);
                match op {
                    "sum" => AnalyticMap::sum(a, b),
                    "product" => AnalyticMap::product(a, b),
                    _ => AnalyticMap::quotient(a, b),
                }
            }
            "scale" => {
                arity(1)?;
                AnalyticMap::scaled(parse_c(param("c")?, "c")?, arg(0)?)
                    .map_err(|e| Error::Expression(e.to_string()))?
            }
            "compose" => {
                arity(2)?;
                AnalyticMap::compose(arg(0)?, arg(1)?)
            }
            other => return Err(Error::Expression(format!("unknown op {other:?}"))),
        };
        if !matches!(op, "exp" | "sqrt1p" | "sigmoid" | "sine" | "crescent") || args.is_empty() {
            Ok(map)
        } else {
            Err(Error::Expression(format!("{op} takes no args")))
        }
    }
}

impl Serialize for AnalyticMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AnalyticMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        AnalyticMap::from_json(&v).map_err(serde::de::Error::custom)
    }
}
