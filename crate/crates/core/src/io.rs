//! JSON encoding of curves and points, and a base-erased model wrapper.
//!
//! Curve: `{"base": {"kind": "rational"} | {"kind": "quadratic", "minpoly": ["p1", "p0"]},
//! "ainv": [a1, a2, a3, a4, a6]}`. Point: `"infinity"` or `{"x": .., "y": ..}`.
//! Over a quadratic base an element is either a rational string or
//! `{"a": .., "b": .., "minpoly": [..]}`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::arith::{Base, FieldElement, QuadraticElement, QuadraticElementJson, QuadraticField, Rational};
use crate::error::{Error, Result};
use crate::local::{classify_model, point_reduction, ClassificationRecord, LocalContext, PointReduction};
use crate::weierstrass::{point_order, CurvePoint, WeierstrassModel};

/// Elements with a JSON form.
pub trait JsonElement: FieldElement {
    fn to_json(&self) -> Value;
    /// Parse an element of the field of `like`.
    fn from_json(v: &Value, like: &Self) -> Result<Self>;
    /// Parse a CLI coordinate: `"n/d"`, or `"a;b"` for `a + b·θ`.
    fn from_arg(s: &str, like: &Self) -> Result<Self>;
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from_int)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

impl JsonElement for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value, _: &Self) -> Result<Self> {
        rational_from_json(v)
    }

    fn from_arg(s: &str, _: &Self) -> Result<Self> {
        s.trim().parse()
    }
}

impl JsonElement for QuadraticElement {
    fn to_json(&self) -> Value {
        serde_json::to_value(QuadraticElementJson::from(self)).expect("serializable")
    }

    fn from_json(v: &Value, like: &Self) -> Result<Self> {
        match v {
            Value::Object(_) => {
                let j: QuadraticElementJson =
                    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
                let field = like.field();
                if &j.minpoly[0] != field.p1() || &j.minpoly[1] != field.p0() {
                    return Err(Error::FieldMismatch);
                }
                Ok(QuadraticElement::new(field, j.a, j.b))
            }
            _ => Ok(like.embed(rational_from_json(v)?)),
        }
    }

    fn from_arg(s: &str, like: &Self) -> Result<Self> {
        match s.split_once(';') {
            Some((a, b)) => Ok(QuadraticElement::new(
                like.field(),
                a.trim().parse()?,
                b.trim().parse()?,
            )),
            None => Ok(like.embed(s.trim().parse()?)),
        }
    }
}

fn base_json(base: &Base) -> Value {
    match base {
        Base::Rational => json!({"kind": "rational"}),
        Base::Quadratic(f) => json!({
            "kind": "quadratic",
            "minpoly": [f.p1().to_string(), f.p0().to_string()],
        }),
    }
}

fn model_json<F: JsonElement>(m: &WeierstrassModel<F>) -> Value {
    json!({
        "base": base_json(&m.base()),
        "ainv": m.coefficients().iter().map(JsonElement::to_json).collect::<Vec<_>>(),
    })
}

fn invariants_json<F: JsonElement>(m: &WeierstrassModel<F>) -> Value {
    let inv = m.invariants();
    json!({
        "b2": inv.b2.to_json(),
        "b4": inv.b4.to_json(),
        "b6": inv.b6.to_json(),
        "b8": inv.b8.to_json(),
        "c4": inv.c4.to_json(),
        "c6": inv.c6.to_json(),
        "discriminant": inv.discriminant.to_json(),
        "j": inv.j.to_json(),
    })
}

fn point_json<F: JsonElement>(p: &CurvePoint<F>) -> Value {
    match p {
        CurvePoint::Infinity => Value::String("infinity".into()),
        CurvePoint::Affine { x, y } => json!({"x": x.to_json(), "y": y.to_json()}),
    }
}

fn parse_point<F: JsonElement>(m: &WeierstrassModel<F>, v: &Value) -> Result<CurvePoint<F>> {
    let like = m.a1();
    match v {
        Value::String(s) if s == "infinity" => Ok(CurvePoint::Infinity),
        Value::Object(o) => {
            let get = |k: &str| {
                o.get(k)
                    .ok_or_else(|| Error::Parse(format!("point is missing {k:?}")))
            };
            let x = F::from_json(get("x")?, like)?;
            let y = F::from_json(get("y")?, like)?;
            m.affine(x, y)
        }
        _ => Err(Error::Parse(format!("expected a point, got {v}"))),
    }
}

fn parse_point_arg<F: JsonElement>(m: &WeierstrassModel<F>, s: &str) -> Result<CurvePoint<F>> {
    if s.trim() == "infinity" {
        return Ok(CurvePoint::Infinity);
    }
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected X,Y, got {s:?}")))?;
    m.affine(F::from_arg(x, m.a1())?, F::from_arg(y, m.a1())?)
}

/// A model over either supported base.
#[derive(Debug, Clone)]
pub enum AnyModel {
    Rational(WeierstrassModel<Rational>),
    Quadratic(WeierstrassModel<QuadraticElement>),
}

/// A point on an [`AnyModel`].
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPoint {
    Rational(CurvePoint<Rational>),
    Quadratic(CurvePoint<QuadraticElement>),
}

impl AnyPoint {
    pub fn to_json(&self) -> Value {
        match self {
            AnyPoint::Rational(p) => point_json(p),
            AnyPoint::Quadratic(p) => point_json(p),
        }
    }
}

macro_rules! dispatch {
    ($self:expr, $m:ident => $body:expr) => {
        match $self {
            AnyModel::Rational($m) => $body,
            AnyModel::Quadratic($m) => $body,
        }
    };
}

impl AnyModel {
    pub fn from_json(v: &Value) -> Result<Self> {
        let base = v
            .get("base")
            .ok_or_else(|| Error::Parse("curve is missing \"base\"".into()))?;
        let ainv = v
            .get("ainv")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 5)
            .ok_or_else(|| Error::Parse("\"ainv\" must be an array of 5 elements".into()))?;
        match base.get("kind").and_then(Value::as_str) {
            Some("rational") => {
                let a: Vec<Rational> = ainv.iter().map(rational_from_json).collect::<Result<_>>()?;
                Ok(AnyModel::Rational(WeierstrassModel::new(
                    a.try_into().expect("length 5"),
                )?))
            }
            Some("quadratic") => {
                let mp = base
                    .get("minpoly")
                    .and_then(Value::as_array)
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Parse("\"minpoly\" must be [p1, p0]".into()))?;
                let field: Arc<QuadraticField> =
                    QuadraticField::new(rational_from_json(&mp[0])?, rational_from_json(&mp[1])?)?;
                let like = QuadraticElement::constant(&field, Rational::zero());
                let a: Vec<QuadraticElement> = ainv
                    .iter()
                    .map(|x| QuadraticElement::from_json(x, &like))
                    .collect::<Result<_>>()?;
                Ok(AnyModel::Quadratic(WeierstrassModel::new(
                    a.try_into().expect("length 5"),
                )?))
            }
            _ => Err(Error::Parse(
                "base.kind must be \"rational\" or \"quadratic\"".into(),
            )),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn to_json(&self) -> Value {
        dispatch!(self, m => model_json(m))
    }

    pub fn invariants_json(&self) -> Value {
        dispatch!(self, m => invariants_json(m))
    }

    pub fn base(&self) -> Base {
        dispatch!(self, m => m.base())
    }

    pub fn classify(&self, ctx: &LocalContext) -> Result<ClassificationRecord> {
        dispatch!(self, m => classify_model(m, ctx))
    }

    pub fn point_from_json(&self, v: &Value) -> Result<AnyPoint> {
        match self {
            AnyModel::Rational(m) => parse_point(m, v).map(AnyPoint::Rational),
            AnyModel::Quadratic(m) => parse_point(m, v).map(AnyPoint::Quadratic),
        }
    }

    /// Parse `"X,Y"` or `"infinity"`.
    pub fn point_from_arg(&self, s: &str) -> Result<AnyPoint> {
        match self {
            AnyModel::Rational(m) => parse_point_arg(m, s).map(AnyPoint::Rational),
            AnyModel::Quadratic(m) => parse_point_arg(m, s).map(AnyPoint::Quadratic),
        }
    }

    pub fn marked_point(&self) -> AnyPoint {
        match self {
            AnyModel::Rational(m) => AnyPoint::Rational(crate::families::marked_point(m)),
            AnyModel::Quadratic(m) => AnyPoint::Quadratic(crate::families::marked_point(m)),
        }
    }

    pub fn point_order(&self, pt: &AnyPoint, max_order: u64) -> Result<Option<u64>> {
        match (self, pt) {
            (AnyModel::Rational(m), AnyPoint::Rational(p)) => point_order(m, p, max_order),
            (AnyModel::Quadratic(m), AnyPoint::Quadratic(p)) => point_order(m, p, max_order),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn multiply(&self, n: i64, pt: &AnyPoint) -> Result<AnyPoint> {
        match (self, pt) {
            (AnyModel::Rational(m), AnyPoint::Rational(p)) => m.multiply(n, p).map(AnyPoint::Rational),
            (AnyModel::Quadratic(m), AnyPoint::Quadratic(p)) => {
                m.multiply(n, p).map(AnyPoint::Quadratic)
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn point_reduction(&self, pt: &AnyPoint, ctx: &LocalContext) -> Result<PointReduction> {
        match (self, pt) {
            (AnyModel::Rational(m), AnyPoint::Rational(p)) => point_reduction(m, ctx, p),
            (AnyModel::Quadratic(m), AnyPoint::Quadratic(p)) => point_reduction(m, ctx, p),
            _ => Err(Error::FieldMismatch),
        }
    }
}

impl From<WeierstrassModel<Rational>> for AnyModel {
    fn from(m: WeierstrassModel<Rational>) -> Self {
        AnyModel::Rational(m)
    }
}

impl From<WeierstrassModel<QuadraticElement>> for AnyModel {
    fn from(m: WeierstrassModel<QuadraticElement>) -> Self {
        AnyModel::Quadratic(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let src = r#"{"base":{"kind":"rational"},"ainv":["1","1","1","-3","1"]}"#;
        let m = AnyModel::parse(src).unwrap();
        assert_eq!(m.to_json().to_string(), src);
        let inv = m.invariants_json();
        assert_eq!(inv["discriminant"], json!("-800"));
    }

    #[test]
    fn integer_coefficients_accepted() {
        let m = AnyModel::parse(r#"{"base":{"kind":"rational"},"ainv":[0,0,1,-1,0]}"#).unwrap();
        assert_eq!(m.invariants_json()["discriminant"], json!("37"));
    }

    #[test]
    fn quadratic_round_trip() {
        let src = r#"{"base":{"kind":"quadratic","minpoly":["-1","-448"]},"ainv":[{"a":"1","b":"2","minpoly":["-1","-448"]},"0","3","0","0"]}"#;
        let m = AnyModel::parse(src).unwrap();
        let out = m.to_json();
        assert_eq!(out["ainv"][0], json!({"a": "1", "b": "2", "minpoly": ["-1", "-448"]}));
        assert_eq!(out["ainv"][2], json!({"a": "3", "b": "0", "minpoly": ["-1", "-448"]}));
        let again = AnyModel::from_json(&out).unwrap();
        assert_eq!(again.to_json(), out);
    }

    #[test]
    fn foreign_minpoly_rejected() {
        let src = r#"{"base":{"kind":"quadratic","minpoly":["-1","-448"]},"ainv":[{"a":"1","b":"2","minpoly":["0","1"]},"0","3","0","0"]}"#;
        assert_eq!(AnyModel::parse(src).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn points() {
        let m = AnyModel::parse(r#"{"base":{"kind":"rational"},"ainv":["1","1","1","-3","1"]}"#).unwrap();
        let p = m.point_from_arg("1,0").unwrap();
        assert_eq!(m.point_order(&p, 200).unwrap(), Some(5));
        assert_eq!(p.to_json(), json!({"x": "1", "y": "0"}));
        let q = m.point_from_json(&json!({"x": "1", "y": "0"})).unwrap();
        assert_eq!(p, q);
        assert_eq!(m.point_from_arg("1,1").unwrap_err(), Error::OffCurve);
        assert_eq!(m.point_from_arg("infinity").unwrap(), AnyPoint::Rational(CurvePoint::Infinity));
        assert!(matches!(m.point_from_arg("1"), Err(Error::Parse(_))));
    }

    #[test]
    fn malformed_curves() {
        assert!(matches!(AnyModel::parse("{"), Err(Error::Parse(_))));
        assert!(matches!(
            AnyModel::parse(r#"{"base":{"kind":"cubic"},"ainv":[0,0,0,0,1]}"#),
            Err(Error::Parse(_))
        ));
        assert_eq!(
            AnyModel::parse(r#"{"base":{"kind":"rational"},"ainv":[0,0,0,0,0]}"#).unwrap_err(),
            Error::Singular
        );
    }
}
