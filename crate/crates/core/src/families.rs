//! Parametrized curves with a marked torsion point at `(0, 0)`: Tate normal
//! form, the `X1(5)` pencil in `λ = s/t`, and the `X1(11)`, `X1(13)` models
//! over the quadratic field generated by the `s`-coordinate.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{FieldElement, QuadraticElement, QuadraticField, Rational};
use crate::error::{Error, Result};
use crate::weierstrass::{CurvePoint, WeierstrassModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    #[serde(rename = "x1-5")]
    X1_5,
    #[serde(rename = "x1-11")]
    X1_11,
    #[serde(rename = "x1-13")]
    X1_13,
    #[serde(rename = "tate-normal")]
    TateNormal,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::X1_5 => "x1-5",
            Family::X1_11 => "x1-11",
            Family::X1_13 => "x1-13",
            Family::TateNormal => "tate-normal",
        }
    }

    /// Order of the marked point, when fixed by the family.
    pub fn marked_order(&self) -> Option<u64> {
        match self {
            Family::X1_5 => Some(5),
            Family::X1_11 => Some(11),
            Family::X1_13 => Some(13),
            Family::TateNormal => None,
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x1-5" | "X1_5" => Ok(Family::X1_5),
            "x1-11" | "X1_11" => Ok(Family::X1_11),
            "x1-13" | "X1_13" => Ok(Family::X1_13),
            "tate-normal" | "TateNormal" => Ok(Family::TateNormal),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of one family member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum FamilyParameter {
    #[serde(rename = "x1-5")]
    X1_5 { s: Rational, t: Rational },
    #[serde(rename = "x1-11")]
    X1_11 { t: Rational },
    #[serde(rename = "x1-13")]
    X1_13 { t: Rational },
    #[serde(rename = "tate-normal")]
    TateNormal { b: Rational, c: Rational },
}

impl FamilyParameter {
    pub fn family(&self) -> Family {
        match self {
            FamilyParameter::X1_5 { .. } => Family::X1_5,
            FamilyParameter::X1_11 { .. } => Family::X1_11,
            FamilyParameter::X1_13 { .. } => Family::X1_13,
            FamilyParameter::TateNormal { .. } => Family::TateNormal,
        }
    }

    pub fn build(&self) -> Result<FamilyMember> {
        match self {
            FamilyParameter::X1_5 { s, t } => Ok(FamilyMember::Rational(x1_5_model(s, t)?)),
            FamilyParameter::TateNormal { b, c } => {
                Ok(FamilyMember::Rational(tate_normal(b.clone(), c.clone())?))
            }
            FamilyParameter::X1_11 { t } => {
                let (_, m) = x1_11_model(t)?;
                Ok(FamilyMember::Quadratic(m))
            }
            FamilyParameter::X1_13 { t } => {
                let (_, m) = x1_13_model(t)?;
                Ok(FamilyMember::Quadratic(m))
            }
        }
    }
}

/// A constructed family member over either base.
pub type FamilyMember = crate::io::AnyModel;

/// Marked point `(0, 0)` on a model.
pub fn marked_point<F: FieldElement>(model: &WeierstrassModel<F>) -> CurvePoint<F> {
    CurvePoint::Affine {
        x: model.zero(),
        y: model.zero(),
    }
}

/// `E(b, c): y² + (1 - c)xy - by = x³ - bx²`.
pub fn tate_normal<F: FieldElement>(b: F, c: F) -> Result<WeierstrassModel<F>> {
    let one = b.one_like();
    let zero = b.zero_like();
    WeierstrassModel::new([one - c, -b.clone(), -b, zero.clone(), zero])
}

/// `y² + (t - s)xy - st²y = x³ - stx²`, the `X1(5)` member at `λ = s/t`
/// with denominators cleared.
pub fn x1_5_model(s: &Rational, t: &Rational) -> Result<WeierstrassModel<Rational>> {
    if s.is_zero() && t.is_zero() {
        return Err(Error::InvalidParameter("(s, t) = (0, 0)".into()));
    }
    let st = s * t;
    WeierstrassModel::new([
        t - s,
        -&st,
        -(&st * t),
        Rational::zero(),
        Rational::zero(),
    ])
}

/// Closed forms `(c4, c6, Δ)` of [`x1_5_model`] as polynomials in `s, t`.
pub fn x1_5_closed_forms(s: &Rational, t: &Rational) -> (Rational, Rational, Rational) {
    let k = |n: i64| Rational::from_int(n);
    let (s2, t2) = (s * s, t * t);
    let st = s * t;
    let quad = &(&s2 - &(&k(6) * &st)) + &t2;
    let c4 = &(&(&k(24) * s) * &(&t2 * &(t - s))) + &(&quad * &quad);
    let quartic = &(&(&(&(&s2 * &s2) - &(&k(18) * &(&s2 * &st))) + &(&k(74) * &(&s2 * &t2)))
        + &(&k(18) * &(&st * &t2)))
        + &(&t2 * &t2);
    let c6 = -(&(&s2 + &t2) * &quartic);
    let s5t5 = (&st * &st) * (&st * &st) * st.clone();
    let delta = &s5t5 * &(&(&s2 - &(&k(11) * &st)) - &t2);
    (c4, c6, delta)
}

fn rational_roots_of_monic(p1: &Rational, p0: &Rational) -> Option<Vec<String>> {
    // x² + p1·x + p0
    let disc = &(p1 * p1) - &(&Rational::from_int(4) * p0);
    let r = disc.sqrt_exact()?;
    let half = Rational::new(1, 2).expect("nonzero");
    let r1 = &(&(-p1) + &r) * &half;
    let r2 = &(&(-p1) - &r) * &half;
    Some(vec![r1.to_string(), r2.to_string()])
}

/// The `X1(11)` member over `Q(s)`, where `s² - s = t³ - t²`.
pub fn x1_11_model(
    t: &Rational,
) -> Result<(Arc<QuadraticField>, WeierstrassModel<QuadraticElement>)> {
    let rhs = &(&(t * t) * t) - &(t * t);
    let p1 = Rational::from_int(-1);
    let p0 = -&rhs;
    if let Some(roots) = rational_roots_of_monic(&p1, &p0) {
        return Err(Error::ReducibleQuadratic(roots));
    }
    let field = QuadraticField::new(p1, p0)?;
    let s = QuadraticElement::theta(&field);
    let tt = s.embed(t.clone());
    let one = s.one_like();
    let zero = s.zero_like();
    let a1 = s.clone() * tt.clone() + tt.clone() - s.clone() * s.clone();
    let core = s.clone() * (s.clone() - one) * (s - tt.clone());
    let a2 = core.clone() * tt.clone();
    let a3 = core * tt.clone() * tt;
    let model = WeierstrassModel::new([a1, a2, a3, zero.clone(), zero])?;
    Ok((field, model))
}

/// `t⁶ - 2t⁵ + t⁴ - 2t³ + 6t² - 4t + 1`
pub fn x1_13_sextic(t: &Rational) -> Rational {
    horner(&[1, -4, 6, -2, 1, -2, 1], t)
}

/// Evaluate integer coefficients (constant term first) at `x`.
fn horner(coeffs: &[i64], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, &c| &(&acc * x) + &Rational::from_int(c))
}

/// The `X1(13)` member over `Q(s)`, where `s² = t⁶ - 2t⁵ + t⁴ - 2t³ + 6t² - 4t + 1`.
pub fn x1_13_model(
    t: &Rational,
) -> Result<(Arc<QuadraticField>, WeierstrassModel<QuadraticElement>)> {
    if t.is_zero() {
        return Err(Error::InvalidParameter("t = 0".into()));
    }
    let d = x1_13_sextic(t);
    let p1 = Rational::zero();
    let p0 = -&d;
    if let Some(roots) = rational_roots_of_monic(&p1, &p0) {
        return Err(Error::ReducibleQuadratic(roots));
    }
    let field = QuadraticField::new(p1, p0)?;
    let s = QuadraticElement::theta(&field);
    let c = |r: Rational| s.embed(r);

    let tm1_sq = (t - &Rational::one()) * (t - &Rational::one());
    // a = ((t-1)²(t²+t-1)s - t⁷ + 2t⁶ + 3t⁵ - 2t⁴ - 5t³ + 9t² - 5t + 1) / (2t⁵)
    let a_s = &tm1_sq * &horner(&[-1, 1, 1], t);
    let a_0 = horner(&[1, -5, 9, -5, -2, 3, 2, -1], t);
    let a_den = (&Rational::from_int(2) * &t.pow(5)).inv()?;
    let a = (c(a_s) * s.clone() + c(a_0)) * c(a_den);
    // b = (t-1)²((t⁵+2t⁴-5t²+4t-1)s - t⁸ - t⁷ + 4t⁶ + 2t⁵ + t⁴ - 13t³ + 14t² - 6t + 1) / (2t⁹)
    let b_s = horner(&[-1, 4, -5, 0, 2, 1], t);
    let b_0 = horner(&[1, -6, 14, -13, 1, 2, 4, -1, -1], t);
    let b_den = (&Rational::from_int(2) * &t.pow(9)).inv()?;
    let b = c(tm1_sq) * (c(b_s) * s.clone() + c(b_0)) * c(b_den);

    let zero = s.zero_like();
    let model = WeierstrassModel::new([a, b.clone(), b, zero.clone(), zero])?;
    Ok((field, model))
}

/// `t_n = m·n - 3`, the sweep parameters over ramified quadratic fields.
pub fn remark_parameter(modulus: i64, n: i64) -> Rational {
    Rational::from_int(modulus * n - 3)
}
