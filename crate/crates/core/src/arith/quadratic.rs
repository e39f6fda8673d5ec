use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{is_prime, pow_mod, Rational, Valuation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplittingType {
    Ramified,
    Inert,
    Split,
}

/// `Q[θ]/(θ² + p1·θ + p0)` with non-square discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    p1: Rational,
    p0: Rational,
    discriminant: Rational,
}

impl QuadraticField {
    pub fn new(p1: Rational, p0: Rational) -> Result<Arc<Self>> {
        let discriminant = &(&p1 * &p1) - &(&Rational::from_int(4) * &p0);
        if discriminant.sqrt_exact().is_some() {
            return Err(Error::SquareDiscriminant(discriminant.to_string()));
        }
        Ok(Arc::new(QuadraticField {
            p1,
            p0,
            discriminant,
        }))
    }

    pub fn p1(&self) -> &Rational {
        &self.p1
    }

    pub fn p0(&self) -> &Rational {
        &self.p0
    }

    pub fn discriminant(&self) -> &Rational {
        &self.discriminant
    }

    pub fn splitting_type(&self, p: u64) -> Result<SplittingType> {
        splitting_type(self, p)
    }

    /// Ramification index of the prime(s) above `p`; split primes are rejected.
    pub fn ramification_index(&self, p: u64) -> Result<u64> {
        match self.splitting_type(p)? {
            SplittingType::Ramified => Ok(2),
            SplittingType::Inert => Ok(1),
            SplittingType::Split => Err(Error::AmbiguousPrime(p)),
        }
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/(t^2 + ({})t + ({}))", self.p1, self.p0)
    }
}

/// Decomposition of `p` in the quadratic field.
pub fn splitting_type(field: &QuadraticField, p: u64) -> Result<SplittingType> {
    if p < 3 {
        return Err(Error::UnsupportedPrime(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let disc = &field.discriminant;
    if let Valuation::Finite(v) = Rational::from_int(disc.denom().clone()).val(p) {
        if v > 0 {
            return Err(Error::PrimeInDenominator(p));
        }
    }
    // num·den lies in the same square class as num/den.
    let mut d: BigInt = disc.numer() * disc.denom();
    let pb = BigInt::from(p);
    let mut v = 0u32;
    while (&d % &pb).is_zero() {
        d /= &pb;
        v += 1;
    }
    if v % 2 == 1 {
        return Ok(SplittingType::Ramified);
    }
    let r = ((d % &pb + &pb) % &pb).to_u64().expect("residue fits");
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        Ok(SplittingType::Split)
    } else {
        Ok(SplittingType::Inert)
    }
}

/// `a + b·θ` in a quadratic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticElement {
    field: Arc<QuadraticField>,
    a: Rational,
    b: Rational,
}

impl QuadraticElement {
    pub fn new(field: &Arc<QuadraticField>, a: Rational, b: Rational) -> Self {
        QuadraticElement {
            field: Arc::clone(field),
            a,
            b,
        }
    }

    pub fn constant(field: &Arc<QuadraticField>, a: Rational) -> Self {
        Self::new(field, a, Rational::zero())
    }

    /// The generator θ.
    pub fn theta(field: &Arc<QuadraticField>) -> Self {
        Self::new(field, Rational::zero(), Rational::one())
    }

    pub fn field(&self) -> &Arc<QuadraticField> {
        &self.field
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> Rational {
        let f = &self.field;
        &(&(&self.a * &self.a) - &(&(&self.a * &self.b) * &f.p1)) + &(&(&self.b * &self.b) * &f.p0)
    }

    pub fn trace(&self) -> Rational {
        &(&Rational::from_int(2) * &self.a) - &(&self.b * &self.field.p1)
    }

    pub fn conjugate(&self) -> Self {
        Self::new(&self.field, &self.a - &(&self.b * &self.field.p1), -&self.b)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        let ninv = n.inv()?;
        let c = self.conjugate();
        Ok(Self::new(&self.field, &c.a * &ninv, &c.b * &ninv))
    }

    /// As a rational, when `b = 0`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn check_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "{}",
            Error::FieldMismatch
        );
    }
}

/// Normalized valuation at the unique prime above `p` (ramified or inert).
pub fn quad_val(alpha: &QuadraticElement, p: u64) -> Result<Valuation> {
    let st = alpha.field.splitting_type(p)?;
    if st == SplittingType::Split {
        return Err(Error::AmbiguousPrime(p));
    }
    if alpha.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let v = alpha.norm().val(p).finite().expect("nonzero norm");
    Ok(match st {
        SplittingType::Ramified => Valuation::Finite(v),
        _ => {
            debug_assert!(v % 2 == 0, "inert norm valuation must be even");
            Valuation::Finite(v / 2)
        }
    })
}

/// Image of `alpha` in the residue field `F_p` of the ramified prime above `p`.
///
/// Writes `alpha = A + B·√disc` with `A = a - b·p1/2`; the `√disc` term lies
/// in the prime, so the residue is `A mod p`. When `a`, `b` and the minimal
/// polynomial are `p`-integral this is `a + b·r` for the double root `r = -p1/2`.
pub fn residue_reduce(alpha: &QuadraticElement, p: u64) -> Result<u64> {
    match alpha.field.splitting_type(p)? {
        SplittingType::Split => return Err(Error::AmbiguousPrime(p)),
        SplittingType::Inert => return Err(Error::InertResidue(p)),
        SplittingType::Ramified => {}
    }
    if let Valuation::Finite(v) = quad_val(alpha, p)? {
        if v < 0 {
            return Err(Error::NegativeValuation(v));
        }
    }
    let half = Rational::new(1, 2).expect("nonzero");
    let a_part = &alpha.a - &(&(&alpha.b * &alpha.field.p1) * &half);
    a_part.residue(p)
}

impl fmt::Display for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*t", self.b),
            (false, false) => write!(f, "{} + ({})*t", self.a, self.b),
        }
    }
}

impl fmt::Debug for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for QuadraticElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check_field(&rhs);
        QuadraticElement {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            field: self.field,
        }
    }
}

impl Sub for QuadraticElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check_field(&rhs);
        QuadraticElement {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            field: self.field,
        }
    }
}

impl Mul for QuadraticElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check_field(&rhs);
        // θ² = -p1·θ - p0
        let f = &self.field;
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let cross = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        let a = &ac - &(&bd * &f.p0);
        let b = &cross - &(&bd * &f.p1);
        QuadraticElement {
            a,
            b,
            field: self.field,
        }
    }
}

impl Neg for QuadraticElement {
    type Output = Self;
    fn neg(self) -> Self {
        QuadraticElement {
            a: -self.a,
            b: -self.b,
            field: self.field,
        }
    }
}

/// JSON form `{"a": "...", "b": "...", "minpoly": ["p1", "p0"]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadraticElementJson {
    pub a: Rational,
    pub b: Rational,
    pub minpoly: [Rational; 2],
}

impl From<&QuadraticElement> for QuadraticElementJson {
    fn from(x: &QuadraticElement) -> Self {
        QuadraticElementJson {
            a: x.a.clone(),
            b: x.b.clone(),
            minpoly: [x.field.p1.clone(), x.field.p0.clone()],
        }
    }
}

impl QuadraticElementJson {
    pub fn into_element(self) -> Result<QuadraticElement> {
        let [p1, p0] = self.minpoly;
        let field = QuadraticField::new(p1, p0)?;
        Ok(QuadraticElement::new(&field, self.a, self.b))
    }
}
