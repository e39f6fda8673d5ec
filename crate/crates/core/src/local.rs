//! Local analysis at a prime of residue characteristic `p >= 5`.
//!
//! Everything here works on the valuation triple `(v(c4), v(c6), v(Δ))`.
//! For `p >= 5` the minimal model is reached by pure scalings `u = π^k`, and
//! the Kodaira type of the special fiber (algebraically closed residue field)
//! is a function of the minimal triple alone.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{is_prime, FieldElement, Valuation};
use crate::error::{Error, Result};
use crate::weierstrass::{CurvePoint, WeierstrassModel};

/// Residue prime `p >= 5` and absolute ramification index `e = v_K(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LocalContext {
    p: u64,
    e: u64,
}

impl LocalContext {
    pub fn new(p: u64, e: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::UnsupportedPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidContext("e must be >= 1".into()));
        }
        Ok(LocalContext { p, e })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u64 {
        self.e
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ValuationTriple {
    pub vc4: Valuation,
    pub vc6: Valuation,
    pub vdelta: i64,
}

impl ValuationTriple {
    pub fn new(vc4: Valuation, vc6: Valuation, vdelta: i64) -> Self {
        ValuationTriple { vc4, vc6, vdelta }
    }

    pub fn finite(vc4: i64, vc6: i64, vdelta: i64) -> Self {
        Self::new(Valuation::Finite(vc4), Valuation::Finite(vc6), vdelta)
    }

    /// Valuations after a tame totally ramified extension of degree `d`.
    pub fn scale(&self, d: i64) -> Self {
        Self::new(self.vc4.scale(d), self.vc6.scale(d), self.vdelta * d)
    }

    /// Effect of the scaling `u` with `v(u) = -k`: `(+4k, +6k, +12k)`.
    pub fn unscale(&self, k: i64) -> Self {
        Self::new(self.vc4.shift(4 * k), self.vc6.shift(6 * k), self.vdelta + 12 * k)
    }

    fn is_nonnegative(&self) -> bool {
        self.vc4 >= Valuation::Finite(0) && self.vc6 >= Valuation::Finite(0) && self.vdelta >= 0
    }

    /// Whether `1728Δ = c4³ - c6²` admits these valuations (1728 is a unit).
    pub fn is_consistent(&self) -> bool {
        let cube = self.vc4.scale(3);
        let square = self.vc6.scale(2);
        let d = Valuation::Finite(self.vdelta);
        if cube == square {
            // c4³ and c6² may cancel.
            cube <= d
        } else {
            cube.min(square) == d
        }
    }
}

impl fmt::Display for ValuationTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}, {}", self.vc4, self.vc6, self.vdelta)
    }
}

impl Serialize for ValuationTriple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.vc4, self.vc6, Valuation::Finite(self.vdelta)).serialize(s)
    }
}

/// Kodaira symbol of the special fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    /// `I_n`; `I_0` is good reduction.
    I(u32),
    II,
    III,
    IV,
    /// `I_n*`
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub fn family(&self) -> TypeFamily {
        match *self {
            KodairaType::I(0) => TypeFamily::I0,
            KodairaType::I(_) => TypeFamily::In,
            KodairaType::II => TypeFamily::II,
            KodairaType::III => TypeFamily::III,
            KodairaType::IV => TypeFamily::IV,
            KodairaType::IStar(0) => TypeFamily::I0Star,
            KodairaType::IStar(_) => TypeFamily::InStar,
            KodairaType::IVStar => TypeFamily::IVStar,
            KodairaType::IIIStar => TypeFamily::IIIStar,
            KodairaType::IIStar => TypeFamily::IIStar,
        }
    }

    /// `n` for `I_n` and `I_n*`.
    pub fn index(&self) -> Option<u32> {
        match *self {
            KodairaType::I(n) | KodairaType::IStar(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_semistable(&self) -> bool {
        matches!(self, KodairaType::I(_))
    }

    pub fn is_additive(&self) -> bool {
        !self.is_semistable()
    }

    pub fn is_good(&self) -> bool {
        *self == KodairaType::I(0)
    }

    /// Order of the component group over an algebraically closed residue field.
    pub fn component_group_order(&self) -> u64 {
        match *self {
            KodairaType::I(0) => 1,
            KodairaType::I(n) => n as u64,
            KodairaType::II | KodairaType::IIStar => 1,
            KodairaType::III | KodairaType::IIIStar => 2,
            KodairaType::IV | KodairaType::IVStar => 3,
            KodairaType::IStar(_) => 4,
        }
    }

    /// Minimal degree of a (tame) extension with semistable base change.
    pub fn semistability_degree(&self) -> u64 {
        match *self {
            KodairaType::I(_) => 1,
            KodairaType::IStar(_) => 2,
            KodairaType::IV | KodairaType::IVStar => 3,
            KodairaType::III | KodairaType::IIIStar => 4,
            KodairaType::II | KodairaType::IIStar => 6,
        }
    }

    pub fn is_potentially_good(&self) -> bool {
        !matches!(self, KodairaType::I(n) | KodairaType::IStar(n) if *n >= 1)
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            other => f.write_str(other.family().name()),
        }
    }
}

impl std::str::FromStr for KodairaType {
    type Err = Error;

    /// Accepts `I0`, `I7`, `II`, `I0*`, `I3*`, `IV*`, ...
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let named = match t {
            "II" => Some(KodairaType::II),
            "III" => Some(KodairaType::III),
            "IV" => Some(KodairaType::IV),
            "IV*" => Some(KodairaType::IVStar),
            "III*" => Some(KodairaType::IIIStar),
            "II*" => Some(KodairaType::IIStar),
            _ => None,
        };
        if let Some(k) = named {
            return Ok(k);
        }
        let bad = || Error::Parse(format!("unknown Kodaira type {s:?}"));
        let rest = t.strip_prefix('I').ok_or_else(bad)?;
        let (digits, star) = match rest.strip_suffix('*') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let n: u32 = digits.parse().map_err(|_| bad())?;
        Ok(if star { KodairaType::IStar(n) } else { KodairaType::I(n) })
    }
}

/// Kodaira types with `I_n` (n >= 1) and `I_n*` (n >= 1) collapsed to families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeFamily {
    I0,
    In,
    II,
    III,
    IV,
    I0Star,
    InStar,
    IVStar,
    IIIStar,
    IIStar,
}

impl TypeFamily {
    pub const ALL: [TypeFamily; 10] = [
        TypeFamily::I0,
        TypeFamily::In,
        TypeFamily::II,
        TypeFamily::III,
        TypeFamily::IV,
        TypeFamily::I0Star,
        TypeFamily::InStar,
        TypeFamily::IVStar,
        TypeFamily::IIIStar,
        TypeFamily::IIStar,
    ];

    pub const ADDITIVE: [TypeFamily; 8] = [
        TypeFamily::II,
        TypeFamily::III,
        TypeFamily::IV,
        TypeFamily::I0Star,
        TypeFamily::InStar,
        TypeFamily::IVStar,
        TypeFamily::IIIStar,
        TypeFamily::IIStar,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TypeFamily::I0 => "I0",
            TypeFamily::In => "In",
            TypeFamily::II => "II",
            TypeFamily::III => "III",
            TypeFamily::IV => "IV",
            TypeFamily::I0Star => "I0*",
            TypeFamily::InStar => "In*",
            TypeFamily::IVStar => "IV*",
            TypeFamily::IIIStar => "III*",
            TypeFamily::IIStar => "II*",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }
}

impl fmt::Display for TypeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for TypeFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub kodaira_type: KodairaType,
    pub minimal_triple: ValuationTriple,
    pub u_valuation: i64,
    pub component_group_order: u64,
    pub semistability_degree: u64,
    pub potentially_good: bool,
}

impl ClassificationRecord {
    fn from_type(kodaira_type: KodairaType, minimal_triple: ValuationTriple, k: i64) -> Self {
        ClassificationRecord {
            kodaira_type,
            minimal_triple,
            u_valuation: k,
            component_group_order: kodaira_type.component_group_order(),
            semistability_degree: kodaira_type.semistability_degree(),
            potentially_good: kodaira_type.is_potentially_good(),
        }
    }
}

impl Serialize for ClassificationRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ClassificationRecord", 8)?;
        st.serialize_field("type", &self.kodaira_type.family())?;
        st.serialize_field("n", &self.kodaira_type.index())?;
        st.serialize_field("label", &self.kodaira_type.to_string())?;
        st.serialize_field("triple", &self.minimal_triple)?;
        st.serialize_field("u_valuation", &self.u_valuation)?;
        st.serialize_field("component_group", &self.component_group_order)?;
        st.serialize_field("semistability_degree", &self.semistability_degree)?;
        st.serialize_field("potentially_good", &self.potentially_good)?;
        st.end()
    }
}

/// Triple of valuations of `c4, c6, Δ` at `ctx`, after clearing denominators.
///
/// Over a quadratic base the valuation is the normalized one at the prime
/// above `p` (index `e0`), and `ctx.e` must be a multiple of `e0`; the
/// valuations are scaled by `ctx.e / e0`.
pub fn local_valuations<F: FieldElement>(
    model: &WeierstrassModel<F>,
    ctx: &LocalContext,
) -> Result<ValuationTriple> {
    let scale = base_scale(model, ctx)?;
    let inv = model.invariants();
    let raw = ValuationTriple::new(
        inv.c4.valuation(ctx.p)?.scale(scale),
        inv.c6.valuation(ctx.p)?.scale(scale),
        inv.discriminant
            .valuation(ctx.p)?
            .scale(scale)
            .finite()
            .ok_or(Error::Singular)?,
    );
    let needed = |v: Valuation, w: i64| match v {
        Valuation::Finite(v) if v < 0 => (-v + w - 1) / w,
        _ => 0,
    };
    let k = needed(raw.vc4, 4)
        .max(needed(raw.vc6, 6))
        .max(needed(Valuation::Finite(raw.vdelta), 12));
    Ok(raw.unscale(k))
}

fn base_scale<F: FieldElement>(model: &WeierstrassModel<F>, ctx: &LocalContext) -> Result<i64> {
    let e0 = model.a1().ramification_index(ctx.p)?;
    if ctx.e % e0 != 0 {
        return Err(Error::InvalidContext(format!(
            "e = {} is not a multiple of the base ramification index {e0}",
            ctx.e
        )));
    }
    Ok((ctx.e / e0) as i64)
}

/// Remove the largest `u`-power: `k = min(⌊vc4/4⌋, ⌊vc6/6⌋, ⌊vΔ/12⌋)`.
pub fn minimalize(t: &ValuationTriple) -> Result<(i64, ValuationTriple)> {
    if !t.is_nonnegative() {
        return Err(Error::NegativeTriple);
    }
    let mut k = t.vdelta / 12;
    if let Valuation::Finite(v) = t.vc4 {
        k = k.min(v / 4);
    }
    if let Valuation::Finite(v) = t.vc6 {
        k = k.min(v / 6);
    }
    Ok((k, t.unscale(-k)))
}

fn is_minimal(t: &ValuationTriple) -> bool {
    t.vc4 < Valuation::Finite(4) || t.vc6 < Valuation::Finite(6) || t.vdelta < 12
}

/// Kodaira type of a minimal triple (residue characteristic `>= 5`).
pub fn classify(minimal: &ValuationTriple) -> Result<ClassificationRecord> {
    let t = *minimal;
    if !t.is_nonnegative() {
        return Err(Error::NegativeTriple);
    }
    if !is_minimal(&t) {
        return Err(Error::NotMinimal(t.to_string()));
    }
    let impossible = || Error::ImpossibleTriple(t.to_string());
    if !t.is_consistent() {
        return Err(impossible());
    }
    let vc4 = t.vc4;
    let fin = |n: i64| Valuation::Finite(n);
    let kt = if t.vdelta == 0 {
        KodairaType::I(0)
    } else if vc4 == fin(0) {
        KodairaType::I(t.vdelta as u32)
    } else {
        match t.vdelta {
            2 => KodairaType::II,
            3 => KodairaType::III,
            4 => KodairaType::IV,
            6 => KodairaType::IStar(0),
            d if d >= 7 && vc4 == fin(2) => KodairaType::IStar((d - 6) as u32),
            8 => KodairaType::IVStar,
            9 => KodairaType::IIIStar,
            10 => KodairaType::IIStar,
            _ => return Err(impossible()),
        }
    };
    Ok(ClassificationRecord::from_type(kt, t, 0))
}

/// [`minimalize`] followed by [`classify`], recording the `u`-valuation.
pub fn classify_triple(t: &ValuationTriple) -> Result<ClassificationRecord> {
    let (k, m) = minimalize(t)?;
    let mut rec = classify(&m)?;
    rec.u_valuation = k;
    Ok(rec)
}

pub fn classify_model<F: FieldElement>(
    model: &WeierstrassModel<F>,
    ctx: &LocalContext,
) -> Result<ClassificationRecord> {
    classify_triple(&local_valuations(model, ctx)?)
}

/// Kodaira type after a tame totally ramified extension of degree `d`.
pub fn base_change(minimal: &ValuationTriple, d: u64, p: u64) -> Result<ClassificationRecord> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be >= 1".into()));
    }
    if d % p == 0 {
        return Err(Error::WildBaseChange { p, degree: d });
    }
    classify(minimal)?;
    classify_triple(&minimal.scale(d as i64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointReduction {
    pub in_kernel: bool,
    pub nonsingular_image: bool,
}

/// Where `P` lands under reduction of a minimal integral model.
pub fn point_reduction<F: FieldElement>(
    model: &WeierstrassModel<F>,
    ctx: &LocalContext,
    pt: &CurvePoint<F>,
) -> Result<PointReduction> {
    let p = ctx.p;
    let e0 = model.a1().ramification_index(p)?;
    if ctx.e != e0 {
        return Err(Error::RamifiedRationalReduction(ctx.e));
    }
    if !model.contains(pt) {
        return Err(Error::OffCurve);
    }
    for a in model.coefficients() {
        if a.valuation(p)? < Valuation::Finite(0) {
            return Err(Error::NonIntegralModel(p));
        }
    }
    let triple = local_valuations(model, ctx)?;
    if !is_minimal(&triple) {
        return Err(Error::NotMinimal(triple.to_string()));
    }
    let (x, y) = match pt {
        CurvePoint::Infinity => {
            return Ok(PointReduction {
                in_kernel: true,
                nonsingular_image: true,
            })
        }
        CurvePoint::Affine { x, y } => (x, y),
    };
    if x.valuation(p)? < Valuation::Finite(0) {
        return Ok(PointReduction {
            in_kernel: true,
            nonsingular_image: true,
        });
    }
    let r = |z: &F| z.residue(p).map(|v| v as i128);
    let [a1, a2, a3, a4, _] = model.coefficients();
    let (a1, a2, a3, a4) = (r(a1)?, r(a2)?, r(a3)?, r(a4)?);
    let (xr, yr) = (r(x)?, r(y)?);
    let pm = p as i128;
    let fx = (a1 * yr - 3 * xr * xr - 2 * a2 * xr - a4).rem_euclid(pm);
    let fy = (2 * yr + a1 * xr + a3).rem_euclid(pm);
    Ok(PointReduction {
        in_kernel: false,
        nonsingular_image: !(fx == 0 && fy == 0),
    })
}

/// Valuations of `x`, `y` of a kernel point on the good-reduction model
/// over `L`, given `v_L(Δ_min)` of the model over `K`.
pub fn kernel_coordinate_valuations(vdelta_min: i64) -> Result<(i64, i64)> {
    if vdelta_min < 0 || vdelta_min % 12 != 0 {
        return Err(Error::NotMultipleOf12(vdelta_min));
    }
    Ok((-vdelta_min / 6, -vdelta_min / 4))
}

fn p_power_minus_previous(p: u64, n: u32) -> BigInt {
    // p^n - p^(n-1) = p^(n-1)(p-1)
    let p = BigInt::from(p);
    num_traits::pow(p.clone(), (n - 1) as usize) * (p - BigInt::one())
}

/// `v_L(p) < (p^n - p^(n-1))·v_L(Δ_min)/12`: a point of order `p^n` then
/// stays outside the kernel of reduction over `L`.
pub fn torsion_not_in_kernel(vlp: u64, vdelta_min: u64, p: u64, n: u32) -> bool {
    if n == 0 {
        return false;
    }
    BigInt::from(vlp) * BigInt::from(12) < p_power_minus_previous(p, n) * BigInt::from(vdelta_min)
}

/// `v_L(p) < p^(n-1)(p-1)`: reduction is injective on `p^n`-torsion.
pub fn injective_on_torsion(vlp: u64, p: u64, n: u32) -> bool {
    if n == 0 {
        return false;
    }
    BigInt::from(vlp) < p_power_minus_previous(p, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    fn t(a: i64, b: i64, c: i64) -> ValuationTriple {
        ValuationTriple::finite(a, b, c)
    }

    #[test]
    fn context_validation() {
        assert!(LocalContext::new(5, 1).is_ok());
        assert_eq!(LocalContext::new(3, 1), Err(Error::UnsupportedPrime(3)));
        assert_eq!(LocalContext::new(9, 1), Err(Error::NotPrime(9)));
        assert!(LocalContext::new(7, 0).is_err());
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(minimalize(&t(4, 6, 12)).unwrap(), (1, t(0, 0, 0)));
        assert_eq!(minimalize(&t(5, 5, 10)).unwrap(), (0, t(5, 5, 10)));
        assert_eq!(minimalize(&t(1, 1, 2)).unwrap(), (0, t(1, 1, 2)));
        let c4_zero = ValuationTriple::new(Valuation::Infinite, Valuation::Finite(7), 14);
        assert_eq!(
            minimalize(&c4_zero).unwrap(),
            (1, ValuationTriple::new(Valuation::Infinite, Valuation::Finite(1), 2))
        );
        assert_eq!(minimalize(&t(-1, 0, 0)), Err(Error::NegativeTriple));
    }

    #[test]
    fn classify_examples() {
        let r = classify(&t(1, 1, 2)).unwrap();
        assert_eq!(r.kodaira_type, KodairaType::II);
        assert_eq!(r.component_group_order, 1);
        assert_eq!(r.semistability_degree, 6);

        let r = classify(&t(5, 5, 10)).unwrap();
        assert_eq!(r.kodaira_type, KodairaType::IIStar);
        assert_eq!(r.component_group_order, 1);

        let r = classify(&t(0, 0, 7)).unwrap();
        assert_eq!(r.kodaira_type, KodairaType::I(7));
        assert_eq!(r.component_group_order, 7);
        assert_eq!(r.semistability_degree, 1);
        assert!(!r.potentially_good);
    }

    #[test]
    fn classify_table() {
        let cases = [
            (t(0, 0, 0), KodairaType::I(0)),
            (t(3, 0, 0), KodairaType::I(0)),
            (t(0, 0, 3), KodairaType::I(3)),
            (t(2, 1, 2), KodairaType::II),
            (t(1, 2, 3), KodairaType::III),
            (t(1, 5, 3), KodairaType::III),
            (t(2, 2, 4), KodairaType::IV),
            (t(2, 3, 6), KodairaType::IStar(0)),
            (t(3, 3, 6), KodairaType::IStar(0)),
            (t(2, 4, 6), KodairaType::IStar(0)),
            (t(2, 3, 7), KodairaType::IStar(1)),
            (t(2, 3, 11), KodairaType::IStar(5)),
            (t(2, 3, 20), KodairaType::IStar(14)),
            (t(3, 4, 8), KodairaType::IVStar),
            (t(3, 5, 9), KodairaType::IIIStar),
            (t(4, 5, 10), KodairaType::IIStar),
        ];
        for (triple, want) in cases {
            assert_eq!(classify(&triple).unwrap().kodaira_type, want, "{triple}");
        }
        let inf = Valuation::Infinite;
        let c4_zero = |vc6, d| ValuationTriple::new(inf, Valuation::Finite(vc6), d);
        assert_eq!(classify(&c4_zero(1, 2)).unwrap().kodaira_type, KodairaType::II);
        assert_eq!(classify(&c4_zero(2, 4)).unwrap().kodaira_type, KodairaType::IV);
        assert_eq!(classify(&c4_zero(4, 8)).unwrap().kodaira_type, KodairaType::IVStar);
        let c6_zero = ValuationTriple::new(Valuation::Finite(1), inf, 3);
        assert_eq!(classify(&c6_zero).unwrap().kodaira_type, KodairaType::III);
    }

    #[test]
    fn impossible_triples() {
        for bad in [t(1, 3, 5), t(2, 3, 5), t(3, 4, 7), t(3, 6, 11), t(1, 1, 3), t(1, 1, 1)] {
            assert!(
                matches!(classify(&bad), Err(Error::ImpossibleTriple(_))),
                "{bad} should be rejected"
            );
        }
        assert!(matches!(classify(&t(4, 6, 12)), Err(Error::NotMinimal(_))));
    }

    #[test]
    fn base_change_examples() {
        assert_eq!(base_change(&t(1, 1, 2), 5, 7).unwrap().kodaira_type, KodairaType::IIStar);
        assert_eq!(base_change(&t(1, 1, 2), 6, 7).unwrap().kodaira_type, KodairaType::I(0));
        assert_eq!(base_change(&t(2, 3, 7), 2, 5).unwrap().kodaira_type, KodairaType::I(2));
        assert_eq!(
            base_change(&t(1, 1, 2), 5, 5),
            Err(Error::WildBaseChange { p: 5, degree: 5 })
        );
    }

    #[test]
    fn kernel_valuations() {
        assert_eq!(kernel_coordinate_valuations(60).unwrap(), (-10, -15));
        assert_eq!(kernel_coordinate_valuations(0).unwrap(), (0, 0));
        assert_eq!(kernel_coordinate_valuations(36).unwrap(), (-6, -9));
        assert_eq!(kernel_coordinate_valuations(10), Err(Error::NotMultipleOf12(10)));
    }

    #[test]
    fn kernel_predicates() {
        assert!(torsion_not_in_kernel(6, 60, 5, 1));
        assert!(!torsion_not_in_kernel(20, 60, 5, 1));
        assert!(!torsion_not_in_kernel(6, 12, 7, 1));
        assert!(injective_on_torsion(2, 5, 1));
        assert!(!injective_on_torsion(4, 5, 1));
        assert!(injective_on_torsion(10, 5, 2));
    }

    #[test]
    fn point_reduction_examples() {
        let ctx = LocalContext::new(5, 1).unwrap();
        let q = Rational::from_int;
        let cusp = WeierstrassModel::short(q(0), q(25)).unwrap();
        let p = cusp.affine(q(0), q(5)).unwrap();
        assert_eq!(
            point_reduction(&cusp, &ctx, &p).unwrap(),
            PointReduction { in_kernel: false, nonsingular_image: false }
        );
        assert_eq!(
            point_reduction(&cusp, &ctx, &CurvePoint::Infinity).unwrap(),
            PointReduction { in_kernel: true, nonsingular_image: true }
        );
        let good = WeierstrassModel::short(q(-1), q(1)).unwrap();
        let p = good.affine(q(1), q(1)).unwrap();
        assert_eq!(
            point_reduction(&good, &ctx, &p).unwrap(),
            PointReduction { in_kernel: false, nonsingular_image: true }
        );
        let ram = LocalContext::new(5, 2).unwrap();
        assert_eq!(
            point_reduction(&good, &ram, &p),
            Err(Error::RamifiedRationalReduction(2))
        );
    }

    #[test]
    fn kodaira_parse_roundtrip() {
        for s in ["I0", "I7", "II", "III", "IV", "I0*", "I3*", "IV*", "III*", "II*"] {
            assert_eq!(s.parse::<KodairaType>().unwrap().to_string(), s);
        }
        assert!("V".parse::<KodairaType>().is_err());
    }

    #[test]
    fn record_json() {
        let r = classify(&t(5, 5, 10)).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"type":"II*","n":null,"label":"II*","triple":[5,5,10],"u_valuation":0,"component_group":1,"semistability_degree":6,"potentially_good":true}"#
        );
        let r = classify(&t(0, 0, 7)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["type"], "In");
        assert_eq!(v["n"], 7);
    }
}
