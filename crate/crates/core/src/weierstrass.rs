//! General Weierstrass models `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`
//! over an exact field, their standard invariants, changes of model, and
//! the chord-tangent group law on affine-or-infinity points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{Base, FieldElement, Rational};
use crate::error::{Error, Result};

/// Default cap for [`point_order`].
pub const DEFAULT_MAX_ORDER: u64 = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct Invariants<F> {
    pub b2: F,
    pub b4: F,
    pub b6: F,
    pub b8: F,
    pub c4: F,
    pub c6: F,
    pub discriminant: F,
    pub j: F,
}

/// Compute `b2, b4, b6, b8, c4, c6, Δ, j` from `[a1, a2, a3, a4, a6]`.
pub fn invariants_of<F: FieldElement>(a: &[F; 5]) -> Result<Invariants<F>> {
    let [a1, a2, a3, a4, a6] = a.clone();
    let k = |n: i64| a1.int_like(n);

    let b2 = a1.clone() * a1.clone() + k(4) * a2.clone();
    let b4 = k(2) * a4.clone() + a1.clone() * a3.clone();
    let b6 = a3.clone() * a3.clone() + k(4) * a6.clone();
    let b8 = a1.clone() * a1.clone() * a6.clone() + k(4) * a2.clone() * a6.clone()
        - a1.clone() * a3.clone() * a4.clone()
        + a2.clone() * a3.clone() * a3.clone()
        - a4.clone() * a4.clone();
    let c4 = b2.clone() * b2.clone() - k(24) * b4.clone();
    let c6 = -(b2.clone() * b2.clone() * b2.clone()) + k(36) * b2.clone() * b4.clone()
        - k(216) * b6.clone();
    let discriminant = -(b2.clone() * b2.clone() * b8.clone())
        - k(8) * b4.clone() * b4.clone() * b4.clone()
        - k(27) * b6.clone() * b6.clone()
        + k(9) * b2.clone() * b4.clone() * b6.clone();
    if discriminant.is_zero() {
        return Err(Error::Singular);
    }
    let j = c4.clone() * c4.clone() * c4.clone() * discriminant.try_inv()?;
    Ok(Invariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        c6,
        discriminant,
        j,
    })
}

/// Nonsingular Weierstrass model; invariants are computed once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassModel<F> {
    a: [F; 5],
    inv: Invariants<F>,
}

impl<F: FieldElement> WeierstrassModel<F> {
    pub fn new(a: [F; 5]) -> Result<Self> {
        let inv = invariants_of(&a)?;
        Ok(WeierstrassModel { a, inv })
    }

    /// `y² = x³ + a4·x + a6`
    pub fn short(a4: F, a6: F) -> Result<Self> {
        let z = a4.zero_like();
        Self::new([z.clone(), z.clone(), z, a4, a6])
    }

    pub fn coefficients(&self) -> &[F; 5] {
        &self.a
    }

    pub fn a1(&self) -> &F {
        &self.a[0]
    }
    pub fn a2(&self) -> &F {
        &self.a[1]
    }
    pub fn a3(&self) -> &F {
        &self.a[2]
    }
    pub fn a4(&self) -> &F {
        &self.a[3]
    }
    pub fn a6(&self) -> &F {
        &self.a[4]
    }

    pub fn invariants(&self) -> &Invariants<F> {
        &self.inv
    }

    pub fn base(&self) -> Base {
        self.a[0].base()
    }

    pub fn zero(&self) -> F {
        self.a[0].zero_like()
    }

    pub fn contains(&self, pt: &CurvePoint<F>) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.equation_at(x, y).is_zero(),
        }
    }

    /// Left side minus right side of the Weierstrass equation.
    pub fn equation_at(&self, x: &F, y: &F) -> F {
        let [a1, a2, a3, a4, a6] = self.a.clone();
        let (x, y) = (x.clone(), y.clone());
        y.clone() * y.clone() + a1 * x.clone() * y.clone() + a3 * y
            - x.clone() * x.clone() * x.clone()
            - a2 * x.clone() * x.clone()
            - a4 * x
            - a6
    }

    pub fn affine(&self, x: F, y: F) -> Result<CurvePoint<F>> {
        let p = CurvePoint::Affine { x, y };
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::OffCurve)
        }
    }

    fn check(&self, p: &CurvePoint<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    pub fn negate(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check(p)?;
        Ok(self.negate_unchecked(p))
    }

    fn negate_unchecked(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y.clone() - self.a1().clone() * x.clone() - self.a3().clone(),
            },
        }
    }

    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check(p)?;
        self.check(q)?;
        self.add_unchecked(p, q)
    }

    fn add_unchecked(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return Ok(q.clone()),
            (_, CurvePoint::Infinity) => return Ok(p.clone()),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1.clone(), y1.clone(), x2.clone(), y2.clone())
            }
        };
        let [a1, a2, a3, a4, _] = self.a.clone();
        let slope = if x1 == x2 {
            let denom = y1.clone() + y2.clone() + a1.clone() * x2.clone() + a3.clone();
            if denom.is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            // Tangent; here y1 = y2, so denom = 2y1 + a1x1 + a3.
            let num = x1.int_like(3) * x1.clone() * x1.clone() + x1.int_like(2) * a2.clone() * x1.clone()
                + a4
                - a1.clone() * y1.clone();
            num * denom.try_inv()?
        } else {
            (y2 - y1.clone()) * (x2.clone() - x1.clone()).try_inv()?
        };
        let intercept = y1 - slope.clone() * x1.clone();
        let x3 = slope.clone() * slope.clone() + a1.clone() * slope.clone() - a2 - x1 - x2;
        let y3 = -(slope + a1) * x3.clone() - intercept - a3;
        Ok(CurvePoint::Affine { x: x3, y: y3 })
    }

    /// `n·P` by double-and-add; negative `n` uses `-P`.
    pub fn multiply(&self, n: i64, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check(p)?;
        let mut base = if n < 0 { self.negate_unchecked(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base)?;
            }
            base = self.add_unchecked(&base, &base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn transform(&self, t: &ModelTransformation<F>) -> Result<Self> {
        transform(self, t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint<F> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F> CurvePoint<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

/// `x = u²x' + r`, `y = u³y' + s·u²x' + t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelTransformation<F> {
    pub u: F,
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: FieldElement> ModelTransformation<F> {
    pub fn new(u: F, r: F, s: F, t: F) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(ModelTransformation { u, r, s, t })
    }

    pub fn identity_like(x: &F) -> Self {
        ModelTransformation {
            u: x.one_like(),
            r: x.zero_like(),
            s: x.zero_like(),
            t: x.zero_like(),
        }
    }

    pub fn scaling(u: F) -> Result<Self> {
        let z = u.zero_like();
        Self::new(u, z.clone(), z.clone(), z)
    }

    /// Apply `self` first, then `next`.
    pub fn then(&self, next: &Self) -> Self {
        let (u1, r1, s1, t1) = (&self.u, &self.r, &self.s, &self.t);
        let (u2, r2, s2, t2) = (&next.u, &next.r, &next.s, &next.t);
        let u1sq = u1.clone() * u1.clone();
        ModelTransformation {
            u: u1.clone() * u2.clone(),
            r: r1.clone() + u1sq.clone() * r2.clone(),
            s: s1.clone() + u1.clone() * s2.clone(),
            t: t1.clone()
                + u1sq.clone() * s1.clone() * r2.clone()
                + u1sq * u1.clone() * t2.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let ui = self.u.try_inv()?;
        let ui2 = ui.clone() * ui.clone();
        Ok(ModelTransformation {
            r: -(self.r.clone() * ui2.clone()),
            s: -(self.s.clone() * ui.clone()),
            t: (self.r.clone() * self.s.clone() - self.t.clone()) * ui2 * ui.clone(),
            u: ui,
        })
    }

    /// Image of a point of the source model on the transformed model.
    pub fn map_point(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        match p {
            CurvePoint::Infinity => Ok(CurvePoint::Infinity),
            CurvePoint::Affine { x, y } => {
                let ui = self.u.try_inv()?;
                let ui2 = ui.clone() * ui.clone();
                let xp = (x.clone() - self.r.clone()) * ui2.clone();
                let yp = (y.clone() - self.s.clone() * self.u.clone() * self.u.clone() * xp.clone()
                    - self.t.clone())
                    * ui2
                    * ui;
                Ok(CurvePoint::Affine { x: xp, y: yp })
            }
        }
    }
}

/// Change of Weierstrass model; invariants scale by `u⁻⁴, u⁻⁶, u⁻¹²`.
pub fn transform<F: FieldElement>(
    model: &WeierstrassModel<F>,
    t: &ModelTransformation<F>,
) -> Result<WeierstrassModel<F>> {
    if t.u.is_zero() {
        return Err(Error::ZeroScale);
    }
    let [a1, a2, a3, a4, a6] = model.a.clone();
    let (r, s, tt) = (t.r.clone(), t.s.clone(), t.t.clone());
    let k = |n: i64| a1.int_like(n);
    let ui = t.u.try_inv()?;
    let ui2 = ui.clone() * ui.clone();
    let ui3 = ui2.clone() * ui.clone();
    let ui4 = ui2.clone() * ui2.clone();
    let ui6 = ui3.clone() * ui3.clone();

    let n1 = a1.clone() + k(2) * s.clone();
    let n2 = a2.clone() - s.clone() * a1.clone() + k(3) * r.clone() - s.clone() * s.clone();
    let n3 = a3.clone() + r.clone() * a1.clone() + k(2) * tt.clone();
    let n4 = a4.clone() - s.clone() * a3.clone() + k(2) * r.clone() * a2.clone()
        - (tt.clone() + r.clone() * s.clone()) * a1.clone()
        + k(3) * r.clone() * r.clone()
        - k(2) * s * tt.clone();
    let n6 = a6 + r.clone() * a4 + r.clone() * r.clone() * a2 + r.clone() * r.clone() * r.clone()
        - tt.clone() * a3
        - tt.clone() * tt.clone()
        - r * tt * a1;
    WeierstrassModel::new([n1 * ui, n2 * ui2, n3 * ui3, n4 * ui4, n6 * ui6])
}

pub fn add<F: FieldElement>(
    model: &WeierstrassModel<F>,
    p: &CurvePoint<F>,
    q: &CurvePoint<F>,
) -> Result<CurvePoint<F>> {
    model.add(p, q)
}

/// Smallest `n` in `1..=max_order` with `n·P = O`, by repeated addition.
pub fn point_order<F: FieldElement>(
    model: &WeierstrassModel<F>,
    p: &CurvePoint<F>,
    max_order: u64,
) -> Result<Option<u64>> {
    model.check(p)?;
    let scale = integral_scale(model);
    let mut acc = p.clone();
    for n in 1..=max_order {
        if acc.is_infinity() {
            return Ok(Some(n));
        }
        if let (Some(d), CurvePoint::Affine { x, .. }) = (&scale, &acc) {
            if !torsion_denominator(d, x) {
                return Ok(None);
            }
        }
        acc = model.add_unchecked(&acc, p)?;
    }
    Ok(None)
}

/// `d` with `d^i·a_i` integral, for models over ℚ.
fn integral_scale<F: FieldElement>(model: &WeierstrassModel<F>) -> Option<BigInt> {
    model
        .coefficients()
        .iter()
        .try_fold(BigInt::one(), |d, a| Some(d.lcm(a.as_rational()?.denom())))
}

/// Whether `x` could be the abscissa of a torsion point. On the integral
/// model `x' = d²·x`, torsion points have `4·x'` integral, so any multiple
/// failing this proves the point has infinite order.
fn torsion_denominator<F: FieldElement>(d: &BigInt, x: &F) -> bool {
    let Some(x) = x.as_rational() else { return true };
    let den = x.denom();
    let rest = den / den.gcd(&(d * d));
    (BigInt::from(4) % rest).is_zero()
}

impl WeierstrassModel<Rational> {
    /// Model from integer coefficients.
    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(Rational::from_int))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn pt(x: i64, y: i64) -> CurvePoint<Rational> {
        CurvePoint::Affine { x: q(x), y: q(y) }
    }

    #[test]
    fn short_form_invariants() {
        let e = WeierstrassModel::short(q(0), q(1)).unwrap();
        let inv = e.invariants();
        assert_eq!(inv.c4, q(0));
        assert_eq!(inv.c6, q(-864));
        assert_eq!(inv.discriminant, q(-432));
        assert_eq!(inv.j, q(0));
    }

    #[test]
    fn x1_5_member_invariants() {
        // y² - y = x³ - x²
        let e = WeierstrassModel::from_ints([0, -1, -1, 0, 0]).unwrap();
        let inv = e.invariants();
        assert_eq!(inv.discriminant, q(-11));
        assert_eq!(inv.c4, q(16));
        assert_eq!(inv.c6, q(-152));
        assert_eq!(q(1728) * q(-11), q(16 * 16 * 16) - q(152 * 152));
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(WeierstrassModel::short(q(0), q(0)).unwrap_err(), Error::Singular);
        assert_eq!(WeierstrassModel::short(q(-3), q(2)).unwrap_err(), Error::Singular);
    }

    #[test]
    fn identity_transform() {
        let e = WeierstrassModel::from_ints([1, -1, 1, -3, 5]).unwrap();
        let id = ModelTransformation::identity_like(&q(0));
        assert_eq!(e.transform(&id).unwrap(), e);
        assert_eq!(
            ModelTransformation::new(q(0), q(1), q(0), q(0)).unwrap_err(),
            Error::ZeroScale
        );
    }

    #[test]
    fn inverse_transform_roundtrip() {
        let e = WeierstrassModel::from_ints([1, -1, 1, -3, 5]).unwrap();
        let t = ModelTransformation::new(q(3), q(-2), q(5), q(7)).unwrap();
        let back = e.transform(&t).unwrap().transform(&t.inverse().unwrap()).unwrap();
        assert_eq!(back, e);
        let composed = t.then(&t.inverse().unwrap());
        assert_eq!(composed, ModelTransformation::identity_like(&q(0)));
    }

    #[test]
    fn group_law_examples() {
        let e = WeierstrassModel::from_ints([0, -1, -1, 0, 0]).unwrap();
        let p = pt(0, 0);
        assert_eq!(e.add(&p, &CurvePoint::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &p).unwrap(), pt(1, 1));
        let neg = e.negate(&p).unwrap();
        assert_eq!(e.add(&p, &neg).unwrap(), CurvePoint::Infinity);
        assert_eq!(e.add(&pt(1, 2), &p).unwrap_err(), Error::OffCurve);
    }

    #[test]
    fn orders() {
        let e = WeierstrassModel::from_ints([0, -1, -1, 0, 0]).unwrap();
        assert_eq!(point_order(&e, &pt(0, 0), 20).unwrap(), Some(5));
        assert_eq!(point_order(&e, &CurvePoint::Infinity, 20).unwrap(), Some(1));
        assert_eq!(point_order(&e, &pt(0, 0), 4).unwrap(), None);
        // y² = x³ + 1 has (2,3) of order 6 and (0,1) of order 3.
        let f = WeierstrassModel::short(q(0), q(1)).unwrap();
        assert_eq!(point_order(&f, &pt(2, 3), 20).unwrap(), Some(6));
        assert_eq!(point_order(&f, &pt(0, 1), 20).unwrap(), Some(3));
        assert_eq!(point_order(&f, &pt(-1, 0), 20).unwrap(), Some(2));
    }

    #[test]
    fn multiply_matches_repeated_addition() {
        let f = WeierstrassModel::short(q(0), q(1)).unwrap();
        let p = pt(2, 3);
        let mut acc = CurvePoint::Infinity;
        for n in 0..13 {
            assert_eq!(f.multiply(n, &p).unwrap(), acc);
            acc = f.add(&acc, &p).unwrap();
        }
        assert_eq!(f.multiply(-1, &p).unwrap(), f.negate(&p).unwrap());
    }

    fn naive_order(e: &WeierstrassModel<Rational>, p: &CurvePoint<Rational>, max: u64) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=max {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = e.add(&acc, p).unwrap();
        }
        None
    }

    #[test]
    fn quarter_denominator_two_torsion_is_kept() {
        // y² + xy = x³ + 4x² + x: (-1/4, 1/8) has order 2
        let e = WeierstrassModel::from_ints([1, 4, 0, 1, 0]).unwrap();
        let p = e.affine(Rational::new(-1, 4).unwrap(), Rational::new(1, 8).unwrap()).unwrap();
        assert_eq!(point_order(&e, &p, 10).unwrap(), Some(2));
    }

    #[test]
    fn non_integral_model_keeps_torsion() {
        // scaling y² = x³ + 1 by u = 2 gives a model with fractional coefficients
        let f = WeierstrassModel::short(q(0), q(1)).unwrap();
        let t = ModelTransformation::scaling(q(2)).unwrap();
        let g = f.transform(&t).unwrap();
        let p = t.map_point(&pt(2, 3)).unwrap();
        assert!(!g.coefficients()[4].is_integer());
        assert_eq!(point_order(&g, &p, 20).unwrap(), Some(6));
    }

    #[test]
    fn infinite_order_exits_early() {
        let e = WeierstrassModel::short(q(0), q(-2)).unwrap();
        assert_eq!(point_order(&e, &pt(3, 5), 200).unwrap(), None);
        assert_eq!(point_order(&e, &pt(3, 5), 30).unwrap(), naive_order(&e, &pt(3, 5), 30));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn early_exit_agrees_with_repeated_addition(
            bn in -12i64..=12, bd in 1i64..=6, cn in -12i64..=12, cd in 1i64..=6,
        ) {
            let (b, c) = (Rational::new(bn, bd).unwrap(), Rational::new(cn, cd).unwrap());
            let Ok(e) = crate::families::tate_normal(b, c) else { return Ok(()) };
            let p = pt(0, 0);
            proptest::prop_assert_eq!(point_order(&e, &p, 16).unwrap(), naive_order(&e, &p, 16));
        }
    }
}
