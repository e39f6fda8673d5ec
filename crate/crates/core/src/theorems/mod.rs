//! Predicates restricting reduction types in the presence of a `p`-power
//! torsion point, plus the supersingularity congruences and the X1(5)
//! Bézout certificate.

mod bezout;
mod poly;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

pub use bezout::{
    c4_dehomogenized, c6_dehomogenized, computed_cofactor_numerators,
    verify_bezout_certificate, verify_bezout_certificate_for, BezoutReport, BinaryForm,
    CoefficientMismatch, IdentityTerm, Verdict, CERTIFICATE_CONSTANT, PRINTED_A, PRINTED_B,
};
pub use poly::{poly_ext_gcd, ExtendedGcd, UnivariatePolynomial};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::local::{KodairaType, TypeFamily};

/// Set of type families, iterated and serialized in table order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypeSet(BTreeSet<TypeFamily>);

impl TypeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn all_additive() -> Self {
        TypeFamily::ADDITIVE.into_iter().collect()
    }

    pub fn contains(&self, f: TypeFamily) -> bool {
        self.0.contains(&f)
    }

    pub fn insert(&mut self, f: TypeFamily) -> bool {
        self.0.insert(f)
    }

    pub fn remove(&mut self, f: TypeFamily) -> bool {
        self.0.remove(&f)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_subset(&self, other: &TypeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = TypeFamily> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<TypeFamily> for TypeSet {
    fn from_iter<I: IntoIterator<Item = TypeFamily>>(it: I) -> Self {
        TypeSet(it.into_iter().collect())
    }
}

impl fmt::Display for TypeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.iter().map(|t| t.name()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl Serialize for TypeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// `true` iff `vkp < (p − 1)/m`, i.e. purely additive reduction is ruled out
/// when the reduction becomes semistable over an extension of degree `m`.
pub fn purely_additive_excluded(p: u64, vkp: u64, m: u64) -> bool {
    debug_assert!(m >= 1);
    (vkp as u128) * (m as u128) < (p as u128).saturating_sub(1)
}

/// `p^(n−1)·(p − 1)`
fn torsion_bound(p: u64, n: u32) -> BigInt {
    BigInt::from(p).pow(n.saturating_sub(1)) * BigInt::from(p - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AllowedTypes {
    pub p: u64,
    pub n: u32,
    pub vkp: u64,
    /// Additive families not excluded; empty means semistable only.
    pub allowed: TypeSet,
    pub semistable_only: bool,
    /// `vkp ≥ B/2`: the interval restriction says nothing.
    pub interval_vacuous: bool,
    /// `vkp ≥ 5B/6`: no additive family is excluded at all.
    pub theorem_silent: bool,
}

/// Additive type families compatible with a point of order `p^n` over a
/// field with `v_K(p) = vkp`, where `B = p^(n−1)(p − 1)`.
///
/// Interval bands: `< B/6` none, `< B/4` {II}, `< B/3` {II, III},
/// `< B/2` {II, III, IV}, otherwise all. Then II*, III*, IV* are removed
/// below `5B/6`, `3B/4`, `2B/3` respectively.
pub fn allowed_additive_types(p: u64, n: u32, vkp: u64) -> TypeSet {
    allowed_additive_report(p, n, vkp).allowed
}

pub fn allowed_additive_report(p: u64, n: u32, vkp: u64) -> AllowedTypes {
    let b = torsion_bound(p, n);
    let v = BigInt::from(vkp);
    // vkp < num·B/den
    let below = |num: u32, den: u32| &v * den < &b * num;
    use TypeFamily::*;
    let mut allowed: TypeSet = if below(1, 6) {
        TypeSet::empty()
    } else if below(1, 4) {
        [II].into_iter().collect()
    } else if below(1, 3) {
        [II, III].into_iter().collect()
    } else if below(1, 2) {
        [II, III, IV].into_iter().collect()
    } else {
        TypeSet::all_additive()
    };
    if below(5, 6) {
        allowed.remove(IIStar);
    }
    if below(3, 4) {
        allowed.remove(IIIStar);
    }
    if below(2, 3) {
        allowed.remove(IVStar);
    }
    AllowedTypes {
        p,
        n,
        vkp,
        semistable_only: allowed.is_empty(),
        interval_vacuous: !below(1, 2),
        theorem_silent: !below(5, 6),
        allowed,
    }
}

fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= x {
        if x % q == 0 {
            let mut a = 0;
            while x % q == 0 {
                x /= q;
                a += 1;
            }
            out.push((q, a));
        }
        q += 1;
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// Smallest dimension of a faithful rational representation of a cyclic
/// group of order `x`: `0` for `x ≤ 1`, `L(x/2)` when `ord_2(x) = 1`, and
/// `Σ q^(a−1)(q − 1)` over `q^a ‖ x` otherwise.
pub fn l_function(x: u64) -> u64 {
    if x <= 1 {
        0
    } else if x % 4 == 2 {
        l_function(x / 2)
    } else {
        factorize(x)
            .into_iter()
            .map(|(q, a)| q.pow(a - 1) * (q - 1))
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceFeasibility {
    NoPurelyAdditive,
    PurelyAdditiveImpliesPotGood,
    Unrestricted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub p: u64,
    pub class: SurfaceFeasibility,
    /// Largest `m` with `L(m) ≤ 4`.
    pub max_tame_degree: u64,
    /// Largest `m` with `L(m) ≤ 3`.
    pub max_tame_degree_toric: u64,
    /// The coarser bound stated in the literature for `L(m) ≤ 3`; not asserted.
    pub published_toric_bound: u64,
    /// `L(p) ≤ 4`, so the semistability degree may be divisible by `p`.
    pub wild_degree_possible: bool,
}

/// Every `m` with `L(m)` at most `bound`. Each prime-power part `q^a ≠ 2`
/// of `m` contributes `q^(a−1)(q − 1)`, so small bounds stay far below the window.
fn degrees_with_l_at_most(bound: u64) -> Vec<u64> {
    (1..=10_000).filter(|&m| l_function(m) <= bound).collect()
}

fn derive_surface_class(p: u64) -> (SurfaceFeasibility, Vec<u64>, Vec<u64>, bool) {
    let all = degrees_with_l_at_most(4);
    let toric = degrees_with_l_at_most(3);
    let wild = l_function(p) <= 4;
    let class = if !wild && all.iter().all(|&m| purely_additive_excluded(p, 1, m)) {
        SurfaceFeasibility::NoPurelyAdditive
    } else if !wild && toric.iter().all(|&m| purely_additive_excluded(p, 1, m)) {
        SurfaceFeasibility::PurelyAdditiveImpliesPotGood
    } else {
        SurfaceFeasibility::Unrestricted
    };
    (class, all, toric, wild)
}

/// Purely additive reduction for abelian surfaces over a field with
/// `v_K(p) = 1` and a point of order `p`.
///
/// The case split is fixed; an independent re-derivation from
/// [`l_function`] and [`purely_additive_excluded`] must agree with it.
pub fn surface_feasibility(p: u64) -> Result<SurfaceReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::UnsupportedPrime(p));
    }
    let class = match p {
        5 | 7 => SurfaceFeasibility::Unrestricted,
        11 | 13 => SurfaceFeasibility::PurelyAdditiveImpliesPotGood,
        _ => SurfaceFeasibility::NoPurelyAdditive,
    };
    let (derived, all, toric, wild) = derive_surface_class(p);
    if derived != class {
        return Err(Error::CrossCheck(format!(
            "p = {p}: case split gives {class:?}, tame-degree enumeration gives {derived:?}"
        )));
    }
    Ok(SurfaceReport {
        p,
        class,
        max_tame_degree: *all.last().expect("m = 1 always qualifies"),
        max_tame_degree_toric: *toric.last().expect("m = 1 always qualifies"),
        published_toric_bound: 8,
        wild_degree_possible: wild,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Supersingularity {
    True,
    False,
    Indeterminate,
}

impl From<bool> for Supersingularity {
    fn from(b: bool) -> Self {
        if b {
            Supersingularity::True
        } else {
            Supersingularity::False
        }
    }
}

/// Whether potentially good reduction of the given type is potentially
/// supersingular. Types forcing `j = 0` answer `p ≡ 2 (mod 3)`, types
/// forcing `j = 1728` answer `p ≡ 3 (mod 4)`.
pub fn potentially_supersingular_family(family: TypeFamily, p: u64) -> Supersingularity {
    use TypeFamily::*;
    match family {
        II | IIStar | IV | IVStar => (p % 3 == 2).into(),
        III | IIIStar => (p % 4 == 3).into(),
        I0 | In | I0Star | InStar => Supersingularity::Indeterminate,
    }
}

pub fn potentially_supersingular(kodaira_type: KodairaType, p: u64) -> Supersingularity {
    potentially_supersingular_family(kodaira_type.family(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use TypeFamily::*;

    fn set(v: &[TypeFamily]) -> TypeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn purely_additive_examples() {
        // v_K(p) = (p − 1)/2 with a degree-2 semistability extension sits on the boundary
        assert!(!purely_additive_excluded(29, 14, 2));
        assert!(purely_additive_excluded(29, 1, 14));
        assert!(purely_additive_excluded(17, 1, 12));
        assert!(!purely_additive_excluded(7, 1, 6));
    }

    #[test]
    fn allowed_examples() {
        assert_eq!(allowed_additive_types(13, 1, 1), TypeSet::empty());
        assert_eq!(allowed_additive_types(7, 1, 1), set(&[II]));
        assert_eq!(allowed_additive_types(5, 1, 1), set(&[II, III]));
        assert_eq!(
            allowed_additive_types(5, 1, 2),
            set(&[II, III, IV, I0Star, InStar])
        );
    }

    #[test]
    fn allowed_flags() {
        let r = allowed_additive_report(5, 1, 2);
        assert!(r.interval_vacuous);
        assert!(!r.theorem_silent);
        let r = allowed_additive_report(5, 1, 4);
        assert!(r.theorem_silent);
        assert_eq!(r.allowed, TypeSet::all_additive());
        assert!(allowed_additive_report(13, 1, 1).semistable_only);
    }

    #[test]
    fn allowed_thresholds_at_higher_n() {
        // B = 5 * 4 = 20
        assert_eq!(allowed_additive_types(5, 2, 3), TypeSet::empty());
        assert_eq!(allowed_additive_types(5, 2, 4), set(&[II]));
        assert_eq!(allowed_additive_types(5, 2, 10), set(&[II, III, IV, I0Star, InStar]));
        assert_eq!(
            allowed_additive_types(5, 2, 14),
            set(&[II, III, IV, I0Star, InStar, IVStar])
        );
        assert_eq!(
            allowed_additive_types(5, 2, 15),
            set(&[II, III, IV, I0Star, InStar, IVStar, IIIStar])
        );
        assert_eq!(allowed_additive_types(5, 2, 17), TypeSet::all_additive());
    }

    #[test]
    fn typeset_serializes_in_table_order() {
        let s = set(&[IIStar, III, II, InStar]);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"["II","III","In*","II*"]"#
        );
        assert_eq!(s.to_string(), "{II,III,In*,II*}");
    }

    #[test]
    fn l_function_examples() {
        assert_eq!(l_function(0), 0);
        assert_eq!(l_function(1), 0);
        assert_eq!(l_function(2), 0);
        assert_eq!(l_function(12), 4);
        assert_eq!(l_function(10), 4);
        assert_eq!(l_function(8), 4);
        assert_eq!(l_function(7), 6);
        assert_eq!(l_function(30), 6);
    }

    #[test]
    fn surface_trichotomy() {
        use SurfaceFeasibility::*;
        for (p, c) in [
            (5, Unrestricted),
            (7, Unrestricted),
            (11, PurelyAdditiveImpliesPotGood),
            (13, PurelyAdditiveImpliesPotGood),
            (17, NoPurelyAdditive),
            (101, NoPurelyAdditive),
        ] {
            let r = surface_feasibility(p).unwrap();
            assert_eq!(r.class, c, "p = {p}");
            assert_eq!(r.max_tame_degree, 12);
            assert_eq!(r.max_tame_degree_toric, 6);
        }
        assert!(surface_feasibility(5).unwrap().wild_degree_possible);
        assert_eq!(surface_feasibility(3), Err(Error::UnsupportedPrime(3)));
        assert_eq!(surface_feasibility(15), Err(Error::NotPrime(15)));
    }

    #[test]
    fn supersingular_examples() {
        assert_eq!(potentially_supersingular(KodairaType::II, 5), Supersingularity::True);
        assert_eq!(potentially_supersingular(KodairaType::III, 5), Supersingularity::False);
        assert_eq!(potentially_supersingular(KodairaType::III, 7), Supersingularity::True);
        assert_eq!(
            potentially_supersingular(KodairaType::I(3), 7),
            Supersingularity::Indeterminate
        );
        assert_eq!(potentially_supersingular(KodairaType::IVStar, 7), Supersingularity::False);
    }
}
