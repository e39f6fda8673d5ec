//! Bézout certificate showing that `c4` and `c6` of the X1(5) family have
//! no common zero over `Q`, with the denominator `2^12·3^6·5`.

use num_bigint::BigInt;
use serde::Serialize;

use super::poly::{poly_ext_gcd, UnivariatePolynomial};
use crate::arith::Rational;

/// `2^12 · 3^6 · 5`
pub const CERTIFICATE_CONSTANT: i64 = 14_929_920;

/// Numerators of the published cofactors over `CERTIFICATE_CONSTANT`,
/// constant term first, as printed.
pub const PRINTED_A: [i64; 6] = [
    698_035_968,
    4_900_020_480,
    -472_780_800,
    4_965_235_200,
    -1_171_065_600,
    6_471_756,
];
pub const PRINTED_B: [i64; 4] = [683_106_048, 980_543_232, -782_763_264, 64_717_056];

/// `c4(x, 1)` of the X1(5) model, built from `24·x·(1 − x) + (x² − 6x + 1)²`.
pub fn c4_dehomogenized() -> UnivariatePolynomial {
    let x = UnivariatePolynomial::x();
    let one_minus_x = UnivariatePolynomial::from_ints(&[1, -1]);
    let q = UnivariatePolynomial::from_ints(&[1, -6, 1]);
    let lin = (&x * &one_minus_x).scale(&Rational::from_int(24));
    &lin + &(&q * &q)
}

/// `c6(x, 1) = −(x² + 1)(x⁴ − 18x³ + 74x² + 18x + 1)`.
pub fn c6_dehomogenized() -> UnivariatePolynomial {
    let a = UnivariatePolynomial::from_ints(&[1, 0, 1]);
    let b = UnivariatePolynomial::from_ints(&[1, 18, 74, -18, 1]);
    -&(&a * &b)
}

/// Homogeneous polynomial in `(s, t)`; `coeffs[i]` multiplies `s^i t^(degree−i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: usize,
    pub coeffs: Vec<Rational>,
}

impl BinaryForm {
    /// `t^degree · p(s/t)`; `None` if `deg p > degree`.
    pub fn homogenize(p: &UnivariatePolynomial, degree: usize) -> Option<Self> {
        if p.degree().is_some_and(|d| d > degree) {
            return None;
        }
        Some(BinaryForm {
            degree,
            coeffs: (0..=degree).map(|i| p.coeff(i)).collect(),
        })
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, c)| {
                &acc + &(&(c * &s.pow(i as i32)) * &t.pow((self.degree - i) as i32))
            })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let degree = self.degree + rhs.degree;
        let mut coeffs = vec![Rational::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        BinaryForm { degree, coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Option<Self> {
        (self.degree == rhs.degree).then(|| BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientMismatch {
    pub cofactor: &'static str,
    pub degree: usize,
    pub printed: String,
    pub computed: String,
}

/// Nonzero coefficient of `A·c4 + B·c6 − K·t^9`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityTerm {
    pub s_power: usize,
    pub t_power: usize,
    pub value: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BezoutReport {
    pub verdict: Verdict,
    pub constant: i64,
    pub f: String,
    pub g: String,
    pub gcd_is_one: bool,
    pub a_degree: Option<usize>,
    pub b_degree: Option<usize>,
    /// Computed numerators over `constant`, constant term first.
    pub computed_a: Vec<String>,
    pub computed_b: Vec<String>,
    pub coefficient_mismatches: Vec<CoefficientMismatch>,
    /// `A(s,t)` and `B(s,t)` from the computed cofactors have integer coefficients.
    pub cofactors_integral: bool,
    /// The two-variable identity holds for the computed cofactors.
    pub identity_holds: bool,
    /// Violations of the identity by the printed cofactors.
    pub printed_identity_violations: Vec<IdentityTerm>,
}

fn numerators(p: &UnivariatePolynomial, k: &Rational) -> Vec<String> {
    p.coeffs().iter().map(|c| (c * k).to_string()).collect()
}

fn from_numerators(nums: &[i64], k: &Rational) -> UnivariatePolynomial {
    let k_inv = k.inv().expect("nonzero constant");
    UnivariatePolynomial::new(nums.iter().map(|&n| &Rational::from_int(n) * &k_inv).collect())
}

/// `A·c4 + B·c6 − K t^9` as a list of nonzero terms, or a single term at
/// `s_power = usize::MAX` when the degrees do not fit the homogenization.
fn identity_violations(
    a: &UnivariatePolynomial,
    b: &UnivariatePolynomial,
    f: &UnivariatePolynomial,
    g: &UnivariatePolynomial,
    k: &Rational,
) -> Vec<IdentityTerm> {
    let forms = (
        BinaryForm::homogenize(a, 5),
        BinaryForm::homogenize(b, 3),
        BinaryForm::homogenize(f, 4),
        BinaryForm::homogenize(g, 6),
    );
    let (Some(ha), Some(hb), Some(hf), Some(hg)) = forms else {
        return vec![IdentityTerm {
            s_power: usize::MAX,
            t_power: 0,
            value: "degree overflow".into(),
        }];
    };
    let lhs = ha
        .scale(k)
        .mul(&hf)
        .add(&hb.scale(k).mul(&hg))
        .expect("both products have degree 9");
    lhs.coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            let expected = if i == 0 { k.clone() } else { Rational::zero() };
            let diff = c - &expected;
            (!diff.is_zero()).then(|| IdentityTerm {
                s_power: i,
                t_power: 9 - i,
                value: diff.to_string(),
            })
        })
        .collect()
}

/// Certificate check for arbitrary `f`, `g` against the printed cofactors.
pub fn verify_bezout_certificate_for(
    f: &UnivariatePolynomial,
    g: &UnivariatePolynomial,
) -> BezoutReport {
    let k = Rational::from_int(CERTIFICATE_CONSTANT);
    let printed_a = from_numerators(&PRINTED_A, &k);
    let printed_b = from_numerators(&PRINTED_B, &k);
    let printed_identity_violations = identity_violations(&printed_a, &printed_b, f, g, &k);

    let gcd = poly_ext_gcd(f, g).ok();
    let gcd_is_one = gcd
        .as_ref()
        .is_some_and(|r| r.gcd == UnivariatePolynomial::constant(Rational::one()));
    let (a, b) = gcd
        .map(|r| (r.a, r.b))
        .unwrap_or_else(|| (UnivariatePolynomial::zero(), UnivariatePolynomial::zero()));

    let mut coefficient_mismatches = Vec::new();
    for (name, computed, printed) in [("a", &a, &printed_a), ("b", &b, &printed_b)] {
        let len = computed.coeffs().len().max(printed.coeffs().len());
        for i in 0..len {
            let (c, p) = (computed.coeff(i), printed.coeff(i));
            if c != p {
                coefficient_mismatches.push(CoefficientMismatch {
                    cofactor: name,
                    degree: i,
                    printed: (&p * &k).to_string(),
                    computed: (&c * &k).to_string(),
                });
            }
        }
    }

    let cofactors_integral = match (BinaryForm::homogenize(&a, 5), BinaryForm::homogenize(&b, 3)) {
        (Some(ha), Some(hb)) => ha.scale(&k).is_integral() && hb.scale(&k).is_integral(),
        _ => false,
    };
    let identity_holds = gcd_is_one && identity_violations(&a, &b, f, g, &k).is_empty();

    let pass = gcd_is_one
        && coefficient_mismatches.is_empty()
        && cofactors_integral
        && identity_holds
        && printed_identity_violations.is_empty();
    BezoutReport {
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        constant: CERTIFICATE_CONSTANT,
        f: f.to_string(),
        g: g.to_string(),
        gcd_is_one,
        a_degree: a.degree(),
        b_degree: b.degree(),
        computed_a: numerators(&a, &k),
        computed_b: numerators(&b, &k),
        coefficient_mismatches,
        cofactors_integral,
        identity_holds,
        printed_identity_violations,
    }
}

/// Recompute the cofactors of `c4(x,1)`, `c6(x,1)` and check them against
/// the published certificate.
pub fn verify_bezout_certificate() -> BezoutReport {
    verify_bezout_certificate_for(&c4_dehomogenized(), &c6_dehomogenized())
}

/// Exact integer cofactor numerators for `c4(x,1)`, `c6(x,1)`.
pub fn computed_cofactor_numerators() -> (Vec<BigInt>, Vec<BigInt>) {
    let k = Rational::from_int(CERTIFICATE_CONSTANT);
    let r = poly_ext_gcd(&c4_dehomogenized(), &c6_dehomogenized()).expect("nonzero inputs");
    let conv = |p: &UnivariatePolynomial| {
        p.coeffs()
            .iter()
            .map(|c| (c * &k).numer().clone())
            .collect::<Vec<_>>()
    };
    (conv(&r.a), conv(&r.b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::x1_5_closed_forms;

    #[test]
    fn constant_factorization() {
        assert_eq!(CERTIFICATE_CONSTANT, 4096 * 729 * 5);
    }

    #[test]
    fn dehomogenized_invariants_match_printed() {
        assert_eq!(c4_dehomogenized(), UnivariatePolynomial::from_ints(&[1, 12, 14, -12, 1]));
        let g = c6_dehomogenized();
        assert_eq!(g.degree(), Some(6));
        assert_eq!(g.coeff(6), Rational::from_int(-1));
    }

    #[test]
    fn forms_agree_with_family_closed_forms() {
        let f = BinaryForm::homogenize(&c4_dehomogenized(), 4).unwrap();
        let g = BinaryForm::homogenize(&c6_dehomogenized(), 6).unwrap();
        for (s, t) in [(3, 1), (18, 1), (2, 5), (-7, 3), (1, 1)] {
            let (s, t) = (Rational::from_int(s), Rational::from_int(t));
            let (c4, c6, _) = x1_5_closed_forms(&s, &t);
            assert_eq!(f.eval(&s, &t), c4);
            assert_eq!(g.eval(&s, &t), c6);
        }
    }

    #[test]
    fn computed_cofactors_satisfy_identity() {
        let r = verify_bezout_certificate();
        assert!(r.gcd_is_one);
        assert!(r.identity_holds);
        assert!(r.cofactors_integral);
        assert_eq!(r.a_degree, Some(5));
        assert_eq!(r.b_degree, Some(3));
    }

    #[test]
    fn computed_leading_numerator_is_64717056() {
        let (a, b) = computed_cofactor_numerators();
        assert_eq!(a[5], BigInt::from(64_717_056));
        assert_eq!(b[3], BigInt::from(64_717_056));
        for (i, &p) in PRINTED_A.iter().enumerate().take(5) {
            assert_eq!(a[i], BigInt::from(p));
        }
        for (i, &p) in PRINTED_B.iter().enumerate() {
            assert_eq!(b[i], BigInt::from(p));
        }
    }

    #[test]
    fn printed_leading_coefficient_is_flagged() {
        let r = verify_bezout_certificate();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(
            r.coefficient_mismatches,
            vec![CoefficientMismatch {
                cofactor: "a",
                degree: 5,
                printed: "6471756".into(),
                computed: "64717056".into(),
            }]
        );
        assert!(!r.printed_identity_violations.is_empty());
    }

    #[test]
    fn perturbed_input_pinpoints_violation() {
        let f = c4_dehomogenized();
        for i in 0..=4 {
            let mut c = f.coeffs().to_vec();
            c[i] = &c[i] + &Rational::one();
            let r = verify_bezout_certificate_for(&UnivariatePolynomial::new(c), &c6_dehomogenized());
            assert_eq!(r.verdict, Verdict::Fail);
            assert!(!r.printed_identity_violations.is_empty());
        }
    }
}
