//! Exact coefficient arithmetic: rationals, quadratic fields, and their
//! normalized valuations and residues at a prime.

mod quadratic;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use quadratic::{
    quad_val, residue_reduce, splitting_type, QuadraticElement, QuadraticElementJson,
    QuadraticField, SplittingType,
};
pub use rational::{is_prime, val_p, Rational, Valuation};

use crate::error::Result;

/// Coefficient field of a Weierstrass model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Rational,
    Quadratic(Arc<QuadraticField>),
}

/// Element of an exact field with a distinguished prime above each `p`.
///
/// Valuations are normalized at that prime, so `valuation(p) =
/// ramification_index(p)` for the element `p`.
pub trait FieldElement:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Rational constant in the same field as `self`.
    fn embed(&self, r: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn try_inv(&self) -> Result<Self>;
    fn valuation(&self, p: u64) -> Result<Valuation>;
    fn residue(&self, p: u64) -> Result<u64>;
    fn ramification_index(&self, p: u64) -> Result<u64>;
    fn base(&self) -> Base;

    /// The element itself when the field is ℚ.
    fn as_rational(&self) -> Option<&Rational> {
        None
    }

    fn zero_like(&self) -> Self {
        self.embed(Rational::zero())
    }

    fn one_like(&self) -> Self {
        self.embed(Rational::one())
    }

    fn int_like(&self, n: i64) -> Self {
        self.embed(Rational::from_int(n))
    }
}

impl FieldElement for Rational {
    fn as_rational(&self) -> Option<&Rational> {
        Some(self)
    }

    fn embed(&self, r: Rational) -> Self {
        r
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }

    fn valuation(&self, p: u64) -> Result<Valuation> {
        Ok(self.val(p))
    }

    fn residue(&self, p: u64) -> Result<u64> {
        Rational::residue(self, p)
    }

    fn ramification_index(&self, _p: u64) -> Result<u64> {
        Ok(1)
    }

    fn base(&self) -> Base {
        Base::Rational
    }
}

impl FieldElement for QuadraticElement {
    fn embed(&self, r: Rational) -> Self {
        QuadraticElement::constant(self.field(), r)
    }

    fn is_zero(&self) -> bool {
        QuadraticElement::is_zero(self)
    }

    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }

    fn valuation(&self, p: u64) -> Result<Valuation> {
        quad_val(self, p)
    }

    fn residue(&self, p: u64) -> Result<u64> {
        residue_reduce(self, p)
    }

    fn ramification_index(&self, p: u64) -> Result<u64> {
        self.field().ramification_index(p)
    }

    fn base(&self) -> Base {
        Base::Quadratic(Arc::clone(self.field()))
    }
}
