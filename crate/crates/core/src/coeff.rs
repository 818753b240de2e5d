//! Coefficient domains for algebra elements and tensors.
//!
//! Tensors over an algebra are linear in their coefficients, so most of the
//! machinery only needs a module over the rationals ([`Coeff`]). Products of
//! two coefficient values (jacobiators, Yang-Baxter products) need a ring
//! ([`RingCoeff`]).
//!
//! [`LinExpr`] is the coefficient type used to assemble linear constraint
//! systems: running an identity with `LinExpr` coefficients yields, entry by
//! entry, the linear forms that must vanish.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::poly::MultiPoly;
use crate::rational::Rational;

pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn scale(&self, q: &Rational) -> Self;

    /// `self += q * x`, the inner loop of every bilinear expansion.
    fn add_scaled(&mut self, x: &Self, q: &Rational) {
        if !q.is_zero() && !x.is_zero() {
            *self += &x.scale(q);
        }
    }
}

pub trait RingCoeff:
    Coeff + One + Mul<Output = Self> + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_rational(q: Rational) -> Self;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other
    }
}

impl Coeff for Rational {
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }

    fn add_scaled(&mut self, x: &Self, q: &Rational) {
        if !q.is_zero() && !x.is_zero() {
            *self += &(x * q);
        }
    }
}

impl RingCoeff for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coeff for MultiPoly {
    fn scale(&self, q: &Rational) -> Self {
        MultiPoly::scale(self, q)
    }
}

impl RingCoeff for MultiPoly {
    fn from_rational(q: Rational) -> Self {
        MultiPoly::constant(q)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// A sparse linear form `sum_k c_k * u_k` over numbered unknowns.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct LinExpr {
    terms: BTreeMap<usize, Rational>,
}

impl LinExpr {
    pub fn var(index: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(index, Rational::one());
        LinExpr { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value of the form at a concrete assignment of the unknowns.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.terms.iter().map(|(&k, c)| c * &point[k]).sum()
    }

    fn accumulate(&mut self, other: &LinExpr, factor: &Rational) {
        for (&k, c) in &other.terms {
            let v = self.terms.entry(k).or_insert_with(Rational::zero);
            *v += &(c * factor);
            if v.is_zero() {
                self.terms.remove(&k);
            }
        }
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*u{k}")?;
        }
        Ok(())
    }
}

impl Zero for LinExpr {
    fn zero() -> Self {
        LinExpr::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add for LinExpr {
    type Output = LinExpr;
    fn add(mut self, rhs: LinExpr) -> LinExpr {
        self.accumulate(&rhs, &Rational::one());
        self
    }
}

impl Sub for LinExpr {
    type Output = LinExpr;
    fn sub(mut self, rhs: LinExpr) -> LinExpr {
        self.accumulate(&rhs, &-Rational::one());
        self
    }
}

impl Neg for LinExpr {
    type Output = LinExpr;
    fn neg(mut self) -> LinExpr {
        for v in self.terms.values_mut() {
            *v = -&*v;
        }
        self
    }
}

impl AddAssign<&LinExpr> for LinExpr {
    fn add_assign(&mut self, rhs: &LinExpr) {
        self.accumulate(rhs, &Rational::one());
    }
}

impl SubAssign<&LinExpr> for LinExpr {
    fn sub_assign(&mut self, rhs: &LinExpr) {
        self.accumulate(rhs, &-Rational::one());
    }
}

impl Coeff for LinExpr {
    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return LinExpr::zero();
        }
        LinExpr {
            terms: self.terms.iter().map(|(&k, c)| (k, c * q)).collect(),
        }
    }

    fn add_scaled(&mut self, x: &Self, q: &Rational) {
        if !q.is_zero() {
            self.accumulate(x, q);
        }
    }
}
