//! Finite-dimensional unital associative algebras over the rationals and
//! their tensor powers.
//!
//! Elements and tensors are plain coordinate vectors in the fixed basis of an
//! [`FDAlgebra`]; operations that combine them are methods on the algebra, so
//! mixing tensors of different algebras shows up as a dimension mismatch.
//!
//! Coordinates of a [`Tensor2`] are stored row-major: entry `a * n + b` is the
//! coefficient of `e_a ⊗ e_b`. [`Tensor3`] uses `(a * n + b) * n + c`.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::coeff::{Coeff, RingCoeff};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct AlgElement<C> {
    pub coords: Vec<C>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2<C> {
    pub n: usize,
    pub coords: Vec<C>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<C> {
    pub n: usize,
    pub coords: Vec<C>,
}

impl<C: Coeff> AlgElement<C> {
    pub fn zero(n: usize) -> Self {
        AlgElement {
            coords: vec![C::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        AlgElement {
            coords: self.coords.iter().map(|c| c.scale(q)).collect(),
        }
    }
}

impl AlgElement<Rational> {
    pub fn basis(n: usize, i: usize) -> Self {
        let mut coords = vec![Rational::zero(); n];
        coords[i] = Rational::one();
        AlgElement { coords }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        AlgElement {
            coords: v.iter().map(|&x| Rational::from(x)).collect(),
        }
    }
}

macro_rules! tensor_common {
    ($t:ident, $pow:expr) => {
        impl<C: Coeff> $t<C> {
            pub fn zero(n: usize) -> Self {
                $t {
                    n,
                    coords: vec![C::zero(); n.pow($pow)],
                }
            }

            pub fn is_zero(&self) -> bool {
                self.coords.iter().all(Zero::is_zero)
            }

            pub fn add(&self, other: &Self) -> Self {
                let mut out = self.clone();
                out.add_assign(other);
                out
            }

            pub fn sub(&self, other: &Self) -> Self {
                let mut out = self.clone();
                for (a, b) in out.coords.iter_mut().zip(&other.coords) {
                    *a -= b;
                }
                out
            }

            pub fn add_assign(&mut self, other: &Self) {
                for (a, b) in self.coords.iter_mut().zip(&other.coords) {
                    *a += b;
                }
            }

            pub fn scale(&self, q: &Rational) -> Self {
                $t {
                    n: self.n,
                    coords: self.coords.iter().map(|c| c.scale(q)).collect(),
                }
            }

            pub fn neg(&self) -> Self {
                self.scale(&-Rational::one())
            }

            /// Nonzero coordinates with their flat index.
            pub fn support(&self) -> impl Iterator<Item = (usize, &C)> {
                self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
            }

            pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> $t<D> {
                $t {
                    n: self.n,
                    coords: self.coords.iter().map(f).collect(),
                }
            }
        }
    };
}

tensor_common!(Tensor2, 2);
tensor_common!(Tensor3, 3);

impl<C: Coeff> Tensor2<C> {
    pub fn get(&self, a: usize, b: usize) -> &C {
        &self.coords[a * self.n + b]
    }

    pub fn at(&mut self, a: usize, b: usize) -> &mut C {
        &mut self.coords[a * self.n + b]
    }

    /// The swap `(a⊗b)° = b⊗a`.
    pub fn flip(&self) -> Self {
        let n = self.n;
        let mut out: Tensor2<C> = Tensor2::zero(n);
        for a in 0..n {
            for b in 0..n {
                out.coords[b * n + a] = self.coords[a * n + b].clone();
            }
        }
        out
    }
}

impl Tensor2<Rational> {
    pub fn basis(n: usize, a: usize, b: usize) -> Self {
        let mut t = Tensor2::zero(n);
        t.coords[a * n + b] = Rational::one();
        t
    }

    /// `x ⊗ y` for rational elements.
    pub fn pure(x: &AlgElement<Rational>, y: &AlgElement<Rational>) -> Self {
        let n = x.dim();
        let mut t = Tensor2::zero(n);
        for (a, xa) in x.coords.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.coords.iter().enumerate() {
                if !yb.is_zero() {
                    t.coords[a * n + b] = xa * yb;
                }
            }
        }
        t
    }
}

impl<C: Coeff> Tensor3<C> {
    pub fn get(&self, a: usize, b: usize, c: usize) -> &C {
        &self.coords[(a * self.n + b) * self.n + c]
    }

    pub fn at(&mut self, a: usize, b: usize, c: usize) -> &mut C {
        let n = self.n;
        &mut self.coords[(a * n + b) * n + c]
    }

    fn permuted(&self, f: impl Fn(usize, usize, usize) -> (usize, usize, usize)) -> Self {
        let n = self.n;
        let mut out: Tensor3<C> = Tensor3::zero(n);
        for (idx, v) in self.support() {
            let (a, b, c) = (idx / (n * n), (idx / n) % n, idx % n);
            let (x, y, z) = f(a, b, c);
            out.coords[(x * n + y) * n + z] = v.clone();
        }
        out
    }

    /// `τ(123)(x⊗y⊗z) = z⊗x⊗y`.
    pub fn tau123(&self) -> Self {
        self.permuted(|a, b, c| (c, a, b))
    }

    /// `τ(132)(x⊗y⊗z) = y⊗z⊗x`.
    pub fn tau132(&self) -> Self {
        self.permuted(|a, b, c| (b, c, a))
    }
}

impl Tensor3<Rational> {
    pub fn pure(
        x: &AlgElement<Rational>,
        y: &AlgElement<Rational>,
        z: &AlgElement<Rational>,
    ) -> Self {
        let n = x.dim();
        let xy = Tensor2::pure(x, y);
        let mut t = Tensor3::zero(n);
        for (ab, v) in xy.support() {
            for (c, zc) in z.coords.iter().enumerate() {
                if !zc.is_zero() {
                    t.coords[ab * n + c] = v * zc;
                }
            }
        }
        t
    }
}

/// Which bimodule structure on `A⊗A` an action refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    /// `x(a⊗b)y = xa⊗by`
    Outer,
    /// `x(a⊗b)y = ay⊗xb`
    Inner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FDAlgebra {
    name: String,
    basis: Vec<String>,
    unit: Vec<Rational>,
    /// Dense structure constants, `mul[(i * n + j) * n + k]`.
    mul: Vec<Rational>,
    /// Nonzero `(k, C[i][j][k])` for each `i * n + j`.
    sparse: Vec<Vec<(usize, Rational)>>,
}

fn valid_ident(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FDAlgebra {
    /// Build an algebra from sparse structure constants `(i, j, k, C[i][j][k])`,
    /// checking associativity and the unit.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        unit: Vec<Rational>,
        mul: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("empty basis".into()));
        }
        for (i, b) in basis.iter().enumerate() {
            if !valid_ident(b) {
                return Err(Error::InvalidAlgebra(format!(
                    "basis name {b:?} is not an identifier"
                )));
            }
            if basis[..i].contains(b) {
                return Err(Error::InvalidAlgebra(format!("duplicate basis name {b:?}")));
            }
        }
        if unit.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: unit.len(),
            });
        }
        let mut dense = vec![Rational::zero(); n * n * n];
        for (i, j, k, c) in mul {
            if i >= n || j >= n || k >= n {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant index ({i}, {j}, {k}) out of range"
                )));
            }
            dense[(i * n + j) * n + k] += &c;
        }
        let sparse = (0..n * n)
            .map(|ij| {
                (0..n)
                    .filter(|&k| !dense[ij * n + k].is_zero())
                    .map(|k| (k, dense[ij * n + k].clone()))
                    .collect()
            })
            .collect();
        let alg = FDAlgebra {
            name: name.into(),
            basis,
            unit,
            mul: dense,
            sparse,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ei = self.basis_element(i);
                    let ej = self.basis_element(j);
                    let ek = self.basis_element(k);
                    let l = self.mul(&self.mul(&ei, &ej), &ek);
                    let r = self.mul(&ei, &self.mul(&ej, &ek));
                    if l != r {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on ({}, {}, {})",
                            self.basis[i], self.basis[j], self.basis[k]
                        )));
                    }
                }
            }
        }
        let one = self.unit();
        for i in 0..n {
            let ei = self.basis_element(i);
            if self.mul(&one, &ei) != ei || self.mul(&ei, &one) != ei {
                return Err(Error::InvalidAlgebra(format!(
                    "unit does not act as identity on {}",
                    self.basis[i]
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        let n = self.dim();
        &self.mul[(i * n + j) * n + k]
    }

    /// Nonzero `(k, C[i][j][k])` in `e_i e_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.sparse[i * self.dim() + j]
    }

    pub fn unit(&self) -> AlgElement<Rational> {
        AlgElement {
            coords: self.unit.clone(),
        }
    }

    pub fn basis_element(&self, i: usize) -> AlgElement<Rational> {
        AlgElement::basis(self.dim(), i)
    }

    pub fn zero_element(&self) -> AlgElement<Rational> {
        AlgElement::zero(self.dim())
    }

    /// Basis element by name, or the unit for `"1"`.
    pub fn element_by_name(&self, name: &str) -> Result<AlgElement<Rational>> {
        if name == "1" {
            return Ok(self.unit());
        }
        self.basis_index(name)
            .map(|i| self.basis_element(i))
            .ok_or_else(|| Error::Invalid(format!("no basis element {name:?} in {}", self.name)))
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<AlgElement<Rational>> {
        self.check_len(coords.len())?;
        Ok(AlgElement { coords })
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got,
            });
        }
        Ok(())
    }

    /// Product of two elements with coefficients in a ring.
    pub fn mul<C: RingCoeff>(&self, x: &AlgElement<C>, y: &AlgElement<C>) -> AlgElement<C> {
        let n = self.dim();
        let mut out: AlgElement<C> = AlgElement::zero(n);
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let p = xi.mul_ref(yj);
                for (k, c) in self.product_terms(i, j) {
                    out.coords[*k].add_scaled(&p, c);
                }
            }
        }
        out
    }

    pub fn checked_mul<C: RingCoeff>(
        &self,
        x: &AlgElement<C>,
        y: &AlgElement<C>,
    ) -> Result<AlgElement<C>> {
        self.check_len(x.dim())?;
        self.check_len(y.dim())?;
        Ok(self.mul(x, y))
    }

    pub fn commutator<C: RingCoeff>(&self, x: &AlgElement<C>, y: &AlgElement<C>) -> AlgElement<C> {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    pub fn checked_commutator<C: RingCoeff>(
        &self,
        x: &AlgElement<C>,
        y: &AlgElement<C>,
    ) -> Result<AlgElement<C>> {
        self.check_len(x.dim())?;
        self.check_len(y.dim())?;
        Ok(self.commutator(x, y))
    }

    /// `x * y` with rational `x` and coefficients of `y` in any module.
    pub fn lmul<C: Coeff>(&self, x: &AlgElement<Rational>, y: &AlgElement<C>) -> AlgElement<C> {
        let mut out: AlgElement<C> = AlgElement::zero(self.dim());
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in self.product_terms(i, j) {
                    out.coords[*k].add_scaled(yj, &(xi * c));
                }
            }
        }
        out
    }

    /// `y * x` with rational `x`.
    pub fn rmul<C: Coeff>(&self, y: &AlgElement<C>, x: &AlgElement<Rational>) -> AlgElement<C> {
        let mut out: AlgElement<C> = AlgElement::zero(self.dim());
        for (j, yj) in y.coords.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (i, xi) in x.coords.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (k, c) in self.product_terms(j, i) {
                    out.coords[*k].add_scaled(yj, &(xi * c));
                }
            }
        }
        out
    }

    /// Multiply a single tensor leg by `x`, on the left or the right.
    fn leg_mul<C: Coeff>(
        &self,
        coords: &[C],
        legs: u32,
        leg: u32,
        side: Side,
        x: &AlgElement<Rational>,
    ) -> Vec<C> {
        let n = self.dim();
        let stride = n.pow(legs - 1 - leg);
        let mut out = vec![C::zero(); coords.len()];
        for (idx, v) in coords.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let digit = (idx / stride) % n;
            let base = idx - digit * stride;
            for (xi, q) in x.coords.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let terms = match side {
                    Side::Left => self.product_terms(xi, digit),
                    Side::Right => self.product_terms(digit, xi),
                };
                for (k, c) in terms {
                    out[base + k * stride].add_scaled(v, &(q * c));
                }
            }
        }
        out
    }

    /// Action of `x` on `t` for the given bimodule structure.
    ///
    /// Outer: `x·(a⊗b) = xa⊗b`, `(a⊗b)·x = a⊗bx`.
    /// Inner: `x·(a⊗b) = a⊗xb`, `(a⊗b)·x = ax⊗b`.
    pub fn act<C: Coeff>(
        &self,
        structure: Structure,
        side: Side,
        t: &Tensor2<C>,
        x: &AlgElement<Rational>,
    ) -> Tensor2<C> {
        let (leg, mul_side) = match (structure, side) {
            (Structure::Outer, Side::Left) => (0, Side::Left),
            (Structure::Outer, Side::Right) => (1, Side::Right),
            (Structure::Inner, Side::Left) => (1, Side::Left),
            (Structure::Inner, Side::Right) => (0, Side::Right),
        };
        Tensor2 {
            n: t.n,
            coords: self.leg_mul(&t.coords, 2, leg, mul_side, x),
        }
    }

    pub fn checked_act<C: Coeff>(
        &self,
        structure: Structure,
        side: Side,
        t: &Tensor2<C>,
        x: &AlgElement<Rational>,
    ) -> Result<Tensor2<C>> {
        self.check_len(t.n)?;
        self.check_len(x.dim())?;
        Ok(self.act(structure, side, t, x))
    }

    pub fn outer_left<C: Coeff>(&self, x: &AlgElement<Rational>, t: &Tensor2<C>) -> Tensor2<C> {
        self.act(Structure::Outer, Side::Left, t, x)
    }

    pub fn outer_right<C: Coeff>(&self, t: &Tensor2<C>, x: &AlgElement<Rational>) -> Tensor2<C> {
        self.act(Structure::Outer, Side::Right, t, x)
    }

    pub fn inner_left<C: Coeff>(&self, x: &AlgElement<Rational>, t: &Tensor2<C>) -> Tensor2<C> {
        self.act(Structure::Inner, Side::Left, t, x)
    }

    pub fn inner_right<C: Coeff>(&self, t: &Tensor2<C>, x: &AlgElement<Rational>) -> Tensor2<C> {
        self.act(Structure::Inner, Side::Right, t, x)
    }

    /// Left or right multiplication of leg `leg` (0-based) of a three-fold tensor.
    pub fn leg_act3<C: Coeff>(
        &self,
        t: &Tensor3<C>,
        leg: usize,
        side: Side,
        x: &AlgElement<Rational>,
    ) -> Tensor3<C> {
        Tensor3 {
            n: t.n,
            coords: self.leg_mul(&t.coords, 3, leg as u32, side, x),
        }
    }

    /// Leg commutators on `A⊗A⊗A`:
    ///
    /// `[a⊗b⊗c, x]_1 = a⊗xb⊗c − ax⊗b⊗c`,
    /// `[a⊗b⊗c, y]_2 = a⊗b⊗yc − a⊗by⊗c`,
    /// `[a⊗b⊗c, z]_3 = za⊗b⊗c − a⊗b⊗cz`.
    pub fn tensor3_commutator<C: Coeff>(
        &self,
        t: &Tensor3<C>,
        x: &AlgElement<Rational>,
        leg: usize,
    ) -> Result<Tensor3<C>> {
        self.check_len(t.n)?;
        self.check_len(x.dim())?;
        let (plus, minus) = match leg {
            1 => (1, 0),
            2 => (2, 1),
            3 => (0, 2),
            _ => return Err(Error::InvalidLeg(leg)),
        };
        let a = self.leg_act3(t, plus, Side::Left, x);
        let b = self.leg_act3(t, minus, Side::Right, x);
        Ok(a.sub(&b))
    }

    /// Multiplication map `a⊗b ↦ ab`.
    pub fn multiply<C: Coeff>(&self, t: &Tensor2<C>) -> AlgElement<C> {
        let n = self.dim();
        let mut out: AlgElement<C> = AlgElement::zero(n);
        for (idx, v) in t.support() {
            for (k, c) in self.product_terms(idx / n, idx % n) {
                out.coords[*k].add_scaled(v, c);
            }
        }
        out
    }

    /// Leg-wise product `(a⊗b)(a'⊗b') = aa'⊗bb'`.
    pub fn tensor2_product<C: RingCoeff>(&self, s: &Tensor2<C>, t: &Tensor2<C>) -> Tensor2<C> {
        let n = self.dim();
        let mut out: Tensor2<C> = Tensor2::zero(n);
        for (i1, v1) in s.support() {
            let (a1, b1) = (i1 / n, i1 % n);
            for (i2, v2) in t.support() {
                let (a2, b2) = (i2 / n, i2 % n);
                let p = v1.mul_ref(v2);
                for (ka, ca) in self.product_terms(a1, a2) {
                    for (kb, cb) in self.product_terms(b1, b2) {
                        out.coords[ka * n + kb].add_scaled(&p, &(ca * cb));
                    }
                }
            }
        }
        out
    }

    /// Leg-wise product `(a⊗b⊗c)(a'⊗b'⊗c') = aa'⊗bb'⊗cc'`.
    pub fn tensor3_product<C: RingCoeff>(&self, s: &Tensor3<C>, t: &Tensor3<C>) -> Tensor3<C> {
        let n = self.dim();
        let mut out: Tensor3<C> = Tensor3::zero(n);
        let split = |i: usize| (i / (n * n), (i / n) % n, i % n);
        for (i1, v1) in s.support() {
            let (a1, b1, c1) = split(i1);
            for (i2, v2) in t.support() {
                let (a2, b2, c2) = split(i2);
                let p = v1.mul_ref(v2);
                for (ka, ca) in self.product_terms(a1, a2) {
                    for (kb, cb) in self.product_terms(b1, b2) {
                        let cab = ca * cb;
                        for (kc, cc) in self.product_terms(c1, c2) {
                            out.coords[(ka * n + kb) * n + kc].add_scaled(&p, &(&cab * cc));
                        }
                    }
                }
            }
        }
        out
    }

    /// Insert a two-fold tensor into legs `(i, j)` of `A⊗A⊗A` (0-based,
    /// `i < j`), with the unit in the remaining leg.
    pub fn embed_legs<C: Coeff>(&self, r: &Tensor2<C>, i: usize, j: usize) -> Tensor3<C> {
        let n = self.dim();
        let mut out: Tensor3<C> = Tensor3::zero(n);
        for (idx, v) in r.support() {
            let (a, b) = (idx / n, idx % n);
            for (u, q) in self.unit.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let legs = match (i, j) {
                    (0, 1) => (a, b, u),
                    (0, 2) => (a, u, b),
                    (1, 2) => (u, a, b),
                    _ => panic!("legs must be 0 <= i < j <= 2"),
                };
                out.at(legs.0, legs.1, legs.2).add_scaled(v, q);
            }
        }
        out
    }

    /// `t ⊗ x` as a three-fold tensor, with `x` rational.
    pub fn tensor2_then<C: Coeff>(&self, t: &Tensor2<C>, x: &AlgElement<Rational>) -> Tensor3<C> {
        let n = self.dim();
        let mut out: Tensor3<C> = Tensor3::zero(n);
        for (ab, v) in t.support() {
            for (c, q) in x.coords.iter().enumerate() {
                if !q.is_zero() {
                    out.coords[ab * n + c].add_scaled(v, q);
                }
            }
        }
        out
    }

    /// The commutator subspace `[A, A]` and a complement.
    pub fn commutator_subspace(&self) -> TraceSpace {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = self.commutator(&self.basis_element(i), &self.basis_element(j));
                if !c.is_zero() {
                    rows.push(c.coords);
                }
            }
        }
        let m = QMatrix::from_rows(rows, n).expect("rows have algebra dimension");
        let (rref, pivots) = m.rref();
        let complement = (0..n).filter(|c| !pivots.contains(c)).collect();
        TraceSpace {
            dim: n,
            rref,
            pivots,
            complement,
        }
    }

    /// The unit followed by the basis elements that are independent of
    /// everything before them.
    pub fn unit_adapted_basis(&self) -> Vec<(String, AlgElement<Rational>)> {
        let n = self.dim();
        let mut out = vec![("1".to_string(), self.unit())];
        let mut rank = 1;
        for i in 0..n {
            let mut rows: Vec<Vec<Rational>> = out.iter().map(|(_, e)| e.coords.clone()).collect();
            rows.push(self.basis_element(i).coords);
            let r = QMatrix::from_rows(rows, n).expect("square rows").rank();
            if r > rank {
                rank = r;
                out.push((self.basis[i].clone(), self.basis_element(i)));
            }
        }
        out
    }

    pub fn format_element<C: Coeff>(&self, x: &AlgElement<C>) -> String {
        format_terms(
            x.coords
                .iter()
                .enumerate()
                .map(|(i, c)| (self.basis[i].clone(), c)),
        )
    }

    pub fn format_tensor2<C: Coeff>(&self, t: &Tensor2<C>) -> String {
        let n = self.dim();
        format_terms(
            t.support()
                .map(|(i, c)| (format!("{}⊗{}", self.basis[i / n], self.basis[i % n]), c)),
        )
    }

    pub fn format_tensor3<C: Coeff>(&self, t: &Tensor3<C>) -> String {
        let n = self.dim();
        format_terms(t.support().map(|(i, c)| {
            let (a, b, d) = (i / (n * n), (i / n) % n, i % n);
            (
                format!("{}⊗{}⊗{}", self.basis[a], self.basis[b], self.basis[d]),
                c,
            )
        }))
    }

    /// `Mat_n` with matrix units `E_ij` ordered row-major.
    pub fn matrix(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAlgebra(
                "matrix size must be at least 1".into(),
            ));
        }
        let name = |i: usize, j: usize| {
            if n < 10 {
                format!("E{}{}", i + 1, j + 1)
            } else {
                format!("E{}_{}", i + 1, j + 1)
            }
        };
        let idx = |i: usize, j: usize| i * n + j;
        let basis = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| name(i, j))
            .collect();
        let mut unit = vec![Rational::zero(); n * n];
        for i in 0..n {
            unit[idx(i, i)] = Rational::one();
        }
        let mut mul = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    mul.push((idx(i, j), idx(j, l), idx(i, l), Rational::one()));
                }
            }
        }
        FDAlgebra::new(format!("mat{n}"), basis, unit, mul)
    }

    /// Upper triangular 2x2 matrices with basis `e0 = E12, e1 = E11, e2 = E22`.
    pub fn a2() -> Self {
        let one = Rational::one;
        let basis = vec!["e0".into(), "e1".into(), "e2".into()];
        let unit = vec![Rational::zero(), one(), one()];
        let mul = vec![
            (1, 0, 0, one()),
            (0, 2, 0, one()),
            (1, 1, 1, one()),
            (2, 2, 2, one()),
        ];
        FDAlgebra::new("a2", basis, unit, mul).expect("a2 is associative")
    }

    /// Block-diagonal direct sum. Basis names are suffixed with the summand
    /// index when they would otherwise collide.
    pub fn direct_sum(parts: &[&FDAlgebra]) -> Result<Self> {
        let mut all: Vec<&String> = parts.iter().flat_map(|a| &a.basis).collect();
        all.sort();
        let collide = all.windows(2).any(|w| w[0] == w[1]);
        let mut basis = Vec::new();
        let mut unit = Vec::new();
        let mut mul = Vec::new();
        let mut offset = 0;
        for (s, a) in parts.iter().enumerate() {
            let n = a.dim();
            for b in &a.basis {
                basis.push(if collide {
                    format!("{b}_{s}")
                } else {
                    b.clone()
                });
            }
            unit.extend(a.unit.iter().cloned());
            for i in 0..n {
                for j in 0..n {
                    for (k, c) in a.product_terms(i, j) {
                        mul.push((i + offset, j + offset, k + offset, c.clone()));
                    }
                }
            }
            offset += n;
        }
        let name = parts
            .iter()
            .map(|a| a.name.as_str())
            .collect::<Vec<_>>()
            .join("+");
        FDAlgebra::new(name, basis, unit, mul)
    }
}

fn format_terms<'a, C: Coeff + 'a>(terms: impl Iterator<Item = (String, &'a C)>) -> String {
    let mut s = String::new();
    for (label, c) in terms {
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        let simple = !cs[1..].contains([' ', '+', '-']);
        let (neg, body) = match cs.strip_prefix('-') {
            Some(rest) if simple => (true, rest.to_string()),
            _ => (false, cs.clone()),
        };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if body == "1" {
            s.push_str(&label);
        } else if simple {
            let _ = write!(s, "{body}*{label}");
        } else {
            let _ = write!(s, "({body})*{label}");
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// The subspace `[A, A]` in reduced echelon form, with the standard basis
/// vectors at non-pivot columns as a complement (a basis of `A/[A, A]`).
#[derive(Clone, Debug)]
pub struct TraceSpace {
    dim: usize,
    rref: QMatrix,
    pivots: Vec<usize>,
    complement: Vec<usize>,
}

impl TraceSpace {
    pub fn commutator_dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }

    /// Basis of `[A, A]`, rows of the reduced echelon form.
    pub fn commutator_basis(&self) -> Vec<AlgElement<Rational>> {
        (0..self.rref.rows())
            .map(|i| AlgElement {
                coords: self.rref.row(i).to_vec(),
            })
            .collect()
    }

    /// Indices of the basis elements spanning the complement.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Subtract the commutator part of `x`, leaving coordinates supported on
    /// the complement.
    pub fn reduce<C: Coeff>(&self, x: &AlgElement<C>) -> AlgElement<C> {
        let mut v = x.clone();
        for (r, &p) in self.pivots.iter().enumerate() {
            let f = v.coords[p].clone();
            if f.is_zero() {
                continue;
            }
            for (j, q) in self.rref.row(r).iter().enumerate() {
                if !q.is_zero() {
                    v.coords[j].add_scaled(&f, &-q);
                }
            }
        }
        v
    }

    /// Coordinates of the class of `x` in `A/[A, A]`.
    pub fn project<C: Coeff>(&self, x: &AlgElement<C>) -> Vec<C> {
        let v = self.reduce(x);
        self.complement
            .iter()
            .map(|&c| v.coords[c].clone())
            .collect()
    }

    pub fn contains<C: Coeff>(&self, x: &AlgElement<C>) -> bool {
        debug_assert_eq!(x.dim(), self.dim);
        self.reduce(x).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_uses_basis_names() {
        let a = FDAlgebra::a2();
        let t = Tensor2::basis(3, 0, 0).sub(&Tensor2::basis(3, 1, 2).scale(&Rational::from(2)));
        assert_eq!(a.format_tensor2(&t), "e0⊗e0 - 2*e1⊗e2");
        assert_eq!(a.format_element(&a.unit()), "e1 + e2");
    }

    #[test]
    fn rejects_non_associative() {
        let basis = vec!["x".into(), "y".into()];
        let unit = vec![Rational::one(), Rational::zero()];
        // K[y]/(y^2 - 1) with unit x
        let mul = vec![
            (0, 0, 0, Rational::one()),
            (0, 1, 1, Rational::one()),
            (1, 0, 1, Rational::one()),
            (1, 1, 0, Rational::one()),
        ];
        assert!(FDAlgebra::new("ok", basis.clone(), unit.clone(), mul).is_ok());
        // x*y = 0, so x is not a unit
        let mul = vec![(0, 0, 0, Rational::one()), (1, 1, 1, Rational::one())];
        assert!(FDAlgebra::new("bad", basis, unit, mul).is_err());
    }
}
