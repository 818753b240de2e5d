//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order induced by the variable list (first variable is the
//! largest). Zero coefficients are never stored.
//!
//! A polynomial with an empty variable list is a bare constant and combines
//! with polynomials over any variable list; any other mismatch of variable
//! lists is an error (or a panic in the operator impls).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Limit on intermediate term counts; keeps hostile inputs from exhausting
/// memory in the parser.
const MAX_TERMS: usize = 200_000;
/// Limit on term pairs visited by one product.
const MAX_PRODUCT_PAIRS: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

fn no_vars() -> Arc<[String]> {
    Arc::from(Vec::<String>::new())
}

impl MultiPoly {
    pub fn zero_in(vars: &Arc<[String]>) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// A constant with no variables; adapts to any ring it is combined with.
    pub fn constant(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial(Vec::new()), q);
        }
        MultiPoly {
            vars: no_vars(),
            terms,
        }
    }

    pub fn constant_in(vars: &Arc<[String]>, q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::one(vars.len()), q);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn var(vars: &Arc<[String]>, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::monomial(vars, Monomial(e), Rational::one())
    }

    /// The variable called `name`; panics if the ring has no such variable.
    pub fn named(vars: &Arc<[String]>, name: &str) -> Self {
        let i = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("no variable {name:?} in {vars:?}"));
        Self::var(vars, i)
    }

    pub fn monomial(vars: &Arc<[String]>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_terms(
        vars: &Arc<[String]>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = MultiPoly::zero_in(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length");
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(
                self.terms
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Scalar multiple with leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> MultiPoly {
        if q.is_zero() {
            return MultiPoly::zero_in(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn lifted(&self, vars: &Arc<[String]>) -> MultiPoly {
        debug_assert!(self.vars.is_empty());
        MultiPoly::constant_in(vars, self.constant_value().unwrap_or_else(Rational::zero))
    }

    /// Bring two polynomials into a common ring; only bare constants adapt.
    fn align(&self, other: &MultiPoly) -> Result<Option<(MultiPoly, MultiPoly)>> {
        if self.vars == other.vars {
            return Ok(None);
        }
        if self.vars.is_empty() {
            return Ok(Some((self.lifted(&other.vars), other.clone())));
        }
        if other.vars.is_empty() {
            return Ok(Some((self.clone(), other.lifted(&self.vars))));
        }
        Err(Error::VariableMismatch {
            left: self.vars.to_vec(),
            right: other.vars.to_vec(),
        })
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if let Some((a, b)) = self.align(other)? {
            return a.checked_add(&b);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if let Some((a, b)) = self.align(other)? {
            return a.checked_mul(&b);
        }
        if self.terms.len().saturating_mul(other.terms.len()) > MAX_PRODUCT_PAIRS {
            return Err(Error::Invalid(format!(
                "polynomial product exceeds {MAX_PRODUCT_PAIRS} term pairs"
            )));
        }
        let mut out = MultiPoly::zero_in(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        if out.terms.len() > MAX_TERMS {
            return Err(Error::Invalid(format!(
                "polynomial product exceeds {MAX_TERMS} terms"
            )));
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<MultiPoly> {
        let mut acc = MultiPoly::constant_in(&self.vars, Rational::one());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Partial derivative with respect to the variable at `index`.
    pub fn partial(&self, index: usize) -> MultiPoly {
        let mut out = MultiPoly::zero_in(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[index] -= 1;
            out.add_term(m2, &(c * &Rational::from(e as i64)));
        }
        out
    }

    /// Apply the derivation sending variable `i` to `images[i]`.
    pub fn apply_derivation(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let mut out = MultiPoly::zero_in(&self.vars);
        for (i, img) in images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = self.partial(i);
            if !d.is_zero() {
                out += &(&d * img);
            }
        }
        out
    }

    /// Replace variable `i` by `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = images
            .iter()
            .map(|p| p.vars.clone())
            .find(|v| !v.is_empty())
            .unwrap_or_else(no_vars);
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::constant_in(&target, Rational::one()), p.clone()])
            .collect();
        let mut out = MultiPoly::zero_in(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant_in(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out += &t;
        }
        out
    }

    /// Re-express the polynomial over `target`, which must contain every
    /// variable (by name) that occurs with nonzero exponent.
    pub fn embed(&self, target: &Arc<[String]>) -> Result<MultiPoly> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v))
            .collect();
        let mut out = MultiPoly::zero_in(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = k,
                    None => {
                        return Err(Error::VariableMismatch {
                            left: self.vars.to_vec(),
                            right: target.to_vec(),
                        })
                    }
                }
            }
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &point[i].pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .enumerate()
                    .fold(c.to_f64(), |t, (i, &e)| t * point[i].powi(e as i32))
            })
            .sum()
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars()),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m), c.clone()))
                .collect(),
        }
    }

    /// Indices of variables that occur in the polynomial.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    /// If the polynomial is `c * x_i + rest` with rational `c != 0` and `rest`
    /// free of `x_i`, return `(c, rest)`.
    pub fn linear_in(&self, index: usize) -> Option<(Rational, MultiPoly)> {
        let mut coef = None;
        let mut rest = MultiPoly::zero_in(&self.vars);
        for (m, c) in &self.terms {
            match m.0[index] {
                0 => rest.add_term(m.clone(), c),
                1 if m.degree() == 1 => coef = Some(c.clone()),
                _ => return None,
            }
        }
        coef.map(|c| (c, rest))
    }

    pub fn parse(s: &str, vars: &Arc<[String]>) -> Result<MultiPoly> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
            vars,
            depth: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        // bare constants parse into the requested ring
        if out.vars.is_empty() {
            return Ok(out.lifted(vars));
        }
        Ok(out)
    }

    fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly {
            vars: no_vars(),
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        self.checked_add(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self.checked_sub(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.checked_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        if self.vars == rhs.vars {
            for (m, c) in &rhs.terms {
                self.add_term(m.clone(), c);
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        if self.vars == rhs.vars {
            for (m, c) in &rhs.terms {
                self.add_term(m.clone(), &-c);
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

const MAX_DEPTH: usize = 64;
const MAX_EXPONENT: u32 = 64;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<[String]>,
    depth: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of polynomial", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("expression nested too deeply"));
        }
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == b'+' {
                acc.checked_add(&t)?
            } else {
                acc.checked_sub(&t)?
            };
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' {
                acc.checked_mul(&rhs)?
            } else {
                let c = rhs
                    .constant_value()
                    .ok_or_else(|| self.error("division by a non-constant"))?;
                acc.scale(&c.recip()?)
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.enter()?;
                let u = self.unary()?;
                self.depth -= 1;
                Ok(-u)
            }
            Some(b'+') => {
                self.pos += 1;
                self.enter()?;
                let u = self.unary();
                self.depth -= 1;
                u
            }
            _ => self.power(),
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("expression nested too deeply"));
        }
        Ok(())
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            let e: u32 = digits
                .parse()
                .map_err(|_| self.error("expected exponent"))?;
            if e > MAX_EXPONENT {
                return Err(self.error("exponent too large"));
            }
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("0");
                Ok(MultiPoly::constant(s.parse()?))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(MultiPoly::var(self.vars, i)),
                    None => Err(Error::Parse(format!("undeclared variable {name:?}"))),
                }
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

/// Rewrite rules `leading monomial -> replacement`, each strictly decreasing
/// in the graded lexicographic order, used to compute normal forms modulo a
/// small ideal (e.g. `c^2 -> 1 - s^2`).
///
/// Normal forms are canonical only when the rules form a Groebner basis of
/// the ideal they generate; a single rule always does.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationSet {
    vars: Arc<[String]>,
    rules: Vec<(Monomial, MultiPoly)>,
}

impl RelationSet {
    pub fn empty(vars: &Arc<[String]>) -> Self {
        RelationSet {
            vars: vars.clone(),
            rules: Vec::new(),
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn rules(&self) -> &[(Monomial, MultiPoly)] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Add the rule `lhs -> rhs`; every monomial of `rhs` must be smaller
    /// than `lhs`.
    pub fn add_rule(&mut self, lhs: Monomial, rhs: MultiPoly) -> Result<()> {
        let rhs = if rhs.vars.is_empty() {
            rhs.lifted(&self.vars)
        } else {
            rhs
        };
        if rhs.vars != self.vars || lhs.0.len() != self.vars.len() {
            return Err(Error::VariableMismatch {
                left: self.vars.to_vec(),
                right: rhs.vars.to_vec(),
            });
        }
        if lhs.degree() == 0 {
            return Err(Error::InvalidRelation("constant leading monomial".into()));
        }
        if rhs.terms.keys().any(|m| m >= &lhs) {
            return Err(Error::InvalidRelation(
                "replacement must be smaller than the leading monomial".into(),
            ));
        }
        self.rules.push((lhs, rhs));
        Ok(())
    }

    /// Add the relation `g = 0`, oriented by its leading monomial.
    pub fn add_relation(&mut self, g: &MultiPoly) -> Result<()> {
        let g = if g.vars.is_empty() {
            g.lifted(&self.vars)
        } else {
            g.clone()
        };
        let (lm, lc) = g
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| Error::InvalidRelation("zero relation".into()))?;
        let mut rest = g;
        rest.terms.remove(&lm);
        let rhs = rest.scale(&-lc.recip()?);
        self.add_rule(lm, rhs)
    }

    pub fn from_relations(vars: &Arc<[String]>, gens: &[MultiPoly]) -> Result<Self> {
        let mut rs = RelationSet::empty(vars);
        for g in gens {
            rs.add_relation(g)?;
        }
        Ok(rs)
    }

    /// Normal form of `p`: no term is divisible by a rule's leading monomial.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        let mut p = if p.vars.is_empty() {
            p.lifted(&self.vars)
        } else {
            p.clone()
        };
        if p.vars != self.vars {
            return Err(Error::VariableMismatch {
                left: p.vars.to_vec(),
                right: self.vars.to_vec(),
            });
        }
        if self.rules.is_empty() {
            return Ok(p);
        }
        loop {
            let hit = p.terms.iter().rev().find_map(|(m, c)| {
                self.rules
                    .iter()
                    .find(|(lhs, _)| lhs.divides(m))
                    .map(|(lhs, rhs)| (m.clone(), c.clone(), lhs.clone(), rhs))
            });
            let Some((m, c, lhs, rhs)) = hit else { break };
            p.terms.remove(&m);
            let q = m.div(&lhs);
            for (rm, rc) in &rhs.terms {
                p.add_term(rm.mul(&q), &(rc * &c));
            }
        }
        Ok(p)
    }
}
