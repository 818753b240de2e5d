//! Double brackets given by coefficient tensors, and the axioms they must
//! satisfy.
//!
//! A [`DoubleBracket`] stores `{{e_i, e_j}} = Σ C[i][j][a][b] e_a⊗e_b`.
//! Coefficients are generic: rationals for concrete brackets, polynomials in
//! formal parameters for families, and linear forms when assembling
//! constraint systems.

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{AlgElement, FDAlgebra, Tensor2, Tensor3};
use crate::coeff::{Coeff, RingCoeff};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, RelationSet};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleBracket<C> {
    n: usize,
    coeffs: Vec<C>,
}

impl<C: Coeff> DoubleBracket<C> {
    pub fn zero(n: usize) -> Self {
        DoubleBracket {
            n,
            coeffs: vec![C::zero(); n.pow(4)],
        }
    }

    /// Coefficients in `C[i][j][a][b]` order, flattened row-major.
    pub fn from_coeffs(n: usize, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.len() != n.pow(4) {
            return Err(Error::DimensionMismatch {
                expected: n.pow(4),
                got: coeffs.len(),
            });
        }
        Ok(DoubleBracket { n, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn index(&self, i: usize, j: usize, a: usize, b: usize) -> usize {
        let n = self.n;
        ((i * n + j) * n + a) * n + b
    }

    pub fn get(&self, i: usize, j: usize, a: usize, b: usize) -> &C {
        &self.coeffs[self.index(i, j, a, b)]
    }

    pub fn set(&mut self, i: usize, j: usize, a: usize, b: usize, c: C) {
        let k = self.index(i, j, a, b);
        self.coeffs[k] = c;
    }

    /// `{{e_i, e_j}}`.
    pub fn pair(&self, i: usize, j: usize) -> Tensor2<C> {
        let n = self.n;
        let start = (i * n + j) * n * n;
        Tensor2 {
            n,
            coords: self.coeffs[start..start + n * n].to_vec(),
        }
    }

    pub fn set_pair(&mut self, i: usize, j: usize, t: &Tensor2<C>) {
        let n = self.n;
        let start = (i * n + j) * n * n;
        self.coeffs[start..start + n * n].clone_from_slice(&t.coords);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        DoubleBracket {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> DoubleBracket<D> {
        DoubleBracket {
            n: self.n,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Bilinear extension to rational elements.
    pub fn eval(&self, x: &AlgElement<Rational>, y: &AlgElement<Rational>) -> Tensor2<C> {
        let n = self.n;
        let mut out: Tensor2<C> = Tensor2::zero(n);
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let q = xi * yj;
                let start = (i * n + j) * n * n;
                for (k, c) in self.coeffs[start..start + n * n].iter().enumerate() {
                    out.coords[k].add_scaled(c, &q);
                }
            }
        }
        out
    }

    pub fn checked_eval(
        &self,
        x: &AlgElement<Rational>,
        y: &AlgElement<Rational>,
    ) -> Result<Tensor2<C>> {
        for got in [x.dim(), y.dim()] {
            if got != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got,
                });
            }
        }
        Ok(self.eval(x, y))
    }

    /// Nonzero pairs `(i, j, {{e_i, e_j}})`.
    pub fn nonzero_pairs(&self) -> Vec<(usize, usize, Tensor2<C>)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let t = self.pair(i, j);
                if !t.is_zero() {
                    out.push((i, j, t));
                }
            }
        }
        out
    }
}

impl DoubleBracket<MultiPoly> {
    /// Replace parameters by rationals.
    pub fn at_point(&self, point: &[Rational]) -> DoubleBracket<Rational> {
        self.map(|p| p.evaluate(point))
    }

    /// Reduce every coefficient modulo `rels`.
    pub fn normal_form(&self, rels: &RelationSet) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|p| rels.normal_form(p))
            .collect::<Result<_>>()?;
        Ok(DoubleBracket { n: self.n, coeffs })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Skew,
    Leibniz,
    LeibnizFirst,
    Jacobi,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Skew => "skew",
            Axiom::Leibniz => "leibniz",
            Axiom::LeibnizFirst => "leibniz_first",
            Axiom::Jacobi => "jacobi",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResidualValue<C> {
    Two(Tensor2<C>),
    Three(Tensor3<C>),
}

impl<C: Coeff> ResidualValue<C> {
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> ResidualValue<D> {
        match self {
            ResidualValue::Two(t) => ResidualValue::Two(t.map(f)),
            ResidualValue::Three(t) => ResidualValue::Three(t.map(f)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ResidualValue::Two(t) => t.is_zero(),
            ResidualValue::Three(t) => t.is_zero(),
        }
    }

    pub fn format(&self, alg: &FDAlgebra) -> String {
        match self {
            ResidualValue::Two(t) => alg.format_tensor2(t),
            ResidualValue::Three(t) => alg.format_tensor3(t),
        }
    }

    pub fn coefficients(&self) -> &[C] {
        match self {
            ResidualValue::Two(t) => &t.coords,
            ResidualValue::Three(t) => &t.coords,
        }
    }
}

/// A failing instance of an axiom on a tuple of basis indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual<C> {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub value: ResidualValue<C>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<C> {
    pub skew_ok: bool,
    pub leibniz_ok: bool,
    pub jacobi_ok: bool,
    pub residuals: Vec<Residual<C>>,
}

impl<C: Coeff> AxiomReport<C> {
    pub fn from_residuals(residuals: Vec<Residual<C>>) -> Self {
        let has = |a: Axiom| residuals.iter().any(|r| r.axiom == a);
        AxiomReport {
            skew_ok: !has(Axiom::Skew),
            leibniz_ok: !has(Axiom::Leibniz) && !has(Axiom::LeibnizFirst),
            jacobi_ok: !has(Axiom::Jacobi),
            residuals,
        }
    }

    pub fn all_ok(&self) -> bool {
        self.residuals.is_empty()
    }

    /// Apply `f` to every residual coefficient and drop residuals that
    /// become zero (e.g. reduction modulo parameter relations).
    pub fn reduce_with(&self, f: impl Fn(&C) -> C) -> Self {
        let rs = self
            .residuals
            .iter()
            .map(|r| Residual {
                axiom: r.axiom,
                indices: r.indices.clone(),
                value: r.value.map(&f),
            })
            .filter(|r| !r.value.is_zero())
            .collect();
        AxiomReport::from_residuals(rs)
    }
}

fn residual2<C: Coeff>(axiom: Axiom, indices: Vec<usize>, t: Tensor2<C>) -> Option<Residual<C>> {
    (!t.is_zero()).then(|| Residual {
        axiom,
        indices,
        value: ResidualValue::Two(t),
    })
}

/// `{{a, b}} + {{b, a}}°` for every basis pair.
pub fn check_skew<C: Coeff>(db: &DoubleBracket<C>) -> Vec<Residual<C>> {
    let n = db.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let t = db.pair(i, j).add(&db.pair(j, i).flip());
            out.extend(residual2(Axiom::Skew, vec![i, j], t));
        }
    }
    out
}

/// Second-argument rule `{{a, bc}} = b{{a, c}} + {{a, b}}c` (outer actions)
/// on every basis triple `(i; k, l)`.
pub fn check_leibniz<C: Coeff>(alg: &FDAlgebra, db: &DoubleBracket<C>) -> Vec<Residual<C>> {
    let n = alg.dim();
    let mut out = Vec::new();
    for i in 0..n {
        let ei = alg.basis_element(i);
        for k in 0..n {
            let ek = alg.basis_element(k);
            for l in 0..n {
                let el = alg.basis_element(l);
                let prod = alg.mul(&ek, &el);
                let lhs = db.eval(&ei, &prod);
                let rhs = alg
                    .outer_left(&ek, &db.pair(i, l))
                    .add(&alg.outer_right(&db.pair(i, k), &el));
                out.extend(residual2(Axiom::Leibniz, vec![i, k, l], lhs.sub(&rhs)));
            }
        }
    }
    out
}

/// First-argument rule `{{ab, c}} = (1⊗a){{b, c}} + {{a, c}}(b⊗1)`, i.e.
/// `a ·_in {{b, c}} + {{a, c}} ·_in b`, on every basis triple `(k, l; j)`.
pub fn check_leibniz_first<C: Coeff>(alg: &FDAlgebra, db: &DoubleBracket<C>) -> Vec<Residual<C>> {
    let n = alg.dim();
    let mut out = Vec::new();
    for k in 0..n {
        let ek = alg.basis_element(k);
        for l in 0..n {
            let el = alg.basis_element(l);
            let prod = alg.mul(&ek, &el);
            for j in 0..n {
                let ej = alg.basis_element(j);
                let lhs = db.eval(&prod, &ej);
                let rhs = alg
                    .inner_left(&ek, &db.pair(l, j))
                    .add(&alg.inner_right(&db.pair(k, j), &el));
                out.extend(residual2(Axiom::LeibnizFirst, vec![k, l, j], lhs.sub(&rhs)));
            }
        }
    }
    out
}

/// `{{e_a, t}}_L = Σ t_uv {{e_a, e_u}} ⊗ e_v`.
fn bracket_left_leg<C: RingCoeff>(db: &DoubleBracket<C>, a: usize, t: &Tensor2<C>) -> Tensor3<C> {
    let n = db.dim();
    let mut out: Tensor3<C> = Tensor3::zero(n);
    for (uv, tc) in t.support() {
        let (u, v) = (uv / n, uv % n);
        let inner = db.pair(a, u);
        for (pq, c) in inner.support() {
            out.coords[pq * n + v] += &tc.mul_ref(c);
        }
    }
    out
}

/// `{{a,{{b,c}}}}_L + τ(123){{b,{{c,a}}}}_L + τ(132){{c,{{a,b}}}}_L` for
/// `a, b, c = e_i, e_j, e_k`.
pub fn double_jacobiator<C: RingCoeff>(
    db: &DoubleBracket<C>,
    i: usize,
    j: usize,
    k: usize,
) -> Tensor3<C> {
    let t1 = bracket_left_leg(db, i, &db.pair(j, k));
    let t2 = bracket_left_leg(db, j, &db.pair(k, i)).tau123();
    let t3 = bracket_left_leg(db, k, &db.pair(i, j)).tau132();
    t1.add(&t2).add(&t3)
}

/// Jacobiators on all basis triples.
pub fn check_jacobi<C: RingCoeff>(db: &DoubleBracket<C>) -> Vec<Residual<C>> {
    let n = db.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let t = double_jacobiator(db, i, j, k);
                if !t.is_zero() {
                    out.push(Residual {
                        axiom: Axiom::Jacobi,
                        indices: vec![i, j, k],
                        value: ResidualValue::Three(t),
                    });
                }
            }
        }
    }
    out
}

pub fn check_all<C: RingCoeff>(alg: &FDAlgebra, db: &DoubleBracket<C>) -> AxiomReport<C> {
    let mut rs = check_skew(db);
    rs.extend(check_leibniz(alg, db));
    rs.extend(check_jacobi(db));
    AxiomReport::from_residuals(rs)
}

/// [`check_all`] with every residual coefficient reduced modulo `rels`.
pub fn check_all_modulo(
    alg: &FDAlgebra,
    db: &DoubleBracket<MultiPoly>,
    rels: &RelationSet,
) -> Result<AxiomReport<MultiPoly>> {
    let report = check_all(alg, db);
    for r in &report.residuals {
        for c in r.value.coefficients() {
            rels.normal_form(c)?;
        }
    }
    Ok(report.reduce_with(|p| rels.normal_form(p).expect("ring checked above")))
}

fn random_element<R: Rng>(n: usize, rng: &mut R) -> AlgElement<Rational> {
    AlgElement {
        coords: (0..n)
            .map(|_| {
                Rational::new(rng.random_range(-5i64..=5), rng.random_range(1i64..=3)).unwrap()
            })
            .collect(),
    }
}

/// Check the first-argument rule on `samples` random rational triples.
pub fn spot_check_leibniz_first<C: Coeff, R: Rng>(
    alg: &FDAlgebra,
    db: &DoubleBracket<C>,
    rng: &mut R,
    samples: usize,
) -> bool {
    let n = alg.dim();
    (0..samples).all(|_| {
        let (x, y, z) = (
            random_element(n, rng),
            random_element(n, rng),
            random_element(n, rng),
        );
        let lhs = db.eval(&alg.mul(&x, &y), &z);
        let rhs = alg
            .inner_left(&x, &db.eval(&y, &z))
            .add(&alg.inner_right(&db.eval(&x, &z), &y));
        lhs == rhs
    })
}

/// A linear map `A → A⊗A`, given by the images of the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleDerivation<C> {
    pub images: Vec<Tensor2<C>>,
}

impl<C: Coeff> DoubleDerivation<C> {
    pub fn zero(n: usize) -> Self {
        DoubleDerivation {
            images: vec![Tensor2::zero(n); n],
        }
    }

    pub fn apply(&self, x: &AlgElement<Rational>) -> Tensor2<C> {
        let n = self.images.len();
        let mut out: Tensor2<C> = Tensor2::zero(n);
        for (i, q) in x.coords.iter().enumerate() {
            if !q.is_zero() {
                for (o, c) in out.coords.iter_mut().zip(&self.images[i].coords) {
                    o.add_scaled(c, q);
                }
            }
        }
        out
    }
}

impl DoubleDerivation<Rational> {
    /// The inner double derivation `a ↦ a·m − m·a` (outer actions).
    pub fn inner(alg: &FDAlgebra, m: &Tensor2<Rational>) -> Self {
        let images = (0..alg.dim())
            .map(|i| {
                let e = alg.basis_element(i);
                alg.outer_right(m, &e).sub(&alg.outer_left(&e, m))
            })
            .collect();
        DoubleDerivation { images }
    }
}

/// Residuals `δ(e_i e_j) − δ(e_i)e_j − e_iδ(e_j)` (outer actions).
pub fn derivation_residuals<C: Coeff>(
    alg: &FDAlgebra,
    d: &DoubleDerivation<C>,
) -> Vec<(usize, usize, Tensor2<C>)> {
    let n = alg.dim();
    let mut out = Vec::new();
    for i in 0..n {
        let ei = alg.basis_element(i);
        for j in 0..n {
            let ej = alg.basis_element(j);
            let lhs = d.apply(&alg.mul(&ei, &ej));
            let rhs = alg
                .outer_right(&d.images[i], &ej)
                .add(&alg.outer_left(&ei, &d.images[j]));
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                out.push((i, j, r));
            }
        }
    }
    out
}

pub fn double_derivation_check<C: Coeff>(alg: &FDAlgebra, d: &DoubleDerivation<C>) -> bool {
    d.images.len() == alg.dim() && derivation_residuals(alg, d).is_empty()
}

/// The double bracket of the bivector `δ1 δ2`:
/// `{{a, b}}~ = δ2(b)′δ1(a)″ ⊗ δ1(a)′δ2(b)″` antisymmetrised as
/// `{{a, b}} = {{a, b}}~ − ({{b, a}}~)°`.
pub fn bracket_from_bivector(
    alg: &FDAlgebra,
    d1: &DoubleDerivation<Rational>,
    d2: &DoubleDerivation<Rational>,
) -> Result<DoubleBracket<Rational>> {
    for (name, d) in [("first", d1), ("second", d2)] {
        if !double_derivation_check(alg, d) {
            return Err(Error::NotADerivation(format!("{name} map")));
        }
    }
    let n = alg.dim();
    let tilde = |i: usize, j: usize| -> Tensor2<Rational> {
        let mut out = Tensor2::<Rational>::zero(n);
        for (pq, c1) in d1.images[i].support() {
            let (p, q) = (pq / n, pq % n);
            for (uv, c2) in d2.images[j].support() {
                let (u, v) = (uv / n, uv % n);
                let c = c1 * c2;
                for (x, cx) in alg.product_terms(u, q) {
                    for (y, cy) in alg.product_terms(p, v) {
                        *out.at(*x, *y) += &(&c * &(cx * cy));
                    }
                }
            }
        }
        out
    };
    let mut db = DoubleBracket::zero(n);
    for i in 0..n {
        for j in 0..n {
            db.set_pair(i, j, &tilde(i, j).sub(&tilde(j, i).flip()));
        }
    }
    Ok(db)
}
