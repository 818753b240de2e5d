//! Coordinate rings of representation spaces and the Poisson brackets that
//! double brackets induce on them.
//!
//! The generators of `𝒪(Rep_n(A))` are the entries `(e_g)_ij` of the images
//! of the basis elements. A double bracket with coefficients
//! `{{e_a, e_b}} = Σ C[a][b][u][v] e_u⊗e_v` induces
//!
//! ```text
//! {(e_a)_ij, (e_b)_pq} = Σ C[a][b][u][v] (e_u)_pj (e_v)_iq
//! ```
//!
//! and is extended to all polynomials as a biderivation.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::FDAlgebra;
use crate::bracket::DoubleBracket;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// `𝒪(Rep_n(A))` as a polynomial ring in the matrix entries, together with
/// the relations saying that the entries form a unital representation.
/// Bracket parameters are carried as extra variables after the entries.
#[derive(Clone, Debug)]
pub struct CoordRing {
    alg: FDAlgebra,
    n: usize,
    vars: Arc<[String]>,
    relations: Vec<MultiPoly>,
}

impl CoordRing {
    pub fn new(alg: &FDAlgebra, n: usize, params: &[String]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid(
                "representation size must be positive".into(),
            ));
        }
        let mut names = Vec::with_capacity(alg.dim() * n * n + params.len());
        for g in alg.basis_names() {
            for i in 0..n {
                for j in 0..n {
                    names.push(entry_name(g, n, i, j));
                }
            }
        }
        for p in params {
            if names.contains(p) {
                return Err(Error::Invalid(format!(
                    "parameter {p} clashes with a matrix entry"
                )));
            }
            names.push(p.clone());
        }
        let mut ring = CoordRing {
            alg: alg.clone(),
            n,
            vars: names.into(),
            relations: Vec::new(),
        };
        ring.relations = ring.build_relations();
        Ok(ring)
    }

    fn build_relations(&self) -> Vec<MultiPoly> {
        let (d, n) = (self.alg.dim(), self.n);
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for i in 0..n {
                    for j in 0..n {
                        let mut r = MultiPoly::zero_in(&self.vars);
                        for k in 0..n {
                            r += &(&self.entry(a, i, k) * &self.entry(b, k, j));
                        }
                        for (c, q) in self.alg.product_terms(a, b) {
                            r -= &self.entry(*c, i, j).scale(q);
                        }
                        if !r.is_zero() {
                            out.push(r);
                        }
                    }
                }
            }
        }
        let unit = self.alg.unit();
        for i in 0..n {
            for j in 0..n {
                let mut r = MultiPoly::zero_in(&self.vars);
                for (g, q) in unit.coords.iter().enumerate() {
                    if !q.is_zero() {
                        r += &self.entry(g, i, j).scale(q);
                    }
                }
                if i == j {
                    r -= &MultiPoly::constant_in(&self.vars, Rational::one());
                }
                out.push(r);
            }
        }
        out
    }

    pub fn algebra(&self) -> &FDAlgebra {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    /// Number of matrix-entry generators.
    pub fn num_entries(&self) -> usize {
        self.alg.dim() * self.n * self.n
    }

    pub fn params(&self) -> &[String] {
        &self.vars[self.num_entries()..]
    }

    /// Index of `(e_g)_ij` (0-based `i`, `j`).
    pub fn index(&self, g: usize, i: usize, j: usize) -> usize {
        (g * self.n + i) * self.n + j
    }

    /// Inverse of [`CoordRing::index`].
    pub fn position(&self, k: usize) -> (usize, usize, usize) {
        let n = self.n;
        (k / (n * n), (k / n) % n, k % n)
    }

    pub fn entry(&self, g: usize, i: usize, j: usize) -> MultiPoly {
        MultiPoly::var(&self.vars, self.index(g, i, j))
    }

    /// `Σ_i (e_g)_ii`.
    pub fn trace(&self, g: usize) -> MultiPoly {
        (0..self.n).fold(MultiPoly::zero_in(&self.vars), |acc, i| {
            &acc + &self.entry(g, i, i)
        })
    }

    /// Entries of `x_a x_b − Σ C x_c` and of `Σ unit_g x_g − I`.
    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }
}

fn entry_name(g: &str, n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("{g}_{}{}", i + 1, j + 1)
    } else {
        format!("{g}_{}_{}", i + 1, j + 1)
    }
}

/// Brackets of all pairs of matrix-entry generators.
#[derive(Clone, Debug)]
pub struct PoissonTable {
    ring: CoordRing,
    table: Vec<MultiPoly>,
}

impl PoissonTable {
    pub fn ring(&self) -> &CoordRing {
        &self.ring
    }

    /// `{x_u, x_v}` for generator indices `u`, `v`.
    pub fn get(&self, u: usize, v: usize) -> &MultiPoly {
        &self.table[u * self.ring.num_entries() + v]
    }

    /// Pairs `(u, v)` with `{x_u, x_v} + {x_v, x_u} ≠ 0`.
    pub fn antisymmetry_violations(&self) -> Vec<(usize, usize)> {
        let m = self.ring.num_entries();
        let mut out = Vec::new();
        for u in 0..m {
            for v in u..m {
                if !(self.get(u, v) + self.get(v, u)).is_zero() {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_violations().is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Zero::is_zero)
    }

    /// Pairs `(u, v)` with a nonzero bracket.
    pub fn nonzero_pairs(&self) -> impl Iterator<Item = (usize, usize, &MultiPoly)> {
        let m = self.ring.num_entries();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(move |(k, p)| (k / m, k % m, p))
    }

    /// Table values at a point given by the generator values followed by
    /// the parameter values.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        if point.len() != self.ring.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.vars.len(),
                got: point.len(),
            });
        }
        Ok(self.table.iter().map(|p| p.evaluate(point)).collect())
    }
}

/// The Poisson table induced on `Rep_n(A)` by `db`. Bracket parameters
/// become ring variables.
pub fn induce(alg: &FDAlgebra, db: &DoubleBracket<MultiPoly>, n: usize) -> Result<PoissonTable> {
    let d = alg.dim();
    if db.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: db.dim(),
        });
    }
    let params: Vec<String> = db
        .coeffs()
        .iter()
        .map(|p| p.vars())
        .find(|v| !v.is_empty())
        .map(|v| v.to_vec())
        .unwrap_or_default();
    let ring = CoordRing::new(alg, n, &params)?;
    let coeffs = db
        .coeffs()
        .iter()
        .map(|p| p.embed(ring.vars()))
        .collect::<Result<Vec<_>>>()?;
    let m = ring.num_entries();
    let mut table = vec![MultiPoly::zero_in(ring.vars()); m * m];
    for a in 0..d {
        for b in 0..d {
            let pairs: Vec<(usize, usize, &MultiPoly)> = (0..d * d)
                .filter_map(|k| {
                    let c = &coeffs[db.index(a, b, k / d, k % d)];
                    (!c.is_zero()).then_some((k / d, k % d, c))
                })
                .collect();
            if pairs.is_empty() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    for p in 0..n {
                        for q in 0..n {
                            let mut s = MultiPoly::zero_in(ring.vars());
                            for &(u, v, c) in &pairs {
                                s += &(&(c * &ring.entry(u, p, j)) * &ring.entry(v, i, q));
                            }
                            table[ring.index(a, i, j) * m + ring.index(b, p, q)] = s;
                        }
                    }
                }
            }
        }
    }
    Ok(PoissonTable { ring, table })
}

/// [`induce`] for a bracket with rational coefficients.
pub fn induce_rational(
    alg: &FDAlgebra,
    db: &DoubleBracket<Rational>,
    n: usize,
) -> Result<PoissonTable> {
    induce(alg, &db.map(|q| MultiPoly::constant(q.clone())), n)
}

/// `{f, g} = Σ {x_u, x_v} ∂f/∂x_u ∂g/∂x_v`.
pub fn poisson_eval(t: &PoissonTable, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    let vars = t.ring.vars();
    let (f, g) = (f.embed(vars)?, g.embed(vars)?);
    let m = t.ring.num_entries();
    let df: Vec<(usize, MultiPoly)> = (0..m)
        .map(|u| (u, f.partial(u)))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let dg: Vec<(usize, MultiPoly)> = (0..m)
        .map(|v| (v, g.partial(v)))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let mut out = MultiPoly::zero_in(vars);
    for (u, fu) in &df {
        for (v, gv) in &dg {
            let b = t.get(*u, *v);
            if !b.is_zero() {
                out += &(&(b * fu) * gv);
            }
        }
    }
    Ok(out)
}

/// `{Σ_i (e_g)_ii, (e_h)_pq}` for all `g`, `h`, `p`, `q`, as polynomials.
pub fn trace_brackets(t: &PoissonTable) -> Vec<MultiPoly> {
    let ring = &t.ring;
    let (d, n) = (ring.alg.dim(), ring.n);
    let mut out = Vec::new();
    for g in 0..d {
        for h in 0..d {
            for p in 0..n {
                for q in 0..n {
                    let v = ring.index(h, p, q);
                    let s = (0..n).fold(MultiPoly::zero_in(ring.vars()), |acc, i| {
                        &acc + t.get(ring.index(g, i, i), v)
                    });
                    out.push(s);
                }
            }
        }
    }
    out
}

/// A point of `Rep_n(A)`: one `n × n` rational matrix per basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct RepPoint {
    pub matrices: Vec<QMatrix>,
}

impl RepPoint {
    /// Check that `e_g ↦ matrices[g]` is a unital algebra map.
    pub fn new(alg: &FDAlgebra, matrices: Vec<QMatrix>) -> Result<Self> {
        if matrices.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                got: matrices.len(),
            });
        }
        let n = matrices[0].rows();
        if matrices.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Invalid(
                "representation matrices must be square of equal size".into(),
            ));
        }
        let combo = |coords: &mut dyn Iterator<Item = (usize, Rational)>| {
            let mut out = QMatrix::zeros(n, n);
            for (g, q) in coords {
                for i in 0..n {
                    for j in 0..n {
                        out[(i, j)] += &(&q * &matrices[g][(i, j)]);
                    }
                }
            }
            out
        };
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let lhs = matrices[a].mul(&matrices[b])?;
                let rhs = combo(&mut alg.product_terms(a, b).iter().cloned());
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "not a representation: product of {} and {} is not respected",
                        alg.basis_names()[a],
                        alg.basis_names()[b]
                    )));
                }
            }
        }
        let unit = combo(&mut alg.unit().coords.into_iter().enumerate());
        if unit != QMatrix::identity(n) {
            return Err(Error::Invalid(
                "not a representation: unit is not the identity".into(),
            ));
        }
        Ok(RepPoint { matrices })
    }

    pub fn n(&self) -> usize {
        self.matrices[0].rows()
    }

    /// `g ρ g⁻¹`.
    pub fn conjugate(&self, g: &QMatrix) -> Result<RepPoint> {
        let gi = g.inverse()?;
        let matrices = self
            .matrices
            .iter()
            .map(|m| g.mul(m)?.mul(&gi))
            .collect::<Result<Vec<_>>>()?;
        Ok(RepPoint { matrices })
    }

    /// Block-diagonal sum of representations of the same algebra.
    pub fn direct_sum(parts: &[RepPoint]) -> Result<RepPoint> {
        let d = parts
            .first()
            .map(|p| p.matrices.len())
            .ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        if parts.iter().any(|p| p.matrices.len() != d) {
            return Err(Error::Invalid(
                "direct summands must represent the same algebra".into(),
            ));
        }
        let n: usize = parts.iter().map(RepPoint::n).sum();
        let mut matrices = vec![QMatrix::zeros(n, n); d];
        let mut off = 0;
        for p in parts {
            let k = p.n();
            for (out, m) in matrices.iter_mut().zip(&p.matrices) {
                for i in 0..k {
                    for j in 0..k {
                        out[(off + i, off + j)] = m[(i, j)].clone();
                    }
                }
            }
            off += k;
        }
        Ok(RepPoint { matrices })
    }

    /// Generator values in [`CoordRing`] order followed by `params`.
    pub fn coordinates(&self, params: &[Rational]) -> Vec<Rational> {
        let n = self.n();
        let mut out = Vec::with_capacity(self.matrices.len() * n * n + params.len());
        for m in &self.matrices {
            for i in 0..n {
                for j in 0..n {
                    out.push(m[(i, j)].clone());
                }
            }
        }
        out.extend_from_slice(params);
        out
    }

    /// The defining representation of `Mat_m`.
    pub fn matrix_standard(m: usize) -> Result<RepPoint> {
        let alg = FDAlgebra::matrix(m)?;
        let mats = (0..m * m)
            .map(|k| {
                let mut e = QMatrix::zeros(m, m);
                e[(k / m, k % m)] = Rational::one();
                e
            })
            .collect();
        RepPoint::new(&alg, mats)
    }

    /// The two-dimensional representation of 𝒜₂ by upper-triangular
    /// matrices: `e0 ↦ E12`, `e1 ↦ E11`, `e2 ↦ E22`.
    pub fn a2_standard() -> RepPoint {
        let e = |i: usize, j: usize| {
            let mut m = QMatrix::zeros(2, 2);
            m[(i, j)] = Rational::one();
            m
        };
        RepPoint::new(&FDAlgebra::a2(), vec![e(0, 1), e(0, 0), e(1, 1)])
            .expect("standard representation")
    }

    /// The one-dimensional representation of 𝒜₂ sending `e1` (`k = 1`) or
    /// `e2` (`k = 2`) to 1.
    pub fn a2_simple(k: usize) -> Result<RepPoint> {
        if k != 1 && k != 2 {
            return Err(Error::Invalid(
                "𝒜₂ has simple modules for e1 and e2 only".into(),
            ));
        }
        let s =
            |on: bool| QMatrix::from_rows(vec![vec![Rational::from(on as i64)]], 1).expect("1x1");
        RepPoint::new(&FDAlgebra::a2(), vec![s(false), s(k == 1), s(k == 2)])
    }
}

/// Values of the trace brackets [`trace_brackets`] at a point of the
/// representation space that are nonzero.
pub fn trace_residuals_at(
    t: &PoissonTable,
    point: &RepPoint,
    params: &[Rational],
) -> Result<Vec<Rational>> {
    if point.n() != t.ring.n || point.matrices.len() != t.ring.alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.ring.n,
            got: point.n(),
        });
    }
    let x = point.coordinates(params);
    if x.len() != t.ring.vars.len() {
        return Err(Error::DimensionMismatch {
            expected: t.ring.vars.len(),
            got: x.len(),
        });
    }
    Ok(trace_brackets(t)
        .iter()
        .map(|p| p.evaluate(&x))
        .filter(|v| !v.is_zero())
        .collect())
}
