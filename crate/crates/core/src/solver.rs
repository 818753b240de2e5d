//! Classification of double brackets on a finite-dimensional algebra.
//!
//! The unknowns are the coefficients `C[i][j][a][b]`. Skew-symmetry and the
//! Leibniz rule are linear in them; the rows of the system are produced by
//! running the ordinary axiom checks with [`LinExpr`] coefficients. The
//! double Jacobi identity is quadratic and is evaluated on the general
//! element of the nullspace.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{FDAlgebra, Tensor2};
use crate::bracket::{
    check_jacobi, check_leibniz, check_skew, derivation_residuals, DoubleBracket, DoubleDerivation,
    Residual,
};
use crate::coeff::LinExpr;
use crate::error::{Error, Result};
use crate::inner::{dedup_proportional, inner_bracket, WedgeElement};
use crate::linalg::{QMatrix, SparseEchelon};
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// Nullspace of a linear constraint system on bracket coefficients, with the
/// residual polynomial constraints on its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearVariety {
    pub dim: usize,
    pub parameter_names: Vec<String>,
    pub basis: Vec<DoubleBracket<Rational>>,
    pub quadratic_constraints: Vec<MultiPoly>,
}

impl LinearVariety {
    pub fn nullspace_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vars(&self) -> Arc<[String]> {
        self.parameter_names.clone().into()
    }

    /// `Σ t_k · basis_k` with symbolic `t_k`.
    pub fn general_element(&self) -> DoubleBracket<MultiPoly> {
        let vars = self.vars();
        let mut out =
            DoubleBracket::from_coeffs(self.dim, vec![MultiPoly::zero_in(&vars); self.dim.pow(4)])
                .expect("size");
        for (k, b) in self.basis.iter().enumerate() {
            let t = MultiPoly::var(&vars, k);
            out = out.add(&b.map(|q| t.scale(q)));
        }
        out
    }

    /// Express the parameters `t_k` through new parameters `names[m]`,
    /// defined as the coefficients at the flat positions `coords[m]`. The map
    /// from the old parameters to these coefficients must be invertible.
    pub fn reparametrization(&self, coords: &[usize], names: &[&str]) -> Result<Vec<MultiPoly>> {
        let k = self.basis.len();
        if coords.len() != k || names.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: coords.len(),
            });
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= self.dim.pow(4)) {
            return Err(Error::Invalid(format!(
                "coefficient position {c} out of range"
            )));
        }
        let rows = coords
            .iter()
            .map(|&c| self.basis.iter().map(|b| b.coeffs()[c].clone()).collect())
            .collect();
        let m = QMatrix::from_rows(rows, k)?;
        let inv = m.inverse().map_err(|_| {
            Error::Invalid("chosen coefficients do not determine the family".into())
        })?;
        let vars: Arc<[String]> = names
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .into();
        // t = inv * new
        Ok((0..k)
            .map(|p| {
                (0..k).fold(MultiPoly::zero_in(&vars), |acc, q| {
                    &acc + &MultiPoly::var(&vars, q).scale(&inv[(p, q)])
                })
            })
            .collect())
    }

    /// The general element in the parameters of [`LinearVariety::reparametrization`].
    pub fn reparametrize(
        &self,
        coords: &[usize],
        names: &[&str],
    ) -> Result<DoubleBracket<MultiPoly>> {
        let t = self.reparametrization(coords, names)?;
        let vars = t
            .first()
            .map(|p| p.vars().clone())
            .unwrap_or_else(|| Arc::from(Vec::new()));
        let mut out =
            DoubleBracket::from_coeffs(self.dim, vec![MultiPoly::zero_in(&vars); self.dim.pow(4)])?;
        for (p, b) in self.basis.iter().enumerate() {
            out = out.add(&b.map(|q| t[p].scale(q)));
        }
        Ok(out)
    }

    /// The quadratic constraints in the new parameters, made monic.
    pub fn reparametrized_constraints(
        &self,
        coords: &[usize],
        names: &[&str],
    ) -> Result<Vec<MultiPoly>> {
        let t = self.reparametrization(coords, names)?;
        Ok(dedup_proportional(
            self.quadratic_constraints.iter().map(|c| c.substitute(&t)),
        ))
    }
}

/// The symbolic bracket whose coefficient at flat position `k` is the unknown `u_k`.
pub fn unknown_bracket(n: usize) -> DoubleBracket<LinExpr> {
    DoubleBracket::from_coeffs(n, (0..n.pow(4)).map(LinExpr::var).collect()).expect("size")
}

pub(crate) fn add_residual_rows(ech: &mut SparseEchelon, residuals: &[Residual<LinExpr>]) {
    for r in residuals {
        for row in r.value.coefficients() {
            if !row.is_empty() {
                ech.add_row(row.terms());
            }
        }
    }
}

pub(crate) fn variety_from(n: usize, ech: &SparseEchelon) -> LinearVariety {
    let basis: Vec<DoubleBracket<Rational>> = ech
        .nullspace()
        .into_iter()
        .map(|v| DoubleBracket::from_coeffs(n, v).expect("size"))
        .collect();
    LinearVariety {
        dim: n,
        parameter_names: (0..basis.len()).map(|k| format!("t{k}")).collect(),
        basis,
        quadratic_constraints: Vec::new(),
    }
}

/// Nullspace of the skew-symmetry and Leibniz equations.
pub fn solve_linear(alg: &FDAlgebra) -> LinearVariety {
    let n = alg.dim();
    let db = unknown_bracket(n);
    let mut ech = SparseEchelon::new(n.pow(4));
    add_residual_rows(&mut ech, &check_skew(&db));
    add_residual_rows(&mut ech, &check_leibniz(alg, &db));
    variety_from(n, &ech)
}

/// Fill in the distinct double-Jacobi coefficient polynomials of the
/// general element, deduplicated up to scalar multiples.
pub fn jacobi_constraints(v: &LinearVariety) -> LinearVariety {
    let mut out = v.clone();
    if v.basis.is_empty() {
        return out;
    }
    let g = v.general_element();
    let polys = check_jacobi(&g)
        .into_iter()
        .flat_map(|r| r.value.coefficients().to_vec());
    out.quadratic_constraints = dedup_proportional(polys);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivationDims {
    pub dim_der: usize,
    pub dim_inner: usize,
    pub dim_outer: usize,
}

/// Dimensions of double derivations `A → A⊗A` (outer structure), of inner
/// ones, and of the quotient.
pub fn outer_double_derivation_dim(alg: &FDAlgebra) -> DerivationDims {
    let n = alg.dim();
    let n2 = n * n;
    let unknown = DoubleDerivation {
        images: (0..n)
            .map(|i| Tensor2 {
                n,
                coords: (0..n2).map(|k| LinExpr::var(i * n2 + k)).collect(),
            })
            .collect(),
    };
    let mut ech = SparseEchelon::new(n * n2);
    for (_, _, r) in derivation_residuals(alg, &unknown) {
        for row in &r.coords {
            if !row.is_empty() {
                ech.add_row(row.terms());
            }
        }
    }
    let dim_der = n * n2 - ech.rank();
    let mut inner = SparseEchelon::new(n * n2);
    for a in 0..n {
        for b in 0..n {
            let d = DoubleDerivation::inner(alg, &Tensor2::basis(n, a, b));
            let flat: Vec<Rational> = d.images.into_iter().flat_map(|t| t.coords).collect();
            inner.add_row(flat.iter().enumerate());
        }
    }
    let dim_inner = inner.rank();
    DerivationDims {
        dim_der,
        dim_inner,
        dim_outer: dim_der - dim_inner,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanComparison {
    pub nullspace_dim: usize,
    pub inner_span_dim: usize,
    pub equal: bool,
}

/// Compare the solution space of [`solve_linear`] with the span of the inner
/// brackets of `e_a∧e_b`.
pub fn inner_bracket_span_equality(alg: &FDAlgebra, v: &LinearVariety) -> SpanComparison {
    let n = alg.dim();
    let mut inner = SparseEchelon::new(n.pow(4));
    for a in 0..n {
        for b in a + 1..n {
            let r = WedgeElement::wedge(&alg.basis_element(a), &alg.basis_element(b));
            let db = inner_bracket(alg, &r);
            inner.add_row(db.coeffs().iter().enumerate());
        }
    }
    let mut both = inner.clone();
    let mut null = SparseEchelon::new(n.pow(4));
    for b in &v.basis {
        null.add_row(b.coeffs().iter().enumerate());
        both.add_row(b.coeffs().iter().enumerate());
    }
    let (ri, rn, rb) = (inner.rank(), null.rank(), both.rank());
    SpanComparison {
        nullspace_dim: rn,
        inner_span_dim: ri,
        equal: ri == rn && rn == rb,
    }
}

/// Whether a concrete bracket lies in the solution space (used for
/// round-trip checks).
pub fn in_span(v: &LinearVariety, db: &DoubleBracket<Rational>) -> bool {
    let mut ech = SparseEchelon::new(v.dim.pow(4));
    for b in &v.basis {
        ech.add_row(b.coeffs().iter().enumerate());
    }
    db.coeffs().iter().all(Zero::is_zero) || ech.contains(db.coeffs().iter().enumerate())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyComparison {
    pub family_dim: usize,
    pub variety_dim: usize,
    /// Every member of the family lies in the variety's linear span.
    pub contained: bool,
    pub equal: bool,
}

/// Compare the span of a linear family of brackets, given with symbolic
/// parameters, with the nullspace of `v`.
pub fn compare_with_family(
    v: &LinearVariety,
    family: &DoubleBracket<MultiPoly>,
) -> FamilyComparison {
    let n4 = v.dim.pow(4);
    let nparams = family
        .coeffs()
        .iter()
        .map(MultiPoly::nvars)
        .max()
        .unwrap_or(0);
    let mut fam = SparseEchelon::new(n4);
    let origin = family.at_point(&vec![Rational::zero(); nparams]);
    if !origin.is_zero() {
        fam.add_row(origin.coeffs().iter().enumerate());
    }
    for k in 0..nparams {
        let mut p = vec![Rational::zero(); nparams];
        p[k] = Rational::from(1);
        let b = family.at_point(&p);
        let d: Vec<Rational> = b
            .coeffs()
            .iter()
            .zip(origin.coeffs())
            .map(|(x, y)| x - y)
            .collect();
        fam.add_row(d.iter().enumerate());
    }
    let mut var = SparseEchelon::new(n4);
    for b in &v.basis {
        var.add_row(b.coeffs().iter().enumerate());
    }
    let mut both = var.clone();
    for (_, row) in fam.reduced_rows() {
        both.add_row(row.iter().map(|(c, q)| (*c, q)));
    }
    let (rf, rv, rb) = (fam.rank(), var.rank(), both.rank());
    FamilyComparison {
        family_dim: rf,
        variety_dim: rv,
        contained: rb == rv,
        equal: rb == rv && rf == rv,
    }
}
