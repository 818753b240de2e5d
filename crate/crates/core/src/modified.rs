//! Modified double Poisson brackets: both Leibniz rules hold, and the single
//! bracket `{a, b} = m∘{{a, b}}` is skew modulo commutators and satisfies
//! `{a, {b, c}} − {b, {a, c}} − {{a, b}, c} = 0`.
//!
//! No skew-symmetry of the double bracket itself is assumed, so the same
//! [`DoubleBracket`] storage is used without the skew check.

use num_traits::Zero;

use crate::algebra::{AlgElement, FDAlgebra, TraceSpace};
use crate::bracket::{check_leibniz, check_leibniz_first, DoubleBracket, Residual};
use crate::coeff::{Coeff, LinExpr, RingCoeff};
use crate::error::{Error, Result};
use crate::inner::dedup_proportional;
use crate::linalg::SparseEchelon;
use crate::solver::{add_residual_rows, unknown_bracket, variety_from, LinearVariety};

pub type ModifiedBracket<C> = DoubleBracket<C>;

/// Residuals of both Leibniz rules on every basis triple.
pub fn check_leibniz_both<C: Coeff>(alg: &FDAlgebra, mb: &ModifiedBracket<C>) -> Vec<Residual<C>> {
    let mut out = check_leibniz(alg, mb);
    out.extend(check_leibniz_first(alg, mb));
    out
}

/// `{e_i, e_j} = m∘{{e_i, e_j}}`.
pub fn single_bracket<C: Coeff>(
    alg: &FDAlgebra,
    mb: &ModifiedBracket<C>,
    i: usize,
    j: usize,
) -> AlgElement<C> {
    alg.multiply(&mb.pair(i, j))
}

/// `{x, y}` for elements with coefficients in a ring.
pub fn single_bracket_elements<C: RingCoeff>(
    alg: &FDAlgebra,
    mb: &ModifiedBracket<C>,
    x: &AlgElement<C>,
    y: &AlgElement<C>,
) -> AlgElement<C> {
    let n = alg.dim();
    let mut out = AlgElement::zero(n);
    for (i, xi) in x.coords.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.coords.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = xi.mul_ref(yj);
            for (o, s) in out
                .coords
                .iter_mut()
                .zip(single_bracket(alg, mb, i, j).coords)
            {
                *o += &c.mul_ref(&s);
            }
        }
    }
    out
}

/// Basis pairs `(i, j)` where `{e_i, e_j} + {e_j, e_i}` leaves `[A, A]`,
/// with the offending sum.
pub fn h0_skew_residuals<C: Coeff>(
    alg: &FDAlgebra,
    mb: &ModifiedBracket<C>,
    trace: &TraceSpace,
) -> Vec<(usize, usize, AlgElement<C>)> {
    let n = alg.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let s = single_bracket(alg, mb, i, j).add(&single_bracket(alg, mb, j, i));
            if !trace.contains(&s) {
                out.push((i, j, s));
            }
        }
    }
    out
}

pub fn h0_skew_check<C: Coeff>(alg: &FDAlgebra, mb: &ModifiedBracket<C>) -> bool {
    h0_skew_residuals(alg, mb, &alg.commutator_subspace()).is_empty()
}

/// Basis triples where `{a, {b, c}} − {b, {a, c}} − {{a, b}, c}` is nonzero.
pub fn h0_jacobi_residuals<C: RingCoeff>(
    alg: &FDAlgebra,
    mb: &ModifiedBracket<C>,
) -> Vec<([usize; 3], AlgElement<C>)> {
    let n = alg.dim();
    let basis = |i: usize| {
        let mut e = AlgElement::<C>::zero(n);
        e.coords[i] = C::one();
        e
    };
    let sb: Vec<Vec<AlgElement<C>>> = (0..n)
        .map(|i| (0..n).map(|j| single_bracket(alg, mb, i, j)).collect())
        .collect();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t1 = single_bracket_elements(alg, mb, &basis(a), &sb[b][c]);
                let t2 = single_bracket_elements(alg, mb, &basis(b), &sb[a][c]);
                let t3 = single_bracket_elements(alg, mb, &sb[a][b], &basis(c));
                let r = t1.sub(&t2).sub(&t3);
                if !r.is_zero() {
                    out.push(([a, b, c], r));
                }
            }
        }
    }
    out
}

pub fn h0_jacobi_check<C: RingCoeff>(alg: &FDAlgebra, mb: &ModifiedBracket<C>) -> bool {
    h0_jacobi_residuals(alg, mb).is_empty()
}

/// Both Leibniz rules and H₀-skew-symmetry as a linear system, then the
/// H₀-Jacobi identity on the general element.
pub fn solve_modified(alg: &FDAlgebra) -> LinearVariety {
    let n = alg.dim();
    let db = unknown_bracket(n);
    let mut ech = SparseEchelon::new(n.pow(4));
    add_residual_rows(&mut ech, &check_leibniz_both(alg, &db));
    let trace = alg.commutator_subspace();
    for i in 0..n {
        for j in i..n {
            let s: AlgElement<LinExpr> =
                single_bracket(alg, &db, i, j).add(&single_bracket(alg, &db, j, i));
            for row in trace.reduce(&s).coords {
                if !row.is_empty() {
                    ech.add_row(row.terms());
                }
            }
        }
    }
    let mut v = variety_from(n, &ech);
    if !v.basis.is_empty() {
        let g = v.general_element();
        let polys = h0_jacobi_residuals(alg, &g)
            .into_iter()
            .flat_map(|(_, r)| r.coords);
        v.quadratic_constraints = dedup_proportional(polys);
    }
    v
}

/// The bracket induced on `A/[A, A]`, tabulated on the complement basis
/// of [`TraceSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct FlatTable<C> {
    /// Basis indices of the algebra whose classes span the quotient.
    pub basis: Vec<usize>,
    /// `table[p][q]` are the coordinates of `{ē_p, ē_q}` in that basis.
    pub table: Vec<Vec<Vec<C>>>,
}

impl<C: Coeff> FlatTable<C> {
    pub fn is_zero(&self) -> bool {
        self.table.iter().flatten().flatten().all(Zero::is_zero)
    }
}

/// `{x̄, ȳ} = (m∘{{x, y}})♭` on the complement basis, after checking that
/// shifting either argument by a commutator does not change the class.
pub fn flat_bracket<C: Coeff>(alg: &FDAlgebra, mb: &ModifiedBracket<C>) -> Result<FlatTable<C>> {
    let trace = alg.commutator_subspace();
    let basis = trace.complement().to_vec();
    for c in trace.commutator_basis() {
        for &q in &basis {
            let eq = alg.basis_element(q);
            for (label, t) in [("left", mb.eval(&c, &eq)), ("right", mb.eval(&eq, &c))] {
                let v = alg.multiply(&t);
                if !trace.contains(&v) {
                    return Err(Error::IllDefined(format!(
                        "shifting the {label} argument of {{{}, ·}} by {} changes the class",
                        alg.basis_names()[q],
                        alg.format_element(&c)
                    )));
                }
            }
        }
    }
    let table = basis
        .iter()
        .map(|&p| {
            basis
                .iter()
                .map(|&q| trace.project(&single_bracket(alg, mb, p, q)))
                .collect()
        })
        .collect();
    Ok(FlatTable { basis, table })
}
