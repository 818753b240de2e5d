//! Parametrizations of representation spaces and the Poisson bivectors the
//! induced brackets take in chart coordinates.
//!
//! A chart replaces every matrix entry by a polynomial in chart variables.
//! Coordinates need not be chart variables: on the circle the angle `θ` acts
//! through the derivation `c ↦ −s, s ↦ c`, and `c² + s² = 1` is imposed by a
//! [`RelationSet`]. A chart is consistent with a [`PoissonTable`] when, for
//! every pair of generators,
//!
//! ```text
//! {x_u, x_v} ∘ chart = Σ π[p][q] ∂_p(x_u ∘ chart) ∂_q(x_v ∘ chart).
//! ```

use std::f64::consts::PI;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{MultiPoly, RelationSet};
use crate::rational::Rational;
use crate::rep::{trace_brackets, CoordRing, PoissonTable};

/// A bivector `π = Σ π[p][q] ∂_p ⊗ ∂_q` whose entries are polynomials in
/// chart variables, with each coordinate derivation given by its values on
/// the chart variables.
#[derive(Clone, Debug)]
pub struct Bivector {
    pub vars: Arc<[String]>,
    pub relations: RelationSet,
    pub coords: Vec<String>,
    pub derivations: Vec<Vec<MultiPoly>>,
    pub entries: Vec<Vec<MultiPoly>>,
}

impl Bivector {
    /// The zero bivector on `coords`, each coordinate being the chart
    /// variable of the same name.
    pub fn zero(vars: &Arc<[String]>, coords: &[&str]) -> Result<Self> {
        let derivations = coords
            .iter()
            .map(|c| {
                let k = vars.iter().position(|v| v == c).ok_or_else(|| {
                    Error::Invalid(format!("coordinate {c} is not a chart variable"))
                })?;
                Ok(partial_images(vars, k))
            })
            .collect::<Result<Vec<_>>>()?;
        let k = coords.len();
        Ok(Bivector {
            vars: vars.clone(),
            relations: RelationSet::empty(vars),
            coords: coords.iter().map(|s| s.to_string()).collect(),
            derivations,
            entries: vec![vec![MultiPoly::zero_in(vars); k]; k],
        })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Set `π[a][b] = p` and `π[b][a] = −p`.
    pub fn set(&mut self, a: usize, b: usize, p: MultiPoly) {
        self.entries[b][a] = -&p;
        self.entries[a][b] = p;
    }

    pub fn derive(&self, l: usize, p: &MultiPoly) -> MultiPoly {
        p.apply_derivation(&self.derivations[l])
    }

    pub fn is_antisymmetric(&self) -> bool {
        let k = self.len();
        (0..k).all(|a| (0..k).all(|b| (&self.entries[a][b] + &self.entries[b][a]).is_zero()))
    }

    /// `{f, g} = Σ π[p][q] ∂_p f ∂_q g`, reduced by the chart relations.
    pub fn bracket(&self, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
        let df: Vec<MultiPoly> = (0..self.len()).map(|l| self.derive(l, f)).collect();
        let dg: Vec<MultiPoly> = (0..self.len()).map(|l| self.derive(l, g)).collect();
        self.relations.normal_form(&self.contract(&df, &dg))
    }

    fn contract(&self, df: &[MultiPoly], dg: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero_in(&self.vars);
        for (p, fp) in df.iter().enumerate() {
            if fp.is_zero() {
                continue;
            }
            for (q, gq) in dg.iter().enumerate() {
                let e = &self.entries[p][q];
                if !e.is_zero() && !gq.is_zero() {
                    out += &(&(e * fp) * gq);
                }
            }
        }
        out
    }

    /// Rank of the matrix `π` at a rational point of the chart variables.
    pub fn rank_at(&self, point: &[Rational]) -> usize {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.evaluate(point)).collect())
            .collect();
        QMatrix::from_rows(rows, self.len()).expect("square").rank()
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|p| p.evaluate_f64(point)).collect())
            .collect()
    }
}

fn partial_images(vars: &Arc<[String]>, k: usize) -> Vec<MultiPoly> {
    (0..vars.len())
        .map(|i| {
            MultiPoly::constant_in(
                vars,
                if i == k {
                    Rational::one()
                } else {
                    Rational::zero()
                },
            )
        })
        .collect()
}

/// Components `[π, π]_{abc} = Σ_l (π[l][a] ∂_l π[b][c] + π[l][b] ∂_l π[c][a] + π[l][c] ∂_l π[a][b])`
/// for `a < b < c` that do not vanish modulo the chart relations.
pub fn jacobi_check_bivector(pi: &Bivector) -> Result<Vec<([usize; 3], MultiPoly)>> {
    let k = pi.len();
    let d: Vec<Vec<Vec<MultiPoly>>> = (0..k)
        .map(|l| {
            pi.entries
                .iter()
                .map(|r| r.iter().map(|p| pi.derive(l, p)).collect())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                let mut s = MultiPoly::zero_in(&pi.vars);
                for (row, dl) in pi.entries.iter().zip(&d) {
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        let e = &row[x];
                        if !e.is_zero() {
                            s += &(e * &dl[y][z]);
                        }
                    }
                }
                let s = pi.relations.normal_form(&s)?;
                if !s.is_zero() {
                    out.push(([a, b, c], s));
                }
            }
        }
    }
    Ok(out)
}

/// Polynomial parametrization of (an open part of) a representation space.
#[derive(Clone, Debug)]
pub struct ParamChart {
    pub name: String,
    pub ring: CoordRing,
    /// Image of every ring variable (entries, then bracket parameters).
    pub subst: Vec<MultiPoly>,
    pub bivector: Bivector,
}

impl ParamChart {
    /// Ring relations that do not vanish under the chart.
    pub fn relation_residuals(&self) -> Result<Vec<MultiPoly>> {
        let mut out = Vec::new();
        for r in self.ring.relations() {
            let p = self
                .bivector
                .relations
                .normal_form(&r.substitute(&self.subst))?;
            if !p.is_zero() {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// `ρ(e_g)_ij` in chart variables.
    pub fn entry(&self, g: usize, i: usize, j: usize) -> &MultiPoly {
        &self.subst[self.ring.index(g, i, j)]
    }
}

/// The circle chart of `Rep₂(𝒜₂)`: with `u = (c, s)`, `v = λ(−s, c)` and
/// `w = (c − μs, s + μc)`, `ρ(e0) = u vᵀ`, `ρ(e1) = u wᵀ`, `ρ(e2) = I − ρ(e1)`.
/// Coordinates are `(θ, λ, μ)` and the bivector is `{λ, μ} = A λ²` where
/// `A` is the bracket parameter named `param`.
pub fn register_chart_rep2_a2(param: &str) -> Result<ParamChart> {
    let names = ["c", "s", "lam", "mu"];
    if names.contains(&param) {
        return Err(Error::Invalid(format!(
            "parameter name {param} clashes with a chart variable"
        )));
    }
    let vars: Arc<[String]> = names
        .iter()
        .map(|s| s.to_string())
        .chain([param.to_string()])
        .collect::<Vec<_>>()
        .into();
    let v = |k| MultiPoly::var(&vars, k);
    let (c, s, lam, mu, a) = (v(0), v(1), v(2), v(3), v(4));
    let one = MultiPoly::constant_in(&vars, Rational::one());
    let zero = MultiPoly::zero_in(&vars);

    let u = [c.clone(), s.clone()];
    let vv = [-&(&lam * &s), &lam * &c];
    let w = [&c - &(&mu * &s), &s + &(&mu * &c)];
    let ring = CoordRing::new(&FDAlgebra::a2(), 2, &[param.to_string()])?;
    let mut subst = vec![zero.clone(); ring.vars().len()];
    for i in 0..2 {
        for j in 0..2 {
            subst[ring.index(0, i, j)] = &u[i] * &vv[j];
            let e1 = &u[i] * &w[j];
            let id = if i == j { one.clone() } else { zero.clone() };
            subst[ring.index(2, i, j)] = &id - &e1;
            subst[ring.index(1, i, j)] = e1;
        }
    }
    subst[ring.num_entries()] = a.clone();

    let mut relations = RelationSet::empty(&vars);
    relations.add_relation(&(&(&(&c * &c) + &(&s * &s)) - &one))?;
    let theta = vec![-&s, c.clone(), zero.clone(), zero.clone(), zero.clone()];
    let mut bivector = Bivector {
        vars: vars.clone(),
        relations,
        coords: vec!["theta".into(), "lambda".into(), "mu".into()],
        derivations: vec![theta, partial_images(&vars, 2), partial_images(&vars, 3)],
        entries: vec![vec![zero; 3]; 3],
    };
    bivector.set(1, 2, &a * &(&lam * &lam));
    Ok(ParamChart {
        name: "rep2-a2".into(),
        ring,
        subst,
        bivector,
    })
}

/// Outcome of comparing a chart bivector with a Poisson table.
#[derive(Clone, Debug)]
pub struct ChartCheck {
    pub pairs_checked: usize,
    /// `(u, v, residual)` for the generator pairs that disagree.
    pub residuals: Vec<(usize, usize, MultiPoly)>,
}

impl ChartCheck {
    pub fn ok(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Exact comparison over every ordered pair of generators.
pub fn chart_consistency(chart: &ParamChart, table: &PoissonTable) -> Result<ChartCheck> {
    if table.ring().vars() != chart.ring.vars() {
        return Err(Error::VariableMismatch {
            left: table.ring().vars().to_vec(),
            right: chart.ring.vars().to_vec(),
        });
    }
    let pi = &chart.bivector;
    let m = chart.ring.num_entries();
    let derivs: Vec<Vec<MultiPoly>> = (0..m)
        .map(|u| {
            (0..pi.len())
                .map(|l| pi.derive(l, &chart.subst[u]))
                .collect()
        })
        .collect();
    let mut residuals = Vec::new();
    for u in 0..m {
        for v in 0..m {
            let lhs = table.get(u, v).substitute(&chart.subst);
            let r = pi
                .relations
                .normal_form(&(&lhs - &pi.contract(&derivs[u], &derivs[v])))?;
            if !r.is_zero() {
                residuals.push((u, v, r));
            }
        }
    }
    Ok(ChartCheck {
        pairs_checked: m * m,
        residuals,
    })
}

/// Trace brackets `{Σ_i (e_g)_ii, (e_h)_pq}` pulled back through the chart,
/// keeping only those that do not vanish.
pub fn chart_trace_residuals(chart: &ParamChart, table: &PoissonTable) -> Result<Vec<MultiPoly>> {
    let mut out = Vec::new();
    for p in trace_brackets(table) {
        let r = chart
            .bivector
            .relations
            .normal_form(&p.substitute(&chart.subst))?;
        if !r.is_zero() {
            out.push(r);
        }
    }
    Ok(out)
}

/// Orthonormal tangent frame `(f1, f2)` on `S²` at `u(θ, φ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FrameChoice {
    /// `f1 = (−sin θ, cos θ, 0)`, `f2 = (−cos θ sin φ, −sin θ sin φ, cos φ)`.
    Standard,
    /// The standard frame rotated by a constant angle.
    Rotated(f64),
}

impl FrameChoice {
    pub fn describe(&self) -> String {
        match self {
            FrameChoice::Standard => {
                "standard: f1 = (-sin t, cos t, 0), f2 = (-cos t sin p, -sin t sin p, cos p)".into()
            }
            FrameChoice::Rotated(psi) => format!("standard frame rotated by {psi} rad"),
        }
    }
}

type V3 = [f64; 3];

fn axpy(a: f64, x: &V3, y: &V3) -> V3 {
    [a * x[0] + y[0], a * x[1] + y[1], a * x[2] + y[2]]
}

fn lin(a: f64, x: &V3, b: f64, y: &V3) -> V3 {
    [
        a * x[0] + b * y[0],
        a * x[1] + b * y[1],
        a * x[2] + b * y[2],
    ]
}

/// The rank-one chart of `Rep₃(𝒜₂)` evaluated in floating point.
///
/// Coordinates `(θ, φ, ca, cb, cg, cd)`: `u` is the point of `S²` with
/// spherical coordinates `(θ, φ)`, `v = ca f1 + cb f2` and
/// `w = u + cg f1 + cd f2`; again `ρ(e0) = u vᵀ`, `ρ(e1) = u wᵀ`. The
/// bivector is `{ca,cg} = A ca²`, `{ca,cd} = {cb,cg} = A ca cb`,
/// `{cb,cd} = A cb²`, stored exactly over `(θ, φ, ca, cb, cg, cd, A)`.
#[derive(Clone, Debug)]
pub struct NumericChart {
    pub ring: CoordRing,
    pub frame: FrameChoice,
    pub bivector: Bivector,
}

pub const REP3_COORDS: [&str; 6] = ["theta", "phi", "ca", "cb", "cg", "cd"];

pub fn register_chart_rep3_a2(frame: FrameChoice, param: &str) -> Result<NumericChart> {
    if REP3_COORDS.contains(&param) {
        return Err(Error::Invalid(format!(
            "parameter name {param} clashes with a chart variable"
        )));
    }
    let vars: Arc<[String]> = REP3_COORDS
        .iter()
        .map(|s| s.to_string())
        .chain([param.to_string()])
        .collect::<Vec<_>>()
        .into();
    let mut bivector = Bivector::zero(&vars, &REP3_COORDS)?;
    let v = |k| MultiPoly::var(&vars, k);
    let (ca, cb, a) = (v(2), v(3), v(6));
    bivector.set(2, 4, &a * &(&ca * &ca));
    bivector.set(2, 5, &a * &(&ca * &cb));
    bivector.set(3, 4, &a * &(&ca * &cb));
    bivector.set(3, 5, &a * &(&cb * &cb));
    let ring = CoordRing::new(&FDAlgebra::a2(), 3, &[param.to_string()])?;
    Ok(NumericChart {
        ring,
        frame,
        bivector,
    })
}

impl NumericChart {
    /// `(u, f1, f2)` and their θ- and φ-derivatives.
    fn frame_at(&self, theta: f64, phi: f64) -> [[V3; 3]; 3] {
        let (st, ct, sp, cp) = (theta.sin(), theta.cos(), phi.sin(), phi.cos());
        let u = [ct * cp, st * cp, sp];
        let u_t = [-st * cp, ct * cp, 0.0];
        let u_p = [-ct * sp, -st * sp, cp];
        let f1 = [-st, ct, 0.0];
        let f1_t = [-ct, -st, 0.0];
        let f1_p = [0.0; 3];
        let f2 = [-ct * sp, -st * sp, cp];
        let f2_t = [st * sp, -ct * sp, 0.0];
        let f2_p = [-ct * cp, -st * cp, -sp];
        let (c, s) = match self.frame {
            FrameChoice::Standard => (1.0, 0.0),
            FrameChoice::Rotated(psi) => (psi.cos(), psi.sin()),
        };
        let rot = |a: &V3, b: &V3| (lin(c, a, s, b), lin(-s, a, c, b));
        let (g1, g2) = rot(&f1, &f2);
        let (g1_t, g2_t) = rot(&f1_t, &f2_t);
        let (g1_p, g2_p) = rot(&f1_p, &f2_p);
        [[u, g1, g2], [u_t, g1_t, g2_t], [u_p, g1_p, g2_p]]
    }

    /// Generator values and their derivatives along the six coordinates.
    pub fn evaluate(&self, x: &[f64; 6]) -> (Vec<f64>, Vec<[f64; 6]>) {
        let [[u, f1, f2], [u_t, f1_t, f2_t], [u_p, f1_p, f2_p]] = self.frame_at(x[0], x[1]);
        let (ca, cb, cg, cd) = (x[2], x[3], x[4], x[5]);
        let vv = lin(ca, &f1, cb, &f2);
        let w = axpy(1.0, &u, &lin(cg, &f1, cd, &f2));
        // derivatives of v and w along the six coordinates
        let zero = [0.0; 3];
        let dv = [
            lin(ca, &f1_t, cb, &f2_t),
            lin(ca, &f1_p, cb, &f2_p),
            f1,
            f2,
            zero,
            zero,
        ];
        let dw = [
            axpy(1.0, &u_t, &lin(cg, &f1_t, cd, &f2_t)),
            axpy(1.0, &u_p, &lin(cg, &f1_p, cd, &f2_p)),
            zero,
            zero,
            f1,
            f2,
        ];
        let du = [u_t, u_p, zero, zero, zero, zero];
        let ring = &self.ring;
        let m = ring.num_entries();
        let mut vals = vec![0.0; m];
        let mut jac = vec![[0.0; 6]; m];
        for i in 0..3 {
            for j in 0..3 {
                let (k0, k1, k2) = (
                    ring.index(0, i, j),
                    ring.index(1, i, j),
                    ring.index(2, i, j),
                );
                vals[k0] = u[i] * vv[j];
                vals[k1] = u[i] * w[j];
                vals[k2] = if i == j { 1.0 } else { 0.0 } - vals[k1];
                for l in 0..6 {
                    jac[k0][l] = du[l][i] * vv[j] + u[i] * dv[l][j];
                    jac[k1][l] = du[l][i] * w[j] + u[i] * dw[l][j];
                    jac[k2][l] = -jac[k1][l];
                }
            }
        }
        (vals, jac)
    }
}

/// Largest residuals seen over the samples of a numeric chart check.
#[derive(Clone, Debug)]
pub struct NumericCheck {
    pub samples: usize,
    pub seed: u64,
    pub max_residual: f64,
    pub max_relation_residual: f64,
    pub tolerance: f64,
}

impl NumericCheck {
    pub fn ok(&self) -> bool {
        self.max_residual <= self.tolerance && self.max_relation_residual <= self.tolerance
    }
}

/// Sampled chart consistency: `θ ∈ [0, 2π)`, `φ ∈ (−π/2, π/2)`, the plane
/// coordinates in `[−2, 2]`, and the bracket parameter set to `param_value`.
pub fn numeric_chart_consistency(
    chart: &NumericChart,
    table: &PoissonTable,
    param_value: f64,
    samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<NumericCheck> {
    if table.ring().vars() != chart.ring.vars() {
        return Err(Error::VariableMismatch {
            left: table.ring().vars().to_vec(),
            right: chart.ring.vars().to_vec(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = chart.ring.num_entries();
    let mut max_residual: f64 = 0.0;
    let mut max_relation: f64 = 0.0;
    for _ in 0..samples {
        let x = [
            rng.random_range(0.0..2.0 * PI),
            rng.random_range(-PI / 2.0 + 1e-3..PI / 2.0 - 1e-3),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        ];
        let (mut vals, jac) = chart.evaluate(&x);
        vals.push(param_value);
        for r in chart.ring.relations() {
            max_relation = max_relation.max(r.evaluate_f64(&vals).abs());
        }
        let mut cpt = x.to_vec();
        cpt.push(param_value);
        let pi = chart.bivector.evaluate_f64(&cpt);
        for u in 0..m {
            for v in 0..m {
                let mut rhs = 0.0;
                for (p, row) in pi.iter().enumerate() {
                    for (q, e) in row.iter().enumerate() {
                        if *e != 0.0 {
                            rhs += e * jac[u][p] * jac[v][q];
                        }
                    }
                }
                let lhs = table.get(u, v).evaluate_f64(&vals);
                max_residual = max_residual.max((lhs - rhs).abs());
            }
        }
    }
    Ok(NumericCheck {
        samples,
        seed,
        max_residual,
        max_relation_residual: max_relation,
        tolerance,
    })
}
