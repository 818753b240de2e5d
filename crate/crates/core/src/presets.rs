//! Named algebras and the bracket families on 𝒜₂ used throughout the tests
//! and the command line.

use std::sync::Arc;

use crate::algebra::{AlgElement, FDAlgebra, Tensor2};
use crate::bracket::DoubleBracket;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::Rational;
use num_traits::Zero;

/// Resolve a preset name: `a2`, `matN`, or a `+`-separated direct sum of
/// those.
pub fn algebra(name: &str) -> Result<FDAlgebra> {
    let parts: Vec<&str> = name.split('+').map(str::trim).collect();
    if parts.len() > 1 {
        let algs = parts
            .iter()
            .map(|p| single(p))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&FDAlgebra> = algs.iter().collect();
        return FDAlgebra::direct_sum(&refs);
    }
    single(name.trim())
}

fn single(name: &str) -> Result<FDAlgebra> {
    if name == "a2" {
        return Ok(FDAlgebra::a2());
    }
    match name
        .strip_prefix("mat")
        .and_then(|s| s.parse::<usize>().ok())
    {
        Some(n) if n > 0 => FDAlgebra::matrix(n),
        _ => Err(Error::UnknownPreset(name.into())),
    }
}

/// Whether `name` looks like a preset rather than a file path.
pub fn is_preset(name: &str) -> bool {
    name.split('+').all(|p| {
        let p = p.trim();
        p == "a2"
            || p.strip_prefix("mat")
                .is_some_and(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
    })
}

/// `Σ c·(x⊗y)` over the given terms.
fn tensor(
    n: usize,
    vars: &Arc<[String]>,
    terms: &[(MultiPoly, &AlgElement<Rational>, &AlgElement<Rational>)],
) -> Tensor2<MultiPoly> {
    let mut out = Tensor2 {
        n,
        coords: vec![MultiPoly::zero_in(vars); n * n],
    };
    for (c, x, y) in terms {
        for (k, q) in Tensor2::pure(x, y).support() {
            *out.at(k / n, k % n) += &c.scale(q);
        }
    }
    out
}

/// Fill in a bracket on 𝒜₂ from its values on `(e_i, e_j)`, `i, j ∈ {0, 1}`,
/// using `e₂ = 1 − e₁` and the vanishing of brackets with the unit.
fn complete_a2(
    vars: &Arc<[String]>,
    pairs: [[Tensor2<MultiPoly>; 2]; 2],
) -> DoubleBracket<MultiPoly> {
    let mut db = DoubleBracket::from_coeffs(3, vec![MultiPoly::zero_in(vars); 81]).expect("size");
    let idx = |k: usize| if k == 2 { (1, true) } else { (k, false) };
    for i in 0..3 {
        for j in 0..3 {
            let ((pi, si), (pj, sj)) = (idx(i), idx(j));
            let t = &pairs[pi][pj];
            db.set_pair(i, j, &if si != sj { t.neg() } else { t.clone() });
        }
    }
    db
}

fn a2_elements() -> (
    AlgElement<Rational>,
    AlgElement<Rational>,
    AlgElement<Rational>,
) {
    let a = FDAlgebra::a2();
    (a.unit(), a.basis_element(0), a.basis_element(1))
}

/// The double Poisson brackets on 𝒜₂ with parameters `alpha, beta, gamma`
/// (Poisson exactly when `gamma² + alpha·beta = 0`):
///
/// ```text
/// {{e0,e1}} = alpha e0⊗e0 + beta (1⊗e1 − e1⊗e1) + gamma (e0⊗1 − e0⊗e1 − e1⊗e0)
/// {{e0,e0}} = beta (1⊗e0 − e0⊗1)
/// {{e1,e1}} = gamma (e1⊗1 − 1⊗e1)
/// ```
pub fn a2_double_family() -> DoubleBracket<MultiPoly> {
    let vars: Arc<[String]> = vec!["alpha".into(), "beta".into(), "gamma".into()].into();
    let (one, e0, e1) = a2_elements();
    let v = |k| MultiPoly::var(&vars, k);
    let (al, be, ga) = (v(0), v(1), v(2));
    let p01 = tensor(
        3,
        &vars,
        &[
            (al, &e0, &e0),
            (be.clone(), &one, &e1),
            (-&be, &e1, &e1),
            (ga.clone(), &e0, &one),
            (-&ga, &e0, &e1),
            (-&ga, &e1, &e0),
        ],
    );
    let p00 = tensor(3, &vars, &[(be.clone(), &one, &e0), (-&be, &e0, &one)]);
    let p11 = tensor(3, &vars, &[(ga.clone(), &e1, &one), (-&ga, &one, &e1)]);
    let p10 = p01.flip().neg();
    complete_a2(&vars, [[p00, p01], [p10, p11]])
}

/// The one-parameter slice `beta = gamma = 0`: `{{e0,e1}} = A e0⊗e0`.
pub fn alpha_family(name: &str) -> DoubleBracket<MultiPoly> {
    let vars: Arc<[String]> = vec![name.to_string()].into();
    let (_, e0, _) = a2_elements();
    let z = || Tensor2 {
        n: 3,
        coords: vec![MultiPoly::zero_in(&vars); 9],
    };
    let p01 = tensor(3, &vars, &[(MultiPoly::var(&vars, 0), &e0, &e0)]);
    let p10 = p01.flip().neg();
    complete_a2(&vars, [[z(), p01], [p10, z()]])
}

/// Coefficients `C[i][j][a][b]` that serve as the parameters `alpha, beta,
/// gamma` of [`a2_double_family`].
pub const A2_DOUBLE_COORDS: [(usize, usize, usize, usize); 3] =
    [(0, 1, 0, 0), (0, 1, 2, 1), (0, 1, 0, 2)];

pub const A2_DOUBLE_PARAMS: [&str; 3] = ["alpha", "beta", "gamma"];

/// Coefficients that serve as the parameters of [`mdpb_family`], in the
/// order of [`MDPB_PARAMS`].
pub const MDPB_COORDS: [(usize, usize, usize, usize); 7] = [
    (0, 0, 0, 0),
    (0, 0, 2, 0),
    (0, 0, 0, 2),
    (0, 1, 0, 0),
    (1, 0, 0, 0),
    (0, 1, 0, 2),
    (1, 1, 0, 0),
];

/// Parameter names of [`mdpb_family`], in order.
pub const MDPB_PARAMS: [&str; 7] = ["alpha", "beta", "gamma", "delta", "iota", "kappa", "eta"];

/// The seven-parameter family of modified double Poisson brackets on 𝒜₂:
///
/// ```text
/// {{e0,e0}} = alpha e0⊗e0 + beta 1⊗e0 + gamma e0⊗1 − (beta+gamma)(e0⊗e1 + e1⊗e0)
/// {{e0,e1}} = delta e0⊗e0 + kappa (e0⊗1 − e0⊗e1 − e1⊗e0) + beta (1⊗e1 − e1⊗e1)
/// {{e1,e0}} = iota e0⊗e0 + gamma (e1⊗1 − e1⊗e1)
/// {{e1,e1}} = eta e0⊗e0 + kappa (e1⊗1 − e1⊗e1)
/// ```
pub fn mdpb_family() -> DoubleBracket<MultiPoly> {
    let vars: Arc<[String]> = MDPB_PARAMS
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .into();
    let (one, e0, e1) = a2_elements();
    let v = |k| MultiPoly::var(&vars, k);
    let (al, be, ga, de, io, ka, et) = (v(0), v(1), v(2), v(3), v(4), v(5), v(6));
    let bg = &be + &ga;
    let p00 = tensor(
        3,
        &vars,
        &[
            (al, &e0, &e0),
            (be.clone(), &one, &e0),
            (ga.clone(), &e0, &one),
            (-&bg, &e0, &e1),
            (-&bg, &e1, &e0),
        ],
    );
    let p01 = tensor(
        3,
        &vars,
        &[
            (de, &e0, &e0),
            (ka.clone(), &e0, &one),
            (-&ka, &e0, &e1),
            (-&ka, &e1, &e0),
            (be.clone(), &one, &e1),
            (-&be, &e1, &e1),
        ],
    );
    let p10 = tensor(
        3,
        &vars,
        &[(io, &e0, &e0), (ga.clone(), &e1, &one), (-&ga, &e1, &e1)],
    );
    let p11 = tensor(
        3,
        &vars,
        &[(et, &e0, &e0), (ka.clone(), &e1, &one), (-&ka, &e1, &e1)],
    );
    complete_a2(&vars, [[p00, p01], [p10, p11]])
}

/// The solution of both Leibniz rules on 𝒜₂ that lies outside
/// [`mdpb_family`]: the leg-swapped partner of the `kappa` term,
///
/// ```text
/// {{e1,e0}} = 1⊗e0 − e0⊗e1 − e1⊗e0,   {{e1,e1}} = 1⊗e1 − e1⊗e1.
/// ```
pub fn mdpb_extra_direction() -> DoubleBracket<Rational> {
    let vars: Arc<[String]> = Arc::from(Vec::<String>::new());
    let (one, e0, e1) = a2_elements();
    let c = |q: i64| MultiPoly::constant(Rational::from(q));
    let z = || Tensor2 {
        n: 3,
        coords: vec![MultiPoly::zero_in(&vars); 9],
    };
    let p10 = tensor(
        3,
        &vars,
        &[(c(1), &one, &e0), (c(-1), &e0, &e1), (c(-1), &e1, &e0)],
    );
    let p11 = tensor(3, &vars, &[(c(1), &one, &e1), (c(-1), &e1, &e1)]);
    complete_a2(&vars, [[z(), z()], [p10, p11]])
        .map(|p| p.constant_value().unwrap_or_else(Rational::zero))
}
