//! Inner double brackets `{{x, y}}_r = [[r, x]_in, y]_out` for `r ∈ Λ²A`,
//! the associative Yang-Baxter obstruction and related checks.
//!
//! Commutators are taken as `[m, x]_in = m·x − x·m` in the inner structure
//! and `[m, y]_out = m·y − y·m` in the outer one. For `r = U⊗V` this expands
//! to `UX⊗VY − YUX⊗V − U⊗XVY + YU⊗XV`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{AlgElement, FDAlgebra, Tensor2, Tensor3};
use crate::bracket::DoubleBracket;
use crate::coeff::{Coeff, RingCoeff};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::rational::Rational;

/// An antisymmetric element `r = Σ r[a][b] e_a⊗e_b` of `A⊗A`.
#[derive(Clone, Debug, PartialEq)]
pub struct WedgeElement<C = Rational> {
    tensor: Tensor2<C>,
}

impl<C: Coeff> WedgeElement<C> {
    pub fn zero(n: usize) -> Self {
        WedgeElement {
            tensor: Tensor2::zero(n),
        }
    }

    /// Accepts `t` only if `t = −t°`.
    pub fn from_tensor(t: Tensor2<C>) -> Result<Self> {
        if t.add(&t.flip()).is_zero() {
            Ok(WedgeElement { tensor: t })
        } else {
            Err(Error::Invalid("tensor is not antisymmetric".into()))
        }
    }

    pub fn tensor(&self) -> &Tensor2<C> {
        &self.tensor
    }

    pub fn dim(&self) -> usize {
        self.tensor.n
    }

    pub fn add(&self, other: &Self) -> Self {
        WedgeElement {
            tensor: self.tensor.add(&other.tensor),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        WedgeElement {
            tensor: self.tensor.scale(q),
        }
    }
}

impl WedgeElement<Rational> {
    /// `x∧y = x⊗y − y⊗x`.
    pub fn wedge(x: &AlgElement<Rational>, y: &AlgElement<Rational>) -> Self {
        WedgeElement {
            tensor: Tensor2::pure(x, y).sub(&Tensor2::pure(y, x)),
        }
    }

    /// `Σ q (x∧y)` over the given terms.
    pub fn from_terms(
        n: usize,
        terms: &[(AlgElement<Rational>, AlgElement<Rational>, Rational)],
    ) -> Self {
        terms.iter().fold(WedgeElement::zero(n), |acc, (x, y, q)| {
            acc.add(&WedgeElement::wedge(x, y).scale(q))
        })
    }
}

/// `[m, x]_in = m·_in x − x·_in m`.
fn inner_commutator<C: Coeff>(
    alg: &FDAlgebra,
    m: &Tensor2<C>,
    x: &AlgElement<Rational>,
) -> Tensor2<C> {
    alg.inner_right(m, x).sub(&alg.inner_left(x, m))
}

/// `[m, y]_out = m·_out y − y·_out m`.
fn outer_commutator<C: Coeff>(
    alg: &FDAlgebra,
    m: &Tensor2<C>,
    y: &AlgElement<Rational>,
) -> Tensor2<C> {
    alg.outer_right(m, y).sub(&alg.outer_left(y, m))
}

/// The double bracket `{{x, y}}_r = [[r, x]_in, y]_out`.
pub fn inner_bracket<C: Coeff>(alg: &FDAlgebra, r: &WedgeElement<C>) -> DoubleBracket<C> {
    let n = alg.dim();
    let mut db = DoubleBracket::zero(n);
    for i in 0..n {
        let t = inner_commutator(alg, &r.tensor, &alg.basis_element(i));
        for j in 0..n {
            db.set_pair(i, j, &outer_commutator(alg, &t, &alg.basis_element(j)));
        }
    }
    db
}

/// `J(r) = r13 r12 + r23 r13 − r12 r23` with leg-wise products in `A⊗A⊗A`.
pub fn aybe_obstruction<C: RingCoeff>(alg: &FDAlgebra, r: &WedgeElement<C>) -> Tensor3<C> {
    let r12 = alg.embed_legs(&r.tensor, 0, 1);
    let r13 = alg.embed_legs(&r.tensor, 0, 2);
    let r23 = alg.embed_legs(&r.tensor, 1, 2);
    alg.tensor3_product(&r13, &r12)
        .add(&alg.tensor3_product(&r23, &r13))
        .sub(&alg.tensor3_product(&r12, &r23))
}

/// `[[[J, x]_1, y]_2, z]_3`.
pub fn triple_commutator<C: Coeff>(
    alg: &FDAlgebra,
    j: &Tensor3<C>,
    x: &AlgElement<Rational>,
    y: &AlgElement<Rational>,
    z: &AlgElement<Rational>,
) -> Tensor3<C> {
    let t = alg.tensor3_commutator(j, x, 1).expect("valid leg");
    let t = alg.tensor3_commutator(&t, y, 2).expect("valid leg");
    alg.tensor3_commutator(&t, z, 3).expect("valid leg")
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeakJacobi<C> {
    pub holds: bool,
    /// `(x, y, z)` basis indices with their nonzero triple commutator.
    pub residuals: Vec<([usize; 3], Tensor3<C>)>,
}

/// Whether `[[[J(r), x]_1, y]_2, z]_3 = 0` for all basis triples.
pub fn weak_jacobi_condition<C: RingCoeff>(alg: &FDAlgebra, r: &WedgeElement<C>) -> WeakJacobi<C> {
    let j = aybe_obstruction(alg, r);
    let n = alg.dim();
    let mut residuals = Vec::new();
    if !j.is_zero() {
        for x in 0..n {
            let tx = alg
                .tensor3_commutator(&j, &alg.basis_element(x), 1)
                .expect("leg");
            for y in 0..n {
                let ty = alg
                    .tensor3_commutator(&tx, &alg.basis_element(y), 2)
                    .expect("leg");
                for z in 0..n {
                    let tz = alg
                        .tensor3_commutator(&ty, &alg.basis_element(z), 3)
                        .expect("leg");
                    if !tz.is_zero() {
                        residuals.push(([x, y, z], tz));
                    }
                }
            }
        }
    }
    WeakJacobi {
        holds: residuals.is_empty(),
        residuals,
    }
}

/// The wedges `b_p∧b_q` (`p < q`) of the unit-adapted basis, labelled like `1∧e0`.
pub fn adapted_wedge_basis(alg: &FDAlgebra) -> Vec<(String, WedgeElement)> {
    let b = alg.unit_adapted_basis();
    let mut out = Vec::new();
    for p in 0..b.len() {
        for q in p + 1..b.len() {
            out.push((
                format!("{}∧{}", b[p].0, b[q].0),
                WedgeElement::wedge(&b[p].1, &b[q].1),
            ));
        }
    }
    out
}

/// Polynomial system for `J(r) = 0` on a family of wedges.
#[derive(Clone, Debug, PartialEq)]
pub struct AybeSystem {
    /// Coordinate names, one per generator.
    pub params: Vec<String>,
    pub generators: Vec<String>,
    pub equations: Vec<MultiPoly>,
    /// Coefficients of the weak triple-commutator condition, when requested.
    pub weak_equations: Option<Vec<MultiPoly>>,
}

/// Distinct nonzero polynomials up to scalar multiples, made monic and sorted.
pub fn dedup_proportional(polys: impl IntoIterator<Item = MultiPoly>) -> Vec<MultiPoly> {
    let mut seen: Vec<MultiPoly> = Vec::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let m = p.monic();
        if !seen.contains(&m) {
            seen.push(m);
        }
    }
    seen.sort_by(|a, b| {
        b.leading_term()
            .map(|t| t.0.clone())
            .cmp(&a.leading_term().map(|t| t.0.clone()))
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    seen
}

pub fn param_names(count: usize) -> Vec<String> {
    if count <= 26 {
        (0..count)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (0..count).map(|i| format!("r{i}")).collect()
    }
}

/// Emit the system `J(r) = 0` for `r = Σ p_k g_k` with symbolic coordinates
/// `p_k` over `generators` (default: [`adapted_wedge_basis`]).
pub fn aybe_solve(
    alg: &FDAlgebra,
    generators: Option<Vec<(String, WedgeElement)>>,
    weak: bool,
) -> AybeSystem {
    let gens = generators.unwrap_or_else(|| adapted_wedge_basis(alg));
    let params = param_names(gens.len());
    let vars: Arc<[String]> = params.clone().into();
    let plain: Vec<WedgeElement> = gens.iter().map(|(_, g)| g.clone()).collect();
    let r = if plain.is_empty() {
        WedgeElement::<Rational>::zero(alg.dim()).to_poly(&vars)
    } else {
        symbolic_wedge(&vars, &plain)
    };
    let j = aybe_obstruction(alg, &r);
    let equations = dedup_proportional(j.coords.iter().cloned());
    let weak_equations = weak.then(|| {
        let w = weak_jacobi_condition(alg, &r);
        dedup_proportional(w.residuals.into_iter().flat_map(|(_, t)| t.coords))
    });
    AybeSystem {
        params,
        generators: gens.into_iter().map(|(l, _)| l).collect(),
        equations,
        weak_equations,
    }
}

/// One irreducible-looking piece of a solution set: each unknown is given as
/// a polynomial in the unknowns left free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub values: Vec<MultiPoly>,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Case-split solver for small systems: splits on monomial factors and
/// eliminates unknowns occurring linearly with a constant coefficient.
/// Returns `None` for more than `max_unknowns` unknowns or when a branch
/// gets stuck.
pub fn solve_small(
    vars: &Arc<[String]>,
    eqs: &[MultiPoly],
    max_unknowns: usize,
) -> Option<Vec<Component>> {
    if vars.len() > max_unknowns {
        return None;
    }
    let ident: Vec<MultiPoly> = (0..vars.len()).map(|i| MultiPoly::var(vars, i)).collect();
    let mut out = Vec::new();
    split(vars, eqs.to_vec(), ident, &mut out, 0)?;
    let mut uniq: Vec<Component> = Vec::new();
    for c in out {
        if !uniq.contains(&c) {
            uniq.push(c);
        }
    }
    let keep: Vec<bool> = (0..uniq.len())
        .map(|i| {
            !(0..uniq.len())
                .any(|j| j != i && uniq[j] != uniq[i] && uniq[j].contains(vars, &uniq[i]))
        })
        .collect();
    Some(
        uniq.into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(c, _)| c)
            .collect(),
    )
}

impl Component {
    /// Whether every point of `other` lies on `self`: substituting `other`'s
    /// values into the equations `x_k = values[k]` of the non-free unknowns
    /// gives zero.
    fn contains(&self, vars: &Arc<[String]>, other: &Component) -> bool {
        self.values.iter().enumerate().all(|(k, v)| {
            let x = MultiPoly::var(vars, k);
            if *v == x {
                return true;
            }
            let eq = &x - v;
            eq.substitute(&other.values).is_zero()
        })
    }
}

fn split(
    vars: &Arc<[String]>,
    eqs: Vec<MultiPoly>,
    values: Vec<MultiPoly>,
    out: &mut Vec<Component>,
    depth: usize,
) -> Option<()> {
    if depth > 64 {
        return None;
    }
    let eqs: Vec<MultiPoly> = eqs.into_iter().filter(|e| !e.is_zero()).collect();
    if eqs.iter().any(|e| e.is_constant()) {
        return Some(());
    }
    if eqs.is_empty() {
        out.push(Component { values });
        return Some(());
    }
    let one = Monomial::one(vars.len());
    if let Some(pos) = eqs.iter().position(|e| e.monomial_content() != one) {
        let content = eqs[pos].monomial_content();
        for (i, &e) in content.0.iter().enumerate() {
            if e > 0 {
                let sub = assign(vars, i, &MultiPoly::zero_in(vars));
                branch(vars, &eqs, &values, &sub, out, depth)?;
            }
        }
        let mut rest = eqs.clone();
        rest[pos] = eqs[pos].div_monomial(&content);
        return split(vars, rest, values, out, depth + 1);
    }
    for e in &eqs {
        for i in e.support() {
            if let Some((c, rest)) = e.linear_in(i) {
                let val = rest.scale(&-c.recip().ok()?);
                let sub = assign(vars, i, &val);
                return branch(vars, &eqs, &values, &sub, out, depth);
            }
        }
    }
    None
}

fn assign(vars: &Arc<[String]>, i: usize, val: &MultiPoly) -> Vec<MultiPoly> {
    (0..vars.len())
        .map(|k| {
            if k == i {
                val.clone()
            } else {
                MultiPoly::var(vars, k)
            }
        })
        .collect()
}

fn branch(
    vars: &Arc<[String]>,
    eqs: &[MultiPoly],
    values: &[MultiPoly],
    sub: &[MultiPoly],
    out: &mut Vec<Component>,
    depth: usize,
) -> Option<()> {
    let eqs = eqs
        .iter()
        .map(|e| e.substitute(sub).embed(vars).ok())
        .collect::<Option<Vec<_>>>()?;
    let values = values
        .iter()
        .map(|v| v.substitute(sub).embed(vars).ok())
        .collect::<Option<Vec<_>>>()?;
    split(vars, eqs, values, out, depth + 1)
}

/// Whether `m∘{{e_i, e_j}}_r = 0` for every basis pair. On a representation
/// `Σ_i {x_ii, y_pq}` is the `(p, q)` entry of the image of `m∘{{x, y}}`, so
/// this makes traces Casimir functions.
pub fn trace_casimir_check(alg: &FDAlgebra, r: &WedgeElement) -> bool {
    let db = inner_bracket(alg, r);
    let n = alg.dim();
    (0..n).all(|i| (0..n).all(|j| alg.multiply(&db.pair(i, j)).is_zero()))
}

/// Words in free noncommuting letters.
pub type Word = Vec<String>;

/// A formal sum of `word ⊗ word` with integer coefficients.
pub type FreeTensor = BTreeMap<(Word, Word), i64>;

fn word(s: &str) -> Word {
    s.split('·')
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

fn cat(a: &Word, b: &Word) -> Word {
    a.iter().chain(b).cloned().collect()
}

fn add_term(t: &mut FreeTensor, key: (Word, Word), c: i64) {
    let e = t.entry(key.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        t.remove(&key);
    }
}

/// `{{x, y}}_r` in the free algebra on the letters of `r`, `x` and `y`.
pub fn free_inner_bracket(r: &FreeTensor, x: &str, y: &str) -> FreeTensor {
    let (x, y) = (word(x), word(y));
    let mut inner = FreeTensor::new();
    for ((a, b), &c) in r {
        add_term(&mut inner, (cat(a, &x), b.clone()), c);
        add_term(&mut inner, (a.clone(), cat(&x, b)), -c);
    }
    let mut out = FreeTensor::new();
    for ((a, b), &c) in &inner {
        add_term(&mut out, (a.clone(), cat(b, &y)), c);
        add_term(&mut out, (cat(&y, a), b.clone()), -c);
    }
    out
}

/// The generic `r = A∧B` as a free tensor.
pub fn free_wedge(a: &str, b: &str) -> FreeTensor {
    let mut r = FreeTensor::new();
    add_term(&mut r, (word(a), word(b)), 1);
    add_term(&mut r, (word(b), word(a)), -1);
    r
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceCasimirExpansion {
    /// Terms `(X)_{pi}(Y)_{iq}` of `Σ_i {x_ii, y_pq}` before contraction.
    pub expansion: Vec<(i64, String, String)>,
    /// Contracted words `(XY)_{pq}` with their net coefficients.
    pub contracted: Vec<(i64, String)>,
    pub vanishes: bool,
}

/// Expand `Σ_i {x_ii, y_pq} = Σ_i {{x,y}}′_{pi} {{x,y}}″_{iq}` for an inner
/// bracket in free letters and contract matrix indices.
pub fn trace_casimir_symbolic(r: &FreeTensor) -> TraceCasimirExpansion {
    let t = free_inner_bracket(r, "x", "y");
    let show = |w: &Word| {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.concat()
        }
    };
    let expansion = t.iter().map(|((a, b), &c)| (c, show(a), show(b))).collect();
    let mut contracted: BTreeMap<Word, i64> = BTreeMap::new();
    for ((a, b), &c) in &t {
        *contracted.entry(cat(a, b)).or_insert(0) += c;
    }
    let contracted: Vec<(i64, String)> = contracted
        .iter()
        .filter(|(_, &c)| c != 0)
        .map(|(w, &c)| (c, show(w)))
        .collect();
    TraceCasimirExpansion {
        vanishes: contracted.is_empty(),
        expansion,
        contracted,
    }
}

impl WedgeElement<Rational> {
    pub fn to_poly(&self, vars: &Arc<[String]>) -> WedgeElement<MultiPoly> {
        WedgeElement {
            tensor: self.tensor.map(|q| MultiPoly::constant_in(vars, q.clone())),
        }
    }
}

/// `Σ p_k g_k` with `p_k` the `k`-th variable of `vars`.
pub fn symbolic_wedge(vars: &Arc<[String]>, gens: &[WedgeElement]) -> WedgeElement<MultiPoly> {
    let n = gens.first().map_or(0, |g| g.dim());
    let mut t = Tensor2 {
        n,
        coords: vec![MultiPoly::zero_in(vars); n * n],
    };
    for (k, g) in gens.iter().enumerate() {
        let v = MultiPoly::var(vars, k);
        for (idx, q) in g.tensor.support() {
            t.coords[idx] += &v.scale(q);
        }
    }
    WedgeElement { tensor: t }
}
