//! Independent oracle: an algebra spanned by matrix units `E_pq`, with
//! products computed from `E_pq E_rs = δ_qr E_ps` rather than from the
//! library's structure constants.

#![allow(dead_code, clippy::needless_range_loop)]

use dpoisson::bracket::DoubleBracket;
use dpoisson::{Rational, Zero};

pub struct Units {
    /// Matrix unit `(p, q)` of each basis element.
    pub units: Vec<(usize, usize)>,
}

/// Coefficients on basis pairs, `t[k * n + l]` for `e_k ⊗ e_l`.
pub type T2 = Vec<Rational>;
/// Coefficients on basis triples.
pub type T3 = Vec<Rational>;
/// An element as basis coordinates.
pub type El = Vec<Rational>;

impl Units {
    /// `e0 = E12, e1 = E11, e2 = E22`.
    pub fn a2() -> Self {
        Units {
            units: vec![(0, 1), (0, 0), (1, 1)],
        }
    }

    pub fn mat(n: usize) -> Self {
        Units {
            units: (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.units.len()
    }

    pub fn basis(&self, k: usize) -> El {
        let mut e = vec![Rational::zero(); self.dim()];
        e[k] = Rational::from(1);
        e
    }

    pub fn unit(&self) -> El {
        self.units
            .iter()
            .map(|&(p, q)| Rational::from((p == q) as i64))
            .collect()
    }

    /// Basis index of `E_ps`, if it lies in the span.
    fn index(&self, p: usize, s: usize) -> Option<usize> {
        self.units.iter().position(|&u| u == (p, s))
    }

    pub fn mul_basis(&self, k: usize, l: usize) -> Option<usize> {
        let ((p, q), (r, s)) = (self.units[k], self.units[l]);
        if q != r {
            return None;
        }
        Some(self.index(p, s).expect("closed under products"))
    }

    pub fn mul(&self, x: &El, y: &El) -> El {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for k in 0..n {
            for l in 0..n {
                if x[k].is_zero() || y[l].is_zero() {
                    continue;
                }
                if let Some(m) = self.mul_basis(k, l) {
                    out[m] += &(x[k].clone() * y[l].clone());
                }
            }
        }
        out
    }

    pub fn zero2(&self) -> T2 {
        vec![Rational::zero(); self.dim().pow(2)]
    }

    pub fn zero3(&self) -> T3 {
        vec![Rational::zero(); self.dim().pow(3)]
    }

    /// `Σ f(e_k, e_l) t_kl` where `f` returns a tensor.
    fn map2(&self, t: &T2, f: impl Fn(usize, usize) -> T2) -> T2 {
        let n = self.dim();
        let mut out = self.zero2();
        for k in 0..n {
            for l in 0..n {
                let c = &t[k * n + l];
                if !c.is_zero() {
                    add_scaled(&mut out, &f(k, l), c);
                }
            }
        }
        out
    }

    pub fn pure(&self, x: &El, y: &El) -> T2 {
        let n = self.dim();
        let mut out = self.zero2();
        for k in 0..n {
            for l in 0..n {
                out[k * n + l] = x[k].clone() * y[l].clone();
            }
        }
        out
    }

    /// Outer action `x (a⊗b) y = xa ⊗ by`.
    pub fn outer(&self, x: &El, t: &T2, y: &El) -> T2 {
        self.map2(t, |k, l| {
            self.pure(&self.mul(x, &self.basis(k)), &self.mul(&self.basis(l), y))
        })
    }

    /// Inner action `x (a⊗b) y = ay ⊗ xb`.
    pub fn inner(&self, x: &El, t: &T2, y: &El) -> T2 {
        self.map2(t, |k, l| {
            self.pure(&self.mul(&self.basis(k), y), &self.mul(x, &self.basis(l)))
        })
    }

    pub fn multiply(&self, t: &T2) -> El {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for k in 0..n {
            for l in 0..n {
                let c = &t[k * n + l];
                if !c.is_zero() {
                    add_scaled(&mut out, &self.mul(&self.basis(k), &self.basis(l)), c);
                }
            }
        }
        out
    }

    /// `{{x, y}}` for `r = Σ a⊗b`: `Σ ax⊗by − yax⊗b − a⊗xby + ya⊗xb`.
    pub fn inner_bracket(&self, r: &T2, x: &El, y: &El) -> T2 {
        let n = self.dim();
        let mut out = self.zero2();
        for k in 0..n {
            for l in 0..n {
                let c = &r[k * n + l];
                if c.is_zero() {
                    continue;
                }
                let (a, b) = (self.basis(k), self.basis(l));
                let ax = self.mul(&a, x);
                let by = self.mul(&b, y);
                let xb = self.mul(x, &b);
                let ya = self.mul(y, &a);
                add_scaled(&mut out, &self.pure(&ax, &by), c);
                add_scaled(&mut out, &self.pure(&self.mul(y, &ax), &b), &-c.clone());
                add_scaled(&mut out, &self.pure(&a, &self.mul(&xb, y)), &-c.clone());
                add_scaled(&mut out, &self.pure(&ya, &xb), c);
            }
        }
        out
    }
}

pub fn add_scaled(acc: &mut [Rational], t: &[Rational], c: &Rational) {
    for (a, b) in acc.iter_mut().zip(t) {
        if !b.is_zero() {
            *a += &(b.clone() * c.clone());
        }
    }
}

/// A bracket read off library coefficients, evaluated by the oracle.
pub struct Bracket<'a> {
    pub alg: &'a Units,
    pub pairs: Vec<T2>,
}

impl<'a> Bracket<'a> {
    pub fn new(alg: &'a Units, db: &DoubleBracket<Rational>) -> Self {
        let n = alg.dim();
        let pairs = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| db.pair(i, j).coords)
            .collect();
        Bracket { alg, pairs }
    }

    pub fn eval(&self, x: &El, y: &El) -> T2 {
        let n = self.alg.dim();
        let mut out = self.alg.zero2();
        for i in 0..n {
            for j in 0..n {
                if x[i].is_zero() || y[j].is_zero() {
                    continue;
                }
                add_scaled(
                    &mut out,
                    &self.pairs[i * n + j],
                    &(x[i].clone() * y[j].clone()),
                );
            }
        }
        out
    }

    pub fn skew_holds(&self) -> bool {
        let n = self.alg.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let t = &self.pairs[i * n + j];
                let s = &self.pairs[j * n + i];
                (0..n).all(|a| {
                    (0..n).all(|b| (t[a * n + b].clone() + s[b * n + a].clone()).is_zero())
                })
            })
        })
    }

    /// `{{x, yz}} = y{{x, z}} + {{x, y}}z` for the outer structure.
    pub fn leibniz_second_holds(&self) -> bool {
        let (a, n) = (self.alg, self.alg.dim());
        let one = a.unit();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (ex, ey, ez) = (a.basis(x), a.basis(y), a.basis(z));
                    let lhs = self.eval(&ex, &a.mul(&ey, &ez));
                    let mut rhs = a.outer(&ey, &self.eval(&ex, &ez), &one);
                    add_scaled(
                        &mut rhs,
                        &a.outer(&one, &self.eval(&ex, &ey), &ez),
                        &Rational::from(1),
                    );
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `{{xy, z}} = x{{y, z}} + {{x, z}}y` for the inner structure.
    pub fn leibniz_first_holds(&self) -> bool {
        let (a, n) = (self.alg, self.alg.dim());
        let one = a.unit();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (ex, ey, ez) = (a.basis(x), a.basis(y), a.basis(z));
                    let lhs = self.eval(&a.mul(&ex, &ey), &ez);
                    let mut rhs = a.inner(&ex, &self.eval(&ey, &ez), &one);
                    add_scaled(
                        &mut rhs,
                        &a.inner(&one, &self.eval(&ex, &ez), &ey),
                        &Rational::from(1),
                    );
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `{{a, b'}} ⊗ b''` summed over `{{b, c}} = b' ⊗ b''`.
    fn left(&self, x: usize, y: usize, z: usize) -> T3 {
        let (a, n) = (self.alg, self.alg.dim());
        let bc = self.eval(&a.basis(y), &a.basis(z));
        let mut out = a.zero3();
        for k in 0..n {
            for l in 0..n {
                let c = &bc[k * n + l];
                if c.is_zero() {
                    continue;
                }
                let ab = self.eval(&a.basis(x), &a.basis(k));
                for (uv, d) in ab.iter().enumerate() {
                    if !d.is_zero() {
                        out[uv * n + l] += &(c.clone() * d.clone());
                    }
                }
            }
        }
        out
    }

    /// `τ(u⊗v⊗w) = w⊗u⊗v`.
    fn tau(&self, t: &T3) -> T3 {
        let n = self.alg.dim();
        let mut out = self.alg.zero3();
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    out[(w * n + u) * n + v] = t[(u * n + v) * n + w].clone();
                }
            }
        }
        out
    }

    /// `{{a,b,c}}_L + τ{{b,c,a}}_L + τ²{{c,a,b}}_L` on basis triples.
    pub fn jacobi_holds(&self) -> bool {
        let n = self.alg.dim();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut j = self.left(x, y, z);
                    add_scaled(&mut j, &self.tau(&self.left(y, z, x)), &Rational::from(1));
                    add_scaled(
                        &mut j,
                        &self.tau(&self.tau(&self.left(z, x, y))),
                        &Rational::from(1),
                    );
                    if j.iter().any(|c| !c.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `{x, y} = m({{x, y}})` on elements.
    pub fn single(&self, x: &El, y: &El) -> El {
        self.alg.multiply(&self.eval(x, y))
    }

    /// `{x, y} + {y, x}` lies in `[A, A]`, as decided by `commutator`.
    pub fn h0_skew_holds_mod_commutators(&self, commutator: impl Fn(&[Rational]) -> bool) -> bool {
        let (a, n) = (self.alg, self.alg.dim());
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut s = self.single(&a.basis(i), &a.basis(j));
                add_scaled(
                    &mut s,
                    &self.single(&a.basis(j), &a.basis(i)),
                    &Rational::from(1),
                );
                commutator(&s)
            })
        })
    }

    /// `{a, {b, c}} − {b, {a, c}} − {{a, b}, c} = 0` exactly.
    pub fn h0_jacobi_holds(&self) -> bool {
        let (a, n) = (self.alg, self.alg.dim());
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (ex, ey, ez) = (a.basis(x), a.basis(y), a.basis(z));
                    let mut r = self.single(&ex, &self.single(&ey, &ez));
                    add_scaled(
                        &mut r,
                        &self.single(&ey, &self.single(&ex, &ez)),
                        &Rational::from(-1),
                    );
                    add_scaled(
                        &mut r,
                        &self.single(&self.single(&ex, &ey), &ez),
                        &Rational::from(-1),
                    );
                    if r.iter().any(|c| !c.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
