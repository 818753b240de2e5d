//! Exact linear algebra over the rationals.
//!
//! [`QMatrix`] is a small dense matrix whose elimination runs fraction-free
//! (Bareiss) on integer rows. [`SparseEchelon`] is an incremental sparse
//! echelon form for the large, very sparse systems produced by the bracket
//! solver; it keeps every row primitive so integers stay small.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Clear denominators of a rational row, giving an integer row with the same span.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

/// Row echelon form by Bareiss elimination: returns the integer rows and the
/// pivot column of each nonzero row.
fn bareiss(mut m: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        // entries left of the pivot in later rows are zero; rows above keep
        // their values, which is all back-substitution needs
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(QMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect();
        QMatrix::from_rows(rows, cols).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let m = (0..self.rows).map(|i| integer_row(self.row(i))).collect();
        bareiss(m, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let (ech, pivots) = self.echelon();
        let mut rows: Vec<Vec<Rational>> = ech
            .iter()
            .zip(&pivots)
            .map(|(r, &p)| {
                let lead = Rational::from(r[p].clone());
                r.iter()
                    .map(|x| &Rational::from(x.clone()) / &lead)
                    .collect()
            })
            .collect();
        for k in (0..rows.len()).rev() {
            let p = pivots[k];
            let (above, rest) = rows.split_at_mut(k);
            let pivot_row = &rest[0];
            for r in above.iter_mut() {
                let f = r[p].clone();
                if f.is_zero() {
                    continue;
                }
                for j in p..self.cols {
                    if !pivot_row[j].is_zero() {
                        let d = &f * &pivot_row[j];
                        r[j] -= &d;
                    }
                }
            }
        }
        let n = rows.len();
        let m = QMatrix::from_rows(rows, self.cols).expect("rectangular");
        debug_assert_eq!(m.rows, n);
        (m, pivots)
    }

    /// Basis of the right kernel. Each vector has a 1 in one free column and
    /// 0 in the other free columns, ordered by that column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (ech, pivots) = self.echelon();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Rational::zero(); self.cols];
            x[f] = Rational::one();
            for k in (0..pivots.len()).rev() {
                let p = pivots[k];
                let row = &ech[k];
                let mut s = Rational::zero();
                for j in p + 1..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += &(&Rational::from(row[j].clone()) * &x[j]);
                    }
                }
                x[p] = -(&s / &Rational::from(row[p].clone()));
            }
            basis.push(x);
        }
        basis
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Invalid("matrix is singular".into()));
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

type SparseRow = BTreeMap<usize, BigInt>;

fn make_primitive(row: &mut SparseRow) {
    let g = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
    let flip = row.values().next().is_some_and(|v| v.is_negative());
    if g.is_zero() {
        return;
    }
    for v in row.values_mut() {
        *v /= &g;
        if flip {
            *v = -&*v;
        }
    }
}

/// `row <- a*row - b*pivot` where `a = pivot[col]` and `b = row[col]`.
fn eliminate(row: &mut SparseRow, pivot: &SparseRow, col: usize) {
    let a = pivot[&col].clone();
    let b = row[&col].clone();
    let g = a.gcd(&b);
    let (a, b) = (&a / &g, &b / &g);
    if !a.is_one() {
        for v in row.values_mut() {
            *v *= &a;
        }
    }
    for (&j, pv) in pivot {
        let e = row.entry(j).or_insert_with(BigInt::zero);
        *e -= &b * pv;
        if e.is_zero() {
            row.remove(&j);
        }
    }
    make_primitive(row);
}

/// Incremental sparse row echelon form over the integers.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(cols: usize) -> Self {
        SparseEchelon {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Add a row given as `(column, coefficient)` pairs; returns whether the
    /// rank grew.
    pub fn add_row<'a>(
        &mut self,
        entries: impl IntoIterator<Item = (usize, &'a Rational)>,
    ) -> bool {
        let entries: Vec<(usize, &Rational)> =
            entries.into_iter().filter(|(_, q)| !q.is_zero()).collect();
        if entries.is_empty() {
            return false;
        }
        let l = entries
            .iter()
            .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let mut row = SparseRow::new();
        for (c, q) in entries {
            assert!(c < self.cols, "column {c} out of range");
            let v = q.numer() * (&l / q.denom());
            let e = row.entry(c).or_insert_with(BigInt::zero);
            *e += v;
            if e.is_zero() {
                row.remove(&c);
            }
        }
        make_primitive(&mut row);
        self.insert(row)
    }

    fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => eliminate(&mut row, p, lead),
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Whether the row lies in the span of the rows added so far.
    pub fn contains<'a>(&self, entries: impl IntoIterator<Item = (usize, &'a Rational)>) -> bool {
        let mut probe = self.clone();
        !probe.add_row(entries)
    }

    /// Bring the stored rows to reduced form (every pivot column is zero in
    /// the other rows).
    fn back_reduce(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &p in &cols {
            let pivot = self.pivots[&p].clone();
            for (&q, row) in self.pivots.range_mut(..p) {
                debug_assert!(q < p);
                if row.contains_key(&p) {
                    eliminate(row, &pivot, p);
                }
            }
        }
    }

    /// Kernel basis in the same normalisation as [`QMatrix::nullspace`].
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut red = self.clone();
        red.back_reduce();
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|c| !red.pivots.contains_key(c)) {
            let mut x = vec![Rational::zero(); self.cols];
            x[f] = Rational::one();
            for (&p, row) in &red.pivots {
                if let Some(v) = row.get(&f) {
                    let lead = Rational::from(row[&p].clone());
                    x[p] = -(&Rational::from(v.clone()) / &lead);
                }
            }
            basis.push(x);
        }
        basis
    }

    /// The reduced rows as rational vectors with leading coefficient 1.
    pub fn reduced_rows(&self) -> Vec<(usize, Vec<(usize, Rational)>)> {
        let mut red = self.clone();
        red.back_reduce();
        red.pivots
            .iter()
            .map(|(&p, row)| {
                let lead = Rational::from(row[&p].clone());
                let entries = row
                    .iter()
                    .map(|(&j, v)| (j, &Rational::from(v.clone()) / &lead))
                    .collect();
                (p, entries)
            })
            .collect()
    }
}
