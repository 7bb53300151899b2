//! Dense exact matrices over Q.
//!
//! Rank and kernel go through fraction-free (Bareiss) elimination on
//! integer-cleared rows; subspaces that grow one vector at a time use the
//! incremental [`Echelon`].

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::denominator_lcm;
use super::{ExactError, Rational, UPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
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
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        Self::identity(n).scale(c)
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    pub fn from_columns(cols: &[Vec<Rational>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// First nonzero entry, row-major.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Rational)> {
        self.data
            .iter()
            .position(|x| !x.is_zero())
            .map(|k| (k / self.cols, k % self.cols, self.data[k].clone()))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, o: &QMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &QMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// `self += c * o`.
    pub fn add_scaled(&mut self, o: &QMatrix, c: &Rational) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a += &(b * c);
            }
        }
    }

    pub fn mul(&self, o: &QMatrix) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        m.data[i * o.cols + j] += &(a * b);
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, o: &QMatrix) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    /// `p(self)` by Horner.
    pub fn eval_poly(&self, p: &UPoly) -> Self {
        let mut acc = Self::zeros(self.rows, self.cols);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::scalar(self.rows, c));
        }
        acc
    }

    pub fn rank(&self) -> usize {
        bareiss_echelon(self).pivots.len()
    }

    /// Basis of the null space.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let rref = self.rref();
        let mut basis = Vec::new();
        let pivot_of: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &p) in rref.pivots.iter().enumerate() {
                v[p] = Some(r);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_of[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &p) in rref.pivots.iter().enumerate() {
                v[p] = -&rref.rows[r][free];
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form (pivot entries 1).
    pub fn rref(&self) -> Rref {
        let ech = bareiss_echelon(self);
        let mut rows: Vec<Vec<Rational>> = ech
            .rows
            .iter()
            .take(ech.pivots.len())
            .map(|r| r.iter().map(|x| Rational::from(x.clone())).collect())
            .collect();
        for (r, &p) in ech.pivots.iter().enumerate() {
            let inv = rows[r][p].recip();
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        for r in (0..ech.pivots.len()).rev() {
            let p = ech.pivots[r];
            for above in 0..r {
                let f = rows[above][p].clone();
                if f.is_zero() {
                    continue;
                }
                let (head, tail) = rows.split_at_mut(r);
                for (x, y) in head[above].iter_mut().zip(&tail[0]) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        Rref {
            rows,
            pivots: ech.pivots,
        }
    }

    pub fn determinant(&self) -> Result<Rational, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Shape(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let scale: BigInt = (0..self.rows)
            .map(|i| denominator_lcm(self.row(i)))
            .fold(BigInt::one(), |a, b| a * b);
        let ech = bareiss_echelon(self);
        if ech.pivots.len() < self.rows {
            return Ok(Rational::zero());
        }
        let last = ech.rows[self.rows - 1][self.cols - 1].clone();
        let sign = if ech.swaps % 2 == 0 { 1 } else { -1 };
        Ok(Rational::new(last * sign, scale))
    }

    pub fn inverse(&self) -> Result<QMatrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return Err(ExactError::Singular);
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r.rows[i][n + j].clone();
            }
        }
        Ok(inv)
    }

    /// Characteristic polynomial `det(t I - self)`, via Hessenberg reduction.
    pub fn charpoly(&self) -> UPoly {
        assert!(
            self.is_square(),
            "characteristic polynomial of non-square matrix"
        );
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let t = h[(m, m - 1)].clone();
            for i in m + 1..n {
                let u = &h[(i, m - 1)] / &t;
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &u * &h[(m, j)];
                    h[(i, j)] -= &v;
                }
                for r in 0..n {
                    let v = &u * &h[(r, i)];
                    h[(r, m)] += &v;
                }
            }
        }
        let mut p: Vec<UPoly> = vec![UPoly::constant(Rational::one())];
        for m in 1..=n {
            let lin = UPoly::new(vec![-&h[(m - 1, m - 1)], Rational::one()]);
            let mut next = lin.mul(&p[m - 1]);
            let mut prod = Rational::one();
            for i in (1..m).rev() {
                prod = &prod * &h[(i, i - 1)];
                if prod.is_zero() {
                    break;
                }
                let c = &h[(i - 1, m - 1)] * &prod;
                next = next.sub(&p[i - 1].scale(&c));
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    /// Columns spanning the image.
    pub fn column_space(&self) -> Vec<Vec<Rational>> {
        let mut e = Echelon::new(self.rows);
        let mut out = Vec::new();
        for c in self.columns() {
            if e.insert(&c) {
                out.push(c);
            }
        }
        out
    }

    /// Restriction to an invariant subspace given by basis columns; `None` if not invariant.
    pub fn restrict(&self, basis: &[Vec<Rational>]) -> Option<QMatrix> {
        let mut e = Echelon::new(self.rows);
        for b in basis {
            e.insert(b);
        }
        let k = basis.len();
        let mut m = QMatrix::zeros(k, k);
        for (j, b) in basis.iter().enumerate() {
            let img = self.mul_vec(b);
            let c = e.coordinates(&img)?;
            for (i, v) in c.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Some(m)
    }
}

impl serde::Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.row_vecs().serialize(s)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

struct IntEchelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

/// Fraction-free forward elimination. Each row is first scaled to integers.
fn bareiss_echelon(m: &QMatrix) -> IntEchelon {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = denominator_lcm(row);
            row.iter().map(|x| (x.numer() * &l) / x.denom()).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let pv = prow[c].clone();
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..m.cols {
                let v = &pv * &row[j] - &f * &prow[j];
                row[j] = if prev.is_one() {
                    v
                } else {
                    let (q, rem) = v.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "inexact Bareiss step");
                    q
                };
            }
            row[c] = BigInt::zero();
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    IntEchelon {
        rows: a,
        pivots,
        swaps,
    }
}

/// Incrementally built subspace of Q^dim in reduced echelon form, tracking how
/// each stored row is expressed in the vectors accepted so far.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    combos: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    accepted: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            combos: Vec::new(),
            pivots: Vec::new(),
            accepted: 0,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    fn reduce_tracked(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut r = v.to_vec();
        let mut coeff = vec![Rational::zero(); self.rows.len()];
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
            coeff[k] = f;
        }
        (r, coeff)
    }

    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let (mut r, coeff) = self.reduce_tracked(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let k = self.accepted;
        self.accepted += 1;
        for c in self.combos.iter_mut() {
            c.push(Rational::zero());
        }
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for (i, f) in coeff.iter().enumerate() {
            if !f.is_zero() {
                for (x, y) in combo.iter_mut().zip(&self.combos[i]) {
                    if !y.is_zero() {
                        *x -= &(f * y);
                    }
                }
            }
        }
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for x in combo.iter_mut() {
            *x = &*x * &inv;
        }
        for (row, c) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
            for (x, y) in c.iter_mut().zip(&combo) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(pos, r);
        self.combos.insert(pos, combo);
        self.pivots.insert(pos, p);
        true
    }

    /// Coefficients of `v` in the accepted vectors (in insertion order), if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (r, coeff) = self.reduce_tracked(v);
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut out = vec![Rational::zero(); self.accepted];
        for (f, combo) in coeff.iter().zip(&self.combos) {
            if f.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(combo) {
                if !y.is_zero() {
                    *x += &(f * y);
                }
            }
        }
        Some(out)
    }
}

/// Dimension of the span of the given vectors.
pub fn span_rank(vectors: &[Vec<Rational>], dim: usize) -> usize {
    let mut e = Echelon::new(dim);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Whether two families span the same subspace.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>], dim: usize) -> bool {
    let ra = span_rank(a, dim);
    let rb = span_rank(b, dim);
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    ra == rb && span_rank(&all, dim) == ra
}

/// Whether span(a) is contained in span(b).
pub fn span_contains(b: &[Vec<Rational>], a: &[Vec<Rational>], dim: usize) -> bool {
    let mut e = Echelon::new(dim);
    for v in b {
        e.insert(v);
    }
    a.iter().all(|v| e.contains(v))
}

/// Intersection of two subspaces given by spanning vectors.
pub fn intersect(a: &[Vec<Rational>], b: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // solve sum x_i a_i - sum y_j b_j = 0
    let mut cols = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
    let m = QMatrix::from_columns(&cols, dim);
    let mut e = Echelon::new(dim);
    let mut out = Vec::new();
    for k in m.kernel() {
        let mut v = vec![Rational::zero(); dim];
        for (x, av) in k.iter().zip(a) {
            if x.is_zero() {
                continue;
            }
            for (t, s) in v.iter_mut().zip(av) {
                *t += &(x * s);
            }
        }
        if e.insert(&v) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(QMatrix::identity(3).kernel().is_empty());
        assert_eq!(QMatrix::zeros(2, 3).kernel().len(), 3);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = QMatrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.determinant().unwrap(), Rational::from(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(3));
        let s = QMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(s.determinant().unwrap().is_zero());
        assert!(matches!(s.inverse(), Err(ExactError::Singular)));
        let h = QMatrix::from_rows(vec![
            vec![Rational::new(1, 2), Rational::new(1, 3)],
            vec![Rational::new(1, 4), Rational::new(1, 5)],
        ]);
        assert_eq!(h.determinant().unwrap(), Rational::new(1, 60));
        let p = QMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(p.determinant().unwrap(), Rational::from(-1));
    }

    #[test]
    fn charpoly_matches_determinant_definition() {
        let m = QMatrix::from_ints(&[&[0, -48], &[1, 0]]);
        assert_eq!(m.charpoly(), UPoly::from_ints(&[48, 0, 1]));
        let d = QMatrix::diagonal(&[Rational::from(1), Rational::from(2), Rational::from(3)]);
        assert_eq!(d.charpoly(), UPoly::from_ints(&[-6, 11, -6, 1]));
        let a = QMatrix::from_ints(&[&[1, 2, 0, 1], &[0, 1, 3, 0], &[4, 0, 1, 2], &[1, 1, 1, 1]]);
        let p = a.charpoly();
        assert!(a.eval_poly(&p).is_zero());
        assert_eq!(p.coeffs()[0], a.determinant().unwrap());
    }

    #[test]
    fn echelon_coordinates() {
        let mut e = Echelon::new(3);
        let a = vec![Rational::from(1), Rational::from(1), Rational::from(0)];
        let b = vec![Rational::from(0), Rational::from(1), Rational::from(1)];
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        let sum: Vec<Rational> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| x * &Rational::from(2) - y * &Rational::from(3))
            .collect();
        assert!(!e.insert(&sum));
        assert_eq!(
            e.coordinates(&sum).unwrap(),
            vec![Rational::from(2), Rational::from(-3)]
        );
        assert!(e
            .coordinates(&[Rational::from(1), Rational::from(0), Rational::from(0)])
            .is_none());
    }
}
