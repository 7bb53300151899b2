//! Matrices of multivariate polynomials over a shared variable set.

use std::sync::Arc;

use rayon::prelude::*;

use super::{ExactError, MultiPoly, QMatrix, Rational, VarSet};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    vars: Arc<VarSet>,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, vars: &Arc<VarSet>) -> Self {
        PolyMatrix {
            rows,
            cols,
            vars: vars.clone(),
            entries: vec![MultiPoly::zero(vars); rows * cols],
        }
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        vars: &Arc<VarSet>,
        entries: Vec<MultiPoly>,
    ) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape(format!(
                "{} entries for {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.vars() != vars) {
            return Err(ExactError::VariableMismatch);
        }
        Ok(PolyMatrix {
            rows,
            cols,
            vars: vars.clone(),
            entries,
        })
    }

    /// Constant matrix.
    pub fn from_qmatrix(m: &QMatrix, vars: &Arc<VarSet>) -> Self {
        let entries = m
            .data()
            .iter()
            .map(|c| MultiPoly::constant(vars, c.clone()))
            .collect();
        PolyMatrix {
            rows: m.rows(),
            cols: m.cols(),
            vars: vars.clone(),
            entries,
        }
    }

    /// `p * Id`.
    pub fn scalar(n: usize, p: &MultiPoly) -> Self {
        let mut m = Self::zeros(n, n, p.vars());
        for i in 0..n {
            m.entries[i * n + i] = p.clone();
        }
        m
    }

    /// `sum_i polys[i] * mats[i]`.
    pub fn linear_combination(polys: &[MultiPoly], mats: &[QMatrix], vars: &Arc<VarSet>) -> Self {
        assert_eq!(polys.len(), mats.len());
        let (r, c) = mats.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        let mut out = Self::zeros(r, c, vars);
        for (p, m) in polys.iter().zip(mats) {
            if p.is_zero() {
                continue;
            }
            for (k, v) in m.data().iter().enumerate() {
                if !v.is_zero() {
                    out.entries[k].add_scaled(p, v);
                }
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, &MultiPoly)> {
        self.entries
            .iter()
            .position(|e| !e.is_zero())
            .map(|k| (k / self.cols, k % self.cols, &self.entries[k]))
    }

    pub fn total_terms(&self) -> usize {
        self.entries.iter().map(|e| e.len()).sum()
    }

    fn check(&self, o: &PolyMatrix) -> Result<(), ExactError> {
        if self.vars != o.vars {
            return Err(ExactError::VariableMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &PolyMatrix) -> Result<PolyMatrix, ExactError> {
        self.check(o)?;
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(ExactError::Shape(
                "sum of differently shaped matrices".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries,
        })
    }

    pub fn sub(&self, o: &PolyMatrix) -> Result<PolyMatrix, ExactError> {
        self.check(o)?;
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(ExactError::Shape(
                "difference of differently shaped matrices".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries,
        })
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &MultiPoly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    pub fn mul(&self, o: &PolyMatrix) -> Result<PolyMatrix, ExactError> {
        self.check(o)?;
        if self.cols != o.rows {
            return Err(ExactError::Shape("product shape mismatch".into()));
        }
        let (n, m, p) = (self.rows, self.cols, o.cols);
        let entries: Vec<MultiPoly> = (0..n * p)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / p, idx % p);
                let mut acc = MultiPoly::zero(&self.vars);
                for k in 0..m {
                    let a = &self.entries[i * m + k];
                    let b = &o.entries[k * p + j];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    acc.add_scaled(&t, &Rational::one());
                }
                acc
            })
            .collect();
        Ok(PolyMatrix {
            rows: n,
            cols: p,
            vars: self.vars.clone(),
            entries,
        })
    }

    /// `m * self` for a constant matrix `m`.
    pub fn left_mul_const(&self, m: &QMatrix) -> PolyMatrix {
        assert_eq!(m.cols(), self.rows, "shape mismatch");
        let mut out = PolyMatrix::zeros(m.rows(), self.cols, &self.vars);
        for i in 0..m.rows() {
            for k in 0..m.cols() {
                let a = &m[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let b = &self.entries[k * self.cols + j];
                    if !b.is_zero() {
                        out.entries[i * self.cols + j].add_scaled(b, a);
                    }
                }
            }
        }
        out
    }

    /// `self * m` for a constant matrix `m`.
    pub fn right_mul_const(&self, m: &QMatrix) -> PolyMatrix {
        assert_eq!(self.cols, m.rows(), "shape mismatch");
        let mut out = PolyMatrix::zeros(self.rows, m.cols(), &self.vars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..m.cols() {
                    let b = &m[(k, j)];
                    if !b.is_zero() {
                        out.entries[i * m.cols() + j].add_scaled(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &PolyMatrix) -> Result<PolyMatrix, ExactError> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    /// `[m, self]` for a constant matrix.
    pub fn const_commutator(&self, m: &QMatrix) -> PolyMatrix {
        self.left_mul_const(m)
            .sub(&self.right_mul_const(m))
            .expect("same shape")
    }

    pub fn partial_derivative(&self, var: usize) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| e.partial_derivative(var))
                .collect(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<QMatrix, ExactError> {
        let mut m = QMatrix::zeros(self.rows, self.cols);
        for (k, e) in self.entries.iter().enumerate() {
            m[(k / self.cols, k % self.cols)] = e.evaluate(point)?;
        }
        Ok(m)
    }

    pub fn substitute(&self, images: &[MultiPoly], target: &Arc<VarSet>) -> PolyMatrix {
        let entries = self
            .entries
            .par_iter()
            .map(|e| e.substitute(images, target))
            .collect();
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: target.clone(),
            entries,
        }
    }

    pub fn specialize(&self, values: &[(usize, Rational)]) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self.entries.iter().map(|e| e.specialize(values)).collect(),
        }
    }

    /// Common homogeneous degree of all nonzero entries under the given variable weights.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut deg = None;
        for e in &self.entries {
            if e.is_zero() {
                continue;
            }
            let d = e.homogeneous_degree(weights)?;
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn map_entries(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl std::fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let r: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}
