//! Structure data for `sl_n`: basis, brackets, invariant forms, the principal
//! triple, root combinatorics and the companion-matrix section.

mod roots;
mod section;

pub use roots::{
    dominant_weights_below, minuscule_min, weyl_dimension, weyl_group, RootDatum, Weight,
    WeylElement,
};
pub use section::{
    centralizer, companion_point, companion_section, section_coordinates, section_vars,
};

use std::sync::Arc;

use thiserror::Error;

use crate::exact::{QMatrix, Rational, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("sl_n needs n >= 2, got {0}")]
    RankTooSmall(usize),
    #[error("Weyl group of S_{0} exceeds the enumeration guard")]
    WeylGuard(usize),
    #[error("weight {0} has {1} entries, expected {2}")]
    WeightArity(String, usize, usize),
    #[error("invalid weight {0:?}")]
    BadWeight(String),
    #[error("matrix is not traceless or has the wrong size")]
    NotInAlgebra,
}

/// One basis element of `sl_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisElement {
    /// `E_{ij}`, zero-based, `i != j`.
    E(usize, usize),
    /// `H_i = E_{ii} - E_{i+1,i+1}`, zero-based.
    H(usize),
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub n: usize,
    pub elements: Vec<BasisElement>,
    pub basis: Vec<QMatrix>,
    /// `structure[a][b]` lists the nonzero coordinates of `[X_a, X_b]`.
    pub structure: Vec<Vec<Vec<(usize, Rational)>>>,
    pub killing: QMatrix,
    pub trace_form: QMatrix,
    /// Killing-dual basis `X^i`, as matrices.
    pub killing_dual: Vec<QMatrix>,
    /// Trace-dual basis, as matrices.
    pub trace_dual: Vec<QMatrix>,
    vars: Arc<VarSet>,
}

#[derive(Clone, Debug)]
pub struct PrincipalTriple {
    pub e: Vec<Rational>,
    pub f: Vec<Rational>,
    pub h: Vec<Rational>,
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// Coordinate variables `x_ij`, `h_i` in basis order.
    pub fn coordinate_vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn label(&self, a: usize) -> String {
        match self.elements[a] {
            BasisElement::E(i, j) => format!("E{}{}", i + 1, j + 1),
            BasisElement::H(i) => format!("H{}", i + 1),
        }
    }

    pub fn index_of(&self, el: BasisElement) -> Option<usize> {
        self.elements.iter().position(|&x| x == el)
    }

    /// Matrix of an element given by coordinates.
    pub fn element(&self, coords: &[Rational]) -> QMatrix {
        let mut m = QMatrix::zeros(self.n, self.n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m.add_scaled(b, c);
            }
        }
        m
    }

    /// Coordinates of a traceless matrix.
    pub fn coords(&self, m: &QMatrix) -> Result<Vec<Rational>, LieError> {
        let n = self.n;
        if m.rows() != n || m.cols() != n || !m.trace().is_zero() {
            return Err(LieError::NotInAlgebra);
        }
        let mut out = Vec::with_capacity(self.dim());
        let mut partial = Rational::zero();
        for el in &self.elements {
            match *el {
                BasisElement::E(i, j) => out.push(m[(i, j)].clone()),
                BasisElement::H(i) => {
                    partial += &m[(i, i)];
                    out.push(partial.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for (k, c) in &self.structure[a][b] {
                    out[*k] += &(&s * c);
                }
            }
        }
        out
    }

    /// `ad(x)` in the coordinate basis: column `b` holds `[x, X_b]`.
    pub fn ad(&self, x: &[Rational]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for b in 0..n {
            let mut unit = vec![Rational::zero(); n];
            unit[b] = Rational::one();
            for (k, v) in self.bracket(x, &unit).into_iter().enumerate() {
                m[(k, b)] = v;
            }
        }
        m
    }

    pub fn unit(&self, a: usize) -> Vec<Rational> {
        let mut u = vec![Rational::zero(); self.dim()];
        u[a] = Rational::one();
        u
    }

    pub fn principal_triple(&self) -> PrincipalTriple {
        let n = self.n;
        let mut e = vec![Rational::zero(); self.dim()];
        let mut f = vec![Rational::zero(); self.dim()];
        let mut h = vec![Rational::zero(); self.dim()];
        for i in 0..n - 1 {
            let a = (i + 1) * (n - 1 - i);
            e[self.index_of(BasisElement::E(i, i + 1)).unwrap()] = Rational::one();
            f[self.index_of(BasisElement::E(i + 1, i)).unwrap()] = Rational::from(a as i64);
            h[self.index_of(BasisElement::H(i)).unwrap()] = Rational::from(a as i64);
        }
        PrincipalTriple { e, f, h }
    }
}

/// Builds `sl_n` with basis `E_ij` (row-major, `i != j`) followed by `H_1..H_{n-1}`.
pub fn build_sl(n: usize) -> Result<(LieAlgebra, RootDatum, PrincipalTriple), LieError> {
    if n < 2 {
        return Err(LieError::RankTooSmall(n));
    }
    let mut elements = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                elements.push(BasisElement::E(i, j));
            }
        }
    }
    for i in 0..n - 1 {
        elements.push(BasisElement::H(i));
    }
    let basis: Vec<QMatrix> = elements
        .iter()
        .map(|el| {
            let mut m = QMatrix::zeros(n, n);
            match *el {
                BasisElement::E(i, j) => m[(i, j)] = Rational::one(),
                BasisElement::H(i) => {
                    m[(i, i)] = Rational::one();
                    m[(i + 1, i + 1)] = Rational::from(-1);
                }
            }
            m
        })
        .collect();
    let names: Vec<String> = elements
        .iter()
        .map(|el| match *el {
            BasisElement::E(i, j) => format!("x_{}{}", i + 1, j + 1),
            BasisElement::H(i) => format!("h_{}", i + 1),
        })
        .collect();
    let dim = basis.len();
    let mut g = LieAlgebra {
        n,
        elements,
        basis,
        structure: Vec::new(),
        killing: QMatrix::zeros(dim, dim),
        trace_form: QMatrix::zeros(dim, dim),
        killing_dual: Vec::new(),
        trace_dual: Vec::new(),
        vars: VarSet::new(names),
    };
    let mut structure = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let c = g.basis[a].commutator(&g.basis[b]);
            let coords = g.coords(&c).expect("commutators are traceless");
            structure[a][b] = coords
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
    }
    g.structure = structure;
    let ads: Vec<QMatrix> = (0..dim).map(|a| g.ad(&g.unit(a))).collect();
    for a in 0..dim {
        for b in 0..dim {
            g.killing[(a, b)] = ads[a].mul(&ads[b]).trace();
            g.trace_form[(a, b)] = g.basis[a].mul(&g.basis[b]).trace();
        }
    }
    let dual = |form: &QMatrix| -> Vec<QMatrix> {
        let inv = form
            .inverse()
            .expect("invariant forms on sl_n are nondegenerate");
        (0..dim)
            .map(|i| {
                let mut m = QMatrix::zeros(n, n);
                for j in 0..dim {
                    let c = &inv[(j, i)];
                    if !c.is_zero() {
                        m.add_scaled(&g.basis[j], c);
                    }
                }
                m
            })
            .collect()
    };
    g.killing_dual = dual(&g.killing);
    g.trace_dual = dual(&g.trace_form);
    let roots = RootDatum::new(n);
    let triple = g.principal_triple();
    Ok((g, roots, triple))
}
