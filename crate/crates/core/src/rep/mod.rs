//! Irreducible representations of `sl_n` with exact matrices.

mod cache;

pub use cache::{cache_path, load_or_build, CacheFile, CACHE_VERSION};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exact::{joint_invariant_decomposition, Echelon, ExactError, QMatrix, Rational};
use crate::lie::{weyl_dimension, BasisElement, LieAlgebra, Weight};

pub const DEFAULT_DIM_BOUND: usize = 400;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("fundamental index {k} out of range for sl_{n}")]
    FundamentalIndex { n: usize, k: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("weight {0} has the wrong number of coordinates")]
    WeightArity(Weight),
    #[error("dimension {dim} exceeds bound {bound}")]
    TooLarge { dim: u64, bound: usize },
    #[error("no highest-weight vector found")]
    NoHighestWeight,
    #[error("torus elements do not act semisimply with rational eigenvalues")]
    NotSemisimple,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("cache: {0}")]
    Cache(String),
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub n: usize,
    pub mu: Weight,
    pub rho: Vec<QMatrix>,
    /// Lowering word (simple-root indices, one-based) producing each basis vector.
    pub basis_words: Vec<Vec<usize>>,
    /// Standard-torus weight of each basis vector.
    pub weights: Vec<Weight>,
    pub provenance: Vec<String>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `rho(x)` for an element given by coordinates.
    pub fn rho_of(&self, coords: &[Rational]) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for (c, r) in coords.iter().zip(&self.rho) {
            if !c.is_zero() {
                m.add_scaled(r, c);
            }
        }
        m
    }

    /// Basis indices grouped by standard weight.
    pub fn weight_table(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut t: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            t.entry(w.clone()).or_default().push(i);
        }
        t
    }

    /// Basis of the standard weight space `V_lambda` (possibly empty).
    pub fn weight_space(&self, lambda: &Weight) -> Vec<Vec<Rational>> {
        let d = self.dim();
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| *w == lambda)
            .map(|(i, _)| {
                let mut v = vec![Rational::zero(); d];
                v[i] = Rational::one();
                v
            })
            .collect()
    }

    /// Checks `[rho(X_a), rho(X_b)] = rho([X_a, X_b])` for all basis pairs.
    pub fn bracket_fidelity(&self, g: &LieAlgebra) -> bool {
        (0..g.dim()).all(|a| {
            (0..g.dim()).all(|b| {
                let lhs = self.rho[a].commutator(&self.rho[b]);
                let mut rhs = QMatrix::zeros(self.dim(), self.dim());
                for (k, c) in &g.structure[a][b] {
                    rhs.add_scaled(&self.rho[*k], c);
                }
                lhs == rhs
            })
        })
    }
}

/// The exterior power `Lambda^k` of the standard representation on sorted `k`-subsets.
pub fn fundamental_rep(g: &LieAlgebra, k: usize) -> Result<Representation, RepError> {
    let n = g.n;
    if k == 0 || k >= n {
        return Err(RepError::FundamentalIndex { n, k });
    }
    let subsets = k_subsets(n, k);
    let index: BTreeMap<&Vec<usize>, usize> =
        subsets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let d = subsets.len();
    let rho = g
        .basis
        .iter()
        .map(|x| {
            let mut m = QMatrix::zeros(d, d);
            for (col, s) in subsets.iter().enumerate() {
                for (pos, &j) in s.iter().enumerate() {
                    for i in 0..n {
                        let c = &x[(i, j)];
                        if c.is_zero() {
                            continue;
                        }
                        if i != j && s.contains(&i) {
                            continue;
                        }
                        let mut t = s.clone();
                        t[pos] = i;
                        let sign = sort_sign(&mut t);
                        let row = index[&t];
                        let v = if sign > 0 { c.clone() } else { -c };
                        m[(row, col)] += &v;
                    }
                }
            }
            m
        })
        .collect();
    let mut mu = vec![0; n - 1];
    mu[k - 1] = 1;
    let mu = Weight(mu);
    let weights = subsets
        .iter()
        .map(|s| {
            let mut a = vec![0; n];
            for &i in s {
                a[i] = 1;
            }
            Weight::from_eps(&a)
        })
        .collect();
    Ok(Representation {
        n,
        mu,
        rho,
        basis_words: vec![Vec::new(); d],
        weights,
        provenance: vec![format!("exterior power {k} of the standard module")],
    })
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn sort_sign(v: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

/// Tensor product of modules, acting on dense vectors without forming Kronecker matrices.
struct TensorModule {
    factors: Vec<Representation>,
    strides: Vec<usize>,
    total: usize,
}

impl TensorModule {
    fn new(factors: Vec<Representation>) -> Self {
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].dim();
        }
        let total = factors.iter().map(|f| f.dim()).product();
        TensorModule {
            factors,
            strides,
            total,
        }
    }

    fn apply(&self, a: usize, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.total];
        for (rep, &stride) in self.factors.iter().zip(&self.strides) {
            let m = &rep.rho[a];
            let d = rep.dim();
            for (idx, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let j = (idx / stride) % d;
                let base = idx - j * stride;
                for i in 0..d {
                    let c = &m[(i, j)];
                    if !c.is_zero() {
                        out[base + i * stride] += &(c * x);
                    }
                }
            }
        }
        out
    }
}

/// Builds `V^mu` inside a tensor product of fundamental modules.
///
/// The highest-weight vector is the tensor product of the factors' top vectors;
/// the module is then generated by simple lowering operators, keeping each new
/// independent vector unreduced so that it remains a weight vector.
pub fn build_irrep(
    g: &LieAlgebra,
    mu: &Weight,
    dim_bound: usize,
) -> Result<Representation, RepError> {
    let n = g.n;
    if mu.rank() != n - 1 {
        return Err(RepError::WeightArity(mu.clone()));
    }
    if !mu.is_dominant() {
        return Err(RepError::NotDominant(mu.clone()));
    }
    let expected = weyl_dimension(mu);
    if expected > dim_bound as u64 {
        return Err(RepError::TooLarge {
            dim: expected,
            bound: dim_bound,
        });
    }
    let r = n - 1;
    if mu.0.iter().all(|&c| c == 0) {
        let rho = g.basis.iter().map(|_| QMatrix::zeros(1, 1)).collect();
        return Ok(Representation {
            n,
            mu: mu.clone(),
            rho,
            basis_words: vec![Vec::new()],
            weights: vec![Weight::zero(r)],
            provenance: vec!["trivial module".into()],
        });
    }
    let mut factors = Vec::new();
    for (i, &m) in mu.0.iter().enumerate() {
        for _ in 0..m {
            factors.push(fundamental_rep(g, i + 1)?);
        }
    }
    let t = TensorModule::new(factors);
    let mut top = vec![Rational::zero(); t.total];
    top[0] = Rational::one();
    let raising: Vec<usize> = (0..r)
        .map(|i| g.index_of(BasisElement::E(i, i + 1)).unwrap())
        .collect();
    let lowering: Vec<usize> = (0..r)
        .map(|i| g.index_of(BasisElement::E(i + 1, i)).unwrap())
        .collect();
    if raising
        .iter()
        .any(|&a| t.apply(a, &top).iter().any(|x| !x.is_zero()))
    {
        return Err(RepError::NoHighestWeight);
    }
    let alphas: Vec<Weight> = (1..=r)
        .map(|i| crate::lie::RootDatum::new(n).simple_root(i))
        .collect();
    let mut ech = Echelon::new(t.total);
    ech.insert(&top);
    let mut vectors = vec![top];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut weights = vec![mu.clone()];
    let mut next = 0;
    while next < vectors.len() {
        for (i, &a) in lowering.iter().enumerate() {
            let v = t.apply(a, &vectors[next]);
            if ech.insert(&v) {
                if vectors.len() >= dim_bound {
                    return Err(RepError::TooLarge {
                        dim: vectors.len() as u64 + 1,
                        bound: dim_bound,
                    });
                }
                let mut w = words[next].clone();
                w.push(i + 1);
                words.push(w);
                weights.push(weights[next].sub(&alphas[i]));
                vectors.push(v);
            }
        }
        next += 1;
    }
    let d = vectors.len();
    let rho = (0..g.dim())
        .map(|a| {
            let mut m = QMatrix::zeros(d, d);
            for (j, v) in vectors.iter().enumerate() {
                let img = t.apply(a, v);
                let c = ech
                    .coordinates(&img)
                    .expect("generated module is invariant");
                for (i, x) in c.into_iter().enumerate() {
                    m[(i, j)] = x;
                }
            }
            m
        })
        .collect();
    Ok(Representation {
        n,
        mu: mu.clone(),
        rho,
        basis_words: words,
        weights,
        provenance: vec![
            format!(
                "tensor product of {} fundamental factors, ambient dim {}",
                t.factors.len(),
                t.total
            ),
            format!("lowering closure reached dim {d}, Weyl dimension {expected}"),
        ],
    })
}

/// Joint eigenspaces of commuting semisimple torus elements, labelled by eigenvalue tuples.
pub fn weight_spaces(
    rep: &Representation,
    torus: &[Vec<Rational>],
) -> Result<Vec<(Vec<Rational>, Vec<Vec<Rational>>)>, RepError> {
    if torus.is_empty() {
        let basis = QMatrix::identity(rep.dim()).columns();
        return Ok(vec![(Vec::new(), basis)]);
    }
    let ms: Vec<QMatrix> = torus.iter().map(|x| rep.rho_of(x)).collect();
    let blocks = joint_invariant_decomposition(&ms)?;
    let mut out = Vec::new();
    for b in blocks {
        let ev = b.eigenvalues().ok_or(RepError::NotSemisimple)?;
        for (m, lam) in ms.iter().zip(&ev) {
            let r = m.restrict(&b.basis).ok_or(RepError::NotSemisimple)?;
            if r != QMatrix::scalar(b.dim(), lam) {
                return Err(RepError::NotSemisimple);
            }
        }
        out.push((ev, b.basis));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_sl;

    #[test]
    fn fundamental_dims() {
        let (g3, _, _) = build_sl(3).unwrap();
        let (g4, _, _) = build_sl(4).unwrap();
        assert_eq!(fundamental_rep(&g3, 1).unwrap().dim(), 3);
        let l2 = fundamental_rep(&g3, 2).unwrap();
        assert_eq!(l2.dim(), 3);
        assert_eq!(l2.weights[0], Weight(vec![0, 1]));
        assert_eq!(fundamental_rep(&g4, 2).unwrap().dim(), 6);
        assert!(fundamental_rep(&g3, 3).is_err());
        assert!(l2.bracket_fidelity(&g3));
    }

    #[test]
    fn irreps_have_weyl_dimension() {
        let (g2, _, _) = build_sl(2).unwrap();
        let v = build_irrep(&g2, &Weight(vec![4]), DEFAULT_DIM_BOUND).unwrap();
        assert_eq!(v.dim(), 5);
        assert!(v.bracket_fidelity(&g2));
        let (g3, _, _) = build_sl(3).unwrap();
        let dec = build_irrep(&g3, &Weight(vec![3, 0]), DEFAULT_DIM_BOUND).unwrap();
        assert_eq!(dec.dim(), 10);
        assert!(dec.bracket_fidelity(&g3));
        let oct = build_irrep(&g3, &Weight(vec![1, 1]), DEFAULT_DIM_BOUND).unwrap();
        assert_eq!(oct.dim(), 8);
        assert_eq!(oct.weight_space(&Weight(vec![0, 0])).len(), 2);
        assert!(oct.bracket_fidelity(&g3));
    }

    #[test]
    fn recorded_weights_match_cartan() {
        let (g, _, _) = build_sl(3).unwrap();
        let v = build_irrep(&g, &Weight(vec![2, 1]), DEFAULT_DIM_BOUND).unwrap();
        for (idx, w) in v.weights.iter().enumerate() {
            for i in 0..2 {
                let h = &v.rho[g.index_of(BasisElement::H(i)).unwrap()];
                for row in 0..v.dim() {
                    let expect = if row == idx {
                        Rational::from(w.0[i])
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(h[(row, idx)], expect);
                }
            }
        }
    }

    #[test]
    fn standard_weight_spaces() {
        let (g, _, _) = build_sl(3).unwrap();
        let oct = build_irrep(&g, &Weight(vec![1, 1]), DEFAULT_DIM_BOUND).unwrap();
        let hs: Vec<_> = (0..2)
            .map(|i| g.unit(g.index_of(BasisElement::H(i)).unwrap()))
            .collect();
        let ws = weight_spaces(&oct, &hs).unwrap();
        let mut dims: Vec<_> = ws.iter().map(|(_, b)| b.len()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 1, 1, 1, 2]);
        let triv = build_irrep(&g, &Weight(vec![0, 0]), DEFAULT_DIM_BOUND).unwrap();
        assert_eq!(weight_spaces(&triv, &hs).unwrap().len(), 1);
    }

    #[test]
    fn guards() {
        let (g, _, _) = build_sl(3).unwrap();
        assert!(matches!(
            build_irrep(&g, &Weight(vec![1, -1]), 400),
            Err(RepError::NotDominant(_))
        ));
        assert!(matches!(
            build_irrep(&g, &Weight(vec![3, 0]), 5),
            Err(RepError::TooLarge { .. })
        ));
    }
}
