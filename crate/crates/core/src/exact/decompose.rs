//! Simultaneous invariant-subspace decomposition of commuting rational matrices.

use serde::Serialize;

use super::{ExactError, QMatrix, Rational, UPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum JointLabel {
    /// Rational eigenvalue of the corresponding matrix.
    Value(Rational),
    /// Characteristic factor without rational roots; the block is not split further.
    Factor(String),
}

#[derive(Clone, Debug)]
pub struct InvariantBlock {
    pub basis: Vec<Vec<Rational>>,
    /// One label per input matrix.
    pub labels: Vec<JointLabel>,
    /// Minimal data for `Factor` labels, aligned with `labels`.
    pub factors: Vec<Option<UPoly>>,
}

impl InvariantBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The rational eigenvalue tuple, if every label is rational.
    pub fn eigenvalues(&self) -> Option<Vec<Rational>> {
        self.labels
            .iter()
            .map(|l| match l {
                JointLabel::Value(v) => Some(v.clone()),
                JointLabel::Factor(_) => None,
            })
            .collect()
    }
}

fn in_coords(basis: &[Vec<Rational>], coords: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    coords
        .iter()
        .map(|c| {
            let mut v = vec![Rational::zero(); dim];
            for (b, x) in basis.iter().zip(c) {
                if x.is_zero() {
                    continue;
                }
                for (t, y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *t += &(x * y);
                    }
                }
            }
            v
        })
        .collect()
}

/// Splits the ambient space into joint generalized eigenspaces of commuting matrices.
///
/// Rational eigenvalues split blocks; the part of the spectrum without rational
/// roots is kept as a single invariant block labelled by its characteristic factor.
pub fn joint_invariant_decomposition(ms: &[QMatrix]) -> Result<Vec<InvariantBlock>, ExactError> {
    let Some(first) = ms.first() else {
        return Ok(Vec::new());
    };
    let dim = first.rows();
    for m in ms {
        if m.rows() != dim || m.cols() != dim {
            return Err(ExactError::Shape(
                "decomposition needs square matrices of one size".into(),
            ));
        }
    }
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            if !a.commutator(b).is_zero() {
                return Err(ExactError::NonCommuting);
            }
        }
    }
    let identity = QMatrix::identity(dim).columns();
    let mut blocks = vec![InvariantBlock {
        basis: identity,
        labels: Vec::new(),
        factors: Vec::new(),
    }];
    for m in ms {
        let mut next = Vec::new();
        for block in blocks {
            let a = m
                .restrict(&block.basis)
                .ok_or_else(|| ExactError::Shape("block is not invariant".into()))?;
            let k = a.rows();
            let chi = a.charpoly();
            let mut rest = chi.clone();
            for (r, mult) in chi.rational_roots() {
                let shifted = a.sub(&QMatrix::scalar(k, &r)).pow(mult);
                let sub = in_coords(&block.basis, &shifted.kernel(), dim);
                let lin = UPoly::linear_root(&r).pow(mult);
                rest = rest.div_rem(&lin).0;
                let mut labels = block.labels.clone();
                labels.push(JointLabel::Value(r));
                let mut factors = block.factors.clone();
                factors.push(None);
                next.push(InvariantBlock {
                    basis: sub,
                    labels,
                    factors,
                });
            }
            if rest.degree().unwrap_or(0) > 0 {
                let sub = in_coords(&block.basis, &a.eval_poly(&rest).kernel(), dim);
                let mut labels = block.labels.clone();
                labels.push(JointLabel::Factor(rest.to_string()));
                let mut factors = block.factors.clone();
                factors.push(Some(rest));
                next.push(InvariantBlock {
                    basis: sub,
                    labels,
                    factors,
                });
            }
        }
        blocks = next;
    }
    Ok(blocks)
}

/// Whether the characteristic polynomial is squarefree over Q.
pub fn simple_spectrum_check(m: &QMatrix) -> bool {
    m.charpoly().is_squarefree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn diagonal_pair() {
        let a = QMatrix::diagonal(&[q(1), q(2)]);
        let b = QMatrix::diagonal(&[q(3), q(3)]);
        let blocks = joint_invariant_decomposition(&[a, b]).unwrap();
        assert_eq!(blocks.len(), 2);
        let labels: Vec<_> = blocks.iter().map(|b| b.eigenvalues().unwrap()).collect();
        assert!(labels.contains(&vec![q(1), q(3)]));
        assert!(labels.contains(&vec![q(2), q(3)]));
        assert!(blocks.iter().all(|b| b.dim() == 1));
    }

    #[test]
    fn irrational_block_stays_whole() {
        let a = QMatrix::from_ints(&[&[0, 48], &[1, 0]]);
        let blocks = joint_invariant_decomposition(&[a]).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].dim(), 2);
        assert_eq!(
            blocks[0].factors[0].as_ref().unwrap(),
            &UPoly::from_ints(&[-48, 0, 1])
        );
    }

    #[test]
    fn mixed_spectrum() {
        // t (t^2 - 2) on a 3-space
        let a = QMatrix::from_ints(&[&[0, 2, 0], &[1, 0, 0], &[0, 0, 0]]);
        let blocks = joint_invariant_decomposition(&[a.clone()]).unwrap();
        let dims: Vec<_> = blocks.iter().map(|b| b.dim()).collect();
        assert_eq!(dims.iter().sum::<usize>(), 3);
        for b in &blocks {
            assert!(a.restrict(&b.basis).is_some());
        }
    }

    #[test]
    fn non_commuting_rejected() {
        let a = QMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let b = QMatrix::from_ints(&[&[0, 0], &[1, 0]]);
        assert_eq!(
            joint_invariant_decomposition(&[a, b]).unwrap_err(),
            ExactError::NonCommuting
        );
    }

    #[test]
    fn squarefree_spectrum() {
        assert!(!simple_spectrum_check(&QMatrix::identity(2)));
        assert!(simple_spectrum_check(&QMatrix::diagonal(&[
            q(1),
            q(2),
            q(3)
        ])));
    }
}
