use serde::Serialize;

use super::{e_limit, h_eigenvalue, LimitMethod, MultiplicityError, TorusTransport};
use crate::big::Calibrated;
use crate::exact::{span_contains, Echelon, QMatrix, QPolynomial, Rational};
use crate::kirillov::Context;
use crate::lie::{minuscule_min, Weight};

/// Monomial basis of the unital algebra generated by commuting graded matrices.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub basis: Vec<QMatrix>,
    pub degrees: Vec<i64>,
    /// Generator exponents of each basis monomial.
    pub words: Vec<Vec<u32>>,
    echelon: Echelon,
}

impl GradedAlgebra {
    pub fn generate(gens: &[(QMatrix, i64)], dim: usize) -> Self {
        let mut echelon = Echelon::new(dim * dim);
        let id = QMatrix::identity(dim);
        echelon.insert(id.data());
        let mut alg = GradedAlgebra {
            basis: vec![id],
            degrees: vec![0],
            words: vec![vec![0; gens.len()]],
            echelon,
        };
        let mut next = 0;
        while next < alg.basis.len() {
            for (g, (m, d)) in gens.iter().enumerate() {
                let p = m.mul(&alg.basis[next]);
                if alg.echelon.insert(p.data()) {
                    let mut word = alg.words[next].clone();
                    word[g] += 1;
                    alg.degrees.push(alg.degrees[next] + d);
                    alg.words.push(word);
                    alg.basis.push(p);
                }
            }
            next += 1;
        }
        alg
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self, m: &QMatrix) -> Option<Vec<Rational>> {
        self.echelon.coordinates(m.data())
    }

    /// `c[a][b]` are the coordinates of `basis[a] * basis[b]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Rational>>> {
        self.basis
            .iter()
            .map(|a| {
                self.basis
                    .iter()
                    .map(|b| self.coordinates(&a.mul(b)).expect("closed under products"))
                    .collect()
            })
            .collect()
    }
}

fn nilpotency_index(m: &QMatrix) -> Option<u32> {
    let mut p = m.clone();
    for k in 1..=(m.rows() as u32 + 1) {
        if p.is_zero() {
            return Some(k);
        }
        p = p.mul(m);
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityAlgebra {
    pub lambda: Weight,
    pub limit_space: Vec<Vec<Rational>>,
    pub generator_names: Vec<String>,
    /// Generators restricted to the limit space, in its basis.
    pub operators: Vec<QMatrix>,
    /// Dimensions of the degree-`i` pieces, `i` counted down from the top `h`-eigenvalue.
    pub graded_dims: Vec<usize>,
    /// `sum_i dim Q^i q^((mu - lambda, rho) - i)`.
    pub hilbert: QPolynomial,
    pub algebra_dim: usize,
    pub basis_words: Vec<Vec<u32>>,
    pub basis_degrees: Vec<i64>,
    pub structure_constants: Vec<Vec<Vec<Rational>>>,
    pub nilpotency: Vec<Option<u32>>,
}

/// Calibrated Kirillov generators at `e`, with degrees.
pub fn generators_at_e(ctx: &Context, cal: &Calibrated) -> Vec<(QMatrix, i64)> {
    cal.at_point(&ctx.triple.e)
        .into_iter()
        .zip(&cal.specs)
        .map(|(m, s)| (m, s.degree))
        .collect()
}

pub fn multiplicity_algebra(
    ctx: &Context,
    cal: &Calibrated,
    lambda: &Weight,
    transport: Option<&TorusTransport>,
) -> Result<MultiplicityAlgebra, MultiplicityError> {
    let limit = e_limit(ctx, lambda, LimitMethod::ZLimit, transport)?;
    let gens = generators_at_e(ctx, cal);
    let mut operators = Vec::new();
    for (m, _) in &gens {
        operators.push(
            m.restrict(&limit)
                .ok_or_else(|| MultiplicityError::NotInvariant(lambda.clone()))?,
        );
    }
    let h = ctx
        .rep
        .rho_of(&ctx.triple.h)
        .restrict(&limit)
        .ok_or_else(|| MultiplicityError::NotInvariant(lambda.clone()))?;
    let top = h_eigenvalue(&ctx.rep.mu);
    let mut graded_dims: Vec<usize> = Vec::new();
    let mut hilbert = QPolynomial::zero();
    for (k, mult) in h.charpoly().rational_roots() {
        let k = k.to_i64().expect("integer h-eigenvalue");
        let d = h
            .sub(&QMatrix::scalar(limit.len(), &Rational::from(k)))
            .kernel()
            .len();
        debug_assert_eq!(d as u32, mult);
        let i = ((top - k) / 2) as usize;
        if graded_dims.len() <= i {
            graded_dims.resize(i + 1, 0);
        }
        graded_dims[i] += d;
        hilbert.add_term((k - h_eigenvalue(lambda)) / 2, d as i64);
    }
    let restricted: Vec<(QMatrix, i64)> = operators
        .iter()
        .cloned()
        .zip(gens.iter().map(|g| g.1))
        .collect();
    let alg = GradedAlgebra::generate(&restricted, limit.len());
    Ok(MultiplicityAlgebra {
        lambda: lambda.clone(),
        generator_names: cal.names(),
        nilpotency: operators.iter().map(nilpotency_index).collect(),
        graded_dims,
        hilbert,
        algebra_dim: alg.dim(),
        structure_constants: alg.structure_constants(),
        basis_words: alg.words.clone(),
        basis_degrees: alg.degrees.clone(),
        operators,
        limit_space: limit,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientChain {
    pub lambda: Weight,
    pub mu_min: Weight,
    pub contained: bool,
    pub restriction_compatible: bool,
    pub medium_annihilate: bool,
    pub q_min_dim: usize,
    /// `dim B_e / ((M_1)_e, ..., (M_r)_e)`.
    pub quotient_dim: usize,
}

impl QuotientChain {
    pub fn pass(&self) -> bool {
        self.contained
            && self.restriction_compatible
            && self.medium_annihilate
            && self.q_min_dim == self.quotient_dim
    }
}

/// `B_e ->> Q_{mu_min} ->> Q_lambda` and `Q_{mu_min} = B_e / (medium generators at e)`.
pub fn quotient_chain(
    ctx: &Context,
    cal: &Calibrated,
    lambda: &Weight,
    transport: Option<&TorusTransport>,
) -> Result<QuotientChain, MultiplicityError> {
    let dim = ctx.dim();
    let mu_min = minuscule_min(&ctx.rep.mu);
    let l_min = e_limit(ctx, &mu_min, LimitMethod::ZLimit, transport)?;
    let l = e_limit(ctx, lambda, LimitMethod::ZLimit, transport)?;
    let gens = generators_at_e(ctx, cal);
    let contained = span_contains(&l_min, &l, dim);
    let mut restriction_compatible = true;
    let mut restricted_min = Vec::new();
    for (m, d) in &gens {
        let Some(r) = m.restrict(&l_min) else {
            return Err(MultiplicityError::NotInvariant(mu_min));
        };
        restriction_compatible &= m.restrict(&l).is_some();
        restricted_min.push((r, *d));
    }
    let medium: Vec<usize> = cal
        .specs
        .iter()
        .enumerate()
        .filter(|(_, s)| s.i == 1)
        .map(|(k, _)| k)
        .collect();
    let medium_annihilate = medium.iter().all(|&k| restricted_min[k].0.is_zero());
    let q_min = GradedAlgebra::generate(&restricted_min, l_min.len());
    let b_e = GradedAlgebra::generate(&gens, dim);
    let mut ideal = Echelon::new(dim * dim);
    for b in &b_e.basis {
        for &k in &medium {
            ideal.insert(b.mul(&gens[k].0).data());
        }
    }
    Ok(QuotientChain {
        lambda: lambda.clone(),
        mu_min,
        contained,
        restriction_compatible,
        medium_annihilate,
        q_min_dim: q_min.dim(),
        quotient_dim: b_e.dim() - ideal.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big::calibrated_generators;
    use crate::multiplicity::lusztig_m;

    #[test]
    fn octet_zero_weight_algebra() {
        let ctx = Context::new(3, &Weight(vec![1, 1]), 400, None).unwrap();
        let cal = calibrated_generators(&ctx).unwrap();
        let zero = Weight(vec![0, 0]);
        let q = multiplicity_algebra(&ctx, &cal, &zero, None).unwrap();
        assert_eq!(q.algebra_dim, 2);
        assert_eq!(q.hilbert, lusztig_m(&ctx.rep.mu, &zero).unwrap());
        let n1 = &q.operators[cal.index_of("N1").unwrap()];
        assert!(!n1.is_zero());
        assert!(n1.mul(n1).is_zero());
        assert_eq!(q.nilpotency[cal.index_of("N1").unwrap()], Some(2));
        assert!(quotient_chain(&ctx, &cal, &zero, None).unwrap().pass());
    }

    #[test]
    fn top_weight_is_one_dimensional() {
        let ctx = Context::new(3, &Weight(vec![2, 1]), 400, None).unwrap();
        let cal = calibrated_generators(&ctx).unwrap();
        let q = multiplicity_algebra(&ctx, &cal, &Weight(vec![2, 1]), None).unwrap();
        assert_eq!(q.algebra_dim, 1);
        assert_eq!(q.hilbert, QPolynomial::one());
    }
}
