//! Freeness, cyclicity, simple spectrum and commutativity checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SectionOperator;
use crate::exact::{simple_spectrum_check, Echelon, QMatrix, Rational, UPoly};
use crate::kirillov::{commutator, wei_d, KirillovElement};

/// Seeded generator of "generic" rationals from `{-9..9} \ {0}`.
pub struct PointSampler(ChaCha8Rng);

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn value(&mut self) -> Rational {
        let k: i64 = self.0.gen_range(1..=18);
        Rational::from(if k <= 9 { k - 10 } else { k - 9 })
    }

    pub fn vector(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.value()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub point: Vec<Rational>,
    pub span_dim: usize,
    pub cyclic: bool,
    pub simple_spectrum: bool,
    /// Simplicity is only claimed at generic points.
    pub informational: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessReport {
    pub dim: usize,
    pub points: Vec<PointCheck>,
}

impl FreenessReport {
    pub fn pass(&self) -> bool {
        self.points
            .iter()
            .all(|p| p.span_dim == self.dim && p.cyclic && (p.informational || p.simple_spectrum))
    }
}

/// Basis of the unital algebra generated by commuting matrices.
pub fn algebra_span(gens: &[QMatrix], dim: usize) -> Vec<QMatrix> {
    let mut ech = Echelon::new(dim * dim);
    let id = QMatrix::identity(dim);
    ech.insert(&id.data().to_vec());
    let mut basis = vec![id];
    let mut next = 0;
    while next < basis.len() {
        for g in gens {
            let p = g.mul(&basis[next]);
            if ech.insert(&p.data().to_vec()) {
                basis.push(p);
            }
        }
        next += 1;
    }
    basis
}

fn check_point(
    gens: &[SectionOperator],
    c: &[Rational],
    sampler: &mut PointSampler,
    informational: bool,
) -> PointCheck {
    let mats: Vec<QMatrix> = gens
        .iter()
        .map(|g| g.evaluate_at(c).expect("arity"))
        .collect();
    let dim = mats[0].rows();
    let span = algebra_span(&mats, dim);
    let v = sampler.vector(dim);
    let orbit: Vec<Vec<Rational>> = span.iter().map(|b| b.mul_vec(&v)).collect();
    let cyclic = crate::exact::span_rank(&orbit, dim) == dim;
    let mut combo = QMatrix::zeros(dim, dim);
    for m in &mats {
        combo.add_scaled(m, &sampler.value());
    }
    PointCheck {
        point: c.to_vec(),
        span_dim: span.len(),
        cyclic,
        simple_spectrum: simple_spectrum_check(&combo),
        informational,
    }
}

/// Section coordinates `c_2..c_n` away from the discriminant.
pub fn regular_point(sampler: &mut PointSampler, n: usize) -> Vec<Rational> {
    loop {
        let c = sampler.vector(n - 1);
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        for (k, ck) in c.iter().enumerate() {
            coeffs[n - k - 2] = ck.clone();
        }
        if UPoly::new(coeffs).is_squarefree() {
            return c;
        }
    }
}

/// Rank, cyclicity and simple spectrum at seeded random section points and at `c = 0`.
pub fn freeness_and_rank_check(
    gens: &[SectionOperator],
    n: usize,
    seed: u64,
    points: usize,
) -> FreenessReport {
    let mut sampler = PointSampler::new(seed);
    let dim = gens.first().map_or(1, |g| g.matrix.rows());
    let mut out = Vec::new();
    for _ in 0..points {
        let c = regular_point(&mut sampler, n);
        out.push(check_point(gens, &c, &mut sampler, false));
    }
    out.push(check_point(
        gens,
        &vec![Rational::zero(); n - 1],
        &mut sampler,
        true,
    ));
    FreenessReport { dim, points: out }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationReport {
    pub big_pairs: usize,
    pub big_pairs_commuting: usize,
    pub probes: usize,
    pub probes_commuting_with_medium: usize,
}

impl CommutationReport {
    pub fn pass(&self) -> bool {
        self.big_pairs == self.big_pairs_commuting
            && self.probes == self.probes_commuting_with_medium
    }
}

/// Symbolic commutators among big generators and between medium generators and a probe family.
///
/// The probes are the big generators, their pairwise products, and `D` of those products.
pub fn commutation_check(big: &[KirillovElement], medium: &[KirillovElement]) -> CommutationReport {
    let mut pairs = 0;
    let mut ok = 0;
    for (i, a) in big.iter().enumerate() {
        for b in &big[i + 1..] {
            pairs += 1;
            if commutator(a, b)
                .map(|c| c.matrix.is_zero())
                .unwrap_or(false)
            {
                ok += 1;
            }
        }
    }
    let mut probes: Vec<KirillovElement> = big.to_vec();
    for (i, a) in big.iter().enumerate() {
        for b in &big[i..] {
            probes.push(a.mul(b));
        }
    }
    let (mut count, mut good) = (0, 0);
    for m in medium {
        for p in &probes {
            count += 1;
            if commutator(m, p)
                .map(|c| c.matrix.is_zero())
                .unwrap_or(false)
            {
                good += 1;
            }
        }
    }
    CommutationReport {
        big_pairs: pairs,
        big_pairs_commuting: ok,
        probes: count,
        probes_commuting_with_medium: good,
    }
}

/// `D` applied to pairwise products of the given elements.
pub fn d_probes(ctx: &crate::kirillov::Context, elems: &[KirillovElement]) -> Vec<KirillovElement> {
    let mut out = Vec::new();
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i..] {
            out.push(wei_d(ctx, &a.mul(b)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_deterministic_and_nonzero() {
        let a = PointSampler::new(7).vector(50);
        let b = PointSampler::new(7).vector(50);
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|x| !x.is_zero() && x.abs() <= Rational::from(9)));
    }
}
