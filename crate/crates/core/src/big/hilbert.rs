//! Hilbert series of the big algebra, from the fiber at `e` and from the product formula.

use serde::Serialize;

use crate::exact::{Echelon, QMatrix, QPolynomial};
use crate::kirillov::Context;
use crate::lie::{RootDatum, Weight};

#[derive(Clone, Debug, Serialize)]
pub struct HilbertSeries {
    pub numerator: QPolynomial,
    pub denominator_exponents: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertReport {
    pub fiber: HilbertSeries,
    pub closed_form: QPolynomial,
    pub dim: usize,
    pub methods_agree: bool,
    pub rank_matches_dim: bool,
    /// Each generator at `e` has `ad rho(h)`-weight twice its degree.
    pub grading_consistent: bool,
}

impl HilbertReport {
    pub fn pass(&self) -> bool {
        self.methods_agree && self.rank_matches_dim && self.grading_consistent
    }
}

/// `prod_{alpha > 0} (1 - q^{(mu+rho, alpha)}) / (1 - q^{(rho, alpha)})`.
pub fn closed_form_numerator(mu: &Weight) -> QPolynomial {
    let rd = RootDatum::new(mu.rank() + 1);
    let shifted = mu.add(&rd.rho());
    let mut num = QPolynomial::one();
    let mut den = QPolynomial::one();
    for &r in &rd.positive_roots {
        num =
            num.mul(&QPolynomial::one().add(&QPolynomial::monomial(rd.pair_root(&shifted, r), -1)));
        den = den
            .mul(&QPolynomial::one().add(&QPolynomial::monomial(rd.pair_root(&rd.rho(), r), -1)));
    }
    num.div_exact(&den).expect("Weyl numerator is divisible")
}

fn flatten(m: &QMatrix) -> Vec<crate::exact::Rational> {
    m.data().to_vec()
}

/// Graded dimensions of the algebra generated by commuting matrices with given degrees,
/// up to `max_degree`, together with a graded basis.
pub fn graded_closure(gens: &[(QMatrix, i64)], dim: usize, max_degree: i64) -> Vec<Vec<QMatrix>> {
    let mut levels: Vec<Vec<QMatrix>> = vec![vec![QMatrix::identity(dim)]];
    for d in 1..=max_degree {
        let mut ech = Echelon::new(dim * dim);
        let mut basis = Vec::new();
        for (g, dg) in gens {
            if *dg > d || *dg <= 0 {
                continue;
            }
            for b in &levels[(d - dg) as usize] {
                let p = g.mul(b);
                if ech.insert(&flatten(&p)) {
                    basis.push(p);
                }
            }
        }
        levels.push(basis);
    }
    levels
}

/// Both Hilbert numerators and their consistency checks.
pub fn hilbert_series(ctx: &Context, gens_at_e: &[(QMatrix, i64)]) -> HilbertReport {
    let mu = &ctx.rep.mu;
    let top = super::calibrate::principal_top_eigenvalue(mu);
    let levels = graded_closure(gens_at_e, ctx.dim(), top);
    let mut numerator = QPolynomial::zero();
    for (d, l) in levels.iter().enumerate() {
        numerator.add_term(d as i64, l.len() as i64);
    }
    let closed = closed_form_numerator(mu);
    let rh = ctx.rep.rho_of(&ctx.triple.h);
    let grading_consistent = gens_at_e.iter().all(|(g, d)| {
        let lhs = rh.commutator(g);
        lhs == g.scale(&crate::exact::Rational::from(2 * d))
    });
    HilbertReport {
        dim: ctx.dim(),
        methods_agree: numerator == closed,
        rank_matches_dim: numerator.at_one() == ctx.dim() as i64,
        fiber: HilbertSeries {
            numerator,
            denominator_exponents: ctx.roots.degrees.clone(),
        },
        closed_form: closed,
        grading_consistent,
    }
}
