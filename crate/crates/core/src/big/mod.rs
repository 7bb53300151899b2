//! The big algebra as a module over `Q[c_2..c_n]`: section restriction,
//! calibration, Hilbert series and degree-truncated relation search.

mod calibrate;
mod checks;
mod expr;
mod hilbert;
mod relations;

pub use calibrate::{
    calibrate_generators, principal_top_eigenvalue, relation, small_to_d_ratio, Calibrated,
    CalibrationEntry,
};
pub use checks::{
    algebra_span, commutation_check, d_probes, freeness_and_rank_check, regular_point,
    CommutationReport, FreenessReport, PointCheck, PointSampler,
};
pub use expr::parse_poly;
pub use hilbert::{
    closed_form_numerator, graded_closure, hilbert_series, HilbertReport, HilbertSeries,
};
pub use relations::{
    derive_relations, ideal_dimension, monomials_of_degree, relation_degree, verify_presentation,
    DegreeData, GeneratorEntry, PresentationReport, RelationCheck, RelationFile, RelationSearch,
    RelationTerm,
};

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{ExactError, MultiPoly, PolyMatrix, QMatrix, Rational, VarSet};
use crate::kirillov::{big_operator, Context, KirillovElement, KirillovError};
use crate::lie::{section_coordinates, section_vars};

#[derive(Debug, Error)]
pub enum BigError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Kirillov(#[from] KirillovError),
    #[error("generator {0} needs scalar zero to match its anchor")]
    DegenerateGenerator(String),
    #[error("monomial span did not reach the full module: {got} < {expected}")]
    GenerationFailure { got: usize, expected: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
}

/// A Kirillov element restricted to the companion section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionOperator {
    pub label: String,
    pub matrix: PolyMatrix,
    pub degree: i64,
}

impl SectionOperator {
    pub fn evaluate_at(&self, c: &[Rational]) -> Result<QMatrix, ExactError> {
        self.matrix.evaluate(c)
    }

    pub fn scale(&self, s: &Rational) -> SectionOperator {
        SectionOperator {
            label: self.label.clone(),
            matrix: self.matrix.scale(s),
            degree: self.degree,
        }
    }
}

/// Degrees of `c_2..c_n` under the `C^*` grading.
pub fn c_weights(n: usize) -> Vec<i64> {
    (2..=n as i64).collect()
}

/// Substitutes the companion-section coordinates into a Kirillov element.
pub fn restrict_to_section(ctx: &Context, a: &KirillovElement) -> SectionOperator {
    let images = section_coordinates(&ctx.g);
    let target = section_vars(ctx.n());
    let matrix = a.matrix.substitute(&images, &target);
    let degree = a
        .degree
        .or_else(|| matrix.homogeneous_degree(&c_weights(ctx.n())))
        .unwrap_or(0);
    SectionOperator {
        label: a.label.clone(),
        matrix,
        degree,
    }
}

/// Index data of one generator `D^i(c_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub i: usize,
    pub k: usize,
    pub degree: i64,
}

/// Generators in the fixed order `M_1 < M_2 < ... < N_1 < ...`.
pub fn generator_specs(n: usize) -> Vec<GeneratorSpec> {
    let mut out = Vec::new();
    for i in 1..n {
        for k in i + 1..=n {
            let name = if i == 1 {
                format!("M{}", k - 1)
            } else if n == 3 && i == 2 && k == 3 {
                "N1".to_string()
            } else {
                format!("B{i}_{}", k - i)
            };
            out.push(GeneratorSpec {
                name,
                i,
                k,
                degree: (k - i) as i64,
            });
        }
    }
    out
}

/// Uncalibrated generators `D^i(c_k Id)` restricted to the section.
pub fn raw_generators(
    ctx: &Context,
) -> Result<Vec<(GeneratorSpec, KirillovElement, SectionOperator)>, BigError> {
    let specs = generator_specs(ctx.n());
    let mut out = Vec::new();
    for s in specs {
        let mut ke = big_operator(ctx, s.i, s.k)?;
        ke.label = s.name.clone();
        let so = restrict_to_section(ctx, &ke);
        out.push((s, ke, so));
    }
    Ok(out)
}

/// Polynomial ring in generator names followed by `c_2..c_n`.
pub fn algebra_vars(names: &[String], n: usize) -> Arc<VarSet> {
    let mut all: Vec<String> = names.to_vec();
    all.extend((2..=n).map(|k| format!("c{k}")));
    VarSet::new(all)
}

/// Evaluates a polynomial in generators and `c`'s to a matrix over `Q[c]`.
pub fn evaluate_relation(rel: &MultiPoly, gens: &[SectionOperator], n: usize) -> PolyMatrix {
    let cvars = section_vars(n);
    let g = gens.len();
    assert_eq!(rel.vars().len(), g + n - 1, "relation ring mismatch");
    let dim = gens.first().map_or(1, |s| s.matrix.rows());
    let mut powers: Vec<Vec<PolyMatrix>> = vec![Vec::new(); g];
    let mut out = PolyMatrix::zeros(dim, dim, &cvars);
    for (e, coeff) in rel.terms() {
        let mut cexp = vec![0; n - 1];
        cexp.copy_from_slice(&e[g..]);
        let scalar = MultiPoly::monomial(&cvars, cexp, coeff.clone());
        let mut m: Option<PolyMatrix> = None;
        for (j, &k) in e[..g].iter().enumerate() {
            if k == 0 {
                continue;
            }
            let cache = &mut powers[j];
            while cache.len() < k as usize {
                let next = match cache.last() {
                    Some(p) => p.mul(&gens[j].matrix).unwrap(),
                    None => gens[j].matrix.clone(),
                };
                cache.push(next);
            }
            let p = &cache[k as usize - 1];
            m = Some(match m {
                None => p.clone(),
                Some(acc) => acc.mul(p).unwrap(),
            });
        }
        let term = match m {
            None => PolyMatrix::scalar(dim, &scalar),
            Some(mm) => mm.scale_poly(&scalar),
        };
        out = out.add(&term).unwrap();
    }
    out
}

/// Canonical generators, calibrated.
pub fn calibrated_generators(ctx: &Context) -> Result<Calibrated, BigError> {
    calibrate_generators(ctx, raw_generators(ctx)?)
}
