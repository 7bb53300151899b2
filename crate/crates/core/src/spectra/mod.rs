//! Skeletons along the principal line, principal spectra, CSV branch data and the twining action.

mod points;
mod twining;

pub use points::*;
pub use twining::*;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::big::{BigError, Calibrated};
use crate::exact::{
    joint_invariant_decomposition, ExactError, JointLabel, MultiPoly, PolyMatrix, QMatrix,
    Rational, VarSet,
};
use crate::kirillov::{char_coefficients, Context};
use crate::lie::Weight;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("recipe {0:?} does not apply to sl_{1}")]
    Recipe(Recipe, usize),
    #[error("weight to medium-eigenvalue map is not injective: {0} and {1} collide")]
    NotInjective(Weight, Weight),
    #[error("medium operator {0} is not diagonal in the weight basis at h")]
    NotDiagonal(String),
    #[error("highest weight {0} is not fixed by the diagram automorphism")]
    NotPalindromic(Weight),
    #[error("intertwiner construction failed: {0}")]
    Intertwiner(String),
    #[error("branch value {value} of {generator} at {param} has residual {residual}")]
    Residual {
        param: String,
        generator: String,
        value: f64,
        residual: f64,
    },
    #[error("bad grid: {0}")]
    Grid(String),
    #[error("quantum numbers are only defined for sl_3")]
    QuantumNumbers,
    #[error(transparent)]
    Big(#[from] BigError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Recipe {
    /// `sl_2` only; the algebra over `c2` itself.
    Identity,
    /// `sl_3` only.
    SetC3Zero,
    /// `c_k := c_k(e + t f)`.
    PullbackEPlusTf,
}

impl Recipe {
    pub fn default_for(n: usize) -> Recipe {
        match n {
            2 => Recipe::Identity,
            3 => Recipe::SetC3Zero,
            _ => Recipe::PullbackEPlusTf,
        }
    }
}

/// Calibrated generators specialized to a one-parameter family of section points.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub n: usize,
    pub recipe: Recipe,
    pub param: String,
    pub param_vars: Arc<VarSet>,
    /// Images of `c_2, ..., c_n`.
    pub c_images: Vec<MultiPoly>,
    pub names: Vec<String>,
    pub operators: Vec<PolyMatrix>,
}

impl Skeleton {
    /// Carries a polynomial matrix over `c_2, ..., c_n` to the parameter line.
    pub fn specialize(&self, m: &PolyMatrix) -> PolyMatrix {
        m.substitute(&self.c_images, &self.param_vars)
    }

    pub fn at(&self, t: &Rational) -> Result<Vec<QMatrix>, ExactError> {
        self.operators
            .iter()
            .map(|m| m.evaluate(std::slice::from_ref(t)))
            .collect()
    }

    /// A parameter value whose section point is `point`, tried among `point[0]` and `1`.
    pub fn principal_parameter(&self, point: &[Rational]) -> Option<Rational> {
        [point[0].clone(), Rational::one()].into_iter().find(|t| {
            self.c_images
                .iter()
                .zip(point)
                .all(|(c, v)| c.evaluate(std::slice::from_ref(t)).is_ok_and(|x| x == *v))
        })
    }

    pub fn commutes(&self) -> Result<bool, ExactError> {
        for (i, a) in self.operators.iter().enumerate() {
            for b in &self.operators[i + 1..] {
                if !a.commutator(b)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `c_k(e + t f)` for `k = 2..n`, as polynomials in `t`.
pub fn pullback_invariants(ctx: &Context, t_vars: &Arc<VarSet>) -> Vec<MultiPoly> {
    let t = MultiPoly::var(t_vars, 0);
    let x: Vec<MultiPoly> = ctx
        .triple
        .e
        .iter()
        .zip(&ctx.triple.f)
        .map(|(e, f)| &MultiPoly::constant(t_vars, e.clone()) + &t.scale(f))
        .collect();
    char_coefficients(&ctx.g)[2..]
        .iter()
        .map(|c| c.substitute(&x, t_vars))
        .collect()
}

pub fn principal_restriction(
    ctx: &Context,
    cal: &Calibrated,
    recipe: Recipe,
) -> Result<Skeleton, SpectraError> {
    let n = ctx.n();
    let (param, images) = match recipe {
        Recipe::Identity | Recipe::SetC3Zero => {
            if (recipe == Recipe::Identity && n != 2) || (recipe == Recipe::SetC3Zero && n != 3) {
                return Err(SpectraError::Recipe(recipe, n));
            }
            let vars = VarSet::new(["c2"]);
            let mut images = vec![MultiPoly::var(&vars, 0)];
            images.extend((3..=n).map(|_| MultiPoly::zero(&vars)));
            ("c2", images)
        }
        Recipe::PullbackEPlusTf => ("t", pullback_invariants(ctx, &VarSet::new(["t"]))),
    };
    let param_vars = images[0].vars().clone();
    let operators = cal
        .section
        .iter()
        .map(|s| s.matrix.substitute(&images, &param_vars))
        .collect();
    Ok(Skeleton {
        n,
        recipe,
        param: param.into(),
        param_vars,
        c_images: images,
        names: cal.names(),
        operators,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightEntry {
    pub weight: Weight,
    pub multiplicity: usize,
    /// Eigenvalues of the medium generators at `h`, in generator order.
    pub medium: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumBlock {
    pub dim: usize,
    /// One label per generator: a rational eigenvalue or an irreducible characteristic factor.
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrincipalSpectrum {
    /// `c_k(h)` for `k = 2..n`.
    pub point: Vec<Rational>,
    pub medium_names: Vec<String>,
    pub table: Vec<WeightEntry>,
    pub generator_names: Vec<String>,
    pub blocks: Vec<SpectrumBlock>,
}

fn label_string(l: &JointLabel) -> String {
    match l {
        JointLabel::Value(v) => v.to_string(),
        JointLabel::Factor(f) => format!("root of {f}"),
    }
}

pub fn principal_spectrum(
    ctx: &Context,
    cal: &Calibrated,
) -> Result<PrincipalSpectrum, SpectraError> {
    let h = &ctx.triple.h;
    let point = char_coefficients(&ctx.g)[2..]
        .iter()
        .map(|c| c.evaluate(h))
        .collect::<Result<Vec<_>, _>>()?;
    let at_h = cal.at_point(h);
    let medium: Vec<usize> = cal
        .specs
        .iter()
        .enumerate()
        .filter(|(_, s)| s.i == 1)
        .map(|(k, _)| k)
        .collect();
    for &k in &medium {
        let m = &at_h[k];
        let diagonal = (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m[(i, j)].is_zero()));
        if !diagonal {
            return Err(SpectraError::NotDiagonal(cal.specs[k].name.clone()));
        }
    }
    let mut table: Vec<WeightEntry> = Vec::new();
    let mut seen: BTreeMap<Vec<Rational>, Weight> = BTreeMap::new();
    for (weight, idx) in ctx.rep.weight_table() {
        let tuple: Vec<Rational> = medium
            .iter()
            .map(|&k| at_h[k][(idx[0], idx[0])].clone())
            .collect();
        if idx.iter().any(|&b| {
            medium
                .iter()
                .zip(&tuple)
                .any(|(&k, v)| at_h[k][(b, b)] != *v)
        }) {
            return Err(SpectraError::NotDiagonal("weight space".into()));
        }
        if let Some(other) = seen.insert(tuple.clone(), weight.clone()) {
            return Err(SpectraError::NotInjective(other, weight));
        }
        table.push(WeightEntry {
            weight,
            multiplicity: idx.len(),
            medium: tuple,
        });
    }
    let blocks = joint_invariant_decomposition(&at_h)?
        .into_iter()
        .map(|b| SpectrumBlock {
            dim: b.dim(),
            labels: b.labels.iter().map(label_string).collect(),
        })
        .collect();
    Ok(PrincipalSpectrum {
        point,
        medium_names: medium.iter().map(|&k| cal.specs[k].name.clone()).collect(),
        table,
        generator_names: cal.names(),
        blocks,
    })
}

/// A polynomial evaluated at pairwise commuting square matrices.
pub fn eval_commuting(p: &MultiPoly, mats: &[QMatrix]) -> QMatrix {
    let d = mats[0].rows();
    let mut out = QMatrix::zeros(d, d);
    for (exps, c) in p.terms() {
        let mut term = QMatrix::scalar(d, c);
        for (m, &e) in mats.iter().zip(exps) {
            for _ in 0..e {
                term = term.mul(m);
            }
        }
        out = out.add(&term);
    }
    out
}

pub const DECUPLET_IDENTITIES: [&str; 2] = [
    "I3(Y - 1)(4I3^2 - 3Y - 4)",
    "16I3^4 - 24I3^2Y - 16I3^2 + 3Y^2 + 6Y",
];
pub const OCTET_IDENTITIES: [&str; 3] = [
    "Y(2I3 - 1)(2I3 + 1)",
    "4I3^3 + 3I3Y^2 - 4I3",
    "16I3^4 - 16I3^2 + 3Y^2",
];

/// `I3 = (M1)_h / 4` and `Y = (M2)_h / 4`.
pub fn quantum_numbers(
    ctx: &Context,
    cal: &Calibrated,
) -> Result<(QMatrix, QMatrix), SpectraError> {
    if ctx.n() != 3 {
        return Err(SpectraError::QuantumNumbers);
    }
    let at_h = cal.at_point(&ctx.triple.h);
    let quarter = Rational::new(1, 4);
    let m1 = cal.index_of("M1").ok_or(SpectraError::QuantumNumbers)?;
    let m2 = cal.index_of("M2").ok_or(SpectraError::QuantumNumbers)?;
    Ok((at_h[m1].scale(&quarter), at_h[m2].scale(&quarter)))
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub vanishes: bool,
}

pub fn verify_quantum_number_identities(
    i3: &QMatrix,
    y: &QMatrix,
    identities: &[&str],
) -> Result<Vec<IdentityCheck>, SpectraError> {
    let vars = VarSet::new(["I3", "Y"]);
    identities
        .iter()
        .map(|text| {
            let p = crate::big::parse_poly(text, &vars)?;
            let m = eval_commuting(&p, &[i3.clone(), y.clone()]);
            Ok(IdentityCheck {
                identity: text.to_string(),
                vanishes: m.is_zero(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big::{calibrated_generators, evaluate_relation, relation};

    fn setup(n: usize, mu: &[i64]) -> (Context, Calibrated) {
        let ctx = Context::new(n, &Weight(mu.to_vec()), 400, None).unwrap();
        let cal = calibrated_generators(&ctx).unwrap();
        (ctx, cal)
    }

    #[test]
    fn sl3_pullback_kills_c3() {
        let (ctx, _) = setup(3, &[1, 0]);
        let t = VarSet::new(["t"]);
        let c = pullback_invariants(&ctx, &t);
        assert_eq!(c[0], MultiPoly::var(&t, 0).scale(&Rational::from(-4)));
        assert!(c[1].is_zero());
    }

    #[test]
    fn decuplet_skeleton_keeps_relations() {
        let (ctx, cal) = setup(3, &[3, 0]);
        for recipe in [Recipe::SetC3Zero, Recipe::PullbackEPlusTf] {
            let sk = principal_restriction(&ctx, &cal, recipe).unwrap();
            assert!(sk.commutes().unwrap());
            let rel =
                relation(&cal, 3, "M1^4 - 6M1^2M2 + 4M1^2c2 - 18M1c3 + 3M2^2 - 6M2c2").unwrap();
            let m = evaluate_relation(&rel, &cal.section, 3);
            assert!(sk.specialize(&m).is_zero());
        }
        assert!(principal_restriction(&ctx, &cal, Recipe::Identity).is_err());
    }

    #[test]
    fn decuplet_principal_spectrum() {
        let (ctx, cal) = setup(3, &[3, 0]);
        let s = principal_spectrum(&ctx, &cal).unwrap();
        assert_eq!(s.point, vec![Rational::from(-4), Rational::zero()]);
        assert_eq!(s.table.len(), 10);
        let top = s
            .table
            .iter()
            .find(|e| e.weight == Weight(vec![3, 0]))
            .unwrap();
        assert_eq!(top.medium, vec![Rational::from(6), Rational::from(4)]);
        let (i3, y) = quantum_numbers(&ctx, &cal).unwrap();
        assert!(
            verify_quantum_number_identities(&i3, &y, &DECUPLET_IDENTITIES)
                .unwrap()
                .iter()
                .all(|c| c.vanishes)
        );
        let bad =
            verify_quantum_number_identities(&i3, &y, &["I3(Y - 1)(5I3^2 - 3Y - 4)"]).unwrap();
        assert!(!bad[0].vanishes);
    }

    #[test]
    fn principal_parameter_per_recipe() {
        let (ctx, cal) = setup(3, &[1, 0]);
        let point = principal_spectrum(&ctx, &cal).unwrap().point;
        let sk = principal_restriction(&ctx, &cal, Recipe::SetC3Zero).unwrap();
        assert_eq!(sk.principal_parameter(&point), Some(Rational::from(-4)));
        let pb = principal_restriction(&ctx, &cal, Recipe::PullbackEPlusTf).unwrap();
        assert_eq!(pb.principal_parameter(&point), Some(Rational::one()));
        assert_eq!(
            sk.principal_parameter(&[Rational::from(-4), Rational::one()]),
            None
        );
    }

    #[test]
    fn octet_zero_block() {
        let (ctx, cal) = setup(3, &[1, 1]);
        let s = principal_spectrum(&ctx, &cal).unwrap();
        assert_eq!(s.table.len(), 7);
        let n1 = cal.at_point(&ctx.triple.h)[cal.index_of("N1").unwrap()].clone();
        let zero = ctx.rep.weight_space(&Weight(vec![0, 0]));
        let r = n1.restrict(&zero).unwrap();
        assert_eq!(r.mul(&r), QMatrix::scalar(2, &Rational::from(48)));
        assert!(s
            .blocks
            .iter()
            .any(|b| b.dim == 2 && b.labels.iter().any(|l| l.starts_with("root of"))));
        let (i3, y) = quantum_numbers(&ctx, &cal).unwrap();
        assert!(verify_quantum_number_identities(&i3, &y, &OCTET_IDENTITIES)
            .unwrap()
            .iter()
            .all(|c| c.vanishes));
    }

    #[test]
    fn eval_commuting_matches_scalars() {
        let vars = VarSet::new(["a", "b"]);
        let p = crate::big::parse_poly("a^2 b - 3b + 1/2", &vars).unwrap();
        let a = QMatrix::diagonal(&[Rational::from(2), Rational::from(-1)]);
        let b = QMatrix::diagonal(&[Rational::from(5), Rational::from(7)]);
        let m = eval_commuting(&p, &[a, b]);
        assert_eq!(m[(0, 0)], Rational::new(11, 2));
        assert_eq!(m[(1, 1)], Rational::new(-27, 2));
    }
}
