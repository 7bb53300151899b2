use std::sync::Arc;

use serde::Serialize;

use super::SpectraError;
use crate::big::{
    algebra_vars, calibrated_generators, derive_relations, ideal_dimension, monomials_of_degree,
    parse_poly, Calibrated,
};
use crate::exact::{
    primitive_integer_coeffs, MultiPoly, PolyMatrix, QMatrix, QPolynomial, Rational, UPoly, VarSet,
};
use crate::kirillov::{char_coefficients, Context, KirillovElement};
use crate::lie::{dominant_weights_below, BasisElement, LieAlgebra, Weight};

/// Antidiagonal `J` with alternating signs, so that `X -> -J X^T J^-1` fixes the standard pinning.
pub fn pinning_matrix(n: usize) -> QMatrix {
    let mut j = QMatrix::zeros(n, n);
    for b in 0..n {
        j[(n - 1 - b, b)] = Rational::from(if b % 2 == 0 { 1 } else { -1 });
    }
    j
}

/// The diagram automorphism as a matrix on coordinates of `g`.
pub fn sigma_on_algebra(g: &LieAlgebra) -> Result<QMatrix, SpectraError> {
    let j = pinning_matrix(g.n);
    let jinv = j.inverse()?;
    let mut cols = Vec::with_capacity(g.dim());
    for a in 0..g.dim() {
        let x = g.element(&g.unit(a));
        let y = j.mul(&x.transpose()).mul(&jinv).scale(&-Rational::one());
        cols.push(
            g.coords(&y)
                .map_err(|e| SpectraError::Intertwiner(e.to_string()))?,
        );
    }
    Ok(QMatrix::from_columns(&cols, g.dim()))
}

pub fn is_sigma_invariant(mu: &Weight) -> bool {
    mu.0.iter().eq(mu.0.iter().rev())
}

/// `S` on `V^mu` with `S rho(X) S^-1 = rho(sigma X)` and `S` fixing the highest-weight vector.
pub fn intertwiner(ctx: &Context, sigma: &QMatrix) -> Result<QMatrix, SpectraError> {
    let mu = &ctx.rep.mu;
    if !is_sigma_invariant(mu) {
        return Err(SpectraError::NotPalindromic(mu.clone()));
    }
    let g = &ctx.g;
    let lowered: Vec<QMatrix> = (0..ctx.n() - 1)
        .map(|i| {
            let a = g
                .index_of(BasisElement::E(i + 1, i))
                .expect("lowering element");
            ctx.rep.rho_of(&sigma.mul_vec(&g.unit(a)))
        })
        .collect();
    let dim = ctx.dim();
    let mut cols = Vec::with_capacity(dim);
    for word in &ctx.rep.basis_words {
        let mut v = vec![Rational::zero(); dim];
        v[0] = Rational::one();
        for &i in word {
            v = lowered[i - 1].mul_vec(&v);
        }
        cols.push(v);
    }
    let s = QMatrix::from_columns(&cols, dim);
    for a in 0..g.dim() {
        let lhs = s.mul(&ctx.rep.rho[a]);
        let rhs = ctx.rep.rho_of(&sigma.mul_vec(&g.unit(a))).mul(&s);
        if lhs != rhs {
            return Err(SpectraError::Intertwiner(format!(
                "fails on {}",
                g.label(a)
            )));
        }
    }
    Ok(s)
}

/// `(sigma F)(x) = S F(sigma^-1 x) S^-1`.
pub fn sigma_on_element(
    ctx: &Context,
    sigma: &QMatrix,
    s: &QMatrix,
    f: &KirillovElement,
) -> Result<PolyMatrix, SpectraError> {
    let vars = ctx.g.coordinate_vars();
    let images = linear_images(&sigma.inverse()?, vars);
    let pulled = f.matrix.substitute(&images, vars);
    Ok(pulled.left_mul_const(s).right_mul_const(&s.inverse()?))
}

fn linear_images(m: &QMatrix, vars: &Arc<VarSet>) -> Vec<MultiPoly> {
    (0..m.rows())
        .map(|a| {
            let mut p = MultiPoly::zero(vars);
            for b in 0..m.cols() {
                if !m[(a, b)].is_zero() {
                    p.add_scaled(&MultiPoly::var(vars, b), &m[(a, b)]);
                }
            }
            p
        })
        .collect()
}

/// `+1` or `-1` if `sigma F = +-F`.
pub fn sigma_sign(image: &PolyMatrix, f: &PolyMatrix) -> Option<i64> {
    if image == f {
        Some(1)
    } else if image.scale(&-Rational::one()) == *f {
        Some(-1)
    } else {
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaAction {
    pub fixes_pinning: bool,
    pub involution: bool,
    /// `(name, eigenvalue)`; `None` if the generator is not an eigenvector.
    pub generators: Vec<(String, Option<i64>)>,
    /// `(k, sign)` with `c_k(sigma x) = sign * c_k(x)`.
    pub invariants: Vec<(usize, Option<i64>)>,
}

pub fn sigma_action(
    ctx: &Context,
    cal: &Calibrated,
) -> Result<(SigmaAction, QMatrix, QMatrix), SpectraError> {
    let sigma = sigma_on_algebra(&ctx.g)?;
    let t = &ctx.triple;
    let fixes_pinning =
        sigma.mul_vec(&t.e) == t.e && sigma.mul_vec(&t.f) == t.f && sigma.mul_vec(&t.h) == t.h;
    let involution = sigma.mul(&sigma) == QMatrix::identity(ctx.g.dim());
    let s = intertwiner(ctx, &sigma)?;
    let mut generators = Vec::new();
    for (spec, k) in cal.specs.iter().zip(&cal.kirillov) {
        let img = sigma_on_element(ctx, &sigma, &s, k)?;
        generators.push((spec.name.clone(), sigma_sign(&img, &k.matrix)));
    }
    let vars = ctx.g.coordinate_vars();
    let images = linear_images(&sigma, vars);
    let invariants = char_coefficients(&ctx.g)
        .iter()
        .enumerate()
        .skip(2)
        .map(|(k, c)| {
            let img = c.substitute(&images, vars);
            let sign = if img == *c {
                Some(1)
            } else if img == c.scale(&-Rational::one()) {
                Some(-1)
            } else {
                None
            };
            (k, sign)
        })
        .collect();
    Ok((
        SigmaAction {
            fixes_pinning,
            involution,
            generators,
            invariants,
        },
        sigma,
        s,
    ))
}

/// Minimal generators, in increasing degree, of the ideal spanned by `rels`.
fn minimal_generators(rels: &[(i64, MultiPoly)], weights: &[i64]) -> Vec<(i64, MultiPoly)> {
    let mut sorted: Vec<(i64, MultiPoly)> =
        rels.iter().filter(|(_, p)| !p.is_zero()).cloned().collect();
    sorted.sort_by_key(|(d, _)| *d);
    let mut kept: Vec<(i64, MultiPoly)> = Vec::new();
    for (d, p) in sorted {
        let before = ideal_dimension(&kept, weights, d);
        kept.push((d, p));
        if ideal_dimension(&kept, weights, d) == before {
            kept.pop();
        }
    }
    kept.into_iter().map(|(d, p)| (d, normalize(&p))).collect()
}

fn normalize(p: &MultiPoly) -> MultiPoly {
    let coeffs: Vec<Rational> = p.terms().values().cloned().collect();
    let ints = primitive_integer_coeffs(&UPoly::new(coeffs));
    let mut out = MultiPoly::zero(p.vars());
    for ((e, _), c) in p.terms().iter().zip(ints) {
        out.add_term(e.clone(), Rational::from(c));
    }
    out
}

fn quotient_dims(rels: &[(i64, MultiPoly)], weights: &[i64], max_degree: i64) -> Vec<usize> {
    (0..=max_degree)
        .map(|d| monomials_of_degree(weights, d).len() - ideal_dimension(rels, weights, d))
        .collect()
}

fn same_ideal(
    a: &[(i64, MultiPoly)],
    b: &[(i64, MultiPoly)],
    weights: &[i64],
    max_degree: i64,
) -> bool {
    let both: Vec<(i64, MultiPoly)> = a.iter().chain(b).cloned().collect();
    (0..=max_degree).all(|d| {
        let u = ideal_dimension(&both, weights, d);
        ideal_dimension(a, weights, d) == u && ideal_dimension(b, weights, d) == u
    })
}

/// Sets the variables of `odd` to zero and re-expresses over the remaining ones.
fn kill_odd(p: &MultiPoly, odd: &[usize], even_vars: &Arc<VarSet>) -> MultiPoly {
    let zeros: Vec<(usize, Rational)> = odd.iter().map(|&i| (i, Rational::zero())).collect();
    p.specialize(&zeros)
        .rebase(even_vars)
        .expect("odd variables removed")
}

/// The hard-coded dictionary `B^{w1}(sl_2) -> B^{w1+w2}(sl_3)_sigma`: `M1 -> M1`, `c2 -> 4 c2`.
pub const DICTIONARY: [(&str, &str); 2] = [("M1", "M1"), ("c2", "4c2")];

pub const OCTET_LITERAL_RELATIONS: [&str; 5] = [
    "3M1^2 + N1^2 + 12c2",
    "M1^3N1 + c2M1N1 - 9c3M1",
    "M1^2M2 + c2M2 + 3c3M1",
    "M1^4 + 4c2M1^2 + 3M2^2",
    "3M1M2^2 + 9c3M2 - c2M1^3 - 4c2^2M1",
];

#[derive(Clone, Debug, Serialize)]
pub struct JantzenEntry {
    pub lambda: Weight,
    pub trace: Rational,
    /// Dimension of the matching weight space of the folded module.
    pub expected: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwiningReport {
    pub sigma: SigmaAction,
    pub even_variables: Vec<String>,
    pub coinvariant_relations: Vec<String>,
    pub coinvariant_hilbert: QPolynomial,
    pub target_relations: Vec<String>,
    pub target_hilbert: QPolynomial,
    pub hilbert_match: bool,
    pub relations_match: bool,
    pub fixed_scheme_relations: Vec<String>,
    pub fixed_scheme_single_parabola: bool,
    pub jantzen: Vec<JantzenEntry>,
    pub max_degree: i64,
}

impl TwiningReport {
    pub fn pass(&self) -> bool {
        let s = &self.sigma;
        s.fixes_pinning
            && s.involution
            && s.generators.iter().all(|(_, e)| e.is_some())
            && self.hilbert_match
            && self.relations_match
            && self.fixed_scheme_single_parabola
            && self
                .jantzen
                .iter()
                .all(|j| j.trace == Rational::from(j.expected as i64))
    }

    pub fn sign_of(&self, name: &str) -> Option<i64> {
        self.sigma
            .generators
            .iter()
            .find(|(n, _)| n == name)
            .and_then(|(_, e)| *e)
    }
}

fn sl2_weight_dim(top: i64, a: i64) -> usize {
    usize::from(a.abs() <= top && (top - a) % 2 == 0)
}

/// The `sl_3 -> sl_2` instance for a palindromic highest weight `(m, m)`.
pub fn twining_report(
    ctx: &Context,
    cal: &Calibrated,
    max_degree: i64,
) -> Result<TwiningReport, SpectraError> {
    let n = ctx.n();
    if n != 3 {
        return Err(SpectraError::Recipe(super::Recipe::PullbackEPlusTf, n));
    }
    let (sigma, _, s) = sigma_action(ctx, cal)?;
    let names = cal.names();
    let vars = algebra_vars(&names, n);
    let mut weights: Vec<i64> = cal.specs.iter().map(|sp| sp.degree).collect();
    weights.extend(2..=n as i64);
    let mut odd: Vec<usize> = Vec::new();
    for (i, (_, e)) in sigma.generators.iter().enumerate() {
        if *e != Some(1) {
            odd.push(i);
        }
    }
    for (k, e) in &sigma.invariants {
        if *e != Some(1) {
            odd.push(names.len() + k - 2);
        }
    }
    let even: Vec<usize> = (0..vars.len()).filter(|i| !odd.contains(i)).collect();
    let even_names: Vec<String> = even.iter().map(|&i| vars.name(i).to_string()).collect();
    let even_vars = VarSet::new(even_names.clone());
    let even_weights: Vec<i64> = even.iter().map(|&i| weights[i]).collect();

    let search = derive_relations(&cal.section, &names, n, max_degree);
    let killed: Vec<(i64, MultiPoly)> = search
        .relations
        .iter()
        .map(|(d, p)| (*d, kill_odd(p, &odd, &even_vars)))
        .collect();
    let coinv = minimal_generators(&killed, &even_weights);
    let coinvariant_hilbert = QPolynomial::from_coeffs(
        &quotient_dims(&coinv, &even_weights, max_degree)
            .iter()
            .map(|&x| x as i64)
            .collect::<Vec<_>>(),
    );

    let m = ctx.rep.mu.0[0];
    let target_ctx = Context::new(2, &Weight(vec![m]), ctx.rep.dim().max(400), None)
        .map_err(|e| SpectraError::Intertwiner(e.to_string()))?;
    let target_cal = calibrated_generators(&target_ctx)?;
    let target_names = target_cal.names();
    let target_search = derive_relations(&target_cal.section, &target_names, 2, max_degree);
    let target_weights = target_search.weights.clone();
    let target_rels = minimal_generators(&target_search.relations, &target_weights);
    let target_hilbert = QPolynomial::from_coeffs(
        &quotient_dims(&target_rels, &target_weights, max_degree)
            .iter()
            .map(|&x| x as i64)
            .collect::<Vec<_>>(),
    );
    let dict: Vec<MultiPoly> = target_search
        .vars
        .vars()
        .iter()
        .map(|v| {
            let img = DICTIONARY
                .iter()
                .find(|(a, _)| *a == v.name)
                .map_or(v.name.as_str(), |(_, b)| *b);
            parse_poly(img, &even_vars)
        })
        .collect::<Result<_, _>>()?;
    let mapped: Vec<(i64, MultiPoly)> = target_rels
        .iter()
        .map(|(d, p)| (*d, p.substitute(&dict, &even_vars)))
        .collect();
    let relations_match = same_ideal(&coinv, &mapped, &even_weights, max_degree);

    let fixed: Vec<(i64, MultiPoly)> = OCTET_LITERAL_RELATIONS
        .iter()
        .map(|t| {
            let p = parse_poly(t, &vars)?;
            let d = crate::big::relation_degree(&p, &weights).unwrap_or(0);
            Ok((d, kill_odd(&p, &odd, &even_vars)))
        })
        .collect::<Result<_, crate::exact::ExactError>>()?;
    let fixed_min = minimal_generators(&fixed, &even_weights);
    let parabola = vec![(2, parse_poly("M1^2 + 4c2", &even_vars)?)];
    let fixed_scheme_single_parabola = ctx.rep.mu == Weight(vec![1, 1])
        && fixed_min.len() == 1
        && same_ideal(&fixed_min, &parabola, &even_weights, max_degree);

    let mut jantzen = Vec::new();
    for lam in dominant_weights_below(&ctx.rep.mu) {
        if !is_sigma_invariant(&lam) {
            continue;
        }
        let space = ctx.rep.weight_space(&lam);
        let r = s
            .restrict(&space)
            .ok_or_else(|| SpectraError::Intertwiner("weight space not preserved".into()))?;
        jantzen.push(JantzenEntry {
            lambda: lam.clone(),
            trace: r.trace(),
            expected: sl2_weight_dim(m, lam.0[0]),
        });
    }

    Ok(TwiningReport {
        sigma,
        even_variables: even_names,
        coinvariant_relations: coinv.iter().map(|(_, p)| p.to_string()).collect(),
        hilbert_match: coinvariant_hilbert == target_hilbert,
        coinvariant_hilbert,
        target_relations: target_rels.iter().map(|(_, p)| p.to_string()).collect(),
        target_hilbert,
        relations_match,
        fixed_scheme_relations: fixed_min.iter().map(|(_, p)| p.to_string()).collect(),
        fixed_scheme_single_parabola,
        jantzen,
        max_degree,
    })
}
