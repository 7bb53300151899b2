use serde::Serialize;

use super::{
    h_eigenvalue, torus_transport, torus_weight_space, MultiplicityError, TorusChoice,
    TorusTransport,
};
use crate::exact::{
    limit_of_vector_families, same_span, span_contains, Echelon, LaurentVector, QMatrix,
    QPolynomial, Rational,
};
use crate::kirillov::Context;
use crate::lie::{centralizer, Weight};

#[derive(Clone, Debug, Serialize)]
pub struct BrylinskiFiltration {
    pub lambda: Weight,
    pub torus: TorusChoice,
    pub ambient: Vec<Vec<Rational>>,
    /// `F_p = ker e^{p+1}` inside the weight space, for `p = 0, 1, ...` until it fills up.
    pub pieces: Vec<Vec<Vec<Rational>>>,
    pub dims: Vec<usize>,
    /// `sum_p dim(F_p / F_{p-1}) q^p`.
    pub jump_series: QPolynomial,
}

fn combine(basis: &[Vec<Rational>], coeffs: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); basis[0].len()];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += &(x * c);
        }
    }
    out
}

/// Kernels of powers of `rho(e)` on a subspace, given by a basis.
pub fn e_power_filtration(e: &QMatrix, ambient: &[Vec<Rational>]) -> Vec<Vec<Vec<Rational>>> {
    let k = ambient.len();
    let mut images: Vec<Vec<Rational>> = ambient.to_vec();
    let mut pieces = Vec::new();
    for _ in 0..=e.rows() {
        images = images.iter().map(|v| e.mul_vec(v)).collect();
        let m = QMatrix::from_columns(&images, e.rows());
        let ker: Vec<Vec<Rational>> = m.kernel().iter().map(|c| combine(ambient, c)).collect();
        let full = ker.len() == k;
        pieces.push(ker);
        if full {
            break;
        }
    }
    pieces
}

pub fn brylinski_filtration(
    ctx: &Context,
    lambda: &Weight,
    torus: TorusChoice,
    transport: Option<&TorusTransport>,
) -> Result<BrylinskiFiltration, MultiplicityError> {
    let ambient = torus_weight_space(ctx, lambda, torus, transport)?;
    let e = ctx.rep.rho_of(&ctx.triple.e);
    let pieces = e_power_filtration(&e, &ambient);
    let dims: Vec<usize> = pieces.iter().map(Vec::len).collect();
    let mut jump_series = QPolynomial::zero();
    let mut prev = 0;
    for (p, &d) in dims.iter().enumerate() {
        jump_series.add_term(p as i64, (d - prev) as i64);
        prev = d;
    }
    Ok(BrylinskiFiltration {
        lambda: lambda.clone(),
        torus,
        ambient,
        pieces,
        dims,
        jump_series,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitMethod {
    FiltrationSum,
    ZLimit,
}

/// `lim_e V^mu_lambda` for the torus `G_{h+e}`.
pub fn e_limit(
    ctx: &Context,
    lambda: &Weight,
    method: LimitMethod,
    transport: Option<&TorusTransport>,
) -> Result<Vec<Vec<Rational>>, MultiplicityError> {
    let dim = ctx.dim();
    match method {
        LimitMethod::FiltrationSum => {
            let f = brylinski_filtration(ctx, lambda, TorusChoice::HPlusE, transport)?;
            let e = ctx.rep.rho_of(&ctx.triple.e);
            let mut ech = Echelon::new(dim);
            let mut out = Vec::new();
            for (p, piece) in f.pieces.iter().enumerate() {
                for v in piece {
                    let mut x = v.clone();
                    for _ in 0..p {
                        x = e.mul_vec(&x);
                    }
                    if ech.insert(&x) {
                        out.push(x);
                    }
                }
            }
            Ok(out)
        }
        LimitMethod::ZLimit => {
            let ambient = torus_weight_space(ctx, lambda, TorusChoice::HPlusE, transport)?;
            let cols: Vec<LaurentVector> = ambient.iter().map(|v| h_graded(ctx, v)).collect();
            Ok(limit_of_vector_families(&cols, dim)?)
        }
    }
}

/// Components of `v` in the `h`-eigenbasis, keyed by the exponent of `w` under `rho(H^z)`, `z = w^2`.
fn h_graded(ctx: &Context, v: &[Rational]) -> LaurentVector {
    let mut out = LaurentVector::new();
    for (b, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let m = h_eigenvalue(&ctx.rep.weights[b]);
        let entry = out
            .entry(-m)
            .or_insert_with(|| vec![Rational::zero(); v.len()]);
        entry[b] = x.clone();
    }
    out
}

/// `(V^mu)^{G_e}`, the common kernel of the centralizer of `e`.
pub fn ge_invariants(ctx: &Context) -> Vec<Vec<Rational>> {
    let cent = centralizer(&ctx.g, &ctx.triple.e);
    let dim = ctx.dim();
    let mut rows = Vec::new();
    for x in &cent {
        rows.extend(ctx.rep.rho_of(x).row_vecs());
    }
    if rows.is_empty() {
        return QMatrix::identity(dim).columns();
    }
    QMatrix::from_rows(rows).kernel()
}

/// `rho(H^z) V^mu_lambda` is a common eigenspace of the centralizer of `e + z h`, checked at `z = w^2`.
pub fn z_weight_space_check(
    ctx: &Context,
    lambda: &Weight,
    w: &Rational,
    transport: Option<&TorusTransport>,
) -> Result<bool, MultiplicityError> {
    let ambient = torus_weight_space(ctx, lambda, TorusChoice::HPlusE, transport)?;
    let moved: Vec<Vec<Rational>> = ambient
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .map(|(b, x)| x * &w.pow(-h_eigenvalue(&ctx.rep.weights[b]) as i32))
                .collect()
        })
        .collect();
    let z = w * w;
    let hz: Vec<Rational> = ctx
        .triple
        .e
        .iter()
        .zip(&ctx.triple.h)
        .map(|(e, h)| e + &(&z * h))
        .collect();
    for x in centralizer(&ctx.g, &hz) {
        let Some(r) = ctx.rep.rho_of(&x).restrict(&moved) else {
            return Ok(false);
        };
        let c = r[(0, 0)].clone();
        if r != QMatrix::scalar(moved.len(), &c) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub lambda: Weight,
    pub dim: usize,
    pub methods_agree: bool,
    pub in_invariants: bool,
    /// Only meaningful at `mu_min`.
    pub equals_invariants: Option<bool>,
    pub z_check: bool,
}

impl LimitReport {
    pub fn pass(&self) -> bool {
        self.methods_agree
            && self.in_invariants
            && self.equals_invariants != Some(false)
            && self.z_check
    }
}

pub fn limit_report(
    ctx: &Context,
    lambda: &Weight,
    transport: Option<&TorusTransport>,
) -> Result<LimitReport, MultiplicityError> {
    let owned;
    let t = match transport {
        Some(t) => t,
        None => {
            owned = torus_transport(ctx)?;
            &owned
        }
    };
    let dim = ctx.dim();
    let a = e_limit(ctx, lambda, LimitMethod::FiltrationSum, Some(t))?;
    let b = e_limit(ctx, lambda, LimitMethod::ZLimit, Some(t))?;
    let inv = ge_invariants(ctx);
    let is_min = *lambda == crate::lie::minuscule_min(&ctx.rep.mu);
    Ok(LimitReport {
        lambda: lambda.clone(),
        dim: a.len(),
        methods_agree: same_span(&a, &b, dim),
        in_invariants: span_contains(&inv, &a, dim),
        equals_invariants: is_min.then(|| same_span(&a, &inv, dim)),
        z_check: [Rational::new(1, 2), Rational::from(3)]
            .iter()
            .map(|w| z_weight_space_check(ctx, lambda, w, Some(t)))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .all(|x| x),
    })
}
