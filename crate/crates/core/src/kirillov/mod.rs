//! Equivariant `End(V)`-valued polynomials on `sl_n`: the small, medium and big
//! operators and the derivation `D`.

use std::path::Path;

use thiserror::Error;

use crate::exact::{MultiPoly, PolyMatrix, QMatrix, Rational};
use crate::lie::{build_sl, LieAlgebra, LieError, PrincipalTriple, RootDatum, Weight};
use crate::rep::{load_or_build, RepError, Representation};

#[derive(Debug, Error)]
pub enum KirillovError {
    #[error("invariant c_{k} is undefined for sl_{n}")]
    InvariantIndex { n: usize, k: usize },
    #[error("big operator B_({i},{k}) needs 0 < i < k <= {n}")]
    BigIndex { n: usize, i: usize, k: usize },
    #[error("operators belong to different representations")]
    RepMismatch,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Everything needed to work with one representation of one `sl_n`.
#[derive(Clone, Debug)]
pub struct Context {
    pub g: LieAlgebra,
    pub roots: RootDatum,
    pub triple: PrincipalTriple,
    pub rep: Representation,
    /// `rho(X^i)` for the Killing-dual basis.
    pub rho_killing_dual: Vec<QMatrix>,
    /// `rho(X^i)` for the trace-dual basis.
    pub rho_trace_dual: Vec<QMatrix>,
}

impl Context {
    pub fn new(
        n: usize,
        mu: &Weight,
        dim_bound: usize,
        cache: Option<&Path>,
    ) -> Result<Self, KirillovError> {
        let (g, roots, triple) = build_sl(n)?;
        if mu.rank() != n - 1 {
            return Err(LieError::WeightArity(mu.to_string(), mu.rank(), n - 1).into());
        }
        let rep = load_or_build(&g, mu, dim_bound, cache)?;
        Ok(Self::from_parts(g, roots, triple, rep))
    }

    pub fn from_parts(
        g: LieAlgebra,
        roots: RootDatum,
        triple: PrincipalTriple,
        rep: Representation,
    ) -> Self {
        let image = |ms: &[QMatrix]| -> Vec<QMatrix> {
            ms.iter()
                .map(|m| rep.rho_of(&g.coords(m).expect("dual basis lies in sl_n")))
                .collect()
        };
        let rho_killing_dual = image(&g.killing_dual);
        let rho_trace_dual = image(&g.trace_dual);
        Context {
            g,
            roots,
            triple,
            rep,
            rho_killing_dual,
            rho_trace_dual,
        }
    }

    pub fn n(&self) -> usize {
        self.g.n
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KirillovElement {
    pub label: String,
    pub matrix: PolyMatrix,
    pub degree: Option<i64>,
}

impl KirillovElement {
    pub fn new(label: impl Into<String>, matrix: PolyMatrix) -> Self {
        let degree = matrix.homogeneous_degree(&vec![1; matrix.vars().len()]);
        KirillovElement {
            label: label.into(),
            matrix,
            degree,
        }
    }

    pub fn evaluate(&self, x: &[Rational]) -> QMatrix {
        self.matrix
            .evaluate(x)
            .expect("point has Lie-algebra arity")
    }

    pub fn scale(&self, c: &Rational) -> KirillovElement {
        KirillovElement {
            label: self.label.clone(),
            matrix: self.matrix.scale(c),
            degree: self.degree,
        }
    }

    pub fn mul(&self, o: &KirillovElement) -> KirillovElement {
        KirillovElement::new(
            format!("{}*{}", self.label, o.label),
            self.matrix.mul(&o.matrix).expect("same ring"),
        )
    }
}

/// `c_k(A)`, the coefficient of `t^{n-k}` in `det(t - A)` with `A = sum x_i X_i`.
pub fn invariant_ck(g: &LieAlgebra, k: usize) -> Result<MultiPoly, KirillovError> {
    let n = g.n;
    if k < 2 || k > n {
        return Err(KirillovError::InvariantIndex { n, k });
    }
    Ok(char_coefficients(g).swap_remove(k))
}

/// All coefficients `a_0 = 1, a_1, ..., a_n` of `det(t - A)` by Faddeev-LeVerrier.
pub fn char_coefficients(g: &LieAlgebra) -> Vec<MultiPoly> {
    let vars = g.coordinate_vars();
    let n = g.n;
    let xs: Vec<MultiPoly> = (0..g.dim()).map(|i| MultiPoly::var(vars, i)).collect();
    let a = PolyMatrix::linear_combination(&xs, &g.basis, vars);
    let mut coeffs = vec![MultiPoly::one(vars)];
    let mut m = PolyMatrix::zeros(n, n, vars);
    for k in 1..=n {
        m = a
            .mul(&m)
            .unwrap()
            .add(&PolyMatrix::scalar(n, &coeffs[k - 1]))
            .unwrap();
        let am = a.mul(&m).unwrap();
        let mut tr = MultiPoly::zero(vars);
        for i in 0..n {
            tr.add_scaled(am.get(i, i), &Rational::one());
        }
        coeffs.push(tr.scale(&Rational::new(-1, k as i64)));
    }
    coeffs
}

/// `A -> rho(A)`.
pub fn small_operator(ctx: &Context) -> KirillovElement {
    let vars = ctx.g.coordinate_vars();
    let xs: Vec<MultiPoly> = (0..ctx.g.dim()).map(|i| MultiPoly::var(vars, i)).collect();
    KirillovElement::new(
        "M1",
        PolyMatrix::linear_combination(&xs, &ctx.rep.rho, vars),
    )
}

/// `A -> rho(grad c_k(A))`, gradient taken with the trace form.
pub fn medium_operator(ctx: &Context, k: usize) -> Result<KirillovElement, KirillovError> {
    let c = invariant_ck(&ctx.g, k)?;
    let grads: Vec<MultiPoly> = (0..ctx.g.dim()).map(|i| c.partial_derivative(i)).collect();
    let m = PolyMatrix::linear_combination(&grads, &ctx.rho_trace_dual, ctx.g.coordinate_vars());
    Ok(KirillovElement::new(format!("medium_{k}"), m))
}

/// `D(F) = 1/2 sum_i rho(X^i) dF/dx_i`, with the Killing-dual basis.
pub fn wei_d(ctx: &Context, a: &KirillovElement) -> KirillovElement {
    let half = Rational::new(1, 2);
    let vars = ctx.g.coordinate_vars();
    let d = ctx.dim();
    let mut out = PolyMatrix::zeros(d, d, vars);
    for (i, r) in ctx.rho_killing_dual.iter().enumerate() {
        let di = a.matrix.partial_derivative(i);
        if di.is_zero() {
            continue;
        }
        out = out.add(&di.left_mul_const(r)).unwrap();
    }
    KirillovElement::new(format!("D({})", a.label), out.scale(&half))
}

/// `p * Id` for a scalar invariant.
pub fn scalar_element(ctx: &Context, label: &str, p: &MultiPoly) -> KirillovElement {
    KirillovElement::new(label, PolyMatrix::scalar(ctx.dim(), p))
}

/// `B_{i,k-i} = D^i(c_k Id)`, unnormalized.
pub fn big_operator(ctx: &Context, i: usize, k: usize) -> Result<KirillovElement, KirillovError> {
    let n = ctx.n();
    if i == 0 || i >= k || k > n {
        return Err(KirillovError::BigIndex { n, i, k });
    }
    let c = invariant_ck(&ctx.g, k)?;
    // the first application is a plain linear combination
    let half = Rational::new(1, 2);
    let grads: Vec<MultiPoly> = (0..ctx.g.dim())
        .map(|j| c.partial_derivative(j).scale(&half))
        .collect();
    let mut cur = KirillovElement::new(
        format!("D(c{k})"),
        PolyMatrix::linear_combination(&grads, &ctx.rho_killing_dual, ctx.g.coordinate_vars()),
    );
    for _ in 1..i {
        cur = wei_d(ctx, &cur);
    }
    cur.label = if i == 1 {
        format!("D(c{k})")
    } else {
        format!("D^{i}(c{k})")
    };
    Ok(cur)
}

/// Infinitesimal equivariance: `dF_x([X, x]) = [rho(X), F(x)]` for every basis element `X`.
pub fn equivariance_check(ctx: &Context, a: &KirillovElement) -> bool {
    let g = &ctx.g;
    let vars = g.coordinate_vars();
    let partials: Vec<PolyMatrix> = (0..g.dim())
        .map(|k| a.matrix.partial_derivative(k))
        .collect();
    (0..g.dim()).all(|j| {
        // the vector field x -> [X_j, x] has k-th component sum_i x_i C_{ji}^k
        let mut field = vec![MultiPoly::zero(vars); g.dim()];
        for i in 0..g.dim() {
            for (k, c) in &g.structure[j][i] {
                field[*k].add_scaled(&MultiPoly::var(vars, i), c);
            }
        }
        let mut lhs = PolyMatrix::zeros(ctx.dim(), ctx.dim(), vars);
        for (k, f) in field.iter().enumerate() {
            if f.is_zero() || partials[k].is_zero() {
                continue;
            }
            lhs = lhs.add(&partials[k].scale_poly(f)).unwrap();
        }
        lhs == a.matrix.const_commutator(&ctx.rep.rho[j])
    })
}

pub fn commutator(
    a: &KirillovElement,
    b: &KirillovElement,
) -> Result<KirillovElement, KirillovError> {
    if a.matrix.rows() != b.matrix.rows() || a.matrix.vars() != b.matrix.vars() {
        return Err(KirillovError::RepMismatch);
    }
    let m = a
        .matrix
        .commutator(&b.matrix)
        .map_err(|_| KirillovError::RepMismatch)?;
    Ok(KirillovElement::new(
        format!("[{},{}]", a.label, b.label),
        m,
    ))
}

/// `D` computed from scratch in the basis `Y_j = sum_a T_{aj} X_a`, returned in `x`-coordinates.
pub fn wei_d_in_basis(ctx: &Context, a: &KirillovElement, t: &QMatrix) -> KirillovElement {
    let g = &ctx.g;
    let n2 = g.dim();
    let ys: Vec<QMatrix> = (0..n2)
        .map(|j| {
            let mut m = QMatrix::zeros(g.n, g.n);
            for (aidx, x) in g.basis.iter().enumerate() {
                m.add_scaled(x, &t[(aidx, j)]);
            }
            m
        })
        .collect();
    let two_n = Rational::from(2 * g.n as i64);
    let mut kappa = QMatrix::zeros(n2, n2);
    for i in 0..n2 {
        for j in 0..n2 {
            kappa[(i, j)] = ys[i].mul(&ys[j]).trace() * &two_n;
        }
    }
    let kinv = kappa.inverse().expect("Killing form is nondegenerate");
    let half = Rational::new(1, 2);
    let vars = g.coordinate_vars();
    let d = ctx.dim();
    let xpartials: Vec<PolyMatrix> = (0..n2).map(|k| a.matrix.partial_derivative(k)).collect();
    let mut out = PolyMatrix::zeros(d, d, vars);
    for j in 0..n2 {
        // dual element Y^j = sum_l kinv[l][j] Y_l
        let mut dual = QMatrix::zeros(g.n, g.n);
        for (l, y) in ys.iter().enumerate() {
            dual.add_scaled(y, &kinv[(l, j)]);
        }
        let rdual = ctx.rep.rho_of(&g.coords(&dual).unwrap());
        // d/dy_j = sum_a T_{aj} d/dx_a
        let mut dj = PolyMatrix::zeros(d, d, vars);
        for (aidx, p) in xpartials.iter().enumerate() {
            if !t[(aidx, j)].is_zero() {
                dj = dj.add(&p.scale(&t[(aidx, j)])).unwrap();
            }
        }
        out = out.add(&dj.left_mul_const(&rdual)).unwrap();
    }
    KirillovElement::new(format!("D({})", a.label), out.scale(&half))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize, mu: &[i64]) -> Context {
        Context::new(n, &Weight(mu.to_vec()), 400, None).unwrap()
    }

    #[test]
    fn c2_of_sl2_is_det() {
        let c = ctx(2, &[1]);
        let c2 = invariant_ck(&c.g, 2).unwrap();
        // A = [[h, x12], [x21, -h]], det = -h^2 - x12 x21
        for pt in [[1, 2, 3], [-4, 0, 5], [2, -3, 7]] {
            let p: Vec<Rational> = pt.iter().map(|&v| Rational::from(v)).collect();
            let det = c.g.element(&p).determinant().unwrap();
            assert_eq!(c2.evaluate(&p).unwrap(), det);
        }
    }

    #[test]
    fn c2_at_principal_h() {
        let c = ctx(3, &[1, 0]);
        let c2 = invariant_ck(&c.g, 2).unwrap();
        assert_eq!(c2.evaluate(&c.triple.h).unwrap(), Rational::from(-4));
        assert!(c2.evaluate(&vec![Rational::zero(); 8]).unwrap().is_zero());
        assert!(invariant_ck(&c.g, 4).is_err());
    }

    #[test]
    fn small_operator_basics() {
        let c = ctx(2, &[3]);
        let m1 = small_operator(&c);
        assert_eq!(m1.degree, Some(1));
        assert_eq!(m1.evaluate(&c.triple.h), c.rep.rho_of(&c.triple.h));
        assert!(m1
            .evaluate(&[Rational::zero(), Rational::zero(), Rational::zero()])
            .is_zero());
        assert!(equivariance_check(&c, &m1));
    }

    #[test]
    fn non_invariant_scalar_fails_equivariance() {
        let c = ctx(2, &[1]);
        let vars = c.g.coordinate_vars();
        let e = scalar_element(&c, "x", &MultiPoly::var(vars, 0));
        assert!(!equivariance_check(&c, &e));
    }

    #[test]
    fn d_of_c2_is_proportional_to_small() {
        for (n, mu) in [(2, vec![2]), (3, vec![1, 1])] {
            let c = ctx(n, &mu);
            let m1 = small_operator(&c);
            let d = big_operator(&c, 1, 2).unwrap();
            // D(c_2) = -rho(A)/(4n)
            assert_eq!(d.matrix, m1.matrix.scale(&Rational::new(-1, 4 * n as i64)));
            let med = medium_operator(&c, 2).unwrap();
            assert_eq!(med.matrix, d.matrix.scale(&Rational::from(4 * n as i64)));
        }
    }

    #[test]
    fn d_of_constant_vanishes() {
        let c = ctx(2, &[2]);
        let one = scalar_element(
            &c,
            "1",
            &MultiPoly::constant(c.g.coordinate_vars(), Rational::from(7)),
        );
        assert!(wei_d(&c, &one).matrix.is_zero());
    }

    #[test]
    fn big_operators_sl3_octet() {
        let c = ctx(3, &[1, 1]);
        let ops = [
            big_operator(&c, 1, 2).unwrap(),
            big_operator(&c, 1, 3).unwrap(),
            big_operator(&c, 2, 3).unwrap(),
        ];
        assert_eq!(
            ops.iter().map(|o| o.degree).collect::<Vec<_>>(),
            vec![Some(1), Some(2), Some(1)]
        );
        for o in &ops {
            assert!(equivariance_check(&c, o));
        }
        for a in &ops {
            for b in &ops {
                assert!(commutator(a, b).unwrap().matrix.is_zero());
            }
        }
        assert!(big_operator(&c, 3, 3).is_err());
    }

    #[test]
    fn basis_independence_of_d() {
        let c = ctx(2, &[2]);
        let f = big_operator(&c, 1, 2).unwrap();
        let f = f.mul(&f);
        let t = QMatrix::from_ints(&[&[1, 2, 0], &[0, 1, -1], &[3, 0, 1]]);
        assert_eq!(wei_d_in_basis(&c, &f, &t).matrix, wei_d(&c, &f).matrix);
    }
}
