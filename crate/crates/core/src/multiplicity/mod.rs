//! Brylinski filtrations, `e`-limits of weight spaces, Lusztig's `q`-analogues and multiplicity algebras.

mod algebra;
mod filtration;

pub use algebra::*;
pub use filtration::*;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{ExactError, QMatrix, QPolynomial, Rational};
use crate::kirillov::Context;
use crate::lie::{weyl_group, LieError, RootDatum, Weight};

#[derive(Debug, Error)]
pub enum MultiplicityError {
    #[error("q-Kostant partition function limited to n <= 5, got n = {0}")]
    Guard(usize),
    #[error("{0} is not dominant")]
    NotDominant(Weight),
    #[error("{0} is not a weight of the representation")]
    NotAWeight(Weight),
    #[error("e-limit constructions disagree for lambda = {0}")]
    MethodsDisagree(Weight),
    #[error("limit space of {0} is not invariant under the big algebra at e")]
    NotInvariant(Weight),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub const KOSTANT_GUARD: usize = 5;

/// Simple-root coordinates of the positive root `eps_i - eps_j`.
fn root_vector(r: usize, (i, j): (usize, usize)) -> Vec<i64> {
    (0..r).map(|t| i64::from(t >= i && t < j)).collect()
}

/// `P_q(k_1 alpha_1 + ... + k_r alpha_r)` for `sl_n`.
pub fn qkostant_simple(k: &[i64], n: usize) -> Result<QPolynomial, MultiplicityError> {
    if n > KOSTANT_GUARD {
        return Err(MultiplicityError::Guard(n));
    }
    if k.iter().any(|&x| x < 0) {
        return Ok(QPolynomial::zero());
    }
    let r = n - 1;
    let sizes: Vec<usize> = k.iter().map(|&x| x as usize + 1).collect();
    let total: usize = sizes.iter().product();
    let mut strides = vec![1usize; r];
    for t in (0..r.saturating_sub(1)).rev() {
        strides[t] = strides[t + 1] * sizes[t + 1];
    }
    let mut dp = vec![QPolynomial::zero(); total];
    dp[0] = QPolynomial::one();
    let q = QPolynomial::monomial(1, 1);
    let rd = RootDatum::new(n);
    for &root in &rd.positive_roots {
        let beta = root_vector(r, root);
        let offset: usize = beta
            .iter()
            .zip(&strides)
            .map(|(b, s)| *b as usize * s)
            .sum();
        for idx in 0..total {
            let fits = (0..r).all(|t| (idx / strides[t]) % sizes[t] >= beta[t] as usize);
            if fits {
                let add = dp[idx - offset].mul(&q);
                dp[idx] = dp[idx].add(&add);
            }
        }
    }
    Ok(dp[total - 1].clone())
}

/// `q`-analogue of Kostant's partition function at a weight-lattice element.
pub fn qkostant_partition(pi: &Weight, n: usize) -> Result<QPolynomial, MultiplicityError> {
    if n > KOSTANT_GUARD {
        return Err(MultiplicityError::Guard(n));
    }
    match RootDatum::new(n).simple_root_coords(pi) {
        Some(k) => qkostant_simple(&k, n),
        None => Ok(QPolynomial::zero()),
    }
}

/// Lusztig's `q`-analogue `m^mu_lambda(q)` as an alternating sum over the Weyl group.
pub fn lusztig_m(mu: &Weight, lambda: &Weight) -> Result<QPolynomial, MultiplicityError> {
    for w in [mu, lambda] {
        if !w.is_dominant() {
            return Err(MultiplicityError::NotDominant(w.clone()));
        }
    }
    let n = mu.rank() + 1;
    if n > KOSTANT_GUARD {
        return Err(MultiplicityError::Guard(n));
    }
    let rho = RootDatum::new(n).rho();
    let top = mu.add(&rho);
    let bottom = lambda.add(&rho);
    let mut out = QPolynomial::zero();
    for w in weyl_group(n)? {
        let p = qkostant_partition(&w.act(&top).sub(&bottom), n)?;
        out = out.add(&p.scale(w.sign));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusChoice {
    Standard,
    HPlusE,
}

/// `h`-eigenvalue of a weight for the principal `h`.
pub fn h_eigenvalue(w: &Weight) -> i64 {
    let n = w.rank() as i64 + 1;
    w.0.iter()
        .enumerate()
        .map(|(i, &m)| m * (i as i64 + 1) * (n - i as i64 - 1))
        .sum()
}

/// Unipotent `P` with `P h P^-1 = h + e` in the standard representation, and its image on `V^mu`.
pub struct TorusTransport {
    pub standard: QMatrix,
    pub on_rep: QMatrix,
}

pub fn torus_transport(ctx: &Context) -> Result<TorusTransport, MultiplicityError> {
    let n = ctx.n();
    let h = ctx.g.element(&ctx.triple.h);
    let a = h.add(&ctx.g.element(&ctx.triple.e));
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let shifted = a.sub(&QMatrix::scalar(n, &h[(k, k)]));
        let ker = shifted.kernel();
        let v = ker.into_iter().next().ok_or(ExactError::Singular)?;
        let s = v[k].recip();
        cols.push(v.iter().map(|x| x * &s).collect());
    }
    let p = QMatrix::from_columns(&cols, n);
    let u = p.sub(&QMatrix::identity(n));
    let mut log = QMatrix::zeros(n, n);
    let mut power = QMatrix::identity(n);
    for k in 1..n {
        power = power.mul(&u);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        log.add_scaled(&power, &Rational::new(sign, k as i64));
    }
    let coords = ctx.g.coords(&log)?;
    let nil = ctx.rep.rho_of(&coords);
    let dim = ctx.dim();
    let mut on_rep = QMatrix::identity(dim);
    let mut term = QMatrix::identity(dim);
    for k in 1..=dim {
        term = term.mul(&nil).scale(&Rational::new(1, k as i64));
        if term.is_zero() {
            break;
        }
        on_rep = on_rep.add(&term);
    }
    Ok(TorusTransport {
        standard: p,
        on_rep,
    })
}

/// Basis of `V^mu_lambda` for the chosen torus.
pub fn torus_weight_space(
    ctx: &Context,
    lambda: &Weight,
    torus: TorusChoice,
    transport: Option<&TorusTransport>,
) -> Result<Vec<Vec<Rational>>, MultiplicityError> {
    let std = ctx.rep.weight_space(lambda);
    if std.is_empty() {
        return Err(MultiplicityError::NotAWeight(lambda.clone()));
    }
    match torus {
        TorusChoice::Standard => Ok(std),
        TorusChoice::HPlusE => {
            let owned;
            let t = match transport {
                Some(t) => t,
                None => {
                    owned = torus_transport(ctx)?;
                    &owned
                }
            };
            Ok(std.iter().map(|v| t.on_rep.mul_vec(v)).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    /// Multisets of positive roots summing to `k`, weighted by `q^parts`.
    fn brute_kostant(k: &[i64], n: usize) -> QPolynomial {
        let r = n - 1;
        let roots: Vec<Vec<i64>> = RootDatum::new(n)
            .positive_roots
            .iter()
            .map(|&x| root_vector(r, x))
            .collect();
        fn go(roots: &[Vec<i64>], rest: Vec<i64>, parts: i64, out: &mut QPolynomial) {
            if rest.iter().all(|&x| x == 0) {
                out.add_term(parts, 1);
                return;
            }
            let Some((first, tail)) = roots.split_first() else {
                return;
            };
            go(tail, rest.clone(), parts, out);
            let mut cur = rest;
            let mut used = 0;
            loop {
                for (c, b) in cur.iter_mut().zip(first) {
                    *c -= b;
                }
                used += 1;
                if cur.iter().any(|&x| x < 0) {
                    break;
                }
                go(tail, cur.clone(), parts + used, out);
            }
        }
        let mut out = QPolynomial::zero();
        if k.iter().all(|&x| x >= 0) {
            go(&roots, k.to_vec(), 0, &mut out);
        }
        out
    }

    #[test]
    fn kostant_small_values() {
        assert_eq!(qkostant_simple(&[0, 0], 3).unwrap(), QPolynomial::one());
        assert_eq!(
            qkostant_simple(&[1, 1], 3).unwrap(),
            QPolynomial::from_coeffs(&[0, 1, 1])
        );
        for k in 0..6 {
            assert_eq!(
                qkostant_simple(&[k], 2).unwrap(),
                QPolynomial::monomial(k, 1)
            );
        }
        assert!(qkostant_simple(&[-1], 2).unwrap().is_zero());
        assert!(matches!(
            qkostant_simple(&[0; 5], 6),
            Err(MultiplicityError::Guard(6))
        ));
    }

    #[test]
    fn kostant_matches_enumeration() {
        for n in 2..=4 {
            let r = n - 1;
            for code in 0..(4usize.pow(r as u32)) {
                let k: Vec<i64> = (0..r)
                    .map(|t| ((code / 4usize.pow(t as u32)) % 4) as i64)
                    .collect();
                assert_eq!(
                    qkostant_simple(&k, n).unwrap(),
                    brute_kostant(&k, n),
                    "{k:?}"
                );
            }
        }
    }

    #[test]
    fn lusztig_examples() {
        assert_eq!(
            lusztig_m(&w(&[1, 1]), &w(&[0, 0])).unwrap(),
            QPolynomial::from_coeffs(&[0, 1, 1])
        );
        assert_eq!(
            lusztig_m(&w(&[4]), &w(&[0])).unwrap(),
            QPolynomial::monomial(2, 1)
        );
        assert_eq!(
            lusztig_m(&w(&[2, 1]), &w(&[2, 1])).unwrap(),
            QPolynomial::one()
        );
        assert!(lusztig_m(&w(&[1, 1]), &w(&[-1, 2])).is_err());
    }

    #[test]
    fn transport_conjugates_h_to_h_plus_e() {
        for (n, mu) in [
            (2, vec![3]),
            (3, vec![1, 1]),
            (3, vec![2, 0]),
            (4, vec![0, 1, 0]),
        ] {
            let ctx = Context::new(n, &Weight(mu), 400, None).unwrap();
            let t = torus_transport(&ctx).unwrap();
            let h = ctx.rep.rho_of(&ctx.triple.h);
            let he = h.add(&ctx.rep.rho_of(&ctx.triple.e));
            assert_eq!(t.on_rep.mul(&h), he.mul(&t.on_rep));
            let hs = ctx.g.element(&ctx.triple.h);
            let hes = hs.add(&ctx.g.element(&ctx.triple.e));
            assert_eq!(t.standard.mul(&hs), hes.mul(&t.standard));
        }
    }
}
