//! Rescaling of the canonical generators to the normalization of the worked examples.

use serde::Serialize;

use super::{
    algebra_vars, evaluate_relation, parse_poly, BigError, GeneratorSpec, SectionOperator,
};
use crate::exact::{MultiPoly, Rational};
use crate::kirillov::{Context, KirillovElement};
use crate::lie::Weight;

#[derive(Clone, Debug, Serialize)]
pub struct CalibrationEntry {
    pub name: String,
    pub scalar: Rational,
    /// Which rule fixed the scalar.
    pub anchor: String,
    /// `(-4n)^i`, the scalar used when no anchor applies.
    pub canonical: Rational,
}

#[derive(Clone, Debug)]
pub struct Calibrated {
    pub specs: Vec<GeneratorSpec>,
    pub kirillov: Vec<KirillovElement>,
    pub section: Vec<SectionOperator>,
    pub report: Vec<CalibrationEntry>,
}

impl Calibrated {
    pub fn names(&self) -> Vec<String> {
        self.specs.iter().map(|s| s.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.specs.iter().position(|s| s.name == name)
    }

    /// Kirillov elements evaluated at a point of `g`.
    pub fn at_point(&self, x: &[Rational]) -> Vec<crate::exact::QMatrix> {
        self.kirillov.iter().map(|k| k.evaluate(x)).collect()
    }
}

fn canonical_scalar(n: usize, i: usize) -> Rational {
    Rational::from(-4 * n as i64).pow(i as i32)
}

/// `mu(h)` for the principal `h`, the `h`-eigenvalue of the highest-weight line.
pub fn principal_top_eigenvalue(mu: &Weight) -> i64 {
    let n = mu.rank() as i64 + 1;
    mu.0.iter()
        .enumerate()
        .map(|(i, &m)| m * (i as i64 + 1) * (n - i as i64 - 1))
        .sum()
}

/// Applies the anchor rules to the canonical generators `D^i(c_k)`.
///
/// `M1` is pinned by the highest-weight eigenvalue `mu(h)` at `h`; for `sl_3`,
/// `M2` by four times the hypercharge of the highest weight and `N1` of the
/// adjoint module by `3M1^2 + N1^2 + 12c2 = 0` together with the sign of
/// `M1^3 N1 + c2 M1 N1 - 9c3 M1`. Where an anchor value is zero on both sides
/// the canonical scalar `(-4n)^i` is used.
pub fn calibrate_generators(
    ctx: &Context,
    raw: Vec<(GeneratorSpec, KirillovElement, SectionOperator)>,
) -> Result<Calibrated, BigError> {
    let n = ctx.n();
    let mu = &ctx.rep.mu;
    let h = &ctx.triple.h;
    let mut specs = Vec::new();
    let mut kir = Vec::new();
    let mut sec = Vec::new();
    let mut report = Vec::new();
    for (spec, ke, so) in &raw {
        let canonical = canonical_scalar(n, spec.i);
        let top = ke.evaluate(h)[(0, 0)].clone();
        let target = match (spec.i, spec.k, n) {
            (1, 2, _) => Some((
                Rational::from(principal_top_eigenvalue(mu)),
                "highest weight eigenvalue mu(h)",
            )),
            (1, 3, 3) => Some((
                Rational::new(4 * (mu.0[0] - mu.0[1]), 3),
                "four times hypercharge",
            )),
            _ => None,
        };
        let (scalar, anchor) = match target {
            Some((t, name)) if !top.is_zero() => (&t / &top, name.to_string()),
            Some((t, _)) if t.is_zero() => (
                canonical.clone(),
                "canonical (anchor value vanishes)".to_string(),
            ),
            Some(_) => return Err(BigError::DegenerateGenerator(spec.name.clone())),
            None => (canonical.clone(), "canonical".to_string()),
        };
        specs.push(spec.clone());
        kir.push(ke.scale(&scalar));
        sec.push(so.scale(&scalar));
        report.push(CalibrationEntry {
            name: spec.name.clone(),
            scalar,
            anchor,
            canonical,
        });
    }
    if n == 3 && mu.0 == [1, 1] {
        let idx = specs
            .iter()
            .position(|s| s.name == "N1")
            .expect("sl3 has N1");
        let raw_n1 = &raw[idx].2;
        let s = octet_n1_scalar(&sec, raw_n1)?;
        kir[idx] = raw[idx].1.scale(&s);
        sec[idx] = raw_n1.scale(&s);
        report[idx].scalar = s;
        report[idx].anchor = "adjoint relation 3M1^2+N1^2+12c2".into();
    }
    Ok(Calibrated {
        specs,
        kirillov: kir,
        section: sec,
        report,
    })
}

fn octet_n1_scalar(
    sec: &[SectionOperator],
    raw_n1: &SectionOperator,
) -> Result<Rational, BigError> {
    let names: Vec<String> = vec!["M1".into(), "M2".into(), "N1".into()];
    let vars = algebra_vars(&names, 3);
    // N1^2 must equal -(3M1^2 + 12c2) with N1 = s * raw
    let lhs = evaluate_relation(&parse_poly("-3M1^2-12c2", &vars)?, sec, 3);
    let mut unit = sec.to_vec();
    unit[2] = raw_n1.clone();
    let sq = evaluate_relation(&parse_poly("N1^2", &vars)?, &unit, 3);
    let (i, j, p) = sq
        .first_nonzero()
        .ok_or_else(|| BigError::DegenerateGenerator("N1".into()))?;
    let (e, c) = p.terms().iter().next().unwrap();
    let target = lhs
        .get(i, j)
        .terms()
        .get(e)
        .cloned()
        .unwrap_or_else(Rational::zero);
    let s2 = &target / c;
    let s = rational_sqrt(&s2).ok_or_else(|| BigError::DegenerateGenerator("N1".into()))?;
    if s.is_zero() {
        return Err(BigError::DegenerateGenerator("N1".into()));
    }
    let check = |s: &Rational| {
        let mut g = sec.to_vec();
        g[2] = raw_n1.scale(s);
        evaluate_relation(&parse_poly("M1^3N1+c2M1N1-9c3M1", &vars).unwrap(), &g, 3).is_zero()
    };
    if check(&s) {
        Ok(s)
    } else if check(&-&s) {
        Ok(-s)
    } else {
        Err(BigError::DegenerateGenerator("N1".into()))
    }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// The constant `M1 / D(c2)` relating the small operator to `D(c_2)`, namely `-4n`.
pub fn small_to_d_ratio(n: usize) -> Rational {
    canonical_scalar(n, 1)
}

/// A polynomial in generator names and `c`'s, read against the calibrated generator order.
pub fn relation(cal: &Calibrated, n: usize, text: &str) -> Result<MultiPoly, BigError> {
    Ok(parse_poly(text, &algebra_vars(&cal.names(), n))?)
}
