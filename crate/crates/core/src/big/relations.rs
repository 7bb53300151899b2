//! Degree-truncated relation search and presentation checks by linear algebra.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{evaluate_relation, BigError, SectionOperator};
use crate::exact::{
    Echelon, ExactError, Exponents, MultiPoly, PolyMatrix, QMatrix, Rational, VarSet,
};
use crate::lie::section_vars;

/// Exponent vectors of weighted degree `d`, in decreasing lexicographic order
/// with the last variable most significant.
pub fn monomials_of_degree(weights: &[i64], d: i64) -> Vec<Exponents> {
    fn rec(weights: &[i64], idx: usize, left: i64, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if idx == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[idx];
        let max = if w > 0 { left / w } else { 0 };
        for e in 0..=max {
            cur[idx] = e as i32;
            rec(weights, idx + 1, left - e * w, cur, out);
        }
        cur[idx] = 0;
    }
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut cur = vec![0; weights.len()];
    rec(weights, 0, d, &mut cur, &mut out);
    out.sort_by(|a, b| b.iter().rev().cmp(a.iter().rev()));
    out
}

/// Evaluates monomials in the generators (and `c`'s) to matrices over `Q[c]`, memoizing products.
struct MonomialEvaluator<'a> {
    gens: &'a [SectionOperator],
    n: usize,
    cache: HashMap<Exponents, PolyMatrix>,
}

impl<'a> MonomialEvaluator<'a> {
    fn new(gens: &'a [SectionOperator], n: usize) -> Self {
        MonomialEvaluator {
            gens,
            n,
            cache: HashMap::new(),
        }
    }

    fn gen_product(&mut self, e: &[i32]) -> PolyMatrix {
        if let Some(m) = self.cache.get(e) {
            return m.clone();
        }
        let dim = self.gens[0].matrix.rows();
        let m = match e.iter().position(|&k| k > 0) {
            None => PolyMatrix::scalar(dim, &MultiPoly::one(&section_vars(self.n))),
            Some(j) => {
                let mut smaller = e.to_vec();
                smaller[j] -= 1;
                let rest = self.gen_product(&smaller);
                self.gens[j].matrix.mul(&rest).unwrap()
            }
        };
        self.cache.insert(e.to_vec(), m.clone());
        m
    }
}

fn coefficient_columns(mats: &[PolyMatrix]) -> QMatrix {
    let mut keys: BTreeMap<(usize, Exponents), usize> = BTreeMap::new();
    for m in mats {
        for (idx, p) in m.entries().iter().enumerate() {
            for e in p.terms().keys() {
                let next = keys.len();
                keys.entry((idx, e.clone())).or_insert(next);
            }
        }
    }
    let mut out = QMatrix::zeros(keys.len(), mats.len());
    for (j, m) in mats.iter().enumerate() {
        for (idx, p) in m.entries().iter().enumerate() {
            for (e, c) in p.terms() {
                out[(keys[&(idx, e.clone())], j)] = c.clone();
            }
        }
    }
    out
}

fn to_poly(vars: &Arc<VarSet>, monos: &[Exponents], coeffs: &[Rational]) -> MultiPoly {
    let mut p = MultiPoly::zero(vars);
    for (m, c) in monos.iter().zip(coeffs) {
        p.add_term(m.clone(), c.clone());
    }
    p
}

/// Coefficient vector of a homogeneous polynomial against an ordered monomial list.
fn to_vector(
    p: &MultiPoly,
    index: &HashMap<Exponents, usize>,
    len: usize,
) -> Option<Vec<Rational>> {
    let mut v = vec![Rational::zero(); len];
    for (e, c) in p.terms() {
        v[*index.get(e)?] = c.clone();
    }
    Some(v)
}

/// Scales to a primitive integer vector whose last nonzero entry is positive.
fn normalize(v: &mut [Rational]) {
    let lcm = crate::exact::denominator_lcm(v.iter());
    let mut ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|x| (x * &Rational::from(lcm.clone())).numer().clone())
        .collect();
    let mut g = num_bigint::BigInt::from(0);
    for x in &ints {
        g = num_integer::Integer::gcd(&g, x);
    }
    if g == num_bigint::BigInt::from(0) {
        return;
    }
    let neg = ints
        .iter()
        .rev()
        .find(|x| **x != num_bigint::BigInt::from(0))
        .map_or(false, |x| x < &num_bigint::BigInt::from(0));
    for (x, i) in v.iter_mut().zip(ints.iter_mut()) {
        let mut q = &*i / &g;
        if neg {
            q = -q;
        }
        *x = Rational::from(q);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeData {
    pub degree: i64,
    pub monomials: usize,
    pub kernel_dim: usize,
    pub quotient_dim: usize,
}

#[derive(Clone, Debug)]
pub struct RelationSearch {
    pub vars: Arc<VarSet>,
    pub weights: Vec<i64>,
    pub relations: Vec<(i64, MultiPoly)>,
    pub per_degree: Vec<DegreeData>,
}

impl RelationSearch {
    pub fn kernel_dims(&self) -> Vec<usize> {
        self.per_degree.iter().map(|d| d.kernel_dim).collect()
    }
}

/// Rank of the degree-`d` part of the ideal generated by homogeneous polynomials.
pub fn ideal_dimension(rels: &[(i64, MultiPoly)], weights: &[i64], d: i64) -> usize {
    let monos = monomials_of_degree(weights, d);
    let index: HashMap<Exponents, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut ech = Echelon::new(monos.len());
    for (dr, r) in rels {
        if *dr > d {
            continue;
        }
        for m in monomials_of_degree(weights, d - dr) {
            let shifted = r * &MultiPoly::monomial(r.vars(), m, Rational::one());
            if let Some(v) = to_vector(&shifted, &index, monos.len()) {
                ech.insert(&v);
            }
        }
    }
    ech.rank()
}

/// Finds generators of the relation ideal among `gens` and `c_2..c_n` up to `max_degree`.
pub fn derive_relations(
    gens: &[SectionOperator],
    names: &[String],
    n: usize,
    max_degree: i64,
) -> RelationSearch {
    let vars = super::algebra_vars(names, n);
    let mut weights: Vec<i64> = gens.iter().map(|g| g.degree).collect();
    weights.extend(super::c_weights(n));
    let mut ev = MonomialEvaluator::new(gens, n);
    let mut relations: Vec<(i64, MultiPoly)> = Vec::new();
    let mut per_degree = Vec::new();
    for d in 0..=max_degree {
        let monos = monomials_of_degree(&weights, d);
        // fill the product cache sequentially, then expand in parallel
        let gen_parts: Vec<PolyMatrix> = monos
            .iter()
            .map(|m| ev.gen_product(&m[..gens.len()]))
            .collect();
        let cvars = section_vars(n);
        let mats: Vec<PolyMatrix> = monos
            .par_iter()
            .zip(gen_parts.par_iter())
            .map(|(m, base)| {
                base.scale_poly(&MultiPoly::monomial(
                    &cvars,
                    m[gens.len()..].to_vec(),
                    Rational::one(),
                ))
            })
            .collect();
        let coeffs = coefficient_columns(&mats);
        let kernel = if monos.is_empty() {
            Vec::new()
        } else {
            coeffs.kernel()
        };
        let index: HashMap<Exponents, usize> = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut ech = Echelon::new(monos.len());
        for (dr, r) in &relations {
            for m in monomials_of_degree(&weights, d - dr) {
                let shifted = r * &MultiPoly::monomial(&vars, m, Rational::one());
                ech.insert(&to_vector(&shifted, &index, monos.len()).expect("homogeneous"));
            }
        }
        for mut v in kernel.clone() {
            if ech.insert(&v) {
                normalize(&mut v);
                relations.push((d, to_poly(&vars, &monos, &v)));
            }
        }
        per_degree.push(DegreeData {
            degree: d,
            monomials: monos.len(),
            kernel_dim: kernel.len(),
            quotient_dim: monos.len() - kernel.len(),
        });
    }
    RelationSearch {
        vars,
        weights,
        relations,
        per_degree,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub vanishes: bool,
    /// First nonzero entry `(row, col, value)` when the relation fails.
    pub witness: Option<(usize, usize, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub checks: Vec<RelationCheck>,
    pub max_checked_degree: i64,
    /// Degrees at which the quotient by the given relations differs from the computed algebra.
    pub hilbert_mismatch: Vec<i64>,
}

impl PresentationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.vanishes) && self.hilbert_mismatch.is_empty()
    }
}

/// Weighted degree of a homogeneous polynomial.
pub fn relation_degree(p: &MultiPoly, weights: &[i64]) -> Option<i64> {
    p.homogeneous_degree(weights)
}

/// Substitutes the generators into each relation and compares graded dimensions up to `max_degree`.
pub fn verify_presentation(
    gens: &[SectionOperator],
    names: &[String],
    n: usize,
    relations: &[MultiPoly],
    max_degree: i64,
) -> Result<PresentationReport, BigError> {
    let mut checks = Vec::new();
    let mut homogeneous = Vec::new();
    let mut weights: Vec<i64> = gens.iter().map(|g| g.degree).collect();
    weights.extend(super::c_weights(n));
    let vars = super::algebra_vars(names, n);
    for r in relations {
        let r = r.rebase(&vars)?;
        let m = evaluate_relation(&r, gens, n);
        let witness = m.first_nonzero().map(|(i, j, p)| (i, j, p.to_string()));
        checks.push(RelationCheck {
            relation: r.to_string(),
            vanishes: witness.is_none(),
            witness,
        });
        if let Some(d) = relation_degree(&r, &weights) {
            homogeneous.push((d, r));
        } else {
            return Err(ExactError::Parse(format!("relation {r} is not homogeneous")).into());
        }
    }
    let search = derive_relations(gens, names, n, max_degree);
    let mut hilbert_mismatch = Vec::new();
    for dd in &search.per_degree {
        if ideal_dimension(&homogeneous, &weights, dd.degree) != dd.kernel_dim {
            hilbert_mismatch.push(dd.degree);
        }
    }
    Ok(PresentationReport {
        checks,
        max_checked_degree: max_degree,
        hilbert_mismatch,
    })
}

/// Relation file: generator names with degrees, and relations as lists of weighted monomials.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationFile {
    pub generators: Vec<GeneratorEntry>,
    pub relations: Vec<Vec<RelationTerm>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationTerm {
    pub monomials: Vec<(String, u32)>,
    pub coeff: Rational,
}

impl RelationFile {
    pub fn from_polys(generators: &[(String, i64)], rels: &[MultiPoly]) -> Self {
        let relations = rels
            .iter()
            .map(|p| {
                p.terms()
                    .iter()
                    .rev()
                    .map(|(e, c)| RelationTerm {
                        monomials: e
                            .iter()
                            .enumerate()
                            .filter(|(_, &k)| k > 0)
                            .map(|(i, &k)| (p.vars().name(i).to_string(), k as u32))
                            .collect(),
                        coeff: c.clone(),
                    })
                    .collect()
            })
            .collect();
        RelationFile {
            generators: generators
                .iter()
                .map(|(n, d)| GeneratorEntry {
                    name: n.clone(),
                    degree: *d,
                })
                .collect(),
            relations,
        }
    }

    pub fn parse(text: &str) -> Result<RelationFile, ExactError> {
        if text.len() > 1 << 24 {
            return Err(ExactError::Parse("relation file too large".into()));
        }
        serde_json::from_str(text).map_err(|e| ExactError::Parse(e.to_string()))
    }

    /// Relations as polynomials over `vars`; names must all be known.
    pub fn to_polys(&self, vars: &Arc<VarSet>) -> Result<Vec<MultiPoly>, ExactError> {
        self.relations
            .iter()
            .map(|terms| {
                let mut p = MultiPoly::zero(vars);
                for t in terms {
                    let mut e = vec![0i32; vars.len()];
                    for (name, k) in &t.monomials {
                        let i = vars
                            .index_of(name)
                            .ok_or_else(|| ExactError::UnknownVariable(name.clone()))?;
                        if *k > 1000 {
                            return Err(ExactError::Parse("exponent too large".into()));
                        }
                        e[i] += *k as i32;
                    }
                    p.add_term(e, t.coeff.clone());
                }
                Ok(p)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration() {
        // weights M1:1, c2:2
        let m = monomials_of_degree(&[1, 2], 4);
        assert_eq!(m, vec![vec![0, 2], vec![2, 1], vec![4, 0]]);
        assert!(monomials_of_degree(&[2], 3).is_empty());
    }

    #[test]
    fn relation_file_round_trip() {
        let vars = VarSet::new(["M1", "c2"]);
        let p = super::super::parse_poly("M1^2+4c2", &vars).unwrap();
        let f = RelationFile::from_polys(&[("M1".into(), 1)], &[p.clone()]);
        let text = serde_json::to_string(&f).unwrap();
        let back = RelationFile::parse(&text).unwrap();
        assert_eq!(back.to_polys(&vars).unwrap(), vec![p]);
    }
}
