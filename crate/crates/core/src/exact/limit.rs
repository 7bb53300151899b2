//! Limits of one-parameter families of subspaces via a valuation echelon.

use std::collections::BTreeMap;

use super::{ExactError, PolyMatrix, QMatrix, Rational};

/// A vector with entries in `Q[w, w^-1]`, stored by exponent.
pub type LaurentVector = BTreeMap<i64, Vec<Rational>>;

fn valuation(v: &LaurentVector) -> Option<i64> {
    v.iter()
        .find(|(_, c)| c.iter().any(|x| !x.is_zero()))
        .map(|(&e, _)| e)
}

fn prune(v: &mut LaurentVector) {
    v.retain(|_, c| c.iter().any(|x| !x.is_zero()));
}

fn add_scaled_shifted(acc: &mut LaurentVector, v: &LaurentVector, c: &Rational, shift: i64) {
    for (&e, coeffs) in v {
        let slot = acc
            .entry(e + shift)
            .or_insert_with(|| vec![Rational::zero(); coeffs.len()]);
        for (x, y) in slot.iter_mut().zip(coeffs) {
            if !y.is_zero() {
                *x += &(c * y);
            }
        }
    }
}

/// Basis of `lim_{w -> 0} span(columns(w))`.
///
/// Each column is first normalized to valuation zero. While the leading
/// vectors are dependent, one column involved in the dependency is replaced
/// by the corresponding combination, which has strictly larger valuation.
pub fn limit_of_vector_families(
    columns: &[LaurentVector],
    dim: usize,
) -> Result<Vec<Vec<Rational>>, ExactError> {
    let mut cols: Vec<LaurentVector> = Vec::with_capacity(columns.len());
    for c in columns {
        let mut c = c.clone();
        prune(&mut c);
        if c.is_empty() {
            return Err(ExactError::GenericallyDependent);
        }
        if c.values().any(|v| v.len() != dim) {
            return Err(ExactError::Shape("column length mismatch".into()));
        }
        cols.push(c);
    }
    let k = cols.len();
    let span: i64 = cols
        .iter()
        .map(|c| c.keys().next_back().unwrap() - c.keys().next().unwrap())
        .sum();
    let cap = (span as usize + 1) * (k + 1) * 4 + 64;
    for _ in 0..cap {
        for c in cols.iter_mut() {
            let v = valuation(c).ok_or(ExactError::GenericallyDependent)?;
            if v != 0 {
                *c = c.iter().map(|(&e, x)| (e - v, x.clone())).collect();
            }
        }
        let leads: Vec<Vec<Rational>> = cols.iter().map(|c| c[&0].clone()).collect();
        let m = QMatrix::from_columns(&leads, dim);
        let ker = m.kernel();
        let Some(rel) = ker.first() else {
            return Ok(leads);
        };
        // replace the last participating column
        let j = rel
            .iter()
            .rposition(|x| !x.is_zero())
            .expect("nonzero kernel vector");
        let mut combo = LaurentVector::new();
        for (i, a) in rel.iter().enumerate() {
            if !a.is_zero() {
                add_scaled_shifted(&mut combo, &cols[i], a, 0);
            }
        }
        prune(&mut combo);
        if combo.is_empty() {
            return Err(ExactError::GenericallyDependent);
        }
        cols[j] = combo;
    }
    Err(ExactError::GenericallyDependent)
}

/// Limit of the span of the columns of a matrix over the single Laurent variable `w`.
pub fn limit_of_span(
    columns: &PolyMatrix,
    allow_negative_exponents: bool,
) -> Result<Vec<Vec<Rational>>, ExactError> {
    if columns.vars().len() != 1 {
        return Err(ExactError::Shape(
            "limit needs a single-variable matrix".into(),
        ));
    }
    let (rows, ncols) = (columns.rows(), columns.cols());
    let mut fams = vec![LaurentVector::new(); ncols];
    for i in 0..rows {
        for (j, fam) in fams.iter_mut().enumerate() {
            for (e, c) in columns.get(i, j).terms() {
                let e = e[0] as i64;
                if e < 0 && !allow_negative_exponents {
                    return Err(ExactError::NegativeExponent(
                        columns.vars().name(0).to_string(),
                    ));
                }
                fam.entry(e).or_insert_with(|| vec![Rational::zero(); rows])[i] = c.clone();
            }
        }
    }
    limit_of_vector_families(&fams, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{same_span, MultiPoly, VarSet};

    fn w_matrix(cols: &[&[&[(i32, i64)]]]) -> PolyMatrix {
        let vars = VarSet::laurent("w");
        let rows = cols[0].len();
        let mut entries = vec![MultiPoly::zero(&vars); rows * cols.len()];
        for (j, col) in cols.iter().enumerate() {
            for (i, terms) in col.iter().enumerate() {
                for &(e, c) in terms.iter() {
                    entries[i * cols.len() + j].add_term(vec![e], Rational::from(c));
                }
            }
        }
        PolyMatrix::from_entries(rows, cols.len(), &vars, entries).unwrap()
    }

    fn unit(i: usize, n: usize) -> Vec<Rational> {
        (0..n).map(|k| Rational::from((k == i) as i64)).collect()
    }

    #[test]
    fn leading_term() {
        let m = w_matrix(&[&[&[(1, 1)], &[(3, 1)]]]);
        let l = limit_of_span(&m, false).unwrap();
        assert!(same_span(&l, &[unit(0, 2)], 2));
    }

    #[test]
    fn collision_raises_valuation() {
        let m = w_matrix(&[&[&[(0, 1)], &[(1, 1)]], &[&[(0, 1)], &[(1, -1)]]]);
        let l = limit_of_span(&m, false).unwrap();
        assert_eq!(l.len(), 2);
        assert!(same_span(&l, &[unit(0, 2), unit(1, 2)], 2));
    }

    #[test]
    fn constant_columns() {
        let m = w_matrix(&[&[&[(0, 2)], &[(0, 1)], &[]], &[&[], &[(0, 1)], &[(0, 5)]]]);
        let l = limit_of_span(&m, false).unwrap();
        let expect = vec![
            vec![Rational::from(2), Rational::from(1), Rational::zero()],
            vec![Rational::zero(), Rational::from(1), Rational::from(5)],
        ];
        assert!(same_span(&l, &expect, 3));
    }

    #[test]
    fn negative_exponents_need_flag() {
        let m = w_matrix(&[&[&[(-1, 1)], &[(0, 1)]]]);
        assert!(limit_of_span(&m, false).is_err());
        let l = limit_of_span(&m, true).unwrap();
        assert!(same_span(&l, &[unit(0, 2)], 2));
    }

    #[test]
    fn dependent_columns_rejected() {
        let m = w_matrix(&[&[&[(0, 1)], &[(1, 1)]], &[&[(0, 2)], &[(1, 2)]]]);
        assert_eq!(
            limit_of_span(&m, false),
            Err(ExactError::GenericallyDependent)
        );
    }
}
