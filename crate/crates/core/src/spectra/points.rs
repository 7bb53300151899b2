use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{Skeleton, SpectraError};
use crate::exact::{QMatrix, Rational};

pub const RESIDUAL_TOLERANCE: f64 = 1e-9;
pub const MAX_GRID_STEPS: usize = 100_000;

/// `min:max:steps`, meaning `steps + 1` equally spaced points from `min` to `max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub min: Rational,
    pub max: Rational,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<Rational> {
        if self.steps == 0 {
            return vec![self.min.clone()];
        }
        let width = &self.max - &self.min;
        (0..=self.steps)
            .map(|j| &self.min + &(&width * &Rational::new(j as i64, self.steps as i64)))
            .collect()
    }
}

impl FromStr for Grid {
    type Err = SpectraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, k] = parts.as_slice() else {
            return Err(SpectraError::Grid(format!(
                "expected min:max:steps, got {s:?}"
            )));
        };
        let min: Rational = a
            .trim()
            .parse()
            .map_err(|e| SpectraError::Grid(format!("{e}")))?;
        let max: Rational = b
            .trim()
            .parse()
            .map_err(|e| SpectraError::Grid(format!("{e}")))?;
        let steps: usize = k
            .trim()
            .parse()
            .map_err(|_| SpectraError::Grid(format!("bad step count {k:?}")))?;
        if max < min {
            return Err(SpectraError::Grid("max below min".into()));
        }
        if steps > MAX_GRID_STEPS {
            return Err(SpectraError::Grid(format!(
                "at most {MAX_GRID_STEPS} steps"
            )));
        }
        if steps == 0 && min != max {
            return Err(SpectraError::Grid("zero steps need min = max".into()));
        }
        Ok(Grid { min, max, steps })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchRow {
    pub param: Rational,
    pub generator: String,
    pub branch: usize,
    pub value: Rational,
}

pub const VALUE_DIGITS: u32 = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub value: Rational,
    /// `|chi(value)|` for the exact characteristic polynomial `chi`.
    pub residual: f64,
}

/// Real eigenvalues with multiplicity, ascending, as decimals checked against the characteristic polynomial.
pub fn real_branches(m: &QMatrix) -> Vec<Branch> {
    let chi = m.charpoly();
    let tol = Rational::new(1, 1u128 << 110);
    let mut values = Vec::new();
    for (factor, mult) in chi.squarefree_decomposition() {
        for (a, b) in factor.real_root_intervals(&tol) {
            let mid = (&a + &b) / Rational::from(2);
            let v = mid.round_decimal(VALUE_DIGITS);
            for _ in 0..mult {
                values.push(v.clone());
            }
        }
    }
    values.sort();
    values
        .into_iter()
        .map(|v| Branch {
            residual: chi.eval(&v).abs().to_f64(),
            value: v,
        })
        .collect()
}

pub fn skeleton_points(sk: &Skeleton, grid: &Grid) -> Result<Vec<BranchRow>, SpectraError> {
    let per_point: Vec<Result<Vec<BranchRow>, SpectraError>> = grid
        .points()
        .par_iter()
        .map(|t| {
            let mats = sk.at(t)?;
            let mut rows = Vec::new();
            for (name, m) in sk.names.iter().zip(&mats) {
                for (branch, b) in real_branches(m).into_iter().enumerate() {
                    if !(b.residual < RESIDUAL_TOLERANCE) {
                        return Err(SpectraError::Residual {
                            param: t.to_string(),
                            generator: name.clone(),
                            value: b.value.to_f64(),
                            residual: b.residual,
                        });
                    }
                    rows.push(BranchRow {
                        param: t.clone(),
                        generator: name.clone(),
                        branch,
                        value: b.value,
                    });
                }
            }
            Ok(rows)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_point {
        out.extend(r?);
    }
    Ok(out)
}

pub fn write_csv<W: Write>(rows: &[BranchRow], w: W) -> Result<(), SpectraError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["param", "generator", "branch", "value"])?;
    for r in rows {
        wr.write_record([
            r.param.to_string(),
            r.generator.clone(),
            r.branch.to_string(),
            r.value.to_decimal_string(VALUE_DIGITS),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

pub fn emit_skeleton_points(
    sk: &Skeleton,
    grid: &Grid,
    out: &Path,
) -> Result<Vec<BranchRow>, SpectraError> {
    let rows = skeleton_points(sk, grid)?;
    let file = std::fs::File::create(out)?;
    write_csv(&rows, std::io::BufWriter::new(file))?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big::calibrated_generators;
    use crate::kirillov::Context;
    use crate::lie::Weight;
    use crate::spectra::{principal_restriction, Recipe};

    #[test]
    fn grid_parsing() {
        let g: Grid = "-4:1:10".parse().unwrap();
        assert_eq!(g.points().len(), 11);
        assert_eq!(g.points()[1], Rational::new(-7, 2));
        assert_eq!(
            "1/2:1/2:0".parse::<Grid>().unwrap().points(),
            vec![Rational::new(1, 2)]
        );
        for bad in [
            "",
            "1:2",
            "2:1:3",
            "0:1:0",
            "a:1:2",
            "0:1:-1",
            "0:1:2:3",
            "0:1:1000001",
        ] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }

    #[test]
    fn sl2_four_branches() {
        let ctx = Context::new(2, &Weight(vec![4]), 400, None).unwrap();
        let cal = calibrated_generators(&ctx).unwrap();
        let sk = principal_restriction(&ctx, &cal, Recipe::Identity).unwrap();
        let rows = skeleton_points(&sk, &"-1:-1:0".parse().unwrap()).unwrap();
        let values: Vec<Rational> = rows.iter().map(|r| r.value.clone()).collect();
        assert_eq!(values, [-4, -2, 0, 2, 4].map(Rational::from).to_vec());
        let zero = skeleton_points(&sk, &"0:0:0".parse().unwrap()).unwrap();
        assert!(zero.iter().all(|r| r.value.is_zero()));
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("param,generator,branch,value\n-1,M1,0,-4\n"));
    }

    #[test]
    fn octet_n1_branches_at_principal_point() {
        let ctx = Context::new(3, &Weight(vec![1, 1]), 400, None).unwrap();
        let cal = calibrated_generators(&ctx).unwrap();
        let sk = principal_restriction(&ctx, &cal, Recipe::SetC3Zero).unwrap();
        let rows = skeleton_points(&sk, &"-4:-4:0".parse().unwrap()).unwrap();
        let n1: Vec<f64> = rows
            .iter()
            .filter(|r| r.generator == "N1")
            .map(|r| r.value.to_f64())
            .collect();
        let s = 4.0 * 3f64.sqrt();
        assert!(n1.iter().any(|v| (v - s).abs() < 1e-12));
        assert!(n1.iter().any(|v| (v + s).abs() < 1e-12));
    }
}
