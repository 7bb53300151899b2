//! Laurent polynomials in `q` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: BTreeMap<i64, i64>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn one() -> Self {
        QPolynomial::monomial(0, 1)
    }

    pub fn monomial(exp: i64, c: i64) -> Self {
        let mut p = QPolynomial::zero();
        p.add_term(exp, c);
        p
    }

    /// From coefficients of `q^0, q^1, ...`.
    pub fn from_coeffs(c: &[i64]) -> Self {
        let mut p = QPolynomial::zero();
        for (i, &v) in c.iter().enumerate() {
            p.add_term(i as i64, v);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert(0);
        *e = e.checked_add(c).expect("q-polynomial coefficient overflow");
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    pub fn shift(&self, by: i64) -> Self {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + by, c)).collect(),
        }
    }

    /// `q -> q^{-1}`.
    pub fn reflect(&self) -> Self {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    pub fn add(&self, o: &QPolynomial) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &o.coeffs {
            out.add_term(e, c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = QPolynomial::zero();
        for (&e, &c) in &self.coeffs {
            out.add_term(
                e,
                c.checked_mul(k).expect("q-polynomial coefficient overflow"),
            );
        }
        out
    }

    pub fn mul(&self, o: &QPolynomial) -> Self {
        let mut out = QPolynomial::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &o.coeffs {
                out.add_term(
                    e1 + e2,
                    c1.checked_mul(c2)
                        .expect("q-polynomial coefficient overflow"),
                );
            }
        }
        out
    }

    /// Exact division by a polynomial with lowest coefficient ±1; `None` if it does not divide.
    pub fn div_exact(&self, d: &QPolynomial) -> Option<QPolynomial> {
        let dmin = d.min_exp()?;
        let dl = d.coeff(dmin);
        if dl != 1 && dl != -1 {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = QPolynomial::zero();
        let dmax = d.max_exp().unwrap();
        while let Some(rmin) = rem.min_exp() {
            let rmax = rem.max_exp().unwrap();
            if rmax - rmin < dmax - dmin {
                return None;
            }
            let c = rem.coeff(rmin) * dl;
            let e = rmin - dmin;
            quot.add_term(e, c);
            rem = rem.add(&d.mul(&QPolynomial::monomial(e, -c)));
        }
        Some(quot)
    }

    /// Pairs `(exponent, coefficient)` ascending, the JSON shape used by the CLI.
    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.coeffs.iter().map(|(&e, &c)| (e, c)).collect()
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut p = QPolynomial::zero();
        for &(e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(i64, i64)>::deserialize(d)?;
        Ok(QPolynomial::from_pairs(&pairs))
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&e, &c)| match (e, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "q".to_string(),
                (e, 1) => format!("q^{e}"),
                (1, c) => format!("{c}q"),
                (e, c) => format!("{c}q^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        // (1 - q^4)(1 - q^5) / ((1 - q)(1 - q^2))
        let num = QPolynomial::from_coeffs(&[1, 0, 0, 0, -1])
            .mul(&QPolynomial::from_coeffs(&[1, 0, 0, 0, 0, -1]));
        let den = QPolynomial::from_coeffs(&[1, -1]).mul(&QPolynomial::from_coeffs(&[1, 0, -1]));
        let q = num.div_exact(&den).unwrap();
        assert_eq!(q.at_one(), 10);
        assert_eq!(q.mul(&den), num);
        assert!(QPolynomial::from_coeffs(&[1, 1])
            .div_exact(&QPolynomial::from_coeffs(&[1, 0, 1]))
            .is_none());
    }

    #[test]
    fn pair_form() {
        let p = QPolynomial::from_coeffs(&[0, 1, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[1,1],[2,1]]");
    }
}
