//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial lives over a shared, ordered [`VarSet`]. Exponents are `i32`;
//! negative exponents are only accepted for variables declared Laurent (the
//! limit variable `w = z^{1/2}`), which is how half-integer powers of `z`
//! are carried without fractional exponent arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ExactError, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    /// Permits negative exponents.
    #[serde(default)]
    pub laurent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    vars: Vec<Var>,
}

impl VarSet {
    pub fn new(names: impl IntoIterator<Item = impl Into<String>>) -> Arc<VarSet> {
        Arc::new(VarSet {
            vars: names
                .into_iter()
                .map(|n| Var {
                    name: n.into(),
                    laurent: false,
                })
                .collect(),
        })
    }

    pub fn from_vars(vars: Vec<Var>) -> Result<Arc<VarSet>, ExactError> {
        for (i, v) in vars.iter().enumerate() {
            if v.name.is_empty() || vars[..i].iter().any(|u| u.name == v.name) {
                return Err(ExactError::Parse(format!(
                    "bad or duplicate variable {:?}",
                    v.name
                )));
            }
        }
        Ok(Arc::new(VarSet { vars }))
    }

    /// The single Laurent variable `w` used for subspace limits.
    pub fn laurent(name: &str) -> Arc<VarSet> {
        Arc::new(VarSet {
            vars: vec![Var {
                name: name.to_string(),
                laurent: true,
            }],
        })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }
}

pub type Exponents = Vec<i32>;

#[derive(Clone)]
pub struct MultiPoly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Exponents, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl MultiPoly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &Arc<VarSet>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn var_named(vars: &Arc<VarSet>, name: &str) -> Result<Self, ExactError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| ExactError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, i))
    }

    pub fn monomial(vars: &Arc<VarSet>, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent arity mismatch");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds from raw terms, validating arity and exponent domains.
    pub fn from_terms(
        vars: &Arc<VarSet>,
        terms: impl IntoIterator<Item = (Exponents, Rational)>,
    ) -> Result<Self, ExactError> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(ExactError::Arity {
                    expected: vars.len(),
                    got: e.len(),
                });
            }
            for (k, &x) in e.iter().enumerate() {
                if x < 0 && !vars.vars[k].laurent {
                    return Err(ExactError::NegativeExponent(vars.name(k).to_string()));
                }
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Constant term (coefficient of the zero exponent vector).
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.vars.len()])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Weighted degree of every term, if they all agree.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: i64 = e.iter().zip(weights).map(|(&x, &w)| x as i64 * w).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum())
            .max()
    }

    fn check(&self, other: &MultiPoly) -> Result<(), ExactError> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(ExactError::VariableMismatch)
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check(other)?;
        let mut out = MultiPoly::zero(&self.vars);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &MultiPoly, c: &Rational) {
        assert!(same_vars(&self.vars, &other.vars), "variable set mismatch");
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k != 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                out.add_term(e2, c * &Rational::from(k));
            }
        }
        out
    }

    pub fn partial_derivative_named(&self, name: &str) -> Result<MultiPoly, ExactError> {
        let i = self
            .vars
            .index_of(name)
            .ok_or_else(|| ExactError::UnknownVariable(name.to_string()))?;
        Ok(self.partial_derivative(i))
    }

    /// Evaluates at a rational point (Laurent variables must be nonzero).
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ExactError> {
        if point.len() != self.vars.len() {
            return Err(ExactError::Arity {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    if k < 0 && x.is_zero() {
                        return Err(ExactError::DivisionByZero);
                    }
                    t *= &x.pow(k);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitutes each variable by a polynomial over `target`.
    pub fn substitute(&self, images: &[MultiPoly], target: &Arc<VarSet>) -> MultiPoly {
        assert_eq!(images.len(), self.vars.len(), "substitution arity mismatch");
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); images.len()];
        let mut out = MultiPoly::zero(target);
        'terms: for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                assert!(k > 0, "substitution into negative exponent");
                if images[i].is_zero() {
                    continue 'terms;
                }
                let cache = &mut powers[i];
                while cache.len() < k as usize {
                    let next = match cache.last() {
                        Some(p) => p * &images[i],
                        None => images[i].clone(),
                    };
                    cache.push(next);
                }
                t = &t * &cache[k as usize - 1];
            }
            out.add_scaled(&t, &Rational::one());
        }
        out
    }

    /// Substitutes rational values for a subset of variables, keeping the set.
    pub fn specialize(&self, values: &[(usize, Rational)]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let mut coeff = c.clone();
            for (i, v) in values {
                let k = e2[*i];
                if k != 0 {
                    coeff *= &v.pow(k);
                    e2[*i] = 0;
                }
            }
            out.add_term(e2, coeff);
        }
        out
    }

    /// Re-expresses over another variable set by name; unknown variables must not occur.
    pub fn rebase(&self, target: &Arc<VarSet>) -> Result<MultiPoly, ExactError> {
        let map: Vec<Option<usize>> = (0..self.vars.len())
            .map(|i| target.index_of(self.vars.name(i)))
            .collect();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    let j = map[i]
                        .ok_or_else(|| ExactError::UnknownVariable(self.vars.name(i).into()))?;
                    e2[j] = k;
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Minimum exponent of variable `var` over all terms.
    pub fn min_exponent(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).min()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest terms first reads more naturally
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut factors = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), k)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("variable set mismatch")
    }
}

impl std::ops::Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("variable set mismatch")
    }
}

impl std::ops::Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("variable set mismatch")
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

/// JSON form: `{variables: [...], terms: [[[exponents...], "p/q"], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct PolyJson {
    pub variables: Vec<Var>,
    pub terms: Vec<(Exponents, Rational)>,
}

impl MultiPoly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            variables: self.vars.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<MultiPoly, ExactError> {
        if j.variables.len() > 4096 {
            return Err(ExactError::Parse("too many variables".into()));
        }
        let vars = VarSet::from_vars(j.variables.clone())?;
        MultiPoly::from_terms(&vars, j.terms.iter().cloned())
    }

    /// Parses the JSON polynomial form from text.
    pub fn parse_json(text: &str) -> Result<MultiPoly, ExactError> {
        let j: PolyJson =
            serde_json::from_str(text).map_err(|e| ExactError::Parse(e.to_string()))?;
        MultiPoly::from_json(&j)
    }
}
