//! Weights, roots and the Weyl group `S_n` in fundamental-weight coordinates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LieError;
use crate::exact::Rational;

/// A weight in the basis of fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `omega_k`, one-based.
    pub fn fundamental(rank: usize, k: usize) -> Self {
        let mut w = vec![0; rank];
        w[k - 1] = 1;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    /// Coordinates `a_1..a_n` in the `epsilon` basis, normalized by `a_n = 0`.
    pub fn to_eps(&self) -> Vec<i64> {
        let n = self.0.len() + 1;
        let mut a = vec![0; n];
        for j in (0..n - 1).rev() {
            a[j] = a[j + 1] + self.0[j];
        }
        a
    }

    pub fn from_eps(a: &[i64]) -> Weight {
        Weight(a.windows(2).map(|w| w[0] - w[1]).collect())
    }

    /// Parses comma-separated fundamental-weight coefficients, e.g. `"1,1"`.
    pub fn parse(s: &str, rank: usize) -> Result<Weight, LieError> {
        let w: Weight = s.parse()?;
        if w.rank() != rank {
            return Err(LieError::WeightArity(s.to_string(), w.rank(), rank));
        }
        Ok(w)
    }
}

impl FromStr for Weight {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, LieError> {
        let bad = || LieError::BadWeight(s.chars().take(64).collect());
        if s.len() > 1024 || s.trim().is_empty() {
            return Err(bad());
        }
        let coords = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.iter().any(|c| c.unsigned_abs() > 1 << 20) {
            return Err(bad());
        }
        Ok(Weight(coords))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub n: usize,
    /// Positive roots `alpha_i + ... + alpha_{j-1}` as pairs `(i, j)`, zero-based, `i < j`.
    pub positive_roots: Vec<(usize, usize)>,
    /// Degrees `2..=n` of the basic invariants.
    pub degrees: Vec<usize>,
}

impl RootDatum {
    pub fn new(n: usize) -> Self {
        let mut positive_roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                positive_roots.push((i, j));
            }
        }
        RootDatum {
            n,
            positive_roots,
            degrees: (2..=n).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// Simple root `alpha_i` (one-based) in fundamental coordinates: a row of the Cartan matrix.
    pub fn simple_root(&self, i: usize) -> Weight {
        let r = self.rank();
        let mut w = vec![0; r];
        w[i - 1] = 2;
        if i >= 2 {
            w[i - 2] = -1;
        }
        if i < r {
            w[i] = -1;
        }
        Weight(w)
    }

    /// Root `(i, j)` in fundamental coordinates.
    pub fn root_weight(&self, (i, j): (usize, usize)) -> Weight {
        let mut a = vec![0; self.n];
        a[i] = 1;
        a[j] = -1;
        Weight::from_eps(&a)
    }

    /// `(omega_i, omega_j)` for one-based indices.
    pub fn fundamental_pairing(&self, i: usize, j: usize) -> Rational {
        let (lo, hi) = (i.min(j), i.max(j));
        Rational::new((lo * (self.n - hi)) as i64, self.n as i64)
    }

    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Rational {
        let mut s = Rational::zero();
        for (i, &x) in a.0.iter().enumerate() {
            for (j, &y) in b.0.iter().enumerate() {
                if x != 0 && y != 0 {
                    s += &(self.fundamental_pairing(i + 1, j + 1) * Rational::from(x * y));
                }
            }
        }
        s
    }

    /// `(lambda, alpha)` for a positive root, an integer.
    pub fn pair_root(&self, lambda: &Weight, (i, j): (usize, usize)) -> i64 {
        lambda.0[i..j].iter().sum()
    }

    /// Coefficients of `lambda` in the simple roots, if it lies in the root lattice.
    pub fn simple_root_coords(&self, lambda: &Weight) -> Option<Vec<i64>> {
        let mut a = lambda.to_eps();
        let n = self.n as i64;
        let s: i64 = a.iter().sum();
        if s % n != 0 {
            return None;
        }
        let shift = s / n;
        for x in a.iter_mut() {
            *x -= shift;
        }
        let mut k = Vec::with_capacity(self.rank());
        let mut acc = 0;
        for x in &a[..self.n - 1] {
            acc += x;
            k.push(acc);
        }
        Some(k)
    }
}

/// A permutation of the `epsilon` coordinates with its sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub sign: i64,
}

impl WeylElement {
    pub fn act(&self, lambda: &Weight) -> Weight {
        let a = lambda.to_eps();
        let mut b = vec![0; a.len()];
        for (j, &p) in self.perm.iter().enumerate() {
            b[p] = a[j];
        }
        Weight::from_eps(&b)
    }
}

/// All `n!` elements of `S_n`, in lexicographic order of permutations.
pub fn weyl_group(n: usize) -> Result<Vec<WeylElement>, LieError> {
    if n > 7 {
        return Err(LieError::WeylGuard(n));
    }
    if n < 2 {
        return Err(LieError::RankTooSmall(n));
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        out.push(WeylElement {
            perm: perm.clone(),
            sign: if inv % 2 == 0 { 1 } else { -1 },
        });
        // next permutation
        let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    Ok(out)
}

/// `prod (mu + rho, alpha) / (rho, alpha)` over positive roots.
pub fn weyl_dimension(mu: &Weight) -> u64 {
    let n = mu.rank() + 1;
    let rd = RootDatum::new(n);
    let shifted = mu.add(&rd.rho());
    let mut num = Rational::one();
    for &r in &rd.positive_roots {
        num *= &Rational::new(rd.pair_root(&shifted, r), rd.pair_root(&rd.rho(), r));
    }
    num.to_i64().expect("Weyl dimension is an integer") as u64
}

/// Dominant weights `lambda <= mu` in dominance order, i.e. the dominant weights of `V^mu`.
pub fn dominant_weights_below(mu: &Weight) -> Vec<Weight> {
    let r = mu.rank();
    let rd = RootDatum::new(r + 1);
    // coefficients of mu in simple roots bound those of mu - lambda
    let n = (r + 1) as i64;
    let bounds: Vec<i64> = (1..=r)
        .map(|i| {
            let s: i64 = (1..=r)
                .map(|j| (i.min(j) as i64) * (n - i.max(j) as i64) * mu.0[j - 1])
                .sum();
            s / n
        })
        .collect();
    let mut out = Vec::new();
    let mut k = vec![0i64; r];
    loop {
        let mut lam = mu.clone();
        for (i, &ki) in k.iter().enumerate() {
            let a = rd.simple_root(i + 1);
            for (x, y) in lam.0.iter_mut().zip(&a.0) {
                *x -= ki * y;
            }
        }
        if lam.is_dominant() {
            out.push(lam);
        }
        let mut pos = 0;
        while pos < r {
            k[pos] += 1;
            if k[pos] <= bounds[pos] {
                break;
            }
            k[pos] = 0;
            pos += 1;
        }
        if pos == r {
            break;
        }
    }
    out.sort_by(|a, b| {
        height_from(mu, a, &rd)
            .cmp(&height_from(mu, b, &rd))
            .then(b.cmp(a))
    });
    out
}

fn height_from(mu: &Weight, lam: &Weight, rd: &RootDatum) -> i64 {
    rd.simple_root_coords(&mu.sub(lam))
        .map_or(i64::MAX, |k| k.iter().sum())
}

/// The unique dominant weight congruent to `mu` modulo the root lattice that is zero or minuscule.
pub fn minuscule_min(mu: &Weight) -> Weight {
    let r = mu.rank();
    let n = r as i64 + 1;
    let k: i64 =
        mu.0.iter()
            .enumerate()
            .map(|(i, &c)| (i as i64 + 1) * c)
            .sum::<i64>()
            .rem_euclid(n);
    if k == 0 {
        Weight::zero(r)
    } else {
        Weight::fundamental(r, k as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_group_sizes_and_signs() {
        let w2 = weyl_group(2).unwrap();
        assert_eq!(w2.len(), 2);
        assert_eq!(w2.iter().map(|w| w.sign).sum::<i64>(), 0);
        let w3 = weyl_group(3).unwrap();
        assert_eq!(w3.len(), 6);
        assert_eq!(w3.iter().map(|w| w.sign).sum::<i64>(), 0);
        assert!(weyl_group(8).is_err());
    }

    #[test]
    fn longest_element_negates_rho() {
        let rd = RootDatum::new(3);
        let rho = rd.rho();
        let neg = Weight(rho.0.iter().map(|x| -x).collect());
        assert!(weyl_group(3).unwrap().iter().any(|w| w.act(&rho) == neg));
    }

    #[test]
    fn rho_pairings() {
        let rd = RootDatum::new(3);
        assert_eq!(rd.positive_roots.len(), 3);
        assert_eq!(rd.pair_root(&rd.rho(), (0, 2)), 2);
        for i in 1..=2 {
            let a = rd.simple_root(i);
            assert_eq!(rd.inner_product(&rd.rho(), &a), Rational::one());
            assert_eq!(rd.inner_product(&a, &a), Rational::from(2));
        }
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dimension(&Weight(vec![4])), 5);
        assert_eq!(weyl_dimension(&Weight(vec![3, 0])), 10);
        assert_eq!(weyl_dimension(&Weight(vec![1, 1])), 8);
        assert_eq!(weyl_dimension(&Weight(vec![0, 1, 0])), 6);
    }

    #[test]
    fn minuscule_reps() {
        assert_eq!(minuscule_min(&Weight(vec![1, 1])), Weight(vec![0, 0]));
        assert_eq!(minuscule_min(&Weight(vec![3, 0])), Weight(vec![0, 0]));
        assert_eq!(minuscule_min(&Weight(vec![5])), Weight(vec![1]));
        assert_eq!(minuscule_min(&Weight(vec![2, 1])), Weight(vec![1, 0]));
    }

    #[test]
    fn dominant_weights_of_octet() {
        let d = dominant_weights_below(&Weight(vec![1, 1]));
        assert_eq!(d, vec![Weight(vec![1, 1]), Weight(vec![0, 0])]);
        let d = dominant_weights_below(&Weight(vec![3, 0]));
        assert_eq!(
            d,
            vec![Weight(vec![3, 0]), Weight(vec![1, 1]), Weight(vec![0, 0])]
        );
    }

    #[test]
    fn root_lattice_membership() {
        let rd = RootDatum::new(3);
        assert_eq!(rd.simple_root_coords(&Weight(vec![1, 1])), Some(vec![1, 1]));
        assert_eq!(rd.simple_root_coords(&Weight(vec![1, 0])), None);
        assert_eq!(rd.simple_root_coords(&Weight(vec![3, 0])), Some(vec![2, 1]));
    }

    #[test]
    fn parse_weights() {
        assert_eq!("1,1".parse::<Weight>().unwrap(), Weight(vec![1, 1]));
        assert!("1,,1".parse::<Weight>().is_err());
        assert!(Weight::parse("1", 2).is_err());
    }
}
