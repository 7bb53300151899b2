//! Univariate polynomials over Q: characteristic polynomials, gcd,
//! squarefree decomposition, rational roots and real root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::denominator_lcm;
use super::Rational;

/// Coefficients stored low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| Rational::from(x)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    /// `t - r`.
    pub fn linear_root(r: &Rational) -> Self {
        UPoly::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        UPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_default();
                    let b = o.coeffs.get(i).cloned().unwrap_or_default();
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut acc = UPoly::constant(Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let ld = d.lead();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &ld;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    r[i + j] -= &t;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's decomposition: factors `f_i` with `p = lead * Π f_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let mut c = fp.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_rem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&g).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Rational roots with multiplicities, ascending. Exact.
    pub fn rational_roots(&self) -> Vec<(Rational, u32)> {
        let mut out = Vec::new();
        for (factor, mult) in self.squarefree_decomposition() {
            for r in squarefree_rational_roots(&factor) {
                out.push((r, mult));
            }
        }
        out.sort();
        out
    }

    /// Removes all rational roots, returning the rest (monic).
    pub fn strip_rational_roots(&self) -> UPoly {
        let mut p = self.monic();
        for (r, m) in self.rational_roots() {
            let lin = UPoly::linear_root(&r);
            for _ in 0..m {
                p = p.div_rem(&lin).0;
            }
        }
        p
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_real_roots(&self, a: &Rational, b: &Rational) -> usize {
        let seq = sturm_sequence(&self.squarefree_part());
        let va = sign_changes(&seq, a);
        let vb = sign_changes(&seq, b);
        va.saturating_sub(vb)
    }

    /// Distinct real roots, each isolated to an interval of width below `tol`.
    /// Exact rational roots are returned as degenerate intervals.
    pub fn real_root_intervals(&self, tol: &Rational) -> Vec<(Rational, Rational)> {
        let p = self.squarefree_part();
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let seq = sturm_sequence(&p);
        let mut hi = Rational::one();
        let bound = cauchy_bound(&p);
        while hi <= bound {
            hi = &hi * &Rational::from(2);
        }
        let lo = -&hi;
        let mut out = Vec::new();
        let mut stack = vec![(lo, hi)];
        while let Some((a, b)) = stack.pop() {
            let n = sign_changes(&seq, &a) - sign_changes(&seq, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(refine_simple_root(&seq[0], a, b, tol));
                continue;
            }
            let m = (&a + &b) / Rational::from(2);
            stack.push((m.clone(), b));
            stack.push((a, m));
        }
        out.sort();
        out
    }

    /// Real roots as floats, refined by bisection to near machine precision.
    pub fn real_roots_f64(&self) -> Vec<f64> {
        let tol = Rational::new(1, 1i64 << 52);
        self.real_root_intervals(&tol)
            .into_iter()
            .map(|(a, b)| {
                if a == b {
                    return a.to_f64();
                }
                ((&a + &b) / Rational::from(2)).to_f64()
            })
            .collect()
    }
}

/// Bisection on sign changes for the only root of a squarefree `p` in `(a, b]`.
fn refine_simple_root(
    p: &IntPoly,
    mut a: Rational,
    mut b: Rational,
    tol: &Rational,
) -> (Rational, Rational) {
    let sb = p.sign_at(&b);
    if sb == 0 {
        return (b.clone(), b);
    }
    let two = Rational::from(2);
    while &b - &a >= *tol {
        let m = (&a + &b) / &two;
        let v = p.sign_at(&m);
        if v == 0 {
            return (m.clone(), m);
        }
        if v == sb {
            b = m;
        } else {
            a = m;
        }
    }
    (a, b)
}

fn cauchy_bound(p: &UPoly) -> Rational {
    let l = p.lead().abs();
    let m = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / &l)
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + m
}

fn sturm_sequence(p: &UPoly) -> Vec<IntPoly> {
    let mut seq = vec![IntPoly::from_upoly(p), IntPoly::from_upoly(&p.derivative())];
    let mut prev = p.clone();
    let mut cur = seq[1].to_upoly();
    if cur.is_zero() {
        seq.pop();
        return seq;
    }
    loop {
        let (_, r) = prev.div_rem(&cur);
        if r.is_zero() {
            break;
        }
        let next = IntPoly::from_upoly(&r.scale(&-Rational::one()));
        prev = cur;
        cur = next.to_upoly();
        seq.push(next);
    }
    seq
}

/// Integer coefficients, a positive multiple of a rational polynomial; same signs everywhere.
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn from_upoly(p: &UPoly) -> Self {
        let d = Rational::from(denominator_lcm(p.coeffs.iter()));
        let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * &d).floor()).collect();
        let content = ints
            .iter()
            .fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
        if content.is_zero() || content.is_one() {
            return IntPoly(ints);
        }
        IntPoly(ints.into_iter().map(|c| c / &content).collect())
    }

    fn to_upoly(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .map(|c| Rational::from_int(c.clone()))
                .collect(),
        )
    }

    /// Sign of `p(x)`, from `q^deg p(u/q)` with `x = u/q`.
    fn sign_at(&self, x: &Rational) -> i8 {
        let Some((top, rest)) = self.0.split_last() else {
            return 0;
        };
        let (u, q) = (x.numer(), x.denom());
        let mut acc = top.clone();
        let mut qk = BigInt::one();
        for c in rest.iter().rev() {
            qk *= q;
            acc = acc * u + c * &qk;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

fn sign_changes(seq: &[IntPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// Rational roots of a squarefree polynomial. With `t = s / D`, where `D`
/// clears the denominators of the monic form, the polynomial in `s` is monic
/// with integer coefficients, so its rational roots are integers; they are
/// found by isolating real roots and testing the integers nearby.
fn squarefree_rational_roots(p: &UPoly) -> Vec<Rational> {
    let p = p.monic();
    let deg = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    if deg == 1 {
        return vec![-&p.coeffs[0]];
    }
    let d = Rational::from(denominator_lcm(p.coeffs.iter()));
    // q(s) = D^deg p(s/D): coefficient of s^i is p_i D^(deg - i)
    let q = UPoly::new(
        p.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &d.pow((deg - i) as i32))
            .collect(),
    );
    let mut roots = Vec::new();
    for (a, b) in q.real_root_intervals(&Rational::new(1, 2)) {
        let lo = a.floor();
        let hi = b.floor() + BigInt::one();
        let mut k = lo;
        while k <= hi {
            let s = Rational::from(k.clone());
            if q.eval(&s).is_zero() {
                let r = &s / &d;
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
            k += BigInt::one();
        }
    }
    roots.sort();
    roots
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer content helper used when printing primitive forms.
pub fn primitive_integer_coeffs(p: &UPoly) -> Vec<BigInt> {
    let d = denominator_lcm(p.coeffs.iter());
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * &Rational::from(d.clone())).numer().clone())
        .collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
