//! The companion-matrix section and centralizers.

use std::sync::Arc;

use super::{BasisElement, LieAlgebra};
use crate::exact::{MultiPoly, PolyMatrix, QMatrix, Rational, VarSet};

/// Variables `c2..cn`.
pub fn section_vars(n: usize) -> Arc<VarSet> {
    VarSet::new((2..=n).map(|k| format!("c{k}")))
}

/// Companion matrix of `t^n + c_2 t^{n-2} + ... + c_n` over `Q[c_2..c_n]`.
///
/// Ones sit on the subdiagonal and `-c_{n-i}` in row `i` of the last column.
pub fn companion_section(n: usize) -> PolyMatrix {
    let vars = section_vars(n);
    let mut entries = vec![MultiPoly::zero(&vars); n * n];
    for i in 0..n - 1 {
        entries[(i + 1) * n + i] = MultiPoly::one(&vars);
    }
    for i in 0..n - 1 {
        let k = n - i;
        entries[i * n + n - 1] = -&MultiPoly::var(&vars, k - 2);
    }
    PolyMatrix::from_entries(n, n, &vars, entries).expect("consistent shape")
}

/// The companion matrix at rational values of `c_2..c_n`.
pub fn companion_point(n: usize, c: &[Rational]) -> QMatrix {
    assert_eq!(c.len(), n - 1, "expected values for c2..cn");
    companion_section(n).evaluate(c).expect("arity checked")
}

/// Lie coordinates of the section as polynomials in `c_2..c_n`.
pub fn section_coordinates(g: &LieAlgebra) -> Vec<MultiPoly> {
    let s = companion_section(g.n);
    let vars = s.vars().clone();
    g.elements
        .iter()
        .map(|el| match *el {
            BasisElement::E(i, j) => s.get(i, j).clone(),
            BasisElement::H(_) => MultiPoly::zero(&vars),
        })
        .collect()
}

/// Basis of the centralizer `g_x`, as coordinate vectors.
pub fn centralizer(g: &LieAlgebra, x: &[Rational]) -> Vec<Vec<Rational>> {
    g.ad(x).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_sl;

    #[test]
    fn sl2_companion() {
        let c = companion_section(2);
        assert_eq!(c.get(0, 1).to_string(), "-c2");
        assert!(c.get(0, 0).is_zero());
        assert!(c.get(1, 0).as_constant().unwrap().is_one());
    }

    #[test]
    fn charpoly_convention() {
        let m = companion_point(3, &[Rational::from(5), Rational::from(-7)]);
        let chi = m.charpoly();
        assert_eq!(
            chi.coeffs(),
            &[
                Rational::from(-7),
                Rational::from(5),
                Rational::zero(),
                Rational::one()
            ]
        );
        let m = companion_point(3, &[Rational::zero(), Rational::zero()]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn centralizer_dims() {
        let (g, _, t) = build_sl(3).unwrap();
        assert_eq!(centralizer(&g, &t.h).len(), 2);
        assert_eq!(centralizer(&g, &t.e).len(), 2);
        assert_eq!(centralizer(&g, &vec![Rational::zero(); 8]).len(), 8);
    }

    #[test]
    fn section_points_are_regular() {
        let (g, _, _) = build_sl(4).unwrap();
        for c in [[1, -2, 3], [0, 0, 0], [-4, 0, 9]] {
            let c: Vec<Rational> = c.iter().map(|&v| Rational::from(v)).collect();
            let m = companion_point(4, &c);
            let x = g.coords(&m).unwrap();
            assert_eq!(centralizer(&g, &x).len(), 3);
        }
    }
}
