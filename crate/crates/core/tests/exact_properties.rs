use bigalg::big::parse_poly;
use bigalg::exact::{
    joint_invariant_decomposition, limit_of_span, span_rank, MultiPoly, PolyMatrix, QMatrix,
    Rational, UPoly, VarSet,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q))
}

fn matrix(max: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(rational(), c), r)
            .prop_map(QMatrix::from_rows)
    })
}

fn square(n: usize) -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), n).prop_map(|rows| {
        QMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Rational::from).collect())
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_annihilated_and_rank_nullity_holds(m in matrix(6)) {
        let k = m.kernel();
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Rational::is_zero));
        }
        prop_assert_eq!(span_rank(&k, m.cols()), k.len());
        prop_assert_eq!(m.rank() + k.len(), m.cols());
    }

    #[test]
    fn rational_text_round_trip(x in rational()) {
        let back: Rational = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn decimal_rounding_is_within_half_an_ulp(x in rational(), digits in 0u32..12) {
        let r = x.round_decimal(digits);
        let ulp = Rational::new(1, 10i64.pow(digits));
        prop_assert!((&r - &x).abs() * Rational::from(2) <= ulp);
        let text = x.to_decimal_string(digits);
        let back = Rational::from_f64(text.parse::<f64>().unwrap()).unwrap();
        prop_assert!((&back - &r).abs() < Rational::new(1i64, 1_000_000_000_000i64));
    }

    #[test]
    fn root_intervals_bracket_sign_changes(roots in proptest::collection::vec(-8i64..=8, 1..5), extra in rational()) {
        let mut p = UPoly::constant(Rational::one());
        for r in &roots {
            p = p.mul(&UPoly::linear_root(&Rational::from(*r)));
        }
        p = p.mul(&UPoly::new(vec![extra.clone() * extra.clone() + Rational::one(), Rational::zero(), Rational::one()]));
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        let tol = Rational::new(1, 1 << 20);
        let iv = p.real_root_intervals(&tol);
        prop_assert_eq!(iv.len(), distinct.len());
        for ((a, b), r) in iv.iter().zip(&distinct) {
            let r = Rational::from(*r);
            prop_assert!(*a <= r && r <= *b && &(b - a) < &tol);
        }
    }

    #[test]
    fn joint_decomposition_is_invariant_and_complete(m in square(5), a in -2i64..=2) {
        let n = m.rows();
        let second = m.mul(&m).add(&m.scale(&Rational::from(a)));
        let ms = [m.clone(), second];
        let blocks = joint_invariant_decomposition(&ms).unwrap();
        prop_assert_eq!(blocks.iter().map(|b| b.dim()).sum::<usize>(), n);
        let all: Vec<Vec<Rational>> = blocks.iter().flat_map(|b| b.basis.clone()).collect();
        prop_assert_eq!(span_rank(&all, n), n);
        for b in &blocks {
            for x in &ms {
                prop_assert!(x.restrict(&b.basis).is_some());
            }
        }
    }

    #[test]
    fn subspace_limits_keep_dimension(entries in proptest::collection::vec((-3i64..=3, 0i32..3), 12)) {
        let w = VarSet::new(["w"]);
        let polys: Vec<MultiPoly> = entries
            .iter()
            .map(|(c, e)| MultiPoly::monomial(&w, vec![*e], Rational::from(*c)))
            .collect();
        let cols = PolyMatrix::from_entries(4, 3, &w, polys).unwrap();
        let generic = cols.evaluate(&[Rational::new(7, 3)]).unwrap();
        prop_assume!(generic.rank() == 3);
        let lim = limit_of_span(&cols, false).unwrap();
        prop_assert_eq!(lim.len(), 3);
        prop_assert_eq!(span_rank(&lim, 4), 3);
    }

    #[test]
    fn polynomial_text_round_trip(terms in proptest::collection::vec(((0i32..4, 0i32..4), -9i64..=9), 0..6)) {
        let vars = VarSet::new(["M1", "c2"]);
        let mut p = MultiPoly::zero(&vars);
        for ((a, b), c) in terms {
            p.add_term(vec![a, b], Rational::from(c));
        }
        let back = parse_poly(&p.to_string(), &vars).unwrap();
        prop_assert_eq!(&back, &p);
        let json = serde_json::to_string(&p.to_json()).unwrap();
        prop_assert_eq!(MultiPoly::parse_json(&json).unwrap(), p.clone());
        prop_assert_eq!(serde_json::to_string(&p.to_json()).unwrap(), json);
    }
}
