use bigalg::acceptance::sl2_product_relation;
use bigalg::big::{
    algebra_span, c_weights, calibrated_generators, commutation_check, d_probes, derive_relations,
    evaluate_relation, freeness_and_rank_check, hilbert_series, ideal_dimension, relation,
    relation_degree,
};
use bigalg::exact::{QMatrix, Rational};
use bigalg::kirillov::{
    big_operator, commutator, equivariance_check, medium_operator, small_operator, wei_d,
    wei_d_in_basis, Context,
};
use bigalg::lie::Weight;
use bigalg::multiplicity::generators_at_e;
use proptest::prelude::*;

fn ctx(n: usize, mu: &[i64]) -> Context {
    Context::new(n, &Weight(mu.to_vec()), 400, None).unwrap()
}

fn small_module() -> impl Strategy<Value = (usize, Vec<i64>)> {
    prop_oneof![
        (0i64..=5).prop_map(|k| (2, vec![k])),
        (0i64..=2, 0i64..=2)
            .prop_filter("dim bound", |(a, b)| a + b <= 2)
            .prop_map(|(a, b)| (3, vec![a, b])),
    ]
}

fn square(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-2i64..=2, n * n)
}

#[test]
fn big_operators_are_equivariant_and_homogeneous() {
    for (n, mu) in [
        (2, vec![3]),
        (3, vec![1, 0]),
        (3, vec![1, 1]),
        (4, vec![1, 0, 0]),
    ] {
        let c = ctx(n, &mu);
        assert!(equivariance_check(&c, &small_operator(&c)));
        for k in 2..=n {
            assert!(
                equivariance_check(&c, &medium_operator(&c, k).unwrap()),
                "medium {k}"
            );
            for i in 1..k {
                let b = big_operator(&c, i, k).unwrap();
                assert_eq!(b.degree, Some((k - i) as i64), "sl{n} {mu:?} D^{i}(c{k})");
                assert!(equivariance_check(&c, &b), "sl{n} {mu:?} D^{i}(c{k})");
            }
        }
    }
}

#[test]
fn big_operators_commute_with_each_other_and_with_mediums() {
    for (n, mu) in [
        (2, vec![2]),
        (3, vec![2, 0]),
        (3, vec![1, 1]),
        (4, vec![0, 1, 0]),
    ] {
        let c = ctx(n, &mu);
        let cal = calibrated_generators(&c).unwrap();
        let mediums: Vec<_> = (2..=n).map(|k| medium_operator(&c, k).unwrap()).collect();
        let report = commutation_check(&cal.kirillov, &mediums);
        assert!(report.pass(), "sl{n} {mu:?}");
        for a in &cal.kirillov {
            for b in &cal.kirillov {
                assert!(commutator(a, b).unwrap().matrix.is_zero());
            }
        }
        for p in d_probes(&c, &cal.kirillov) {
            for m in &mediums {
                assert!(
                    commutator(m, &p).unwrap().matrix.is_zero(),
                    "sl{n} {mu:?} {}",
                    p.label
                );
            }
        }
    }
}

#[test]
fn d_of_the_small_operator_is_scalar() {
    // D(rho(A)) = 1/2 sum rho(X^i) rho(X_i), the Casimir, so it commutes with everything
    for (n, mu) in [(2, vec![4]), (3, vec![2, 1])] {
        let c = ctx(n, &mu);
        let d = wei_d(&c, &small_operator(&c));
        assert_eq!(d.degree, Some(0));
        for r in &c.rep.rho {
            assert!(d.matrix.const_commutator(r).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn wei_d_is_basis_independent_sl2(entries in square(3), k in 1i64..=3) {
        let t = QMatrix::from_rows(entries.chunks(3).map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect());
        prop_assume!(!t.determinant().unwrap().is_zero());
        let c = ctx(2, &[k]);
        let f = big_operator(&c, 1, 2).unwrap();
        for a in [f.clone(), f.mul(&f), small_operator(&c)] {
            prop_assert_eq!(wei_d_in_basis(&c, &a, &t).matrix, wei_d(&c, &a).matrix);
        }
    }

    #[test]
    fn wei_d_is_basis_independent_sl3(entries in square(8)) {
        let mut t = QMatrix::identity(8);
        for (i, x) in entries.iter().enumerate() {
            let (r, s) = (i / 8, i % 8);
            if r > s {
                t[(r, s)] = Rational::from(*x);
            }
        }
        // a lower unitriangular change of basis composed with a diagonal rescaling
        let diag: Vec<Rational> = (0..8).map(|i| Rational::from(1 + (entries[i] + 2) % 3)).collect();
        let t = t.mul(&QMatrix::diagonal(&diag));
        let c = ctx(3, &[1, 0]);
        let a = big_operator(&c, 1, 3).unwrap();
        prop_assert_eq!(wei_d_in_basis(&c, &a, &t).matrix, wei_d(&c, &a).matrix);
    }

    #[test]
    fn hilbert_methods_agree((n, mu) in small_module()) {
        let c = ctx(n, &mu);
        let cal = calibrated_generators(&c).unwrap();
        let gens = generators_at_e(&c, &cal);
        let report = hilbert_series(&c, &gens);
        prop_assert!(report.pass(), "{:?}", report);
        prop_assert_eq!(report.closed_form.at_one(), c.dim() as i64);
        let mats: Vec<QMatrix> = gens.into_iter().map(|(m, _)| m).collect();
        prop_assert_eq!(algebra_span(&mats, c.dim()).len(), c.dim());
    }

    #[test]
    fn derived_relations_annihilate((n, mu) in small_module()) {
        let c = ctx(n, &mu);
        let cal = calibrated_generators(&c).unwrap();
        let search = derive_relations(&cal.section, &cal.names(), n, 2 * n as i64);
        for (d, r) in &search.relations {
            prop_assert!(evaluate_relation(r, &cal.section, n).is_zero(), "{}", r);
            prop_assert_eq!(relation_degree(r, &search.weights), Some(*d));
        }
        for dd in &search.per_degree {
            prop_assert_eq!(ideal_dimension(&search.relations, &search.weights, dd.degree), dd.kernel_dim);
        }
    }

    #[test]
    fn generators_are_free_at_regular_points((n, mu) in small_module(), seed in 0u64..1000) {
        let c = ctx(n, &mu);
        let cal = calibrated_generators(&c).unwrap();
        prop_assert!(freeness_and_rank_check(&cal.section, n, seed, 2).pass());
    }
}

#[test]
fn product_relations_lie_in_the_derived_ideal() {
    for k in 1..=5i64 {
        let c = ctx(2, &[k]);
        let cal = calibrated_generators(&c).unwrap();
        let search = derive_relations(&cal.section, &cal.names(), 2, k + 2);
        let product = relation(&cal, 2, &sl2_product_relation(k)).unwrap();
        let mut weights = vec![1];
        weights.extend(c_weights(2));
        let d = relation_degree(&product, &weights).unwrap();
        let mut extended = search.relations.clone();
        extended.push((d, product));
        for dd in &search.per_degree {
            assert_eq!(
                ideal_dimension(&extended, &weights, dd.degree),
                ideal_dimension(&search.relations, &weights, dd.degree),
                "k = {k}, degree {}",
                dd.degree
            );
        }
    }
}
