use bigalg::exact::{QMatrix, Rational};
use bigalg::lie::{
    build_sl, centralizer, companion_point, weyl_dimension, weyl_group, RootDatum, Weight,
};
use bigalg::rep::{build_irrep, CacheFile};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q))
}

#[test]
fn jacobi_on_all_basis_triples() {
    for n in 2..=4 {
        let (g, _, _) = build_sl(n).unwrap();
        let d = g.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let (x, y, z) = (g.unit(a), g.unit(b), g.unit(c));
                    let t1 = g.bracket(&x, &g.bracket(&y, &z));
                    let t2 = g.bracket(&y, &g.bracket(&z, &x));
                    let t3 = g.bracket(&z, &g.bracket(&x, &y));
                    assert!(
                        t1.iter()
                            .zip(&t2)
                            .zip(&t3)
                            .all(|((p, q), r)| (p + q + r).is_zero()),
                        "sl{n} {a} {b} {c}"
                    );
                }
            }
        }
    }
}

#[test]
fn killing_form_is_a_multiple_of_the_trace_form() {
    for n in 2..=5 {
        let (g, _, _) = build_sl(n).unwrap();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let ad = g.ad(&g.unit(i)).mul(&g.ad(&g.unit(j))).trace();
                let tr = g.basis[i].mul(&g.basis[j]).trace();
                assert_eq!(g.killing[(i, j)], ad);
                assert_eq!(ad, tr * Rational::from(2 * n as i64));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn companion_points_are_regular(n in 2usize..=5, seed in proptest::collection::vec(rational(), 4)) {
        let (g, _, _) = build_sl(n).unwrap();
        let c = &seed[..n - 1];
        let x = g.coords(&companion_point(n, c)).unwrap();
        prop_assert_eq!(centralizer(&g, &x).len(), n - 1);
    }

    #[test]
    fn weyl_group_preserves_the_inner_product(
        n in 2usize..=4,
        a in proptest::collection::vec(-4i64..=4, 3),
        b in proptest::collection::vec(-4i64..=4, 3),
    ) {
        let rd = RootDatum::new(n);
        let (l, m) = (Weight(a[..n - 1].to_vec()), Weight(b[..n - 1].to_vec()));
        let base = rd.inner_product(&l, &m);
        for w in weyl_group(n).unwrap() {
            prop_assert_eq!(rd.inner_product(&w.act(&l), &w.act(&m)), base.clone());
        }
    }

    #[test]
    fn irreducible_modules_are_faithful_and_weyl_symmetric(
        n in 2usize..=4,
        mu in proptest::collection::vec(0i64..=2, 3),
    ) {
        let mu = Weight(mu[..n - 1].to_vec());
        prop_assume!(weyl_dimension(&mu) <= 60);
        let (g, _, _) = build_sl(n).unwrap();
        let rep = build_irrep(&g, &mu, 400).unwrap();
        prop_assert_eq!(rep.dim() as u64, weyl_dimension(&mu));
        prop_assert!(rep.bracket_fidelity(&g));
        let table = rep.weight_table();
        prop_assert_eq!(table.values().map(Vec::len).sum::<usize>(), rep.dim());
        for w in weyl_group(n).unwrap() {
            for (lambda, idx) in &table {
                prop_assert_eq!(table.get(&w.act(lambda)).map(Vec::len), Some(idx.len()));
            }
        }
        let text = serde_json::to_string(&CacheFile::from_rep(&rep)).unwrap();
        let back = CacheFile::parse(&text).unwrap().into_rep();
        prop_assert_eq!(&back.rho, &rep.rho);
        prop_assert_eq!(&back.weights, &rep.weights);
        prop_assert!(back.rho.iter().all(|m: &QMatrix| m.rows() == rep.dim()));
    }
}
