use bigalg::big::{calibrated_generators, derive_relations, Calibrated};
use bigalg::exact::{QMatrix, Rational};
use bigalg::kirillov::Context;
use bigalg::lie::Weight;
use bigalg::spectra::{
    eval_commuting, principal_restriction, real_branches, sigma_action, Grid, Recipe, Skeleton,
};
use proptest::prelude::*;

fn setup(n: usize, mu: &[i64]) -> (Context, Calibrated) {
    let c = Context::new(n, &Weight(mu.to_vec()), 400, None).unwrap();
    let cal = calibrated_generators(&c).unwrap();
    (c, cal)
}

fn skeleton_case() -> impl Strategy<Value = (usize, Vec<i64>, Recipe)> {
    prop_oneof![
        (1i64..=5).prop_map(|k| (2, vec![k], Recipe::Identity)),
        (0i64..=2, 0i64..=2)
            .prop_filter("nontrivial", |(a, b)| a + b > 0 && a + b <= 3)
            .prop_map(|(a, b)| (3, vec![a, b], Recipe::SetC3Zero)),
        (0i64..=2, 0i64..=2)
            .prop_filter("nontrivial", |(a, b)| a + b > 0 && a + b <= 2)
            .prop_map(|(a, b)| (3, vec![a, b], Recipe::PullbackEPlusTf)),
    ]
}

fn param() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=7).prop_map(|(p, q)| Rational::new(p, q))
}

fn relations_at(sk: &Skeleton, cal: &Calibrated, n: usize, t: &Rational) -> Vec<QMatrix> {
    let mats = sk.at(t).unwrap();
    let dim = mats[0].rows();
    let mut all = mats.clone();
    for c in &sk.c_images {
        all.push(QMatrix::scalar(
            dim,
            &c.evaluate(std::slice::from_ref(t)).unwrap(),
        ));
    }
    let search = derive_relations(&cal.section, &cal.names(), n, 2 * n as i64);
    search
        .relations
        .iter()
        .map(|(_, r)| eval_commuting(r, &all))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn skeleton_commutes_and_keeps_relations((n, mu, recipe) in skeleton_case(), t in param()) {
        let (c, cal) = setup(n, &mu);
        let sk = principal_restriction(&c, &cal, recipe).unwrap();
        prop_assert!(sk.commutes().unwrap());
        for m in relations_at(&sk, &cal, n, &t) {
            prop_assert!(m.is_zero());
        }
    }

    #[test]
    fn branch_values_have_small_residuals((n, mu, recipe) in skeleton_case(), t in param()) {
        let (c, cal) = setup(n, &mu);
        let sk = principal_restriction(&c, &cal, recipe).unwrap();
        for m in sk.at(&t).unwrap() {
            let branches = real_branches(&m);
            prop_assert!(branches.len() <= c.dim());
            prop_assert!(branches.windows(2).all(|w| w[0].value <= w[1].value));
            for b in &branches {
                prop_assert!(b.residual < 1e-9, "{} at t = {}", b.residual, t);
            }
        }
    }

    #[test]
    fn grid_points_are_equally_spaced(a in -20i64..=20, w in 0i64..=20, steps in 1usize..=30) {
        let g: Grid = format!("{}:{}:{}", a, a + w, steps).parse().unwrap();
        let pts = g.points();
        prop_assert_eq!(pts.len(), steps + 1);
        prop_assert_eq!(&pts[0], &Rational::from(a));
        prop_assert_eq!(&pts[steps], &Rational::from(a + w));
        let gap = Rational::new(w, steps as i64);
        prop_assert!(pts.windows(2).all(|p| &p[1] - &p[0] == gap));
    }
}

#[test]
fn sl2_skeleton_is_real_at_negative_c2() {
    // M1 at c2 = -s^2 has eigenvalues k s, (k - 2) s, ..., -k s up to the calibration scalar
    for k in 1..=5i64 {
        let (c, cal) = setup(2, &[k]);
        let sk = principal_restriction(&c, &cal, Recipe::Identity).unwrap();
        for s in 1..=3i64 {
            let m = &sk.at(&Rational::from(-s * s)).unwrap()[0];
            let vals: Vec<Rational> = real_branches(m).into_iter().map(|b| b.value).collect();
            assert_eq!(vals.len(), (k + 1) as usize);
            let step = &vals[1] - &vals[0];
            assert!(vals.windows(2).all(|w| &w[1] - &w[0] == step));
            assert_eq!(&vals[0] + &vals[k as usize], Rational::zero());
        }
    }
}

#[test]
fn sigma_is_an_involution_fixing_the_pinning() {
    for (n, mu) in [
        (3, vec![1, 1]),
        (3, vec![0, 0]),
        (4, vec![0, 1, 0]),
        (4, vec![1, 0, 1]),
    ] {
        let (c, cal) = setup(n, &mu);
        let (action, sigma, s) = sigma_action(&c, &cal).unwrap();
        assert!(action.fixes_pinning && action.involution, "sl{n} {mu:?}");
        assert_eq!(sigma.mul(&sigma), QMatrix::identity(c.g.dim()));
        assert_eq!(s.rows(), c.dim());
        for (name, sign) in &action.generators {
            assert!(
                matches!(sign, Some(1) | Some(-1)),
                "sl{n} {mu:?} {name}: {sign:?}"
            );
        }
        for (k, sign) in &action.invariants {
            assert_eq!(*sign, Some(if k % 2 == 0 { 1 } else { -1 }), "c{k}");
        }
    }
}
