//! The acceptance table: twelve exact checks over a fixed battery of representations.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::big::{
    algebra_vars, calibrated_generators, commutation_check, d_probes, evaluate_relation,
    freeness_and_rank_check, hilbert_series, parse_poly, relation, verify_presentation, Calibrated,
    RelationCheck, SectionOperator,
};
use crate::exact::Rational;
use crate::kirillov::{commutator, medium_operator, Context};
use crate::lie::{dominant_weights_below, Weight};
use crate::multiplicity::{
    brylinski_filtration, generators_at_e, limit_report, lusztig_m, multiplicity_algebra,
    quotient_chain, torus_transport, TorusChoice,
};
use crate::rep::DEFAULT_DIM_BOUND;
use crate::spectra::{
    principal_restriction, principal_spectrum, quantum_numbers, real_branches, skeleton_points,
    twining_report, verify_quantum_number_identities, Grid, Recipe, DECUPLET_IDENTITIES,
    OCTET_IDENTITIES, OCTET_LITERAL_RELATIONS,
};

type Failure = Box<dyn std::error::Error + Send + Sync>;
type Outcome = Result<(bool, String), Failure>;

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "sl2 presentations"),
    (2, "sl3 standard relation"),
    (3, "decuplet ideal"),
    (4, "octet ideals"),
    (5, "hilbert series"),
    (6, "brylinski equals lusztig"),
    (7, "limit agreement"),
    (8, "multiplicity algebras"),
    (9, "commutativity and maximal torus"),
    (10, "principal spectrum dictionary"),
    (11, "twining instance"),
    (12, "skeleton branches"),
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

/// `sl_2` with `n = 1..6`, six `sl_3` modules and two `sl_4` modules.
pub fn battery() -> Vec<(usize, Weight)> {
    let mut out: Vec<(usize, Weight)> = (1..=6).map(|k| (2, Weight(vec![k]))).collect();
    for mu in [[1, 0], [0, 1], [2, 0], [3, 0], [1, 1], [2, 1]] {
        out.push((3, Weight(mu.to_vec())));
    }
    out.push((4, Weight(vec![1, 0, 0])));
    out.push((4, Weight(vec![0, 1, 0])));
    out
}

fn label(n: usize, mu: &Weight) -> String {
    format!("sl{n}[{mu}]")
}

/// Product relation of `B^{k w1}(sl_2)`: `prod (M1^2 + j^2 c2)` over `j = k, k-2, ...`, times `M1` for even `k`.
pub fn sl2_product_relation(k: i64) -> String {
    let mut parts: Vec<String> = (1..=k)
        .rev()
        .filter(|j| (k - j) % 2 == 0)
        .map(|j| format!("(M1^2 + {}c2)", j * j))
        .collect();
    if k % 2 == 0 {
        parts.push("M1".into());
    }
    parts.join("")
}

#[derive(Clone, Debug, Serialize)]
pub struct OctetSignReport {
    /// With `M2 = (1/3) M1 N1`.
    pub literal: Vec<RelationCheck>,
    /// With the calibrated `M2`.
    pub calibrated: Vec<RelationCheck>,
    pub calibrated_is_minus_third: bool,
}

fn check_relations(
    gens: &[SectionOperator],
    cal: &Calibrated,
    texts: &[&str],
) -> Result<Vec<RelationCheck>, Failure> {
    let mut out = Vec::new();
    for t in texts {
        let m = evaluate_relation(&relation(cal, 3, t)?, gens, 3);
        let witness = m.first_nonzero().map(|(i, j, p)| (i, j, p.to_string()));
        out.push(RelationCheck {
            relation: t.to_string(),
            vanishes: witness.is_none(),
            witness,
        });
    }
    Ok(out)
}

/// The five octet relations against both choices of `M2`.
pub fn octet_sign_report(cal: &Calibrated) -> Result<OctetSignReport, Failure> {
    let idx = |s: &str| {
        cal.index_of(s)
            .ok_or_else(|| Failure::from(format!("no generator {s}")))
    };
    let (m1, m2, n1) = (idx("M1")?, idx("M2")?, idx("N1")?);
    let product = cal.section[m1].matrix.mul(&cal.section[n1].matrix)?;
    let third = product.scale(&Rational::new(1, 3));
    let mut literal = cal.section.clone();
    literal[m2].matrix = third.clone();
    Ok(OctetSignReport {
        literal: check_relations(&literal, cal, &OCTET_LITERAL_RELATIONS)?,
        calibrated: check_relations(&cal.section, cal, &OCTET_LITERAL_RELATIONS)?,
        calibrated_is_minus_third: cal.section[m2].matrix == third.scale(&Rational::from(-1)),
    })
}

/// Runs criteria, sharing modules and calibrations between them.
pub struct Suite {
    pub seed: u64,
    pub cache: Option<PathBuf>,
    memo: Mutex<HashMap<(usize, Weight), Arc<(Context, Calibrated)>>>,
}

impl Suite {
    pub fn new(seed: u64, cache: Option<PathBuf>) -> Self {
        Suite {
            seed,
            cache,
            memo: Mutex::new(HashMap::new()),
        }
    }

    fn module(&self, n: usize, mu: &Weight) -> Result<Arc<(Context, Calibrated)>, Failure> {
        let key = (n, mu.clone());
        if let Some(m) = self.memo.lock().expect("memo").get(&key) {
            return Ok(m.clone());
        }
        let ctx = Context::new(n, mu, DEFAULT_DIM_BOUND, self.cache.as_deref())?;
        let cal = calibrated_generators(&ctx)?;
        let m = Arc::new((ctx, cal));
        self.memo.lock().expect("memo").insert(key, m.clone());
        Ok(m)
    }

    pub fn run(&self, id: u8) -> CriterionResult {
        let name = CRITERIA
            .iter()
            .find(|c| c.0 == id)
            .map_or("unknown", |c| c.1)
            .to_string();
        let outcome = match id {
            1 => self.sl2_presentations(),
            2 => self.sl3_standard(),
            3 => self.decuplet(),
            4 => self.octet(),
            5 => self.hilbert(),
            6 => self.brylinski(),
            7 => self.limits(),
            8 => self.multiplicity_algebras(),
            9 => self.commutativity(),
            10 => self.principal_spectra(),
            11 => self.twining(),
            12 => self.skeleton_branches(),
            _ => Err(format!("no criterion {id}").into()),
        };
        let (pass, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        CriterionResult {
            id,
            name,
            pass,
            detail,
        }
    }

    pub fn run_all(&self) -> Vec<CriterionResult> {
        CRITERIA.iter().map(|c| self.run(c.0)).collect()
    }

    fn over_battery(
        &self,
        mut f: impl FnMut(&Context, &Calibrated) -> Result<bool, Failure>,
    ) -> Outcome {
        let mut bad = Vec::new();
        let all = battery();
        for (n, mu) in &all {
            let m = self.module(*n, mu)?;
            if !f(&m.0, &m.1)? {
                bad.push(label(*n, mu));
            }
        }
        if bad.is_empty() {
            Ok((true, format!("{} modules", all.len())))
        } else {
            Ok((false, format!("failed for {}", bad.join(" "))))
        }
    }

    fn sl2_presentations(&self) -> Outcome {
        let mut bad = Vec::new();
        for k in 1..=6 {
            let m = self.module(2, &Weight(vec![k]))?;
            let cal = &m.1;
            let rel = relation(cal, 2, &sl2_product_relation(k))?;
            let report = verify_presentation(&cal.section, &cal.names(), 2, &[rel], k + 2)?;
            if !report.pass() {
                bad.push(k.to_string());
            }
        }
        Ok((
            bad.is_empty(),
            if bad.is_empty() {
                "n = 1..6".into()
            } else {
                format!("failed for n = {}", bad.join(","))
            },
        ))
    }

    fn sl3_standard(&self) -> Outcome {
        let m = self.module(3, &Weight(vec![1, 0]))?;
        let rel = relation(&m.1, 3, "M1^3 + c2M1 + c3")?;
        let zero = evaluate_relation(&rel, &m.1.section, 3).is_zero();
        Ok((zero, format!("M1^3 + c2M1 + c3 vanishes: {zero}")))
    }

    fn decuplet(&self) -> Outcome {
        let m = self.module(3, &Weight(vec![3, 0]))?;
        let cal = &m.1;
        let n1_linear =
            evaluate_relation(&relation(cal, 3, "N1 + 3M1")?, &cal.section, 3).is_zero();
        let names = vec!["M1".to_string(), "M2".to_string()];
        let gens: Vec<SectionOperator> = names
            .iter()
            .map(|g| {
                cal.index_of(g)
                    .map(|k| cal.section[k].clone())
                    .ok_or_else(|| Failure::from(format!("no generator {g}")))
            })
            .collect::<Result<_, _>>()?;
        let vars = algebra_vars(&names, 3);
        let rels = [
            "M1^4 - 6M1^2M2 + 4M1^2c2 - 18M1c3 + 3M2^2 - 6M2c2",
            "M1^3M2 + M1^3c2 + 3M1^2c3 - 3M1M2^2 + M1M2c2 + 4M1c2^2 - 9M2c3",
        ]
        .iter()
        .map(|t| parse_poly(t, &vars))
        .collect::<Result<Vec<_>, _>>()?;
        let report = verify_presentation(&gens, &names, 3, &rels, 6)?;
        let vanish = report.checks.iter().filter(|c| c.vanishes).count();
        Ok((
            report.pass() && n1_linear,
            format!(
                "{vanish}/2 relations vanish, graded mismatch at degrees {:?}, N1 = -3M1: {n1_linear}",
                report.hilbert_mismatch
            ),
        ))
    }

    fn octet(&self) -> Outcome {
        let m = self.module(3, &Weight(vec![1, 1]))?;
        let r = octet_sign_report(&m.1)?;
        let failing: Vec<String> = r
            .literal
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.vanishes)
            .map(|(i, c)| {
                format!(
                    "#{} ({})",
                    i + 1,
                    c.witness.as_ref().map_or(String::new(), |w| w.2.clone())
                )
            })
            .collect();
        let calibrated_ok = r.calibrated.iter().all(|c| c.vanishes);
        let pass = failing.is_empty();
        let mut detail = if pass {
            "all five vanish with M2 = (1/3)M1N1".to_string()
        } else {
            format!(
                "with M2 = (1/3)M1N1 relations {} do not vanish",
                failing.join(", ")
            )
        };
        detail.push_str(&format!(
            "; calibrated M2 = -(1/3)M1N1: {}, all five vanish with it: {}",
            r.calibrated_is_minus_third, calibrated_ok
        ));
        if !pass {
            detail.push_str("; the two big relations force M1 and N1 up to sign, after which the first medium relation leaves 6c3M1, so no rescaling reconciles the stated sign");
        }
        Ok((pass, detail))
    }

    fn hilbert(&self) -> Outcome {
        self.over_battery(|ctx, cal| Ok(hilbert_series(ctx, &generators_at_e(ctx, cal)).pass()))
    }

    fn brylinski(&self) -> Outcome {
        self.over_battery(|ctx, _| {
            let t = torus_transport(ctx)?;
            for lambda in dominant_weights_below(&ctx.rep.mu) {
                let m = lusztig_m(&ctx.rep.mu, &lambda)?;
                for torus in [TorusChoice::Standard, TorusChoice::HPlusE] {
                    if brylinski_filtration(ctx, &lambda, torus, Some(&t))?.jump_series != m {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })
    }

    fn limits(&self) -> Outcome {
        self.over_battery(|ctx, _| {
            let t = torus_transport(ctx)?;
            for lambda in dominant_weights_below(&ctx.rep.mu) {
                if !limit_report(ctx, &lambda, Some(&t))?.pass() {
                    return Ok(false);
                }
            }
            Ok(true)
        })
    }

    fn multiplicity_algebras(&self) -> Outcome {
        let (pass, mut detail) = self.over_battery(|ctx, cal| {
            let t = torus_transport(ctx)?;
            for lambda in dominant_weights_below(&ctx.rep.mu) {
                let q = multiplicity_algebra(ctx, cal, &lambda, Some(&t))?;
                if q.hilbert != lusztig_m(&ctx.rep.mu, &lambda)?
                    || !quotient_chain(ctx, cal, &lambda, Some(&t))?.pass()
                {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        let m = self.module(3, &Weight(vec![1, 1]))?;
        let (ctx, cal) = (&m.0, &m.1);
        let q = multiplicity_algebra(ctx, cal, &Weight(vec![0, 0]), None)?;
        let k = cal.index_of("N1").ok_or("no N1")?;
        let n1 = &q.operators[k];
        let octet = q.algebra_dim == 2 && !n1.is_zero() && n1.mul(n1).is_zero();
        detail.push_str(&format!(
            "; octet zero weight: dim {}, N1 nilpotency {:?}",
            q.algebra_dim, q.nilpotency[k]
        ));
        Ok((pass && octet, detail))
    }

    fn commutativity(&self) -> Outcome {
        let seed = self.seed;
        self.over_battery(|ctx, cal| {
            let medium = (2..=ctx.n())
                .map(|k| medium_operator(ctx, k))
                .collect::<Result<Vec<_>, _>>()?;
            if !commutation_check(&cal.kirillov, &medium).pass() {
                return Ok(false);
            }
            for p in d_probes(ctx, &cal.kirillov) {
                for m in &medium {
                    if !commutator(m, &p)?.matrix.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(freeness_and_rank_check(&cal.section, ctx.n(), seed, 3).pass())
        })
    }

    fn principal_spectra(&self) -> Outcome {
        let (injective, mut detail) =
            self.over_battery(|ctx, cal| Ok(principal_spectrum(ctx, cal).is_ok()))?;
        let mut ok = injective;
        for (mu, ids) in [
            (vec![3, 0], &DECUPLET_IDENTITIES[..]),
            (vec![1, 1], &OCTET_IDENTITIES[..]),
        ] {
            let m = self.module(3, &Weight(mu.clone()))?;
            let (i3, y) = quantum_numbers(&m.0, &m.1)?;
            let checks = verify_quantum_number_identities(&i3, &y, ids)?;
            let good = checks.iter().filter(|c| c.vanishes).count();
            ok &= good == checks.len();
            detail.push_str(&format!(
                "; sl3[{}] identities {good}/{}",
                Weight(mu),
                checks.len()
            ));
        }
        Ok((ok, detail))
    }

    fn twining(&self) -> Outcome {
        let m = self.module(3, &Weight(vec![1, 1]))?;
        let r = twining_report(&m.0, &m.1, 8)?;
        let signs = [("M1", 1), ("N1", -1), ("M2", -1)];
        let signs_ok = signs.iter().all(|(g, s)| r.sign_of(g) == Some(*s));
        Ok((
            r.pass() && signs_ok,
            format!(
                "signs M1 {:?} N1 {:?} M2 {:?}; coinvariants {:?} vs {:?}; fixed scheme {:?}",
                r.sign_of("M1"),
                r.sign_of("N1"),
                r.sign_of("M2"),
                r.coinvariant_relations,
                r.target_relations,
                r.fixed_scheme_relations
            ),
        ))
    }

    fn skeleton_branches(&self) -> Outcome {
        let grid: Grid = "-8:2:40".parse()?;
        let mut rows = 0;
        for (n, mu) in [
            (2, vec![4]),
            (2, vec![5]),
            (3, vec![1, 0]),
            (3, vec![3, 0]),
            (3, vec![1, 1]),
        ] {
            let m = self.module(n, &Weight(mu))?;
            let sk = principal_restriction(&m.0, &m.1, Recipe::default_for(n))?;
            rows += skeleton_points(&sk, &grid)?.len();
        }
        let m = self.module(2, &Weight(vec![4]))?;
        let sk = principal_restriction(&m.0, &m.1, Recipe::Identity)?;
        let at = sk.at(&Rational::from(-1))?;
        let values: Vec<Rational> = real_branches(&at[0]).into_iter().map(|b| b.value).collect();
        let expected: Vec<Rational> = [-4, -2, 0, 2, 4].map(Rational::from).to_vec();
        let shown: Vec<String> = values.iter().map(Rational::to_string).collect();
        Ok((
            values == expected,
            format!(
                "{rows} rows within residual bound; sl2[4] at c2 = -1: {{{}}}",
                shown.join(", ")
            ),
        ))
    }
}
