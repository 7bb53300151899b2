use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{Context as _, Result};
use bigalg::acceptance::{Suite, CRITERIA};
use bigalg::big::{
    algebra_vars, calibrated_generators, derive_relations, hilbert_series, verify_presentation,
    Calibrated, RelationFile, SectionOperator,
};
use bigalg::exact::{PolyJson, PolyMatrix};
use bigalg::kirillov::Context;
use bigalg::multiplicity::{
    brylinski_filtration, generators_at_e, lusztig_m, multiplicity_algebra, MultiplicityError,
    TorusChoice,
};
use bigalg::spectra::{
    emit_skeleton_points, principal_restriction, principal_spectrum, skeleton_points,
    twining_report, BranchRow, Grid, Recipe, Skeleton,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{usage, RunConfig};
use crate::{Cli, Command, Module, RecipeArg, TorusArg};

fn emit(cli: &Cli, config: &RunConfig, body: impl Serialize) -> Result<()> {
    let mut v = serde_json::to_value(body)?;
    let obj = v.as_object_mut().expect("reports are objects");
    obj.insert("config".into(), serde_json::to_value(config)?);
    let text = serde_json::to_string_pretty(&v)? + "\n";
    match &cli.json {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn setup(cli: &Cli, name: &str, m: &Module) -> Result<RunConfig> {
    let mut c = RunConfig::new(name, cli.seed, cli.cache.clone(), cli.dim_bound);
    c.set_module(m.n, &m.mu)?;
    if let Some(p) = &cli.json {
        c.outputs.push(p.clone());
    }
    Ok(c)
}

fn build(c: &RunConfig) -> Result<Context> {
    if let Some(dir) = &c.cache_dir {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("creating cache directory {}", dir.display()))?;
    }
    Ok(Context::new(
        c.n(),
        c.mu(),
        c.dim_bound,
        c.cache_dir.as_deref(),
    )?)
}

fn build_calibrated(c: &RunConfig) -> Result<(Context, Calibrated)> {
    let ctx = build(c)?;
    let cal = calibrated_generators(&ctx)?;
    Ok((ctx, cal))
}

fn poly_matrix_json(m: &PolyMatrix) -> Vec<Vec<PolyJson>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_json()).collect())
        .collect()
}

/// Dispatches a parsed command line; `Ok(false)` means a failed acceptance check.
pub fn dispatch(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Rep(m) => {
            let c = setup(cli, "rep", m)?;
            let ctx = build(&c)?;
            let weights: Vec<Value> = ctx
                .rep
                .weight_table()
                .into_iter()
                .map(|(w, idx)| json!({ "weight": w, "multiplicity": idx.len() }))
                .collect();
            emit(
                cli,
                &c,
                json!({
                    "dim": ctx.dim(),
                    "weights": weights,
                    "bracket_fidelity": ctx.rep.bracket_fidelity(&ctx.g),
                }),
            )?;
        }
        Command::Ops { module, list } => {
            let c = setup(cli, "ops", module)?;
            let (_, cal) = build_calibrated(&c)?;
            let gens: Vec<Value> = cal
                .specs
                .iter()
                .zip(&cal.report)
                .map(|(s, r)| {
                    json!({
                        "name": s.name, "i": s.i, "k": s.k, "degree": s.degree,
                        "scalar": r.scalar, "anchor": r.anchor, "canonical": r.canonical,
                    })
                })
                .collect();
            let mut body = json!({ "generators": gens });
            if !list {
                let ops: Vec<Value> = cal
                    .section
                    .iter()
                    .map(|s| json!({ "name": s.label, "degree": s.degree, "matrix": poly_matrix_json(&s.matrix) }))
                    .collect();
                body["operators"] = json!(ops);
            }
            emit(cli, &c, body)?;
        }
        Command::Hilbert(m) => {
            let c = setup(cli, "hilbert", m)?;
            let (ctx, cal) = build_calibrated(&c)?;
            let r = hilbert_series(&ctx, &generators_at_e(&ctx, &cal));
            emit(cli, &c, json!({ "report": r, "pass": r.pass() }))?;
        }
        Command::Relations {
            module,
            max_degree,
            verify,
            generators,
        } => {
            let mut c = setup(cli, "relations", module)?;
            let d = max_degree.unwrap_or(2 * c.n() as i64);
            if !(0..=64).contains(&d) {
                return Err(usage("--max-degree must lie in 0..=64"));
            }
            c.max_degree = Some(d);
            let file = match verify {
                Some(p) => {
                    let text = std::fs::read_to_string(p)
                        .map_err(|e| usage(format!("--verify {}: {e}", p.display())))?;
                    Some(
                        RelationFile::parse(&text)
                            .map_err(|e| usage(format!("--verify {}: {e}", p.display())))?,
                    )
                }
                None => None,
            };
            let (_, cal) = build_calibrated(&c)?;
            let (names, gens) = select_generators(&cal, generators.as_deref())?;
            let search = derive_relations(&gens, &names, c.n(), d);
            let named: Vec<(String, i64)> = names
                .iter()
                .cloned()
                .zip(gens.iter().map(|g| g.degree))
                .collect();
            let polys: Vec<_> = search.relations.iter().map(|(_, p)| p.clone()).collect();
            let mut body = json!({
                "per_degree": search.per_degree,
                "relations": RelationFile::from_polys(&named, &polys),
                "relation_text": polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            });
            if let Some(f) = file {
                let vars = algebra_vars(&names, c.n());
                let rels = f
                    .to_polys(&vars)
                    .map_err(|e| usage(format!("--verify: {e}")))?;
                let report = verify_presentation(&gens, &names, c.n(), &rels, d)
                    .map_err(|e| usage(format!("--verify: {e}")))?;
                body["verification"] = json!({ "report": report, "pass": report.pass() });
            }
            emit(cli, &c, body)?;
        }
        Command::Brylinski {
            module,
            lambda,
            torus,
        } => {
            let mut c = setup(cli, "brylinski", module)?;
            c.set_lambda(lambda)?;
            let ctx = build(&c)?;
            let torus = match torus {
                TorusArg::Standard => TorusChoice::Standard,
                TorusArg::HPlusE => TorusChoice::HPlusE,
            };
            let f = brylinski_filtration(&ctx, c.lambda(), torus, None)?;
            let m = lusztig_m(c.mu(), c.lambda()).map_err(kostant_usage)?;
            emit(
                cli,
                &c,
                json!({
                    "torus": f.torus, "dims": f.dims, "jump_series": f.jump_series,
                    "lusztig": m, "agrees": f.jump_series == m,
                }),
            )?;
        }
        Command::Qanalogue { module, lambda } => {
            let mut c = setup(cli, "qanalogue", module)?;
            c.set_lambda(lambda)?;
            let m = lusztig_m(c.mu(), c.lambda()).map_err(kostant_usage)?;
            emit(cli, &c, json!({ "m": m }))?;
        }
        Command::Multalg { module, lambda } => {
            let mut c = setup(cli, "multalg", module)?;
            c.set_lambda(lambda)?;
            let (ctx, cal) = build_calibrated(&c)?;
            let q = multiplicity_algebra(&ctx, &cal, c.lambda(), None)?;
            emit(
                cli,
                &c,
                json!({
                    "generators": q.generator_names,
                    "graded_dims": q.graded_dims,
                    "hilbert": q.hilbert,
                    "algebra_dim": q.algebra_dim,
                    "basis_words": q.basis_words,
                    "basis_degrees": q.basis_degrees,
                    "structure_constants": q.structure_constants,
                    "nilpotency": q.nilpotency,
                    "operators": q.operators,
                }),
            )?;
        }
        Command::Spectrum {
            module,
            at_principal,
            grid,
            out,
            recipe,
        } => {
            let mut c = setup(cli, "spectrum", module)?;
            let grid: Option<Grid> = match grid {
                Some(g) => Some(g.parse().map_err(|e| usage(format!("--grid: {e}")))?),
                None => None,
            };
            if grid.is_some() && out.is_none() {
                return Err(usage("--grid needs --out FILE.csv"));
            }
            if let Some(o) = out {
                c.outputs.push(o.clone());
            }
            let recipe = match recipe {
                None => Recipe::default_for(c.n()),
                Some(RecipeArg::Identity) => Recipe::Identity,
                Some(RecipeArg::SetC3Zero) => Recipe::SetC3Zero,
                Some(RecipeArg::Pullback) => Recipe::PullbackEPlusTf,
            };
            let (ctx, cal) = build_calibrated(&c)?;
            let sk = principal_restriction(&ctx, &cal, recipe)
                .map_err(|e| usage(format!("--recipe: {e}")))?;
            if *at_principal {
                let spectrum = principal_spectrum(&ctx, &cal)?;
                let t = sk
                    .principal_parameter(&spectrum.point)
                    .context("principal point is off the skeleton")?;
                let g = Grid {
                    min: t.clone(),
                    max: t,
                    steps: 0,
                };
                let rows = write_rows(&sk, &g, out.as_deref())?;
                emit(
                    cli,
                    &c,
                    json!({ "recipe": recipe, "param": sk.param, "spectrum": spectrum, "rows": rows.len() }),
                )?;
            } else {
                let g = grid.expect("checked above");
                let rows = write_rows(&sk, &g, out.as_deref())?;
                emit(
                    cli,
                    &c,
                    json!({ "recipe": recipe, "param": sk.param, "grid": g, "rows": rows.len() }),
                )?;
            }
        }
        Command::Twining { module, max_degree } => {
            let mut c = setup(cli, "twining", module)?;
            if c.n() != 3 {
                return Err(usage("twining is implemented for --n 3"));
            }
            if !(1..=24).contains(max_degree) {
                return Err(usage("--max-degree must lie in 1..=24"));
            }
            c.max_degree = Some(*max_degree);
            let (ctx, cal) = build_calibrated(&c)?;
            let r = twining_report(&ctx, &cal, *max_degree).map_err(|e| usage(e.to_string()))?;
            emit(cli, &c, json!({ "report": r, "pass": r.pass() }))?;
        }
        Command::VerifyAll { criteria } => {
            let mut c = RunConfig::new("verify-all", cli.seed, cli.cache.clone(), cli.dim_bound);
            if let Some(p) = &cli.json {
                c.outputs.push(p.clone());
            }
            let ids = select_criteria(criteria.as_deref())?;
            let suite = Suite::new(cli.seed, c.cache_dir.clone());
            let mut results = Vec::new();
            for id in ids {
                let r = suite.run(id);
                eprintln!("{}", r.line());
                results.push(r);
            }
            let pass = results.iter().all(|r| r.pass);
            emit(cli, &c, json!({ "criteria": results, "pass": pass }))?;
            return Ok(pass);
        }
    }
    Ok(true)
}

fn kostant_usage(e: MultiplicityError) -> anyhow::Error {
    match e {
        MultiplicityError::Guard(_) => usage(e.to_string()),
        other => other.into(),
    }
}

fn select_generators(
    cal: &Calibrated,
    list: Option<&str>,
) -> Result<(Vec<String>, Vec<SectionOperator>)> {
    let Some(list) = list else {
        return Ok((cal.names(), cal.section.clone()));
    };
    let mut names = Vec::new();
    let mut gens = Vec::new();
    for name in list.split(',').map(str::trim) {
        let k = cal
            .index_of(name)
            .ok_or_else(|| usage(format!("--generators: unknown generator {name:?}")))?;
        if names.iter().any(|n| n == name) {
            return Err(usage(format!("--generators: {name} listed twice")));
        }
        names.push(name.to_string());
        gens.push(cal.section[k].clone());
    }
    Ok((names, gens))
}

fn select_criteria(list: Option<&str>) -> Result<Vec<u8>> {
    let all: Vec<u8> = CRITERIA.iter().map(|c| c.0).collect();
    let Some(list) = list else {
        return Ok(all);
    };
    let mut picked = BTreeSet::new();
    for part in list.split(',') {
        let id: u8 = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("--criteria: bad number {part:?}")))?;
        if !all.contains(&id) {
            return Err(usage(format!("--criteria: no criterion {id}")));
        }
        picked.insert(id);
    }
    Ok(picked.into_iter().collect())
}

fn write_rows(sk: &Skeleton, grid: &Grid, out: Option<&Path>) -> Result<Vec<BranchRow>> {
    match out {
        Some(p) => Ok(emit_skeleton_points(sk, grid, p)
            .with_context(|| format!("writing {}", p.display()))?),
        None => Ok(skeleton_points(sk, grid)?),
    }
}
