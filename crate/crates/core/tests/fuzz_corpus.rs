//! Replays the checked-in fuzz seeds through the same invariants as the fuzz targets.

use std::path::{Path, PathBuf};

use bigalg::big::{algebra_vars, parse_poly, RelationFile};
use bigalg::exact::{MultiPoly, Rational};
use bigalg::lie::Weight;
use bigalg::rep::CacheFile;
use bigalg::spectra::Grid;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(PathBuf, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let text = std::fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn names() -> Vec<String> {
    ["M1", "M2", "N1"].map(String::from).to_vec()
}

#[test]
fn rational_seeds() {
    let mut ok = 0;
    for (p, s) in seeds("rational") {
        if let Ok(r) = s.parse::<Rational>() {
            assert_eq!(
                r.to_string().parse::<Rational>().unwrap(),
                r,
                "{}",
                p.display()
            );
            ok += 1;
        }
    }
    assert!(ok >= 3);
}

#[test]
fn weight_seeds() {
    let mut ok = 0;
    for (p, s) in seeds("weight") {
        if let Ok(w) = s.parse::<Weight>() {
            assert_eq!(
                w.to_string().parse::<Weight>().unwrap(),
                w,
                "{}",
                p.display()
            );
            ok += 1;
        }
    }
    assert!(ok >= 3);
}

#[test]
fn poly_json_seeds() {
    let mut ok = 0;
    for (p, s) in seeds("poly_json") {
        if let Ok(poly) = MultiPoly::parse_json(&s) {
            let json = serde_json::to_string(&poly.to_json()).unwrap();
            assert_eq!(
                MultiPoly::parse_json(&json).unwrap(),
                poly,
                "{}",
                p.display()
            );
            ok += 1;
        }
    }
    assert!(ok >= 2);
}

#[test]
fn rep_cache_seeds() {
    let mut ok = 0;
    for (p, s) in seeds("rep_cache") {
        if let Ok(c) = CacheFile::parse(&s) {
            let dim = c.dim;
            assert_eq!(c.into_rep().dim(), dim, "{}", p.display());
            ok += 1;
        }
    }
    assert_eq!(ok, 2);
}

#[test]
fn relation_json_seeds() {
    let vars = algebra_vars(&names(), 3);
    let mut known = 0;
    for (p, s) in seeds("relation_json") {
        let f = RelationFile::parse(&s).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        assert_eq!(
            RelationFile::parse(&serde_json::to_string(&f).unwrap()).unwrap(),
            f
        );
        if f.to_polys(&vars).is_ok() {
            known += 1;
        }
    }
    assert_eq!(known, 2);
}

#[test]
fn grid_seeds() {
    let mut ok = 0;
    for (p, s) in seeds("grid") {
        if let Ok(g) = s.parse::<Grid>() {
            let pts = g.points();
            assert_eq!(pts.len(), g.steps + 1, "{}", p.display());
            assert!(pts.windows(2).all(|w| w[0] <= w[1]));
            ok += 1;
        }
    }
    assert_eq!(ok, 3);
}

#[test]
fn parse_poly_seeds() {
    let vars = algebra_vars(&names(), 3);
    let mut ok = 0;
    for (p, s) in seeds("parse_poly") {
        if let Ok(poly) = parse_poly(&s, &vars) {
            assert_eq!(
                parse_poly(&poly.to_string(), &vars).unwrap(),
                poly,
                "{}",
                p.display()
            );
            ok += 1;
        }
    }
    assert!(ok >= 3);
}
