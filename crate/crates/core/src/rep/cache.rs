//! On-disk JSON cache of constructed representations.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{build_irrep, RepError, Representation};
use crate::exact::{QMatrix, Rational};
use crate::lie::{LieAlgebra, RootDatum, Weight};

/// Bumped whenever the basis convention changes; part of the cache key.
pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheFile {
    pub n: usize,
    pub mu: Weight,
    pub dim: usize,
    pub basis_words: Vec<Vec<usize>>,
    pub rho: Vec<Vec<Vec<Rational>>>,
    pub version: u32,
}

impl CacheFile {
    pub fn from_rep(rep: &Representation) -> Self {
        CacheFile {
            n: rep.n,
            mu: rep.mu.clone(),
            dim: rep.dim(),
            basis_words: rep.basis_words.clone(),
            rho: rep.rho.iter().map(|m| m.row_vecs()).collect(),
            version: CACHE_VERSION,
        }
    }

    /// Parses and validates cache text; shapes are checked before any matrix is built.
    pub fn parse(text: &str) -> Result<CacheFile, RepError> {
        let c: CacheFile =
            serde_json::from_str(text).map_err(|e| RepError::Cache(e.to_string()))?;
        if c.n < 2 || c.n > 16 || c.mu.rank() != c.n - 1 || !c.mu.is_dominant() {
            return Err(RepError::Cache("bad rank or weight".into()));
        }
        if c.version != CACHE_VERSION {
            return Err(RepError::Cache(format!(
                "version {} != {}",
                c.version, CACHE_VERSION
            )));
        }
        let big_n = c.n * c.n - 1;
        if c.rho.len() != big_n || c.basis_words.len() != c.dim {
            return Err(RepError::Cache("wrong number of matrices or words".into()));
        }
        if c.rho
            .iter()
            .any(|m| m.len() != c.dim || m.iter().any(|r| r.len() != c.dim))
        {
            return Err(RepError::Cache("matrix shape".into()));
        }
        if c.basis_words.iter().flatten().any(|&i| i == 0 || i >= c.n) {
            return Err(RepError::Cache("word letter out of range".into()));
        }
        Ok(c)
    }

    pub fn into_rep(self) -> Representation {
        let rd = RootDatum::new(self.n);
        let weights = self
            .basis_words
            .iter()
            .map(|w| {
                w.iter()
                    .fold(self.mu.clone(), |acc, &i| acc.sub(&rd.simple_root(i)))
            })
            .collect();
        Representation {
            n: self.n,
            mu: self.mu,
            rho: self.rho.into_iter().map(QMatrix::from_rows).collect(),
            basis_words: self.basis_words,
            weights,
            provenance: vec!["loaded from cache".into()],
        }
    }
}

pub fn cache_path(dir: &Path, n: usize, mu: &Weight) -> PathBuf {
    let tag: Vec<String> = mu.0.iter().map(|c| c.to_string()).collect();
    dir.join(format!("sl{n}_{}_v{CACHE_VERSION}.json", tag.join("-")))
}

/// Loads `V^mu` from the cache directory if present and consistent, otherwise builds and stores it.
pub fn load_or_build(
    g: &LieAlgebra,
    mu: &Weight,
    bound: usize,
    dir: Option<&Path>,
) -> Result<Representation, RepError> {
    let Some(dir) = dir else {
        return build_irrep(g, mu, bound);
    };
    let path = cache_path(dir, g.n, mu);
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(c) = CacheFile::parse(&text) {
            if c.n == g.n && &c.mu == mu {
                let rep = c.into_rep();
                if rep.bracket_fidelity(g) {
                    return Ok(rep);
                }
            }
        }
    }
    let rep = build_irrep(g, mu, bound)?;
    std::fs::create_dir_all(dir).map_err(|e| RepError::Cache(e.to_string()))?;
    let text = serde_json::to_string(&CacheFile::from_rep(&rep))
        .map_err(|e| RepError::Cache(e.to_string()))?;
    std::fs::write(&path, text).map_err(|e| RepError::Cache(e.to_string()))?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_sl;

    #[test]
    fn round_trip() {
        let (g, _, _) = build_sl(3).unwrap();
        let rep = build_irrep(&g, &Weight(vec![1, 1]), 400).unwrap();
        let text = serde_json::to_string(&CacheFile::from_rep(&rep)).unwrap();
        let back = CacheFile::parse(&text).unwrap().into_rep();
        assert_eq!(back.rho, rep.rho);
        assert_eq!(back.weights, rep.weights);
    }

    #[test]
    fn directory_cache() {
        let dir = tempfile::tempdir().unwrap();
        let (g, _, _) = build_sl(2).unwrap();
        let a = load_or_build(&g, &Weight(vec![3]), 400, Some(dir.path())).unwrap();
        assert!(cache_path(dir.path(), 2, &Weight(vec![3])).exists());
        let b = load_or_build(&g, &Weight(vec![3]), 400, Some(dir.path())).unwrap();
        assert_eq!(a.rho, b.rho);
        assert_eq!(b.provenance, vec!["loaded from cache".to_string()]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(CacheFile::parse("{}").is_err());
        let bad = r#"{"n":2,"mu":[1],"dim":2,"basis_words":[[],[1]],"rho":[],"version":1}"#;
        assert!(CacheFile::parse(bad).is_err());
    }
}
