use std::path::PathBuf;

use bigalg::lie::{dominant_weights_below, weyl_dimension, Weight};
use serde::Serialize;

pub const CACHE_ENV: &str = "BIGALG_CACHE";
pub const MAX_N: usize = 8;

/// Bad command-line input; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Validated settings of one run, echoed into every JSON report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub n: Option<usize>,
    pub mu: Option<Weight>,
    pub lambda: Option<Weight>,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub dim_bound: usize,
    pub max_degree: Option<i64>,
    pub outputs: Vec<PathBuf>,
}

impl RunConfig {
    pub fn new(command: &str, seed: u64, cache_flag: Option<PathBuf>, dim_bound: usize) -> Self {
        let cache_dir = std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or(cache_flag);
        RunConfig {
            command: command.into(),
            n: None,
            mu: None,
            lambda: None,
            seed,
            cache_dir,
            dim_bound,
            max_degree: None,
            outputs: Vec::new(),
        }
    }

    /// Checks `n` and a dominant `mu` of the right rank whose module fits the dimension bound.
    pub fn set_module(&mut self, n: usize, mu: &str) -> anyhow::Result<()> {
        if !(2..=MAX_N).contains(&n) {
            return Err(usage(format!("--n must lie in 2..={MAX_N}, got {n}")));
        }
        let mu = Weight::parse(mu, n - 1).map_err(|e| usage(format!("--mu: {e}")))?;
        if !mu.is_dominant() {
            return Err(usage(format!("--mu {mu} is not dominant")));
        }
        let dim = weyl_dimension(&mu);
        if dim > self.dim_bound as u64 {
            return Err(usage(format!(
                "module of dimension {dim} exceeds --dim-bound {}",
                self.dim_bound
            )));
        }
        self.n = Some(n);
        self.mu = Some(mu);
        Ok(())
    }

    /// Checks that `lambda` is a dominant weight of the module.
    pub fn set_lambda(&mut self, lambda: &str) -> anyhow::Result<()> {
        let (n, mu) = (
            self.n.expect("module first"),
            self.mu.clone().expect("module first"),
        );
        let lambda = Weight::parse(lambda, n - 1).map_err(|e| usage(format!("--lambda: {e}")))?;
        if !dominant_weights_below(&mu).contains(&lambda) {
            return Err(usage(format!(
                "--lambda {lambda} is not a dominant weight of V({mu})"
            )));
        }
        self.lambda = Some(lambda);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n.expect("validated")
    }

    pub fn mu(&self) -> &Weight {
        self.mu.as_ref().expect("validated")
    }

    pub fn lambda(&self) -> &Weight {
        self.lambda.as_ref().expect("validated")
    }
}
