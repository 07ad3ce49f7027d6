use std::fmt::Write as _;
use std::path::PathBuf;

/// Everything that influences a run. Recorded in every emitted document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub max_stages: usize,
    pub max_depth: usize,
    pub max_total_rank: usize,
    /// Single prime for a localized `member` run.
    pub prime: Option<u64>,
    /// Explicit primes for `local-global`.
    pub primes: Vec<u64>,
    /// Add the relevant primes of the instance.
    pub auto_primes: bool,
    /// Only randomized test suites consume the seed; tower runs never do.
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_stages: 6,
            max_depth: 3,
            max_total_rank: 6,
            prime: None,
            primes: Vec::new(),
            auto_primes: false,
            seed: 0,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_stages == 0 {
            return Err("--max-stages must be at least 1".into());
        }
        if self.max_total_rank == 0 {
            return Err("--max-total-rank must be at least 1".into());
        }
        for &p in self.prime.iter().chain(&self.primes) {
            if !trienv::exactlin::is_prime(p) {
                return Err(format!("{p} is not prime"));
            }
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        let mut out = String::from("[config]\n");
        let _ = writeln!(out, "max_stages = {}", self.max_stages);
        let _ = writeln!(out, "max_depth = {}", self.max_depth);
        let _ = writeln!(out, "max_total_rank = {}", self.max_total_rank);
        let _ = writeln!(
            out,
            "prime = {}",
            self.prime.map_or("none".into(), |p| p.to_string())
        );
        let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        let _ = writeln!(
            out,
            "primes = {}",
            if primes.is_empty() {
                "none".into()
            } else {
                primes.join(" ")
            }
        );
        let _ = writeln!(out, "auto_primes = {}", self.auto_primes);
        let _ = writeln!(out, "seed = {}", self.seed);
        out
    }
}
