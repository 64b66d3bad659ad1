use std::path::PathBuf;

use hh_core::scalar::{parse_rat, Rat};
use hh_core::weylfock::Family;

use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Exact,
    Oracle,
    Both,
}

impl Mode {
    pub fn exact(self) -> bool {
        matches!(self, Mode::Exact | Mode::Both)
    }

    pub fn oracle(self) -> bool {
        matches!(self, Mode::Oracle | Mode::Both)
    }
}

/// Parameters shared by all suites. Unset fields fall back to per-suite defaults.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n: Option<usize>,
    pub n1: Option<usize>,
    pub n2: Option<usize>,
    pub lambda: Rat,
    pub max_degree: Option<u32>,
    pub kmax: Option<u32>,
    pub seed: u64,
    pub mode: Mode,
    /// Floating-point tolerance for oracle checks.
    pub tol: f64,
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n: None,
            n1: None,
            n2: None,
            lambda: Rat::from_integer(1.into()),
            max_degree: None,
            kmax: None,
            seed: 0,
            mode: Mode::Both,
            tol: 1e-8,
            out: None,
        }
    }
}

impl SuiteConfig {
    pub fn with_lambda(mut self, s: &str) -> Result<Self, HarnessError> {
        self.lambda = parse_rat(s)?;
        Ok(self)
    }

    pub fn n_or(&self, d: usize) -> usize {
        self.n.unwrap_or(d)
    }

    pub fn big_n_or(&self, d: u32) -> u32 {
        self.max_degree.unwrap_or(d)
    }

    pub fn kmax_or(&self, d: u32) -> u32 {
        self.kmax.unwrap_or(d)
    }

    /// U(n1)×U(n2); both default to 1.
    pub fn product_family(&self) -> Family {
        Family::product(self.n1.unwrap_or(1), self.n2.unwrap_or(1))
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |what: &str| Err(HarnessError::Infeasible(format!("{what} must be positive")));
        if self.n == Some(0) {
            return bad("n");
        }
        if self.n1 == Some(0) || self.n2 == Some(0) {
            return bad("block sizes");
        }
        if self.lambda == Rat::from_integer(0.into()) {
            return bad("|lambda|");
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return bad("tolerance");
        }
        Ok(())
    }
}
