use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HhError {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("gaussian parameter mismatch: {left} vs {right}")]
    GaussMismatch { left: String, right: String },
    #[error("divergent integral: gaussian parameter {0} is not positive")]
    Divergent(String),
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("truncation N={max_degree} too small: {what}")]
    Truncation { max_degree: u32, what: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("function is not invariant: {0}")]
    NotInvariant(String),
    #[error("operator has support off the irreducible subspace: {0}")]
    SupportOffAlpha(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("quadrature not resolved: {0}")]
    Quadrature(String),
    #[error("Laguerre factor vanishes at {0}")]
    VanishingLaguerre(String),
}

pub type Result<T> = std::result::Result<T, HhError>;

/// Degree cap applied to polynomial inputs. Reads `HH_MAX_DEGREE` once; defaults to 64.
pub fn max_degree() -> usize {
    static CAP: std::sync::OnceLock<usize> = std::sync::OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("HH_MAX_DEGREE")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(64)
    })
}

pub(crate) fn check_degree(degree: usize) -> Result<()> {
    let cap = max_degree();
    if degree > cap {
        Err(HhError::DegreeCap { degree, cap })
    } else {
        Ok(())
    }
}
