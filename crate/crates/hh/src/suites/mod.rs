//! Named verification suites.

mod fock;
mod kernels;
mod spherical;

use rand::Rng;

use hh_core::gausspoly::{Ctx, GaussPoly, Monomial, MultiIndex, WeylContext};
use hh_core::scalar::{crat, rat, PiScalar, Rat};

use crate::config::SuiteConfig;
use crate::report::SuiteReport;
use crate::HarnessError;

pub const SUITES: [&str; 10] = [
    "fock-basics",
    "plancherel",
    "invariant-ops",
    "projections",
    "hecke-bochner-un",
    "hecke-bochner-product",
    "generalized-spherical",
    "eigenfunctions",
    "kernels-and-surface",
    "eta",
];

/// Runs every check of the named suite. Infeasible configurations are rejected before any
/// check runs.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    cfg.validate()?;
    match name {
        "fock-basics" => fock::fock_basics(cfg),
        "plancherel" => fock::plancherel(cfg),
        "invariant-ops" => fock::invariant_ops(cfg),
        "projections" => fock::projections(cfg),
        "hecke-bochner-un" => spherical::hecke_bochner_un(cfg),
        "hecke-bochner-product" => spherical::hecke_bochner_product(cfg),
        "generalized-spherical" => spherical::generalized(cfg),
        "eigenfunctions" => spherical::eigenfunctions(cfg),
        "kernels-and-surface" => kernels::kernels_and_surface(cfg),
        "eta" => kernels::eta(cfg),
        other => Err(HarnessError::UnknownSuite(other.to_string())),
    }
}

pub(crate) fn context(n: usize, lambda: &Rat) -> Result<Ctx, HarnessError> {
    Ok(WeylContext::new(n, lambda.clone())?)
}

pub(crate) fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

fn random_index<R: Rng>(rng: &mut R, n: usize, d: u32) -> MultiIndex {
    let mut v = vec![0u32; n];
    for _ in 0..d {
        v[rng.gen_range(0..n)] += 1;
    }
    MultiIndex(v)
}

/// Random Σ c z^a z̄^b e^{−t|z|²} of degree ≤ `max_deg` with small complex rational coefficients.
pub(crate) fn random_poly<R: Rng>(rng: &mut R, ctx: &Ctx, t: Rat, max_deg: u32, terms: usize) -> GaussPoly {
    let n = ctx.n();
    let mut f = GaussPoly::zero(ctx, t);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_deg);
        let da = rng.gen_range(0..=d);
        let a = random_index(rng, n, da);
        let b = random_index(rng, n, d - da);
        let re = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let im = rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        f.add_term(Monomial::new(a, b), &PiScalar::from_crat(crat(re, im), 0));
    }
    f
}

pub(crate) fn random_scalar<R: Rng>(rng: &mut R) -> PiScalar {
    loop {
        let c = crat(rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)), rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
        let s = PiScalar::from_crat(c, 0);
        if !s.is_zero() {
            return s;
        }
    }
}
