//! Deterministic data files: radial profiles (CSV), Weyl transforms (JSON) and coefficient
//! tables (JSON).

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;

use hh_core::gausspoly::GaussPoly;
use hh_core::spherical::{harmonic_basis, hecke_bochner, psi};
use hh_core::weylfock::{weyl_transform, Family, FockTruncation, IrredIndex};

use crate::config::SuiteConfig;
use crate::suites::context;
use crate::HarnessError;

pub const TARGETS: [&str; 3] = ["profile", "matrix", "table"];

#[derive(Serialize)]
struct ProfileRow {
    r: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct TableRow {
    alpha: String,
    c: String,
    #[serde(rename = "A")]
    a: String,
    mu: String,
}

#[derive(Serialize)]
struct Table {
    n: usize,
    lambda: String,
    p: String,
    g: String,
    rows: Vec<TableRow>,
}

/// Writes the artifact for `target` into `cfg.out` (default: current directory) and returns its
/// path.
pub fn emit(target: &str, cfg: &SuiteConfig) -> Result<PathBuf, HarnessError> {
    cfg.validate()?;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    match target {
        "profile" => profile(cfg, &dir),
        "matrix" => matrix(cfg, &dir),
        "table" => table(cfg, &dir),
        other => Err(HarnessError::UnknownTarget(other.to_string())),
    }
}

/// ψ_k(r, 0, .., 0) for r = 0, 0.05, .., 4.
fn profile(cfg: &SuiteConfig, dir: &Path) -> Result<PathBuf, HarnessError> {
    let n = cfg.n_or(1);
    let k = cfg.kmax_or(2);
    let ctx = context(n, &cfg.lambda)?;
    let f = psi(&ctx, &IrredIndex::un(n, k))?.psi;
    let path = dir.join("psi_profile.csv");
    let mut w = csv::Writer::from_path(&path)?;
    for i in 0..=80 {
        let r = i as f64 * 0.05;
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        z[0] = Complex64::new(r, 0.0);
        let v = f.evaluate(&z)?;
        w.serialize(ProfileRow { r, re: v.re, im: v.im })?;
    }
    w.flush()?;
    Ok(path)
}

/// 𝒢(ψ_k) on the truncation of degree N.
fn matrix(cfg: &SuiteConfig, dir: &Path) -> Result<PathBuf, HarnessError> {
    let n = cfg.n_or(1);
    let k = cfg.kmax_or(1);
    let ctx = context(n, &cfg.lambda)?;
    let trunc = FockTruncation::new(&ctx, cfg.big_n_or(4))?;
    let m = weyl_transform(&psi(&ctx, &IrredIndex::un(n, k))?.psi, &trunc)?;
    let path = dir.join("weyl_psi.json");
    std::fs::write(&path, m.to_json() + "\n")?;
    Ok(path)
}

/// C_k, A and μ for F = 1·e^{−|z|²} against ψ_k, k ≤ k_max.
fn table(cfg: &SuiteConfig, dir: &Path) -> Result<PathBuf, HarnessError> {
    let n = cfg.n_or(1);
    let kmax = cfg.kmax_or(4);
    let ctx = context(n, &cfg.lambda)?;
    let family = Family::un(n);
    let space = harmonic_basis(&ctx, &family, &[(0, 0)])?;
    let g = GaussPoly::gaussian(&ctx, hh_core::scalar::rat_int(1));
    let alphas: Vec<IrredIndex> = (0..=kmax).map(|k| IrredIndex::un(n, k)).collect();
    let rows = hecke_bochner(&space, &GaussPoly::one(&ctx), &g, &alphas)?
        .into_iter()
        .map(|h| {
            let mu = psi(&ctx, &h.alpha).map(|s| s.mu[0].1.to_string());
            mu.map(|mu| TableRow {
                alpha: h.alpha.to_string(),
                c: h.c.to_string(),
                a: h.a_scalar.to_string(),
                mu,
            })
        })
        .collect::<hh_core::Result<Vec<_>>>()?;
    let t = Table {
        n,
        lambda: hh_core::scalar::fmt_rat(&cfg.lambda),
        p: "1".into(),
        g: "exp(-|z|^2)".into(),
        rows,
    };
    let path = dir.join("hecke_bochner_table.json");
    let mut s = serde_json::to_string_pretty(&t).expect("serializable");
    s.push('\n');
    std::fs::write(&path, s)?;
    Ok(path)
}
