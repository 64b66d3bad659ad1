use hh_core::gausspoly::{theta, Ctx, GaussPoly, PhaseMatrix};
use hh_core::scalar::{gamma_int, rat_int, rat_to_f64, PiScalar};
use hh_core::spherical::{
    a_by_radial, closed_form_a, closed_form_l, eigenfunction_from_operator, eigenvalues, equivariance_matrix,
    generalized_spherical, harmonic_basis, hecke_bochner, is_joint_eigenfunction, laguerre_radial, operator_span_rank,
    psi, weyl_correspondence_on, HarmonicSpace,
};
use hh_core::weylfock::{hs_inner_alpha, projection, tau, weyl_transform, Family, FockTruncation, IrredIndex, OperatorMatrix};
use hh_core::HhError;
use num_complex::Complex64;
use rand::Rng;

use super::{context, random_poly, random_scalar, rng};
use crate::config::SuiteConfig;
use crate::oracle;
use crate::report::{Checks, SuiteReport};
use crate::HarnessError;

fn infeasible(msg: String) -> HarnessError {
    HarnessError::Infeasible(msg)
}

/// e^{−|λ||z|²} and |z|²e^{−|λ||z|²}, or their bi-radial analogues.
fn radial_weights(ctx: &Ctx, family: &Family) -> Vec<GaussPoly> {
    let t = ctx.abs_lambda();
    let mut out = vec![GaussPoly::gaussian(ctx, t.clone())];
    for r in family.ranges() {
        out.push(GaussPoly::abs_sq_range(ctx, r).with_gauss(t.clone()));
    }
    out
}

fn z1_zbar2(ctx: &Ctx, p: u32, q: u32) -> hh_core::Result<GaussPoly> {
    GaussPoly::z(ctx, 0).pow(p)?.mul(&GaussPoly::zbar(ctx, 1).pow(q)?)
}

fn floating_geller(space: &HarmonicSpace, g: &GaussPoly, alpha: &IrredIndex) -> hh_core::Result<Complex64> {
    let ctx = space.ctx();
    let n = ctx.n() as u32;
    let (p, q) = space.degrees()[0];
    let (pe, qe) = if ctx.is_positive() { (p, q) } else { (q, p) };
    let k = alpha.m()[0];
    if pe > k {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
    let w = sign * rat_to_f64(&(gamma_int(n) * gamma_int(k - pe + 1) / gamma_int(k + n + qe)));
    let integrand = g
        .poly_part()
        .mul(&laguerre_radial(ctx, 0..ctx.n(), k - pe, n + p + q - 1)?)?
        .mul(&GaussPoly::abs_sq(ctx).pow(p + q)?)?
        .with_gauss(g.gauss_t() + ctx.abs_lambda());
    Ok(w * oracle::integrate(&integrand)?)
}

pub fn hecke_bochner_un(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let n = cfg.n_or(2);
    let big_n = cfg.big_n_or(10);
    let kmax = cfg.kmax_or(4);
    let ctx = context(n, &cfg.lambda)?;
    let family = Family::un(n);
    let alphas: Vec<IrredIndex> = (0..=kmax).map(|k| IrredIndex::un(n, k)).collect();
    let weights = radial_weights(&ctx, &family);
    let spaces: Vec<HarmonicSpace> = (0..=2)
        .flat_map(|p| (0..=2).map(move |q| (p, q)))
        .map(|(p, q)| harmonic_basis(&ctx, &family, &[(p, q)]))
        .collect::<hh_core::Result<Vec<_>>>()?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    let mut c = Checks::new("hecke-bochner-un", cfg.mode, cfg.tol);
    c.exact("coefficients-all-bases", "hecke-bochner-theorem", || {
        for space in &spaces {
            for b in space.basis() {
                for g in &weights {
                    hecke_bochner(space, b, g, &alphas)?;
                }
            }
        }
        Ok(true)
    });
    c.exact("vanishing-above-k", "hecke-bochner-vanishing", || {
        for space in &spaces {
            let (p, q) = space.degrees()[0];
            let pe = if ctx.is_positive() { p } else { q };
            let out = hecke_bochner(space, &space.basis()[0], &weights[0], &alphas)?;
            if out.iter().any(|h| h.alpha.m()[0] < pe && !h.c.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    if n == 2 {
        let p = z1_zbar2(&ctx, 1, 1)?;
        let space = harmonic_basis(&ctx, &family, &[(1, 1)])?;
        c.exact("explicit-z1-zbar2", "geller-coefficients", || {
            for g in &weights {
                for h in hecke_bochner(&space, &p, g, &alphas)? {
                    if h.c != h.geller {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        });
        if kmax + 2 <= big_n {
            c.exact("explicit-z1-zbar2-weyl-side", "hecke-bochner-theorem", || {
                let trunc = FockTruncation::new(&ctx, big_n)?;
                let g = &weights[1];
                let f = p.mul(g)?;
                let gf = weyl_transform(&f, &trunc)?;
                let tp = tau(&p, &trunc)?;
                for h in hecke_bochner(&space, &p, g, &alphas)? {
                    let proj = projection(&h.alpha, &trunc)?;
                    if gf.mul(&proj)? != tp.mul(&proj)?.scale(&h.c) {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
        } else {
            c.skip("explicit-z1-zbar2-weyl-side", "hecke-bochner-theorem", "N too small for the Weyl side");
        }
    }
    c.exact("gaussian-coefficient-n1", "geller-coefficients", || {
        let c1 = hh_core::WeylContext::new(1, rat_int(1))?;
        let space = harmonic_basis(&c1, &Family::un(1), &[(0, 0)])?;
        let alphas: Vec<IrredIndex> = (0..=kmax.max(3)).map(|k| IrredIndex::un(1, k)).collect();
        let out = hecke_bochner(&space, &GaussPoly::one(&c1), &GaussPoly::gaussian(&c1, rat_int(1)), &alphas)?;
        Ok(out[0].c.to_string() == "pi/2" && out[1..].iter().all(|h| h.c.is_zero()))
    });
    c.exact("self-coefficient", "hecke-bochner-uniqueness", || {
        for space in spaces.iter().take(4) {
            for a in alphas.iter().take(3) {
                let gs = generalized_spherical(space, a)?;
                if gs.is_zero() {
                    continue;
                }
                let g = gs.l_scalar.with_gauss(ctx.abs_lambda());
                for h in hecke_bochner(space, &space.basis()[0], &g, &alphas)? {
                    let expect = if &h.alpha == a { PiScalar::one() } else { PiScalar::zero() };
                    if h.c != expect {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    });
    c.oracle("geller-quadrature", "geller-coefficients", || {
        let mut worst: f64 = 0.0;
        for space in &spaces {
            for g in &weights {
                for a in &alphas {
                    let exact = hh_core::spherical::geller_coefficient(space, g, a)?;
                    worst = worst.max(oracle::rel(floating_geller(space, g, a)?, exact.to_c64()));
                }
            }
        }
        Ok((worst, None))
    });
    Ok(c.finish())
}

fn product_degrees(pmax: u32) -> Vec<[(u32, u32); 2]> {
    let mut out = Vec::new();
    for p1 in 0..=pmax {
        for q1 in 0..=pmax {
            for p2 in 0..=pmax {
                for q2 in 0..=pmax {
                    out.push([(p1, q1), (p2, q2)]);
                }
            }
        }
    }
    out
}

pub fn hecke_bochner_product(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let family = cfg.product_family();
    let (n1, n2) = (family.blocks()[0], family.blocks()[1]);
    let kmax = cfg.kmax_or(4);
    let ctx = context(n1 + n2, &cfg.lambda)?;
    let alphas: Vec<IrredIndex> = (0..=kmax)
        .flat_map(|m1| (0..=kmax).map(move |m2| IrredIndex::product(n1, n2, m1, m2)))
        .collect();
    let mut c = Checks::new("hecke-bochner-product", cfg.mode, cfg.tol);
    c.exact("block-eigenvalues", "product-family-eigenvalues", || {
        let two_l = ctx.abs_lambda() * rat_int(2);
        for a in &alphas {
            let s = psi(&ctx, a)?;
            for (i, ((_, mu), &m)) in s.mu.iter().zip(a.m()).enumerate() {
                let nb = family.blocks()[i] as i64;
                if *mu != PiScalar::from_rat(-(&two_l * rat_int(2 * m as i64 + nb))) {
                    return Ok(false);
                }
            }
            if s.mu != eigenvalues(&ctx, a) || !is_joint_eigenfunction(&s.psi, a)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    let spaces: Vec<HarmonicSpace> = product_degrees(2)
        .into_iter()
        .map(|d| harmonic_basis(&ctx, &family, &d))
        .collect::<hh_core::Result<Vec<_>>>()?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    c.exact("product-laguerre-forms", "product-family-generalized-spherical", || {
        for space in &spaces {
            for a in &alphas {
                let gs = generalized_spherical(space, a)?;
                if gs.l_scalar != closed_form_l(&ctx, space.degrees(), a)?
                    || gs.a_scalar != closed_form_a(&ctx, space.degrees(), a)?
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    let weights = radial_weights(&ctx, &family);
    c.exact("product-coefficients", "product-family-hecke-bochner", || {
        let few: Vec<IrredIndex> = alphas.iter().filter(|a| a.degree() <= kmax).cloned().collect();
        for space in &spaces {
            for g in &weights {
                for h in hecke_bochner(space, &space.basis()[0], g, &few)? {
                    if h.c != h.geller {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    });
    c.oracle("product-psi-profile", "product-family-spherical-functions", || {
        let l = rat_to_f64(&ctx.abs_lambda());
        let norm = ctx.normalization().to_c64().re;
        let mut worst: f64 = 0.0;
        for a in &alphas {
            let s = psi(&ctx, a)?;
            for i in 0..10 {
                let r1 = 0.17 * i as f64;
                let r2 = 1.6 - r1;
                let mut z = vec![Complex64::new(0.0, 0.0); n1 + n2];
                z[0] = Complex64::from_polar(r1, 0.3 * i as f64);
                z[n1] = Complex64::from_polar(r2, -0.5 * i as f64);
                let mut expect = norm * (-l * (r1 * r1 + r2 * r2)).exp();
                for (r, (&nb, &m)) in [r1, r2].iter().zip(family.blocks().iter().zip(a.m())) {
                    expect *= hh_core::laguerre::laguerre_eval(m, nb as u32 - 1, 2.0 * l * r * r);
                }
                worst = worst.max((s.psi.evaluate(&z)? - expect).norm() / expect.abs().max(1.0));
            }
        }
        Ok((worst, None))
    });
    Ok(c.finish())
}

pub fn generalized(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let n = cfg.n_or(2);
    if n != 2 {
        return Err(infeasible("the generalized-spherical suite uses z1^p zbar2^q and needs n = 2".into()));
    }
    let kmax = cfg.kmax_or(5);
    let big_n = cfg.big_n_or(10);
    let ctx = context(n, &cfg.lambda)?;
    let family = Family::un(n);
    let e = ctx.abs_lambda();
    let mut c = Checks::new("generalized-spherical", cfg.mode, cfg.tol);
    c.exact("theta-closed-form", "laguerre-closed-forms", || {
        for p in 0..=3 {
            for q in 0..=3 {
                let poly = z1_zbar2(&ctx, p, q)?;
                for k in 0..=kmax {
                    let a = IrredIndex::un(n, k);
                    let lhs = theta(&poly, &psi(&ctx, &a)?.psi)?;
                    let l = closed_form_l(&ctx, &[(p, q)], &a)?;
                    if lhs != poly.mul(&l)?.with_gauss(e.clone()) {
                        return Ok(false);
                    }
                    let pe = if ctx.is_positive() { p } else { q };
                    if pe > k && !lhs.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    });
    c.exact("a-constant", "a-constant-formula", || {
        for p in 0..=3 {
            for q in 0..=3 {
                let space = harmonic_basis(&ctx, &family, &[(p, q)])?;
                for k in 0..=kmax {
                    let a = IrredIndex::un(n, k);
                    let gs = generalized_spherical(&space, &a)?;
                    let closed = closed_form_a(&ctx, &[(p, q)], &a)?;
                    if gs.a_scalar != closed || a_by_radial(&space, &gs.l_scalar)? != closed {
                        return Ok(false);
                    }
                    if !gs.is_zero() && !gs.a_scalar.is_positive_monomial() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    });
    let deltas: Vec<(u32, u32)> = vec![(0, 0), (1, 0), (1, 1), (0, 2), (2, 1)];
    c.exact("orthogonality", "generalized-spherical-orthogonality", || {
        for &d in &deltas {
            let space = harmonic_basis(&ctx, &family, &[d])?;
            let cols: Vec<Vec<GaussPoly>> = (0..=kmax.min(4))
                .map(|k| generalized_spherical(&space, &IrredIndex::un(n, k)).map(|g| g.psi))
                .collect::<hh_core::Result<_>>()?;
            for (i, a) in cols.iter().enumerate() {
                for b in cols.iter().skip(i + 1) {
                    for x in a {
                        for y in b {
                            if !x.inner(y)?.is_zero() {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    });
    c.exact("uniqueness-recovery", "hecke-bochner-uniqueness", || {
        let mut r = rng(cfg.seed);
        let alphas: Vec<IrredIndex> = (0..=kmax.min(4)).map(|k| IrredIndex::un(n, k)).collect();
        for &d in &deltas {
            let space = harmonic_basis(&ctx, &family, &[d])?;
            for a in &alphas {
                let gs = generalized_spherical(&space, a)?;
                if gs.is_zero() {
                    continue;
                }
                let s = random_scalar(&mut r);
                let g = gs.l_scalar.scale(&s).with_gauss(e.clone());
                let j = r.gen_range(0..space.dim());
                for h in hecke_bochner(&space, &space.basis()[j], &g, &alphas)? {
                    let expect = if &h.alpha == a { s.clone() } else { PiScalar::zero() };
                    if h.c != expect {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    });
    let trunc = FockTruncation::new(&ctx, big_n)?;
    let inv_norm = ctx.normalization().inv()?;
    c.exact("hs-pairing-with-transform", "hs-pairing-identities", || {
        let mut r = rng(cfg.seed ^ 0x5eed);
        for &d in &deltas {
            let space = harmonic_basis(&ctx, &family, &[d])?;
            for k in 0..=3u32 {
                let a = IrredIndex::un(n, k);
                if k + d.0 + d.1 + 2 > big_n {
                    continue;
                }
                let gs = generalized_spherical(&space, &a)?;
                let f = random_poly(&mut r, &ctx, e.clone(), 2, 4);
                let gf = weyl_transform(&f, &trunc)?;
                for (b, col) in space.basis().iter().zip(&gs.psi) {
                    let w = weyl_correspondence_on(b, &a, &trunc)?;
                    if hs_inner_alpha(&gf, &w, &a)? != &f.inner(col)? * &inv_norm {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    });
    c.exact("hs-pairing-of-correspondences", "hs-pairing-identities", || {
        for &d in &deltas {
            let space = harmonic_basis(&ctx, &family, &[d])?;
            for k in 0..=3u32 {
                let a = IrredIndex::un(n, k);
                if k + d.0 + d.1 > big_n {
                    continue;
                }
                let gs = generalized_spherical(&space, &a)?;
                let ws: Vec<OperatorMatrix> = space
                    .basis()
                    .iter()
                    .map(|b| weyl_correspondence_on(b, &a, &trunc))
                    .collect::<hh_core::Result<_>>()?;
                for (i, wi) in ws.iter().enumerate() {
                    for (j, wj) in ws.iter().enumerate() {
                        if hs_inner_alpha(wi, wj, &a)? != &gs.psi[i].inner(&gs.psi[j])? * &inv_norm {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    });
    c.exact("operator-span-rank", "orthogonal-decomposition", || {
        for k in 0..=3u32 {
            for m in 0..=3u32 {
                if 2 * k + m > big_n {
                    continue;
                }
                let (rank, expected) = operator_span_rank(&IrredIndex::un(n, k), m, &trunc)?;
                if rank != expected {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    c.exact("column-equivariance", "generalized-spherical-equivariance", || {
        let ks = [
            PhaseMatrix::diagonal(vec![1, 3]),
            PhaseMatrix::new(vec![1, 0], vec![0, 2])?,
            PhaseMatrix::new(vec![1, 0], vec![1, 1])?,
        ];
        for &d in &deltas {
            let space = harmonic_basis(&ctx, &family, &[d])?;
            for k in 0..=3u32 {
                let gs = generalized_spherical(&space, &IrredIndex::un(n, k))?;
                if gs.is_zero() {
                    continue;
                }
                for kk in &ks {
                    if equivariance_matrix(&gs.psi, kk)?.is_none() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    });
    c.oracle("a-constant-quadrature", "a-constant-formula", || {
        let mut worst: f64 = 0.0;
        for &d in &deltas {
            let space = harmonic_basis(&ctx, &family, &[d])?;
            for k in 0..=3u32 {
                let gs = generalized_spherical(&space, &IrredIndex::un(n, k))?;
                for col in &gs.psi {
                    let exact = col.norm_sq()?;
                    worst = worst.max(oracle::rel(oracle::inner(col, col)?, exact.to_c64()));
                }
            }
        }
        Ok((worst, None))
    });
    Ok(c.finish())
}

/// Random operator V_α → truncation with `entries` nonzero entries.
fn random_operator<R: Rng>(r: &mut R, alpha: &IrredIndex, trunc: &hh_core::weylfock::Trunc, entries: usize) -> OperatorMatrix {
    let cols: Vec<usize> = alpha.monomials().iter().map(|nu| trunc.position(nu).expect("inside")).collect();
    let mut s = OperatorMatrix::zero(trunc);
    for _ in 0..entries {
        let row = r.gen_range(0..trunc.dim());
        let col = cols[r.gen_range(0..cols.len())];
        s.add_entry(row, col, &random_scalar(r));
    }
    s
}

pub fn eigenfunctions(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let n = cfg.n_or(2);
    let kmax = cfg.kmax_or(3);
    let big_n = cfg.big_n_or(kmax + 2);
    if kmax > big_n {
        return Err(infeasible(format!("k_max = {kmax} exceeds N = {big_n}")));
    }
    let ctx = context(n, &cfg.lambda)?;
    let trunc = FockTruncation::new(&ctx, big_n)?;
    let inv_norm = ctx.normalization().inv()?;
    let mut r = rng(cfg.seed);
    let samples: Vec<(IrredIndex, OperatorMatrix)> = (0..10)
        .map(|i| {
            let a = IrredIndex::un(n, i % (kmax + 1));
            let s = random_operator(&mut r, &a, &trunc, 4);
            (a, s)
        })
        .collect();
    let mut c = Checks::new("eigenfunctions", cfg.mode, cfg.tol);
    c.exact("random-operators-norm-identity", "square-integrable-eigenfunctions", || {
        for (a, s) in &samples {
            let f = eigenfunction_from_operator(s, a)?;
            if !is_joint_eigenfunction(&f, a)? || f.norm_sq()? != &hs_inner_alpha(s, s, a)? * &inv_norm {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact("zero-operator", "square-integrable-eigenfunctions", || {
        let a = IrredIndex::un(n, 0);
        Ok(eigenfunction_from_operator(&OperatorMatrix::zero(&trunc), &a)?.is_zero())
    });
    c.exact("projection-gives-psi", "eigenfunction-from-correspondence", || {
        for k in 0..=kmax {
            let a = IrredIndex::un(n, k);
            let f = eigenfunction_from_operator(&projection(&a, &trunc)?, &a)?;
            if f.scale(&ctx.normalization()) != psi(&ctx, &a)?.psi {
                return Ok(false);
            }
        }
        Ok(true)
    });
    if n == 2 {
        c.exact("correspondence-gives-theta", "eigenfunction-from-correspondence", || {
            let p = z1_zbar2(&ctx, 1, 1)?;
            for k in 0..=kmax {
                let a = IrredIndex::un(n, k);
                if k + 2 > big_n {
                    continue;
                }
                let s = weyl_correspondence_on(&p, &a, &trunc)?;
                let f = eigenfunction_from_operator(&s, &a)?;
                if f.scale(&ctx.normalization()) != theta(&p, &psi(&ctx, &a)?.psi)? {
                    return Ok(false);
                }
            }
            Ok(true)
        });
    }
    c.exact("off-support-rejected", "square-integrable-eigenfunctions", || {
        let a = IrredIndex::un(n, 0);
        let b = IrredIndex::un(n, 1.min(big_n));
        if a == b {
            return Ok(true);
        }
        let s = projection(&b, &trunc)?;
        Ok(matches!(eigenfunction_from_operator(&s, &a), Err(HhError::SupportOffAlpha(_))))
    });
    c.oracle("norm-quadrature", "square-integrable-eigenfunctions", || {
        let mut worst: f64 = 0.0;
        for (a, s) in samples.iter().take(4) {
            let f = eigenfunction_from_operator(s, a)?;
            let exact = (&hs_inner_alpha(s, s, a)? * &inv_norm).to_c64();
            worst = worst.max(oracle::rel(oracle::inner(&f, &f)?, exact));
        }
        Ok((worst, None))
    });
    Ok(c.finish())
}
