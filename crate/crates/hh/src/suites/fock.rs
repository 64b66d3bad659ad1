use hh_core::gausspoly::{theta, theta1, theta2, twisted_convolve, GaussPoly, Generator, InvariantOp, PhaseMatrix};
use hh_core::scalar::{binomial, rat_int, rat_to_f64, PiScalar, Rat};
use hh_core::spherical::{harmonic_basis, is_joint_eigenfunction, psi};
use hh_core::weylfock::{
    displacement_matrix_element, gram_weight, inverse_weyl, ladder, projection, tau, tau1, tau2, unitary_action,
    unitary_action_float, weyl_transform, Family, FockTruncation, IrredIndex, Ladder, OperatorMatrix,
};
use num_complex::Complex64;

use super::{context, random_poly, rng};
use crate::config::SuiteConfig;
use crate::oracle;
use crate::report::{Checks, SuiteReport};
use crate::HarnessError;

fn infeasible(msg: String) -> HarnessError {
    HarnessError::Infeasible(msg)
}

pub fn fock_basics(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let n = cfg.n_or(2);
    let big_n = cfg.big_n_or(8);
    let ctx = context(n, &cfg.lambda)?;
    let trunc = FockTruncation::new(&ctx, big_n)?;
    let mut c = Checks::new("fock-basics", cfg.mode, cfg.tol);
    c.exact("dimension", "fock-truncation-dimension", || {
        Ok(binomial(big_n + n as u32, n as u32) == trunc.dim().into())
    });
    c.exact("vacuum-matrix-element", "fock-matrix-coefficients", || {
        let z = hh_core::gausspoly::MultiIndex::zeros(n);
        Ok(displacement_matrix_element(&ctx, &z, &z)? == GaussPoly::gaussian(&ctx, ctx.abs_lambda()))
    });
    if big_n == 0 {
        c.skip("ladder-commutators", "ladder-commutation-relations", "interior empty");
        c.skip("ladder-adjoint", "ladder-adjoints", "interior empty");
    } else {
        let d = big_n - 1;
        let lam = PiScalar::from_rat(ctx.lambda().clone());
        c.exact("ladder-commutators", "ladder-commutation-relations", || {
            let id = OperatorMatrix::identity(&trunc).interior(d);
            for j in 0..n {
                for k in 0..n {
                    let wj = ladder(&trunc, j, Ladder::W)?;
                    let wk = ladder(&trunc, k, Ladder::W)?;
                    let bj = ladder(&trunc, j, Ladder::Wbar)?;
                    let bk = ladder(&trunc, k, Ladder::Wbar)?;
                    let comm = |a: &OperatorMatrix, b: &OperatorMatrix| -> hh_core::Result<OperatorMatrix> {
                        Ok(a.mul(b)?.sub(&b.mul(a)?)?.interior(d))
                    };
                    let expect = if j == k { id.scale(&(&lam * &PiScalar::from_int(-2))) } else { OperatorMatrix::zero(&trunc) };
                    if comm(&bj, &wk)? != expect || !comm(&wj, &wk)?.is_zero() || !comm(&bj, &bk)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        });
        c.exact("ladder-adjoint", "ladder-adjoints", || {
            for j in 0..n {
                let w = ladder(&trunc, j, Ladder::W)?;
                let wb = ladder(&trunc, j, Ladder::Wbar)?;
                if w.adjoint().interior(d) != wb.interior(d) {
                    return Ok(false);
                }
            }
            Ok(true)
        });
    }
    c.exact("invariant-field-commutators", "left-right-field-commutators", || {
        let mut r = rng(cfg.seed);
        let lam = PiScalar::from_rat(ctx.lambda().clone());
        for _ in 0..3 {
            let f = random_poly(&mut r, &ctx, ctx.abs_lambda(), 4, 5);
            for j in 0..n {
                for k in 0..n {
                    let d = if j == k { 1 } else { 0 };
                    let checks = [
                        (Generator::Lbar(j), Generator::L(k), -2 * d),
                        (Generator::L(j), Generator::L(k), 0),
                        (Generator::Lbar(j), Generator::Lbar(k), 0),
                        (Generator::Rbar(j), Generator::R(k), 2 * d),
                        (Generator::R(j), Generator::R(k), 0),
                        (Generator::Rbar(j), Generator::Rbar(k), 0),
                        (Generator::L(j), Generator::R(k), 0),
                        (Generator::L(j), Generator::Rbar(k), 0),
                        (Generator::Lbar(j), Generator::R(k), 0),
                        (Generator::Lbar(j), Generator::Rbar(k), 0),
                    ];
                    for (a, b, m) in checks {
                        let comm = InvariantOp::commutator(&InvariantOp::gen(a), &InvariantOp::gen(b));
                        if comm.apply(&f)? != f.scale(&(&lam * &PiScalar::from_int(m))) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    });
    c.exact("matrix-json-roundtrip", "serialization", || {
        let w = ladder(&trunc, 0, Ladder::Wbar)?;
        Ok(OperatorMatrix::from_json(&w.to_json())? == w)
    });
    Ok(c.finish())
}

pub fn plancherel(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let n = cfg.n_or(2);
    let big_n = cfg.big_n_or(10);
    let deg = cfg.kmax_or(6);
    if deg > big_n {
        return Err(infeasible(format!("degree {deg} exceeds N = {big_n}; Weyl transforms would be truncated")));
    }
    let ctx = context(n, &cfg.lambda)?;
    let trunc = FockTruncation::new(&ctx, big_n)?;
    let t = ctx.abs_lambda();
    let mut r = rng(cfg.seed);
    let pairs: Vec<(GaussPoly, GaussPoly)> = (0..20)
        .map(|_| (random_poly(&mut r, &ctx, t.clone(), deg, 6), random_poly(&mut r, &ctx, t.clone(), deg, 6)))
        .collect();
    let mut c = Checks::new("plancherel", cfg.mode, cfg.tol);
    let norm = ctx.normalization();
    c.exact("plancherel-polarization", "plancherel", || {
        for (f, g) in &pairs {
            let lhs = f.inner(g)?;
            let rhs = &weyl_transform(f, &trunc)?.hs_inner(&weyl_transform(g, &trunc)?)? * &norm;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact("convolution-theorem", "weyl-transform-of-twisted-convolution", || {
        for (f, g) in pairs.iter().take(5) {
            let lhs = weyl_transform(&twisted_convolve(f, g)?, &trunc)?;
            if lhs != weyl_transform(f, &trunc)?.mul(&weyl_transform(g, &trunc)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact("weyl-of-conjugate", "weyl-transform-adjoint", || {
        for (f, _) in pairs.iter().take(5) {
            if weyl_transform(&f.conj(), &trunc)? != weyl_transform(&f.reflect(), &trunc)?.adjoint() {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact("inverse-roundtrip", "weyl-inversion", || {
        for (f, _) in pairs.iter().take(5) {
            if &inverse_weyl(&weyl_transform(f, &trunc)?)? != f {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.oracle("plancherel-quadrature", "plancherel", || {
        let mut worst: f64 = 0.0;
        for (f, g) in pairs.iter().take(4) {
            worst = worst.max(oracle::rel(oracle::inner(f, g)?, f.inner(g)?.to_c64()));
        }
        Ok((worst, None))
    });
    c.oracle("weyl-entry-quadrature", "weyl-transform-matrix-entries", || {
        let f = &pairs[0].0;
        let w = weyl_transform(f, &trunc)?;
        let mut worst: f64 = 0.0;
        for (&(row, col), v) in w.entries().take(12) {
            let mu = trunc.index(row);
            let nu = trunc.index(col);
            let d = displacement_matrix_element(&ctx, nu, mu)?;
            let g = rat_to_f64(&gram_weight(&ctx, mu));
            let q = oracle::integrate(&f.mul(&d)?)? / g;
            worst = worst.max(oracle::rel(q, v.to_c64()));
        }
        Ok((worst, None))
    });
    Ok(c.finish())
}

pub fn invariant_ops(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let n = cfg.n_or(2);
    let big_n = cfg.big_n_or(8);
    let deg = cfg.kmax_or(3);
    if deg + 2 > big_n {
        return Err(infeasible(format!("degree {deg} needs N >= {} for a nonempty interior", deg + 2)));
    }
    let ctx = context(n, &cfg.lambda)?;
    let trunc = FockTruncation::new(&ctx, big_n)?;
    let d = big_n - 1;
    let t = ctx.abs_lambda();
    let mut r = rng(cfg.seed);
    let fs: Vec<GaussPoly> = (0..4).map(|_| random_poly(&mut r, &ctx, t.clone(), deg, 5)).collect();
    let mut c = Checks::new("invariant-ops", cfg.mode, cfg.tol);
    let minus = PiScalar::from_int(-1);
    c.exact("generator-transforms", "invariant-operators-under-weyl-transform", || {
        for f in &fs {
            let gf = weyl_transform(f, &trunc)?;
            for j in 0..n {
                let w = ladder(&trunc, j, Ladder::W)?;
                let wb = ladder(&trunc, j, Ladder::Wbar)?;
                let tr = |g: Generator| weyl_transform(&g.apply(f)?, &trunc).map(|m| m.interior(d));
                if tr(Generator::L(j))? != gf.mul(&w)?.scale(&minus).interior(d)
                    || tr(Generator::Lbar(j))? != gf.mul(&wb)?.interior(d)
                    || tr(Generator::R(j))? != w.mul(&gf)?.scale(&minus).interior(d)
                    || tr(Generator::Rbar(j))? != wb.mul(&gf)?.interior(d)
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    let family = Family::un(n);
    let harmonics: Vec<GaussPoly> = (0..=2u32)
        .flat_map(|p| (0..=2 - p).map(move |q| (p, q)))
        .filter(|&(p, q)| p + q > 0)
        .flat_map(|(p, q)| harmonic_basis(&ctx, &family, &[(p, q)]).map(|s| s.basis().to_vec()).unwrap_or_default())
        .collect();
    c.exact("theta-harmonic-symmetric", "theta-of-harmonic-polynomial", || {
        for p in &harmonics {
            for f in fs.iter().take(2) {
                if theta1(p, f)? != theta2(p, f)? {
                    return Ok(false);
                }
            }
            if tau1(p, &trunc)?.interior(d - 2) != tau2(p, &trunc)?.interior(d - 2) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact("theta-intertwines-tau", "theta-of-harmonic-polynomial", || {
        for p in &harmonics {
            for f in fs.iter().take(2) {
                let lhs = weyl_transform(&theta(p, f)?, &trunc)?.interior(d - 2);
                let rhs = tau(p, &trunc)?.mul(&weyl_transform(f, &trunc)?)?.interior(d - 2);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    let phases: Vec<PhaseMatrix> = if n == 1 {
        vec![PhaseMatrix::diagonal(vec![1]), PhaseMatrix::diagonal(vec![2])]
    } else {
        let mut perm: Vec<usize> = (1..n).collect();
        perm.push(0);
        vec![
            PhaseMatrix::diagonal((0..n).map(|j| (j % 4) as u8 + 1).collect()),
            PhaseMatrix::new(perm, (0..n).map(|j| (3 * j % 4) as u8).collect())?,
        ]
    };
    c.exact("unitary-equivariance", "k-action-equivariance", || {
        for k in &phases {
            let u = unitary_action(k, &trunc)?;
            for f in &fs {
                let lhs = weyl_transform(&f.act(k)?, &trunc)?;
                if lhs != u.mul(&weyl_transform(f, &trunc)?)?.mul(&u.adjoint())? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    c.exact("special-hermite-eigen", "special-hermite-operator", || {
        for k in 0..=3.min(big_n) {
            let a = IrredIndex::un(n, k);
            if !is_joint_eigenfunction(&psi(&ctx, &a)?.psi, &a)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.oracle("unitary-float", "k-action-equivariance", || {
        let mut worst: f64 = 0.0;
        for k in &phases {
            let exact = unitary_action(k, &trunc)?;
            let dense: Vec<Vec<Complex64>> = k.to_dense();
            let float = unitary_action_float(&dense, &trunc)?;
            for (i, row) in float.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    worst = worst.max((v - exact.get(i, j).to_c64()).norm());
                }
            }
        }
        Ok((worst, None))
    });
    Ok(c.finish())
}

pub fn projections(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let n = cfg.n_or(1);
    let big_n = cfg.big_n_or(8);
    let kmax = cfg.kmax_or(4);
    if kmax > big_n {
        return Err(infeasible(format!("k_max = {kmax} exceeds N = {big_n}")));
    }
    let ctx = context(n, &cfg.lambda)?;
    let trunc = FockTruncation::new(&ctx, big_n)?;
    let mut c = Checks::new("projections", cfg.mode, cfg.tol);
    let alphas: Vec<IrredIndex> = (0..=kmax).map(|k| IrredIndex::un(n, k)).collect();
    c.exact("weyl-of-psi-is-projection", "weyl-transform-of-spherical-function", || {
        for a in &alphas {
            if weyl_transform(&psi(&ctx, a)?.psi, &trunc)? != projection(a, &trunc)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact("psi-eigenvalues", "special-hermite-operator", || {
        let two = ctx.abs_lambda() * rat_int(2);
        for a in &alphas {
            let s = psi(&ctx, a)?;
            let expect = PiScalar::from_rat(-(&two * rat_int(2 * a.degree() as i64 + n as i64)));
            if s.mu[0].1 != expect || !is_joint_eigenfunction(&s.psi, a)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact("psi-convolution-idempotent", "spherical-functions-orthogonal-idempotents", || {
        let few = &alphas[..alphas.len().min(4)];
        for a in few {
            let pa = psi(&ctx, a)?.psi;
            for b in few {
                let pb = psi(&ctx, b)?.psi;
                let conv = twisted_convolve(&pa, &pb)?;
                let expect = if a == b { pa.clone() } else { GaussPoly::zero(&ctx, ctx.abs_lambda()) };
                if conv != expect {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    c.exact("psi-norm", "spherical-function-norm", || {
        for a in &alphas {
            let expect = ctx.normalization().scale_rat(&Rat::from_integer((a.dim() as i64).into()));
            if psi(&ctx, a)?.psi.norm_sq()? != expect {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact("completeness", "spherical-expansion-completeness", || {
        let mut r = rng(cfg.seed);
        let deg = (2 * kmax).min(big_n);
        for _ in 0..3 {
            let f = random_poly(&mut r, &ctx, ctx.abs_lambda(), deg, 6);
            let mut acc = GaussPoly::zero(&ctx, ctx.abs_lambda());
            for k in 0..=deg {
                acc.add_assign(&twisted_convolve(&f, &psi(&ctx, &IrredIndex::un(n, k))?.psi)?)?;
            }
            if acc != f {
                return Ok(false);
            }
        }
        Ok(true)
    });
    if n == 2 {
        c.exact("product-family-sum", "spherical-function-decomposition", || {
            for k in 0..=kmax {
                let mut acc = GaussPoly::zero(&ctx, ctx.abs_lambda());
                for m1 in 0..=k {
                    acc.add_assign(&psi(&ctx, &IrredIndex::product(1, 1, m1, k - m1))?.psi)?;
                }
                if acc != psi(&ctx, &IrredIndex::un(2, k))?.psi {
                    return Ok(false);
                }
            }
            Ok(true)
        });
    }
    c.oracle("psi-profile", "laguerre-closed-form", || {
        let l = rat_to_f64(&ctx.abs_lambda());
        let norm = ctx.normalization().to_c64().re;
        let mut worst: f64 = 0.0;
        for a in &alphas {
            let s = psi(&ctx, a)?;
            for i in 0..=40 {
                let rr = i as f64 * 0.1;
                let mut z = vec![Complex64::new(0.0, 0.0); n];
                z[0] = Complex64::new(rr * 0.6, rr * 0.8);
                let expect = norm * hh_core::laguerre::laguerre_eval(a.degree(), n as u32 - 1, 2.0 * l * rr * rr) * (-l * rr * rr).exp();
                worst = worst.max((s.psi.evaluate(&z)? - expect).norm());
            }
        }
        Ok((worst, None))
    });
    c.oracle("psi-norm-quadrature", "spherical-function-norm", || {
        let mut worst: f64 = 0.0;
        for a in alphas.iter().take(3) {
            let p = psi(&ctx, a)?.psi;
            worst = worst.max(oracle::rel(oracle::inner(&p, &p)?, p.norm_sq()?.to_c64()));
        }
        Ok((worst, None))
    });
    Ok(c.finish())
}
