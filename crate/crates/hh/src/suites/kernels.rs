use hh_core::scalar::{rat_int, rat_to_f64};
use hh_core::spherical::{
    choose_radii, circle_space, eta_omega, kernel_p, kernel_q, kernel_q_series, q_projection, q_projection_closed,
    surface_b, surface_measure_convolve, vanishing_laguerre, CircleType,
};
use hh_core::weylfock::{Family, IrredIndex};
use hh_core::HhError;
use num_complex::Complex64;

use super::context;
use crate::config::SuiteConfig;
use crate::oracle::bessel_j;
use crate::report::{Checks, SuiteReport};
use crate::HarnessError;

const Q_MAX: u32 = 12;
const TAIL_ORDERS: u32 = 8;

fn probes() -> Vec<Vec<Complex64>> {
    vec![
        vec![Complex64::new(0.3, -0.1), Complex64::new(0.2, 0.25)],
        vec![Complex64::new(-0.35, 0.2), Complex64::new(0.1, -0.3)],
        vec![Complex64::new(0.05, 0.4), Complex64::new(-0.25, 0.0)],
    ]
}

fn omegas() -> Vec<[Complex64; 2]> {
    vec![
        [Complex64::from_polar(1.0, 0.7), Complex64::from_polar(1.0, -2.1)],
        [Complex64::from_polar(1.0, 2.9), Complex64::from_polar(1.0, 0.4)],
    ]
}

fn circle_types() -> Vec<CircleType> {
    (-2..=2).flat_map(|a| (-2..=2).map(move |b| CircleType(vec![a, b]))).collect()
}

pub fn kernels_and_surface(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let ctx = context(2, &cfg.lambda)?;
    let mmax = cfg.kmax_or(2);
    let alphas: Vec<IrredIndex> = (0..=mmax)
        .flat_map(|m1| (0..=mmax).map(move |m2| IrredIndex::product(1, 1, m1, m2)))
        .collect();
    let unit = [1.0, 1.0];
    let l = rat_to_f64(&ctx.abs_lambda());
    let mut c = Checks::new("kernels-and-surface", cfg.mode, cfg.tol);
    c.numeric("surface-lemma", "surface-measure-convolution", true, || {
        let mut worst: f64 = 0.0;
        let mut conv: f64 = 0.0;
        for a in &alphas {
            for d in circle_types() {
                let space = circle_space(&ctx, &d)?;
                let r = surface_measure_convolve(&space, &space.basis()[0], &unit, a, 48, &probes())?;
                worst = worst.max(r.residual);
                conv = conv.max(r.convergence);
            }
        }
        Ok((worst.max(conv), Some(format!("max residual {worst:.2e}, max change on doubling nodes {conv:.2e}"))))
    });
    c.numeric("surface-vanishing", "surface-measure-convolution", true, || {
        let mut worst: f64 = 0.0;
        for a in &alphas {
            for d in circle_types() {
                let degrees = d.degrees();
                let above = degrees.iter().zip(a.m()).any(|(&(p, q), &m)| if ctx.is_positive() { p > m } else { q > m });
                if !above {
                    continue;
                }
                if surface_b(&ctx, a, &degrees, &unit) != 0.0 {
                    return Ok((f64::INFINITY, Some(format!("nonzero b for {d:?} at {a}"))));
                }
                let space = circle_space(&ctx, &d)?;
                let r = surface_measure_convolve(&space, &space.basis()[0], &unit, a, 48, &probes())?;
                worst = worst.max(r.residual);
            }
        }
        Ok((worst, None))
    });
    c.numeric("surface-trivial-constant", "surface-measure-convolution", true, || {
        let a0 = IrredIndex::product(1, 1, 0, 0);
        let radii = [1.0, 1.25];
        let b = surface_b(&ctx, &a0, &[(0, 0), (0, 0)], &radii);
        let expect = (-l * (radii[0] * radii[0] + radii[1] * radii[1])).exp();
        Ok(((b - expect).abs(), None))
    });
    c.numeric("q-at-shift", "closed-kernel", true, || {
        let norm = ctx.normalization().to_c64();
        let mut worst: f64 = 0.0;
        for a in &alphas {
            let radii = choose_radii(&ctx, a, Q_MAX)?;
            let af: Vec<f64> = radii.iter().map(rat_to_f64).collect();
            for w in omegas() {
                let z = [w[0] * af[0], w[1] * af[1]];
                worst = worst.max((kernel_q(&ctx, a, &z, &w, &radii, Q_MAX)? - norm).norm() / norm.norm());
            }
        }
        Ok((worst, None))
    });
    c.numeric("p-order-zero", "series-kernel", true, || {
        let a0 = IrredIndex::product(1, 1, 0, 0);
        let mut worst: f64 = 0.0;
        for z in probes() {
            for w in omegas() {
                let r2: f64 = z.iter().map(|x| x.norm_sqr()).sum();
                worst = worst.max((kernel_p(&ctx, &a0, &z, &w, 0)? - (-l * r2).exp()).norm());
            }
        }
        Ok((worst, None))
    });
    c.numeric("q-projection", "closed-kernel", true, || {
        let mut worst: f64 = 0.0;
        for a in &alphas {
            for d in circle_types() {
                for z in probes() {
                    let x = q_projection(&ctx, a, &d, &z, &unit, 48)?;
                    let y = q_projection_closed(&ctx, a, &d, &z, &unit)?;
                    worst = worst.max((x - y).norm());
                }
            }
        }
        Ok((worst, None))
    });
    c.numeric("q-versus-series", "closed-kernel", true, || {
        let mut worst: f64 = 0.0;
        let mut tail: f64 = 0.0;
        let mut radii_used = Vec::new();
        for a in &alphas {
            let radii = choose_radii(&ctx, a, Q_MAX)?;
            let af: Vec<f64> = radii.iter().map(rat_to_f64).collect();
            radii_used.push(format!("{a}:a={}", radii[0]));
            for z in probes() {
                for w in omegas() {
                    let q = kernel_q(&ctx, a, &z, &w, &radii, Q_MAX)?;
                    let (s, t) = kernel_q_series(&ctx, a, &z, &w, &af, Q_MAX, TAIL_ORDERS)?;
                    worst = worst.max((q - s).norm());
                    tail = tail.max(t);
                }
            }
        }
        let note = format!(
            "orders <= {Q_MAX}; next {TAIL_ORDERS} orders contribute <= {tail:.2e}; radii {}",
            radii_used.join(" ")
        );
        Ok((worst, Some(note)))
    });
    c.exact("vanishing-laguerre-rejected", "closed-kernel", || {
        let a = IrredIndex::product(1, 1, 1, 0);
        let radii = vec![rat_int(1), rat_int(1)];
        let flagged = vanishing_laguerre(&ctx, &a, &radii, Q_MAX).is_some();
        let z = [Complex64::new(0.1, 0.0), Complex64::new(0.0, 0.1)];
        let w = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        let res = kernel_q(&ctx, &a, &z, &w, &radii, Q_MAX);
        let unit_lambda = ctx.abs_lambda() == rat_int(1);
        Ok(match res {
            Err(HhError::VanishingLaguerre(_)) => flagged,
            Ok(_) => !flagged && !unit_lambda,
            Err(e) => return Err(e),
        })
    });
    Ok(c.finish())
}

fn grid(len: usize, max: f64) -> Vec<f64> {
    (0..len).map(|i| max * i as f64 / (len - 1) as f64).collect()
}

pub fn eta(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let mut c = Checks::new("eta", cfg.mode, cfg.tol);
    let one = Family::un(1);
    c.numeric("bessel-j0-grid", "bounded-spherical-functions", true, || {
        let mut worst: f64 = 0.0;
        for (i, &w) in grid(10, 3.0).iter().enumerate() {
            for (j, &r) in grid(10, 3.0).iter().enumerate() {
                let omega = [Complex64::from_polar(w, 0.3 * i as f64)];
                let z = [Complex64::from_polar(r, -0.7 * j as f64)];
                worst = worst.max((eta_omega(&one, &omega, &z)? - bessel_j(0, w * r)).abs());
            }
        }
        Ok((worst, None))
    });
    c.numeric("omega-zero", "bounded-spherical-functions", true, || {
        let z = [Complex64::new(1.3, -0.4), Complex64::new(0.2, 2.0)];
        let zero = [Complex64::new(0.0, 0.0); 2];
        let a = (eta_omega(&Family::un(2), &zero, &z)? - 1.0).abs();
        let b = (eta_omega(&Family::product(1, 1), &zero, &z)? - 1.0).abs();
        Ok((a.max(b), None))
    });
    c.numeric("k-invariance", "bounded-spherical-functions", true, || {
        let omega = [Complex64::new(0.8, 0.3), Complex64::new(-0.5, 1.1)];
        let z = [Complex64::new(1.2, -0.2), Complex64::new(0.4, 0.9)];
        let base = eta_omega(&Family::un(2), &omega, &z)?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ks: [[[Complex64; 2]; 2]; 2] = [
            [[Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)]],
            [[Complex64::new(s, 0.0), Complex64::new(0.0, s)], [Complex64::new(0.0, s), Complex64::new(s, 0.0)]],
        ];
        let mut worst: f64 = 0.0;
        for k in &ks {
            let kz = [k[0][0] * z[0] + k[0][1] * z[1], k[1][0] * z[0] + k[1][1] * z[1]];
            worst = worst.max((eta_omega(&Family::un(2), &omega, &kz)? - base).abs());
        }
        Ok((worst, None))
    });
    c.numeric("sphere-average-n2", "bounded-spherical-functions", true, || {
        let mut worst: f64 = 0.0;
        for &w in &grid(6, 3.0)[1..] {
            for &r in &grid(6, 3.0)[1..] {
                let omega = [Complex64::new(w, 0.0), Complex64::new(0.0, 0.0)];
                let z = [Complex64::new(0.0, r * 0.6), Complex64::new(r * 0.8, 0.0)];
                let s = w * r;
                worst = worst.max((eta_omega(&Family::un(2), &omega, &z)? - 2.0 * bessel_j(1, s) / s).abs());
            }
        }
        Ok((worst, None))
    });
    c.numeric("product-family", "bounded-spherical-functions", true, || {
        let fam = Family::product(1, 1);
        let mut worst: f64 = 0.0;
        for &a in &grid(5, 3.0) {
            for &b in &grid(5, 3.0) {
                let omega = [Complex64::new(a, 0.0), Complex64::new(0.0, 1.5)];
                let z = [Complex64::new(0.0, 1.0), Complex64::new(b, 0.0)];
                let expect = bessel_j(0, a) * bessel_j(0, 1.5 * b);
                worst = worst.max((eta_omega(&fam, &omega, &z)? - expect).abs());
            }
        }
        Ok((worst, None))
    });
    Ok(c.finish())
}
