mod common;

use common::ctx;
use hh_core::gausspoly::{GaussPoly, MultiIndex, PhaseMatrix};
use hh_core::scalar::{rat, PiScalar};
use hh_core::spherical::*;
use hh_core::weylfock::{projection, weyl_transform, Family, FockTruncation, IrredIndex};

#[test]
fn harmonic_basis_dimensions() {
    let c1 = ctx(1, 1, 1);
    assert!(harmonic_basis(&c1, &Family::un(1), &[(2, 1)]).unwrap().is_empty());
    let c2 = ctx(2, 1, 1);
    assert_eq!(harmonic_basis(&c2, &Family::un(2), &[(1, 1)]).unwrap().dim(), 3);
    for p in 0..5 {
        assert_eq!(harmonic_basis(&c2, &Family::un(2), &[(p, 0)]).unwrap().dim(), p as usize + 1);
        for q in 0..4 {
            assert_eq!(harmonic_basis(&c2, &Family::un(2), &[(p, q)]).unwrap().dim(), (p + q + 1) as usize);
        }
    }
}

#[test]
fn decomposition_examples() {
    let c = ctx(2, 1, 1);
    let fam = Family::un(2);
    let parts = harmonic_decompose(&GaussPoly::abs_sq(&c), &fam).unwrap();
    assert_eq!(parts, vec![(vec![1], GaussPoly::one(&c))]);
    let p = GaussPoly::z(&c, 0).mul(&GaussPoly::zbar(&c, 0)).unwrap();
    let parts = harmonic_decompose(&p, &fam).unwrap();
    let half = GaussPoly::constant(&c, rat(0, 1), PiScalar::from_rat(rat(1, 2)));
    let h = p.sub(&GaussPoly::abs_sq(&c).scale_rat(&rat(1, 2))).unwrap();
    assert_eq!(parts, vec![(vec![0], h), (vec![1], half)]);
}

#[test]
fn psi_examples_and_projection() {
    let c = ctx(1, 1, 1);
    let s = psi(&c, &IrredIndex::un(1, 0)).unwrap();
    assert_eq!(s.psi, GaussPoly::constant(&c, rat(1, 1), PiScalar::rat_pi(rat(2, 1), -1)));
    assert_eq!(s.mu[0].1, PiScalar::from_int(-2));
    for &(p, q) in &[(1, 1), (-1, 1), (-3, 2)] {
        for n in 1..=2 {
            let c = ctx(n, p, q);
            let trunc = FockTruncation::new(&c, 6).unwrap();
            for k in 0..=5 {
                let a = IrredIndex::un(n, k);
                let s = psi(&c, &a).unwrap();
                assert!(is_joint_eigenfunction(&s.psi, &a).unwrap());
                assert_eq!(weyl_transform(&s.psi, &trunc).unwrap(), projection(&a, &trunc).unwrap());
            }
        }
        let c = ctx(2, p, q);
        let trunc = FockTruncation::new(&c, 5).unwrap();
        for a in Family::product(1, 1).alphas_up_to(4) {
            let s = psi(&c, &a).unwrap();
            assert!(is_joint_eigenfunction(&s.psi, &a).unwrap());
            assert_eq!(weyl_transform(&s.psi, &trunc).unwrap(), projection(&a, &trunc).unwrap());
        }
    }
}

#[test]
fn generalized_closed_forms() {
    for &(lp, lq) in &[(1, 1), (-1, 2)] {
        let c = ctx(2, lp, lq);
        let fam = Family::un(2);
        for p in 0..=2 {
            for q in 0..=2 {
                let space = harmonic_basis(&c, &fam, &[(p, q)]).unwrap();
                for k in 0..=3 {
                    let a = IrredIndex::un(2, k);
                    let gs = generalized_spherical(&space, &a).unwrap();
                    assert_eq!(gs.l_scalar, closed_form_l(&c, &[(p, q)], &a).unwrap(), "L p={p} q={q} k={k}");
                    assert_eq!(gs.a_scalar, closed_form_a(&c, &[(p, q)], &a).unwrap(), "A p={p} q={q} k={k}");
                    assert_eq!(gs.a_scalar, a_by_radial(&space, &gs.l_scalar).unwrap());
                }
            }
        }
        let fam = Family::product(1, 1);
        for deg in [[(0, 1), (2, 0)], [(1, 0), (0, 0)], [(0, 2), (0, 1)]] {
            let space = harmonic_basis(&c, &fam, &deg).unwrap();
            for a in fam.alphas_up_to(3) {
                let gs = generalized_spherical(&space, &a).unwrap();
                assert_eq!(gs.l_scalar, closed_form_l(&c, &deg, &a).unwrap());
                assert_eq!(gs.a_scalar, closed_form_a(&c, &deg, &a).unwrap());
            }
        }
    }
}

#[test]
fn hecke_bochner_gaussian() {
    let c = ctx(1, 1, 1);
    let space = harmonic_basis(&c, &Family::un(1), &[(0, 0)]).unwrap();
    let alphas: Vec<_> = (0..4).map(|k| IrredIndex::un(1, k)).collect();
    let out = hecke_bochner(&space, &GaussPoly::one(&c), &GaussPoly::gaussian(&c, rat(1, 1)), &alphas).unwrap();
    assert_eq!(out[0].c.to_string(), "pi/2");
    assert!(out[1..].iter().all(|x| x.c.is_zero()));
}

#[test]
fn hecke_bochner_general() {
    for &(lp, lq) in &[(1, 1), (-1, 1)] {
        let c = ctx(2, lp, lq);
        let fam = Family::un(2);
        let g1 = GaussPoly::gaussian(&c, c.abs_lambda());
        let g2 = GaussPoly::abs_sq(&c).with_gauss(c.abs_lambda());
        let alphas: Vec<_> = (0..4).map(|k| IrredIndex::un(2, k)).collect();
        for p in 0..=2 {
            for q in 0..=2 {
                let space = harmonic_basis(&c, &fam, &[(p, q)]).unwrap();
                for b in space.basis() {
                    for g in [&g1, &g2] {
                        hecke_bochner(&space, b, g, &alphas).unwrap();
                    }
                }
            }
        }
    }
}

#[test]
fn non_invariant_g_is_rejected() {
    let c = ctx(2, 1, 1);
    let space = harmonic_basis(&c, &Family::un(2), &[(0, 0)]).unwrap();
    let g = GaussPoly::z(&c, 0).mul(&GaussPoly::zbar(&c, 0)).unwrap().with_gauss(rat(1, 1));
    let err = hecke_bochner(&space, &GaussPoly::one(&c), &g, &[IrredIndex::un(2, 0)]);
    assert!(matches!(err, Err(hh_core::HhError::NotInvariant(_))));
}

#[test]
fn eigenfunction_from_w_of_p() {
    for &(lp, lq) in &[(1, 1), (-1, 2)] {
        let c = ctx(2, lp, lq);
        let trunc = FockTruncation::new(&c, 6).unwrap();
        let p = GaussPoly::z(&c, 0).mul(&GaussPoly::zbar(&c, 1)).unwrap();
        for k in 0..=3 {
            let a = IrredIndex::un(2, k);
            let s = weyl_correspondence_on(&p, &a, &trunc).unwrap();
            let f = eigenfunction_from_operator(&s, &a).unwrap();
            let th = hh_core::gausspoly::theta(&p, &psi(&c, &a).unwrap().psi).unwrap();
            assert_eq!(f.scale(&c.normalization()), th);
            let proj = projection(&a, &trunc).unwrap();
            let f = eigenfunction_from_operator(&proj, &a).unwrap();
            assert_eq!(f.scale(&c.normalization()), psi(&c, &a).unwrap().psi);
        }
    }
}

#[test]
fn equivariance_of_columns() {
    let c = ctx(2, 1, 1);
    let space = harmonic_basis(&c, &Family::un(2), &[(1, 1)]).unwrap();
    let gs = generalized_spherical(&space, &IrredIndex::un(2, 2)).unwrap();
    let k = PhaseMatrix::new(vec![1, 0], vec![1, 3]).unwrap();
    assert!(equivariance_matrix(&gs.psi, &k).unwrap().is_some());
    let _ = MultiIndex::zeros(2);
}

mod kernels {
    use super::*;
    use num_complex::Complex64;

    fn probes() -> Vec<Vec<Complex64>> {
        vec![
            vec![Complex64::new(0.3, -0.1), Complex64::new(0.2, 0.25)],
            vec![Complex64::new(-0.35, 0.2), Complex64::new(0.1, -0.3)],
            vec![Complex64::new(0.05, 0.4), Complex64::new(-0.25, 0.0)],
        ]
    }

    #[test]
    fn surface_lemma_matches_quadrature() {
        for &(lp, lq) in &[(1, 1), (-1, 1)] {
            let c = ctx(2, lp, lq);
            for a in Family::product(1, 1).alphas_up_to(2) {
                for s1 in -2..=2 {
                    for s2 in -2..=2 {
                        let d = CircleType(vec![s1, s2]);
                        let space = circle_space(&c, &d).unwrap();
                        let r = surface_measure_convolve(&space, &space.basis()[0], &[1.0, 1.0], &a, 48, &probes()).unwrap();
                        assert!(r.residual < 1e-10, "lambda={lp} alpha={a} delta={d:?} {r:?}");
                        assert!(r.convergence < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn q_projection_matches_closed_form() {
        for &(lp, lq) in &[(1, 1), (-1, 1)] {
            let c = ctx(2, lp, lq);
            for a in Family::product(1, 1).alphas_up_to(2) {
                for s1 in -2..=2 {
                    for s2 in -2..=2 {
                        let d = CircleType(vec![s1, s2]);
                        for z in probes() {
                            let x = q_projection(&c, &a, &d, &z, &[1.0, 1.25], 48).unwrap();
                            let y = q_projection_closed(&c, &a, &d, &z, &[1.0, 1.25]).unwrap();
                            assert!((x - y).norm() < 1e-10, "lambda={lp} alpha={a} delta={d:?}: {x} vs {y}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn q_series_matches_closed_kernel() {
        let c = ctx(2, 1, 1);
        for a in Family::product(1, 1).alphas_up_to(2) {
            let radii = choose_radii(&c, &a, 12).unwrap();
            let af: Vec<f64> = radii.iter().map(hh_core::scalar::rat_to_f64).collect();
            for z in probes() {
                let omega = [Complex64::from_polar(1.0, 0.7), Complex64::from_polar(1.0, -2.1)];
                let q = kernel_q(&c, &a, &z, &omega, &radii, 12).unwrap();
                let (s, tail) = kernel_q_series(&c, &a, &z, &omega, &af, 12, 8).unwrap();
                assert!((q - s).norm() < 1e-8, "alpha={a}: {q} vs {s}, tail {tail}");
            }
        }
    }
}
