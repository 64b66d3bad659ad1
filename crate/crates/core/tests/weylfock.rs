mod common;

use common::{ctx, random_poly, rng};
use hh_core::gausspoly::{twisted_convolve, GaussPoly, Generator, MultiIndex, PhaseMatrix};
use hh_core::scalar::{rat, PiScalar};
use hh_core::weylfock::{
    displacement_matrix_element, inverse_weyl, ladder, tau, tau1, tau2, unitary_action, weyl_transform,
    FockTruncation, Ladder,
};

const LAMBDAS: [(i64, i64); 3] = [(1, 1), (-1, 2), (3, 2)];

#[test]
fn plancherel_and_convolution_theorem() {
    let mut r = rng(7);
    for &(p, q) in &LAMBDAS {
        for n in 1..=2 {
            let c = ctx(n, p, q);
            let t = c.abs_lambda();
            let trunc = FockTruncation::new(&c, 6).unwrap();
            for _ in 0..4 {
                let f = random_poly(&mut r, &c, t.clone(), 3, 4);
                let g = random_poly(&mut r, &c, t.clone(), 3, 4);
                let gf = weyl_transform(&f, &trunc).unwrap();
                let gg = weyl_transform(&g, &trunc).unwrap();
                let lhs = f.inner(&g).unwrap();
                let rhs = &gf.hs_inner(&gg).unwrap() * &c.normalization();
                assert_eq!(lhs, rhs, "plancherel lambda={p}/{q} n={n}");
                let fg = twisted_convolve(&f, &g).unwrap();
                assert_eq!(fg.gauss_t(), &t);
                let gfg = weyl_transform(&fg, &trunc).unwrap();
                assert_eq!(gfg, gf.mul(&gg).unwrap().interior(6), "convolution lambda={p}/{q} n={n}");
            }
        }
    }
}

#[test]
fn invariant_operator_relations() {
    let mut r = rng(11);
    for &(p, q) in &LAMBDAS {
        let c = ctx(2, p, q);
        let t = c.abs_lambda();
        let trunc = FockTruncation::new(&c, 7).unwrap();
        for _ in 0..3 {
            let f = random_poly(&mut r, &c, t.clone(), 3, 4);
            let gf = weyl_transform(&f, &trunc).unwrap();
            for j in 0..2 {
                let w = ladder(&trunc, j, Ladder::W).unwrap();
                let wb = ladder(&trunc, j, Ladder::Wbar).unwrap();
                let d = 5;
                let lf = weyl_transform(&Generator::L(j).apply(&f).unwrap(), &trunc).unwrap();
                assert_eq!(lf.interior(d), gf.mul(&w).unwrap().scale(&PiScalar::from_int(-1)).interior(d));
                let lbf = weyl_transform(&Generator::Lbar(j).apply(&f).unwrap(), &trunc).unwrap();
                assert_eq!(lbf.interior(d), gf.mul(&wb).unwrap().interior(d));
                let rf = weyl_transform(&Generator::R(j).apply(&f).unwrap(), &trunc).unwrap();
                assert_eq!(rf.interior(d), w.mul(&gf).unwrap().scale(&PiScalar::from_int(-1)).interior(d));
                let rbf = weyl_transform(&Generator::Rbar(j).apply(&f).unwrap(), &trunc).unwrap();
                assert_eq!(rbf.interior(d), wb.mul(&gf).unwrap().interior(d));
            }
            let lhs = weyl_transform(&f.conj(), &trunc).unwrap();
            let rhs = weyl_transform(&f.reflect(), &trunc).unwrap().adjoint();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn equivariance_under_phase_unitaries() {
    let mut r = rng(3);
    for &(p, q) in &LAMBDAS {
        let c = ctx(2, p, q);
        let trunc = FockTruncation::new(&c, 6).unwrap();
        let ks = [
            PhaseMatrix::diagonal(vec![1, 0]),
            PhaseMatrix::diagonal(vec![2, 3]),
            PhaseMatrix::new(vec![1, 0], vec![1, 2]).unwrap(),
        ];
        for k in &ks {
            let f = random_poly(&mut r, &c, c.abs_lambda(), 3, 5);
            let u = unitary_action(k, &trunc).unwrap();
            let lhs = weyl_transform(&f.act(k).unwrap(), &trunc).unwrap();
            let rhs = u.mul(&weyl_transform(&f, &trunc).unwrap()).unwrap().mul(&u.adjoint()).unwrap();
            assert_eq!(lhs, rhs, "lambda={p}/{q} k={k:?}");
            assert_eq!(u.mul(&u.adjoint()).unwrap(), hh_core::weylfock::OperatorMatrix::identity(&trunc));
        }
    }
}

#[test]
fn diag_i_acts_by_powers_of_i() {
    let c = ctx(1, 1, 1);
    let trunc = FockTruncation::new(&c, 4).unwrap();
    let u = unitary_action(&PhaseMatrix::diagonal(vec![1]), &trunc).unwrap();
    for k in 0..=4u32 {
        let e = MultiIndex(vec![k]);
        assert_eq!(u.get_by(&e, &e), hh_core::gausspoly::i_power(k as i64));
    }
}

#[test]
fn roundtrip_and_tau() {
    let c = ctx(2, 1, 1);
    let trunc = FockTruncation::new(&c, 6).unwrap();
    let f = GaussPoly::z(&c, 0).mul(&GaussPoly::zbar(&c, 1)).unwrap().with_gauss(rat(1, 1));
    let back = inverse_weyl(&weyl_transform(&f, &trunc).unwrap()).unwrap();
    assert_eq!(back, f);
    let p = GaussPoly::z(&c, 0).mul(&GaussPoly::zbar(&c, 1)).unwrap();
    assert_eq!(tau1(&p, &trunc).unwrap(), tau2(&p, &trunc).unwrap());
    assert_eq!(
        tau(&GaussPoly::one(&c), &trunc).unwrap(),
        hh_core::weylfock::OperatorMatrix::identity(&trunc)
    );
    let d = displacement_matrix_element(&c, &MultiIndex(vec![1, 0]), &MultiIndex(vec![0, 0])).unwrap();
    assert_eq!(d.degree(), 1);
}
