mod common;

use common::{ctx, poly_strategy};
use hh_core::gausspoly::{twisted_convolve, GaussPoly, Generator};
use hh_core::scalar::rat;
use hh_core::spherical::{harmonic_decompose, invariant_monomial};
use hh_core::weylfock::{weyl_transform, Family, FockTruncation};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_axioms(
        f in poly_strategy(ctx(2, 1, 1), rat(1, 2), 3, 4),
        g in poly_strategy(ctx(2, 1, 1), rat(1, 2), 3, 4),
        h in poly_strategy(ctx(2, 1, 1), rat(1, 2), 3, 4),
    ) {
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
        let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn derivatives_obey_leibniz(
        f in poly_strategy(ctx(2, 1, 1), rat(1, 3), 3, 4),
        g in poly_strategy(ctx(2, 1, 1), rat(2, 3), 3, 4),
    ) {
        for j in 0..2 {
            for d in [Generator::Dz(j), Generator::Dzbar(j)] {
                let lhs = d.apply(&f.mul(&g).unwrap()).unwrap();
                let rhs = d.apply(&f).unwrap().mul(&g).unwrap().add(&f.mul(&d.apply(&g).unwrap()).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn derivatives_integrate_to_zero(f in poly_strategy(ctx(2, -1, 2), rat(1, 1), 4, 5)) {
        for j in 0..2 {
            prop_assert!(Generator::Dz(j).apply(&f).unwrap().integrate().unwrap().is_zero());
            prop_assert!(Generator::Dzbar(j).apply(&f).unwrap().integrate().unwrap().is_zero());
        }
    }

    #[test]
    fn plancherel_polarization(
        f in poly_strategy(ctx(2, -3, 2), rat(3, 2), 4, 4),
        g in poly_strategy(ctx(2, -3, 2), rat(3, 2), 4, 4),
    ) {
        let c = f.ctx().clone();
        let trunc = FockTruncation::new(&c, 4).unwrap();
        let lhs = f.inner(&g).unwrap();
        let rhs = &weyl_transform(&f, &trunc).unwrap().hs_inner(&weyl_transform(&g, &trunc).unwrap()).unwrap() * &c.normalization();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_convolution_is_associative(
        f in poly_strategy(ctx(1, 1, 1), rat(1, 1), 2, 3),
        g in poly_strategy(ctx(1, 1, 1), rat(1, 1), 2, 3),
        h in poly_strategy(ctx(1, 1, 1), rat(1, 1), 2, 3),
    ) {
        let lhs = twisted_convolve(&twisted_convolve(&f, &g).unwrap(), &h).unwrap();
        let rhs = twisted_convolve(&f, &twisted_convolve(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn harmonic_decomposition_reassembles(p in poly_strategy(ctx(2, 1, 1), rat(0, 1), 4, 5)) {
        for family in [Family::un(2), Family::product(1, 1)] {
            let parts = harmonic_decompose(&p, &family).unwrap();
            let mut acc = GaussPoly::zero(p.ctx(), rat(0, 1));
            for (powers, h) in &parts {
                for r in family.ranges() {
                    let lap = (r.start..r.end).fold(GaussPoly::zero(p.ctx(), rat(0, 1)), |s, j| {
                        let d = Generator::Dz(j).apply(&Generator::Dzbar(j).apply(h).unwrap()).unwrap();
                        s.add(&d).unwrap()
                    });
                    prop_assert!(lap.is_zero());
                }
                let inv = invariant_monomial(p.ctx(), &family, powers, rat(0, 1)).unwrap();
                acc.add_assign(&inv.mul(h).unwrap()).unwrap();
            }
            prop_assert_eq!(&acc, &p);
        }
    }
}
