#![allow(dead_code)]

use hh_core::gausspoly::{Ctx, GaussPoly, Monomial, MultiIndex, WeylContext};
use hh_core::scalar::{crat, rat, PiScalar, Rat};
use proptest::prelude::*;
use rand::Rng;

pub fn ctx(n: usize, p: i64, q: i64) -> Ctx {
    WeylContext::new(n, rat(p, q)).unwrap()
}

fn index_of_degree<R: Rng>(rng: &mut R, n: usize, d: u32) -> MultiIndex {
    let mut v = vec![0u32; n];
    for _ in 0..d {
        v[rng.gen_range(0..n)] += 1;
    }
    MultiIndex(v)
}

/// Random polynomial part of degree ≤ max_deg with small complex rational coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, ctx: &Ctx, t: Rat, max_deg: u32, terms: usize) -> GaussPoly {
    let n = ctx.n();
    let mut f = GaussPoly::zero(ctx, t);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_deg);
        let da = rng.gen_range(0..=d);
        let a = index_of_degree(rng, n, da);
        let b = index_of_degree(rng, n, d - da);
        let re = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let im = rat(rng.gen_range(-2..=2), rng.gen_range(1..=2));
        f.add_term(Monomial::new(a, b), &PiScalar::from_crat(crat(re, im), 0));
    }
    f
}

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Proptest strategy for GaussPoly with fixed context and Gaussian parameter.
pub fn poly_strategy(ctx: Ctx, t: Rat, max_deg: u32, max_terms: usize) -> impl Strategy<Value = GaussPoly> {
    let n = ctx.n();
    let term = (
        proptest::collection::vec(0u32..=max_deg, n),
        proptest::collection::vec(0u32..=max_deg, n),
        -4i64..=4,
        -2i64..=2,
        1i64..=3,
    );
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let mut f = GaussPoly::zero(&ctx, t.clone());
        for (mut a, mut b, re, im, q) in terms {
            // clip to total degree max_deg
            while a.iter().sum::<u32>() + b.iter().sum::<u32>() > max_deg {
                if let Some(x) = a.iter_mut().chain(b.iter_mut()).find(|x| **x > 0) {
                    *x -= 1;
                }
            }
            f.add_term(
                Monomial::new(MultiIndex(a), MultiIndex(b)),
                &PiScalar::from_crat(crat(rat(re, q), rat(im, q)), 0),
            );
        }
        f
    })
}
