//! Closed-form twisted convolution
//! f×g(z) = ∫ f(z−w) g(w) e^{2iλ Im(z·w̄)} dw.
//!
//! With f ∝ e^{−t|z|²} and g ∝ e^{−s|w|²} the exponent is
//! −t|z|² − T|w|² + A·w̄ + B·w, T = t+s, A = (t+λ)z, B = (t−λ)z̄, and per coordinate
//! ∫ w^p w̄^q e^{−T|w|²+Aw̄+Bw} = (π/T) e^{AB/T} Σ_m C(p,m) q!/(q−m)! B^{q−m} A^{p−m} / T^{p+q−m}.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::{accumulate_hash, same_ctx, GaussPoly, Monomial, MultiIndex};
use crate::error::{check_degree, HhError, Result};
use crate::scalar::{binomial, factorial, fmt_rat, rat_pow, PiScalar, Rat};

type Poly1 = Vec<((u32, u32), Rat)>;

struct Moments {
    alpha: Rat,
    beta: Rat,
    big_t: Rat,
    cache: HashMap<(u32, u32, u32, u32), Poly1>,
}

impl Moments {
    /// One-coordinate factor for f-term z^a z̄^b and g-term w^c w̄^d, without the π/T prefactor.
    fn factor(&mut self, a: u32, b: u32, c: u32, d: u32) -> &Poly1 {
        let key = (a, b, c, d);
        if !self.cache.contains_key(&key) {
            let v = self.compute(a, b, c, d);
            self.cache.insert(key, v);
        }
        &self.cache[&key]
    }

    fn compute(&self, a: u32, b: u32, c: u32, d: u32) -> Poly1 {
        let mut acc: HashMap<(u32, u32), Rat> = HashMap::new();
        for i in 0..=a {
            for l in 0..=b {
                let sign = if (i + l) % 2 == 0 { 1 } else { -1 };
                let pre = Rat::from_integer(binomial(a, i) * binomial(b, l) * sign);
                let p = i + c;
                let q = l + d;
                for m in 0..=p.min(q) {
                    let pa = p - m;
                    let qb = q - m;
                    let ca = if pa == 0 { Rat::from_integer(1.into()) } else { rat_pow(&self.alpha, pa as i64) };
                    let cb = if qb == 0 { Rat::from_integer(1.into()) } else { rat_pow(&self.beta, qb as i64) };
                    if ca.is_zero() || cb.is_zero() {
                        continue;
                    }
                    let w = Rat::new(binomial(p, m) * factorial(q), factorial(q - m))
                        * ca
                        * cb
                        / rat_pow(&self.big_t, (p + q - m) as i64);
                    let key = (a - i + pa, b - l + qb);
                    *acc.entry(key).or_insert_with(Rat::zero) += &pre * w;
                }
            }
        }
        let mut out: Poly1 = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }
}

/// Twisted convolution f ×^λ g in closed form. Requires t, s ≥ 0 with t + s > 0; the result
/// has Gaussian parameter (ts + λ²)/(t + s).
pub fn twisted_convolve(f: &GaussPoly, g: &GaussPoly) -> Result<GaussPoly> {
    same_ctx(f.ctx(), g.ctx())?;
    let t = f.gauss_t().clone();
    let s = g.gauss_t().clone();
    let big_t = &t + &s;
    if t.is_negative() || s.is_negative() || !big_t.is_positive() {
        return Err(HhError::Divergent(format!("{} + {}", fmt_rat(&t), fmt_rat(&s))));
    }
    check_degree((f.degree() + g.degree()) as usize)?;
    let ctx = f.ctx();
    let lambda = ctx.lambda().clone();
    let n = ctx.n();
    let t_out = (&t * &s + &lambda * &lambda) / &big_t;
    let mut moments = Moments {
        alpha: &t + &lambda,
        beta: &t - &lambda,
        big_t: big_t.clone(),
        cache: HashMap::new(),
    };
    let prefactor = PiScalar::rat_pi(rat_pow(&big_t, -(n as i64)), n as i32);
    let mut map: HashMap<Monomial, PiScalar> = HashMap::new();
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            let coeff = &(cf * cg) * &prefactor;
            let factors: Vec<Poly1> = (0..n)
                .map(|j| moments.factor(mf.a.get(j), mf.b.get(j), mg.a.get(j), mg.b.get(j)).clone())
                .collect();
            if factors.iter().any(|x| x.is_empty()) {
                continue;
            }
            let mut idx = vec![0usize; n];
            loop {
                let mut a = Vec::with_capacity(n);
                let mut b = Vec::with_capacity(n);
                let mut w = Rat::from_integer(1.into());
                for j in 0..n {
                    let ((pa, pb), v) = &factors[j][idx[j]];
                    a.push(*pa);
                    b.push(*pb);
                    w *= v;
                }
                accumulate_hash(&mut map, Monomial::new(MultiIndex(a), MultiIndex(b)), &coeff.scale_rat(&w));
                let mut j = 0;
                while j < n {
                    idx[j] += 1;
                    if idx[j] < factors[j].len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == n {
                    break;
                }
            }
        }
    }
    Ok(GaussPoly::from_map(ctx, t_out, map))
}
