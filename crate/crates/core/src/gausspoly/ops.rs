use std::collections::HashMap;

use num_traits::Zero;

use super::{accumulate_hash, same_ctx, GaussPoly, Monomial};
use crate::error::{check_degree, HhError, Result};
use crate::scalar::{PiScalar, Rat};

/// First-order generators acting on GaussPoly; indices are 0-based coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Dz(usize),
    Dzbar(usize),
    MulZ(usize),
    MulZbar(usize),
    /// ∂/∂z̄_j − λ z_j
    L(usize),
    /// ∂/∂z_j + λ z̄_j
    Lbar(usize),
    /// ∂/∂z̄_j + λ z_j
    R(usize),
    /// ∂/∂z_j − λ z̄_j
    Rbar(usize),
}

impl Generator {
    fn index(self) -> usize {
        match self {
            Generator::Dz(j)
            | Generator::Dzbar(j)
            | Generator::MulZ(j)
            | Generator::MulZbar(j)
            | Generator::L(j)
            | Generator::Lbar(j)
            | Generator::R(j)
            | Generator::Rbar(j) => j,
        }
    }

    pub fn apply(self, f: &GaussPoly) -> Result<GaussPoly> {
        let j = self.index();
        if j >= f.n() {
            return Err(HhError::Dimension {
                expected: f.n(),
                got: j + 1,
            });
        }
        let lambda = f.ctx().lambda().clone();
        let mut map = HashMap::new();
        let one = Rat::from_integer(1.into());
        match self {
            Generator::Dz(_) => dz(f, j, &one, &mut map),
            Generator::Dzbar(_) => dzbar(f, j, &one, &mut map),
            Generator::MulZ(_) => mul_z(f, j, &one, &mut map),
            Generator::MulZbar(_) => mul_zbar(f, j, &one, &mut map),
            Generator::L(_) => {
                dzbar(f, j, &one, &mut map);
                mul_z(f, j, &-lambda, &mut map);
            }
            Generator::Lbar(_) => {
                dz(f, j, &one, &mut map);
                mul_zbar(f, j, &lambda, &mut map);
            }
            Generator::R(_) => {
                dzbar(f, j, &one, &mut map);
                mul_z(f, j, &lambda, &mut map);
            }
            Generator::Rbar(_) => {
                dz(f, j, &one, &mut map);
                mul_zbar(f, j, &-lambda, &mut map);
            }
        }
        Ok(GaussPoly::from_map(f.ctx(), f.gauss_t().clone(), map))
    }
}

fn dz(f: &GaussPoly, j: usize, s: &Rat, map: &mut HashMap<Monomial, PiScalar>) {
    let t = f.gauss_t();
    for (m, c) in f.terms() {
        let aj = m.a.get(j);
        if aj > 0 {
            let key = Monomial::new(m.a.bump(j, -1).unwrap(), m.b.clone());
            accumulate_hash(map, key, &c.scale_rat(&(s * Rat::from_integer(aj.into()))));
        }
        if !t.is_zero() {
            let key = Monomial::new(m.a.clone(), m.b.bump(j, 1).unwrap());
            accumulate_hash(map, key, &c.scale_rat(&-(s * t)));
        }
    }
}

fn dzbar(f: &GaussPoly, j: usize, s: &Rat, map: &mut HashMap<Monomial, PiScalar>) {
    let t = f.gauss_t();
    for (m, c) in f.terms() {
        let bj = m.b.get(j);
        if bj > 0 {
            let key = Monomial::new(m.a.clone(), m.b.bump(j, -1).unwrap());
            accumulate_hash(map, key, &c.scale_rat(&(s * Rat::from_integer(bj.into()))));
        }
        if !t.is_zero() {
            let key = Monomial::new(m.a.bump(j, 1).unwrap(), m.b.clone());
            accumulate_hash(map, key, &c.scale_rat(&-(s * t)));
        }
    }
}

fn mul_z(f: &GaussPoly, j: usize, s: &Rat, map: &mut HashMap<Monomial, PiScalar>) {
    for (m, c) in f.terms() {
        let key = Monomial::new(m.a.bump(j, 1).unwrap(), m.b.clone());
        accumulate_hash(map, key, &c.scale_rat(s));
    }
}

fn mul_zbar(f: &GaussPoly, j: usize, s: &Rat, map: &mut HashMap<Monomial, PiScalar>) {
    for (m, c) in f.terms() {
        let key = Monomial::new(m.a.clone(), m.b.bump(j, 1).unwrap());
        accumulate_hash(map, key, &c.scale_rat(s));
    }
}

/// Linear combination of words in the generators. A word `[g1, g2, .., gm]` is the
/// composition g1 g2 ⋯ gm, so gm acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantOp {
    terms: Vec<(PiScalar, Vec<Generator>)>,
}

impl InvariantOp {
    pub fn identity() -> Self {
        Self {
            terms: vec![(PiScalar::one(), Vec::new())],
        }
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn gen(g: Generator) -> Self {
        Self::word(vec![g])
    }

    pub fn word(w: Vec<Generator>) -> Self {
        Self {
            terms: vec![(PiScalar::one(), w)],
        }
    }

    pub fn terms(&self) -> &[(PiScalar, Vec<Generator>)] {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&PiScalar::from_int(-1)))
    }

    pub fn scale(&self, s: &PiScalar) -> Self {
        Self {
            terms: self.terms.iter().map(|(c, w)| (c * s, w.clone())).collect(),
        }
    }

    /// self ∘ other
    pub fn compose(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (c1, w1) in &self.terms {
            for (c2, w2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().copied());
                terms.push((c1 * c2, w));
            }
        }
        Self { terms }
    }

    /// [a, b] = ab − ba
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.compose(b).sub(&b.compose(a))
    }

    /// Σ_{j ∈ range} (L_j L̄_j + L̄_j L_j)
    pub fn special_hermite_range(range: std::ops::Range<usize>) -> Self {
        let mut op = Self::zero();
        for j in range {
            op = op
                .add(&Self::word(vec![Generator::L(j), Generator::Lbar(j)]))
                .add(&Self::word(vec![Generator::Lbar(j), Generator::L(j)]));
        }
        op
    }

    /// The special Hermite operator on ℂⁿ.
    pub fn special_hermite(n: usize) -> Self {
        Self::special_hermite_range(0..n)
    }

    pub fn apply(&self, f: &GaussPoly) -> Result<GaussPoly> {
        apply_op(self, f)
    }
}

pub fn apply_op(op: &InvariantOp, f: &GaussPoly) -> Result<GaussPoly> {
    let mut out = GaussPoly::zero(f.ctx(), f.gauss_t().clone());
    for (c, word) in &op.terms {
        let mut g = f.clone();
        for gen in word.iter().rev() {
            g = gen.apply(&g)?;
        }
        out.add_assign(&g.scale(c))?;
    }
    Ok(out)
}

fn check_poly(p: &GaussPoly, f: &GaussPoly) -> Result<()> {
    same_ctx(p.ctx(), f.ctx())?;
    if !p.gauss_t().is_zero() {
        return Err(HhError::Invalid("theta expects a bare polynomial (gauss_t = 0)".into()));
    }
    check_degree(p.degree() as usize + f.degree() as usize)
}

fn apply_repeated(g: Generator, times: u32, f: GaussPoly, negate: bool) -> Result<GaussPoly> {
    let mut out = f;
    for _ in 0..times {
        out = g.apply(&out)?;
        if negate {
            out = out.neg();
        }
    }
    Ok(out)
}

fn theta_monomial(m: &Monomial, f: &GaussPoly, first: bool) -> Result<GaussPoly> {
    let n = f.n();
    let mut g = f.clone();
    let minus_r = |g: GaussPoly| -> Result<GaussPoly> {
        let mut g = g;
        for j in 0..n {
            g = apply_repeated(Generator::R(j), m.a.get(j), g, true)?;
        }
        Ok(g)
    };
    let rbar = |g: GaussPoly| -> Result<GaussPoly> {
        let mut g = g;
        for j in 0..n {
            g = apply_repeated(Generator::Rbar(j), m.b.get(j), g, false)?;
        }
        Ok(g)
    };
    if first {
        g = minus_r(g)?;
        g = rbar(g)?;
    } else {
        g = rbar(g)?;
        g = minus_r(g)?;
    }
    Ok(g)
}

fn theta_with(p: &GaussPoly, f: &GaussPoly, first: bool) -> Result<GaussPoly> {
    check_poly(p, f)?;
    let mut out = GaussPoly::zero(f.ctx(), f.gauss_t().clone());
    for (m, c) in p.terms() {
        out.add_assign(&theta_monomial(m, f, first)?.scale(c))?;
    }
    Ok(out)
}

/// θ₁(p): for ζ^ρ ζ̄^γ the word (R̄)^γ (−R)^ρ.
pub fn theta1(p: &GaussPoly, f: &GaussPoly) -> Result<GaussPoly> {
    theta_with(p, f, true)
}

/// θ₂(p): for ζ^ρ ζ̄^γ the word (−R)^ρ (R̄)^γ.
pub fn theta2(p: &GaussPoly, f: &GaussPoly) -> Result<GaussPoly> {
    theta_with(p, f, false)
}

/// θ(p) = ½(θ₁(p) + θ₂(p)).
pub fn theta(p: &GaussPoly, f: &GaussPoly) -> Result<GaussPoly> {
    let a = theta1(p, f)?;
    let b = theta2(p, f)?;
    Ok(a.add(&b)?.scale_rat(&crate::scalar::rat(1, 2)))
}
