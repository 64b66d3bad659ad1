//! Polynomials in (z, z̄) times a Gaussian e^{-t|z|²} on ℂⁿ, with exact coefficients.

mod ops;
mod twisted;

pub use ops::{apply_op, theta, theta1, theta2, Generator, InvariantOp};
pub use twisted::twisted_convolve;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_degree, HhError, Result};
use crate::json::{scalar_from_json, scalar_to_json, CoeffJson};
use crate::scalar::{c_i, fmt_rat, parse_rat, rat_int, rat_pow, rat_to_f64, PiScalar, Rat};

/// Dimension n and central parameter λ shared by every object built on ℂⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylContext {
    n: usize,
    lambda: Rat,
}

pub type Ctx = Arc<WeylContext>;

impl WeylContext {
    pub fn new(n: usize, lambda: Rat) -> Result<Ctx> {
        if n == 0 {
            return Err(HhError::Invalid("dimension n must be positive".into()));
        }
        if lambda.is_zero() {
            return Err(HhError::Invalid("lambda must be nonzero".into()));
        }
        Ok(Arc::new(Self { n, lambda }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    pub fn abs_lambda(&self) -> Rat {
        self.lambda.abs()
    }

    pub fn is_positive(&self) -> bool {
        self.lambda.is_positive()
    }

    /// π^{-n}(2|λ|)^n
    pub fn normalization(&self) -> PiScalar {
        let two_l = self.abs_lambda() * rat_int(2);
        PiScalar::rat_pi(rat_pow(&two_l, self.n as i64), -(self.n as i32))
    }

    /// π^{n}(2|λ|)^{-n}
    pub fn plancherel_weight(&self) -> PiScalar {
        let two_l = self.abs_lambda() * rat_int(2);
        PiScalar::rat_pi(rat_pow(&two_l, -(self.n as i64)), self.n as i32)
    }
}

pub(crate) fn same_ctx(a: &Ctx, b: &Ctx) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(HhError::ContextMismatch(format!(
            "(n={}, lambda={}) vs (n={}, lambda={})",
            a.n,
            fmt_rat(&a.lambda),
            b.n,
            fmt_rat(&b.lambda)
        )))
    }
}

/// Multi-index ν ∈ ℤ₊ⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[j] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(x, y)| x.checked_sub(*y))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn bump(&self, j: usize, delta: i32) -> Option<Self> {
        let mut v = self.0.clone();
        let x = v[j] as i64 + delta as i64;
        if x < 0 {
            return None;
        }
        v[j] = x as u32;
        Some(Self(v))
    }

    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, &k| acc * crate::scalar::factorial(k))
    }

    /// Degree restricted to the coordinates in `range`.
    pub fn block_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.0[range].iter().sum()
    }

    /// All multi-indices of length n and total degree d, in lexicographically decreasing order.
    pub fn of_degree(n: usize, d: u32) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fill(&mut cur, 0, d, &mut out);
        out
    }

    /// All multi-indices of length n and degree ≤ d, ordered by degree then as in [`Self::of_degree`].
    pub fn up_to(n: usize, d: u32) -> Vec<Self> {
        (0..=d).flat_map(|k| Self::of_degree(n, k)).collect()
    }
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
    let n = cur.len();
    if n == 0 {
        if left == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = left;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for x in (0..=left).rev() {
        cur[pos] = x;
        fill(cur, pos + 1, left - x, out);
    }
    cur[pos] = 0;
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// z^a z̄^b, ordered by total degree, then a, then b.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub a: MultiIndex,
    pub b: MultiIndex,
}

impl Monomial {
    pub fn new(a: MultiIndex, b: MultiIndex) -> Self {
        Self { a, b }
    }

    pub fn one(n: usize) -> Self {
        Self::new(MultiIndex::zeros(n), MultiIndex::zeros(n))
    }

    pub fn degree(&self) -> u32 {
        self.a.degree() + self.b.degree()
    }

    /// Bidegree (|a|, |b|) restricted to `range`.
    pub fn bidegree_in(&self, range: std::ops::Range<usize>) -> (u32, u32) {
        (self.a.block_degree(range.clone()), self.b.block_degree(range))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.a.add(&other.a), self.b.add(&other.b))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.b.cmp(&other.b))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn accumulate(map: &mut BTreeMap<Monomial, PiScalar>, key: Monomial, val: &PiScalar) {
    if val.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => {
            *v += val;
            if v.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, val.clone());
        }
    }
}

pub(crate) fn accumulate_hash(map: &mut HashMap<Monomial, PiScalar>, key: Monomial, val: &PiScalar) {
    if val.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => *v += val,
        None => {
            map.insert(key, val.clone());
        }
    }
}

/// Σ c_{a,b} z^a z̄^b e^{-t|z|²}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussPoly {
    ctx: Ctx,
    t: Rat,
    terms: BTreeMap<Monomial, PiScalar>,
}

impl GaussPoly {
    pub fn zero(ctx: &Ctx, t: Rat) -> Self {
        Self {
            ctx: ctx.clone(),
            t,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Ctx, t: Rat, c: PiScalar) -> Self {
        Self::monomial(ctx, t, MultiIndex::zeros(ctx.n), MultiIndex::zeros(ctx.n), c)
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rat::zero(), PiScalar::one())
    }

    /// e^{-t|z|²}
    pub fn gaussian(ctx: &Ctx, t: Rat) -> Self {
        Self::constant(ctx, t, PiScalar::one())
    }

    pub fn monomial(ctx: &Ctx, t: Rat, a: MultiIndex, b: MultiIndex, c: PiScalar) -> Self {
        assert_eq!(a.len(), ctx.n, "multi-index length");
        assert_eq!(b.len(), ctx.n, "multi-index length");
        let mut out = Self::zero(ctx, t);
        accumulate(&mut out.terms, Monomial::new(a, b), &c);
        out
    }

    /// The bare polynomial z_j.
    pub fn z(ctx: &Ctx, j: usize) -> Self {
        Self::monomial(ctx, Rat::zero(), MultiIndex::unit(ctx.n, j), MultiIndex::zeros(ctx.n), PiScalar::one())
    }

    /// The bare polynomial z̄_j.
    pub fn zbar(ctx: &Ctx, j: usize) -> Self {
        Self::monomial(ctx, Rat::zero(), MultiIndex::zeros(ctx.n), MultiIndex::unit(ctx.n, j), PiScalar::one())
    }

    /// Σ_{j ∈ range} |z_j|² as a bare polynomial.
    pub fn abs_sq_range(ctx: &Ctx, range: std::ops::Range<usize>) -> Self {
        let mut out = Self::zero(ctx, Rat::zero());
        for j in range {
            let e = MultiIndex::unit(ctx.n, j);
            accumulate(&mut out.terms, Monomial::new(e.clone(), e), &PiScalar::one());
        }
        out
    }

    /// |z|² as a bare polynomial.
    pub fn abs_sq(ctx: &Ctx) -> Self {
        Self::abs_sq_range(ctx, 0..ctx.n)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, PiScalar)>>(ctx: &Ctx, t: Rat, iter: I) -> Self {
        let mut out = Self::zero(ctx, t);
        for (m, c) in iter {
            assert_eq!(m.a.len(), ctx.n, "multi-index length");
            accumulate(&mut out.terms, m, &c);
        }
        out
    }

    pub(crate) fn from_map(ctx: &Ctx, t: Rat, map: HashMap<Monomial, PiScalar>) -> Self {
        Self {
            ctx: ctx.clone(),
            t,
            terms: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n
    }

    pub fn gauss_t(&self) -> &Rat {
        &self.t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &PiScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> PiScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: &PiScalar) {
        accumulate(&mut self.terms, m, c);
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        same_ctx(&self.ctx, &other.ctx)?;
        if self.t != other.t {
            return Err(HhError::GaussMismatch {
                left: fmt_rat(&self.t),
                right: fmt_rat(&other.t),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_same(other)?;
        for (m, c) in &other.terms {
            accumulate(&mut self.terms, m.clone(), c);
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &PiScalar) -> Self {
        self.map_coeffs(|c| c * s)
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.map_coeffs(|c| c.scale_rat(r))
    }

    fn map_coeffs<F: Fn(&PiScalar) -> PiScalar>(&self, f: F) -> Self {
        Self {
            ctx: self.ctx.clone(),
            t: self.t.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Product; polynomial parts multiply and Gaussian parameters add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_ctx(&self.ctx, &other.ctx)?;
        check_degree((self.degree() + other.degree()) as usize)?;
        let mut map = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate_hash(&mut map, m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(Self::from_map(&self.ctx, &self.t + &other.t, map))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::constant(&self.ctx, Rat::zero(), PiScalar::one());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Same coefficients with the Gaussian parameter replaced by `t`.
    pub fn with_gauss(&self, t: Rat) -> Self {
        Self {
            ctx: self.ctx.clone(),
            t,
            terms: self.terms.clone(),
        }
    }

    /// The polynomial part as a bare polynomial.
    pub fn poly_part(&self) -> Self {
        self.with_gauss(Rat::zero())
    }

    /// Complex conjugate: (a, b, c) ↦ (b, a, c̄).
    pub fn conj(&self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            t: self.t.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.b.clone(), m.a.clone()), c.conj()))
                .collect(),
        }
    }

    /// f(-z)
    pub fn reflect(&self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            t: self.t.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), if m.degree() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.ctx.n {
            return Err(HhError::Dimension {
                expected: self.ctx.n,
                got: z.len(),
            });
        }
        let r2: f64 = z.iter().map(|w| w.norm_sqr()).sum();
        let gauss = (-rat_to_f64(&self.t) * r2).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_c64();
            for j in 0..self.ctx.n {
                v *= z[j].powu(m.a.0[j]) * z[j].conj().powu(m.b.0[j]);
            }
            acc += v;
        }
        Ok(acc * gauss)
    }

    /// ∫_{ℂⁿ} f dz via ∫ z^a z̄^b e^{-t|z|²} dz = [a=b] πⁿ a!/t^{|a|+n}.
    pub fn integrate(&self) -> Result<PiScalar> {
        if !self.t.is_positive() {
            return Err(HhError::Divergent(fmt_rat(&self.t)));
        }
        let n = self.ctx.n as i32;
        let mut acc = PiScalar::zero();
        for (m, c) in &self.terms {
            if m.a == m.b {
                let w = Rat::from_integer(m.a.factorial()) / rat_pow(&self.t, m.a.degree() as i64 + n as i64);
                acc += &c.scale_rat(&w).shift_pi(n);
            }
        }
        Ok(acc)
    }

    /// L² inner product ∫ f ḡ dz.
    pub fn inner(&self, other: &Self) -> Result<PiScalar> {
        same_ctx(&self.ctx, &other.ctx)?;
        let tt = &self.t + &other.t;
        if !tt.is_positive() {
            return Err(HhError::Divergent(fmt_rat(&tt)));
        }
        let n = self.ctx.n;
        let diff = |a: &MultiIndex, b: &MultiIndex| -> Vec<i64> {
            a.0.iter().zip(&b.0).map(|(x, y)| *x as i64 - *y as i64).collect()
        };
        let mut groups: HashMap<Vec<i64>, Vec<(&Monomial, &PiScalar)>> = HashMap::new();
        for (m, c) in &other.terms {
            groups.entry(diff(&m.a, &m.b)).or_default().push((m, c));
        }
        let mut acc = PiScalar::zero();
        for (m, c) in &self.terms {
            let Some(g) = groups.get(&diff(&m.a, &m.b)) else {
                continue;
            };
            for (m2, c2) in g {
                let e = m.a.add(&m2.b);
                let w = Rat::from_integer(e.factorial()) / rat_pow(&tt, e.degree() as i64 + n as i64);
                acc += &(c * &c2.conj()).scale_rat(&w);
            }
        }
        Ok(acc.shift_pi(n as i32))
    }

    pub fn norm_sq(&self) -> Result<PiScalar> {
        self.inner(self)
    }

    /// k·f(z) = f(k⁻¹z) for a permutation-phase unitary k.
    pub fn act(&self, k: &PhaseMatrix) -> Result<Self> {
        if k.n() != self.ctx.n {
            return Err(HhError::Dimension {
                expected: self.ctx.n,
                got: k.n(),
            });
        }
        let n = self.ctx.n;
        let mut out = Self::zero(&self.ctx, self.t.clone());
        for (m, c) in &self.terms {
            let mut a = vec![0u32; n];
            let mut b = vec![0u32; n];
            let mut phase: i64 = 0;
            for j in 0..n {
                let s = k.perm[j];
                a[j] = m.a.0[s];
                b[j] = m.b.0[s];
                phase += k.phase[j] as i64 * (b[j] as i64 - a[j] as i64);
            }
            let unit = i_power(phase);
            accumulate(
                &mut out.terms,
                Monomial::new(MultiIndex(a), MultiIndex(b)),
                &(c * &unit),
            );
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let doc = GaussPolyJson {
            n: self.ctx.n,
            lambda: fmt_rat(&self.ctx.lambda),
            t: fmt_rat(&self.t),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    a: m.a.0.clone(),
                    b: m.b.0.clone(),
                    coeff: scalar_to_json(c),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: GaussPolyJson = serde_json::from_str(s).map_err(|e| HhError::Parse(e.to_string()))?;
        let ctx = WeylContext::new(doc.n, parse_rat(&doc.lambda)?)?;
        let t = parse_rat(&doc.t)?;
        let mut out = Self::zero(&ctx, t);
        for term in doc.terms {
            if term.a.len() != doc.n || term.b.len() != doc.n {
                return Err(HhError::Dimension {
                    expected: doc.n,
                    got: term.a.len().max(term.b.len()),
                });
            }
            let c = scalar_from_json(&term.coeff)?;
            accumulate(&mut out.terms, Monomial::new(MultiIndex(term.a), MultiIndex(term.b)), &c);
        }
        Ok(out)
    }
}

/// i^e
pub fn i_power(e: i64) -> PiScalar {
    match e.rem_euclid(4) {
        0 => PiScalar::one(),
        1 => PiScalar::from_crat(c_i(), 0),
        2 => PiScalar::from_int(-1),
        _ => PiScalar::from_crat(-c_i(), 0),
    }
}

impl fmt::Display for GaussPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut s = format!("({c})");
            for j in 0..self.ctx.n {
                match m.a.0[j] {
                    0 => {}
                    1 => s.push_str(&format!("*z{}", j + 1)),
                    e => s.push_str(&format!("*z{}^{e}", j + 1)),
                }
                match m.b.0[j] {
                    0 => {}
                    1 => s.push_str(&format!("*zb{}", j + 1)),
                    e => s.push_str(&format!("*zb{}^{e}", j + 1)),
                }
            }
            parts.push(s);
        }
        write!(f, "[{}]", parts.join(" + "))?;
        if !self.t.is_zero() {
            write!(f, "*exp(-{}|z|^2)", fmt_rat(&self.t))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    a: Vec<u32>,
    b: Vec<u32>,
    coeff: Vec<CoeffJson>,
}

#[derive(Serialize, Deserialize)]
struct GaussPolyJson {
    n: usize,
    lambda: String,
    t: String,
    terms: Vec<TermJson>,
}

/// Unitary with exactly one nonzero entry i^{phase[j]} in row j, at column perm[j].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseMatrix {
    pub perm: Vec<usize>,
    pub phase: Vec<u8>,
}

impl PhaseMatrix {
    pub fn new(perm: Vec<usize>, phase: Vec<u8>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(HhError::Invalid("not a permutation".into()));
            }
            seen[p] = true;
        }
        if phase.len() != n {
            return Err(HhError::Dimension {
                expected: n,
                got: phase.len(),
            });
        }
        Ok(Self {
            perm,
            phase: phase.into_iter().map(|p| p % 4).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            phase: vec![0; n],
        }
    }

    pub fn diagonal(phase: Vec<u8>) -> Self {
        let n = phase.len();
        Self {
            perm: (0..n).collect(),
            phase: phase.into_iter().map(|p| p % 4).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// Dense complex entries, for floating-point use.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let n = self.n();
        let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for j in 0..n {
            m[j][self.perm[j]] = Complex64::i().powu(self.phase[j] as u32);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn ctx(n: usize) -> Ctx {
        WeylContext::new(n, rat(1, 1)).unwrap()
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(MultiIndex::of_degree(2, 2).len(), 3);
        assert_eq!(MultiIndex::up_to(2, 3).len(), 10);
        assert_eq!(MultiIndex::up_to(3, 2).len(), 10);
        assert_eq!(MultiIndex::of_degree(1, 4), vec![MultiIndex(vec![4])]);
    }

    #[test]
    fn integrate_examples() {
        let c = ctx(1);
        assert_eq!(GaussPoly::gaussian(&c, rat(1, 1)).integrate().unwrap(), PiScalar::pi_pow(1));
        let f = GaussPoly::monomial(&c, rat(2, 1), MultiIndex(vec![1]), MultiIndex(vec![1]), PiScalar::one());
        assert_eq!(f.integrate().unwrap(), PiScalar::rat_pi(rat(1, 4), 1));
        let g = GaussPoly::z(&c, 0).with_gauss(rat(1, 1));
        assert!(g.integrate().unwrap().is_zero());
        assert!(GaussPoly::one(&c).integrate().is_err());
    }

    #[test]
    fn conj_and_reflect() {
        let c = ctx(1);
        let f = GaussPoly::z(&c, 0).scale(&PiScalar::i());
        let g = f.conj();
        assert_eq!(g, GaussPoly::zbar(&c, 0).scale(&PiScalar::i().conj()));
        let h = GaussPoly::z(&c, 0).with_gauss(rat(1, 1));
        assert_eq!(h.reflect(), h.neg());
    }

    #[test]
    fn mismatches_are_rejected() {
        let a = GaussPoly::gaussian(&ctx(1), rat(1, 1));
        let b = GaussPoly::gaussian(&ctx(2), rat(1, 1));
        assert!(matches!(a.add(&b), Err(HhError::ContextMismatch(_))));
        let c = GaussPoly::gaussian(&ctx(1), rat(2, 1));
        assert!(matches!(a.add(&c), Err(HhError::GaussMismatch { .. })));
        assert!(a.evaluate(&[Complex64::new(0.0, 0.0); 2]).is_err());
    }

    #[test]
    fn gaussians_multiply() {
        let c = ctx(1);
        let g = GaussPoly::gaussian(&c, rat(1, 1));
        assert_eq!(g.mul(&g).unwrap(), GaussPoly::gaussian(&c, rat(2, 1)));
    }

    #[test]
    fn json_roundtrip() {
        let c = ctx(2);
        let f = GaussPoly::from_terms(
            &c,
            rat(1, 2),
            [
                (
                    Monomial::new(MultiIndex(vec![1, 0]), MultiIndex(vec![0, 2])),
                    PiScalar::rat_pi(rat(-3, 4), -2) + PiScalar::i(),
                ),
                (Monomial::one(2), PiScalar::one()),
            ],
        );
        let s = f.to_json();
        assert_eq!(GaussPoly::from_json(&s).unwrap(), f);
        assert!(s.starts_with("{\"n\":2,\"lambda\":\"1\",\"t\":\"1/2\",\"terms\":[{\"a\":[0,0]"));
    }

    #[test]
    fn phase_action_on_monomials() {
        let c = ctx(1);
        let f = GaussPoly::z(&c, 0);
        let k = PhaseMatrix::diagonal(vec![1]);
        // (k⁻¹z) = -i z
        assert_eq!(f.act(&k).unwrap(), f.scale(&-PiScalar::i()));
    }
}
