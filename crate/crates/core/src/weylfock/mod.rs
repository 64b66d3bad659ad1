//! Truncated Fock space realization of the Schrödinger-type representation and the Weyl transform.
//!
//! Operators are stored in the unnormalized monomial basis w^ν with Gram weights
//! g_ν = ν!/(2|λ|)^{|ν|}; entry (μ, ν) is the w^μ-coefficient of the image of w^ν.

mod irred;

pub use irred::{Family, IrredIndex};

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_degree, HhError, Result};
use crate::gausspoly::{i_power, same_ctx, Ctx, GaussPoly, Monomial, MultiIndex, PhaseMatrix, WeylContext};
use crate::json::{scalar_from_json, scalar_to_json, CoeffJson};
use crate::scalar::{binomial, factorial, fmt_rat, parse_rat, rat, rat_int, rat_pow, PiScalar, Rat};

/// g_ν = ν!/(2|λ|)^{|ν|}
pub fn gram_weight(ctx: &WeylContext, nu: &MultiIndex) -> Rat {
    let two_l = ctx.abs_lambda() * rat_int(2);
    Rat::from_integer(nu.factorial()) / rat_pow(&two_l, nu.degree() as i64)
}

/// All monomials w^ν with |ν| ≤ N, with their Gram weights.
#[derive(Debug, PartialEq, Eq)]
pub struct FockTruncation {
    ctx: Ctx,
    max_degree: u32,
    indices: Vec<MultiIndex>,
    index_of: HashMap<MultiIndex, usize>,
    gram: Vec<Rat>,
}

pub type Trunc = Arc<FockTruncation>;

impl FockTruncation {
    pub fn new(ctx: &Ctx, max_degree: u32) -> Result<Trunc> {
        check_degree(max_degree as usize)?;
        let indices = MultiIndex::up_to(ctx.n(), max_degree);
        let index_of = indices.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let gram = indices.iter().map(|m| gram_weight(ctx, m)).collect();
        Ok(Arc::new(Self {
            ctx: ctx.clone(),
            max_degree,
            indices,
            index_of,
            gram,
        }))
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn index(&self, i: usize) -> &MultiIndex {
        &self.indices[i]
    }

    pub fn position(&self, nu: &MultiIndex) -> Option<usize> {
        self.index_of.get(nu).copied()
    }

    pub fn gram(&self, i: usize) -> &Rat {
        &self.gram[i]
    }
}

fn same_trunc(a: &Trunc, b: &Trunc) -> Result<()> {
    if Arc::ptr_eq(a, b) || (a.ctx == b.ctx && a.max_degree == b.max_degree) {
        Ok(())
    } else {
        Err(HhError::ContextMismatch(format!(
            "truncations N={} and N={} over different contexts or degrees",
            a.max_degree, b.max_degree
        )))
    }
}

/// Sparse exact matrix on a Fock truncation.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    trunc: Trunc,
    entries: BTreeMap<(usize, usize), PiScalar>,
}

impl PartialEq for OperatorMatrix {
    fn eq(&self, other: &Self) -> bool {
        same_trunc(&self.trunc, &other.trunc).is_ok() && self.entries == other.entries
    }
}

impl OperatorMatrix {
    pub fn zero(trunc: &Trunc) -> Self {
        Self {
            trunc: trunc.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(trunc: &Trunc) -> Self {
        let mut m = Self::zero(trunc);
        for i in 0..trunc.dim() {
            m.entries.insert((i, i), PiScalar::one());
        }
        m
    }

    pub fn trunc(&self) -> &Trunc {
        &self.trunc
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &PiScalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> PiScalar {
        self.entries.get(&(row, col)).cloned().unwrap_or_default()
    }

    /// Entry at (w^μ row, w^ν column); zero outside the truncation.
    pub fn get_by(&self, mu: &MultiIndex, nu: &MultiIndex) -> PiScalar {
        match (self.trunc.position(mu), self.trunc.position(nu)) {
            (Some(r), Some(c)) => self.get(r, c),
            _ => PiScalar::zero(),
        }
    }

    pub fn add_entry(&mut self, row: usize, col: usize, v: &PiScalar) {
        if v.is_zero() {
            return;
        }
        let key = (row, col);
        match self.entries.get_mut(&key) {
            Some(x) => {
                *x += v;
                if x.is_zero() {
                    self.entries.remove(&key);
                }
            }
            None => {
                self.entries.insert(key, v.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_trunc(&self.trunc, &other.trunc)?;
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            out.add_entry(*r, *c, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&PiScalar::from_int(-1)))
    }

    pub fn scale(&self, s: &PiScalar) -> Self {
        Self {
            trunc: self.trunc.clone(),
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (*k, v * s))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Matrix product self · other.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_trunc(&self.trunc, &other.trunc)?;
        let mut by_row: HashMap<usize, Vec<(usize, &PiScalar)>> = HashMap::new();
        for ((r, c), v) in &other.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut out = Self::zero(&self.trunc);
        for ((i, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    out.add_entry(*i, *j, &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// Gram adjoint: adj(A)_{μν} = (g_ν/g_μ)·conj(A_{νμ}).
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(&self.trunc);
        for ((r, c), v) in &self.entries {
            let w = self.trunc.gram(*r) / self.trunc.gram(*c);
            out.add_entry(*c, *r, &v.conj().scale_rat(&w));
        }
        out
    }

    /// Hilbert–Schmidt inner product Σ g_μ/g_ν A_{μν} conj(B_{μν}).
    pub fn hs_inner(&self, other: &Self) -> Result<PiScalar> {
        same_trunc(&self.trunc, &other.trunc)?;
        Ok(self.hs_inner_cols(other, |_| true))
    }

    fn hs_inner_cols<F: Fn(&MultiIndex) -> bool>(&self, other: &Self, keep: F) -> PiScalar {
        let mut acc = PiScalar::zero();
        for ((r, c), v) in &self.entries {
            if !keep(self.trunc.index(*c)) {
                continue;
            }
            if let Some(w) = other.entries.get(&(*r, *c)) {
                let g = self.trunc.gram(*r) / self.trunc.gram(*c);
                acc += &(v * &w.conj()).scale_rat(&g);
            }
        }
        acc
    }

    pub fn hs_norm_sq(&self) -> PiScalar {
        self.hs_inner_cols(self, |_| true)
    }

    /// Keeps entries whose row and column indices both satisfy `keep`.
    pub fn restrict<F: Fn(&MultiIndex) -> bool>(&self, keep: F) -> Self {
        Self {
            trunc: self.trunc.clone(),
            entries: self
                .entries
                .iter()
                .filter(|((r, c), _)| keep(self.trunc.index(*r)) && keep(self.trunc.index(*c)))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Keeps entries whose column index satisfies `keep`.
    pub fn restrict_cols<F: Fn(&MultiIndex) -> bool>(&self, keep: F) -> Self {
        Self {
            trunc: self.trunc.clone(),
            entries: self
                .entries
                .iter()
                .filter(|((_, c), _)| keep(self.trunc.index(*c)))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Entries with row and column degree ≤ d.
    pub fn interior(&self, d: u32) -> Self {
        self.restrict(|m| m.degree() <= d)
    }

    /// Image of a polynomial Σ p_ν w^ν (given as (index, coefficient) pairs).
    pub fn apply_vec(&self, v: &BTreeMap<usize, PiScalar>) -> BTreeMap<usize, PiScalar> {
        let mut out: BTreeMap<usize, PiScalar> = BTreeMap::new();
        for ((r, c), a) in &self.entries {
            if let Some(x) = v.get(c) {
                let e = out.entry(*r).or_default();
                *e += &(a * x);
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn to_json(&self) -> String {
        let doc = MatrixJson {
            n: self.trunc.ctx.n(),
            lambda: fmt_rat(self.trunc.ctx.lambda()),
            max_degree: self.trunc.max_degree,
            entries: self
                .entries
                .iter()
                .map(|((r, c), v)| EntryJson {
                    row: self.trunc.index(*r).0.clone(),
                    col: self.trunc.index(*c).0.clone(),
                    coeff: scalar_to_json(v),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: MatrixJson = serde_json::from_str(s).map_err(|e| HhError::Parse(e.to_string()))?;
        let ctx = WeylContext::new(doc.n, parse_rat(&doc.lambda)?)?;
        let trunc = FockTruncation::new(&ctx, doc.max_degree)?;
        let mut out = Self::zero(&trunc);
        for e in doc.entries {
            let r = trunc
                .position(&MultiIndex(e.row.clone()))
                .ok_or_else(|| HhError::Parse(format!("row {:?} outside truncation", e.row)))?;
            let c = trunc
                .position(&MultiIndex(e.col.clone()))
                .ok_or_else(|| HhError::Parse(format!("col {:?} outside truncation", e.col)))?;
            out.add_entry(r, c, &scalar_from_json(&e.coeff)?);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    row: Vec<u32>,
    col: Vec<u32>,
    coeff: Vec<CoeffJson>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    lambda: String,
    #[serde(rename = "N")]
    max_degree: u32,
    entries: Vec<EntryJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    /// W_j
    W,
    /// W̄_j
    Wbar,
}

type HoloPoly = BTreeMap<MultiIndex, PiScalar>;

fn add_holo(p: &mut HoloPoly, k: MultiIndex, v: PiScalar) {
    if v.is_zero() {
        return;
    }
    let e = p.entry(k.clone()).or_default();
    *e += &v;
    if e.is_zero() {
        p.remove(&k);
    }
}

/// Multiplication by 2|λ|w_j when `raise`, else ∂/∂w_j.
fn holo_step(p: &HoloPoly, j: usize, raise: bool, two_l: &Rat) -> HoloPoly {
    let mut out = HoloPoly::new();
    for (nu, c) in p {
        if raise {
            add_holo(&mut out, nu.bump(j, 1).unwrap(), c.scale_rat(two_l));
        } else if nu.get(j) > 0 {
            add_holo(&mut out, nu.bump(j, -1).unwrap(), c.scale_rat(&rat_int(nu.get(j) as i64)));
        }
    }
    out
}

fn ladder_raises(ctx: &WeylContext, kind: Ladder) -> bool {
    (kind == Ladder::Wbar) == ctx.is_positive()
}

/// W_j or W̄_j on the truncation; images above degree N are dropped.
pub fn ladder(trunc: &Trunc, j: usize, kind: Ladder) -> Result<OperatorMatrix> {
    let ctx = trunc.ctx();
    if j >= ctx.n() {
        return Err(HhError::Dimension {
            expected: ctx.n(),
            got: j + 1,
        });
    }
    let raise = ladder_raises(ctx, kind);
    let two_l = ctx.abs_lambda() * rat_int(2);
    let mut m = OperatorMatrix::zero(trunc);
    for (c, nu) in trunc.indices().iter().enumerate() {
        let mut p = HoloPoly::new();
        p.insert(nu.clone(), PiScalar::one());
        for (mu, v) in holo_step(&p, j, raise, &two_l) {
            if let Some(r) = trunc.position(&mu) {
                m.add_entry(r, c, &v);
            }
        }
    }
    Ok(m)
}

/// One-coordinate expansion of the w^μ coefficient of Π(z)w^ν as (z power, z̄ power, coefficient).
fn displacement_factor(lambda: &Rat, nu: u32, mu: u32) -> Vec<(u32, u32, Rat)> {
    let two_l = lambda.abs() * rat_int(2);
    let mut out = Vec::new();
    for i in 0..=nu.min(mu) {
        let k = mu - i;
        let base = Rat::new(binomial(nu, i), factorial(k)) * rat_pow(&two_l, k as i64);
        if lambda.is_positive() {
            // (w + z̄)^ν e^{−2λ w·z}: z̄^{ν−i} (−2λz)^{μ−i}/(μ−i)!
            let sign = if k % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            out.push((k, nu - i, base * sign));
        } else {
            // (w − z)^ν e^{2|λ| w·z̄}: (−z)^{ν−i} (2|λ|z̄)^{μ−i}/(μ−i)!
            let sign = if (nu - i) % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            out.push((nu - i, k, base * sign));
        }
    }
    out
}

/// ⟨Π(z)w^ν, w^μ⟩ as a GaussPoly in z with Gaussian parameter |λ|.
pub fn displacement_matrix_element(ctx: &Ctx, nu: &MultiIndex, mu: &MultiIndex) -> Result<GaussPoly> {
    let n = ctx.n();
    if nu.len() != n || mu.len() != n {
        return Err(HhError::Dimension {
            expected: n,
            got: nu.len().max(mu.len()),
        });
    }
    let factors: Vec<_> = (0..n)
        .map(|j| displacement_factor(ctx.lambda(), nu.get(j), mu.get(j)))
        .collect();
    let g = PiScalar::from_rat(gram_weight(ctx, mu));
    let mut out = GaussPoly::zero(ctx, ctx.abs_lambda());
    let mut idx = vec![0usize; n];
    loop {
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        let mut w = Rat::one();
        for j in 0..n {
            let (pa, pb, v) = &factors[j][idx[j]];
            a.push(*pa);
            b.push(*pb);
            w *= v;
        }
        out.add_term(Monomial::new(MultiIndex(a), MultiIndex(b)), &g.scale_rat(&w));
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
    Ok(out)
}

/// Weyl transform 𝒢(f) = ∫ f(z) Π(z) dz restricted to the truncation:
/// 𝒢(f)_{μν} = (1/g_μ) ∫ f(z) ⟨Π(z)w^ν, w^μ⟩ dz.
///
/// A term z^a z̄^b only reaches rows μ = ν + b − a (λ > 0) or μ = ν + a − b (λ < 0), and
/// the integral factorizes over coordinates.
pub fn weyl_transform(f: &GaussPoly, trunc: &Trunc) -> Result<OperatorMatrix> {
    let ctx = trunc.ctx();
    same_ctx(ctx, f.ctx())?;
    if !f.gauss_t().is_positive() {
        return Err(HhError::Divergent(fmt_rat(f.gauss_t())));
    }
    check_degree(f.degree() as usize)?;
    let n = ctx.n();
    let big_t = f.gauss_t() + ctx.abs_lambda();
    let positive = ctx.is_positive();
    let pref = PiScalar::rat_pi(rat_pow(&big_t, -(n as i64)), n as i32);
    let mut cache: HashMap<(u32, u32, u32), Rat> = HashMap::new();
    let mut one_d = |a: u32, b: u32, nu: u32, mu: u32| -> Rat {
        cache
            .entry((a, b, nu))
            .or_insert_with(|| {
                let mut acc = Rat::zero();
                for (pz, pzb, v) in displacement_factor(ctx.lambda(), nu, mu) {
                    let e = a + pz;
                    debug_assert_eq!(e, b + pzb);
                    acc += v * Rat::from_integer(factorial(e)) / rat_pow(&big_t, e as i64);
                }
                acc
            })
            .clone()
    };
    let mut out = OperatorMatrix::zero(trunc);
    for (m, c) in f.terms() {
        let coeff = c * &pref;
        for (col, nu) in trunc.indices().iter().enumerate() {
            let mut mu = Vec::with_capacity(n);
            let mut ok = true;
            for j in 0..n {
                let shift = if positive {
                    m.b.get(j) as i64 - m.a.get(j) as i64
                } else {
                    m.a.get(j) as i64 - m.b.get(j) as i64
                };
                let x = nu.get(j) as i64 + shift;
                if x < 0 {
                    ok = false;
                    break;
                }
                mu.push(x as u32);
            }
            if !ok {
                continue;
            }
            let mu = MultiIndex(mu);
            let Some(row) = trunc.position(&mu) else {
                continue;
            };
            let mut w = Rat::one();
            for j in 0..n {
                w *= one_d(m.a.get(j), m.b.get(j), nu.get(j), mu.get(j));
                if w.is_zero() {
                    break;
                }
            }
            out.add_entry(row, col, &coeff.scale_rat(&w));
        }
    }
    Ok(out)
}

/// Σ_{ν kept} Σ_μ S_{μν} conj(⟨Π(z)w^ν, w^μ⟩)/g_ν, i.e. Σ_ν ⟨S u_ν, Π(z)u_ν⟩ over kept columns.
pub fn fock_pairing<F: Fn(&MultiIndex) -> bool>(s: &OperatorMatrix, keep_col: F) -> Result<GaussPoly> {
    let trunc = s.trunc();
    let ctx = trunc.ctx();
    let mut out = GaussPoly::zero(ctx, ctx.abs_lambda());
    for ((r, c), v) in s.entries() {
        let nu = trunc.index(*c);
        if !keep_col(nu) {
            continue;
        }
        let d = displacement_matrix_element(ctx, nu, trunc.index(*r))?.conj();
        let w = trunc.gram(*c).recip();
        out.add_assign(&d.scale(&v.scale_rat(&w)))?;
    }
    Ok(out)
}

/// f = π^{-n}(2|λ|)^n Σ_ν ⟨S u_ν, Π(z)u_ν⟩.
pub fn inverse_weyl(s: &OperatorMatrix) -> Result<GaussPoly> {
    let ctx = s.trunc().ctx().clone();
    Ok(fock_pairing(s, |_| true)?.scale(&ctx.normalization()))
}

fn raising_degree(p: &GaussPoly) -> u32 {
    let positive = p.ctx().is_positive();
    p.terms()
        .map(|(m, _)| if positive { m.b.degree() } else { m.a.degree() })
        .max()
        .unwrap_or(0)
}

fn tau_with(p: &GaussPoly, trunc: &Trunc, first: bool) -> Result<OperatorMatrix> {
    let ctx = trunc.ctx();
    same_ctx(ctx, p.ctx())?;
    if !p.gauss_t().is_zero() {
        return Err(HhError::Invalid("tau expects a bare polynomial (gauss_t = 0)".into()));
    }
    let r = raising_degree(p);
    if r > trunc.max_degree() {
        return Err(HhError::Truncation {
            max_degree: trunc.max_degree(),
            what: format!("image of the vacuum needs degree {r}"),
        });
    }
    let two_l = ctx.abs_lambda() * rat_int(2);
    let n = ctx.n();
    let w_raises = ladder_raises(ctx, Ladder::W);
    let mut out = OperatorMatrix::zero(trunc);
    for (col, nu) in trunc.indices().iter().enumerate() {
        for (m, c) in p.terms() {
            let mut v = HoloPoly::new();
            v.insert(nu.clone(), c.clone());
            let apply_w = |mut v: HoloPoly| {
                for j in 0..n {
                    for _ in 0..m.a.get(j) {
                        v = holo_step(&v, j, w_raises, &two_l);
                    }
                }
                v
            };
            let apply_wbar = |mut v: HoloPoly| {
                for j in 0..n {
                    for _ in 0..m.b.get(j) {
                        v = holo_step(&v, j, !w_raises, &two_l);
                    }
                }
                v
            };
            v = if first { apply_wbar(apply_w(v)) } else { apply_w(apply_wbar(v)) };
            for (mu, x) in v {
                if let Some(row) = trunc.position(&mu) {
                    out.add_entry(row, col, &x);
                }
            }
        }
    }
    Ok(out)
}

/// τ₁(p): for ζ^ρ ζ̄^γ the word W̄^γ W^ρ.
pub fn tau1(p: &GaussPoly, trunc: &Trunc) -> Result<OperatorMatrix> {
    tau_with(p, trunc, true)
}

/// τ₂(p): for ζ^ρ ζ̄^γ the word W^ρ W̄^γ.
pub fn tau2(p: &GaussPoly, trunc: &Trunc) -> Result<OperatorMatrix> {
    tau_with(p, trunc, false)
}

/// τ(p) = ½(τ₁(p) + τ₂(p)); the Weyl correspondence 𝒲(p). Columns ν with
/// |ν| + (raising degree of p) ≤ N are exact.
pub fn tau(p: &GaussPoly, trunc: &Trunc) -> Result<OperatorMatrix> {
    let a = tau1(p, trunc)?;
    let b = tau2(p, trunc)?;
    Ok(a.add(&b)?.scale(&PiScalar::from_rat(rat(1, 2))))
}

/// Largest column degree on which τ(p) is unaffected by truncation.
pub fn tau_valid_degree(p: &GaussPoly, trunc: &Trunc) -> Option<u32> {
    trunc.max_degree().checked_sub(raising_degree(p))
}

/// U(k) on the truncation: u ↦ u(kᵀw) for λ > 0 and u ↦ u(k*w) for λ < 0.
pub fn unitary_action(k: &PhaseMatrix, trunc: &Trunc) -> Result<OperatorMatrix> {
    let ctx = trunc.ctx();
    let n = ctx.n();
    if k.n() != n {
        return Err(HhError::Dimension {
            expected: n,
            got: k.n(),
        });
    }
    let sign: i64 = if ctx.is_positive() { 1 } else { -1 };
    let mut out = OperatorMatrix::zero(trunc);
    for (col, nu) in trunc.indices().iter().enumerate() {
        let mut image = vec![0u32; n];
        let mut phase = 0i64;
        for j in 0..n {
            image[j] = nu.get(k.perm[j]);
            phase += k.phase[j] as i64 * image[j] as i64;
        }
        let row = trunc.position(&MultiIndex(image)).expect("degree preserved");
        out.add_entry(row, col, &i_power(sign * phase));
    }
    Ok(out)
}

/// Floating-point U(k) for a general unitary k, as a dense matrix in the monomial basis.
pub fn unitary_action_float(k: &[Vec<Complex64>], trunc: &Trunc) -> Result<Vec<Vec<Complex64>>> {
    let ctx = trunc.ctx();
    let n = ctx.n();
    if k.len() != n || k.iter().any(|r| r.len() != n) {
        return Err(HhError::Dimension {
            expected: n,
            got: k.len(),
        });
    }
    for i in 0..n {
        for j in 0..n {
            let dot: Complex64 = (0..n).map(|l| k[i][l] * k[j][l].conj()).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            if (dot - target).norm() > 1e-10 {
                return Err(HhError::Invalid("matrix is not unitary to 1e-10".into()));
            }
        }
    }
    // substitution w_l ↦ Σ_j s_{jl} w_j with s = k (λ > 0) or conj(k) (λ < 0)
    let s: Vec<Vec<Complex64>> = k
        .iter()
        .map(|row| row.iter().map(|x| if ctx.is_positive() { *x } else { x.conj() }).collect())
        .collect();
    let dim = trunc.dim();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (col, nu) in trunc.indices().iter().enumerate() {
        let mut poly: HashMap<Vec<u32>, Complex64> = HashMap::new();
        poly.insert(vec![0; n], Complex64::new(1.0, 0.0));
        for l in 0..n {
            for _ in 0..nu.get(l) {
                let mut next: HashMap<Vec<u32>, Complex64> = HashMap::new();
                for (m, c) in &poly {
                    for j in 0..n {
                        if s[j][l] == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        let mut m2 = m.clone();
                        m2[j] += 1;
                        *next.entry(m2).or_insert(Complex64::new(0.0, 0.0)) += c * s[j][l];
                    }
                }
                poly = next;
            }
        }
        for (m, c) in poly {
            let row = trunc.position(&MultiIndex(m)).expect("degree preserved");
            out[row][col] += c;
        }
    }
    Ok(out)
}

/// Orthogonal projection 𝒫_α onto V_α.
pub fn projection(alpha: &IrredIndex, trunc: &Trunc) -> Result<OperatorMatrix> {
    check_alpha(alpha, trunc)?;
    let mut m = OperatorMatrix::zero(trunc);
    for nu in alpha.monomials() {
        let i = trunc.position(&nu).expect("inside truncation");
        m.add_entry(i, i, &PiScalar::one());
    }
    Ok(m)
}

pub(crate) fn check_alpha(alpha: &IrredIndex, trunc: &Trunc) -> Result<()> {
    if alpha.n() != trunc.ctx().n() {
        return Err(HhError::Dimension {
            expected: trunc.ctx().n(),
            got: alpha.n(),
        });
    }
    if alpha.degree() > trunc.max_degree() {
        return Err(HhError::Truncation {
            max_degree: trunc.max_degree(),
            what: format!("V_alpha {alpha} has degree {}", alpha.degree()),
        });
    }
    Ok(())
}

/// ⟨A, B⟩_α = Σ_{ν ∈ V_α} Σ_μ g_μ/g_ν A_{μν} conj(B_{μν}).
pub fn hs_inner_alpha(a: &OperatorMatrix, b: &OperatorMatrix, alpha: &IrredIndex) -> Result<PiScalar> {
    same_trunc(a.trunc(), b.trunc())?;
    check_alpha(alpha, a.trunc())?;
    Ok(a.hs_inner_cols(b, |nu| alpha.contains(nu)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_and_gram() {
        let ctx = WeylContext::new(2, rat(1, 1)).unwrap();
        let t = FockTruncation::new(&ctx, 4).unwrap();
        assert_eq!(t.dim(), 15);
        let i = t.position(&MultiIndex(vec![2, 1])).unwrap();
        assert_eq!(t.gram(i), &rat(2, 8));
    }

    #[test]
    fn ladder_example() {
        let ctx = WeylContext::new(1, rat(1, 1)).unwrap();
        let t = FockTruncation::new(&ctx, 2).unwrap();
        let wbar = ladder(&t, 0, Ladder::Wbar).unwrap();
        assert_eq!(wbar.nnz(), 2);
        assert_eq!(wbar.get(1, 0), PiScalar::from_int(2));
        assert_eq!(wbar.get(2, 1), PiScalar::from_int(2));
        let w = ladder(&t, 0, Ladder::W).unwrap();
        assert!((0..3).all(|r| w.get(r, 0).is_zero()));
    }

    #[test]
    fn vacuum_displacement() {
        let ctx = WeylContext::new(1, rat(1, 1)).unwrap();
        let d = displacement_matrix_element(&ctx, &MultiIndex(vec![0]), &MultiIndex(vec![0])).unwrap();
        assert_eq!(d, GaussPoly::gaussian(&ctx, rat(1, 1)));
        let d1 = displacement_matrix_element(&ctx, &MultiIndex(vec![0]), &MultiIndex(vec![1])).unwrap();
        // coefficient −2z of w, times g_1 = 1/2
        assert_eq!(d1, GaussPoly::z(&ctx, 0).with_gauss(rat(1, 1)).neg());
    }
}
