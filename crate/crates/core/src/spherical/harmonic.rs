//! Bigraded solid harmonics and the decomposition p = Σ (invariant power)·(harmonic).

use std::collections::BTreeMap;
use std::ops::Range;

use num_traits::{One, Zero};

use crate::error::{HhError, Result};
use crate::gausspoly::{same_ctx, Ctx, GaussPoly, Monomial, MultiIndex};
use crate::linalg::{self, DenseMatrix};
use crate::scalar::{rat_int, CRat, PiScalar, Rat};
use crate::weylfock::Family;

/// Exact basis of H_{pq} (one block) or H¹_{p₁q₁}⊗H²_{p₂q₂} (two blocks).
#[derive(Clone, Debug)]
pub struct HarmonicSpace {
    ctx: Ctx,
    family: Family,
    degrees: Vec<(u32, u32)>,
    basis: Vec<GaussPoly>,
}

impl HarmonicSpace {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Bidegree (p_i, q_i) per block.
    pub fn degrees(&self) -> &[(u32, u32)] {
        &self.degrees
    }

    pub fn basis(&self) -> &[GaussPoly] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Υ_δ = ∏ |z^i|^{2(p_i+q_i)}.
    pub fn upsilon(&self) -> Result<GaussPoly> {
        let mut out = GaussPoly::one(&self.ctx);
        for (r, &(p, q)) in self.family.ranges().into_iter().zip(&self.degrees) {
            out = out.mul(&GaussPoly::abs_sq_range(&self.ctx, r).pow(p + q)?)?;
        }
        Ok(out)
    }

    /// Coordinates of a bare polynomial in this basis, or `None` if it lies outside the span.
    pub fn coordinates(&self, p: &GaussPoly) -> Result<Option<Vec<PiScalar>>> {
        express(&p.poly_part(), &self.basis.iter().map(|b| b.poly_part()).collect::<Vec<_>>())
    }
}

fn check_family(ctx: &Ctx, family: &Family) -> Result<()> {
    if family.n() != ctx.n() {
        return Err(HhError::Dimension {
            expected: ctx.n(),
            got: family.n(),
        });
    }
    Ok(())
}

/// Monomials z^a z̄^b with block bidegree (p, q) in `range` and exponents `outside` elsewhere.
fn block_monomials(range: &Range<usize>, p: u32, q: u32, outside: &Monomial) -> Vec<Monomial> {
    let k = range.len();
    let mut out = Vec::new();
    for a in MultiIndex::of_degree(k, p) {
        for b in MultiIndex::of_degree(k, q) {
            let mut ma = outside.a.clone();
            let mut mb = outside.b.clone();
            for (i, j) in range.clone().enumerate() {
                ma.0[j] = a.0[i];
                mb.0[j] = b.0[i];
            }
            out.push(Monomial::new(ma, mb));
        }
    }
    out
}

/// Σ_{j ∈ range} ∂²/∂z_j∂z̄_j applied to a rational polynomial.
fn laplacian(p: &BTreeMap<Monomial, CRat>, range: &Range<usize>) -> BTreeMap<Monomial, CRat> {
    let mut out: BTreeMap<Monomial, CRat> = BTreeMap::new();
    for (m, c) in p {
        for j in range.clone() {
            let (aj, bj) = (m.a.0[j], m.b.0[j]);
            if aj == 0 || bj == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.a.0[j] -= 1;
            m2.b.0[j] -= 1;
            let v = c * CRat::from(rat_int((aj * bj) as i64));
            let e = out.entry(m2).or_insert_with(CRat::zero);
            *e = &*e + &v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn times_abs_sq(p: &BTreeMap<Monomial, CRat>, range: &Range<usize>) -> BTreeMap<Monomial, CRat> {
    let mut out: BTreeMap<Monomial, CRat> = BTreeMap::new();
    for (m, c) in p {
        for j in range.clone() {
            let mut m2 = m.clone();
            m2.a.0[j] += 1;
            m2.b.0[j] += 1;
            let e = out.entry(m2).or_insert_with(CRat::zero);
            *e = &*e + c;
        }
    }
    out
}

fn single_block_basis(ctx: &Ctx, range: Range<usize>, p: u32, q: u32) -> Vec<BTreeMap<Monomial, CRat>> {
    let one = Monomial::one(ctx.n());
    let cols = block_monomials(&range, p, q, &one);
    if p == 0 || q == 0 {
        return cols.into_iter().map(|m| BTreeMap::from([(m, CRat::one())])).collect();
    }
    let rows = block_monomials(&range, p - 1, q - 1, &one);
    let row_pos: BTreeMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = linalg::zeros(rows.len(), cols.len());
    for (c, m) in cols.iter().enumerate() {
        let lap = laplacian(&BTreeMap::from([(m.clone(), CRat::one())]), &range);
        for (m2, v) in lap {
            mat[row_pos[&m2]][c] = v;
        }
    }
    linalg::nullspace(&mat, cols.len())
        .into_iter()
        .map(|v| {
            cols.iter()
                .zip(v)
                .filter(|(_, x)| !x.is_zero())
                .map(|(m, x)| (m.clone(), x))
                .collect()
        })
        .collect()
}

/// Exact basis of the bigraded harmonics of the given block bidegrees. Within a block the
/// basis comes from the reduced echelon form of the Laplacian on lexicographically ordered
/// monomials; blocks combine by tensor product.
pub fn harmonic_basis(ctx: &Ctx, family: &Family, degrees: &[(u32, u32)]) -> Result<HarmonicSpace> {
    check_family(ctx, family)?;
    if degrees.len() != family.num_blocks() {
        return Err(HhError::Dimension {
            expected: family.num_blocks(),
            got: degrees.len(),
        });
    }
    let total: u32 = degrees.iter().map(|(p, q)| p + q).sum();
    crate::error::check_degree(total as usize)?;
    let mut basis: Vec<BTreeMap<Monomial, CRat>> = vec![BTreeMap::from([(Monomial::one(ctx.n()), CRat::one())])];
    for (r, &(p, q)) in family.ranges().into_iter().zip(degrees) {
        let block = single_block_basis(ctx, r, p, q);
        let mut next = Vec::new();
        for x in &basis {
            for y in &block {
                let mut prod: BTreeMap<Monomial, CRat> = BTreeMap::new();
                for (m1, c1) in x {
                    for (m2, c2) in y {
                        prod.insert(m1.mul(m2), c1 * c2);
                    }
                }
                next.push(prod);
            }
        }
        basis = next;
    }
    Ok(HarmonicSpace {
        ctx: ctx.clone(),
        family: family.clone(),
        degrees: degrees.to_vec(),
        basis: basis.into_iter().map(|m| from_rational(ctx, Rat::zero(), &m, 0)).collect(),
    })
}

fn from_rational(ctx: &Ctx, t: Rat, m: &BTreeMap<Monomial, CRat>, pi: i32) -> GaussPoly {
    GaussPoly::from_terms(ctx, t, m.iter().map(|(k, v)| (k.clone(), PiScalar::from_crat(v.clone(), pi))))
}

/// Splits coefficients by power of π.
fn split_pi(p: &GaussPoly) -> BTreeMap<i32, BTreeMap<Monomial, CRat>> {
    let mut out: BTreeMap<i32, BTreeMap<Monomial, CRat>> = BTreeMap::new();
    for (m, c) in p.terms() {
        for (k, v) in c.terms() {
            out.entry(k).or_default().insert(m.clone(), v.clone());
        }
    }
    out
}

/// Coefficients x with target = Σ x_i basis_i exactly. Every basis coefficient must carry the
/// same power of π; `None` when the target is outside the span.
pub fn express(target: &GaussPoly, basis: &[GaussPoly]) -> Result<Option<Vec<PiScalar>>> {
    for b in basis {
        same_ctx(target.ctx(), b.ctx())?;
        if b.gauss_t() != target.gauss_t() {
            return Err(HhError::GaussMismatch {
                left: crate::scalar::fmt_rat(target.gauss_t()),
                right: crate::scalar::fmt_rat(b.gauss_t()),
            });
        }
    }
    let split: Vec<_> = basis.iter().map(split_pi).collect();
    let mut base_pow = None;
    for s in &split {
        for &k in s.keys() {
            if *base_pow.get_or_insert(k) != k {
                return Err(HhError::Invalid("basis coefficients mix powers of pi".into()));
            }
        }
    }
    let base_pow = base_pow.unwrap_or(0);
    let cols: Vec<BTreeMap<Monomial, CRat>> = split
        .into_iter()
        .map(|mut s| s.remove(&base_pow).unwrap_or_default())
        .collect();
    let mut out = vec![PiScalar::zero(); basis.len()];
    for (k, tgt) in split_pi(target) {
        let mut keys: Vec<&Monomial> = tgt.keys().collect();
        for c in &cols {
            keys.extend(c.keys());
        }
        keys.sort();
        keys.dedup();
        let mut a: DenseMatrix = linalg::zeros(keys.len(), cols.len());
        let mut b = vec![CRat::zero(); keys.len()];
        for (r, m) in keys.iter().enumerate() {
            for (c, col) in cols.iter().enumerate() {
                if let Some(v) = col.get(*m) {
                    a[r][c] = v.clone();
                }
            }
            if let Some(v) = tgt.get(*m) {
                b[r] = v.clone();
            }
        }
        let Some(x) = linalg::solve(&a, &b) else {
            return Ok(None);
        };
        for (o, v) in out.iter_mut().zip(x) {
            *o += &PiScalar::from_crat(v, k - base_pow);
        }
    }
    Ok(Some(out))
}

/// Decomposes a bihomogeneous (in `range`) rational polynomial h of bidegree (a, b):
/// returns h_j of bidegree (a−j, b−j), harmonic in `range`, with h = Σ |z_R|^{2j} h_j.
fn decompose_homogeneous(
    h: BTreeMap<Monomial, CRat>,
    range: &Range<usize>,
    a: u32,
    b: u32,
    outside: &Monomial,
) -> Vec<BTreeMap<Monomial, CRat>> {
    if h.is_empty() {
        return Vec::new();
    }
    let lap = laplacian(&h, range);
    if lap.is_empty() {
        return vec![h];
    }
    // find r of bidegree (a-1, b-1) with Δ(|z|² r) = Δh; the map r ↦ Δ(|z|² r) is invertible there
    let unknowns = block_monomials(range, a - 1, b - 1, outside);
    let pos: BTreeMap<&Monomial, usize> = unknowns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = linalg::zeros(unknowns.len(), unknowns.len());
    for (c, m) in unknowns.iter().enumerate() {
        let img = laplacian(&times_abs_sq(&BTreeMap::from([(m.clone(), CRat::one())]), range), range);
        for (m2, v) in img {
            mat[pos[&m2]][c] = v;
        }
    }
    let mut rhs = vec![CRat::zero(); unknowns.len()];
    for (m, v) in &lap {
        rhs[pos[m]] = v.clone();
    }
    let x = linalg::solve(&mat, &rhs).expect("Δ(|z|²·) is invertible on bihomogeneous polynomials");
    let r: BTreeMap<Monomial, CRat> = unknowns
        .iter()
        .zip(x)
        .filter(|(_, v)| !v.is_zero())
        .map(|(m, v)| (m.clone(), v))
        .collect();
    let mut h0 = h;
    for (m, v) in times_abs_sq(&r, range) {
        let e = h0.entry(m).or_insert_with(CRat::zero);
        *e = &*e - &v;
    }
    h0.retain(|_, v| !v.is_zero());
    let mut out = vec![h0];
    out.extend(decompose_homogeneous(r, range, a - 1, b - 1, outside));
    out
}

/// p = Σ_j |z_R|^{2j} h_j with each h_j annihilated by the Laplacian in the `range` variables.
/// The Gaussian factor of p is carried along unchanged.
pub fn decompose_block(p: &GaussPoly, range: Range<usize>) -> Result<BTreeMap<u32, GaussPoly>> {
    let ctx = p.ctx();
    if range.end > ctx.n() {
        return Err(HhError::Invalid(format!("block {range:?} outside C^{}", ctx.n())));
    }
    let mut out: BTreeMap<u32, GaussPoly> = BTreeMap::new();
    for (k, poly) in split_pi(p) {
        // group by exponents outside the block and bidegree inside it
        let mut groups: BTreeMap<(Monomial, u32, u32), BTreeMap<Monomial, CRat>> = BTreeMap::new();
        for (m, c) in poly {
            let mut outside = m.clone();
            for j in range.clone() {
                outside.a.0[j] = 0;
                outside.b.0[j] = 0;
            }
            let (a, b) = m.bidegree_in(range.clone());
            groups.entry((outside, a, b)).or_default().insert(m, c);
        }
        for ((outside, a, b), h) in groups {
            for (j, hj) in decompose_homogeneous(h, &range, a, b, &outside).into_iter().enumerate() {
                if hj.is_empty() {
                    continue;
                }
                let piece = from_rational(ctx, p.gauss_t().clone(), &hj, k);
                out.entry(j as u32)
                    .or_insert_with(|| GaussPoly::zero(ctx, p.gauss_t().clone()))
                    .add_assign(&piece)?;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// p = Σ_J ∏_i |z^i|^{2 J_i} · h_J with h_J harmonic in every block (|z|² alone for U(n)).
/// Keys are the invariant exponents J.
pub fn harmonic_decompose(p: &GaussPoly, family: &Family) -> Result<Vec<(Vec<u32>, GaussPoly)>> {
    check_family(p.ctx(), family)?;
    let mut parts: Vec<(Vec<u32>, GaussPoly)> = vec![(Vec::new(), p.clone())];
    for r in family.ranges() {
        let mut next: BTreeMap<Vec<u32>, GaussPoly> = BTreeMap::new();
        for (powers, q) in parts {
            for (j, h) in decompose_block(&q, r.clone())? {
                let mut key = powers.clone();
                key.push(j);
                match next.get_mut(&key) {
                    Some(acc) => acc.add_assign(&h)?,
                    None => {
                        next.insert(key, h);
                    }
                }
            }
        }
        parts = next.into_iter().filter(|(_, h)| !h.is_zero()).collect();
    }
    Ok(parts)
}

/// ∏_i |z^i|^{2 J_i} with Gaussian parameter `t`.
pub fn invariant_monomial(ctx: &Ctx, family: &Family, powers: &[u32], t: Rat) -> Result<GaussPoly> {
    let mut out = GaussPoly::one(ctx);
    for (r, &j) in family.ranges().into_iter().zip(powers) {
        out = out.mul(&GaussPoly::abs_sq_range(ctx, r).pow(j)?)?;
    }
    Ok(out.with_gauss(t))
}

/// Rejects functions that are not K-invariant: every harmonic component must be constant.
pub fn check_invariant(g: &GaussPoly, family: &Family) -> Result<()> {
    for (powers, h) in harmonic_decompose(g, family)? {
        if h.degree() > 0 {
            return Err(HhError::NotInvariant(format!(
                "harmonic component of degree {} at invariant powers {powers:?}",
                h.degree()
            )));
        }
    }
    Ok(())
}

/// The δ-isotypic component of f as radial factors G_i with f^δ = Σ_i P_i G_i, where P_i is
/// the basis of `space`. Computed from the harmonic decomposition, without Haar integration.
pub fn component_project(f: &GaussPoly, space: &HarmonicSpace) -> Result<Vec<GaussPoly>> {
    same_ctx(f.ctx(), space.ctx())?;
    let ctx = f.ctx();
    let t = f.gauss_t().clone();
    let family = space.family();
    let ranges = family.ranges();
    let mut out = vec![GaussPoly::zero(ctx, t.clone()); space.dim()];
    for (powers, h) in harmonic_decompose(f, family)? {
        let part = GaussPoly::from_terms(
            ctx,
            Rat::zero(),
            h.terms()
                .filter(|(m, _)| {
                    ranges
                        .iter()
                        .zip(space.degrees())
                        .all(|(r, &d)| m.bidegree_in(r.clone()) == d)
                })
                .map(|(m, c)| (m.clone(), c.clone())),
        );
        if part.is_zero() {
            continue;
        }
        let coords = space
            .coordinates(&part)?
            .ok_or_else(|| HhError::Invalid("isotypic part outside the harmonic span".into()))?;
        let radial = invariant_monomial(ctx, family, &powers, t.clone())?;
        for (o, c) in out.iter_mut().zip(coords) {
            o.add_assign(&radial.scale(&c))?;
        }
    }
    Ok(out)
}

/// Block bidegrees δ occurring in f.
pub fn isotypic_types(f: &GaussPoly, family: &Family) -> Result<Vec<Vec<(u32, u32)>>> {
    let ranges = family.ranges();
    let mut out = std::collections::BTreeSet::new();
    for (_, h) in harmonic_decompose(f, family)? {
        for (m, _) in h.terms() {
            out.insert(ranges.iter().map(|r| m.bidegree_in(r.clone())).collect::<Vec<_>>());
        }
    }
    Ok(out.into_iter().collect())
}
