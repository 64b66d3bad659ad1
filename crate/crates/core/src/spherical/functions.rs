//! Bounded and generalized spherical functions.

use num_traits::{One, Zero};

use super::harmonic::HarmonicSpace;
use crate::error::{HhError, Result};
use crate::gausspoly::{theta, Ctx, GaussPoly, InvariantOp};
use crate::laguerre::laguerre;
use crate::linalg;
use crate::scalar::{gamma_int, rat, rat_int, rat_pow, CRat, PiScalar, Rat};
use crate::weylfock::{Family, IrredIndex};

/// Generators of the K-invariant operator algebra at fixed λ: the special Hermite operator of
/// each block.
pub fn generators(family: &Family) -> Vec<(String, InvariantOp)> {
    let ranges = family.ranges();
    if ranges.len() == 1 {
        return vec![("L".into(), InvariantOp::special_hermite_range(ranges[0].clone()))];
    }
    ranges
        .into_iter()
        .enumerate()
        .map(|(i, r)| (format!("L{}", i + 1), InvariantOp::special_hermite_range(r)))
        .collect()
}

/// μ_α on each generator: −2|λ|(2m_i + n_i).
pub fn eigenvalues(ctx: &Ctx, alpha: &IrredIndex) -> Vec<(String, PiScalar)> {
    let two_l = ctx.abs_lambda() * rat_int(2);
    generators(alpha.family())
        .into_iter()
        .zip(alpha.family().blocks().iter().zip(alpha.m()))
        .map(|((name, _), (&n, &m))| {
            let v = -(&two_l * rat_int(2 * m as i64 + n as i64));
            (name, PiScalar::from_rat(v))
        })
        .collect()
}

/// Checks D f = μ_α(D) f exactly for every generator D.
pub fn is_joint_eigenfunction(f: &GaussPoly, alpha: &IrredIndex) -> Result<bool> {
    let mu = eigenvalues(f.ctx(), alpha);
    for ((_, op), (_, m)) in generators(alpha.family()).into_iter().zip(mu) {
        if op.apply(f)? != f.scale(&m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// L_k^a(2|λ||z_R|²) as a bare polynomial, R the coordinates of `range`.
pub fn laguerre_radial(ctx: &Ctx, range: std::ops::Range<usize>, k: u32, a: u32) -> Result<GaussPoly> {
    let two_l = ctx.abs_lambda() * rat_int(2);
    let x = GaussPoly::abs_sq_range(ctx, range).scale_rat(&two_l);
    let mut out = GaussPoly::zero(ctx, Rat::zero());
    let mut pow = GaussPoly::one(ctx);
    for (j, c) in laguerre(k, a).iter().enumerate() {
        if j > 0 {
            pow = pow.mul(&x)?;
        }
        out.add_assign(&pow.scale_rat(c))?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SphericalFunction {
    pub alpha: IrredIndex,
    pub psi: GaussPoly,
    pub mu: Vec<(String, PiScalar)>,
}

/// ψ_α = π^{−n}(2|λ|)ⁿ ∏_i L_{m_i}^{n_i−1}(2|λ||z^i|²) e^{−|λ||z|²}.
pub fn psi(ctx: &Ctx, alpha: &IrredIndex) -> Result<SphericalFunction> {
    if alpha.n() != ctx.n() {
        return Err(HhError::Dimension {
            expected: ctx.n(),
            got: alpha.n(),
        });
    }
    let family = alpha.family();
    let mut poly = GaussPoly::constant(ctx, Rat::zero(), ctx.normalization());
    for ((r, &n), &m) in family.ranges().into_iter().zip(family.blocks()).zip(alpha.m()) {
        poly = poly.mul(&laguerre_radial(ctx, r, m, n as u32 - 1)?)?;
    }
    Ok(SphericalFunction {
        alpha: alpha.clone(),
        psi: poly.with_gauss(ctx.abs_lambda()),
        mu: eigenvalues(ctx, alpha),
    })
}

/// Ψ_α^δ = θ(P^δ)ψ_α = P^δ · L · e^{−|λ||z|²}, with A = ∫ Ψ*Ψ for a basis orthonormal on the
/// product of unit spheres (normalized surface measure).
#[derive(Clone, Debug)]
pub struct GeneralizedSpherical {
    pub alpha: IrredIndex,
    pub space: HarmonicSpace,
    pub psi: Vec<GaussPoly>,
    /// Radial factor L as a bare polynomial in the block invariants.
    pub l_scalar: GaussPoly,
    pub a_scalar: PiScalar,
}

impl GeneralizedSpherical {
    pub fn is_zero(&self) -> bool {
        self.psi.iter().all(GaussPoly::is_zero)
    }
}

fn check_same_family(space: &HarmonicSpace, alpha: &IrredIndex) -> Result<()> {
    if space.family() != alpha.family() {
        return Err(HhError::Invalid(format!(
            "harmonic space for {} but alpha for {}",
            space.family(),
            alpha.family()
        )));
    }
    Ok(())
}

/// Radial polynomial L with Ψ = P·L·e^{−|λ||z|²}, found by an exact linear solve.
fn radial_quotient(psi: &GaussPoly, p: &GaussPoly, family: &Family) -> Result<Option<GaussPoly>> {
    let ctx = psi.ctx();
    if psi.is_zero() {
        return Ok(Some(GaussPoly::zero(ctx, Rat::zero())));
    }
    let room = psi.degree().saturating_sub(p.degree()) / 2;
    let mut powers = Vec::new();
    for total in 0..=room {
        for j in crate::gausspoly::MultiIndex::of_degree(family.num_blocks(), total) {
            powers.push(j.0);
        }
    }
    let mut cands = Vec::new();
    for j in &powers {
        let inv = super::harmonic::invariant_monomial(ctx, family, j, Rat::zero())?;
        cands.push(p.mul(&inv)?);
    }
    let Some(x) = super::harmonic::express(&psi.poly_part(), &cands)? else {
        return Ok(None);
    };
    let mut l = GaussPoly::zero(ctx, Rat::zero());
    for (j, c) in powers.iter().zip(x) {
        l.add_assign(&super::harmonic::invariant_monomial(ctx, family, j, Rat::zero())?.scale(&c))?;
    }
    Ok(Some(l))
}

/// |S^{2n_1−1} × ⋯| = ∏ 2π^{n_i}/Γ(n_i).
fn sphere_area(family: &Family) -> PiScalar {
    let mut r = Rat::one();
    for &n in family.blocks() {
        r *= rat_int(2) / gamma_int(n as u32);
    }
    PiScalar::rat_pi(r, family.n() as i32)
}

/// Gram matrix of the basis on the product of unit spheres (unnormalized surface measure),
/// divided by πⁿ so the entries are rational.
fn sphere_gram(space: &HarmonicSpace) -> Result<linalg::DenseMatrix> {
    let ctx = space.ctx();
    let family = space.family();
    let mut w = Rat::one();
    for (&n, &(p, q)) in family.blocks().iter().zip(space.degrees()) {
        w *= rat_int(2) / gamma_int(n as u32 + p + q);
    }
    let basis: Vec<GaussPoly> = space.basis().iter().map(|b| b.with_gauss(rat(1, 2))).collect();
    let d = basis.len();
    let mut g = linalg::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let v = basis[i].inner(&basis[j])?.scale_rat(&w).shift_pi(-(ctx.n() as i32));
            g[i][j] = pure_rational(&v)?;
        }
    }
    Ok(g)
}

fn pure_rational(v: &PiScalar) -> Result<CRat> {
    match v.single_power() {
        None => Ok(CRat::zero()),
        Some((0, c)) => Ok(c.clone()),
        Some((k, _)) => Err(HhError::Invalid(format!("expected a rational, found a pi^{k} term"))),
    }
}

/// A via the Gram contraction (|S|/d) Σ_{ij} (G⁻¹)_{ji} ⟨Ψ_i, Ψ_j⟩.
fn a_by_gram(space: &HarmonicSpace, psi: &[GaussPoly]) -> Result<PiScalar> {
    let g = sphere_gram(space)?;
    let ginv = linalg::inverse(&g).ok_or_else(|| HhError::Invalid("singular sphere Gram matrix".into()))?;
    let d = psi.len();
    let mut acc = PiScalar::zero();
    for i in 0..d {
        for j in 0..d {
            if ginv[j][i].is_zero() {
                continue;
            }
            acc += &psi[i].inner(&psi[j])?.scale(&ginv[j][i]);
        }
    }
    let area = sphere_area(space.family());
    Ok(acc.shift_pi(-(space.ctx().n() as i32)).scale_rat(&rat(1, d as i64)) * area)
}

/// A via ∫ |L|² Υ_δ e^{−2|λ||z|²}.
pub fn a_by_radial(space: &HarmonicSpace, l: &GaussPoly) -> Result<PiScalar> {
    let ctx = space.ctx();
    let f = l.mul(&l.conj())?.mul(&space.upsilon()?)?;
    f.with_gauss(ctx.abs_lambda() * rat_int(2)).integrate()
}

/// Ψ, L and A for (δ, α). If p_i > m_i for some block (q_i > m_i when λ < 0) everything is zero.
pub fn generalized_spherical(space: &HarmonicSpace, alpha: &IrredIndex) -> Result<GeneralizedSpherical> {
    check_same_family(space, alpha)?;
    let ctx = space.ctx();
    let sf = psi(ctx, alpha)?;
    let mut cols = Vec::with_capacity(space.dim());
    for p in space.basis() {
        cols.push(theta(p, &sf.psi)?);
    }
    let family = space.family();
    let l = match (space.basis().first(), cols.first()) {
        (Some(p), Some(psi0)) => radial_quotient(psi0, p, family)?
            .ok_or_else(|| HhError::Invalid("theta image is not P times a radial factor".into()))?,
        _ => GaussPoly::zero(ctx, Rat::zero()),
    };
    let e = ctx.abs_lambda();
    for (p, col) in space.basis().iter().zip(&cols) {
        if &p.mul(&l)?.with_gauss(e.clone()) != col {
            return Err(HhError::Invalid("radial factor differs between basis elements".into()));
        }
    }
    let a = if space.is_empty() {
        PiScalar::zero()
    } else {
        a_by_gram(space, &cols)?
    };
    Ok(GeneralizedSpherical {
        alpha: alpha.clone(),
        space: space.clone(),
        psi: cols,
        l_scalar: l,
        a_scalar: a,
    })
}

fn neg_one_pow(k: u32) -> Rat {
    if k % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Applies the λ>0 formula `f` to the conjugate data when λ < 0: roles of p and q swap and the
/// result picks up (−1)^{p+q} (the closed forms below are real).
fn adapt<T>(ctx: &Ctx, degrees: &[(u32, u32)], f: impl Fn(&[(u32, u32)]) -> Result<T>, sign: impl Fn(T, Rat) -> T) -> Result<T> {
    if ctx.is_positive() {
        return f(degrees);
    }
    let swapped: Vec<(u32, u32)> = degrees.iter().map(|&(p, q)| (q, p)).collect();
    let s: u32 = degrees.iter().map(|(p, q)| p + q).sum();
    Ok(sign(f(&swapped)?, neg_one_pow(s)))
}

/// L = π^{−n}(2|λ|)ⁿ ∏ (−1)^{q_i}(2|λ|)^{p_i+q_i} L_{m_i−p_i}^{n_i+p_i+q_i−1}(2|λ||z^i|²), zero when
/// some p_i > m_i (λ > 0; for λ < 0 through the conjugation adapter).
pub fn closed_form_l(ctx: &Ctx, degrees: &[(u32, u32)], alpha: &IrredIndex) -> Result<GaussPoly> {
    let family = alpha.family().clone();
    let m = alpha.m().to_vec();
    adapt(
        ctx,
        degrees,
        |deg| {
            let two_l = ctx.abs_lambda() * rat_int(2);
            let mut out = GaussPoly::constant(ctx, Rat::zero(), ctx.normalization());
            for (((r, &n), &(p, q)), &mi) in family.ranges().into_iter().zip(family.blocks()).zip(deg).zip(&m) {
                if p > mi {
                    return Ok(GaussPoly::zero(ctx, Rat::zero()));
                }
                let c = neg_one_pow(q) * rat_pow(&two_l, (p + q) as i64);
                out = out.mul(&laguerre_radial(ctx, r, mi - p, n as u32 + p + q - 1)?.scale_rat(&c))?;
            }
            Ok(out)
        },
        |l, s| l.scale_rat(&s),
    )
}

/// A = π^{−n}(2|λ|)ⁿ ∏ (2|λ|)^{p_i+q_i} Γ(m_i+n_i+q_i)/(Γ(n_i)Γ(m_i−p_i+1)), zero when some
/// p_i > m_i (λ > 0; swapped roles for λ < 0).
pub fn closed_form_a(ctx: &Ctx, degrees: &[(u32, u32)], alpha: &IrredIndex) -> Result<PiScalar> {
    let family = alpha.family().clone();
    let m = alpha.m().to_vec();
    adapt(
        ctx,
        degrees,
        |deg| {
            let two_l = ctx.abs_lambda() * rat_int(2);
            let mut r = Rat::one();
            for ((&n, &(p, q)), &mi) in family.blocks().iter().zip(deg).zip(&m) {
                if p > mi {
                    return Ok(PiScalar::zero());
                }
                r *= rat_pow(&two_l, (p + q) as i64) * gamma_int(mi + n as u32 + q)
                    / (gamma_int(n as u32) * gamma_int(mi - p + 1));
            }
            Ok(ctx.normalization().scale_rat(&r))
        },
        // A is positive: the sign from the adapter cancels against the conjugate pairing
        |a, _| a,
    )
}
