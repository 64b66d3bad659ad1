//! Hecke–Bochner coefficients and eigenfunctions built from operators on V_α.

use num_traits::{Signed, Zero};

use super::functions::{generalized_spherical, is_joint_eigenfunction, laguerre_radial, psi};
use super::harmonic::{check_invariant, express, HarmonicSpace};
use crate::error::{HhError, Result};
use crate::gausspoly::{same_ctx, theta, twisted_convolve, GaussPoly, PhaseMatrix};
use crate::linalg::{self, DenseMatrix};
use crate::scalar::{gamma_int, rat_int, CRat, PiScalar, Rat};
use crate::weylfock::{fock_pairing, hs_inner_alpha, tau, IrredIndex, OperatorMatrix, Trunc};

/// Coefficient C_α in F ×ψ_α = C_α Ψ_α for F = P·g.
#[derive(Clone, Debug)]
pub struct HeckeBochnerCoeff {
    pub alpha: IrredIndex,
    /// A⁻¹ ∫ L̄ Υ_δ g e^{−|λ||z|²}
    pub c: PiScalar,
    /// ⟨F×ψ_α, Ψ_α⟩/‖Ψ_α‖² when that quotient is a single power of π.
    pub c_direct: Option<PiScalar>,
    /// The Laguerre-integral form of the coefficient.
    pub geller: PiScalar,
    pub a_scalar: PiScalar,
}

fn neg_one_pow(k: u32) -> Rat {
    if k % 2 == 0 {
        Rat::from_integer(1.into())
    } else {
        Rat::from_integer((-1).into())
    }
}

/// ∏ (−1)^{q_i} Γ(n_i)Γ(m_i−p_i+1)/Γ(m_i+n_i+q_i) ∫ g ∏ L_{m_i−p_i}^{n_i+p_i+q_i−1}(2|λ||z^i|²)|z^i|^{2(p_i+q_i)} e^{−|λ||z|²},
/// zero if some p_i > m_i. For λ < 0 the roles of p and q swap.
pub fn geller_coefficient(space: &HarmonicSpace, g: &GaussPoly, alpha: &IrredIndex) -> Result<PiScalar> {
    let ctx = space.ctx();
    let family = space.family();
    let mut weight = Rat::from_integer(1.into());
    let mut integrand = g.poly_part();
    for (((r, &n), &(p, q)), &m) in family
        .ranges()
        .into_iter()
        .zip(family.blocks())
        .zip(space.degrees())
        .zip(alpha.m())
    {
        let (pe, qe) = if ctx.is_positive() { (p, q) } else { (q, p) };
        if pe > m {
            return Ok(PiScalar::zero());
        }
        let n = n as u32;
        weight *= neg_one_pow(q) * gamma_int(n) * gamma_int(m - pe + 1) / gamma_int(m + n + qe);
        integrand = integrand
            .mul(&laguerre_radial(ctx, r.clone(), m - pe, n + p + q - 1)?)?
            .mul(&GaussPoly::abs_sq_range(ctx, r).pow(p + q)?)?;
    }
    let v = integrand.with_gauss(g.gauss_t() + ctx.abs_lambda()).integrate()?;
    Ok(v.scale_rat(&weight))
}

fn quotient(num: &PiScalar, den: &PiScalar) -> Option<PiScalar> {
    if num.is_zero() {
        return Some(PiScalar::zero());
    }
    den.inv().ok().map(|d| num * &d).filter(|q| q.single_power().is_some())
}

/// Hecke–Bochner coefficients of F = P·g against each α. Verifies F×ψ_α = C_α θ(P)ψ_α exactly
/// and that the three routes to C_α agree.
pub fn hecke_bochner(
    space: &HarmonicSpace,
    p: &GaussPoly,
    g: &GaussPoly,
    alphas: &[IrredIndex],
) -> Result<Vec<HeckeBochnerCoeff>> {
    let ctx = space.ctx();
    same_ctx(ctx, p.ctx())?;
    same_ctx(ctx, g.ctx())?;
    if !g.gauss_t().is_positive() {
        return Err(HhError::Divergent(crate::scalar::fmt_rat(g.gauss_t())));
    }
    if space.coordinates(p)?.is_none() {
        return Err(HhError::Invalid("P is not in the harmonic space".into()));
    }
    check_invariant(g, space.family())?;
    let f = p.poly_part().mul(g)?;
    let mut out = Vec::with_capacity(alphas.len());
    for alpha in alphas {
        let gs = generalized_spherical(space, alpha)?;
        let sf = psi(ctx, alpha)?;
        let psi_p = theta(&p.poly_part(), &sf.psi)?;
        let c = if gs.a_scalar.is_zero() {
            PiScalar::zero()
        } else {
            let integrand = gs
                .l_scalar
                .conj()
                .mul(&space.upsilon()?)?
                .mul(&g.poly_part())?
                .with_gauss(g.gauss_t() + ctx.abs_lambda());
            &integrand.integrate()? * &gs.a_scalar.inv()?
        };
        let conv = twisted_convolve(&f, &sf.psi)?;
        if conv != psi_p.scale(&c) {
            return Err(HhError::Invalid(format!("F x psi_{alpha} is not C times Psi_{alpha}")));
        }
        let c_direct = if psi_p.is_zero() {
            Some(PiScalar::zero())
        } else {
            quotient(&conv.inner(&psi_p)?, &psi_p.norm_sq()?)
        };
        let geller = geller_coefficient(space, g, alpha)?;
        if geller != c || c_direct.as_ref().is_some_and(|d| d != &c) {
            return Err(HhError::Invalid(format!("coefficient routes disagree at alpha={alpha}")));
        }
        out.push(HeckeBochnerCoeff {
            alpha: alpha.clone(),
            c,
            c_direct,
            geller,
            a_scalar: gs.a_scalar,
        });
    }
    Ok(out)
}

/// f = ⟨Π(z), S⟩_α for S supported on V_α, checked to be a joint eigenfunction with
/// ‖f‖² = πⁿ(2|λ|)^{−n}‖S‖_α².
pub fn eigenfunction_from_operator(s: &OperatorMatrix, alpha: &IrredIndex) -> Result<GaussPoly> {
    let trunc = s.trunc();
    let ctx = trunc.ctx();
    if let Some(((r, c), _)) = s.entries().find(|((_, c), _)| !alpha.contains(trunc.index(*c))) {
        return Err(HhError::SupportOffAlpha(format!(
            "entry ({}, {}) has column outside V_{alpha}",
            trunc.index(*r),
            trunc.index(*c)
        )));
    }
    let f = fock_pairing(s, |nu| alpha.contains(nu))?;
    if !is_joint_eigenfunction(&f, alpha)? {
        return Err(HhError::Invalid("pairing is not a joint eigenfunction".into()));
    }
    let norm = ctx.normalization().inv()?;
    if f.norm_sq()? != &hs_inner_alpha(s, s, alpha)? * &norm {
        return Err(HhError::Invalid("norm identity fails".into()));
    }
    Ok(f)
}

/// 𝒲(P) restricted to columns in V_α; requires N ≥ |α| + deg P.
pub fn weyl_correspondence_on(p: &GaussPoly, alpha: &IrredIndex, trunc: &Trunc) -> Result<OperatorMatrix> {
    let need = alpha.degree() + p.degree();
    if need > trunc.max_degree() {
        return Err(HhError::Truncation {
            max_degree: trunc.max_degree(),
            what: format!("W(P) on V_{alpha} reaches degree {need}"),
        });
    }
    Ok(tau(p, trunc)?.restrict_cols(|nu| alpha.contains(nu)))
}

/// Rank of the span of {𝒲(P)|_{V_α} → 𝒫_m : P ∈ H_{pq}, p ≤ k, q − p = m − k} (p and q swapped
/// for λ < 0) together with
/// dim Hom(V_α, 𝒫_m). Single-block family only.
pub fn operator_span_rank(alpha: &IrredIndex, m: u32, trunc: &Trunc) -> Result<(usize, usize)> {
    let ctx = trunc.ctx();
    let family = alpha.family();
    if family.num_blocks() != 1 {
        return Err(HhError::Invalid("operator span rank is implemented for U(n)".into()));
    }
    let k = alpha.m()[0];
    let target = IrredIndex::un(alpha.n(), m);
    let rows: Vec<usize> = target.monomials().iter().map(|nu| trunc.position(nu)).collect::<Option<_>>().ok_or(
        HhError::Truncation {
            max_degree: trunc.max_degree(),
            what: format!("target degree {m}"),
        },
    )?;
    let cols: Vec<usize> = alpha.monomials().iter().map(|nu| trunc.position(nu).expect("checked")).collect();
    let mut vectors: Vec<Vec<CRat>> = Vec::new();
    let mut pi_power = None;
    for lower in 0..=k {
        let Some(upper) = (lower + m).checked_sub(k) else { continue };
        let (p, q) = if ctx.is_positive() { (lower, upper) } else { (upper, lower) };
        let space = super::harmonic::harmonic_basis(ctx, family, &[(p, q)])?;
        for b in space.basis() {
            let w = weyl_correspondence_on(b, alpha, trunc)?;
            let mut v = Vec::with_capacity(rows.len() * cols.len());
            for &r in &rows {
                for &c in &cols {
                    let x = w.get(r, c);
                    v.push(match x.single_power() {
                        None => CRat::zero(),
                        Some((e, val)) => {
                            if *pi_power.get_or_insert(e) != e {
                                return Err(HhError::Invalid("mixed powers of pi in W(P)".into()));
                            }
                            val.clone()
                        }
                    });
                }
            }
            vectors.push(v);
        }
    }
    let mat: DenseMatrix = vectors;
    let rank = if mat.is_empty() { 0 } else { linalg::rank(&mat) };
    Ok((rank, rows.len() * cols.len()))
}

/// Change-of-basis matrix M with Ψ_i(k⁻¹·z) = Σ_j M_ij Ψ_j(z), or `None` if the span is not
/// preserved.
pub fn equivariance_matrix(psi: &[GaussPoly], k: &PhaseMatrix) -> Result<Option<Vec<Vec<PiScalar>>>> {
    let mut out = Vec::with_capacity(psi.len());
    for f in psi {
        match express(&f.act(k)?, psi)? {
            Some(row) => out.push(row),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Σ_δ ‖φ_δ‖² ∏_i Γ(n_i+p_i+q_i)/k^{q_i}: truncated weighted norm on finite expansions.
/// `components` pairs block bidegrees with the squared norm of that component.
pub fn weighted_norm_sq(blocks: &[usize], components: &[(Vec<(u32, u32)>, Rat)], k: u32) -> Rat {
    let mut acc = Rat::zero();
    for (deg, nsq) in components {
        let mut w = nsq.clone();
        for (&n, &(p, q)) in blocks.iter().zip(deg) {
            w *= gamma_int(n as u32 + p + q) / crate::scalar::rat_pow(&rat_int(k as i64), q as i64);
        }
        acc += w;
    }
    acc
}
