//! Floating-point kernels: η_ω, the series kernel 𝒫, the closed kernel 𝒬 and surface-measure
//! convolutions. Circle integrals use the trapezoid rule, which is spectrally accurate here.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use super::functions::{closed_form_a, closed_form_l, psi};
use super::harmonic::{harmonic_basis, HarmonicSpace};
use crate::error::{HhError, Result};
use crate::gausspoly::{Ctx, GaussPoly, Monomial, MultiIndex};
use crate::laguerre::{laguerre_eval, laguerre_eval_rat};
use crate::scalar::{gamma_int, rat, rat_int, rat_to_f64, PiScalar, Rat};
use crate::weylfock::{Family, IrredIndex};

fn sphere_average(n: usize, s: f64, points: usize) -> f64 {
    // E[e^{i s x}] for x the first coordinate of a uniform point on S^{2n-1}; density ∝ sin^{2n-2}θ
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..points {
        let th = 2.0 * PI * j as f64 / points as f64;
        let w = th.sin().abs().powi(2 * n as i32 - 2);
        num += w * (s * th.cos()).cos();
        den += w;
    }
    num / den
}

/// η_ω(z) = ∫_K e^{i Re⟨ω, k·z⟩} dk, a product over blocks of sphere averages.
pub fn eta_omega(family: &Family, omega: &[Complex64], z: &[Complex64]) -> Result<f64> {
    let n = family.n();
    if omega.len() != n || z.len() != n {
        return Err(HhError::Dimension {
            expected: n,
            got: omega.len().min(z.len()),
        });
    }
    let mut out = 1.0;
    for (r, &nb) in family.ranges().into_iter().zip(family.blocks()) {
        let w: f64 = omega[r.clone()].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let zz: f64 = z[r].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let s = w * zz;
        let points = 64 + 4 * (s.ceil() as usize) + 8 * nb;
        out *= sphere_average(nb, s, points);
    }
    Ok(out)
}

fn require_circles(family: &Family) -> Result<()> {
    if family.num_blocks() != 2 || family.blocks().iter().any(|&b| b != 1) {
        return Err(HhError::Invalid(format!(
            "circle kernels need the family U(1)xU(1), got {family}"
        )));
    }
    Ok(())
}

/// Whether L^{n_i+p_i+q_i−1}_{m_i−p'_i}(2|λ|a_i²) ≠ 0 for all p'_i ≤ m_i and q'_i ≤ q_max, where
/// (p', q') is (p, q) for λ > 0 and (q, p) for λ < 0. Returns the first offending index.
pub fn vanishing_laguerre(ctx: &Ctx, alpha: &IrredIndex, a: &[Rat], q_max: u32) -> Option<(usize, u32, u32)> {
    let two_l = ctx.abs_lambda() * rat_int(2);
    for (i, (&n, &m)) in alpha.family().blocks().iter().zip(alpha.m()).enumerate() {
        let x = &two_l * &a[i] * &a[i];
        for pe in 0..=m {
            for qe in 0..=q_max {
                if laguerre_eval_rat(m - pe, n as u32 + pe + qe - 1, &x).is_zero() {
                    return Some((i, pe, qe));
                }
            }
        }
    }
    None
}

/// Radii a_i = 1, 9/8, 5/4, ... (shared by both blocks) until no required Laguerre value vanishes.
pub fn choose_radii(ctx: &Ctx, alpha: &IrredIndex, q_max: u32) -> Result<Vec<Rat>> {
    for j in 0..64 {
        let a = rat(8 + j, 8);
        let radii = vec![a; alpha.family().num_blocks()];
        if vanishing_laguerre(ctx, alpha, &radii, q_max).is_none() {
            return Ok(radii);
        }
    }
    Err(HhError::VanishingLaguerre("no radius in the scan".into()))
}

/// 𝒬(z, ω) = e^{−2iλ Σ a_i Im(z^i·ω̄^i)} ψ_α(z − (a_1ω¹, a_2ω²)), after checking the Laguerre
/// values up to q_max.
pub fn kernel_q(ctx: &Ctx, alpha: &IrredIndex, z: &[Complex64], omega: &[Complex64], a: &[Rat], q_max: u32) -> Result<Complex64> {
    require_circles(alpha.family())?;
    if let Some((i, p, q)) = vanishing_laguerre(ctx, alpha, a, q_max) {
        return Err(HhError::VanishingLaguerre(format!("block {}, p={p}, q={q}, a={}", i + 1, a[i])));
    }
    let sf = psi(ctx, alpha)?;
    let af: Vec<f64> = a.iter().map(rat_to_f64).collect();
    Ok(q_unchecked(&sf.psi, rat_to_f64(ctx.lambda()), z, omega, &af))
}

fn q_unchecked(psi: &GaussPoly, lambda: f64, z: &[Complex64], omega: &[Complex64], a: &[f64]) -> Complex64 {
    let shift: Vec<Complex64> = omega.iter().zip(a).map(|(w, ai)| w * *ai).collect();
    let phase: f64 = z.iter().zip(&shift).map(|(zi, u)| (zi * u.conj()).im).sum();
    let arg: Vec<Complex64> = z.iter().zip(&shift).map(|(zi, u)| zi - u).collect();
    Complex64::from_polar(1.0, -2.0 * lambda * phase) * psi.evaluate(&arg).expect("dimension checked")
}

/// A circle harmonic on U(1)×U(1): per block, s ≥ 0 means ω^s and s < 0 means ω̄^{−s}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleType(pub Vec<i32>);

impl CircleType {
    pub fn degrees(&self) -> Vec<(u32, u32)> {
        self.0
            .iter()
            .map(|&s| if s >= 0 { (s as u32, 0) } else { (0, (-s) as u32) })
            .collect()
    }

    /// Y(ω), orthonormal for the normalized measure on the torus.
    pub fn eval_y(&self, omega: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .zip(omega)
            .map(|(&s, w)| if s >= 0 { w.powu(s as u32) } else { w.conj().powu((-s) as u32) })
            .product()
    }

    /// P̃(z) = |z|^{p+q} Y(z/|z|) as a bare polynomial.
    pub fn solid(&self, ctx: &Ctx) -> GaussPoly {
        let n = ctx.n();
        let mut a = vec![0; n];
        let mut b = vec![0; n];
        for (j, &s) in self.0.iter().enumerate() {
            if s >= 0 {
                a[j] = s as u32;
            } else {
                b[j] = (-s) as u32;
            }
        }
        GaussPoly::from_terms(ctx, Rat::zero(), [(Monomial::new(MultiIndex(a), MultiIndex(b)), PiScalar::one())])
    }
}

/// One term of the kernel series: ⟨Π(z), 𝒲(P̃_δ)⟩_α = π^n(2|λ|)^{−n} θ(P̃_δ)ψ_α, exact.
#[derive(Clone, Debug)]
pub struct SeriesTerm {
    pub delta: CircleType,
    pub pairing: GaussPoly,
    /// ‖𝒲(P̃_δ)‖_α^{−1}, the weight of the term in 𝒫.
    pub p_weight: f64,
    /// b_δ from the surface lemma at the chosen radii.
    pub b: f64,
    pub radius_power: f64,
}

/// b_δ = ∏ (−1)^{q_i} Γ(n_i)Γ(m_i−p'_i+1)/Γ(m_i+n_i+q'_i) a_i^{2(p_i+q_i)} L^{n_i+p_i+q_i−1}_{m_i−p'_i}(2|λ|a_i²) e^{−|λ|a_i²},
/// zero when some p'_i > m_i; (p', q') = (p, q) for λ > 0 and (q, p) for λ < 0.
pub fn surface_b(ctx: &Ctx, alpha: &IrredIndex, degrees: &[(u32, u32)], a: &[f64]) -> f64 {
    let l = rat_to_f64(&ctx.abs_lambda());
    let mut out = 1.0;
    for (((&n, &m), &(p, q)), &ai) in alpha.family().blocks().iter().zip(alpha.m()).zip(degrees).zip(a) {
        let (pe, qe) = if ctx.is_positive() { (p, q) } else { (q, p) };
        if pe > m {
            return 0.0;
        }
        let n = n as u32;
        let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
        let g = rat_to_f64(&(gamma_int(n) * gamma_int(m - pe + 1) / gamma_int(m + n + qe)));
        out *= sign * g * ai.powi(2 * (p + q) as i32) * laguerre_eval(m - pe, n + p + q - 1, 2.0 * l * ai * ai) * (-l * ai * ai).exp();
    }
    out
}

/// All series terms with p'_i ≤ m_i and q'_i ≤ q_max.
pub fn series_terms(ctx: &Ctx, alpha: &IrredIndex, a: &[f64], q_max: u32) -> Result<Vec<SeriesTerm>> {
    require_circles(alpha.family())?;
    let norm = ctx.normalization();
    let inv_norm = norm.inv()?;
    let m = alpha.m();
    // per block: holomorphic degree up to m (λ>0) and antiholomorphic up to q_max, swapped for λ<0
    let range = |mi: u32| -> Vec<i32> {
        if ctx.is_positive() {
            (-(q_max as i32)..=mi as i32).collect()
        } else {
            (-(mi as i32)..=q_max as i32).collect()
        }
    };
    let mut out = Vec::new();
    for s1 in range(m[0]) {
        for s2 in range(m[1]) {
            let delta = CircleType(vec![s1, s2]);
            let degrees = delta.degrees();
            let solid = delta.solid(ctx);
            let l = closed_form_l(ctx, &degrees, alpha)?;
            let pairing = solid.mul(&l)?.with_gauss(ctx.abs_lambda()).scale(&inv_norm);
            let w_norm_sq = (&closed_form_a(ctx, &degrees, alpha)? * &inv_norm).to_c64().re;
            let p_weight = if w_norm_sq > 0.0 { 1.0 / w_norm_sq.sqrt() } else { 0.0 };
            let radius_power: f64 = degrees
                .iter()
                .zip(a)
                .map(|(&(p, q), ai)| ai.powi((p + q) as i32))
                .product();
            out.push(SeriesTerm {
                b: surface_b(ctx, alpha, &degrees, a),
                delta,
                pairing,
                p_weight,
                radius_power,
            });
        }
    }
    Ok(out)
}

/// Truncated 𝒫(z, ω) = Σ_δ ‖𝒲(P̃_δ)‖_α^{−1} ⟨Π(z), 𝒲(P̃_δ)⟩_α Y_δ(ω).
pub fn kernel_p(ctx: &Ctx, alpha: &IrredIndex, z: &[Complex64], omega: &[Complex64], q_max: u32) -> Result<Complex64> {
    let terms = series_terms(ctx, alpha, &[1.0, 1.0], q_max)?;
    let mut acc = Complex64::zero();
    for t in &terms {
        acc += t.p_weight * t.pairing.evaluate(z)? * t.delta.eval_y(omega);
    }
    Ok(acc)
}

/// 𝒬 rebuilt from the 𝒫 ingredients: Σ_δ πⁿ... κ_δ ⟨Π(z), 𝒲(P̃_δ)⟩_α conj(Y_δ(ω)) with
/// κ_δ = π^{−n}(2|λ|)ⁿ b_δ / a^{p+q}. Returns the partial sum and a tail estimate from the
/// next `extra` orders.
pub fn kernel_q_series(
    ctx: &Ctx,
    alpha: &IrredIndex,
    z: &[Complex64],
    omega: &[Complex64],
    a: &[f64],
    q_max: u32,
    extra: u32,
) -> Result<(Complex64, f64)> {
    let norm = ctx.normalization().to_c64().re;
    let all = series_terms(ctx, alpha, a, q_max + extra)?;
    let mut acc = Complex64::zero();
    let mut tail = 0.0;
    for t in &all {
        let v = norm * t.b / t.radius_power * t.pairing.evaluate(z)? * t.delta.eval_y(omega).conj();
        let order = t.delta.degrees().iter().map(|&(p, q)| if ctx.is_positive() { q } else { p }).max().unwrap_or(0);
        if order <= q_max {
            acc += v;
        } else {
            tail += v.norm();
        }
    }
    Ok((acc, tail))
}

fn torus_points(points: usize) -> Vec<Complex64> {
    (0..points)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / points as f64))
        .collect()
}

/// ∫ 𝒬(z, ω) Y_δ(ω) dω over the torus (normalized measure) by the trapezoid rule.
pub fn q_projection(ctx: &Ctx, alpha: &IrredIndex, delta: &CircleType, z: &[Complex64], a: &[f64], points: usize) -> Result<Complex64> {
    require_circles(alpha.family())?;
    let sf = psi(ctx, alpha)?;
    let lambda = rat_to_f64(ctx.lambda());
    let circle = torus_points(points);
    let mut acc = Complex64::zero();
    for w1 in &circle {
        for w2 in &circle {
            let omega = [*w1, *w2];
            acc += q_unchecked(&sf.psi, lambda, z, &omega, a) * delta.eval_y(&omega);
        }
    }
    Ok(acc / (points * points) as f64)
}

/// Predicted value of [`q_projection`]: κ_δ ⟨Π(z), 𝒲(P̃_δ)⟩_α.
pub fn q_projection_closed(ctx: &Ctx, alpha: &IrredIndex, delta: &CircleType, z: &[Complex64], a: &[f64]) -> Result<Complex64> {
    let degrees = delta.degrees();
    let b = surface_b(ctx, alpha, &degrees, a);
    let rp: f64 = degrees.iter().zip(a).map(|(&(p, q), ai)| ai.powi((p + q) as i32)).product();
    let th = delta.solid(ctx).mul(&closed_form_l(ctx, &degrees, alpha)?)?.with_gauss(ctx.abs_lambda());
    Ok(b / rp * th.evaluate(z)?)
}

/// Result of P dμ_{a₁,a₂} ×ψ_α by quadrature against the closed form b_δ θ(P)ψ_α.
#[derive(Clone, Debug)]
pub struct SurfaceConvolution {
    /// θ(P)ψ_α, exact.
    pub shape: GaussPoly,
    pub predicted_b: f64,
    /// Least-squares fit of the quadrature values to the shape.
    pub measured_b: Complex64,
    /// max |quadrature − predicted_b·shape| over the probes.
    pub residual: f64,
    /// max change between `points` and 2·`points` quadrature nodes.
    pub convergence: f64,
}

impl SurfaceConvolution {
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        Ok(self.predicted_b * self.shape.evaluate(z)?)
    }
}

fn surface_value(p: &GaussPoly, psi: &GaussPoly, lambda: f64, z: &[Complex64], a: &[f64], points: usize) -> Result<Complex64> {
    let circle = torus_points(points);
    let mut acc = Complex64::zero();
    for w1 in &circle {
        for w2 in &circle {
            let u = [w1 * a[0], w2 * a[1]];
            let phase: f64 = z.iter().zip(&u).map(|(zi, ui)| (zi * ui.conj()).im).sum();
            let arg = [z[0] - u[0], z[1] - u[1]];
            acc += p.evaluate(&u)? * psi.evaluate(&arg)? * Complex64::from_polar(1.0, -2.0 * lambda * phase);
        }
    }
    Ok(acc / (points * points) as f64)
}

/// P dμ_{a₁,a₂} ×^λ ψ_α with dμ the normalized surface measure on a₁S¹×a₂S¹, by the trapezoid
/// rule, compared at `probes` with b_δ θ(P)ψ_α.
pub fn surface_measure_convolve(
    space: &HarmonicSpace,
    p: &GaussPoly,
    a: &[f64],
    alpha: &IrredIndex,
    points: usize,
    probes: &[Vec<Complex64>],
) -> Result<SurfaceConvolution> {
    require_circles(space.family())?;
    let ctx = space.ctx();
    if space.coordinates(p)?.is_none() {
        return Err(HhError::Invalid("P is not in the harmonic space".into()));
    }
    let sf = psi(ctx, alpha)?;
    let shape = crate::gausspoly::theta(&p.poly_part(), &sf.psi)?;
    let predicted_b = surface_b(ctx, alpha, space.degrees(), a);
    let lambda = rat_to_f64(ctx.lambda());
    let mut num = Complex64::zero();
    let mut den = 0.0;
    let mut residual: f64 = 0.0;
    let mut convergence: f64 = 0.0;
    for z in probes {
        let v = surface_value(&p.poly_part(), &sf.psi, lambda, z, a, points)?;
        let v2 = surface_value(&p.poly_part(), &sf.psi, lambda, z, a, 2 * points)?;
        let s = shape.evaluate(z)?;
        num += s.conj() * v;
        den += s.norm_sqr();
        residual = residual.max((v - predicted_b * s).norm());
        convergence = convergence.max((v - v2).norm());
    }
    let measured_b = if den > 0.0 { num / den } else { Complex64::zero() };
    Ok(SurfaceConvolution {
        shape,
        predicted_b,
        measured_b,
        residual,
        convergence,
    })
}

/// The harmonic space of a circle type, for use with [`surface_measure_convolve`].
pub fn circle_space(ctx: &Ctx, delta: &CircleType) -> Result<HarmonicSpace> {
    harmonic_basis(ctx, &Family::product(1, 1), &delta.degrees())
}

