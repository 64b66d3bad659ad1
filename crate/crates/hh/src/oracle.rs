//! Floating-point oracles: Gauss–Hermite quadrature over ℂⁿ and Bessel series.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use hh_core::gausspoly::GaussPoly;
use hh_core::scalar::rat_to_f64;
use hh_core::{HhError, Result};

/// Nodes and weights of the m-point Gauss–Hermite rule for ∫ p(x) e^{−x²} dx
/// (Golub–Welsch: eigen-decomposition of the Jacobi matrix).
pub fn gauss_hermite(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut j = DMatrix::<f64>::zeros(m, m);
    for i in 1..m {
        let b = (i as f64 / 2.0).sqrt();
        j[(i, i - 1)] = b;
        j[(i - 1, i)] = b;
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], std::f64::consts::PI.sqrt() * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// ∫_{ℂⁿ} f dz by tensor Gauss–Hermite over the 2n real coordinates, with enough nodes to be
/// exact for the polynomial degree of f.
pub fn integrate(f: &GaussPoly) -> Result<Complex64> {
    let t = rat_to_f64(f.gauss_t());
    if t <= 0.0 {
        return Err(HhError::Divergent(format!("{t}")));
    }
    let n = f.n();
    let m = f.degree() as usize / 2 + 1;
    let (x, w) = gauss_hermite(m);
    let scale = 1.0 / t.sqrt();
    let bare = f.poly_part();
    let dims = 2 * n;
    let mut idx = vec![0usize; dims];
    let mut acc = Complex64::new(0.0, 0.0);
    loop {
        let mut weight = 1.0;
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            z[j] = Complex64::new(x[idx[2 * j]] * scale, x[idx[2 * j + 1]] * scale);
            weight *= w[idx[2 * j]] * w[idx[2 * j + 1]];
        }
        acc += weight * bare.evaluate(&z)?;
        let mut d = 0;
        while d < dims {
            idx[d] += 1;
            if idx[d] < m {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
        if d == dims {
            break;
        }
    }
    Ok(acc * scale.powi(dims as i32))
}

/// ∫ f ḡ by quadrature.
pub fn inner(f: &GaussPoly, g: &GaussPoly) -> Result<Complex64> {
    integrate(&f.mul(&g.conj())?)
}

/// J_ν(x) by its power series, for moderate |x|.
pub fn bessel_j(nu: u32, x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = half.powi(nu as i32) / (1..=nu).map(f64::from).product::<f64>();
    let mut acc = term;
    for k in 1..200 {
        term *= -half * half / (k as f64 * (k + nu) as f64);
        acc += term;
        if term.abs() < 1e-17 * acc.abs().max(1e-300) && k as f64 > half {
            break;
        }
    }
    acc
}

/// Relative difference |a − b| / max(1, |b|).
pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_moments() {
        let (x, w) = gauss_hermite(6);
        let m0: f64 = w.iter().sum();
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        let m4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
        let sp = std::f64::consts::PI.sqrt();
        assert!((m0 - sp).abs() < 1e-13);
        assert!((m2 - sp / 2.0).abs() < 1e-13);
        assert!((m4 - 3.0 * sp / 4.0).abs() < 1e-13);
    }

    #[test]
    fn bessel_values() {
        assert!((bessel_j(0, 0.0) - 1.0).abs() < 1e-15);
        assert!((bessel_j(0, 2.404825557695773)).abs() < 1e-12);
        assert!((bessel_j(1, 1.0) - 0.44005058574493355).abs() < 1e-14);
    }
}
