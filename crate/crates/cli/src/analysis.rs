//! Numerical checks used by `verify`.

use num_complex::Complex64;
use polyshape::transform::apply_step;
use polyshape::{Polygon, Result, WeightVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Least-squares fit of `M v ≈ μ v + c 𝟙`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenFit {
    pub mu: Complex64,
    pub shift: Complex64,
    /// `‖M v − μ v − c 𝟙‖ / ‖v − mean(v)‖`.
    pub residual: f64,
}

fn centered(z: &[Complex64]) -> Vec<Complex64> {
    let mean = z.iter().sum::<Complex64>() / z.len() as f64;
    z.iter().map(|&x| x - mean).collect()
}

fn norm(z: &[Complex64]) -> f64 {
    z.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Since `M 𝟙 = 𝟙`, removing the mean from both sides decouples `μ` from
/// `c`: `μ` is the projection of the centered image on the centered target.
pub fn fit_eigen(v: &Polygon, w: &WeightVector) -> Result<EigenFit> {
    let image = apply_step(v, w)?;
    let vc = centered(v.vertices());
    let ic = centered(image.vertices());
    let denom: f64 = vc.iter().map(|x| x.norm_sqr()).sum();
    let mu = vc
        .iter()
        .zip(&ic)
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        / denom;
    let n = v.len() as f64;
    let shift = image
        .vertices()
        .iter()
        .zip(v.vertices())
        .map(|(m, x)| m - mu * x)
        .sum::<Complex64>()
        / n;
    let rest: Vec<Complex64> = image
        .vertices()
        .iter()
        .zip(v.vertices())
        .map(|(m, x)| m - mu * x - shift)
        .collect();
    Ok(EigenFit {
        mu,
        shift,
        residual: norm(&rest) / denom.sqrt(),
    })
}

/// Per-step decay of `distances`, from a least-squares line through
/// `ln d` over the steps where `d` lies in `window`. `None` with fewer than
/// two such steps.
pub fn fitted_decay_rate(distances: &[f64], window: (f64, f64)) -> Option<f64> {
    let points: Vec<(f64, f64)> = distances
        .iter()
        .enumerate()
        .filter(|(_, &d)| d >= window.0 && d <= window.1)
        .map(|(k, &d)| (k as f64, d.ln()))
        .collect();
    if points.len() < 2 {
        return None;
    }
    let m = points.len() as f64;
    let kx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let ky = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - kx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - kx) * (p.1 - ky)).sum();
    Some((sxy / sxx).exp())
}

/// Distance window in which decay is measured: above round-off, below the
/// transient.
pub const DECAY_WINDOW: (f64, f64) = (1e-9, 1e-2);

/// Start polygon with vertices uniform in `[-1, 1]²`.
pub fn random_start(n: usize, seed: u64) -> Polygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices = (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
        .collect();
    Polygon::new(vertices).expect("finite and non-empty")
}
