//! Choosing λ inside the intersection of all admissible regions.
//!
//! The search maximizes the dominance margin
//! `min_i (|1+λ| − |1+λμᵢ|) / |1+λ|`, which is positive exactly on the
//! intersection and equals one minus the predicted convergence rate.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::quadrangle::quadrangle_case_lambda;
use super::region::{direct_dominance, lambda_region, RegionKind};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub const GRID_RINGS: usize = 25;
pub const GRID_ANGLES: usize = 64;
pub const GRID_MIN_RADIUS: f64 = 1e-3;
pub const GRID_MAX_RADIUS: f64 = 1e3;
pub const REFINE_ITERATIONS: usize = 600;

/// A scaling λ and its dominance margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralScaling {
    pub lambda: Complex64,
    pub margin: f64,
}

impl SpectralScaling {
    fn at(lambda: Complex64, mus: &[Complex64]) -> Self {
        Self {
            lambda,
            margin: margin(lambda, mus),
        }
    }

    /// Ordering by (margin, −|λ|, −angle): `Greater` means preferred.
    fn preference(&self, other: &Self) -> Ordering {
        self.margin
            .total_cmp(&other.margin)
            .then_with(|| other.lambda.norm().total_cmp(&self.lambda.norm()))
            .then_with(|| angle(other.lambda).total_cmp(&angle(self.lambda)))
    }

    /// Positive margin, confirmed against the direct inequality for every μ.
    pub fn is_feasible(&self, mus: &[Complex64]) -> bool {
        self.margin > 0.0 && mus.iter().all(|&mu| direct_dominance(self.lambda, mu))
    }
}

fn angle(z: Complex64) -> f64 {
    z.arg().rem_euclid(TAU)
}

/// `min_i (|1+λ| − |1+λμᵢ|) / |1+λ|`; 1 when there are no competitors.
pub fn margin(lambda: Complex64, mus: &[Complex64]) -> f64 {
    let dominant = (ONE + lambda).norm();
    if dominant == 0.0 {
        return f64::NEG_INFINITY;
    }
    mus.iter()
        .map(|&mu| (dominant - (ONE + lambda * mu).norm()) / dominant)
        .fold(1.0, f64::min)
}

/// Best feasible scaling for the competitors `mus`, or `None` when none was
/// found. A `None` is an empirical outcome of the search, not a proof that
/// the intersection of regions is empty.
pub fn search_lambda(mus: &[Complex64], seed: u64) -> Option<SpectralScaling> {
    let best = search_best(mus, seed)?;
    best.is_feasible(mus).then_some(best)
}

/// Highest-margin scaling the search reaches, feasible or not. `None` only
/// when some competitor equals 1 (an empty region).
pub(crate) fn search_best(mus: &[Complex64], seed: u64) -> Option<SpectralScaling> {
    if mus
        .iter()
        .any(|&mu| lambda_region(mu).kind == RegionKind::Empty)
    {
        return None;
    }
    if mus.is_empty() {
        return Some(SpectralScaling {
            lambda: ONE,
            margin: 1.0,
        });
    }

    let mut best = SpectralScaling {
        lambda: Complex64::new(0.0, 0.0),
        margin: f64::NEG_INFINITY,
    };
    let mut consider = |lambda: Complex64| {
        if lambda.is_finite() {
            let s = SpectralScaling::at(lambda, mus);
            if s.preference(&best) == Ordering::Greater {
                best = s;
            }
        }
    };

    // Closed forms: each −1/μᵢ silences one competitor outright.
    for &mu in mus {
        if mu.norm() > 0.0 {
            consider(-mu.inv());
        }
    }
    if let [mu2, mu3] = mus {
        for lambda in quadrangle_case_lambda(*mu2, *mu3) {
            consider(lambda);
        }
    }

    let ratio = (GRID_MAX_RADIUS / GRID_MIN_RADIUS).powf(1.0 / (GRID_RINGS - 1) as f64);
    for ring in 0..GRID_RINGS {
        let radius = GRID_MIN_RADIUS * ratio.powi(ring as i32);
        for k in 0..GRID_ANGLES {
            consider(Complex64::from_polar(
                radius,
                TAU * k as f64 / GRID_ANGLES as f64,
            ));
        }
    }

    Some(refine(best, mus, seed))
}

/// Randomized local ascent with an adaptive step, seeded for reproducibility.
fn refine(start: SpectralScaling, mus: &[Complex64], seed: u64) -> SpectralScaling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = start;
    let mut step = 0.25 * best.lambda.norm().max(GRID_MIN_RADIUS);
    for _ in 0..REFINE_ITERATIONS {
        if step < 1e-13 * (1.0 + best.lambda.norm()) {
            break;
        }
        let offset = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        let trial = SpectralScaling::at(best.lambda + offset * step, mus);
        if trial.preference(&best) == Ordering::Greater {
            best = trial;
            step *= 1.5;
        } else {
            step *= 0.9;
        }
    }
    best
}
