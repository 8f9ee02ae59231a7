//! The edge-weighted polygon transformation and its iteration.
//!
//! Each vertex moves along its outgoing edge by a complex fraction of that
//! edge: `zᵢ ↦ zᵢ + wᵢ(zᵢ₊₁ − zᵢ)`. In matrix form this is `z ↦ M z` with a
//! cyclic bidiagonal `M` whose rows sum to one.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{self, Polygon, Shape};

/// Complex edge weights `w ∈ ℂⁿ`, one per vertex, with cyclic indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<Complex64>,
}

impl WeightVector {
    pub fn new(weights: Vec<Complex64>) -> Result<Self> {
        if weights.len() < 3 {
            return Err(Error::TooFewVertices { len: weights.len() });
        }
        if let Some(index) = weights.iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { weights })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(re, im)| Complex64::new(re, im))
                .collect(),
        )
    }

    /// Every edge uses the same weight.
    pub fn uniform(n: usize, w: Complex64) -> Result<Self> {
        Self::new(vec![w; n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.weights
    }

    /// Entrywise product `λ·w`.
    pub fn scaled(&self, lambda: Complex64) -> Result<Self> {
        Self::new(self.weights.iter().map(|&w| lambda * w).collect())
    }

    /// Signed projection distance of weight `i`: how far along the edge, in
    /// units of edge length, the image point projects.
    pub fn projection(&self, i: usize) -> f64 {
        self.weights[i].re
    }

    /// Angle between edge `i` and the ray from `zᵢ` to its image.
    pub fn angle(&self, i: usize) -> f64 {
        self.weights[i].arg()
    }
}

/// Weight of the classical λ-θ construction, `λ·e^{iθ}`, extended to any real
/// `λ` and any angle.
pub fn lambda_theta_weight(lambda: f64, theta: f64) -> Complex64 {
    Complex64::from_polar(lambda, theta)
}

/// The transition matrix, held implicitly through its weights.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    weights: WeightVector,
}

impl TransitionMatrix {
    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Dense row-major form: row `i` carries `1 − wᵢ` on the diagonal and `wᵢ`
    /// in column `i + 1 (mod n)`.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let n = self.dim();
        let one = Complex64::new(1.0, 0.0);
        (0..n)
            .map(|i| {
                let w = self.weights.weights[i];
                let mut row = vec![Complex64::new(0.0, 0.0); n];
                row[i] += one - w;
                row[(i + 1) % n] += w;
                row
            })
            .collect()
    }

    /// `M·z` in linear time.
    pub fn apply(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim();
        if z.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: z.len(),
            });
        }
        Ok(apply_raw(&self.weights.weights, z))
    }
}

pub fn build_transition(w: &WeightVector) -> TransitionMatrix {
    TransitionMatrix { weights: w.clone() }
}

fn apply_raw(w: &[Complex64], z: &[Complex64]) -> Vec<Complex64> {
    let n = z.len();
    (0..n)
        .map(|i| z[i] + w[i] * (z[(i + 1) % n] - z[i]))
        .collect()
}

/// One application of the transformation.
pub fn apply_step(p: &Polygon, w: &WeightVector) -> Result<Polygon> {
    if p.len() != w.len() {
        return Err(Error::SizeMismatch {
            expected: p.len(),
            found: w.len(),
        });
    }
    Polygon::new(apply_raw(w.as_slice(), p.vertices()))
}

/// One recorded iterate.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub step: usize,
    pub shape: Shape,
    /// Sum of the logarithms of the centered norms seen so far, i.e. the
    /// log-magnitude the raw iterate would have had without renormalization.
    pub log_scale: f64,
    pub distance_to_target: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub frames: Vec<Frame>,
    /// Set when an iterate lost its shape (collapsed to the point polygon)
    /// before the requested number of steps; the frames stop there.
    pub collapsed: bool,
}

impl Trajectory {
    pub fn last(&self) -> &Frame {
        self.frames
            .last()
            .expect("a trajectory always holds its initial frame")
    }
}

/// Fraction of the previous (unit) norm below which an iterate counts as
/// collapsed.
pub const COLLAPSE_TOLERANCE: f64 = 1e-14;

/// Runs `steps` applications of `M` starting from `p0`.
///
/// Every iterate is centered and rescaled to unit norm before the next step,
/// so only the shape is carried forward and the magnitude survives as
/// `log_scale`. Centering commutes with `M` up to a multiple of `𝟙`, which
/// makes each frame the exact shape of `Mᵏ p0`.
pub fn iterate(
    p0: &Polygon,
    w: &WeightVector,
    steps: usize,
    target: Option<&Polygon>,
) -> Result<Trajectory> {
    if p0.len() != w.len() {
        return Err(Error::SizeMismatch {
            expected: p0.len(),
            found: w.len(),
        });
    }
    let target_unit = match target {
        Some(t) if t.len() != p0.len() => {
            return Err(Error::SizeMismatch {
                expected: p0.len(),
                found: t.len(),
            })
        }
        Some(t) => Some(geometry::normalize_shape(t)?),
        None => None,
    };
    let distance = |shape: &Shape| {
        target_unit
            .as_ref()
            .map(|t| geometry::aligned_distance(shape.vertices(), t.vertices()))
    };

    let first = geometry::normalize_shape(p0)?;
    let mut log_scale = geometry::center(p0.vertices()).1.ln();
    let mut frames = Vec::with_capacity(steps + 1);
    frames.push(Frame {
        step: 0,
        distance_to_target: distance(&first),
        shape: first,
        log_scale,
    });

    let mut collapsed = false;
    for step in 1..=steps {
        let current = frames.last().unwrap().shape.vertices();
        let (centered, norm) = geometry::center(&apply_raw(w.as_slice(), current));
        if !(norm > COLLAPSE_TOLERANCE) || !norm.is_finite() {
            collapsed = true;
            break;
        }
        log_scale += norm.ln();
        let shape = Shape::from_unit(geometry::canonical_phase(centered, norm));
        frames.push(Frame {
            step,
            distance_to_target: distance(&shape),
            shape,
            log_scale,
        });
    }
    Ok(Trajectory { frames, collapsed })
}
