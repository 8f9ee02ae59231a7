//! Polygons as complex vectors and their shape up to similarity.
//!
//! A polygon with `n` vertices is a vector `z ∈ ℂⁿ` with cyclic indexing.
//! Two polygons have the same *shape* when one is obtained from the other by
//! a translation and a nonzero complex scaling (rotation plus dilation).
//! Reflections are not identified.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Centered vertex vectors whose norm falls below this fraction of the
/// vertex-set diameter are treated as the point polygon.
pub const DEGENERACY_TOLERANCE: f64 = 1e-14;

/// Relative tolerance used when breaking ties for the canonical phase.
const PHASE_TIE_TOLERANCE: f64 = 1e-12;

/// An ordered, cyclic list of at least three finite complex vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Complex64>,
}

impl Polygon {
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices {
                len: vertices.len(),
            });
        }
        if let Some(index) = vertices.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { vertices })
    }

    /// Builds a polygon from `(re, im)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(re, im)| Complex64::new(re, im))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Complex64> {
        self.vertices
    }

    /// Vertex `i` with cyclic indexing, so `vertex(n) == vertex(0)`.
    pub fn vertex(&self, i: usize) -> Complex64 {
        self.vertices[i % self.vertices.len()]
    }

    /// The polygon `alpha·z + beta·𝟙`.
    pub fn similar(&self, alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&z| alpha * z + beta).collect())
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0_f64;
        for (i, &a) in self.vertices.iter().enumerate() {
            for &b in &self.vertices[i + 1..] {
                best = best.max((a - b).norm());
            }
        }
        best
    }

    /// Euclidean norm of the vertex vector.
    pub fn norm(&self) -> f64 {
        vector_norm(&self.vertices)
    }
}

/// A polygon reduced to its shape: centered, unit Euclidean norm, and rotated
/// so that the centered vertex of largest modulus lies on the positive real
/// axis (lowest index wins ties).
#[derive(Debug, Clone, PartialEq)]
pub struct Shape {
    vertices: Vec<Complex64>,
}

impl Shape {
    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub(crate) fn from_unit(vertices: Vec<Complex64>) -> Self {
        Self { vertices }
    }

    /// The shape's representative as an ordinary polygon.
    pub fn to_polygon(&self) -> Polygon {
        Polygon {
            vertices: self.vertices.clone(),
        }
    }
}

pub(crate) fn vector_norm(v: &[Complex64]) -> f64 {
    // Scaled accumulation so that huge or tiny entries do not overflow.
    let scale = v
        .iter()
        .map(|z| z.re.abs().max(z.im.abs()))
        .fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 = v.iter().map(|z| (z / scale).norm_sqr()).sum();
    scale * sum.sqrt()
}

/// Arithmetic mean of the vertices.
pub fn centroid(p: &Polygon) -> Complex64 {
    let sum: Complex64 = p.vertices.iter().sum();
    sum / p.len() as f64
}

/// Subtracts the mean and returns the centered vertices with their norm.
pub(crate) fn center(v: &[Complex64]) -> (Vec<Complex64>, f64) {
    let mean = v.iter().sum::<Complex64>() / v.len() as f64;
    let centered: Vec<Complex64> = v.iter().map(|&z| z - mean).collect();
    let norm = vector_norm(&centered);
    (centered, norm)
}

/// Centers, scales to unit norm and fixes the canonical phase.
pub fn normalize_shape(p: &Polygon) -> Result<Shape> {
    let (centered, norm) = center(&p.vertices);
    if norm == 0.0 || norm <= DEGENERACY_TOLERANCE * p.diameter() {
        return Err(Error::DegeneratePolygon);
    }
    Ok(Shape {
        vertices: canonical_phase(centered, norm),
    })
}

/// Divides by `norm` and rotates so the lead vertex is a nonnegative real.
pub(crate) fn canonical_phase(mut centered: Vec<Complex64>, norm: f64) -> Vec<Complex64> {
    for z in centered.iter_mut() {
        *z /= norm;
    }
    let max_modulus = centered.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lead = centered
        .iter()
        .position(|z| z.norm() >= max_modulus - PHASE_TIE_TOLERANCE)
        .unwrap_or(0);
    let lead_value = centered[lead];
    let rotation = lead_value.conj() / lead_value.norm();
    for z in centered.iter_mut() {
        *z *= rotation;
    }
    centered[lead] = Complex64::new(centered[lead].re.max(0.0), 0.0);
    centered
}

/// Distance between the shapes of two polygons.
///
/// Both polygons are centered and scaled to unit norm; the remaining phase is
/// aligned in closed form through the Hermitian inner product, and the
/// Euclidean distance of the aligned vectors is returned. The value lies in
/// `[0, √2]`, is symmetric, and vanishes exactly when the polygons agree up to
/// translation and nonzero complex scaling.
pub fn shape_distance(p: &Polygon, q: &Polygon) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    let a = unit_centered(p)?;
    let b = unit_centered(q)?;
    Ok(aligned_distance(&a, &b))
}

/// Shape distance between two vectors that are already centered with unit
/// norm (for instance [`Shape`] vertices).
pub(crate) fn aligned_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let inner: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
    let modulus = inner.norm();
    let phase = if modulus > 0.0 {
        inner / modulus
    } else {
        Complex64::new(1.0, 0.0)
    };
    // Evaluating the residual directly keeps full relative accuracy for
    // nearly equal shapes, where 2 - 2|<a,b>| would cancel.
    let residual: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - phase * y).collect();
    vector_norm(&residual)
}

fn unit_centered(p: &Polygon) -> Result<Vec<Complex64>> {
    let (centered, norm) = center(&p.vertices);
    if norm == 0.0 || norm <= DEGENERACY_TOLERANCE * p.diameter() {
        return Err(Error::DegeneratePolygon);
    }
    Ok(centered.into_iter().map(|z| z / norm).collect())
}

/// Translates the polygon so its first vertex is exactly the origin.
pub fn translate_to_anchor(p: &Polygon) -> Polygon {
    let anchor = p.vertices[0];
    let mut vertices: Vec<Complex64> = p.vertices.iter().map(|&z| z - anchor).collect();
    vertices[0] = Complex64::new(0.0, 0.0);
    Polygon { vertices }
}
