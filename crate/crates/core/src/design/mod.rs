//! Weights for a prescribed limit polygon.
//!
//! For a target `v`, the auxiliary weights `w̃ᵢ = vᵢ / (vᵢ₊₁ − vᵢ)` make `v` an
//! eigenvector of `M̃` with eigenvalue 2. Scaling every weight by λ keeps the
//! eigenvectors and maps each eigenvalue `1 + μ` of `M̃` to `1 + λμ`; the
//! target's own becomes `1 + λ`. The design problem is to pick λ so that
//! `|1 + λ| > |1 + λμᵢ|` for every competitor, which makes `v` the limit shape
//! of the iteration for almost every start.
//!
//! With the target anchored (`v₀ = 0`) the weight `w̃₀` vanishes, so the
//! competitors are available in closed form: `μᵢ = −w̃ᵢ` for `i = 1, …, n−2`.
//!
//! Any vertex can serve as the anchor. The competitors, and with them the
//! best reachable convergence rate, depend on that choice, so
//! [`design_general`] tries every vertex and keeps the best.

mod quadrangle;
mod region;
mod search;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{translate_to_anchor, vector_norm, Polygon};
use crate::transform::{apply_step, WeightVector};

pub use quadrangle::quadrangle_case_lambda;
pub use region::{
    direct_dominance, lambda_region, region_contains, LambdaRegion, RegionKind,
    UNIT_MODULUS_TOLERANCE,
};
pub use search::{margin, search_lambda, SpectralScaling};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Consecutive vertices closer than this fraction of the diameter count as
/// duplicates.
pub const DUPLICATE_VERTEX_TOLERANCE: f64 = 1e-12;
/// Competitors this close to 1 tie with the target for every λ.
pub const COLLISION_TOLERANCE: f64 = 1e-10;
/// Below this modulus the triangle's competing eigenvalue counts as zero.
pub const ZERO_COMPETITOR_TOLERANCE: f64 = 1e-14;
/// A later anchor replaces an earlier one only if it improves the margin by
/// more than this, so near-ties resolve to the lowest vertex index.
pub const ANCHOR_MARGIN_TOLERANCE: f64 = 1e-9;

/// `w̃ᵢ = vᵢ / (vᵢ₊₁ − vᵢ)` for a target polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxWeights {
    w_tilde: Vec<Complex64>,
}

impl AuxWeights {
    pub fn as_slice(&self) -> &[Complex64] {
        &self.w_tilde
    }

    pub fn len(&self) -> usize {
        self.w_tilde.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w_tilde.is_empty()
    }

    pub fn to_weights(&self) -> Result<WeightVector> {
        WeightVector::new(self.w_tilde.clone())
    }

    pub fn scaled(&self, lambda: Complex64) -> Result<WeightVector> {
        WeightVector::new(self.w_tilde.iter().map(|&w| lambda * w).collect())
    }
}

pub fn aux_weights(v: &Polygon) -> Result<AuxWeights> {
    let threshold = DUPLICATE_VERTEX_TOLERANCE * v.diameter();
    let n = v.len();
    let mut w_tilde = Vec::with_capacity(n);
    for i in 0..n {
        let gap = v.vertex(i + 1) - v.vertex(i);
        if gap.norm() <= threshold {
            return Err(Error::DuplicateConsecutiveVertices { index: i });
        }
        w_tilde.push(v.vertex(i) / gap);
    }
    Ok(AuxWeights { w_tilde })
}

/// `‖M̃v − 2v‖ / ‖v‖`, which vanishes when `wt` was built from `v`.
pub fn verify_target_eigen(v: &Polygon, wt: &AuxWeights) -> Result<f64> {
    let image = apply_step(v, &wt.to_weights()?)?;
    let diff: Vec<Complex64> = image
        .vertices()
        .iter()
        .zip(v.vertices())
        .map(|(a, b)| a - 2.0 * b)
        .collect();
    Ok(vector_norm(&diff) / v.norm())
}

/// Competing eigenvalues `μᵢ = −w̃ᵢ`, `i = 1, …, n−2`, of `M̃ − I` for an
/// anchored target.
///
/// The two excluded roots are 0 (all-ones vector) and `−w̃ₙ₋₁ = 1` (the target).
pub fn competing_mus(v_anchored: &Polygon) -> Result<Vec<Complex64>> {
    if v_anchored.vertex(0) != Complex64::new(0.0, 0.0) {
        return Err(Error::NotAnchored);
    }
    let wt = aux_weights(v_anchored)?;
    collect_competitors(&wt)
}

fn collect_competitors(wt: &AuxWeights) -> Result<Vec<Complex64>> {
    let n = wt.len();
    let mus: Vec<Complex64> = wt.as_slice()[1..n - 1].iter().map(|&w| -w).collect();
    if let Some(k) = mus
        .iter()
        .position(|&mu| (mu - ONE).norm() <= COLLISION_TOLERANCE)
    {
        return Err(Error::TargetEigenvalueCollision { index: k + 1 });
    }
    Ok(mus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DesignStatus {
    Feasible,
    /// The search found no λ in the intersection of regions; the result holds
    /// the best scaling it reached.
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignResult {
    pub weights: WeightVector,
    pub lambda: Complex64,
    /// Eigenvalue `1 + λ` of the target.
    pub dominant: Complex64,
    /// Eigenvalues `1 + λμᵢ` that compete with the target.
    pub competing: Vec<Complex64>,
    /// The `μᵢ` the competitors come from.
    pub mus: Vec<Complex64>,
    /// `maxᵢ |1 + λμᵢ| / |1 + λ|`: expected per-step contraction of the shape error.
    pub predicted_rate: f64,
    pub margin: f64,
    pub status: DesignStatus,
    /// Vertex moved to the origin before building the auxiliary weights; its
    /// weight is zero.
    pub anchor: usize,
}

impl DesignResult {
    /// The region of admissible λ for each competitor.
    pub fn regions(&self) -> Vec<LambdaRegion> {
        self.mus.iter().map(|&mu| lambda_region(mu)).collect()
    }

    pub fn is_feasible(&self) -> bool {
        self.status == DesignStatus::Feasible
    }
}

/// One-step design for triangles.
///
/// The competing eigenvalue of `M̃ − I` is `μ = Σ w̃ᵢw̃ᵢ₊₁`; with `λ = −1/μ` it
/// maps to 0, so a single step sends any triangle to the target's shape.
/// The target is anchored first, like every other design.
pub fn design_triangle(v: &Polygon) -> Result<DesignResult> {
    if v.len() != 3 {
        return Err(Error::NotATriangle { len: v.len() });
    }
    let wt = aux_weights(&translate_to_anchor(v))?;
    let w = wt.as_slice();
    let mu = w[0] * w[1] + w[1] * w[2] + w[2] * w[0];
    if mu.norm() < ZERO_COMPETITOR_TOLERANCE {
        return Err(Error::ZeroCompetingEigenvalue);
    }
    if (mu - ONE).norm() <= COLLISION_TOLERANCE {
        return Err(Error::TargetEigenvalueCollision { index: 1 });
    }
    let lambda = -mu.inv();
    let mut weights = wt.scaled(lambda)?.as_slice().to_vec();
    weights[0] = Complex64::new(0.0, 0.0);
    Ok(DesignResult {
        weights: WeightVector::new(weights)?,
        lambda,
        dominant: ONE + lambda,
        competing: vec![Complex64::new(0.0, 0.0)],
        mus: vec![mu],
        predicted_rate: 0.0,
        margin: 1.0,
        status: DesignStatus::Feasible,
        anchor: 0,
    })
}

/// Designs weights for any target with at least three vertices.
///
/// Triangles use the closed form of [`design_triangle`]. For larger targets
/// each vertex in turn is taken as the anchor, its competitors computed in
/// closed form, and λ chosen by the margin search of [`search_lambda`] (which
/// also tries the quadrangle table for `n = 4`). The anchor with the largest
/// margin wins; anchors whose competitors collide with the target are
/// skipped, and if all of them collide the first collision is reported.
pub fn design_general(v: &Polygon, seed: u64) -> Result<DesignResult> {
    if v.len() == 3 {
        return design_triangle(v);
    }
    let mut best: Option<DesignResult> = None;
    let mut first_error = None;
    for anchor in 0..v.len() {
        match design_anchored(v, anchor, seed) {
            Ok(d) => {
                let better = match &best {
                    None => true,
                    Some(b) => d.margin > b.margin + ANCHOR_MARGIN_TOLERANCE,
                };
                if better {
                    best = Some(d);
                }
            }
            Err(e @ Error::TargetEigenvalueCollision { .. }) => {
                first_error.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    best.ok_or_else(|| first_error.expect("at least one anchor was tried"))
}

/// Design with vertex `anchor` moved to the origin.
///
/// The polygon is rotated so that the anchor comes first, designed there, and
/// the weights rotated back, so `weights[anchor]` is zero. Error indices refer
/// to the rotated polygon.
pub fn design_anchored(v: &Polygon, anchor: usize, seed: u64) -> Result<DesignResult> {
    let n = v.len();
    if anchor >= n {
        return Err(Error::IndexOutOfRange {
            index: anchor,
            len: n,
        });
    }
    let rotated = Polygon::new((0..n).map(|k| v.vertex(anchor + k)).collect())?;
    let wt = aux_weights(&translate_to_anchor(&rotated))?;
    let mus = collect_competitors(&wt)?;
    let scaling = search::search_best(&mus, seed)
        .expect("competitors equal to 1 are rejected before the search");
    let lambda = scaling.lambda;
    let dominant = ONE + lambda;
    let competing: Vec<Complex64> = mus.iter().map(|&mu| ONE + lambda * mu).collect();
    let predicted_rate = competing.iter().map(|c| c.norm()).fold(0.0, f64::max) / dominant.norm();
    let status = if scaling.is_feasible(&mus) {
        DesignStatus::Feasible
    } else {
        DesignStatus::Infeasible
    };
    let scaled = wt.scaled(lambda)?;
    let mut weights: Vec<Complex64> = (0..n)
        .map(|i| scaled.as_slice()[(i + n - anchor) % n])
        .collect();
    // λ·0 can come out as −0.
    weights[anchor] = Complex64::new(0.0, 0.0);
    let weights = WeightVector::new(weights)?;
    Ok(DesignResult {
        weights,
        lambda,
        dominant,
        competing,
        mus,
        predicted_rate,
        margin: scaling.margin,
        status,
        anchor,
    })
}
