//! Sets of scalings λ for which the target eigenvalue `1 + λ` beats a
//! competitor `1 + λμ` in modulus.
//!
//! Expanding `|1+λ|² − |1+λμ|²` gives `2·Re(λ(1−μ)) + |λ|²(1 − |μ|²)`, so the
//! set is bounded by a circle through the origin with center
//! `ω = (1 − μ̄)/(|μ|² − 1)` when `|μ| ≠ 1` and by a line through the origin
//! with normal `1 − μ̄` when `|μ| = 1`.

use std::fmt;

use num_complex::Complex64;

/// Moduli within this distance of 1 are treated as lying on the unit circle.
pub const UNIT_MODULUS_TOLERANCE: f64 = 1e-12;

/// `|1+λ|² > |1+λμ|²`, evaluated literally. This is the reference every
/// geometric shortcut is checked against.
pub fn direct_dominance(lambda: Complex64, mu: Complex64) -> bool {
    let one = Complex64::new(1.0, 0.0);
    (one + lambda).norm_sqr() > (one + lambda * mu).norm_sqr()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionKind {
    /// `|λ − ω| > |ω|`, from `|μ| < 1`.
    CircleExterior,
    /// `Re(λ·conj(direction)) > 0`, from `|μ| = 1`, `μ ≠ 1`.
    HalfPlane,
    /// `|λ − ω| < |ω|`, from `|μ| > 1`.
    CircleInterior,
    /// `μ = 1`: the two eigenvalues coincide for every λ.
    Empty,
}

impl RegionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionKind::CircleExterior => "CircleExterior",
            RegionKind::HalfPlane => "HalfPlane",
            RegionKind::CircleInterior => "CircleInterior",
            RegionKind::Empty => "Empty",
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The admissible set of scalings for one competing eigenvalue `μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaRegion {
    pub kind: RegionKind,
    /// Circle center; the radius is `|omega|`.
    pub omega: Option<Complex64>,
    /// Inward normal `1 − μ̄` of the half-plane.
    pub direction: Option<Complex64>,
    pub mu: Complex64,
}

impl LambdaRegion {
    pub fn radius(&self) -> Option<f64> {
        self.omega.map(|w| w.norm())
    }

    pub fn contains(&self, lambda: Complex64) -> bool {
        region_contains(self, lambda)
    }
}

impl fmt::Display for LambdaRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.omega, self.direction) {
            (RegionKind::CircleExterior | RegionKind::CircleInterior, Some(w), _) => write!(
                f,
                "{} center ({},{}) radius {}",
                self.kind,
                w.re + 0.0,
                w.im + 0.0,
                w.norm()
            ),
            (RegionKind::HalfPlane, _, Some(d)) => {
                write!(f, "{} normal ({},{})", self.kind, d.re + 0.0, d.im + 0.0)
            }
            _ => write!(f, "{}", self.kind),
        }
    }
}

/// Classifies `μ` and returns its region.
pub fn lambda_region(mu: Complex64) -> LambdaRegion {
    let one = Complex64::new(1.0, 0.0);
    if (mu - one).norm() <= UNIT_MODULUS_TOLERANCE {
        return LambdaRegion {
            kind: RegionKind::Empty,
            omega: None,
            direction: None,
            mu,
        };
    }
    let modulus = mu.norm();
    if (modulus - 1.0).abs() <= UNIT_MODULUS_TOLERANCE {
        return LambdaRegion {
            kind: RegionKind::HalfPlane,
            omega: None,
            direction: Some(one - mu.conj()),
            mu,
        };
    }
    let omega = (one - mu.conj()) / (mu.norm_sqr() - 1.0);
    let kind = if modulus < 1.0 {
        RegionKind::CircleExterior
    } else {
        RegionKind::CircleInterior
    };
    LambdaRegion {
        kind,
        omega: Some(omega),
        direction: None,
        mu,
    }
}

/// Strict geometric membership.
pub fn region_contains(region: &LambdaRegion, lambda: Complex64) -> bool {
    match (region.kind, region.omega, region.direction) {
        (RegionKind::CircleExterior, Some(w), _) => power(lambda, w) > 0.0,
        (RegionKind::CircleInterior, Some(w), _) => power(lambda, w) < 0.0,
        (RegionKind::HalfPlane, _, Some(d)) => (lambda * d.conj()).re > 0.0,
        _ => false,
    }
}

/// `|λ − ω|² − |ω|²` without forming the squares of a possibly huge `ω`.
fn power(lambda: Complex64, omega: Complex64) -> f64 {
    lambda.norm_sqr() - 2.0 * (lambda * omega.conj()).re
}
