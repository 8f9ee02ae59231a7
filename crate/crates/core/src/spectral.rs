//! Spectrum of the transition matrix.
//!
//! The characteristic polynomial of `M − I` has the compact form
//! `p(x) = ∏(x + wᵢ) − ∏wᵢ`, so `p(0) = 0` for every weight vector: the
//! all-ones vector is always an eigenvector of `M` with eigenvalue 1.
//!
//! When some weight vanishes the remaining roots are `−wᵢ` and the
//! eigenvectors follow from a one-term recurrence. Otherwise the roots are
//! found numerically with a simultaneous (Aberth–Ehrlich) iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::vector_norm;
use crate::transform::{build_transition, WeightVector};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Roots closer than this (relative to `1 + |root|`) are treated as clustered.
pub const CLUSTER_TOLERANCE: f64 = 1e-10;
/// Stop updating a root once its Aberth correction is this small.
pub const ROOT_STEP_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 500;
/// Accepted backward error `|p(x)| / (1 + Σ|cₖ||x|ᵏ)` of a root `x = μ − 1`.
pub const ROOT_RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Monic characteristic polynomial of `M − I`, coefficients in ascending
/// order (`coefficients[k]` multiplies `x^k`).
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    coefficients: Vec<Complex64>,
}

impl CharPoly {
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        horner(&self.coefficients, x)
    }

    pub fn max_coefficient_modulus(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// `|p(x)|` relative to `1 + Σ|cₖ||x|ᵏ`, the scale of the rounding error
    /// committed when evaluating `p` at `x`.
    pub fn relative_residual(&self, x: Complex64) -> f64 {
        let abs: Vec<f64> = self.coefficients.iter().map(|c| c.norm()).collect();
        self.eval(x).norm() / (1.0 + horner_abs(&abs, x.norm()))
    }
}

fn horner(coefficients: &[Complex64], x: Complex64) -> Complex64 {
    coefficients.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
}

/// Expands `∏(x + wᵢ) − ∏wᵢ`.
pub fn char_poly(w: &WeightVector) -> CharPoly {
    let mut coefficients = vec![ONE];
    for &wi in w.as_slice() {
        // Multiply by (x + wᵢ).
        let mut next = vec![ZERO; coefficients.len() + 1];
        for (k, &c) in coefficients.iter().enumerate() {
            next[k] += c * wi;
            next[k + 1] += c;
        }
        coefficients = next;
    }
    // The constant term of the product is exactly ∏wᵢ, which is subtracted.
    coefficients[0] = ZERO;
    CharPoly { coefficients }
}

/// `det(xI − (M − I))` from the dense matrix, by Gaussian elimination with
/// partial pivoting. Independent of [`char_poly`]; meant for cross-checks on
/// small sizes.
pub fn char_poly_oracle(w: &WeightVector, x: Complex64) -> Complex64 {
    let dense = build_transition(w).to_dense();
    let n = dense.len();
    let mut a: Vec<Vec<Complex64>> = dense
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &m)| {
                    let identity = if i == j { ONE } else { ZERO };
                    x * identity - (m - identity)
                })
                .collect()
        })
        .collect();

    let mut det = ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r][col].norm().total_cmp(&a[s][col].norm()))
            .unwrap();
        if a[pivot][col] == ZERO {
            return ZERO;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let factor = a[r][col] / p;
            if factor == ZERO {
                continue;
            }
            for k in col..n {
                let v = a[col][k];
                a[r][k] -= factor * v;
            }
        }
    }
    det
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    ClosedForm,
    Numeric,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Numeric => "numeric",
        }
    }
}

/// One eigenvalue of `M` together with how it was obtained and its
/// relative polynomial residual (see [`CharPoly::relative_residual`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub value: Complex64,
    pub provenance: Provenance,
    pub residual: f64,
}

/// The eigenvalues of `M` as a multiset. Always contains 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigenvalue>,
}

impl Spectrum {
    pub fn values(&self) -> Vec<Complex64> {
        self.eigenvalues.iter().map(|e| e.value).collect()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// An eigenvector of `M` with its eigenvalue and relative residual
/// `‖M v − μ v‖ / ‖v‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub mu_of_m: Complex64,
    pub vector: Vec<Complex64>,
    pub residual: f64,
}

/// Position of the first exactly-zero weight.
fn anchor_index(w: &WeightVector) -> Option<usize> {
    w.as_slice().iter().position(|&x| x == ZERO)
}

/// Closed-form spectrum `{1} ∪ {1 − wᵢ}` for weight vectors with a zero entry.
///
/// The list starts with the eigenvalue 1 of the zero weight, followed by the
/// others in cyclic order after it.
pub fn eigenvalues_case1(w: &WeightVector) -> Result<Spectrum> {
    let r = anchor_index(w).ok_or(Error::NoZeroWeight)?;
    let n = w.len();
    let poly = char_poly(w);
    let eigenvalues = (0..n)
        .map(|offset| {
            let value = ONE - w.as_slice()[(r + offset) % n];
            Eigenvalue {
                value,
                provenance: Provenance::ClosedForm,
                residual: poly.relative_residual(value - ONE),
            }
        })
        .collect();
    Ok(Spectrum { eigenvalues })
}

/// Closed-form eigenvector for the eigenvalue `1 − w[k]` (0-based `k`).
///
/// The weights are rotated so that the first zero weight sits at position 0;
/// there the vector reads `(0, 1, (w₁−wₖ)/w₁, …, ∏ⱼ₌₁^{k−1} (wⱼ−wₖ)/wⱼ, 0, …)`
/// and is rotated back afterwards. For `k` at the zero weight itself the
/// eigenvalue is 1 and the all-ones vector is returned.
pub fn eigenvector_case1(w: &WeightVector, k: usize) -> Result<EigenPair> {
    let n = w.len();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let r = anchor_index(w).ok_or(Error::NoZeroWeight)?;
    let weights = w.as_slice();
    let wk = weights[k];
    let mu = ONE - wk;

    let vector = if k == r {
        vec![ONE; n]
    } else {
        // Roots of p are −wⱼ, so clustering of eigenvalues is clustering of weights.
        let scale = CLUSTER_TOLERANCE * (1.0 + wk.norm());
        if weights
            .iter()
            .enumerate()
            .any(|(j, &wj)| j != k && (wj - wk).norm() <= scale)
        {
            return Err(Error::DegenerateSpectrum { index: k });
        }
        let steps = (k + n - r) % n;
        let mut rotated = vec![ZERO; n];
        rotated[1] = ONE;
        for offset in 1..steps {
            let j = (r + offset) % n;
            let wj = weights[j];
            if wj == ZERO {
                return Err(Error::ZeroDivision { index: j });
            }
            rotated[offset + 1] = rotated[offset] * (wj - wk) / wj;
        }
        let mut v = vec![ZERO; n];
        for (offset, value) in rotated.into_iter().enumerate() {
            v[(r + offset) % n] = value;
        }
        v
    };

    let image = build_transition(w).apply(&vector)?;
    let diff: Vec<Complex64> = image.iter().zip(&vector).map(|(a, b)| a - mu * b).collect();
    let residual = vector_norm(&diff) / vector_norm(&vector);
    Ok(EigenPair {
        mu_of_m: mu,
        vector,
        residual,
    })
}

/// All eigenvalues of `M` from the roots of the characteristic polynomial.
///
/// The exactly-zero low-order coefficients are divided out first (each is a
/// root `x = 0`, eigenvalue 1, known exactly); the remaining factor is solved
/// with [`polynomial_roots`].
pub fn eigenvalues_general(w: &WeightVector) -> Result<Spectrum> {
    let poly = char_poly(w);
    let coefficients = poly.coefficients();
    let zeros = coefficients.iter().take_while(|&&c| c == ZERO).count();
    let roots = polynomial_roots(&coefficients[zeros..])?;

    let mut eigenvalues: Vec<Eigenvalue> = (0..zeros)
        .map(|_| Eigenvalue {
            value: ONE,
            provenance: Provenance::ClosedForm,
            residual: 0.0,
        })
        .collect();
    let mut numeric = Vec::with_capacity(roots.len());
    for x in roots {
        let residual = poly.relative_residual(x);
        if !(residual <= ROOT_RESIDUAL_TOLERANCE) {
            return Err(Error::ConvergenceFailure {
                sweeps: MAX_SWEEPS,
                residual,
            });
        }
        numeric.push(Eigenvalue {
            value: ONE + x,
            provenance: Provenance::Numeric,
            residual,
        });
    }
    numeric.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    eigenvalues.extend(numeric);
    Ok(Spectrum { eigenvalues })
}

/// Spectrum via the closed form when a weight is exactly zero, numerically
/// otherwise.
pub fn spectrum(w: &WeightVector) -> Result<Spectrum> {
    match eigenvalues_case1(w) {
        Ok(s) => Ok(s),
        Err(Error::NoZeroWeight) => eigenvalues_general(w),
        Err(e) => Err(e),
    }
}

/// Roots of the polynomial with ascending `coefficients` (nonzero leading
/// coefficient) by the Aberth–Ehrlich method.
///
/// Starting points lie on the circle of radius `1 + max |cₖ/c_d|` at fixed
/// angles, so the result depends only on the coefficients.
pub fn polynomial_roots(coefficients: &[Complex64]) -> Result<Vec<Complex64>> {
    let degree = coefficients.len().saturating_sub(1);
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coefficients[degree];
    let monic: Vec<Complex64> = coefficients.iter().map(|&c| c / lead).collect();
    if degree == 1 {
        return Ok(vec![-monic[0]]);
    }
    let derivative: Vec<Complex64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect();
    let abs_coefficients: Vec<f64> = monic.iter().map(|c| c.norm()).collect();

    let radius = 1.0 + abs_coefficients.iter().cloned().fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut done = vec![false; degree];

    for _ in 0..MAX_SWEEPS {
        for k in 0..degree {
            if done[k] {
                continue;
            }
            let z = roots[k];
            let value = horner(&monic, z);
            // Rounding-error bound of the Horner evaluation.
            let noise = 4.0 * f64::EPSILON * horner_abs(&abs_coefficients, z.norm());
            if value.norm() <= noise {
                done[k] = true;
                continue;
            }
            let slope = horner(&derivative, z);
            let repulsion: Complex64 = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &zj)| {
                    let d = z - zj;
                    if d == ZERO {
                        ZERO
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denominator = slope - value * repulsion;
            if denominator == ZERO || !denominator.is_finite() {
                continue;
            }
            let correction = value / denominator;
            roots[k] = z - correction;
            if correction.norm() <= ROOT_STEP_TOLERANCE * (1.0 + roots[k].norm()) {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(roots);
        }
    }
    // Clustered roots converge only linearly; accept them if they are
    // already roots to working accuracy.
    let residual = roots
        .iter()
        .map(|&z| horner(&monic, z).norm() / (1.0 + horner_abs(&abs_coefficients, z.norm())))
        .fold(0.0, f64::max);
    if residual <= ROOT_RESIDUAL_TOLERANCE {
        Ok(roots)
    } else {
        Err(Error::ConvergenceFailure {
            sweeps: MAX_SWEEPS,
            residual,
        })
    }
}

fn horner_abs(abs_coefficients: &[f64], r: f64) -> f64 {
    abs_coefficients
        .iter()
        .rev()
        .fold(0.0, |acc, &c| acc * r + c)
}
