//! Linear polygon transformations in the complex plane, and the design of
//! edge weights that drive every starting polygon towards a chosen shape.
//!
//! A polygon is a vector `z ∈ ℂⁿ`. One step of the transformation moves each
//! vertex along its outgoing edge by a complex weight,
//! `zᵢ ↦ zᵢ + wᵢ(zᵢ₊₁ − zᵢ)`. Iterating converges, in shape, to the dominant
//! eigenvector of the transition matrix. [`design`] runs this backwards: given
//! a target polygon it builds weights for which the target is that dominant
//! eigenvector.
//!
//! ```
//! use polyshape::{design, geometry::Polygon, transform};
//!
//! let target = Polygon::from_pairs(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])?;
//! let result = design::design_general(&target, 0)?;
//! assert!(result.predicted_rate < 1.0);
//!
//! let start = Polygon::from_pairs(&[(0.3, -2.0), (1.0, 0.4), (-0.5, 0.1), (2.0, 2.0)])?;
//! let trajectory = transform::iterate(&start, &result.weights, 80, Some(&target))?;
//! assert!(trajectory.last().distance_to_target.unwrap() < 1e-8);
//! # Ok::<(), polyshape::Error>(())
//! ```

pub mod design;
mod error;
pub mod geometry;
pub mod spectral;
pub mod transform;

pub use error::{Error, Result};
pub use geometry::{Polygon, Shape};
pub use transform::{Trajectory, WeightVector};
