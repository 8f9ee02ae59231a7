//! The subcommands. Each writes its data to `out` and returns the exit code;
//! failures that stop the command early come back as [`CliError`].

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Args;
use num_complex::Complex64;
use polyshape::design::{design_general, lambda_region, DesignStatus};
use polyshape::geometry::shape_distance;
use polyshape::spectral::spectrum;
use polyshape::transform::iterate;
use polyshape::Error;

use crate::analysis::{fit_eigen, fitted_decay_rate, random_start, DECAY_WINDOW};
use crate::error::{exit, CliError};
use crate::formats::{self, number, parse_complex_arg};
use crate::svg;

/// Final distance below which `verify` succeeds.
pub const VERIFY_TOLERANCE: f64 = 1e-6;

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::new(exit::IO, format!("cannot write {}: {e}", path.display())))
}

fn check_sizes(what: &str, expected: usize, found: usize) -> Result<(), CliError> {
    if expected == found {
        Ok(())
    } else {
        Err(CliError::from_core(
            what,
            Error::SizeMismatch { expected, found },
        ))
    }
}

#[derive(Debug, Args)]
pub struct IterateArgs {
    /// Start polygon (JSON with a `vertices` array).
    pub polygon: PathBuf,
    /// Weights (JSON with a `weights` array).
    pub weights: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Target polygon; adds the shape distance to every record.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Also draw the normalized frames as SVG.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Trajectory output (JSON lines); standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_iterate(args: &IterateArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let start = formats::read_polygon(&args.polygon)?;
    let weights = formats::read_weights(&args.weights)?;
    check_sizes("weights", start.len(), weights.len())?;
    let target = args
        .target
        .as_deref()
        .map(formats::read_polygon)
        .transpose()?;
    if let Some(t) = &target {
        check_sizes("target", start.len(), t.len())?;
    }
    let trajectory = iterate(&start, &weights, args.steps, target.as_ref())
        .map_err(|e| CliError::from_core("iterate", e))?;

    let mut lines = String::new();
    for frame in &trajectory.frames {
        lines.push_str(&formats::frame_json(frame));
        lines.push('\n');
    }
    match &args.out {
        Some(path) => write_file(path, &lines)?,
        None => out.write_all(lines.as_bytes())?,
    }
    if let Some(path) = &args.svg {
        let frames: Vec<Vec<Complex64>> = trajectory
            .frames
            .iter()
            .map(|f| f.shape.vertices().to_vec())
            .collect();
        write_file(path, &svg::trajectory(&frames))?;
    }
    if trajectory.collapsed {
        eprintln!(
            "warning: the polygon collapsed to a point after step {}",
            trajectory.last().step
        );
    }
    Ok(exit::SUCCESS)
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Weights (JSON with a `weights` array).
    pub weights: PathBuf,
    /// Print a JSON array instead of one line per eigenvalue.
    #[arg(long)]
    pub json: bool,
}

pub fn run_spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let weights = formats::read_weights(&args.weights)?;
    let spectrum = spectrum(&weights).map_err(|e| CliError::from_core("spectrum", e))?;
    let mut text = String::new();
    if args.json {
        text.push('[');
        for (i, e) in spectrum.eigenvalues.iter().enumerate() {
            if i > 0 {
                text.push_str(", ");
            }
            write!(
                text,
                "{{\"re\": {}, \"im\": {}, \"provenance\": \"{}\", \"residual\": {}}}",
                number(e.value.re),
                number(e.value.im),
                e.provenance.as_str(),
                number(e.residual)
            )
            .unwrap();
        }
        text.push_str("]\n");
    } else {
        for e in &spectrum.eigenvalues {
            writeln!(
                text,
                "{} {} {} residual={}",
                number(e.value.re),
                number(e.value.im),
                e.provenance.as_str(),
                number(e.residual)
            )
            .unwrap();
        }
    }
    out.write_all(text.as_bytes())?;
    Ok(exit::SUCCESS)
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    /// Target polygon (JSON with a `vertices` array).
    pub target: PathBuf,
    /// Seed of the randomized refinement of λ.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Weights output; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print λ, the eigenvalues, the rate and the regions after the weights.
    #[arg(long)]
    pub report: bool,
}

pub fn run_design(args: &DesignArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let target = formats::read_polygon(&args.target)?;
    let design =
        design_general(&target, args.seed).map_err(|e| CliError::from_core("design", e))?;
    let weights = formats::weights_json(&design.weights);
    match &args.out {
        Some(path) => write_file(path, &weights)?,
        None => out.write_all(weights.as_bytes())?,
    }
    if args.report {
        let pair = |z: Complex64| format!("{} {}", number(z.re), number(z.im));
        let mut text = String::new();
        writeln!(
            text,
            "status {}",
            if design.is_feasible() {
                "feasible"
            } else {
                "infeasible"
            }
        )
        .unwrap();
        writeln!(text, "anchor {}", design.anchor).unwrap();
        writeln!(text, "lambda {}", pair(design.lambda)).unwrap();
        writeln!(text, "dominant {}", pair(design.dominant)).unwrap();
        for c in &design.competing {
            writeln!(text, "competing {}", pair(*c)).unwrap();
        }
        writeln!(text, "predicted_rate {}", number(design.predicted_rate)).unwrap();
        writeln!(text, "margin {}", number(design.margin)).unwrap();
        for region in design.regions() {
            writeln!(text, "region {region}").unwrap();
        }
        out.write_all(text.as_bytes())?;
    }
    match design.status {
        DesignStatus::Feasible => Ok(exit::SUCCESS),
        DesignStatus::Infeasible => {
            eprintln!(
                "design: no scaling found that makes the target dominant (best margin {:e}); weights are a best effort",
                design.margin
            );
            Ok(exit::INFEASIBLE)
        }
    }
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    /// Competing eigenvalue as `re,im`; repeat for several.
    #[arg(long = "mu", required = true, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    pub mus: Vec<Complex64>,
    /// Number of grid points over the sampled square.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Half-width of the sampled (and drawn) square of λ values.
    #[arg(long, default_value_t = 4.0)]
    pub extent: f64,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

/// Fraction of a `side × side` grid of cell centers over `[-extent, extent]²`
/// lying in every region.
pub fn intersection_fraction(mus: &[Complex64], samples: usize, extent: f64) -> (f64, usize) {
    let regions: Vec<_> = mus.iter().map(|&mu| lambda_region(mu)).collect();
    let side = ((samples as f64).sqrt().round() as usize).max(1);
    let cell = 2.0 * extent / side as f64;
    let mut inside = 0usize;
    for i in 0..side {
        for j in 0..side {
            let lambda = Complex64::new(
                -extent + (i as f64 + 0.5) * cell,
                -extent + (j as f64 + 0.5) * cell,
            );
            if regions.iter().all(|r| r.contains(lambda)) {
                inside += 1;
            }
        }
    }
    (inside as f64 / (side * side) as f64, side * side)
}

pub fn run_region(args: &RegionArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if !(args.extent.is_finite() && args.extent > 0.0) {
        return Err(CliError::parse("--extent must be a positive number"));
    }
    let mut text = String::new();
    for &mu in &args.mus {
        writeln!(text, "{}", lambda_region(mu)).unwrap();
    }
    let (fraction, count) = intersection_fraction(&args.mus, args.samples, args.extent);
    writeln!(text, "intersection fraction {fraction} of {count} samples").unwrap();
    out.write_all(text.as_bytes())?;
    if let Some(path) = &args.svg {
        let regions: Vec<_> = args.mus.iter().map(|&mu| lambda_region(mu)).collect();
        write_file(path, &svg::regions(&regions, args.extent))?;
    }
    Ok(exit::SUCCESS)
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub target: PathBuf,
    pub weights: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Seed of the random start polygon.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let target = formats::read_polygon(&args.target)?;
    let weights = formats::read_weights(&args.weights)?;
    check_sizes("weights", target.len(), weights.len())?;
    // Rejects degenerate targets before anything is computed.
    shape_distance(&target, &target).map_err(|e| CliError::from_core("target", e))?;

    let fit = fit_eigen(&target, &weights).map_err(|e| CliError::from_core("verify", e))?;
    let spectrum = spectrum(&weights).map_err(|e| CliError::from_core("spectrum", e))?;
    let dominant = dominates(fit.mu, &spectrum.values());

    let start = random_start(target.len(), args.seed);
    let trajectory = iterate(&start, &weights, args.steps, Some(&target))
        .map_err(|e| CliError::from_core("iterate", e))?;
    let distances: Vec<f64> = trajectory
        .frames
        .iter()
        .filter_map(|f| f.distance_to_target)
        .collect();
    let final_distance = if trajectory.collapsed {
        f64::INFINITY
    } else {
        *distances.last().unwrap()
    };
    let rate = fitted_decay_rate(&distances, DECAY_WINDOW);

    let mut text = String::new();
    writeln!(
        text,
        "eigenvalue {} {}",
        number(fit.mu.re),
        number(fit.mu.im)
    )
    .unwrap();
    writeln!(text, "eigen_residual {}", number(fit.residual)).unwrap();
    writeln!(text, "dominant {dominant}").unwrap();
    writeln!(text, "final_distance {}", number(final_distance)).unwrap();
    match rate {
        Some(r) => writeln!(text, "fitted_rate {}", number(r)).unwrap(),
        None => writeln!(text, "fitted_rate n/a").unwrap(),
    }
    out.write_all(text.as_bytes())?;

    if final_distance < VERIFY_TOLERANCE {
        Ok(exit::SUCCESS)
    } else {
        eprintln!("verify: final distance {final_distance:e} is not below {VERIFY_TOLERANCE:e}");
        Ok(exit::VERIFY_FAILED)
    }
}

/// Whether `mu` is strictly larger in modulus than every eigenvalue other
/// than itself and the eigenvalue 1 of the all-ones vector.
pub fn dominates(mu: Complex64, eigenvalues: &[Complex64]) -> bool {
    let mut rest = eigenvalues.to_vec();
    for remove in [Complex64::new(1.0, 0.0), mu] {
        if let Some(i) = (0..rest.len()).min_by(|&a, &b| {
            (rest[a] - remove)
                .norm()
                .total_cmp(&(rest[b] - remove).norm())
        }) {
            rest.swap_remove(i);
        }
    }
    rest.iter().all(|z| z.norm() < mu.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dominance_ignores_the_ones_eigenvalue() {
        assert!(dominates(
            c(0.0, 1.0),
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]
        ));
        assert!(!dominates(
            c(0.5, 0.0),
            &[c(1.0, 0.0), c(0.9, 0.0), c(0.5, 0.0)]
        ));
        // A tie is not dominance.
        assert!(!dominates(
            c(0.0, 1.0),
            &[c(1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0)]
        ));
    }

    #[test]
    fn fraction_counts() {
        assert_eq!(intersection_fraction(&[c(1.0, 0.0)], 100, 4.0), (0.0, 100));
        let (f, n) = intersection_fraction(&[c(0.0, 1.0), c(1.0, 1.0)], 10_000, 4.0);
        assert_eq!(n, 10_000);
        assert!(f > 0.0 && f < 1.0);
        // No competitors: everything is admissible.
        assert_eq!(intersection_fraction(&[], 16, 1.0).0, 1.0);
    }
}
