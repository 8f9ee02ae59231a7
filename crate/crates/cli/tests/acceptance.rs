//! Acceptance criteria, one line each. Run with
//! `cargo test -p polyshape-cli --test acceptance`.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;
use polyshape::design::{
    design_general, design_triangle, direct_dominance, lambda_region, region_contains,
};
use polyshape::geometry::shape_distance;
use polyshape::spectral::{
    char_poly, char_poly_oracle, eigenvalues_case1, eigenvalues_general, eigenvector_case1,
};
use polyshape::transform::{apply_step, iterate};
use polyshape::{Error, Polygon, WeightVector};
use polyshape_cli::analysis::{fitted_decay_rate, DECAY_WINDOW};
use polyshape_cli::formats::{parse_polygon, polygon_json};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn point(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    c(rng.random_range(-r..=r), rng.random_range(-r..=r))
}

fn polar(rng: &mut ChaCha8Rng, max: f64) -> Complex64 {
    Complex64::from_polar(rng.random_range(0.0..=max), rng.random_range(0.0..TAU))
}

fn polygon(rng: &mut ChaCha8Rng, n: usize) -> Polygon {
    Polygon::new((0..n).map(|_| point(rng, 1.0)).collect()).unwrap()
}

fn weights(rng: &mut ChaCha8Rng, n: usize) -> WeightVector {
    WeightVector::new((0..n).map(|_| point(rng, 1.5)).collect()).unwrap()
}

/// Largest distance in a greedy closest-first matching of two multisets.
fn multiset_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut pairs: Vec<(f64, usize, usize)> = a
        .iter()
        .enumerate()
        .flat_map(|(i, x)| {
            b.iter()
                .enumerate()
                .map(move |(j, y)| ((x - y).norm(), i, j))
        })
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let (mut ua, mut ub) = (vec![false; a.len()], vec![false; b.len()]);
    let mut worst: f64 = 0.0;
    for (d, i, j) in pairs {
        if !ua[i] && !ub[j] {
            ua[i] = true;
            ub[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn region_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let started = Instant::now();
    let (mut checked, mut mismatches) = (0, 0);
    while checked < 100_000 {
        let mu = polar(&mut rng, 3.0);
        let lambda = polar(&mut rng, 10.0);
        if ((ONE + lambda).norm_sqr() - (ONE + lambda * mu).norm_sqr()).abs() < 1e-9 {
            continue;
        }
        checked += 1;
        if region_contains(&lambda_region(mu), lambda) != direct_dominance(lambda, mu) {
            mismatches += 1;
        }
    }
    let secs = started.elapsed().as_secs_f64();
    outcome(
        mismatches == 0 && secs < 5.0,
        format!("{mismatches} mismatches in {checked} pairs, {secs:.2} s"),
    )
}

fn triangle_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut done, mut worst, mut skipped) = (0, 0.0f64, 0);
    while done < 1000 {
        let target = polygon(&mut rng, 3);
        let start = polygon(&mut rng, 3);
        let d = match design_triangle(&target) {
            Ok(d) => d,
            Err(Error::ZeroCompetingEigenvalue) => {
                skipped += 1;
                continue;
            }
            Err(e) => return outcome(false, format!("design failed: {e}")),
        };
        done += 1;
        let next = apply_step(&start, &d.weights).unwrap();
        worst = worst.max(shape_distance(&next, &target).unwrap_or(f64::INFINITY));
    }
    outcome(
        worst < 1e-9,
        format!("worst one-step distance {worst:.2e} over {done} pairs ({skipped} skipped)"),
    )
}

fn worked_triangle() -> Outcome {
    let target = Polygon::from_pairs(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]).unwrap();
    let d = match design_triangle(&target) {
        Ok(d) => d,
        Err(e) => return outcome(false, e.to_string()),
    };
    let expected = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, -1.0)];
    let weights_ok = d
        .weights
        .as_slice()
        .iter()
        .zip(&expected)
        .all(|(a, b)| (a - b).norm() < 1e-15);
    let dominant_ok = (d.dominant - c(0.0, 1.0)).norm() < 1e-15;
    let competing_ok = d.competing.len() == 1 && d.competing[0].norm() < 1e-15;
    outcome(
        weights_ok && dominant_ok && competing_ok,
        format!(
            "weights {:?}, dominant {}, competing {:?}",
            d.weights.as_slice(),
            d.dominant,
            d.competing
        ),
    )
}

fn unit_square() -> Outcome {
    let target = Polygon::from_pairs(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
    let d = match design_general(&target, 0) {
        Ok(d) => d,
        Err(e) => return outcome(false, e.to_string()),
    };
    let rate_ok = d.is_feasible() && d.predicted_rate <= FRAC_1_SQRT_2 + 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut worst_distance, mut worst_fit) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let start = polygon(&mut rng, 4);
        let t = iterate(&start, &d.weights, 100, Some(&target)).unwrap();
        let distances: Vec<f64> = t
            .frames
            .iter()
            .map(|f| f.distance_to_target.unwrap())
            .collect();
        worst_distance = worst_distance.max(*distances.last().unwrap());
        let fit = fitted_decay_rate(&distances, DECAY_WINDOW).unwrap_or(f64::INFINITY);
        worst_fit = worst_fit.max((fit - d.predicted_rate).abs() / d.predicted_rate);
    }
    outcome(
        rate_ok && worst_distance < 1e-8 && worst_fit < 0.1,
        format!(
            "predicted rate {:.6}, worst final distance {worst_distance:.2e}, worst decay error {:.2}%",
            d.predicted_rate,
            100.0 * worst_fit
        ),
    )
}

fn char_poly_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut worst, mut zero_ok) = (0.0f64, true);
    for n in 3..=8 {
        for _ in 0..100 {
            let w = weights(&mut rng, n);
            let p = char_poly(&w);
            zero_ok &= p.eval(c(0.0, 0.0)) == c(0.0, 0.0);
            for _ in 0..5 {
                let x = point(&mut rng, 2.0);
                let oracle = char_poly_oracle(&w, x);
                worst = worst.max((p.eval(x) - oracle).norm() / (1.0 + oracle.norm()));
            }
        }
    }
    outcome(
        worst <= 1e-9 && zero_ok,
        format!("worst relative error {worst:.2e}, p(0) = 0: {zero_ok}"),
    )
}

fn spectrum_scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let w = weights(&mut rng, 3 + i % 6);
        let lambda = polar(&mut rng, 3.0);
        let shifted = |w: &WeightVector| -> Result<Vec<Complex64>, Error> {
            Ok(eigenvalues_general(w)?
                .values()
                .iter()
                .map(|&v| v - ONE)
                .collect())
        };
        let (Ok(base), Ok(scaled)) = (shifted(&w), shifted(&w.scaled(lambda).unwrap())) else {
            return outcome(false, format!("root finding failed for case {i}"));
        };
        let expected: Vec<Complex64> = base.iter().map(|&x| lambda * x).collect();
        worst = worst.max(multiset_gap(&scaled, &expected));
    }
    outcome(
        worst <= 1e-8,
        format!("worst multiset gap {worst:.2e} over 200 cases"),
    )
}

fn case1_eigenpairs() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut vectors, mut worst, mut pairs) = (0, 0.0f64, 0);
    while vectors < 500 {
        let n = rng.random_range(3..=8);
        let mut w = weights(&mut rng, n).as_slice().to_vec();
        w[rng.random_range(0..n)] = c(0.0, 0.0);
        let w = WeightVector::new(w).unwrap();
        let spectrum = eigenvalues_case1(&w).unwrap().values();
        // Non-clustered spectra only.
        let clustered =
            (0..n).any(|i| (i + 1..n).any(|j| (spectrum[i] - spectrum[j]).norm() < 1e-6));
        if clustered {
            continue;
        }
        vectors += 1;
        for k in 0..n {
            match eigenvector_case1(&w, k) {
                Ok(pair) => {
                    pairs += 1;
                    worst = worst.max(pair.residual);
                }
                Err(e) => {
                    return outcome(false, format!("eigenvector {k} of {:?}: {e}", w.as_slice()))
                }
            }
        }
    }
    outcome(
        worst <= 1e-9,
        format!("worst residual {worst:.2e} over {pairs} eigenpairs"),
    )
}

fn general_pipeline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for n in 3..=6 {
        let (mut feasible, mut infeasible, mut collisions, mut other) = (0, 0, 0, 0);
        for case in 0..200 {
            let target = polygon(&mut rng, n);
            let start = polygon(&mut rng, n);
            match design_general(&target, 0) {
                Ok(d) if d.is_feasible() => {
                    feasible += 1;
                    let t = iterate(&start, &d.weights, 400, Some(&target)).unwrap();
                    let distance = t.last().distance_to_target.unwrap_or(f64::INFINITY);
                    if !(distance < 1e-8) || t.collapsed {
                        failures.push(format!(
                            "n={n} case={case} predicted_rate={:.4} distance={distance:.2e}",
                            d.predicted_rate
                        ));
                    }
                }
                Ok(d) => {
                    infeasible += 1;
                    eprintln!(
                        "  [8] infeasible n={n} case={case} best margin {:.3e}",
                        d.margin
                    );
                }
                Err(Error::TargetEigenvalueCollision { index }) => {
                    collisions += 1;
                    eprintln!("  [8] collision n={n} case={case} index {index}");
                }
                Err(e) => {
                    other += 1;
                    eprintln!("  [8] error n={n} case={case}: {e}");
                }
            }
        }
        summary.push(format!("n={n}: {feasible} feasible, {infeasible} infeasible, {collisions} collisions, {other} errors"));
    }
    for f in &failures {
        eprintln!("  [8] not converged: {f}");
    }
    outcome(
        failures.is_empty(),
        format!(
            "{}; {} feasible designs did not reach 1e-8 in 400 steps",
            summary.join("; "),
            failures.len()
        ),
    )
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("target.json");
    let p = Polygon::from_pairs(&[(0.0, 0.0), (1.3, 0.2), (1.0, 1.4), (-0.2, 1.1), (-0.9, 0.3)])
        .unwrap();
    std::fs::write(&target, polygon_json(&p)).unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_polyshape"))
            .args([
                "design",
                target.to_str().unwrap(),
                "--seed",
                "17",
                "--report",
            ])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let identical = a.stdout == b.stdout && a.status == b.status && !a.stdout.is_empty();

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut exact = true;
    for _ in 0..200 {
        let vertices: Vec<Complex64> = (0..rng.random_range(3..10))
            .map(|_| {
                let scale = 10f64.powi(rng.random_range(-300..300));
                point(&mut rng, 1.0) * scale
            })
            .collect();
        let p = Polygon::new(vertices).unwrap();
        let back = parse_polygon(&polygon_json(&p)).unwrap();
        exact &= p
            .vertices()
            .iter()
            .zip(back.vertices())
            .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits());
    }
    outcome(
        identical && exact,
        format!("design output identical: {identical}; 200 polygon round-trips bit-exact: {exact}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("region oracle equivalence", region_oracle),
        ("triangle exactness", triangle_exactness),
        ("worked triangle", worked_triangle),
        ("unit-square design", unit_square),
        ("characteristic-polynomial identity", char_poly_identity),
        ("spectrum scaling law", spectrum_scaling),
        ("case-1 eigenpairs", case1_eigenpairs),
        ("general-n pipeline", general_pipeline),
        ("CLI determinism and round-trip", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        if !result.pass {
            failed += 1;
        }
        println!(
            "{} criterion {}: {name}: {}",
            if result.pass { "PASS" } else { "FAIL" },
            i + 1,
            result.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
