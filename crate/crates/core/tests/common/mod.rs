#![allow(dead_code)]

use num_complex::Complex64;
use polyshape::{Polygon, WeightVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn complex_in(radius: f64) -> impl Strategy<Value = Complex64> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| c(re, im))
}

pub fn nonzero_complex(radius: f64) -> impl Strategy<Value = Complex64> {
    complex_in(radius).prop_filter("away from zero", |z| z.norm() > 1e-2)
}

/// Polygons whose vertices are spread enough for shape operations.
pub fn polygon(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Polygon> {
    sizes
        .prop_flat_map(|n| prop::collection::vec(complex_in(1.0), n))
        .prop_map(|v| Polygon::new(v).unwrap())
        .prop_filter("not nearly a point", |p| p.diameter() > 1e-3)
}

pub fn weights(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = WeightVector> {
    sizes
        .prop_flat_map(|n| prop::collection::vec(complex_in(1.5), n))
        .prop_map(|v| WeightVector::new(v).unwrap())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    c(
        rng.random_range(-radius..radius),
        rng.random_range(-radius..radius),
    )
}

pub fn random_polygon(rng: &mut ChaCha8Rng, n: usize) -> Polygon {
    Polygon::new((0..n).map(|_| random_complex(rng, 1.0)).collect()).unwrap()
}

pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> WeightVector {
    WeightVector::new((0..n).map(|_| random_complex(rng, 1.5)).collect()).unwrap()
}

/// Largest distance in a greedy matching of two multisets, pairing the
/// globally closest remaining elements first.
pub fn multiset_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
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
    let (mut used_a, mut used_b) = (vec![false; a.len()], vec![false; b.len()]);
    let mut worst: f64 = 0.0;
    for (d, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}
