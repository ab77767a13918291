use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use teugels_core::martingale::Accumulator;
use teugels_core::simulator::simulate_batch;
use teugels_core::{
    charlier_poly, martingale_path, optional_covariation_check, simulate_path, teugels, variations, MonotoneFunction,
    ProcessSpec, TimeGrid,
};

const SEED: u64 = 20_240_611;

fn within(acc: &Accumulator, target: f64) -> bool {
    (acc.mean() - target).abs() <= 4.0 * acc.std_error()
}

#[test]
fn gaussian_endpoint_is_standard_normal() {
    let spec = ProcessSpec::gaussian(MonotoneFunction::linear(1.0)).unwrap();
    let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
    let mut mean = Accumulator::default();
    let mut square = Accumulator::default();
    for p in 0..100_000 {
        let x = simulate_path(&spec, &grid, SEED, p).unwrap().x_values[1];
        mean.push(x);
        square.push(x * x);
    }
    assert!(mean.mean().abs() <= 4.0 / (100_000f64).sqrt(), "mean {}", mean.mean());
    assert!(within(&square, 1.0), "second moment {}", square.mean());
}

#[test]
fn unit_rate_counts_are_poisson() {
    let spec = ProcessSpec::cox(MonotoneFunction::linear(1.0)).unwrap();
    let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
    let n = 100_000u64;
    let mut counts = Accumulator::default();
    let mut histogram = [0u64; 6];
    for p in 0..n {
        let k = simulate_path(&spec, &grid, SEED, p).unwrap().jumps.len();
        counts.push(k as f64);
        histogram[k.min(5)] += 1;
    }
    assert!(within(&counts, 1.0), "mean {}", counts.mean());
    // Var of the sample variance of Poisson(1) is about (μ4 - σ⁴)/n = 3/n.
    let var_se = (3.0 / n as f64).sqrt();
    assert!(
        (counts.variance() - 1.0).abs() <= 4.0 * var_se,
        "variance {}",
        counts.variance()
    );

    let mut probs = [0.0; 6];
    let mut pk = (-1.0f64).exp();
    for (k, slot) in probs.iter_mut().enumerate().take(5) {
        *slot = pk;
        pk /= (k + 1) as f64;
    }
    probs[5] = 1.0 - probs[..5].iter().sum::<f64>();
    let chi2: f64 = histogram
        .iter()
        .zip(probs)
        .map(|(&o, p)| (o as f64 - n as f64 * p).powi(2) / (n as f64 * p))
        .sum();
    // 0.999 quantile of chi-square with 5 degrees of freedom.
    assert!(chi2 < 20.52, "chi2 {chi2}");
}

#[test]
fn quadratic_intensity_jump_times_follow_s_squared() {
    let spec = ProcessSpec::cox(MonotoneFunction::power(1.0, 2.0)).unwrap();
    let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
    let mut times: Vec<f64> = (0..10_000)
        .flat_map(|p| simulate_path(&spec, &grid, SEED, p).unwrap().jumps)
        .map(|j| j.time)
        .collect();
    let m = times.len() as f64;
    assert!((m / 10_000.0 - 1.0).abs() <= 4.0 / 100.0, "mean count {}", m / 10_000.0);
    times.sort_by(f64::total_cmp);
    let d = times
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let cdf = s * s;
            (cdf - i as f64 / m).abs().max(((i + 1) as f64 / m - cdf).abs())
        })
        .fold(0.0, f64::max);
    // 0.999 Kolmogorov critical value.
    assert!(d * m.sqrt() < 1.95, "KS statistic {}", d * m.sqrt());
}

#[test]
fn mixed_spec_mean_and_variance_match_f2() {
    let spec = ProcessSpec::symmetric_unit_jumps(MonotoneFunction::linear(0.5)).unwrap();
    let grid = TimeGrid::uniform(1.0, 8).unwrap();
    let mut mean = Accumulator::default();
    let mut square = Accumulator::default();
    for p in 0..50_000 {
        let x = *simulate_path(&spec, &grid, SEED, p).unwrap().x_values.last().unwrap();
        mean.push(x);
        square.push(x * x);
    }
    assert!(within(&mean, 0.0));
    assert!(within(&square, spec.cumulant(2, 1.0).unwrap()));
}

#[test]
fn paths_are_reproducible_and_batch_order_free() {
    let spec = ProcessSpec::symmetric_unit_jumps(MonotoneFunction::linear(0.5)).unwrap();
    let grid = TimeGrid::uniform(1.0, 64).unwrap();
    let batch = simulate_batch(&spec, &grid, SEED, 10, 20).unwrap();
    for (k, path) in batch.iter().enumerate() {
        let alone = simulate_path(&spec, &grid, SEED, 10 + k as u64).unwrap();
        assert_eq!(path, &alone);
        let recomputed = path.recompute_x(&spec);
        for (a, b) in recomputed.iter().zip(&path.x_values) {
            assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }
}

#[test]
fn teugels_values_start_at_zero_and_subtract_f_n() {
    let spec = ProcessSpec::cox(MonotoneFunction::power(1.0, 2.0)).unwrap();
    let grid = TimeGrid::uniform(1.0, 128).unwrap();
    for p in 0..50 {
        let path = simulate_path(&spec, &grid, SEED, p).unwrap();
        for n in 1..=6 {
            let set = teugels(&path, &spec, n).unwrap();
            assert_eq!(set.teugels_values[0], 0.0);
            if n >= 2 {
                for (k, &t) in grid.times().iter().enumerate() {
                    let count = path.jump_count_until(t) as f64;
                    assert_eq!(set.variation_values[k], count);
                    assert_eq!(set.teugels_values[k], count - t * t);
                }
            }
        }
        assert_eq!(martingale_path(&spec, &path, 4).unwrap()[0], 0.0);
    }
}

#[test]
fn covariation_matches_higher_variation() {
    let specs = [
        ProcessSpec::cox(MonotoneFunction::power(1.0, 2.0)).unwrap(),
        ProcessSpec::symmetric_unit_jumps(MonotoneFunction::linear(0.5)).unwrap(),
    ];
    let grid = TimeGrid::uniform(1.0, 64).unwrap();
    for spec in &specs {
        for p in 0..200 {
            let path = simulate_path(spec, &grid, SEED, p).unwrap();
            for n in 1..8 {
                for m in 1..=8 - n {
                    let scale = variations(&path, spec, n + m)
                        .unwrap()
                        .iter()
                        .fold(0.0f64, |a, v| a.max(v.abs()));
                    let gap = optional_covariation_check(&path, spec, n, m).unwrap();
                    assert!(gap <= 1e-9 * (1.0 + scale), "n={n} m={m} gap={gap}");
                }
            }
        }
    }
}

#[test]
fn charlier_polynomials_are_poisson_orthogonal() {
    for (i, &a) in [0.5, 1.0, 2.0].iter().enumerate() {
        let polys: Vec<_> = (0..=4).map(|n| charlier_poly(n).to_float()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + i as u64);
        let poisson = Poisson::new(a).unwrap();
        let mut acc = vec![Accumulator::default(); 25];
        for _ in 0..100_000 {
            let y: f64 = poisson.sample(&mut rng);
            let values: Vec<f64> = polys.iter().map(|p| p.eval(&[y, a])).collect();
            for n in 0..=4 {
                for m in 0..=4 {
                    acc[5 * n + m].push(values[n] * values[m]);
                }
            }
        }
        for n in 0..=4 {
            for m in 0..=4 {
                if n != m {
                    let c = &acc[5 * n + m];
                    assert!(
                        within(c, 0.0),
                        "a={a} n={n} m={m} mean={} se={}",
                        c.mean(),
                        c.std_error()
                    );
                }
            }
        }
    }
}
