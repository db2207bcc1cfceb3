use std::collections::BTreeMap;

use qlattice::measure::{marginal_probabilities, measure_partial};
use qlattice::random::random_state;
use qlattice::{measure_full, probabilities, sample_histogram, RandomSource, StateVector};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson statistic and the 0.001 critical value for the given expected counts.
fn chi_square(counts: &BTreeMap<usize, usize>, probs: &[f64], trials: usize) -> (f64, f64) {
    let support: Vec<usize> = (0..probs.len()).filter(|&i| probs[i] > 1e-12).collect();
    let stat = support
        .iter()
        .map(|&i| {
            let expected = probs[i] * trials as f64;
            let observed = *counts.get(&i).unwrap_or(&0) as f64;
            (observed - expected).powi(2) / expected
        })
        .sum();
    let critical = ChiSquared::new((support.len() - 1) as f64)
        .unwrap()
        .inverse_cdf(0.999);
    (stat, critical)
}

#[test]
fn histogram_fits_born_rule() {
    let mut rng = RandomSource::from_seed(31);
    for dims in [vec![2], vec![2, 2], vec![3, 2], vec![2, 2, 2], vec![4, 4]] {
        let v = random_state(&mut rng, &dims).unwrap();
        let probs = probabilities(&v).unwrap();
        let counts = sample_histogram(&v, 20_000, &mut rng).unwrap();
        assert_eq!(counts.values().sum::<usize>(), 20_000);
        let (stat, critical) = chi_square(&counts, &probs, 20_000);
        assert!(stat < critical, "{dims:?}: chi2 {stat} >= {critical}");
    }
}

#[test]
fn every_draw_yields_a_valid_index() {
    let mut rng = RandomSource::from_seed(1);
    let v = random_state(&mut rng, &[3, 3, 2]).unwrap();
    for k in 0..=1000 {
        let u = k as f64 / 1000.0 * (1.0 - f64::EPSILON);
        let out = qlattice::measure::measure_full_at(&v, u).unwrap();
        assert!(out.basis_index < 18);
        assert!(out.probability > 0.0);
    }
}

#[test]
fn collapse_is_idempotent() {
    let mut rng = RandomSource::from_seed(12);
    for _ in 0..50 {
        let v = random_state(&mut rng, &[2, 3, 2]).unwrap();
        let first = measure_full(&v, &mut rng).unwrap();
        assert!(first.collapsed.is_normalized(1e-9));
        for _ in 0..5 {
            let again = measure_full(&first.collapsed, &mut rng).unwrap();
            assert_eq!(again.basis_index, first.basis_index);
            assert!((again.probability - 1.0).abs() < 1e-12);
        }

        let part = measure_partial(&v, &[1], &mut rng).unwrap();
        assert!(part.collapsed.is_normalized(1e-9));
        let again = measure_partial(&part.collapsed, &[1], &mut rng).unwrap();
        assert_eq!(again.basis_index, part.basis_index);
        assert!((again.probability - 1.0).abs() < 1e-12);
    }
}

#[test]
fn reported_probability_matches_marginal() {
    let mut rng = RandomSource::from_seed(13);
    let v = random_state(&mut rng, &[2, 3, 2]).unwrap();
    let marg = marginal_probabilities(&v, &[0, 2]).unwrap();
    assert!((marg.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    for _ in 0..100 {
        let out = measure_partial(&v, &[2, 0], &mut rng).unwrap();
        assert!((out.probability - marg[out.basis_index]).abs() < 1e-12);
    }
}

#[test]
fn partial_measurements_chain() {
    // Measuring wire 0 and then wire 2 samples the same joint law as
    // measuring {0, 2} at once.
    let mut rng = RandomSource::from_seed(99);
    let v = random_state(&mut rng, &[2, 3, 2]).unwrap();
    let joint = marginal_probabilities(&v, &[0, 2]).unwrap();
    let trials = 20_000;
    let mut counts = BTreeMap::new();
    for _ in 0..trials {
        let first = measure_partial(&v, &[0], &mut rng).unwrap();
        let second = measure_partial(&first.collapsed, &[2], &mut rng).unwrap();
        *counts
            .entry(first.basis_index * 2 + second.basis_index)
            .or_insert(0) += 1;
    }
    let (stat, critical) = chi_square(&counts, &joint, trials);
    assert!(stat < critical, "chi2 {stat} >= {critical}");
}

#[test]
fn seeds_reproduce_histograms() {
    let v = StateVector::new(vec![2, 2], vec![qlattice::Complex::new(0.5, 0.0); 4]).unwrap();
    let a = sample_histogram(&v, 1000, &mut RandomSource::from_seed(42)).unwrap();
    let b = sample_histogram(&v, 1000, &mut RandomSource::from_seed(42)).unwrap();
    assert_eq!(a, b);
}
