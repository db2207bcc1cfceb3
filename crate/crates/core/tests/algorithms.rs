use std::collections::BTreeMap;

use qlattice::linalg::index_to_digits;
use qlattice::numtheory::{discrete_log_brute, is_generator, is_prime, mod_pow};
use qlattice::shor::{build_dlog_circuit, factor, shor_dlog, DlogInstance, DLOG_SUPPORT_SIGN};
use qlattice::simon::{simon_run, Classification, FunctionTable, SimonRunner};
use qlattice::{eval_efficient, eval_naive, probabilities, Gf2Vector, RandomSource};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn simon_outcomes_are_orthogonal_to_the_mask() {
    let mut rng = RandomSource::from_seed(500);
    for n in 2..=5 {
        for _ in 0..3 {
            let mask = rng.range_inclusive(1, (1 << n) - 1) as usize;
            let f = FunctionTable::random_two_to_one(n, mask, &mut rng).unwrap();
            let t = Gf2Vector::from_index(mask, n);
            let runner = SimonRunner::new(&f).unwrap();
            let result = runner.run(1000, &mut rng).unwrap();
            assert!(
                result.equations.iter().all(|y| !y.dot(&t)),
                "n={n} mask={mask}"
            );
            // A thousand draws always pin the mask down.
            assert_eq!(result.classification, Classification::TwoToOne);
            assert_eq!(result.recovered_t, Some(t));
        }
    }
}

#[test]
fn simon_one_to_one_outcomes_are_uniform() {
    let mut rng = RandomSource::from_seed(501);
    for n in 1..=4 {
        let f = FunctionTable::random_one_to_one(n, &mut rng).unwrap();
        let result = SimonRunner::new(&f).unwrap().run(10_000, &mut rng).unwrap();
        let mut counts = BTreeMap::new();
        for y in &result.equations {
            *counts.entry(y.to_index()).or_insert(0usize) += 1;
        }
        let k = 1usize << n;
        let expected = 10_000.0 / k as f64;
        let stat: f64 = (0..k)
            .map(|y| (*counts.get(&y).unwrap_or(&0) as f64 - expected).powi(2) / expected)
            .sum();
        let critical = ChiSquared::new((k - 1) as f64).unwrap().inverse_cdf(0.999);
        assert!(stat < critical, "n={n}: chi2 {stat} >= {critical}");
        assert_eq!(result.classification, Classification::OneToOne);
    }
}

#[test]
fn recovered_masks_are_genuine() {
    let mut rng = RandomSource::from_seed(502);
    for _ in 0..100 {
        let n = 3;
        let f = if rng.uniform() < 0.5 {
            FunctionTable::random_one_to_one(n, &mut rng).unwrap()
        } else {
            let mask = rng.range_inclusive(1, 7) as usize;
            FunctionTable::random_two_to_one(n, mask, &mut rng).unwrap()
        };
        let result = simon_run(&f, 3, &mut rng).unwrap();
        if let Some(t) = result.recovered_t {
            assert!(!t.is_zero());
            assert_eq!(f.eval(0), f.eval(t.to_index()));
        }
    }
}

fn instances(p: u64) -> Vec<DlogInstance> {
    let mut out = Vec::new();
    for g in 2..p {
        if is_generator(g, p) {
            for x in 1..p {
                out.push(DlogInstance::new(p, g, x).unwrap());
            }
        }
    }
    out
}

#[test]
fn dlog_support_obeys_the_linear_relation() {
    for p in [5, 7] {
        for inst in instances(p) {
            let circuit = build_dlog_circuit(&inst).unwrap();
            let (state, _) = eval_efficient(&circuit, &inst.initial_state()).unwrap();
            let r = discrete_log_brute(inst.g(), inst.x(), p).unwrap() as i64;
            let q = (p - 1) as i64;
            for (i, prob) in probabilities(&state).unwrap().into_iter().enumerate() {
                if prob > 1e-12 {
                    let digits = index_to_digits(i, &inst.register_dims());
                    let (c, d) = (digits[0] as i64, digits[1] as i64);
                    assert_eq!(
                        (c * r + DLOG_SUPPORT_SIGN * d).rem_euclid(q),
                        0,
                        "{inst:?} c={c} d={d}"
                    );
                }
            }
        }
    }
}

#[test]
fn dlog_final_state_matches_naive_and_closed_form() {
    let inst = DlogInstance::new(5, 2, 3).unwrap();
    let circuit = build_dlog_circuit(&inst).unwrap();
    let input = inst.initial_state();
    let (eff, _) = eval_efficient(&circuit, &input).unwrap();
    let (naive, _) = eval_naive(&circuit, &input).unwrap();
    assert_eq!(eff.len(), 64);
    assert!(eff.max_abs_diff(&naive) <= 1e-10);
    assert!(eff.is_normalized(1e-9));

    // (1/(p-1))^2 Σ_{a,b,c,d} w^{ac+bd} |c, d⟩ ⊗ |g^a x^-b⟩
    let q = 4usize;
    let mut want = vec![qlattice::Complex::new(0.0, 0.0); 64];
    for a in 0..q {
        for b in 0..q {
            let m = inst.oracle_value(a as u64, b as u64) as usize - 1;
            for c in 0..q {
                for d in 0..q {
                    let phase =
                        2.0 * std::f64::consts::PI * ((a * c + b * d) % q) as f64 / q as f64;
                    want[(c * q + d) * q + m] += qlattice::Complex::from_polar(1.0 / 16.0, phase);
                }
            }
        }
    }
    for (got, w) in eff.amps().iter().zip(&want) {
        assert!((got - w).norm() <= 1e-10);
    }
}

#[test]
fn dlog_results_always_verify() {
    let mut rng = RandomSource::from_seed(600);
    for p in [5, 7, 11] {
        for inst in instances(p).into_iter().take(12) {
            let out = shor_dlog(&inst, &mut rng, 50).unwrap();
            let r = out.r.unwrap();
            assert!(r < p - 1);
            assert_eq!(mod_pow(inst.g(), r, p), inst.x());
        }
    }
}

#[test]
fn factors_divide_nontrivially() {
    let mut rng = RandomSource::from_seed(700);
    for n in (9..2000u64).step_by(2).filter(|&n| !is_prime(n)) {
        let out = factor(n, &mut rng, 200).unwrap();
        assert!(
            out.factor > 1 && out.factor < n && n % out.factor == 0,
            "{n}: {out:?}"
        );
    }
}
