//! Large-size trend of `F` for dense random Markov matrices and the jump of
//! the two-state family at `p = 1/2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_complexity::complexity::{spectral_complexity, ZeroEigPolicy};
use spectral_complexity::reduction::RecurrenceMatrix;
use spectral_complexity::spectra::{eig, ToleranceConfig};

fn random_markov(k: usize, rng: &mut ChaCha8Rng) -> RecurrenceMatrix {
    let rows: Vec<Vec<f64>> = (0..k)
        .map(|_| {
            let w: Vec<f64> = (0..k).map(|_| rng.random::<f64>()).collect();
            let s: f64 = w.iter().sum();
            w.into_iter().map(|x| x / s).collect()
        })
        .collect();
    RecurrenceMatrix::from_rows(&rows).unwrap()
}

fn f_of(r: &RecurrenceMatrix, policy: ZeroEigPolicy) -> f64 {
    spectral_complexity(&eig(r, false).unwrap(), &ToleranceConfig::default(), policy).unwrap().f
}

#[test]
fn dense_random_markov_complexity_approaches_two() {
    let mut means = Vec::new();
    for k in [50, 100, 200, 400] {
        let total: f64 = (0..10u64)
            .map(|seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k as u64);
                f_of(&random_markov(k, &mut rng), ZeroEigPolicy::ExcludeZeros)
            })
            .sum();
        means.push(total / 10.0);
    }
    assert!(means.windows(2).all(|w| w[0] < w[1]), "{means:?}");
    assert!(means[3] > 1.9, "{means:?}");
}

fn two_state(p: f64) -> RecurrenceMatrix {
    RecurrenceMatrix::from_rows(&[vec![p, 1.0 - p], vec![1.0 - p, p]]).unwrap()
}

#[test]
fn two_state_family_jumps_at_one_half() {
    let at = f_of(&two_state(0.5), ZeroEigPolicy::IncludeZeros);
    let left = f_of(&two_state(0.5 - 1e-3), ZeroEigPolicy::IncludeZeros);
    let right = f_of(&two_state(0.5 + 1e-3), ZeroEigPolicy::IncludeZeros);
    assert!((at - 1.0).abs() < 1e-12);
    assert!((left - (1.0 + 2.0 * (0.5 - 1e-3)) / 2.0).abs() < 1e-12);
    assert!((right - (0.5 - 1e-3)).abs() < 1e-12);
    assert!(left - right > 0.49);
}
