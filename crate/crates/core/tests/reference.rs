//! Library closed forms against the hand-rolled formulas in `common`.

mod common;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinstat::amplitude::AmplitudeModel;
use spinstat::halfint::HalfInt;
use spinstat::prescriptions::{longitudinal_states, w_dynamical, w_standard, ScatterConfig};
use spinstat::spin::SpinState;

use common::{along_x, partial_wave_012, w_reference, Rule, C};

fn random_amps(rng: &mut ChaCha8Rng, d: usize) -> Vec<C> {
    let v: Vec<C> = (0..d)
        .map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

#[test]
fn closed_forms_match_reference() {
    let coeffs = [C::new(0.4, -0.3), C::new(0.2, 0.5), C::new(-0.1, 0.05)];
    let model = AmplitudeModel::partial_wave(coeffs.to_vec()).unwrap();
    let f = partial_wave_012(coeffs);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for two_s in 0..=5u32 {
        let s = HalfInt::from_doubled(two_s as i32);
        let d = two_s as usize + 1;
        for k in 0..40 {
            let states: Vec<Vec<C>> = (0..4).map(|_| random_amps(&mut rng, d)).collect();
            let lib = |v: &Vec<C>| SpinState::new(s, v.clone()).unwrap();
            let mut cfg =
                ScatterConfig::new(lib(&states[0]), lib(&states[1]), model.clone()).unwrap();
            let (g, dl) = if k % 2 == 0 {
                (&states[0], &states[1])
            } else {
                cfg = cfg.with_detector(lib(&states[2]), lib(&states[3])).unwrap();
                (&states[2], &states[3])
            };
            let phi = PI - rng.random::<f64>() * 2.0 * PI;
            let rs = w_reference(
                Rule::Standard,
                &f,
                two_s,
                &states[0],
                &states[1],
                g,
                dl,
                phi,
            );
            let rd = w_reference(
                Rule::Dynamical,
                &f,
                two_s,
                &states[0],
                &states[1],
                g,
                dl,
                phi,
            );
            assert!(
                (w_standard(&cfg, phi).unwrap() - rs).abs() < 1e-12,
                "s={s} k={k}"
            );
            assert!(
                (w_dynamical(&cfg, phi).unwrap() - rd).abs() < 1e-12,
                "s={s} k={k}"
            );
        }
    }
}

#[test]
fn longitudinal_states_match_binomial_form() {
    for two_s in 0..=6u32 {
        let s = HalfInt::from_doubled(two_s as i32);
        let (plus, minus) = longitudinal_states(s).unwrap();
        for (state, sign) in [(plus, 1), (minus, -1)] {
            let want = along_x(two_s, sign);
            let ov: C = want
                .iter()
                .zip(state.amps())
                .map(|(a, b)| a.conj() * b)
                .sum();
            assert!(
                (ov.norm() - 1.0).abs() < 1e-12,
                "2s={two_s} sign={sign}: {ov}"
            );
        }
    }
}
