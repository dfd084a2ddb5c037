//! Hand-rolled reference formulas used to cross-check the library.
//!
//! Nothing here calls into `spinstat`: states are plain amplitude slices
//! ordered by ascending `m`, and the amplitude is an explicit closure.

#![allow(dead_code)]

use num_complex::Complex64;

pub type C = Complex64;

pub fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Projections `-s..=s` for doubled spin `two_s`, as floats.
pub fn projections(two_s: u32) -> Vec<f64> {
    (0..=two_s)
        .map(|k| f64::from(k as i32 * 2 - two_s as i32) / 2.0)
        .collect()
}

/// Spin coherent state along `+x` (`sign = 1`) or `-x` (`sign = -1`).
pub fn along_x(two_s: u32, sign: i32) -> Vec<C> {
    let norm = 2f64.powi(-(two_s as i32)).sqrt();
    (0..=two_s)
        .map(|k| {
            // k counts down-steps from the bottom; s - m = two_s - k
            let mag = (binomial(two_s, k)).sqrt() * norm;
            let flip = if sign < 0 && (two_s - k) % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            C::from(mag * flip)
        })
        .collect()
}

pub fn eigen(two_s: u32, k: usize) -> Vec<C> {
    let mut v = vec![C::from(0.0); two_s as usize + 1];
    v[k] = C::from(1.0);
    v
}

/// `sum_m conj(a_m) b_m e^{i m theta}`.
pub fn phased_overlap(a: &[C], b: &[C], two_s: u32, theta: f64) -> C {
    projections(two_s)
        .iter()
        .zip(a.iter().zip(b))
        .map(|(m, (x, y))| x.conj() * y * C::cis(m * theta))
        .sum()
}

pub fn overlap(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Standard,
    Dynamical,
}

/// Cross-section with detector states `gamma` (top) and `delta` (bottom).
#[allow(clippy::too_many_arguments)]
pub fn w_reference(
    rule: Rule,
    f: &dyn Fn(f64) -> C,
    two_s: u32,
    alpha: &[C],
    beta: &[C],
    gamma: &[C],
    delta: &[C],
    phi: f64,
) -> f64 {
    let exch = phi - std::f64::consts::PI;
    let amp = match rule {
        Rule::Standard => {
            let sign = if two_s.is_multiple_of(2) { 1.0 } else { -1.0 };
            f(phi) * overlap(gamma, alpha) * overlap(delta, beta)
                + f(exch) * sign * overlap(delta, alpha) * overlap(gamma, beta)
        }
        Rule::Dynamical => {
            f(phi)
                * phased_overlap(gamma, alpha, two_s, phi)
                * phased_overlap(delta, beta, two_s, phi)
                + f(exch)
                    * phased_overlap(delta, alpha, two_s, exch)
                    * phased_overlap(gamma, beta, two_s, exch)
        }
    };
    amp.norm_sqr()
}

/// `sum_l (2l+1) a_l P_l(cos phi)` with `P_0..P_2` written out.
pub fn partial_wave_012(a: [C; 3]) -> impl Fn(f64) -> C {
    move |phi: f64| {
        let x = phi.cos();
        let p = [1.0, x, 0.5 * (3.0 * x * x - 1.0)];
        a[0] * p[0] + a[1] * 3.0 * p[1] + a[2] * 5.0 * p[2]
    }
}

pub fn constant(c: C) -> impl Fn(f64) -> C {
    move |_| c
}
