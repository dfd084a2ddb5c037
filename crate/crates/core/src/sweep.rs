//! Where do the standard and dynamical prescriptions agree?
//!
//! The sweep evaluates `max_phi |w_standard - w_dynamical|` on a uniform
//! grid for a deterministic list of spin-state pairs. The list starts with
//! every `Sz` eigenstate product and the longitudinal pairs `+x,+x` and
//! `+x,-x`; `n_states` Haar-random pairs follow. Pairs are classified
//! AGREE when the maximum stays below `tol`.
//!
//! Rows are computed in parallel but always reported in input order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amplitude::AmplitudeModel;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::prescriptions::{longitudinal_states, phi_grid, w_dynamical, w_standard, ScatterConfig};
use crate::spin::{random_state, sz_eigenstate, SpinState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Classification {
    Agree,
    Disagree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Eigenstates,
    Longitudinal,
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub pair_id: usize,
    pub kind: PairKind,
    pub alpha_desc: String,
    pub beta_desc: String,
    pub max_abs_diff: f64,
    /// Grid angle where the maximum occurs.
    pub argmax_phi: f64,
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub s: HalfInt,
    pub n_phis: usize,
    pub tol: f64,
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub eigen_pairs: usize,
    pub eigen_pairs_agreeing: usize,
    pub random_pairs: usize,
    pub random_pairs_agreeing: usize,
    /// Descriptions of every AGREE pair, in row order.
    pub agreement_set: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepParams {
    pub s: HalfInt,
    pub model: AmplitudeModel,
    pub n_states: usize,
    pub n_phis: usize,
    pub seed: u64,
    pub tol: f64,
}

/// Seed of the `k`-th random state drawn by the sweep.
pub fn derived_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k)
}

struct Pair {
    kind: PairKind,
    alpha_desc: String,
    beta_desc: String,
    alpha: SpinState,
    beta: SpinState,
}

fn candidate_pairs(s: HalfInt, n_states: usize, seed: u64) -> Result<Vec<Pair>> {
    let mut pairs = Vec::new();
    for ma in s.projections() {
        for mb in s.projections() {
            pairs.push(Pair {
                kind: PairKind::Eigenstates,
                alpha_desc: format!("eigen({ma})"),
                beta_desc: format!("eigen({mb})"),
                alpha: sz_eigenstate(s, ma)?,
                beta: sz_eigenstate(s, mb)?,
            });
        }
    }
    let (plus, minus) = longitudinal_states(s)?;
    pairs.push(Pair {
        kind: PairKind::Longitudinal,
        alpha_desc: "axis(+x)".into(),
        beta_desc: "axis(+x)".into(),
        alpha: plus.clone(),
        beta: plus.clone(),
    });
    pairs.push(Pair {
        kind: PairKind::Longitudinal,
        alpha_desc: "axis(+x)".into(),
        beta_desc: "axis(-x)".into(),
        alpha: plus,
        beta: minus,
    });
    for i in 0..n_states as u64 {
        let (ka, kb) = (2 * i, 2 * i + 1);
        pairs.push(Pair {
            kind: PairKind::Random,
            alpha_desc: format!("haar(seed={seed},k={ka})"),
            beta_desc: format!("haar(seed={seed},k={kb})"),
            alpha: random_state(s, derived_seed(seed, ka))?,
            beta: random_state(s, derived_seed(seed, kb))?,
        });
    }
    Ok(pairs)
}

/// `(max |w_standard - w_dynamical|, argmax)` over the grid.
pub fn max_prescription_gap(cfg: &ScatterConfig, phis: &[f64]) -> Result<(f64, f64)> {
    let mut best = (0.0_f64, phis.first().copied().unwrap_or(0.0));
    for &phi in phis {
        let d = (w_standard(cfg, phi)? - w_dynamical(cfg, phi)?).abs();
        if d > best.0 {
            best = (d, phi);
        }
    }
    Ok(best)
}

pub fn agreement_sweep(params: &SweepParams) -> Result<SweepReport> {
    if params.n_phis == 0 {
        return Err(Error::param("n_phis", "must be at least 1"));
    }
    if !(params.tol >= 0.0) {
        return Err(Error::param("tol", "must be non-negative"));
    }
    params.model.validate()?;
    let phis = phi_grid(params.n_phis)?;
    let pairs = candidate_pairs(params.s, params.n_states, params.seed)?;

    let rows = pairs
        .into_par_iter()
        .enumerate()
        .map(|(pair_id, p)| {
            let cfg = ScatterConfig::new(p.alpha, p.beta, params.model.clone())?;
            let (max_abs_diff, argmax_phi) = max_prescription_gap(&cfg, &phis)?;
            let classification = if max_abs_diff < params.tol {
                Classification::Agree
            } else {
                Classification::Disagree
            };
            Ok(SweepRow {
                pair_id,
                kind: p.kind,
                alpha_desc: p.alpha_desc,
                beta_desc: p.beta_desc,
                max_abs_diff,
                argmax_phi,
                classification,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let count = |kind: PairKind, agree_only: bool| {
        rows.iter()
            .filter(|r| {
                r.kind == kind && (!agree_only || r.classification == Classification::Agree)
            })
            .count()
    };
    let summary = SweepSummary {
        eigen_pairs: count(PairKind::Eigenstates, false),
        eigen_pairs_agreeing: count(PairKind::Eigenstates, true),
        random_pairs: count(PairKind::Random, false),
        random_pairs_agreeing: count(PairKind::Random, true),
        agreement_set: rows
            .iter()
            .filter(|r| r.classification == Classification::Agree)
            .map(|r| format!("{} ⊗ {}", r.alpha_desc, r.beta_desc))
            .collect(),
    };
    Ok(SweepReport {
        s: params.s,
        n_phis: params.n_phis,
        tol: params.tol,
        rows,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::{AGREEMENT_TOL, DEFAULT_GRID_POINTS};

    fn params(s: HalfInt, n_states: usize) -> SweepParams {
        SweepParams {
            s,
            model: AmplitudeModel::partial_wave(vec![
                num_complex::Complex64::new(0.6, 0.2),
                0.3.into(),
            ])
            .unwrap(),
            n_states,
            n_phis: DEFAULT_GRID_POINTS,
            seed: 7,
            tol: AGREEMENT_TOL,
        }
    }

    #[test]
    fn spin_half_classification() {
        let r = agreement_sweep(&params(HalfInt::HALF, 100)).unwrap();
        assert_eq!(r.summary.eigen_pairs, 4);
        assert_eq!(r.summary.eigen_pairs_agreeing, 4);
        assert_eq!(r.summary.random_pairs, 100);
        assert_eq!(r.summary.random_pairs_agreeing, 0);
        let long: Vec<_> = r
            .rows
            .iter()
            .filter(|x| x.kind == PairKind::Longitudinal)
            .collect();
        assert_eq!(long.len(), 2);
        assert!(long
            .iter()
            .all(|x| x.classification == Classification::Disagree));
        for row in r.rows.iter().filter(|x| x.kind == PairKind::Random) {
            assert!(row.max_abs_diff > AGREEMENT_TOL);
        }
    }

    #[test]
    fn parallel_x_gap_is_f_squared_at_right_angle() {
        // With a grid containing pi/2, the gap there is |f(pi/2)|² for a symmetric model.
        let p = params(HalfInt::HALF, 0);
        let (plus, _) = longitudinal_states(HalfInt::HALF).unwrap();
        let cfg = ScatterConfig::new(plus.clone(), plus, p.model.clone()).unwrap();
        let f2 = p
            .model
            .evaluate(std::f64::consts::FRAC_PI_2)
            .unwrap()
            .norm_sqr();
        let gap = (w_standard(&cfg, std::f64::consts::FRAC_PI_2).unwrap()
            - w_dynamical(&cfg, std::f64::consts::FRAC_PI_2).unwrap())
        .abs();
        assert!((gap - f2).abs() < 1e-12);
    }

    #[test]
    fn deterministic_and_ordered() {
        let a = agreement_sweep(&params(HalfInt::ONE, 10)).unwrap();
        let b = agreement_sweep(&params(HalfInt::ONE, 10)).unwrap();
        assert_eq!(a, b);
        assert!(a.rows.iter().enumerate().all(|(i, r)| r.pair_id == i));
    }

    #[test]
    fn rejects_empty_grid() {
        let mut p = params(HalfInt::HALF, 1);
        p.n_phis = 0;
        assert!(agreement_sweep(&p).is_err());
    }
}
