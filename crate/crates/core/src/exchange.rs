//! Physical exchange of two identical spins built from pi rotations.
//!
//! The exchange operator `R_ab` rotates each simultaneous eigenket
//! `|m_a, m_b>` by pi about its own axis, chosen so that the pair ends up
//! label-swapped. For spin 1/2 the pattern is: equal projections rotate
//! about `z`, opposite projections about `y`. The same pattern is used for
//! every spin:
//!
//! * `m_a = m_b`: `exp(-i pi Sz)` gives `e^{-i pi m}` on each spin, a total
//!   of `e^{-2 pi i m} = (-1)^{2s}`;
//! * `m_a = -m_b`: `exp(-i pi Sy)` maps `|m> -> (-1)^{s-m} |-m>`, again a
//!   total of `(-1)^{2s}`.
//!
//! When `|m_a| != |m_b|` no rotation maps `|m_a>` onto a multiple of
//! `|m_b>` (the image would be an eigenket of a rotated `n.S` with
//! eigenvalue `m_a`), so those pairs are reported as not exchangeable and
//! carry no axis. Each assignment is verified by actually applying the
//! rotation.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::spin::{rotation_matrix, CMatrix, CVector};
use crate::tolerances::{NORM_TOL, SAME_RAY_TOL};

pub const Z_AXIS: [f64; 3] = [0.0, 0.0, 1.0];
pub const Y_AXIS: [f64; 3] = [0.0, 1.0, 0.0];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub ma: HalfInt,
    pub mb: HalfInt,
    /// `None` when no single pi rotation exchanges this pair.
    pub axis: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExchangePlan {
    pub s: HalfInt,
    pub angle: f64,
    pub entries: Vec<PlanEntry>,
}

impl ExchangePlan {
    pub fn entry(&self, ma: HalfInt, mb: HalfInt) -> Option<&PlanEntry> {
        self.entries.iter().find(|e| e.ma == ma && e.mb == mb)
    }

    pub fn non_constructible(&self) -> impl Iterator<Item = &PlanEntry> {
        self.entries.iter().filter(|e| e.axis.is_none())
    }

    fn dim(&self) -> usize {
        self.s.doubled() as usize + 1
    }
}

/// Index of `|m_a, m_b>` in the two-spin space (particle a slow).
fn pair_index(s: HalfInt, ma: HalfInt, mb: HalfInt) -> Result<usize> {
    let d = s.multiplicity()?;
    Ok(s.index_of(ma)? * d + s.index_of(mb)?)
}

/// `(R ⊗ R) |ia, ib>` as a dense vector.
fn rotated_pair(r: &CMatrix, ia: usize, ib: usize) -> CVector {
    r.column(ia)
        .into_owned()
        .kronecker(&r.column(ib).into_owned())
}

fn swaps_pair(s: HalfInt, ma: HalfInt, mb: HalfInt, axis: [f64; 3]) -> Result<bool> {
    let r = rotation_matrix(s, axis, PI)?;
    let (ia, ib) = (s.index_of(ma)?, s.index_of(mb)?);
    let out = rotated_pair(&r, ia, ib);
    let target = pair_index(s, mb, ma)?;
    Ok(out[target].norm() >= 1.0 - SAME_RAY_TOL)
}

pub fn default_plan(s: HalfInt) -> Result<ExchangePlan> {
    s.check_spin()?;
    let mut entries = Vec::new();
    for ma in s.projections() {
        for mb in s.projections() {
            let candidate = if ma == mb {
                Some(Z_AXIS)
            } else if ma == -mb {
                Some(Y_AXIS)
            } else {
                None
            };
            let entry = match candidate {
                Some(axis) if swaps_pair(s, ma, mb, axis)? => PlanEntry {
                    ma,
                    mb,
                    axis: Some(axis),
                    note: None,
                },
                Some(axis) => PlanEntry {
                    ma,
                    mb,
                    axis: None,
                    note: Some(format!(
                        "pi rotation about {axis:?} failed to swap the pair"
                    )),
                },
                None => PlanEntry {
                    ma,
                    mb,
                    axis: None,
                    note: Some(
                        "|m_a| != |m_b|: no pi rotation maps one projection onto the other".into(),
                    ),
                },
            };
            entries.push(entry);
        }
    }
    Ok(ExchangePlan {
        s,
        angle: PI,
        entries,
    })
}

/// Dense `R_ab` on the two-spin space. Columns of non-exchangeable pairs
/// are left zero.
pub fn exchange_matrix(plan: &ExchangePlan) -> Result<CMatrix> {
    let s = plan.s;
    let d = plan.dim();
    let r_z = rotation_matrix(s, Z_AXIS, plan.angle)?;
    let r_y = rotation_matrix(s, Y_AXIS, plan.angle)?;
    let mut m = CMatrix::zeros(d * d, d * d);
    for e in &plan.entries {
        let Some(axis) = e.axis else { continue };
        let r = if axis == Z_AXIS {
            r_z.clone()
        } else if axis == Y_AXIS {
            r_y.clone()
        } else {
            rotation_matrix(s, axis, plan.angle)?
        };
        let (ia, ib) = (s.index_of(e.ma)?, s.index_of(e.mb)?);
        m.set_column(ia * d + ib, &rotated_pair(&r, ia, ib));
    }
    Ok(m)
}

/// Label swap `|m_a, m_b> -> |m_b, m_a>` on the two-spin space.
pub fn swap_matrix(s: HalfInt) -> Result<CMatrix> {
    let d = s.multiplicity()?;
    let mut m = CMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            m[(b * d + a, a * d + b)] = Complex64::from(1.0);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExchangeOutcome {
    pub state: CVector,
    /// Input with the two labels swapped.
    pub swapped: CVector,
    /// `|<swapped|state>|`; one when the output is the swapped input times
    /// a global phase.
    pub overlap: f64,
    /// `state[k] / swapped[k]` at the largest-magnitude output component.
    pub phase: Option<Complex64>,
}

fn check_joint(s: HalfInt, joint: &CVector) -> Result<usize> {
    let d = s.multiplicity()?;
    if joint.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            got: joint.len(),
        });
    }
    let norm_sqr = joint.norm_squared();
    if !((norm_sqr - 1.0).abs() <= NORM_TOL) {
        return Err(Error::NotNormalized { norm_sqr });
    }
    Ok(d)
}

fn outcome(s: HalfInt, joint: &CVector, state: CVector) -> Result<ExchangeOutcome> {
    let swapped = swap_matrix(s)? * joint;
    let overlap = swapped.dotc(&state).norm();
    let k = state.icamax();
    let phase = (swapped[k].norm() > 1e-12).then(|| state[k] / swapped[k]);
    Ok(ExchangeOutcome {
        state,
        swapped,
        overlap,
        phase,
    })
}

/// Applies `R_ab` to a normalized two-spin state.
pub fn apply_exchange(plan: &ExchangePlan, joint: &CVector) -> Result<ExchangeOutcome> {
    let s = plan.s;
    let d = check_joint(s, joint)?;
    for e in plan.non_constructible() {
        let idx = s.index_of(e.ma)? * d + s.index_of(e.mb)?;
        if joint[idx].norm() > 0.0 {
            return Err(Error::NotExchangeable { ma: e.ma, mb: e.mb });
        }
    }
    let state = exchange_matrix(plan)? * joint;
    outcome(s, joint, state)
}

/// Rotates both spins by pi about one fixed axis, regardless of the
/// eigenket decomposition.
pub fn apply_fixed_axis(s: HalfInt, axis: [f64; 3], joint: &CVector) -> Result<ExchangeOutcome> {
    check_joint(s, joint)?;
    let r = rotation_matrix(s, axis, PI)?;
    let state = r.kronecker(&r) * joint;
    outcome(s, joint, state)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairPhase {
    pub ma: HalfInt,
    pub mb: HalfInt,
    pub axis: [f64; 3],
    #[serde(with = "crate::serde_complex")]
    pub phase: Complex64,
    pub swap_overlap: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorCheck {
    pub axis: [f64; 3],
    pub pairs: Vec<(HalfInt, HalfInt)>,
    /// Dimension of the `R_ab`-invariant subspace of the sector.
    pub invariant_dim: usize,
    /// Dimension of the subspace with the required exchange symmetry.
    pub required_dim: usize,
    /// Largest `|P psi - sign psi|` over the invariant random samples.
    pub max_symmetry_violation: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PostulateReport {
    pub s: HalfInt,
    pub expected_phase: i32,
    pub forced: Symmetry,
    pub pairs: Vec<PairPhase>,
    pub sectors: Vec<SectorCheck>,
    pub non_constructible: Vec<PlanEntry>,
    pub pass: bool,
}

/// Trace of a projector, rounded.
fn projector_rank(p: &CMatrix) -> usize {
    p.trace().re.round().max(0.0) as usize
}

/// Checks the phase on every exchangeable basis pair and, sector by
/// sector, that demanding `R_ab psi = psi` leaves exactly the states with
/// exchange symmetry `(-1)^(2s)`.
pub fn exchange_postulate_check(
    plan: &ExchangePlan,
    seed: u64,
    samples_per_sector: usize,
) -> Result<PostulateReport> {
    let s = plan.s;
    let d = plan.dim();
    let sign = s.statistics_sign();
    let expected = Complex64::from(f64::from(sign));
    let r_ab = exchange_matrix(plan)?;
    let swap = swap_matrix(s)?;

    let mut pairs = Vec::new();
    for e in &plan.entries {
        let Some(axis) = e.axis else { continue };
        let mut ket = CVector::zeros(d * d);
        ket[pair_index(s, e.ma, e.mb)?] = Complex64::from(1.0);
        let out = apply_exchange(plan, &ket)?;
        let phase = out.phase.unwrap_or_default();
        let ok = out.overlap >= 1.0 - SAME_RAY_TOL && (phase - expected).norm() < SAME_RAY_TOL;
        pairs.push(PairPhase {
            ma: e.ma,
            mb: e.mb,
            axis,
            phase,
            swap_overlap: out.overlap,
            ok,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sectors = Vec::new();
    for axis in [Z_AXIS, Y_AXIS] {
        let members: Vec<usize> = plan
            .entries
            .iter()
            .filter(|e| e.axis == Some(axis))
            .map(|e| pair_index(s, e.ma, e.mb))
            .collect::<Result<_>>()?;
        if members.is_empty() {
            continue;
        }
        let n = d * d;
        let mut restrict = CMatrix::zeros(n, n);
        for &i in &members {
            restrict[(i, i)] = Complex64::from(1.0);
        }
        let half = Complex64::from(0.5);
        let invariant = (&restrict + &r_ab * &restrict) * half;
        let required = (&restrict + &swap * &restrict * expected) * half;
        let invariant_dim = projector_rank(&invariant);
        let required_dim = projector_rank(&required);
        // Invariant vectors must have the required symmetry.
        let leak = ((&swap - CMatrix::identity(n, n) * expected) * &invariant).camax();

        let mut max_violation: f64 = 0.0;
        for _ in 0..samples_per_sector {
            let mut psi = CVector::zeros(n);
            for &i in &members {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                psi[i] = Complex64::new(re, im);
            }
            psi.unscale_mut(psi.norm());
            let fixed = (&psi + &r_ab * &psi) * half;
            let violation = (&swap * &fixed - &fixed * expected).norm();
            max_violation = max_violation.max(violation);
        }
        let pass = leak < 1e-10 && max_violation < 1e-10 && invariant_dim == required_dim;
        sectors.push(SectorCheck {
            axis,
            pairs: plan
                .entries
                .iter()
                .filter(|e| e.axis == Some(axis))
                .map(|e| (e.ma, e.mb))
                .collect(),
            invariant_dim,
            required_dim,
            max_symmetry_violation: max_violation.max(leak),
            pass,
        });
    }

    let non_constructible: Vec<PlanEntry> = plan.non_constructible().cloned().collect();
    let pass = pairs.iter().all(|p| p.ok) && sectors.iter().all(|c| c.pass);
    Ok(PostulateReport {
        s,
        expected_phase: sign,
        forced: if sign == 1 {
            Symmetry::Symmetric
        } else {
            Symmetry::Antisymmetric
        },
        pairs,
        sectors,
        non_constructible,
        pass,
    })
}
