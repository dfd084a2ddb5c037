//! Brute-force two-particle Hilbert space used to check the closed forms.
//!
//! Each particle lives in `modes ⊗ spin`, where the four orthonormal modes
//! stand in for the incoming left/right and outgoing top/bottom wave
//! packets. The two-particle space is the Kronecker product of two such
//! factors, `(4 (2s + 1))²` dimensional, with particle 1 as the slow index.
//!
//! Nothing in here reuses the closed-form sums of
//! [`prescriptions`](crate::prescriptions): transition amplitudes are
//! obtained by building dense operators and contracting them with explicit
//! product vectors. Spin phases come from the matrix exponential of `Sz`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::amplitude::{check_principal, AmplitudeModel};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::prescriptions::{Prescription, ScatterConfig};
use crate::spin::{rotation_matrix, CMatrix, CVector, SpinState};
use crate::tolerances::ORACLE_MAX_SPIN;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    InLeft = 0,
    InRight = 1,
    OutTop = 2,
    OutBottom = 3,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::InLeft, Mode::InRight, Mode::OutTop, Mode::OutBottom];
    pub const COUNT: usize = 4;
}

/// Index bookkeeping for `(mode ⊗ spin) ⊗ (mode ⊗ spin)`.
#[derive(Clone, Copy, Debug)]
pub struct Layout {
    spin_dim: usize,
}

impl Layout {
    pub fn new(s: HalfInt) -> Result<Self> {
        s.check_spin()?;
        if s > ORACLE_MAX_SPIN {
            return Err(Error::SpinTooLarge {
                s,
                limit: ORACLE_MAX_SPIN,
            });
        }
        Ok(Layout {
            spin_dim: s.multiplicity()?,
        })
    }

    pub fn spin_dim(&self) -> usize {
        self.spin_dim
    }

    pub fn particle_dim(&self) -> usize {
        Mode::COUNT * self.spin_dim
    }

    pub fn total_dim(&self) -> usize {
        self.particle_dim() * self.particle_dim()
    }

    fn single(&self, mode: Mode, spin: usize) -> usize {
        mode as usize * self.spin_dim + spin
    }

    pub fn index(&self, m1: Mode, s1: usize, m2: Mode, s2: usize) -> usize {
        self.single(m1, s1) * self.particle_dim() + self.single(m2, s2)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoParticleVector {
    layout_spin_dim: usize,
    data: CVector,
}

impl TwoParticleVector {
    /// `|mode1> ⊗ |spin1> ⊗ |mode2> ⊗ |spin2>`, built as a Kronecker product.
    pub fn product(mode1: Mode, spin1: &SpinState, mode2: Mode, spin2: &SpinState) -> Result<Self> {
        if spin1.spin() != spin2.spin() {
            return Err(Error::SpinMismatch {
                left: spin1.spin(),
                right: spin2.spin(),
            });
        }
        let layout = Layout::new(spin1.spin())?;
        let one_particle = |mode: Mode, spin: &SpinState| {
            let mut mode_vec = CVector::zeros(Mode::COUNT);
            mode_vec[mode as usize] = Complex64::from(1.0);
            mode_vec.kronecker(spin.vector())
        };
        let data = one_particle(mode1, spin1).kronecker(&one_particle(mode2, spin2));
        debug_assert_eq!(data.len(), layout.total_dim());
        Ok(TwoParticleVector {
            layout_spin_dim: layout.spin_dim(),
            data,
        })
    }

    pub fn data(&self) -> &CVector {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.norm()
    }

    /// `<self| op |other>`.
    pub fn matrix_element(&self, op: &CMatrix, other: &TwoParticleVector) -> Complex64 {
        self.data.dotc(&(op * &other.data))
    }

    pub fn inner(&self, other: &TwoParticleVector) -> Complex64 {
        self.data.dotc(&other.data)
    }

    pub fn spin_dim(&self) -> usize {
        self.layout_spin_dim
    }
}

/// Permutation swapping the two particle slots (mode and spin together).
pub fn exchange_operator(s: HalfInt) -> Result<CMatrix> {
    let layout = Layout::new(s)?;
    let p = layout.particle_dim();
    let n = layout.total_dim();
    let mut m = CMatrix::zeros(n, n);
    for a in 0..p {
        for b in 0..p {
            m[(b * p + a, a * p + b)] = Complex64::from(1.0);
        }
    }
    Ok(m)
}

/// `(1 + (-1)^(2s) P) / 2`.
pub fn build_lambda(s: HalfInt) -> Result<CMatrix> {
    let p = exchange_operator(s)?;
    let n = p.nrows();
    let sign = Complex64::from(f64::from(s.statistics_sign()));
    Ok((CMatrix::identity(n, n) + p * sign) * Complex64::from(0.5))
}

/// Spin evolution attached to each scattering branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinPhase {
    /// `S = S_space ⊗ 1`.
    Untouched,
    /// `exp(i Sz theta)` on each particle.
    PerProjection,
    /// The scalar `exp(i s theta)` on each particle.
    TotalSpin,
}

fn spin_evolution(s: HalfInt, phase: SpinPhase, theta: f64) -> Result<CMatrix> {
    let d = s.multiplicity()?;
    Ok(match phase {
        SpinPhase::Untouched => CMatrix::identity(d, d),
        // exp(i theta Sz) = exp(-i (-theta) z.S)
        SpinPhase::PerProjection => rotation_matrix(s, [0.0, 0.0, 1.0], -theta)?,
        SpinPhase::TotalSpin => CMatrix::identity(d, d) * Complex64::cis(s.value() * theta),
    })
}

/// Scattering operator restricted to the two incoming mode orderings.
///
/// `|in_L a, in_R b>` goes to `f(phi) U(phi)a ⊗ U(phi)b` on
/// `(out_T, out_B)` plus `f(-pi+phi) U(-pi+phi)a ⊗ U(-pi+phi)b` on
/// `(out_B, out_T)`; the mirrored `|in_R, in_L>` column is filled the same
/// way so the operator commutes with particle exchange. All other columns
/// are zero.
pub fn build_s_operator(
    model: &AmplitudeModel,
    phi: f64,
    phase: SpinPhase,
    s: HalfInt,
) -> Result<CMatrix> {
    check_principal(phi)?;
    let layout = Layout::new(s)?;
    let d = layout.spin_dim();
    let f_direct = model.evaluate(phi)?;
    let f_exchanged = model.evaluate_exchanged(phi)?;
    let u_direct = spin_evolution(s, phase, phi)?;
    let u_exchanged = spin_evolution(s, phase, phi - PI)?;

    let n = layout.total_dim();
    let mut op = CMatrix::zeros(n, n);
    let incoming = [
        (Mode::InLeft, Mode::InRight, Mode::OutTop, Mode::OutBottom),
        (Mode::InRight, Mode::InLeft, Mode::OutBottom, Mode::OutTop),
    ];
    for (in1, in2, direct1, direct2) in incoming {
        for a in 0..d {
            for b in 0..d {
                let col = layout.index(in1, a, in2, b);
                for a2 in 0..d {
                    for b2 in 0..d {
                        op[(layout.index(direct1, a2, direct2, b2), col)] +=
                            f_direct * u_direct[(a2, a)] * u_direct[(b2, b)];
                        op[(layout.index(direct2, a2, direct1, b2), col)] +=
                            f_exchanged * u_exchanged[(a2, a)] * u_exchanged[(b2, b)];
                    }
                }
            }
        }
    }
    Ok(op)
}

/// The initial state and the direct / exchanged final states.
pub struct ScatteringStates {
    pub initial: TwoParticleVector,
    pub final_direct: TwoParticleVector,
    pub final_exchanged: TwoParticleVector,
}

pub fn scattering_states(cfg: &ScatterConfig) -> Result<ScatteringStates> {
    let (top, bottom) = match cfg.detector() {
        Some(d) => (&d.top, &d.bottom),
        None => (cfg.alpha(), cfg.beta()),
    };
    Ok(ScatteringStates {
        initial: TwoParticleVector::product(Mode::InLeft, cfg.alpha(), Mode::InRight, cfg.beta())?,
        final_direct: TwoParticleVector::product(Mode::OutTop, top, Mode::OutBottom, bottom)?,
        final_exchanged: TwoParticleVector::product(Mode::OutBottom, bottom, Mode::OutTop, top)?,
    })
}

/// Differential cross-section by explicit operator algebra.
///
/// * standard: `|2 <phi'| Λ† S |phi>|²`
/// * dynamical / working: `|<phi'|S'|phi> + <phi'_e|S'|phi>|²`
pub fn oracle_w(cfg: &ScatterConfig, phi: f64, prescription: Prescription) -> Result<f64> {
    let s = cfg.spin();
    let states = scattering_states(cfg)?;
    let amp = match prescription {
        Prescription::StandardSsc => {
            let lambda = build_lambda(s)?;
            let scatter = build_s_operator(cfg.model(), phi, SpinPhase::Untouched, s)?;
            let op = lambda.adjoint() * scatter;
            states.final_direct.matrix_element(&op, &states.initial) * 2.0
        }
        Prescription::DynamicalGm | Prescription::WorkingSOmega => {
            let phase = if prescription == Prescription::DynamicalGm {
                SpinPhase::PerProjection
            } else {
                SpinPhase::TotalSpin
            };
            let scatter = build_s_operator(cfg.model(), phi, phase, s)?;
            let evolved = TwoParticleVector {
                layout_spin_dim: states.initial.layout_spin_dim,
                data: &scatter * states.initial.data(),
            };
            states.final_direct.inner(&evolved) + states.final_exchanged.inner(&evolved)
        }
    };
    Ok(amp.norm_sqr())
}
