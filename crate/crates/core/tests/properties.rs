use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use spinstat::amplitude::AmplitudeModel;
use spinstat::atomic::{thomas_shift, OrbitParams};
use spinstat::cosmology::{gravito_potential, numerical_curl};
use spinstat::exchange::{apply_exchange, default_plan};
use spinstat::halfint::HalfInt;
use spinstat::oracle::oracle_w;
use spinstat::prescriptions::{
    cross_section, w_dynamical, w_standard, w_working, Prescription, ScatterConfig,
};
use spinstat::spin::{random_state, rotation_matrix, sz_eigenstate, CMatrix, CVector, SpinState};

fn spin(max_twice: i32) -> impl Strategy<Value = HalfInt> {
    (0..=max_twice).prop_map(HalfInt::from_doubled)
}

fn unit_axis() -> impl Strategy<Value = [f64; 3]> {
    (-1.0f64..1.0, 0.0f64..(2.0 * PI)).prop_map(|(z, az)| {
        let r = (1.0 - z * z).sqrt();
        [r * az.cos(), r * az.sin(), z]
    })
}

fn principal() -> impl Strategy<Value = f64> {
    (0.0f64..1.0).prop_map(|u| PI - u * 2.0 * PI)
}

fn model() -> impl Strategy<Value = AmplitudeModel> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..4).prop_map(|c| {
        AmplitudeModel::partial_wave(
            c.into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
        .expect("finite coefficients")
    })
}

fn identity_gap(m: &CMatrix) -> f64 {
    (m - CMatrix::identity(m.nrows(), m.ncols())).camax()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotations_are_unitary(s in spin(8), n in unit_axis(), angle in -10.0f64..10.0) {
        let r = rotation_matrix(s, n, angle).unwrap();
        prop_assert!(identity_gap(&(r.adjoint() * &r)) < 1e-10);
    }

    #[test]
    fn rotations_compose(s in spin(6), n in unit_axis(), a in -4.0f64..4.0, b in -4.0f64..4.0) {
        let ra = rotation_matrix(s, n, a).unwrap();
        let rb = rotation_matrix(s, n, b).unwrap();
        let rab = rotation_matrix(s, n, a + b).unwrap();
        prop_assert!((ra * rb - rab).camax() < 1e-10);
    }

    #[test]
    fn full_turns(s in spin(8), n in unit_axis()) {
        let two_pi = rotation_matrix(s, n, 2.0 * PI).unwrap();
        let sign = f64::from(s.statistics_sign());
        prop_assert!((two_pi - CMatrix::identity(s.doubled() as usize + 1, s.doubled() as usize + 1) * Complex64::from(sign)).camax() < 1e-10);
        prop_assert!(identity_gap(&rotation_matrix(s, n, 4.0 * PI).unwrap()) < 1e-10);
    }

    #[test]
    fn working_matches_standard(s in spin(6), seeds in (any::<u64>(), any::<u64>()), m in model(), phi in principal()) {
        let cfg = ScatterConfig::new(random_state(s, seeds.0).unwrap(), random_state(s, seeds.1).unwrap(), m).unwrap();
        let scale = 1.0 + w_standard(&cfg, phi).unwrap();
        prop_assert!((w_working(&cfg, phi).unwrap() - w_standard(&cfg, phi).unwrap()).abs() < 1e-12 * scale);
    }

    #[test]
    fn cross_sections_ignore_global_phases(s in spin(4), seeds in (any::<u64>(), any::<u64>()), t in 0.0f64..6.0, phi in principal()) {
        let a = random_state(s, seeds.0).unwrap();
        let b = random_state(s, seeds.1).unwrap();
        let a_rot = SpinState::new(s, a.amps().iter().map(|z| z * Complex64::cis(t)).collect()).unwrap();
        let m = AmplitudeModel::constant(Complex64::new(0.3, -0.8));
        let c1 = ScatterConfig::new(a, b.clone(), m.clone()).unwrap();
        let c2 = ScatterConfig::new(a_rot, b, m).unwrap();
        for p in Prescription::ALL {
            let (x, y) = (cross_section(&c1, phi, p).unwrap(), cross_section(&c2, phi, p).unwrap());
            prop_assert!(x >= 0.0);
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn every_eigenpair_agrees(s in spin(6), ia in 0usize..7, ib in 0usize..7, phi in principal(), m in model()) {
        let d = s.doubled() as usize + 1;
        let (ma, mb) = (s.projection_at(ia % d), s.projection_at(ib % d));
        let cfg = ScatterConfig::new(sz_eigenstate(s, ma).unwrap(), sz_eigenstate(s, mb).unwrap(), m).unwrap();
        prop_assert!((w_dynamical(&cfg, phi).unwrap() - w_standard(&cfg, phi).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn oracle_agrees(s in spin(2), seeds in (any::<u64>(), any::<u64>()), m in model(), phi in principal()) {
        let cfg = ScatterConfig::new(random_state(s, seeds.0).unwrap(), random_state(s, seeds.1).unwrap(), m).unwrap();
        for p in Prescription::ALL {
            prop_assert!((cross_section(&cfg, phi, p).unwrap() - oracle_w(&cfg, phi, p).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn exchange_phase_is_universal(s in spin(8)) {
        let plan = default_plan(s).unwrap();
        let d = s.doubled() as usize + 1;
        let want = Complex64::from(f64::from(s.statistics_sign()));
        for e in plan.entries.iter().filter(|e| e.axis.is_some()) {
            let mut ket = CVector::zeros(d * d);
            ket[s.index_of(e.ma).unwrap() * d + s.index_of(e.mb).unwrap()] = Complex64::from(1.0);
            let out = apply_exchange(&plan, &ket).unwrap();
            prop_assert!(out.overlap > 1.0 - 1e-10);
            prop_assert!((out.phase.unwrap() - want).norm() < 1e-10);
        }
        // Exactly the pairs with |m_a| != |m_b| are flagged.
        for e in &plan.entries {
            prop_assert_eq!(e.axis.is_none(), e.ma.abs() != e.mb.abs());
        }
    }

    #[test]
    fn curl_is_uniform(omega in -20.0f64..20.0, p in prop::array::uniform3(-5.0f64..5.0)) {
        let field = |q: [f64; 3]| gravito_potential(omega, 1.0, q).unwrap().0;
        let c = numerical_curl(field, p, 1e-3).unwrap();
        prop_assert!(c[0].abs() < 1e-10 && c[1].abs() < 1e-10);
        prop_assert!((c[2] + omega).abs() < 1e-10 * (1.0 + omega.abs()));
    }

    #[test]
    fn thomas_monotone(v1 in 0.0f64..0.999, v2 in 0.0f64..0.999) {
        let (lo, hi) = if v1 <= v2 { (v1, v2) } else { (v2, v1) };
        let t = |v| thomas_shift(&OrbitParams::new(v, 1.0, HalfInt::HALF, HalfInt::HALF).unwrap()).unwrap();
        prop_assert!(t(lo) <= t(hi));
    }

    #[test]
    fn halfint_text_round_trip(twice in -40i32..40) {
        let h = HalfInt::from_doubled(twice);
        prop_assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
        let json = serde_json::to_string(&h).unwrap();
        prop_assert_eq!(serde_json::from_str::<HalfInt>(&json).unwrap(), h);
    }
}
