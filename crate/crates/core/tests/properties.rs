//! Property checks of the structural invariants: spectra of dual
//! reductions, trace/positivity preservation, residual positivity, frame
//! potential floors, and invariance of the moment operator.

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use qdesign_core::moments::{
    delta_mixed, delta_mixed_dense, frame_potential_projective, omega,
};
use qdesign_core::sampling::{sample_haar, sample_hs, SamplerConfig};
use qdesign_core::state::{
    state_from_bloch, Ensemble, Member, PureState, Side,
};

fn normalized_state(parts: &[(f64, f64)], bipartition: (usize, usize)) -> Option<PureState> {
    let amps: Vec<Complex64> = parts.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if norm < 1e-6 {
        return None;
    }
    PureState::normalized(amps, Some(bipartition)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_reductions_share_their_spectrum(
        parts in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9),
        na in 2usize..=3,
    ) {
        let dim = na * na;
        let Some(psi) = normalized_state(&parts[..dim.min(9)], (na, na)) else {
            return Ok(());
        };
        if psi.dim() != dim {
            return Ok(());
        }
        let spec_a = psi.partial_trace(Side::A).unwrap().eigenvalues_descending();
        let spec_b = psi.partial_trace(Side::B).unwrap().eigenvalues_descending();
        for (a, b) in spec_a.iter().zip(&spec_b) {
            prop_assert!((a - b).abs() <= 1e-10, "spectra {spec_a:?} vs {spec_b:?}");
        }
        let lam = psi.schmidt_vector().unwrap();
        prop_assert!((lam.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        for w in lam.windows(2) {
            prop_assert!(w[0] >= w[1] - 1e-15);
        }
    }

    #[test]
    fn partial_trace_preserves_trace_and_positivity(
        parts in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6),
        keep_b in proptest::bool::ANY,
    ) {
        let Some(psi) = normalized_state(&parts, (2, 3)) else { return Ok(()); };
        let side = if keep_b { Side::A } else { Side::B };
        let rho = psi.partial_trace(side).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() <= 1e-12);
        let min = rho.eigenvalues_descending().last().copied().unwrap();
        prop_assert!(min >= -1e-10, "min eigenvalue {min}");
    }

    #[test]
    fn bloch_purity_law_inside_the_ball(
        x in -0.29f64..0.29,
        y in -0.29f64..0.29,
        z in -0.29f64..0.29,
    ) {
        let rho = state_from_bloch([x, y, z]).unwrap();
        let r_sq = x * x + y * y + z * z;
        prop_assert!((rho.purity() - (0.5 + 2.0 * r_sq)).abs() <= 1e-12);
    }

    #[test]
    fn residual_is_nonnegative_and_paths_agree(
        seed in 0u64..1_000_000,
        n in 2usize..=3,
        members in 2usize..=6,
        t in 2usize..=3,
    ) {
        let cfg = SamplerConfig { dim: n, count: members, seed };
        let states: Vec<_> = sample_hs(&cfg).collect();
        let ens = Ensemble::uniform_mixed(states).unwrap();
        let cycle = delta_mixed(&ens, t).unwrap();
        prop_assert!(cycle.delta >= -1e-10, "delta = {}", cycle.delta);
        let dense = delta_mixed_dense(&ens, t).unwrap();
        prop_assert!(
            (cycle.delta - dense.delta).abs() <= 1e-11,
            "cycle {} vs dense {}",
            cycle.delta,
            dense.delta
        );
    }

    #[test]
    fn weighted_residual_stays_nonnegative(
        seed in 0u64..1_000_000,
        raw_weights in proptest::collection::vec(0.05f64..1.0, 3..6),
    ) {
        let m = raw_weights.len();
        let total: f64 = raw_weights.iter().sum();
        let cfg = SamplerConfig { dim: 2, count: m, seed };
        let members: Vec<(f64, Member)> = sample_hs(&cfg)
            .zip(&raw_weights)
            .map(|(rho, w)| (w / total, Member::Mixed(rho)))
            .collect();
        let ens = Ensemble::new(members).unwrap();
        for t in [2usize, 3] {
            let report = delta_mixed(&ens, t).unwrap();
            prop_assert!(report.delta >= -1e-10, "t={t}: delta {}", report.delta);
        }
    }

    #[test]
    fn projective_frame_potential_respects_its_floor(
        seed in 0u64..1_000_000,
        d in 2usize..=4,
        members in 2usize..=6,
        t in 1usize..=3,
    ) {
        let cfg = SamplerConfig { dim: d, count: members, seed };
        let states: Vec<_> = qdesign_core::sampling::sample_fs(&cfg).collect();
        let ens = Ensemble::uniform_pure(states).unwrap();
        let fp = frame_potential_projective(&ens, t).unwrap();
        prop_assert!(fp.delta >= -1e-12, "value {} under bound {}", fp.value, fp.bound);
    }
}

#[test]
fn moment_operator_commutes_with_tensor_unitaries() {
    // [omega, U^(x t)] = 0 for 100 Haar draws, entrywise at 1e-9.
    for (n, t) in [(2usize, 2usize), (2, 3), (3, 2)] {
        let mut op = omega(n, t, true).unwrap();
        let dense = op.materialize().unwrap().clone();
        let cfg = SamplerConfig {
            dim: n,
            count: 100,
            seed: 314159,
        };
        for u in sample_haar(&cfg) {
            let mut tensor = u.clone();
            for _ in 1..t {
                tensor = tensor.kronecker(&u);
            }
            let comm = &dense * &tensor - &tensor * &dense;
            let max = comm.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(max <= 1e-9, "N={n}, t={t}: commutator {max}");
        }
    }
}

#[test]
fn design_residuals_nest_downward() {
    // Built-in constructions that vanish at order t also vanish at orders
    // below t.
    use qdesign_core::constructions::{
        design_mixing, iso_mub, platonic_design, standard_mub_d4, Solid,
    };
    let a = design_mixing();
    for solid in [Solid::Octahedron, Solid::Cube, Solid::Icosahedron, Solid::Dodecahedron] {
        let ens = platonic_design(solid, a).unwrap();
        for t in 1..=3 {
            let report = delta_mixed(&ens, t).unwrap();
            assert!(
                report.delta.abs() <= 1e-10,
                "{solid:?} t={t}: {}",
                report.delta
            );
        }
    }
    for ens in [
        standard_mub_d4().unwrap().ensemble().unwrap(),
        iso_mub().unwrap().mub.ensemble().unwrap(),
    ] {
        let reduced = ens.reduce(Side::B).unwrap();
        for t in 1..=3 {
            assert!(delta_mixed(&reduced, t).unwrap().delta.abs() <= 1e-10);
        }
    }
}

#[test]
fn corollary_overlap_term_saturates_gamma_for_designs() {
    use qdesign_core::constructions::{design_mixing, platonic_design, Solid};
    let ens = platonic_design(Solid::Dodecahedron, design_mixing()).unwrap();
    for t in [2usize, 3] {
        let report = delta_mixed(&ens, t).unwrap();
        assert!(report.delta.abs() <= 1e-10);
        assert!(
            (report.overlap_term - report.gamma).abs() <= 1e-9,
            "t={t}: overlap {} vs gamma {}",
            report.overlap_term,
            report.gamma
        );
    }
}

#[test]
fn ensembles_reject_dimension_mixing() {
    let q2 = DMatrix::from_diagonal_element(2, 2, Complex64::new(0.5, 0.0));
    let q3 = DMatrix::from_diagonal_element(3, 3, Complex64::new(1.0 / 3.0, 0.0));
    let a = qdesign_core::state::DensityMatrix::new(q2).unwrap();
    let b = qdesign_core::state::DensityMatrix::new(q3).unwrap();
    assert!(Ensemble::new(vec![
        (0.5, Member::Mixed(a)),
        (0.5, Member::Mixed(b)),
    ])
    .is_err());
}
