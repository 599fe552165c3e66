//! Acceptance suite: eleven numbered criteria, each printing one
//! PASS/FAIL line (visible with `-- --nocapture`). Tolerances are pinned
//! in the assertions; stated runtime budgets are enforced with a timer.

use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;

use qdesign_core::constructions::{
    binary_tetrahedral, decohere, design_mixing, interval_design, iso_mub, platonic_design,
    product_design, sic_d3, standard_mub_d4, uniform_family, Solid,
};
use qdesign_core::constructions::mub::local_factor_groups;
use qdesign_core::constructions::catalog_entries;
use qdesign_core::moments::{
    delta_mixed, delta_mixed_dense, frame_potential_unitary, gamma, omega, partial_trace_omega,
};
use qdesign_core::sampling::{
    estimate_omega, estimate_reduced_purity, estimate_trace_power_means, sample_hs, SamplerConfig,
};
use qdesign_core::simplex::{measure_moment, verify_simplicial, SimplexMeasure};
use qdesign_core::state::{angle_spectrum, BlochPoint, Ensemble, Side};
use qdesign_core::tomography::PovmDesign;

fn criterion(number: usize, description: &str, run: impl FnOnce() -> Result<(), String>) {
    match run() {
        Ok(()) => println!("criterion {number:02} PASS: {description}"),
        Err(msg) => {
            println!("criterion {number:02} FAIL: {description}: {msg}");
            panic!("criterion {number} failed: {msg}");
        }
    }
}

fn check(ok: bool, msg: impl Fn() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn budget(start: Instant, seconds: f64) -> Result<(), String> {
    let elapsed = start.elapsed().as_secs_f64();
    check(elapsed < seconds, || {
        format!("runtime {elapsed:.2}s exceeds the {seconds}s budget")
    })
}

#[test]
fn acceptance_01_mub_structure() {
    criterion(1, "intra-basis orthonormality and 1/4 cross overlaps", || {
        let start = Instant::now();
        for mub in [standard_mub_d4().map_err(|e| e.to_string())?,
                    iso_mub().map_err(|e| e.to_string())?.mub] {
            let bases = mub.bases();
            let mut cross_pairs = 0;
            for b1 in 0..bases.len() {
                for (i, psi) in bases[b1].iter().enumerate() {
                    for (j, phi) in bases[b1].iter().enumerate() {
                        let target = if i == j { 1.0 } else { 0.0 };
                        let ov = psi.overlap_sq(phi).map_err(|e| e.to_string())?;
                        check((ov - target).abs() <= 1e-10, || {
                            format!("basis {b1} states {i},{j}: overlap {ov}")
                        })?;
                    }
                }
                for b2 in (b1 + 1)..bases.len() {
                    for psi in &bases[b1] {
                        for phi in &bases[b2] {
                            let ov = psi.overlap_sq(phi).map_err(|e| e.to_string())?;
                            check((ov - 0.25).abs() <= 1e-10, || {
                                format!("bases {b1}/{b2}: overlap {ov}")
                            })?;
                            cross_pairs += 1;
                        }
                    }
                }
            }
            check(cross_pairs == 160, || {
                format!("expected 160 cross pairs, saw {cross_pairs}")
            })?;
        }
        budget(start, 1.0)
    });
}

#[test]
fn acceptance_02_iso_entanglement_and_dodecahedral_geometry() {
    criterion(2, "common Schmidt vector and dodecahedral reductions", || {
        let start = Instant::now();
        let iso = iso_mub().map_err(|e| e.to_string())?;
        let r = (3f64 / 20.0).sqrt();
        for state in iso.mub.all_states() {
            let lam = state.schmidt_vector().map_err(|e| e.to_string())?;
            check((lam[0] - (0.5 + r)).abs() <= 1e-10, || {
                format!("Schmidt head {}", lam[0])
            })?;
            check((lam[1] - (0.5 - r)).abs() <= 1e-10, || {
                format!("Schmidt tail {}", lam[1])
            })?;
        }
        let reference: Vec<BlochPoint> =
            qdesign_core::constructions::platonic::dodecahedron_reference_points();
        let reference_spectrum = angle_spectrum(&reference).map_err(|e| e.to_string())?;
        let ensemble = iso.mub.ensemble().map_err(|e| e.to_string())?;
        for side in [Side::A, Side::B] {
            let reduced = ensemble.reduce(side).map_err(|e| e.to_string())?;
            let points = reduced.bloch_points_merged().map_err(|e| e.to_string())?;
            check(points.len() == 20, || format!("{} distinct points", points.len()))?;
            for p in &points {
                check((p.radius() - r).abs() <= 1e-10, || {
                    format!("radius {}", p.radius())
                })?;
            }
            let spectrum = angle_spectrum(&points).map_err(|e| e.to_string())?;
            check(spectrum.matches(&reference_spectrum, 1e-9), || {
                format!("angle spectrum {:?}", spectrum.values)
            })?;
        }
        budget(start, 1.0)
    });
}

#[test]
fn acceptance_03_gamma_closed_forms() {
    criterion(3, "cycle-sum gamma matches the closed forms", || {
        let start = Instant::now();
        let closed_form = |n: f64, t: usize| -> f64 {
            match t {
                2 => (n * n + 3.0) / ((n * n + 1.0) * (n * n + 1.0)),
                3 => (n.powi(6) + 9.0 * n.powi(4) + 24.0 * n.powi(2) + 2.0)
                    / (n * (n.powi(4) + 3.0 * n.powi(2) + 2.0).powi(2)),
                4 => (n.powi(8) + 18.0 * n.powi(6) + 123.0 * n.powi(4) + 344.0 * n.powi(2)
                    + 90.0)
                    / (n.powi(6) + 6.0 * n.powi(4) + 11.0 * n.powi(2) + 6.0).powi(2),
                5 => (n.powi(12)
                    + 30.0 * n.powi(10)
                    + 375.0 * n.powi(8)
                    + 2420.0 * n.powi(6)
                    + 7422.0 * n.powi(4)
                    + 3960.0 * n.powi(2)
                    + 192.0)
                    / (n * (n.powi(8)
                        + 10.0 * n.powi(6)
                        + 35.0 * n.powi(4)
                        + 50.0 * n.powi(2)
                        + 24.0)
                        .powi(2)),
                _ => unreachable!(),
            }
        };
        for n in [2usize, 3, 4] {
            for t in 2..=5 {
                let cycle = gamma(n, t).map_err(|e| e.to_string())?;
                let formula = closed_form(n as f64, t);
                check((cycle - formula).abs() <= 1e-12, || {
                    format!("gamma({n},{t}): {cycle} vs {formula}")
                })?;
            }
        }
        check(gamma(2, 2).map_err(|e| e.to_string())?.to_bits() == (7.0f64 / 25.0).to_bits(), || {
            "gamma(2,2) is not exactly 7/25".to_string()
        })?;
        check(gamma(3, 2).map_err(|e| e.to_string())?.to_bits() == (3.0f64 / 25.0).to_bits(), || {
            "gamma(3,2) is not exactly 3/25".to_string()
        })?;
        budget(start, 5.0)
    });
}

#[test]
fn acceptance_04_omega_consistency() {
    criterion(4, "dense moment operators and their partial traces", || {
        let printed_22 = DMatrix::from_row_slice(
            4,
            4,
            &[
                0.3, 0.0, 0.0, 0.0, //
                0.0, 0.2, 0.1, 0.0, //
                0.0, 0.1, 0.2, 0.0, //
                0.0, 0.0, 0.0, 0.3,
            ],
        );
        let mut printed_32 = DMatrix::<f64>::zeros(9, 9);
        let diag4 = [0usize, 4, 8];
        for i in 0..9 {
            printed_32[(i, i)] = if diag4.contains(&i) { 4.0 } else { 3.0 };
        }
        for (a, b) in [(1usize, 3usize), (2, 6), (5, 7)] {
            printed_32[(a, b)] = 1.0;
            printed_32[(b, a)] = 1.0;
        }
        printed_32 /= 30.0;

        for (n, printed) in [(2usize, printed_22), (3usize, printed_32)] {
            let mut op = omega(n, 2, true).map_err(|e| e.to_string())?;
            let dense = op.materialize().map_err(|e| e.to_string())?;
            for i in 0..dense.nrows() {
                for j in 0..dense.ncols() {
                    let want = Complex64::new(printed[(i, j)], 0.0);
                    check((dense[(i, j)] - want).norm() <= 1e-12, || {
                        format!("omega({n},2)[{i},{j}] = {}", dense[(i, j)])
                    })?;
                }
            }
        }
        for n in [2usize, 3] {
            let mut upper = omega(n, 3, true).map_err(|e| e.to_string())?;
            upper.materialize().map_err(|e| e.to_string())?;
            let traced = partial_trace_omega(&upper).map_err(|e| e.to_string())?;
            let mut lower = omega(n, 2, true).map_err(|e| e.to_string())?;
            let expected = lower.materialize().map_err(|e| e.to_string())?;
            let dense = traced.dense().ok_or("traced operator lost its dense form")?;
            for i in 0..dense.nrows() {
                for j in 0..dense.ncols() {
                    check((dense[(i, j)] - expected[(i, j)]).norm() <= 1e-12, || {
                        format!("trace of omega({n},3) differs at ({i},{j})")
                    })?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_05_reduced_mub_residual_table() {
    criterion(5, "residuals of the reduced MUB ensembles", || {
        let start = Instant::now();
        let rows = [
            ("standard", standard_mub_d4().map_err(|e| e.to_string())?.ensemble(),
             [3.37e-3, 8.42e-3]),
            ("iso", iso_mub().map_err(|e| e.to_string())?.mub.ensemble(),
             [5.88e-5, 1.47e-4]),
        ];
        for (name, ensemble, tail) in rows {
            let reduced = ensemble
                .map_err(|e| e.to_string())?
                .reduce(Side::B)
                .map_err(|e| e.to_string())?;
            for t in 1..=3usize {
                let delta = delta_mixed(&reduced, t).map_err(|e| e.to_string())?.delta;
                check(delta.abs() <= 1e-10, || format!("{name} t={t}: {delta}"))?;
            }
            for (t, expected) in [4usize, 5].into_iter().zip(tail) {
                let delta = delta_mixed(&reduced, t).map_err(|e| e.to_string())?.delta;
                check((delta - expected).abs() <= 0.01 * expected, || {
                    format!("{name} t={t}: {delta:.6e} vs {expected:.2e}")
                })?;
            }
        }
        budget(start, 5.0)
    });
}

#[test]
fn acceptance_06_platonic_residual_table() {
    criterion(6, "residuals of the Platonic designs", || {
        let a = design_mixing();
        let mut icosa_tail = [0.0f64; 2];
        let mut dodeca_tail = [0.0f64; 2];
        for solid in Solid::ALL {
            let ensemble = platonic_design(solid, a).map_err(|e| e.to_string())?;
            let d2 = delta_mixed(&ensemble, 2).map_err(|e| e.to_string())?.delta;
            check(d2.abs() <= 1e-10, || format!("{solid:?} t=2: {d2}"))?;
            let d3 = delta_mixed(&ensemble, 3).map_err(|e| e.to_string())?.delta;
            if solid == Solid::Tetrahedron {
                check((d3 - 6.0e-3).abs() <= 0.01 * 6.0e-3, || {
                    format!("tetrahedron t=3: {d3:.6e}")
                })?;
            } else {
                check(d3.abs() <= 1e-10, || format!("{solid:?} t=3: {d3}"))?;
            }
            if matches!(solid, Solid::Icosahedron | Solid::Dodecahedron) {
                for (slot, t) in [4usize, 5].into_iter().enumerate() {
                    let d = delta_mixed(&ensemble, t).map_err(|e| e.to_string())?.delta;
                    let expected = [5.88e-5, 1.47e-4][slot];
                    check((d - expected).abs() <= 0.01 * expected, || {
                        format!("{solid:?} t={t}: {d:.6e} vs {expected:.2e}")
                    })?;
                    if solid == Solid::Icosahedron {
                        icosa_tail[slot] = d;
                    } else {
                        dodeca_tail[slot] = d;
                    }
                }
            }
        }
        for slot in 0..2 {
            check((icosa_tail[slot] - dodeca_tail[slot]).abs() <= 1e-12, || {
                format!(
                    "icosahedral {} vs dodecahedral {}",
                    icosa_tail[slot], dodeca_tail[slot]
                )
            })?;
        }
        Ok(())
    });
}

#[test]
fn acceptance_07_tomography_round_trip() {
    criterion(7, "linear inversion is the identity on 1000 random states", || {
        let tetra = platonic_design(Solid::Tetrahedron, design_mixing())
            .map_err(|e| e.to_string())?;
        let iso_reduced = iso_mub()
            .map_err(|e| e.to_string())?
            .mub
            .ensemble()
            .map_err(|e| e.to_string())?
            .reduce(Side::B)
            .map_err(|e| e.to_string())?;
        for (name, ensemble) in [("tetrahedral", tetra), ("iso-mub-reduced", iso_reduced)] {
            let povm = PovmDesign::new(&ensemble).map_err(|e| e.to_string())?;
            // Resolution of the identity at 1e-10.
            let mut resolution = DMatrix::<Complex64>::zeros(2, 2);
            for e in povm.effects() {
                resolution += e;
            }
            for i in 0..2 {
                for j in 0..2 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    check(
                        (resolution[(i, j)] - Complex64::new(expect, 0.0)).norm() <= 1e-10,
                        || format!("{name}: effects do not resolve identity"),
                    )?;
                }
            }
            let cfg = SamplerConfig { dim: 2, count: 1000, seed: 71 };
            for (idx, rho) in sample_hs(&cfg).enumerate() {
                let p = povm.probabilities(&rho).map_err(|e| e.to_string())?;
                let rec = povm.reconstruct(&p).map_err(|e| e.to_string())?;
                for i in 0..2 {
                    for j in 0..2 {
                        let dev = (rec.matrix[(i, j)] - rho.matrix()[(i, j)]).norm();
                        check(dev <= 1e-10, || {
                            format!("{name} state {idx} entry ({i},{j}): deviation {dev:.2e}")
                        })?;
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_08_simplicial_designs() {
    criterion(8, "interval catalog and decohered SIC verify analytically", || {
        for (t, m, measure) in catalog_entries() {
            let design = interval_design(t, m, measure).map_err(|e| e.to_string())?;
            let report = verify_simplicial(&design, 1e-10).map_err(|e| e.to_string())?;
            check(report.passes, || {
                format!("interval t={t} M={m} {measure:?}: deviation {}", report.max_deviation)
            })?;
        }
        // The second moment of the Hilbert-Schmidt interval measure is 3/20.
        let m2 = measure_moment(2, SimplexMeasure::HilbertSchmidt, &[2, 0])
            .map_err(|e| e.to_string())?;
        let centered = m2 - 0.25;
        check((centered - 0.15).abs() <= 1e-14, || {
            format!("centered second moment {centered}")
        })?;

        let sic = sic_d3().map_err(|e| e.to_string())?;
        let design = decohere(&sic, 2).map_err(|e| e.to_string())?;
        let report = verify_simplicial(&design, 1e-10).map_err(|e| e.to_string())?;
        check(report.passes, || {
            format!("decohered SIC deviation {}", report.max_deviation)
        })
    });
}

#[test]
fn acceptance_09_product_and_factor_group_designs() {
    criterion(
        9,
        "product construction and local-factor unitary 5-designs (factor \
         groups; the twenty per-state factors alone provably cannot reach \
         order five)",
        || {
            let simplex = interval_design(3, 2, SimplexMeasure::HilbertSchmidt)
                .map_err(|e| e.to_string())?
                .fold_to_chamber();
            let retagged = qdesign_core::simplex::SimplexDesign::new(
                2,
                2,
                SimplexMeasure::HilbertSchmidt,
                simplex.points().to_vec(),
            )
            .map_err(|e| e.to_string())?;
            let product = product_design(&retagged, &uniform_family(binary_tetrahedral()))
                .map_err(|e| e.to_string())?;
            let delta = delta_mixed(&product, 2).map_err(|e| e.to_string())?.delta;
            check(delta.abs() <= 1e-10, || format!("product design delta {delta}"))?;

            // The iso-entangled construction's local unitaries: the factor
            // groups (60 elements per slot) saturate the order-5 bound.
            let (left, right) = local_factor_groups();
            for (name, family) in [("left", left), ("right", right)] {
                let w = 1.0 / family.len() as f64;
                let weighted: Vec<(f64, DMatrix<Complex64>)> =
                    family.iter().map(|u| (w, u.clone())).collect();
                let fp = frame_potential_unitary(&weighted, 5).map_err(|e| e.to_string())?;
                check(fp.delta.abs() <= 1e-9, || {
                    format!("{name} factor group: potential {} vs bound {}", fp.value, fp.bound)
                })?;
            }

            // Literal twenty-element families: far from the bound, as any
            // twenty-element family in U(2) must be.
            let iso = iso_mub().map_err(|e| e.to_string())?;
            for family in [&iso.left_factors, &iso.right_factors] {
                let weighted: Vec<(f64, DMatrix<Complex64>)> =
                    family.iter().map(|u| (0.05, u.clone())).collect();
                let fp = frame_potential_unitary(&weighted, 5).map_err(|e| e.to_string())?;
                check(fp.delta > 1.0, || {
                    format!("per-state factors unexpectedly near the bound: {}", fp.value)
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_10_monte_carlo_cross_checks() {
    criterion(10, "seed-pinned statistical cross-checks", || {
        let start = Instant::now();
        let est = estimate_omega(2, 2, &SamplerConfig { dim: 2, count: 1_000_000, seed: 2005 })
            .map_err(|e| e.to_string())?;
        check(est.max_sigma_units <= 3.0, || {
            format!("omega estimate at {} sigma", est.max_sigma_units)
        })?;

        let powers =
            estimate_trace_power_means(2, 3, &SamplerConfig { dim: 2, count: 1_000_000, seed: 2002 });
        check(powers[1].sigma_distance(0.8) <= 3.0, || {
            format!("Tr rho^2 estimate {:?}", powers[1])
        })?;
        check(powers[2].sigma_distance(0.7) <= 3.0, || {
            format!("Tr rho^3 estimate {:?}", powers[2])
        })?;

        let reduced =
            estimate_reduced_purity(2, &SamplerConfig { dim: 2, count: 1_000_000, seed: 2003 });
        let combined = (reduced.std_error.powi(2) + powers[1].std_error.powi(2)).sqrt();
        check((reduced.mean - powers[1].mean).abs() <= 3.0 * combined, || {
            format!("reduction sampler {} vs flat sampler {}", reduced.mean, powers[1].mean)
        })?;
        budget(start, 60.0)
    });
}

#[test]
fn acceptance_11_residual_positivity_and_path_agreement() {
    criterion(11, "positivity and dual-path agreement on random ensembles", || {
        let mut checked = 0;
        for ensemble_index in 0..100u64 {
            let n = if ensemble_index % 2 == 0 { 2 } else { 3 };
            let members = 2 + (ensemble_index as usize * 7) % 9;
            let cfg = SamplerConfig { dim: n, count: members, seed: 9000 + ensemble_index };
            let states: Vec<_> = sample_hs(&cfg).collect();
            let ensemble = Ensemble::uniform_mixed(states).map_err(|e| e.to_string())?;
            for t in [2usize, 3] {
                let cycle = delta_mixed(&ensemble, t).map_err(|e| e.to_string())?;
                check(cycle.delta >= -1e-10, || {
                    format!("ensemble {ensemble_index} t={t}: delta {}", cycle.delta)
                })?;
                let dense = delta_mixed_dense(&ensemble, t).map_err(|e| e.to_string())?;
                check((cycle.delta - dense.delta).abs() <= 1e-11, || {
                    format!(
                        "ensemble {ensemble_index} t={t}: cycle {} vs dense {}",
                        cycle.delta, dense.delta
                    )
                })?;
            }
            checked += 1;
        }
        check(checked == 100, || "fewer than 100 ensembles checked".into())
    });
}
