//! Linear state reconstruction from the outcome statistics of a verified
//! mixed-state 2-design.
//!
//! A weighted design `{(w_i, rho_i)}` rescales to the measurement effects
//! `rho~_i = N w_i rho_i`, the unique scaling with `sum_i rho~_i = I` (the
//! uniform case gives `(N/M) rho_i`; the alternative `M/N` scaling fails
//! the resolution and is rejected by test). Outcome probabilities are
//! `p_i = Tr(rho~_i rho)` and the state returns by linear inversion as
//!
//! ```text
//!     rho = (N^2 + 1) sum_i p_i rho_i - N I,
//! ```
//!
//! the weighted form of the uniform formula
//! `rho = ((N^2+1) M / N) sum_i p_i rho~_i - N I`; both follow from
//! multiplying the 2-design moment identity by `A (x) I` and tracing out
//! the first factor.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moments::{delta_mixed_with_tolerance, DesignReport, DESIGN_TOLERANCE};
use crate::state::{DensityMatrix, Ensemble};

/// A mixed-state 2-design rescaled into a measurement (POVM).
#[derive(Debug, Clone)]
pub struct PovmDesign {
    dim: usize,
    /// `(w_i, rho_i)` with zero-weight members dropped.
    base: Vec<(f64, DensityMatrix)>,
    /// `rho~_i = N w_i rho_i`.
    effects: Vec<DMatrix<Complex64>>,
    report: DesignReport,
}

impl PovmDesign {
    /// Verifies the ensemble as a mixed-state design of order `t >= 2`
    /// before rescaling; refuses otherwise, carrying the residual.
    pub fn with_order(ensemble: &Ensemble, t: usize, tolerance: f64) -> Result<PovmDesign> {
        if t < 2 {
            return Err(Error::Unsupported(
                "tomography needs a design of order at least 2".into(),
            ));
        }
        let report = delta_mixed_with_tolerance(ensemble, t, tolerance)?;
        if !report.is_design {
            return Err(Error::UnverifiedDesign {
                t,
                delta: report.delta,
            });
        }
        let n = ensemble.dim();
        let base: Vec<(f64, DensityMatrix)> = ensemble
            .densities()
            .into_iter()
            .filter(|(w, _)| *w > 0.0)
            .collect();
        let effects: Vec<DMatrix<Complex64>> = base
            .iter()
            .map(|(w, rho)| rho.matrix() * Complex64::new(n as f64 * w, 0.0))
            .collect();
        // Resolution of the identity, the defining POVM property.
        let mut sum = DMatrix::<Complex64>::zeros(n, n);
        for e in &effects {
            sum += e;
        }
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (sum[(i, j)] - Complex64::new(expect, 0.0)).norm() > 1e-10 {
                    return Err(Error::Validation(format!(
                        "rescaled effects do not resolve the identity at entry ({i},{j})"
                    )));
                }
            }
        }
        Ok(PovmDesign {
            dim: n,
            base,
            effects,
            report,
        })
    }

    /// Standard order-2 verification at the default tolerance.
    pub fn new(ensemble: &Ensemble) -> Result<PovmDesign> {
        Self::with_order(ensemble, 2, DESIGN_TOLERANCE)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn effects(&self) -> &[DMatrix<Complex64>] {
        &self.effects
    }

    pub fn verification(&self) -> &DesignReport {
        &self.report
    }

    /// Outcome distribution `p_i = Tr(rho~_i rho)`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        if rho.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "state dimension {} does not match design dimension {}",
                rho.dim(),
                self.dim
            )));
        }
        Ok(self
            .effects
            .iter()
            .map(|e| {
                e.iter()
                    .zip(rho.matrix().iter())
                    .map(|(a, b)| (a * b.conj()).re)
                    .sum()
            })
            .collect())
    }

    /// Linear inversion of an outcome distribution.
    pub fn reconstruct(&self, p: &[f64]) -> Result<Reconstruction> {
        if p.len() != self.base.len() {
            return Err(Error::Dimension(format!(
                "probability vector length {} does not match design size {}",
                p.len(),
                self.base.len()
            )));
        }
        let n = self.dim;
        let scale = Complex64::new(n as f64 * n as f64 + 1.0, 0.0);
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for (pi, (_, rho)) in p.iter().zip(&self.base) {
            m += rho.matrix() * Complex64::new(*pi, 0.0);
        }
        m *= scale;
        for i in 0..n {
            m[(i, i)] -= Complex64::new(n as f64, 0.0);
        }
        // Hermitize round-off before the eigenvalue diagnostic.
        let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = m.clone().symmetric_eigen();
        let min_eigenvalue = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(Reconstruction {
            matrix: m,
            min_eigenvalue,
            consistent: min_eigenvalue >= -1e-6,
        })
    }
}

/// Result of a linear inversion; the matrix is Hermitian with unit trace
/// for normalized statistics, but may fail positivity when the statistics
/// are inconsistent with any state.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub matrix: DMatrix<Complex64>,
    pub min_eigenvalue: f64,
    pub consistent: bool,
}

impl Reconstruction {
    /// The reconstruction as a validated density matrix, when positive.
    pub fn into_density(self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{design_mixing, iso_mub, platonic_design, Solid};
    use crate::sampling::{sample_hs, SamplerConfig};
    use crate::state::{state_from_bloch, Member, PureState, Side};
    use approx::assert_abs_diff_eq;

    fn tetrahedral_povm() -> PovmDesign {
        let ens = platonic_design(Solid::Tetrahedron, design_mixing()).unwrap();
        PovmDesign::new(&ens).unwrap()
    }

    #[test]
    fn effects_resolve_identity_and_m_over_n_scaling_fails() {
        // N/M scaling resolves the identity; the constructor checks it.
        let povm = tetrahedral_povm();
        let mut sum = DMatrix::<Complex64>::zeros(2, 2);
        for e in povm.effects() {
            sum += e;
        }
        assert_abs_diff_eq!((sum[(0, 0)] - Complex64::new(1.0, 0.0)).norm(), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(sum[(0, 1)].norm(), 0.0, epsilon = 1e-10);

        // The alternative M/N scaling sums to (M/N)^2 I instead of I.
        let ens = platonic_design(Solid::Tetrahedron, design_mixing()).unwrap();
        let (n, m) = (2.0, 4.0);
        let mut alt = DMatrix::<Complex64>::zeros(2, 2);
        for (_, member) in ens.members() {
            alt += member.density().matrix() * Complex64::new(m / n, 0.0);
        }
        assert_abs_diff_eq!(alt[(0, 0)].re, (m / n) * (m / n), epsilon = 1e-12);
        assert!((alt[(0, 0)].re - 1.0).abs() > 0.5);
    }

    #[test]
    fn maximally_mixed_state_gives_uniform_outcomes() {
        let povm = tetrahedral_povm();
        let p = povm
            .probabilities(&DensityMatrix::maximally_mixed(2))
            .unwrap();
        for pi in &p {
            assert_abs_diff_eq!(*pi, 0.25, epsilon = 1e-12);
        }
        let rec = povm.reconstruct(&p).unwrap();
        assert!(rec.consistent);
        let rho = rec.into_density().unwrap();
        assert_abs_diff_eq!(rho.matrix()[(0, 0)].re, 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(rho.matrix()[(0, 1)].norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn ground_state_outcome_probability() {
        let povm = tetrahedral_povm();
        let zero = PureState::new(
            vec![Complex64::new(1.0, 0.0), Complex64::default()],
            None,
        )
        .unwrap();
        let p = povm.probabilities(&zero.projector()).unwrap();
        assert_abs_diff_eq!(p[0], (5.0 - 15f64.sqrt()) / 20.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn round_trip_on_random_states() {
        let povm = tetrahedral_povm();
        let cfg = SamplerConfig {
            dim: 2,
            count: 50,
            seed: 4242,
        };
        for rho in sample_hs(&cfg) {
            let p = povm.probabilities(&rho).unwrap();
            let rec = povm.reconstruct(&p).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert_abs_diff_eq!(
                        (rec.matrix[(i, j)] - rho.matrix()[(i, j)]).norm(),
                        0.0,
                        epsilon = 1e-10
                    );
                }
            }
        }
    }

    #[test]
    fn round_trip_on_the_iso_mub_reduction() {
        let reduced = iso_mub()
            .unwrap()
            .mub
            .ensemble()
            .unwrap()
            .reduce(Side::B)
            .unwrap();
        let povm = PovmDesign::new(&reduced).unwrap();
        assert_eq!(povm.len(), 20);
        let rho = state_from_bloch([0.2, -0.1, 0.15]).unwrap();
        let p = povm.probabilities(&rho).unwrap();
        let rec = povm.reconstruct(&p).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(
                    (rec.matrix[(i, j)] - rho.matrix()[(i, j)]).norm(),
                    0.0,
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn weighted_design_round_trip() {
        // Octahedron vertices at weight 1/10 each plus the center at 2/5:
        // the weighted reduction of the standard MUB set.
        let mut members = Vec::new();
        for axis in 0..3 {
            for sign in [-0.5, 0.5] {
                let mut b = [0.0; 3];
                b[axis] = sign;
                members.push((
                    0.1,
                    Member::Mixed(state_from_bloch(b).unwrap()),
                ));
            }
        }
        members.push((0.4, Member::Mixed(DensityMatrix::maximally_mixed(2))));
        let ens = Ensemble::new(members).unwrap();
        let povm = PovmDesign::new(&ens).unwrap();
        let rho = state_from_bloch([-0.05, 0.3, 0.1]).unwrap();
        let p = povm.probabilities(&rho).unwrap();
        assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        let rec = povm.reconstruct(&p).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(
                    (rec.matrix[(i, j)] - rho.matrix()[(i, j)]).norm(),
                    0.0,
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn linearity_of_reconstruction() {
        let povm = tetrahedral_povm();
        let rho1 = state_from_bloch([0.3, 0.0, -0.2]).unwrap();
        let rho2 = state_from_bloch([-0.1, 0.25, 0.05]).unwrap();
        let p1 = povm.probabilities(&rho1).unwrap();
        let p2 = povm.probabilities(&rho2).unwrap();
        let alpha = 0.37;
        let mixed: Vec<f64> = p1
            .iter()
            .zip(&p2)
            .map(|(a, b)| alpha * a + (1.0 - alpha) * b)
            .collect();
        let rec_mixed = povm.reconstruct(&mixed).unwrap();
        let rec1 = povm.reconstruct(&p1).unwrap();
        let rec2 = povm.reconstruct(&p2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let combo = rec1.matrix[(i, j)] * alpha + rec2.matrix[(i, j)] * (1.0 - alpha);
                assert_abs_diff_eq!(
                    (rec_mixed.matrix[(i, j)] - combo).norm(),
                    0.0,
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn refuses_ensembles_that_are_not_2_designs() {
        let zero = PureState::new(
            vec![Complex64::new(1.0, 0.0), Complex64::default()],
            None,
        )
        .unwrap();
        let one = PureState::new(
            vec![Complex64::default(), Complex64::new(1.0, 0.0)],
            None,
        )
        .unwrap();
        let ens = Ensemble::uniform_pure(vec![zero, one]).unwrap();
        match PovmDesign::new(&ens) {
            Err(Error::UnverifiedDesign { t, delta }) => {
                assert_eq!(t, 2);
                assert!(delta > 1e-3);
            }
            other => panic!("expected an unverified-design error, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_statistics_are_flagged_but_returned() {
        let povm = tetrahedral_povm();
        let rec = povm.reconstruct(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(!rec.consistent);
        assert!(rec.min_eigenvalue < -1e-6);
        let trace: f64 = rec.matrix.diagonal().iter().map(|z| z.re).sum();
        assert_abs_diff_eq!(trace, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn rejects_wrong_length_statistics() {
        let povm = tetrahedral_povm();
        assert!(matches!(
            povm.reconstruct(&[0.5, 0.5]),
            Err(Error::Dimension(_))
        ));
    }
}
