//! Complex state and density-matrix core: construction and validation,
//! partial trace, Schmidt data and Bloch-ball geometry.
//!
//! The Bloch convention is the radius-1/2 ball: `rho = I/2 + b . sigma`,
//! so pure qubit states sit at radius 1/2 and purity = 1/2 + 2|b|^2.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Validation tolerances applied when states and ensembles are constructed.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Unit-norm / unit-trace / hermiticity / weight-sum tolerance.
    pub exact: f64,
    /// Lower bound for the smallest eigenvalue of a density matrix.
    pub psd_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            exact: 1e-12,
            psd_floor: 1e-10,
        }
    }
}

impl Tolerances {
    /// Tolerances relaxed to `tol` for file ingestion; the PSD floor never
    /// tightens below its default.
    pub fn relaxed(tol: f64) -> Self {
        Tolerances {
            exact: tol,
            psd_floor: tol.max(1e-10),
        }
    }
}

/// Which subsystem of a bipartite state an operation traces out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// A normalized pure state, optionally tagged with a tensor bipartition.
#[derive(Debug, Clone)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
    bipartition: Option<(usize, usize)>,
}

impl PureState {
    /// Validates unit norm (within `Tolerances::exact`) and the bipartition product rule.
    pub fn new(
        amplitudes: Vec<Complex64>,
        bipartition: Option<(usize, usize)>,
    ) -> Result<PureState> {
        Self::with_tolerances(amplitudes, bipartition, Tolerances::default())
    }

    pub fn with_tolerances(
        amplitudes: Vec<Complex64>,
        bipartition: Option<(usize, usize)>,
        tol: Tolerances,
    ) -> Result<PureState> {
        if amplitudes.is_empty() {
            return Err(Error::Validation("state vector is empty".into()));
        }
        let v = DVector::from_vec(amplitudes);
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > tol.exact {
            return Err(Error::Validation(format!(
                "state vector norm^2 = {norm_sq:.17} deviates from 1 by more than {:.1e}",
                tol.exact
            )));
        }
        if let Some((na, nb)) = bipartition {
            if na * nb != v.len() {
                return Err(Error::Dimension(format!(
                    "bipartition {na}x{nb} does not factor dimension {}",
                    v.len()
                )));
            }
        }
        Ok(PureState {
            amplitudes: v,
            bipartition,
        })
    }

    /// Normalizes the amplitudes, then constructs the state.
    pub fn normalized(
        amplitudes: Vec<Complex64>,
        bipartition: Option<(usize, usize)>,
    ) -> Result<PureState> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Validation("cannot normalize the zero vector".into()));
        }
        let scaled = amplitudes.into_iter().map(|z| z / norm).collect();
        Self::new(scaled, bipartition)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn bipartition(&self) -> Option<(usize, usize)> {
        self.bipartition
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "inner product between dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Squared overlap `|<self|other>|^2`.
    pub fn overlap_sq(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Projector `|psi><psi|` as a density matrix.
    pub fn projector(&self) -> DensityMatrix {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        DensityMatrix {
            entries: m,
        }
    }

    /// Traces out the named subsystem; `Side::B` keeps the first factor.
    pub fn partial_trace(&self, side: Side) -> Result<DensityMatrix> {
        let (na, nb) = self.bipartition.ok_or_else(|| {
            Error::Dimension("partial trace requires a bipartition tag".into())
        })?;
        // View the amplitudes as an na x nb coefficient matrix M; then
        // Tr_B |psi><psi| = M M^dag and Tr_A |psi><psi| = (M^dag M)^T.
        let m = DMatrix::from_fn(na, nb, |a, b| self.amplitudes[a * nb + b]);
        let entries = match side {
            Side::B => &m * m.adjoint(),
            Side::A => (m.adjoint() * &m).transpose(),
        };
        DensityMatrix::from_trusted(entries)
    }

    /// Schmidt probability vector for a square bipartition, sorted descending.
    pub fn schmidt_vector(&self) -> Result<Vec<f64>> {
        let (na, nb) = self.bipartition.ok_or_else(|| {
            Error::Dimension("Schmidt vector requires a bipartition tag".into())
        })?;
        if na != nb {
            return Err(Error::Unsupported(format!(
                "Schmidt vector is defined here for square bipartitions, got {na}x{nb}"
            )));
        }
        let rho = self.partial_trace(Side::B)?;
        Ok(rho.eigenvalues_descending())
    }
}

/// A Hermitian, positive-semidefinite, unit-trace matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates hermiticity, unit trace and positivity.
    pub fn new(entries: DMatrix<Complex64>) -> Result<DensityMatrix> {
        Self::with_tolerances(entries, Tolerances::default())
    }

    pub fn with_tolerances(entries: DMatrix<Complex64>, tol: Tolerances) -> Result<DensityMatrix> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::Dimension(format!(
                "density matrix must be square and nonempty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let n = entries.nrows();
        for i in 0..n {
            for j in 0..=i {
                let dev = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                if !dev.is_finite() || dev > tol.exact {
                    return Err(Error::Validation(format!(
                        "matrix is not Hermitian: entry ({i},{j}) deviates by {dev:.3e}"
                    )));
                }
            }
        }
        let trace: Complex64 = entries.diagonal().iter().sum();
        if !trace.re.is_finite() || (trace.re - 1.0).abs() > tol.exact || trace.im.abs() > tol.exact
        {
            return Err(Error::Validation(format!(
                "trace = {trace} deviates from 1"
            )));
        }
        let rho = DensityMatrix { entries };
        let min_eig = rho
            .eigenvalues_descending()
            .last()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -tol.psd_floor {
            return Err(Error::Validation(format!(
                "matrix is not positive semidefinite: min eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(rho)
    }

    /// Construction path for matrices that are PSD and unit-trace by algebra
    /// (partial traces, samplers); hermitizes to remove round-off.
    pub(crate) fn from_trusted(entries: DMatrix<Complex64>) -> Result<DensityMatrix> {
        let sym = (&entries + entries.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(DensityMatrix { entries: sym })
    }

    pub fn maximally_mixed(n: usize) -> DensityMatrix {
        let entries = DMatrix::from_diagonal_element(n, n, Complex64::new(1.0 / n as f64, 0.0));
        DensityMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.diagonal().iter().map(|z| z.re).sum()
    }

    /// `Tr(rho^2)`, computed as the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Hilbert-Schmidt overlap `Tr(rho sigma)`; real for Hermitian operands.
    pub fn overlap(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "overlap between dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        // Tr(A B) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
        let s: f64 = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a * b.conj()).re)
            .sum();
        Ok(s)
    }

    /// Eigenvalues sorted in descending order; ties keep stable order.
    pub fn eigenvalues_descending(&self) -> Vec<f64> {
        let eig = self.entries.clone().symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        vals
    }

    /// `[Tr(rho^1), ..., Tr(rho^t)]` via repeated matrix products.
    pub fn trace_powers(&self, t: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(t);
        out.push(self.trace());
        let mut power = self.entries.clone();
        for _ in 2..=t {
            power = &power * &self.entries;
            out.push(power.diagonal().iter().map(|z| z.re).sum());
        }
        out
    }

    /// Traces out the named subsystem of an `na x nb` bipartition.
    pub fn partial_trace(&self, na: usize, nb: usize, side: Side) -> Result<DensityMatrix> {
        if na * nb != self.dim() {
            return Err(Error::Dimension(format!(
                "bipartition {na}x{nb} does not factor dimension {}",
                self.dim()
            )));
        }
        let entries = match side {
            Side::B => DMatrix::from_fn(na, na, |i, j| {
                (0..nb).map(|b| self.entries[(i * nb + b, j * nb + b)]).sum()
            }),
            Side::A => DMatrix::from_fn(nb, nb, |k, l| {
                (0..na).map(|a| self.entries[(a * nb + k, a * nb + l)]).sum()
            }),
        };
        DensityMatrix::from_trusted(entries)
    }

    /// Bloch-ball coordinates of a qubit state, radius-1/2 convention.
    pub fn bloch_point(&self) -> Result<BlochPoint> {
        if self.dim() != 2 {
            return Err(Error::Unsupported(format!(
                "Bloch coordinates are defined for dimension 2, got {}",
                self.dim()
            )));
        }
        let x = self.entries[(0, 1)].re;
        let y = -self.entries[(0, 1)].im;
        let z = 0.5 * (self.entries[(0, 0)].re - self.entries[(1, 1)].re);
        Ok(BlochPoint {
            coords: [x, y, z],
            weight: 1.0,
        })
    }
}

/// Reconstructs the qubit state `I/2 + b . sigma` from Bloch coordinates.
pub fn state_from_bloch(b: [f64; 3]) -> Result<DensityMatrix> {
    let r_sq = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    if r_sq > 0.25 + 1e-12 {
        return Err(Error::Validation(format!(
            "Bloch radius {} exceeds 1/2",
            r_sq.sqrt()
        )));
    }
    let entries = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.5 + b[2], 0.0),
            Complex64::new(b[0], -b[1]),
            Complex64::new(b[0], b[1]),
            Complex64::new(0.5 - b[2], 0.0),
        ],
    );
    DensityMatrix::from_trusted(entries)
}

/// A weighted point inside the Bloch ball of radius 1/2.
#[derive(Debug, Clone, Copy)]
pub struct BlochPoint {
    pub coords: [f64; 3],
    pub weight: f64,
}

impl BlochPoint {
    pub fn radius(&self) -> f64 {
        let [x, y, z] = self.coords;
        (x * x + y * y + z * z).sqrt()
    }
}

/// Sorted multiset of pairwise direction cosines, deduplicated at `1e-9`.
#[derive(Debug, Clone)]
pub struct AngleSpectrum {
    /// `(cosine, multiplicity)` pairs, ascending in cosine.
    pub values: Vec<(f64, usize)>,
    /// Points skipped because their radius vanished.
    pub excluded: usize,
}

impl AngleSpectrum {
    pub fn total_pairs(&self) -> usize {
        self.values.iter().map(|&(_, m)| m).sum()
    }

    /// Compares two spectra value-by-value and multiplicity-by-multiplicity.
    pub fn matches(&self, other: &AngleSpectrum, tol: f64) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(other.values.iter())
                .all(|(&(a, ma), &(b, mb))| (a - b).abs() <= tol && ma == mb)
    }
}

/// Pairwise normalized dot products of the given points, as a deduplicated
/// multiset. Zero-radius points are excluded (reported in the result).
pub fn angle_spectrum(points: &[BlochPoint]) -> Result<AngleSpectrum> {
    const DEDUP_TOL: f64 = 1e-9;
    let dirs: Vec<[f64; 3]> = points
        .iter()
        .filter(|p| p.radius() > DEDUP_TOL)
        .map(|p| {
            let r = p.radius();
            [p.coords[0] / r, p.coords[1] / r, p.coords[2] / r]
        })
        .collect();
    let excluded = points.len() - dirs.len();
    if dirs.len() < 2 {
        return Err(Error::Unsupported(
            "angle spectrum needs at least two points of nonzero radius".into(),
        ));
    }
    let mut cosines = Vec::with_capacity(dirs.len() * (dirs.len() - 1) / 2);
    for i in 0..dirs.len() {
        for j in (i + 1)..dirs.len() {
            let c: f64 = (0..3).map(|k| dirs[i][k] * dirs[j][k]).sum();
            cosines.push(c.clamp(-1.0, 1.0));
        }
    }
    cosines.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut values: Vec<(f64, usize)> = Vec::new();
    for c in cosines {
        match values.last_mut() {
            Some((v, m)) if (c - *v).abs() <= DEDUP_TOL => *m += 1,
            _ => values.push((c, 1)),
        }
    }
    Ok(AngleSpectrum { values, excluded })
}

/// One element of an ensemble: either a pure state or a density matrix.
#[derive(Debug, Clone)]
pub enum Member {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl Member {
    pub fn dim(&self) -> usize {
        match self {
            Member::Pure(p) => p.dim(),
            Member::Mixed(m) => m.dim(),
        }
    }

    /// The member as a density matrix (projector for pure states).
    pub fn density(&self) -> DensityMatrix {
        match self {
            Member::Pure(p) => p.projector(),
            Member::Mixed(m) => m.clone(),
        }
    }
}

/// Whether every member of an ensemble is pure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnsembleKind {
    Pure,
    Mixed,
}

/// A weighted list of states of common dimension; weights sum to one.
#[derive(Debug, Clone)]
pub struct Ensemble {
    dim: usize,
    members: Vec<(f64, Member)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, Member)>) -> Result<Ensemble> {
        Self::with_tolerances(members, Tolerances::default())
    }

    pub fn with_tolerances(members: Vec<(f64, Member)>, tol: Tolerances) -> Result<Ensemble> {
        if members.is_empty() {
            return Err(Error::Validation("ensemble has no members".into()));
        }
        let dim = members[0].1.dim();
        let mut weight_sum = 0.0;
        for (w, m) in &members {
            if *w < 0.0 || !w.is_finite() {
                return Err(Error::Validation(format!("invalid weight {w}")));
            }
            if m.dim() != dim {
                return Err(Error::Dimension(format!(
                    "ensemble members mix dimensions {dim} and {}",
                    m.dim()
                )));
            }
            weight_sum += w;
        }
        if (weight_sum - 1.0).abs() > tol.exact.max(1e-12) {
            return Err(Error::Validation(format!(
                "weights sum to {weight_sum:.17}, expected 1"
            )));
        }
        Ok(Ensemble { dim, members })
    }

    /// Uniformly weighted ensemble of pure states.
    pub fn uniform_pure(states: Vec<PureState>) -> Result<Ensemble> {
        let w = 1.0 / states.len() as f64;
        Self::new(states.into_iter().map(|s| (w, Member::Pure(s))).collect())
    }

    /// Uniformly weighted ensemble of density matrices.
    pub fn uniform_mixed(states: Vec<DensityMatrix>) -> Result<Ensemble> {
        let w = 1.0 / states.len() as f64;
        Self::new(states.into_iter().map(|s| (w, Member::Mixed(s))).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[(f64, Member)] {
        &self.members
    }

    pub fn kind(&self) -> EnsembleKind {
        if self
            .members
            .iter()
            .all(|(_, m)| matches!(m, Member::Pure(_)))
        {
            EnsembleKind::Pure
        } else {
            EnsembleKind::Mixed
        }
    }

    /// Weighted densities `(w_i, rho_i)`.
    pub fn densities(&self) -> Vec<(f64, DensityMatrix)> {
        self.members
            .iter()
            .map(|(w, m)| (*w, m.density()))
            .collect()
    }

    /// Pure members, or an error if any member is mixed.
    pub fn pure_states(&self) -> Result<Vec<(f64, &PureState)>> {
        self.members
            .iter()
            .map(|(w, m)| match m {
                Member::Pure(p) => Ok((*w, p)),
                Member::Mixed(_) => Err(Error::Unsupported(
                    "operation requires a pure-state ensemble".into(),
                )),
            })
            .collect()
    }

    /// Partial trace applied member-by-member, preserving weights.
    /// Pure members must carry a bipartition tag.
    pub fn reduce(&self, side: Side) -> Result<Ensemble> {
        let mut reduced = Vec::with_capacity(self.members.len());
        for (w, m) in &self.members {
            let rho = match m {
                Member::Pure(p) => p.partial_trace(side)?,
                Member::Mixed(_) => {
                    return Err(Error::Unsupported(
                        "reduction of mixed members needs an explicit bipartition".into(),
                    ))
                }
            };
            reduced.push((*w, Member::Mixed(rho)));
        }
        Ensemble::new(reduced)
    }

    /// Weighted Bloch points of a qubit ensemble, with coincident points
    /// merged (weights added) at tolerance `1e-9`.
    pub fn bloch_points_merged(&self) -> Result<Vec<BlochPoint>> {
        if self.dim != 2 {
            return Err(Error::Unsupported(format!(
                "Bloch export is defined for dimension 2, got {}",
                self.dim
            )));
        }
        let mut out: Vec<BlochPoint> = Vec::new();
        for (w, m) in &self.members {
            let mut p = m.density().bloch_point()?;
            p.weight = *w;
            match out.iter_mut().find(|q| {
                (0..3).all(|k| (q.coords[k] - p.coords[k]).abs() <= 1e-9)
            }) {
                Some(q) => q.weight += p.weight,
                None => out.push(p),
            }
        }
        Ok(out)
    }
}
