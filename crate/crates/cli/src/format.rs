//! File formats: ensembles, unitary families, simplex designs, design
//! reports and geometry exports. Complex numbers are always explicit
//! `[re, im]` pairs; floating-point values serialize in shortest
//! round-trip form, so written files reproduce in-memory results bit for
//! bit when read back.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qdesign_core::error::{Error, Result};
use qdesign_core::simplex::{SimplexDesign, SimplexMeasure};
use qdesign_core::state::{DensityMatrix, Ensemble, Member, PureState, Tolerances};

/// One ensemble member: a state vector or a density matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MemberFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
}

/// Serialized ensemble of pure states, density matrices or unitaries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleFile {
    pub dim: usize,
    /// "pure", "mixed" or "unitary".
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<[usize; 2]>,
    pub members: Vec<MemberFile>,
}

fn to_pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn matrix_to_pairs(m: &DMatrix<Complex64>) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn pairs_to_matrix(rows: &[Vec<[f64; 2]>], dim: usize) -> Result<DMatrix<Complex64>> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Dimension(format!(
            "matrix member must be {dim}x{dim}"
        )));
    }
    Ok(DMatrix::from_fn(dim, dim, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

impl EnsembleFile {
    pub fn from_ensemble(ensemble: &Ensemble, bipartition: Option<[usize; 2]>) -> EnsembleFile {
        let mut kind = "pure";
        let members = ensemble
            .members()
            .iter()
            .map(|(w, m)| match m {
                Member::Pure(p) => MemberFile {
                    weight: Some(*w),
                    vector: Some(to_pairs(p.amplitudes().as_slice())),
                    matrix: None,
                },
                Member::Mixed(rho) => {
                    kind = "mixed";
                    MemberFile {
                        weight: Some(*w),
                        vector: None,
                        matrix: Some(matrix_to_pairs(rho.matrix())),
                    }
                }
            })
            .collect();
        let bip = bipartition.or_else(|| {
            ensemble.members().iter().find_map(|(_, m)| match m {
                Member::Pure(p) => p.bipartition().map(|(a, b)| [a, b]),
                Member::Mixed(_) => None,
            })
        });
        EnsembleFile {
            dim: ensemble.dim(),
            kind: kind.to_string(),
            bipartition: bip,
            members,
        }
    }

    pub fn from_unitaries(family: &[(f64, DMatrix<Complex64>)]) -> EnsembleFile {
        EnsembleFile {
            dim: family[0].1.nrows(),
            kind: "unitary".to_string(),
            bipartition: None,
            members: family
                .iter()
                .map(|(w, u)| MemberFile {
                    weight: Some(*w),
                    vector: None,
                    matrix: Some(matrix_to_pairs(u)),
                })
                .collect(),
        }
    }

    fn weights(&self) -> Vec<f64> {
        let uniform = 1.0 / self.members.len() as f64;
        self.members
            .iter()
            .map(|m| m.weight.unwrap_or(uniform))
            .collect()
    }

    /// Validates and converts into an ensemble; `tolerance` relaxes the
    /// structural invariants for files produced with fewer digits.
    pub fn to_ensemble(&self, tolerance: Option<f64>) -> Result<Ensemble> {
        if self.kind == "unitary" {
            return Err(Error::Unsupported(
                "file holds a unitary family, not a state ensemble".into(),
            ));
        }
        let tol = tolerance.map(Tolerances::relaxed).unwrap_or_default();
        let bip = self.bipartition.map(|[a, b]| (a, b));
        let weights = self.weights();
        let mut members = Vec::with_capacity(self.members.len());
        for (m, w) in self.members.iter().zip(weights) {
            let member = match (&m.vector, &m.matrix) {
                (Some(v), None) => {
                    let amps: Vec<Complex64> =
                        v.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
                    if amps.len() != self.dim {
                        return Err(Error::Dimension(format!(
                            "vector member has length {}, expected {}",
                            amps.len(),
                            self.dim
                        )));
                    }
                    Member::Pure(PureState::with_tolerances(amps, bip, tol)?)
                }
                (None, Some(rows)) => Member::Mixed(DensityMatrix::with_tolerances(
                    pairs_to_matrix(rows, self.dim)?,
                    tol,
                )?),
                _ => {
                    return Err(Error::Validation(
                        "each member needs exactly one of 'vector' or 'matrix'".into(),
                    ))
                }
            };
            members.push((w, member));
        }
        Ensemble::with_tolerances(members, tol)
    }

    /// Converts a `kind = "unitary"` file into a weighted unitary family.
    pub fn to_unitaries(&self) -> Result<Vec<(f64, DMatrix<Complex64>)>> {
        if self.kind != "unitary" {
            return Err(Error::Unsupported(format!(
                "expected a unitary family file, found kind '{}'",
                self.kind
            )));
        }
        let weights = self.weights();
        self.members
            .iter()
            .zip(weights)
            .map(|(m, w)| {
                let rows = m.matrix.as_ref().ok_or_else(|| {
                    Error::Validation("unitary members must carry 'matrix'".into())
                })?;
                Ok((w, pairs_to_matrix(rows, self.dim)?))
            })
            .collect()
    }
}

/// One weighted point of a simplex design.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplexPointFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    pub probs: Vec<f64>,
}

/// Serialized simplicial design.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplexFile {
    pub n: usize,
    pub order: usize,
    /// "lebesgue" or "hilbert-schmidt".
    pub measure: String,
    pub points: Vec<SimplexPointFile>,
}

pub fn measure_from_str(s: &str) -> Result<SimplexMeasure> {
    match s {
        "lebesgue" | "L" => Ok(SimplexMeasure::Lebesgue),
        "hilbert-schmidt" | "HS" => Ok(SimplexMeasure::HilbertSchmidt),
        other => Err(Error::Unsupported(format!(
            "unknown measure '{other}', expected 'lebesgue' or 'hilbert-schmidt'"
        ))),
    }
}

pub fn measure_to_str(m: SimplexMeasure) -> &'static str {
    match m {
        SimplexMeasure::Lebesgue => "lebesgue",
        SimplexMeasure::HilbertSchmidt => "hilbert-schmidt",
    }
}

impl SimplexFile {
    pub fn from_design(d: &SimplexDesign) -> SimplexFile {
        SimplexFile {
            n: d.n(),
            order: d.order(),
            measure: measure_to_str(d.measure()).to_string(),
            points: d
                .points()
                .iter()
                .map(|(w, p)| SimplexPointFile {
                    weight: Some(*w),
                    probs: p.clone(),
                })
                .collect(),
        }
    }

    pub fn to_design(&self, order_override: Option<usize>) -> Result<SimplexDesign> {
        let uniform = 1.0 / self.points.len() as f64;
        let points = self
            .points
            .iter()
            .map(|p| (p.weight.unwrap_or(uniform), p.probs.clone()))
            .collect();
        SimplexDesign::new(
            self.n,
            order_override.unwrap_or(self.order),
            measure_from_str(&self.measure)?,
            points,
        )
    }
}

/// Verification verdict emitted by `verify`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum ReportFile {
    #[serde(rename = "mixed")]
    Mixed {
        t: usize,
        delta: f64,
        gamma: f64,
        cross_term: f64,
        overlap_term: f64,
        is_design: bool,
        tolerance: f64,
    },
    #[serde(rename = "projective")]
    Projective {
        t: usize,
        value: f64,
        bound: f64,
        delta: f64,
        is_design: bool,
    },
    #[serde(rename = "unitary")]
    Unitary {
        t: usize,
        value: f64,
        bound: f64,
        delta: f64,
        is_design: bool,
    },
    #[serde(rename = "simplicial")]
    Simplicial {
        order: usize,
        per_degree: Vec<f64>,
        max_deviation: f64,
        passes: bool,
        tolerance: f64,
    },
}

/// Reconstructed state with its positivity diagnostic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReconstructionFile {
    pub dim: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub min_eigenvalue: f64,
    pub consistent: bool,
}

impl ReconstructionFile {
    pub fn new(rec: &qdesign_core::tomography::Reconstruction) -> ReconstructionFile {
        ReconstructionFile {
            dim: rec.matrix.nrows(),
            matrix: matrix_to_pairs(&rec.matrix),
            min_eigenvalue: rec.min_eigenvalue,
            consistent: rec.consistent,
        }
    }
}

/// One exported Bloch-ball point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlochRow {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub weight: f64,
    pub purity: f64,
}

/// Dense moment-operator estimate summary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OmegaEstimateFile {
    pub dim: usize,
    pub t: usize,
    pub count: usize,
    pub seed: u64,
    pub max_abs_deviation: f64,
    pub max_sigma_units: f64,
    pub estimate: Vec<Vec<[f64; 2]>>,
    pub reference: Vec<Vec<[f64; 2]>>,
    pub per_entry_sigma: Vec<Vec<f64>>,
}

impl OmegaEstimateFile {
    pub fn new(e: &qdesign_core::sampling::OmegaEstimate) -> OmegaEstimateFile {
        OmegaEstimateFile {
            dim: e.dim,
            t: e.order,
            count: e.count,
            seed: e.seed,
            max_abs_deviation: e.max_abs_deviation,
            max_sigma_units: e.max_sigma_units,
            estimate: matrix_to_pairs(&e.estimate),
            reference: matrix_to_pairs(&e.reference),
            per_entry_sigma: (0..e.per_entry_sigma.nrows())
                .map(|i| {
                    (0..e.per_entry_sigma.ncols())
                        .map(|j| e.per_entry_sigma[(i, j)])
                        .collect()
                })
                .collect(),
        }
    }
}
