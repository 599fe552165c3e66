//! Command implementations. Each command turns input text into output
//! text; path handling, stdin/stdout and exit codes live in `main`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use qdesign_core::constructions::{self, construct_by_name, Constructed};
use qdesign_core::error::Error as CoreError;
use qdesign_core::moments::{
    delta_mixed_with_tolerance, frame_potential_projective, frame_potential_unitary,
    DESIGN_TOLERANCE,
};
use qdesign_core::reference::{residual_matches, PLATONIC_ROWS, REDUCTION_ROWS};
use qdesign_core::sampling::{estimate_omega, sample_hs, SamplerConfig, DEFAULT_SEED};
use qdesign_core::simplex::verify_simplicial;
use qdesign_core::state::{Ensemble, EnsembleKind, Member, Side};
use qdesign_core::tomography::PovmDesign;

use crate::format::{
    BlochRow, EnsembleFile, OmegaEstimateFile, ReconstructionFile, ReportFile,
    SimplexFile,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0} table entries deviate beyond tolerance")]
    TableMismatch(usize),
}

impl CliError {
    /// 2: schema or validation failure; 3: unverified design used as a
    /// measurement; 4: capacity limit; 1: everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::UnverifiedDesign { .. }) => 3,
            CliError::Core(CoreError::Capacity(_)) => 4,
            CliError::Core(_) | CliError::Json(_) | CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::TableMismatch(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn resolve_seed(explicit: Option<u64>) -> u64 {
    explicit
        .or_else(|| {
            std::env::var("QDESIGN_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(DEFAULT_SEED)
}

fn to_json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// `construct <name>`; the special name `product` combines `--simplex` and
/// `--unitaries` sources (registry names or file contents).
pub fn construct(
    name: &str,
    simplex_source: Option<(&str, Option<String>)>,
    unitary_source: Option<(&str, Option<String>)>,
    order: Option<usize>,
) -> CliResult<String> {
    if name == "product" {
        let simplex = match simplex_source {
            Some((spec, None)) => named_simplex(spec)?,
            Some((_, Some(content))) => {
                serde_json::from_str::<SimplexFile>(&content)?.to_design(None)?
            }
            None => {
                return Err(CliError::Usage(
                    "construct product needs --simplex <name|path>".into(),
                ))
            }
        };
        let unitaries = match unitary_source {
            Some((spec, None)) => named_unitaries(spec)?,
            Some((_, Some(content))) => {
                serde_json::from_str::<EnsembleFile>(&content)?.to_unitaries()?
            }
            None => {
                return Err(CliError::Usage(
                    "construct product needs --unitaries <name|path>".into(),
                ))
            }
        };
        let mut folded = simplex.fold_to_chamber();
        if let Some(t) = order {
            folded = qdesign_core::simplex::SimplexDesign::new(
                folded.n(),
                t,
                folded.measure(),
                folded.points().to_vec(),
            )?;
        }
        let ensemble = constructions::product_design(&folded, &unitaries)?;
        return to_json(&EnsembleFile::from_ensemble(&ensemble, None));
    }
    match construct_by_name(name)? {
        Constructed::Ensemble(e) => to_json(&EnsembleFile::from_ensemble(&e, None)),
        Constructed::Simplex(s) => to_json(&SimplexFile::from_design(&s)),
        Constructed::Unitaries(u) => to_json(&EnsembleFile::from_unitaries(&u)),
    }
}

fn named_simplex(name: &str) -> CliResult<qdesign_core::simplex::SimplexDesign> {
    match construct_by_name(name)? {
        Constructed::Simplex(s) => Ok(s),
        _ => Err(CliError::Usage(format!(
            "'{name}' is not a simplicial design"
        ))),
    }
}

fn named_unitaries(name: &str) -> CliResult<Vec<(f64, DMatrix<Complex64>)>> {
    match construct_by_name(name)? {
        Constructed::Unitaries(u) => Ok(u),
        _ => Err(CliError::Usage(format!(
            "'{name}' is not a unitary family"
        ))),
    }
}

/// `verify --type <mixed|projective|unitary|simplicial> --t <orders>`.
pub fn verify(
    content: &str,
    kind: &str,
    orders: &[usize],
    tolerance: Option<f64>,
) -> CliResult<String> {
    let tol = tolerance.unwrap_or(DESIGN_TOLERANCE);
    let mut reports = Vec::new();
    match kind {
        "mixed" => {
            let ensemble = parse_ensemble(content, tolerance)?;
            for &t in default_orders(orders) {
                let r = delta_mixed_with_tolerance(&ensemble, t, tol)?;
                reports.push(ReportFile::Mixed {
                    t: r.t,
                    delta: r.delta,
                    gamma: r.gamma,
                    cross_term: r.cross_term,
                    overlap_term: r.overlap_term,
                    is_design: r.is_design,
                    tolerance: r.tolerance,
                });
            }
        }
        "projective" => {
            let ensemble = parse_ensemble(content, tolerance)?;
            if ensemble.kind() != EnsembleKind::Pure {
                return Err(CoreError::Unsupported(
                    "projective verification needs a pure ensemble".into(),
                )
                .into());
            }
            for &t in default_orders(orders) {
                let fp = frame_potential_projective(&ensemble, t)?;
                reports.push(ReportFile::Projective {
                    t: fp.t,
                    value: fp.value,
                    bound: fp.bound,
                    delta: fp.delta,
                    is_design: fp.delta <= tol,
                });
            }
        }
        "unitary" => {
            let family = serde_json::from_str::<EnsembleFile>(content)?.to_unitaries()?;
            for &t in default_orders(orders) {
                let fp = frame_potential_unitary(&family, t)?;
                reports.push(ReportFile::Unitary {
                    t: fp.t,
                    value: fp.value,
                    bound: fp.bound,
                    delta: fp.delta,
                    is_design: fp.delta <= tol.max(1e-9),
                });
            }
        }
        "simplicial" => {
            let file: SimplexFile = serde_json::from_str(content)?;
            let order_override = orders.first().copied();
            let design = file.to_design(order_override)?;
            let r = verify_simplicial(&design, tol)?;
            reports.push(ReportFile::Simplicial {
                order: r.order,
                per_degree: r.per_degree,
                max_deviation: r.max_deviation,
                passes: r.passes,
                tolerance: r.tolerance,
            });
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown verification type '{other}'"
            )))
        }
    }
    to_json(&reports)
}

fn default_orders(orders: &[usize]) -> &[usize] {
    if orders.is_empty() {
        &[2]
    } else {
        orders
    }
}

fn parse_ensemble(content: &str, tolerance: Option<f64>) -> CliResult<Ensemble> {
    Ok(serde_json::from_str::<EnsembleFile>(content)?.to_ensemble(tolerance)?)
}

/// `reduce --side <A|B>`: member-wise partial trace.
pub fn reduce(content: &str, side: &str, tolerance: Option<f64>) -> CliResult<String> {
    let side = parse_side(side)?;
    let file: EnsembleFile = serde_json::from_str(content)?;
    let ensemble = file.to_ensemble(tolerance)?;
    let bip = file.bipartition.map(|[a, b]| (a, b));
    let mut members = Vec::with_capacity(ensemble.len());
    for (w, m) in ensemble.members() {
        let rho = match m {
            Member::Pure(p) => p.partial_trace(side)?,
            Member::Mixed(rho) => {
                let (na, nb) = bip.ok_or_else(|| {
                    CoreError::Dimension(
                        "reducing density matrices needs the file's 'bipartition' field".into(),
                    )
                })?;
                rho.partial_trace(na, nb, side)?
            }
        };
        members.push((*w, Member::Mixed(rho)));
    }
    let reduced = Ensemble::new(members)?;
    to_json(&EnsembleFile::from_ensemble(&reduced, None))
}

fn parse_side(side: &str) -> CliResult<Side> {
    match side {
        "A" | "a" => Ok(Side::A),
        "B" | "b" => Ok(Side::B),
        other => Err(CliError::Usage(format!(
            "side must be A or B, got '{other}'"
        ))),
    }
}

/// `decohere`: diagonal probability vectors of a pure ensemble.
pub fn decohere(content: &str, order: Option<usize>, tolerance: Option<f64>) -> CliResult<String> {
    let ensemble = parse_ensemble(content, tolerance)?;
    let design = constructions::decohere(&ensemble, order.unwrap_or(1))?;
    to_json(&SimplexFile::from_design(&design))
}

/// `probabilities <design> <state>`: outcome distribution of a verified
/// design measurement on a state.
pub fn probabilities(
    design_content: &str,
    state_content: &str,
    tolerance: Option<f64>,
) -> CliResult<String> {
    let design = parse_ensemble(design_content, tolerance)?;
    let povm = PovmDesign::new(&design)?;
    let state = parse_ensemble(state_content, tolerance)?;
    if state.len() != 1 {
        return Err(CliError::Usage(
            "the state file must hold exactly one member".into(),
        ));
    }
    let rho = state.members()[0].1.density();
    let p = povm.probabilities(&rho)?;
    to_json(&p)
}

/// `reconstruct <design> <probabilities>`: linear inversion.
pub fn reconstruct(
    design_content: &str,
    probs_content: &str,
    tolerance: Option<f64>,
) -> CliResult<String> {
    let design = parse_ensemble(design_content, tolerance)?;
    let povm = PovmDesign::new(&design)?;
    let p: Vec<f64> = serde_json::from_str(probs_content)?;
    let rec = povm.reconstruct(&p)?;
    to_json(&ReconstructionFile::new(&rec))
}

/// `export-bloch --format <csv|json>`: weighted merged Bloch points.
pub fn export_bloch(content: &str, format: &str, tolerance: Option<f64>) -> CliResult<String> {
    let ensemble = parse_ensemble(content, tolerance)?;
    let points = ensemble.bloch_points_merged()?;
    let rows: Vec<BlochRow> = points
        .iter()
        .map(|p| {
            let r2 = p.coords.iter().map(|x| x * x).sum::<f64>();
            BlochRow {
                x: p.coords[0],
                y: p.coords[1],
                z: p.coords[2],
                weight: p.weight,
                purity: 0.5 + 2.0 * r2,
            }
        })
        .collect();
    match format {
        "json" => to_json(&rows),
        "csv" => {
            let mut out = String::from("x,y,z,weight,purity\n");
            for r in rows {
                out.push_str(&format!(
                    "{:?},{:?},{:?},{:?},{:?}\n",
                    r.x, r.y, r.z, r.weight, r.purity
                ));
            }
            Ok(out)
        }
        other => Err(CliError::Usage(format!(
            "unknown export format '{other}', expected csv or json"
        ))),
    }
}

/// `sample-hs --dim --count --seed`: flat-measure states as an ensemble.
pub fn sample_hs_cmd(dim: usize, count: usize, seed: Option<u64>) -> CliResult<String> {
    if count == 0 {
        return Err(CliError::Usage("count must be at least 1".into()));
    }
    let cfg = SamplerConfig {
        dim,
        count,
        seed: resolve_seed(seed),
    };
    let states: Vec<_> = sample_hs(&cfg).collect();
    let ensemble = Ensemble::uniform_mixed(states)?;
    to_json(&EnsembleFile::from_ensemble(&ensemble, None))
}

/// `estimate-omega --dim --t --count --seed`.
pub fn estimate_omega_cmd(
    dim: usize,
    t: usize,
    count: usize,
    seed: Option<u64>,
) -> CliResult<String> {
    let cfg = SamplerConfig {
        dim,
        count,
        seed: resolve_seed(seed),
    };
    let est = estimate_omega(dim, t, &cfg)?;
    to_json(&OmegaEstimateFile::new(&est))
}

/// The two built-in residual tables; ingested rows join table 2 by key.
/// Returns the rendered table and the number of mismatched entries.
pub fn table(which: u8, ingested: &[(String, String)]) -> CliResult<(String, usize)> {
    match which {
        2 => table_reductions(ingested),
        3 => table_platonic(),
        other => Err(CliError::Usage(format!(
            "table takes 2 or 3, got {other}"
        ))),
    }
}

fn format_row(label: &str, deltas: &[f64], status: &str) -> String {
    let mut line = format!("{label:<24}");
    for d in deltas {
        line.push_str(&format!("{d:>12.3e}"));
    }
    line.push_str(&format!("  {status}\n"));
    line
}

fn table_reductions(ingested: &[(String, String)]) -> CliResult<(String, usize)> {
    let mut out = String::from(
        "residuals delta_{2,t} of reduced two-qubit projective designs\n",
    );
    out.push_str(&format!("{:<24}", "ensemble"));
    for t in 1..=5 {
        out.push_str(&format!("{:>12}", format!("t={t}")));
    }
    out.push_str("  status\n");
    let mut mismatches = 0;

    let mut rows: Vec<(String, Ensemble)> = vec![
        (
            "standard-mub".to_string(),
            constructions::standard_mub_d4()?.ensemble()?,
        ),
        ("iso-mub".to_string(), constructions::iso_mub()?.mub.ensemble()?),
    ];
    for (key, content) in ingested {
        let ensemble = parse_ensemble(content, None)?;
        rows.push((key.clone(), ensemble));
    }

    for (key, ensemble) in rows {
        let reduced = ensemble.reduce(Side::B)?;
        let mut deltas = Vec::with_capacity(5);
        for t in 1..=5 {
            deltas.push(delta_mixed_with_tolerance(&reduced, t, DESIGN_TOLERANCE)?.delta);
        }
        let expected = REDUCTION_ROWS.iter().find(|r| r.key == key);
        let status = match expected {
            Some(row) => {
                let bad: Vec<usize> = (0..5)
                    .filter(|&i| !residual_matches(deltas[i], row.deltas[i], 1e-10))
                    .map(|i| i + 1)
                    .collect();
                if bad.is_empty() {
                    "ok".to_string()
                } else {
                    mismatches += bad.len();
                    format!("FAIL at t={bad:?}")
                }
            }
            None => "(no reference)".to_string(),
        };
        let label = expected.map(|r| r.label.to_string()).unwrap_or(key);
        out.push_str(&format_row(&label, &deltas, &status));
    }
    Ok((out, mismatches))
}

fn table_platonic() -> CliResult<(String, usize)> {
    let mut out = String::from(
        "residuals delta_{2,t} of Platonic vertex designs at the design mixing\n",
    );
    out.push_str(&format!("{:<24}", "solid"));
    for t in 2..=5 {
        out.push_str(&format!("{:>12}", format!("t={t}")));
    }
    out.push_str("  status\n");
    let mut mismatches = 0;
    let a = constructions::design_mixing();
    for row in &PLATONIC_ROWS {
        let ensemble = constructions::platonic_design(row.solid, a)?;
        let mut deltas = Vec::with_capacity(4);
        for t in 2..=5 {
            deltas.push(delta_mixed_with_tolerance(&ensemble, t, DESIGN_TOLERANCE)?.delta);
        }
        let bad: Vec<usize> = (0..4)
            .filter(|&i| !residual_matches(deltas[i], row.deltas[i], 1e-10))
            .map(|i| i + 2)
            .collect();
        let status = if bad.is_empty() {
            "ok".to_string()
        } else {
            mismatches += bad.len();
            format!("FAIL at t={bad:?}")
        };
        out.push_str(&format_row(row.label, &deltas, &status));
    }
    Ok((out, mismatches))
}
