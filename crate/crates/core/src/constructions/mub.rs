//! Mutually unbiased bases in dimension four: the standard product /
//! maximally-entangled construction and the iso-entangled set generated
//! from a fiducial two-qubit state by local unitaries.
//!
//! The iso-entangled set is built along two independent routes that must
//! agree: hard-coded state coefficients (entries of the form
//! `a + b sqrt(5) + (c + d sqrt(5)) i`, scaled by 1/20) and a global basis
//! change applied to the standard set. Every state is additionally checked
//! to be reachable from the fiducial by its recorded word in the two local
//! generators. A failure of any route signals data corruption and aborts
//! the construction.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{Ensemble, PureState};

/// A complete (or partial) family of mutually unbiased bases.
#[derive(Debug, Clone)]
pub struct MubSet {
    dim: usize,
    bases: Vec<Vec<PureState>>,
    labels: Vec<String>,
}

impl MubSet {
    pub fn new(dim: usize, bases: Vec<Vec<PureState>>, labels: Vec<String>) -> Result<MubSet> {
        let set = MubSet { dim, bases, labels };
        set.validate()?;
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bases(&self) -> &[Vec<PureState>] {
        &self.bases
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// All states in basis-major order.
    pub fn all_states(&self) -> Vec<PureState> {
        self.bases.iter().flatten().cloned().collect()
    }

    /// Uniformly weighted pure ensemble over all states.
    pub fn ensemble(&self) -> Result<Ensemble> {
        Ensemble::uniform_pure(self.all_states())
    }

    /// Orthonormality inside each basis at `1e-12` and squared cross-basis
    /// overlaps `1/d` at `1e-10`.
    pub fn validate(&self) -> Result<()> {
        for (b, basis) in self.bases.iter().enumerate() {
            if basis.len() != self.dim {
                return Err(Error::Dimension(format!(
                    "basis {b} has {} states, expected {}",
                    basis.len(),
                    self.dim
                )));
            }
            for (i, psi) in basis.iter().enumerate() {
                for (j, phi) in basis.iter().enumerate() {
                    let target = if i == j { 1.0 } else { 0.0 };
                    let ov = psi.overlap_sq(phi)?;
                    if (ov - target).abs() > 1e-12 {
                        return Err(Error::Validation(format!(
                            "basis {b}: |<{i}|{j}>|^2 = {ov:.3e} deviates from {target}"
                        )));
                    }
                }
            }
        }
        let unbiased = 1.0 / self.dim as f64;
        for b1 in 0..self.bases.len() {
            for b2 in (b1 + 1)..self.bases.len() {
                for psi in &self.bases[b1] {
                    for phi in &self.bases[b2] {
                        let ov = psi.overlap_sq(phi)?;
                        if (ov - unbiased).abs() > 1e-10 {
                            return Err(Error::Validation(format!(
                                "bases {b1}/{b2}: cross overlap {ov:.12} deviates from {unbiased}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `a + b sqrt(5) + (c + d sqrt(5)) i`.
fn quad(q: [i32; 4]) -> Complex64 {
    let s5 = 5f64.sqrt();
    c(
        q[0] as f64 + q[1] as f64 * s5,
        q[2] as f64 + q[3] as f64 * s5,
    )
}

/// Unnormalized amplitudes of the standard five bases over
/// `|00>, |01>, |10>, |11>`; entries restricted to `0, +-1, +-i`.
/// The first three bases are product bases, the last two maximally entangled.
const STANDARD_MUB: [[[(i8, i8); 4]; 4]; 5] = [
    [
        [(1, 0), (0, 0), (0, 0), (0, 0)],
        [(0, 0), (1, 0), (0, 0), (0, 0)],
        [(0, 0), (0, 0), (1, 0), (0, 0)],
        [(0, 0), (0, 0), (0, 0), (1, 0)],
    ],
    [
        [(1, 0), (1, 0), (1, 0), (1, 0)],
        [(1, 0), (-1, 0), (1, 0), (-1, 0)],
        [(1, 0), (1, 0), (-1, 0), (-1, 0)],
        [(1, 0), (-1, 0), (-1, 0), (1, 0)],
    ],
    [
        [(1, 0), (0, 1), (0, 1), (-1, 0)],
        [(1, 0), (0, -1), (0, 1), (1, 0)],
        [(1, 0), (0, 1), (0, -1), (1, 0)],
        [(1, 0), (0, -1), (0, -1), (-1, 0)],
    ],
    [
        [(1, 0), (0, 1), (-1, 0), (0, 1)],
        [(1, 0), (0, -1), (-1, 0), (0, -1)],
        [(1, 0), (0, -1), (1, 0), (0, 1)],
        [(1, 0), (0, 1), (1, 0), (0, -1)],
    ],
    [
        [(1, 0), (1, 0), (0, -1), (0, 1)],
        [(1, 0), (1, 0), (0, 1), (0, -1)],
        [(1, 0), (-1, 0), (0, -1), (0, -1)],
        [(1, 0), (-1, 0), (0, 1), (0, 1)],
    ],
];

/// Coefficients of the 20 iso-entangled states, scaled by 20. Each entry is
/// `[a, b, c, d]` for `a + b sqrt(5) + (c + d sqrt(5)) i`. Rows are grouped
/// four bases at a time in the same basis order as [`STANDARD_MUB`]; the
/// first row is the fiducial state.
const ISO_MUB_TABLE: [[[i32; 4]; 4]; 20] = [
    // basis 1
    [[-7, 3, 1, 1], [0, 0, -10, 0], [-6, 0, 8, 0], [-7, -3, 1, -1]],
    [[-7, 3, 1, 1], [0, 0, 10, 0], [6, 0, -8, 0], [-7, -3, 1, -1]],
    [[-7, -3, 1, -1], [10, 0, 0, 0], [8, 0, 6, 0], [-7, 3, 1, 1]],
    [[-7, -3, 1, -1], [-10, 0, 0, 0], [-8, 0, -6, 0], [-7, 3, 1, 1]],
    // basis 2
    [[-2, 1, 11, 2], [-5, 0, 5, 0], [7, 0, -1, 0], [-2, -1, 11, -2]],
    [[3, 4, -4, 3], [-5, 0, -5, 0], [1, 0, 7, 0], [3, -4, -4, -3]],
    [[3, -2, -4, 1], [-15, 0, 5, 0], [-1, 0, -7, 0], [3, 2, -4, -1]],
    [[3, -2, -4, 1], [5, 0, 5, 0], [15, 0, 5, 0], [3, 2, -4, -1]],
    // basis 3
    [[-2, 1, 11, 2], [5, 0, -5, 0], [-7, 0, 1, 0], [-2, -1, 11, -2]],
    [[3, 4, -4, 3], [5, 0, 5, 0], [-1, 0, -7, 0], [3, -4, -4, -3]],
    [[3, -2, -4, 1], [15, 0, -5, 0], [1, 0, 7, 0], [3, 2, -4, -1]],
    [[3, -2, -4, 1], [-5, 0, -5, 0], [-15, 0, -5, 0], [3, 2, -4, -1]],
    // basis 4
    [[-2, -1, 11, -2], [-5, 0, -5, 0], [-1, 0, -7, 0], [-2, 1, 11, 2]],
    [[3, -4, -4, -3], [5, 0, -5, 0], [7, 0, -1, 0], [3, 4, -4, 3]],
    [[3, 2, -4, -1], [-5, 0, -15, 0], [-7, 0, 1, 0], [3, -2, -4, 1]],
    [[3, 2, -4, -1], [-5, 0, 5, 0], [5, 0, -15, 0], [3, -2, -4, 1]],
    // basis 5
    [[-2, -1, 11, -2], [5, 0, 5, 0], [1, 0, 7, 0], [-2, 1, 11, 2]],
    [[3, -4, -4, -3], [-5, 0, 5, 0], [-7, 0, 1, 0], [3, 4, -4, 3]],
    [[3, 2, -4, -1], [5, 0, 15, 0], [7, 0, -1, 0], [3, -2, -4, 1]],
    [[3, 2, -4, -1], [5, 0, -5, 0], [-5, 0, 15, 0], [3, -2, -4, 1]],
];

/// The global basis change mapping the standard set onto the iso-entangled
/// one, scaled by 20; same `[a, b, c, d]` encoding as the state table.
const TRANSFORM_T: [[[i32; 4]; 4]; 4] = [
    [[7, -3, -1, -1], [7, 3, -1, 1], [7, 3, -1, 1], [1, 1, 7, -3]],
    [[0, 0, 10, 0], [10, 0, 0, 0], [-10, 0, 0, 0], [10, 0, 0, 0]],
    [[6, 0, -8, 0], [8, 0, 6, 0], [-8, 0, -6, 0], [-8, 0, -6, 0]],
    [[7, 3, -1, 1], [7, -3, -1, -1], [7, -3, -1, -1], [1, -1, 7, 3]],
];

/// Words over the local generators (`1 -> h1`, `2 -> h2`) mapping the
/// fiducial state to each of the 20 states, in table order. The matrix
/// product is taken in the written order (rightmost letter acts first).
pub const GROUP_WORDS: [&[u8]; 20] = [
    &[],
    &[2, 1, 1, 2, 1, 2],
    &[2, 1, 2, 1, 2, 1, 1, 2],
    &[1, 2, 1, 1, 2, 1, 2],
    &[1, 1, 2, 1, 2],
    &[1, 2, 1, 2, 1, 1, 2],
    &[2, 1, 2, 1, 1, 2, 1, 2],
    &[2],
    &[2, 1, 2, 1, 1, 2, 1, 2, 1, 1, 2],
    &[2, 1, 2, 1, 2],
    &[1, 2, 1, 1, 2],
    &[2, 1, 1, 2],
    &[2, 1, 2],
    &[2, 1, 1, 2, 1, 2, 1, 1, 2],
    &[1, 1, 2, 1, 2, 1, 1, 2],
    &[1, 2],
    &[1, 2, 1, 2],
    &[1, 1, 2],
    &[1, 2, 1, 1, 2, 1, 2, 1, 1, 2],
    &[2, 1, 2, 1, 1, 2],
];

/// Tensor factors of the first local generator, each scaled to a unitary.
pub fn h1_factors() -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let s5 = 5f64.sqrt();
    let scale = 1.0 / 50f64.sqrt();
    let a = DMatrix::from_row_slice(
        2,
        2,
        &[
            c(5.0, 0.0),
            c(s5, -2.0 * s5),
            c(-2.0 * s5, s5),
            c(0.0, -5.0),
        ],
    ) * c(scale, 0.0);
    let b = DMatrix::from_row_slice(
        2,
        2,
        &[
            c(5.0, 0.0),
            c(s5, 2.0 * s5),
            c(-2.0 * s5, -s5),
            c(0.0, 5.0),
        ],
    ) * c(scale, 0.0);
    (a, b)
}

/// Tensor factors of the second local generator.
pub fn h2_factors() -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let q = |v: [i32; 4]| quad(v) / 20.0;
    let a = DMatrix::from_row_slice(
        2,
        2,
        &[
            q([0, 0, 5, 5]),
            q([5, 3, -10, 4]),
            q([-5, -3, -10, 4]),
            q([0, 0, -5, -5]),
        ],
    );
    let b = DMatrix::from_row_slice(
        2,
        2,
        &[
            q([0, 0, -5, 5]),
            q([-5, 3, -10, -4]),
            q([5, -3, -10, -4]),
            q([0, 0, 5, -5]),
        ],
    );
    (a, b)
}

/// The two generators of the symmetry group of the standard set, mapping
/// its 20 states onto themselves up to phases.
pub fn symmetry_generators() -> [DMatrix<Complex64>; 2] {
    let h = 0.5;
    let g1 = DMatrix::from_row_slice(
        4,
        4,
        &[
            c(-h, 0.0), c(h, 0.0), c(0.0, -h), c(0.0, -h),
            c(h, 0.0), c(-h, 0.0), c(0.0, -h), c(0.0, -h),
            c(0.0, h), c(0.0, h), c(h, 0.0), c(-h, 0.0),
            c(0.0, h), c(0.0, h), c(-h, 0.0), c(h, 0.0),
        ],
    );
    let g2 = DMatrix::from_row_slice(
        4,
        4,
        &[
            c(0.0, h), c(0.0, h), c(0.0, h), c(0.0, h),
            c(-h, 0.0), c(h, 0.0), c(-h, 0.0), c(h, 0.0),
            c(-h, 0.0), c(-h, 0.0), c(h, 0.0), c(h, 0.0),
            c(0.0, -h), c(0.0, h), c(0.0, h), c(0.0, -h),
        ],
    );
    [g1, g2]
}

/// The basis-change unitary from the standard to the iso-entangled set.
pub fn transform() -> DMatrix<Complex64> {
    DMatrix::from_fn(4, 4, |i, j| quad(TRANSFORM_T[i][j]) / 20.0)
}

/// The fiducial state (first row of the coefficient table).
pub fn fiducial_state() -> PureState {
    iso_state(0)
}

fn iso_state(row: usize) -> PureState {
    let amps: Vec<Complex64> = ISO_MUB_TABLE[row].iter().map(|&q| quad(q) / 20.0).collect();
    PureState::new(amps, Some((2, 2))).expect("table rows are normalized")
}

/// The standard complete set of five MUBs for two qubits.
pub fn standard_mub_d4() -> Result<MubSet> {
    let mut bases = Vec::with_capacity(5);
    for basis in &STANDARD_MUB {
        let mut states = Vec::with_capacity(4);
        for amps in basis {
            let v: Vec<Complex64> = amps.iter().map(|&(re, im)| c(re as f64, im as f64)).collect();
            states.push(PureState::normalized(v, Some((2, 2)))?);
        }
        bases.push(states);
    }
    MubSet::new(
        4,
        bases,
        (1..=5).map(|i| format!("standard-{i}")).collect(),
    )
}

/// Iso-entangled MUB set together with the per-state local unitary factors.
#[derive(Debug, Clone)]
pub struct IsoMub {
    pub mub: MubSet,
    /// Local unitaries acting on the first qubit, one per state.
    pub left_factors: Vec<DMatrix<Complex64>>,
    /// Local unitaries acting on the second qubit, one per state.
    pub right_factors: Vec<DMatrix<Complex64>>,
}

fn word_factors(word: &[u8]) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let (a1, b1) = h1_factors();
    let (a2, b2) = h2_factors();
    let mut left = DMatrix::identity(2, 2);
    let mut right = DMatrix::identity(2, 2);
    for &letter in word {
        let (la, lb) = if letter == 1 { (&a1, &b1) } else { (&a2, &b2) };
        left = &left * la;
        right = &right * lb;
    }
    (left, right)
}

/// Canonical phase: rotate so the largest-magnitude entry is real positive.
fn phase_canonical(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let mut pivot = Complex64::new(1.0, 0.0);
    let mut best = 0.0;
    for z in m.iter() {
        if z.norm() > best + 1e-12 {
            best = z.norm();
            pivot = *z;
        }
    }
    m * (pivot.conj() / pivot.norm())
}

fn closure_mod_phase(generators: &[DMatrix<Complex64>]) -> Vec<DMatrix<Complex64>> {
    let key = |m: &DMatrix<Complex64>| -> [i64; 8] {
        let c = phase_canonical(m);
        let mut k = [0i64; 8];
        for (idx, z) in c.iter().enumerate() {
            k[2 * idx] = (z.re * 1e9).round() as i64;
            k[2 * idx + 1] = (z.im * 1e9).round() as i64;
        }
        k
    };
    let mut seen = std::collections::HashSet::new();
    let mut elements: Vec<DMatrix<Complex64>> = Vec::new();
    let mut queue: Vec<DMatrix<Complex64>> = vec![DMatrix::identity(2, 2)];
    seen.insert(key(&queue[0]));
    while let Some(m) = queue.pop() {
        for g in generators {
            let next = &m * g;
            if seen.insert(key(&next)) {
                queue.push(phase_canonical(&next));
            }
        }
        elements.push(m);
    }
    elements
}

/// The full single-qubit factor groups of the local symmetry group, one per
/// tensor slot: the projective closures of the generator factors, sixty
/// elements each. These, not the twenty per-state word products, carry the
/// unitary 5-design property (no twenty-element family in U(2) can reach
/// design order five; the group does, exactly).
pub fn local_factor_groups() -> (Vec<DMatrix<Complex64>>, Vec<DMatrix<Complex64>>) {
    let (a1, b1) = h1_factors();
    let (a2, b2) = h2_factors();
    (closure_mod_phase(&[a1, a2]), closure_mod_phase(&[b1, b2]))
}

/// Builds the 20 iso-entangled states, checks the three construction routes
/// against each other, and returns the set with its local-unitary factors.
pub fn iso_mub() -> Result<IsoMub> {
    // Route (i): the hard-coded coefficient table.
    let mut bases: Vec<Vec<PureState>> = Vec::with_capacity(5);
    for b in 0..5 {
        bases.push((0..4).map(|k| iso_state(4 * b + k)).collect());
    }

    // Route (ii): the basis change applied to the standard set. States must
    // match the table basis-by-basis, bijectively, up to a global phase.
    let t = transform();
    let standard = standard_mub_d4()?;
    for (b, basis) in standard.bases().iter().enumerate() {
        let transformed: Vec<PureState> = basis
            .iter()
            .map(|s| {
                let v = &t * s.amplitudes();
                PureState::new(v.iter().copied().collect(), Some((2, 2)))
                    .expect("unitary image of a unit vector")
            })
            .collect();
        let mut matched = [false; 4];
        for (i, tab) in bases[b].iter().enumerate() {
            let mut found = None;
            for (j, tr) in transformed.iter().enumerate() {
                if !matched[j] && tab.overlap_sq(tr)? >= 1.0 - 1e-10 {
                    found = Some(j);
                    break;
                }
            }
            match found {
                Some(j) => matched[j] = true,
                None => {
                    return Err(Error::Inconsistent(format!(
                        "basis {b}, state {i}: no transformed standard state matches \
                         the coefficient table up to phase"
                    )))
                }
            }
        }
    }

    // Route (iii): every state is the image of the fiducial under its word
    // in the local generators.
    let fiducial = fiducial_state();
    let mut left_factors = Vec::with_capacity(20);
    let mut right_factors = Vec::with_capacity(20);
    for (idx, word) in GROUP_WORDS.iter().enumerate() {
        let (u, w) = word_factors(word);
        let mut image = vec![Complex64::default(); 4];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::default();
                for k in 0..2 {
                    for l in 0..2 {
                        acc += u[(i, k)] * w[(j, l)] * fiducial.amplitudes()[k * 2 + l];
                    }
                }
                image[i * 2 + j] = acc;
            }
        }
        let image = PureState::new(image, Some((2, 2)))?;
        let target = &bases[idx / 4][idx % 4];
        if target.overlap_sq(&image)? < 1.0 - 1e-10 {
            return Err(Error::Inconsistent(format!(
                "state {idx}: generator word does not reproduce the table entry"
            )));
        }
        left_factors.push(u);
        right_factors.push(w);
    }

    let mub = MubSet::new(
        4,
        bases,
        (1..=5).map(|i| format!("iso-{i}")).collect(),
    )?;
    Ok(IsoMub {
        mub,
        left_factors,
        right_factors,
    })
}
