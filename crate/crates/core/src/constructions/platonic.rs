//! Mixed-state designs carried by the vertices of the Platonic solids.
//!
//! Each vertex direction `n` carries the interpolated state
//! `rho = a |psi><psi| + (1-a) |psi~><psi~|` between the pure state along
//! `n` and its antipode; at the mixing weight `(5 - sqrt(15))/10` every
//! solid yields a mixed-state 2-design on the sphere of radius
//! `sqrt(3/20)` inside the Bloch ball.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{state_from_bloch, BlochPoint, Ensemble, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solid {
    Tetrahedron,
    Octahedron,
    Cube,
    Icosahedron,
    Dodecahedron,
}

impl Solid {
    pub const ALL: [Solid; 5] = [
        Solid::Tetrahedron,
        Solid::Octahedron,
        Solid::Cube,
        Solid::Icosahedron,
        Solid::Dodecahedron,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Solid::Tetrahedron => "tetrahedron",
            Solid::Octahedron => "octahedron",
            Solid::Cube => "cube",
            Solid::Icosahedron => "icosahedron",
            Solid::Dodecahedron => "dodecahedron",
        }
    }
}

/// The mixing weight at which every solid becomes a mixed-state 2-design.
pub fn design_mixing() -> f64 {
    (5.0 - 15f64.sqrt()) / 10.0
}

/// Unit vertex directions in a fixed canonical orientation.
pub fn vertices(solid: Solid) -> Vec<[f64; 3]> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    match solid {
        // One vertex on +z; the equatorial azimuths match the reference
        // matrices of the rescaled tetrahedral measurement.
        Solid::Tetrahedron => {
            let s2 = 2f64.sqrt();
            let s6 = 6f64.sqrt();
            vec![
                [0.0, 0.0, 1.0],
                [s2 / 3.0, -s6 / 3.0, -1.0 / 3.0],
                [-2.0 * s2 / 3.0, 0.0, -1.0 / 3.0],
                [s2 / 3.0, s6 / 3.0, -1.0 / 3.0],
            ]
        }
        Solid::Octahedron => vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ],
        Solid::Cube => {
            let s = 1.0 / 3f64.sqrt();
            let mut out = Vec::with_capacity(8);
            for &x in &[-s, s] {
                for &y in &[-s, s] {
                    for &z in &[-s, s] {
                        out.push([x, y, z]);
                    }
                }
            }
            out
        }
        Solid::Icosahedron => {
            let norm = (1.0 + phi * phi).sqrt();
            let a = 1.0 / norm;
            let b = phi / norm;
            let mut out = Vec::with_capacity(12);
            for &s1 in &[-1.0f64, 1.0] {
                for &s2 in &[-1.0f64, 1.0] {
                    out.push([0.0, s1 * a, s2 * b]);
                    out.push([s1 * a, s2 * b, 0.0]);
                    out.push([s1 * b, 0.0, s2 * a]);
                }
            }
            out
        }
        Solid::Dodecahedron => {
            let s3 = 3f64.sqrt();
            let a = 1.0 / (phi * s3);
            let b = phi / s3;
            let c = 1.0 / s3;
            let mut out = Vec::with_capacity(20);
            for &x in &[-c, c] {
                for &y in &[-c, c] {
                    for &z in &[-c, c] {
                        out.push([x, y, z]);
                    }
                }
            }
            for &s1 in &[-1.0f64, 1.0] {
                for &s2 in &[-1.0f64, 1.0] {
                    out.push([0.0, s1 * a, s2 * b]);
                    out.push([s1 * a, s2 * b, 0.0]);
                    out.push([s1 * b, 0.0, s2 * a]);
                }
            }
            out
        }
    }
}

/// Pure qubit state pointing along the unit direction `n`.
pub fn state_from_direction(n: [f64; 3]) -> PureState {
    let cos_half = ((1.0 + n[2]) / 2.0).max(0.0).sqrt();
    let sin_half = ((1.0 - n[2]) / 2.0).max(0.0).sqrt();
    let phase = n[1].atan2(n[0]);
    PureState::normalized(
        vec![
            Complex64::new(cos_half, 0.0),
            Complex64::from_polar(sin_half, phase),
        ],
        None,
    )
    .expect("direction states are normalized")
}

/// Pure ensemble of the vertex states (the `a = 1` limit).
pub fn platonic_pure_states(solid: Solid) -> Result<Ensemble> {
    Ensemble::uniform_pure(vertices(solid).iter().map(|&n| state_from_direction(n)).collect())
}

/// One density matrix per vertex at mixing weight `a`:
/// Bloch vector `(2a - 1)/2 * n`.
pub fn platonic_design(solid: Solid, a: f64) -> Result<Ensemble> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::Validation(format!(
            "mixing weight a = {a} outside [0, 1]"
        )));
    }
    let scale = (2.0 * a - 1.0) / 2.0;
    let states = vertices(solid)
        .iter()
        .map(|n| state_from_bloch([scale * n[0], scale * n[1], scale * n[2]]))
        .collect::<Result<Vec<_>>>()?;
    Ensemble::uniform_mixed(states)
}

/// Canonical dodecahedron vertex points at radius 1/2, for spectrum
/// comparisons.
pub fn dodecahedron_reference_points() -> Vec<BlochPoint> {
    vertices(Solid::Dodecahedron)
        .iter()
        .map(|&n| BlochPoint {
            coords: [0.5 * n[0], 0.5 * n[1], 0.5 * n[2]],
            weight: 1.0 / 20.0,
        })
        .collect()
}
