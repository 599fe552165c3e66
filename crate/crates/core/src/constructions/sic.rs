//! A symmetric informationally complete set of nine states in dimension
//! three: the Weyl-Heisenberg orbit of the fiducial `(0, 1, -1)/sqrt(2)`.
//! Pairwise squared overlaps are checked to equal `1/(d+1) = 1/4` at
//! construction rather than trusted.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{Ensemble, PureState};

/// Nine qutrit states with constant pairwise overlap 1/4.
pub fn sic_d3() -> Result<Ensemble> {
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let fiducial = [
        Complex64::default(),
        Complex64::new(s, 0.0),
        Complex64::new(-s, 0.0),
    ];
    let mut states = Vec::with_capacity(9);
    for a in 0..3usize {
        for b in 0..3usize {
            // X^a Z^b |f>: component j of Z^b f is omega^(b j) f_j, then X^a
            // shifts component j to j + a (mod 3).
            let mut amps = vec![Complex64::default(); 3];
            for j in 0..3 {
                amps[(j + a) % 3] = omega.powu((b * j) as u32) * fiducial[j];
            }
            states.push(PureState::new(amps, None)?);
        }
    }
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            let ov = states[i].overlap_sq(&states[j])?;
            if (ov - 0.25).abs() > 1e-12 {
                return Err(Error::Inconsistent(format!(
                    "states {i},{j}: squared overlap {ov} deviates from 1/4"
                )));
            }
        }
    }
    Ensemble::uniform_pure(states)
}
