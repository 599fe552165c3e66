//! Finite subgroups of SU(2) used as unitary designs: the binary
//! tetrahedral group (24 elements, a unitary 2-design) and the binary
//! icosahedral group (120 elements, a unitary 5-design). Both are built
//! from their unit-quaternion representations.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// `q = (a, b, c, d) -> [[a + bi, c + di], [-c + di, a - bi]]`.
fn quaternion_to_su2(q: [f64; 4]) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(q[0], q[1]),
            Complex64::new(q[2], q[3]),
            Complex64::new(-q[2], q[3]),
            Complex64::new(q[0], -q[1]),
        ],
    )
}

fn lipschitz_units() -> Vec<[f64; 4]> {
    let mut out = Vec::with_capacity(24);
    for axis in 0..4 {
        for sign in [-1.0, 1.0] {
            let mut q = [0.0; 4];
            q[axis] = sign;
            out.push(q);
        }
    }
    for s0 in [-0.5, 0.5] {
        for s1 in [-0.5, 0.5] {
            for s2 in [-0.5, 0.5] {
                for s3 in [-0.5, 0.5] {
                    out.push([s0, s1, s2, s3]);
                }
            }
        }
    }
    out
}

/// The 24 elements of the binary tetrahedral group.
pub fn binary_tetrahedral() -> Vec<DMatrix<Complex64>> {
    lipschitz_units().into_iter().map(quaternion_to_su2).collect()
}

fn permutation_parity(p: &[usize; 4]) -> bool {
    let mut inversions = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// The 120 elements of the binary icosahedral group.
pub fn binary_icosahedral() -> Vec<DMatrix<Complex64>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut quats = lipschitz_units();
    // Even permutations of (0, +-1, +-1/phi, +-phi) / 2.
    let mut perms: Vec<[usize; 4]> = Vec::with_capacity(12);
    let mut p = [0usize, 1, 2, 3];
    loop {
        if permutation_parity(&p) {
            perms.push(p);
        }
        // next lexicographic permutation
        let mut i = 3;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = 3;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    for s1 in [-1.0f64, 1.0] {
        for s2 in [-1.0f64, 1.0] {
            for s3 in [-1.0f64, 1.0] {
                let v = [0.0, 0.5 * s1, 0.5 / phi * s2, 0.5 * phi * s3];
                for perm in &perms {
                    quats.push([v[perm[0]], v[perm[1]], v[perm[2]], v[perm[3]]]);
                }
            }
        }
    }
    quats.into_iter().map(quaternion_to_su2).collect()
}

/// Uniform weights over a family of unitaries.
pub fn uniform_family(unitaries: Vec<DMatrix<Complex64>>) -> Vec<(f64, DMatrix<Complex64>)> {
    let w = 1.0 / unitaries.len() as f64;
    unitaries.into_iter().map(|u| (w, u)).collect()
}
