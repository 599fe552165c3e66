//! Monte-Carlo reference values pinned with their seed, sample count and
//! standard error. Regression tests rerun the exact configurations and
//! compare bit-for-bit (determinism anchors) or at 3 sigma (statistics).
//!
//! Regenerate with the ignored test `regenerate_pinned_values`, which
//! prints this table's source from fresh runs.

/// A pinned scalar estimate.
#[derive(Debug, Clone, Copy)]
pub struct PinnedEstimate {
    pub name: &'static str,
    pub seed: u64,
    pub count: usize,
    pub value: f64,
    pub sigma: f64,
}

/// A pinned moment of the qutrit eigenvalue simplex.
#[derive(Debug, Clone, Copy)]
pub struct PinnedMoment {
    pub exponents: [usize; 3],
    pub symmetrized: f64,
    pub symmetrized_sigma: f64,
    pub sorted: f64,
    pub sorted_sigma: f64,
}

/// Haar moments `E |Tr U|^(2t)` over U(2) for `t = 1..=5`; the exact
/// combinatorial values `1, 2, 5, 14, 42` must sit within 3 sigma.
pub const HAAR_TRACE_MOMENTS_D2: &[PinnedEstimate] = &[
    PinnedEstimate { name: "haar-d2-t1", seed: 2001, count: 1_000_000, value: 1.000375610058744, sigma: 0.0010000432153493657 },
    PinnedEstimate { name: "haar-d2-t2", seed: 2001, count: 1_000_000, value: 2.000837793766702, sigma: 0.0031612541840720155 },
    PinnedEstimate { name: "haar-d2-t3", seed: 2001, count: 1_000_000, value: 5.00077339962875, sigma: 0.010336700272181304 },
    PinnedEstimate { name: "haar-d2-t4", seed: 2001, count: 1_000_000, value: 13.996879893278027, sigma: 0.035088280430139375 },
    PinnedEstimate { name: "haar-d2-t5", seed: 2001, count: 1_000_000, value: 41.972712725395965, sigma: 0.1224072891162223 },
];

/// Flat-measure trace-power means for one qubit; exact values are 4/5 and
/// 21/30.
pub const HS2_TRACE_POWERS: &[PinnedEstimate] = &[
    PinnedEstimate { name: "hs2-tr-rho2", seed: 2002, count: 1_000_000, value: 0.8002095666090807, sigma: 0.0001308673688376221 },
    PinnedEstimate { name: "hs2-tr-rho3", seed: 2002, count: 1_000_000, value: 0.7003143499136206, sigma: 0.00019630105325643603 },
];

/// Mean purity of partial traces of four-dimensional Fubini-Study states;
/// agrees with the flat-measure value 4/5.
pub const FS_REDUCED_PURITY_D4: Option<PinnedEstimate> = Some(PinnedEstimate {
    name: "fs-reduced-purity-d4",
    seed: 2003,
    count: 1_000_000,
    value: 0.7999258743921022,
    sigma: 0.00013093390554168785,
});

/// Seed and count of the pinned qutrit Hilbert-Schmidt moment table.
pub const SIMPLEX_HS3_SEED: u64 = 2004;
pub const SIMPLEX_HS3_COUNT: usize = 10_000_000;

/// Degree-2 (plus two cubic) moments of the qutrit eigenvalue
/// distribution under the flat measure, for the symmetrized and the
/// descending-sorted eigenvalue vectors.
pub const SIMPLEX_HS3_MOMENTS: &[PinnedMoment] = &[
    PinnedMoment { exponents: [1, 0, 0], symmetrized: 0.33333333333330595, symmetrized_sigma: 0.0, sorted: 0.7245352171385216, sorted_sigma: 2.9611816405273207e-5 },
    PinnedMoment { exponents: [2, 0, 0], symmetrized: 0.200001420122345, symmetrized_sigma: 1.0382019028311174e-5, sorted: 0.5337198775821608, sorted_sigma: 4.294448728702159e-5 },
    PinnedMoment { exponents: [1, 1, 0], symmetrized: 0.06666595660549425, symmetrized_sigma: 5.191009514155987e-6, sorted: 0.1654340969738377, sorted_sigma: 1.2993694672334963e-5 },
    PinnedMoment { exponents: [3, 0, 0], symmetrized: 0.139395780853193, symmetrized_sigma: 1.4428617666246876e-5, sorted: 0.3993764101210553, sorted_sigma: 4.762642322834429e-5 },
    PinnedMoment { exponents: [1, 1, 1], symmetrized: 0.006060317336342646, symmetrized_sigma: 1.7287983679962045e-6, sorted: 0.006060317336342645, sorted_sigma: 1.7287983679962052e-6 },
];

/// Small-count determinism anchors: rerunning the exact configuration must
/// reproduce these values bit-for-bit.
pub const DETERMINISM_ANCHORS: &[PinnedEstimate] = &[
    PinnedEstimate { name: "hs2-tr-rho2-small", seed: 99, count: 100_000, value: 0.8001728859475167, sigma: 0.0 },
    PinnedEstimate { name: "hs3-sym-p1p2-small", seed: 99, count: 100_000, value: 0.06673036074383124, sigma: 0.0 },
];
