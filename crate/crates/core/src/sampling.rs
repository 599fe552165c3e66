//! Seeded Monte-Carlo ground truth: samplers for the Haar, Fubini-Study
//! and Hilbert-Schmidt measures plus moment estimators used to validate
//! the analytic formulas elsewhere in the crate.
//!
//! Sampling is deterministic: a config seed feeds a counter-based stream
//! cipher, estimators split work into fixed-size chunks with one RNG
//! stream per chunk, and partial results are reduced in chunk order, so
//! results are bit-identical regardless of thread count. The samplers are
//! deliberately independent of the analytic code paths they check:
//! Hilbert-Schmidt states arise as `G G^dag / Tr(G G^dag)` from complex
//! Ginibre matrices, Fubini-Study states as normalized Gaussian vectors,
//! and Haar unitaries by Gram-Schmidt orthonormalization of a Ginibre
//! matrix (the positive-diagonal triangular factor makes the distribution
//! exactly Haar).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::moments::omega;
use crate::simplex::{monomials_up_to, SimplexMeasure};
use crate::state::{DensityMatrix, PureState};

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 1;

/// Samples per RNG stream in parallel estimators.
const CHUNK: usize = 1 << 14;

/// Dimension, sample count and reproducibility seed of a sampling run.
#[derive(Debug, Clone, Copy)]
pub struct SamplerConfig {
    pub dim: usize,
    pub count: usize,
    pub seed: u64,
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn sample_ginibre(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(
            rng.sample::<f64, _>(StandardNormal) * scale,
            rng.sample::<f64, _>(StandardNormal) * scale,
        )
    })
}

fn hs_matrix(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex64> {
    let g = sample_ginibre(rng, n, n);
    let mut m = &g * g.adjoint();
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    m /= Complex64::new(tr, 0.0);
    m
}

fn fs_vector(rng: &mut ChaCha8Rng, d: usize) -> DVector<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = DVector::from_fn(d, |_, _| {
        Complex64::new(
            rng.sample::<f64, _>(StandardNormal) * scale,
            rng.sample::<f64, _>(StandardNormal) * scale,
        )
    });
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v /= Complex64::new(norm, 0.0);
    v
}

fn haar_matrix(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex64> {
    let g = sample_ginibre(rng, n, n);
    let mut q = g;
    for j in 0..n {
        for k in 0..j {
            let qk = q.column(k).clone_owned();
            let proj = qk.dotc(&q.column(j));
            let update = &qk * proj;
            let mut col = q.column_mut(j);
            col -= update;
        }
        let norm: f64 = q.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut col = q.column_mut(j);
        col /= Complex64::new(norm, 0.0);
    }
    q
}

/// Stream of flat-measure random density matrices.
pub fn sample_hs(cfg: &SamplerConfig) -> impl Iterator<Item = DensityMatrix> {
    let mut rng = stream_rng(cfg.seed, 0);
    let n = cfg.dim;
    (0..cfg.count).map(move |_| {
        DensityMatrix::from_trusted(hs_matrix(&mut rng, n)).expect("sampler output is a state")
    })
}

/// Stream of Fubini-Study random pure states in dimension `cfg.dim`.
pub fn sample_fs(cfg: &SamplerConfig) -> impl Iterator<Item = PureState> {
    let mut rng = stream_rng(cfg.seed, 0);
    let d = cfg.dim;
    (0..cfg.count).map(move |_| {
        PureState::normalized(fs_vector(&mut rng, d).iter().copied().collect(), None)
            .expect("sampler output is normalized")
    })
}

/// Stream of Haar-random unitaries of size `cfg.dim`.
pub fn sample_haar(cfg: &SamplerConfig) -> impl Iterator<Item = DMatrix<Complex64>> {
    let mut rng = stream_rng(cfg.seed, 0);
    let n = cfg.dim;
    (0..cfg.count).map(move |_| haar_matrix(&mut rng, n))
}

/// Scalar mean accumulator with deterministic merging.
#[derive(Debug, Clone, Copy, Default)]
struct Acc {
    sum: f64,
    sumsq: f64,
}

impl Acc {
    fn push(&mut self, x: f64) {
        self.sum += x;
        self.sumsq += x * x;
    }

    fn merge(&mut self, other: &Acc) {
        self.sum += other.sum;
        self.sumsq += other.sumsq;
    }

    fn finish(&self, n: usize) -> Estimate {
        let nf = n as f64;
        let mean = self.sum / nf;
        let var = (self.sumsq / nf - mean * mean).max(0.0);
        Estimate {
            mean,
            std_error: (var / nf).sqrt(),
        }
    }
}

/// A Monte-Carlo mean with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    /// |mean - reference| in units of the standard error. Estimates with
    /// vanishing spread compare at round-off precision instead.
    pub fn sigma_distance(&self, reference: f64) -> f64 {
        let dev = (self.mean - reference).abs();
        if self.std_error == 0.0 {
            if dev <= 1e-12 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            dev / self.std_error
        }
    }
}

/// Runs `per_sample` over `cfg.count` draws, chunked into per-stream RNGs,
/// reducing the per-chunk accumulators in chunk order.
fn accumulate_chunked<F>(cfg: &SamplerConfig, width: usize, per_sample: F) -> Vec<Acc>
where
    F: Fn(&mut ChaCha8Rng, &mut [Acc]) + Sync,
{
    let chunks = cfg.count.div_ceil(CHUNK);
    let partials: Vec<Vec<Acc>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = stream_rng(cfg.seed, chunk as u64 + 1);
            let here = CHUNK.min(cfg.count - chunk * CHUNK);
            let mut accs = vec![Acc::default(); width];
            for _ in 0..here {
                per_sample(&mut rng, &mut accs);
            }
            accs
        })
        .collect();
    let mut total = vec![Acc::default(); width];
    for part in partials {
        for (t, p) in total.iter_mut().zip(&part) {
            t.merge(p);
        }
    }
    total
}

/// Dense Monte-Carlo estimate of the t-fold moment operator with per-entry
/// standard errors and the deviation from the analytic operator.
#[derive(Debug, Clone)]
pub struct OmegaEstimate {
    pub dim: usize,
    pub order: usize,
    pub count: usize,
    pub seed: u64,
    pub estimate: DMatrix<Complex64>,
    pub reference: DMatrix<Complex64>,
    /// Standard error of each entry (real and imaginary parts combined).
    pub per_entry_sigma: DMatrix<f64>,
    pub max_abs_deviation: f64,
    /// Largest entrywise deviation in standard-error units.
    pub max_sigma_units: f64,
}

/// Entrywise mean of `rho^(x t)` over the flat measure.
pub fn estimate_omega(n: usize, t: usize, cfg: &SamplerConfig) -> Result<OmegaEstimate> {
    let mut analytic = omega(n, t, true)?;
    let reference = analytic.materialize()?.clone();
    let side = reference.nrows();

    let chunks = cfg.count.div_ceil(CHUNK);
    type Partial = (DMatrix<Complex64>, DMatrix<f64>, DMatrix<f64>);
    let partials: Vec<Partial> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = stream_rng(cfg.seed, chunk as u64 + 1);
            let here = CHUNK.min(cfg.count - chunk * CHUNK);
            let mut sum = DMatrix::<Complex64>::zeros(side, side);
            let mut sumsq_re = DMatrix::<f64>::zeros(side, side);
            let mut sumsq_im = DMatrix::<f64>::zeros(side, side);
            for _ in 0..here {
                let rho = hs_matrix(&mut rng, n);
                let mut pow = rho.clone();
                for _ in 1..t {
                    pow = pow.kronecker(&rho);
                }
                for i in 0..side {
                    for j in 0..side {
                        let z = pow[(i, j)];
                        sum[(i, j)] += z;
                        sumsq_re[(i, j)] += z.re * z.re;
                        sumsq_im[(i, j)] += z.im * z.im;
                    }
                }
            }
            (sum, sumsq_re, sumsq_im)
        })
        .collect();

    let mut sum = DMatrix::<Complex64>::zeros(side, side);
    let mut sumsq_re = DMatrix::<f64>::zeros(side, side);
    let mut sumsq_im = DMatrix::<f64>::zeros(side, side);
    for (s, sre, sim) in partials {
        sum += s;
        sumsq_re += sre;
        sumsq_im += sim;
    }
    let nf = cfg.count as f64;
    let estimate = &sum / Complex64::new(nf, 0.0);
    let mut per_entry_sigma = DMatrix::<f64>::zeros(side, side);
    let mut max_abs_deviation = 0.0f64;
    let mut max_sigma_units = 0.0f64;
    for i in 0..side {
        for j in 0..side {
            let mean = estimate[(i, j)];
            let var_re = (sumsq_re[(i, j)] / nf - mean.re * mean.re).max(0.0);
            let var_im = (sumsq_im[(i, j)] / nf - mean.im * mean.im).max(0.0);
            let sigma = ((var_re + var_im) / nf).sqrt();
            per_entry_sigma[(i, j)] = sigma;
            let dev = (mean - reference[(i, j)]).norm();
            max_abs_deviation = max_abs_deviation.max(dev);
            if sigma > 0.0 {
                max_sigma_units = max_sigma_units.max(dev / sigma);
            }
        }
    }
    Ok(OmegaEstimate {
        dim: n,
        order: t,
        count: cfg.count,
        seed: cfg.seed,
        estimate,
        reference,
        per_entry_sigma,
        max_abs_deviation,
        max_sigma_units,
    })
}

/// Means of `Tr(rho^k)` for `k = 1..=t_max` over the flat measure.
pub fn estimate_trace_power_means(
    n: usize,
    t_max: usize,
    cfg: &SamplerConfig,
) -> Vec<Estimate> {
    let accs = accumulate_chunked(cfg, t_max, |rng, accs| {
        let rho = hs_matrix(rng, n);
        let mut pow = rho.clone();
        accs[0].push(pow.diagonal().iter().map(|z| z.re).sum());
        for acc in accs.iter_mut().take(t_max).skip(1) {
            pow = &pow * &rho;
            acc.push(pow.diagonal().iter().map(|z| z.re).sum());
        }
    });
    accs.iter().map(|a| a.finish(cfg.count)).collect()
}

/// Mean purity of the `Side::B` partial traces of Fubini-Study states in
/// dimension `n^2`; consistency check of the two samplers.
pub fn estimate_reduced_purity(n: usize, cfg: &SamplerConfig) -> Estimate {
    let accs = accumulate_chunked(cfg, 1, |rng, accs| {
        let psi = fs_vector(rng, n * n);
        let m = DMatrix::from_fn(n, n, |a, b| psi[a * n + b]);
        let rho = &m * m.adjoint();
        accs[0].push(rho.iter().map(|z| z.norm_sqr()).sum());
    });
    accs[0].finish(cfg.count)
}

/// Mean of `|Tr U|^(2t)` over Haar-random unitaries of size `d`.
pub fn estimate_haar_trace_moment(d: usize, t: usize, cfg: &SamplerConfig) -> Estimate {
    let accs = accumulate_chunked(cfg, 1, |rng, accs| {
        let u = haar_matrix(rng, d);
        let tr: Complex64 = u.diagonal().iter().sum();
        accs[0].push(tr.norm_sqr().powi(t as i32));
    });
    accs[0].finish(cfg.count)
}

/// Eigenvalues of a 2x2 Hermitian matrix, descending.
fn hermitian_eigenvalues_2(m: &DMatrix<Complex64>) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let b = m[(1, 1)].re;
    let half_diff = 0.5 * (a - b);
    let radius = (half_diff * half_diff + m[(0, 1)].norm_sqr()).sqrt();
    let mid = 0.5 * (a + b);
    [mid + radius, mid - radius]
}

/// Eigenvalues of a 3x3 Hermitian matrix, descending, by the trigonometric
/// closed form of the characteristic polynomial.
fn hermitian_eigenvalues_3(m: &DMatrix<Complex64>) -> [f64; 3] {
    let q = (m[(0, 0)].re + m[(1, 1)].re + m[(2, 2)].re) / 3.0;
    let p1 = m[(0, 1)].norm_sqr() + m[(0, 2)].norm_sqr() + m[(1, 2)].norm_sqr();
    let p2 = (m[(0, 0)].re - q).powi(2)
        + (m[(1, 1)].re - q).powi(2)
        + (m[(2, 2)].re - q).powi(2)
        + 2.0 * p1;
    if p2 <= 0.0 {
        return [q, q, q];
    }
    let p = (p2 / 6.0).sqrt();
    let det_b = {
        let b = |i: usize, j: usize| {
            (m[(i, j)] - if i == j { Complex64::new(q, 0.0) } else { Complex64::default() })
                / Complex64::new(p, 0.0)
        };
        let d = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
            - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
            + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
        d.re
    };
    let r = (det_b / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    [e1, e2, e3]
}

/// One estimated monomial moment of the eigenvalue point set.
#[derive(Debug, Clone)]
pub struct MomentEntry {
    pub exponents: Vec<usize>,
    /// Moment of the unordered (permutation-symmetrized) eigenvalue vector.
    pub symmetrized: Estimate,
    /// Moment of the descending-sorted eigenvalue vector.
    pub sorted: Estimate,
}

/// Monte-Carlo moment table of eigenvalue vectors on the simplex.
#[derive(Debug, Clone)]
pub struct MomentTable {
    pub n: usize,
    pub measure: SimplexMeasure,
    pub degree: usize,
    pub count: usize,
    pub seed: u64,
    pub entries: Vec<MomentEntry>,
}

impl MomentTable {
    pub fn entry(&self, exponents: &[usize]) -> Option<&MomentEntry> {
        self.entries.iter().find(|e| e.exponents == exponents)
    }
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    fn rec(k: usize, idx: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == idx.len() {
            out.push(idx.clone());
            return;
        }
        for i in k..idx.len() {
            idx.swap(k, i);
            rec(k + 1, idx, out);
            idx.swap(k, i);
        }
    }
    rec(0, &mut idx, &mut out);
    out
}

/// Monte-Carlo moments of sorted and symmetrized eigenvalue vectors for
/// `n` in {2, 3} and total degree at most 6.
pub fn estimate_simplex_moments(
    n: usize,
    measure: SimplexMeasure,
    degree: usize,
    cfg: &SamplerConfig,
) -> Result<MomentTable> {
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!(
            "simplex moment sampling supports n in {{2, 3}}, got {n}"
        )));
    }
    if degree > 6 {
        return Err(Error::Unsupported(format!(
            "simplex moment degree capped at 6, got {degree}"
        )));
    }
    let monomials: Vec<Vec<usize>> = monomials_up_to(n, degree)
        .into_iter()
        .filter(|e| e.iter().sum::<usize>() > 0)
        .collect();
    let perms = permutations_of(n);
    let width = 2 * monomials.len();
    let accs = accumulate_chunked(cfg, width, |rng, accs| {
        let lambda: Vec<f64> = match measure {
            SimplexMeasure::HilbertSchmidt => {
                let rho = hs_matrix(rng, n);
                if n == 2 {
                    hermitian_eigenvalues_2(&rho).to_vec()
                } else {
                    hermitian_eigenvalues_3(&rho).to_vec()
                }
            }
            SimplexMeasure::Lebesgue => {
                let psi = fs_vector(rng, n);
                let mut p: Vec<f64> = psi.iter().map(|z| z.norm_sqr()).collect();
                p.sort_by(|a, b| b.partial_cmp(a).unwrap());
                p
            }
        };
        // `lambda` is descending in both branches.
        for (k, exps) in monomials.iter().enumerate() {
            let sorted_val: f64 = lambda
                .iter()
                .zip(exps)
                .map(|(x, &e)| x.powi(e as i32))
                .product();
            let mut sym = 0.0;
            for perm in &perms {
                sym += exps
                    .iter()
                    .zip(perm)
                    .map(|(&e, &p)| lambda[p].powi(e as i32))
                    .product::<f64>();
            }
            sym /= perms.len() as f64;
            accs[2 * k].push(sym);
            accs[2 * k + 1].push(sorted_val);
        }
    });
    let entries = monomials
        .into_iter()
        .enumerate()
        .map(|(k, exponents)| MomentEntry {
            exponents,
            symmetrized: accs[2 * k].finish(cfg.count),
            sorted: accs[2 * k + 1].finish(cfg.count),
        })
        .collect();
    Ok(MomentTable {
        n,
        measure,
        degree,
        count: cfg.count,
        seed: cfg.seed,
        entries,
    })
}

/// Chi-square statistic of single-qubit Bloch radii against the flat-ball
/// radial density `24 r^2` (radius 1/2 convention), using `bins` equal-mass
/// bins; degrees of freedom are `bins - 1`.
pub fn radial_chi_square(cfg: &SamplerConfig, bins: usize) -> (f64, usize) {
    let mut counts = vec![0usize; bins];
    let mut rng = stream_rng(cfg.seed, 0);
    for _ in 0..cfg.count {
        let rho = hs_matrix(&mut rng, 2);
        let u = radial_cdf_value(&rho);
        let b = ((u * bins as f64) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let expected = cfg.count as f64 / bins as f64;
    let stat = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    (stat, bins - 1)
}

/// Kolmogorov-Smirnov statistic of the radial CDF values against
/// uniformity; equivalent to testing that `r^3` is uniform on its range.
pub fn radial_ks(cfg: &SamplerConfig) -> f64 {
    let mut rng = stream_rng(cfg.seed, 0);
    let mut us: Vec<f64> = (0..cfg.count)
        .map(|_| radial_cdf_value(&hs_matrix(&mut rng, 2)))
        .collect();
    us.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = us.len() as f64;
    let mut d = 0.0f64;
    for (i, u) in us.iter().enumerate() {
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((u - lo).abs()).max((hi - u).abs());
    }
    d
}

/// CDF value `(2r)^3` of the Bloch radius of a qubit state.
fn radial_cdf_value(rho: &DMatrix<Complex64>) -> f64 {
    let x = rho[(0, 1)].re;
    let y = -rho[(0, 1)].im;
    let z = 0.5 * (rho[(0, 0)].re - rho[(1, 1)].re);
    let r = (x * x + y * y + z * z).sqrt();
    (2.0 * r).powi(3).min(1.0)
}
