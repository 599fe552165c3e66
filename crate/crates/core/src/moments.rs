//! Permutation-operator moment calculus.
//!
//! The t-th moment of the flat (Hilbert-Schmidt) ensemble of density
//! matrices is the operator
//!
//! ```text
//!     omega_{N,t} = sum_sigma Tr(O_sigma) O_sigma / sum_sigma Tr(O_sigma)^2
//! ```
//!
//! with `O_sigma` the permutation operators on the t-fold tensor space and
//! `Tr(O_sigma) = N^(cycles of sigma)`. Everything a design check needs
//! factorizes through cycle types: `Tr(O_sigma rho^(x t))` is the product of
//! `Tr(rho^len)` over the cycles of `sigma`, so verification never builds an
//! `N^t`-dimensional operator unless explicitly asked to (`materialize`),
//! which is kept as an independent cross-check path.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{symmetric_group, GroupTable, Permutation, MAX_ORDER};
use crate::state::{Ensemble, Member};

/// Default absolute tolerance on the residual `delta` for design verdicts.
pub const DESIGN_TOLERANCE: f64 = 1e-10;

/// Hard cap for dense realizations of the moment operator.
pub const MATERIALIZE_LIMIT: usize = 4096;

/// `Tr(O_sigma) = N^(number of cycles of sigma)`.
pub fn permutation_trace(sigma: &Permutation, n: usize) -> Result<f64> {
    if sigma.degree() > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "permutation order {} exceeds the supported maximum {MAX_ORDER}",
            sigma.degree()
        )));
    }
    Ok((n as f64).powi(sigma.cycle_count() as i32))
}

/// `Tr(O_sigma rho^(x t))` from the list `rho_powers[k-1] = Tr(rho^k)`.
pub fn moment_trace(rho_powers: &[f64], sigma: &Permutation) -> Result<f64> {
    let mut prod = 1.0;
    for len in sigma.cycle_type() {
        let p = rho_powers.get(len - 1).ok_or_else(|| {
            Error::Internal(format!(
                "trace power Tr(rho^{len}) missing from the supplied list"
            ))
        })?;
        prod *= p;
    }
    Ok(prod)
}

/// The averaged t-fold product state, stored as one coefficient per
/// conjugacy class of `S_t` with an optional dense realization.
#[derive(Debug, Clone)]
pub struct MomentOperator {
    dim: usize,
    order: usize,
    group: Arc<GroupTable>,
    /// Coefficient of `O_sigma` for each class, aligned with `group.classes`.
    class_coefficients: Vec<f64>,
    dense: Option<DMatrix<Complex64>>,
}

impl MomentOperator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn class_coefficients(&self) -> &[f64] {
        &self.class_coefficients
    }

    /// Coefficient of `O_sigma` for a given cycle type (descending lengths).
    pub fn coefficient(&self, cycle_type: &[usize]) -> Option<f64> {
        self.group
            .classes
            .iter()
            .position(|c| c.cycle_type == cycle_type)
            .map(|i| self.class_coefficients[i])
    }

    pub fn dense(&self) -> Option<&DMatrix<Complex64>> {
        self.dense.as_ref()
    }

    /// Builds the dense realization if within capacity.
    pub fn materialize(&mut self) -> Result<&DMatrix<Complex64>> {
        if self.dense.is_none() {
            let side = checked_power(self.dim, self.order)?;
            let mut m = DMatrix::zeros(side, side);
            for sigma in &self.group.elements {
                let class = self
                    .group
                    .classes
                    .iter()
                    .position(|c| c.cycle_type == sigma.cycle_type())
                    .expect("class table covers all elements");
                let coeff = Complex64::new(self.class_coefficients[class], 0.0);
                add_permutation_operator(&mut m, sigma, self.dim, coeff);
            }
            self.dense = Some(m);
        }
        Ok(self.dense.as_ref().unwrap())
    }

    /// `Tr(omega rho^(x t))` through the cycle-sum factorization.
    pub fn expectation_from_powers(&self, rho_powers: &[f64]) -> Result<f64> {
        let mut acc = 0.0;
        for (class, coeff) in self.group.classes.iter().zip(&self.class_coefficients) {
            let mut prod = 1.0;
            for &len in &class.cycle_type {
                let p = rho_powers.get(len - 1).ok_or_else(|| {
                    Error::Internal(format!("missing trace power Tr(rho^{len})"))
                })?;
                prod *= p;
            }
            acc += coeff * class.size as f64 * prod;
        }
        Ok(acc)
    }

    /// Traces out the last tensor factor, producing the order `t-1` operator.
    ///
    /// Removing the traced point from each cycle maps class coefficients
    /// exactly onto the lower-order moment operator: a fixed point
    /// contributes a factor `N`, an interior point just drops out.
    pub fn partial_trace_last(&self) -> Result<MomentOperator> {
        if self.order < 2 {
            return Err(Error::Unsupported(
                "cannot trace the order-1 moment operator down".into(),
            ));
        }
        let t = self.order;
        let lower = symmetric_group(t - 1)?;
        let mut coeffs = vec![0.0; lower.classes.len()];
        for sigma in &self.group.elements {
            let class = self
                .group
                .classes
                .iter()
                .position(|c| c.cycle_type == sigma.cycle_type())
                .expect("class lookup");
            let c = self.class_coefficients[class];
            // Delete the last point from sigma's cycle structure; a fixed
            // point contributes the factor N under the trace.
            let fixed = sigma.apply(t - 1) == t - 1;
            let mut images: Vec<usize> = Vec::with_capacity(t - 1);
            for i in 0..t - 1 {
                let mut j = sigma.apply(i);
                if j == t - 1 {
                    j = sigma.apply(t - 1);
                }
                images.push(j);
            }
            let reduced = Permutation::from_images(images)?;
            let lclass = lower
                .classes
                .iter()
                .position(|cl| cl.cycle_type == reduced.cycle_type())
                .expect("reduced class lookup");
            coeffs[lclass] += c * if fixed { self.dim as f64 } else { 1.0 };
        }
        // The sums above run over whole lower classes (each permutation of a
        // class receives the same total); divide by the class size to get the
        // per-operator coefficient.
        for (c, class) in coeffs.iter_mut().zip(&lower.classes) {
            *c /= class.size as f64;
        }
        let dense = self
            .dense
            .as_ref()
            .map(|m| partial_trace_last_dense(m, self.dim, self.order));
        Ok(MomentOperator {
            dim: self.dim,
            order: t - 1,
            group: lower,
            class_coefficients: coeffs,
            dense,
        })
    }
}

fn checked_power(n: usize, t: usize) -> Result<usize> {
    let mut side: usize = 1;
    for _ in 0..t {
        side = side.saturating_mul(n);
        if side > MATERIALIZE_LIMIT {
            return Err(Error::Capacity(format!(
                "dense realization needs N^t = {n}^{t} > {MATERIALIZE_LIMIT}; \
                 use the cycle-sum path instead"
            )));
        }
    }
    Ok(side)
}

/// Adds `coeff * O_sigma` onto `m` (side `n^t`).
fn add_permutation_operator(
    m: &mut DMatrix<Complex64>,
    sigma: &Permutation,
    n: usize,
    coeff: Complex64,
) {
    let t = sigma.degree();
    let inv = sigma.inverse();
    let side = m.nrows();
    let mut digits = vec![0usize; t];
    for col in 0..side {
        // decode col as (i_0, .., i_{t-1}) base n, most significant first
        let mut rem = col;
        for k in (0..t).rev() {
            digits[k] = rem % n;
            rem /= n;
        }
        let mut row = 0usize;
        for k in 0..t {
            row = row * n + digits[inv.apply(k)];
        }
        m[(row, col)] += coeff;
    }
}

/// Dense partial trace over the last factor of an `n^t`-dimensional operator.
fn partial_trace_last_dense(
    m: &DMatrix<Complex64>,
    n: usize,
    t: usize,
) -> DMatrix<Complex64> {
    let side = n.pow((t - 1) as u32);
    DMatrix::from_fn(side, side, |i, j| {
        (0..n).map(|b| m[(i * n + b, j * n + b)]).sum()
    })
}

/// Builds `omega_{N,t}`; `materialize` also constructs the dense matrix.
pub fn omega(n: usize, t: usize, materialize: bool) -> Result<MomentOperator> {
    if n == 0 {
        return Err(Error::Dimension("dimension must be positive".into()));
    }
    let group = symmetric_group(t)?;
    let denom: f64 = group
        .classes
        .iter()
        .map(|c| c.size as f64 * (n as f64).powi(2 * c.cycle_count as i32))
        .sum();
    let class_coefficients: Vec<f64> = group
        .classes
        .iter()
        .map(|c| (n as f64).powi(c.cycle_count as i32) / denom)
        .collect();
    let mut op = MomentOperator {
        dim: n,
        order: t,
        group,
        class_coefficients,
        dense: None,
    };
    if materialize {
        op.materialize()?;
    }
    Ok(op)
}

/// `gamma_{N,t} = Tr(omega^2)`, evaluated by the class-reduced double sum
/// over `S_t x S_t` of `Tr(O_sigma) Tr(O_tau) Tr(O_{sigma tau})`.
pub fn gamma(n: usize, t: usize) -> Result<f64> {
    let group = symmetric_group(t)?;
    let nf = n as f64;
    let mut numerator = 0.0;
    for class in &group.classes {
        let rep = &group.elements[class.representative];
        let mut inner = 0.0;
        for (tau, &c_tau) in group.elements.iter().zip(&group.cycle_counts) {
            let c_prod = rep.compose(tau).cycle_count();
            inner += nf.powi((c_tau + c_prod) as i32);
        }
        numerator += class.size as f64 * nf.powi(class.cycle_count as i32) * inner;
    }
    let denom: f64 = group
        .classes
        .iter()
        .map(|c| c.size as f64 * nf.powi(2 * c.cycle_count as i32))
        .sum();
    Ok(numerator / (denom * denom))
}

/// Verdict of a design check at one order.
#[derive(Debug, Clone)]
pub struct DesignReport {
    pub t: usize,
    /// `gamma - cross_term + overlap_term`, nonnegative up to round-off.
    pub delta: f64,
    pub gamma: f64,
    /// `2 Tr(omega . mean t-fold product)`.
    pub cross_term: f64,
    /// Weighted mean of `Tr(rho_i rho_j)^t`.
    pub overlap_term: f64,
    pub is_design: bool,
    pub tolerance: f64,
}

/// Hilbert-Schmidt overlap of two ensemble members, using amplitude inner
/// products when both are pure.
fn pair_overlap(a: &Member, b: &Member) -> f64 {
    match (a, b) {
        (Member::Pure(x), Member::Pure(y)) => {
            x.inner(y).map(|z| z.norm_sqr()).unwrap_or(f64::NAN)
        }
        (Member::Pure(x), Member::Mixed(r)) | (Member::Mixed(r), Member::Pure(x)) => {
            // <psi| rho |psi>
            let v = x.amplitudes();
            let rv = r.matrix() * v;
            v.dotc(&rv).re
        }
        (Member::Mixed(r), Member::Mixed(s)) => r.overlap(s).unwrap_or(f64::NAN),
    }
}

fn member_trace_powers(m: &Member, t: usize) -> Vec<f64> {
    match m {
        Member::Pure(_) => vec![1.0; t],
        Member::Mixed(r) => r.trace_powers(t),
    }
}

/// Mixed-state design residual at order `t` through the cycle-sum path.
pub fn delta_mixed(ensemble: &Ensemble, t: usize) -> Result<DesignReport> {
    delta_mixed_with_tolerance(ensemble, t, DESIGN_TOLERANCE)
}

pub fn delta_mixed_with_tolerance(
    ensemble: &Ensemble,
    t: usize,
    tolerance: f64,
) -> Result<DesignReport> {
    let n = ensemble.dim();
    let g = gamma(n, t)?;
    let om = omega(n, t, false)?;

    let members = ensemble.members();
    let cross: f64 = members
        .par_iter()
        .map(|(w, m)| {
            let powers = member_trace_powers(m, t);
            w * om.expectation_from_powers(&powers).expect("powers cover t")
        })
        .sum();
    let cross_term = 2.0 * cross;

    let overlap_term: f64 = members
        .par_iter()
        .enumerate()
        .map(|(i, (wi, mi))| {
            let mut acc = wi * wi * pair_overlap(mi, mi).powi(t as i32);
            for (wj, mj) in &members[i + 1..] {
                acc += 2.0 * wi * wj * pair_overlap(mi, mj).powi(t as i32);
            }
            acc
        })
        .sum();

    let delta = g - cross_term + overlap_term;
    Ok(DesignReport {
        t,
        delta,
        gamma: g,
        cross_term,
        overlap_term,
        is_design: delta <= tolerance,
        tolerance,
    })
}

/// Same residual through the dense moment operator; the independent
/// cross-check of the cycle-sum path (capacity limited).
pub fn delta_mixed_dense(ensemble: &Ensemble, t: usize) -> Result<DesignReport> {
    let n = ensemble.dim();
    let mut om = omega(n, t, true)?;
    let omega_dense = om.materialize()?.clone();
    let g = gamma(n, t)?;

    let side = omega_dense.nrows();
    let mut mean = DMatrix::<Complex64>::zeros(side, side);
    for (w, m) in ensemble.members() {
        let rho = m.density();
        let mut pow = rho.matrix().clone();
        for _ in 1..t {
            pow = pow.kronecker(rho.matrix());
        }
        mean += pow * Complex64::new(*w, 0.0);
    }
    // Tr(omega . mean)
    let mut cross = 0.0;
    for i in 0..side {
        for j in 0..side {
            cross += (omega_dense[(i, j)] * mean[(j, i)]).re;
        }
    }
    let cross_term = 2.0 * cross;
    let members = ensemble.members();
    let overlap_term: f64 = members
        .iter()
        .enumerate()
        .map(|(i, (wi, mi))| {
            let mut acc = wi * wi * pair_overlap(mi, mi).powi(t as i32);
            for (wj, mj) in &members[i + 1..] {
                acc += 2.0 * wi * wj * pair_overlap(mi, mj).powi(t as i32);
            }
            acc
        })
        .sum();
    let delta = g - cross_term + overlap_term;
    Ok(DesignReport {
        t,
        delta,
        gamma: g,
        cross_term,
        overlap_term,
        is_design: delta <= DESIGN_TOLERANCE,
        tolerance: DESIGN_TOLERANCE,
    })
}

/// Result of a frame-potential comparison against its theoretical floor.
#[derive(Debug, Clone)]
pub struct FramePotential {
    pub t: usize,
    pub value: f64,
    pub bound: f64,
    pub delta: f64,
    pub is_design: bool,
}

/// Projective frame potential `sum w_i w_j |<psi_i|psi_j>|^(2t)` against the
/// Welch floor `1 / binom(d+t-1, t)`.
pub fn frame_potential_projective(ensemble: &Ensemble, t: usize) -> Result<FramePotential> {
    let states = ensemble.pure_states()?;
    let d = ensemble.dim();
    let value: f64 = states
        .par_iter()
        .enumerate()
        .map(|(i, (wi, si))| {
            let mut acc = wi * wi;
            for (wj, sj) in &states[i + 1..] {
                let ov = si.inner(sj).expect("dims validated").norm_sqr();
                acc += 2.0 * wi * wj * ov.powi(t as i32);
            }
            acc
        })
        .sum();
    let mut bound = 1.0;
    for k in 1..=t {
        bound *= k as f64 / (d + k - 1) as f64;
    }
    let delta = value - bound;
    Ok(FramePotential {
        t,
        value,
        bound,
        delta,
        is_design: delta <= DESIGN_TOLERANCE,
    })
}

/// Exact Haar moment `int |Tr U|^(2t) dU` over `U(d)`: the number of
/// permutations in `S_t` without a decreasing run longer than `d`.
pub fn haar_unitary_trace_moment(d: usize, t: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::Dimension("dimension must be positive".into()));
    }
    if d >= t {
        let mut f = 1.0;
        for k in 2..=t {
            f *= k as f64;
        }
        return Ok(f);
    }
    let group = symmetric_group(t)?;
    let count = group
        .elements
        .iter()
        .filter(|p| p.longest_decreasing_run() <= d)
        .count();
    Ok(count as f64)
}

/// Unitary frame potential `sum w_i w_j |Tr(U_i^dag U_j)|^(2t)` against the
/// Haar floor. Inputs are checked for unitarity at `1e-10`.
pub fn frame_potential_unitary(
    family: &[(f64, DMatrix<Complex64>)],
    t: usize,
) -> Result<FramePotential> {
    if family.is_empty() {
        return Err(Error::Validation("empty unitary family".into()));
    }
    let d = family[0].1.nrows();
    let weight_sum: f64 = family.iter().map(|(w, _)| *w).sum();
    if (weight_sum - 1.0).abs() > 1e-10 {
        return Err(Error::Validation(format!(
            "unitary weights sum to {weight_sum}, expected 1"
        )));
    }
    for (_, u) in family {
        if u.nrows() != d || u.ncols() != d {
            return Err(Error::Dimension(
                "unitary family mixes matrix dimensions".into(),
            ));
        }
        let gram = u.adjoint() * u;
        for i in 0..d {
            for j in 0..d {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (gram[(i, j)] - Complex64::new(expect, 0.0)).norm() > 1e-10 {
                    return Err(Error::Validation(
                        "family member is not unitary within 1e-10".into(),
                    ));
                }
            }
        }
    }
    let value: f64 = family
        .par_iter()
        .enumerate()
        .map(|(i, (wi, ui))| {
            let mut acc = wi * wi * (d as f64).powi(2 * t as i32);
            for (wj, uj) in &family[i + 1..] {
                let tr: Complex64 = (ui.adjoint() * uj).diagonal().iter().sum();
                acc += 2.0 * wi * wj * tr.norm_sqr().powi(t as i32);
            }
            acc
        })
        .sum();
    let bound = haar_unitary_trace_moment(d, t)?;
    let delta = value - bound;
    Ok(FramePotential {
        t,
        value,
        bound,
        delta,
        is_design: delta <= 1e-9,
    })
}

/// Traces out the last factor; public wrapper kept close to the operation
/// name used by downstream callers.
pub fn partial_trace_omega(op: &MomentOperator) -> Result<MomentOperator> {
    op.partial_trace_last()
}
