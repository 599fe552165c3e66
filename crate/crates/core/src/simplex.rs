//! Designs in the probability simplex and their verification.
//!
//! A simplicial t-design is a weighted point set whose monomial averages up
//! to total degree t match the moments of a reference measure on the
//! simplex: flat (Lebesgue) or the eigenvalue distribution of flat-measure
//! random density matrices (Hilbert-Schmidt), whose density is proportional
//! to the squared Vandermonde determinant of the eigenvalues. Both moment
//! families are evaluated in closed form here; the Monte-Carlo estimates in
//! [`crate::sampling`] cross-check them.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Reference measure on the probability simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexMeasure {
    Lebesgue,
    HilbertSchmidt,
}

/// A weighted point set in the simplex of `n`-component probability vectors,
/// tagged with its measure and intended order.
#[derive(Debug, Clone)]
pub struct SimplexDesign {
    n: usize,
    order: usize,
    measure: SimplexMeasure,
    points: Vec<(f64, Vec<f64>)>,
}

impl SimplexDesign {
    pub fn new(
        n: usize,
        order: usize,
        measure: SimplexMeasure,
        points: Vec<(f64, Vec<f64>)>,
    ) -> Result<SimplexDesign> {
        if n < 2 {
            return Err(Error::Dimension("simplex needs at least 2 components".into()));
        }
        if points.is_empty() {
            return Err(Error::Validation("simplex design has no points".into()));
        }
        let mut weight_sum = 0.0;
        for (w, p) in &points {
            if *w < 0.0 || !w.is_finite() {
                return Err(Error::Validation(format!("invalid weight {w}")));
            }
            weight_sum += w;
            if p.len() != n {
                return Err(Error::Dimension(format!(
                    "point has {} components, expected {n}",
                    p.len()
                )));
            }
            let s: f64 = p.iter().sum();
            if !s.is_finite() || (s - 1.0).abs() > 1e-10 {
                return Err(Error::Validation(format!(
                    "point components sum to {s}, expected 1"
                )));
            }
            if !p.iter().all(|x| *x >= -1e-12) {
                return Err(Error::Validation(
                    "point has a negative or non-finite component".into(),
                ));
            }
        }
        if (weight_sum - 1.0).abs() > 1e-10 {
            return Err(Error::Validation(format!(
                "weights sum to {weight_sum}, expected 1"
            )));
        }
        Ok(SimplexDesign {
            n,
            order,
            measure,
            points,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn measure(&self) -> SimplexMeasure {
        self.measure
    }

    pub fn points(&self) -> &[(f64, Vec<f64>)] {
        &self.points
    }

    /// Folds the design into the descending-sorted chamber: each point is
    /// sorted, coincident images are merged and their weights added. For a
    /// permutation-symmetric design this is weight-preserving; boundary
    /// points (with ties) automatically end up weighted inversely to the
    /// number of chambers they lie on, relative to interior points.
    pub fn fold_to_chamber(&self) -> SimplexDesign {
        let mut folded: Vec<(f64, Vec<f64>)> = Vec::new();
        for (w, p) in &self.points {
            let mut q = p.clone();
            q.sort_by(|a, b| b.partial_cmp(a).unwrap());
            match folded
                .iter_mut()
                .find(|(_, r)| r.iter().zip(&q).all(|(a, b)| (a - b).abs() <= 1e-9))
            {
                Some((wf, _)) => *wf += w,
                None => folded.push((*w, q)),
            }
        }
        SimplexDesign {
            n: self.n,
            order: self.order,
            measure: self.measure,
            points: folded,
        }
    }

    /// True when every point is sorted in descending order.
    pub fn is_chamber_sorted(&self) -> bool {
        self.points
            .iter()
            .all(|(_, p)| p.windows(2).all(|w| w[0] >= w[1] - 1e-12))
    }
}

/// Result of checking a design against every monomial of degree `<= order`.
#[derive(Debug, Clone)]
pub struct SimplicialReport {
    pub order: usize,
    /// Largest absolute deviation among monomials of each total degree `1..=order`.
    pub per_degree: Vec<f64>,
    pub max_deviation: f64,
    pub passes: bool,
    pub tolerance: f64,
}

/// Compares weighted design averages of all monomials of total degree up to
/// the design's order against the analytic moments of its measure.
pub fn verify_simplicial(design: &SimplexDesign, tolerance: f64) -> Result<SimplicialReport> {
    let n = design.n();
    let t = design.order();
    let mut per_degree = vec![0.0; t];
    for exps in monomials_up_to(n, t) {
        let degree: usize = exps.iter().sum();
        if degree == 0 {
            continue;
        }
        let expected = measure_moment(n, design.measure(), &exps)?;
        let actual: f64 = design
            .points()
            .iter()
            .map(|(w, p)| {
                w * p
                    .iter()
                    .zip(&exps)
                    .map(|(x, &k)| x.powi(k as i32))
                    .product::<f64>()
            })
            .sum();
        let dev = (actual - expected).abs();
        if dev > per_degree[degree - 1] {
            per_degree[degree - 1] = dev;
        }
    }
    let max_deviation = per_degree.iter().copied().fold(0.0, f64::max);
    Ok(SimplicialReport {
        order: t,
        per_degree,
        max_deviation,
        passes: max_deviation <= tolerance,
        tolerance,
    })
}

/// All exponent vectors of length `n` with total degree `<= t`.
pub fn monomials_up_to(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    fn rec(i: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        for k in 0..=left {
            current[i] = k;
            rec(i + 1, left - k, current, out);
        }
        current[i] = 0;
    }
    rec(0, t, &mut current, &mut out);
    out
}

/// Exact moment `E[prod_i p_i^(k_i)]` of the reference measure.
pub fn measure_moment(n: usize, measure: SimplexMeasure, exps: &[usize]) -> Result<f64> {
    if exps.len() != n {
        return Err(Error::Dimension(format!(
            "exponent vector length {} does not match n = {n}",
            exps.len()
        )));
    }
    match measure {
        SimplexMeasure::Lebesgue => {
            if n > 8 {
                return Err(Error::Unsupported(
                    "Lebesgue moments supported for n <= 8".into(),
                ));
            }
            Ok(dirichlet_moment(n, exps))
        }
        SimplexMeasure::HilbertSchmidt => {
            if !(2..=3).contains(&n) {
                return Err(Error::Unsupported(format!(
                    "Hilbert-Schmidt simplex moments are provided for n in {{2, 3}}, got {n}"
                )));
            }
            let v2 = vandermonde_squared(n);
            let mut num = 0.0;
            let mut den = 0.0;
            for (mono, coeff) in &v2 {
                let mut shifted: Vec<usize> = mono.clone();
                for (s, &k) in shifted.iter_mut().zip(exps) {
                    *s += k;
                }
                num += *coeff as f64 * dirichlet_moment(n, &shifted);
                den += *coeff as f64 * dirichlet_moment(n, mono);
            }
            Ok(num / den)
        }
    }
}

/// Moment of the flat Dirichlet distribution on the simplex:
/// `E[prod p_i^(k_i)] = prod(k_i!) / prod_{j=n}^{n-1+K} j` with `K = sum k_i`.
fn dirichlet_moment(n: usize, exps: &[usize]) -> f64 {
    let total: usize = exps.iter().sum();
    let mut num = 1.0;
    for &k in exps {
        for j in 2..=k {
            num *= j as f64;
        }
    }
    let mut den = 1.0;
    for j in n..(n + total) {
        den *= j as f64;
    }
    num / den
}

/// `prod_{i<j} (x_i - x_j)^2` expanded into integer monomial coefficients.
fn vandermonde_squared(n: usize) -> HashMap<Vec<usize>, i64> {
    let mut poly: HashMap<Vec<usize>, i64> = HashMap::new();
    poly.insert(vec![0; n], 1);
    for i in 0..n {
        for j in (i + 1)..n {
            // multiply by (x_i - x_j) twice
            for _ in 0..2 {
                let mut next: HashMap<Vec<usize>, i64> = HashMap::new();
                for (mono, coeff) in &poly {
                    let mut mi = mono.clone();
                    mi[i] += 1;
                    *next.entry(mi).or_insert(0) += coeff;
                    let mut mj = mono.clone();
                    mj[j] += 1;
                    *next.entry(mj).or_insert(0) -= coeff;
                }
                poly = next;
            }
        }
    }
    poly.retain(|_, c| *c != 0);
    poly
}

/// `E[x^k]` for the centered interval coordinate `x = p_1 - 1/2` on
/// `[-1/2, 1/2]`; convenience for the two-component case.
pub fn centered_interval_moment(measure: SimplexMeasure, k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let half_pow = 0.5f64.powi(k as i32);
    match measure {
        // uniform density 1 on [-1/2, 1/2]
        SimplexMeasure::Lebesgue => half_pow / (k + 1) as f64,
        // density 12 x^2
        SimplexMeasure::HilbertSchmidt => 12.0 * half_pow * 0.25 / (k + 3) as f64,
    }
}
