//! Cataloged t-designs on the interval `[-1/2, 1/2]`, i.e. the two-point
//! probability simplex, for the flat and Hilbert-Schmidt measures. The
//! catalog is a fixed list of exact node sets; generic quadrature solving
//! is out of scope.

use crate::error::{Error, Result};
use crate::simplex::{SimplexDesign, SimplexMeasure};

/// Exact node abscissas `x` (points are `(1/2 + x, 1/2 - x)`), uniformly
/// weighted, for a cataloged `(order, count, measure)` triple.
fn catalog(order: usize, count: usize, measure: SimplexMeasure) -> Option<Vec<f64>> {
    match (measure, order, count) {
        (_, 1, 1) => Some(vec![0.0]),
        (SimplexMeasure::Lebesgue, 3, 2) => {
            let x = 0.5 / 3f64.sqrt();
            Some(vec![-x, x])
        }
        (SimplexMeasure::Lebesgue, 3, 3) => {
            let x = 0.5 / 2f64.sqrt();
            Some(vec![-x, 0.0, x])
        }
        (SimplexMeasure::Lebesgue, 5, 4) => {
            let a = (75.0 + 30.0 * 5f64.sqrt()).sqrt() / 30.0;
            let b = (75.0 - 30.0 * 5f64.sqrt()).sqrt() / 30.0;
            Some(vec![-a, -b, b, a])
        }
        (SimplexMeasure::Lebesgue, 5, 5) => {
            let a = (15.0 + 3.0 * 11f64.sqrt()).sqrt() / 12.0;
            let b = (15.0 - 3.0 * 11f64.sqrt()).sqrt() / 12.0;
            Some(vec![-a, -b, 0.0, b, a])
        }
        (SimplexMeasure::HilbertSchmidt, 3, 2) => {
            let x = (3f64 / 20.0).sqrt();
            Some(vec![-x, x])
        }
        (SimplexMeasure::HilbertSchmidt, 3, 3) => {
            let x = 1.5 / 10f64.sqrt();
            Some(vec![-x, 0.0, x])
        }
        (SimplexMeasure::HilbertSchmidt, 5, 4) => {
            let a = (735.0 + 70.0 * 21f64.sqrt()).sqrt() / 70.0;
            let b = (735.0 - 70.0 * 21f64.sqrt()).sqrt() / 70.0;
            Some(vec![-a, -b, b, a])
        }
        _ => None,
    }
}

/// All `(order, count, measure)` triples the catalog provides.
pub fn catalog_entries() -> Vec<(usize, usize, SimplexMeasure)> {
    vec![
        (1, 1, SimplexMeasure::Lebesgue),
        (3, 2, SimplexMeasure::Lebesgue),
        (3, 3, SimplexMeasure::Lebesgue),
        (5, 4, SimplexMeasure::Lebesgue),
        (5, 5, SimplexMeasure::Lebesgue),
        (1, 1, SimplexMeasure::HilbertSchmidt),
        (3, 2, SimplexMeasure::HilbertSchmidt),
        (3, 3, SimplexMeasure::HilbertSchmidt),
        (5, 4, SimplexMeasure::HilbertSchmidt),
    ]
}

/// A cataloged interval design as a two-component simplex design.
pub fn interval_design(
    order: usize,
    count: usize,
    measure: SimplexMeasure,
) -> Result<SimplexDesign> {
    let nodes = catalog(order, count, measure).ok_or_else(|| {
        Error::Unsupported(format!(
            "no cataloged interval design with t = {order}, M = {count} for {measure:?}"
        ))
    })?;
    let w = 1.0 / nodes.len() as f64;
    let points = nodes
        .into_iter()
        .map(|x| (w, vec![0.5 + x, 0.5 - x]))
        .collect();
    SimplexDesign::new(2, order, measure, points)
}
