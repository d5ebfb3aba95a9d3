//! Conserved quantities and scattering diagnostics.
//!
//! All spatial integrals use the trapezoid rule on the simulation grid. The
//! mirror factor `q*_{-b}(-x)` on bond `b` is the conjugate of the partner bond
//! at the same grid index.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{BondId, BondMap, StarGraph};
use crate::C64;

/// Denominators of the reflection coefficient below this are treated as zero.
pub const EPS_R: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ObservableRecord {
    pub t: f64,
    pub norms: BondMap<C64>,
    pub total_norm: C64,
    pub energy: C64,
    pub reflection: Option<f64>,
}

fn trapezoid(h: f64, values: impl ExactSizeIterator<Item = C64>) -> C64 {
    let n = values.len();
    values.enumerate().map(|(i, v)| if i == 0 || i + 1 == n { 0.5 * v } else { v }).sum::<C64>() * h
}

/// `N_b = ∫_b q_b(x) q*_{-b}(-x) dx`.
pub fn bond_norm(graph: &StarGraph, field: &Field, b: BondId) -> C64 {
    let q = field.bond(b);
    let r = field.bond(b.mirror());
    trapezoid(graph.spacing(), q.iter().zip(r).map(|(a, c)| a * c.conj()))
}

/// Derivative along increasing grid index: central inside, one-sided
/// second order at both ends.
fn index_derivative(q: &[C64], h: f64) -> Vec<C64> {
    let m = q.len();
    let mut d = vec![C64::new(0.0, 0.0); m];
    d[0] = (-3.0 * q[0] + 4.0 * q[1] - q[2]) / (2.0 * h);
    d[m - 1] = (3.0 * q[m - 1] - 4.0 * q[m - 2] + q[m - 3]) / (2.0 * h);
    for i in 1..m - 1 {
        d[i] = (q[i + 1] - q[i - 1]) / (2.0 * h);
    }
    d
}

/// `E_b = ∫_b ( ∂_x q_b(x) [∂_x q*_{-b}](-x) + (√(β_b β_{-b})/2) q_b² q*_{-b}²(-x) ) dx`.
///
/// The mirror derivative is taken on the partner bond and then evaluated at the
/// mirror point. Because the two bonds are oriented oppositely, in grid terms
/// this is `-d_i q_b · conj(d_i q_{-b})`.
pub fn bond_energy(graph: &StarGraph, field: &Field, b: BondId) -> C64 {
    let h = graph.spacing();
    let q = field.bond(b);
    let r = field.bond(b.mirror());
    let dq = index_derivative(q, h);
    let dr = index_derivative(r, h);
    let c = 0.5 * graph.coupling(b);
    trapezoid(h, (0..q.len()).map(|i| -dq[i] * dr[i].conj() + c * q[i] * q[i] * (r[i] * r[i]).conj()))
}

/// `(|N_{-1}| + |N_1|) / Σ_b |N_b|`, or `None` when the denominator vanishes.
pub fn reflection_coefficient(norms: &BondMap<C64>) -> Option<f64> {
    let total: f64 = norms.0.iter().map(|n| n.norm()).sum();
    if total <= EPS_R {
        return None;
    }
    Some((norms[BondId::M1].norm() + norms[BondId::P1].norm()) / total)
}

pub fn record(graph: &StarGraph, field: &Field) -> ObservableRecord {
    let norms = BondMap::from_fn(|b| bond_norm(graph, field, b));
    let energy = BondId::ALL.iter().map(|&b| bond_energy(graph, field, b)).sum();
    ObservableRecord {
        t: field.t,
        total_norm: norms.0.iter().sum(),
        energy,
        reflection: reflection_coefficient(&norms),
        norms,
    }
}

fn time_trapezoid(records: &[ObservableRecord], f: impl Fn(&ObservableRecord) -> C64) -> C64 {
    records.windows(2).map(|w| 0.5 * (w[1].t - w[0].t) * (f(&w[0]) + f(&w[1]))).sum()
}

fn span(records: &[ObservableRecord]) -> Result<f64> {
    if records.len() < 2 {
        return Err(Error::InsufficientRecords(format!("need at least 2 records, got {}", records.len())));
    }
    let t = records[records.len() - 1].t - records[0].t;
    if !(t > 0.0) {
        return Err(Error::InsufficientRecords("records span no time".into()));
    }
    Ok(t)
}

/// `N̄ = (1/T) ∫ N dt` over the span of `records`.
pub fn mean_norm(records: &[ObservableRecord]) -> Result<C64> {
    let t = span(records)?;
    // integrate the deviation from the first value, exact for constant N
    let n0 = records[0].total_norm;
    Ok(n0 + time_trapezoid(records, |r| r.total_norm - n0) / t)
}

/// `N_err = ∫ |N̄ - N| dt` over the span of `records`.
pub fn norm_error(records: &[ObservableRecord]) -> Result<f64> {
    let mean = mean_norm(records)?;
    Ok(time_trapezoid(records, |r| C64::new((mean - r.total_norm).norm(), 0.0)).re)
}

/// `∫ q(x) q*(-x) dx` for samples on a symmetric line grid.
pub fn line_norm(q: &[C64], h: f64) -> C64 {
    let m = q.len();
    trapezoid(h, (0..m).map(|i| q[i] * q[m - 1 - i].conj()))
}

/// `∫ ( q_x(x) [∂_x q*](-x) + (coeff/2) q² q*²(-x) ) dx` on a symmetric line grid.
pub fn line_energy(q: &[C64], h: f64, coeff: f64) -> C64 {
    let m = q.len();
    let d = index_derivative(q, h);
    trapezoid(
        h,
        (0..m).map(|i| {
            let j = m - 1 - i;
            d[i] * d[j].conj() + 0.5 * coeff * q[i] * q[i] * (q[j] * q[j]).conj()
        }),
    )
}
