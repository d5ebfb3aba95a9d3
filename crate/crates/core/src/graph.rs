//! Topology and discretisation of the four-bond star graph.
//!
//! Bonds come in mirror pairs `b_{-j}`, `b_{+j}` for `j = 1, 2`. Bonds with a
//! negative label carry `x ∈ [-L, 0]`, bonds with a positive label carry
//! `x ∈ [0, L]`. On every bond grid index 0 is the vertex and the index grows
//! away from it, so the point `-x_i` on the partner bond has the same index `i`.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Tolerance for the boolean verdict of the sum-rule checks.
pub const SUM_RULE_TOL: f64 = 1e-12;

/// Default truncated bond length.
pub const DEFAULT_LENGTH: f64 = 15.0;

/// Default number of grid points per bond (vertex included).
pub const DEFAULT_POINTS: usize = 601;

/// Signed bond label `j ∈ {-2, -1, +1, +2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BondId {
    M1,
    P1,
    M2,
    P2,
}

impl BondId {
    /// Storage order, also the column order of every CSV output.
    pub const ALL: [BondId; 4] = [BondId::M1, BondId::P1, BondId::M2, BondId::P2];

    pub fn from_signed(j: i8) -> Result<Self> {
        match j {
            -1 => Ok(BondId::M1),
            1 => Ok(BondId::P1),
            -2 => Ok(BondId::M2),
            2 => Ok(BondId::P2),
            _ => Err(Error::InvalidParameter(format!("no bond with label {j}"))),
        }
    }

    pub fn signed(self) -> i8 {
        match self {
            BondId::M1 => -1,
            BondId::P1 => 1,
            BondId::M2 => -2,
            BondId::P2 => 2,
        }
    }

    /// Mirror partner `-j`.
    pub fn mirror(self) -> Self {
        match self {
            BondId::M1 => BondId::P1,
            BondId::P1 => BondId::M1,
            BondId::M2 => BondId::P2,
            BondId::P2 => BondId::M2,
        }
    }

    /// `|j|`.
    pub fn pair(self) -> u8 {
        self.signed().unsigned_abs()
    }

    /// Sign of the coordinate carried by the bond: +1 for `b_{+j}`, -1 for `b_{-j}`.
    pub fn orientation(self) -> f64 {
        if self.signed() > 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn slot(self) -> usize {
        match self {
            BondId::M1 => 0,
            BondId::P1 => 1,
            BondId::M2 => 2,
            BondId::P2 => 3,
        }
    }

    /// Short label used in file formats: `m1`, `p1`, `m2`, `p2`.
    pub fn label(self) -> &'static str {
        match self {
            BondId::M1 => "m1",
            BondId::P1 => "p1",
            BondId::M2 => "m2",
            BondId::P2 => "p2",
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        BondId::ALL
            .into_iter()
            .find(|b| b.label() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown bond label {s:?}")))
    }
}

impl fmt::Display for BondId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{:+}", self.signed())
    }
}

/// One value per bond, indexed by [`BondId`].
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct BondMap<T>(pub [T; 4]);

impl<T> BondMap<T> {
    /// Build from values given in the order `(b_{-1}, b_{+1}, b_{-2}, b_{+2})`.
    pub fn new(m1: T, p1: T, m2: T, p2: T) -> Self {
        BondMap([m1, p1, m2, p2])
    }

    pub fn from_fn(mut f: impl FnMut(BondId) -> T) -> Self {
        BondMap(BondId::ALL.map(&mut f))
    }

    pub fn iter(&self) -> impl Iterator<Item = (BondId, &T)> {
        BondId::ALL.into_iter().zip(self.0.iter())
    }

    pub fn map<U>(&self, mut f: impl FnMut(BondId, &T) -> U) -> BondMap<U> {
        BondMap::from_fn(|b| f(b, &self[b]))
    }
}

impl<T> Index<BondId> for BondMap<T> {
    type Output = T;
    fn index(&self, b: BondId) -> &T {
        &self.0[b.slot()]
    }
}

impl<T> IndexMut<BondId> for BondMap<T> {
    fn index_mut(&mut self, b: BondId) -> &mut T {
        &mut self.0[b.slot()]
    }
}

/// Index of the point `-x_i` on the partner bond.
///
/// With index 0 at the vertex on every bond this is the identity; only the bond
/// label flips (see [`BondId::mirror`]).
pub fn mirror_index(i: usize, points: usize) -> Result<usize> {
    if i >= points {
        return Err(Error::IndexOutOfRange { index: i, len: points });
    }
    Ok(i)
}

fn check_positive(beta: &BondMap<f64>, what: &str) -> Result<()> {
    for (b, &v) in beta.iter() {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!("{what} on {b} must be positive, got {v}")));
        }
    }
    Ok(())
}

/// Continuity weights from nonlinearity weights: `γ_{±j} = sqrt(β_{±j} / β_{-1})`,
/// normalised so that `γ_{-1} = 1`.
pub fn gammas_from_betas(beta: &BondMap<f64>) -> Result<BondMap<f64>> {
    check_positive(beta, "beta")?;
    let reference = beta[BondId::M1];
    Ok(beta.map(|_, &v| (v / reference).sqrt()))
}

/// Outcome of a sum-rule check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumRuleCheck {
    pub holds: bool,
    pub residual: f64,
}

/// `1/β_1 + 1/β_2 = 1/β_{-1} + 1/β_{-2}`: the graph soliton exists and the
/// system is integrable.
pub fn check_integrability_sum_rule(beta: &BondMap<f64>) -> Result<SumRuleCheck> {
    check_integrability_sum_rule_with_tol(beta, SUM_RULE_TOL)
}

pub fn check_integrability_sum_rule_with_tol(beta: &BondMap<f64>, tol: f64) -> Result<SumRuleCheck> {
    check_positive(beta, "beta")?;
    let inv = beta.map(|_, &v| 1.0 / v);
    let residual = ((inv[BondId::P1] + inv[BondId::P2]) - (inv[BondId::M1] + inv[BondId::M2])).abs();
    Ok(SumRuleCheck { holds: residual <= tol, residual })
}

/// `1/β_{-1} + 1/β_1 = 1/β_{-2} + 1/β_2`: the vertex is transparent for
/// solitons launched symmetrically on `b_{±1}`.
pub fn check_transparency_sum_rule(beta: &BondMap<f64>) -> Result<SumRuleCheck> {
    check_transparency_sum_rule_with_tol(beta, SUM_RULE_TOL)
}

pub fn check_transparency_sum_rule_with_tol(beta: &BondMap<f64>, tol: f64) -> Result<SumRuleCheck> {
    check_positive(beta, "beta")?;
    let inv = beta.map(|_, &v| 1.0 / v);
    let residual = ((inv[BondId::M1] + inv[BondId::P1]) - (inv[BondId::M2] + inv[BondId::P2])).abs();
    Ok(SumRuleCheck { holds: residual <= tol, residual })
}

/// Discretised star graph with per-bond weights.
#[derive(Clone, Debug, PartialEq)]
pub struct StarGraph {
    length: f64,
    points: usize,
    beta: BondMap<f64>,
    gamma: BondMap<f64>,
}

impl StarGraph {
    /// Graph whose continuity weights follow from `beta` via [`gammas_from_betas`].
    pub fn new(length: f64, points: usize, beta: BondMap<f64>) -> Result<Self> {
        let gamma = gammas_from_betas(&beta)?;
        Self::with_gamma(length, points, beta, gamma)
    }

    pub fn with_gamma(length: f64, points: usize, beta: BondMap<f64>, gamma: BondMap<f64>) -> Result<Self> {
        check_positive(&beta, "beta")?;
        check_positive(&gamma, "gamma")?;
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidParameter(format!("bond length must be positive, got {length}")));
        }
        if points < 3 {
            return Err(Error::InvalidParameter(format!("need at least 3 points per bond, got {points}")));
        }
        Ok(StarGraph { length, points, beta, gamma })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Grid spacing `h = L / (M - 1)`.
    pub fn spacing(&self) -> f64 {
        self.length / (self.points - 1) as f64
    }

    pub fn beta(&self) -> &BondMap<f64> {
        &self.beta
    }

    pub fn gamma(&self) -> &BondMap<f64> {
        &self.gamma
    }

    /// Signed coordinate of grid point `i` on bond `b`.
    pub fn coordinate(&self, b: BondId, i: usize) -> f64 {
        b.orientation() * i as f64 * self.spacing()
    }

    /// Coefficient `sqrt(β_j β_{-j})` of the nonlocal term on the pair of `b`.
    pub fn coupling(&self, b: BondId) -> f64 {
        (self.beta[b] * self.beta[b.mirror()]).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn betas(m1: f64, p1: f64, m2: f64, p2: f64) -> BondMap<f64> {
        BondMap::new(m1, p1, m2, p2)
    }

    #[test]
    fn mirror_index_examples() {
        assert_eq!(mirror_index(0, 101).unwrap(), 0);
        assert_eq!(mirror_index(100, 101).unwrap(), 100);
        assert_eq!(mirror_index(37, 101).unwrap(), 37);
        assert_eq!(mirror_index(101, 101), Err(Error::IndexOutOfRange { index: 101, len: 101 }));
    }

    #[test]
    fn bond_labels_round_trip() {
        for b in BondId::ALL {
            assert_eq!(BondId::from_signed(b.signed()).unwrap(), b);
            assert_eq!(BondId::from_label(b.label()).unwrap(), b);
            assert_eq!(b.mirror().mirror(), b);
            assert_eq!(b.mirror().signed(), -b.signed());
        }
        assert!(BondId::from_signed(0).is_err());
        assert!(BondId::from_signed(3).is_err());
    }

    #[test]
    fn gammas_for_fig2_weights() {
        let g = gammas_from_betas(&betas(6.0, 6.0, 2.0, 2.0)).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert_eq!(g[BondId::M1], 1.0);
        assert_eq!(g[BondId::P1], 1.0);
        assert!((g[BondId::M2] - s).abs() < 1e-15);
        assert!((g[BondId::P2] - s).abs() < 1e-15);
    }

    #[test]
    fn gammas_equal_betas_are_natural() {
        let g = gammas_from_betas(&betas(3.5, 3.5, 3.5, 3.5)).unwrap();
        assert!(g.0.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn gammas_for_fig4_weights() {
        let g = gammas_from_betas(&betas(2.0, 6.0, 2.0, 6.0)).unwrap();
        let r3 = 3f64.sqrt();
        assert_eq!(g[BondId::M1], 1.0);
        assert!((g[BondId::P1] - r3).abs() < 1e-15);
        assert_eq!(g[BondId::M2], 1.0);
        assert!((g[BondId::P2] - r3).abs() < 1e-15);
    }

    #[test]
    fn non_positive_beta_rejected() {
        assert!(gammas_from_betas(&betas(1.0, 0.0, 1.0, 1.0)).is_err());
        assert!(check_integrability_sum_rule(&betas(1.0, 1.0, -1.0, 1.0)).is_err());
        assert!(check_transparency_sum_rule(&betas(f64::NAN, 1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn integrability_rule_examples() {
        let c = check_integrability_sum_rule(&betas(6.0, 6.0, 2.0, 2.0)).unwrap();
        assert!(c.holds);
        assert_eq!(c.residual, 0.0);

        let c = check_integrability_sum_rule(&betas(2.0, 2.0, 0.5, 1.0)).unwrap();
        assert!(!c.holds);
        assert!((c.residual - 1.0).abs() < 1e-15);

        let c = check_integrability_sum_rule(&betas(0.7, 0.7, 0.7, 0.7)).unwrap();
        assert!(c.holds);
        assert_eq!(c.residual, 0.0);
    }

    #[test]
    fn transparency_rule_examples() {
        let c = check_transparency_sum_rule(&betas(2.0, 6.0, 2.0, 6.0)).unwrap();
        assert!(c.holds);
        assert_eq!(c.residual, 0.0);

        let c = check_transparency_sum_rule(&betas(6.0, 6.0, 2.0, 2.0)).unwrap();
        assert!(!c.holds);
        assert!((c.residual - (1.0 / 3.0 - 1.0f64).abs()).abs() < 1e-15);

        let c = check_transparency_sum_rule(&betas(4.0, 4.0, 4.0, 4.0)).unwrap();
        assert!(c.holds);
    }

    #[test]
    fn graph_geometry() {
        let g = StarGraph::new(DEFAULT_LENGTH, DEFAULT_POINTS, betas(6.0, 6.0, 2.0, 2.0)).unwrap();
        assert!((g.spacing() - 0.025).abs() < 1e-15);
        assert_eq!(g.coordinate(BondId::M1, 0), 0.0);
        assert!((g.coordinate(BondId::M2, 600) + 15.0).abs() < 1e-12);
        assert!((g.coordinate(BondId::P2, 600) - 15.0).abs() < 1e-12);
        assert!((g.coupling(BondId::P1) - 6.0).abs() < 1e-15);
        assert!(StarGraph::new(1.0, 2, betas(1.0, 1.0, 1.0, 1.0)).is_err());
        assert!(StarGraph::new(0.0, 10, betas(1.0, 1.0, 1.0, 1.0)).is_err());
    }
}
