use crate::error::{Error, Result};
use crate::graph::{BondId, BondMap};
use crate::C64;

/// Complex amplitudes `q_{±j}(x_i, t)` on all four bonds at one time level.
///
/// Every bond stores `M` values with index 0 at the vertex. The vertex value is
/// kept per bond; the weighted continuity condition is imposed by the solver.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    pub t: f64,
    bonds: BondMap<Vec<C64>>,
}

impl Field {
    pub fn zeros(points: usize) -> Self {
        Field { t: 0.0, bonds: BondMap::from_fn(|_| vec![C64::new(0.0, 0.0); points]) }
    }

    pub fn from_bonds(t: f64, bonds: BondMap<Vec<C64>>) -> Result<Self> {
        let n = bonds.0[0].len();
        if bonds.0.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidParameter("bond arrays differ in length".into()));
        }
        Ok(Field { t, bonds })
    }

    pub fn points(&self) -> usize {
        self.bonds.0[0].len()
    }

    pub fn bond(&self, b: BondId) -> &[C64] {
        &self.bonds[b]
    }

    pub fn bond_mut(&mut self, b: BondId) -> &mut [C64] {
        &mut self.bonds[b]
    }

    pub fn bonds(&self) -> &BondMap<Vec<C64>> {
        &self.bonds
    }

    /// First non-finite entry in storage order, if any.
    pub fn first_non_finite(&self) -> Option<(BondId, usize)> {
        self.bonds.iter().find_map(|(b, v)| v.iter().position(|z| !z.is_finite()).map(|i| (b, i)))
    }

    pub fn is_finite(&self) -> bool {
        self.first_non_finite().is_none()
    }

    /// Largest modulus over all bonds.
    pub fn max_abs(&self) -> f64 {
        self.bonds.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest pointwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Field) -> f64 {
        self.bonds
            .0
            .iter()
            .zip(other.bonds.0.iter())
            .flat_map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }

    /// Restriction to every `stride`-th grid point, used to compare a refined
    /// run against a coarse one.
    pub fn decimate(&self, stride: usize) -> Field {
        Field { t: self.t, bonds: self.bonds.map(|_, v| v.iter().step_by(stride).copied().collect()) }
    }
}
