use crate::fracops::{solve_outward_flux, t0_affine, ConvolutionState, GaugeState, Stage};
use crate::C64;

/// Closure at the far end of every bond.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OuterBc {
    /// Homogeneous Dirichlet value at the far end.
    #[default]
    Dirichlet0,
    /// Second-order transparent condition built on `T0`.
    Tbc,
}

impl OuterBc {
    pub fn label(self) -> &'static str {
        match self {
            OuterBc::Dirichlet0 => "dirichlet0",
            OuterBc::Tbc => "tbc",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "dirichlet0" => Some(OuterBc::Dirichlet0),
            "tbc" => Some(OuterBc::Tbc),
            _ => None,
        }
    }
}

/// History of one transparent end: the gauged trace, its gauge phase and the
/// latest potential slope `∂_x V`.
///
/// Within a step the gauge and `∂_x V` are held at their values from the start
/// of the step; they are refreshed by [`commit`](Self::commit).
#[derive(Clone, Debug)]
pub struct TbcEnd {
    pub trace: ConvolutionState,
    pub gauge: GaugeState,
    pub dvdx: C64,
}

impl TbcEnd {
    pub fn new(dt: f64, q0: C64, v0: C64, dvdx0: C64) -> Self {
        let mut trace = ConvolutionState::new(dt);
        trace.advance(q0);
        TbcEnd { trace, gauge: GaugeState::new(v0), dvdx: dvdx0 }
    }

    /// End value whose outward one-sided derivative equals `T0` of itself.
    ///
    /// `n1`, `n2` are the first two interior neighbours of the end.
    pub fn boundary_value(&self, n1: C64, n2: C64, h: f64, stage: Stage) -> C64 {
        solve_outward_flux(n1, n2, h, t0_affine(&self.trace, &self.gauge, self.dvdx, stage))
    }

    /// Accepts the end value of a completed step.
    pub fn commit(&mut self, q: C64, v: C64, dvdx: C64) {
        self.gauge.update(v, self.trace.dt());
        self.trace.advance(q / self.gauge.phase());
        self.dvdx = dvdx;
    }
}

/// Second-order one-sided derivative at the last point of `v`, taken towards
/// increasing index.
pub(crate) fn end_slope(v2: C64, v1: C64, v0: C64, h: f64) -> C64 {
    (3.0 * v0 - 4.0 * v1 + v2) / (2.0 * h)
}
