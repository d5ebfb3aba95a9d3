use crate::field::Field;
use crate::fracops::{quarter_phase, t0_apply, ConvolutionState, GaugeState};
use crate::graph::{BondId, BondMap, StarGraph};
use crate::C64;

/// Imposes the vertex conditions on `field`.
///
/// The one-sided derivative away from the vertex on bond `b` is
/// `d_b = (-3 q_b(0) + 4 q_b(h) - q_b(2h)) / 2h`. With the shared value
/// `C = γ_b q_b(0)` the flux balance `Σ_b d_b / γ_b = 0` fixes
///
/// ```text
/// C = Σ_b (4 q_b(h) - q_b(2h)) / γ_b  /  Σ_b 3 / γ_b²
/// ```
///
/// and every vertex value is set to `C / γ_b`.
pub fn apply_vertex_bc(graph: &StarGraph, field: &mut Field) {
    let gamma = graph.gamma();
    let mut num = C64::new(0.0, 0.0);
    let mut den = 0.0;
    for b in BondId::ALL {
        let q = field.bond(b);
        num += (4.0 * q[1] - q[2]) / gamma[b];
        den += 3.0 / (gamma[b] * gamma[b]);
    }
    debug_assert!(den > 0.0);
    let c = num / den;
    for b in BondId::ALL {
        field.bond_mut(b)[0] = c / gamma[b];
    }
}

/// Residuals of the two vertex conditions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VertexResidual {
    /// `max_b |γ_b q_b(0) - γ_{-1} q_{-1}(0)|`.
    pub continuity: f64,
    /// `|Σ_b (1/γ_b) ∂_out q_b(0)|` with second-order one-sided derivatives.
    pub flux: f64,
}

pub fn vertex_residual(graph: &StarGraph, field: &Field) -> VertexResidual {
    let gamma = graph.gamma();
    let h = graph.spacing();
    let anchor = gamma[BondId::M1] * field.bond(BondId::M1)[0];
    let mut continuity: f64 = 0.0;
    let mut flux = C64::new(0.0, 0.0);
    for b in BondId::ALL {
        let q = field.bond(b);
        continuity = continuity.max((gamma[b] * q[0] - anchor).norm());
        flux += (-3.0 * q[0] + 4.0 * q[1] - q[2]) / (2.0 * h * gamma[b]);
    }
    VertexResidual { continuity, flux: flux.norm() }
}

/// Potential `V_b = √(β_b β_{-b}) q_b q*_{-b}(-x)` at grid index `i`.
pub fn potential(graph: &StarGraph, field: &Field, b: BondId, i: usize) -> C64 {
    graph.coupling(b) * (field.bond(b)[i] * field.bond(b.mirror())[i].conj())
}

/// `∂_x V_b` at the vertex by a one-sided three-point stencil.
pub fn potential_slope_at_vertex(graph: &StarGraph, field: &Field, b: BondId) -> C64 {
    let v = |i| potential(graph, field, b, i);
    b.orientation() * (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * graph.spacing())
}

/// Residuals of the transparency relations at the vertex at one time level.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct TransparencyResidual {
    pub t: f64,
    /// `max_b |ν_b(0) - ν_{-1}(0)|`.
    pub nu: f64,
    /// `max_b |V_b(0) - V_{-1}(0)|`.
    pub potential: f64,
    /// `max_b |√β_b T0 q_b - √β_{-1} T0 q_{-1}|`.
    pub weighted_t0: f64,
    /// `|Σ_{±1} T0 q / √β - Σ_{±2} T0 q / √β|`.
    pub current: f64,
    /// As `weighted_t0`, restricted to the half-derivative part of `T0`.
    pub weighted_principal: f64,
    /// As `current`, restricted to the half-derivative part of `T0`.
    pub current_principal: f64,
    /// `max_b |√β_b T0 q_b|`, a scale for the `T0` residuals.
    pub scale: f64,
}

impl TransparencyResidual {
    pub fn max(&self) -> f64 {
        self.nu.max(self.potential).max(self.weighted_t0).max(self.current)
    }
}

/// Tracks `T0 q_b` at the vertex on all four bonds and accumulates the largest
/// residuals of the transparency relations.
///
/// Call [`observe`](Self::observe) once per accepted step, starting with the
/// initial state.
#[derive(Clone, Debug)]
pub struct VertexTransparencyMonitor {
    dt: f64,
    traces: BondMap<ConvolutionState>,
    gauges: Option<BondMap<GaugeState>>,
    pub latest: TransparencyResidual,
    pub worst: TransparencyResidual,
}

impl VertexTransparencyMonitor {
    pub fn new(dt: f64) -> Self {
        VertexTransparencyMonitor {
            dt,
            traces: BondMap::from_fn(|_| ConvolutionState::new(dt)),
            gauges: None,
            latest: TransparencyResidual::default(),
            worst: TransparencyResidual::default(),
        }
    }

    pub fn observe(&mut self, graph: &StarGraph, field: &Field) -> TransparencyResidual {
        let v = BondMap::from_fn(|b| potential(graph, field, b, 0));
        let gauges = match &mut self.gauges {
            Some(g) => {
                for b in BondId::ALL {
                    g[b].update(v[b], self.dt);
                }
                g
            }
            None => self.gauges.insert(BondMap::from_fn(|b| GaugeState::new(v[b]))),
        };
        let beta = graph.beta();
        let mut t0 = BondMap::from_fn(|_| C64::new(0.0, 0.0));
        let mut principal = t0;
        for b in BondId::ALL {
            let dv = potential_slope_at_vertex(graph, field, b);
            t0[b] = t0_apply(&mut self.traces[b], &gauges[b], dv, field.bond(b)[0]);
            principal[b] = -quarter_phase() * gauges[b].phase() * self.traces[b].current_half_derivative();
        }
        let r = BondId::M1;
        let mut res = TransparencyResidual { t: field.t, ..Default::default() };
        for b in BondId::ALL {
            res.nu = res.nu.max((gauges[b].nu - gauges[r].nu).norm());
            res.potential = res.potential.max((v[b] - v[r]).norm());
            let w = beta[b].sqrt() * t0[b];
            res.weighted_t0 = res.weighted_t0.max((w - beta[r].sqrt() * t0[r]).norm());
            res.scale = res.scale.max(w.norm());
            let p = beta[b].sqrt() * principal[b] - beta[r].sqrt() * principal[r];
            res.weighted_principal = res.weighted_principal.max(p.norm());
        }
        let side = |op: &BondMap<C64>, bs: [BondId; 2]| bs.iter().map(|&b| op[b] / beta[b].sqrt()).sum::<C64>();
        let (plus1, plus2) = ([BondId::M1, BondId::P1], [BondId::M2, BondId::P2]);
        res.current = (side(&t0, plus1) - side(&t0, plus2)).norm();
        res.current_principal = (side(&principal, plus1) - side(&principal, plus2)).norm();

        self.latest = res;
        let w = &mut self.worst;
        w.t = field.t;
        w.nu = w.nu.max(res.nu);
        w.potential = w.potential.max(res.potential);
        w.weighted_t0 = w.weighted_t0.max(res.weighted_t0);
        w.current = w.current.max(res.current);
        w.weighted_principal = w.weighted_principal.max(res.weighted_principal);
        w.current_principal = w.current_principal.max(res.current_principal);
        w.scale = w.scale.max(res.scale);
        res
    }
}
