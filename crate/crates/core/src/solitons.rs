//! Closed-form NNLS solitons and a finite-difference residual oracle.
//!
//! The traveling soliton is a solution of the pair
//!
//! ```text
//!  i q_t + q_xx + 2 q² r = 0,     -i r_t + r_xx + 2 r² q = 0,
//! ```
//!
//! with `r(x, t) = q_m^*(-x, t)`, where `q_m` is the soliton built from
//! [`TravelingSolitonParams::mirror_partner`]. On the star graph the two
//! members of the pair live on mirror bonds `b_{∓j}`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{BondId, StarGraph};
use crate::C64;

/// Largest admissible `|q_{±1}(0, 0)|` of the launched solitons.
pub const TAIL_TOL: f64 = 5e-3;

/// Default distance of the launched envelope maxima from the vertex.
pub const DEFAULT_OFFSET: f64 = 5.0;

const SINGULAR_EPS: f64 = 1e-12;

/// Real constants of the standing (non-moving, breathing) soliton.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StandingSolitonParams {
    pub eta1: f64,
    pub etabar1: f64,
    pub theta1: f64,
    pub thetabar1: f64,
}

impl StandingSolitonParams {
    pub fn new(eta1: f64, etabar1: f64, theta1: f64, thetabar1: f64) -> Result<Self> {
        if eta1 + etabar1 == 0.0 {
            return Err(Error::InvalidParameter("eta1 + etabar1 must be nonzero".into()));
        }
        if ![eta1, etabar1, theta1, thetabar1].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("standing soliton constants must be finite".into()));
        }
        Ok(StandingSolitonParams { eta1, etabar1, theta1, thetabar1 })
    }
}

/// Standing soliton of `i q_t + q_xx + 2 q² q^*(-x) = 0`:
///
/// ```text
///            -2(η + η̄) e^{iθ̄} e^{4iη̄²t} e^{-2η̄x}
/// q(x,t) = ------------------------------------------------
///           1 + e^{i(θ+θ̄)} e^{-4i(η²-η̄²)t} e^{-2(η+η̄)x}
/// ```
pub fn standing_soliton(p: &StandingSolitonParams, x: f64, t: f64) -> Result<C64> {
    let (e, eb) = (p.eta1, p.etabar1);
    let num = -2.0 * (e + eb) * C64::from_polar(1.0, p.thetabar1 + 4.0 * eb * eb * t) * (-2.0 * eb * x).exp();
    let osc = C64::from_polar((-2.0 * (e + eb) * x).exp(), p.theta1 + p.thetabar1 - 4.0 * (e * e - eb * eb) * t);
    let den = 1.0 + osc;
    if den.norm() <= SINGULAR_EPS * (1.0 + osc.norm()) {
        return Err(Error::SingularDenominator { x, t });
    }
    Ok(num / den)
}

/// Complex constants `α₁, β₁, k₁, k̄₁` of the traveling soliton.
///
/// `beta1` is the soliton constant, unrelated to the bond weights of the graph.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TravelingSolitonParams {
    pub alpha1: C64,
    pub beta1: C64,
    pub k1: C64,
    pub kbar1: C64,
}

/// Real and imaginary parts of the phases entering the traveling soliton.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TravelingPhases {
    pub xi_r: f64,
    pub xi_i: f64,
    pub xibar_r: f64,
    pub xibar_i: f64,
    pub chi1: f64,
    pub chi2: f64,
    pub delta: C64,
}

impl TravelingSolitonParams {
    pub fn new(alpha1: C64, beta1: C64, k1: C64, kbar1: C64) -> Result<Self> {
        if !(alpha1.is_finite() && beta1.is_finite() && k1.is_finite() && kbar1.is_finite()) {
            return Err(Error::InvalidParameter("soliton constants must be finite".into()));
        }
        if k1 + kbar1 == C64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter("k1 + kbar1 must be nonzero".into()));
        }
        if alpha1 * beta1 == C64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter("alpha1 * beta1 must be nonzero".into()));
        }
        Ok(TravelingSolitonParams { alpha1, beta1, k1, kbar1 })
    }

    /// Launch constants of the numerical experiment: `α₁ = 1.13 + 1.13i`,
    /// `β₁ = 1.13 - 1.13i`, `k₁ = 2.5 + 1.5i`, `k̄₁ = -2.5 + 1.5i`.
    ///
    /// With these values the soliton travels in the `+x` direction at speed 5.
    pub fn launch() -> Self {
        TravelingSolitonParams {
            alpha1: C64::new(1.13, 1.13),
            beta1: C64::new(1.13, -1.13),
            k1: C64::new(2.5, 1.5),
            kbar1: C64::new(-2.5, 1.5),
        }
    }

    /// Parameters of the soliton `q_m` with `q_m^*(-x, t) = r(x, t)`, the
    /// partner field that closes the nonlocal term.
    ///
    /// For `β₁ = α₁^*` and `k̄₁ = -k₁^*` the partner is the reflection
    /// `q_m(x, t) = q(-x, t)`.
    pub fn mirror_partner(&self) -> Self {
        TravelingSolitonParams {
            alpha1: self.beta1.conj(),
            beta1: self.alpha1.conj(),
            k1: self.kbar1.conj(),
            kbar1: self.k1.conj(),
        }
    }

    /// `Δ = log(-α₁β₁ / (k₁ + k̄₁)²)`, principal branch.
    pub fn delta(&self) -> C64 {
        let s = self.k1 + self.kbar1;
        (-self.alpha1 * self.beta1 / (s * s)).ln()
    }

    pub fn phases(&self, x: f64, t: f64) -> TravelingPhases {
        let (kr, ki) = (self.k1.re, self.k1.im);
        let (kbr, kbi) = (self.kbar1.re, self.kbar1.im);
        let delta = self.delta();
        // ξ = i k x - i k² t,  ξ̄ = i k̄ x + i k̄² t
        let xi_r = -ki * (x - 2.0 * kr * t);
        let xi_i = kr * x - (kr * kr - ki * ki) * t;
        let xibar_r = -kbi * (x + 2.0 * kbr * t);
        let xibar_i = kbr * x + (kbr * kbr - kbi * kbi) * t;
        TravelingPhases {
            xi_r,
            xi_i,
            xibar_r,
            xibar_i,
            chi1: (xi_r + xibar_r + delta.re) / 2.0,
            chi2: (xi_i + xibar_i + delta.im) / 2.0,
            delta,
        }
    }

    /// Envelope velocity, from the zero set of `χ₁`.
    pub fn velocity(&self) -> f64 {
        let (kr, ki) = (self.k1.re, self.k1.im);
        let (kbr, kbi) = (self.kbar1.re, self.kbar1.im);
        2.0 * (kr * ki - kbr * kbi) / (ki + kbi)
    }

    /// Position where `χ₁ = 0` (the envelope maximum when `χ₂` is constant).
    pub fn center(&self, t: f64) -> f64 {
        let (ki, kbi) = (self.k1.im, self.kbar1.im);
        (self.delta().re) / (ki + kbi) + self.velocity() * t
    }
}

/// Traveling soliton
///
/// ```text
///           α₁ e^{-Δ/2} e^{((ξ_R - ξ̄_R) + i(ξ_I - ξ̄_I))/2}
/// q(x,t) = -----------------------------------------------
///            2 [cosh χ₁ cos χ₂ + i sinh χ₁ sin χ₂]
/// ```
///
/// which is `α₁ e^{ξ} / (1 + e^{ξ + ξ̄ + Δ})` with the exponential of half the
/// denominator phase divided out.
pub fn traveling_soliton(p: &TravelingSolitonParams, x: f64, t: f64) -> Result<C64> {
    let ph = p.phases(x, t);
    let den = 2.0 * C64::new(ph.chi1.cosh() * ph.chi2.cos(), ph.chi1.sinh() * ph.chi2.sin());
    if den.norm() <= SINGULAR_EPS {
        return Err(Error::SingularDenominator { x, t });
    }
    let num =
        p.alpha1 * (-ph.delta / 2.0).exp() * C64::new((ph.xi_r - ph.xibar_r) / 2.0, (ph.xi_i - ph.xibar_i) / 2.0).exp();
    let q = num / den;
    if !q.is_finite() {
        return Err(Error::SingularDenominator { x, t });
    }
    Ok(q)
}

/// Bond-scaled soliton `sqrt(2/β_b) q(x, t)`.
pub fn graph_soliton(p: &TravelingSolitonParams, beta_b: f64, x: f64, t: f64) -> Result<C64> {
    if !(beta_b > 0.0 && beta_b.is_finite()) {
        return Err(Error::InvalidParameter(format!("bond weight must be positive, got {beta_b}")));
    }
    Ok((2.0 / beta_b).sqrt() * traveling_soliton(p, x, t)?)
}

/// Centred finite-difference residual
///
/// ```text
/// i (q(x,t+dt) - q(x,t-dt)) / 2dt + (q(x+h,t) - 2q(x,t) + q(x-h,t)) / h²
///     + coeff q(x,t)² conj(q_m(-x,t))
/// ```
///
/// which is `O(h² + dt²)` for exact solutions.
pub fn nnls_residual<F, G>(q: F, qm: G, coeff: f64, x: f64, t: f64, h: f64, dt: f64) -> C64
where
    F: Fn(f64, f64) -> C64,
    G: Fn(f64, f64) -> C64,
{
    let c = q(x, t);
    let dqdt = (q(x, t + dt) - q(x, t - dt)) / (2.0 * dt);
    let lap = (q(x + h, t) - 2.0 * c + q(x - h, t)) / (h * h);
    C64::i() * dqdt + lap + coeff * c * c * qm(-x, t).conj()
}

/// Launch state of the experiments: a soliton on `b_{-1}` with its envelope
/// maximum at `x = -offset` moving towards the vertex, its mirror partner on
/// `b_{+1}` at `x = +offset`, and zero on `b_{±2}`.
///
/// `p` must describe a soliton moving in the `+x` direction.
pub fn initial_condition(graph: &StarGraph, p: &TravelingSolitonParams, offset: f64) -> Result<Field> {
    let p = TravelingSolitonParams::new(p.alpha1, p.beta1, p.k1, p.kbar1)?;
    if !(p.velocity() > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "launch soliton must move towards +x, velocity is {}",
            p.velocity()
        )));
    }
    let offset = offset.abs();
    let shift = -offset - p.center(0.0);
    let partner = p.mirror_partner();
    let beta = graph.beta();
    let mut field = Field::zeros(graph.points());
    for i in 0..graph.points() {
        let x = graph.coordinate(BondId::M1, i);
        field.bond_mut(BondId::M1)[i] = graph_soliton(&p, beta[BondId::M1], x - shift, 0.0)?;
        // partner evaluated at +x so that q_{+1}(x) pairs with q_{-1}(-x)
        let y = graph.coordinate(BondId::P1, i);
        field.bond_mut(BondId::P1)[i] = graph_soliton(&partner, beta[BondId::P1], y + shift, 0.0)?;
    }
    let tail = field.bond(BondId::M1)[0].norm().max(field.bond(BondId::P1)[0].norm());
    if tail > TAIL_TOL {
        return Err(Error::TailTooLarge { tail, tol: TAIL_TOL });
    }
    Ok(field)
}
