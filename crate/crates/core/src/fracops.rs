//! Potential-approach boundary operators.
//!
//! The half-order derivative
//!
//! ```text
//! ∂_t^{1/2} f(t) = 1/√π d/dt ∫_0^t f(s) / √(t - s) ds
//! ```
//!
//! is discretised by convolution quadrature generated by `(1 - z)^{1/2} / √dt`,
//! the running integral `I_t f = ∫_0^t f` by the trapezoid rule. On top of these
//! sit the gauge phase `ν = ∫ V dt`, the `T0` operator and the second-order
//! transparent fluxes of a line segment.

use std::f64::consts::FRAC_PI_4;

use crate::C64;

/// `e^{-iπ/4}`, the branch of `√(-i)` in front of the half derivative.
pub fn quarter_phase() -> C64 {
    C64::from_polar(1.0, -FRAC_PI_4)
}

/// First `n` coefficients of `(1 - z)^{1/2}`: `w_0 = 1`, `w_k = w_{k-1} (k - 3/2) / k`.
pub fn cq_weights(n: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(n);
    extend_weights(&mut w, n);
    w
}

fn extend_weights(w: &mut Vec<f64>, n: usize) {
    if w.is_empty() && n > 0 {
        w.push(1.0);
    }
    while w.len() < n {
        let k = w.len() as f64;
        let prev = w[w.len() - 1];
        w.push(prev * (k - 1.5) / k);
    }
}

/// Where a pending sample sits inside the current step of an RK4 scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// `t_n + dt/2`: the pending sample is the midpoint value.
    Half,
    /// `t_n + dt`: the pending sample is the next history entry.
    Full,
}

/// `slope * g + offset`, an operator value as a function of a pending sample `g`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Affine {
    pub slope: C64,
    pub offset: C64,
}

impl Affine {
    pub fn eval(&self, g: C64) -> C64 {
        self.slope * g + self.offset
    }
}

/// History of one boundary trace together with its half derivative and running
/// integral.
///
/// Samples are committed with [`advance`](Self::advance); the `*_with` methods
/// evaluate the operators for a tentative next sample without committing it.
#[derive(Clone, Debug)]
pub struct ConvolutionState {
    dt: f64,
    samples: Vec<C64>,
    weights: Vec<f64>,
    integral: C64,
    derivative: C64,
    // Σ_{k≥1} w_k f_{n+1-k}, the history part of the next half derivative
    tail: C64,
}

impl ConvolutionState {
    pub fn new(dt: f64) -> Self {
        assert!(dt > 0.0, "time step must be positive");
        ConvolutionState {
            dt,
            samples: Vec::new(),
            weights: cq_weights(1),
            integral: C64::new(0.0, 0.0),
            derivative: C64::new(0.0, 0.0),
            tail: C64::new(0.0, 0.0),
        }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Number of committed samples.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Last committed sample, zero before the first one.
    pub fn last(&self) -> C64 {
        self.samples.last().copied().unwrap_or_default()
    }

    /// Half derivative at the last committed sample.
    pub fn current_half_derivative(&self) -> C64 {
        self.derivative
    }

    /// Running integral up to the last committed sample.
    pub fn current_integral(&self) -> C64 {
        self.integral
    }

    /// Commits `f` as the next sample.
    pub fn advance(&mut self, f: C64) {
        if let Some(prev) = self.samples.last() {
            self.integral += 0.5 * self.dt * (prev + f);
        }
        self.derivative = (f + self.tail) / self.dt.sqrt();
        self.samples.push(f);
        let n = self.samples.len();
        extend_weights(&mut self.weights, n + 1);
        self.tail = self.weights[1..=n].iter().zip(self.samples.iter().rev()).map(|(w, s)| *w * s).sum();
    }

    /// Commits `f_n` and returns `(1/√dt) Σ_{k=0}^{n} w_k f_{n-k}`.
    pub fn half_derivative(&mut self, f: C64) -> C64 {
        self.advance(f);
        self.derivative
    }

    /// Commits `f_n` and returns the trapezoid integral over the history.
    pub fn time_integral(&mut self, f: C64) -> C64 {
        self.advance(f);
        self.integral
    }

    /// Half derivative at the pending time for pending sample `g`.
    pub fn half_derivative_with(&self, stage: Stage, g: C64) -> C64 {
        self.half_derivative_affine(stage).eval(g)
    }

    /// Running integral at the pending time for pending sample `g`.
    pub fn time_integral_with(&self, stage: Stage, g: C64) -> C64 {
        self.time_integral_affine(stage).eval(g)
    }

    /// Half derivative as an affine function of the pending sample.
    ///
    /// At [`Stage::Half`] the pending value is read as `(f_n + f_{n+1}) / 2` and
    /// the result is the mean of the derivatives at `t_n` and `t_{n+1}`.
    pub fn half_derivative_affine(&self, stage: Stage) -> Affine {
        let s = 1.0 / self.dt.sqrt();
        match stage {
            Stage::Full => Affine { slope: C64::new(s, 0.0), offset: self.tail * s },
            Stage::Half => {
                Affine { slope: C64::new(s, 0.0), offset: 0.5 * (self.derivative + (self.tail - self.last()) * s) }
            }
        }
    }

    /// Running integral as an affine function of the pending sample.
    pub fn time_integral_affine(&self, stage: Stage) -> Affine {
        let f = self.last();
        let h = match stage {
            Stage::Full => 0.5 * self.dt,
            Stage::Half => 0.25 * self.dt,
        };
        if self.is_empty() {
            return Affine { slope: C64::new(0.0, 0.0), offset: C64::new(0.0, 0.0) };
        }
        Affine { slope: C64::new(h, 0.0), offset: self.integral + h * f }
    }
}

/// One-shot half derivative of the samples `f_0, …, f_n` at `t_n`.
pub fn half_derivative(samples: &[C64], dt: f64) -> C64 {
    let w = cq_weights(samples.len());
    w.iter().zip(samples.iter().rev()).map(|(w, f)| *w * f).sum::<C64>() / dt.sqrt()
}

/// One-shot trapezoid integral of the samples `f_0, …, f_n` over `[0, t_n]`.
pub fn time_integral(samples: &[C64], dt: f64) -> C64 {
    samples.windows(2).map(|p| 0.5 * dt * (p[0] + p[1])).sum()
}

/// Accumulated gauge phase `ν(t) = ∫_0^t V dτ` at one boundary point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeState {
    pub nu: C64,
    pub v_last: C64,
}

impl GaugeState {
    pub fn new(v0: C64) -> Self {
        GaugeState { nu: C64::new(0.0, 0.0), v_last: v0 }
    }

    /// Trapezoid update `ν ← ν + dt (V_{n-1} + V_n) / 2`.
    pub fn update(&mut self, v: C64, dt: f64) {
        self.nu += 0.5 * dt * (self.v_last + v);
        self.v_last = v;
    }

    pub fn phase(&self) -> C64 {
        (C64::i() * self.nu).exp()
    }
}

/// Functional form of [`GaugeState::update`].
pub fn gauge_update(g: GaugeState, v: C64, dt: f64) -> GaugeState {
    let mut g = g;
    g.update(v, dt);
    g
}

/// `T0 q = -e^{-iπ/4} e^{iν} ∂_t^{1/2}(e^{-iν} q) - (i/4) ∂_x V e^{iν} I_t(e^{-iν} q)`.
///
/// Commits the gauged trace `e^{-iν} q_n` to `trace` and returns `T0 q` at `t_n`.
pub fn t0_apply(trace: &mut ConvolutionState, gauge: &GaugeState, dvdx: C64, q_n: C64) -> C64 {
    let e = gauge.phase();
    trace.advance(q_n / e);
    e * (-quarter_phase() * trace.current_half_derivative() - 0.25 * C64::i() * dvdx * trace.current_integral())
}

/// `T0` as an affine function of the pending boundary value `q`, with the gauge
/// phase held at `gauge.nu`.
pub fn t0_affine(trace: &ConvolutionState, gauge: &GaugeState, dvdx: C64, stage: Stage) -> Affine {
    let e = gauge.phase();
    let d = trace.half_derivative_affine(stage);
    let i = trace.time_integral_affine(stage);
    let c = -0.25 * C64::i() * dvdx;
    let eta = -quarter_phase();
    Affine { slope: eta * d.slope + c * i.slope, offset: e * (eta * d.offset + c * i.offset) }
}

/// End of a line segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// Sign of the outward normal.
    pub fn sign(self) -> f64 {
        match self {
            Side::Left => -1.0,
            Side::Right => 1.0,
        }
    }
}

/// Second-order transparent flux `∂_x q` at the end `side` of a line segment:
/// `-T0 q` at the left end and `+T0 q` at the right end.
pub fn line_tbc_flux(side: Side, trace: &mut ConvolutionState, gauge: &GaugeState, dvdx: C64, q_n: C64) -> C64 {
    side.sign() * t0_apply(trace, gauge, dvdx, q_n)
}

/// Boundary value `b` for which the one-sided outward derivative
/// `(3b - 4 n1 + n2) / (2h)` equals `t0.eval(b)`.
///
/// `n1` and `n2` are the first and second interior neighbours of the end.
pub fn solve_outward_flux(n1: C64, n2: C64, h: f64, t0: Affine) -> C64 {
    ((4.0 * n1 - n2) / (2.0 * h) + t0.offset) / (1.5 / h - t0.slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn first_weights() {
        let w = cq_weights(4);
        assert_eq!(w, vec![1.0, -0.5, -0.125, -0.0625]);
    }

    #[test]
    fn weight_partial_sums_vanish() {
        let s: f64 = cq_weights(1001).iter().sum();
        assert!(s.abs() < 0.02, "{s}");
    }

    #[test]
    fn weight_recurrence_exact() {
        let w = cq_weights(5000);
        for k in 1..w.len() {
            let kf = k as f64;
            assert_eq!(w[k], w[k - 1] * (kf - 1.5) / kf);
            let (l, r) = (w[k] * kf, w[k - 1] * (kf - 1.5));
            assert!((l - r).abs() <= 4.0 * f64::EPSILON * r.abs());
        }
    }

    #[test]
    fn streaming_matches_one_shot() {
        let dt = 0.01;
        let f: Vec<C64> = (0..200).map(|n| C64::new((n as f64 * dt).sin(), 0.3 * n as f64 * dt)).collect();
        let mut st = ConvolutionState::new(dt);
        for (n, v) in f.iter().enumerate() {
            st.advance(*v);
            let d = half_derivative(&f[..=n], dt);
            assert!((st.current_half_derivative() - d).norm() < 1e-12);
            assert!((st.current_integral() - time_integral(&f[..=n], dt)).norm() < 1e-12);
        }
    }

    #[test]
    fn half_derivative_of_linear() {
        let dt = 1e-3;
        let mut st = ConvolutionState::new(dt);
        let mut d = C64::default();
        for n in 0..=1000 {
            d = st.half_derivative(c(n as f64 * dt));
        }
        let exact = 2.0 / PI.sqrt();
        assert!((d.re - exact).abs() / exact < 0.01);
    }

    #[test]
    fn pending_full_matches_commit() {
        let dt = 0.02;
        let mut st = ConvolutionState::new(dt);
        for n in 0..30 {
            st.advance(C64::new(n as f64 * 0.1, -(n as f64) * 0.05));
        }
        let g = C64::new(0.7, 0.2);
        let d = st.half_derivative_with(Stage::Full, g);
        let i = st.time_integral_with(Stage::Full, g);
        let mut st2 = st.clone();
        st2.advance(g);
        assert!((d - st2.current_half_derivative()).norm() < 1e-13);
        assert!((i - st2.current_integral()).norm() < 1e-13);
    }

    #[test]
    fn pending_half_is_midpoint_mean() {
        let dt = 0.02;
        let mut st = ConvolutionState::new(dt);
        for n in 0..30 {
            st.advance(c((n as f64 * dt).powi(2)));
        }
        let next = c((30.0 * dt).powi(2));
        let mid = 0.5 * (st.last() + next);
        let d_half = st.half_derivative_with(Stage::Half, mid);
        let i_half = st.time_integral_with(Stage::Half, mid);
        let mut st2 = st.clone();
        st2.advance(next);
        let want = 0.5 * (st.current_half_derivative() + st2.current_half_derivative());
        assert!((d_half - want).norm() < 1e-12);
        let want_i = st.current_integral() + 0.25 * dt * (st.last() + mid);
        assert!((i_half - want_i).norm() < 1e-14);
    }

    #[test]
    fn gauge_constant_and_sine() {
        let mut g = GaugeState::new(c(2.0));
        for _ in 0..10 {
            g.update(c(2.0), 0.1);
        }
        assert!((g.nu - c(2.0)).norm() < 1e-14);
        let dt = 1e-3;
        let mut g = GaugeState::new(c(0.0));
        for n in 1..=2000 {
            g = gauge_update(g, c((n as f64 * dt).sin()), dt);
        }
        assert!((g.nu.re - (1.0 - 2f64.cos())).abs() < 1e-6);
    }

    #[test]
    fn t0_without_potential_is_scaled_half_derivative() {
        let dt = 1e-3;
        let mut st = ConvolutionState::new(dt);
        let g = GaugeState::new(c(0.0));
        let mut t0 = C64::default();
        for n in 0..=1000 {
            t0 = t0_apply(&mut st, &g, c(0.0), c(n as f64 * dt));
        }
        let exact = -quarter_phase() * 2.0 / PI.sqrt();
        assert!((t0 - exact).norm() / exact.norm() < 0.01);
    }

    #[test]
    fn t0_affine_matches_commit() {
        let dt = 0.01;
        let mut st = ConvolutionState::new(dt);
        let mut g = GaugeState::new(C64::new(0.3, 0.1));
        for n in 0..40 {
            let t = n as f64 * dt;
            let q = C64::new(t.cos(), t.sin() * 0.5);
            t0_apply(&mut st, &g, C64::new(0.2, -0.1), q);
            g.update(C64::new(0.3 + t, 0.1), dt);
        }
        let dv = C64::new(-0.4, 0.25);
        let b = C64::new(0.1, -0.9);
        let aff = t0_affine(&st, &g, dv, Stage::Full);
        let mut st2 = st.clone();
        let direct = t0_apply(&mut st2, &g, dv, b);
        assert!((aff.eval(b) - direct).norm() < 1e-12);
    }

    #[test]
    fn line_flux_signs() {
        let dt = 0.01;
        let g = GaugeState::new(c(0.0));
        let mut a = ConvolutionState::new(dt);
        let mut b = ConvolutionState::new(dt);
        for n in 0..10 {
            let q = c(n as f64 * dt);
            let l = line_tbc_flux(Side::Left, &mut a, &g, c(0.1), q);
            let r = line_tbc_flux(Side::Right, &mut b, &g, c(0.1), q);
            assert_eq!(l, -r);
        }
    }

    #[test]
    fn outward_solve_satisfies_flux() {
        let t0 = Affine { slope: C64::new(-3.0, 2.0), offset: C64::new(0.5, 0.25) };
        let (n1, n2, h) = (C64::new(1.0, 0.5), C64::new(0.8, 0.7), 0.05);
        let b = solve_outward_flux(n1, n2, h, t0);
        let lhs = (3.0 * b - 4.0 * n1 + n2) / (2.0 * h);
        assert!((lhs - t0.eval(b)).norm() < 1e-12);
    }
}
