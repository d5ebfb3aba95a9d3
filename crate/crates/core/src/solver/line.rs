use crate::error::{Error, Result};
use crate::fracops::Stage;
use crate::C64;

use super::outer::{end_slope, TbcEnd};
use super::MAX_C_DT;

/// End closure of a line segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineBc {
    Dirichlet0,
    Tbc,
    /// Period `2L`; the last grid point duplicates the first.
    Periodic,
}

/// `i q_t + q_xx + coeff q² q*(-x) = 0` on `[-L, L]` with `M` points, `M` odd so
/// that `x = 0` is a grid point and index `i` mirrors to `M - 1 - i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineConfig {
    pub half_length: f64,
    pub points: usize,
    pub c_dt: f64,
    pub final_time: f64,
    pub bc: LineBc,
    pub coeff: f64,
}

impl LineConfig {
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_length / (self.points - 1) as f64
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        -self.half_length + i as f64 * self.spacing()
    }

    pub fn time_grid(&self) -> (usize, f64) {
        let h = self.spacing();
        let target = self.c_dt * h * h;
        let n = (self.final_time / target).ceil() as usize;
        if n == 0 {
            (0, target)
        } else {
            (n, self.final_time / n as f64)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.points < 5 || self.points % 2 == 0 {
            return Err(Error::InvalidParameter(format!("line needs an odd point count ≥ 5, got {}", self.points)));
        }
        if !(self.half_length > 0.0) {
            return Err(Error::InvalidParameter("half length must be positive".into()));
        }
        if !(self.c_dt > 0.0 && self.c_dt <= MAX_C_DT) {
            return Err(Error::InvalidParameter(format!("c_dt must lie in (0, {MAX_C_DT}]")));
        }
        if !(self.final_time >= 0.0) {
            return Err(Error::InvalidParameter("final time must be non-negative".into()));
        }
        Ok(())
    }
}

/// `i (q_xx + coeff q² q*(-x))` on a line grid; end entries are zero unless
/// `bc` is periodic.
pub fn line_rhs(q: &[C64], h: f64, coeff: f64, bc: LineBc) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); q.len()];
    line_rhs_into(q, h, coeff, bc, &mut out);
    out
}

fn line_rhs_into(q: &[C64], h: f64, coeff: f64, bc: LineBc, out: &mut [C64]) {
    let m = q.len();
    let ih2 = 1.0 / (h * h);
    let i = C64::i();
    let f = |k: usize, l: C64| i * ((l - 2.0 * q[k]) * ih2 + coeff * q[k] * q[k] * q[m - 1 - k].conj());
    for k in 1..m - 1 {
        out[k] = f(k, q[k - 1] + q[k + 1]);
    }
    if bc == LineBc::Periodic {
        out[0] = f(0, q[m - 2] + q[1]);
        out[m - 1] = out[0];
    } else {
        out[0] = C64::new(0.0, 0.0);
        out[m - 1] = C64::new(0.0, 0.0);
    }
}

/// RK4 integrator for [`LineConfig`].
#[derive(Clone, Debug)]
pub struct LineSolver {
    cfg: LineConfig,
    dt: f64,
    steps: usize,
    step: usize,
    q: Vec<C64>,
    ends: Option<[TbcEnd; 2]>,
}

impl LineSolver {
    pub fn new(cfg: LineConfig, mut q0: Vec<C64>) -> Result<Self> {
        cfg.validate()?;
        if q0.len() != cfg.points {
            return Err(Error::InvalidParameter(format!("expected {} samples, got {}", cfg.points, q0.len())));
        }
        let (steps, dt) = cfg.time_grid();
        let m = cfg.points;
        let ends = match cfg.bc {
            LineBc::Dirichlet0 => {
                q0[0] = C64::new(0.0, 0.0);
                q0[m - 1] = C64::new(0.0, 0.0);
                None
            }
            LineBc::Periodic => {
                q0[m - 1] = q0[0];
                None
            }
            LineBc::Tbc => {
                let (vl, dl, vr, dr) = end_potentials(&q0, cfg.spacing(), cfg.coeff);
                Some([TbcEnd::new(dt, q0[0], vl, dl), TbcEnd::new(dt, q0[m - 1], vr, dr)])
            }
        };
        Ok(LineSolver { cfg, dt, steps, step: 0, q: q0, ends })
    }

    pub fn config(&self) -> &LineConfig {
        &self.cfg
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.dt
    }

    pub fn values(&self) -> &[C64] {
        &self.q
    }

    pub fn is_finished(&self) -> bool {
        self.step >= self.steps
    }

    fn close(&self, q: &mut [C64], stage: Stage) {
        let m = q.len();
        match (&self.ends, self.cfg.bc) {
            (Some([l, r]), _) => {
                let h = self.cfg.spacing();
                q[0] = l.boundary_value(q[1], q[2], h, stage);
                q[m - 1] = r.boundary_value(q[m - 2], q[m - 3], h, stage);
            }
            (None, LineBc::Periodic) => q[m - 1] = q[0],
            (None, _) => {
                q[0] = C64::new(0.0, 0.0);
                q[m - 1] = C64::new(0.0, 0.0);
            }
        }
    }

    pub fn step(&mut self) -> Result<()> {
        let (h, c, bc, dt) = (self.cfg.spacing(), self.cfg.coeff, self.cfg.bc, self.dt);
        let m = self.q.len();
        let mut k =
            [vec![C64::default(); m], vec![C64::default(); m], vec![C64::default(); m], vec![C64::default(); m]];
        let mut y = vec![C64::default(); m];
        line_rhs_into(&self.q, h, c, bc, &mut k[0]);
        for (s, (a, stage)) in [(0.5, Stage::Half), (0.5, Stage::Half), (1.0, Stage::Full)].into_iter().enumerate() {
            for j in 0..m {
                y[j] = self.q[j] + a * dt * k[s][j];
            }
            self.close(&mut y, stage);
            line_rhs_into(&y, h, c, bc, &mut k[s + 1]);
        }
        for j in 0..m {
            y[j] = self.q[j] + dt / 6.0 * (k[0][j] + 2.0 * k[1][j] + 2.0 * k[2][j] + k[3][j]);
        }
        self.close(&mut y, Stage::Full);
        self.q = y;
        self.step += 1;
        if let Some(i) = self.q.iter().position(|z| !z.is_finite()) {
            return Err(Error::LineNonFinite { index: i, t: self.time() });
        }
        if let Some([l, r]) = &mut self.ends {
            let (vl, dl, vr, dr) = end_potentials(&self.q, h, c);
            l.commit(self.q[0], vl, dl);
            r.commit(self.q[m - 1], vr, dr);
        }
        Ok(())
    }

    /// Runs to the final time, calling `observer` before the first step and
    /// after each one.
    pub fn run_with<F: FnMut(&LineSolver)>(&mut self, mut observer: F) -> Result<()> {
        observer(self);
        while !self.is_finished() {
            self.step()?;
            observer(self);
        }
        Ok(())
    }

    pub fn run(&mut self) -> Result<()> {
        self.run_with(|_| {})
    }
}

fn end_potentials(q: &[C64], h: f64, coeff: f64) -> (C64, C64, C64, C64) {
    let m = q.len();
    let v = |i: usize| coeff * q[i] * q[m - 1 - i].conj();
    // left end: derivative along +x is minus the slope towards decreasing index
    let dl = -end_slope(v(2), v(1), v(0), h);
    let dr = end_slope(v(m - 3), v(m - 2), v(m - 1), h);
    (v(0), dl, v(m - 1), dr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(bc: LineBc, points: usize) -> LineConfig {
        LineConfig { half_length: 10.0, points, c_dt: 0.5, final_time: 0.1, bc, coeff: 0.0 }
    }

    #[test]
    fn rejects_even_grid() {
        assert!(LineSolver::new(cfg(LineBc::Dirichlet0, 10), vec![C64::default(); 10]).is_err());
    }

    #[test]
    fn plane_wave_dispersion() {
        let c = cfg(LineBc::Periodic, 401);
        let k = 2.0 * PI * 3.0 / 20.0;
        let q: Vec<C64> = (0..401).map(|i| C64::from_polar(1.0, k * c.coordinate(i))).collect();
        let d = line_rhs(&q, c.spacing(), 0.0, LineBc::Periodic);
        let h = c.spacing();
        // discrete symbol -i (2 - 2 cos kh) / h², within O(h²) of -i k²
        for i in 0..401 {
            let want = -C64::i() * k * k * q[i];
            assert!((d[i] - want).norm() < k.powi(4) * h * h / 12.0 * 1.01 + 1e-10);
        }
    }

    #[test]
    fn zero_is_fixed_point() {
        for bc in [LineBc::Dirichlet0, LineBc::Tbc, LineBc::Periodic] {
            let mut s = LineSolver::new(cfg(bc, 41), vec![C64::default(); 41]).unwrap();
            s.run().unwrap();
            assert!(s.values().iter().all(|z| *z == C64::default()));
        }
    }
}
