//! Geodesic spray of the H¹ right-invariant metric on Diff(S¹).
//!
//! The energy is E = (1/2)∫ η̇²η_x + α²η̇_x²/η_x dx (the H¹ metric written
//! at η) and its Euler-Lagrange equation is the spray
//!
//!   η̈ = (1 - α²Δ_η)⁻¹[(-2η̇ - α²Δ_η η̇) η_x⁻¹ η̇_x]
//!
//! with Δ_η = η_x⁻¹ ∂_x η_x⁻¹ ∂_x, the pullback of ∂_y² by η.  Rather than
//! assembling the variable-coefficient operator, everything is pushed to the
//! Eulerian grid: with u = η̇∘η⁻¹ one has η_x⁻¹η̇_x = u_y∘η and
//! Δ_η η̇ = u_yy∘η, so
//!
//!   η̈ = g∘η,   g = (1 - α²∂_y²)⁻¹[(-2u - α²u_yy) u_y],
//!
//! which is exactly the Lagrangian form of Camassa-Holm,
//! m_t + u m_y + 2 u_y m = 0 with m = (1 - α²∂_y²)u.
//!
//! and g is obtained by a constant-coefficient spectral solve.  Compositions
//! use trigonometric interpolation; η is inverted per node by Newton's method
//! (monotone, η_x > 0) with a bisection fallback.
//!
//! At α = 0 the solve is the identity and the spray collapses to the closed
//! form η̈ = -2 η_x⁻¹ η̇_x η̇, the Lagrangian picture of u_t + 3uu_x = 0;
//! Jacobian degeneracy (η_x → 0) is the shock of that law.

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::field::{h1_inner, scalar_to_physical, scalar_to_spectral, GridField, SpectralField};
use crate::grid::Grid;

/// min η_x below which the configuration is declared degenerate; the node
/// inversion conditioning collapses as η_x → 0.
pub const BREAKDOWN_JACOBIAN: f64 = 1e-3;

/// Lagrangian configuration (η, η̇) on S¹, η stored as identity plus a
/// periodic displacement sampled on the grid nodes.
#[derive(Debug, Clone)]
pub struct DiffeoState {
    pub grid: Grid,
    /// d with η(x) = x + d(x).
    pub displacement: Vec<f64>,
    /// η̇ samples on the Lagrangian nodes.
    pub velocity: Vec<f64>,
    pub alpha: f64,
    pub time: f64,
}

impl DiffeoState {
    pub fn new(grid: Grid, displacement: Vec<f64>, velocity: Vec<f64>, alpha: f64) -> Result<Self> {
        if grid.dim() != 1 {
            return Err(CoreError::InvalidArgument(
                "DiffeoState requires a one-dimensional grid".into(),
            ));
        }
        if displacement.len() != grid.len() || velocity.len() != grid.len() {
            return Err(CoreError::GridMismatch);
        }
        if !displacement.iter().chain(&velocity).all(|v| v.is_finite()) {
            return Err(CoreError::NonFiniteInput);
        }
        let state = DiffeoState {
            grid,
            displacement,
            velocity,
            alpha,
            time: 0.0,
        };
        if state.min_jacobian() <= 0.0 {
            return Err(CoreError::NotInvertible);
        }
        Ok(state)
    }

    /// η = id with the given velocity samples.
    pub fn identity(grid: Grid, velocity: Vec<f64>, alpha: f64) -> Result<Self> {
        DiffeoState::new(grid, vec![0.0; grid.len()], velocity, alpha)
    }

    /// η_x = 1 + d_x on the nodes, d_x by spectral differentiation.
    pub fn jacobian(&self) -> Vec<f64> {
        let mut dx = scalar_to_spectral(&self.grid, &self.displacement);
        for (flat, v) in dx.iter_mut().enumerate() {
            *v *= Complex64::new(0.0, self.grid.wavenumber(flat) as f64);
        }
        scalar_to_physical(&self.grid, &dx)
            .into_iter()
            .map(|v| 1.0 + v)
            .collect()
    }

    pub fn min_jacobian(&self) -> f64 {
        self.jacobian().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn max_speed(&self) -> f64 {
        self.velocity.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Truncated Fourier interpolant of a real periodic function: c0 plus the
/// positive-wavenumber coefficients, evaluated by the conjugate-pair sum
/// f(x) = c0 + 2 Re Σ_m c_m e^{imx}.
struct Interp {
    c0: f64,
    c: Vec<Complex64>,
}

impl Interp {
    fn from_coeffs(grid: &Grid, spec: &[Complex64]) -> Interp {
        let cut = grid.alias_cutoff() as usize;
        // flat index m carries wavenumber m for m <= N/2
        Interp {
            c0: spec[0].re,
            c: spec[1..=cut].to_vec(),
        }
    }

    fn from_samples(grid: &Grid, samples: &[f64]) -> Interp {
        Interp::from_coeffs(grid, &scalar_to_spectral(grid, samples))
    }

    fn derivative(&self) -> Interp {
        Interp {
            c0: 0.0,
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(i, v)| v * Complex64::new(0.0, (i + 1) as f64))
                .collect(),
        }
    }

    fn eval(&self, x: f64) -> f64 {
        let z = Complex64::from_polar(1.0, x);
        let mut pow = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::default();
        for v in &self.c {
            pow *= z;
            acc += v * pow;
        }
        self.c0 + 2.0 * acc.re
    }

    /// Crude sup bound |f| <= |c0| + 2Σ|c_m|, enough to bracket roots.
    fn sup_bound(&self) -> f64 {
        self.c0.abs() + 2.0 * self.c.iter().map(|v| v.norm()).sum::<f64>()
    }
}

/// Per Eulerian node y_j, the x with x + d(x) = y_j.  Newton off the
/// previous node's solution; monotone bisection on [y-max|d|, y+max|d|]
/// when Newton fails to settle.
fn invert_eta(grid: Grid, d: &Interp, dx: &Interp) -> Vec<f64> {
    let n = grid.n();
    let bound = d.sup_bound() + 1e-12;
    let mut out = vec![0.0; n];
    let mut x = 0.0;
    for j in 0..n {
        let y = grid.node(j);
        if j == 0 {
            x = y - d.eval(y);
        } else {
            x += grid.spacing();
        }
        let mut converged = false;
        for _ in 0..30 {
            let f = x + d.eval(x) - y;
            if f.abs() < 1e-12 {
                converged = true;
                break;
            }
            let fp = 1.0 + dx.eval(x);
            if fp < BREAKDOWN_JACOBIAN {
                break;
            }
            x -= f / fp;
        }
        if !converged {
            let (mut lo, mut hi) = (y - bound, y + bound);
            for _ in 0..80 {
                x = 0.5 * (lo + hi);
                if x + d.eval(x) - y > 0.0 {
                    hi = x;
                } else {
                    lo = x;
                }
            }
            x = 0.5 * (lo + hi);
        }
        out[j] = x;
    }
    out
}

/// U = η̇∘η⁻¹ sampled on the Eulerian nodes, as a one-component field.
pub fn eulerian_velocity(state: &DiffeoState) -> Result<SpectralField> {
    let grid = state.grid;
    if state.min_jacobian() <= 0.0 {
        return Err(CoreError::NotInvertible);
    }
    let d = Interp::from_samples(&grid, &state.displacement);
    let dx = d.derivative();
    let inv = invert_eta(grid, &d, &dx);
    let vel = Interp::from_samples(&grid, &state.velocity);
    let mut u = GridField::zeros(grid);
    for (j, &x) in inv.iter().enumerate() {
        u.comps[0][j] = vel.eval(x);
    }
    SpectralField::from_samples(&u)
}

/// Pullback evaluation of the spray, valid for any α >= 0; at α = 0 the
/// Helmholtz solve degenerates to the identity.
fn spray_pullback(state: &DiffeoState) -> Result<Vec<f64>> {
    let grid = state.grid;
    let d = Interp::from_samples(&grid, &state.displacement);
    let dx = d.derivative();
    let inv = invert_eta(grid, &d, &dx);
    let vel = Interp::from_samples(&grid, &state.velocity);
    let u: Vec<f64> = inv.iter().map(|&x| vel.eval(x)).collect();

    let u_hat = scalar_to_spectral(&grid, &u);
    let mut uy_hat = u_hat.clone();
    let mut uyy_hat = u_hat.clone();
    for flat in 0..grid.len() {
        let k = grid.wavenumber(flat) as f64;
        uy_hat[flat] *= Complex64::new(0.0, k);
        uyy_hat[flat] *= -k * k;
    }
    let uy = scalar_to_physical(&grid, &uy_hat);
    let uyy = scalar_to_physical(&grid, &uyy_hat);

    let a2 = state.alpha * state.alpha;
    let rhs: Vec<f64> = (0..grid.len())
        .map(|j| (-2.0 * u[j] - a2 * uyy[j]) * uy[j])
        .collect();
    let mut g_hat = scalar_to_spectral(&grid, &rhs);
    for (flat, v) in g_hat.iter_mut().enumerate() {
        let k = grid.wavenumber(flat) as f64;
        *v /= 1.0 + a2 * k * k;
    }
    let g = Interp::from_coeffs(&grid, &g_hat);
    Ok(state
        .displacement
        .iter()
        .enumerate()
        .map(|(j, &dj)| g.eval(grid.node(j) + dj))
        .collect())
}

/// η̈ samples on the Lagrangian nodes.
pub fn spray_1d(state: &DiffeoState) -> Result<Vec<f64>> {
    let jac = state.jacobian();
    let min_jac = jac.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    if min_jac < BREAKDOWN_JACOBIAN {
        return Err(CoreError::DiffeoBreakdown {
            time: state.time,
            min_jacobian: min_jac,
        });
    }
    if state.alpha == 0.0 {
        // closed form -2 η_x⁻¹ η̇_x η̇, no solve involved
        let mut vx = scalar_to_spectral(&state.grid, &state.velocity);
        for (flat, v) in vx.iter_mut().enumerate() {
            *v *= Complex64::new(0.0, state.grid.wavenumber(flat) as f64);
        }
        let vx = scalar_to_physical(&state.grid, &vx);
        return Ok((0..state.grid.len())
            .map(|j| -2.0 * vx[j] * state.velocity[j] / jac[j])
            .collect());
    }
    spray_pullback(state)
}

fn offset(state: &DiffeoState, h: f64, dd: &[f64], dv: &[f64]) -> DiffeoState {
    let mut out = state.clone();
    for j in 0..state.grid.len() {
        out.displacement[j] += h * dd[j];
        out.velocity[j] += h * dv[j];
    }
    out.time += h;
    out
}

/// One classical RK4 step of the first-order system (d, η̇).
pub fn step_rk4_1d(state: &DiffeoState, dt: f64) -> Result<DiffeoState> {
    let k1v = spray_1d(state)?;
    let s2 = offset(state, 0.5 * dt, &state.velocity, &k1v);
    let k2v = spray_1d(&s2)?;
    let s3 = offset(state, 0.5 * dt, &s2.velocity, &k2v);
    let k3v = spray_1d(&s3)?;
    let s4 = offset(state, dt, &s3.velocity, &k3v);
    let k4v = spray_1d(&s4)?;

    let mut next = state.clone();
    for j in 0..state.grid.len() {
        next.displacement[j] += dt / 6.0
            * (state.velocity[j] + 2.0 * s2.velocity[j] + 2.0 * s3.velocity[j] + s4.velocity[j]);
        next.velocity[j] += dt / 6.0 * (k1v[j] + 2.0 * k2v[j] + 2.0 * k3v[j] + k4v[j]);
    }
    next.time += dt;
    if !next.displacement.iter().chain(&next.velocity).all(|v| v.is_finite()) {
        return Err(CoreError::NanDetected { time: next.time });
    }
    Ok(next)
}

#[derive(Debug, Clone)]
pub struct GeodesicTrajectory1d {
    /// Every accepted step, initial state included.
    pub states: Vec<DiffeoState>,
}

/// Snapshot row emitted per state.
#[derive(Debug, Clone, Copy)]
pub struct GeodesicRow {
    pub time: f64,
    pub min_jacobian: f64,
    pub h1_energy: f64,
    pub max_speed: f64,
}

impl GeodesicTrajectory1d {
    pub fn dt(&self) -> f64 {
        if self.states.len() < 2 {
            return 0.0;
        }
        self.states[1].time - self.states[0].time
    }

    /// (t, min η_x, ⟨U,U⟩₁, max |η̇|) per state; the energy is Eulerian.
    pub fn rows(&self) -> Result<Vec<GeodesicRow>> {
        self.states
            .iter()
            .map(|s| {
                let u = eulerian_velocity(s)?;
                Ok(GeodesicRow {
                    time: s.time,
                    min_jacobian: s.min_jacobian(),
                    h1_energy: h1_inner(&u, &u, s.alpha)?,
                    max_speed: s.max_speed(),
                })
            })
            .collect()
    }
}

/// Fixed-step RK4 over [state.time, t_end].  A Jacobian collapse below
/// [`BREAKDOWN_JACOBIAN`] aborts with the first failure time; expected
/// behavior at α = 0 for shock-forming data.
pub fn integrate_geodesic_1d(
    state: &DiffeoState,
    dt: f64,
    t_end: f64,
) -> Result<GeodesicTrajectory1d> {
    if dt <= 0.0 {
        return Err(CoreError::InvalidArgument("dt must be positive".into()));
    }
    let steps = ((t_end - state.time) / dt).round() as usize;
    let mut states = Vec::with_capacity(steps + 1);
    states.push(state.clone());
    for _ in 0..steps {
        let next = step_rk4_1d(states.last().expect("nonempty"), dt)?;
        let min_jac = next.min_jacobian();
        if min_jac < BREAKDOWN_JACOBIAN {
            return Err(CoreError::DiffeoBreakdown {
                time: next.time,
                min_jacobian: min_jac,
            });
        }
        states.push(next);
    }
    Ok(GeodesicTrajectory1d { states })
}

/// L² residual of the transported-momentum law m_t + u m_x + 2 u_x m = 0,
/// m = (1 - α²∂²)u, at the middle of three equispaced velocity snapshots;
/// m_t is the centered difference over the flanking ones.
pub fn transport_residual(
    prev: &SpectralField,
    mid: &SpectralField,
    next: &SpectralField,
    alpha: f64,
    snapshot_dt: f64,
) -> Result<f64> {
    let grid = mid.grid();
    let m_t = next
        .helmholtz_apply(alpha)
        .sub(&prev.helmholtz_apply(alpha))
        .scale(1.0 / (2.0 * snapshot_dt));
    let u = mid.to_samples()?;
    let ux = mid.derivative(0).to_samples()?;
    let m = mid.helmholtz_apply(alpha);
    let m_phys = m.to_samples()?;
    let mx = m.derivative(0).to_samples()?;
    let mut advect = GridField::zeros(grid);
    for j in 0..grid.len() {
        advect.comps[0][j] =
            u.comps[0][j] * mx.comps[0][j] + 2.0 * ux.comps[0][j] * m_phys.comps[0][j];
    }
    let residual = m_t.add(&SpectralField::from_samples(&advect)?);
    Ok(crate::field::l2_norm(&residual))
}
