//! Method-of-lines solver for the averaged-Euler (Euler-α) equations on T².
//!
//! The momentum form is  V̇ + (U·∇)V - α²(∇U)ᵗ·ΔU = -grad p,  V = H_α U,
//! div U = 0.  Eliminating the pressure with the Leray projection (every
//! operator involved is a Fourier multiplier, so P and H_α⁻¹ commute) gives
//! the evolution actually stepped here:
//!
//!   ∂_t U = P ∘ H_α⁻¹ [ -(U·∇)V + α²(∇U)ᵗ·ΔU ].
//!
//! At α = 0 this is the incompressible Euler right-hand side -P(U·∇U).
//! Nonlinear terms are formed by physical-space products of spectral
//! derivatives with the 2/3 dealiasing rule; time stepping is fixed-step RK4
//! so conservation diagnostics reproduce bit-for-bit.

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::field::{h1_inner, scalar_to_physical, GridField, SpectralField};
use crate::grid::Grid;

/// Default CFL safety factor for the dt guard.
pub const DEFAULT_CFL: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct FlowState {
    pub velocity: SpectralField,
    pub alpha: f64,
    pub time: f64,
}

impl FlowState {
    pub fn new(velocity: SpectralField, alpha: f64) -> Result<Self> {
        if !velocity.is_divergence_free() {
            return Err(CoreError::NotDivergenceFree {
                relative: velocity.max_relative_divergence(),
            });
        }
        Ok(FlowState {
            velocity,
            alpha,
            time: 0.0,
        })
    }

    pub fn grid(&self) -> Grid {
        self.velocity.grid()
    }
}

/// The unprojected momentum right-hand side F = -(U·∇)V + α²(∇U)ᵗ·ΔU.
fn momentum_rhs(u: &SpectralField, alpha: f64) -> Result<SpectralField> {
    let grid = u.grid();
    let v = u.helmholtz_apply(alpha);
    let u_phys = u.to_samples()?;

    // physical samples of ∂_j V, ∂_n U and ΔU
    let mut dv = Vec::with_capacity(2);
    let mut du = Vec::with_capacity(2);
    for axis in 0..2 {
        dv.push(v.derivative(axis).to_samples()?);
        du.push(u.derivative(axis).to_samples()?);
    }
    let lap_u = u.laplacian().to_samples()?;

    let mut f = GridField::zeros(grid);
    let a2 = alpha * alpha;
    for i in 0..2 {
        for x in 0..grid.len() {
            // -(U·∇)V_i
            let mut acc = 0.0;
            for j in 0..2 {
                acc -= u_phys.comps[j][x] * dv[j].comps[i][x];
            }
            // + α² Σ_j ∂_i U_j · ΔU_j
            if a2 != 0.0 {
                for j in 0..2 {
                    acc += a2 * du[i].comps[j][x] * lap_u.comps[j][x];
                }
            }
            f.comps[i][x] = acc;
        }
    }
    SpectralField::from_samples(&f)
}

/// ∂_t U for the averaged-Euler equations; divergence-free in, divergence-free out.
pub fn rhs(u: &SpectralField, alpha: f64) -> Result<SpectralField> {
    Ok(momentum_rhs(u, alpha)?
        .helmholtz_inverse(alpha)
        .leray_project())
}

/// One classical RK4 step; the full step is re-projected to scrub drift.
pub fn step_rk4(state: &FlowState, dt: f64) -> Result<FlowState> {
    let u = &state.velocity;
    let k1 = rhs(u, state.alpha)?;
    let k2 = rhs(&u.axpy(0.5 * dt, &k1), state.alpha)?;
    let k3 = rhs(&u.axpy(0.5 * dt, &k2), state.alpha)?;
    let k4 = rhs(&u.axpy(dt, &k3), state.alpha)?;
    let mut next = u
        .axpy(dt / 6.0, &k1)
        .axpy(dt / 3.0, &k2)
        .axpy(dt / 3.0, &k3)
        .axpy(dt / 6.0, &k4)
        .leray_project();
    next.dealias();
    if !next.max_abs_coeff().is_finite() {
        return Err(CoreError::NanDetected {
            time: state.time + dt,
        });
    }
    Ok(FlowState {
        velocity: next,
        alpha: state.alpha,
        time: state.time + dt,
    })
}

/// Largest physical velocity magnitude (per component max, via samples).
pub fn max_velocity(u: &SpectralField) -> f64 {
    u.to_samples().map(|s| s.max_abs()).unwrap_or(f64::NAN)
}

/// True when dt exceeds the guard c·Δx / max|U|.
pub fn cfl_violated(state: &FlowState, dt: f64, safety: f64) -> bool {
    let vmax = max_velocity(&state.velocity);
    vmax > 0.0 && dt > safety * state.grid().spacing() / vmax
}

/// (1/2)⟨U,U⟩₁ — the conserved quantity of the flow.
pub fn h1_energy(state: &FlowState) -> f64 {
    0.5 * h1_inner(&state.velocity, &state.velocity, state.alpha).expect("same grid")
}

/// Pressure recovered from grad p = Q(F): p = Δ⁻¹ div F in the zero-mean
/// gauge, returned as samples on the physical nodes.
pub fn pressure(u: &SpectralField, alpha: f64) -> Result<Vec<f64>> {
    let grid = u.grid();
    let f = momentum_rhs(u, alpha)?;
    let mut p_hat = vec![Complex64::default(); grid.len()];
    for flat in 0..grid.len() {
        let k = grid.wavevector(flat);
        let k2 = (k[0] * k[0] + k[1] * k[1]) as f64;
        if k2 == 0.0 {
            continue; // zero-mean gauge
        }
        let div = f.coeffs(0)[flat] * Complex64::new(0.0, k[0] as f64)
            + f.coeffs(1)[flat] * Complex64::new(0.0, k[1] as f64);
        p_hat[flat] = div / -k2;
    }
    Ok(scalar_to_physical(&grid, &p_hat))
}

/// Per-step diagnostics row consumed by the harness.
#[derive(Debug, Clone, Copy)]
pub struct FlowDiagnostics {
    pub time: f64,
    pub h1_energy: f64,
    pub l2_energy: f64,
    pub max_divergence: f64,
    pub max_velocity: f64,
}

pub fn diagnostics(state: &FlowState) -> FlowDiagnostics {
    let u = &state.velocity;
    FlowDiagnostics {
        time: state.time,
        h1_energy: h1_energy(state),
        l2_energy: 0.5 * h1_inner(u, u, 0.0).expect("same grid"),
        max_divergence: u.max_relative_divergence(),
        max_velocity: max_velocity(u),
    }
}
