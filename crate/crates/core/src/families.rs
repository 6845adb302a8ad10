//! Closed-form pressure-constant geodesic families on T².
//!
//! Both families are shears, so det(Tη) = 1 identically and η inverts in
//! closed form:
//!
//! * family 1: η(t)(x¹,x²) = (x¹ + h(x²), x² + ct), η̇ = (0,c), U = (0,c);
//! * family 2: η(t)(x¹,x²) = (x¹ + t·h(x²), x²), η̇ = (h(x²),0),
//!   U = η̇∘η⁻¹ = (h(y²),0) exactly.
//!
//! For both, ∂_t U = 0 and the geodesic defect is the H¹ norm of the
//! averaged-Euler right-hand side at U, which vanishes: the advection term
//! dies because U never varies along itself and the stretching term is a
//! pure gradient.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{CoreError, Result};
use crate::euler2d;
use crate::field::{h1_norm, GridField, SpectralField};
use crate::grid::Grid;
use crate::trig::TrigFieldSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Static shear profile carried at constant vertical speed c.
    Example1,
    /// Shear growing linearly in time, zero vertical motion.
    Example2,
}

/// A pressure-constant geodesic on T².  The profile h is a scalar periodic
/// function of x², stored as trig terms with wavevectors (0, k).
#[derive(Debug, Clone)]
pub struct GeodesicFamily {
    pub kind: FamilyKind,
    pub profile: TrigFieldSpec,
    /// Vertical speed; meaningful for [`FamilyKind::Example1`] only.
    pub speed: f64,
}

impl GeodesicFamily {
    pub fn example1(profile: TrigFieldSpec, speed: f64) -> Result<Self> {
        Self::validated(FamilyKind::Example1, profile, speed)
    }

    pub fn example2(profile: TrigFieldSpec) -> Result<Self> {
        Self::validated(FamilyKind::Example2, profile, 0.0)
    }

    fn validated(kind: FamilyKind, profile: TrigFieldSpec, speed: f64) -> Result<Self> {
        let ok = profile
            .terms
            .iter()
            .all(|t| t.component == 0 && t.wavevector[0] == 0);
        if !ok {
            return Err(CoreError::InvalidArgument(
                "profile must be a scalar function of x2: component 0, wavevectors (0,k)".into(),
            ));
        }
        Ok(GeodesicFamily {
            kind,
            profile,
            speed,
        })
    }

    /// h(y) from the symbolic terms.
    pub fn profile_at(&self, y: f64) -> f64 {
        self.profile.eval(&[0.0, y], 2)[0]
    }

    /// The Eulerian velocity U = η̇∘η⁻¹; time-independent for both families.
    pub fn eulerian_velocity(&self, grid: Grid) -> SpectralField {
        match self.kind {
            FamilyKind::Example1 => TrigFieldSpec::constant(1, self.speed).to_field(grid),
            FamilyKind::Example2 => self.profile.to_field(grid),
        }
    }

    /// Lagrangian velocity η̇ sampled on the grid nodes.
    pub fn eta_dot(&self, grid: Grid) -> GridField {
        let mut out = GridField::zeros(grid);
        for j2 in 0..grid.n() {
            let h = self.profile_at(grid.node(j2));
            for j1 in 0..grid.n() {
                let flat = grid.node_index(&[j1, j2]);
                match self.kind {
                    FamilyKind::Example1 => out.comps[1][flat] = self.speed,
                    FamilyKind::Example2 => out.comps[0][flat] = h,
                }
            }
        }
        out
    }

    /// Horizontal shift of η(t) at an arbitrary height x²; off-node
    /// evaluation is what the inverse shear needs.
    pub fn shear_shift(&self, t: f64, x2: f64) -> f64 {
        match self.kind {
            FamilyKind::Example1 => self.profile_at(x2),
            FamilyKind::Example2 => t * self.profile_at(x2),
        }
    }

    /// The shear data of η(t): per-row horizontal shift s(x²) on the grid
    /// nodes and the constant vertical shift b, with
    /// η(x¹,x²) = (x¹ + s(x²), x² + b).
    pub fn shear(&self, grid: Grid, t: f64) -> (Vec<f64>, f64) {
        let s: Vec<f64> = (0..grid.n())
            .map(|j2| self.shear_shift(t, grid.node(j2)))
            .collect();
        let b = match self.kind {
            FamilyKind::Example1 => self.speed * t,
            FamilyKind::Example2 => 0.0,
        };
        (s, b)
    }

    /// det(Tη) − 1 on the nodes; identically zero for shears, verified
    /// numerically from spectral partials of the displacement.
    pub fn volume_defect(&self, grid: Grid, t: f64) -> f64 {
        let (s, b) = self.shear(grid, t);
        let mut disp = GridField::zeros(grid);
        for j2 in 0..grid.n() {
            for j1 in 0..grid.n() {
                let flat = grid.node_index(&[j1, j2]);
                disp.comps[0][flat] = s[j2];
                disp.comps[1][flat] = b;
            }
        }
        let d = SpectralField::from_samples(&disp).expect("finite displacement");
        let d1 = [
            d.derivative(0).to_samples().expect("real"),
            d.derivative(1).to_samples().expect("real"),
        ];
        let mut worst = 0.0_f64;
        for flat in 0..grid.len() {
            let det = (1.0 + d1[0].comps[0][flat]) * (1.0 + d1[1].comps[1][flat])
                - d1[1].comps[0][flat] * d1[0].comps[1][flat];
            worst = worst.max((det - 1.0).abs());
        }
        worst
    }
}

/// H¹ norm of P{∂_tU − rhs bracket}: how far a candidate (U, ∂_tU) is from
/// solving the averaged-Euler equations.
pub fn geodesic_defect(u: &SpectralField, du_dt: &SpectralField, alpha: f64) -> Result<f64> {
    let r = euler2d::rhs(u, alpha)?;
    let defect = du_dt.leray_project().sub(&r);
    Ok(h1_norm(&defect, alpha))
}

/// Geodesic residual of a family at time t.  ∂_tU = 0 for both families, so
/// this is just ‖rhs(U)‖₁; t is accepted for interface symmetry with
/// time-dependent candidates.
pub fn geodesic_residual_2d(
    family: &GeodesicFamily,
    grid: Grid,
    alpha: f64,
    _t: f64,
) -> Result<f64> {
    let u = family.eulerian_velocity(grid);
    geodesic_defect(&u, &SpectralField::zeros(grid), alpha)
}

/// Samples of W∘η for the shear η(x¹,x²) = (x¹ + s(x²), x² + b):
/// constant-shift phases along x², then a per-row phase shift along x¹.
/// O(N² log N) via partial inverse FFTs.
pub fn compose_with_shear(w: &SpectralField, shift1: &[f64], shift2: f64) -> Result<GridField> {
    let grid = w.grid();
    let n = grid.n();
    if grid.dim() != 2 || shift1.len() != n {
        return Err(CoreError::GridMismatch);
    }
    let mut planner = FftPlanner::<f64>::new();
    let inv = planner.plan_fft_inverse(n);

    let mut out = GridField::zeros(grid);
    let mut col = vec![Complex64::default(); n];
    let mut mixed = vec![Complex64::default(); n * n]; // (k1 index ix, row j2)
    for (c, spec) in (0..grid.dim()).map(|c| (c, w.coeffs(c))) {
        // per k1 column: inverse transform over k2 with the e^{ik2 b} phase
        for ix in 0..n {
            for iy in 0..n {
                let k2 = grid.wavenumber(iy) as f64;
                col[iy] = spec[iy * n + ix] * Complex64::from_polar(1.0, k2 * shift2);
            }
            inv.process(&mut col);
            for j2 in 0..n {
                mixed[j2 * n + ix] = col[j2];
            }
        }
        // per row: e^{ik1 s(x²)} then inverse transform over k1
        for j2 in 0..n {
            let row = &mut mixed[j2 * n..(j2 + 1) * n];
            for (ix, v) in row.iter_mut().enumerate() {
                let k1 = grid.wavenumber(ix) as f64;
                *v *= Complex64::from_polar(1.0, k1 * shift1[j2]);
            }
            inv.process(row);
            for j1 in 0..n {
                out.comps[c][grid.node_index(&[j1, j2])] = row[j1].re;
            }
        }
    }
    if !out.is_finite() {
        return Err(CoreError::NonFiniteInput);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::h1_norm;
    use approx::assert_abs_diff_eq;

    fn sin_profile(k: i64) -> TrigFieldSpec {
        TrigFieldSpec::sin(0, 1.0, [0, k])
    }

    #[test]
    fn example1_residual_vanishes() {
        let grid = Grid::square(64);
        for k in 1..=3 {
            for c in [0.0, 1.0] {
                let fam = GeodesicFamily::example1(sin_profile(k), c).unwrap();
                let r = geodesic_residual_2d(&fam, grid, 1.0, 0.5).unwrap();
                assert!(r <= 1e-10, "k={k} c={c}: residual {r:.3e}");
            }
        }
    }

    #[test]
    fn example2_residual_vanishes() {
        let grid = Grid::square(64);
        for k in 1..=3 {
            let fam = GeodesicFamily::example2(sin_profile(k)).unwrap();
            let r = geodesic_residual_2d(&fam, grid, 1.0, 0.5).unwrap();
            assert!(r <= 1e-10, "k={k}: residual {r:.3e}");
        }
    }

    #[test]
    fn growing_taylor_green_is_not_a_geodesic() {
        // U = e^t·TG: the rhs bracket still vanishes (rhs is quadratic and TG
        // is steady) but ∂_tU = U, so the defect is exactly ‖U‖₁
        let grid = Grid::square(32);
        let tg = TrigFieldSpec::sin(0, 0.5, [1, 1])
            .plus(TrigFieldSpec::sin(0, 0.5, [1, -1]))
            .plus(TrigFieldSpec::sin(1, -0.5, [1, 1]))
            .plus(TrigFieldSpec::sin(1, 0.5, [1, -1]))
            .to_field(grid);
        let t = 0.3_f64;
        let u = tg.scale(t.exp());
        let defect = geodesic_defect(&u, &u, 1.0).unwrap();
        let expect = h1_norm(&u, 1.0);
        assert!(expect > 1.0);
        assert_abs_diff_eq!(defect, expect, epsilon = 1e-10);
    }

    #[test]
    fn families_preserve_volume_exactly() {
        let grid = Grid::square(32);
        let f1 = GeodesicFamily::example1(sin_profile(2), 1.0).unwrap();
        let f2 = GeodesicFamily::example2(sin_profile(3)).unwrap();
        for t in [0.0, 0.7, 2.5] {
            assert!(f1.volume_defect(grid, t) < 1e-13);
            assert!(f2.volume_defect(grid, t) < 1e-13);
        }
    }

    #[test]
    fn example2_eulerian_velocity_is_profile() {
        let grid = Grid::square(32);
        let fam = GeodesicFamily::example2(sin_profile(2)).unwrap();
        let u = fam.eulerian_velocity(grid).to_samples().unwrap();
        for j2 in 0..grid.n() {
            for j1 in 0..grid.n() {
                let flat = grid.node_index(&[j1, j2]);
                assert_abs_diff_eq!(
                    u.comps[0][flat],
                    (2.0 * grid.node(j2)).sin(),
                    epsilon = 1e-13
                );
                assert_eq!(u.comps[1][flat], 0.0);
            }
        }
    }

    #[test]
    fn shear_composition_matches_direct_evaluation() {
        let grid = Grid::square(32);
        let w = TrigFieldSpec::sin(0, 1.0, [2, 1])
            .plus(TrigFieldSpec::cos(1, -0.5, [1, 3]))
            .to_field(grid);
        let s: Vec<f64> = (0..grid.n()).map(|j| 0.5 * grid.node(j).sin()).collect();
        let b = 0.7;
        let composed = compose_with_shear(&w, &s, b).unwrap();
        for j2 in 0..grid.n() {
            for j1 in 0..grid.n() {
                let x = [grid.node(j1) + s[j2], grid.node(j2) + b];
                let direct = w.eval_at(&x);
                let flat = grid.node_index(&[j1, j2]);
                assert_abs_diff_eq!(composed.comps[0][flat], direct[0], epsilon = 1e-12);
                assert_abs_diff_eq!(composed.comps[1][flat], direct[1], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn zero_shear_composition_is_sampling() {
        let grid = Grid::square(16);
        let w = TrigFieldSpec::sin(0, 1.0, [1, 2]).to_field(grid);
        let composed = compose_with_shear(&w, &vec![0.0; grid.n()], 0.0).unwrap();
        let direct = w.to_samples().unwrap();
        for flat in 0..grid.len() {
            assert_abs_diff_eq!(composed.comps[0][flat], direct.comps[0][flat], epsilon = 1e-13);
        }
    }

    #[test]
    fn non_scalar_profile_rejected() {
        assert!(GeodesicFamily::example2(TrigFieldSpec::sin(0, 1.0, [1, 1])).is_err());
        assert!(GeodesicFamily::example2(TrigFieldSpec::sin(1, 1.0, [0, 1])).is_err());
    }
}
