//! Vector fields on T^1 and T^2 stored as Fourier coefficients.
//!
//! A [`SpectralField`] keeps, per vector component, the coefficients c_k of
//! the expansion f(x) = Σ_k c_k e^{i<k,x>} in the usual FFT layout.  Real
//! fields satisfy c_{-k} = conj(c_k); every operation in this module
//! preserves that symmetry.  The componentwise Laplacian has symbol -|k|²
//! (analysts' sign convention), so the Helmholtz operator H_α = 1 - α²Δ has
//! the positive symbol 1 + α²|k|².

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{CoreError, Result};
use crate::grid::{Grid, TWO_PI};

thread_local! {
    static PLANS: RefCell<HashMap<(usize, bool), Arc<dyn Fft<f64>>>> =
        RefCell::new(HashMap::new());
}

fn plan(n: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    PLANS.with(|cache| {
        cache
            .borrow_mut()
            .entry((n, forward))
            .or_insert_with(|| {
                let dir = if forward {
                    FftDirection::Forward
                } else {
                    FftDirection::Inverse
                };
                FftPlanner::new().plan_fft(n, dir)
            })
            .clone()
    })
}

/// Unnormalized in-place FFT over each axis of an N (1D) or NxN (2D) buffer.
fn fft_nd(grid: &Grid, data: &mut [Complex64], forward: bool) {
    let n = grid.n();
    let fft = plan(n, forward);
    match grid.dim() {
        1 => fft.process(data),
        _ => {
            for row in data.chunks_exact_mut(n) {
                fft.process(row);
            }
            let mut col = vec![Complex64::default(); n];
            for j in 0..n {
                for i in 0..n {
                    col[i] = data[i * n + j];
                }
                fft.process(&mut col);
                for i in 0..n {
                    data[i * n + j] = col[i];
                }
            }
        }
    }
}

/// Real samples of a vector field on the physical nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub grid: Grid,
    /// One sample vector per component, each of length grid.len().
    pub comps: Vec<Vec<f64>>,
}

impl GridField {
    pub fn zeros(grid: Grid) -> Self {
        GridField {
            grid,
            comps: vec![vec![0.0; grid.len()]; grid.dim()],
        }
    }

    /// Fill from a function of the physical coordinates (x¹[, x²]).
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> Vec<f64>) -> Self {
        let mut out = GridField::zeros(grid);
        for flat in 0..grid.len() {
            let (j1, j2) = match grid.dim() {
                1 => (flat, 0),
                _ => (flat % grid.n(), flat / grid.n()),
            };
            let v = f(grid.node(j1), grid.node(j2));
            for (c, val) in v.into_iter().enumerate() {
                out.comps[c][flat] = val;
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(|c| c.iter().all(|v| v.is_finite()))
    }

    pub fn max_abs(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|c| c.iter())
            .fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// A band-limited real vector field on the torus, stored spectrally.
#[derive(Debug, Clone)]
pub struct SpectralField {
    grid: Grid,
    comps: Vec<Vec<Complex64>>,
    div_free: OnceLock<bool>,
}

/// Relative tolerance below which a field counts as divergence-free.
pub const DIV_FREE_TOL: f64 = 1e-12;

impl SpectralField {
    pub fn zeros(grid: Grid) -> Self {
        SpectralField {
            grid,
            comps: vec![vec![Complex64::default(); grid.len()]; grid.dim()],
            div_free: OnceLock::new(),
        }
    }

    /// Forward transform of real samples, normalized so the constant field 1
    /// maps to coefficient 1 at k = 0.  Dealiasing is applied.
    pub fn from_samples(samples: &GridField) -> Result<Self> {
        if !samples.is_finite() {
            return Err(CoreError::NonFiniteInput);
        }
        let grid = samples.grid;
        let norm = 1.0 / grid.len() as f64;
        let mut out = SpectralField::zeros(grid);
        for (c, phys) in samples.comps.iter().enumerate() {
            let mut buf: Vec<Complex64> =
                phys.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            fft_nd(&grid, &mut buf, true);
            for v in buf.iter_mut() {
                *v *= norm;
            }
            out.comps[c] = buf;
        }
        out.dealias();
        out.symmetrize();
        Ok(out)
    }

    /// Enforce c_{-k} = conj(c_k) exactly.  Real input leaves the FFT with a
    /// roundoff-level defect; real-symbol multipliers like 1 + α²|k|² amplify
    /// it by O(k²), so pinning the symmetry here keeps the imaginary residue
    /// of every downstream inverse transform at machine level.
    fn symmetrize(&mut self) {
        let grid = self.grid;
        let n = grid.n();
        let conj_flat = |flat: usize| -> usize {
            match grid.dim() {
                1 => (n - flat) % n,
                _ => ((n - flat / n) % n) * n + (n - flat % n) % n,
            }
        };
        for comp in self.comps.iter_mut() {
            for flat in 0..comp.len() {
                let p = conj_flat(flat);
                if p == flat {
                    comp[flat].im = 0.0;
                } else if p > flat {
                    let avg = 0.5 * (comp[flat] + comp[p].conj());
                    comp[flat] = avg;
                    comp[p] = avg.conj();
                }
            }
        }
        self.div_free = OnceLock::new();
    }

    /// Inverse transform.  The imaginary residue must sit below
    /// 10⁻¹² relative to the field magnitude; it is verified, then discarded.
    pub fn to_samples(&self) -> Result<GridField> {
        let grid = self.grid;
        let mut out = GridField::zeros(grid);
        let mut max_abs: f64 = 0.0;
        let mut max_im: f64 = 0.0;
        for (c, spec) in self.comps.iter().enumerate() {
            let mut buf = spec.clone();
            fft_nd(&grid, &mut buf, false);
            for (dst, v) in out.comps[c].iter_mut().zip(buf.iter()) {
                *dst = v.re;
                max_abs = max_abs.max(v.re.abs());
                max_im = max_im.max(v.im.abs());
            }
        }
        let limit = 1e-12 * max_abs.max(1.0);
        if max_im > limit {
            return Err(CoreError::ImaginaryResidue {
                residue: max_im,
                limit,
            });
        }
        Ok(out)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn coeffs(&self, component: usize) -> &[Complex64] {
        &self.comps[component]
    }

    pub fn coeffs_mut(&mut self, component: usize) -> &mut Vec<Complex64> {
        self.div_free = OnceLock::new();
        &mut self.comps[component]
    }

    /// Coefficient at an explicit wavevector (entries beyond dim ignored).
    pub fn mode(&self, component: usize, k: [i64; 2]) -> Complex64 {
        match self.flat_index(k) {
            Some(i) => self.comps[component][i],
            None => Complex64::default(),
        }
    }

    /// Add `value` to the coefficient at wavevector `k`.  The conjugate mode
    /// is not touched; callers building real fields must set both.
    pub fn add_mode(&mut self, component: usize, k: [i64; 2], value: Complex64) {
        let i = self
            .flat_index(k)
            .expect("wavevector outside the spectral band");
        self.comps[component][i] += value;
        self.div_free = OnceLock::new();
    }

    fn flat_index(&self, k: [i64; 2]) -> Option<usize> {
        let n = self.grid.n() as i64;
        let wrap = |k: i64| -> Option<usize> {
            if k.abs() > n / 2 {
                return None;
            }
            Some(if k >= 0 { k as usize } else { (k + n) as usize })
        };
        match self.grid.dim() {
            1 => wrap(k[0]),
            _ => Some(wrap(k[1])? * self.grid.n() + wrap(k[0])?),
        }
    }

    /// Zero every coefficient outside the alias band.
    pub fn dealias(&mut self) {
        for comp in self.comps.iter_mut() {
            for (flat, v) in comp.iter_mut().enumerate() {
                if !self.grid.in_band(flat) {
                    *v = Complex64::default();
                }
            }
        }
        self.div_free = OnceLock::new();
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|c| c.iter())
            .fold(0.0, |m, v| m.max(v.norm()))
    }

    /// Spectral derivative along `axis`: multiply by i·k_axis.
    pub fn derivative(&self, axis: usize) -> SpectralField {
        assert!(axis < self.grid.dim());
        let mut out = self.clone();
        out.div_free = OnceLock::new();
        for comp in out.comps.iter_mut() {
            for (flat, v) in comp.iter_mut().enumerate() {
                let k = self.grid.wavevector(flat)[axis] as f64;
                *v *= Complex64::new(0.0, k);
            }
        }
        out
    }

    /// Apply a real multiplier m(|k|²) to every coefficient.
    fn multiplier(&self, m: impl Fn(f64) -> f64) -> SpectralField {
        let mut out = self.clone();
        out.div_free = OnceLock::new();
        for comp in out.comps.iter_mut() {
            for (flat, v) in comp.iter_mut().enumerate() {
                *v *= m(self.grid.k_squared(flat));
            }
        }
        out
    }

    /// H_α = 1 - α²Δ, i.e. multiplication by 1 + α²|k|².
    pub fn helmholtz_apply(&self, alpha: f64) -> SpectralField {
        self.multiplier(|k2| 1.0 + alpha * alpha * k2)
    }

    /// Exact inverse of [`helmholtz_apply`]; the symbol never vanishes.
    pub fn helmholtz_inverse(&self, alpha: f64) -> SpectralField {
        self.multiplier(|k2| 1.0 / (1.0 + alpha * alpha * k2))
    }

    /// Componentwise Laplacian Δ (symbol -|k|²).
    pub fn laplacian(&self) -> SpectralField {
        self.multiplier(|k2| -k2)
    }

    /// grad Δ⁻¹ div, the L² projection onto gradients.  The k = 0 mode is
    /// defined as zero (mean flow belongs to the divergence-free part).
    pub fn gradient_part(&self) -> SpectralField {
        assert_eq!(self.grid.dim(), 2, "Hodge split needs a vector field on T^2");
        let mut out = SpectralField::zeros(self.grid);
        for flat in 0..self.grid.len() {
            let k = self.grid.wavevector(flat);
            let k2 = (k[0] * k[0] + k[1] * k[1]) as f64;
            if k2 == 0.0 {
                continue;
            }
            let kv = [k[0] as f64, k[1] as f64];
            let dot = self.comps[0][flat] * kv[0] + self.comps[1][flat] * kv[1];
            out.comps[0][flat] = dot * kv[0] / k2;
            out.comps[1][flat] = dot * kv[1] / k2;
        }
        out
    }

    /// Leray projection P = I - grad Δ⁻¹ div onto divergence-free fields.
    pub fn leray_project(&self) -> SpectralField {
        let q = self.gradient_part();
        let mut out = self.sub(&q);
        out.div_free = OnceLock::new();
        let _ = out.div_free.set(true);
        out
    }

    /// max_k |Σ_a k_a û_a(k)| / max |û|, or 0 for the zero field.
    pub fn max_relative_divergence(&self) -> f64 {
        if self.grid.dim() == 1 {
            // nothing to be divergence-free against on S^1
            return 0.0;
        }
        let scale = self.max_abs_coeff();
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst: f64 = 0.0;
        for flat in 0..self.grid.len() {
            let k = self.grid.wavevector(flat);
            let div = self.comps[0][flat] * Complex64::new(0.0, k[0] as f64)
                + self.comps[1][flat] * Complex64::new(0.0, k[1] as f64);
            worst = worst.max(div.norm());
        }
        worst / scale
    }

    pub fn is_divergence_free(&self) -> bool {
        *self
            .div_free
            .get_or_init(|| self.max_relative_divergence() <= DIV_FREE_TOL)
    }

    /// Largest departure from Hermitian symmetry, relative to the field scale.
    pub fn hermitian_defect(&self) -> f64 {
        let scale = self.max_abs_coeff().max(1e-300);
        let mut worst: f64 = 0.0;
        for comp in &self.comps {
            for flat in 0..self.grid.len() {
                let k = self.grid.wavevector(flat);
                if let Some(j) = self.flat_index([-k[0], -k[1]]) {
                    worst = worst.max((comp[flat] - comp[j].conj()).norm());
                }
            }
        }
        worst / scale
    }

    pub fn add(&self, other: &SpectralField) -> SpectralField {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SpectralField) -> SpectralField {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> SpectralField {
        let mut out = self.clone();
        for comp in out.comps.iter_mut() {
            for v in comp.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    /// self + s * other.
    pub fn axpy(&self, s: f64, other: &SpectralField) -> SpectralField {
        self.zip(other, |a, b| a + b * s)
    }

    fn zip(
        &self,
        other: &SpectralField,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> SpectralField {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        let mut out = SpectralField::zeros(self.grid);
        for c in 0..self.grid.dim() {
            for flat in 0..self.grid.len() {
                out.comps[c][flat] = f(self.comps[c][flat], other.comps[c][flat]);
            }
        }
        out
    }

    /// Evaluate the Fourier sum at an arbitrary point (spectrally accurate
    /// trigonometric interpolation).  O(N^dim) per call.
    pub fn eval_at(&self, x: &[f64]) -> Vec<f64> {
        let n = self.grid.n();
        let mut out = vec![0.0; self.grid.dim()];
        match self.grid.dim() {
            1 => {
                for (c, comp) in self.comps.iter().enumerate() {
                    let mut acc = Complex64::default();
                    for (flat, v) in comp.iter().enumerate() {
                        if v.norm_sqr() == 0.0 {
                            continue;
                        }
                        let k = self.grid.wavenumber(flat) as f64;
                        acc += v * Complex64::new(0.0, k * x[0]).exp();
                    }
                    out[c] = acc.re;
                }
            }
            _ => {
                for (c, comp) in self.comps.iter().enumerate() {
                    let mut acc = Complex64::default();
                    for flat in 0..n * n {
                        let v = comp[flat];
                        if v.norm_sqr() == 0.0 {
                            continue;
                        }
                        let k = self.grid.wavevector(flat);
                        let phase = k[0] as f64 * x[0] + k[1] as f64 * x[1];
                        acc += v * Complex64::new(0.0, phase).exp();
                    }
                    out[c] = acc.re;
                }
            }
        }
        out
    }
}

/// ⟨X,Y⟩_{L²} + α²⟨∇X,∇Y⟩_{L²}, evaluated exactly in Fourier space.
pub fn h1_inner(x: &SpectralField, y: &SpectralField, alpha: f64) -> Result<f64> {
    if x.grid != y.grid {
        return Err(CoreError::GridMismatch);
    }
    let vol = TWO_PI.powi(x.grid.dim() as i32);
    let mut sum = 0.0;
    for c in 0..x.grid.dim() {
        for flat in 0..x.grid.len() {
            let w = 1.0 + alpha * alpha * x.grid.k_squared(flat);
            sum += w * (x.comps[c][flat] * y.comps[c][flat].conj()).re;
        }
    }
    Ok(vol * sum)
}

/// Plain L² inner product (h1_inner at α = 0).
pub fn l2_inner(x: &SpectralField, y: &SpectralField) -> Result<f64> {
    h1_inner(x, y, 0.0)
}

pub fn h1_norm(x: &SpectralField, alpha: f64) -> f64 {
    h1_inner(x, x, alpha).expect("same field").max(0.0).sqrt()
}

pub fn l2_norm(x: &SpectralField) -> f64 {
    h1_norm(x, 0.0)
}

/// Forward transform of a scalar sample vector (length grid.len()).
pub fn scalar_to_spectral(grid: &Grid, samples: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_nd(grid, &mut buf, true);
    let norm = 1.0 / grid.len() as f64;
    for (flat, v) in buf.iter_mut().enumerate() {
        *v *= norm;
        if !grid.in_band(flat) {
            *v = Complex64::default();
        }
    }
    buf
}

/// Inverse transform of scalar coefficients; imaginary residue discarded.
pub fn scalar_to_physical(grid: &Grid, spec: &[Complex64]) -> Vec<f64> {
    let mut buf = spec.to_vec();
    fft_nd(grid, &mut buf, false);
    buf.into_iter().map(|v| v.re).collect()
}

/// Physical-space product of two sampled fields, transformed and dealiased.
pub fn pointwise_product(a: &GridField, b: &GridField) -> Result<SpectralField> {
    if a.grid != b.grid {
        return Err(CoreError::GridMismatch);
    }
    let mut prod = GridField::zeros(a.grid);
    for c in 0..a.grid.dim() {
        for i in 0..a.grid.len() {
            prod.comps[c][i] = a.comps[c][i] * b.comps[c][i];
        }
    }
    SpectralField::from_samples(&prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn sin_x1(grid: Grid) -> SpectralField {
        let f = GridField::from_fn(grid, |x1, _| {
            let mut v = vec![0.0; grid.dim()];
            v[0] = x1.sin();
            v
        });
        SpectralField::from_samples(&f).unwrap()
    }

    #[test]
    fn dc_mode() {
        let grid = Grid::square(16);
        let f = GridField::from_fn(grid, |_, _| vec![2.5, 0.0]);
        let s = SpectralField::from_samples(&f).unwrap();
        assert_abs_diff_eq!(s.mode(0, [0, 0]).re, 2.5, epsilon = 1e-14);
        assert_abs_diff_eq!(s.mode(0, [0, 0]).im, 0.0, epsilon = 1e-14);
        let total: f64 = s.comps.iter().flatten().map(|v| v.norm()).sum();
        assert_abs_diff_eq!(total, 2.5, epsilon = 1e-13);
    }

    #[test]
    fn single_mode_identity() {
        let grid = Grid::square(16);
        let s = sin_x1(grid);
        // sin(x¹) = (e^{ix¹} - e^{-ix¹}) / 2i → coefficients ∓i/2 at k = ±1
        assert_abs_diff_eq!(s.mode(0, [1, 0]).im, -0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(s.mode(0, [-1, 0]).im, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(s.mode(0, [1, 0]).re, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn non_finite_rejected() {
        let grid = Grid::line(8);
        let mut f = GridField::zeros(grid);
        f.comps[0][3] = f64::NAN;
        assert!(matches!(
            SpectralField::from_samples(&f),
            Err(CoreError::NonFiniteInput)
        ));
    }

    #[test]
    fn cos_from_conjugate_pair() {
        let grid = Grid::square(16);
        let mut s = SpectralField::zeros(grid);
        s.add_mode(0, [1, 0], Complex64::new(0.5, 0.0));
        s.add_mode(0, [-1, 0], Complex64::new(0.5, 0.0));
        let phys = s.to_samples().unwrap();
        for j in 0..16 {
            let x = grid.node(j);
            assert_abs_diff_eq!(phys.comps[0][j], x.cos(), epsilon = 1e-14);
        }
    }

    #[test]
    fn derivative_examples() {
        let grid = Grid::square(16);
        let d = sin_x1(grid).derivative(0);
        let phys = d.to_samples().unwrap();
        for j in 0..16 {
            assert_abs_diff_eq!(phys.comps[0][j], grid.node(j).cos(), epsilon = 1e-13);
        }
        // derivative along x² of an x²-independent field vanishes
        assert_eq!(sin_x1(grid).derivative(1).max_abs_coeff(), 0.0);

        // d/dx¹ cos(3x¹) = -3 sin(3x¹)
        let c3 = GridField::from_fn(grid, |x1, _| vec![(3.0 * x1).cos(), 0.0]);
        let d3 = SpectralField::from_samples(&c3).unwrap().derivative(0);
        let phys = d3.to_samples().unwrap();
        for j in 0..16 {
            assert_abs_diff_eq!(
                phys.comps[0][j],
                -3.0 * (3.0 * grid.node(j)).sin(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn helmholtz_examples() {
        let grid = Grid::square(16);
        let s = sin_x1(grid);
        // α = 0 is the identity
        let same = s.helmholtz_inverse(0.0);
        assert_abs_diff_eq!(
            same.sub(&s).max_abs_coeff(),
            0.0,
            epsilon = 1e-15
        );
        // sin(x¹) with α = 1: multiplier 1/(1 + 1) = 1/2
        let half = s.helmholtz_inverse(1.0);
        assert_abs_diff_eq!(half.mode(0, [1, 0]).im, -0.25, epsilon = 1e-14);
        // constants are untouched
        let c = GridField::from_fn(grid, |_, _| vec![3.0, -1.0]);
        let c = SpectralField::from_samples(&c).unwrap();
        assert_abs_diff_eq!(
            c.helmholtz_inverse(2.0).sub(&c).max_abs_coeff(),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn leray_pure_gradient_killed() {
        let grid = Grid::square(16);
        // grad cos(x¹) = (-sin x¹, 0)
        let g = GridField::from_fn(grid, |x1, _| vec![-x1.sin(), 0.0]);
        let g = SpectralField::from_samples(&g).unwrap();
        assert!(g.leray_project().max_abs_coeff() < 1e-14);
    }

    #[test]
    fn leray_keeps_divergence_free() {
        let grid = Grid::square(16);
        let f = GridField::from_fn(grid, |_, x2| vec![x2.sin(), 0.0]);
        let f = SpectralField::from_samples(&f).unwrap();
        let p = f.leray_project();
        assert!(p.sub(&f).max_abs_coeff() < 1e-14);
        assert!(f.is_divergence_free());
    }

    #[test]
    fn leray_oblique_mode() {
        // V = (sin(x¹+x²), 0): multiplier I - kkᵗ/|k|² at k = (1,1)
        let grid = Grid::square(16);
        let f = GridField::from_fn(grid, |x1, x2| vec![(x1 + x2).sin(), 0.0]);
        let p = SpectralField::from_samples(&f).unwrap().leray_project();
        let phys = p.to_samples().unwrap();
        for flat in 0..grid.len() {
            let (j1, j2) = (flat % 16, flat / 16);
            let s = 0.5 * (grid.node(j1) + grid.node(j2)).sin();
            assert_abs_diff_eq!(phys.comps[0][flat], s, epsilon = 1e-13);
            assert_abs_diff_eq!(phys.comps[1][flat], -s, epsilon = 1e-13);
        }
    }

    #[test]
    fn h1_inner_sin_field() {
        let grid = Grid::square(32);
        let s = sin_x1(grid);
        // L² part 2π², gradient part 2π² at α = 1
        let val = h1_inner(&s, &s, 1.0).unwrap();
        assert_abs_diff_eq!(val, 4.0 * PI * PI, epsilon = 1e-10);
        let z = SpectralField::zeros(grid);
        assert_eq!(h1_inner(&z, &s, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn grid_mismatch_rejected() {
        let a = SpectralField::zeros(Grid::square(16));
        let b = SpectralField::zeros(Grid::square(32));
        assert!(matches!(
            h1_inner(&a, &b, 1.0),
            Err(CoreError::GridMismatch)
        ));
    }

    #[test]
    fn product_identity() {
        // sin(x¹)·cos(x¹) = sin(2x¹)/2
        let grid = Grid::square(16);
        let a = GridField::from_fn(grid, |x1, _| vec![x1.sin(), 1.0]);
        let b = GridField::from_fn(grid, |x1, _| vec![x1.cos(), 1.0]);
        let p = pointwise_product(&a, &b).unwrap();
        assert_abs_diff_eq!(p.mode(0, [2, 0]).im, -0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(p.mode(1, [0, 0]).re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn product_of_high_modes_dealiased() {
        // N = 32 keeps |k| <= 10; sin(10x)cos(10x) lands only on k = 20
        let grid = Grid::square(32);
        let a = GridField::from_fn(grid, |x1, _| vec![(10.0 * x1).sin(), 0.0]);
        let b = GridField::from_fn(grid, |x1, _| vec![(10.0 * x1).cos(), 0.0]);
        assert!(SpectralField::from_samples(&a).unwrap().max_abs_coeff() > 0.4);
        // the k = ±20 content aliases onto ∓12, which the cutoff removes
        let p = pointwise_product(&a, &b).unwrap();
        assert!(p.max_abs_coeff() < 1e-14);
    }

    #[test]
    fn eval_at_matches_samples() {
        let grid = Grid::line(16);
        let f = GridField::from_fn(grid, |x1, _| vec![x1.sin() + 0.3 * (2.0 * x1).cos()]);
        let s = SpectralField::from_samples(&f).unwrap();
        for j in 0..16 {
            let x = grid.node(j) + 0.123;
            let expect = x.sin() + 0.3 * (2.0 * x).cos();
            assert_abs_diff_eq!(s.eval_at(&[x])[0], expect, epsilon = 1e-12);
        }
    }
}
