//! Seeded band-limited random fields for tests and experiment presets.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::SpectralField;
use crate::grid::Grid;

/// Random real field with independent coefficients on |k|_∞ <= k_max and a
/// mild spectral decay.  Deterministic in the seed.
pub fn random_band_limited(grid: Grid, k_max: i64, seed: u64) -> SpectralField {
    let k_max = k_max.min(grid.alias_cutoff());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SpectralField::zeros(grid);
    let dim = grid.dim();
    for component in 0..dim {
        for k1 in 0..=k_max {
            let k2_range: Vec<i64> = if dim == 1 {
                vec![0]
            } else {
                (-k_max..=k_max).collect()
            };
            for &k2 in &k2_range {
                // canonical half-space; the conjugate mode is implied
                if k1 == 0 && k2 < 0 {
                    continue;
                }
                let re: f64 = rng.random_range(-1.0..1.0);
                let im: f64 = rng.random_range(-1.0..1.0);
                let k2norm = (k1 * k1 + k2 * k2) as f64;
                let decay = 1.0 / (1.0 + k2norm);
                let c = Complex64::new(re, im) * decay;
                if k1 == 0 && k2 == 0 {
                    out.add_mode(component, [0, 0], Complex64::new(re * decay, 0.0));
                    continue;
                }
                out.add_mode(component, [k1, k2], c);
                out.add_mode(component, [-k1, -k2], c.conj());
            }
        }
    }
    out
}

/// Divergence-free variant: the same field pushed through the Leray
/// projection, with zero mean.
pub fn random_divergence_free(grid: Grid, k_max: i64, seed: u64) -> SpectralField {
    assert_eq!(grid.dim(), 2);
    let mut f = random_band_limited(grid, k_max, seed).leray_project();
    // remove the mean flow so energies are dominated by the dynamics
    for c in 0..2 {
        f.coeffs_mut(c)[0] = Complex64::default();
    }
    let mut out = f.leray_project();
    out.dealias();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DIV_FREE_TOL;

    #[test]
    fn deterministic_in_seed() {
        let grid = Grid::square(32);
        let a = random_band_limited(grid, 5, 7);
        let b = random_band_limited(grid, 5, 7);
        assert_eq!(a.sub(&b).max_abs_coeff(), 0.0);
        let c = random_band_limited(grid, 5, 8);
        assert!(c.sub(&a).max_abs_coeff() > 0.0);
    }

    #[test]
    fn projected_field_is_divergence_free() {
        let grid = Grid::square(32);
        let f = random_divergence_free(grid, 6, 1);
        assert!(f.max_relative_divergence() <= DIV_FREE_TOL);
        assert!(f.hermitian_defect() < 1e-14);
    }
}
