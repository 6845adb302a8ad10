//! Periodic grids on the flat torus, side length 2π per axis.
//!
//! Physical nodes are x_j = 2πj/N, j = 0..N-1 (endpoint excluded).
//! Wavenumbers follow the usual FFT layout: index i maps to
//! k = i for i <= N/2 and k = i - N otherwise.

use std::f64::consts::PI;

pub const TWO_PI: f64 = 2.0 * PI;

/// Fraction of the Nyquist band retained after dealiasing (the 2/3 rule).
pub const DEFAULT_ALIAS_RULE: f64 = 2.0 / 3.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    n: usize,
    alias_rule: f64,
}

impl Grid {
    pub fn new(dim: usize, n_points_per_axis: usize) -> Self {
        Self::with_alias_rule(dim, n_points_per_axis, DEFAULT_ALIAS_RULE)
    }

    pub fn with_alias_rule(dim: usize, n: usize, alias_rule: f64) -> Self {
        assert!(dim == 1 || dim == 2, "only T^1 and T^2 are supported");
        assert!(n >= 8 && n % 2 == 0, "need an even grid with N >= 8");
        assert!(alias_rule > 0.0 && alias_rule <= 1.0);
        Grid { dim, n, alias_rule }
    }

    pub fn line(n: usize) -> Self {
        Grid::new(1, n)
    }

    pub fn square(n: usize) -> Self {
        Grid::new(2, n)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of physical nodes, N^dim.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        TWO_PI / self.n as f64
    }

    /// Largest |k| kept per axis by the alias rule.
    pub fn alias_cutoff(&self) -> i64 {
        (self.alias_rule * (self.n / 2) as f64).floor() as i64
    }

    /// Wavenumber along one axis for FFT index i.
    pub fn wavenumber(&self, i: usize) -> i64 {
        if i <= self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Physical coordinate of node j along one axis.
    pub fn node(&self, j: usize) -> f64 {
        TWO_PI * j as f64 / self.n as f64
    }

    /// Flattened index of a physical node; `idx` has one entry per axis.
    pub fn node_index(&self, idx: &[usize]) -> usize {
        match self.dim {
            1 => idx[0],
            _ => idx[1] * self.n + idx[0],
        }
    }

    /// Wavevector of the flattened spectral index, one entry per axis.
    pub fn wavevector(&self, flat: usize) -> [i64; 2] {
        match self.dim {
            1 => [self.wavenumber(flat), 0],
            _ => [self.wavenumber(flat % self.n), self.wavenumber(flat / self.n)],
        }
    }

    /// |k|² of the flattened spectral index.
    pub fn k_squared(&self, flat: usize) -> f64 {
        let k = self.wavevector(flat);
        (k[0] * k[0] + k[1] * k[1]) as f64
    }

    pub fn in_band(&self, flat: usize) -> bool {
        let cut = self.alias_cutoff();
        let k = self.wavevector(flat);
        k[0].abs() <= cut && k[1].abs() <= cut
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavenumber_layout() {
        let g = Grid::line(8);
        let ks: Vec<i64> = (0..8).map(|i| g.wavenumber(i)).collect();
        assert_eq!(ks, vec![0, 1, 2, 3, 4, -3, -2, -1]);
    }

    #[test]
    fn alias_cutoff_two_thirds() {
        assert_eq!(Grid::line(16).alias_cutoff(), 5);
        assert_eq!(Grid::square(32).alias_cutoff(), 10);
        assert_eq!(Grid::square(64).alias_cutoff(), 21);
    }

    #[test]
    fn wavevector_2d() {
        let g = Grid::square(8);
        assert_eq!(g.wavevector(0), [0, 0]);
        assert_eq!(g.wavevector(1), [1, 0]);
        assert_eq!(g.wavevector(8), [0, 1]);
        assert_eq!(g.wavevector(8 * 8 - 1), [-1, -1]);
    }

    #[test]
    #[should_panic]
    fn odd_grid_rejected() {
        Grid::line(9);
    }
}
