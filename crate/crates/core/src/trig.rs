//! Exact symbolic trigonometric vector fields.
//!
//! A spec is a finite sum of terms a·sin(<k,x>) or a·cos(<k,x>) placed in one
//! vector component.  Conversion to a [`SpectralField`] writes each term into
//! its two conjugate Fourier modes and is therefore exact: no quadrature is
//! involved.

use num_complex::Complex64;

use crate::field::SpectralField;
use crate::grid::Grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Sin,
    Cos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigTerm {
    pub component: usize,
    pub amplitude: f64,
    pub wavevector: [i64; 2],
    pub phase: Phase,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigFieldSpec {
    pub terms: Vec<TrigTerm>,
}

impl TrigFieldSpec {
    pub fn new(terms: Vec<TrigTerm>) -> Self {
        TrigFieldSpec { terms }
    }

    /// a·sin(<k,x>) in the given component.
    pub fn sin(component: usize, amplitude: f64, wavevector: [i64; 2]) -> Self {
        TrigFieldSpec::new(vec![TrigTerm {
            component,
            amplitude,
            wavevector,
            phase: Phase::Sin,
        }])
    }

    /// a·cos(<k,x>) in the given component.
    pub fn cos(component: usize, amplitude: f64, wavevector: [i64; 2]) -> Self {
        TrigFieldSpec::new(vec![TrigTerm {
            component,
            amplitude,
            wavevector,
            phase: Phase::Cos,
        }])
    }

    /// A constant field in the given component (wavevector 0 cosine).
    pub fn constant(component: usize, value: f64) -> Self {
        TrigFieldSpec::cos(component, value, [0, 0])
    }

    pub fn plus(mut self, other: TrigFieldSpec) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.amplitude == 0.0)
    }

    /// Exact conversion: each term occupies its two conjugate modes.
    pub fn to_field(&self, grid: Grid) -> SpectralField {
        let mut out = SpectralField::zeros(grid);
        let cut = grid.alias_cutoff();
        for t in &self.terms {
            assert!(t.component < grid.dim(), "component out of range");
            let k = t.wavevector;
            assert!(
                k[0].abs() <= cut && k[1].abs() <= cut && (grid.dim() == 2 || k[1] == 0),
                "trig term outside the spectral band"
            );
            if k == [0, 0] {
                if t.phase == Phase::Cos {
                    out.add_mode(t.component, k, Complex64::new(t.amplitude, 0.0));
                }
                // sin(0) contributes nothing
                continue;
            }
            let half = 0.5 * t.amplitude;
            match t.phase {
                Phase::Cos => {
                    out.add_mode(t.component, k, Complex64::new(half, 0.0));
                    out.add_mode(t.component, [-k[0], -k[1]], Complex64::new(half, 0.0));
                }
                Phase::Sin => {
                    out.add_mode(t.component, k, Complex64::new(0.0, -half));
                    out.add_mode(t.component, [-k[0], -k[1]], Complex64::new(0.0, half));
                }
            }
        }
        out
    }

    /// Read a band-limited field back into canonical trig terms.  Exact for
    /// fields that came from a spec; lossy only through an explicit drop
    /// tolerance for coefficients at roundoff level.
    pub fn from_field(field: &SpectralField, drop_below: f64) -> TrigFieldSpec {
        let grid = field.grid();
        let mut terms = Vec::new();
        for component in 0..grid.dim() {
            for flat in 0..grid.len() {
                let k = grid.wavevector(flat);
                // canonical representative: k1 > 0, or k1 == 0 and k2 >= 0
                if k[0] < 0 || (k[0] == 0 && k[1] < 0) {
                    continue;
                }
                let c = field.mode(component, [k[0], k[1]]);
                if k == [0, 0] {
                    if c.re.abs() > drop_below {
                        terms.push(TrigTerm {
                            component,
                            amplitude: c.re,
                            wavevector: [0, 0],
                            phase: Phase::Cos,
                        });
                    }
                    continue;
                }
                let cos_amp = 2.0 * c.re;
                let sin_amp = -2.0 * c.im;
                if cos_amp.abs() > drop_below {
                    terms.push(TrigTerm {
                        component,
                        amplitude: cos_amp,
                        wavevector: [k[0], k[1]],
                        phase: Phase::Cos,
                    });
                }
                if sin_amp.abs() > drop_below {
                    terms.push(TrigTerm {
                        component,
                        amplitude: sin_amp,
                        wavevector: [k[0], k[1]],
                        phase: Phase::Sin,
                    });
                }
            }
        }
        TrigFieldSpec::new(terms)
    }

    /// Pointwise evaluation straight from the symbolic terms.
    pub fn eval(&self, x: &[f64; 2], dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for t in &self.terms {
            let phase = t.wavevector[0] as f64 * x[0] + t.wavevector[1] as f64 * x[1];
            out[t.component] += match t.phase {
                Phase::Sin => t.amplitude * phase.sin(),
                Phase::Cos => t.amplitude * phase.cos(),
            };
        }
        out
    }
}

impl std::fmt::Display for TrigFieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let name = match t.phase {
                Phase::Sin => "sin",
                Phase::Cos => "cos",
            };
            write!(
                f,
                "{}*{}({},{})@c{}",
                t.amplitude, name, t.wavevector[0], t.wavevector[1], t.component
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sin_occupies_two_conjugate_modes() {
        let grid = Grid::square(16);
        let s = TrigFieldSpec::sin(0, 2.0, [1, 0]).to_field(grid);
        assert_abs_diff_eq!(s.mode(0, [1, 0]).im, -1.0, epsilon = 0.0);
        assert_abs_diff_eq!(s.mode(0, [-1, 0]).im, 1.0, epsilon = 0.0);
        assert_eq!(s.hermitian_defect(), 0.0);
    }

    #[test]
    fn matches_pointwise_samples_exactly() {
        let grid = Grid::square(16);
        let spec = TrigFieldSpec::sin(0, 1.0, [2, 1]).plus(TrigFieldSpec::cos(1, -0.5, [0, 3]));
        let field = spec.to_field(grid);
        let phys = field.to_samples().unwrap();
        for j2 in 0..16 {
            for j1 in 0..16 {
                let x = [grid.node(j1), grid.node(j2)];
                let v = spec.eval(&x, 2);
                let flat = grid.node_index(&[j1, j2]);
                assert_abs_diff_eq!(phys.comps[0][flat], v[0], epsilon = 1e-13);
                assert_abs_diff_eq!(phys.comps[1][flat], v[1], epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn roundtrip_is_exact_within_band() {
        let grid = Grid::square(16);
        let spec = TrigFieldSpec::sin(0, 0.75, [3, -2])
            .plus(TrigFieldSpec::cos(1, 1.25, [1, 4]))
            .plus(TrigFieldSpec::constant(0, -0.25));
        let field = spec.to_field(grid);
        let back = TrigFieldSpec::from_field(&field, 0.0);
        let field2 = back.to_field(grid);
        assert_eq!(field2.sub(&field).max_abs_coeff(), 0.0);
        // and a canonical spec comes back literally
        let canonical = TrigFieldSpec::from_field(&TrigFieldSpec::sin(0, 0.75, [3, 2]).to_field(grid), 0.0);
        assert_eq!(canonical.terms.len(), 1);
        assert_eq!(canonical.terms[0].amplitude, 0.75);
        assert_eq!(canonical.terms[0].phase, Phase::Sin);
    }

    #[test]
    #[should_panic]
    fn out_of_band_term_rejected() {
        TrigFieldSpec::sin(0, 1.0, [11, 0]).to_field(Grid::square(32)).max_abs_coeff();
    }
}
