//! Numerical laboratory for averaged-Euler (Euler-α) flows and the geometry
//! of the H¹ right-invariant metric on diffeomorphism groups of flat tori.
//!
//! The crate is organized around two pictures of the same dynamics:
//!
//! * the Eulerian side ([`euler2d`]): a pseudo-spectral method-of-lines
//!   solver for the averaged-Euler equations on T², built on the Fourier
//!   kernels in [`field`];
//! * the Lagrangian side ([`geodesic1d`], [`families`]): geodesic spray
//!   integration on Diff(S¹) and the closed-form pressure-constant geodesic
//!   families on T².
//!
//! On top of these sit the curvature stack ([`curvature`]) and Jacobi-field
//! stability diagnostics ([`jacobi`]).
//!
//! Sign conventions, fixed once for the whole crate: Δ is the componentwise
//! analysts' Laplacian with Fourier symbol -|k|², the Helmholtz operator is
//! H_α = 1 - α²Δ (symbol 1 + α²|k|²), and ∇* is the negative matrix
//! divergence (∇*τ)_n = -∂_j τ_{jn}.

pub mod curvature;
pub mod error;
pub mod euler2d;
pub mod families;
pub mod field;
pub mod geodesic1d;
pub mod grid;
pub mod jacobi;
pub mod random;
pub mod trig;

pub use error::{CoreError, Result};
pub use field::{h1_inner, h1_norm, l2_inner, l2_norm, GridField, SpectralField};
pub use grid::Grid;
pub use trig::TrigFieldSpec;
