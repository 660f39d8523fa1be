//! Topological recursion on `x(z) = z(1 − z^a)`, `y(z) = z^{a−1}/(z^a − 1)`
//! with `ω_{0,1} = −y dx`, `ω_{0,2} = dz₁dz₂/(z₁ − z₂)²`, and comparison of
//! the x-expansions of `ω_{g,n}` with `∏μ_i · H_{g,n}(μ)`.
//!
//! Branch points are irrational, so stable correlators are computed in
//! multi-precision complex arithmetic and certified by rational
//! reconstruction. `ω_{0,1}` is exact.

mod curve;
mod expansion;
mod frame;
mod recursion;
mod report;

pub use curve::{branch_points, SpectralCurve};
pub use expansion::{correlator, grid, omega01_exact, CorrelatorExpansion};
pub use frame::{conjugate_residual, local_conjugate};
pub use recursion::{pole_bound, Omega, Recursion};
pub use report::{
    check_conjecture, check_spectral_from_f01, compare, ConjectureEntry, ConjectureReport, SpectralReport, CONVENTION,
};
