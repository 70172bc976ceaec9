//! Causal solutions of the damped linearized 1D Vlasov equation, the induced
//! plasma current, and the conductivity operator obtained by the limiting
//! absorption principle.
//!
//! The library works with a prescribed Schwartz-class electric field E(t,x)
//! and a uniform kinetic equilibrium F(v). The damped transport equation
//!
//! ```text
//! ∂t f_ν + ν f_ν + v ∂x f_ν = -(q/m) E F'(v),   ν > 0
//! ```
//!
//! has exactly one tempered solution, the backward-characteristic integral
//!
//! ```text
//! f_ν(t,x,v) = -(q/m) F'(v) ∫_{-∞}^t e^{-ν(t-s)} E(s, x - v(t-s)) ds,
//! ```
//!
//! and ν → 0⁺ selects the causal response of the undamped problem. The
//! induced current j = q ∫ v f dv defines the conductivity operator σ: its
//! Fourier symbol is a velocity integral for ν > 0 and, in the limit, a
//! Hilbert-transform expression evaluated at the resonance v = ω/k. A smooth
//! cutoff near k = 0 splits σ into a Fourier multiplier plus a remainder
//! pairing; the total is independent of the cutoff scale.
//!
//! Modules:
//! - [`kinetics`]: species, equilibria, perturbing fields, grids;
//! - [`causal`]: characteristic integrals, PDE residuals, currents, ν-sweeps;
//! - [`hilbert`]: principal-value Hilbert transform and the Dawson function;
//! - [`conductivity`]: σ̂_ν, σ̂_ph, cutoff decomposition, DFT multipliers;
//! - [`model_problem`]: the scalar ∂t u + νu = v case study with closed forms;
//! - [`spectral`]: DFT helpers under the e^{iωt - ikx} convention;
//! - [`quadrature`]: adaptive Gauss–Kronrod and Simpson engines;
//! - [`report`]: CSV emission for probe tables, symbols, and grids.

pub mod causal;
pub mod conductivity;
pub mod error;
pub mod hilbert;
pub mod kinetics;
pub mod model_problem;
pub mod quadrature;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
