//! Conductivity symbols and the cutoff decomposition of the conductivity
//! operator.
//!
//! For ν > 0 the symbol is the velocity integral
//!
//! ```text
//! σ̂_ν(ω,k) = -i (q²/m) ∫ v F'(v) / (ω - kv + iν) dv,
//! ```
//!
//! whose ν → 0⁺ limit exists pointwise for k ≠ 0:
//!
//! ```text
//! σ̂_ph(ω,k) = -i (ω_p²/4π) [ (π/k) ℋ(G)(ω/k) - i (π/|k|) G(ω/k) ],
//! G(v) = v F'(v) / n.
//! ```
//!
//! The |k| in the Landau (G) term makes the k < 0 branch agree with the
//! ν → 0⁺ limit of σ̂_ν and preserves both the reality condition and
//! Re σ̂_ph >= 0; the variant with 1/k in that term fails all three for
//! k < 0, and `symbol_convergence_sweep` checks exactly that discrimination.
//!
//! A smooth cutoff χ(kλ) splits σ into the Fourier multiplier
//! (1 - χ(kλ)) σ̂_ph and a remainder pairing concentrated near k = 0; their
//! sum is independent of the scale λ.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hilbert::{hilbert, hilbert_generic, HilbertInterpolant, PvIntegrandSpec};
use crate::kinetics::{EquilibriumDistribution, FieldPerturbation, SpaceTimeGrid};
use crate::quadrature::{integrate_adaptive, AdaptiveParams};
use crate::spectral::Dft2d;

/// Quadrature controls for σ̂_ν evaluations.
#[derive(Debug, Clone, Copy)]
pub struct SymbolQuadrature {
    pub params: AdaptiveParams,
}

impl Default for SymbolQuadrature {
    fn default() -> Self {
        Self {
            params: AdaptiveParams { abs_tol: 1e-11, rel_tol: 1e-9, max_subdivisions: 40_000 },
        }
    }
}

/// σ̂_ν(ω, k) for ν > 0 by adaptive complex quadrature over the truncated
/// velocity window. The Lorentzian resonance at v = ω/k (width ν/|k|) is
/// pre-seeded with panels no wider than a quarter of its width.
pub fn sigma_nu(
    eq: &EquilibriumDistribution,
    omega: f64,
    k: f64,
    nu: f64,
    quad: &SymbolQuadrature,
) -> Result<Complex64> {
    if !(nu > 0.0) {
        return Err(Error::invalid("nu", format!("must be > 0, got {nu}")));
    }
    let species = eq.species();
    let coeff = Complex64::new(0.0, -species.charge() * species.charge() / species.mass());

    let resonance = (k.abs() > 1e-300).then(|| omega / k);
    let half = eq.velocity_half_width(resonance);

    let mut breakpoints = Vec::new();
    if let Some(u) = resonance {
        let width = nu / k.abs();
        let span = 10.0 * width;
        let step = (width * 0.25).max(span * 1e-6);
        let n = ((2.0 * span) / step).ceil() as usize;
        for i in 0..=n {
            breakpoints.push(u - span + i as f64 * step);
        }
    }

    let integral = integrate_adaptive(
        |v: f64| {
            let num = v * eq.df(v);
            Complex64::new(num, 0.0) / Complex64::new(omega - k * v, nu)
        },
        -half,
        half,
        &breakpoints,
        &quad.params,
    )?;
    Ok(coeff * integral)
}

/// σ̂_ph(ω, k) by direct principal-value quadrature of ℋ(G)(ω/k).
/// Undefined at k = 0.
pub fn sigma_ph(eq: &EquilibriumDistribution, omega: f64, k: f64) -> Result<Complex64> {
    if k == 0.0 {
        return Err(Error::SymbolUndefinedAtKZero);
    }
    let u = omega / k;
    let vt = eq.species().thermal_speed();
    let spec = PvIntegrandSpec::auto(u.abs() + 16.0 * vt)?;
    let h = hilbert(|v| eq.g(v), u, &spec).value;
    Ok(sigma_ph_from_parts(eq, k, eq.g(u), h))
}

/// Assembles σ̂_ph from G(u) and ℋ(G)(u):
/// Re = -(ω_p²/4) G(u)/|k|, Im = -(ω_p²/4) ℋ(G)(u)/k.
fn sigma_ph_from_parts(eq: &EquilibriumDistribution, k: f64, g_u: f64, h_u: f64) -> Complex64 {
    let c = eq.species().plasma_frequency_sq() / (4.0 * PI);
    Complex64::new(-c * PI * g_u / k.abs(), -c * PI * h_u / k)
}

/// The same expression with the Landau term divided by k instead of |k|.
/// Wrong for k < 0; kept so the convention can be discriminated numerically.
fn sigma_ph_printed_variant(eq: &EquilibriumDistribution, omega: f64, k: f64) -> Result<Complex64> {
    let signed = sigma_ph(eq, omega, k)?;
    Ok(Complex64::new(signed.re * k.signum(), signed.im))
}

/// Which symbol a [`ConductivitySymbol`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolKind {
    /// σ̂_ν with the given ν > 0.
    Regularized { nu: f64 },
    /// The ν → 0⁺ limit σ̂_ph, defined for k ≠ 0.
    Limiting,
}

/// A conductivity symbol bound to an equilibrium. The limiting kind carries
/// ℋ(G) precomputed on a dense grid so that whole-grid multiplier fills cost
/// one table lookup per mode; [`sigma_ph`] stays available for spot checks.
pub struct ConductivitySymbol {
    kind: SymbolKind,
    equilibrium: EquilibriumDistribution,
    quad: SymbolQuadrature,
    hilbert_g: Option<HilbertInterpolant>,
}

impl ConductivitySymbol {
    pub fn regularized(equilibrium: EquilibriumDistribution, nu: f64) -> Result<Self> {
        if !(nu > 0.0) {
            return Err(Error::invalid("nu", format!("must be > 0, got {nu}")));
        }
        Ok(Self {
            kind: SymbolKind::Regularized { nu },
            equilibrium,
            quad: SymbolQuadrature::default(),
            hilbert_g: None,
        })
    }

    pub fn limiting(equilibrium: EquilibriumDistribution) -> Result<Self> {
        let vt = equilibrium.species().thermal_speed();
        let spec = PvIntegrandSpec::auto(48.0 * vt)?;
        let moments = [
            equilibrium.g_moment(0),
            equilibrium.g_moment(2),
            equilibrium.g_moment(4),
            equilibrium.g_moment(6),
        ];
        let table = HilbertInterpolant::build(
            |v| equilibrium.g(v),
            moments,
            32.0 * vt,
            4096,
            &spec,
        )?;
        Ok(Self {
            kind: SymbolKind::Limiting,
            equilibrium,
            quad: SymbolQuadrature::default(),
            hilbert_g: Some(table),
        })
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }
    pub fn equilibrium(&self) -> &EquilibriumDistribution {
        &self.equilibrium
    }

    pub fn eval(&self, omega: f64, k: f64) -> Result<Complex64> {
        match self.kind {
            SymbolKind::Regularized { nu } => {
                sigma_nu(&self.equilibrium, omega, k, nu, &self.quad)
            }
            SymbolKind::Limiting => {
                if k == 0.0 {
                    return Err(Error::SymbolUndefinedAtKZero);
                }
                let u = omega / k;
                let table = self.hilbert_g.as_ref().expect("limiting symbol carries the table");
                Ok(sigma_ph_from_parts(&self.equilibrium, k, self.equilibrium.g(u), table.eval(u)))
            }
        }
    }
}

/// Smooth even cutoff: χ(z) = 1 for |z| <= 1/2, 0 for |z| >= 1, with an
/// exp(-1/s) mollifier transition in between. `weight(k) = 1 - χ(kλ)` is the
/// multiplier weight; it vanishes identically for |k| <= 1/(2λ), which is
/// what removes the k = 0 column where the limiting symbol is undefined.
#[derive(Debug, Clone, Copy)]
pub struct CutoffFunction {
    lambda: f64,
}

impl CutoffFunction {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::invalid("lambda", format!("must be > 0, got {lambda}")));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// χ(z).
    pub fn chi(&self, z: f64) -> f64 {
        let a = z.abs();
        if a <= 0.5 {
            return 1.0;
        }
        if a >= 1.0 {
            return 0.0;
        }
        // Smooth step on (1/2, 1) built from ψ(s) = e^{-1/s}.
        let r = 2.0 * a - 1.0;
        let psi = |s: f64| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 };
        1.0 - psi(r) / (psi(r) + psi(1.0 - r))
    }

    /// Multiplier weight 1 - χ(kλ); exactly 0 for |k| <= 1/(2λ).
    pub fn weight(&self, k: f64) -> f64 {
        1.0 - self.chi(k * self.lambda)
    }
}

/// Real-valued j on the grid plus the diagnostics the multiplier route emits.
pub struct MultiplierField {
    pub grid: SpaceTimeGrid,
    /// Row-major j(t_j, x_l) at `j * n_x + l`.
    pub values: Vec<f64>,
    /// Largest |Im| left after the inverse transform, relative to max |Re|.
    pub max_imag_ratio: f64,
    /// Largest |E| sampled on the window boundary relative to max |E|;
    /// large values mean spectral leakage.
    pub edge_leak_ratio: f64,
}

impl MultiplierField {
    pub fn value(&self, t_index: usize, x_index: usize) -> f64 {
        self.values[t_index * self.grid.n_x + x_index]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn truncation_warning(&self) -> bool {
        self.edge_leak_ratio > 1e-8
    }
}

/// j = F⁻¹[ (1 - χ(kλ)) σ̂(ω,k) Ê(ω,k) ] on the grid. Ê comes from the DFT
/// of the sampled field, so this route shares nothing with the
/// characteristics route except E itself.
pub fn apply_multiplier(
    field: &FieldPerturbation,
    symbol: &ConductivitySymbol,
    cutoff: &CutoffFunction,
    grid: &SpaceTimeGrid,
) -> Result<MultiplierField> {
    let dft = Dft2d::new(grid);
    let samples = dft.sample(|t, x| field.eval(t, x));

    // Boundary leakage of the sampled field.
    let max_e = samples.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
    let mut edge = 0.0_f64;
    for l in 0..grid.n_x {
        edge = edge.max(samples[l].norm());
        edge = edge.max(samples[(grid.n_t - 1) * grid.n_x + l].norm());
    }
    for j in 0..grid.n_t {
        edge = edge.max(samples[j * grid.n_x].norm());
        edge = edge.max(samples[j * grid.n_x + grid.n_x - 1].norm());
    }
    let edge_leak_ratio = if max_e > 0.0 { edge / max_e } else { 0.0 };

    let mut data = samples;
    dft.forward(&mut data);

    let omegas = dft.spectral().omegas().to_vec();
    let ks = dft.spectral().ks().to_vec();
    let weights: Vec<Complex64> = omegas
        .par_iter()
        .flat_map_iter(|&omega| {
            let symbol = &symbol;
            ks.iter().map(move |&k| {
                let w = cutoff.weight(k);
                if w == 0.0 {
                    Ok(Complex64::new(0.0, 0.0))
                } else {
                    symbol.eval(omega, k).map(|s| s * w)
                }
            })
        })
        .collect::<Result<_>>()?;

    for (value, weight) in data.iter_mut().zip(&weights) {
        *value *= weight;
    }
    dft.inverse(&mut data);

    let mut max_re = 0.0_f64;
    let mut max_im = 0.0_f64;
    let mut values = Vec::with_capacity(data.len());
    for z in &data {
        max_re = max_re.max(z.re.abs());
        max_im = max_im.max(z.im.abs());
        values.push(z.re);
    }
    Ok(MultiplierField {
        grid: *grid,
        values,
        max_imag_ratio: if max_re > 0.0 { max_im / max_re } else { 0.0 },
        edge_leak_ratio,
    })
}

/// Gaussian test function on the (ω, k) plane.
#[derive(Debug, Clone, Copy)]
pub struct SpectralTestFunction {
    pub amplitude: f64,
    pub omega_width: f64,
    pub k_width: f64,
}

impl SpectralTestFunction {
    pub fn eval(&self, omega: f64, k: f64) -> f64 {
        let a = omega / self.omega_width;
        let b = k / self.k_width;
        self.amplitude * (-a * a - b * b).exp()
    }
}

/// ⟨σ_{λ,1-χ}(E), ψ̂⟩ = ∬ (1 - χ(kλ)) σ̂_ph(ω,k) Ê(ω,k) ψ(ω,k) dω dk
/// by nested adaptive quadrature over the spectral support of E.
pub fn multiplier_pairing(
    field: &FieldPerturbation,
    symbol: &ConductivitySymbol,
    cutoff: &CutoffFunction,
    psi: &SpectralTestFunction,
    params: &AdaptiveParams,
) -> Result<Complex64> {
    let (omega_bound, k_bound) = field.spectral_bounds();
    let lam = cutoff.lambda();
    let breaks = [-1.0 / lam, -0.5 / lam, 0.5 / lam, 1.0 / lam];
    let v_half = symbol.equilibrium().velocity_half_width(None);

    let outer = integrate_adaptive(
        |k: f64| {
            let w = cutoff.weight(k);
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            // Re σ̂_ph is a Landau spike |G(ω/k)|/|k| of ω-width ~|k| v_t;
            // without seeds at multiples of k the initial coarse panels can
            // miss it entirely (its center value G(0) vanishes).
            let mut seeds = Vec::with_capacity(13);
            for m in [-8.0, -6.0, -4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0] {
                let s = m * k.abs() * 0.125 * v_half;
                if s.abs() < omega_bound {
                    seeds.push(s);
                }
            }
            let inner = integrate_adaptive(
                |omega: f64| match symbol.eval(omega, k) {
                    Ok(s) => s * field.spectrum(omega, k) * psi.eval(omega, k),
                    Err(_) => Complex64::new(f64::NAN, f64::NAN),
                },
                -omega_bound,
                omega_bound,
                &seeds,
                params,
            );
            match inner {
                Ok(v) => v * w,
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }
        },
        -k_bound,
        k_bound,
        &breaks,
        params,
    )?;
    if outer.re.is_nan() || outer.im.is_nan() {
        return Err(Error::QuadratureFailure {
            achieved: f64::NAN,
            requested: params.abs_tol,
            subdivisions: params.max_subdivisions,
        });
    }
    Ok(outer)
}

/// ⟨σ_{λ,χ}(E), ψ̂⟩ =
/// -i (ω_p²/4π) ∬ χ(kλ) G(v) [ -π ℋ(Êψ(·,k))(kv) - iπ (Êψ)(kv,k) ] dk dv,
/// the remainder of the cutoff decomposition, concentrated near k = 0. The
/// ω-Hilbert transform at fixed k is a principal-value quadrature.
///
/// The minus sign on the Hilbert term comes from the orientation of the odd
/// part of Êψ around ω = kv ((Êψ)(kv+ϖ) enters with +ϖ first, the opposite
/// of the G-side decomposition): only this sign makes the total pairing
/// independent of λ for time-asymmetric fields, which
/// `tests/cutoff_decomposition.rs` checks. Time-symmetric fields cannot see
/// the sign (the term vanishes by parity).
pub fn remainder_pairing(
    field: &FieldPerturbation,
    eq: &EquilibriumDistribution,
    cutoff: &CutoffFunction,
    psi: &SpectralTestFunction,
    params: &AdaptiveParams,
) -> Result<Complex64> {
    let c = eq.species().plasma_frequency_sq() / (4.0 * PI);
    let lam = cutoff.lambda();
    let (omega_bound, _) = field.spectral_bounds();
    let v_half = eq.velocity_half_width(None);
    let pv = PvIntegrandSpec::auto(omega_bound + v_half / lam + 4.0)?;

    let k_edge = 1.0 / lam;
    let breaks = [-0.5 / lam, 0.5 / lam];

    let outer = integrate_adaptive(
        |k: f64| {
            let chi = cutoff.chi(k * lam);
            if chi == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let phi_k = |omega: f64| field.spectrum(omega, k) * psi.eval(omega, k);
            let inner = integrate_adaptive(
                |v: f64| {
                    let g = eq.g(v);
                    if g == 0.0 {
                        return Complex64::new(0.0, 0.0);
                    }
                    let h = hilbert_generic(phi_k, k * v, &pv).value;
                    (-h - Complex64::i() * phi_k(k * v)) * (PI * g)
                },
                -v_half,
                v_half,
                &[],
                params,
            );
            match inner {
                Ok(val) => val * chi,
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }
        },
        -k_edge,
        k_edge,
        &breaks,
        params,
    )?;
    if outer.re.is_nan() || outer.im.is_nan() {
        return Err(Error::QuadratureFailure {
            achieved: f64::NAN,
            requested: params.abs_tol,
            subdivisions: params.max_subdivisions,
        });
    }
    Ok(Complex64::new(0.0, -c) * outer)
}

/// Total pairing ⟨σ(E), ψ̂⟩ through the λ-decomposition; independent of λ.
pub fn total_pairing(
    field: &FieldPerturbation,
    symbol: &ConductivitySymbol,
    cutoff: &CutoffFunction,
    psi: &SpectralTestFunction,
    params: &AdaptiveParams,
) -> Result<Complex64> {
    let multiplier = multiplier_pairing(field, symbol, cutoff, psi, params)?;
    let remainder = remainder_pairing(field, symbol.equilibrium(), cutoff, psi, params)?;
    Ok(multiplier + remainder)
}

/// One probe of the ν-sweep of the symbol.
#[derive(Debug, Clone, Copy)]
pub struct SymbolSweepRow {
    pub omega: f64,
    pub k: f64,
    pub nu: f64,
    pub sigma_nu: Complex64,
    pub sigma_ph: Complex64,
    pub abs_err: f64,
}

/// k < 0 convention discrimination at the smallest ν of the sweep.
#[derive(Debug, Clone, Copy)]
pub struct ConventionCheck {
    pub omega: f64,
    pub k: f64,
    /// |σ̂_ν - σ̂_ph| with the |k| convention in the Landau term.
    pub err_abs_convention: f64,
    /// |σ̂_ν - σ̂_ph| with the printed 1/k convention.
    pub err_printed_convention: f64,
}

#[derive(Debug, Clone)]
pub struct SymbolSweepReport {
    pub rows: Vec<SymbolSweepRow>,
    pub convention_checks: Vec<ConventionCheck>,
}

impl SymbolSweepReport {
    /// Max over probes of |σ̂_ν - σ̂_ph| / |σ̂_ph| at the smallest ν.
    pub fn final_relative_error(&self) -> f64 {
        let last_nu = self.rows.iter().map(|r| r.nu).fold(f64::INFINITY, f64::min);
        self.rows
            .iter()
            .filter(|r| r.nu == last_nu)
            .map(|r| r.abs_err / r.sigma_ph.norm().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }

    /// Largest ratio err_printed / err_abs over the k < 0 probes. One
    /// resolvable probe falsifies the printed 1/k convention; probes with
    /// |ω/k| deep in the Maxwellian tail cannot discriminate because the two
    /// conventions differ only by 2|Re σ̂_ph| ∝ |G(ω/k)| there.
    pub fn discrimination_factor(&self) -> f64 {
        self.convention_checks
            .iter()
            .map(|c| c.err_printed_convention / c.err_abs_convention.max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }
}

/// Evaluates |σ̂_ν - σ̂_ph| on `probes` for each ν of the decreasing sweep
/// and runs the k < 0 convention discrimination at the smallest ν.
pub fn symbol_convergence_sweep(
    eq: &EquilibriumDistribution,
    probes: &[(f64, f64)],
    sweep: &[f64],
    quad: &SymbolQuadrature,
) -> Result<SymbolSweepReport> {
    if sweep.is_empty() {
        return Err(Error::invalid("sweep", "must contain at least one value"));
    }
    for w in sweep.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::invalid("sweep", "values must be strictly decreasing"));
        }
    }
    if probes.iter().any(|&(_, k)| k == 0.0) {
        return Err(Error::SymbolUndefinedAtKZero);
    }

    let limits: Vec<Complex64> = probes
        .par_iter()
        .map(|&(omega, k)| sigma_ph(eq, omega, k))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(sweep.len() * probes.len());
    for &nu in sweep {
        let values: Vec<Complex64> = probes
            .par_iter()
            .map(|&(omega, k)| sigma_nu(eq, omega, k, nu, quad))
            .collect::<Result<_>>()?;
        for ((&(omega, k), value), limit) in probes.iter().zip(&values).zip(&limits) {
            rows.push(SymbolSweepRow {
                omega,
                k,
                nu,
                sigma_nu: *value,
                sigma_ph: *limit,
                abs_err: (value - limit).norm(),
            });
        }
    }

    let smallest = *sweep.last().expect("sweep is non-empty");
    let mut convention_checks = Vec::new();
    for (&(omega, k), limit) in probes.iter().zip(&limits) {
        if k >= 0.0 {
            continue;
        }
        let nu_value = sigma_nu(eq, omega, k, smallest, quad)?;
        let printed = sigma_ph_printed_variant(eq, omega, k)?;
        convention_checks.push(ConventionCheck {
            omega,
            k,
            err_abs_convention: (nu_value - limit).norm(),
            err_printed_convention: (nu_value - printed).norm(),
        });
    }

    Ok(SymbolSweepReport { rows, convention_checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::dawson;
    use crate::kinetics::PlasmaSpecies;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn maxwellian() -> EquilibriumDistribution {
        EquilibriumDistribution::maxwellian(PlasmaSpecies::normalized())
    }

    /// Closed form for the normalized Maxwellian via the Dawson function:
    /// ℋ(G)(u) = (2u/π)(1 - 2u D(u)).
    fn hilbert_g_exact(u: f64) -> f64 {
        2.0 * u / PI * (1.0 - 2.0 * u * dawson(u))
    }

    fn sigma_ph_exact(omega: f64, k: f64) -> Complex64 {
        let eq = maxwellian();
        let u = omega / k;
        Complex64::new(-PI * eq.g(u) / k.abs(), -PI * hilbert_g_exact(u) / k)
    }

    #[test]
    fn sigma_nu_static_uniform_value() {
        // σ̂_ν(0,0) = q²n/(mν): with defaults and ν = 1 this is exactly 1.
        let eq = maxwellian();
        let quad = SymbolQuadrature::default();
        let v = sigma_nu(&eq, 0.0, 0.0, 1.0, &quad).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn sigma_nu_scales_as_inverse_nu_at_origin() {
        // ν σ̂_ν(0,0) = ω_p²/4π for every ν.
        let eq = maxwellian();
        let quad = SymbolQuadrature::default();
        let c = eq.species().plasma_frequency_sq() / (4.0 * PI);
        for nu in [1.0, 0.1, 1e-2, 1e-3] {
            let v = sigma_nu(&eq, 0.0, 0.0, nu, &quad).unwrap();
            assert_abs_diff_eq!((v * nu).re, c, epsilon = 1e-10);
            assert_abs_diff_eq!((v * nu).im, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn sigma_nu_matches_brute_force_trapezoid() {
        let eq = maxwellian();
        let quad = SymbolQuadrature::default();
        let (omega, k, nu) = (1.0, 0.5, 1e-2);
        let fast = sigma_nu(&eq, omega, k, nu, &quad).unwrap();

        let n = 2_000_000usize;
        let (a, b) = (-9.0, 9.0);
        let h = (b - a) / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=n {
            let v = a + i as f64 * h;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc += Complex64::new(v * eq.df(v), 0.0) / Complex64::new(omega - k * v, nu) * w;
        }
        let brute = Complex64::new(0.0, -1.0) * acc * h;
        assert_relative_eq!(fast.re, brute.re, max_relative = 1e-6);
        assert_relative_eq!(fast.im, brute.im, max_relative = 1e-6);
    }

    #[test]
    fn sigma_nu_reality_condition() {
        let eq = maxwellian();
        let quad = SymbolQuadrature::default();
        for &(omega, k) in &[(1.0, 0.5), (0.7, -1.3), (2.0, 2.0)] {
            let a = sigma_nu(&eq, -omega, -k, 0.05, &quad).unwrap();
            let b = sigma_nu(&eq, omega, k, 0.05, &quad).unwrap().conj();
            assert!((a - b).norm() < 1e-10, "({omega},{k}): {:?} vs {:?}", a, b);
        }
    }

    #[test]
    fn sigma_ph_rejects_k_zero() {
        assert!(matches!(
            sigma_ph(&maxwellian(), 1.0, 0.0),
            Err(Error::SymbolUndefinedAtKZero)
        ));
        let limiting = ConductivitySymbol::limiting(maxwellian()).unwrap();
        assert!(limiting.eval(1.0, 0.0).is_err());
    }

    #[test]
    fn sigma_ph_zero_frequency_vanishes() {
        // G(0) = 0 and ℋ(G)(0) = 0 for even G.
        let eq = maxwellian();
        for k in [0.5, -1.0, 2.0] {
            let v = sigma_ph(&eq, 0.0, k).unwrap();
            assert!(v.norm() < 1e-12, "σ̂_ph(0,{k}) = {v:?}");
        }
    }

    #[test]
    fn sigma_ph_reference_point_both_routes() {
        // (ω,k) = (1,1): Re = -π G(1) = 2√π e^{-1}; Im from the Dawson
        // closed form, independent of the PV quadrature route.
        let eq = maxwellian();
        let got = sigma_ph(&eq, 1.0, 1.0).unwrap();
        let re_exact = 2.0 * PI.sqrt() * (-1.0_f64).exp();
        assert_relative_eq!(got.re, re_exact, max_relative = 1e-9);
        assert_relative_eq!(got.re, 1.304_098_7, max_relative = 1e-6);
        let exact = sigma_ph_exact(1.0, 1.0);
        assert_abs_diff_eq!(got.im, exact.im, epsilon = 1e-8);
    }

    #[test]
    fn sigma_ph_matches_dawson_closed_form_on_probes() {
        let eq = maxwellian();
        for &(omega, k) in &[(1.0, 1.0), (1.0, -1.0), (2.0, 0.5), (-1.5, 2.0), (3.0, -0.7)] {
            let got = sigma_ph(&eq, omega, k).unwrap();
            let exact = sigma_ph_exact(omega, k);
            assert!((got - exact).norm() < 1e-7 * exact.norm().max(1.0));
        }
    }

    #[test]
    fn limiting_symbol_table_matches_direct() {
        let eq = maxwellian();
        let fast = ConductivitySymbol::limiting(eq).unwrap();
        for &(omega, k) in &[(1.0, 1.0), (0.3, -0.5), (5.0, 0.25), (-2.0, 1.5), (40.0, 1.0)] {
            let a = fast.eval(omega, k).unwrap();
            let b = sigma_ph(&eq, omega, k).unwrap();
            assert!((a - b).norm() < 1e-6 * b.norm().max(1.0), "({omega},{k})");
        }
    }

    #[test]
    fn sigma_nu_converges_to_sigma_ph() {
        let eq = maxwellian();
        let quad = SymbolQuadrature::default();
        let (omega, k) = (1.0, -1.0);
        let limit = sigma_ph(&eq, omega, k).unwrap();
        let mut prev = f64::INFINITY;
        for nu in [1e-1, 1e-2, 1e-3] {
            let err = (sigma_nu(&eq, omega, k, nu, &quad).unwrap() - limit).norm();
            assert!(err < prev, "err({nu}) = {err:.3e} vs prev {prev:.3e}");
            prev = err;
        }
        assert!(prev < 5e-3 * limit.norm());
    }

    #[test]
    fn dissipation_sign_on_probes() {
        let eq = maxwellian();
        for &(omega, k) in &[(1.0, 1.0), (1.0, -1.0), (-2.0, 0.5), (0.3, 0.1), (4.0, -2.0)] {
            let v = sigma_ph(&eq, omega, k).unwrap();
            assert!(v.re >= -1e-12, "Re σ̂_ph({omega},{k}) = {:.3e}", v.re);
        }
    }

    #[test]
    fn cold_plasma_asymptotics() {
        // σ̂_ph → i ω_p²/(4πω) as ω/k → ∞, with a thermal correction
        // (3/2)(v_t k/ω)² + O(u⁻⁴). The normalized check quantity
        // q := 4πω σ̂_ph / (i ω_p²) = -πuℋ(G)(u) + iπuG(u) tends to 1.
        let eq = maxwellian();
        let c = eq.species().plasma_frequency_sq() / (4.0 * PI);
        let q = |omega: f64, k: f64| {
            let s = sigma_ph(&eq, omega, k).unwrap();
            s * omega / (Complex64::i() * c)
        };
        // Far in the cold regime the deviation drops below 1e-2.
        let q40 = q(40.0, 1.0);
        assert!((q40 - Complex64::new(1.0, 0.0)).norm() < 1e-2, "q(40) = {q40:?}");
        // At ω/k = 8 the thermal correction is (3/2)/64 + (15/4)/4096 ≈ 0.0244
        // and dominates: pin it so the asymptotic regime is entered from the
        // right side.
        let q8 = q(8.0, 1.0);
        let predicted = 1.0 + 1.5 / 64.0 + 3.75 / 4096.0;
        assert_abs_diff_eq!(q8.re, predicted, epsilon = 2e-4);
        assert!(q8.im.abs() < 1e-12);
        // The regularized symbol agrees, confirming the limit (not the
        // quadrature) owns that correction.
        let quad = SymbolQuadrature::default();
        let s_nu = sigma_nu(&eq, 8.0, 1.0, 1e-4, &quad).unwrap();
        let q_nu = s_nu * 8.0 / (Complex64::i() * c);
        assert_abs_diff_eq!(q_nu.re, q8.re, epsilon = 1e-3);
    }

    #[test]
    fn cutoff_shape() {
        let chi = CutoffFunction::new(1.0).unwrap();
        assert_eq!(chi.chi(0.0), 1.0);
        assert_eq!(chi.chi(0.4), 1.0);
        assert_eq!(chi.chi(1.2), 0.0);
        assert_eq!(chi.chi(-0.5), 1.0);
        for i in 0..=60 {
            let z = -1.5 + i as f64 * 0.05;
            let v = chi.chi(z);
            assert!((0.0..=1.0).contains(&v), "χ({z}) = {v}");
            assert_eq!(v, chi.chi(-z));
        }
        // Monotone transition on (1/2, 1).
        let mut prev = 1.0;
        for i in 1..40 {
            let v = chi.chi(0.5 + 0.5 * i as f64 / 40.0);
            assert!(v <= prev + 1e-15);
            prev = v;
        }
        assert!(CutoffFunction::new(0.0).is_err());
        assert!(CutoffFunction::new(-2.0).is_err());
    }

    #[test]
    fn cutoff_weight_annihilates_small_k() {
        let cut = CutoffFunction::new(2.0).unwrap();
        assert_eq!(cut.weight(0.0), 0.0);
        assert_eq!(cut.weight(0.25), 0.0);
        assert!(cut.weight(0.6) > 0.99);
    }

    #[test]
    fn multiplier_zero_field() {
        let zero = FieldPerturbation::gaussian_packet(0.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        let grid = SpaceTimeGrid::new(-6.0, 6.0, 32, -6.0, 6.0, 32).unwrap();
        let symbol = ConductivitySymbol::limiting(maxwellian()).unwrap();
        let cutoff = CutoffFunction::new(1.0).unwrap();
        let out = apply_multiplier(&zero, &symbol, &cutoff, &grid).unwrap();
        assert!(out.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn multiplier_linearity() {
        use crate::kinetics::Packet;
        let p1 = Packet {
            amplitude: 1.0,
            t_center: 0.0,
            x_center: 0.0,
            t_width: 1.0,
            x_width: 1.0,
            carrier: Some((2.0, 5.0)),
        };
        let p2 = Packet {
            amplitude: 2.0, // plays the role of the scalar 2 in E1 + 2 E2
            t_center: 0.3,
            x_center: -0.4,
            t_width: 1.2,
            x_width: 0.9,
            carrier: Some((1.5, 6.0)),
        };
        let grid = SpaceTimeGrid::new(-8.0, 8.0, 64, -8.0, 8.0, 64).unwrap();
        let symbol = ConductivitySymbol::limiting(maxwellian()).unwrap();
        let cutoff = CutoffFunction::new(1.0).unwrap();
        let e1 = FieldPerturbation::superposition(vec![p1]).unwrap();
        let e2 = FieldPerturbation::superposition(vec![p2]).unwrap();
        let sum = FieldPerturbation::superposition(vec![p1, p2]).unwrap();
        let j1 = apply_multiplier(&e1, &symbol, &cutoff, &grid).unwrap();
        let j2 = apply_multiplier(&e2, &symbol, &cutoff, &grid).unwrap();
        let js = apply_multiplier(&sum, &symbol, &cutoff, &grid).unwrap();
        let scale = js.max_abs();
        for i in 0..js.values.len() {
            let lin = j1.values[i] + j2.values[i];
            assert!(
                (js.values[i] - lin).abs() <= 1e-12 * scale,
                "index {i}: {} vs {}",
                js.values[i],
                lin
            );
        }
    }

    #[test]
    fn multiplier_output_is_real_to_rounding() {
        let e = FieldPerturbation::modulated_packet(1.0, 0.0, 0.0, 1.0, 1.0, 2.5, 5.0).unwrap();
        let grid = SpaceTimeGrid::new(-8.0, 8.0, 64, -8.0, 8.0, 64).unwrap();
        let symbol = ConductivitySymbol::limiting(maxwellian()).unwrap();
        let cutoff = CutoffFunction::new(1.0).unwrap();
        let out = apply_multiplier(&e, &symbol, &cutoff, &grid).unwrap();
        assert!(out.max_imag_ratio < 1e-10, "imag ratio {:.2e}", out.max_imag_ratio);
        assert!(!out.truncation_warning(), "edge leak {:.2e}", out.edge_leak_ratio);
    }

    fn pairing_params() -> AdaptiveParams {
        AdaptiveParams { abs_tol: 1e-9, rel_tol: 1e-7, max_subdivisions: 3000 }
    }

    #[test]
    fn remainder_vanishes_for_zero_field() {
        let zero = FieldPerturbation::gaussian_packet(0.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        let cutoff = CutoffFunction::new(1.0).unwrap();
        let psi = SpectralTestFunction { amplitude: 1.0, omega_width: 4.0, k_width: 4.0 };
        let r =
            remainder_pairing(&zero, &maxwellian(), &cutoff, &psi, &pairing_params()).unwrap();
        assert_eq!(r, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn remainder_vanishes_for_spectral_gap_field() {
        // Ê concentrated at |k| = 5 with spatial width 2: its magnitude on
        // supp χ(λ·) (|k| <= 1) is ~e^{-16} of the peak, so the remainder is
        // negligible against the multiplier part.
        let e = FieldPerturbation::modulated_packet(1.0, 0.0, 0.0, 1.0, 2.0, 2.5, 5.0).unwrap();
        let cutoff = CutoffFunction::new(1.0).unwrap();
        let psi = SpectralTestFunction { amplitude: 1.0, omega_width: 4.0, k_width: 4.0 };
        let params = pairing_params();
        let r = remainder_pairing(&e, &maxwellian(), &cutoff, &psi, &params).unwrap();
        let symbol = ConductivitySymbol::limiting(maxwellian()).unwrap();
        let m = multiplier_pairing(&e, &symbol, &cutoff, &psi, &params).unwrap();
        assert!(r.norm() < 1e-6 * m.norm(), "remainder {:.3e} vs multiplier {:.3e}", r.norm(), m.norm());
    }

    #[test]
    fn symbol_sweep_discriminates_sign_convention() {
        let eq = maxwellian();
        let quad = SymbolQuadrature::default();
        let probes = [(1.0, -1.0), (1.0, 1.0), (2.0, -0.5)];
        let report =
            symbol_convergence_sweep(&eq, &probes, &[1e-1, 1e-2, 1e-3], &quad).unwrap();
        assert_eq!(report.rows.len(), 9);
        assert_eq!(report.convention_checks.len(), 2);
        assert!(report.final_relative_error() < 5e-2);
        assert!(
            report.discrimination_factor() > 10.0,
            "factor {:.1}",
            report.discrimination_factor()
        );
    }

    #[test]
    fn symbol_sweep_vanishing_probe() {
        // At (0, k) both symbols vanish for the Maxwellian.
        let eq = maxwellian();
        let quad = SymbolQuadrature::default();
        let report = symbol_convergence_sweep(&eq, &[(0.0, 1.0)], &[1e-1, 1e-2], &quad).unwrap();
        for row in &report.rows {
            assert!(row.sigma_ph.norm() < 1e-12);
            // σ̂_ν(0,1,ν) ≈ 2ν(1 + O(ν)) for the normalized Maxwellian.
            assert!(row.abs_err < 2.5 * row.nu, "err {:.3e} at nu {}", row.abs_err, row.nu);
        }
    }
}
