//! Domain types: plasma species, kinetic equilibria, perturbing fields, and
//! space-time grids.
//!
//! Everything is nondimensionalized; the default species has
//! q = m = n = v_t = 1 so that the squared plasma frequency is exactly 4π
//! (Gaussian units, ω_p² = 4π q² n / m).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A single particle species with uniform background density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmaSpecies {
    charge: f64,
    mass: f64,
    density: f64,
    thermal_speed: f64,
}

impl PlasmaSpecies {
    pub fn new(charge: f64, mass: f64, density: f64, thermal_speed: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::invalid("mass", format!("must be > 0, got {mass}")));
        }
        if !(density > 0.0 && density.is_finite()) {
            return Err(Error::invalid("density", format!("must be > 0, got {density}")));
        }
        if !(thermal_speed > 0.0 && thermal_speed.is_finite()) {
            return Err(Error::invalid(
                "thermal_speed",
                format!("must be > 0, got {thermal_speed}"),
            ));
        }
        if !charge.is_finite() {
            return Err(Error::invalid("charge", "must be finite"));
        }
        Ok(Self { charge, mass, density, thermal_speed })
    }

    /// Nondimensional defaults: q = m = n = v_t = 1, hence ω_p² = 4π.
    pub fn normalized() -> Self {
        Self { charge: 1.0, mass: 1.0, density: 1.0, thermal_speed: 1.0 }
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }
    pub fn mass(&self) -> f64 {
        self.mass
    }
    pub fn density(&self) -> f64 {
        self.density
    }
    pub fn thermal_speed(&self) -> f64 {
        self.thermal_speed
    }

    /// ω_p² = 4π q² n / m.
    pub fn plasma_frequency_sq(&self) -> f64 {
        4.0 * PI * self.charge * self.charge * self.density / self.mass
    }
}

/// A spatially uniform kinetic equilibrium F(v) together with its analytic
/// derivative and the resonance weight G(v) = v F'(v) / n.
///
/// The built-in profile is the Maxwellian
/// F(v) = n exp(-v²/v_t²) / (√π v_t); dF and G are closed forms, not finite
/// differences.
#[derive(Debug, Clone, Copy)]
pub struct EquilibriumDistribution {
    species: PlasmaSpecies,
}

impl EquilibriumDistribution {
    /// Builds the Maxwellian equilibrium for `species`.
    pub fn maxwellian(species: PlasmaSpecies) -> Self {
        Self { species }
    }

    pub fn species(&self) -> &PlasmaSpecies {
        &self.species
    }

    /// F(v).
    pub fn f(&self, v: f64) -> f64 {
        let vt = self.species.thermal_speed;
        let s = v / vt;
        self.species.density * (-s * s).exp() / (PI.sqrt() * vt)
    }

    /// F'(v) = -(2v/v_t²) F(v).
    pub fn df(&self, v: f64) -> f64 {
        let vt = self.species.thermal_speed;
        -2.0 * v / (vt * vt) * self.f(v)
    }

    /// G(v) = v F'(v) / n = -(2v²/v_t²) F(v) / n. Non-positive everywhere for
    /// the Maxwellian, which is what makes the limiting symbol dissipative.
    pub fn g(&self, v: f64) -> f64 {
        v * self.df(v) / self.species.density
    }

    /// Moments ∫ v^j G(v) dv in closed form (odd moments vanish). Used for
    /// the large-argument expansion of the Hilbert transform of G.
    pub fn g_moment(&self, j: u32) -> f64 {
        if j % 2 == 1 {
            return 0.0;
        }
        // ∫ v^j G dv = -(j+1) ∫ v^j F dv / n and
        // ∫ v^j F dv / n = (j-1)!! (v_t/√2)^j ·ish; for the Maxwellian with
        // variance v_t²/2: μ_j = (j-1)!! (v_t²/2)^{j/2}.
        let vt2 = self.species.thermal_speed * self.species.thermal_speed;
        let half = j / 2;
        let mut double_fact = 1.0;
        let mut i = 1;
        while 2 * i - 1 <= j as usize {
            double_fact *= (2 * i - 1) as f64;
            i += 1;
        }
        let mu_j = double_fact * (vt2 / 2.0).powi(half as i32);
        -((j + 1) as f64) * mu_j
    }

    /// Half-width of the truncated velocity window. Integrands sampled near a
    /// resonance v = ω/k widen the window so the Maxwellian tail beyond it
    /// contributes below 1e-14.
    pub fn velocity_half_width(&self, resonance: Option<f64>) -> f64 {
        let vt = self.species.thermal_speed;
        let base = 8.0 * vt;
        match resonance {
            Some(u) if u.is_finite() => base.max(u.abs() + 4.0 * vt),
            _ => base,
        }
    }
}

/// One Gaussian (optionally carrier-modulated) packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Packet {
    pub amplitude: f64,
    pub t_center: f64,
    pub x_center: f64,
    pub t_width: f64,
    pub x_width: f64,
    /// `Some((omega0, k0))` multiplies the envelope by cos(k0 x - omega0 t).
    pub carrier: Option<(f64, f64)>,
}

impl Packet {
    fn validate(&self) -> Result<()> {
        if !(self.t_width > 0.0 && self.t_width.is_finite()) {
            return Err(Error::invalid("t_width", format!("must be > 0, got {}", self.t_width)));
        }
        if !(self.x_width > 0.0 && self.x_width.is_finite()) {
            return Err(Error::invalid("x_width", format!("must be > 0, got {}", self.x_width)));
        }
        if !self.amplitude.is_finite() {
            return Err(Error::invalid("amplitude", "must be finite"));
        }
        Ok(())
    }

    fn eval(&self, t: f64, x: f64) -> f64 {
        let st = (t - self.t_center) / self.t_width;
        let sx = (x - self.x_center) / self.x_width;
        let env = self.amplitude * (-st * st - sx * sx).exp();
        match self.carrier {
            Some((omega0, k0)) => env * (k0 * x - omega0 * t).cos(),
            None => env,
        }
    }

    /// Transform of the pure envelope (amplitude folded in) under the
    /// convention Ê(ω,k) = ∫∫ E e^{iωt - ikx} dt dx:
    /// A π τ ℓ exp(iωt₀ - ikx₀) exp(-ω²τ²/4 - k²ℓ²/4).
    fn envelope_spectrum(&self, omega: f64, k: f64) -> Complex64 {
        let tau = self.t_width;
        let ell = self.x_width;
        let mag = self.amplitude
            * PI
            * tau
            * ell
            * (-0.25 * (omega * tau).powi(2) - 0.25 * (k * ell).powi(2)).exp();
        let phase = Complex64::new(0.0, omega * self.t_center - k * self.x_center).exp();
        phase * mag
    }

    fn spectrum(&self, omega: f64, k: f64) -> Complex64 {
        match self.carrier {
            None => self.envelope_spectrum(omega, k),
            Some((omega0, k0)) => {
                // cos carrier splits the envelope spectrum into two shifted copies.
                (self.envelope_spectrum(omega - omega0, k - k0)
                    + self.envelope_spectrum(omega + omega0, k + k0))
                    * 0.5
            }
        }
    }
}

/// A Schwartz-class perturbing electric field: a Gaussian packet, a
/// carrier-modulated Gaussian packet, or a finite superposition of packets.
/// All kinds have closed-form spectra under the e^{iωt - ikx} convention.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldPerturbation {
    packets: Vec<Packet>,
}

impl FieldPerturbation {
    pub fn gaussian_packet(
        amplitude: f64,
        t_center: f64,
        x_center: f64,
        t_width: f64,
        x_width: f64,
    ) -> Result<Self> {
        let p = Packet { amplitude, t_center, x_center, t_width, x_width, carrier: None };
        p.validate()?;
        Ok(Self { packets: vec![p] })
    }

    pub fn modulated_packet(
        amplitude: f64,
        t_center: f64,
        x_center: f64,
        t_width: f64,
        x_width: f64,
        omega0: f64,
        k0: f64,
    ) -> Result<Self> {
        let p = Packet {
            amplitude,
            t_center,
            x_center,
            t_width,
            x_width,
            carrier: Some((omega0, k0)),
        };
        p.validate()?;
        Ok(Self { packets: vec![p] })
    }

    /// Finite superposition; linear in every packet.
    pub fn superposition(packets: Vec<Packet>) -> Result<Self> {
        for p in &packets {
            p.validate()?;
        }
        Ok(Self { packets })
    }

    pub fn packets(&self) -> &[Packet] {
        &self.packets
    }

    /// Pointwise field value E(t, x).
    pub fn eval(&self, t: f64, x: f64) -> f64 {
        self.packets.iter().map(|p| p.eval(t, x)).sum()
    }

    /// Closed-form spectrum Ê(ω, k) = ∫∫ E(t,x) e^{iωt - ikx} dt dx.
    pub fn spectrum(&self, omega: f64, k: f64) -> Complex64 {
        self.packets.iter().map(|p| p.spectrum(omega, k)).sum()
    }

    /// Interval of t outside which |E(t, ·)| stays below `cut` for every x,
    /// or `None` when the field never exceeds `cut` (e.g. zero amplitude).
    /// This certifies the truncation of half-line time integrals a priori.
    pub fn time_support(&self, cut: f64) -> Option<(f64, f64)> {
        let mut hull: Option<(f64, f64)> = None;
        for p in &self.packets {
            let a = p.amplitude.abs();
            if a <= cut {
                continue;
            }
            let r = p.t_width * (a / cut).ln().sqrt();
            let lo = p.t_center - r;
            let hi = p.t_center + r;
            hull = Some(match hull {
                None => (lo, hi),
                Some((l, h)) => (l.min(lo), h.max(hi)),
            });
        }
        hull
    }

    /// Largest carrier frequencies (|ω₀|, |k₀|) over all packets; (0, 0) for
    /// plain envelopes. Grids should keep Nyquist well above these.
    pub fn max_carrier(&self) -> (f64, f64) {
        self.packets.iter().fold((0.0, 0.0), |(om, kk), p| match p.carrier {
            Some((o, k)) => (om.max(o.abs()), kk.max(k.abs())),
            None => (om, kk),
        })
    }

    /// Radii (ω, k) beyond which |Ê| is below ~e⁻³⁶ of each packet's peak;
    /// quadratures over the spectrum can stop there.
    pub fn spectral_bounds(&self) -> (f64, f64) {
        self.packets.iter().fold((0.0_f64, 0.0_f64), |(ob, kb), p| {
            let (omega0, k0) = p.carrier.unwrap_or((0.0, 0.0));
            let ob_p = omega0.abs() + 12.0 / p.t_width;
            let kb_p = k0.abs() + 12.0 / p.x_width;
            (ob.max(ob_p), kb.max(kb_p))
        })
    }
}

fn require_power_of_two(name: &'static str, n: usize) -> Result<()> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::invalid(name, format!("must be a power of two >= 2, got {n}")));
    }
    Ok(())
}

/// Uniform sampling window in (t, x), optionally carrying a velocity window.
/// Node counts are powers of two so the dual grid comes from plain DFTs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub n_t: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub n_x: usize,
    pub velocity: Option<VelocityWindow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityWindow {
    pub v_min: f64,
    pub v_max: f64,
    pub n_v: usize,
}

impl SpaceTimeGrid {
    pub fn new(
        t_min: f64,
        t_max: f64,
        n_t: usize,
        x_min: f64,
        x_max: f64,
        n_x: usize,
    ) -> Result<Self> {
        if !(t_max > t_min) {
            return Err(Error::invalid("t_max", format!("must exceed t_min, got [{t_min}, {t_max}]")));
        }
        if !(x_max > x_min) {
            return Err(Error::invalid("x_max", format!("must exceed x_min, got [{x_min}, {x_max}]")));
        }
        require_power_of_two("n_t", n_t)?;
        require_power_of_two("n_x", n_x)?;
        Ok(Self { t_min, t_max, n_t, x_min, x_max, n_x, velocity: None })
    }

    pub fn with_velocity(mut self, v_min: f64, v_max: f64, n_v: usize) -> Result<Self> {
        if !(v_max > v_min) {
            return Err(Error::invalid("v_max", format!("must exceed v_min, got [{v_min}, {v_max}]")));
        }
        if n_v < 2 {
            return Err(Error::invalid("n_v", format!("must be >= 2, got {n_v}")));
        }
        self.velocity = Some(VelocityWindow { v_min, v_max, n_v });
        Ok(self)
    }

    pub fn dt(&self) -> f64 {
        (self.t_max - self.t_min) / self.n_t as f64
    }
    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_x as f64
    }

    pub fn t_node(&self, j: usize) -> f64 {
        self.t_min + j as f64 * self.dt()
    }
    pub fn x_node(&self, l: usize) -> f64 {
        self.x_min + l as f64 * self.dx()
    }

    pub fn t_nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_t).map(|j| self.t_node(j))
    }
    pub fn x_nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_x).map(|l| self.x_node(l))
    }

    pub fn spectral(&self) -> SpectralGrid {
        SpectralGrid::from_grid(self)
    }
}

/// Dual (ω, k) nodes of a [`SpaceTimeGrid`] under the transform convention
/// φ̂(ω,k) = ∫ φ e^{iωt - ikx} dt dx: ω pairs with the *inverse* DFT direction
/// in t, k with the forward direction in x. Nodes are stored in DFT bin
/// order (non-negative frequencies first, then negative).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGrid {
    omegas: Vec<f64>,
    ks: Vec<f64>,
}

fn dft_frequencies(n: usize, step: f64) -> Vec<f64> {
    let d = 2.0 * PI / (n as f64 * step);
    (0..n)
        .map(|m| {
            let signed = if m < n / 2 { m as isize } else { m as isize - n as isize };
            signed as f64 * d
        })
        .collect()
}

impl SpectralGrid {
    pub fn from_grid(grid: &SpaceTimeGrid) -> Self {
        Self {
            omegas: dft_frequencies(grid.n_t, grid.dt()),
            ks: dft_frequencies(grid.n_x, grid.dx()),
        }
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }
    pub fn ks(&self) -> &[f64] {
        &self.ks
    }

    pub fn omega_max(&self) -> f64 {
        self.omegas.iter().fold(0.0_f64, |m, w| m.max(w.abs()))
    }
    pub fn k_max(&self) -> f64 {
        self.ks.iter().fold(0.0_f64, |m, k| m.max(k.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_adaptive, AdaptiveParams};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn normalized_maxwellian() -> EquilibriumDistribution {
        EquilibriumDistribution::maxwellian(PlasmaSpecies::normalized())
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        assert!(PlasmaSpecies::new(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(PlasmaSpecies::new(1.0, -1.0, 1.0, 1.0).is_err());
        assert!(PlasmaSpecies::new(1.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn plasma_frequency_is_4pi_for_defaults() {
        let s = PlasmaSpecies::normalized();
        assert_relative_eq!(s.plasma_frequency_sq(), 4.0 * PI, epsilon = 1e-15);
    }

    #[test]
    fn maxwellian_integrates_to_density() {
        let eq = normalized_maxwellian();
        let params = AdaptiveParams::default();
        let mass = integrate_adaptive(|v| eq.f(v), -10.0, 10.0, &[], &params).unwrap();
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn g_closed_form_values() {
        let eq = normalized_maxwellian();
        assert_eq!(eq.g(0.0), 0.0);
        // G(1) = -2 e^{-1} / √π, cross-checked by a central difference of F.
        let expected = -2.0 * (-1.0_f64).exp() / PI.sqrt();
        assert_relative_eq!(eq.g(1.0), expected, epsilon = 1e-12);
        let h = 1e-6;
        let df_fd = (eq.f(1.0 + h) - eq.f(1.0 - h)) / (2.0 * h);
        assert_relative_eq!(eq.g(1.0), 1.0 * df_fd / 1.0, epsilon = 1e-8);
    }

    #[test]
    fn g_is_nonpositive() {
        let eq = normalized_maxwellian();
        for i in -400..=400 {
            let v = i as f64 * 0.025;
            assert!(eq.g(v) <= 0.0, "G({v}) = {} > 0", eq.g(v));
        }
    }

    #[test]
    fn g_moments_match_quadrature() {
        let eq = normalized_maxwellian();
        let params = AdaptiveParams::default();
        for j in [0u32, 2, 4, 6] {
            let num = integrate_adaptive(|v| v.powi(j as i32) * eq.g(v), -12.0, 12.0, &[], &params)
                .unwrap();
            assert_relative_eq!(num, eq.g_moment(j), max_relative = 1e-9);
        }
        assert_eq!(eq.g_moment(1), 0.0);
        assert_eq!(eq.g_moment(0), -1.0);
    }

    #[test]
    fn maxwellian_is_rapidly_decreasing() {
        // |v|^m F(v) small at the truncation boundary for every tested m <= 8.
        let eq = normalized_maxwellian();
        let v_edge = eq.velocity_half_width(None);
        for m in 0..=8 {
            let val = v_edge.powi(m) * eq.f(v_edge);
            assert!(val < 1e-14, "|v|^{m} F at edge = {val:.3e}");
        }
    }

    #[test]
    fn field_peak_and_zero_cases() {
        let e = FieldPerturbation::gaussian_packet(1.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(e.eval(0.0, 0.0), 1.0);

        let zero = FieldPerturbation::gaussian_packet(0.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        for (t, x) in [(0.0, 0.0), (1.0, -2.0), (5.0, 5.0)] {
            assert_eq!(zero.eval(t, x), 0.0);
        }
        assert!(zero.time_support(1e-14).is_none());
    }

    #[test]
    fn carrier_zero_at_quarter_phase() {
        // k0 x0 - omega0 t0 = π/2 makes the carrier vanish at the center.
        let k0 = std::f64::consts::FRAC_PI_2; // with x0 = 1, t0 = 0
        let e = FieldPerturbation::modulated_packet(1.0, 0.0, 1.0, 1.0, 1.0, 0.0, k0).unwrap();
        assert_abs_diff_eq!(e.eval(0.0, 1.0), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn gaussian_spectrum_at_origin_is_pi() {
        let e = FieldPerturbation::gaussian_packet(1.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        let s = e.spectrum(0.0, 0.0);
        assert_relative_eq!(s.re, PI, epsilon = 1e-14);
        assert_abs_diff_eq!(s.im, 0.0, epsilon = 1e-16);
    }

    #[test]
    fn modulated_spectrum_concentrates_at_carrier() {
        // Two shifted Gaussian lobes; the k = 0 content is e^{-k0²ℓ²/4}-small
        // relative to the lobes (= 2 e^{-6.25} for k0 = 5, ℓ = 1).
        let e = FieldPerturbation::modulated_packet(1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 5.0).unwrap();
        let peak = e.spectrum(0.0, 5.0).norm();
        let center = e.spectrum(0.0, 0.0).norm();
        let expected_ratio = 2.0 * (-6.25_f64).exp() / (1.0 + (-25.0_f64).exp());
        assert_relative_eq!(center / peak, expected_ratio, max_relative = 1e-12);

        // Widening the spatial envelope drives the k = 0 leakage below 1e-9.
        let wide = FieldPerturbation::modulated_packet(1.0, 0.0, 0.0, 1.0, 2.0, 0.0, 5.0).unwrap();
        let ratio = wide.spectrum(0.0, 0.0).norm() / wide.spectrum(0.0, 5.0).norm();
        assert!(ratio < 1e-9, "ratio = {ratio:.3e}");
    }

    #[test]
    fn time_support_bounds_the_field() {
        let e = FieldPerturbation::modulated_packet(2.0, 1.5, 0.0, 0.7, 1.0, 3.0, 5.0).unwrap();
        let (lo, hi) = e.time_support(1e-12).unwrap();
        for x in [-3.0, 0.0, 2.0] {
            assert!(e.eval(lo - 0.01, x).abs() <= 1e-12);
            assert!(e.eval(hi + 0.01, x).abs() <= 1e-12);
        }
        assert!(e.eval(1.5, 0.0).abs() > 1e-3 || e.eval(1.55, 0.01).abs() > 1e-3);
    }

    #[test]
    fn grid_rejects_non_power_of_two() {
        assert!(SpaceTimeGrid::new(0.0, 1.0, 100, 0.0, 1.0, 64).is_err());
        assert!(SpaceTimeGrid::new(0.0, 1.0, 64, 0.0, 1.0, 100).is_err());
        assert!(SpaceTimeGrid::new(1.0, 0.0, 64, 0.0, 1.0, 64).is_err());
        assert!(SpaceTimeGrid::new(0.0, 1.0, 64, 0.0, 1.0, 64).is_ok());
    }

    #[test]
    fn spectral_grid_nodes() {
        let g = SpaceTimeGrid::new(-8.0, 8.0, 16, -4.0, 4.0, 8).unwrap();
        let s = g.spectral();
        assert_eq!(s.omegas().len(), 16);
        assert_eq!(s.ks().len(), 8);
        assert_relative_eq!(s.omegas()[1], 2.0 * PI / 16.0, epsilon = 1e-14);
        assert_relative_eq!(s.ks()[7], -2.0 * PI / 8.0, epsilon = 1e-14);
        assert_eq!(s.omegas()[0], 0.0);
    }

    proptest! {
        // Reality symmetry Ê(-ω,-k) = conj Ê(ω,k), exact for closed forms.
        #[test]
        fn spectrum_reality_symmetry(
            omega in -20.0..20.0f64,
            k in -20.0..20.0f64,
            a in -2.0..2.0f64,
            om0 in -4.0..4.0f64,
            k0 in -6.0..6.0f64,
        ) {
            let e = FieldPerturbation::superposition(vec![
                Packet { amplitude: a, t_center: 0.3, x_center: -0.2, t_width: 1.1, x_width: 0.9, carrier: None },
                Packet { amplitude: 1.0, t_center: -1.0, x_center: 0.5, t_width: 0.8, x_width: 1.3, carrier: Some((om0, k0)) },
            ]).unwrap();
            let s1 = e.spectrum(-omega, -k);
            let s2 = e.spectrum(omega, k).conj();
            prop_assert!((s1 - s2).norm() <= 1e-12 * (1.0 + s2.norm()));
        }

        // Superpositions evaluate linearly.
        #[test]
        fn superposition_linearity(t in -3.0..3.0f64, x in -3.0..3.0f64, alpha in -3.0..3.0f64) {
            let p1 = Packet { amplitude: 1.0, t_center: 0.0, x_center: 0.0, t_width: 1.0, x_width: 1.0, carrier: None };
            let p2 = Packet { amplitude: alpha, t_center: 0.5, x_center: -0.5, t_width: 0.7, x_width: 1.2, carrier: Some((2.0, 3.0)) };
            let e1 = FieldPerturbation::superposition(vec![p1]).unwrap();
            let e2 = FieldPerturbation::superposition(vec![p2]).unwrap();
            let both = FieldPerturbation::superposition(vec![p1, p2]).unwrap();
            let lhs = both.eval(t, x);
            let rhs = e1.eval(t, x) + e2.eval(t, x);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
        }
    }
}
