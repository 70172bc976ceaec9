//! The tempered solution of the damped transport equation and its ν → 0⁺
//! causal limit, evaluated by backward characteristics:
//!
//! ```text
//! f_ν(t,x,v) = -(q/m) F'(v) ∫_{-∞}^t e^{-ν(t-s)} E(s, x - v(t-s)) ds
//! ```
//!
//! ν = 0 and ν > 0 share this single code path. The half-line integral is
//! truncated where the analytic packet envelope drops below the configured
//! tail cut, which certifies the truncation a priori, then evaluated by
//! adaptive Gauss–Kronrod bisection. Induced currents integrate `v f` over
//! the truncated velocity window with a Richardson-gated Simpson rule.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kinetics::{EquilibriumDistribution, FieldPerturbation};
use crate::quadrature::{integrate_adaptive, simpson_richardson, AdaptiveParams};

/// Tolerances and limits for the characteristic integrals.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Envelope magnitude below which the half-line is truncated.
    pub tail_cut: f64,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize, tail_cut: f64) -> Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(Error::invalid("abs_tol", format!("must be > 0, got {abs_tol}")));
        }
        if !(rel_tol > 0.0) {
            return Err(Error::invalid("rel_tol", format!("must be > 0, got {rel_tol}")));
        }
        if max_subdivisions == 0 {
            return Err(Error::invalid("max_subdivisions", "must be >= 1"));
        }
        if !(tail_cut > 0.0 && tail_cut <= abs_tol) {
            return Err(Error::invalid(
                "tail_cut",
                format!("must satisfy 0 < tail_cut <= abs_tol, got {tail_cut}"),
            ));
        }
        Ok(Self { abs_tol, rel_tol, max_subdivisions, tail_cut })
    }

    pub(crate) fn adaptive(&self) -> AdaptiveParams {
        AdaptiveParams {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-9, max_subdivisions: 4000, tail_cut: 1e-14 }
    }
}

/// The regularized (ν > 0) or causal (ν = 0) distribution-function
/// perturbation for one species under a prescribed field.
#[derive(Debug, Clone)]
pub struct CausalSolution {
    nu: f64,
    equilibrium: EquilibriumDistribution,
    field: FieldPerturbation,
    quadrature: QuadratureSpec,
}

impl CausalSolution {
    pub fn new(
        nu: f64,
        equilibrium: EquilibriumDistribution,
        field: FieldPerturbation,
        quadrature: QuadratureSpec,
    ) -> Result<Self> {
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::invalid("nu", format!("must be >= 0, got {nu}")));
        }
        Ok(Self { nu, equilibrium, field, quadrature })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
    pub fn equilibrium(&self) -> &EquilibriumDistribution {
        &self.equilibrium
    }
    pub fn field(&self) -> &FieldPerturbation {
        &self.field
    }
    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quadrature
    }

    /// Integration window for the s-integral at observation time `t`, or
    /// `None` when the field never rises above the tail cut before `t`.
    fn s_window(&self, t: f64) -> Option<(f64, f64)> {
        let (lo, hi) = self.field.time_support(self.quadrature.tail_cut)?;
        let hi = hi.min(t);
        (hi > lo).then_some((lo, hi))
    }

    /// Panel seeds so each initial Gauss–Kronrod panel sees a bounded phase
    /// change of the carrier along the characteristic.
    fn s_breakpoints(&self, lo: f64, hi: f64, v: f64) -> Vec<f64> {
        let (omega0, k0) = self.field.max_carrier();
        let freq = k0 * v.abs() + omega0;
        let width = if freq > 1.0 { 6.0 / freq } else { hi - lo };
        if width >= hi - lo {
            return Vec::new();
        }
        let n = ((hi - lo) / width).ceil() as usize;
        (1..n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
    }

    /// f_ν(t, x, v). Exact zero when F'(v) = 0 or the field never exceeds
    /// the tail cut on (-∞, t].
    pub fn causal_f(&self, t: f64, x: f64, v: f64) -> Result<f64> {
        let species = self.equilibrium.species();
        let coeff = -species.charge() / species.mass() * self.equilibrium.df(v);
        if coeff == 0.0 {
            return Ok(0.0);
        }
        let Some((lo, hi)) = self.s_window(t) else {
            return Ok(0.0);
        };
        let nu = self.nu;
        let field = &self.field;
        let integral = integrate_adaptive(
            |s| (-nu * (t - s)).exp() * field.eval(s, x - v * (t - s)),
            lo,
            hi,
            &self.s_breakpoints(lo, hi, v),
            &self.quadrature.adaptive(),
        )?;
        Ok(coeff * integral)
    }

    /// The Cauchy datum at t = 0 selected by temperedness; any other datum
    /// grows like e^{-νt} backward in time. Shares the `causal_f` code path
    /// bit for bit. Meaningful as a selection principle for ν > 0.
    pub fn initial_condition(&self, x: f64, v: f64) -> Result<f64> {
        self.causal_f(0.0, x, v)
    }

    /// Centered finite-difference residual of the damped transport equation:
    /// D_t f + ν f + v D_x f + (q/m) E(t,x) F'(v). Second order in the steps.
    pub fn residual(&self, t: f64, x: f64, v: f64, h_t: f64, h_x: f64) -> Result<f64> {
        let species = self.equilibrium.species();
        let source = species.charge() / species.mass()
            * self.field.eval(t, x)
            * self.equilibrium.df(v);
        fd_transport_residual(
            |t, x, v| self.causal_f(t, x, v),
            self.nu,
            source,
            t,
            x,
            v,
            h_t,
            h_x,
        )
    }

    /// Upper bound on the velocity-space oscillation frequency of
    /// v ↦ E(s, x - v(t-s)) over the s-window: k₀ · max(t - s).
    fn velocity_frequency_bound(&self, t: f64) -> f64 {
        let (_, k0) = self.field.max_carrier();
        match self.s_window(t) {
            Some((lo, _)) => k0 * (t - lo).max(0.0),
            None => 0.0,
        }
    }

    /// Induced current j(t, x) = q ∫ v f(t,x,v) dv over the truncated
    /// velocity window, with an n vs 2n Richardson gate.
    pub fn current(&self, t: f64, x: f64) -> Result<f64> {
        self.current_impl(t, x, None)
    }

    /// Current for the separable non-homogeneous equilibrium
    /// n₀(x) F(v)/n: the density profile rides along the characteristic.
    pub fn current_with_profile(
        &self,
        profile: &(dyn Fn(f64) -> f64 + Sync),
        t: f64,
        x: f64,
    ) -> Result<f64> {
        self.current_impl(t, x, Some(profile))
    }

    fn current_impl(
        &self,
        t: f64,
        x: f64,
        profile: Option<&(dyn Fn(f64) -> f64 + Sync)>,
    ) -> Result<f64> {
        let Some((lo, hi)) = self.s_window(t) else {
            return Ok(0.0);
        };
        let species = self.equilibrium.species();
        let q = species.charge();
        let m = species.mass();
        let n = species.density();
        let v_half = self.equilibrium.velocity_half_width(None);
        let nu = self.nu;
        let field = &self.field;

        // Start Simpson dense enough to resolve the ballistic phase k₀ v (t-s).
        let freq = self.velocity_frequency_bound(t);
        let n0 = (((2.0 * v_half * freq / 3.0) as usize).next_power_of_two()).clamp(64, 1 << 13);

        let params = self.quadrature.adaptive();
        let integrand = |v: f64| -> f64 {
            let weight_df = match profile {
                // F̃' = F'/n so the profile carries the density.
                Some(_) => self.equilibrium.df(v) / n,
                None => self.equilibrium.df(v),
            };
            if weight_df == 0.0 {
                return 0.0;
            }
            let inner = integrate_adaptive(
                |s| {
                    let damp = (-nu * (t - s)).exp();
                    let y = x - v * (t - s);
                    let weight = match profile {
                        Some(p) => p(y),
                        None => 1.0,
                    };
                    damp * weight * field.eval(s, y)
                },
                lo,
                hi,
                &self.s_breakpoints(lo, hi, v),
                &params,
            )
            // Inner failures surface through the outer NaN check below.
            .unwrap_or(f64::NAN);
            -(q * q / m) * v * weight_df * inner
        };

        let value = simpson_richardson(
            integrand,
            -v_half,
            v_half,
            n0,
            self.quadrature.abs_tol.max(1e-12),
            self.quadrature.rel_tol,
            1 << 16,
        )?;
        if value.is_nan() {
            return Err(Error::QuadratureFailure {
                achieved: f64::NAN,
                requested: self.quadrature.abs_tol,
                subdivisions: self.quadrature.max_subdivisions,
            });
        }
        Ok(value)
    }
}

/// Centered-difference residual of the damped transport operator against a
/// prescribed source: D_t f + ν f + v D_x f + source, where the Vlasov source
/// is (q/m) E F'. Exposed over any f so the scheme itself can be probed on
/// known null-space elements h(x - vt, v).
pub fn fd_transport_residual(
    f: impl Fn(f64, f64, f64) -> Result<f64>,
    nu: f64,
    source: f64,
    t: f64,
    x: f64,
    v: f64,
    h_t: f64,
    h_x: f64,
) -> Result<f64> {
    if !(h_t > 0.0) {
        return Err(Error::invalid("h_t", format!("must be > 0, got {h_t}")));
    }
    if !(h_x > 0.0) {
        return Err(Error::invalid("h_x", format!("must be > 0, got {h_x}")));
    }
    let d_t = (f(t + h_t, x, v)? - f(t - h_t, x, v)?) / (2.0 * h_t);
    let d_x = (f(t, x + h_x, v)? - f(t, x - h_x, v)?) / (2.0 * h_x);
    let center = f(t, x, v)?;
    Ok(d_t + nu * center + v * d_x + source)
}

/// A phase-space probe point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probe {
    pub t: f64,
    pub x: f64,
    pub v: f64,
}

/// Uniform n×n×n lattice over the given closed ranges.
pub fn probe_lattice(
    t_range: (f64, f64),
    x_range: (f64, f64),
    v_range: (f64, f64),
    n: usize,
) -> Vec<Probe> {
    let axis = |(lo, hi): (f64, f64)| -> Vec<f64> {
        if n <= 1 {
            return vec![0.5 * (lo + hi)];
        }
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    };
    let (ts, xs, vs) = (axis(t_range), axis(x_range), axis(v_range));
    let mut probes = Vec::with_capacity(ts.len() * xs.len() * vs.len());
    for &t in &ts {
        for &x in &xs {
            for &v in &vs {
                probes.push(Probe { t, x, v });
            }
        }
    }
    probes
}

/// One probe evaluation in a ν-sweep.
#[derive(Debug, Clone, Copy)]
pub struct NuSweepRow {
    pub nu: f64,
    pub probe: Probe,
    pub f_value: f64,
    pub f_limit: f64,
    pub abs_err: f64,
}

/// Per-ν summary: the max over probes of |f_ν - f|.
#[derive(Debug, Clone, Copy)]
pub struct NuSweepSummary {
    pub nu: f64,
    pub max_abs_err: f64,
}

#[derive(Debug, Clone)]
pub struct NuSweepReport {
    pub rows: Vec<NuSweepRow>,
    pub per_nu: Vec<NuSweepSummary>,
    /// max over probes of |f| (the ν = 0 reference); the scale for relative
    /// thresholds.
    pub limit_scale: f64,
}

/// Verdict of the convergence contract; monotonicity violations are reported,
/// not fatal.
#[derive(Debug, Clone)]
pub struct SweepVerdict {
    /// Pairs of consecutive ν whose max errors increased beyond the slack.
    pub monotonicity_violations: Vec<(f64, f64)>,
    pub final_error: f64,
    pub final_ok: bool,
}

impl NuSweepReport {
    pub fn verdict(&self, monotone_slack: f64, final_threshold_rel: f64) -> SweepVerdict {
        let mut violations = Vec::new();
        for w in self.per_nu.windows(2) {
            if w[1].max_abs_err > w[0].max_abs_err + monotone_slack {
                violations.push((w[0].nu, w[1].nu));
            }
        }
        let final_error = self.per_nu.last().map_or(0.0, |s| s.max_abs_err);
        SweepVerdict {
            monotonicity_violations: violations,
            final_ok: final_error <= final_threshold_rel * self.limit_scale,
            final_error,
        }
    }
}

/// Evaluates |f_ν - f| over `probes` for every ν in `sweep` (strictly
/// decreasing, all positive; the ν = 0 causal limit is the reference).
pub fn nu_sweep(
    equilibrium: EquilibriumDistribution,
    field: FieldPerturbation,
    quadrature: QuadratureSpec,
    sweep: &[f64],
    probes: &[Probe],
) -> Result<NuSweepReport> {
    if sweep.is_empty() {
        return Err(Error::invalid("sweep", "must contain at least one value"));
    }
    for w in sweep.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::invalid("sweep", "values must be strictly decreasing"));
        }
    }
    if sweep.iter().any(|&nu| nu <= 0.0) {
        return Err(Error::invalid("sweep", "values must be positive (nu = 0 is implicit)"));
    }

    let limit = CausalSolution::new(0.0, equilibrium, field.clone(), quadrature)?;
    let limits: Vec<f64> = probes
        .par_iter()
        .map(|p| limit.causal_f(p.t, p.x, p.v))
        .collect::<Result<_>>()?;
    let limit_scale = limits.iter().fold(0.0_f64, |m, v| m.max(v.abs()));

    let mut rows = Vec::with_capacity(sweep.len() * probes.len());
    let mut per_nu = Vec::with_capacity(sweep.len());
    for &nu in sweep {
        let sol = CausalSolution::new(nu, equilibrium, field.clone(), quadrature)?;
        let values: Vec<f64> = probes
            .par_iter()
            .map(|p| sol.causal_f(p.t, p.x, p.v))
            .collect::<Result<_>>()?;
        let mut max_abs_err = 0.0_f64;
        for ((probe, value), limit_value) in probes.iter().zip(&values).zip(&limits) {
            let abs_err = (value - limit_value).abs();
            max_abs_err = max_abs_err.max(abs_err);
            rows.push(NuSweepRow {
                nu,
                probe: *probe,
                f_value: *value,
                f_limit: *limit_value,
                abs_err,
            });
        }
        per_nu.push(NuSweepSummary { nu, max_abs_err });
    }
    Ok(NuSweepReport { rows, per_nu, limit_scale })
}
