//! DFT approximations of the continuous Fourier transform.
//!
//! Space-time transforms follow φ̂(ω,k) = ∫∫ φ(t,x) e^{iωt - ikx} dt dx, so
//! the time axis pairs with the inverse DFT direction and the space axis with
//! the forward one. Plain 1D transforms (used for Hilbert symbol checks) use
//! the standard φ̂(ξ) = ∫ φ(y) e^{-iξy} dy.

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::sync::Arc;

use crate::kinetics::{SpaceTimeGrid, SpectralGrid};

/// 1D continuous-transform approximation on a uniform grid.
pub struct Dft1d {
    n: usize,
    y_min: f64,
    step: f64,
    forward: Arc<dyn Fft<f64>>,
    frequencies: Vec<f64>,
}

impl Dft1d {
    pub fn new(y_min: f64, step: f64, n: usize) -> Self {
        assert!(n.is_power_of_two(), "node count must be a power of two");
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft(n, FftDirection::Forward);
        let d = 2.0 * std::f64::consts::PI / (n as f64 * step);
        let frequencies = (0..n)
            .map(|m| {
                let signed = if m < n / 2 { m as isize } else { m as isize - n as isize };
                signed as f64 * d
            })
            .collect();
        Self { n, y_min, step, forward, frequencies }
    }

    /// Frequencies ξ_m in DFT bin order.
    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    /// Approximates φ̂(ξ_m) = ∫ φ e^{-iξ_m y} dy from samples φ(y_min + j·step).
    pub fn transform(&self, samples: &[f64]) -> Vec<Complex64> {
        assert_eq!(samples.len(), self.n);
        let mut buf: Vec<Complex64> =
            samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward.process(&mut buf);
        for (m, value) in buf.iter_mut().enumerate() {
            let xi = self.frequencies[m];
            let phase = Complex64::new(0.0, -xi * self.y_min).exp();
            *value *= phase * self.step;
        }
        buf
    }
}

/// 2D space-time transform on a [`SpaceTimeGrid`]. Samples are row-major with
/// the time index slow: `data[j * n_x + l] = φ(t_j, x_l)`.
pub struct Dft2d {
    grid: SpaceTimeGrid,
    spectral: SpectralGrid,
    fft_t_inv: Arc<dyn Fft<f64>>,
    fft_t_fwd: Arc<dyn Fft<f64>>,
    fft_x_fwd: Arc<dyn Fft<f64>>,
    fft_x_inv: Arc<dyn Fft<f64>>,
}

impl Dft2d {
    pub fn new(grid: &SpaceTimeGrid) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            grid: *grid,
            spectral: grid.spectral(),
            fft_t_inv: planner.plan_fft(grid.n_t, FftDirection::Inverse),
            fft_t_fwd: planner.plan_fft(grid.n_t, FftDirection::Forward),
            fft_x_fwd: planner.plan_fft(grid.n_x, FftDirection::Forward),
            fft_x_inv: planner.plan_fft(grid.n_x, FftDirection::Inverse),
        }
    }

    pub fn grid(&self) -> &SpaceTimeGrid {
        &self.grid
    }
    pub fn spectral(&self) -> &SpectralGrid {
        &self.spectral
    }

    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.grid.n_t * self.grid.n_x);
        for j in 0..self.grid.n_t {
            let t = self.grid.t_node(j);
            for l in 0..self.grid.n_x {
                out.push(Complex64::new(f(t, self.grid.x_node(l)), 0.0));
            }
        }
        out
    }

    fn fft_rows(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        for row in data.chunks_exact_mut(self.grid.n_x) {
            fft.process(row);
        }
    }

    fn fft_cols(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let (n_t, n_x) = (self.grid.n_t, self.grid.n_x);
        let mut col = vec![Complex64::default(); n_t];
        for l in 0..n_x {
            for j in 0..n_t {
                col[j] = data[j * n_x + l];
            }
            fft.process(&mut col);
            for j in 0..n_t {
                data[j * n_x + l] = col[j];
            }
        }
    }

    /// In-place forward transform: on return `data[m * n_x + n]` approximates
    /// φ̂(ω_m, k_n) with bin-ordered frequencies from [`Self::spectral`].
    pub fn forward(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.grid.n_t * self.grid.n_x);
        self.fft_rows(data, &self.fft_x_fwd);
        self.fft_cols(data, &self.fft_t_inv);
        let scale = self.grid.dt() * self.grid.dx();
        for (m, &omega) in self.spectral.omegas().iter().enumerate() {
            let pt = Complex64::new(0.0, omega * self.grid.t_min).exp() * scale;
            for (n, &k) in self.spectral.ks().iter().enumerate() {
                let px = Complex64::new(0.0, -k * self.grid.x_min).exp();
                data[m * self.grid.n_x + n] *= pt * px;
            }
        }
    }

    /// In-place inverse of [`Self::forward`].
    pub fn inverse(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.grid.n_t * self.grid.n_x);
        let norm = 1.0
            / (self.grid.n_t as f64
                * self.grid.dt()
                * self.grid.n_x as f64
                * self.grid.dx());
        for (m, &omega) in self.spectral.omegas().iter().enumerate() {
            let pt = Complex64::new(0.0, -omega * self.grid.t_min).exp() * norm;
            for (n, &k) in self.spectral.ks().iter().enumerate() {
                let px = Complex64::new(0.0, k * self.grid.x_min).exp();
                data[m * self.grid.n_x + n] *= pt * px;
            }
        }
        self.fft_cols(data, &self.fft_t_fwd);
        self.fft_rows(data, &self.fft_x_inv);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetics::FieldPerturbation;
    use approx::assert_relative_eq;

    #[test]
    fn one_dimensional_gaussian_pair() {
        // φ = e^{-y²} has φ̂(ξ) = √π e^{-ξ²/4} under ∫ φ e^{-iξy} dy.
        let n = 512;
        let dft = Dft1d::new(-20.0, 40.0 / n as f64, n);
        let samples: Vec<f64> = (0..n)
            .map(|j| {
                let y = -20.0 + j as f64 * (40.0 / n as f64);
                (-y * y).exp()
            })
            .collect();
        let hat = dft.transform(&samples);
        for (m, &xi) in dft.frequencies().iter().enumerate() {
            if xi.abs() > 8.0 {
                continue;
            }
            let expected = std::f64::consts::PI.sqrt() * (-xi * xi / 4.0).exp();
            assert_relative_eq!(hat[m].re, expected, epsilon = 1e-10);
            assert!(hat[m].im.abs() < 1e-12);
        }
    }

    #[test]
    fn forward_matches_closed_form_spectrum() {
        let e = FieldPerturbation::modulated_packet(1.0, 0.2, -0.3, 1.0, 1.0, 2.0, 5.0).unwrap();
        let grid = SpaceTimeGrid::new(-12.0, 12.0, 128, -12.0, 12.0, 128).unwrap();
        let dft = Dft2d::new(&grid);
        let mut data = dft.sample(|t, x| e.eval(t, x));
        dft.forward(&mut data);

        let mut max_err = 0.0_f64;
        let mut max_mag = 0.0_f64;
        for (m, &omega) in dft.spectral().omegas().iter().enumerate() {
            for (n, &k) in dft.spectral().ks().iter().enumerate() {
                let exact = e.spectrum(omega, k);
                let err = (data[m * grid.n_x + n] - exact).norm();
                max_err = max_err.max(err);
                max_mag = max_mag.max(exact.norm());
            }
        }
        assert!(
            max_err / max_mag < 1e-6,
            "relative spectrum deviation {:.3e}",
            max_err / max_mag
        );
    }

    #[test]
    fn forward_inverse_roundtrip() {
        let grid = SpaceTimeGrid::new(-5.0, 5.0, 32, -4.0, 4.0, 16).unwrap();
        let dft = Dft2d::new(&grid);
        let original = dft.sample(|t, x| (t * 0.7).cos() * (-x * x).exp() + 0.1 * t);
        let mut data = original.clone();
        dft.forward(&mut data);
        dft.inverse(&mut data);
        for (a, b) in data.iter().zip(&original) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
