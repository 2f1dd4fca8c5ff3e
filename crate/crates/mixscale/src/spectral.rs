//! Discrete Fourier analysis and homogeneous Sobolev norms `Ḣ^s`.
//!
//! Fields are treated as trigonometric polynomials sampled at cell
//! centers: `coeff(k) = (h²/λ²) Σ f(x) exp(-2πi k·x/λ)` over integer
//! wavevectors `k ∈ {-n/2 .. n/2-1}²`. With that normalization the
//! coefficient at `k = 0` is the grid mean and a single cosine mode of
//! amplitude 1 carries `±1/2` at its two wavevectors.
//!
//! `sobolev_norm` returns `( Σ_{k≠0} (|k|/λ)^{2s} |coeff(k)|² )^{1/2}`.
//! The `k = 0` term is always excluded (it is undefined for `s < 0` and
//! vanishes for mean-zero fields), the square root makes `s = 0` agree
//! with the `L²` norm, and the `|k|/λ` scaling keeps negative-order norms
//! in length units. `s = -1` is the functional mixing scale.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::grid::{kahan_sum, ScalarField};

/// Relative mean tolerance for negative-order norms.
pub const MEAN_ZERO_TOL: f64 = 1e-8;

/// Fourier coefficients of a field, indexed by signed integer wavevectors.
#[derive(Debug, Clone)]
pub struct FourierCoeffs {
    /// DFT-ordered storage, row-major with the row index running along
    /// the y frequency.
    coeffs: Vec<Complex<f64>>,
    n: usize,
    side_length: f64,
}

impl FourierCoeffs {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side_length(&self) -> f64 {
        self.side_length
    }

    /// Smallest representable signed frequency (inclusive).
    pub fn k_min(&self) -> i64 {
        -(self.n as i64 / 2)
    }

    /// Largest representable signed frequency (inclusive).
    pub fn k_max(&self) -> i64 {
        (self.n as i64 - 1) / 2
    }

    /// Coefficient at wavevector `(kx, ky)`; both components must lie in
    /// `k_min()..=k_max()`.
    pub fn coeff(&self, kx: i64, ky: i64) -> Complex<f64> {
        assert!(
            kx >= self.k_min() && kx <= self.k_max() && ky >= self.k_min() && ky <= self.k_max(),
            "wavevector ({kx}, {ky}) outside representable range"
        );
        let n = self.n as i64;
        let mx = kx.rem_euclid(n) as usize;
        let my = ky.rem_euclid(n) as usize;
        self.coeffs[my * self.n + mx]
    }

    /// Builds a coefficient set by evaluating `f` at every signed
    /// wavevector. The caller is responsible for conjugate symmetry if a
    /// real field is intended.
    pub fn build(
        n: usize,
        side_length: f64,
        f: impl Fn(i64, i64) -> Complex<f64>,
    ) -> Result<Self> {
        if n < crate::grid::MIN_GRID_SIDE {
            return Err(Error::GridTooSmall(n));
        }
        if !(side_length.is_finite() && side_length > 0.0) {
            return Err(Error::BadSideLength(side_length));
        }
        let mut coeffs = vec![Complex::new(0.0, 0.0); n * n];
        for my in 0..n {
            let ky = signed_freq(my, n);
            for mx in 0..n {
                let kx = signed_freq(mx, n);
                coeffs[my * n + mx] = f(kx, ky);
            }
        }
        Ok(Self {
            coeffs,
            n,
            side_length,
        })
    }

    /// Wraps a DFT-ordered coefficient vector without copying.
    pub(crate) fn from_raw(coeffs: Vec<Complex<f64>>, n: usize, side_length: f64) -> Self {
        debug_assert_eq!(coeffs.len(), n * n);
        Self {
            coeffs,
            n,
            side_length,
        }
    }

    /// Iterates `(kx, ky, coeff)` over every stored wavevector.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, Complex<f64>)> + '_ {
        let n = self.n;
        self.coeffs.iter().enumerate().map(move |(idx, c)| {
            let kx = signed_freq(idx % n, n);
            let ky = signed_freq(idx / n, n);
            (kx, ky, *c)
        })
    }
}

/// Maps a DFT storage index to its signed frequency.
fn signed_freq(m: usize, n: usize) -> i64 {
    let m = m as i64;
    let n = n as i64;
    if m <= (n - 1) / 2 {
        m
    } else {
        m - n
    }
}

/// In-place 2-D FFT over an `n x n` complex matrix (rows, transpose,
/// rows, transpose). Unnormalized in both directions: a forward/inverse
/// round trip scales by `n²`.
pub(crate) fn fft_2d(data: &mut [Complex<f64>], n: usize, forward: bool) {
    let mut planner = FftPlanner::new();
    let fft = if forward {
        planner.plan_fft_forward(n)
    } else {
        planner.plan_fft_inverse(n)
    };
    fft.process(data);
    transpose(data, n);
    fft.process(data);
    transpose(data, n);
}

fn transpose(data: &mut [Complex<f64>], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

/// Per-axis phase `exp(-iπ k/n)` accounting for the half-cell offset of
/// cell-centered samples.
fn center_phases(n: usize) -> Vec<Complex<f64>> {
    (0..n)
        .map(|m| {
            let k = signed_freq(m, n) as f64;
            Complex::from_polar(1.0, -std::f64::consts::PI * k / n as f64)
        })
        .collect()
}

/// Forward transform: `coeff(k) = (h²/λ²) Σ f(x) exp(-2πi k·x/λ)`.
pub fn analyze(f: &ScalarField) -> FourierCoeffs {
    let n = f.n();
    let mut data: Vec<Complex<f64>> = f.values().iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft_2d(&mut data, n, true);
    let phases = center_phases(n);
    let scale = 1.0 / (n * n) as f64;
    for my in 0..n {
        for mx in 0..n {
            data[my * n + mx] *= phases[mx] * phases[my] * scale;
        }
    }
    FourierCoeffs {
        coeffs: data,
        n,
        side_length: f.side_length(),
    }
}

/// Inverse transform: evaluates the trigonometric polynomial with the
/// given coefficients at every cell center.
pub fn synthesize(c: &FourierCoeffs) -> Result<ScalarField> {
    let n = c.n;
    let phases = center_phases(n);
    let mut data = c.coeffs.clone();
    for my in 0..n {
        for mx in 0..n {
            // Undo the cell-center phase; conj since phases are unit modulus.
            data[my * n + mx] *= phases[mx].conj() * phases[my].conj();
        }
    }
    fft_2d(&mut data, n, false);
    let values: Vec<f64> = data.iter().map(|z| z.re).collect();
    ScalarField::from_values(values, n, c.side_length)
}

/// Homogeneous Sobolev norm `‖f‖_{Ḣ^s}` of a periodic field.
///
/// For `s < 0` the field must be mean-zero up to [`MEAN_ZERO_TOL`]
/// relative to `max(1, ‖f‖_∞)`.
pub fn sobolev_norm(f: &ScalarField, s: f64) -> Result<f64> {
    let mean = f.mean();
    if s < 0.0 {
        let tol = MEAN_ZERO_TOL * f.sup_norm().max(1.0);
        if mean.abs() > tol {
            return Err(Error::MeanNotZero { mean, s, tol });
        }
    }
    let coeffs = analyze(f);
    Ok(sobolev_norm_of_coeffs(&coeffs, s))
}

/// Same sum evaluated on precomputed coefficients.
pub fn sobolev_norm_of_coeffs(coeffs: &FourierCoeffs, s: f64) -> f64 {
    let lambda_pow = coeffs.side_length.powf(2.0 * s);
    let total = kahan_sum(coeffs.iter().filter(|(kx, ky, _)| *kx != 0 || *ky != 0).map(
        |(kx, ky, c)| {
            let k2 = (kx * kx + ky * ky) as f64;
            k2.powf(s) / lambda_pow * (c.re * c.re + c.im * c.im)
        },
    ));
    total.sqrt()
}
