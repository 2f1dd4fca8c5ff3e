//! The ball-averaging operator `A_r` and sup-average profiles.
//!
//! `A_r ρ(x)` is the average of `ρ` over the radius-`r` ball centered at
//! `x`, taken periodically: the discrete kernel is the lattice-periodized
//! indicator of `B(0, r)`, so radii larger than the box are legal (a cell
//! accumulates the overlap of every ball translate). Cells cut by the
//! ball boundary carry fractional weight estimated by 4x4 subsampling;
//! the kernel is then normalized to unit mass so averaging a constant
//! returns that constant.
//!
//! Averages are evaluated as periodic convolutions in frequency space
//! (`O(n² log n)` per radius); [`ball_average_direct`] is the brute-force
//! reference path used to validate the spectral one.

use rustfft::num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::{kahan_sum, ScalarField};
use crate::spectral::fft_2d;

/// Lebesgue measure of the unit ball in dimension `d`, for `1 <= d <= 10`.
pub fn unit_ball_volume(d: u32) -> Result<f64> {
    if !(1..=10).contains(&d) {
        return Err(Error::DimensionOutOfRange { d, min: 1, max: 10 });
    }
    // v_1 = 2, v_2 = pi, v_d = v_{d-2} * 2 pi / d.
    let mut vols = [0.0; 11];
    vols[1] = 2.0;
    vols[2] = std::f64::consts::PI;
    for k in 3..=10 {
        vols[k] = vols[k - 2] * 2.0 * std::f64::consts::PI / k as f64;
    }
    Ok(vols[d as usize])
}

/// Discretized, normalized indicator of the radius-`r` ball on an
/// `n x n` periodic grid of side `λ`.
///
/// `weights[vy * n + vx]` is the density weight for the displacement
/// `((vx)h, (vy)h)` (indices fold periodically, so `vx > n/2` means a
/// negative displacement). The invariant `Σ weights · h² = 1` holds to
/// machine precision.
#[derive(Debug, Clone)]
pub struct BallKernel {
    radius: f64,
    n: usize,
    side_length: f64,
    weights: Vec<f64>,
}

/// Subsample offsets (in units of `h`) for boundary cells: centers of a
/// 4x4 partition of the cell.
const SUBSAMPLE_OFFSETS: [f64; 4] = [-0.375, -0.125, 0.125, 0.375];

impl BallKernel {
    pub fn new(n: usize, side_length: f64, radius: f64) -> Result<Self> {
        if n < crate::grid::MIN_GRID_SIDE {
            return Err(Error::GridTooSmall(n));
        }
        if !(side_length.is_finite() && side_length > 0.0) {
            return Err(Error::BadSideLength(side_length));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::NonPositiveRadius(radius));
        }

        let h = side_length / n as f64;
        let half_diag = h * std::f64::consts::FRAC_1_SQRT_2;
        let r_in = radius - half_diag; // dist <= r_in  => cell fully inside
        let r_out = radius + half_diag; // dist >= r_out => cell fully outside
        let r_in2 = if r_in > 0.0 { r_in * r_in } else { -1.0 };
        let r_out2 = r_out * r_out;
        let r2 = radius * radius;

        let mut acc = vec![0.0_f64; n * n];
        let u_max = (r_out / h).floor() as i64 + 1;
        for u in -u_max..=u_max {
            let uy = u as f64 * h;
            let row_d2 = uy * uy;
            if row_d2 >= r_out2 {
                continue;
            }
            let ru = u.rem_euclid(n as i64) as usize;
            let row = &mut acc[ru * n..(ru + 1) * n];

            let span_out = (r_out2 - row_d2).sqrt();
            let v_out = (span_out / h).floor() as i64;
            let mut v_in = if r_in2 > row_d2 {
                ((r_in2 - row_d2).sqrt() / h).floor() as i64
            } else {
                -1
            };
            // Floating-point guard: certify the interior bound directly.
            while v_in >= 0 && row_d2 + (v_in as f64 * h).powi(2) > r_in2 {
                v_in -= 1;
            }

            if v_in >= 0 {
                range_add(row, n, -v_in, 2 * v_in + 1, 1.0);
            }
            // Boundary band, symmetric in v.
            for v in (v_in + 1)..=v_out {
                let vx = v as f64 * h;
                let d2 = row_d2 + vx * vx;
                let frac = if d2 <= r_in2 {
                    1.0
                } else if d2 >= r_out2 {
                    0.0
                } else {
                    cell_fraction(vx, uy, h, r2)
                };
                if frac > 0.0 {
                    let col = (v.rem_euclid(n as i64)) as usize;
                    row[col] += frac;
                    if v > 0 {
                        let col_neg = ((-v).rem_euclid(n as i64)) as usize;
                        row[col_neg] += frac;
                    }
                }
            }
        }

        let mut total = kahan_sum(acc.iter().copied());
        if total <= 0.0 {
            // Ball smaller than the subsample resolution: averaging
            // degenerates to the identity.
            acc[0] = 1.0;
            total = 1.0;
        }
        let norm = 1.0 / (total * h * h);
        for w in &mut acc {
            *w *= norm;
        }
        Ok(Self {
            radius,
            n,
            side_length,
            weights: acc,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side_length(&self) -> f64 {
        self.side_length
    }

    /// Density weights, row-major; `Σ weights · h² = 1`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn check_compatible(&self, f: &ScalarField) -> Result<()> {
        if f.n() != self.n || f.side_length() != self.side_length {
            return Err(Error::Mismatch(format!(
                "kernel grid ({}, {}) vs field grid ({}, {})",
                self.n,
                self.side_length,
                f.n(),
                f.side_length()
            )));
        }
        Ok(())
    }

    /// Unnormalized DFT of the mass weights (`weights · h²`); real because
    /// the kernel is symmetric under negation.
    pub(crate) fn transfer(&self) -> Vec<f64> {
        let h2 = (self.side_length / self.n as f64).powi(2);
        let mut data: Vec<Complex<f64>> = self
            .weights
            .iter()
            .map(|&w| Complex::new(w * h2, 0.0))
            .collect();
        fft_2d(&mut data, self.n, true);
        data.iter().map(|z| z.re).collect()
    }
}

/// Fraction of the cell centered at `(cx, cy)` (side `h`) covered by the
/// ball of squared radius `r2`, by 4x4 subsampling.
fn cell_fraction(cx: f64, cy: f64, h: f64, r2: f64) -> f64 {
    let mut count = 0u32;
    for oy in SUBSAMPLE_OFFSETS {
        let y = cy + oy * h;
        for ox in SUBSAMPLE_OFFSETS {
            let x = cx + ox * h;
            if x * x + y * y <= r2 {
                count += 1;
            }
        }
    }
    f64::from(count) / 16.0
}

/// Adds `val` to `len` consecutive entries starting at (signed) index
/// `start`, folding periodically into a row of length `n`.
fn range_add(row: &mut [f64], n: usize, start: i64, len: i64, val: f64) {
    if len <= 0 {
        return;
    }
    let wraps = len / n as i64;
    if wraps > 0 {
        let bump = wraps as f64 * val;
        for c in row.iter_mut() {
            *c += bump;
        }
    }
    let rem = (len % n as i64) as usize;
    if rem == 0 {
        return;
    }
    let s = start.rem_euclid(n as i64) as usize;
    if s + rem <= n {
        for c in &mut row[s..s + rem] {
            *c += val;
        }
    } else {
        for c in &mut row[s..] {
            *c += val;
        }
        for c in &mut row[..s + rem - n] {
            *c += val;
        }
    }
}

/// Periodic convolution of the field spectrum with a real kernel transfer
/// function, returning the spatial result.
fn convolve_spectrum(
    field_spectrum: &[Complex<f64>],
    transfer: &[f64],
    n: usize,
    side_length: f64,
) -> Result<ScalarField> {
    let mut data: Vec<Complex<f64>> = field_spectrum
        .iter()
        .zip(transfer)
        .map(|(z, t)| z * t)
        .collect();
    fft_2d(&mut data, n, false);
    let scale = 1.0 / (n * n) as f64;
    let values: Vec<f64> = data.iter().map(|z| z.re * scale).collect();
    ScalarField::from_values(values, n, side_length)
}

fn field_spectrum(f: &ScalarField) -> Vec<Complex<f64>> {
    let mut data: Vec<Complex<f64>> = f.values().iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft_2d(&mut data, f.n(), true);
    data
}

/// `A_r f` on the grid via frequency-domain convolution.
pub fn ball_average(f: &ScalarField, radius: f64) -> Result<ScalarField> {
    let kernel = BallKernel::new(f.n(), f.side_length(), radius)?;
    ball_average_with_kernel(f, &kernel)
}

/// `A_r f` with a prebuilt kernel (spectral path).
pub fn ball_average_with_kernel(f: &ScalarField, kernel: &BallKernel) -> Result<ScalarField> {
    kernel.check_compatible(f)?;
    convolve_spectrum(
        &field_spectrum(f),
        &kernel.transfer(),
        f.n(),
        f.side_length(),
    )
}

/// Brute-force direct-summation evaluation of `A_r f` with the same
/// kernel; `O(n⁴)`. Reference path for validating the spectral backend.
pub fn ball_average_direct(f: &ScalarField, kernel: &BallKernel) -> Result<ScalarField> {
    kernel.check_compatible(f)?;
    let n = f.n();
    let h2 = f.cell_size() * f.cell_size();
    let w = kernel.weights();
    let v = f.values();
    let mut out = vec![0.0_f64; n * n];
    for iy in 0..n {
        for ix in 0..n {
            let mut sum = 0.0;
            for vy in 0..n {
                let fy = (iy + n - vy) % n;
                let row = &w[vy * n..(vy + 1) * n];
                let frow = &v[fy * n..(fy + 1) * n];
                for (vx, wv) in row.iter().enumerate() {
                    if *wv != 0.0 {
                        let fx = (ix + n - vx) % n;
                        sum += wv * frow[fx];
                    }
                }
            }
            out[iy * n + ix] = sum * h2;
        }
    }
    ScalarField::from_values(out, n, f.side_length())
}

/// `sup_x |A_r f(x)|` over the grid.
pub fn sup_ball_average(f: &ScalarField, radius: f64) -> Result<f64> {
    Ok(ball_average(f, radius)?.sup_norm())
}

/// The sampled sup-average profile `r -> F(r) = sup_x |A_r f(x)|`.
#[derive(Debug, Clone)]
pub struct SupAverageProfile {
    radii: Vec<f64>,
    values: Vec<f64>,
    sup_norm: f64,
    side_length: f64,
}

impl SupAverageProfile {
    pub(crate) fn new(radii: Vec<f64>, values: Vec<f64>, sup_norm: f64, side_length: f64) -> Self {
        Self {
            radii,
            values,
            sup_norm,
            side_length,
        }
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `‖f‖_∞` of the profiled field, recorded at build time.
    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    pub fn side_length(&self) -> f64 {
        self.side_length
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }
}

fn validate_radii(radii: &[f64]) -> Result<()> {
    for (i, &r) in radii.iter().enumerate() {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::NonPositiveRadius(r));
        }
        if i > 0 && radii[i - 1] >= r {
            return Err(Error::UnsortedRadii);
        }
    }
    Ok(())
}

/// A reusable family of ball kernels over a fixed radius scan, with
/// transfer functions precomputed. Evaluating many fields against the
/// same scan (time series, corpora) amortizes kernel construction.
#[derive(Debug, Clone)]
pub struct KernelSet {
    n: usize,
    side_length: f64,
    radii: Vec<f64>,
    transfers: Vec<Vec<f64>>,
}

impl KernelSet {
    pub fn new(n: usize, side_length: f64, radii: &[f64]) -> Result<Self> {
        validate_radii(radii)?;
        let mut transfers = Vec::with_capacity(radii.len());
        for &r in radii {
            transfers.push(BallKernel::new(n, side_length, r)?.transfer());
        }
        Ok(Self {
            n,
            side_length,
            radii: radii.to_vec(),
            transfers,
        })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Evaluates `F(r) = sup_x |A_r f(x)|` at every radius of the set.
    pub fn sup_profile(&self, f: &ScalarField) -> Result<SupAverageProfile> {
        if f.n() != self.n || f.side_length() != self.side_length {
            return Err(Error::Mismatch(format!(
                "kernel set grid ({}, {}) vs field grid ({}, {})",
                self.n,
                self.side_length,
                f.n(),
                f.side_length()
            )));
        }
        let spectrum = field_spectrum(f);
        let mut values = Vec::with_capacity(self.radii.len());
        for transfer in &self.transfers {
            let avg = convolve_spectrum(&spectrum, transfer, self.n, self.side_length)?;
            values.push(avg.sup_norm());
        }
        Ok(SupAverageProfile::new(
            self.radii.clone(),
            values,
            f.sup_norm(),
            f.side_length(),
        ))
    }
}

/// Batch evaluation of the sup-average profile over a radius scan.
pub fn sup_average_profile(f: &ScalarField, radii: &[f64]) -> Result<SupAverageProfile> {
    KernelSet::new(f.n(), f.side_length(), radii)?.sup_profile(f)
}

/// `count` logarithmically spaced radii from `min` to `max` inclusive.
pub fn log_spaced_radii(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && min > 0.0) {
        return Err(Error::NonPositiveRadius(min));
    }
    if count < 2 || max <= min {
        return Err(Error::UnsortedRadii);
    }
    let ratio = (max / min).ln();
    let radii: Vec<f64> = (0..count)
        .map(|i| min * (ratio * i as f64 / (count - 1) as f64).exp())
        .collect();
    validate_radii(&radii)?;
    Ok(radii)
}

/// `count` linearly spaced radii from `min` to `max` inclusive.
pub fn lin_spaced_radii(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && min > 0.0) {
        return Err(Error::NonPositiveRadius(min));
    }
    if count < 2 || max <= min {
        return Err(Error::UnsortedRadii);
    }
    let step = (max - min) / (count - 1) as f64;
    let radii: Vec<f64> = (0..count).map(|i| min + step * i as f64).collect();
    validate_radii(&radii)?;
    Ok(radii)
}
