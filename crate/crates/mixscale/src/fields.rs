//! Canonical field constructions: the two-level defect counterexample,
//! sign stripes, and seeded random mean-zero fields.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::ScalarField;
use crate::spectral::{synthesize, FourierCoeffs};

/// `κ = πε² / (1 - πε²)`: the threshold coupled to a disk of radius `ε`.
pub fn kappa_for_epsilon(epsilon: f64) -> f64 {
    let a = std::f64::consts::PI * epsilon * epsilon;
    a / (1.0 - a)
}

/// Inverse coupling: `ε = sqrt(κ / ((1+κ) π))`.
pub fn epsilon_for_kappa(kappa: f64) -> f64 {
    (kappa / ((1.0 + kappa) * std::f64::consts::PI)).sqrt()
}

/// The defect counterexample field with its construction metadata.
///
/// The field equals 1 on cells whose centers lie in the disk of radius
/// `ε` about `(1/2, 1/2)` and a flat negative level elsewhere. The
/// nominal level `-πε²/(1-πε²)` is adjusted to the discretized disk area
/// so the grid mean is exactly zero while `‖ρ‖_∞` stays exactly 1.
#[derive(Debug, Clone)]
pub struct DefectField {
    pub field: ScalarField,
    /// Threshold `κ = πε²/(1-πε²)` associated with `ε` (exact formula).
    pub kappa: f64,
    /// Continuum background level `-κ`.
    pub nominal_background: f64,
    /// Level actually used, matching the discretized disk area.
    pub background: f64,
    /// Number of grid cells inside the disk.
    pub disk_cells: usize,
}

impl DefectField {
    /// Background adjustment applied to enforce the zero grid mean.
    pub fn correction(&self) -> f64 {
        self.background - self.nominal_background
    }
}

/// Builds the defect field on `[0, 1]²` at resolution `n`.
///
/// `epsilon` must lie in `(0, 1/2)`; resolutions of 256 and up reproduce
/// the reference values of the construction to percent accuracy.
pub fn defect_field(epsilon: f64, n: usize) -> Result<DefectField> {
    if !(epsilon.is_finite() && epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    if n < crate::grid::MIN_GRID_SIDE {
        return Err(Error::GridTooSmall(n));
    }
    let h = 1.0 / n as f64;
    let eps2 = epsilon * epsilon;
    let mut inside = vec![false; n * n];
    let mut disk_cells = 0usize;
    for iy in 0..n {
        let dy = (iy as f64 + 0.5) * h - 0.5;
        for ix in 0..n {
            let dx = (ix as f64 + 0.5) * h - 0.5;
            if dx * dx + dy * dy <= eps2 {
                inside[iy * n + ix] = true;
                disk_cells += 1;
            }
        }
    }
    let kappa = kappa_for_epsilon(epsilon);
    let area = disk_cells as f64 / (n * n) as f64;
    // Mean zero: area * 1 + (1 - area) * background = 0.
    let background = -area / (1.0 - area);
    let values = inside
        .iter()
        .map(|&b| if b { 1.0 } else { background })
        .collect();
    Ok(DefectField {
        field: ScalarField::from_values(values, n, 1.0)?,
        kappa,
        nominal_background: -kappa,
        background,
        disk_cells,
    })
}

/// Sign stripes `sign(sin(2πm x/λ))` sampled at cell centers.
///
/// Values are exactly `±1` (zeros of the sine break toward `+1`), so the
/// mean vanishes exactly whenever `2m` divides `n` and up to a small
/// parity imbalance otherwise.
pub fn stripe_field(m: u32, n: usize, side_length: f64) -> Result<ScalarField> {
    if m < 1 || (m as usize) * 2 >= n {
        return Err(Error::ModeOutOfRange { m, n });
    }
    ScalarField::from_fn(n, side_length, |x, _| {
        let s = (2.0 * std::f64::consts::PI * f64::from(m) * x / side_length).sin();
        if s >= 0.0 {
            1.0
        } else {
            -1.0
        }
    })
}

/// Seeded random mean-zero field built in frequency space.
///
/// Every wavevector with `|kx|, |ky| <= (n-1)/2`, except `k = 0`, gets
/// magnitude `|k|^(-decay)` and a uniformly random phase (conjugate
/// symmetrized so the field is real); the result is rescaled to
/// `‖·‖_∞ = 1`. Identical arguments give a bit-identical field.
pub fn random_meanzero(seed: u64, decay: f64, n: usize, side_length: f64) -> Result<ScalarField> {
    if !(decay.is_finite() && decay >= 0.0) {
        return Err(Error::NegativeDecay(decay));
    }
    if n < crate::grid::MIN_GRID_SIDE {
        return Err(Error::GridTooSmall(n));
    }
    if !(side_length.is_finite() && side_length > 0.0) {
        return Err(Error::BadSideLength(side_length));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k_max = (n as i64 - 1) / 2;
    let nn = n as i64;
    let fold = |k: i64| k.rem_euclid(nn) as usize;
    let mut coeffs = vec![Complex::new(0.0, 0.0); n * n];
    // Canonical half-plane: ky > 0, or ky == 0 with kx > 0. Iteration
    // order is fixed so the phase stream is reproducible.
    for ky in 0..=k_max {
        let kx_range = if ky == 0 { 1..=k_max } else { -k_max..=k_max };
        for kx in kx_range {
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let amp = ((kx * kx + ky * ky) as f64).powf(-0.5 * decay);
            let z = Complex::from_polar(amp, theta);
            coeffs[fold(ky) * n + fold(kx)] = z;
            coeffs[fold(-ky) * n + fold(-kx)] = z.conj();
        }
    }
    let field = synthesize(&FourierCoeffs::from_raw(coeffs, n, side_length))?;
    let sup = field.sup_norm();
    if sup == 0.0 {
        return Ok(field);
    }
    field.map(|v| v / sup)
}

/// Decay exponents cycled by the default corpus.
pub const CORPUS_DECAYS: [f64; 3] = [0.5, 1.0, 2.0];

/// The default 50-field property-test corpus: seeds 1..=50 with decay
/// cycling through [`CORPUS_DECAYS`], on the unit box.
pub fn standard_corpus(n: usize) -> Result<Vec<ScalarField>> {
    (1..=50)
        .map(|seed| {
            let decay = CORPUS_DECAYS[(seed as usize - 1) % CORPUS_DECAYS.len()];
            random_meanzero(seed, decay, n, 1.0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::averaging::sup_ball_average;
    use crate::scales::{sg_upper_bound, Kappa};
    use crate::spectral::sobolev_norm;

    #[test]
    fn defect_kappa_and_background_match_the_coupling() {
        let d = defect_field(0.05, 256).unwrap();
        assert!((d.kappa - 0.0079162).abs() < 1e-6);
        assert!((d.nominal_background + 0.0079162).abs() < 1e-6);
        // Discretized level stays within the disk-area discretization slack.
        assert!(d.correction().abs() < 1e-3);
        // Coupling round trip.
        assert!((epsilon_for_kappa(kappa_for_epsilon(0.05)) - 0.05).abs() < 1e-14);
    }

    #[test]
    fn defect_field_is_mean_zero_with_unit_sup() {
        let d = defect_field(0.05, 256).unwrap();
        assert!(d.field.mean().abs() < 1e-14);
        assert_eq!(d.field.sup_norm(), 1.0);
        assert!(d.disk_cells > 0);
        // Two-level structure: every value is 1 or the background.
        for &v in d.field.values() {
            assert!(v == 1.0 || v == d.background);
        }
    }

    #[test]
    fn defect_epsilon_domain() {
        assert!(matches!(
            defect_field(0.0, 64),
            Err(Error::EpsilonOutOfRange(_))
        ));
        assert!(matches!(
            defect_field(0.5, 64),
            Err(Error::EpsilonOutOfRange(_))
        ));
    }

    #[test]
    fn stripe_one_is_a_balanced_half_split() {
        let f = stripe_field(1, 64, 1.0).unwrap();
        let plus = f.values().iter().filter(|&&v| v == 1.0).count();
        assert_eq!(plus * 2, 64 * 64);
        assert_eq!(f.mean(), 0.0);
        assert_eq!(f.sup_norm(), 1.0);
    }

    #[test]
    fn stripe_sup_is_one_for_every_mode() {
        for m in [1, 3, 7, 20] {
            let f = stripe_field(m, 64, 1.0).unwrap();
            assert_eq!(f.sup_norm(), 1.0);
        }
        assert!(matches!(
            stripe_field(0, 64, 1.0),
            Err(Error::ModeOutOfRange { .. })
        ));
        assert!(matches!(
            stripe_field(32, 64, 1.0),
            Err(Error::ModeOutOfRange { .. })
        ));
    }

    #[test]
    fn stripe_norm_halves_when_frequency_doubles() {
        // Oracle: the spectral module. Dominant-mode halving within 2%,
        // valid while both frequencies stay at or below n/8.
        for m in [1u32, 2, 4, 8, 16] {
            let a = sobolev_norm(&stripe_field(m, 512, 1.0).unwrap(), -1.0).unwrap();
            let b = sobolev_norm(&stripe_field(2 * m, 512, 1.0).unwrap(), -1.0).unwrap();
            let ratio = a / b;
            assert!((ratio - 2.0).abs() < 0.04, "m={m}: ratio {ratio}");
        }
    }

    #[test]
    fn random_fields_are_deterministic_and_mean_zero() {
        let a = random_meanzero(9, 1.0, 64, 1.0).unwrap();
        let b = random_meanzero(9, 1.0, 64, 1.0).unwrap();
        assert_eq!(a.values(), b.values());
        let c = random_meanzero(10, 1.0, 64, 1.0).unwrap();
        assert_ne!(a.values(), c.values());
        assert!(a.mean().abs() < 1e-10);
        assert_eq!(a.sup_norm(), 1.0);
    }

    #[test]
    fn random_field_satisfies_the_certified_bound() {
        let f = random_meanzero(1, 1.0, 256, 1.0).unwrap();
        let kappa = Kappa::new(0.3).unwrap();
        let r = sg_upper_bound(1.0, 2, kappa).unwrap();
        let sup = sup_ball_average(&f, r).unwrap();
        assert!(sup <= 0.3, "sup average {sup} at r = {r}");
    }

    #[test]
    fn corpus_is_reproducible() {
        let c1 = standard_corpus(32).unwrap();
        let c2 = standard_corpus(32).unwrap();
        assert_eq!(c1.len(), 50);
        for (a, b) in c1.iter().zip(&c2) {
            assert_eq!(a.values(), b.values());
        }
    }
}
