//! Extraction of the geometric and strong geometric mixing scales from a
//! sup-average profile, plus the closed-form radius bounds.
//!
//! Both scales reduce to threshold scans over `F(r) = sup_x |A_r ρ(x)|`:
//! with `S = {r : F(r) <= κ‖ρ‖_∞}`, the geometric mixing scale is the
//! infimum of `S` while the strong one sits just above the last radius
//! outside `S`. `F` is not monotone (a field can look mixed at one radius
//! and fail at a larger one), so bisection is unsound and the scan is
//! taken over an explicit radius grid; returned scales are grid outer
//! approximations, exact to within one scan step.
//!
//! For mean-zero fields, [`sg_upper_bound`] gives the radius
//! `λ√d / (1 - (1-κ)^{1/d})` beyond which the threshold always holds, so
//! a scan that reaches it certifies the strong scale.

use crate::averaging::{self, SupAverageProfile};
use crate::error::{Error, Result};
use crate::grid::ScalarField;

/// Accuracy parameter `κ`, strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kappa(f64);

impl Kappa {
    pub fn new(value: f64) -> Result<Self> {
        if !(value.is_finite() && value > 0.0 && value < 1.0) {
            return Err(Error::KappaOutOfRange(value));
        }
        Ok(Self(value))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for Kappa {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Result of a mixing-scale scan.
///
/// `scale` is `None` when no scanned radius satisfies the condition (the
/// not-found sentinel); otherwise it equals `radii[index]`.
#[derive(Debug, Clone)]
pub struct ScaleReport {
    pub kappa: Kappa,
    /// Extracted scale, in length units; `None` if not found in the scan.
    pub scale: Option<f64>,
    /// Scan index of `scale`.
    pub index: Option<usize>,
    /// The radius grid that was scanned.
    pub radii: Vec<f64>,
    /// `‖ρ‖_∞` used in the threshold.
    pub sup_norm: f64,
    /// Whether `F(r) <= κ‖ρ‖_∞` held at the largest scanned radius.
    pub held_at_max: bool,
    /// For the strong scale: whether the scan reached the closed-form
    /// bound, so no failures can exist beyond it (mean-zero fields).
    /// Always true for the geometric scale.
    pub certified: bool,
}

/// Geometric mixing scale: the smallest scanned radius whose sup average
/// falls below `κ‖ρ‖_∞`.
pub fn geometric_mixing_scale(profile: &SupAverageProfile, kappa: Kappa) -> Result<ScaleReport> {
    if profile.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let threshold = kappa.value() * profile.sup_norm();
    let index = profile.values().iter().position(|&v| v <= threshold);
    let held_at_max = *profile.values().last().unwrap() <= threshold;
    Ok(ScaleReport {
        kappa,
        scale: index.map(|i| profile.radii()[i]),
        index,
        radii: profile.radii().to_vec(),
        sup_norm: profile.sup_norm(),
        held_at_max,
        certified: true,
    })
}

/// Strong geometric mixing scale: one scan step above the largest radius
/// whose sup average exceeds `κ‖ρ‖_∞`, or the smallest scanned radius if
/// no radius fails.
///
/// A certified answer requires the scan to reach [`sg_upper_bound`]; a
/// shorter scan yields `certified = false`, and a failure at the scan
/// maximum yields the not-found sentinel.
pub fn strong_geometric_mixing_scale(
    profile: &SupAverageProfile,
    kappa: Kappa,
) -> Result<ScaleReport> {
    if profile.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let threshold = kappa.value() * profile.sup_norm();
    let last_fail = profile.values().iter().rposition(|&v| v > threshold);
    let held_at_max = *profile.values().last().unwrap() <= threshold;
    let bound = sg_upper_bound(profile.side_length(), 2, kappa)?;
    let certified = *profile.radii().last().unwrap() >= bound;
    let index = match last_fail {
        None => Some(0),
        Some(j) if j + 1 < profile.len() => Some(j + 1),
        Some(_) => None, // failing at the scan maximum: scale not bracketed
    };
    Ok(ScaleReport {
        kappa,
        scale: index.map(|i| profile.radii()[i]),
        index,
        radii: profile.radii().to_vec(),
        sup_norm: profile.sup_norm(),
        held_at_max,
        certified,
    })
}

/// Radius beyond which every mean-zero field on `[0, λ]^d` satisfies
/// `|A_r ρ(x)| <= κ‖ρ‖_∞`: `λ√d / (1 - (1-κ)^{1/d})`.
pub fn sg_upper_bound(side_length: f64, d: u32, kappa: Kappa) -> Result<f64> {
    if !(side_length.is_finite() && side_length > 0.0) {
        return Err(Error::BadSideLength(side_length));
    }
    if !(1..=10).contains(&d) {
        return Err(Error::DimensionOutOfRange { d, min: 1, max: 10 });
    }
    let df = f64::from(d);
    Ok(side_length * df.sqrt() / (1.0 - (1.0 - kappa.value()).powf(1.0 / df)))
}

/// The two algebraically equal closed forms of the `d = 2` bound at
/// `λ = 1`: `√2 / (1 - √(1-κ))` and `√2 (1 + √(1-κ)) / κ`.
pub fn sg_bound_forms(kappa: Kappa) -> (f64, f64) {
    let root = (1.0 - kappa.value()).sqrt();
    let sqrt2 = std::f64::consts::SQRT_2;
    (sqrt2 / (1.0 - root), sqrt2 * (1.0 + root) / kappa.value())
}

/// The sub-radius `δ = κ r / 12` at which κ/2-smallness of averages
/// forces κ-smallness at radius `r`.
pub fn crippa_radius(kappa: Kappa, r: f64) -> f64 {
    debug_assert!(r > 0.0);
    kappa.value() * r / 12.0
}

/// Outcome of checking both sides of the small-radius-to-large-radius
/// averaging implication on a concrete field.
#[derive(Debug, Clone)]
pub struct CrippaReport {
    /// `sup_x |A_δ f| <= (κ/2) ‖f‖_∞`
    pub hypothesis_holds: bool,
    /// `sup_x |A_r f| <= κ ‖f‖_∞`
    pub conclusion_holds: bool,
    pub delta_sup: f64,
    pub r_sup: f64,
    pub sup_norm: f64,
    pub kappa: Kappa,
    pub r: f64,
    pub delta: f64,
}

/// Evaluates both sides of the implication "κ/2-mixed at radius
/// `δ <= κr/12` implies κ-mixed at radius `r`" for one field. The caller
/// asserts `hypothesis_holds => conclusion_holds`; a false hypothesis
/// makes no claim.
pub fn verify_crippa_implication(
    f: &ScalarField,
    kappa: Kappa,
    r: f64,
    delta: f64,
) -> Result<CrippaReport> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    let max_delta = crippa_radius(kappa, r);
    if !(delta.is_finite() && delta > 0.0 && delta <= max_delta && delta < r) {
        return Err(Error::BadCrippaRadius {
            delta,
            max: max_delta,
        });
    }
    let sup_norm = f.sup_norm();
    let delta_sup = averaging::sup_ball_average(f, delta)?;
    let r_sup = averaging::sup_ball_average(f, r)?;
    Ok(CrippaReport {
        hypothesis_holds: delta_sup <= 0.5 * kappa.value() * sup_norm,
        conclusion_holds: r_sup <= kappa.value() * sup_norm,
        delta_sup,
        r_sup,
        sup_norm,
        kappa,
        r,
        delta,
    })
}

/// Default scan for scale extraction: 64 log-spaced radii from the cell
/// size up to 1.05x the certification bound for the given `κ`.
pub fn default_radius_scan(n: usize, side_length: f64, kappa: Kappa) -> Result<Vec<f64>> {
    let h = side_length / n as f64;
    let max = sg_upper_bound(side_length, 2, kappa)? * 1.05;
    averaging::log_spaced_radii(h, max, 64)
}
