//! Periodic scalar fields on the box `[0, λ]²` with cell-centered sampling.
//!
//! A field of resolution `n` stores one value per cell; cell `(ix, iy)`
//! represents the point `((ix + 1/2)h, (iy + 1/2)h)` with `h = λ/n`, and
//! both axes wrap periodically. Integrals are midpoint quadrature, i.e.
//! plain sums scaled by `h²`. Fields are immutable after construction and
//! all operations here are pure functions.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Minimum grid side accepted by every constructor.
pub const MIN_GRID_SIDE: usize = 4;

/// A real-valued periodic grid function on `[0, λ]²`.
///
/// Storage is row-major with the row index running along y: entry
/// `values[iy * n + ix]` is the sample at `x = (ix + 1/2)h`,
/// `y = (iy + 1/2)h`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    values: Vec<f64>,
    n: usize,
    side_length: f64,
}

impl ScalarField {
    /// Builds a field from row-major samples (`n * n` finite values).
    pub fn from_values(values: Vec<f64>, n: usize, side_length: f64) -> Result<Self> {
        if n < MIN_GRID_SIDE {
            return Err(Error::GridTooSmall(n));
        }
        if !(side_length.is_finite() && side_length > 0.0) {
            return Err(Error::BadSideLength(side_length));
        }
        if values.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: n * n,
                got: values.len(),
            });
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: bad / n,
                col: bad % n,
            });
        }
        Ok(Self {
            values,
            n,
            side_length,
        })
    }

    /// Samples `f(x, y)` at every cell center.
    pub fn from_fn(n: usize, side_length: f64, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if n < MIN_GRID_SIDE {
            return Err(Error::GridTooSmall(n));
        }
        if !(side_length.is_finite() && side_length > 0.0) {
            return Err(Error::BadSideLength(side_length));
        }
        let h = side_length / n as f64;
        let mut values = Vec::with_capacity(n * n);
        for iy in 0..n {
            let y = (iy as f64 + 0.5) * h;
            for ix in 0..n {
                let x = (ix as f64 + 0.5) * h;
                values.push(f(x, y));
            }
        }
        Self::from_values(values, n, side_length)
    }

    /// The constant field `c`.
    pub fn constant(n: usize, side_length: f64, c: f64) -> Result<Self> {
        Self::from_values(vec![c; n * n], n, side_length)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side_length(&self) -> f64 {
        self.side_length
    }

    /// Cell size `h = λ/n`.
    pub fn cell_size(&self) -> f64 {
        self.side_length / self.n as f64
    }

    /// Row-major samples, row index = y.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sample at cell `(ix, iy)`.
    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.n + ix]
    }

    /// Index of the cell whose center is nearest to the (periodically
    /// wrapped) point `(x, y)`.
    pub fn nearest_cell(&self, x: f64, y: f64) -> (usize, usize) {
        let h = self.cell_size();
        let n = self.n as i64;
        let fold = |coord: f64| ((coord / h - 0.5).round() as i64).rem_euclid(n) as usize;
        (fold(x), fold(y))
    }

    /// Sample at the cell nearest to `(x, y)`.
    pub fn value_at(&self, x: f64, y: f64) -> f64 {
        let (ix, iy) = self.nearest_cell(x, y);
        self.value(ix, iy)
    }

    /// Arithmetic mean of the samples; midpoint quadrature of
    /// `(1/λ²) ∫ f dx`.
    pub fn mean(&self) -> f64 {
        kahan_sum(self.values.iter().copied()) / (self.n * self.n) as f64
    }

    /// Mean of squares minus squared mean; always nonnegative.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        let msq = kahan_sum(self.values.iter().map(|v| v * v)) / (self.n * self.n) as f64;
        (msq - m * m).max(0.0)
    }

    /// `‖f‖_∞`: the largest absolute sample.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    /// Returns `f - mean(f)`.
    pub fn demean(&self) -> ScalarField {
        let m = self.mean();
        let values = self.values.iter().map(|v| v - m).collect();
        ScalarField {
            values,
            n: self.n,
            side_length: self.side_length,
        }
    }

    /// Applies `g` pointwise, keeping the grid.
    pub fn map(&self, g: impl Fn(f64) -> f64) -> Result<ScalarField> {
        Self::from_values(self.values.iter().map(|v| g(*v)).collect(), self.n, self.side_length)
    }

    /// Writes the field in the `MIXFIELD 1` text format.
    pub fn store(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_mixfield())?;
        Ok(())
    }

    /// Reads a field from the `MIXFIELD 1` text format.
    pub fn load(path: impl AsRef<Path>) -> Result<ScalarField> {
        let text = fs::read_to_string(path)?;
        Self::from_mixfield(&text)
    }

    /// Serializes to the `MIXFIELD 1` format: a magic line, a
    /// `lambda=<decimal> n=<int>` line, then n rows of n space-separated
    /// values (row = y index) at 17 significant digits.
    pub fn to_mixfield(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "MIXFIELD 1");
        let _ = writeln!(out, "lambda={:.16e} n={}", self.side_length, self.n);
        for iy in 0..self.n {
            let row = &self.values[iy * self.n..(iy + 1) * self.n];
            for (ix, v) in row.iter().enumerate() {
                if ix > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{:.16e}", v);
            }
            out.push('\n');
        }
        out
    }

    /// Parses the `MIXFIELD 1` format. The three failure modes — bad
    /// header, non-finite entry, wrong shape — map to distinct errors.
    pub fn from_mixfield(text: &str) -> Result<ScalarField> {
        let mut lines = text.lines();
        let magic = lines
            .next()
            .ok_or_else(|| Error::MalformedHeader("empty file".into()))?;
        if magic.trim() != "MIXFIELD 1" {
            return Err(Error::MalformedHeader(format!(
                "expected 'MIXFIELD 1', got '{}'",
                magic.trim()
            )));
        }
        let meta = lines
            .next()
            .ok_or_else(|| Error::MalformedHeader("missing lambda/n line".into()))?;
        let (mut lambda, mut n) = (None, None);
        for tok in meta.split_whitespace() {
            if let Some(v) = tok.strip_prefix("lambda=") {
                lambda = Some(v.parse::<f64>().map_err(|_| {
                    Error::MalformedHeader(format!("bad lambda value '{}'", v))
                })?);
            } else if let Some(v) = tok.strip_prefix("n=") {
                n = Some(v.parse::<usize>().map_err(|_| {
                    Error::MalformedHeader(format!("bad n value '{}'", v))
                })?);
            } else {
                return Err(Error::MalformedHeader(format!("unknown token '{}'", tok)));
            }
        }
        let lambda = lambda.ok_or_else(|| Error::MalformedHeader("missing lambda".into()))?;
        let n = n.ok_or_else(|| Error::MalformedHeader("missing n".into()))?;
        if n < MIN_GRID_SIDE {
            return Err(Error::GridTooSmall(n));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::BadSideLength(lambda));
        }

        let mut values = Vec::with_capacity(n * n);
        for (offset, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            for tok in line.split_whitespace() {
                let v: f64 = tok
                    .parse()
                    .map_err(|_| Error::MalformedValue { line: offset + 3 })?;
                values.push(v);
            }
        }
        ScalarField::from_values(values, n, lambda)
    }
}

/// Compensated summation; keeps normalization checks near machine epsilon
/// even for million-entry grids.
pub(crate) fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn half_field(n: usize) -> ScalarField {
        // +1 on the left half (x < λ/2), -1 on the right half.
        ScalarField::from_fn(n, 1.0, |x, _| if x < 0.5 { 1.0 } else { -1.0 }).unwrap()
    }

    #[test]
    fn mean_of_constant_is_the_constant() {
        for n in [4, 7, 64] {
            let f = ScalarField::constant(n, 2.5, 3.0).unwrap();
            assert!((f.mean() - 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn mean_of_half_field_is_zero() {
        let f = half_field(64);
        assert!(f.mean().abs() < 1e-15);
    }

    #[test]
    fn variance_of_constant_is_zero() {
        let f = ScalarField::constant(16, 1.0, 7.0).unwrap();
        assert!(f.variance().abs() < 1e-13);
    }

    #[test]
    fn variance_of_half_field_is_one() {
        let f = half_field(64);
        assert!((f.variance() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sup_norm_examples() {
        let z = ScalarField::constant(8, 1.0, 0.0).unwrap();
        assert_eq!(z.sup_norm(), 0.0);
        let f = half_field(16);
        assert_eq!(f.sup_norm(), 1.0);
        let g = f.map(|v| -2.5 * v).unwrap();
        assert_eq!(g.sup_norm(), 2.5 * f.sup_norm());
    }

    #[test]
    fn demean_constant_gives_zero_field() {
        let f = ScalarField::constant(8, 1.0, 4.0).unwrap();
        let d = f.demean();
        assert!(d.sup_norm() < 1e-14);
    }

    #[test]
    fn demean_is_idempotent() {
        let f = half_field(32);
        let d = f.demean();
        let dd = d.demean();
        for (a, b) in d.values().iter().zip(dd.values()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(d.mean().abs() <= 1e-12 * f.sup_norm().max(1.0));
    }

    #[test]
    fn demean_two_level_field() {
        // {0, 2} half/half -> {-1, +1}.
        let f = ScalarField::from_fn(16, 1.0, |x, _| if x < 0.5 { 0.0 } else { 2.0 }).unwrap();
        let d = f.demean();
        for &v in d.values() {
            assert!((v.abs() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn nearest_cell_wraps_periodically() {
        let f = ScalarField::from_fn(8, 1.0, |x, y| x + 10.0 * y).unwrap();
        // x = 1 wraps to the first column.
        assert_eq!(f.nearest_cell(1.0, 0.5), (0, 4));
        // y = 0 ties between cells 7 and 0; the tie breaks downward.
        assert_eq!(f.nearest_cell(-0.06, 0.0), (7, 7));
        assert_eq!(f.nearest_cell(0.07, 0.07), (0, 0));
    }

    #[test]
    fn store_load_round_trip_is_bit_exact() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let values: Vec<f64> = (0..64 * 64).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = ScalarField::from_values(values, 64, 1.25).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.field");
        f.store(&path).unwrap();
        let g = ScalarField::load(&path).unwrap();
        assert_eq!(f.n(), g.n());
        assert_eq!(f.side_length(), g.side_length());
        assert_eq!(f.values(), g.values());
    }

    #[test]
    fn load_rejects_nan_entry() {
        let text = "MIXFIELD 1\nlambda=1.0 n=4\n".to_string()
            + &"0 0 0 0\n".repeat(3)
            + "0 0 NaN 0\n";
        match ScalarField::from_mixfield(&text) {
            Err(Error::NonFinite { row: 3, col: 2 }) => {}
            other => panic!("expected NonFinite, got {:?}", other),
        }
    }

    #[test]
    fn load_rejects_zero_side_header() {
        let text = "MIXFIELD 1\nlambda=1.0 n=0\n";
        match ScalarField::from_mixfield(text) {
            Err(Error::GridTooSmall(0)) => {}
            other => panic!("expected GridTooSmall, got {:?}", other),
        }
    }

    #[test]
    fn load_rejects_bad_magic_and_bad_shape() {
        assert!(matches!(
            ScalarField::from_mixfield("MIXFIELD 2\nlambda=1 n=4\n"),
            Err(Error::MalformedHeader(_))
        ));
        let short = "MIXFIELD 1\nlambda=1.0 n=4\n0 0 0 0\n";
        assert!(matches!(
            ScalarField::from_mixfield(short),
            Err(Error::ShapeMismatch { expected: 16, got: 4 })
        ));
    }

    proptest! {
        #[test]
        fn variance_is_shift_invariant(c in -100.0f64..100.0, seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<f64> = (0..16 * 16).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let f = ScalarField::from_values(values, 16, 1.0).unwrap();
            let g = f.map(|v| v + c).unwrap();
            prop_assert!((f.variance() - g.variance()).abs() < 1e-10 * (1.0 + c * c));
            // variance(demean(f)) = variance(f)
            let d = f.demean();
            let rel = (f.variance() - d.variance()).abs() / f.variance().max(1e-30);
            prop_assert!(rel < 1e-10);
        }

        #[test]
        fn sup_norm_is_absolutely_homogeneous(c in -10.0f64..10.0, seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<f64> = (0..8 * 8).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let f = ScalarField::from_values(values, 8, 1.0).unwrap();
            let g = f.map(|v| c * v).unwrap();
            prop_assert_eq!(g.sup_norm(), c.abs() * f.sup_norm());
        }
    }
}
