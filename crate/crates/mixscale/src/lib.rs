//! Mixing diagnostics for scalar fields on the periodic torus.
//!
//! The crate quantifies how well a mean-zero scalar field on the periodic
//! box `[0, λ]²` is mixed, using three measurements that are standard in
//! the transport-equation literature:
//!
//! - the *functional mixing scale*: the homogeneous negative Sobolev norm
//!   `‖ρ‖_{Ḣ⁻¹}` ([`spectral::sobolev_norm`]),
//! - the *geometric mixing scale* `G(ρ; κ)`: the smallest radius at which
//!   every ball average `|A_r ρ(x)|` drops below `κ‖ρ‖_∞`
//!   ([`scales::geometric_mixing_scale`]),
//! - the *strong geometric mixing scale* `SG(ρ; κ)`: the smallest radius
//!   beyond which ball averages stay below the threshold at every point
//!   and every larger radius ([`scales::strong_geometric_mixing_scale`]).
//!
//! The two geometric scales differ on fields that look mixed at one radius
//! but not at a larger one; [`fields::defect_field`] constructs the
//! canonical two-level counterexample. [`scales::sg_upper_bound`] evaluates
//! the closed-form bound `λ√d / (1 − (1−κ)^{1/d})` above which every
//! mean-zero field satisfies the threshold, and [`transport`] advects
//! fields with alternating sine shears so the co-decay of all three
//! measurements can be observed on a time series.
//!
//! Everything operates on [`grid::ScalarField`], a cell-centered periodic
//! grid function. All operations are pure; concurrent use on distinct
//! inputs is safe.

pub mod averaging;
pub mod error;
pub mod fields;
pub mod grid;
pub mod scales;
pub mod spectral;
pub mod transport;

pub use error::{Error, Result};
pub use grid::ScalarField;
pub use scales::Kappa;
