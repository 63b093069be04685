//! Exact raw image moments from discrete Radon transform projections.
//!
//! Summing an image along integer slopes `a:b` turns each 2-D moment sum
//! into a handful of 1-D sums over a projection. Five projections
//! (`1:0`, `0:1`, `1:1`, `-1:1`, `1:2`) recover all fifteen moments up to
//! order 4 with a closed-form reconstruction ([`reconstruct`]); the
//! [`general`] module extends this to any order up to 8 by solving a small
//! binomial system per order. [`oracle`] evaluates the defining double sum
//! directly and serves as ground truth.
//!
//! All moment arithmetic is exact: projection bins are `u64`, moments are
//! `i128`, and anything that needs division goes through exact rationals.
//!
//! ```
//! use drt_moments::{moments_order4, oracle_moments, Image};
//!
//! let img = Image::from_fn(32, 24, |i, j| ((i * 7 + j * 13) % 256) as u8).unwrap();
//! assert_eq!(moments_order4(&img).unwrap(), oracle_moments(&img, 4).unwrap());
//! ```

pub mod central;
pub mod error;
pub mod general;
pub mod image;
pub mod moments;
pub mod oracle;
pub mod projection;
pub mod reconstruct;
pub mod slope;
pub mod tally;

pub use central::{central_moments, fraction_string, CentralMoments};
pub use error::{MomentError, Result};
pub use general::{
    build_system, default_slope_plan, general_slope_union, moments_general, moments_general_with_tally, solve_exact,
    BinomialSystem, SlopePlan,
};
pub use image::{image_from_pixels, Image, MAX_DIMENSION};
pub use moments::{moment_count, MomentSet, MAX_ORDER};
pub use oracle::{oracle_moments, oracle_moments_with_tally};
pub use projection::{
    moment_1d, moments_1d_batch, project, project_all_order4, project_all_order4_with_tally, Moment1D, Projection,
};
pub use reconstruct::{
    moments_order4, moments_order4_with_tally, order4_op_model, reconstruct_order4, reconstruct_order4_traced,
    ExactDivision,
};
pub use slope::SlopeRatio;
pub use tally::{OpCounts, OpTally};
