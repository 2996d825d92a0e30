//! Trade-off curves between two discrete distributions `P` and `Q`.
//!
//! - [`pr`]: the precision-recall curve `(α_λ, β_λ)`.
//! - [`lorenz`]: the Lorenz curve and the ROC curve.
//! - [`renyi`]: order-∞ Rényi divergences and the frontier they trace.
//! - [`duality`]: conversions between PR and Lorenz curves through the convex conjugate.
//! - [`adaptation`]: target-error bounds for a classifier given its error set.
//! - [`oracle`] and [`verify`]: brute-force checks of the closed forms.
//! - [`scenario`]: built-in 1-D Gaussian mixture scenarios.
//!
//! Runnable examples live in `examples/`, one per module above, and the
//! `tradeoff` binary exposes the same operations from the command line.
//!
//! ```
//! use tradeoff_curves::dist::DistPair;
//! use tradeoff_curves::pr::pr_curve_default;
//!
//! let pair = DistPair::from_weights(vec![0.5, 0.5, 0.0], vec![0.25, 0.25, 0.5]).unwrap();
//! let pr = pr_curve_default(&pair);
//! assert_eq!(pr.at(1.0).unwrap().alpha, 0.5);
//! assert_eq!(pr.alpha_at_infinity(), 0.5);
//! ```

pub mod adaptation;
pub mod dist;
pub mod duality;
pub mod error;
pub mod io;
pub mod lorenz;
pub mod oracle;
pub mod pr;
pub mod renyi;
pub mod scenario;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
