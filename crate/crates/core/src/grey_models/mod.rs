//! The FAGMO(1,1,k) model and its reductions.
//!
//! Fitting runs the usual pipeline: accumulate the training values at order
//! `r`, estimate `(a, b, c)` from the discrete basic equation by least
//! squares, optionally map them to `(alpha, beta, gamma)`, evaluate the
//! closed-form time response and restore with the inverse accumulation.

mod design;
mod model;
mod params;
mod persist;
mod variant;

pub use design::{background_rows, build_design, BackgroundRow, Design};
pub use model::{fit, FittedModel, OrderSearchRecord, ResponseFn, ZERO_DEVELOPMENT};
pub use params::{alpha_gap, optimize_params, BaseParams, OptParams};
pub use persist::{ModelDocument, SCHEMA_VERSION};
pub use variant::{DesignColumn, ModelVariant};
