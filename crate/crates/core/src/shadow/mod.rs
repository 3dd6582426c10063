//! Gleason-basis expansion of weight enumerators, the shadow-refinement
//! criterion and the piecewise shadow bounds it improves.

mod alpha;
mod bound;
mod gleason;
mod refine;

pub use alpha::{
    alpha_i0, alpha_i0_oracle, alpha_offdiag, alpha_series, alpha_series_with_order,
    lagrange_burmann_oracle, AlphaTriangle,
};
pub use bound::{shadow_bound_value, BoundStatus, ShadowBoundValue};
pub use gleason::{gleason_basis, gleason_from_weight, shadow_from_gleason, GleasonCoefficients};
pub use refine::{
    modulus, prop1_check, prop1_trace_holds, refinement_depth, scan_refinement, RefinementDepth,
    ScanOutcome, ScanRow,
};
