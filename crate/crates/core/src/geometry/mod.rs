//! Smoothness, singular supports and connectedness.

mod components;
mod smooth;
mod support;

pub use components::{number_connected_components, ComponentMethod, ComponentsReport, MAX_SECTION_DEGREE};
pub use smooth::{
    codimension, is_smooth, is_smooth_mod_p, jacobian_ideal, reduce_mod_p, singular_locus, JacobianIdeal,
    MinorStrategy, SmoothnessReport, Verdict, EXHAUSTIVE_MINOR_LIMIT,
};
pub use support::{linear_support, restrict_ideal, singular_support, SingularSupport};
