//! Builders for the surfaces `S_j`, the seven-point construction and the
//! shipped fixtures.

mod fixtures;
mod lifting;
mod linear_systems;
mod surfaces;

pub use fixtures::*;
pub use lifting::{lift_first_surface, Lifting};
pub use linear_systems::{
    fat_points_ideal, inner_projection, linear_system_map, point_ideal, quadric_surface_parameterization,
    quadrics_through, reduce_to_span, veronese, PointSet,
};
pub use surfaces::{
    build_surface_pipeline, expected_invariants, plane_parameterization, sectional_genus, SurfaceInvariants,
    SurfacePipeline, MAX_ATTEMPTS, PROJECTION_POINTS,
};
