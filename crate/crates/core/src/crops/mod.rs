//! CR geometry of the Rossi spheres `S³_t` and its operators.

pub mod forms;
pub mod frame;
pub mod geometry;
pub mod operators;
pub mod verify;

pub use frame::{frame_apply, FrameTag, VectorField};
pub use geometry::{connection_data, RossiGeometry, StructureCheck};
pub use operators::{
    covariant_first, covariant_second, dc_cr_components, ddc_components, kohn_laplacian, kohn_laplacian_bar, p1, p1bar,
    paneitz, paneitz_from_components, paneitz_route_a, paneitz_route_b, q_bar, q_op, reeb, sub_laplacian,
    torsion_derivative, DcComponents, Idx,
};
pub use verify::{sample_polynomials, verify_structure_equations, IdentityResult, VerifyOptions, VerifyReport};
