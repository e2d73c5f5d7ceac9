//! Numeric 1- and 2-holonomy of the restricted KZ 2-connection over the pentagon paths.

mod paths;
mod pentagon;
mod quad;
mod transport;

pub use paths::{c2s, check_eps, eps_max, in_triangle, BrwPath, PathSpec, Point, Segment, SurfaceKind, SurfacePoint, SurfaceSpec};
pub use pentagon::*;
pub use quad::{integrate, QuadConfig, Quadrature};
pub use transport::{
    a_coefficients, b_coefficients, path_transport, polygon_integral, surface_coefficients, surface_holonomy, Holonomy,
    SurfaceCoefficients, TDegreeSeries, N,
};
