//! Exact differential forms with algebra-valued rational coefficients, and the
//! Knizhnik-Zamolodchikov 2-connection on four points.

mod algform;
mod kz;
mod poly;
mod ratfun;

pub use algform::{lift, AlgForm, Chart, FormCoeff};
pub use kz::{
    chart_triangle, chart_y4, curvature_normalization, chart_zuvw, extract_m, fake_flatness, kz_connection, phi_images, phi_inverse_images,
    reference_m, reference_pullback, reference_restriction, pullback_phi, restrict_triangle, two_flatness, FakeFlatReport,
    TwoFlatReport,
};
pub use poly::{grlex, Exps, Poly};
pub use ratfun::RatFun;
