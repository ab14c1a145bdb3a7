//! Special functions behind the main terms and the exact `p = 2` value.

mod cos_norm;
mod elliptic;
pub(crate) mod gamma;
mod hypergeom;
mod zeta;

pub use cos_norm::cos_norm;
pub use elliptic::elliptic_k;
pub use gamma::log_gamma;
pub use hypergeom::{
    f_power, f_power_integral_adaptive, f_power_via_integral, hyp2f1_unit_c, ln_hyp2f1_unit_c, HypergeomPath,
    HypergeomRequest, AUTO_SERIES_MAX_Z,
};
pub use zeta::{exact_l2_routes, exact_l2_value, zeta_tail, L2Routes, L2_ROUTE_TOL};
