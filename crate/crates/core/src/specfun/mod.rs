//! Real-argument special functions.

pub mod bessel;
pub mod gamma;
pub mod incgamma;
pub mod modular;
pub mod quad;
pub mod whittaker;

pub use bessel::{bessel, bessel_i, bessel_j, bessel_k, bessel_k_scaled, BesselKind};
pub use gamma::{gamma, ln_gamma, rgamma};
pub use incgamma::incomplete_gamma_upper;
pub use modular::{dedekind_eta, eisenstein_e4, klein_j, reduce_point, theta, Sl2};
pub use quad::GaussLegendre;
pub use whittaker::{whittaker, whittaker_m, whittaker_w, WhittakerArgs, WhittakerKind};
