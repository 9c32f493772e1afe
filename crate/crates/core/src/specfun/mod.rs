//! Special functions used by the solvers.

mod bessel;
mod legendre;
mod overlap;

pub use bessel::{
    sph_bessel, sph_h1, sph_h2, sph_i, sph_i_scaled, sph_i_scaled_array, sph_j, sph_j_array, sph_k,
    sph_k_scaled, sph_k_scaled_array, sph_y, sph_y_array, BesselKind, BesselPair,
};
pub use legendre::legendre_p;
pub(crate) use legendre::legendre_with_derivative;
pub use overlap::{overlap, OverlapTable};
