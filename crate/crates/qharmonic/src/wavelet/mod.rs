//! Admissible wavelets, the continuous q-wavelet transforms `Psi` (Bessel) and `Phi`
//! (classical, `alpha = -1/2`), Plancherel/Parseval, reconstruction and the reproducing kernel.

pub mod descriptor;
pub mod family;
pub mod plane;
pub mod transform;

pub use descriptor::{
    admissibility_constant, admissibility_of_laplacian, check_admissibility_zero_mean, WaveletDescriptor, WaveletKind,
};
pub use family::{dilatation, dilate, wavelet_coefficient_direct, wavelet_family};
pub use plane::{PlaneGrids, TimeScalePlane};
pub use transform::{
    auto_grids, reproducing_kernel_apply, reproducing_kernel_check, wavelet_parseval, wavelet_plancherel,
    wavelet_reconstruct, wavelet_transform, wavelet_transform_auto, wavelet_transform_on,
};

use crate::error::Result;
use crate::lattice::{LatticeFunction, QContext};

/// Classical q-wavelet transform `Phi_{q,g}(f)(a, b) = c_{-1/2,q} int f conj(T_{q,b} H_a g) d_q x`.
/// A cosine-kind descriptor is required; the computation is the `alpha = -1/2` instance of `Psi`.
pub fn classical_wavelet_transform(f: &LatticeFunction, w: &WaveletDescriptor, ctx: &QContext) -> Result<TimeScalePlane> {
    if w.kind != WaveletKind::Cosine {
        return Err(crate::error::QError::InvalidParameter("classical transform needs a cosine-kind wavelet".into()));
    }
    wavelet_transform_auto(f, w, ctx)
}
