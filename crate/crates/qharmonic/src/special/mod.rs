//! Basic hypergeometric series, the normalized q-Bessel function, the q-exponential,
//! the q-Bessel operator and the Gaussian wavelet.

pub mod bessel;
pub mod exp;
pub mod operator;
pub mod series;

pub use bessel::{
    estim_bound_1, estim_bound_2, j_bessel_third, j_normalized, normalization_constant, q_cosine, sample_j, BesselJ,
};
pub use exp::{
    gaussian, gaussian_amplitude, gaussian_exponent, gaussian_wavelet, q_exponential_sq, q_exponential_sq_offset,
    sample_q_exponential,
};
pub use operator::{q_bessel_operator, q_laplacian_even};
pub use series::phi_1_1;
