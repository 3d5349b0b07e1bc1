//! Generalized translation, the q-Bessel and q-cosine Fourier transforms, convolution.

pub mod convolution;
pub mod fourier;
pub mod translation;

pub use convolution::{bessel_convolve, cosine_convolve};
pub use fourier::{
    bessel_fourier, bessel_fourier_inverse, bessel_fourier_inverse_on, bessel_fourier_on, cosine_fourier,
    cosine_fourier_inverse, orthogonality_check, orthogonality_constant,
};
pub use translation::{even_translate, translate, translation_coefficient, TranslationKernel};
