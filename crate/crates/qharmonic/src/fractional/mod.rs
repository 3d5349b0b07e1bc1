//! Riemann-Liouville and Weyl q-fractional operators, their inverses through `K1`/`K2`,
//! test-function classes, and the inversion formulas built on the q-wavelet transforms.

pub mod operators;
pub mod relations;
pub mod testfn;

pub use operators::{
    k1, k1_on, k2, k2_on, k_constant, riemann_liouville, riemann_liouville_constant, riemann_liouville_inverse,
    riemann_liouville_inverse_on, weyl, weyl_constant, weyl_inverse, weyl_inverse_on,
};
pub use relations::{
    k1_weyl_wavelet, k2_wavelet, wavelet_inversion_rl, wavelet_inversion_weyl, wavelet_relation_psi_from_phi,
    weyl_wavelet, PsiFromPhi,
};
pub use testfn::{certify, make_test_function, TestClassTag, TestFunctionClass, MOMENT_TOL};

use crate::error::{DomainWarning, QError, Result};
use crate::lattice::{LatticeFunction, QContext};

fn warn_unless(f: &LatticeFunction, class: TestFunctionClass, operation: &'static str, ctx: &QContext) -> Result<Option<DomainWarning>> {
    match certify(f, class, ctx) {
        Ok(()) => Ok(None),
        Err(QError::CertificationFailure(detail)) => Ok(Some(DomainWarning { operation, detail })),
        Err(e) => Err(e),
    }
}

/// [`riemann_liouville_inverse`] plus a warning when `f` is not certified in `S_{*q,alpha}`.
pub fn riemann_liouville_inverse_checked(f: &LatticeFunction, ctx: &QContext) -> Result<(LatticeFunction, Option<DomainWarning>)> {
    let w = warn_unless(f, TestFunctionClass::S_STAR_Q_ALPHA, "riemann_liouville_inverse", ctx)?;
    Ok((riemann_liouville_inverse(f, ctx)?, w))
}

/// [`weyl_inverse`] plus a warning when `f` is not certified in `S_{*q,-1/2}`.
pub fn weyl_inverse_checked(f: &LatticeFunction, ctx: &QContext) -> Result<(LatticeFunction, Option<DomainWarning>)> {
    let w = warn_unless(f, TestFunctionClass::S_STAR_Q_MINUS_HALF, "weyl_inverse", ctx)?;
    Ok((weyl_inverse(f, ctx)?, w))
}
