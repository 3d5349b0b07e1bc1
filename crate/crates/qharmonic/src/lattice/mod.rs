//! q-arithmetic, the lattice data model, Jackson integration and q-differentiation.

pub mod calculus;
mod context;
mod function;
mod grid;
pub mod io;
pub mod jackson;
pub mod qarith;

pub use calculus::{lp_norm, q_derivative, q_derivative_with_limit, rel_l2_error, seminorm};
pub use context::{QContext, DEFAULT_MAX_TERMS, DEFAULT_PRODUCT_TOL, DEFAULT_TAIL_TOL};
pub use function::{LatticeFunction, Role};
pub use grid::LatticeGrid;
pub use jackson::{
    inner_product, integrate_power, integrate_product, jackson_integral_0_to_a, jackson_integral_0_to_inf,
    jackson_integral_a_to_b, lattice_sum,
};
pub use qarith::{q_binomial, q_bracket, q_factorial, q_gamma, q_gamma_base, q_pochhammer, q_shifted_factorial, Factors};
