//! Associated Legendre functions with complex degree and order, generalized
//! Mehler–Fock transform identities, and Green's functions and heat kernels of
//! the hyperbolic plane and of hyperbolic wedges.
//!
//! Every routine works in `f64`/`Complex<f64>` and reports failures through
//! [`Error`].

pub mod error;
pub mod hyperbolic;
pub mod hypergeometric;
pub mod legendre;
pub mod mehler_fock;
pub mod quadrature;
pub mod scalar;

pub use error::{Error, Result};
pub use hypergeometric::{hyp2f1_regularized, HypergeometricArgs};
pub use scalar::{
    gamma, gamma_ratio_asymptotic, ln_gamma, pochhammer, principal_log, principal_pow, rgamma,
    ComplexScalar, Real,
};
