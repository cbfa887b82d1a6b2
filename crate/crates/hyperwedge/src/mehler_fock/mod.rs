//! Generalized Mehler–Fock transforms: integrals of `Q_ν^{−iρ}(z) Q_ν^{iρ}(ω)` against
//! odd meromorphic kernels, evaluated by quadrature and by residue series.

mod kernel;
pub(crate) mod product;
mod transform;

pub use kernel::{
    check_decay_class, kernel_catalog, Cosine, DecayClass, DoublePole, Envelope, KernelPole, KernelSum, MeromorphicKernel,
    Rational, RationalFamily, Reciprocal, WedgeFirst, WedgeSecond,
};
pub use transform::{
    addition_formula_rhs, transform_lhs, transform_rhs, transform_rhs_truncated, verify_transform, SeriesEstimate, TransformConfig, TransformReport,
    TransformRequest,
};

#[cfg(test)]
mod tests;
