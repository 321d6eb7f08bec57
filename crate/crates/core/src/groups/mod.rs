//! The quad groups: builders, dihedral canonical labels, minimal generating
//! sets and certified rewriting.

mod build;
mod lambda;
mod quad;
mod rewrite;

pub use build::{
    build, build_delta, build_delta_reduced, build_gamma, build_gamma_hat, delta_substitution, pentagon_quads,
    pentagon_signs,
};
pub use lambda::{binomial, lambda_generators, lambda_size};
pub use quad::{
    canonical_quad, canonical_quads, increasing_quads, is_canonical, ordered_quads, Quad, QuadTable,
};
pub use rewrite::{rewrite_in_lambda, verify_certificate, Certificate, Move, Rewriter};
