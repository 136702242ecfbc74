//! Exact decision procedures for *basic* subsets of integer grids.
//!
//! A finite `M ⊂ [n]^d` is basic when every function on `M` splits as
//! `f(x_1, ..., x_d) = f_1(x_1) + ... + f_d(x_d)`. This crate decides that
//! with exact arithmetic and returns checkable certificates either way:
//! coordinate decompositions, integer annihilation functions, balanced
//! two-colorings, bipartite components and rectangle decompositions. It
//! also generates the known extremal families and searches small grids.
//!
//! The linear algebra is generic over an exact integer scalar
//! ([`scalar::ExactInt`]); the aliases below fix the default big-integer
//! instantiation used by the public convenience functions.

pub mod basis;
pub mod constructions;
pub mod error;
pub mod exactlin;
pub mod graphs;
pub mod grid;
pub mod json;
pub mod rectangles;
pub mod scalar;
pub mod search;

pub use basis::{
    annihilation_basis, greedy_singleton_filter, incidence_matrix, irreducible_annihilation,
    is_basic, is_basic_2d_fast, is_minimal_nonbasic, solve_additive_decomposition,
    two_coloring_criterion, BasisVerdict, Certificate, CoordinateDecomposition, Decomposition,
};
pub use error::{Error, Result};
pub use grid::{GridShape, Layer, Point, PointSet, WeightFunction};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Integer matrix over [`Int`].
pub type IntMatrix = exactlin::ExactMatrix<Int>;
/// Integer-valued weight function (annihilation functions, colorings).
pub type IntWeights = WeightFunction<Int>;
/// Rational-valued weight function (functions to decompose).
pub type RationalWeights = WeightFunction<Rational>;
