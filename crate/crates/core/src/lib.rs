//! Exact linear algebra for abelian extensions of Lie superalgebras.
//!
//! Given `0 -> a -> e -> g -> 0` with `a` abelian, this crate computes the
//! low-degree cohomology `H^1`, `H^2(g, a)_0`, decides whether endomorphisms
//! of `a` extend and endomorphisms of `g` lift to `e`, and produces explicit
//! witnesses or obstruction classes.
//!
//! Everything is generic over an exact field ([`Scalar`]); [`Rat`] is the
//! arbitrary precision default and the aliases below fix it.

pub mod cohomology;
pub mod error;
pub mod extension;
pub mod fixtures;
pub mod linalg;
pub mod scalar;
pub mod sequences;
pub mod superalg;

pub use error::{Error, Result};
pub use linalg::{LinalgError, Matrix as GenericMatrix, QuotientPresentation, Subspace};
pub use scalar::Scalar;
pub use superalg::{SuperBasis, Violation};

pub type Rat = num_rational::BigRational;
pub type Matrix = linalg::Matrix<Rat>;
pub type Algebra = superalg::LieSuperalgebra<Rat>;
pub type Module = superalg::ModuleAction<Rat>;
pub type LinearMap = superalg::GradedLinearMap<Rat>;
pub type Extension = extension::AbelianExtension<Rat>;
pub type Cochain1 = cohomology::Cochain1<Rat>;
pub type Cochain2 = cohomology::Cochain2<Rat>;
pub type Class = cohomology::CohomologyClass<Rat>;
