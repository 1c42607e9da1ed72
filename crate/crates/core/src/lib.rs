//! Exact computer algebra for free combinatorial Hopf algebras.
//!
//! The crate models the free commutative (bosonic, Coulomb) and free
//! noncommutative (tensor) Hopf algebras generated by primitive symbols
//! `phi_i(x_S)`, expands basis elements into brackettings with their symmetry
//! factors, builds the associated interaction graphs, and evaluates linear
//! forms through the convolution calculus. Both linked-cluster identities
//! (the Möbius-inverted expectation and the logarithm of the moment series)
//! are available as executable checks.
//!
//! All arithmetic is over exact rationals. Nothing in the crate uses floating
//! point.
//!
//! Module map:
//!
//! - [`algebra`]: generators, monomials, polynomials, restriction, relabelling
//! - [`coproduct`]: coproduct and iterated (reduced) coproducts
//! - [`graphication`]: brackettings, the graphication map, symmetry factors
//! - [`partitions`]: set-partition lattice, incidence algebra, Möbius function
//! - [`graphs`]: interaction graphs, connected components, DOT export
//! - [`forms`]: linear forms, convolution, `exp*`/`log*`, connected sums
//! - [`linked_cluster`]: combinatorial and functional linked-cluster checks
//! - [`random`]: seeded generators of monomials and table forms

pub mod algebra;
pub mod coproduct;
mod error;
pub mod exec;
pub mod forms;
pub mod graphication;
pub mod graphs;
pub mod linked_cluster;
pub mod partitions;
pub mod random;
mod scalar;

pub use algebra::{ArityProfile, Generator, Label, Mode, Monomial, Polynomial};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graphication::{graphicate, symmetry_factor, Bracketting};
pub use scalar::{factorial, parse_rational, Rational};
