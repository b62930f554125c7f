//! Exact homology computations for ample groupoids, Steinberg algebras and
//! Exel-Pardo algebras.
//!
//! Everything is computed over the integers (or the rationals, where ranks are
//! all that is needed). Smith normal form is the only numerical primitive.

pub mod abgroup;
pub mod algebra;
pub mod chain;
pub mod ep;
pub mod error;
pub mod graph;
pub mod group;
pub mod groupoid;
pub mod matrix;
pub mod scalar;
pub mod smith;

pub use abgroup::{AbGroupMap, FgAbelianGroup, Presentation};
pub use chain::{ChainComplex, ChainMap, Ring, SemicyclicModule};
pub use ep::{EpTuple, FiniteTuple, IntegerTuple};
pub use error::{Error, Result};
pub use graph::Graph;
pub use group::FiniteGroup;
pub use groupoid::FiniteGroupoid;
pub use matrix::IntMatrix;
