//! Monoids, acts, graded algebras and their modules.

pub mod act;
pub mod algebra;
pub mod modules;
pub mod monoid;
pub mod smash;

pub use act::{GAct, Preorder};
pub use algebra::GradedAlgebra;
pub use modules::{FunctorModule, GradedModule, SmashModule};
pub use monoid::Monoid;
pub use smash::SmashAlgebra;
