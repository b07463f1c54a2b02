pub mod births;
pub mod error;
pub mod graded;
pub mod io;
pub mod kan;
pub mod linalg;
pub mod pmod;
pub mod poset;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{FieldSpec, Matrix};
pub use poset::{ElementSet, Poset};
pub use pmod::{ModuleMorphism, PersModule};
