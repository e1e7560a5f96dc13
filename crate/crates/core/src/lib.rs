//! Exact arithmetic for modular knots: closed geodesics on the modular
//! surface, coded by cyclic words in `L` and `R`.

pub mod braid3;
pub mod charvar;
pub mod error;
pub mod linking;
pub mod modgroup;
pub mod qdeform;
pub mod qmbasis;
pub mod surd;
pub mod words;

pub use error::{Error, Result};
pub use modgroup::{Conjugacy, MatZ};
pub use words::{CyclicWord, Letter, Word};
