//! Finite difference–restriction algebras: `{-, ▷}`-algebras given by
//! operation tables, checked against their defining equations and
//! represented by partial functions.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod filters;
pub mod fixtures;
pub mod format;
pub mod oracle;
pub mod pfun;
pub mod representations;

pub use algebra::{Elem, ElementSet, FiniteAlgebra};
pub use error::{Error, Result};
