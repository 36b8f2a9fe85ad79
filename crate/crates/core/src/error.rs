use thiserror::Error;

use crate::algebra::laws::AxiomReport;

/// Maximum number of elements a [`crate::FiniteAlgebra`] may have.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table error: {table}[{row}][{col}] = {value} is not an element id below {size}")]
    Table {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("table shape error: {0}")]
    Shape(String),
    #[error("an algebra must have at least one element")]
    Empty,
    #[error("size cap exceeded: {what} has {actual} elements, cap is {cap}")]
    SizeCap {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
    #[error("no zero element: {a} - {a} = {za} but {b} - {b} = {zb}")]
    NoZero { a: usize, za: usize, b: usize, zb: usize },
    #[error("inconsistent algebra: {law} fails at {witness:?}")]
    Inconsistent { law: String, witness: Vec<usize> },
    #[error("axioms fail:\n{0}")]
    Axioms(Box<AxiomReport>),
    #[error("not functional: pairs ({x},{y}) and ({x},{z})")]
    NotFunctional { x: u32, y: u32, z: u32 },
    #[error("base mismatch: {0} points vs {1} points")]
    BaseMismatch(u32, u32),
    #[error("point {point} is outside base 1..{size}")]
    PointOutOfBase { point: u32, size: u32 },
    #[error("{0}")]
    Precondition(String),
    #[error("not a homomorphism: {law} fails at {witness:?}")]
    NotHomomorphism { law: &'static str, witness: Vec<usize> },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
