//! Exact arithmetic for virtual Temperley-Lieb algebras: Brauer diagrams,
//! a tensor-space matrix model, and checks of relation families in both.

pub mod diagram;
pub mod error;
pub mod presentation;
pub mod rep;
pub mod sample;
pub mod scalar;
pub mod serial;
pub mod tensor;

pub use diagram::{AlgebraElement, Endpoint, Matching};
pub use error::{Error, Result};
pub use presentation::{
    check_all, check_relation, parse_word, relation_instances, solve_ab, CheckReport, Expectation, Family,
    GeneratorWord, RhoParams,
};
pub use rep::{evaluate_expr, evaluate_word, DiagramRep, MatrixRep, Representation, Witness};
pub use scalar::QuadScalar;
pub use tensor::{rep_element, DenseMatrix, RepConfig};
