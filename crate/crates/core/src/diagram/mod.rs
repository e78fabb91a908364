//! Brauer diagrams and their formal linear combinations.

mod element;
mod matching;

pub use element::{linearly_independent, AlgebraElement, ElementRecord, TermRecord};
pub(crate) use matching::check_site;
pub use matching::{Endpoint, Matching};
