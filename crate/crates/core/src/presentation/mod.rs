//! Generator words, relation families and their verification.

pub mod check;
pub mod expr;
pub mod params;
pub mod registry;
pub mod rewrite;
pub mod word;

pub use check::{check_all, check_relation, expectation, CheckReport, Expectation, Outcome};
pub use expr::Expr;
pub use params::{solve_ab, ParamsRecord, RhoParams};
pub use registry::{relation_instances, Family, Reduced, RelationInstance};
pub use word::{min_strands, parse_word, GeneratorKind, GeneratorSymbol, GeneratorWord};
