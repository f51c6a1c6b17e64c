//! Library surface of the command-line front end: the expression grammar,
//! the evaluator and the JSON renderings. The binary in `main.rs` is a thin
//! wrapper over these.

pub mod eval;
pub mod expr;
pub mod output;
