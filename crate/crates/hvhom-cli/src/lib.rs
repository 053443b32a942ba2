//! Library surface of the CLI crate: the element-expression parser and
//! evaluator used by the `hvhom` binary.

#![forbid(unsafe_code)]

pub mod expr;

pub use expr::{
    eval_algebra, eval_expr, eval_module, parse_expr, Expr, ParseError, SortError, Value,
};
