//! Expression parser, form-file loader and command driver for `lce`.

pub mod commands;
pub mod formfile;
pub mod parse;

pub use commands::{run, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
pub use parse::{
    parse, parse_bracketting, parse_monomial, parse_polynomial, Expression, ParseError,
};
