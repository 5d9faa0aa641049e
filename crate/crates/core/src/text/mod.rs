//! Text formats: the expression grammar and definition files.

mod deffile;
mod parse;

pub use deffile::DefinitionFile;
pub use parse::{parse_element, parse_expression, parse_laurent, parse_tensor, ExprKind, Parsed};

#[cfg(test)]
mod tests;
