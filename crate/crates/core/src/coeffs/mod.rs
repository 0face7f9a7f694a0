//! Coefficient expressions, symbol validation and the jump intensity c(x).

mod expr;
mod parser;
mod symbol;

pub use expr::{eval_coefficient, piece_blend, sign_of, BinOp, CoefficientExpr, DomainWarning, Func, Node, Sign};
pub use parser::{parse_coefficient, parse_coefficient_with};
pub use symbol::{
    c_of_x, jump_intensity, validate_triple, Bounds, Coefficients, LocalSymbol, Range, SampleGrid, SymbolFile,
    SymbolTriple, ValidationReport,
};
