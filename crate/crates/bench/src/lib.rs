//! Shared inputs for the criterion benchmarks.

use stablelike::coeffs::SymbolTriple;

pub fn recurrent() -> SymbolTriple {
    SymbolTriple::constant(1.5, 0.0, 1.0).expect("valid symbol")
}

pub fn ergodic() -> SymbolTriple {
    SymbolTriple::parse("1.8", "-tanh(x)", "1").expect("valid symbol")
}

pub fn varying() -> SymbolTriple {
    SymbolTriple::parse("1.2 + 0.3*tanh(x)", "0.5*sin(x)", "1 + 0.2*cos(x)").expect("valid symbol")
}
