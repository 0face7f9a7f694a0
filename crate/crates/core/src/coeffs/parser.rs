//! LL(1) recursive-descent parser for coefficient expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?          right-associative
//! primary := number | 'x' | 'pi' | name '(' expr (',' expr)* ')' | '(' expr ')'
//! ```

use super::expr::{sign_of, BinOp, CoefficientExpr, DomainWarning, Func, Node, Sign};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const OPERAND: &[&str] = &["number", "'x'", "function call", "'('", "'-'"];

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    // Returns (token, start offset).
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((t, start));
        }
        if c.is_ascii_digit() || c == b'.' {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self
                .src
                .get(self.pos)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
            {
                self.pos += 1;
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
            return Ok((Tok::Ident(s.to_string()), start));
        }
        let found = std::str::from_utf8(&self.src[start..])
            .ok()
            .and_then(|s| s.chars().next())
            .map(|ch| format!("character '{ch}'"))
            .unwrap_or_else(|| "invalid byte".into());
        Err(Error::Syntax {
            offset: start,
            expected: OPERAND.iter().map(|s| s.to_string()).collect(),
            found,
        })
    }

    fn number(&mut self, start: usize) -> Result<(Tok, usize)> {
        let digits = |lx: &mut Self| {
            let s = lx.pos;
            while lx.src.get(lx.pos).is_some_and(u8::is_ascii_digit) {
                lx.pos += 1;
            }
            lx.pos - s
        };
        let mut n = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            return Err(Error::Syntax {
                offset: start,
                expected: vec!["digit".into()],
                found: "'.'".into(),
            });
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        let v: f64 = text.parse().map_err(|_| Error::Syntax {
            offset: start,
            expected: vec!["number".into()],
            found: format!("'{text}'"),
        })?;
        Ok((Tok::Num(v), start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
    warnings: Vec<DomainWarning>,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        let (t, at) = self.lexer.next()?;
        self.tok = t;
        self.at = at;
        Ok(())
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        Err(Error::Syntax {
            offset: self.at,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.tok.describe(),
        })
    }

    fn expect(&mut self, t: Tok, name: &str) -> Result<()> {
        if self.tok == t {
            self.bump()
        } else {
            self.fail(&[name])
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let at = self.at;
            let rhs = self.unary()?;
            if op == BinOp::Div && !matches!(sign_of(&rhs), Sign::Positive | Sign::Negative) {
                self.warnings.push(DomainWarning {
                    offset: at,
                    message: format!("denominator '{rhs}' may vanish"),
                });
            }
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.tok == Tok::Minus {
            self.bump()?;
            let inner = self.unary()?;
            return Ok(Node::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base_at = self.at;
        let base = self.primary()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        let exp = self.unary()?;
        let integral_exp = matches!(exp, Node::Num(v) if v == v.trunc());
        if !integral_exp && !matches!(sign_of(&base), Sign::Positive | Sign::NonNeg) {
            self.warnings.push(DomainWarning {
                offset: base_at,
                message: format!("base '{base}' may be negative under a non-integer power"),
            });
        }
        Ok(Node::Bin(BinOp::Pow, Box::new(base), Box::new(exp)))
    }

    fn primary(&mut self) -> Result<Node> {
        match self.tok.clone() {
            Tok::Num(v) => {
                self.bump()?;
                Ok(Node::Num(v))
            }
            Tok::LParen => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.at;
                if name == "x" {
                    self.bump()?;
                    return Ok(Node::X);
                }
                if name == "pi" {
                    self.bump()?;
                    return Ok(Node::Num(std::f64::consts::PI));
                }
                let Some(func) = Func::from_name(&name) else {
                    let mut expected = vec!["'x'".to_string(), "'pi'".to_string()];
                    expected.extend(Func::ALL.iter().map(|f| format!("'{}'", f.name())));
                    return Err(Error::Syntax {
                        offset: at,
                        expected,
                        found: format!("unknown name '{name}'"),
                    });
                };
                self.bump()?;
                self.expect(Tok::LParen, "'('")?;
                let (lo, hi) = func.arity();
                let mut args = vec![self.expr()?];
                while self.tok == Tok::Comma {
                    if args.len() == hi {
                        return self.fail(&["')'"]);
                    }
                    self.bump()?;
                    args.push(self.expr()?);
                }
                if args.len() < lo {
                    return self.fail(&["','"]);
                }
                self.expect(Tok::RParen, "')'")?;
                if func == Func::Ln && sign_of(&args[0]) != Sign::Positive {
                    self.warnings.push(DomainWarning {
                        offset: at,
                        message: format!("argument of ln '{}' may be non-positive", args[0]),
                    });
                }
                Ok(Node::Call(func, args))
            }
            _ => self.fail(OPERAND),
        }
    }
}

/// Parse with the default `piece` blend width of 1.
pub fn parse_coefficient(src: &str) -> Result<CoefficientExpr> {
    parse_coefficient_with(src, 1.0)
}

/// Parse, using `blend_width` for `piece` calls without an explicit width.
pub fn parse_coefficient_with(src: &str, blend_width: f64) -> Result<CoefficientExpr> {
    if !(blend_width > 0.0 && blend_width.is_finite()) {
        return Err(Error::Config(format!("blend_width {blend_width} must be positive")));
    }
    let mut p = Parser {
        lexer: Lexer {
            src: src.as_bytes(),
            pos: 0,
        },
        tok: Tok::End,
        at: 0,
        warnings: Vec::new(),
    };
    p.bump()?;
    if p.tok == Tok::End {
        return p.fail(OPERAND);
    }
    let root = p.expr()?;
    if p.tok != Tok::End {
        return p.fail(&["operator", "end of input"]);
    }
    Ok(CoefficientExpr::from_root(
        src.to_string(),
        root,
        blend_width,
        p.warnings,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(s: &str) -> Node {
        parse_coefficient(s).unwrap().root
    }

    #[test]
    fn precedence() {
        assert_eq!(tree("-x^2").to_string(), "(-(x ^ 2.0))");
        assert_eq!(tree("2^3^2").to_string(), "(2.0 ^ (3.0 ^ 2.0))");
        assert_eq!(tree("2^-x").to_string(), "(2.0 ^ (-x))");
        assert_eq!(tree("1 - 2 - 3").to_string(), "((1.0 - 2.0) - 3.0)");
        assert_eq!(tree("1 + 2 * 3 / 4").to_string(), "(1.0 + ((2.0 * 3.0) / 4.0))");
        assert_eq!(tree("-2*x").to_string(), "((-2.0) * x)");
    }

    #[test]
    fn numbers() {
        assert_eq!(tree("1.5e-3"), Node::Num(1.5e-3));
        assert_eq!(tree(".25"), Node::Num(0.25));
        assert_eq!(tree("3."), Node::Num(3.0));
        assert_eq!(tree("2E2"), Node::Num(200.0));
    }

    #[test]
    fn trailing_operator() {
        let e = parse_coefficient("1.5 +").unwrap_err();
        match e {
            Error::Syntax { offset, expected, .. } => {
                assert_eq!(offset, 5);
                assert!(expected.iter().any(|s| s == "number"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn other_errors() {
        for (src, at) in [
            ("", 0),
            ("(1", 2),
            ("foo(x)", 0),
            ("sin(x, 1)", 5),
            ("min(x)", 5),
            ("1 2", 2),
            ("x $", 2),
        ] {
            match parse_coefficient(src) {
                Err(Error::Syntax { offset, .. }) => assert_eq!(offset, at, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn warnings() {
        assert!(parse_coefficient("1/x").unwrap().warnings().len() == 1);
        assert!(parse_coefficient("ln(x)").unwrap().warnings().len() == 1);
        assert!(parse_coefficient("ln(1+abs(x))").unwrap().warnings().is_empty());
        assert!(parse_coefficient("abs(x)^0.5 / (1+abs(x)^0.5)")
            .unwrap()
            .warnings()
            .is_empty());
        assert!(parse_coefficient("x^0.5").unwrap().warnings().len() == 1);
        assert!(parse_coefficient("1/exp(x)").unwrap().warnings().is_empty());
    }
}
