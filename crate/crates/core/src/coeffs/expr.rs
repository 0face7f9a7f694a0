use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tanh,
    Exp,
    Ln,
    Abs,
    Sgn,
    Min,
    Max,
    /// `piece(threshold, left, right[, width])`
    Piece,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tanh" => Func::Tanh,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "abs" => Func::Abs,
            "sgn" => Func::Sgn,
            "min" => Func::Min,
            "max" => Func::Max,
            "piece" => Func::Piece,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Abs => "abs",
            Func::Sgn => "sgn",
            Func::Min => "min",
            Func::Max => "max",
            Func::Piece => "piece",
        }
    }

    /// Accepted argument counts (inclusive range).
    pub fn arity(self) -> (usize, usize) {
        match self {
            Func::Min | Func::Max => (2, 2),
            Func::Piece => (3, 4),
            _ => (1, 1),
        }
    }

    pub const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Tanh,
        Func::Exp,
        Func::Ln,
        Func::Abs,
        Func::Sgn,
        Func::Min,
        Func::Max,
        Func::Piece,
    ];
}

/// Expression tree over the single variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Num(f64),
    X,
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Call(Func, Vec<Node>),
}

impl Node {
    pub fn depends_on_x(&self) -> bool {
        match self {
            Node::Num(_) => false,
            Node::X => true,
            Node::Neg(a) => a.depends_on_x(),
            Node::Bin(_, a, b) => a.depends_on_x() || b.depends_on_x(),
            // piece blends in x even when all of its arguments are closed
            Node::Call(Func::Piece, _) => true,
            Node::Call(_, args) => args.iter().any(Node::depends_on_x),
        }
    }
}

/// Canonical, fully parenthesized form. Parsing it yields the same tree.
impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Num(v) => write!(f, "{v:?}"),
            Node::X => f.write_str("x"),
            Node::Neg(a) => write!(f, "(-{a})"),
            Node::Bin(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Node::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Flat postfix program for fast evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Op {
    Push(f64),
    X,
    Neg,
    Bin(BinOp),
    Call1(Func),
    Call2(Func),
    Piece3,
    Piece4,
}

const STACK: usize = 64;

fn eval_err(x: f64, detail: impl Into<String>) -> Error {
    Error::Eval {
        x,
        detail: detail.into(),
    }
}

/// Cubic smoothstep blend from `left` to `right` across
/// [threshold − width/2, threshold + width/2]; C¹ in x.
pub fn piece_blend(x: f64, threshold: f64, left: f64, right: f64, width: f64) -> f64 {
    let t = ((x - threshold) / width + 0.5).clamp(0.0, 1.0);
    let s = t * t * (3.0 - 2.0 * t);
    left + s * (right - left)
}

fn binary(op: BinOp, a: f64, b: f64, x: f64) -> Result<f64> {
    let v = match op {
        BinOp::Add => a + b,
        BinOp::Sub => a - b,
        BinOp::Mul => a * b,
        BinOp::Div => {
            if b == 0.0 {
                return Err(eval_err(x, "division by zero"));
            }
            a / b
        }
        BinOp::Pow => {
            if a < 0.0 && b != b.trunc() {
                return Err(eval_err(x, format!("negative base {a} to fractional power {b}")));
            }
            if a == 0.0 && b < 0.0 {
                return Err(eval_err(x, "zero to a negative power"));
            }
            a.powf(b)
        }
    };
    Ok(v)
}

fn unary(func: Func, a: f64, x: f64) -> Result<f64> {
    Ok(match func {
        Func::Sin => a.sin(),
        Func::Cos => a.cos(),
        Func::Tanh => a.tanh(),
        Func::Exp => a.exp(),
        Func::Ln => {
            if a <= 0.0 {
                return Err(eval_err(x, format!("ln of non-positive value {a}")));
            }
            a.ln()
        }
        Func::Abs => a.abs(),
        Func::Sgn => {
            if a > 0.0 {
                1.0
            } else if a < 0.0 {
                -1.0
            } else {
                0.0
            }
        }
        _ => unreachable!("not a unary function"),
    })
}

fn piece(x: f64, thr: f64, l: f64, r: f64, w: f64) -> Result<f64> {
    if !(w > 0.0) {
        return Err(eval_err(x, format!("piece blend width {w} must be positive")));
    }
    Ok(piece_blend(x, thr, l, r, w))
}

pub(crate) fn compile(node: &Node, default_width: f64, out: &mut Vec<Op>) {
    if !node.depends_on_x() {
        // Fold closed subtrees; errors are left for run time.
        if let Ok(v) = eval_tree(node, 0.0, default_width) {
            out.push(Op::Push(v));
            return;
        }
    }
    match node {
        Node::Num(v) => out.push(Op::Push(*v)),
        Node::X => out.push(Op::X),
        Node::Neg(a) => {
            compile(a, default_width, out);
            out.push(Op::Neg);
        }
        Node::Bin(op, a, b) => {
            compile(a, default_width, out);
            compile(b, default_width, out);
            out.push(Op::Bin(*op));
        }
        Node::Call(func, args) => {
            for a in args {
                compile(a, default_width, out);
            }
            match (func, args.len()) {
                (Func::Piece, 3) => out.push(Op::Piece3),
                (Func::Piece, _) => out.push(Op::Piece4),
                (_, 1) => out.push(Op::Call1(*func)),
                _ => out.push(Op::Call2(*func)),
            }
        }
    }
}

pub(crate) fn max_stack_depth(node: &Node) -> usize {
    match node {
        Node::Num(_) | Node::X => 1,
        Node::Neg(a) => max_stack_depth(a),
        Node::Bin(_, a, b) => max_stack_depth(a).max(1 + max_stack_depth(b)),
        Node::Call(_, args) => args
            .iter()
            .enumerate()
            .map(|(i, a)| i + max_stack_depth(a))
            .max()
            .unwrap_or(1),
    }
}

pub(crate) fn eval_program(prog: &[Op], x: f64, default_width: f64) -> Result<f64> {
    let mut st = [0.0f64; STACK];
    let mut sp = 0usize;
    for op in prog {
        match *op {
            Op::Push(v) => {
                st[sp] = v;
                sp += 1;
            }
            Op::X => {
                st[sp] = x;
                sp += 1;
            }
            Op::Neg => st[sp - 1] = -st[sp - 1],
            Op::Bin(b) => {
                sp -= 1;
                st[sp - 1] = binary(b, st[sp - 1], st[sp], x)?;
            }
            Op::Call1(f) => st[sp - 1] = unary(f, st[sp - 1], x)?,
            Op::Call2(f) => {
                sp -= 1;
                let (a, b) = (st[sp - 1], st[sp]);
                st[sp - 1] = if f == Func::Min { a.min(b) } else { a.max(b) };
            }
            Op::Piece3 => {
                sp -= 2;
                st[sp - 1] = piece(x, st[sp - 1], st[sp], st[sp + 1], default_width)?;
            }
            Op::Piece4 => {
                sp -= 3;
                st[sp - 1] = piece(x, st[sp - 1], st[sp], st[sp + 1], st[sp + 2])?;
            }
        }
    }
    let v = st[0];
    if !v.is_finite() {
        return Err(eval_err(x, format!("non-finite value {v}")));
    }
    Ok(v)
}

/// Direct tree-walking evaluation; reference semantics for the compiled form.
pub(crate) fn eval_tree(node: &Node, x: f64, default_width: f64) -> Result<f64> {
    let v = match node {
        Node::Num(v) => *v,
        Node::X => x,
        Node::Neg(a) => -eval_tree(a, x, default_width)?,
        Node::Bin(op, a, b) => binary(*op, eval_tree(a, x, default_width)?, eval_tree(b, x, default_width)?, x)?,
        Node::Call(func, args) => {
            let vals = args
                .iter()
                .map(|a| eval_tree(a, x, default_width))
                .collect::<Result<Vec<_>>>()?;
            match func {
                Func::Min => vals[0].min(vals[1]),
                Func::Max => vals[0].max(vals[1]),
                Func::Piece => {
                    let w = vals.get(3).copied().unwrap_or(default_width);
                    piece(x, vals[0], vals[1], vals[2], w)?
                }
                f => unary(*f, vals[0], x)?,
            }
        }
    };
    if !v.is_finite() {
        return Err(eval_err(x, format!("non-finite value {v}")));
    }
    Ok(v)
}

/// Coarse sign information used for domain-risk warnings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    NonNeg,
    Negative,
    Unknown,
}

impl Sign {
    fn of(v: f64) -> Sign {
        if v > 0.0 {
            Sign::Positive
        } else if v == 0.0 {
            Sign::NonNeg
        } else {
            Sign::Negative
        }
    }

    fn nonneg(self) -> bool {
        matches!(self, Sign::Positive | Sign::NonNeg)
    }

    fn nonzero(self) -> bool {
        matches!(self, Sign::Positive | Sign::Negative)
    }
}

pub fn sign_of(node: &Node) -> Sign {
    use Sign::*;
    match node {
        Node::Num(v) => Sign::of(*v),
        Node::X => Unknown,
        Node::Neg(a) => match sign_of(a) {
            Positive => Negative,
            Negative => Positive,
            _ => Unknown,
        },
        Node::Bin(op, a, b) => {
            let (sa, sb) = (sign_of(a), sign_of(b));
            match op {
                BinOp::Add => match (sa, sb) {
                    (Positive, s) | (s, Positive) if s.nonneg() => Positive,
                    (NonNeg, NonNeg) => NonNeg,
                    (Negative, Negative) => Negative,
                    _ => Unknown,
                },
                BinOp::Sub => match (sa, sb) {
                    (s, Negative) if s.nonneg() => Positive,
                    (Negative, s) if s.nonneg() => Negative,
                    _ => Unknown,
                },
                BinOp::Mul | BinOp::Div => match (sa, sb) {
                    (Positive, Positive) | (Negative, Negative) => Positive,
                    (Positive, Negative) | (Negative, Positive) => Negative,
                    (x, y) if x.nonneg() && y.nonneg() => NonNeg,
                    _ => Unknown,
                },
                BinOp::Pow => match sa {
                    Positive => Positive,
                    NonNeg => NonNeg,
                    _ => Unknown,
                },
            }
        }
        Node::Call(func, args) => match func {
            Func::Exp => Positive,
            Func::Abs => {
                if sign_of(&args[0]).nonzero() {
                    Positive
                } else {
                    NonNeg
                }
            }
            Func::Min => match (sign_of(&args[0]), sign_of(&args[1])) {
                (Positive, Positive) => Positive,
                (a, b) if a.nonneg() && b.nonneg() => NonNeg,
                (Negative, _) | (_, Negative) => Negative,
                _ => Unknown,
            },
            Func::Max => match (sign_of(&args[0]), sign_of(&args[1])) {
                (Positive, _) | (_, Positive) => Positive,
                (NonNeg, _) | (_, NonNeg) => NonNeg,
                (Negative, Negative) => Negative,
                _ => Unknown,
            },
            Func::Piece => match (sign_of(&args[1]), sign_of(&args[2])) {
                (Positive, Positive) => Positive,
                (Negative, Negative) => Negative,
                (a, b) if a.nonneg() && b.nonneg() => NonNeg,
                _ => Unknown,
            },
            Func::Sgn | Func::Tanh => sign_of(&args[0]),
            _ => Unknown,
        },
    }
}

/// Warning about a sub-expression that may leave its domain at run time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainWarning {
    pub offset: usize,
    pub message: String,
}

/// A parsed coefficient expression. Immutable; evaluation is pure.
#[derive(Debug, Clone)]
pub struct CoefficientExpr {
    pub(crate) source: String,
    pub(crate) root: Node,
    pub(crate) program: Vec<Op>,
    pub(crate) blend_width: f64,
    pub(crate) warnings: Vec<DomainWarning>,
    pub(crate) constant: Option<f64>,
}

impl PartialEq for CoefficientExpr {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root && self.blend_width == other.blend_width
    }
}

impl CoefficientExpr {
    pub(crate) fn from_root(source: String, root: Node, blend_width: f64, warnings: Vec<DomainWarning>) -> Self {
        let mut program = Vec::new();
        compile(&root, blend_width, &mut program);
        debug_assert!(max_stack_depth(&root) <= STACK);
        let constant = match program.as_slice() {
            [Op::Push(v)] => Some(*v),
            _ => None,
        };
        Self {
            source,
            root,
            program,
            blend_width,
            warnings,
            constant,
        }
    }

    /// A constant expression.
    pub fn constant(v: f64) -> Self {
        let root = if v < 0.0 {
            Node::Neg(Box::new(Node::Num(-v)))
        } else {
            Node::Num(v)
        };
        Self::from_root(format!("{v:?}"), root, 1.0, Vec::new())
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(eval_err(x, "non-finite argument"));
        }
        if let Some(v) = self.constant {
            return Ok(v);
        }
        eval_program(&self.program, x, self.blend_width)
    }

    /// Tree-walking evaluation; same result as [`CoefficientExpr::eval`].
    pub fn eval_reference(&self, x: f64) -> Result<f64> {
        eval_tree(&self.root, x, self.blend_width)
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn warnings(&self) -> &[DomainWarning] {
        &self.warnings
    }

    /// Value when the expression does not depend on x.
    pub fn as_constant(&self) -> Option<f64> {
        self.constant
    }

    pub fn blend_width(&self) -> f64 {
        self.blend_width
    }

    pub fn canonical(&self) -> String {
        self.root.to_string()
    }
}

impl fmt::Display for CoefficientExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl Serialize for CoefficientExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.source)
    }
}

/// Evaluate a coefficient at x.
pub fn eval_coefficient(e: &CoefficientExpr, x: f64) -> Result<f64> {
    e.eval(x)
}
