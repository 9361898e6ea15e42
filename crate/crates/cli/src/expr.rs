//! Lexer, recursive-descent parser and evaluators for the text grammar
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' ['-'] int)?
//! atom   := rational | ident | '(' expr ')'
//! ident  := s<k> | x<k> | g | z | e
//! ```
//!
//! `s<k>` is the square root of the k-th prime, `x<k>` a group or algebra
//! generator, `g` the gamma series, `z` the cyclotomic root and `e` the group
//! identity. Which symbols and operators are legal depends on the [`Context`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;
use workbench_core::cyclo::CycElem;
use workbench_core::mqfield::{MQElem, PrimeBasis};
use workbench_core::ordgroup::GroupElem;
use workbench_core::qaffine::{FreeWord, QAlgebra, QPoly};
use workbench_core::rational::Q;
use workbench_core::twistring::TwistedElem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Context {
    Field,
    Group,
    Twisted,
    Quantum,
}

impl Context {
    pub fn name(self) -> &'static str {
        match self {
            Context::Field => "field",
            Context::Group => "group",
            Context::Twisted => "twisted",
            Context::Quantum => "quantum",
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{context} context does not allow {what} (line {line}, column {col})")]
    Context {
        context: Context,
        what: String,
        line: usize,
        col: usize,
    },
    #[error("cannot evaluate: {0}")]
    Eval(String),
    #[error(transparent)]
    Core(#[from] workbench_core::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Rational(Q),
    Radical(usize),
    Gen(usize),
    Gamma,
    Zeta,
    Identity,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    fn fold_max(&self, leaf: &impl Fn(&Expr) -> usize) -> usize {
        match self {
            Expr::Neg(a) | Expr::Pow(a, _) => a.fold_max(leaf),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.fold_max(leaf).max(b.fold_max(leaf))
            }
            other => leaf(other),
        }
    }

    /// Largest `k` among the `s<k>` symbols, or 0.
    pub fn max_radical(&self) -> usize {
        self.fold_max(&|e| match e {
            Expr::Radical(k) => *k,
            _ => 0,
        })
    }

    /// Largest `k` among the `x<k>` symbols, or 0.
    pub fn max_generator(&self) -> usize {
        self.fold_max(&|e| match e {
            Expr::Gen(k) => *k,
            _ => 0,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Radical(usize),
    Gen(usize),
    Gamma,
    Zeta,
    Identity,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Radical(k) => format!("s{k}"),
            Tok::Gen(k) => format!("x{k}"),
            Tok::Gamma => "g".into(),
            Tok::Zeta => "z".into(),
            Tok::Identity => "e".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let digits = |from: usize| {
            let mut j = from;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            j
        };
        let tok = if c.is_ascii_digit() {
            let end = digits(i);
            let s: String = chars[i..end].iter().collect();
            let n: BigInt = s.parse().expect("ascii digits");
            col += end - i;
            i = end;
            Tok::Int(n)
        } else if c.is_ascii_alphabetic() {
            let end = digits(i + 1);
            let index: String = chars[i + 1..end].iter().collect();
            let width = end - i;
            if end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_') {
                return Err(syntax(line, col, format!("unknown symbol starting with '{c}'")));
            }
            let tok = match (c, index.is_empty()) {
                ('s' | 'x', true) => {
                    return Err(syntax(line, col, format!("'{c}' needs an index, as in {c}1")))
                }
                ('s' | 'x', false) => {
                    let k: usize = index
                        .parse()
                        .ok()
                        .filter(|&k| k >= 1)
                        .ok_or_else(|| syntax(line, col, format!("bad index '{index}' on {c}")))?;
                    if c == 's' {
                        Tok::Radical(k)
                    } else {
                        Tok::Gen(k)
                    }
                }
                ('g', true) => Tok::Gamma,
                ('z', true) => Tok::Zeta,
                ('e', true) => Tok::Identity,
                _ => {
                    let s: String = chars[i..end].iter().collect();
                    return Err(syntax(line, col, format!("unknown symbol '{s}'")));
                }
            };
            col += width;
            i = end;
            tok
        } else {
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(syntax(line, col, format!("unexpected character '{c}'"))),
            };
            i += 1;
            col += 1;
            tok
        };
        out.push(Token {
            tok,
            line: start_line,
            col: start_col,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    ctx: Context,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn violation(&self, at: &Token, what: impl Into<String>) -> ExprError {
        ExprError::Context {
            context: self.ctx,
            what: what.into(),
            line: at.line,
            col: at.col,
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Token, ExprError> {
        let t = self.bump();
        if t.tok == want {
            Ok(t)
        } else {
            Err(syntax(
                t.line,
                t.col,
                format!("expected {}, found {}", want.describe(), t.tok.describe()),
            ))
        }
    }

    fn additive_allowed(&self, at: &Token) -> Result<(), ExprError> {
        if self.ctx == Context::Group {
            Err(self.violation(at, "sums or differences"))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = if self.peek().tok == Tok::Minus {
            let minus = self.bump();
            self.additive_allowed(&minus)?;
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            let op = self.peek().clone();
            match op.tok {
                Tok::Plus | Tok::Minus => {
                    self.additive_allowed(&op)?;
                    self.bump();
                    let rhs = Box::new(self.term()?);
                    acc = if op.tok == Tok::Plus {
                        Expr::Add(Box::new(acc), rhs)
                    } else {
                        Expr::Sub(Box::new(acc), rhs)
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let sign_tok = self.peek().clone();
        let negative = sign_tok.tok == Tok::Minus;
        if negative {
            self.bump();
        }
        let t = self.bump();
        let Tok::Int(n) = t.tok else {
            return Err(syntax(
                t.line,
                t.col,
                format!("expected an integer exponent, found {}", t.tok.describe()),
            ));
        };
        let n = if negative { -n } else { n };
        let e: i64 = i64::try_from(&n)
            .ok()
            .filter(|e| e.unsigned_abs() <= u32::MAX as u64)
            .ok_or_else(|| syntax(t.line, t.col, format!("exponent {n} is too large")))?;
        if e < 0 && self.ctx == Context::Quantum {
            return Err(self.violation(&sign_tok, "negative exponents"));
        }
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let t = self.bump();
        let ctx = self.ctx;
        let node = match &t.tok {
            Tok::Int(n) => {
                if ctx == Context::Group {
                    return Err(self.violation(&t, "numeric literals"));
                }
                let mut q = Q::from_integer(n.clone());
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.bump();
                    let Tok::Int(den) = d.tok else {
                        return Err(syntax(d.line, d.col, "expected a denominator after '/'"));
                    };
                    if den.is_zero() {
                        return Err(syntax(d.line, d.col, "zero denominator"));
                    }
                    q = Q::new(n.clone(), den);
                }
                Expr::Rational(q)
            }
            Tok::Radical(k) => {
                if !matches!(ctx, Context::Field | Context::Twisted) {
                    return Err(self.violation(&t, format!("radical s{k}")));
                }
                Expr::Radical(*k)
            }
            Tok::Gen(k) => {
                if ctx == Context::Field {
                    return Err(self.violation(&t, format!("generator x{k}")));
                }
                Expr::Gen(*k)
            }
            Tok::Gamma => {
                if ctx != Context::Twisted {
                    return Err(self.violation(&t, "the gamma symbol g"));
                }
                Expr::Gamma
            }
            Tok::Zeta => {
                if ctx != Context::Quantum {
                    return Err(self.violation(&t, "the root of unity z"));
                }
                Expr::Zeta
            }
            Tok::Identity => {
                if !matches!(ctx, Context::Group | Context::Twisted) {
                    return Err(self.violation(&t, "the group identity e"));
                }
                Expr::Identity
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                inner
            }
            other => {
                return Err(syntax(
                    t.line,
                    t.col,
                    format!("expected a number, symbol or '(', found {}", other.describe()),
                ))
            }
        };
        Ok(node)
    }
}

/// Parses `text` under `ctx`, reporting the position of the first problem.
pub fn parse(text: &str, ctx: Context) -> Result<Expr, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, ctx };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(syntax(
            t.line,
            t.col,
            format!("unexpected {} after expression", t.tok.describe()),
        ));
    }
    Ok(e)
}

fn eval_err(msg: impl Into<String>) -> ExprError {
    ExprError::Eval(msg.into())
}

/// Evaluates a field-context expression in `Q(√p₁, …, √pₙ)` over `basis`.
pub fn eval_field(e: &Expr, basis: &Arc<PrimeBasis>) -> Result<MQElem, ExprError> {
    Ok(match e {
        Expr::Rational(q) => MQElem::rational(basis, q.clone()),
        Expr::Radical(k) => MQElem::radical(basis, *k)?,
        Expr::Neg(a) => eval_field(a, basis)?.neg(),
        Expr::Add(a, b) => eval_field(a, basis)?.add(&eval_field(b, basis)?)?,
        Expr::Sub(a, b) => eval_field(a, basis)?.sub(&eval_field(b, basis)?)?,
        Expr::Mul(a, b) => eval_field(a, basis)?.mul(&eval_field(b, basis)?)?,
        Expr::Pow(a, k) => {
            let base = eval_field(a, basis)?;
            let base = if *k < 0 { base.inv()? } else { base };
            base.pow(k.unsigned_abs() as u32)
        }
        other => return Err(eval_err(format!("{other:?} is not a field element"))),
    })
}

pub fn eval_group(e: &Expr) -> Result<GroupElem, ExprError> {
    Ok(match e {
        Expr::Identity => GroupElem::identity(),
        Expr::Gen(k) => GroupElem::generator(*k),
        Expr::Mul(a, b) => eval_group(a)?.mul(&eval_group(b)?),
        Expr::Pow(a, k) => eval_group(a)?.pow(*k),
        other => return Err(eval_err(format!("{other:?} is not a group element"))),
    })
}

/// Inverse of a single term `a·x`, namely `Φ_x(a⁻¹)·x⁻¹`.
fn twisted_inverse(t: &TwistedElem) -> Result<TwistedElem, ExprError> {
    let mut terms = t.terms();
    match (terms.next(), terms.next()) {
        (Some((x, a)), None) => {
            let inv = x.inv();
            let coef = inv.apply_twist(&a.inv()?)?;
            Ok(TwistedElem::monomial(coef, inv)?)
        }
        _ => Err(eval_err(format!(
            "negative powers need a single nonzero term, got {t}"
        ))),
    }
}

/// Evaluates a twisted-context expression over `basis`.
///
/// `g` parses but has infinite support, so it cannot be evaluated here.
pub fn eval_twisted(e: &Expr, basis: &Arc<PrimeBasis>) -> Result<TwistedElem, ExprError> {
    Ok(match e {
        Expr::Rational(q) => TwistedElem::scalar(MQElem::rational(basis, q.clone())),
        Expr::Radical(k) => TwistedElem::radical(basis, *k)?,
        Expr::Gen(k) => TwistedElem::group(basis, GroupElem::generator(*k))?,
        Expr::Identity => TwistedElem::one(basis),
        Expr::Gamma => {
            return Err(eval_err(
                "g has infinite support; use `gamma coeff` for coefficients of its powers",
            ))
        }
        Expr::Neg(a) => eval_twisted(a, basis)?.neg(),
        Expr::Add(a, b) => eval_twisted(a, basis)?.add(&eval_twisted(b, basis)?)?,
        Expr::Sub(a, b) => eval_twisted(a, basis)?.sub(&eval_twisted(b, basis)?)?,
        Expr::Mul(a, b) => eval_twisted(a, basis)?.mul(&eval_twisted(b, basis)?)?,
        Expr::Pow(a, k) => {
            let base = eval_twisted(a, basis)?;
            let base = if *k < 0 { twisted_inverse(&base)? } else { base };
            base.pow(k.unsigned_abs() as u32)
        }
        other => return Err(eval_err(format!("{other:?} is not a twisted-ring element"))),
    })
}

fn quantum_generator(alg: &Arc<QAlgebra>, k: usize) -> Result<QPoly, ExprError> {
    if k > alg.n() {
        return Err(eval_err(format!(
            "x{k} is not a generator of an algebra with {} generators",
            alg.n()
        )));
    }
    Ok(QPoly::generator(alg, k)?)
}

/// Evaluates a quantum-context expression in `alg`.
pub fn eval_quantum(e: &Expr, alg: &Arc<QAlgebra>) -> Result<QPoly, ExprError> {
    Ok(match e {
        Expr::Rational(q) => QPoly::constant(alg, CycElem::rational(alg.field(), q.clone())),
        Expr::Zeta => QPoly::constant(alg, CycElem::zeta(alg.field())),
        Expr::Gen(k) => quantum_generator(alg, *k)?,
        Expr::Neg(a) => eval_quantum(a, alg)?.neg(),
        Expr::Add(a, b) => eval_quantum(a, alg)?.add(&eval_quantum(b, alg)?)?,
        Expr::Sub(a, b) => eval_quantum(a, alg)?.sub(&eval_quantum(b, alg)?)?,
        Expr::Mul(a, b) => eval_quantum(a, alg)?.mul(&eval_quantum(b, alg)?)?,
        Expr::Pow(a, k) => {
            let k = u32::try_from(*k).map_err(|_| eval_err("negative exponent"))?;
            eval_quantum(a, alg)?.pow(k)
        }
        other => return Err(eval_err(format!("{other:?} is not an algebra element"))),
    })
}

/// Reads a product of scalars and generator powers as a word, left to right.
///
/// Returns `None` when the expression contains a sum or difference.
pub fn quantum_word(e: &Expr, alg: &Arc<QAlgebra>) -> Result<Option<FreeWord>, ExprError> {
    fn walk(
        e: &Expr,
        alg: &Arc<QAlgebra>,
        scalar: &mut CycElem,
        letters: &mut Vec<usize>,
    ) -> Result<bool, ExprError> {
        match e {
            Expr::Rational(q) => *scalar = scalar.scale(q),
            Expr::Zeta => *scalar = scalar.mul(&CycElem::zeta(alg.field()))?,
            Expr::Gen(k) => {
                quantum_generator(alg, *k)?;
                letters.push(*k);
            }
            Expr::Mul(a, b) => {
                return Ok(walk(a, alg, scalar, letters)? && walk(b, alg, scalar, letters)?)
            }
            Expr::Pow(a, k) => {
                for _ in 0..*k {
                    if !walk(a, alg, scalar, letters)? {
                        return Ok(false);
                    }
                }
            }
            _ => return Ok(false),
        }
        Ok(true)
    }
    let mut scalar = CycElem::one(alg.field());
    let mut letters = Vec::new();
    if walk(e, alg, &mut scalar, &mut letters)? {
        Ok(Some(FreeWord::new(alg, scalar, letters)?))
    } else {
        Ok(None)
    }
}

/// Basis sized to cover every `s<k>` and `x<k>` in `e`, or `at_least` primes.
pub fn basis_for(e: &Expr, at_least: usize) -> Result<Arc<PrimeBasis>, ExprError> {
    let n = e.max_radical().max(e.max_generator()).max(at_least);
    Ok(PrimeBasis::first(n)?)
}

/// Splits a comma-separated list of expressions.
pub fn split_list(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}
