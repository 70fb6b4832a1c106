//! Function expressions in t: numbers, `t`, `e`, `pi`, `+ - * /` (also
//! `− × ÷`), `^`, `sqrt`, `log`, `exp` and parentheses. Derivatives are
//! taken symbolically.

use std::fmt;

use opmean::{Error, Result, ScalarFunction};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    T,
    Const(f64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
    Log(Box<Expr>),
    Exp(Box<Expr>),
}

use Expr::*;

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.sum()?;
        match p.peek() {
            None => Ok(e),
            Some(tok) => Err(Error::Parse(format!("unexpected '{tok}' in '{text}'"))),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            T => t,
            Const(c) => *c,
            Neg(a) => -a.value(t),
            Add(a, b) => a.value(t) + b.value(t),
            Sub(a, b) => a.value(t) - b.value(t),
            Mul(a, b) => a.value(t) * b.value(t),
            Div(a, b) => a.value(t) / b.value(t),
            Pow(a, b) => pow(a.value(t), b.value(t)),
            Sqrt(a) => a.value(t).sqrt(),
            Log(a) => a.value(t).ln(),
            Exp(a) => a.value(t).exp(),
        }
    }

    fn is_constant(&self) -> bool {
        match self {
            T => false,
            Const(_) => true,
            Neg(a) | Sqrt(a) | Log(a) | Exp(a) => a.is_constant(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) | Pow(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    /// d/dt evaluated at t.
    pub fn slope(&self, t: f64) -> f64 {
        match self {
            T => 1.0,
            Const(_) => 0.0,
            Neg(a) => -a.slope(t),
            Add(a, b) => a.slope(t) + b.slope(t),
            Sub(a, b) => a.slope(t) - b.slope(t),
            Mul(a, b) => a.slope(t) * b.value(t) + a.value(t) * b.slope(t),
            Div(a, b) => {
                let bv = b.value(t);
                (a.slope(t) * bv - a.value(t) * b.slope(t)) / (bv * bv)
            }
            Pow(a, b) => {
                let (av, bv) = (a.value(t), b.value(t));
                if b.is_constant() {
                    if bv == 0.0 {
                        0.0
                    } else {
                        bv * pow(av, bv - 1.0) * a.slope(t)
                    }
                } else {
                    pow(av, bv) * (b.slope(t) * av.ln() + bv * a.slope(t) / av)
                }
            }
            Sqrt(a) => 0.5 * a.slope(t) / a.value(t).sqrt(),
            Log(a) => a.slope(t) / a.value(t),
            Exp(a) => a.value(t).exp() * a.slope(t),
        }
    }
}

/// Integer exponents use repeated multiplication so that negative bases work.
fn pow(base: f64, exp: f64) -> f64 {
    if exp.fract() == 0.0 && exp.abs() <= i32::MAX as f64 {
        base.powi(exp as i32)
    } else {
        base.powf(exp)
    }
}

impl ScalarFunction for Expr {
    fn eval(&self, t: f64) -> f64 {
        self.value(t)
    }

    fn deriv(&self, t: f64) -> f64 {
        self.slope(t)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            T => write!(f, "t"),
            Const(c) => write!(f, "{c}"),
            Neg(a) => write!(f, "(-{a})"),
            Add(a, b) => write!(f, "({a} + {b})"),
            Sub(a, b) => write!(f, "({a} - {b})"),
            Mul(a, b) => write!(f, "({a} * {b})"),
            Div(a, b) => write!(f, "({a} / {b})"),
            Pow(a, b) => write!(f, "({a} ^ {b})"),
            Sqrt(a) => write!(f, "sqrt({a})"),
            Log(a) => write!(f, "log({a})"),
            Exp(a) => write!(f, "exp({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
    Open,
    Close,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(v) => write!(f, "{v}"),
            Token::Ident(s) => write!(f, "{s}"),
            Token::Op(c) => write!(f, "{c}"),
            Token::Open => write!(f, "("),
            Token::Close => write!(f, ")"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push(Token::Op(c));
                i += 1;
            }
            '−' => {
                out.push(Token::Op('-'));
                i += 1;
            }
            '×' | '·' => {
                out.push(Token::Op('*'));
                i += 1;
            }
            '÷' => {
                out.push(Token::Op('/'));
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                // exponent only when followed by a digit
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| Error::Parse(format!("bad number '{s}'")))?;
                out.push(Token::Num(v));
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_alphanumeric() {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat_op(&mut self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Token::Op(c)) if ops.contains(c) => {
                let c = *c;
                self.pos += 1;
                Some(c)
            }
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        while let Some(op) = self.eat_op(&['+', '-']) {
            let rhs = self.product()?;
            lhs = if op == '+' { Add(lhs.into(), rhs.into()) } else { Sub(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.eat_op(&['*', '/']) {
            let rhs = self.unary()?;
            lhs = if op == '*' { Mul(lhs.into(), rhs.into()) } else { Div(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_op(&['-']).is_some() {
            return Ok(Neg(self.unary()?.into()));
        }
        if self.eat_op(&['+']).is_some() {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat_op(&['^']).is_some() {
            let exp = self.unary()?;
            return Ok(Pow(base.into(), exp.into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Token::Num(v)) => Ok(Const(v)),
            Some(Token::Open) => {
                let e = self.sum()?;
                self.expect_close()?;
                Ok(e)
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "t" | "x" => Ok(T),
                "e" => Ok(Const(std::f64::consts::E)),
                "pi" => Ok(Const(std::f64::consts::PI)),
                "sqrt" | "log" | "ln" | "exp" => {
                    if self.next() != Some(Token::Open) {
                        return Err(Error::Parse(format!("expected '(' after {name}")));
                    }
                    let arg = Box::new(self.sum()?);
                    self.expect_close()?;
                    Ok(match name.as_str() {
                        "sqrt" => Sqrt(arg),
                        "exp" => Exp(arg),
                        _ => Log(arg),
                    })
                }
                other => Err(Error::Parse(format!("unknown name '{other}'"))),
            },
            Some(tok) => Err(Error::Parse(format!("unexpected '{tok}'"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.next() {
            Some(Token::Close) => Ok(()),
            _ => Err(Error::Parse("missing ')'".into())),
        }
    }
}
