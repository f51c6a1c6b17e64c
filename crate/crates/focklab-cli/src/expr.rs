//! Operator expressions: lexer, recursive-descent parser and printer.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := scalar | atom | '[' expr ',' expr ']' | '(' expr ')'
//! scalar := INT ('/' INT)? | 'q' ('^' SINT)?
//! atom   := name '(' args ')' | 'a0' | 'd' | 's' | 's^-1'
//! ```
//!
//! Half-integer arguments are written `a/2` with odd `a` (e.g. `psi(-7/2)`).
//! Errors carry byte offsets into the input.

use std::fmt;

/// A parse failure at a byte offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A half-integer literal, stored doubled.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct HalfLit(pub i64);

impl fmt::Display for HalfLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

/// Operator atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Alpha(i64),
    Alpha0,
    Psi(HalfLit),
    PsiStar(HalfLit),
    Shift,
    ShiftInv,
    ChevE(u32),
    ChevF(u32),
    QE(u32),
    QF(u32),
    QK(u32),
    Derivation,
    Ebar(HalfLit, HalfLit),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Alpha(k) => write!(f, "alpha({k})"),
            Atom::Alpha0 => write!(f, "a0"),
            Atom::Psi(m) => write!(f, "psi({m})"),
            Atom::PsiStar(m) => write!(f, "psis({m})"),
            Atom::Shift => write!(f, "s"),
            Atom::ShiftInv => write!(f, "s^-1"),
            Atom::ChevE(i) => write!(f, "E({i})"),
            Atom::ChevF(i) => write!(f, "F({i})"),
            Atom::QE(i) => write!(f, "Eq({i})"),
            Atom::QF(i) => write!(f, "Fq({i})"),
            Atom::QK(i) => write!(f, "K({i})"),
            Atom::Derivation => write!(f, "d"),
            Atom::Ebar(m, n) => write!(f, "Ebar({m},{n})"),
        }
    }
}

/// The expression tree. Sums and products associate to the left; a product
/// is evaluated right-to-left, i.e. as operator composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    /// A nonnegative rational literal.
    Num {
        num: u64,
        den: u64,
    },
    /// q^k.
    QPow(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn is_sum(&self) -> bool {
        matches!(self, Expr::Add(..) | Expr::Sub(..))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Num { num, den } => {
                if *den == 1 {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num}/{den}")
                }
            }
            Expr::QPow(k) => write!(f, "q^{k}"),
            Expr::Add(l, r) => {
                write!(f, "{l} + ")?;
                if r.is_sum() {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            Expr::Sub(l, r) => {
                write!(f, "{l} - ")?;
                if r.is_sum() {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            Expr::Mul(l, r) => {
                if l.is_sum() {
                    write!(f, "({l})*")?;
                } else {
                    write!(f, "{l}*")?;
                }
                if r.is_sum() || matches!(**r, Expr::Mul(..)) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            Expr::Bracket(l, r) => write!(f, "[{l}, {r}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    end: usize,
}

fn lex(src: &str) -> Result<Lexer, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'[' => {
                toks.push((i, Tok::LBracket));
                i += 1;
            }
            b']' => {
                toks.push((i, Tok::RBracket));
                i += 1;
            }
            b',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                let n: u64 = text.parse().map_err(|_| ParseError {
                    offset: start,
                    message: format!("integer literal {text:?} out of range"),
                })?;
                toks.push((start, Tok::Int(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(src[start..i].to_string())));
            }
            other => {
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character {:?}", other as char),
                })
            }
        }
    }
    Ok(Lexer {
        toks,
        end: src.len(),
    })
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = Expr::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.parse_factor()?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let left = self.parse_expr()?;
                self.expect(&Tok::Comma, "',' between bracket arguments")?;
                let right = self.parse_expr()?;
                self.expect(&Tok::RBracket, "']'")?;
                Ok(Expr::Bracket(Box::new(left), Box::new(right)))
            }
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Int(d)) if d > 0 => Ok(Expr::Num { num: n, den: d }),
                        _ => self.err("expected a positive denominator"),
                    }
                } else {
                    Ok(Expr::Num { num: n, den: 1 })
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.parse_named(&name)
            }
            _ => self.err("expected a scalar, an atom, '[' or '('"),
        }
    }

    fn parse_named(&mut self, name: &str) -> Result<Expr, ParseError> {
        match name {
            "a0" => Ok(Expr::Atom(Atom::Alpha0)),
            "d" => Ok(Expr::Atom(Atom::Derivation)),
            "s" => {
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    self.expect(&Tok::Minus, "'-1' after 's^'")?;
                    match self.bump() {
                        Some(Tok::Int(1)) => Ok(Expr::Atom(Atom::ShiftInv)),
                        _ => self.err("the only shift powers are s and s^-1"),
                    }
                } else {
                    Ok(Expr::Atom(Atom::Shift))
                }
            }
            "q" => {
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let k = self.parse_signed_int()?;
                    Ok(Expr::QPow(k))
                } else {
                    Ok(Expr::QPow(1))
                }
            }
            "alpha" => {
                let k = self.parse_one_int_arg()?;
                if k == 0 {
                    return self.err("alpha(0) is written a0");
                }
                Ok(Expr::Atom(Atom::Alpha(k)))
            }
            "psi" => Ok(Expr::Atom(Atom::Psi(self.parse_one_half_arg()?))),
            "psis" => Ok(Expr::Atom(Atom::PsiStar(self.parse_one_half_arg()?))),
            "E" => Ok(Expr::Atom(Atom::ChevE(self.parse_one_residue_arg()?))),
            "F" => Ok(Expr::Atom(Atom::ChevF(self.parse_one_residue_arg()?))),
            "Eq" => Ok(Expr::Atom(Atom::QE(self.parse_one_residue_arg()?))),
            "Fq" => Ok(Expr::Atom(Atom::QF(self.parse_one_residue_arg()?))),
            "K" => Ok(Expr::Atom(Atom::QK(self.parse_one_residue_arg()?))),
            "Ebar" => {
                self.expect(&Tok::LParen, "'('")?;
                let m = self.parse_half_lit()?;
                self.expect(&Tok::Comma, "','")?;
                let n = self.parse_half_lit()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(Expr::Atom(Atom::Ebar(m, n)))
            }
            other => self.err(format!("unknown atom {other:?}")),
        }
    }

    fn parse_signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Int(n)) => {
                let v = n as i64;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn parse_one_int_arg(&mut self) -> Result<i64, ParseError> {
        self.expect(&Tok::LParen, "'('")?;
        let v = self.parse_signed_int()?;
        self.expect(&Tok::RParen, "')'")?;
        Ok(v)
    }

    fn parse_one_residue_arg(&mut self) -> Result<u32, ParseError> {
        self.expect(&Tok::LParen, "'('")?;
        let v = self.parse_signed_int()?;
        self.expect(&Tok::RParen, "')'")?;
        if v < 0 {
            return self.err("residues are nonnegative");
        }
        Ok(v as u32)
    }

    fn parse_half_lit(&mut self) -> Result<HalfLit, ParseError> {
        let at = self.offset();
        let numerator = self.parse_signed_int()?;
        self.expect(&Tok::Slash, "'/2' in a half-integer")?;
        match self.bump() {
            Some(Tok::Int(2)) => {}
            _ => {
                return Err(ParseError {
                    offset: at,
                    message: "half-integers are written a/2".into(),
                })
            }
        }
        if numerator.rem_euclid(2) != 1 {
            return Err(ParseError {
                offset: at,
                message: format!("malformed half-integer: even numerator {numerator}"),
            });
        }
        Ok(HalfLit(numerator))
    }

    fn parse_one_half_arg(&mut self) -> Result<HalfLit, ParseError> {
        self.expect(&Tok::LParen, "'('")?;
        let v = self.parse_half_lit()?;
        self.expect(&Tok::RParen, "')'")?;
        Ok(v)
    }
}

/// Parses an operator expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let lexer = lex(src)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        end: lexer.end,
    };
    let expr = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(expr)
}
