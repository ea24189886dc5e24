//! De Bruijn terms, the binary lambda calculus size function and its codec.
//!
//! Indices start at 1. The binary form is
//!
//! ```text
//! λM    -> 00 M
//! M N   -> 01 M N
//! i     -> 1^i 0
//! ```
//!
//! so the size of a term is exactly the length of its encoding.

use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;

use thiserror::Error;

/// A lambda term in de Bruijn notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Index(NonZeroUsize),
    Abs(Box<Term>),
    App(Box<Term>, Box<Term>),
}

impl Term {
    /// Builds an index leaf. Panics on `0`, which is not a valid index.
    pub fn var(i: usize) -> Term {
        Term::Index(NonZeroUsize::new(i).expect("de Bruijn indices start at 1"))
    }

    pub fn abs(body: Term) -> Term {
        Term::Abs(Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// Binary lambda calculus size: `i + 1` for an index, `+2` for each
    /// abstraction and application node.
    pub fn size(&self) -> usize {
        let mut total = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Term::Index(i) => total += i.get() + 1,
                Term::Abs(b) => {
                    total += 2;
                    stack.push(b);
                }
                Term::App(f, a) => {
                    total += 2;
                    stack.push(a);
                    stack.push(f);
                }
            }
        }
        total
    }

    /// Number of binders the term needs around it to be well formed:
    /// the maximum over leaves of `index - enclosing abstractions`, floored at 0.
    pub fn max_free_index(&self) -> usize {
        let mut best = 0;
        let mut stack = vec![(self, 0usize)];
        while let Some((t, depth)) = stack.pop() {
            match t {
                Term::Index(i) => best = best.max(i.get().saturating_sub(depth)),
                Term::Abs(b) => stack.push((b, depth + 1)),
                Term::App(f, a) => {
                    stack.push((a, depth));
                    stack.push((f, depth));
                }
            }
        }
        best
    }

    pub fn is_closed(&self) -> bool {
        self.max_free_index() == 0
    }

    pub fn encode(&self) -> BitString {
        let mut bits = Vec::with_capacity(self.size());
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Term::Index(i) => {
                    bits.extend(std::iter::repeat_n(true, i.get()));
                    bits.push(false);
                }
                Term::Abs(b) => {
                    bits.extend([false, false]);
                    stack.push(b);
                }
                Term::App(f, a) => {
                    bits.extend([false, true]);
                    stack.push(a);
                    stack.push(f);
                }
            }
        }
        BitString(bits)
    }

    /// Text form: `\` for abstraction, `(f a)` for application, decimal indices.
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(s: &str) -> Result<Term, ParseError> {
        TextParser { src: s.as_bytes(), pos: 0 }.parse_all()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Index(i) => write!(f, "{i}"),
            Term::Abs(b) => write!(f, "\\{b}"),
            Term::App(m, n) => write!(f, "({m} {n})"),
        }
    }
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Term::parse_text(s)
    }
}

/// A finite string of bits; externally ASCII `0`/`1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BitString(pub Vec<bool>);

impl BitString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// The `len` low bits of `value`, most significant first.
    pub fn from_u64(value: u64, len: usize) -> BitString {
        BitString((0..len).rev().map(|i| (value >> i) & 1 == 1).collect())
    }

    pub fn decode(&self) -> Result<Term, DecodeError> {
        decode(&self.0)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.bytes()
            .enumerate()
            .map(|(pos, c)| match c {
                b'0' => Ok(false),
                b'1' => Ok(true),
                _ => Err(ParseError {
                    pos,
                    message: format!("expected '0' or '1', found {:?}", c as char),
                }),
            })
            .collect::<Result<_, _>>()
            .map(BitString)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("input ended in the middle of a term")]
    Truncated,
    #[error("term ends at bit {consumed} but {remaining} bit(s) remain")]
    TrailingBits { consumed: usize, remaining: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

/// Decodes a complete bit string. Uses an explicit stack, so deeply
/// nested inputs do not grow the call stack.
pub fn decode(bits: &[bool]) -> Result<Term, DecodeError> {
    enum Frame {
        Abs,
        AppFun,
        AppArg(Term),
    }

    let mut pos = 0;
    let mut next = || {
        let b = bits.get(pos).copied().ok_or(DecodeError::Truncated);
        pos += 1;
        b
    };
    let mut stack: Vec<Frame> = Vec::new();
    loop {
        let mut leaf = if next()? {
            let mut ones = 1;
            while next()? {
                ones += 1;
            }
            Term::var(ones)
        } else {
            stack.push(if next()? { Frame::AppFun } else { Frame::Abs });
            continue;
        };

        // Fold the finished subterm into its parents until one needs an argument.
        loop {
            match stack.pop() {
                None => {
                    return if pos == bits.len() {
                        Ok(leaf)
                    } else {
                        Err(DecodeError::TrailingBits {
                            consumed: pos,
                            remaining: bits.len() - pos,
                        })
                    };
                }
                Some(Frame::Abs) => leaf = Term::abs(leaf),
                Some(Frame::AppFun) => {
                    stack.push(Frame::AppArg(leaf));
                    break;
                }
                Some(Frame::AppArg(fun)) => leaf = Term::app(fun, leaf),
            }
        }
    }
}

struct TextParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TextParser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn parse_all(mut self) -> Result<Term, ParseError> {
        let t = self.term()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(t)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        match self.src.get(self.pos) {
            None => Err(self.error("unexpected end of input")),
            Some(b'\\') => {
                self.pos += 1;
                Ok(Term::abs(self.term()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let f = self.term()?;
                let ws_start = self.pos;
                self.skip_ws();
                if self.pos == ws_start {
                    return Err(self.error("expected whitespace between function and argument"));
                }
                let a = self.term()?;
                self.skip_ws();
                if self.src.get(self.pos) != Some(&b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(Term::app(f, a))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match digits.parse::<usize>().ok().and_then(NonZeroUsize::new) {
                    Some(i) => Ok(Term::Index(i)),
                    None => Err(ParseError {
                        pos: start,
                        message: format!("invalid index {digits:?}; indices start at 1"),
                    }),
                }
            }
            Some(&c) => Err(self.error(format!("unexpected character {:?}", c as char))),
        }
    }
}
