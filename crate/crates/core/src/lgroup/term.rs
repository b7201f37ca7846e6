use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// ℓ-group terms over group elements, written as S-expressions:
/// `(join (meet [1,0] [0,1]) (add [1,0] (neg [0,1])))`. A bare integer is
/// a rank-one leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeTerm {
    Leaf(GroupElement),
    Add(Box<LatticeTerm>, Box<LatticeTerm>),
    Neg(Box<LatticeTerm>),
    Meet(Box<LatticeTerm>, Box<LatticeTerm>),
    Join(Box<LatticeTerm>, Box<LatticeTerm>),
}

// Named after the term constructors, not the operator traits.
#[allow(clippy::should_implement_trait)]
impl LatticeTerm {
    pub fn leaf(g: GroupElement) -> Self {
        Self::Leaf(g)
    }

    pub fn add(a: Self, b: Self) -> Self {
        Self::Add(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Self) -> Self {
        Self::Neg(Box::new(a))
    }

    pub fn meet(a: Self, b: Self) -> Self {
        Self::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Self, b: Self) -> Self {
        Self::Join(Box::new(a), Box::new(b))
    }

    /// Common rank of the leaves.
    pub fn rank(&self) -> Result<usize> {
        match self {
            Self::Leaf(g) => Ok(g.rank()),
            Self::Neg(a) => a.rank(),
            Self::Add(a, b) | Self::Meet(a, b) | Self::Join(a, b) => {
                let (ra, rb) = (a.rank()?, b.rank()?);
                crate::error::check_rank(ra, rb)?;
                Ok(ra)
            }
        }
    }
}

impl fmt::Display for LatticeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf(g) => {
                let coords: Vec<String> = g.coords().iter().map(BigInt::to_string).collect();
                write!(f, "[{}]", coords.join(","))
            }
            Self::Neg(a) => write!(f, "(neg {a})"),
            Self::Add(a, b) => write!(f, "(add {a} {b})"),
            Self::Meet(a, b) => write!(f, "(meet {a} {b})"),
            Self::Join(a, b) => write!(f, "(join {a} {b})"),
        }
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
    Vector(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            '[' => {
                chars.next();
                let mut body = String::new();
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some(c) => body.push(c),
                        None => return Err(Error::Malformed("unterminated `[`".into())),
                    }
                }
                out.push(Token::Vector(body));
            }
            _ => {
                let mut atom = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || "()[]".contains(c) {
                        break;
                    }
                    atom.push(c);
                    chars.next();
                }
                out.push(Token::Atom(atom));
            }
        }
    }
    Ok(out)
}

fn parse_int(text: &str) -> Result<BigInt> {
    BigInt::from_str(text.trim()).map_err(|_| Error::Malformed(format!("not an integer: `{}`", text.trim())))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn term(&mut self) -> Result<LatticeTerm> {
        match self.next() {
            None => Err(Error::Malformed("unexpected end of term".into())),
            Some(Token::Close) => Err(Error::Malformed("unexpected `)`".into())),
            Some(Token::Vector(body)) => {
                let coords = body.split(',').map(parse_int).collect::<Result<Vec<_>>>()?;
                if coords.is_empty() {
                    return Err(Error::Malformed("empty vector".into()));
                }
                Ok(LatticeTerm::Leaf(GroupElement::new(coords)))
            }
            Some(Token::Atom(a)) => Ok(LatticeTerm::Leaf(GroupElement::new(vec![parse_int(a)?]))),
            Some(Token::Open) => {
                let op = match self.next() {
                    Some(Token::Atom(op)) => op.clone(),
                    _ => return Err(Error::Malformed("expected an operator after `(`".into())),
                };
                let t = match op.as_str() {
                    "neg" => LatticeTerm::neg(self.term()?),
                    "add" | "meet" | "join" => {
                        let (a, b) = (self.term()?, self.term()?);
                        match op.as_str() {
                            "add" => LatticeTerm::add(a, b),
                            "meet" => LatticeTerm::meet(a, b),
                            _ => LatticeTerm::join(a, b),
                        }
                    }
                    other => return Err(Error::Malformed(format!("unknown operator `{other}`"))),
                };
                match self.next() {
                    Some(Token::Close) => Ok(t),
                    _ => Err(Error::Malformed(format!("expected `)` to close `{op}`"))),
                }
            }
        }
    }
}

impl FromStr for LatticeTerm {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
        let t = p.term()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Malformed("trailing input after term".into()));
        }
        t.rank()?;
        Ok(t)
    }
}
