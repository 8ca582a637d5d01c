//! Formal *-polynomials in named operators.
//!
//! ```
//! use afcore::operator::expr::{sym, Expr};
//! let z1 = sym("Z1");
//! let lhs = z1.adj() * z1.clone();
//! assert_eq!(lhs.to_string(), "Z1* Z1");
//! assert_eq!(Expr::one().to_string(), "1");
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Sym(String),
    Adj(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Scale(Q, Box<Expr>),
    Identity,
    Zero,
}

pub fn sym(name: impl Into<String>) -> Expr {
    Expr::Sym(name.into())
}

impl Expr {
    pub fn one() -> Expr {
        Expr::Identity
    }

    pub fn zero() -> Expr {
        Expr::Zero
    }

    pub fn adj(&self) -> Expr {
        Expr::Adj(Box::new(self.clone()))
    }

    /// `selfᵏ`; the empty product is the identity.
    pub fn pow(&self, k: u32) -> Expr {
        (0..k).fold(Expr::Identity, |acc, _| match acc {
            Expr::Identity => self.clone(),
            acc => acc * self.clone(),
        })
    }

    pub fn scale(&self, c: Q) -> Expr {
        Expr::Scale(c, Box::new(self.clone()))
    }

    /// Sum of the given terms (zero if empty).
    pub fn sum(terms: impl IntoIterator<Item = Expr>) -> Expr {
        terms.into_iter().fold(Expr::Zero, |acc, t| match acc {
            Expr::Zero => t,
            acc => acc + t,
        })
    }

    /// Every symbol occurring in the expression.
    pub fn symbols(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Sym(s) => out.push(s),
            Expr::Adj(e) | Expr::Scale(_, e) => e.collect_symbols(out),
            Expr::Mul(a, b) | Expr::Add(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Expr::Identity | Expr::Zero => {}
        }
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Scale(Q::from_integer(-1), Box::new(self))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sym(s) => f.write_str(s),
            Expr::Adj(e) => match **e {
                Expr::Sym(_) => write!(f, "{e}*"),
                _ => write!(f, "({e})*"),
            },
            Expr::Mul(a, b) => {
                write_factor(f, a)?;
                f.write_str(" ")?;
                write_factor(f, b)
            }
            Expr::Add(a, b) => match &**b {
                Expr::Scale(c, inner) if *c == Q::from_integer(-1) => {
                    write!(f, "{a} - ")?;
                    write_factor(f, inner)
                }
                _ => write!(f, "{a} + {b}"),
            },
            Expr::Scale(c, e) => {
                if *c == Q::from_integer(-1) {
                    f.write_str("-")?;
                } else {
                    write!(f, "{c} ")?;
                }
                write_factor(f, e)
            }
            Expr::Identity => f.write_str("1"),
            Expr::Zero => f.write_str("0"),
        }
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Add(..) => write!(f, "({e})"),
        _ => write!(f, "{e}"),
    }
}

/// A named identity `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Relation {
    pub fn new(name: impl Into<String>, lhs: Expr, rhs: Expr) -> Self {
        Relation {
            name: name.into(),
            lhs,
            rhs,
        }
    }

    /// A relation named after its own formula.
    pub fn auto(lhs: Expr, rhs: Expr) -> Self {
        let name = format!("{lhs} = {rhs}");
        Relation { name, lhs, rhs }
    }

    pub fn difference(&self) -> Expr {
        self.lhs.clone() - self.rhs.clone()
    }
}
