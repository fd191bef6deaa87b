//! Prenex formulas over rational-function atoms: parsing in an
//! S-expression and an infix dialect, normalization of atoms to a single
//! fraction in lowest terms, and clearing of denominators by the quantifier
//! polarity of each atom.

mod clear;
mod eval;
mod native;
mod normalize;
mod sexpr;

pub use clear::{clear_denominators, nnf, polarity, Mode};
pub use eval::{eval_matrix, eval_term};
pub use normalize::{normalize_atom, Atom, RationalTerm};

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::poly::{PolyError, Polynomial, VarOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("quantifier below the prefix: formula is not prenex")]
    NonPrenex,
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("variable `{0}` bound twice")]
    Rebound(String),
    #[error("denominator is identically zero in {0}")]
    ZeroDenominator(String),
    #[error("denominator of {atom} mixes quantifier kinds over {vars}")]
    MixedPolarity { atom: String, vars: String },
    #[error("division by a non-constant term cannot be written in the S-expression dialect")]
    DivisionInOutput,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quant {
    Exists,
    Forall,
}

impl Quant {
    pub fn name(self) -> &'static str {
        match self {
            Quant::Exists => "exists",
            Quant::Forall => "forall",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Eq,
    Ne,
    Gt,
    Lt,
    Ge,
    Le,
}

impl Rel {
    /// Logical negation.
    pub fn negate(self) -> Rel {
        match self {
            Rel::Eq => Rel::Ne,
            Rel::Ne => Rel::Eq,
            Rel::Gt => Rel::Le,
            Rel::Lt => Rel::Ge,
            Rel::Ge => Rel::Lt,
            Rel::Le => Rel::Gt,
        }
    }

    /// `a rel b` iff `b rel.swap() a`.
    pub fn swap(self) -> Rel {
        match self {
            Rel::Gt => Rel::Lt,
            Rel::Lt => Rel::Gt,
            Rel::Ge => Rel::Le,
            Rel::Le => Rel::Ge,
            r => r,
        }
    }

    pub fn holds(self, ord: std::cmp::Ordering) -> bool {
        use std::cmp::Ordering::*;
        match self {
            Rel::Eq => ord == Equal,
            Rel::Ne => ord != Equal,
            Rel::Gt => ord == Greater,
            Rel::Lt => ord == Less,
            Rel::Ge => ord != Less,
            Rel::Le => ord != Greater,
        }
    }

    pub fn infix(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Gt => ">",
            Rel::Lt => "<",
            Rel::Ge => ">=",
            Rel::Le => "<=",
        }
    }

    pub fn smt(self) -> &'static str {
        match self {
            Rel::Ne => "distinct",
            r => r.infix(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Num(BigRational),
    Var(String),
    Add(Vec<Term>),
    /// `a - b - ...`; a single operand is not allowed (see `Neg`).
    Sub(Vec<Term>),
    Mul(Vec<Term>),
    Div(Box<Term>, Box<Term>),
    Pow(Box<Term>, u32),
    Neg(Box<Term>),
    /// Polynomial produced by a rewrite.
    Poly(Polynomial),
}

impl Term {
    pub fn int(n: i64) -> Term {
        Term::Num(BigRational::from_integer(n.into()))
    }

    /// Variables occurring in the term.
    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Num(_) => {}
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone())
                }
            }
            Term::Add(ts) | Term::Sub(ts) | Term::Mul(ts) => ts.iter().for_each(|t| t.vars(out)),
            Term::Div(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Term::Pow(a, _) | Term::Neg(a) => a.vars(out),
            Term::Poly(p) => {
                for i in p.vars_present() {
                    let v = p.order().name(i).to_string();
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
        }
    }

    /// True when some divisor contains a variable.
    pub fn has_division(&self) -> bool {
        match self {
            Term::Num(_) | Term::Var(_) | Term::Poly(_) => false,
            Term::Add(ts) | Term::Sub(ts) | Term::Mul(ts) => ts.iter().any(Term::has_division),
            Term::Div(a, b) => {
                let mut v = Vec::new();
                b.vars(&mut v);
                !v.is_empty() || a.has_division() || b.has_division()
            }
            Term::Pow(a, _) | Term::Neg(a) => a.has_division(),
        }
    }

    /// Whether any division node occurs, numeric divisors included.
    pub fn has_div_node(&self) -> bool {
        match self {
            Term::Num(_) | Term::Var(_) | Term::Poly(_) => false,
            Term::Add(ts) | Term::Sub(ts) | Term::Mul(ts) => ts.iter().any(Term::has_div_node),
            Term::Div(..) => true,
            Term::Pow(a, _) | Term::Neg(a) => a.has_div_node(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAtom {
    pub lhs: Term,
    pub rel: Rel,
    pub rhs: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Matrix {
    True,
    False,
    Atom(RawAtom),
    Not(Box<Matrix>),
    And(Vec<Matrix>),
    Or(Vec<Matrix>),
}

impl Matrix {
    pub fn atoms(&self) -> Vec<&RawAtom> {
        let mut out = Vec::new();
        fn go<'a>(m: &'a Matrix, out: &mut Vec<&'a RawAtom>) {
            match m {
                Matrix::Atom(a) => out.push(a),
                Matrix::Not(x) => go(x, out),
                Matrix::And(xs) | Matrix::Or(xs) => xs.iter().for_each(|x| go(x, out)),
                _ => {}
            }
        }
        go(self, &mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    /// Declared free variables.
    pub free: Vec<String>,
    pub prefix: Vec<(Quant, String)>,
    pub matrix: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    Native,
    Smt,
}

impl Formula {
    /// Bound variables in prefix order, then free variables.
    pub fn var_order(&self) -> Result<VarOrder, RewriteError> {
        let mut names: Vec<String> = self.prefix.iter().map(|(_, v)| v.clone()).collect();
        names.extend(self.free.iter().cloned());
        if names.is_empty() {
            names.push("_".into());
        }
        Ok(VarOrder::new(names)?)
    }

    pub fn quantifier_of(&self, var: &str) -> Option<Quant> {
        self.prefix.iter().find(|(_, v)| v == var).map(|(q, _)| *q)
    }

    fn check_scope(&self) -> Result<(), RewriteError> {
        let mut seen: Vec<&String> = Vec::new();
        for v in self.free.iter().chain(self.prefix.iter().map(|(_, v)| v)) {
            if seen.contains(&v) {
                return Err(RewriteError::Rebound(v.clone()));
            }
            seen.push(v);
        }
        for a in self.matrix.atoms() {
            let mut vs = Vec::new();
            a.lhs.vars(&mut vs);
            a.rhs.vars(&mut vs);
            if let Some(v) = vs.into_iter().find(|v| !seen.contains(&v)) {
                return Err(RewriteError::Unbound(v));
            }
        }
        Ok(())
    }

    pub fn emit(&self, dialect: Dialect) -> Result<String, RewriteError> {
        match dialect {
            Dialect::Native => Ok(native::emit(self)),
            Dialect::Smt => sexpr::emit(self),
        }
    }
}

/// Parses the S-expression dialect: optional `(declare-const v Real)` or
/// `(declare-fun v () Real)` forms, then a formula, optionally wrapped in
/// `(assert ...)`.
pub fn parse_formula(text: &str) -> Result<Formula, RewriteError> {
    let f = sexpr::parse(text)?;
    f.check_scope()?;
    Ok(f)
}

/// Parses the infix dialect: `free a, b;` declarations, then
/// `forall x, y. exists z. matrix`.
pub fn parse_native(text: &str) -> Result<Formula, RewriteError> {
    let f = native::parse(text)?;
    f.check_scope()?;
    Ok(f)
}

/// Parses either dialect, choosing by the first non-blank character.
pub fn parse_any(text: &str) -> Result<Formula, RewriteError> {
    let first = text
        .lines()
        .map(|l| l.split(';').next().unwrap_or(""))
        .flat_map(|l| l.chars())
        .find(|c| !c.is_whitespace());
    if first == Some('(') && sexpr::parse(text).is_ok() {
        parse_formula(text)
    } else {
        parse_native(text)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&native::emit(self))
    }
}
