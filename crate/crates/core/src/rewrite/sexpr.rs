//! S-expression dialect.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Formula, Matrix, Quant, RawAtom, Rel, RewriteError, Term};
use crate::poly::Polynomial;

#[derive(Debug, Clone)]
enum Sx {
    Atom(String, usize),
    List(Vec<Sx>, usize),
}

impl Sx {
    fn pos(&self) -> usize {
        match self {
            Sx::Atom(_, p) | Sx::List(_, p) => *p,
        }
    }
}

fn err(pos: usize, msg: impl Into<String>) -> RewriteError {
    RewriteError::Syntax { pos, msg: msg.into() }
}

fn read_all(text: &str) -> Result<Vec<Sx>, RewriteError> {
    let b = text.as_bytes();
    let mut i = 0;
    let mut stack: Vec<(Vec<Sx>, usize)> = vec![(Vec::new(), 0)];
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b';' {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
        } else if c == b'(' {
            stack.push((Vec::new(), i));
            i += 1;
        } else if c == b')' {
            if stack.len() == 1 {
                return Err(err(i, "unbalanced `)`"));
            }
            let (items, p) = stack.pop().unwrap();
            stack.last_mut().unwrap().0.push(Sx::List(items, p));
            i += 1;
        } else {
            let s = i;
            while i < b.len() && !b[i].is_ascii_whitespace() && b[i] != b'(' && b[i] != b')' && b[i] != b';' {
                i += 1;
            }
            stack.last_mut().unwrap().0.push(Sx::Atom(text[s..i].to_string(), s));
        }
    }
    if stack.len() != 1 {
        return Err(err(stack.last().unwrap().1, "unclosed `(`"));
    }
    Ok(stack.pop().unwrap().0)
}

fn head(items: &[Sx]) -> Option<&str> {
    match items.first() {
        Some(Sx::Atom(s, _)) => Some(s),
        _ => None,
    }
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

fn ident(x: &Sx) -> Result<String, RewriteError> {
    match x {
        Sx::Atom(s, p) if is_ident(s) => Ok(s.clone()),
        _ => Err(err(x.pos(), "expected a variable name")),
    }
}

pub(super) fn parse_number(s: &str) -> Option<BigRational> {
    if let Some((a, b)) = s.split_once('.') {
        if a.is_empty() || b.is_empty() || !a.bytes().all(|c| c.is_ascii_digit()) || !b.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = format!("{a}{b}").parse().ok()?;
        let den = BigInt::from(10).pow(b.len() as u32);
        return Some(BigRational::new(num, den));
    }
    if !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit()) {
        return Some(BigRational::from_integer(s.parse().ok()?));
    }
    None
}

/// Folds numeric negation and numeric quotients so literals read back as
/// single numbers.
pub(super) fn fold_neg(t: Term) -> Term {
    match t {
        Term::Num(c) => Term::Num(-c),
        t => Term::Neg(Box::new(t)),
    }
}

pub(super) fn fold_div(a: Term, b: Term) -> Term {
    match (&a, &b) {
        (Term::Num(x), Term::Num(y)) if !y.is_zero() => Term::Num(x / y),
        _ => Term::Div(Box::new(a), Box::new(b)),
    }
}

fn term(x: &Sx) -> Result<Term, RewriteError> {
    match x {
        Sx::Atom(s, p) => {
            if let Some(n) = parse_number(s) {
                Ok(Term::Num(n))
            } else if is_ident(s) {
                Ok(Term::Var(s.clone()))
            } else {
                Err(err(*p, format!("unexpected `{s}`")))
            }
        }
        Sx::List(items, p) => {
            let op = head(items).ok_or_else(|| err(*p, "expected an operator"))?;
            let args = items[1..].iter().map(term).collect::<Result<Vec<_>, _>>()?;
            let need = |n: usize| {
                if args.len() < n {
                    Err(err(*p, format!("`{op}` needs at least {n} operands")))
                } else {
                    Ok(())
                }
            };
            match op {
                "+" => {
                    need(1)?;
                    Ok(if args.len() == 1 { args.into_iter().next().unwrap() } else { Term::Add(args) })
                }
                "*" => {
                    need(1)?;
                    Ok(if args.len() == 1 { args.into_iter().next().unwrap() } else { Term::Mul(args) })
                }
                "-" => {
                    need(1)?;
                    Ok(if args.len() == 1 {
                        fold_neg(args.into_iter().next().unwrap())
                    } else {
                        Term::Sub(args)
                    })
                }
                "/" => {
                    if args.len() != 2 {
                        return Err(err(*p, "`/` takes two operands"));
                    }
                    let mut it = args.into_iter();
                    Ok(fold_div(it.next().unwrap(), it.next().unwrap()))
                }
                "^" => {
                    if items.len() != 3 {
                        return Err(err(*p, "`^` takes a term and an exponent"));
                    }
                    let e = match &items[2] {
                        Sx::Atom(s, _) => s.parse::<u32>().ok(),
                        _ => None,
                    }
                    .ok_or_else(|| err(items[2].pos(), "exponent must be a non-negative integer"))?;
                    Ok(Term::Pow(Box::new(args.into_iter().next().unwrap()), e))
                }
                _ => Err(err(*p, format!("unknown operator `{op}`"))),
            }
        }
    }
}

fn rel_of(s: &str) -> Option<Rel> {
    Some(match s {
        "=" => Rel::Eq,
        "distinct" => Rel::Ne,
        ">" => Rel::Gt,
        "<" => Rel::Lt,
        ">=" => Rel::Ge,
        "<=" => Rel::Le,
        _ => return None,
    })
}

fn matrix(x: &Sx) -> Result<Matrix, RewriteError> {
    match x {
        Sx::Atom(s, p) => match s.as_str() {
            "true" => Ok(Matrix::True),
            "false" => Ok(Matrix::False),
            _ => Err(err(*p, format!("expected a formula, found `{s}`"))),
        },
        Sx::List(items, p) => {
            let op = head(items).ok_or_else(|| err(*p, "expected a connective or relation"))?;
            match op {
                "and" | "or" => {
                    let xs = items[1..].iter().map(matrix).collect::<Result<Vec<_>, _>>()?;
                    if xs.is_empty() {
                        return Err(err(*p, format!("`{op}` needs operands")));
                    }
                    Ok(if op == "and" { Matrix::And(xs) } else { Matrix::Or(xs) })
                }
                "not" => {
                    if items.len() != 2 {
                        return Err(err(*p, "`not` takes one operand"));
                    }
                    Ok(Matrix::Not(Box::new(matrix(&items[1])?)))
                }
                "forall" | "exists" => Err(RewriteError::NonPrenex),
                _ => {
                    let rel = rel_of(op).ok_or_else(|| err(*p, format!("unknown relation `{op}`")))?;
                    if items.len() != 3 {
                        return Err(err(*p, format!("`{op}` is binary")));
                    }
                    Ok(Matrix::Atom(RawAtom {
                        lhs: term(&items[1])?,
                        rel,
                        rhs: term(&items[2])?,
                    }))
                }
            }
        }
    }
}

fn formula(x: &Sx, free: Vec<String>) -> Result<Formula, RewriteError> {
    let mut prefix = Vec::new();
    let mut cur = x;
    loop {
        match cur {
            Sx::List(items, p) if matches!(head(items), Some("forall" | "exists")) => {
                let q = if head(items) == Some("forall") { Quant::Forall } else { Quant::Exists };
                if items.len() != 3 {
                    return Err(err(*p, "quantifier takes bindings and a body"));
                }
                let Sx::List(binds, bp) = &items[1] else {
                    return Err(err(items[1].pos(), "expected a binding list"));
                };
                if binds.is_empty() {
                    return Err(err(*bp, "empty binding list"));
                }
                for b in binds {
                    match b {
                        Sx::List(pair, pp) if pair.len() == 2 => {
                            let v = ident(&pair[0])?;
                            match &pair[1] {
                                Sx::Atom(s, _) if s == "Real" => {}
                                _ => return Err(err(*pp, "only Real variables are supported")),
                            }
                            prefix.push((q, v));
                        }
                        _ => return Err(err(b.pos(), "expected `(v Real)`")),
                    }
                }
                cur = &items[2];
            }
            _ => break,
        }
    }
    Ok(Formula {
        free,
        prefix,
        matrix: matrix(cur)?,
    })
}

pub(super) fn parse(text: &str) -> Result<Formula, RewriteError> {
    let forms = read_all(text)?;
    let mut free = Vec::new();
    let mut body = None;
    for f in &forms {
        match f {
            Sx::List(items, p) if head(items) == Some("declare-const") => {
                if items.len() != 3 {
                    return Err(err(*p, "expected `(declare-const v Real)`"));
                }
                free.push(ident(&items[1])?);
            }
            Sx::List(items, p) if head(items) == Some("declare-fun") => {
                if items.len() != 4 || !matches!(&items[2], Sx::List(a, _) if a.is_empty()) {
                    return Err(err(*p, "expected `(declare-fun v () Real)`"));
                }
                free.push(ident(&items[1])?);
            }
            Sx::List(items, p) if head(items) == Some("assert") => {
                if items.len() != 2 || body.is_some() {
                    return Err(err(*p, "expected a single `(assert formula)`"));
                }
                body = Some(&items[1]);
            }
            Sx::List(items, _) if matches!(head(items), Some("check-sat" | "set-logic" | "exit")) => {}
            other => {
                if body.is_some() {
                    return Err(err(other.pos(), "more than one formula"));
                }
                body = Some(other);
            }
        }
    }
    let body = body.ok_or_else(|| err(text.len(), "no formula"))?;
    formula(body, free)
}

fn num(c: &BigRational) -> String {
    let n = if c.is_integer() {
        c.numer().abs().to_string()
    } else {
        format!("(/ {} {})", c.numer().abs(), c.denom())
    };
    if c.is_negative() {
        format!("(- {n})")
    } else {
        n
    }
}

fn poly(p: &Polynomial) -> String {
    let order = p.order();
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        let mut factors = Vec::new();
        let abs = c.abs();
        if !abs.is_one() || e.iter().all(|&x| x == 0) {
            factors.push(abs.to_string());
        }
        for (i, &x) in e.iter().enumerate() {
            match x {
                0 => {}
                1..=3 => factors.extend(std::iter::repeat(order.name(i).to_string()).take(x as usize)),
                _ => factors.push(format!("(^ {} {x})", order.name(i))),
            }
        }
        let t = if factors.len() == 1 { factors.pop().unwrap() } else { format!("(* {})", factors.join(" ")) };
        terms.push(if c.is_negative() { format!("(- {t})") } else { t });
    }
    match terms.len() {
        0 => "0".into(),
        1 => terms.pop().unwrap(),
        _ => format!("(+ {})", terms.join(" ")),
    }
}

fn emit_term(t: &Term) -> Result<String, RewriteError> {
    let list = |op: &str, ts: &[Term]| -> Result<String, RewriteError> {
        let parts = ts.iter().map(emit_term).collect::<Result<Vec<_>, _>>()?;
        Ok(format!("({op} {})", parts.join(" ")))
    };
    Ok(match t {
        Term::Num(c) => num(c),
        Term::Var(v) => v.clone(),
        Term::Add(ts) => list("+", ts)?,
        Term::Sub(ts) => list("-", ts)?,
        Term::Mul(ts) => list("*", ts)?,
        Term::Div(a, b) => {
            if t.has_division() {
                return Err(RewriteError::DivisionInOutput);
            }
            format!("(/ {} {})", emit_term(a)?, emit_term(b)?)
        }
        Term::Pow(a, e) => format!("(^ {} {e})", emit_term(a)?),
        Term::Neg(a) => format!("(- {})", emit_term(a)?),
        Term::Poly(p) => poly(p),
    })
}

fn emit_matrix(m: &Matrix) -> Result<String, RewriteError> {
    let list = |op: &str, xs: &[Matrix]| -> Result<String, RewriteError> {
        let parts = xs.iter().map(emit_matrix).collect::<Result<Vec<_>, _>>()?;
        Ok(format!("({op} {})", parts.join(" ")))
    };
    Ok(match m {
        Matrix::True => "true".into(),
        Matrix::False => "false".into(),
        Matrix::Atom(a) => format!("({} {} {})", a.rel.smt(), emit_term(&a.lhs)?, emit_term(&a.rhs)?),
        Matrix::Not(x) => format!("(not {})", emit_matrix(x)?),
        Matrix::And(xs) => list("and", xs)?,
        Matrix::Or(xs) => list("or", xs)?,
    })
}

pub(super) fn emit(f: &Formula) -> Result<String, RewriteError> {
    let mut out = String::new();
    for v in &f.free {
        out.push_str(&format!("(declare-const {v} Real)\n"));
    }
    let mut body = emit_matrix(&f.matrix)?;
    let mut i = f.prefix.len();
    while i > 0 {
        let q = f.prefix[i - 1].0;
        let mut j = i;
        while j > 0 && f.prefix[j - 1].0 == q {
            j -= 1;
        }
        let binds: Vec<String> = f.prefix[j..i].iter().map(|(_, v)| format!("({v} Real)")).collect();
        body = format!("({} ({}) {body})", q.name(), binds.join(" "));
        i = j;
    }
    out.push_str(&body);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_quantified_rational_atom() {
        let f = parse("(forall ((x Real)) (>= (/ 1 (^ x 2)) 0))").unwrap();
        assert_eq!(f.prefix, vec![(Quant::Forall, "x".to_string())]);
        let Matrix::Atom(a) = &f.matrix else { panic!() };
        assert_eq!(a.rel, Rel::Ge);
        assert!(a.lhs.has_division());
        assert!(matches!(parse("(and (exists ((x Real)) (= x 0)) true)"), Err(RewriteError::NonPrenex)));
        assert!(parse("(forall ((x Real)) (>= x 0)").is_err());
    }

    #[test]
    fn literals_and_round_trip() {
        let text = "(declare-const a Real)\n(exists ((x Real) (y Real)) (forall ((z Real)) (and (< (- 3) (* 0.5 x)) (distinct (- a y z) (/ 1 2)))))";
        let f = parse(text).unwrap();
        let out = emit(&f).unwrap();
        assert_eq!(parse(&out).unwrap(), f);
        assert!(out.contains("(- 3)"));
    }
}
