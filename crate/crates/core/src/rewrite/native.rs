//! Infix dialect: `free a; forall x, y. exists z. x*y/z > a or not (z = 0)`.

use num_rational::BigRational;
use num_traits::Signed;

use super::sexpr::{fold_div, fold_neg, parse_number};
use super::{Formula, Matrix, Quant, RawAtom, Rel, RewriteError, Term};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Sym(&'static str),
}

const SYMS: [&str; 16] = [
    ">=", "<=", "!=", "+", "-", "*", "/", "^", "(", ")", ",", ".", ";", "=", ">", "<",
];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, RewriteError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < b.len() && b[i] == b'.' && b[i + 1].is_ascii_digit() {
                i += 1;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push((Tok::Num(parse_number(&text[s..i]).unwrap()), s));
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[s..i].to_string()), s));
            continue;
        }
        for sym in SYMS {
            if text[i..].starts_with(sym) {
                out.push((Tok::Sym(sym), i));
                i += sym.len();
                continue 'outer;
            }
        }
        return Err(RewriteError::Syntax {
            pos: i,
            msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
        });
    }
    Ok(out)
}

const KEYWORDS: [&str; 7] = ["forall", "exists", "and", "or", "not", "true", "false"];

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

type R<T> = Result<T, RewriteError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> R<T> {
        Err(RewriteError::Syntax {
            pos: self.at(),
            msg: msg.into(),
        })
    }

    fn sym(&mut self, s: &'static str) -> bool {
        if self.peek() == Some(&Tok::Sym(s)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &'static str) -> R<()> {
        if self.sym(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn ident(&mut self) -> R<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) && s != "free" => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected a variable name"),
        }
    }

    fn ident_list(&mut self) -> R<Vec<String>> {
        let mut v = vec![self.ident()?];
        while self.sym(",") {
            v.push(self.ident()?);
        }
        Ok(v)
    }

    fn formula(&mut self) -> R<Formula> {
        let mut free = Vec::new();
        while self.keyword("free") {
            free.extend(self.ident_list()?);
            self.expect(";")?;
        }
        let mut prefix = Vec::new();
        loop {
            let q = if self.keyword("forall") {
                Quant::Forall
            } else if self.keyword("exists") {
                Quant::Exists
            } else {
                break;
            };
            for v in self.ident_list()? {
                prefix.push((q, v));
            }
            self.expect(".")?;
        }
        let matrix = self.or()?;
        if self.pos != self.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(Formula { free, prefix, matrix })
    }

    fn or(&mut self) -> R<Matrix> {
        let mut xs = vec![self.and()?];
        while self.keyword("or") {
            xs.push(self.and()?);
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { Matrix::Or(xs) })
    }

    fn and(&mut self) -> R<Matrix> {
        let mut xs = vec![self.unary()?];
        while self.keyword("and") {
            xs.push(self.unary()?);
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { Matrix::And(xs) })
    }

    fn unary(&mut self) -> R<Matrix> {
        if self.keyword("not") {
            return Ok(Matrix::Not(Box::new(self.unary()?)));
        }
        if self.keyword("true") {
            return Ok(Matrix::True);
        }
        if self.keyword("false") {
            return Ok(Matrix::False);
        }
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "forall" || s == "exists") {
            return Err(RewriteError::NonPrenex);
        }
        let save = self.pos;
        match self.atom() {
            Ok(a) => Ok(Matrix::Atom(a)),
            Err(e) => {
                self.pos = save;
                if self.sym("(") {
                    let m = self.or()?;
                    self.expect(")")?;
                    Ok(m)
                } else {
                    Err(e)
                }
            }
        }
    }

    fn atom(&mut self) -> R<RawAtom> {
        let lhs = self.expr()?;
        let rel = match self.peek() {
            Some(Tok::Sym(s)) => match *s {
                "=" => Rel::Eq,
                "!=" => Rel::Ne,
                ">" => Rel::Gt,
                "<" => Rel::Lt,
                ">=" => Rel::Ge,
                "<=" => Rel::Le,
                _ => return self.err("expected a relation"),
            },
            _ => return self.err("expected a relation"),
        };
        self.pos += 1;
        let rhs = self.expr()?;
        Ok(RawAtom { lhs, rel, rhs })
    }

    fn expr(&mut self) -> R<Term> {
        let mut t = self.mul()?;
        loop {
            if self.sym("+") {
                t = Term::Add(vec![t, self.mul()?]);
            } else if self.sym("-") {
                t = Term::Sub(vec![t, self.mul()?]);
            } else {
                return Ok(t);
            }
        }
    }

    fn mul(&mut self) -> R<Term> {
        let mut t = self.neg()?;
        loop {
            if self.sym("*") {
                t = Term::Mul(vec![t, self.neg()?]);
            } else if self.sym("/") {
                t = fold_div(t, self.neg()?);
            } else {
                return Ok(t);
            }
        }
    }

    fn neg(&mut self) -> R<Term> {
        if self.sym("-") {
            return Ok(fold_neg(self.neg()?));
        }
        self.pow()
    }

    fn pow(&mut self) -> R<Term> {
        let base = self.primary()?;
        if self.sym("^") {
            match self.peek() {
                Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => {
                    let e: u32 = n.to_integer().try_into().map_err(|_| RewriteError::Syntax {
                        pos: self.at(),
                        msg: "exponent too large".into(),
                    })?;
                    self.pos += 1;
                    return Ok(Term::Pow(Box::new(base), e));
                }
                _ => return self.err("exponent must be a non-negative integer"),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> R<Term> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Term::Num(n))
            }
            Some(Tok::Ident(_)) => Ok(Term::Var(self.ident()?)),
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let t = self.expr()?;
                self.expect(")")?;
                Ok(t)
            }
            _ => self.err("expected a term"),
        }
    }
}

pub(super) fn parse(text: &str) -> Result<Formula, RewriteError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    p.formula()
}

fn prec(t: &Term) -> u8 {
    match t {
        Term::Add(_) | Term::Sub(_) => 1,
        Term::Mul(_) | Term::Div(..) => 2,
        Term::Neg(_) => 3,
        Term::Pow(..) => 4,
        Term::Var(_) => 5,
        Term::Num(c) if !c.is_integer() => 2,
        Term::Num(c) if c.is_negative() => 3,
        Term::Num(_) => 5,
        Term::Poly(p) if p.nterms() > 1 => 1,
        Term::Poly(p) if p.is_constant() && !p.constant_value().unwrap().is_negative() => 5,
        Term::Poly(_) => 2,
    }
}

fn wrap(t: &Term, parens: bool) -> String {
    let s = term(t);
    if parens {
        format!("({s})")
    } else {
        s
    }
}

fn chain(ts: &[Term], op: &str, p: u8) -> String {
    let mut s = wrap(&ts[0], prec(&ts[0]) < p);
    for t in &ts[1..] {
        s.push_str(op);
        s.push_str(&wrap(t, prec(t) <= p));
    }
    s
}

pub(super) fn term(t: &Term) -> String {
    match t {
        Term::Num(c) => {
            if c.is_integer() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            }
        }
        Term::Var(v) => v.clone(),
        Term::Add(ts) => chain(ts, " + ", 1),
        Term::Sub(ts) => chain(ts, " - ", 1),
        Term::Mul(ts) => chain(ts, " * ", 2),
        Term::Div(a, b) => chain(&[(**a).clone(), (**b).clone()], " / ", 2),
        Term::Pow(a, e) => format!("{}^{e}", wrap(a, prec(a) < 5)),
        Term::Neg(a) => format!("-{}", wrap(a, prec(a) <= 3)),
        Term::Poly(p) => p.to_string(),
    }
}

fn mprec(m: &Matrix) -> u8 {
    match m {
        Matrix::Or(_) => 1,
        Matrix::And(_) => 2,
        Matrix::Not(_) => 3,
        _ => 4,
    }
}

fn matrix(m: &Matrix) -> String {
    let join = |xs: &[Matrix], op: &str, p: u8| {
        xs.iter()
            .map(|x| {
                let s = matrix(x);
                if mprec(x) <= p {
                    format!("({s})")
                } else {
                    s
                }
            })
            .collect::<Vec<_>>()
            .join(op)
    };
    match m {
        Matrix::True => "true".into(),
        Matrix::False => "false".into(),
        Matrix::Atom(a) => format!("{} {} {}", term(&a.lhs), a.rel.infix(), term(&a.rhs)),
        Matrix::Not(x) => {
            let s = matrix(x);
            if mprec(x) < 3 {
                format!("not ({s})")
            } else {
                format!("not {s}")
            }
        }
        Matrix::And(xs) => join(xs, " and ", 2),
        Matrix::Or(xs) => join(xs, " or ", 2),
    }
}

pub(super) fn emit(f: &Formula) -> String {
    let mut out = String::new();
    if !f.free.is_empty() {
        out.push_str(&format!("free {};\n", f.free.join(", ")));
    }
    let mut i = 0;
    while i < f.prefix.len() {
        let q = f.prefix[i].0;
        let mut j = i;
        while j < f.prefix.len() && f.prefix[j].0 == q {
            j += 1;
        }
        let vars: Vec<&str> = f.prefix[i..j].iter().map(|(_, v)| v.as_str()).collect();
        out.push_str(&format!("{} {}. ", q.name(), vars.join(", ")));
        i = j;
    }
    out.push_str(&matrix(&f.matrix));
    out
}
