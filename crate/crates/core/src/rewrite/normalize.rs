//! Rational normal form of atoms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{RawAtom, Rel, RewriteError, Term};
use crate::poly::gcd::{content_primitive, gcd};
use crate::poly::{Polynomial, VarOrder};

/// `scalar * num / den` with `num`, `den` coprime integer polynomials, both
/// primitive with positive leading coefficient (`num` is zero when the term
/// vanishes identically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTerm {
    pub num: Polynomial,
    pub den: Polynomial,
    pub scalar: BigRational,
}

impl RationalTerm {
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }
}

/// A normalized atom `lhs rel 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub lhs: RationalTerm,
    pub rel: Rel,
    /// Set when a common factor of numerator and denominator was removed.
    pub warning: Option<String>,
}

impl Atom {
    /// `(f, g, rel)` with `lhs rel 0` equivalent to `f / g rel' 0`, the
    /// scalar's sign folded into the relation.
    pub fn parts(&self) -> (&Polynomial, &Polynomial, Rel) {
        let rel = if self.lhs.scalar.is_negative() { self.rel.swap() } else { self.rel };
        (&self.lhs.num, &self.lhs.den, rel)
    }
}

/// Fraction of integer polynomials, not yet reduced.
struct Frac {
    num: Polynomial,
    den: Polynomial,
}

fn frac(t: &Term, order: &VarOrder, text: &dyn Fn() -> String) -> Result<Frac, RewriteError> {
    let one = || Polynomial::one(order);
    Ok(match t {
        Term::Num(c) => Frac {
            num: Polynomial::constant(order, c.numer().clone()),
            den: Polynomial::constant(order, c.denom().clone()),
        },
        Term::Var(v) => Frac {
            num: Polynomial::var(order, v)?,
            den: one(),
        },
        Term::Poly(p) => Frac {
            num: p.reorder(order)?,
            den: one(),
        },
        Term::Add(ts) | Term::Sub(ts) => {
            let sub = matches!(t, Term::Sub(_));
            let mut acc = frac(&ts[0], order, text)?;
            for x in &ts[1..] {
                let b = frac(x, order, text)?;
                let (l, r) = (&acc.num * &b.den, &b.num * &acc.den);
                acc = Frac {
                    num: if sub { l - r } else { l + r },
                    den: &acc.den * &b.den,
                };
                reduce_content(&mut acc);
            }
            acc
        }
        Term::Mul(ts) => {
            let mut acc = Frac { num: one(), den: one() };
            for x in ts {
                let b = frac(x, order, text)?;
                acc = Frac {
                    num: &acc.num * &b.num,
                    den: &acc.den * &b.den,
                };
                reduce_content(&mut acc);
            }
            acc
        }
        Term::Div(a, b) => {
            let a = frac(a, order, text)?;
            let b = frac(b, order, text)?;
            if b.num.is_zero() {
                return Err(RewriteError::ZeroDenominator(text()));
            }
            let mut f = Frac {
                num: &a.num * &b.den,
                den: &a.den * &b.num,
            };
            reduce_content(&mut f);
            f
        }
        Term::Pow(a, e) => {
            let a = frac(a, order, text)?;
            Frac {
                num: a.num.pow(*e),
                den: a.den.pow(*e),
            }
        }
        Term::Neg(a) => {
            let a = frac(a, order, text)?;
            Frac { num: -a.num, den: a.den }
        }
    })
}

/// Cancels the integer content shared by numerator and denominator.
fn reduce_content(f: &mut Frac) {
    if f.num.is_zero() {
        // Keep the denominator's variables: the term is undefined on its zeros.
        f.den = split(&f.den).1;
        return;
    }
    let g = num_integer::Integer::gcd(&f.num.integer_content(), &f.den.integer_content());
    if !g.is_one() {
        f.num = f.num.div_int_exact(&g).expect("content divides");
        f.den = f.den.div_int_exact(&g).expect("content divides");
    }
}

fn split(p: &Polynomial) -> (BigInt, Polynomial) {
    if p.is_zero() {
        return (BigInt::zero(), p.clone());
    }
    let (c, q) = content_primitive(p).expect("nonzero");
    if q.leading_sign() < 0 {
        (-c, -q)
    } else {
        (c, q)
    }
}

/// Brings `lhs rel rhs` to `scalar * num / den rel 0` in lowest terms.
pub fn normalize_atom(atom: &RawAtom, order: &VarOrder) -> Result<Atom, RewriteError> {
    let text = || format!("{} {} {}", super::native::term(&atom.lhs), atom.rel.infix(), super::native::term(&atom.rhs));
    let diff = Term::Sub(vec![atom.lhs.clone(), atom.rhs.clone()]);
    let f = frac(&diff, order, &text)?;
    let mut warning = None;
    let (mut num, mut den) = (f.num, f.den);
    if !num.is_zero() {
        let g = gcd(&num, &den);
        if !g.is_constant() {
            warning = Some(format!("removed common factor {} from {}", g.clone().with_positive_lead(), text()));
            num = num.exact_div(&g)?;
            den = den.exact_div(&g)?;
        }
    }
    let (cn, pn) = split(&num);
    let (cd, pd) = split(&den);
    let (num, scalar) = if num.is_zero() {
        (Polynomial::zero(order), BigRational::one())
    } else {
        (pn, BigRational::new(cn, cd))
    };
    Ok(Atom {
        lhs: RationalTerm { num, den: pd, scalar },
        rel: atom.rel,
        warning,
    })
}
