//! Exact evaluation at rational points.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Matrix, Term};

/// Value of `t`, or `None` where a divisor vanishes or a variable is
/// unassigned.
pub fn eval_term(t: &Term, env: &HashMap<String, BigRational>) -> Option<BigRational> {
    Some(match t {
        Term::Num(c) => c.clone(),
        Term::Var(v) => env.get(v)?.clone(),
        Term::Add(ts) => {
            let mut acc = BigRational::zero();
            for x in ts {
                acc += eval_term(x, env)?;
            }
            acc
        }
        Term::Sub(ts) => {
            let mut acc = eval_term(&ts[0], env)?;
            for x in &ts[1..] {
                acc -= eval_term(x, env)?;
            }
            acc
        }
        Term::Mul(ts) => {
            let mut acc = BigRational::one();
            for x in ts {
                acc *= eval_term(x, env)?;
            }
            acc
        }
        Term::Div(a, b) => {
            let d = eval_term(b, env)?;
            if d.is_zero() {
                return None;
            }
            eval_term(a, env)? / d
        }
        Term::Pow(a, e) => num_traits::pow(eval_term(a, env)?, *e as usize),
        Term::Neg(a) => -eval_term(a, env)?,
        Term::Poly(p) => p.evaluate_map(env).ok()?,
    })
}

/// Truth value of the quantifier-free matrix, `None` where some atom is
/// undefined.
pub fn eval_matrix(m: &Matrix, env: &HashMap<String, BigRational>) -> Option<bool> {
    Some(match m {
        Matrix::True => true,
        Matrix::False => false,
        Matrix::Atom(a) => {
            let l = eval_term(&a.lhs, env)?;
            let r = eval_term(&a.rhs, env)?;
            a.rel.holds(l.cmp(&r))
        }
        Matrix::Not(x) => !eval_matrix(x, env)?,
        Matrix::And(xs) => {
            let mut v = true;
            for x in xs {
                v &= eval_matrix(x, env)?;
            }
            v
        }
        Matrix::Or(xs) => {
            let mut v = false;
            for x in xs {
                v |= eval_matrix(x, env)?;
            }
            v
        }
    })
}
