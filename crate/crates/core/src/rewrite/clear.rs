//! Negation normal form and denominator clearing.

use super::normalize::normalize_atom;
use super::{Formula, Matrix, Quant, RawAtom, Rel, RewriteError, Term};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `g != 0 and f*g rel 0` under exists, `g = 0 or f*g rel 0` under forall.
    Product,
    /// Cases on the sign of `g`.
    SignSplit,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "product" => Ok(Mode::Product),
            "sign-split" => Ok(Mode::SignSplit),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

/// Pushes negations onto atoms, flipping relations.
pub fn nnf(m: &Matrix) -> Matrix {
    fn go(m: &Matrix, neg: bool) -> Matrix {
        match (m, neg) {
            (Matrix::True, false) | (Matrix::False, true) => Matrix::True,
            (Matrix::True, true) | (Matrix::False, false) => Matrix::False,
            (Matrix::Atom(a), false) => Matrix::Atom(a.clone()),
            (Matrix::Atom(a), true) => Matrix::Atom(RawAtom {
                rel: a.rel.negate(),
                ..a.clone()
            }),
            (Matrix::Not(x), _) => go(x, !neg),
            (Matrix::And(xs), false) | (Matrix::Or(xs), true) => Matrix::And(xs.iter().map(|x| go(x, neg)).collect()),
            (Matrix::Or(xs), false) | (Matrix::And(xs), true) => Matrix::Or(xs.iter().map(|x| go(x, neg)).collect()),
        }
    }
    go(m, false)
}

/// Quantifier kind guarding a denominator over `vars`: that of the
/// innermost binder among them, free variables counting as universal.
/// Mixed kinds are rejected.
pub fn polarity(f: &Formula, vars: &[String], atom: &str) -> Result<Quant, RewriteError> {
    let kinds: Vec<(usize, Quant)> = vars
        .iter()
        .map(|v| match f.prefix.iter().position(|(_, w)| w == v) {
            Some(i) => (i + 1, f.prefix[i].0),
            None => (0, Quant::Forall),
        })
        .collect();
    if kinds.windows(2).any(|w| w[0].1 != w[1].1) {
        let mut vs = vars.to_vec();
        vs.sort();
        return Err(RewriteError::MixedPolarity {
            atom: atom.into(),
            vars: vs.join(", "),
        });
    }
    Ok(kinds.iter().max_by_key(|k| k.0).map_or(Quant::Forall, |k| k.1))
}

fn atom(p: &Polynomial, rel: Rel) -> Matrix {
    Matrix::Atom(RawAtom {
        lhs: Term::Poly(p.clone()),
        rel,
        rhs: Term::int(0),
    })
}

/// Truth value of `p rel 0` when `p` is constant.
fn constant_truth(p: &Polynomial, rel: Rel) -> Option<bool> {
    p.constant_value().map(|c| rel.holds(c.sign().cmp(&num_bigint::Sign::NoSign)))
}

fn rewrite_atom(f: &Formula, a: &RawAtom, mode: Mode, warnings: &mut Vec<String>) -> Result<Matrix, RewriteError> {
    if !a.lhs.has_div_node() && !a.rhs.has_div_node() {
        return Ok(Matrix::Atom(a.clone()));
    }
    let order = f.var_order()?;
    let n = normalize_atom(a, &order)?;
    if let Some(w) = &n.warning {
        warnings.push(w.clone());
    }
    let (num, den, rel) = n.parts();
    if den.is_constant() {
        return Ok(atom(num, rel));
    }
    let vars: Vec<String> = den.vars_present().iter().map(|&i| order.name(i).to_string()).collect();
    let text = format!("{} {} {}", super::native::term(&a.lhs), a.rel.infix(), super::native::term(&a.rhs));
    let q = polarity(f, &vars, &text)?;
    let guard = match q {
        Quant::Exists => atom(den, Rel::Ne),
        Quant::Forall => atom(den, Rel::Eq),
    };
    let body = match mode {
        Mode::Product => vec![atom(&(num * den), rel)],
        Mode::SignSplit => {
            let mut branches = Vec::new();
            for (s, r) in [(Rel::Gt, rel), (Rel::Lt, rel.swap())] {
                if constant_truth(num, r) == Some(false) {
                    continue;
                }
                branches.push(Matrix::And(vec![atom(den, s), atom(num, r)]));
            }
            branches
        }
    };
    Ok(match (q, mode) {
        (Quant::Exists, Mode::Product) => Matrix::And(vec![guard, body.into_iter().next().unwrap()]),
        (Quant::Exists, Mode::SignSplit) => match body.len() {
            0 => Matrix::False,
            1 => body.into_iter().next().unwrap(),
            _ => Matrix::Or(body),
        },
        (Quant::Forall, _) => {
            let mut v = vec![guard];
            v.extend(body);
            Matrix::Or(v)
        }
    })
}

/// Replaces every atom with a non-constant denominator by a division-free
/// equivalent under the restricted-domain reading. Returns the rewritten
/// formula and the warnings raised by normalization.
pub fn clear_denominators(f: &Formula, mode: Mode) -> Result<(Formula, Vec<String>), RewriteError> {
    let mut warnings = Vec::new();
    fn go(f: &Formula, m: &Matrix, mode: Mode, w: &mut Vec<String>) -> Result<Matrix, RewriteError> {
        Ok(match m {
            Matrix::Atom(a) => rewrite_atom(f, a, mode, w)?,
            Matrix::And(xs) => Matrix::And(xs.iter().map(|x| go(f, x, mode, w)).collect::<Result<_, _>>()?),
            Matrix::Or(xs) => Matrix::Or(xs.iter().map(|x| go(f, x, mode, w)).collect::<Result<_, _>>()?),
            Matrix::Not(_) => unreachable!("negation normal form"),
            t => t.clone(),
        })
    }
    let matrix = go(f, &nnf(&f.matrix), mode, &mut warnings)?;
    Ok((
        Formula {
            free: f.free.clone(),
            prefix: f.prefix.clone(),
            matrix,
        },
        warnings,
    ))
}
