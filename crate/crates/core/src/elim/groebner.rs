//! Reduced lex Gröbner bases over the integers (Buchberger with the product
//! and chain criteria, fraction-free reduction, primitive normalization).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Polynomial, PolyError, VarOrder};

/// Terms sorted by strictly decreasing lex exponent; index 0 is the highest
/// variable.
type Lex = Vec<(Vec<u32>, BigInt)>;

fn to_lex(p: &Polynomial) -> Lex {
    let mut t = p.terms().to_vec();
    t.sort_by(|a, b| b.0.cmp(&a.0));
    t
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_mono(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn normalize(p: &mut Lex) {
    if p.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, c) in p.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if p[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in p.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// `a p - b m q` where `m` is a monomial.
fn combine(a: &BigInt, p: &Lex, b: &BigInt, m: &[u32], q: &Lex) -> Lex {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let mut qi = q.iter().map(|(e, c)| (e.iter().zip(m).map(|(x, y)| x + y).collect::<Vec<u32>>(), c));
    let mut pi = p.iter();
    let mut pn = pi.next();
    let mut qn = qi.next();
    loop {
        match (pn, &qn) {
            (None, None) => break,
            (Some((e, c)), None) => {
                out.push((e.clone(), a * c));
                pn = pi.next();
            }
            (None, Some((e, c))) => {
                out.push((e.clone(), -(b * *c)));
                qn = qi.next();
            }
            (Some((pe, pc)), Some((qe, qc))) => match pe.cmp(qe) {
                Ordering::Greater => {
                    out.push((pe.clone(), a * pc));
                    pn = pi.next();
                }
                Ordering::Less => {
                    out.push((qe.clone(), -(b * *qc)));
                    qn = qi.next();
                }
                Ordering::Equal => {
                    let c = a * pc - b * *qc;
                    if !c.is_zero() {
                        out.push((pe.clone(), c));
                    }
                    pn = pi.next();
                    qn = qi.next();
                }
            },
        }
    }
    out
}

/// Fully reduces `p` modulo `basis`, keeping it primitive.
fn reduce(mut p: Lex, basis: &[Lex]) -> Lex {
    let mut idx = 0;
    while idx < p.len() {
        let hit = basis.iter().find(|g| divides(&g[0].0, &p[idx].0));
        match hit {
            Some(g) => {
                let (t, c) = p[idx].clone();
                let lc = &g[0].1;
                let h = c.gcd(lc);
                let m = quotient(&t, &g[0].0);
                p = combine(&(lc / &h), &p, &(&c / &h), &m, g);
                normalize(&mut p);
            }
            None => idx += 1,
        }
    }
    p
}

fn s_poly(f: &Lex, g: &Lex) -> Lex {
    let l = lcm_mono(&f[0].0, &g[0].0);
    let h = f[0].1.gcd(&g[0].1);
    let a = &g[0].1 / &h;
    let b = &f[0].1 / &h;
    let mf = quotient(&l, &f[0].0);
    let mg = quotient(&l, &g[0].0);
    let fs: Lex = f.iter().map(|(e, c)| (e.iter().zip(&mf).map(|(x, y)| x + y).collect(), c.clone())).collect();
    combine(&a, &fs, &b, &mg, g)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Lex Gröbner basis of `polys` with variables ranked as in `order` (first
/// is highest). The result is reduced, each element primitive with positive
/// leading coefficient, sorted by increasing leading monomial and expressed
/// over `order`. The unit ideal gives `[1]`, the zero ideal `[]`.
pub fn groebner_lex(polys: &[Polynomial], order: &VarOrder) -> Result<Vec<Polynomial>, PolyError> {
    let mut g: Vec<Lex> = Vec::new();
    for p in polys {
        let mut l = to_lex(&p.reorder(order)?);
        normalize(&mut l);
        if !l.is_empty() {
            g.push(l);
        }
    }
    let basis = buchberger(g);
    Ok(basis
        .into_iter()
        .map(|l| Polynomial::from_terms(order, l))
        .collect())
}

fn is_unit(l: &Lex) -> bool {
    l.len() == 1 && l[0].0.iter().all(|&e| e == 0)
}

fn buchberger(input: Vec<Lex>) -> Vec<Lex> {
    let nv = input.first().map_or(0, |l| l[0].0.len());
    let one = || vec![(vec![0u32; nv], BigInt::one())];
    let mut g: Vec<Lex> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add = |g: &mut Vec<Lex>, pairs: &mut Vec<(usize, usize)>, p: Lex| {
        let k = g.len();
        g.push(p);
        for i in 0..k {
            pairs.push((i, k));
        }
    };
    for p in input {
        let r = reduce(p, &g);
        if r.is_empty() {
            continue;
        }
        if is_unit(&r) {
            return vec![one()];
        }
        add(&mut g, &mut pairs, r);
    }
    let mut done: std::collections::HashSet<(usize, usize)> = Default::default();
    loop {
        if pairs.is_empty() {
            break;
        }
        // Smallest lcm (degree, then lex) first.
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .map(|(n, &(i, j))| {
                let l = lcm_mono(&g[i][0].0, &g[j][0].0);
                (n, (l.iter().sum::<u32>(), l))
            })
            .min_by(|a, b| a.1.cmp(&b.1))
            .unwrap();
        let (i, j) = pairs.swap_remove(pos);
        done.insert((i, j));
        let (li, lj) = (&g[i][0].0, &g[j][0].0);
        if coprime(li, lj) {
            continue;
        }
        let l = lcm_mono(li, lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..g.len()).any(|k| {
            k != i && k != j && divides(&g[k][0].0, &l) && done.contains(&key(i, k)) && done.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let r = reduce(s_poly(&g[i], &g[j]), &g);
        if r.is_empty() {
            continue;
        }
        if is_unit(&r) {
            return vec![one()];
        }
        add(&mut g, &mut pairs, r);
    }
    interreduce(g)
}

fn interreduce(g: Vec<Lex>) -> Vec<Lex> {
    let mut minimal: Vec<Lex> = Vec::new();
    let mut sorted = g;
    sorted.sort_by(|a, b| a[0].0.cmp(&b[0].0));
    for p in sorted {
        if !minimal.iter().any(|q| divides(&q[0].0, &p[0].0)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Lex> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let mut r = reduce_tail(minimal[i].clone(), &others);
        normalize(&mut r);
        out.push(r);
    }
    out.sort_by(|a, b| a[0].0.cmp(&b[0].0));
    out
}

/// Reduces all terms except the leading one.
fn reduce_tail(mut whole: Lex, basis: &[Lex]) -> Lex {
    let mut idx = 1;
    while idx < whole.len() {
        let hit = basis.iter().find(|g| divides(&g[0].0, &whole[idx].0));
        match hit {
            Some(g) => {
                let (t, c) = whole[idx].clone();
                let lc = &g[0].1;
                let h = c.gcd(lc);
                let m = quotient(&t, &g[0].0);
                whole = combine(&(lc / &h), &whole, &(&c / &h), &m, g);
                normalize(&mut whole);
            }
            None => idx += 1,
        }
    }
    whole
}

/// True when every S-polynomial of `basis` reduces to zero modulo it.
pub fn is_groebner(basis: &[Polynomial], order: &VarOrder) -> Result<bool, PolyError> {
    let g: Vec<Lex> = basis
        .iter()
        .map(|p| p.reorder(order).map(|q| to_lex(&q)))
        .collect::<Result<_, _>>()?;
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if !reduce(s_poly(&g[i], &g[j]), &g).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Leading monomial under the lex order of `order`, as exponents over it.
pub fn lex_leading(p: &Polynomial, order: &VarOrder) -> Result<Vec<u32>, PolyError> {
    Ok(to_lex(&p.reorder(order)?).first().map(|t| t.0.clone()).unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(o: &VarOrder) -> Vec<Polynomial> {
        ["y^2 + z^2 + x + z - 1", "-x^2 + y^2 + z^2 - 1", "x^2 + y + z"]
            .iter()
            .map(|s| Polynomial::parse(s, o).unwrap())
            .collect()
    }

    fn texts(b: &[Polynomial]) -> Vec<String> {
        b.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn trivial_and_unit() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let b = groebner_lex(&[Polynomial::parse("x", &o).unwrap()], &o).unwrap();
        assert_eq!(texts(&b), ["x"]);
        let b = groebner_lex(
            &[Polynomial::parse("y", &o).unwrap(), Polynomial::parse("y + 1", &o).unwrap()],
            &o,
        )
        .unwrap();
        assert_eq!(texts(&b), ["1"]);
    }

    #[test]
    fn linear_system() {
        let o = VarOrder::new(["y", "z", "x"]).unwrap();
        let ps: Vec<Polynomial> = ["y", "z", "x - y - z"].iter().map(|s| Polynomial::parse(s, &o).unwrap()).collect();
        let b = groebner_lex(&ps, &o).unwrap();
        assert_eq!(texts(&b), ["x", "z", "y"]);
        assert!(is_groebner(&b, &o).unwrap());
    }

    #[test]
    fn reduced_and_closed() {
        let o = VarOrder::new(["x", "y", "z"]).unwrap();
        let ps: Vec<Polynomial> = ["x^2*y - z", "x*y^2 + x - 1", "y*z - x"]
            .iter()
            .map(|s| Polynomial::parse(s, &o).unwrap())
            .collect();
        let b = groebner_lex(&ps, &o).unwrap();
        assert!(is_groebner(&b, &o).unwrap());
        for (i, p) in b.iter().enumerate() {
            let lm = lex_leading(p, &o).unwrap();
            for (j, q) in b.iter().enumerate() {
                if i != j {
                    for (e, _) in q.terms() {
                        assert!(!divides(&lm, e));
                    }
                }
            }
        }
    }

    #[test]
    fn worked_system_both_orders() {
        let o = VarOrder::new(["z", "y", "x"]).unwrap();
        let b = groebner_lex(&sys(&o), &o).unwrap();
        assert_eq!(texts(&b), ["x^4 + 2*x^3 + x^2 - 1", "y - x", "x^2 + z + x"]);
        let o2 = VarOrder::new(["x", "y", "z"]).unwrap();
        let b = groebner_lex(&sys(&o), &o2).unwrap();
        assert_eq!(texts(&b), ["z^2 - 1", "y^2 + y + z", "x - y"]);
    }
}
