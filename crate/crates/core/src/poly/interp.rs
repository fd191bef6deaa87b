//! Dense multivariate Newton interpolation at integer nodes.
//!
//! A black box returns the value of an unknown integer polynomial at an
//! integer point, or `None` when the point is unlucky (for example a
//! vanishing denominator). Divided differences of an integer polynomial at
//! integer nodes are integers, so every step is exact.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::dense::crt_combine;
use super::modp::{self, Fp};
use super::{Exponents, Polynomial, VarOrder};

/// Node sequence 0, 1, -1, 2, -2, ...
pub fn node(i: usize) -> BigInt {
    let k = i.div_ceil(2) as i64;
    if i % 2 == 1 {
        BigInt::from(k)
    } else {
        BigInt::from(-k)
    }
}

/// Extra unlucky nodes tolerated per variable before giving up on a slice.
const MAX_SKIPS: usize = 64;

/// Interpolates the polynomial in `vars` (indices into `order`) with degree
/// at most `bounds[i]` in `vars[i]`. `eval` receives values in the order of
/// `vars`. Returns `None` if too many nodes were unlucky.
pub fn interpolate<F>(order: &VarOrder, vars: &[usize], bounds: &[u32], eval: &F) -> Option<Polynomial>
where
    F: Fn(&[BigInt]) -> Option<BigInt> + Sync,
{
    assert_eq!(vars.len(), bounds.len());
    let mut prefix = Vec::with_capacity(vars.len());
    rec(order, vars, bounds, eval, &mut prefix)
}

fn rec<F>(
    order: &VarOrder,
    vars: &[usize],
    bounds: &[u32],
    eval: &F,
    prefix: &mut Vec<BigInt>,
) -> Option<Polynomial>
where
    F: Fn(&[BigInt]) -> Option<BigInt> + Sync,
{
    let depth = prefix.len();
    if depth == vars.len() {
        return eval(prefix).map(|c| Polynomial::constant(order, c));
    }
    let need = bounds[depth] as usize + 1;
    let mut nodes: Vec<BigInt> = Vec::with_capacity(need);
    let mut values: Vec<Polynomial> = Vec::with_capacity(need);
    let mut next = 0usize;
    let mut skipped = 0usize;
    while nodes.len() < need {
        let batch: Vec<BigInt> = (next..next + (need - nodes.len())).map(node).collect();
        next += batch.len();
        let results: Vec<Option<Polynomial>> = if depth + 1 == vars.len() {
            batch
                .par_iter()
                .map(|a| {
                    let mut pt = prefix.clone();
                    pt.push(a.clone());
                    eval(&pt).map(|c| Polynomial::constant(order, c))
                })
                .collect()
        } else {
            batch
                .par_iter()
                .map(|a| {
                    let mut pt = prefix.clone();
                    pt.push(a.clone());
                    rec(order, vars, bounds, eval, &mut pt)
                })
                .collect()
        };
        for (a, r) in batch.into_iter().zip(results) {
            match r {
                Some(v) => {
                    nodes.push(a);
                    values.push(v);
                }
                None => {
                    skipped += 1;
                    if skipped > MAX_SKIPS {
                        return None;
                    }
                }
            }
        }
    }
    Some(newton(order, vars[depth], &nodes, values))
}

/// Newton form through `(nodes[i], values[i])` in variable `var`.
pub fn newton(order: &VarOrder, var: usize, nodes: &[BigInt], mut values: Vec<Polynomial>) -> Polynomial {
    let n = nodes.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let diff = &values[i] - &values[i - 1];
            let den = &nodes[i] - &nodes[i - j];
            values[i] = diff.div_int_exact(&den).expect("divided differences are integral");
        }
    }
    let x = Polynomial::var_idx(order, var, 1);
    let mut acc = Polynomial::zero(order);
    for i in (0..n).rev() {
        let shift = &x - &Polynomial::constant(order, nodes[i].clone());
        acc = &(&acc * &shift) + &values[i];
    }
    acc
}

/// Univariate integer Newton interpolation returning coefficients, lowest
/// power first.
pub fn newton_dense(nodes: &[BigInt], values: &[BigInt]) -> Vec<BigInt> {
    let n = nodes.len();
    let mut c = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let diff = &c[i] - &c[i - 1];
            let den = &nodes[i] - &nodes[i - j];
            c[i] = diff / den;
        }
    }
    let mut acc: Vec<BigInt> = Vec::new();
    for i in (0..n).rev() {
        // acc = acc * (x - nodes[i]) + c[i]
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (k, a) in acc.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * &nodes[i];
        }
        next[0] += &c[i];
        acc = next;
    }
    super::dense::trim(&mut acc);
    acc
}

/// Consecutive failed primes tolerated by [`interpolate_modular`].
const MAX_BAD_PRIMES: usize = 8;

/// Multi-modular counterpart of [`interpolate`]: `eval` returns the value
/// modulo the given prime. Images are combined until the symmetric lift of
/// every coefficient survives two further primes unchanged.
pub fn interpolate_modular<F>(order: &VarOrder, vars: &[usize], bounds: &[u32], eval: &F) -> Option<Polynomial>
where
    F: Fn(&Fp, &[u64]) -> Option<u64> + Sync,
{
    assert_eq!(vars.len(), bounds.len());
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::from(1);
    let mut last: Option<Vec<BigInt>> = None;
    let mut stable = 0;
    let mut bad = 0;
    for p in modp::large_primes() {
        let f = Fp::new(p);
        let Some(img) = rec_mod(&f, bounds, eval, &mut Vec::new()) else {
            bad += 1;
            if bad > MAX_BAD_PRIMES {
                return None;
            }
            continue;
        };
        bad = 0;
        acc = crt_combine(&acc, &modulus, &img, p);
        modulus *= p;
        let lift: Vec<BigInt> = acc.iter().map(|c| modp::symmetric(c, &modulus)).collect();
        if last.as_ref() == Some(&lift) {
            stable += 1;
            if stable == 2 {
                return Some(from_dense(order, vars, bounds, &lift));
            }
        } else {
            stable = 0;
        }
        last = Some(lift);
    }
    None
}

/// Dense coefficients mod `p`, the first variable outermost.
fn rec_mod<F>(f: &Fp, bounds: &[u32], eval: &F, prefix: &mut Vec<u64>) -> Option<Vec<u64>>
where
    F: Fn(&Fp, &[u64]) -> Option<u64> + Sync,
{
    let depth = prefix.len();
    if depth == bounds.len() {
        return eval(f, prefix).map(|c| vec![c]);
    }
    let need = bounds[depth] as usize + 1;
    let mut nodes = Vec::with_capacity(need);
    let mut values: Vec<Vec<u64>> = Vec::with_capacity(need);
    let mut next = 0u64;
    let mut skipped = 0;
    while nodes.len() < need {
        let batch: Vec<u64> = (next..next + (need - nodes.len()) as u64).collect();
        next += batch.len() as u64;
        let results: Vec<Option<Vec<u64>>> = batch
            .par_iter()
            .map(|&a| {
                let mut pt = prefix.clone();
                pt.push(a);
                rec_mod(f, bounds, eval, &mut pt)
            })
            .collect();
        for (a, r) in batch.into_iter().zip(results) {
            match r {
                Some(v) => {
                    nodes.push(a);
                    values.push(v);
                }
                None => {
                    skipped += 1;
                    if skipped > MAX_SKIPS {
                        return None;
                    }
                }
            }
        }
    }
    let slots = values[0].len();
    let mut out = vec![0u64; need * slots];
    let mut column = vec![0u64; need];
    for s in 0..slots {
        for (k, v) in values.iter().enumerate() {
            column[k] = v[s];
        }
        for (e, c) in newton_mod(f, &nodes, &column).into_iter().enumerate() {
            out[e * slots + s] = c;
        }
    }
    Some(out)
}

/// Coefficients, lowest first, of the interpolant through the given points.
fn newton_mod(f: &Fp, nodes: &[u64], values: &[u64]) -> Vec<u64> {
    let n = nodes.len();
    let mut c = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = f.sub(nodes[i], nodes[i - j]);
            c[i] = f.mul(f.sub(c[i], c[i - 1]), f.inv(den));
        }
    }
    let mut acc = vec![0u64; n];
    for i in (0..n).rev() {
        for k in (1..n).rev() {
            acc[k] = f.sub(acc[k - 1], f.mul(acc[k], nodes[i]));
        }
        acc[0] = f.sub(c[i], f.mul(acc[0], nodes[i]));
    }
    acc
}

fn from_dense(order: &VarOrder, vars: &[usize], bounds: &[u32], coeffs: &[BigInt]) -> Polynomial {
    let mut terms = Vec::new();
    for (idx, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e: Exponents = vec![0; order.len()];
        let mut rest = idx;
        for (&v, &b) in vars.iter().zip(bounds).rev() {
            let m = b as usize + 1;
            e[v] = (rest % m) as u32;
            rest /= m;
        }
        terms.push((e, c.clone()));
    }
    Polynomial::from_terms(order, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_bivariate_polynomial() {
        let o = VarOrder::new(["y", "x"]).unwrap();
        let target = Polynomial::parse("3*x^3*y - 7*x*y^2 + y^2 - 11", &o).unwrap();
        let got = interpolate(&o, &[0, 1], &[2, 3], &|pt: &[BigInt]| {
            Some(target.eval_int(&[pt[0].clone(), pt[1].clone()]))
        })
        .unwrap();
        assert_eq!(got, target);
    }

    #[test]
    fn skips_unlucky_nodes() {
        let o = VarOrder::new(["x"]).unwrap();
        let target = Polynomial::parse("x^4 - 2*x + 5", &o).unwrap();
        let got = interpolate(&o, &[0], &[4], &|pt: &[BigInt]| {
            if pt[0] == BigInt::from(1) || pt[0] == BigInt::from(-2) {
                None
            } else {
                Some(target.eval_int(pt))
            }
        })
        .unwrap();
        assert_eq!(got, target);
    }

    #[test]
    fn modular_recovers_large_coefficients() {
        let o = VarOrder::new(["y", "x"]).unwrap();
        let target = Polynomial::parse("123456789123456789123456789*x^3*y - 7*x*y^2 + y^2 - 11", &o).unwrap();
        let got = interpolate_modular(&o, &[0, 1], &[2, 3], &|f: &Fp, pt: &[u64]| {
            if pt[1] == 2 {
                return None;
            }
            let pt: Vec<BigInt> = pt.iter().map(|&a| BigInt::from(a)).collect();
            Some(f.reduce(&target.eval_int(&pt)))
        })
        .unwrap();
        assert_eq!(got, target);
    }

    #[test]
    fn dense_newton() {
        let nodes: Vec<BigInt> = (0..4).map(node).collect();
        let vals: Vec<BigInt> = nodes.iter().map(|x| x * x * x - x + 2).collect();
        let c = newton_dense(&nodes, &vals);
        assert_eq!(c, vec![2.into(), (-1).into(), 0.into(), 1.into()]);
    }
}
