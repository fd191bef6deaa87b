//! Macaulay resultant of `n` polynomials in `n - 1` eliminated variables.
//!
//! Inputs are homogenized with a fresh variable `t`. With `X = (x_1, ...,
//! x_{n-1}, t)` and `D = Σ d_i - n + 1`, the rows of the numerator matrix are
//! `(m / X_i^{d_i}) F_i` for the monomials `m` of degree `D` whose first
//! variable with `X_i^{d_i} | m` is `X_i`. The denominator is the minor on
//! the monomials divisible by more than one `X_i^{d_i}`.
//!
//! Values are computed at integer points of the remaining variables and
//! interpolated. When the minor vanishes identically, or the quotient does,
//! the generalized characteristic polynomial is used instead: `X_i^{d_i}` gets
//! a coefficient shifted by a fresh `u`, and the lowest nonzero coefficient in
//! `u` is returned.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{canonical, ElimError};
use crate::poly::modp::{Fp, XorShift};
use crate::poly::ring;
use crate::poly::{interp, Exponents, Polynomial, VarOrder};

/// Homogenized input: exponent over `X` mapped to a coefficient polynomial
/// in the remaining variables.
type Form = Vec<(Vec<u32>, Polynomial)>;

#[derive(Clone, Debug)]
pub struct MacaulaySystem {
    pub order: VarOrder,
    pub elim: Vec<usize>,
    pub degrees: Vec<u32>,
    pub critical_degree: u32,
    pub forms: Vec<Form>,
    /// Monomials of degree `D` over `X`; index = row = column.
    pub monomials: Vec<Vec<u32>>,
    /// For each row: which form, and its sparse entries `(column, term index)`.
    rows: Vec<(usize, Vec<(usize, usize)>)>,
    /// Rows and columns of the denominator minor.
    pub minor: Vec<usize>,
}

fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    go(0, deg, &mut cur, &mut out);
    out
}

impl MacaulaySystem {
    pub fn new(polys: &[Polynomial], elim: &[usize]) -> Result<Self, ElimError> {
        let n = polys.len();
        if n < 2 || elim.len() + 1 != n {
            return Err(ElimError::Arity {
                expected: elim.len() + 1,
                got: n,
            });
        }
        let order = polys[0].order().clone();
        for p in polys {
            p.check_order(&polys[0])?;
        }
        let mut degrees = Vec::with_capacity(n);
        let mut forms = Vec::with_capacity(n);
        for (i, p) in polys.iter().enumerate() {
            let d = p
                .terms()
                .iter()
                .map(|(e, _)| elim.iter().map(|&v| e[v]).sum::<u32>())
                .max()
                .unwrap_or(0);
            if d == 0 {
                return Err(ElimError::ZeroDegree {
                    var: elim.iter().map(|&v| order.name(v)).collect::<Vec<_>>().join(","),
                    which: format!("polynomial {}", i + 1),
                });
            }
            let mut buckets: BTreeMap<Vec<u32>, Vec<(Exponents, BigInt)>> = BTreeMap::new();
            for (e, c) in p.terms() {
                let mut x: Vec<u32> = elim.iter().map(|&v| e[v]).collect();
                let s: u32 = x.iter().sum();
                x.push(d - s);
                let mut rest = e.clone();
                for &v in elim {
                    rest[v] = 0;
                }
                buckets.entry(x).or_default().push((rest, c.clone()));
            }
            let form: Form = buckets
                .into_iter()
                .map(|(x, t)| (x, Polynomial::from_terms(&order, t)))
                .collect();
            degrees.push(d);
            forms.push(form);
        }
        let critical: u32 = degrees.iter().sum::<u32>() + 1 - n as u32;
        let monomials = monomials_of_degree(n, critical);
        let index: HashMap<&Vec<u32>, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::with_capacity(monomials.len());
        let mut minor = Vec::new();
        for (r, m) in monomials.iter().enumerate() {
            let divisible: Vec<usize> = (0..n).filter(|&i| m[i] >= degrees[i]).collect();
            let i = divisible[0];
            if divisible.len() > 1 {
                minor.push(r);
            }
            let mut base = m.clone();
            base[i] -= degrees[i];
            let entries = forms[i]
                .iter()
                .enumerate()
                .map(|(k, (x, _))| {
                    let mono: Vec<u32> = base.iter().zip(x).map(|(a, b)| a + b).collect();
                    (index[&mono], k)
                })
                .collect();
            rows.push((i, entries));
        }
        Ok(MacaulaySystem {
            order,
            elim: elim.to_vec(),
            degrees,
            critical_degree: critical,
            forms,
            monomials,
            rows,
            minor,
        })
    }

    pub fn size(&self) -> usize {
        self.monomials.len()
    }

    /// Numerator matrix with polynomial entries.
    pub fn numerator(&self) -> Vec<Vec<Polynomial>> {
        let zero = Polynomial::zero(&self.order);
        let mut m = vec![vec![zero; self.size()]; self.size()];
        for (r, (i, entries)) in self.rows.iter().enumerate() {
            for &(c, k) in entries {
                m[r][c] = self.forms[*i][k].1.clone();
            }
        }
        m
    }

    /// Integer matrices (numerator, minor) with the remaining variables set
    /// from `pt` (indexed by variable) and `X_i^{d_i}` shifted by `u`.
    fn int_matrices(&self, pt: &[BigInt], u: Option<&BigInt>) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
        let vals: Vec<Vec<BigInt>> = self
            .forms
            .iter()
            .map(|form| form.iter().map(|(_, c)| c.eval_int(pt)).collect())
            .collect();
        let n = self.size();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (r, (i, entries)) in self.rows.iter().enumerate() {
            for &(c, k) in entries {
                m[r][c] = vals[*i][k].clone();
            }
        }
        // Row r carries X_i^{d_i} at column r itself.
        if let Some(u) = u {
            for (r, row) in m.iter_mut().enumerate() {
                row[r] += u;
            }
        }
        let minor: Vec<Vec<BigInt>> = self
            .minor
            .iter()
            .map(|&r| self.minor.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        (m, minor)
    }

    /// `det(numerator) / det(minor)` at an integer point, `None` when the
    /// minor vanishes there.
    pub fn value_at(&self, pt: &[BigInt], u: Option<&BigInt>) -> Option<BigInt> {
        let one = BigInt::one();
        let (m, minor) = self.int_matrices(pt, u);
        let dm = ring::bareiss_det(minor, &one);
        if dm.is_zero() {
            return None;
        }
        let num = ring::bareiss_det(m, &one);
        let (q, r) = num_integer::Integer::div_rem(&num, &dm);
        assert!(r.is_zero(), "minor divides the numerator determinant");
        Some(q)
    }

    /// As [`Self::value_at`], modulo a prime.
    pub fn value_mod(&self, f: &Fp, pt: &[u64], u: Option<u64>) -> Option<u64> {
        let vals: Vec<Vec<u64>> = self
            .forms
            .iter()
            .map(|form| form.iter().map(|(_, c)| eval_mod(c, pt, f)).collect())
            .collect();
        let n = self.size();
        let mut m = vec![vec![0u64; n]; n];
        for (r, (i, entries)) in self.rows.iter().enumerate() {
            for &(c, k) in entries {
                m[r][c] = vals[*i][k];
            }
        }
        if let Some(u) = u {
            for (r, row) in m.iter_mut().enumerate() {
                row[r] = f.add(row[r], u);
            }
        }
        let minor: Vec<Vec<u64>> = self
            .minor
            .iter()
            .map(|&r| self.minor.iter().map(|&c| m[r][c]).collect())
            .collect();
        let dm = det_mod(minor, f);
        if dm == 0 {
            return None;
        }
        Some(f.mul(det_mod(m, f), f.inv(dm)))
    }

    /// Probabilistic test that the minor is not identically zero.
    fn minor_nonzero(&self) -> bool {
        if self.minor.is_empty() {
            return true;
        }
        let f = Fp::new(2_147_483_587);
        let mut rng = XorShift::new(self.size() as u64);
        for _ in 0..4 {
            let pt: Vec<u64> = (0..self.order.len()).map(|_| rng.next_u64() % f.p).collect();
            let vals: Vec<Vec<u64>> = self
                .forms
                .iter()
                .map(|form| form.iter().map(|(_, c)| eval_mod(c, &pt, &f)).collect())
                .collect();
            let k = self.minor.len();
            let pos: HashMap<usize, usize> = self.minor.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            let mut m = vec![vec![0u64; k]; k];
            for (a, &r) in self.minor.iter().enumerate() {
                let (i, entries) = &self.rows[r];
                for &(c, t) in entries {
                    if let Some(&b) = pos.get(&c) {
                        m[a][b] = vals[*i][t];
                    }
                }
            }
            if det_mod(m, &f) != 0 {
                return true;
            }
        }
        false
    }

    /// Per-variable degree bound for the free variable `w` and the total
    /// degree bound, for the resultant (with or without `u`).
    fn degree_bounds(&self, polys: &[Polynomial], free: &[usize]) -> Vec<u32> {
        let n = self.degrees.len();
        let prod_except = |i: usize| -> u32 { (0..n).filter(|&j| j != i).map(|j| self.degrees[j]).product() };
        let prod: u32 = self.degrees.iter().product();
        let total: u32 = prod
            + (0..n)
                .map(|i| (polys[i].total_degree() - self.degrees[i]) * prod_except(i))
                .sum::<u32>();
        free.iter()
            .map(|&w| {
                let b: u32 = (0..n).map(|i| prod_except(i) * polys[i].degree_in(w)).sum();
                b.min(total)
            })
            .collect()
    }

    /// Degree bound in the perturbation parameter.
    fn u_bound(&self) -> u32 {
        let n = self.degrees.len();
        (0..n)
            .map(|i| (0..n).filter(|&j| j != i).map(|j| self.degrees[j]).product::<u32>())
            .sum()
    }
}

fn eval_mod(p: &Polynomial, pt: &[u64], f: &Fp) -> u64 {
    let mut acc = 0;
    for (e, c) in p.terms() {
        let mut k = f.reduce(c);
        for (v, &x) in e.iter().enumerate() {
            if x > 0 {
                k = f.mul(k, f.pow(pt[v], x as u64));
            }
        }
        acc = f.add(acc, k);
    }
    acc
}

fn det_mod(mut m: Vec<Vec<u64>>, f: &Fp) -> u64 {
    let n = m.len();
    let mut det = 1;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            m.swap(piv, k);
            det = f.sub(0, det);
        }
        det = f.mul(det, m[k][k]);
        let inv = f.inv(m[k][k]);
        for i in k + 1..n {
            let c = f.mul(m[i][k], inv);
            if c == 0 {
                continue;
            }
            for j in k..n {
                let t = f.mul(c, m[k][j]);
                m[i][j] = f.sub(m[i][j], t);
            }
        }
    }
    det
}

/// Multivariate resultant of `polys` eliminating `elim_vars`, canonical.
pub fn macaulay_resultant(polys: &[Polynomial], elim_vars: &[&str]) -> Result<Polynomial, ElimError> {
    if polys.is_empty() {
        return Err(ElimError::Arity {
            expected: elim_vars.len() + 1,
            got: 0,
        });
    }
    let order = polys[0].order().clone();
    let mut elim = Vec::with_capacity(elim_vars.len());
    for v in elim_vars {
        let idx = order.require(v)?;
        if elim.contains(&idx) {
            return Err(ElimError::Invalid(format!("variable `{v}` listed twice")));
        }
        elim.push(idx);
    }
    Ok(canonical(&macaulay_raw(polys, &elim)?))
}

/// Resultant up to sign and content, before normalization.
pub fn macaulay_raw(polys: &[Polynomial], elim: &[usize]) -> Result<Polynomial, ElimError> {
    macaulay_raw_with(polys, elim, false)
}

/// As [`macaulay_raw`]; `perturbed` forces the generalized characteristic
/// polynomial route.
pub fn macaulay_raw_with(polys: &[Polynomial], elim: &[usize], perturbed: bool) -> Result<Polynomial, ElimError> {
    let sys = MacaulaySystem::new(polys, elim)?;
    let order = sys.order.clone();
    let mut free: Vec<usize> = polys.iter().flat_map(|p| p.vars_present()).collect();
    free.sort_unstable();
    free.dedup();
    free.retain(|v| !elim.contains(v));
    let bounds = sys.degree_bounds(polys, &free);
    let nv = order.len();
    let point = |f: &Fp, vals: &[u64]| {
        let mut pt = vec![0u64; nv];
        for (&w, &x) in free.iter().zip(vals) {
            pt[w] = x % f.p;
        }
        pt
    };
    if !perturbed && sys.minor_nonzero() {
        let eval = |f: &Fp, vals: &[u64]| sys.value_mod(f, &point(f, vals), None);
        if let Some(r) = interp::interpolate_modular(&order, &free, &bounds, &eval) {
            if !r.is_zero() {
                return Ok(r);
            }
        }
    }
    generalized_characteristic(&sys, &free, &bounds)
}

fn generalized_characteristic(sys: &MacaulaySystem, free: &[usize], bounds: &[u32]) -> Result<Polynomial, ElimError> {
    let (ext, u) = sys.order.with_fresh("u");
    let nv = sys.order.len();
    let mut vars = free.to_vec();
    vars.push(u);
    let mut b = bounds.to_vec();
    b.push(sys.u_bound());
    let eval = |f: &Fp, vals: &[u64]| {
        let mut pt = vec![0u64; nv];
        for (&w, &x) in free.iter().zip(vals) {
            pt[w] = x % f.p;
        }
        sys.value_mod(f, &pt, Some(vals[vals.len() - 1] % f.p))
    };
    let r = interp::interpolate_modular(&ext, &vars, &b, &eval)
        .ok_or_else(|| ElimError::Invalid("perturbed system has a vanishing minor".into()))?;
    let trailing = r
        .coefficients_in(u)
        .into_iter()
        .find(|c| !c.is_zero())
        .unwrap_or_else(|| Polynomial::zero(&ext));
    Ok(trailing.reorder(&sys.order)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, o: &VarOrder) -> Polynomial {
        Polynomial::parse(s, o).unwrap()
    }

    #[test]
    fn linear_forms_give_coefficient_determinant() {
        let o = VarOrder::new(["y", "z", "a"]).unwrap();
        let polys = [p("2*y + 3*z + a", &o), p("y - z + 4", &o), p("5*y + z - 2*a", &o)];
        let r = macaulay_raw(&polys, &[0, 1]).unwrap();
        // det [[2,3,a],[1,-1,4],[5,1,-2a]]
        let det = p("2*(2*a - 4) - 3*(-2*a - 20) + a*(1 + 5)", &o);
        assert!(r == det || r == -det.clone(), "{r} vs {det}");
    }

    #[test]
    fn two_univariate_polynomials_match_sylvester() {
        let o = VarOrder::new(["x", "a"]).unwrap();
        let f = p("x^2 + a*x + 1", &o);
        let g = p("x^3 - a", &o);
        let r = macaulay_resultant(&[f.clone(), g.clone()], &["x"]).unwrap();
        let s = super::super::resultant::sylvester_resultant(&f, &g, "x").unwrap();
        assert_eq!(r, canonical(&s));
    }

    #[test]
    fn perturbed_route_agrees_when_nondegenerate() {
        let o = VarOrder::new(["z", "y", "x"]).unwrap();
        let polys = [
            p("y^2 + z^2 + x + z - 1", &o),
            p("z*y + x^2 - 2", &o),
            p("z + y - x", &o),
        ];
        let plain = macaulay_raw_with(&polys, &[0, 1], false).unwrap();
        let gcp = macaulay_raw_with(&polys, &[0, 1], true).unwrap();
        assert_eq!(canonical(&plain), canonical(&gcp));
    }

    #[test]
    fn common_zero_at_infinity_uses_perturbation() {
        // y = z = 0 is a common projective zero for every x.
        let o = VarOrder::new(["y", "z", "x"]).unwrap();
        let polys = [p("y", &o), p("z", &o), p("x*y + x*z", &o)];
        let sys = MacaulaySystem::new(&polys, &[0, 1]).unwrap();
        assert_eq!(sys.value_at(&[0.into(), 0.into(), 3.into()], None), Some(BigInt::zero()));
        let r = macaulay_resultant(&polys, &["y", "z"]).unwrap();
        assert!(!r.is_zero());
    }
}
