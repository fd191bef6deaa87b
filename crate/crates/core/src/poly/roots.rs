//! Real root isolation by Descartes' rule of signs and bisection
//! (Vincent–Collins–Akritas) over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense::{self, ZPoly};
use super::{PolyError, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    /// `lo == hi` is the root itself; otherwise the root lies strictly
    /// inside `(lo, hi)`.
    pub exact: bool,
}

impl IsolatingInterval {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Isolates the distinct real roots of a univariate polynomial. Repeated
/// factors are removed first, so each root is reported once.
pub fn isolate_real_roots(a: &Polynomial) -> Result<Vec<IsolatingInterval>, PolyError> {
    if a.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let vars = a.vars_present();
    if vars.len() > 1 {
        return Err(PolyError::NotUnivariate);
    }
    let Some(&v) = vars.first() else {
        return Ok(Vec::new());
    };
    let f = dense::from_poly(a, v);
    let g = dense::gcd(&f, &dense::derivative(&f));
    let sq = dense::div_exact(&dense::primitive(&f), &g).expect("gcd divides");
    Ok(isolate_dense(&sq))
}

/// Root bound `1 + max|a_i| / |a_n|`, rounded up.
pub fn cauchy_bound(f: &[BigInt]) -> BigInt {
    let lc = f.last().unwrap().abs();
    let m = f[..f.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    let (q, r) = num_integer::Integer::div_rem(&m, &lc);
    q + if r.is_zero() { 1 } else { 2 }
}

pub fn isolate_dense(f: &[BigInt]) -> Vec<IsolatingInterval> {
    let mut f: ZPoly = f.to_vec();
    dense::trim(&mut f);
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let mut b = BigInt::one();
    let cb = cauchy_bound(&f);
    while b < cb {
        b <<= 1;
    }
    // q(x) = f(2b x - b) has the roots of f in (-b, b) inside (0, 1).
    let shifted = taylor_shift(&f, &-&b);
    let two_b = &b * 2;
    let mut scale = BigInt::one();
    let q: ZPoly = shifted
        .iter()
        .map(|c| {
            let v = c * &scale;
            scale *= &two_b;
            v
        })
        .collect();
    let mut stack = vec![(BigInt::zero(), 0u32, q)];
    let to_real = |c: &BigInt, k: u32, x: BigRational| -> BigRational {
        let num = BigRational::from_integer(c.clone()) + x;
        let den = BigRational::from_integer(BigInt::one() << k);
        BigRational::from_integer(-b.clone()) + BigRational::from_integer(two_b.clone()) * num / den
    };
    while let Some((c, k, mut q)) = stack.pop() {
        if q[0].is_zero() {
            let r = to_real(&c, k, BigRational::zero());
            out.push(IsolatingInterval {
                lo: r.clone(),
                hi: r,
                exact: true,
            });
            q.remove(0);
        }
        match descartes_bound(&q) {
            0 => {}
            1 => out.push(IsolatingInterval {
                lo: to_real(&c, k, BigRational::zero()),
                hi: to_real(&c, k, BigRational::one()),
                exact: false,
            }),
            _ => {
                let n = q.len() - 1;
                // left(x) = 2^n q(x/2), right(x) = left(x + 1)
                let left: ZPoly = q
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a << (n - i))
                    .collect();
                let right = taylor_shift(&left, &BigInt::one());
                stack.push((&c * 2 + 1, k + 1, right));
                stack.push((&c * 2, k + 1, left));
            }
        }
    }
    let df = dense::derivative(&f);
    for iv in out.iter_mut().filter(|iv| !iv.exact) {
        *iv = detach_endpoints(&f, &df, iv);
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo).then(x.hi.cmp(&y.hi)));
    out
}

/// Shrinks an open interval until neither endpoint is a root of `f`.
fn detach_endpoints(f: &[BigInt], df: &[BigInt], iv: &IsolatingInterval) -> IsolatingInterval {
    let mut iv = iv.clone();
    // Signs just inside the endpoints; roots of the square-free `f` are simple.
    let inside = |x: &BigRational, dir: i32| {
        let v = eval_rational(f, x);
        if v.is_zero() {
            eval_rational(df, x).signum() * BigRational::from_integer(dir.into())
        } else {
            v.signum()
        }
    };
    loop {
        let mid = iv.midpoint();
        let sm = eval_rational(f, &mid).signum();
        if sm.is_zero() {
            return IsolatingInterval {
                lo: mid.clone(),
                hi: mid,
                exact: true,
            };
        }
        let lo_root = eval_rational(f, &iv.lo).is_zero();
        let hi_root = eval_rational(f, &iv.hi).is_zero();
        if !lo_root && !hi_root {
            return iv;
        }
        if inside(&iv.lo, 1) == sm {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
}

/// Sign variations of `(x + 1)^n q(1 / (x + 1))`: an upper bound on the
/// number of roots of `q` in `(0, 1)`, exact when it is 0 or 1.
fn descartes_bound(q: &[BigInt]) -> usize {
    let rev: ZPoly = q.iter().rev().cloned().collect();
    sign_variations(&taylor_shift(&rev, &BigInt::one()))
}

pub fn sign_variations(a: &[BigInt]) -> usize {
    let mut last = 0;
    let mut count = 0;
    for c in a {
        let s = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Coefficients of `f(x + a)`.
pub fn taylor_shift(f: &[BigInt], a: &BigInt) -> ZPoly {
    let mut c = f.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * a;
            c[j] += t;
        }
    }
    c
}

pub fn eval_rational(f: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in f.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

/// Bisects a non-exact isolating interval of the square-free `f` until its
/// width is at most `eps`.
pub fn refine(f: &[BigInt], iv: &IsolatingInterval, eps: &BigRational) -> IsolatingInterval {
    let mut iv = iv.clone();
    if iv.exact {
        return iv;
    }
    let mut slo = eval_rational(f, &iv.lo).signum();
    while &iv.width() > eps {
        let mid = iv.midpoint();
        let sm = eval_rational(f, &mid).signum();
        if sm.is_zero() {
            return IsolatingInterval {
                lo: mid.clone(),
                hi: mid,
                exact: true,
            };
        }
        if slo.is_zero() || sm == slo {
            iv.lo = mid;
            slo = sm;
        } else {
            iv.hi = mid;
        }
    }
    iv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarOrder;

    fn roots(s: &str) -> Vec<IsolatingInterval> {
        let o = VarOrder::new(["x"]).unwrap();
        isolate_real_roots(&Polynomial::parse(s, &o).unwrap()).unwrap()
    }

    #[test]
    fn golden_quadratic() {
        let r = roots("x^2 + x - 1");
        assert_eq!(r.len(), 2);
        assert!(r[0].hi <= r[1].lo);
        let f: ZPoly = vec![(-1).into(), 1.into(), 1.into()];
        for iv in &r {
            let a = eval_rational(&f, &iv.lo);
            let b = eval_rational(&f, &iv.hi);
            assert!((a * b).is_negative());
        }
    }

    #[test]
    fn no_real_roots_and_exact_zero() {
        assert!(roots("x^2 + x + 1").is_empty());
        let r = roots("x");
        assert_eq!(r.len(), 1);
        assert!(r[0].exact && r[0].lo.is_zero());
        let r = roots("(x - 1)*(2*x - 1)*x");
        assert_eq!(r.len(), 3);
        assert_eq!(r.iter().filter(|i| i.exact).count(), 3);
    }

    #[test]
    fn clustered_roots() {
        let r = roots("(100*x - 1)*(100*x - 2)*(x + 5)^2*(x^2 - 2)");
        assert_eq!(r.len(), 5);
    }
}
