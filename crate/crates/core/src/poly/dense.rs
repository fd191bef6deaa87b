//! Dense univariate integer polynomials (lowest power first) and the
//! multi-modular gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{self, Fp, FpPoly};
use super::{Polynomial, VarOrder};

pub type ZPoly = Vec<BigInt>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn from_poly(p: &Polynomial, var: usize) -> ZPoly {
    let mut out = vec![BigInt::zero(); p.degree_in(var) as usize + 1];
    for (e, c) in p.terms() {
        out[e[var] as usize] += c;
    }
    trim(&mut out);
    out
}

pub fn to_poly(c: &[BigInt], order: &VarOrder, var: usize) -> Polynomial {
    let n = order.len();
    Polynomial::from_terms(
        order,
        c.iter().enumerate().map(|(k, v)| {
            let mut e = vec![0; n];
            e[var] = k as u32;
            (e, v.clone())
        }),
    )
}

pub fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with positive leading coefficient.
pub fn primitive(p: &[BigInt]) -> ZPoly {
    let mut c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

pub fn derivative(a: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut out);
    out
}

pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Exact quotient `a / b` over the integers, `None` if it does not exist.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r: ZPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (qk, rem) = r[k + db].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if !qk.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[k + i] -= &qk * bc;
            }
        }
        q[k] = qk;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

/// Euclidean norm bound used as a coefficient bound.
pub fn norm2_ceil(a: &[BigInt]) -> BigInt {
    let s: BigInt = a.iter().map(|c| c * c).sum();
    s.sqrt() + 1
}

/// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return primitive(&b);
    }
    if b.is_empty() {
        return primitive(&a);
    }
    let a = primitive(&a);
    let b = primitive(&b);
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    if div_exact(&a, &b).is_some() {
        return b;
    }
    if div_exact(&b, &a).is_some() {
        return a;
    }
    let lc_gcd = a.last().unwrap().gcd(b.last().unwrap());
    let mut modulus = BigInt::one();
    let mut acc: ZPoly = Vec::new();
    let mut acc_deg = usize::MAX;
    let mut last_candidate: Option<ZPoly> = None;
    for p in modp::large_primes() {
        if modp::is_zero_mod(&lc_gcd, p) {
            continue;
        }
        let f = Fp::new(p);
        let ap = f.from_ints(&a);
        let bp = f.from_ints(&b);
        if ap.len() != a.len() || bp.len() != b.len() {
            continue;
        }
        let g = f.gcd(&ap, &bp);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > acc_deg {
            continue;
        }
        let scaled = f.scale_poly(&g, f.reduce(&lc_gcd));
        if d < acc_deg {
            acc_deg = d;
            modulus = BigInt::from(p);
            acc = scaled.iter().map(|&c| BigInt::from(c)).collect();
            last_candidate = None;
            continue;
        }
        acc = crt_combine(&acc, &modulus, &scaled, p);
        modulus *= p;
        let cand: ZPoly = acc.iter().map(|c| modp::symmetric(c, &modulus)).collect();
        let cand = primitive(&cand);
        if last_candidate.as_ref() == Some(&cand)
            && div_exact(&a, &cand).is_some()
            && div_exact(&b, &cand).is_some()
        {
            return cand;
        }
        last_candidate = Some(cand);
    }
    unreachable!("prime supply exhausted")
}

/// Chinese remaindering of coefficient vectors: `x ≡ acc (mod m)` and
/// `x ≡ img (mod p)`, result in `[0, m*p)`.
pub fn crt_combine(acc: &[BigInt], m: &BigInt, img: &FpPoly, p: u64) -> ZPoly {
    let f = Fp::new(p);
    let minv = f.inv(f.reduce(m));
    let n = acc.len().max(img.len());
    (0..n)
        .map(|i| {
            let a = acc.get(i).cloned().unwrap_or_default();
            let r = *img.get(i).unwrap_or(&0);
            let diff = f.sub(r, f.reduce(&a));
            let t = f.mul(diff, minv);
            a + m * BigInt::from(t)
        })
        .collect()
}

pub fn format(a: &[BigInt], var: &str) -> String {
    let o = VarOrder::new([var]).expect("valid variable");
    to_poly(a, &o, 0).to_string()
}
