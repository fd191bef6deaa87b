//! Contents, primitive parts and multivariate gcd.
//!
//! The gcd recurses on the highest-ranked variable: contents are split off
//! and the primitive parts go through a primitive PRS. A modular image at a
//! random point is tried first, which settles the common coprime case without
//! building any remainder sequence.

use num_bigint::BigInt;

use super::modp::{Fp, FpPoly, XorShift};
use super::{dense, ring, PolyError, Polynomial};

/// `(content, primitive)` with the sign of the leading coefficient carried
/// by the content.
pub fn content_primitive(a: &Polynomial) -> Result<(BigInt, Polynomial), PolyError> {
    if a.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let mut c = a.integer_content();
    if a.leading_sign() < 0 {
        c = -c;
    }
    let p = a.div_int_exact(&c)?;
    Ok((c, p))
}

/// Primitive part with positive leading coefficient (zero stays zero).
pub fn primitive(a: &Polynomial) -> Polynomial {
    match content_primitive(a) {
        Ok((_, p)) => p,
        Err(_) => a.clone(),
    }
}

pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    a.check_order(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    Ok(gcd(a, b))
}

/// Primitive gcd with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return primitive(b);
    }
    if b.is_zero() {
        return primitive(a);
    }
    let a = primitive(a);
    let b = primitive(b);
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.order());
    }
    if a == b {
        return a;
    }
    let va = a.vars_present();
    let vb = b.vars_present();
    if va.len() == 1 && va == vb {
        let v = va[0];
        let g = dense::gcd(&dense::from_poly(&a, v), &dense::from_poly(&b, v));
        return dense::to_poly(&g, a.order(), v);
    }
    let v = *va.first().unwrap().min(vb.first().unwrap());
    if a.degree_in(v) == 0 {
        return gcd(&a, &content_in(&b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&content_in(&a, v), &b);
    }
    let ca = content_in(&a, v);
    let cb = content_in(&b, v);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = gcd_primitive_in(&pa, &pb, v);
    primitive(&(&c * &g))
}

/// Gcd of the coefficients with respect to `v`, primitive and positive.
pub fn content_in(a: &Polynomial, v: usize) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = a
        .coefficients_in(v)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| (c.nterms(), c.total_degree()));
    let mut g = Polynomial::zero(a.order());
    for c in &coeffs {
        g = gcd(&g, c);
        if g.is_constant() {
            return Polynomial::one(a.order());
        }
    }
    g
}

/// Primitive part with respect to `v`, positive leading coefficient.
pub fn primitive_in(a: &Polynomial, v: usize) -> Polynomial {
    if a.is_zero() {
        return a.clone();
    }
    let c = content_in(a, v);
    primitive(&a.exact_div(&c).expect("content divides"))
}

fn gcd_primitive_in(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let one = Polynomial::one(a.order());
    match image_gcd_degree(a, b, v) {
        Some(0) => return one,
        Some(d) => {
            let (da, db) = (a.degree_in(v) as usize, b.degree_in(v) as usize);
            if d == db && a.divides_into(b).is_some() {
                return primitive(b);
            }
            if d == da && b.divides_into(a).is_some() {
                return primitive(a);
            }
        }
        None => {}
    }
    let (mut x, mut y) = if a.degree_in(v) >= b.degree_in(v) {
        (a.coefficients_in(v), b.coefficients_in(v))
    } else {
        (b.coefficients_in(v), a.coefficients_in(v))
    };
    let order = a.order().clone();
    loop {
        let r = ring::prem(&x, &y);
        if r.is_empty() {
            return primitive_in(&Polynomial::from_coefficients_in(&order, v, &y), v);
        }
        if r.len() == 1 {
            return one;
        }
        let rp = primitive_in(&Polynomial::from_coefficients_in(&order, v, &r), v);
        x = y;
        y = rp.coefficients_in(v);
    }
}

/// Degree in `v` of the gcd of images modulo a prime at a random point of
/// the other variables, preserving both leading degrees. An upper bound on
/// the degree of the true gcd of primitive inputs.
fn image_gcd_degree(a: &Polynomial, b: &Polynomial, v: usize) -> Option<usize> {
    let f = Fp::new(2_147_483_629);
    let mut rng = XorShift::new((a.nterms() as u64) << 20 ^ b.nterms() as u64);
    let n = a.order().len();
    for _ in 0..4 {
        let pt: Vec<u64> = (0..n).map(|_| rng.next_u64() % f.p).collect();
        let ia = image_mod(a, v, &pt, &f);
        let ib = image_mod(b, v, &pt, &f);
        if ia.len() != a.degree_in(v) as usize + 1 || ib.len() != b.degree_in(v) as usize + 1 {
            continue;
        }
        return Some(f.gcd(&ia, &ib).len() - 1);
    }
    None
}

/// Univariate image in `v` modulo `f.p`, other variables set from `pt`.
pub fn image_mod(a: &Polynomial, v: usize, pt: &[u64], f: &Fp) -> FpPoly {
    let mut out = vec![0u64; a.degree_in(v) as usize + 1];
    for (e, c) in a.terms() {
        let mut k = f.reduce(c);
        for (w, &ex) in e.iter().enumerate() {
            if w != v && ex > 0 {
                k = f.mul(k, f.pow(pt[w], ex as u64));
            }
        }
        let slot = &mut out[e[v] as usize];
        *slot = f.add(*slot, k);
    }
    super::modp::trim(&mut out);
    out
}

/// Least common multiple, primitive and positive.
pub fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero(a.order());
    }
    let g = gcd(a, b);
    primitive(&(&primitive(a).exact_div(&g).expect("gcd divides") * &primitive(b)))
}
