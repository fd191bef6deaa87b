//! Univariate factorization over the integers: square-free layer, modular
//! factorization, Hensel lifting and recombination (Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dense::{self, ZPoly};
use super::modp::{self, Fp, FpPoly};
use super::{squarefree_decompose, PolyError, Polynomial};

/// Environment variable overriding the recombination budget (subset tests).
pub const BUDGET_ENV: &str = "CADPROJ_FACTOR_BUDGET";

/// Number of good primes examined before choosing one to lift.
const PRIMES_TRIED: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    /// `(factor, multiplicity)`, sorted by degree, then text form.
    pub factors: Vec<(Polynomial, u32)>,
    /// False when recombination gave up; some listed factors may then be
    /// reducible.
    pub complete: bool,
}

impl Factorization {
    pub fn expand(&self, like: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::constant(like.order(), self.content.clone());
        for (p, m) in &self.factors {
            acc = &acc * &p.pow(*m);
        }
        acc
    }
}

/// Subset-test budget for a square-free part of degree `n`.
pub fn default_budget(n: usize) -> u64 {
    if let Some(b) = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()) {
        return b;
    }
    if n <= 64 {
        u64::MAX
    } else {
        1 << 20
    }
}

pub fn factor_univariate(a: &Polynomial) -> Result<Factorization, PolyError> {
    factor_univariate_with_budget(a, None)
}

pub fn factor_univariate_with_budget(
    a: &Polynomial,
    budget: Option<u64>,
) -> Result<Factorization, PolyError> {
    if a.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let vars = a.vars_present();
    if vars.len() > 1 {
        return Err(PolyError::NotUnivariate);
    }
    let sq = squarefree_decompose(a)?;
    let mut factors = Vec::new();
    let mut complete = true;
    if let Some(&v) = vars.first() {
        for (part, mult) in &sq.parts {
            let d = dense::from_poly(part, v);
            let budget = budget.unwrap_or_else(|| default_budget(d.len() - 1));
            let (fs, ok) = factor_squarefree(&d, budget);
            complete &= ok;
            for f in fs {
                factors.push((dense::to_poly(&f, a.order(), v), *mult));
            }
        }
    }
    factors.sort_by(|x, y| {
        x.0.total_degree()
            .cmp(&y.0.total_degree())
            .then_with(|| x.0.to_string().cmp(&y.0.to_string()))
    });
    Ok(Factorization {
        content: sq.content,
        factors,
        complete,
    })
}

/// Factors a primitive square-free polynomial with positive leading
/// coefficient. Returns the factors and whether recombination finished.
pub fn factor_squarefree(f: &[BigInt], budget: u64) -> (Vec<ZPoly>, bool) {
    let mut f = dense::primitive(f);
    let mut out = Vec::new();
    if f.len() <= 1 {
        return (out, true);
    }
    if f[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        f.remove(0);
    }
    if f.len() == 2 {
        out.push(f);
        return (out, true);
    }
    if f.len() > 2 {
        let (fs, ok) = zassenhaus(&f, budget);
        out.extend(fs);
        return (out, ok);
    }
    (out, true)
}

/// Subset sums reachable from a multiset of factor degrees.
fn reachable_degrees(degs: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

struct ModularImage {
    p: u64,
    monic: FpPoly,
    degrees: Vec<usize>,
}

fn modular_images(f: &[BigInt]) -> Vec<ModularImage> {
    let lc = f.last().unwrap();
    let n = f.len() - 1;
    let mut out = Vec::new();
    let mut attempts = 0;
    for p in modp::primes_from(101) {
        if out.len() >= PRIMES_TRIED || attempts > 200 {
            break;
        }
        attempts += 1;
        if modp::is_zero_mod(lc, p) {
            continue;
        }
        let fp = Fp::new(p);
        let img = fp.from_ints(f);
        if img.len() != n + 1 || !fp.is_squarefree(&img) {
            continue;
        }
        let monic = fp.monic(&img);
        let mut degrees = Vec::new();
        for (g, d) in fp.distinct_degree(&monic) {
            let count = (g.len() - 1) / d;
            degrees.extend(std::iter::repeat(d).take(count));
        }
        out.push(ModularImage { p, monic, degrees });
        if out.last().unwrap().degrees.len() == 1 {
            break;
        }
    }
    out
}

fn zassenhaus(f: &[BigInt], budget: u64) -> (Vec<ZPoly>, bool) {
    let n = f.len() - 1;
    let images = modular_images(f);
    assert!(!images.is_empty(), "no suitable prime found");
    let mut allowed = vec![true; n + 1];
    for im in &images {
        let r = reachable_degrees(&im.degrees, n);
        for (a, b) in allowed.iter_mut().zip(r) {
            *a &= b;
        }
    }
    if !(1..n).any(|d| allowed[d]) {
        return (vec![f.to_vec()], true);
    }
    let best = images.iter().min_by_key(|im| im.degrees.len()).unwrap();
    let fp = Fp::new(best.p);
    let modular = fp.factor_squarefree(&best.monic, n as u64);

    let lc = f.last().unwrap().clone();
    let bound = &lc.abs() * dense::norm2_ceil(f) * (BigInt::one() << n) * 2;
    let p = BigInt::from(best.p);
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus *= &p;
    }
    let lifted = hensel_lift(f, &modular, best.p, &modulus);
    recombine(f, lifted, &modulus, &allowed, budget)
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut v: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    dense::trim(&mut v);
    v
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    zmod(&dense::mul(a, b), m)
}

fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    zmod(&v, m)
}

fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    zmod(&dense::sub(a, b), m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = zmod(a, m);
    if r.len() < h.len() {
        return (Vec::new(), r);
    }
    let dh = h.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - dh];
    for k in (0..q.len()).rev() {
        let c = r[k + dh].mod_floor(m);
        if !c.is_zero() {
            for (i, hc) in h.iter().enumerate() {
                r[k + i] -= &c * hc;
            }
        }
        q[k] = c;
    }
    r.truncate(dh);
    (zmod(&q, m), zmod(&r, m))
}

fn lift_ints(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f ≡ lc(f) * Π facs (mod p)` to monic factors modulo `target`.
fn hensel_lift(f: &[BigInt], facs: &[FpPoly], p: u64, target: &BigInt) -> Vec<ZPoly> {
    let fp = Fp::new(p);
    if facs.len() == 1 {
        let lc = f.last().unwrap();
        let inv = lc.modinv(target).expect("leading coefficient invertible");
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<ZPoly>(), target)];
    }
    let (left, right) = facs.split_at(facs.len() / 2);
    let lcp = fp.reduce(f.last().unwrap());
    let mut g0: FpPoly = vec![lcp];
    for u in left {
        g0 = fp.mul_poly(&g0, u);
    }
    let mut h0: FpPoly = vec![1];
    for u in right {
        h0 = fp.mul_poly(&h0, u);
    }
    let (one, s0, t0) = fp.xgcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let (g, h) = hensel_pair(
        f,
        lift_ints(&g0),
        lift_ints(&h0),
        lift_ints(&s0),
        lift_ints(&t0),
        &BigInt::from(p),
        target,
    );
    let mut out = hensel_lift(&g, left, p, target);
    out.extend(hensel_lift(&h, right, p, target));
    out
}

/// Quadratic Hensel lifting of `f ≡ g h` with `s g + t h ≡ 1`, `h` monic.
fn hensel_pair(
    f: &[BigInt],
    mut g: ZPoly,
    mut h: ZPoly,
    mut s: ZPoly,
    mut t: ZPoly,
    p: &BigInt,
    target: &BigInt,
) -> (ZPoly, ZPoly) {
    let mut m = p.clone();
    while &m < target {
        let m2 = (&m * &m).min(target.clone());
        let e = sub_mod(f, &mul_mod(&g, &h, &m2), &m2);
        let (q, r) = divrem_monic(&mul_mod(&s, &e, &m2), &h, &m2);
        let g2 = add_mod(&add_mod(&g, &mul_mod(&t, &e, &m2), &m2), &mul_mod(&q, &g, &m2), &m2);
        let h2 = add_mod(&h, &r, &m2);
        let b = sub_mod(
            &add_mod(&mul_mod(&s, &g2, &m2), &mul_mod(&t, &h2, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = divrem_monic(&mul_mod(&s, &b, &m2), &h2, &m2);
        s = sub_mod(&s, &d, &m2);
        t = sub_mod(&sub_mod(&t, &mul_mod(&t, &b, &m2), &m2), &mul_mod(&c, &g2, &m2), &m2);
        g = g2;
        h = h2;
        m = m2;
    }
    (g, h)
}

fn recombine(
    f: &[BigInt],
    lifted: Vec<ZPoly>,
    modulus: &BigInt,
    allowed: &[bool],
    budget: u64,
) -> (Vec<ZPoly>, bool) {
    let mut fcur: ZPoly = f.to_vec();
    let mut pool: Vec<ZPoly> = lifted;
    let mut found = Vec::new();
    let mut tests: u64 = 0;
    let mut s = 1;
    'outer: while 2 * s <= pool.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| pool[i].len() - 1).sum();
            if allowed[deg] {
                tests += 1;
                if tests > budget {
                    found.push(fcur);
                    return (found, false);
                }
                if let Some(g) = try_subset(&fcur, &pool, &idx, modulus) {
                    fcur = dense::div_exact(&fcur, &g).expect("candidate divides");
                    for &i in idx.iter().rev() {
                        pool.remove(i);
                    }
                    found.push(g);
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
        s += 1;
    }
    if fcur.len() > 1 {
        found.push(dense::primitive(&fcur));
    }
    (found, true)
}

fn try_subset(f: &[BigInt], pool: &[ZPoly], idx: &[usize], m: &BigInt) -> Option<ZPoly> {
    let lc = f.last().unwrap();
    let mut c0 = lc.clone();
    for &i in idx {
        c0 = (c0 * &pool[i][0]).mod_floor(m);
    }
    let c0 = modp::symmetric(&c0, m);
    if c0.is_zero() || !(lc * &f[0]).is_multiple_of(&c0) {
        return None;
    }
    let mut g: ZPoly = vec![lc.clone()];
    for &i in idx {
        g = mul_mod(&g, &pool[i], m);
    }
    let g: ZPoly = g.iter().map(|c| modp::symmetric(c, m)).collect();
    let g = dense::primitive(&g);
    dense::div_exact(f, &g).map(|_| g)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Irreducibility evidence modulo one prime: `Some(true)` when the image is
/// square-free of full degree and irreducible, `Some(false)` when it splits,
/// `None` when the prime is unsuitable.
pub fn irreducible_mod(f: &[BigInt], p: u64) -> Option<bool> {
    let fp = Fp::new(p);
    let img = fp.from_ints(f);
    if img.len() != f.len() || !fp.is_squarefree(&img) {
        return None;
    }
    let dd = fp.distinct_degree(&fp.monic(&img));
    Some(dd.len() == 1 && dd[0].1 == f.len() - 1)
}
