//! Dense univariate polynomials over a prime field `F_p` with `p < 2^32`,
//! and the Cantor–Zassenhaus factorization used by the integer factorizer.
//!
//! Polynomials are coefficient vectors, lowest power first, with no trailing
//! zeros; the empty vector is zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

pub type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in increasing order starting at `from`.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    (from..).filter(|&n| is_prime(n))
}

/// Primes in decreasing order starting just below `2^31`.
pub fn large_primes() -> impl Iterator<Item = u64> {
    (3..(1u64 << 31)).rev().filter(|&n| is_prime(n))
}

/// Deterministic xorshift generator for random polynomials.
#[derive(Clone)]
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1)
    }
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 32) && is_prime(p));
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn reduce(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn from_ints(&self, coeffs: &[BigInt]) -> FpPoly {
        let mut v: FpPoly = coeffs.iter().map(|c| self.reduce(c)).collect();
        trim(&mut v);
        v
    }

    pub fn add_poly(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)));
        }
        trim(&mut out);
        out
    }

    pub fn sub_poly(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)));
        }
        trim(&mut out);
        out
    }

    pub fn scale_poly(&self, a: &[u64], c: u64) -> FpPoly {
        let mut out: FpPoly = a.iter().map(|&x| self.mul(x, c)).collect();
        trim(&mut out);
        out
    }

    pub fn mul_poly(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // Accumulate in u128 and reduce once per output coefficient.
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        let p = self.p as u128;
        let mut out: FpPoly = acc.into_iter().map(|c| (c % p) as u64).collect();
        trim(&mut out);
        out
    }

    /// Quotient and remainder of `a / b`, `b` nonzero.
    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        let mut q = vec![0; a.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            q[k] = c;
            if c != 0 {
                for (i, &bc) in b.iter().enumerate() {
                    r[k + i] = self.sub(r[k + i], self.mul(c, bc));
                }
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.len() < b.len() {
            let mut v = a.to_vec();
            trim(&mut v);
            return v;
        }
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale_poly(a, self.inv(lc)),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn xgcd(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc = *r0.last().expect("xgcd of two zeros");
        let inv = self.inv(lc);
        (
            self.scale_poly(&r0, inv),
            self.scale_poly(&s0, inv),
            self.scale_poly(&t0, inv),
        )
    }

    pub fn derivative(&self, a: &[u64]) -> FpPoly {
        let mut out: FpPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, (i as u64) % self.p))
            .collect();
        trim(&mut out);
        out
    }

    pub fn mulmod(&self, a: &[u64], b: &[u64], m: &[u64]) -> FpPoly {
        self.rem(&self.mul_poly(a, b), m)
    }

    pub fn powmod(&self, a: &[u64], mut e: u64, m: &[u64]) -> FpPoly {
        let mut result: FpPoly = self.rem(&[1], m);
        let mut base = self.rem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.mulmod(&result, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        result
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        let d = self.derivative(a);
        if d.is_empty() {
            return a.len() <= 1;
        }
        self.gcd(a, &d).len() == 1
    }

    /// Rows `x^(i*p) mod m` for `i < deg m`: the matrix of the Frobenius map.
    pub fn frobenius_matrix(&self, m: &[u64]) -> Vec<FpPoly> {
        let n = m.len() - 1;
        let xp = self.powmod(&[0, 1], self.p, m);
        let mut rows = Vec::with_capacity(n);
        let mut cur: FpPoly = vec![1];
        for _ in 0..n {
            rows.push(cur.clone());
            cur = self.mulmod(&cur, &xp, m);
        }
        rows
    }

    /// `a^p mod m` using a precomputed Frobenius matrix for `m`.
    pub fn apply_frobenius(&self, a: &[u64], q: &[FpPoly]) -> FpPoly {
        let n = q.len();
        let mut acc = vec![0u128; n];
        let p = self.p as u128;
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &r) in q[i].iter().enumerate() {
                acc[j] += (c * r) as u128;
                if acc[j] >= (1u128 << 126) {
                    acc[j] %= p;
                }
            }
        }
        let mut out: FpPoly = acc.into_iter().map(|c| (c % p) as u64).collect();
        trim(&mut out);
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        if f.len() <= 1 {
            return out;
        }
        let q = self.frobenius_matrix(f);
        let mut rest = f.to_vec();
        let mut h: FpPoly = self.rem(&[0, 1], f);
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest, deg));
                break;
            }
            h = self.apply_frobenius(&h, &q);
            let g = self.gcd(&rest, &self.sub_poly(&h, &[0, 1]));
            if g.len() > 1 {
                rest = self.divrem(&rest, &g).0;
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a monic square-free polynomial whose irreducible factors all
    /// have degree `d` (odd `p`).
    pub fn equal_degree(&self, f: &[u64], d: usize, rng: &mut XorShift) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        assert!(self.p > 2, "equal-degree splitting needs an odd prime");
        let q = self.frobenius_matrix(f);
        loop {
            let a: FpPoly = {
                let mut v: FpPoly = (0..n).map(|_| rng.next_u64() % self.p).collect();
                trim(&mut v);
                v
            };
            if a.len() <= 1 {
                continue;
            }
            // Trace of a over F_{p^d} down to F_p, then a quadratic character.
            let mut t = a.clone();
            let mut cur = a;
            for _ in 1..d {
                cur = self.apply_frobenius(&cur, &q);
                t = self.add_poly(&t, &cur);
            }
            let b = self.powmod(&t, (self.p - 1) / 2, f);
            let g = self.gcd(f, &self.sub_poly(&b, &[1]));
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Full factorization of a monic square-free polynomial into monic
    /// irreducibles, sorted by degree then coefficients.
    pub fn factor_squarefree(&self, f: &[u64], seed: u64) -> Vec<FpPoly> {
        let mut rng = XorShift::new(seed ^ self.p);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, &mut rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

pub fn trim(v: &mut FpPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Symmetric lift of residues modulo `m` into `(-m/2, m/2]`.
pub fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

pub fn is_zero_mod(c: &BigInt, p: u64) -> bool {
    (c % BigInt::from(p)).is_zero()
}
