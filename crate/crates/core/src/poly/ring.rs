//! Generic fraction-free algorithms over an exact integral domain: dense
//! pseudo-remainders, the subresultant resultant and Bareiss determinants.
//! They are instantiated with `BigInt` and with [`Polynomial`] coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Polynomial;

pub trait Domain: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient, `None` when `o` does not divide `self`.
    fn div_exact(&self, o: &Self) -> Option<Self>;

    fn pow(&self, mut n: u32) -> Self {
        let mut result = self.one_like();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

impl Domain for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Domain for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.order())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.order())
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        self.exact_div(o).ok()
    }
}

pub fn trim<R: Domain>(p: &mut Vec<R>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree of a trimmed dense polynomial; `None` for zero.
pub fn degree<R: Domain>(p: &[R]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn prem<R: Domain>(a: &[R], b: &[R]) -> Vec<R> {
    assert!(!b.is_empty(), "pseudo-division by zero");
    let db = b.len() - 1;
    if a.len() < b.len() {
        return a.to_vec();
    }
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut steps = a.len() - b.len() + 1;
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&lr.mul(bc));
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.pow(steps as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

/// Resultant of two nonzero dense polynomials of positive degree by the
/// subresultant algorithm. The sign follows the Sylvester determinant with
/// the coefficients of `a` in the first rows.
pub fn subresultant_resultant<R: Domain>(a: &[R], b: &[R]) -> R {
    assert!(!a.is_empty() && !b.is_empty());
    let zero = a[0].zero_like();
    let one = a[0].one_like();
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mut s_neg = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s_neg = !s_neg;
        }
    }
    if b.len() == 1 {
        // Res(a, c) = c^deg(a) for a constant c.
        let r = b[0].pow((a.len() - 1) as u32);
        return if s_neg { r.neg() } else { r };
    }
    let mut g = one.clone();
    let mut h = one;
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            s_neg = !s_neg;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return zero;
        }
        let divisor = g.mul(&h.pow(delta));
        b = r
            .iter()
            .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        g = a[a.len() - 1].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
        if b.len() == 1 {
            break;
        }
    }
    let da = (a.len() - 1) as u32;
    let lb = b[0].clone();
    let res = if da == 0 {
        h
    } else {
        lb.pow(da)
            .div_exact(&h.pow(da - 1))
            .expect("subresultant division is exact")
    };
    if s_neg {
        res.neg()
    } else {
        res
    }
}

/// Resultant with formal degrees `m >= deg a` and `n >= deg b`, i.e. the
/// determinant of the `(m+n)`-square Sylvester matrix built from the padded
/// coefficient lists. This is the specialization-stable resultant.
pub fn formal_resultant<R: Domain>(a: &[R], b: &[R], m: usize, n: usize, unit: &R) -> R {
    let zero = unit.zero_like();
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if m == 0 && n == 0 {
        return unit.one_like();
    }
    // A zero polynomial contributes an all-zero block of rows.
    if (a.is_empty() && n > 0) || (b.is_empty() && m > 0) {
        return zero;
    }
    if n == 0 {
        return b[0].pow(m as u32);
    }
    if m == 0 {
        return a[0].pow(n as u32);
    }
    let ma = a.len() - 1;
    let nb = b.len() - 1;
    assert!(ma <= m && nb <= n, "formal degree below actual degree");
    if ma < m && nb < n {
        return zero;
    }
    let mut factor = unit.one_like();
    if ma < m {
        // Res_{m,n}(a,b) = ((-1)^n lc(b))^(m - ma) Res_{ma,n}(a,b)
        let k = (m - ma) as u32;
        factor = b[nb].pow(k);
        if n % 2 == 1 && k % 2 == 1 {
            factor = factor.neg();
        }
    } else if nb < n {
        // Res_{m,n}(a,b) = lc(a)^(n - nb) Res_{m,nb}(a,b)
        factor = a[ma].pow((n - nb) as u32);
    }
    let core = if ma == 0 {
        a[0].pow(nb as u32)
    } else if nb == 0 {
        b[0].pow(ma as u32)
    } else {
        subresultant_resultant(&a, &b)
    };
    factor.mul(&core)
}

/// Fraction-free Gaussian elimination (Bareiss) determinant.
pub fn bareiss_det<R: Domain>(mut m: Vec<Vec<R>>, unit: &R) -> R {
    let n = m.len();
    if n == 0 {
        return unit.one_like();
    }
    let mut negate = false;
    let mut prev = unit.one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return unit.zero_like(),
            }
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let t = row[j].mul(pivot).sub(&lead.mul(&pivot_row[j]));
                row[j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[k] = unit.zero_like();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Builds the Sylvester matrix of two dense polynomials with formal degrees.
pub fn sylvester_matrix<R: Domain>(a: &[R], b: &[R], m: usize, n: usize, unit: &R) -> Vec<Vec<R>> {
    let size = m + n;
    let zero = unit.zero_like();
    let coeff = |p: &[R], k: usize| -> R { p.get(k).cloned().unwrap_or_else(|| zero.clone()) };
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for j in 0..=m {
            row[i + j] = coeff(a, m - j);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for j in 0..=n {
            row[i + j] = coeff(b, n - j);
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn laplace(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * laplace(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn linear_resultant_matches_two_by_two() {
        // res_x(x+1, x-1) = det [[1,1],[1,-1]] = -2
        let r = subresultant_resultant(&v(&[1, 1]), &v(&[-1, 1]));
        assert_eq!(r, BigInt::from(-2));
    }

    #[test]
    fn prs_matches_sylvester_determinant() {
        let cases = [
            (v(&[3, 0, -2, 5, 1]), v(&[-1, 4, 2])),
            (v(&[1, 2, 3]), v(&[4, 5, 6, 7])),
            (v(&[0, 0, 1]), v(&[1, 1])),
            (v(&[2, -3, 0, 0, 0, 1]), v(&[7, 0, 0, 2])),
            (v(&[1, 0, 1]), v(&[1, 0, 1])),
        ];
        for (a, b) in cases {
            let m = a.len() - 1;
            let n = b.len() - 1;
            let syl = sylvester_matrix(&a, &b, m, n, &BigInt::one());
            let expect = laplace(&syl);
            assert_eq!(subresultant_resultant(&a, &b), expect);
            assert_eq!(bareiss_det(syl, &BigInt::one()), expect);
        }
    }

    #[test]
    fn formal_degrees_match_padded_sylvester() {
        let unit = BigInt::one();
        let cases = [
            (v(&[3, 2]), v(&[1, -1, 4]), 3usize, 2usize),
            (v(&[3, 2, 1]), v(&[5, 1]), 2, 3),
            (v(&[7]), v(&[1, 2, 3]), 2, 2),
            (v(&[1, 1]), v(&[2]), 1, 2),
            (v(&[1, 1]), v(&[2, 1]), 3, 3),
        ];
        for (a, b, m, n) in cases {
            let syl = sylvester_matrix(&a, &b, m, n, &unit);
            assert_eq!(formal_resultant(&a, &b, m, n, &unit), laplace(&syl), "{a:?} {b:?} {m} {n}");
        }
    }
}
