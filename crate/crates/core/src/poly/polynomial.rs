use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{PolyError, VarOrder};

/// Exponent vector, one entry per variable of the polynomial's [`VarOrder`].
pub type Exponents = Vec<u32>;

/// Graded-lex comparison: total degree first, then the exponent of the
/// highest-ranked variable, and so on.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients.
///
/// Terms are kept sorted by decreasing graded-lex order and never carry a zero
/// coefficient, so structurally equal polynomials are equal values and print
/// identically.
#[derive(Clone)]
pub struct Polynomial {
    order: VarOrder,
    terms: Vec<(Exponents, BigInt)>,
}

impl Polynomial {
    pub fn zero(order: &VarOrder) -> Self {
        Polynomial {
            order: order.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(order: &VarOrder) -> Self {
        Self::constant(order, BigInt::one())
    }

    pub fn constant(order: &VarOrder, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(order);
        }
        Polynomial {
            order: order.clone(),
            terms: vec![(vec![0; order.len()], c)],
        }
    }

    pub fn var(order: &VarOrder, name: &str) -> Result<Self, PolyError> {
        let idx = order.require(name)?;
        Ok(Self::var_idx(order, idx, 1))
    }

    /// The monomial `x_idx^exp`.
    pub fn var_idx(order: &VarOrder, idx: usize, exp: u32) -> Self {
        let mut e = vec![0; order.len()];
        e[idx] = exp;
        Polynomial {
            order: order.clone(),
            terms: vec![(e, BigInt::one())],
        }
    }

    pub fn monomial(order: &VarOrder, exps: Exponents, c: BigInt) -> Self {
        assert_eq!(exps.len(), order.len());
        if c.is_zero() {
            return Self::zero(order);
        }
        Polynomial {
            order: order.clone(),
            terms: vec![(exps, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I>(order: &VarOrder, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut map: HashMap<Exponents, BigInt> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), order.len(), "exponent vector length");
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(order, map)
    }

    fn from_map(order: &VarOrder, map: HashMap<Exponents, BigInt>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
        Polynomial {
            order: order.clone(),
            terms,
        }
    }

    /// Terms already sorted in decreasing graded-lex order with no zero
    /// coefficients and no duplicates.
    pub(crate) fn from_sorted_unchecked(order: &VarOrder, terms: Vec<(Exponents, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| grlex_cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            order: order.clone(),
            terms,
        }
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn terms(&self) -> &[(Exponents, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exponents, BigInt)> {
        self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .first()
            .map(|(e, _)| e.iter().sum())
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    /// Lowest exponent of `var` over all terms.
    pub fn min_degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).min().unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn vars_present(&self) -> Vec<usize> {
        (0..self.order.len())
            .filter(|&v| self.terms.iter().any(|(e, _)| e[v] > 0))
            .collect()
    }

    pub fn main_var(&self) -> Option<usize> {
        (0..self.order.len()).find(|&v| self.terms.iter().any(|(e, _)| e[v] > 0))
    }

    pub fn is_univariate(&self) -> bool {
        self.vars_present().len() <= 1
    }

    /// Leading term under graded-lex.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> BigInt {
        self.terms
            .binary_search_by(|(e, _)| grlex_cmp(exps, e))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub(crate) fn check_order(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.order.same(&other.order) {
            Ok(())
        } else {
            Err(PolyError::OrderMismatch {
                left: self.order.to_string(),
                right: other.order.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_order(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_order(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_order(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grlex_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            order: self.order.clone(),
            terms: out,
        }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.order);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut map: HashMap<Exponents, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match map.get_mut(&e) {
                    Some(c) => *c += prod,
                    None => {
                        map.insert(e, prod);
                    }
                }
            }
        }
        Polynomial::from_map(&self.order, map)
    }

    /// Multiplies by the single term `c * x^exps`.
    pub fn mul_term(&self, exps: &[u32], c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.order);
        }
        // Adding a fixed exponent vector preserves graded-lex order.
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), k * c))
            .collect();
        Polynomial {
            order: self.order.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.order);
        }
        let terms = self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect();
        Polynomial {
            order: self.order.clone(),
            terms,
        }
    }

    /// Divides every coefficient by `c`, failing unless all divisions are exact.
    pub fn div_int_exact(&self, c: &BigInt) -> Result<Polynomial, PolyError> {
        if c.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, k) in &self.terms {
            let (q, r) = k.div_rem(c);
            if !r.is_zero() {
                return Err(PolyError::NotExact);
            }
            terms.push((e.clone(), q));
        }
        Ok(Polynomial {
            order: self.order.clone(),
            terms,
        })
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.order);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact division `self / divisor` over the integers.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_order(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if let Some(c) = divisor.constant_value() {
            return self.div_int_exact(&c);
        }
        let (lt_e, lt_c) = divisor.leading_term().unwrap();
        let lt_e = lt_e.clone();
        let lt_c = lt_c.clone();
        let mut rem = self.clone();
        let mut quotient: Vec<(Exponents, BigInt)> = Vec::new();
        while let Some((re, rc)) = rem.terms.first() {
            if re.iter().zip(&lt_e).any(|(a, b)| a < b) {
                return Err(PolyError::NotExact);
            }
            let (q, r) = rc.div_rem(&lt_c);
            if !r.is_zero() {
                return Err(PolyError::NotExact);
            }
            let qe: Exponents = re.iter().zip(&lt_e).map(|(a, b)| a - b).collect();
            rem = rem.merge(&divisor.mul_term(&qe, &q), true);
            quotient.push((qe, q));
        }
        // Quotient terms were produced in strictly decreasing order.
        Ok(Polynomial::from_sorted_unchecked(&self.order, quotient))
    }

    /// `Some(q)` when `divisor` divides `self` exactly.
    pub fn divides_into(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.exact_div(divisor).ok()
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut ne = e.clone();
                ne[var] -= 1;
                terms.push((ne, c * BigInt::from(e[var])));
            }
        }
        Polynomial::from_terms(&self.order, terms)
    }

    /// Coefficients with respect to `var`, indexed by power. The returned
    /// polynomials do not contain `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Exponents, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut ne = e.clone();
            ne[var] = 0;
            buckets[k].push((ne, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                // Removing one variable can reorder terms, so resort.
                t.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
                Polynomial::from_sorted_unchecked(&self.order, t)
            })
            .collect()
    }

    pub fn from_coefficients_in(order: &VarOrder, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut ne = e.clone();
                ne[var] += k as u32;
                terms.push((ne, v.clone()));
            }
        }
        Polynomial::from_terms(order, terms)
    }

    /// Leading coefficient with respect to `var` (a polynomial free of `var`).
    pub fn lc_in(&self, var: usize) -> Polynomial {
        let d = self.degree_in(var);
        let mut t: Vec<_> = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] == d)
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[var] = 0;
                (ne, c.clone())
            })
            .collect();
        t.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
        Polynomial::from_sorted_unchecked(&self.order, t)
    }

    /// Substitutes the integer `value` for variable `var`.
    pub fn substitute(&self, var: usize, value: &BigInt) -> Polynomial {
        let deg = self.degree_in(var) as usize;
        let mut powers = Vec::with_capacity(deg + 1);
        powers.push(BigInt::one());
        for i in 1..=deg {
            let next = &powers[i - 1] * value;
            powers.push(next);
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = e.clone();
            let k = ne[var] as usize;
            ne[var] = 0;
            (ne, c * &powers[k])
        });
        Polynomial::from_terms(&self.order, terms)
    }

    /// Substitutes integers for every variable listed in `point` (pairs of
    /// variable index and value).
    pub fn substitute_many(&self, point: &[(usize, BigInt)]) -> Polynomial {
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(point.len());
        for (v, val) in point {
            let deg = self.degree_in(*v) as usize;
            let mut p = Vec::with_capacity(deg + 1);
            p.push(BigInt::one());
            for i in 1..=deg {
                let next = &p[i - 1] * val;
                p.push(next);
            }
            powers.push(p);
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = e.clone();
            let mut k = c.clone();
            for (slot, (v, _)) in point.iter().enumerate() {
                k *= &powers[slot][ne[*v] as usize];
                ne[*v] = 0;
            }
            (ne, k)
        });
        Polynomial::from_terms(&self.order, terms)
    }

    /// Dense coefficient vector (lowest power first) in `var` after all other
    /// variables are replaced by the integers in `point`, indexed by variable.
    /// Entries of `point` for `var` itself are ignored.
    pub fn univariate_image(&self, var: usize, point: &[BigInt]) -> Vec<BigInt> {
        let nv = self.order.len();
        let deg = self.degree_in(var) as usize;
        let mut out = vec![BigInt::zero(); deg + 1];
        let mut cache: Vec<Vec<BigInt>> = vec![Vec::new(); nv];
        for (e, c) in &self.terms {
            let mut k = c.clone();
            for v in 0..nv {
                if v == var || e[v] == 0 {
                    continue;
                }
                let need = e[v] as usize;
                let pw = &mut cache[v];
                if pw.is_empty() {
                    pw.push(BigInt::one());
                }
                while pw.len() <= need {
                    let next = &pw[pw.len() - 1] * &point[v];
                    pw.push(next);
                }
                k *= &pw[need];
            }
            out[e[var] as usize] += k;
        }
        out
    }

    /// Value at an integer point (indexed by variable).
    pub fn eval_int(&self, point: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut k = c.clone();
            for (v, &ex) in e.iter().enumerate() {
                if ex > 0 {
                    k *= num_traits::pow(point[v].clone(), ex as usize);
                }
            }
            acc += k;
        }
        acc
    }

    /// Exact value at a rational point given by name.
    pub fn evaluate<F>(&self, mut lookup: F) -> Result<BigRational, PolyError>
    where
        F: FnMut(&str) -> Option<BigRational>,
    {
        let present = self.vars_present();
        let mut vals: Vec<Option<BigRational>> = vec![None; self.order.len()];
        for v in present {
            let name = self.order.name(v);
            vals[v] = Some(lookup(name).ok_or_else(|| PolyError::MissingAssignment(name.to_string()))?);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut k = BigRational::from_integer(c.clone());
            for (v, &ex) in e.iter().enumerate() {
                if ex > 0 {
                    let val = vals[v].as_ref().unwrap();
                    k *= num_traits::pow(val.clone(), ex as usize);
                }
            }
            acc += k;
        }
        Ok(acc)
    }

    pub fn evaluate_map(
        &self,
        point: &std::collections::HashMap<String, BigRational>,
    ) -> Result<BigRational, PolyError> {
        self.evaluate(|n| point.get(n).cloned())
    }

    /// Re-expresses the polynomial in another order containing every variable
    /// that occurs in `self`.
    pub fn reorder(&self, target: &VarOrder) -> Result<Polynomial, PolyError> {
        if self.order.same(target) {
            return Ok(self.clone());
        }
        let mut map = vec![usize::MAX; self.order.len()];
        for v in self.vars_present() {
            map[v] = target.require(self.order.name(v))?;
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = vec![0; target.len()];
            for (v, &ex) in e.iter().enumerate() {
                if ex > 0 {
                    ne[map[v]] = ex;
                }
            }
            (ne, c.clone())
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Integer gcd of the coefficients (non-negative).
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Sign of the graded-lex leading coefficient (0 for the zero polynomial).
    pub fn leading_sign(&self) -> i32 {
        match self.leading_coeff() {
            None => 0,
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }

    /// Multiplies by -1 if the leading coefficient is negative.
    pub fn with_positive_lead(self) -> Polynomial {
        if self.leading_sign() < 0 {
            -self
        } else {
            self
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.order.same(&other.order) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials over different variable orders")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials over different variable orders")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials over different variable orders")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -self.clone()
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order() -> VarOrder {
        VarOrder::new(["x", "y"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let o = order();
        let x = Polynomial::var(&o, "x").unwrap();
        let one = Polynomial::one(&o);
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn additive_inverse_is_zero() {
        let o = order();
        let p = Polynomial::parse("x^2*y - 3*y + 7", &o).unwrap();
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn exact_division() {
        let o = order();
        let a = Polynomial::parse("x^2 - 1", &o).unwrap();
        let b = Polynomial::parse("x - 1", &o).unwrap();
        assert_eq!(a.exact_div(&b).unwrap().to_string(), "x + 1");
        let c = Polynomial::parse("x^2 + 1", &o).unwrap();
        assert!(matches!(c.exact_div(&b), Err(PolyError::NotExact)));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = Polynomial::parse("x", &order()).unwrap();
        let b = Polynomial::parse("x", &VarOrder::new(["y", "x"]).unwrap()).unwrap();
        assert!(matches!(a.checked_add(&b), Err(PolyError::OrderMismatch { .. })));
    }

    #[test]
    fn coefficients_round_trip() {
        let o = order();
        let p = Polynomial::parse("3*x^2*y + x*y^2 - y + 4", &o).unwrap();
        let cs = p.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2].to_string(), "3*y");
        assert_eq!(Polynomial::from_coefficients_in(&o, 0, &cs), p);
    }

    #[test]
    fn rational_evaluation() {
        let o = VarOrder::new(["x"]).unwrap();
        let p = Polynomial::parse("x^2 + x - 1", &o).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let v = p.evaluate(|_| Some(half.clone())).unwrap();
        assert_eq!(v, BigRational::new((-1).into(), 4.into()));
        let q = Polynomial::parse("x*y", &order()).unwrap();
        assert!(matches!(
            q.evaluate(|n| (n == "x").then(|| half.clone())),
            Err(PolyError::MissingAssignment(_))
        ));
    }
}
