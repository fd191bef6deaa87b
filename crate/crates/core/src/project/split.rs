//! Splitting iterated resultants into genuine and spurious parts, and the
//! Bézout degree filter.

use num_bigint::BigInt;
use serde::Serialize;

use super::ProjError;
use crate::poly::gcd::content_primitive;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub genuine: Polynomial,
    pub spurious: Polynomial,
    /// Largest `e` with `genuine^e` dividing the iterated resultant.
    pub mult: u32,
    pub iterated_content: BigInt,
    pub multires_content: BigInt,
}

fn positive_primitive(p: &Polynomial) -> Result<(BigInt, Polynomial), ProjError> {
    let (c, q) = content_primitive(p)?;
    Ok((c, q.with_positive_lead()))
}

/// `primitive(iterated) = genuine^mult * spurious` with `genuine` the
/// primitive part of `multires`.
pub fn split_genuine_spurious(iterated: &Polynomial, multires: &Polynomial) -> Result<Split, ProjError> {
    iterated.check_order(multires)?;
    if iterated.is_zero() || multires.is_zero() {
        return Err(ProjError::Poly(crate::poly::PolyError::ZeroInput));
    }
    if multires.is_constant() {
        return Err(ProjError::Invalid("multivariate resultant is constant".into()));
    }
    let (ci, a) = positive_primitive(iterated)?;
    let (cm, b) = positive_primitive(multires)?;
    let mut rest = a.divides_into(&b).ok_or(ProjError::NotDivisible)?;
    let mut mult = 1;
    while let Some(q) = rest.divides_into(&b) {
        rest = q;
        mult += 1;
    }
    Ok(Split {
        genuine: b,
        spurious: rest.with_positive_lead(),
        mult,
        iterated_content: ci,
        multires_content: cm,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Genuine,
    Spurious,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    DivisionSplit,
    BezoutBound,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorClassification {
    pub factor: Polynomial,
    pub tag: Tag,
    pub evidence: Evidence,
    /// Degree bound in force when the factor was classified.
    pub bound: Option<u64>,
}

/// Bézout bound on the degree of a genuine factor, lowered as genuine
/// factors are confirmed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BezoutBound {
    pub bound: u64,
}

impl BezoutBound {
    /// `d^k` for `k` polynomials of degree at most `d`.
    pub fn new(d: u64, k: u32) -> Self {
        BezoutBound { bound: d.saturating_pow(k) }
    }

    /// Accounts for a genuine factor of the given degree.
    pub fn confirm_genuine(&mut self, degree: u64) {
        self.bound = self.bound.saturating_sub(degree);
    }

    pub fn classify(&self, factor: &Polynomial) -> FactorClassification {
        let spurious = u64::from(factor.total_degree()) > self.bound;
        FactorClassification {
            factor: factor.clone(),
            tag: if spurious { Tag::Spurious } else { Tag::Unknown },
            evidence: if spurious { Evidence::BezoutBound } else { Evidence::None },
            bound: Some(self.bound),
        }
    }
}

/// Tags each factor of degree above `d^k` spurious, the rest unknown.
pub fn bezout_filter(factors: &[Polynomial], d: u64, k: u32) -> Vec<FactorClassification> {
    bezout_filter_with_bound(factors, BezoutBound::new(d, k))
}

pub fn bezout_filter_with_bound(factors: &[Polynomial], bound: BezoutBound) -> Vec<FactorClassification> {
    factors.iter().map(|f| bound.classify(f)).collect()
}

/// Classification from a division split: the genuine part and the
/// spurious cofactor, both with division evidence.
pub fn classify_split(split: &Split) -> Vec<FactorClassification> {
    let mut v = vec![FactorClassification {
        factor: split.genuine.clone(),
        tag: Tag::Genuine,
        evidence: Evidence::DivisionSplit,
        bound: None,
    }];
    if !split.spurious.is_constant() {
        v.push(FactorClassification {
            factor: split.spurious.clone(),
            tag: Tag::Spurious,
            evidence: Evidence::DivisionSplit,
            bound: None,
        });
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarOrder;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &VarOrder::new(["x"]).unwrap()).unwrap()
    }

    #[test]
    fn splits_and_multiplicity() {
        let s = split_genuine_spurious(&p("2*(x^2 - 2)^2*(x + 1)"), &p("-3*x^2 + 6")).unwrap();
        assert_eq!(s.genuine.to_string(), "x^2 - 2");
        assert_eq!(s.spurious.to_string(), "x + 1");
        assert_eq!(s.mult, 2);
        assert_eq!(s.iterated_content, BigInt::from(2));
        assert!(split_genuine_spurious(&p("x + 1"), &p("x - 1")).is_err());
        let s = split_genuine_spurious(&p("2*x^4 + 4*x^3 + 2*x^2 - 2"), &p("x^4 + 2*x^3 + x^2 - 1")).unwrap();
        assert_eq!((s.spurious.to_string(), s.mult), ("1".to_string(), 1));
    }

    #[test]
    fn bezout_boundary_and_decrement() {
        let f = p("x - 1");
        let c = bezout_filter(&[f.clone()], 1, 1);
        assert_eq!(c[0].tag, Tag::Unknown);
        let mut b = BezoutBound::new(2, 2);
        b.confirm_genuine(1);
        let g = p("x^4 + 1");
        assert_eq!(b.classify(&g).tag, Tag::Spurious);
        assert_eq!(b.classify(&p("x^3 + 1")).tag, Tag::Unknown);
    }
}
