#![allow(dead_code)]

use std::collections::HashMap;

use cadproj::elim::sylvester_resultant;
use cadproj::poly::{factor_univariate, squarefree_decompose};
use cadproj::rewrite::{parse_native, Dialect, Formula, RewriteError};
use cadproj::{Polynomial, VarOrder};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub fn order(vars: &[&str]) -> VarOrder {
    VarOrder::new(vars.iter().copied()).unwrap()
}

pub fn parse(s: &str, o: &VarOrder) -> Polynomial {
    Polynomial::parse(s, o).unwrap()
}

/// Runs `test` on `cases` deterministic samples of `strategy`.
pub fn check<S, F>(cases: u32, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Sparse polynomial over `order` with exponents up to `max_deg` per variable.
pub fn poly(o: &VarOrder, max_deg: u32, max_terms: usize, coeff: i64) -> impl Strategy<Value = Polynomial> {
    let o = o.clone();
    let n = o.len();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -coeff..=coeff), 1..=max_terms).prop_map(
        move |ts| Polynomial::from_terms(&o, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))),
    )
}

/// As [`poly`], of positive degree in the first variable.
pub fn poly_in_first(o: &VarOrder, max_deg: u32, max_terms: usize, coeff: i64) -> impl Strategy<Value = Polynomial> {
    poly(o, max_deg, max_terms, coeff).prop_filter("positive degree", |p| p.degree_in(0) >= 1)
}

/// Univariate polynomial with nonzero leading coefficient and degree in
/// `lo..=hi`.
pub fn univariate(o: &VarOrder, lo: usize, hi: usize, coeff: i64) -> impl Strategy<Value = Polynomial> {
    let o = o.clone();
    (prop::collection::vec(-coeff..=coeff, lo..=hi), 1..=coeff, any::<bool>()).prop_map(move |(cs, lead, neg)| {
        let mut terms: Vec<(Vec<u32>, BigInt)> = cs.iter().enumerate().map(|(i, &c)| (vec![i as u32], BigInt::from(c))).collect();
        let lead = if neg { -lead } else { lead };
        terms.push((vec![cs.len() as u32], BigInt::from(lead)));
        Polynomial::from_terms(&o, terms)
    })
}

fn to_rational(p: &Polynomial) -> Vec<BigRational> {
    let d = p.degree_in(0) as usize;
    let mut v = vec![BigRational::zero(); d + 1];
    for (e, c) in p.terms() {
        v[e[0] as usize] += BigRational::from_integer(c.clone());
    }
    v
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Degree of the gcd of two nonzero univariate polynomials, by Euclid over
/// the rationals.
pub fn rational_gcd_degree(a: &Polynomial, b: &Polynomial) -> usize {
    let mut a = to_rational(a);
    let mut b = to_rational(b);
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let mut r = a.clone();
        while r.len() >= b.len() {
            let q = r.last().unwrap() / b.last().unwrap();
            let shift = r.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                r[i + shift] -= &q * c;
            }
            r.pop();
            trim(&mut r);
        }
        a = b;
        b = r;
    }
    a.len() - 1
}

pub fn resultant_multiplicative() -> Result<(), String> {
    let o = order(&["x", "a"]);
    let s = (poly_in_first(&o, 3, 4, 6), poly_in_first(&o, 2, 3, 6), poly_in_first(&o, 2, 3, 6));
    check(200, s, |(f, g, h)| {
        let lhs = sylvester_resultant(&f, &(&g * &h), "x").unwrap();
        let rhs = &sylvester_resultant(&f, &g, "x").unwrap() * &sylvester_resultant(&f, &h, "x").unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn resultant_power_law() -> Result<(), String> {
    let o = order(&["x", "a"]);
    let s = (poly_in_first(&o, 3, 4, 6), poly_in_first(&o, 3, 4, 6));
    check(200, s, |(f, g)| {
        let lhs = sylvester_resultant(&f, &g.pow(2), "x").unwrap();
        let r = sylvester_resultant(&f, &g, "x").unwrap();
        prop_assert_eq!(lhs, r.pow(2));
        Ok(())
    })
}

pub fn resultant_vanishing() -> Result<(), String> {
    let o = order(&["x"]);
    let s = (
        univariate(&o, 0, 3, 5),
        univariate(&o, 0, 3, 5),
        univariate(&o, 0, 2, 3),
        any::<bool>(),
    );
    check(200, s, |(a, b, c, share)| {
        let (f, g) = if share { (&a * &c, &b * &c) } else { (a, b) };
        prop_assume!(f.degree_in(0) >= 1 && g.degree_in(0) >= 1);
        let r = sylvester_resultant(&f, &g, "x").unwrap();
        prop_assert_eq!(r.is_zero(), rational_gcd_degree(&f, &g) >= 1, "f = {}, g = {}", f, g);
        Ok(())
    })
}

pub fn squarefree_reconstruction() -> Result<(), String> {
    let o = order(&["x", "a"]);
    let s = prop::collection::vec((poly(&o, 2, 3, 4), 1u32..=3), 1..=3);
    check(200, s, |parts| {
        let mut p = Polynomial::one(&o);
        for (q, e) in &parts {
            p = &p * &q.pow(*e);
        }
        prop_assume!(!p.is_zero());
        let sq = squarefree_decompose(&p).unwrap();
        prop_assert_eq!(sq.expand(&p), p.clone());
        for (i, (q, _)) in sq.parts.iter().enumerate() {
            for (r, _) in &sq.parts[i + 1..] {
                prop_assert!(cadproj::poly::poly_gcd(q, r).unwrap().is_constant());
            }
            let mut g = q.clone();
            for v in q.vars_present() {
                g = cadproj::poly::poly_gcd(&g, &q.derivative(v)).unwrap();
            }
            prop_assert!(g.is_constant(), "{} is not square-free", q);
        }
        Ok(())
    })
}

pub fn factor_product() -> Result<(), String> {
    let o = order(&["x"]);
    let s = prop::collection::vec((univariate(&o, 1, 4, 6), 1u32..=2), 1..=4);
    check(200, s, |parts| {
        let mut p = Polynomial::one(&o);
        for (q, e) in &parts {
            p = &p * &q.pow(*e);
        }
        let fz = factor_univariate(&p).unwrap();
        prop_assert_eq!(fz.expand(&p), p.clone());
        let total: u32 = fz.factors.iter().map(|(f, e)| f.total_degree() * e).sum();
        prop_assert_eq!(total, p.total_degree());
        for (f, _) in &fz.factors {
            prop_assert!(f.total_degree() >= 1);
            prop_assert!(f.leading_sign() > 0);
            prop_assert!(f.integer_content().is_one());
        }
        prop_assert!(fz.complete);
        Ok(())
    })
}

/// Random formula text in the infix dialect over `x` (bound) and `a` (free).
pub fn formula_text() -> impl Strategy<Value = String> {
    let o = order(&["x", "a"]);
    let term = (poly(&o, 2, 3, 4), prop::option::of(poly(&o, 2, 2, 3))).prop_map(|(n, d)| match d {
        Some(d) if !d.is_zero() => format!("({n})/({d})"),
        _ => format!("{n}"),
    });
    let rel = prop::sample::select(vec!["=", "!=", "<", "<=", ">", ">="]);
    let atom = (term, rel).prop_map(|(t, r)| format!("{t} {r} 0"));
    let matrix = prop::collection::vec(atom, 1..=3).prop_flat_map(|atoms| {
        let n = atoms.len();
        (Just(atoms), prop::collection::vec(any::<bool>(), n), any::<bool>())
    });
    (matrix, any::<bool>()).prop_map(|((atoms, negs, conj), forall)| {
        let parts: Vec<String> = atoms
            .iter()
            .zip(negs)
            .map(|(a, n)| if n { format!("not ({a})") } else { format!("({a})") })
            .collect();
        let q = if forall { "forall" } else { "exists" };
        format!("free a; {q} x. {}", parts.join(if conj { " and " } else { " or " }))
    })
}

pub fn env(x: &BigRational, a: &BigRational) -> HashMap<String, BigRational> {
    HashMap::from([("x".to_string(), x.clone()), ("a".to_string(), a.clone())])
}

/// Sample grid for the variables `x`, `a`.
pub fn grid() -> Vec<(BigRational, BigRational)> {
    let vals: Vec<BigRational> = (-6..=6).map(|k| BigRational::new(k.into(), 2.into())).collect();
    let mut out = Vec::new();
    for x in &vals {
        for a in &vals {
            out.push((x.clone(), a.clone()));
        }
    }
    out
}

/// Emits and parses back; `None` when the S-expression dialect cannot
/// carry a division by a variable.
fn reparse(f: &Formula, d: Dialect) -> Option<Formula> {
    let text = match f.emit(d) {
        Ok(t) => t,
        Err(RewriteError::DivisionInOutput) if d == Dialect::Smt => return None,
        Err(e) => panic!("{e}"),
    };
    Some(match d {
        Dialect::Native => parse_native(&text).unwrap(),
        Dialect::Smt => cadproj::rewrite::parse_formula(&text).unwrap(),
    })
}

pub fn parse_round_trip() -> Result<(), String> {
    let o = order(&["x", "y", "a"]);
    check(200, poly(&o, 4, 6, 1000), |p| {
        let back = Polynomial::parse(&p.to_string(), &o).unwrap();
        prop_assert_eq!(back, p);
        Ok(())
    })?;
    check(200, formula_text(), |text| {
        let f = parse_native(&text).unwrap();
        for d in [Dialect::Native, Dialect::Smt] {
            let Some(g) = reparse(&f, d) else {
                continue;
            };
            prop_assert_eq!(g.emit(d).unwrap(), f.emit(d).unwrap());
            for (x, a) in grid() {
                let e = env(&x, &a);
                prop_assert_eq!(
                    cadproj::rewrite::eval_matrix(&g.matrix, &e),
                    cadproj::rewrite::eval_matrix(&f.matrix, &e)
                );
            }
        }
        Ok(())
    })
}
