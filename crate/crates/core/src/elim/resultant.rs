//! Sylvester resultants, the CAD resultant convention and discriminants.
//!
//! With free variables present the resultant is recovered by evaluation at
//! integer points and Newton interpolation; each point is an integer
//! resultant with formal degrees, so leading-coefficient drops are harmless.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{canonical, ElimError};
use crate::poly::gcd::{gcd, primitive};
use crate::poly::ring;
use crate::poly::sqfree::squarefree_part;
use crate::poly::{interp, Polynomial};

/// Degree in the eliminated variable above which integer resultants use a
/// Bareiss determinant instead of the subresultant PRS.
pub const PRS_THRESHOLD: usize = 32;

#[derive(Clone, Debug)]
pub struct SylvesterMatrix {
    pub entries: Vec<Vec<Polynomial>>,
    pub m: usize,
    pub n: usize,
}

impl SylvesterMatrix {
    pub fn determinant(&self) -> Polynomial {
        let unit = Polynomial::one(self.entries[0][0].order());
        ring::bareiss_det(self.entries.clone(), &unit)
    }
}

fn var_index(p: &Polynomial, var: &str) -> Result<usize, ElimError> {
    Ok(p.order().require(var)?)
}

pub fn sylvester_matrix(f: &Polynomial, g: &Polynomial, var: &str) -> Result<SylvesterMatrix, ElimError> {
    f.check_order(g)?;
    let v = var_index(f, var)?;
    let (m, n) = (f.degree_in(v) as usize, g.degree_in(v) as usize);
    if m + n == 0 {
        return Err(ElimError::ZeroDegree {
            var: var.into(),
            which: "either input".into(),
        });
    }
    let unit = Polynomial::one(f.order());
    let entries = ring::sylvester_matrix(&f.coefficients_in(v), &g.coefficients_in(v), m, n, &unit);
    Ok(SylvesterMatrix { entries, m, n })
}

/// Raw resultant with respect to `var`, sign of the Sylvester determinant
/// with the rows of `f` first.
pub fn sylvester_resultant(f: &Polynomial, g: &Polynomial, var: &str) -> Result<Polynomial, ElimError> {
    f.check_order(g)?;
    let v = var_index(f, var)?;
    if f.is_zero() || g.is_zero() {
        return Err(ElimError::Poly(crate::poly::PolyError::ZeroInput));
    }
    if f.degree_in(v) == 0 && g.degree_in(v) == 0 {
        return Err(ElimError::ZeroDegree {
            var: var.into(),
            which: "either input".into(),
        });
    }
    Ok(resultant_idx(f, g, v))
}

/// Integer resultant with formal degrees `m`, `n`.
pub fn int_resultant(a: &[BigInt], b: &[BigInt], m: usize, n: usize) -> BigInt {
    let one = BigInt::one();
    if m.max(n) <= PRS_THRESHOLD {
        return ring::formal_resultant(a, b, m, n, &one);
    }
    let mat = ring::sylvester_matrix(a, b, m, n, &one);
    ring::bareiss_det(mat, &one)
}

/// Resultant in variable index `v` of two nonzero polynomials, not both of
/// degree 0 in `v`.
pub fn resultant_idx(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let order = f.order();
    let (m, n) = (f.degree_in(v) as usize, g.degree_in(v) as usize);
    let mut free: Vec<usize> = f.vars_present();
    free.extend(g.vars_present());
    free.sort_unstable();
    free.dedup();
    free.retain(|&w| w != v);
    let nv = order.len();
    if free.is_empty() {
        let zero = vec![BigInt::zero(); nv];
        let r = int_resultant(&f.univariate_image(v, &zero), &g.univariate_image(v, &zero), m, n);
        return Polynomial::constant(order, r);
    }
    // deg_w res <= n deg_w f + m deg_w g, total degree <= D_f D_g.
    let total = f.total_degree() * g.total_degree();
    let bounds: Vec<u32> = free
        .iter()
        .map(|&w| (n as u32 * f.degree_in(w) + m as u32 * g.degree_in(w)).min(total))
        .collect();
    let eval = |vals: &[BigInt]| -> Option<BigInt> {
        let mut pt = vec![BigInt::zero(); nv];
        for (&w, x) in free.iter().zip(vals) {
            pt[w] = x.clone();
        }
        Some(int_resultant(&f.univariate_image(v, &pt), &g.univariate_image(v, &pt), m, n))
    };
    interp::interpolate(order, &free, &bounds, &eval).expect("no unlucky points for resultants")
}

/// Resultant under the CAD convention: common factors and repeated factors
/// are removed first; the result is canonical and never zero.
pub fn cad_resultant(f: &Polynomial, g: &Polynomial, var: &str) -> Result<Polynomial, ElimError> {
    f.check_order(g)?;
    let v = var_index(f, var)?;
    if f.is_zero() || g.is_zero() {
        return Err(ElimError::Poly(crate::poly::PolyError::ZeroInput));
    }
    let common = gcd(f, g);
    let f1 = squarefree_part(&primitive(f).exact_div(&common)?)?;
    let g1 = squarefree_part(&primitive(g).exact_div(&common)?)?;
    if f1.degree_in(v) == 0 && g1.degree_in(v) == 0 {
        return Err(ElimError::Degenerate {
            var: var.into(),
            reason: "inputs identical after common-factor removal".into(),
        });
    }
    for (p, which) in [(&f1, "first"), (&g1, "second")] {
        if p.degree_in(v) == 0 {
            return Err(ElimError::Degenerate {
                var: var.into(),
                reason: format!("{which} input has degree 0 after common-factor removal"),
            });
        }
    }
    Ok(canonical(&resultant_idx(&f1, &g1, v)))
}

/// Discriminant with the usual sign, `(-1)^(n(n-1)/2) res(f, f') / lc(f)`,
/// of the square-free primitive part of `f`, split as `(content, primitive)`.
pub fn discriminant_parts(f: &Polynomial, var: &str) -> Result<(BigInt, Polynomial), ElimError> {
    let v = var_index(f, var)?;
    if f.is_zero() {
        return Err(ElimError::Poly(crate::poly::PolyError::ZeroInput));
    }
    let sf = squarefree_part(f)?;
    let raw = raw_discriminant(&sf, v).map_err(|degree| ElimError::DegreeTooLow {
        var: var.into(),
        degree,
    })?;
    let (c, p) = crate::poly::content_primitive(&raw)?;
    Ok((c, p))
}

/// Canonical discriminant: primitive positive, or the absolute value when
/// constant.
pub fn discriminant(f: &Polynomial, var: &str) -> Result<Polynomial, ElimError> {
    let (c, p) = discriminant_parts(f, var)?;
    if p.is_constant() {
        return Ok(Polynomial::constant(f.order(), num_traits::Signed::abs(&c)));
    }
    Ok(p)
}

/// Signed discriminant of `f` in variable index `v`, no preprocessing.
/// `Err(degree)` when the degree is below 2.
pub fn raw_discriminant(f: &Polynomial, v: usize) -> Result<Polynomial, u32> {
    let n = f.degree_in(v);
    if n < 2 {
        return Err(n);
    }
    let r = resultant_idx(f, &f.derivative(v), v);
    let lc = f.lc_in(v);
    let d = r.exact_div(&lc).expect("leading coefficient divides res(f, f')");
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarOrder;

    fn p(s: &str, o: &VarOrder) -> Polynomial {
        Polynomial::parse(s, o).unwrap()
    }

    #[test]
    fn small_resultants() {
        let o = VarOrder::new(["x"]).unwrap();
        let r = sylvester_resultant(&p("x + 1", &o), &p("x - 1", &o), "x").unwrap();
        assert_eq!(r.to_string(), "-2");
        let r = sylvester_resultant(&p("x^2 + 1", &o), &p("3", &o), "x").unwrap();
        assert_eq!(r.to_string(), "9");
        assert!(sylvester_resultant(&p("2", &o), &p("3", &o), "x").is_err());
    }

    #[test]
    fn matrix_determinant_agrees() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let f = p("x^2*y + x - y^2", &o);
        let g = p("y*x^3 - 2*x + y + 1", &o);
        let m = sylvester_matrix(&f, &g, "x").unwrap();
        assert_eq!(m.determinant(), sylvester_resultant(&f, &g, "x").unwrap());
    }

    #[test]
    fn cad_convention() {
        let o = VarOrder::new(["x"]).unwrap();
        let r = cad_resultant(&p("x^2 - 1", &o), &p("x^2 - 2*x + 1", &o), "x").unwrap();
        assert_eq!(r.to_string(), "2");
        let r = cad_resultant(&p("x^2*(x - 1)", &o), &p("(x - 1)*(x + 2)", &o), "x").unwrap();
        assert_eq!(r.to_string(), "2");
        let f = p("x^2 + 3*x", &o);
        assert!(matches!(cad_resultant(&f, &f, "x"), Err(ElimError::Degenerate { .. })));
    }

    #[test]
    fn discriminants() {
        let o = VarOrder::new(["x", "b", "c"]).unwrap();
        let d = discriminant(&p("x^2 + b*x + c", &o), "x").unwrap();
        assert_eq!(d.to_string(), "b^2 - 4*c");
        let (c, q) = discriminant_parts(&p("x^2 + 1", &o), "x").unwrap();
        assert_eq!((c, q.to_string()), (BigInt::from(-4), "1".to_string()));
        assert!(matches!(
            discriminant(&p("b*x + c", &o), "x"),
            Err(ElimError::DegreeTooLow { .. })
        ));
    }
}
