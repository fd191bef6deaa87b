//! Generalized discriminants and resultants: elements of the second
//! elimination ideal of `(f, g, J)` or `(f, g, h)`, computed from a lex basis
//! with the two eliminated variables ranked highest.

use super::groebner::groebner_lex;
use super::{canonical, ElimError};
use crate::poly::{Polynomial, VarOrder};

fn elimination_order(order: &VarOrder, y: &str, z: &str) -> Result<(VarOrder, usize, usize), ElimError> {
    let yi = order.require(y)?;
    let zi = order.require(z)?;
    if yi == zi {
        return Err(ElimError::Invalid(format!("`{y}` given twice")));
    }
    let mut names = vec![y.to_string(), z.to_string()];
    names.extend(order.vars().iter().filter(|v| *v != y && *v != z).cloned());
    Ok((VarOrder::new(names)?, yi, zi))
}

fn check_degree(p: &Polynomial, yi: usize, zi: usize, y: &str, z: &str, which: &str) -> Result<(), ElimError> {
    if p.degree_in(yi) == 0 && p.degree_in(zi) == 0 {
        return Err(ElimError::ZeroDegree {
            var: format!("{y},{z}"),
            which: which.into(),
        });
    }
    Ok(())
}

/// Product of the basis elements free of the two highest variables,
/// normalized, over `order`. `1` for the unit ideal, `0` when no such element
/// exists.
fn eliminate(polys: &[Polynomial], elim: &VarOrder, order: &VarOrder) -> Result<Polynomial, ElimError> {
    let basis = groebner_lex(polys, elim)?;
    let mut acc = Polynomial::one(order);
    let mut found = false;
    for b in &basis {
        if b.degree_in(0) == 0 && b.degree_in(1) == 0 {
            acc = &acc * &b.reorder(order)?;
            found = true;
        }
    }
    if !found {
        return Ok(Polynomial::zero(order));
    }
    Ok(canonical(&acc))
}

/// Generalized discriminant of `f`, `g` with respect to `y`, `z`: the
/// elimination of `(f, g, f_y g_z - g_y f_z)`.
pub fn generalized_discriminant(
    f: &Polynomial,
    g: &Polynomial,
    y: &str,
    z: &str,
    order: &VarOrder,
) -> Result<Polynomial, ElimError> {
    let f = f.reorder(order)?;
    let g = g.reorder(order)?;
    let (elim, yi, zi) = elimination_order(order, y, z)?;
    check_degree(&f, yi, zi, y, z, "first input")?;
    check_degree(&g, yi, zi, y, z, "second input")?;
    let jac = &(&f.derivative(yi) * &g.derivative(zi)) - &(&g.derivative(yi) * &f.derivative(zi));
    eliminate(&[f, g, jac], &elim, order)
}

/// Generalized resultant of `f`, `g`, `h` with respect to `y`, `z`: the
/// elimination of `(f, g, h)`.
pub fn generalized_resultant(
    f: &Polynomial,
    g: &Polynomial,
    h: &Polynomial,
    y: &str,
    z: &str,
    order: &VarOrder,
) -> Result<Polynomial, ElimError> {
    let f = f.reorder(order)?;
    let g = g.reorder(order)?;
    let h = h.reorder(order)?;
    let (elim, yi, zi) = elimination_order(order, y, z)?;
    check_degree(&f, yi, zi, y, z, "first input")?;
    check_degree(&g, yi, zi, y, z, "second input")?;
    if h.is_zero() {
        return Err(ElimError::Poly(crate::poly::PolyError::ZeroInput));
    }
    eliminate(&[f, g, h], &elim, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, o: &VarOrder) -> Polynomial {
        Polynomial::parse(s, o).unwrap()
    }

    #[test]
    fn discriminant_cases() {
        let o = VarOrder::new(["y", "z", "x"]).unwrap();
        let d = generalized_discriminant(&p("y", &o), &p("z", &o), "y", "z", &o).unwrap();
        assert_eq!(d.to_string(), "1");
        let d = generalized_discriminant(&p("y", &o), &p("y + 1", &o), "y", "z", &o).unwrap();
        assert_eq!(d.to_string(), "1");
        // (y^2 - x, z, 2y) eliminates to x.
        let d = generalized_discriminant(&p("y^2 - x", &o), &p("z", &o), "y", "z", &o).unwrap();
        assert_eq!(d.to_string(), "x");
        assert!(generalized_discriminant(&p("x", &o), &p("z", &o), "y", "z", &o).is_err());
    }

    #[test]
    fn resultant_cases() {
        let o = VarOrder::new(["y", "z", "x"]).unwrap();
        let r = generalized_resultant(&p("y", &o), &p("z", &o), &p("x - y - z", &o), "y", "z", &o).unwrap();
        assert_eq!(r.to_string(), "x");
        let r = generalized_resultant(&p("y", &o), &p("z", &o), &p("1", &o), "y", "z", &o).unwrap();
        assert_eq!(r.to_string(), "1");
        let o = VarOrder::new(["z", "y", "x"]).unwrap();
        let r = generalized_resultant(
            &p("y^2 + z^2 + x + z - 1", &o),
            &p("-x^2 + y^2 + z^2 - 1", &o),
            &p("x^2 + y + z", &o),
            "y",
            "z",
            &o,
        )
        .unwrap();
        assert_eq!(r.to_string(), "x^4 + 2*x^3 + x^2 - 1");
    }
}
