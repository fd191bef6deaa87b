//! Finest square-free bases by gcd refinement.

use crate::elim::canonical;
use crate::poly::gcd::gcd;
use crate::poly::sqfree::squarefree_decompose;
use crate::poly::{PolyError, Polynomial};

/// Deterministic ordering: total degree, term count, then text.
pub fn sort_canonical(v: &mut [Polynomial]) {
    v.sort_by_cached_key(|p| (p.total_degree(), p.nterms(), p.to_string()));
}

/// Pairwise coprime, square-free, primitive positive-leading polynomials
/// whose products reconstruct every non-constant input up to constants.
pub fn squarefree_basis(polys: &[Polynomial]) -> Result<Vec<Polynomial>, PolyError> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut stack: Vec<Polynomial> = Vec::new();
    for p in polys {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        for (part, _) in squarefree_decompose(p)?.parts {
            stack.push(part);
        }
    }
    'next: while let Some(q) = stack.pop() {
        if q.is_constant() {
            continue;
        }
        let q = canonical(&q);
        for i in 0..basis.len() {
            let g = gcd(&basis[i], &q);
            if g.is_constant() {
                continue;
            }
            let b = basis.swap_remove(i);
            stack.push(b.exact_div(&g)?);
            stack.push(q.exact_div(&g)?);
            stack.push(g);
            continue 'next;
        }
        basis.push(q);
    }
    sort_canonical(&mut basis);
    basis.dedup();
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarOrder;

    #[test]
    fn refines_common_factors() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let ps: Vec<Polynomial> = ["(x - 1)^2*(x + y)", "(x - 1)*(x - y)", "3*x + 3*y", "5"]
            .iter()
            .map(|s| Polynomial::parse(s, &o).unwrap())
            .collect();
        let b = squarefree_basis(&ps).unwrap();
        let t: Vec<String> = b.iter().map(|p| p.to_string()).collect();
        assert_eq!(t, ["x + y", "x - 1", "x - y"]);
    }
}
