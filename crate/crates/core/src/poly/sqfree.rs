//! Square-free decomposition (Yun), recursing on contents for multivariate
//! input.

use num_bigint::BigInt;

use super::gcd::{content_in, content_primitive, gcd, primitive};
use super::{PolyError, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeDecomposition {
    pub content: BigInt,
    /// `(part, multiplicity)`, sorted by multiplicity then by text form.
    pub parts: Vec<(Polynomial, u32)>,
}

impl SquareFreeDecomposition {
    pub fn expand(&self, like: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::constant(like.order(), self.content.clone());
        for (p, m) in &self.parts {
            acc = &acc * &p.pow(*m);
        }
        acc
    }

    /// Product of the parts, each taken once.
    pub fn squarefree_part(&self, like: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::one(like.order());
        for (p, _) in &self.parts {
            acc = &acc * p;
        }
        acc
    }
}

pub fn squarefree_decompose(a: &Polynomial) -> Result<SquareFreeDecomposition, PolyError> {
    let (content, prim) = content_primitive(a)?;
    let mut parts = Vec::new();
    decompose_into(&prim, &mut parts);
    parts.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.to_string().cmp(&y.0.to_string())));
    Ok(SquareFreeDecomposition { content, parts })
}

/// Square-free part of the primitive part, positive leading coefficient.
pub fn squarefree_part(a: &Polynomial) -> Result<Polynomial, PolyError> {
    Ok(squarefree_decompose(a)?.squarefree_part(a))
}

fn decompose_into(p: &Polynomial, out: &mut Vec<(Polynomial, u32)>) {
    if p.is_constant() {
        return;
    }
    let v = p.main_var().expect("non-constant");
    let cont = content_in(p, v);
    if !cont.is_constant() {
        decompose_into(&cont, out);
    }
    let pp = primitive(&p.exact_div(&cont).expect("content divides"));
    yun(&pp, v, out);
}

fn yun(f: &Polynomial, v: usize, out: &mut Vec<(Polynomial, u32)>) {
    let df = f.derivative(v);
    let a0 = gcd(f, &df);
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let c = df.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative(v);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        if !a.is_constant() {
            out.push((primitive(&a), i));
        }
        let nb = b.exact_div(&a).expect("gcd divides");
        let nc = d.exact_div(&a).expect("gcd divides");
        d = &nc - &nb.derivative(v);
        b = nb;
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarOrder;

    #[test]
    fn repeated_linear_factors() {
        let o = VarOrder::new(["x"]).unwrap();
        let a = Polynomial::parse("(x-1)^2*(x+1)", &o).unwrap();
        let s = squarefree_decompose(&a).unwrap();
        let got: Vec<(String, u32)> = s.parts.iter().map(|(p, m)| (p.to_string(), *m)).collect();
        assert_eq!(got, vec![("x + 1".into(), 1), ("x - 1".into(), 2)]);
        assert_eq!(s.expand(&a), a);
    }

    #[test]
    fn content_sign_and_multivariate_content() {
        let o = VarOrder::new(["z", "y", "x"]).unwrap();
        let a = Polynomial::parse("-3*(y - x)^2*(z^2 + y)*(z - x)^3", &o).unwrap();
        let s = squarefree_decompose(&a).unwrap();
        assert_eq!(s.content, BigInt::from(-3));
        assert_eq!(s.expand(&a), a);
        let mults: Vec<u32> = s.parts.iter().map(|p| p.1).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }
}
