//! Predicted counts and degrees of projection polynomials per level, for `m`
//! polynomials of degree at most `d` with `k` equational constraints.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::pipeline::Strategy;
use super::ProjError;

/// `coeff * (d^hi - d^lo)`, or `coeff * d^hi` without `lo`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymDegree {
    pub coeff: BigUint,
    pub hi: u32,
    pub lo: Option<u32>,
}

impl SymDegree {
    fn mono(coeff: BigUint, hi: u32) -> Self {
        SymDegree { coeff, hi, lo: None }
    }

    pub fn eval(&self, d: u64) -> BigUint {
        let d = BigUint::from(d);
        let hi = d.pow(self.hi);
        match self.lo {
            None => &self.coeff * hi,
            Some(lo) => &self.coeff * (hi - d.pow(lo)),
        }
    }
}

fn power(e: u32) -> String {
    match e {
        0 => "1".into(),
        1 => "d".into(),
        _ => format!("d^{e}"),
    }
}

impl fmt::Display for SymDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.coeff.is_one() { String::new() } else { self.coeff.to_string() };
        match self.lo {
            None if c.is_empty() => write!(f, "{}", power(self.hi)),
            None => write!(f, "{c}{}", power(self.hi)),
            Some(lo) => write!(f, "{c}({} - {})", power(self.hi), power(lo)),
        }
    }
}

impl Serialize for SymDegree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelPrediction {
    pub level: u32,
    pub resultant_count: u64,
    pub resultant_degree: SymDegree,
    pub resultant_value: String,
    pub discriminant_count: u64,
    pub discriminant_degree: SymDegree,
    pub discriminant_value: String,
    /// Pivot degree where a multivariate resultant is used.
    pub pivot_degree: Option<SymDegree>,
    /// Entries are only upper bounds beyond the third level of the
    /// multivariate strategy.
    pub bound_only: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    pub d: u64,
    pub m: u64,
    pub k: u32,
    pub strategy: Strategy,
    pub levels: Vec<LevelPrediction>,
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, i| a * BigUint::from(i))
}

/// Level `j` eliminates one more variable. Iterated: `P_j = 2 P_{j-1} - 1`
/// polynomials from `P_0 = m`, resultants of degree `a_j d^{2^j}` with
/// `a_1 = 2`, `a_j = 2 a_{j-1}^2`, discriminants of degree
/// `a_j (d^{2^j} - d^{2^{j-1}})`. Multires from level 3: pivot of degree
/// `j! d^j`, partner resultants of degree `2 j! a_{j-1} d^{j + 2^{j-1}}`.
pub fn predict_degrees(d: u64, m: u64, k: u32, strategy: Strategy) -> Result<Prediction, ProjError> {
    if d < 2 || k < 1 || m < u64::from(k) {
        return Err(ProjError::Invalid(format!(
            "need d >= 2 and m >= k >= 1, got d={d} m={m} k={k}"
        )));
    }
    if k > 30 {
        return Err(ProjError::Invalid(format!("k={k} is too large")));
    }
    let mut levels = Vec::new();
    let mut count = m;
    let mut a = BigUint::one();
    for j in 1..=k {
        let prev_a = a.clone();
        a = if j == 1 { BigUint::from(2u32) } else { BigUint::from(2u32) * &a * &a };
        let hi = 1u32 << j;
        let lo = hi / 2;
        let res_count = count - 1;
        let disc_count = count;
        let disc = SymDegree {
            coeff: a.clone(),
            hi,
            lo: Some(lo),
        };
        let (res, pivot, bound_only) = if strategy == Strategy::Multires && j >= 3 {
            let piv = factorial(j);
            let partner = SymDegree::mono(BigUint::from(2u32) * &piv * &prev_a, j + lo);
            (partner, Some(SymDegree::mono(piv, j)), j > 3)
        } else {
            (SymDegree::mono(a.clone(), hi), None, false)
        };
        levels.push(LevelPrediction {
            level: j,
            resultant_count: res_count,
            resultant_value: res.eval(d).to_string(),
            resultant_degree: res,
            discriminant_count: disc_count,
            discriminant_value: disc.eval(d).to_string(),
            discriminant_degree: disc,
            pivot_degree: pivot,
            bound_only,
        });
        count = 2 * count - 1;
    }
    Ok(Prediction {
        d,
        m,
        k,
        strategy,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterated_recurrence() {
        let p = predict_degrees(2, 4, 3, Strategy::Iterated).unwrap();
        let r: Vec<String> = p.levels.iter().map(|l| l.resultant_degree.to_string()).collect();
        assert_eq!(r, ["2d^2", "8d^4", "128d^8"]);
        let c: Vec<String> = p.levels.iter().map(|l| l.discriminant_degree.to_string()).collect();
        assert_eq!(c, ["2(d^2 - d)", "8(d^4 - d^2)", "128(d^8 - d^4)"]);
        let n: Vec<u64> = p.levels.iter().map(|l| l.resultant_count).collect();
        assert_eq!(n, [3, 6, 12]);
        assert_eq!(p.levels[2].resultant_value, "32768");
    }

    #[test]
    fn multires_level_three() {
        let p = predict_degrees(2, 4, 3, Strategy::Multires).unwrap();
        assert_eq!(p.levels[2].resultant_degree.to_string(), "96d^7");
        assert_eq!(p.levels[2].resultant_value, "12288");
        assert_eq!(p.levels[1].resultant_degree.to_string(), "8d^4");
        assert!(predict_degrees(1, 4, 3, Strategy::Multires).is_err());
        assert!(predict_degrees(2, 2, 3, Strategy::Multires).is_err());
    }
}
