use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// A total order on variable names.
///
/// Index 0 is the highest-ranked variable: the first one to be eliminated or
/// projected. A polynomial's "main variable" is the highest-ranked variable in
/// which it has positive degree.
#[derive(Clone)]
pub struct VarOrder {
    vars: Arc<[String]>,
}

impl VarOrder {
    pub fn new<I, S>(vars: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(PolyError::EmptyOrder);
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(PolyError::InvalidVariable(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(VarOrder { vars: vars.into() })
    }

    /// Parses a comma separated list such as `"z,y,x"`.
    pub fn parse(list: &str) -> Result<Self, PolyError> {
        VarOrder::new(list.split(',').map(|s| s.trim()).filter(|s| !s.is_empty()))
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.vars[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// A new order with `name` appended as the lowest-ranked variable.
    /// If `name` is already taken, primes are appended until it is fresh.
    pub fn with_fresh(&self, name: &str) -> (VarOrder, usize) {
        let mut fresh = name.to_string();
        while self.index_of(&fresh).is_some() {
            fresh.push('_');
        }
        let mut vars: Vec<String> = self.vars.to_vec();
        vars.push(fresh);
        let idx = vars.len() - 1;
        (VarOrder { vars: vars.into() }, idx)
    }

    pub(crate) fn same(&self, other: &VarOrder) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl PartialEq for VarOrder {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for VarOrder {}

impl fmt::Debug for VarOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarOrder({})", self.vars.join(" > "))
    }
}

impl fmt::Display for VarOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.vars.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(matches!(
            VarOrder::new(["x", "y", "x"]),
            Err(PolyError::DuplicateVariable(_))
        ));
        assert!(matches!(
            VarOrder::new(Vec::<String>::new()),
            Err(PolyError::EmptyOrder)
        ));
        assert!(VarOrder::new(["1x"]).is_err());
    }

    #[test]
    fn fresh_names_do_not_collide() {
        let o = VarOrder::parse("z, y, x").unwrap();
        assert_eq!(o.vars(), ["z", "y", "x"]);
        let (e, idx) = o.with_fresh("y");
        assert_eq!(idx, 3);
        assert_eq!(e.name(3), "y_");
    }
}
