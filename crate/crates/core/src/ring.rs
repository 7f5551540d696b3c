use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{MonomialOrder, MAX_VARS};

/// Default cap on any single exponent produced by checked arithmetic.
pub const DEFAULT_EXPONENT_GUARD: u32 = 1_000_000;

/// A polynomial ring `k[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    vars: Vec<String>,
    field: F,
    order: MonomialOrder,
    exponent_guard: u32,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(vars: &[S], field: F, order: MonomialOrder) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().trim().to_string()).collect();
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "need between 1 and {MAX_VARS} variables, got {}",
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Elimination { block } = order {
            if block == 0 || block > vars.len() {
                return Err(Error::InvalidRing(format!("bad elimination block size {block}")));
            }
        }
        Ok(Arc::new(Self { vars, field, order, exponent_guard: DEFAULT_EXPONENT_GUARD }))
    }

    /// Parses a comma-separated variable list such as `"x,y,z"`.
    pub fn from_spec(spec: &str, field: F) -> Result<Arc<Self>> {
        let vars: Vec<&str> = spec.split(',').collect();
        Self::new(&vars, field, MonomialOrder::GrevLex)
    }

    pub fn with_exponent_guard(&self, guard: u32) -> Arc<Self> {
        Arc::new(Self { exponent_guard: guard, ..self.clone() })
    }

    /// Same variables with `name` prepended and an order eliminating it.
    pub fn with_leading_variable(&self, name: &str) -> Result<Arc<Self>> {
        let mut vars = vec![name.to_string()];
        vars.extend(self.vars.iter().cloned());
        let ring = Self::new(&vars, self.field.clone(), MonomialOrder::Elimination { block: 1 })?;
        Ok(ring.with_exponent_guard(self.exponent_guard))
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn exponent_guard(&self) -> u32 {
        self.exponent_guard
    }

    /// A name not used by any ring variable, for auxiliary eliminations.
    pub fn fresh_variable_name(&self) -> String {
        let mut name = "t".to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        name
    }
}

/// Same ring, possibly different `Arc`s.
pub(crate) fn same_ring<F: Field>(a: &Arc<PolyRing<F>>, b: &Arc<PolyRing<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> fmt::Display for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] ({:?})", self.field.label(), self.vars.join(","), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn rejects_bad_variable_lists() {
        let f = PrimeField::default();
        assert!(PolyRing::new(&["x", "x"], f, MonomialOrder::GrevLex).is_err());
        assert!(PolyRing::new(&["x", ""], f, MonomialOrder::GrevLex).is_err());
        assert!(PolyRing::new(&["1x"], f, MonomialOrder::GrevLex).is_err());
        assert!(PolyRing::<PrimeField>::new(&[] as &[&str], f, MonomialOrder::GrevLex).is_err());
        assert!(PolyRing::new(&["x", "y"], f, MonomialOrder::Elimination { block: 3 }).is_err());
    }

    #[test]
    fn leading_variable_ring() {
        let r = PolyRing::from_spec("x,y", PrimeField::default()).unwrap();
        let name = r.fresh_variable_name();
        let e = r.with_leading_variable(&name).unwrap();
        assert_eq!(e.vars(), &["t", "x", "y"]);
        assert_eq!(e.order(), MonomialOrder::Elimination { block: 1 });
    }
}
