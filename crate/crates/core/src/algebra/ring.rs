use std::collections::BTreeMap;
use std::sync::Arc;

use super::coeff::Field;
use super::order::TermOrderSpec;
use crate::error::{Error, Result};

/// Shared handle to an immutable ring description.
pub type Ring = Arc<RingSpec>;

/// A polynomial ring `K[x_0, ..., x_{n-1}]` with a registry of named term
/// orders. Every ring registers `lex` and `degrevlex` on the declared
/// variable order; `lex` is the canonical storage order of its polynomials.
#[derive(Debug, Clone)]
pub struct RingSpec {
    variables: Vec<String>,
    field: Field,
    orders: BTreeMap<String, TermOrderSpec>,
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.variables == other.variables && self.field == other.field
    }
}

impl Eq for RingSpec {}

pub(crate) fn valid_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == ',')
}

impl RingSpec {
    pub fn new<S: AsRef<str>>(variables: &[S], characteristic: u64) -> Result<Ring> {
        let field = Field::from_characteristic(characteristic)?;
        let variables: Vec<String> = variables.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = std::collections::HashSet::new();
        for v in &variables {
            if !valid_variable_name(v) {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable name `{v}`")));
            }
        }
        let n = variables.len();
        let mut orders = BTreeMap::new();
        orders.insert("lex".to_string(), TermOrderSpec::lex_natural(n));
        orders.insert("degrevlex".to_string(), TermOrderSpec::degrevlex_natural(n));
        Ok(Arc::new(RingSpec { variables, field, orders }))
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn orders(&self) -> &BTreeMap<String, TermOrderSpec> {
        &self.orders
    }

    pub fn order(&self, name: &str) -> Option<&TermOrderSpec> {
        self.orders.get(name)
    }

    /// The order used when a caller does not care which one is used
    /// (membership, heights): degrevlex on the declared variables.
    pub fn default_order(&self) -> TermOrderSpec {
        TermOrderSpec::degrevlex_natural(self.nvars())
    }

    /// Returns a copy of the ring with one more registered order.
    pub fn with_order(ring: &Ring, name: &str, order: TermOrderSpec) -> Result<Ring> {
        if order.nvars() != ring.nvars() {
            return Err(Error::InvalidOrder(format!(
                "order ranks {} variables but the ring has {}",
                order.nvars(),
                ring.nvars()
            )));
        }
        let mut spec = (**ring).clone();
        spec.orders.insert(name.to_string(), order);
        Ok(Arc::new(spec))
    }

    /// Builds an order from variable names listed greatest first.
    pub fn ranking_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        let ranking = names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| Error::InvalidOrder(format!("`{}` is not a ring variable", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        if ranking.len() != self.nvars() {
            return Err(Error::InvalidOrder(format!(
                "ranking names {} variables, ring has {}",
                ranking.len(),
                self.nvars()
            )));
        }
        Ok(ranking)
    }

    /// `R[new_vars]`: the new variables are appended after the existing ones.
    /// Registered orders are not carried over since they do not rank the new
    /// variables.
    pub fn extend<S: AsRef<str>>(ring: &Ring, new_vars: &[S]) -> Result<Ring> {
        let mut vars = ring.variables.clone();
        for v in new_vars {
            let v = v.as_ref();
            if ring.index_of(v).is_some() {
                return Err(Error::InvalidRing(format!("variable `{v}` already exists")));
            }
            vars.push(v.to_string());
        }
        RingSpec::new(&vars, ring.characteristic())
    }

    /// The ring shares its variables and field with `other`.
    pub fn same_as(&self, other: &RingSpec) -> bool {
        self == other
    }
}
